#include <math.h>
#include <stdio.h>

#include "mermin.h"

#define CHECK(cond)                                             \
  do {                                                          \
    if (!(cond)) {                                              \
      fprintf(stderr, "%s:%d: check failed: %s\n", __FILE__,    \
              __LINE__, #cond);                                 \
      return 1;                                                 \
    }                                                           \
  } while (0)

int main(void) {
  MrmState *bell = NULL;
  const double h = 0.70710678118654752440;
  MrmComplex amps[4] = {{h, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {h, 0.0}};
  CHECK(mrm_state_from_amplitudes(amps, 4, &bell) == MRM_OK);
  CHECK(mrm_state_num_qubits(bell) == 2);

  /* CHSH settings: a1 = Z, a2 = (Z + X)/sqrt2, a1' = X, a2' = (Z - X)/sqrt2 */
  double params[12] = {0, 0, 1, 1, 0, 0, h, 0, h, -h, 0, h};
  double value = 0.0;
  CHECK(mrm_mermin_expectation(bell, params, 12, &value) == MRM_OK);
  CHECK(fabs(value - sqrt(2.0)) < 1e-9);
  mrm_state_free(bell);

  double deltas[12];
  size_t len = 0;
  CHECK(mrm_hyperdet_scan(9, 1, deltas, 12, &len) == MRM_OK);
  CHECK(len == 12);
  CHECK(deltas[0] <= 1e-12);

  MrmState *bad = NULL;
  CHECK(mrm_state_periodic(0, 0, 4, &bad) == MRM_INVALID_ARGUMENT);
  char msg[128];
  CHECK(mrm_last_error(msg, sizeof msg) > 0);

  printf("ok %.12f\n", value);
  return 0;
}
