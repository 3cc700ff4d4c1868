#ifndef MERMIN_H
#define MERMIN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

#define MRM_OK 0

#define MRM_INVALID_ARGUMENT 1

#define MRM_CAPACITY 2

#define MRM_NUMERICAL 3

#define MRM_EVALUATION 4

#define MRM_NULL_POINTER 5

#define MRM_BUFFER_TOO_SMALL 6

#define MRM_PANIC 7

/**
 * Opaque state vector.
 */
typedef struct MrmState MrmState;

/**
 * Opaque sequence of states captured along a Grover or QFT run.
 */
typedef struct MrmTrace MrmTrace;

/**
 * A complex number laid out as two doubles.
 */
typedef struct MrmComplex {
  double re;
  double im;
} MrmComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message of this thread into `buf` (NUL-terminated,
 * truncated to `cap - 1` bytes) and returns the full message length.
 */
size_t mrm_last_error(char *buf, size_t cap);

/**
 * Static description of a status code.
 */
const char *mrm_status_str(int32_t status);

/**
 * State from `len` amplitudes; `len` must be a power of two, at least 2.
 */
int32_t mrm_state_from_amplitudes(const struct MrmComplex *amplitudes,
                                  size_t len,
                                  struct MrmState **out);

/**
 * Computational basis state `|index⟩` on `n_qubits` wires (qubit 1 is the most significant bit).
 */
int32_t mrm_state_basis(size_t n_qubits, size_t index, struct MrmState **out);

/**
 * Uniform superposition over `shift, shift + period, …` below `2^n_qubits`.
 */
int32_t mrm_state_periodic(size_t shift, size_t period, size_t n_qubits, struct MrmState **out);

/**
 * Normalized `|x0⟩ + |+⟩^{⊗n}`.
 */
int32_t mrm_state_phi_ent(size_t n_qubits, size_t x0, struct MrmState **out);

/**
 * Releases a state; null is ignored.
 */
void mrm_state_free(struct MrmState *state);

/**
 * Number of qubits, or 0 for a null handle.
 */
size_t mrm_state_num_qubits(const struct MrmState *state);

/**
 * Number of amplitudes, or 0 for a null handle.
 */
size_t mrm_state_len(const struct MrmState *state);

/**
 * Copies the amplitudes into `buf`, which must hold `mrm_state_len(state)` entries.
 */
int32_t mrm_state_amplitudes(const struct MrmState *state,
                             struct MrmComplex *buf,
                             size_t cap,
                             size_t *len_out);

/**
 * Grover end-of-loop states `φ_0 … φ_{k_opt}` for the given marked indices.
 */
int32_t mrm_trace_grover(size_t n_qubits,
                         const size_t *solutions,
                         size_t solution_count,
                         struct MrmTrace **out);

/**
 * States before the first gate and after every gate of the QFT applied to `state`.
 */
int32_t mrm_trace_qft(const struct MrmState *state, struct MrmTrace **out);

/**
 * Number of states in a trace, or 0 for a null handle.
 */
size_t mrm_trace_len(const struct MrmTrace *trace);

/**
 * Copies state `k` of the trace into a new handle.
 */
int32_t mrm_trace_state(const struct MrmTrace *trace, size_t k, struct MrmState **out);

/**
 * Releases a trace; null is ignored.
 */
void mrm_trace_free(struct MrmTrace *trace);

/**
 * `⟨state|M_n|state⟩`. With 6 parameters every qubit shares
 * `(α, β, γ, α′, β′, γ′)`; with `6n` they are laid out per qubit.
 */
int32_t mrm_mermin_expectation(const struct MrmState *state,
                               const double *params,
                               size_t len,
                               double *out);

/**
 * Maximizes the Mermin expectation over `param_count` (6 or `6n`) parameters
 * with `restarts` seeded random walks from the all-ones point. `argmax` may be
 * null; otherwise it receives `param_count` values.
 */
int32_t mrm_mermin_optimize(const struct MrmState *state,
                            size_t param_count,
                            uint64_t seed,
                            size_t restarts,
                            double *value_out,
                            double *argmax);

/**
 * Cayley hyperdeterminant `Δ₂₂₂₂` of a four-qubit state.
 */
int32_t mrm_delta2222(const struct MrmState *state, struct MrmComplex *out);

/**
 * Grover scan: values `f(φ_k)` for `k = 0..=k_opt`, plus the index of the peak.
 */
int32_t mrm_grover_scan(size_t n_qubits,
                        size_t target,
                        uint64_t seed,
                        size_t restarts,
                        double *values_out,
                        size_t cap,
                        size_t *len_out,
                        size_t *k_max_out);

/**
 * QFT scan: the optimized Mermin value at every captured step.
 */
int32_t mrm_qft_scan(size_t shift,
                     size_t period,
                     size_t n_qubits,
                     uint64_t seed,
                     size_t restarts,
                     double *values_out,
                     size_t cap,
                     size_t *len_out);

/**
 * `|Δ₂₂₂₂|` at every step of the four-qubit QFT on a periodic state.
 */
int32_t mrm_hyperdet_scan(size_t shift,
                          size_t period,
                          double *values_out,
                          size_t cap,
                          size_t *len_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MERMIN_H */
