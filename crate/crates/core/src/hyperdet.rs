//! Polynomial invariants of four-qubit states: the generators `H` (degree 2),
//! `L`, `M` (degree 4) and `D` (degree 6), and the Cayley hyperdeterminant
//! `Δ₂₂₂₂ = S³ − 27T²` assembled from them.

use num_complex::Complex64;

use crate::error::{invalid, Result};
use crate::statevec::StateVector;

/// Threshold on `|Δ₂₂₂₂|` below which a unit-norm state is treated as a zero of the hyperdeterminant.
pub const DELTA_ZERO_THRESHOLD: f64 = 1e-20;

type C = Complex64;

/// Amplitudes `a_{ijkl}` of `Σ a_{ijkl}|ijkl⟩`, basis index `8i + 4j + 2k + l`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FourQubitAmplitudes {
    pub a: [[[[C; 2]; 2]; 2]; 2],
}

impl FourQubitAmplitudes {
    pub fn from_flat(amps: &[C]) -> Result<Self> {
        if amps.len() != 16 {
            return invalid(format!("four-qubit state needs 16 amplitudes, got {}", amps.len()));
        }
        let mut a = [[[[C::new(0.0, 0.0); 2]; 2]; 2]; 2];
        for (idx, &z) in amps.iter().enumerate() {
            a[idx >> 3][(idx >> 2) & 1][(idx >> 1) & 1][idx & 1] = z;
        }
        Ok(Self { a })
    }

    pub fn from_state(state: &StateVector) -> Result<Self> {
        Self::from_flat(state.amplitudes())
    }

    /// `a_{ijkl}` addressed by the 4-character binary label, e.g. `at("0110")`.
    fn at(&self, label: &str) -> C {
        let b: Vec<usize> = label.bytes().map(|c| (c - b'0') as usize).collect();
        self.a[b[0]][b[1]][b[2]][b[3]]
    }

    fn matrix(&self, rows: [[&str; 4]; 4]) -> [[C; 4]; 4] {
        rows.map(|row| row.map(|label| self.at(label)))
    }
}

/// All generators and derived invariants of one state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InvariantReport {
    pub h: C,
    pub l: C,
    pub m: C,
    pub d: C,
    pub u: C,
    pub v: C,
    pub s: C,
    pub t: C,
    pub delta: C,
}

pub fn invariant_h(a: &FourQubitAmplitudes) -> C {
    let p = |x: &str, y: &str| a.at(x) * a.at(y);
    p("0000", "1111") - p("1000", "0111") - p("0100", "1011") + p("1100", "0011") - p("0010", "1101")
        + p("1010", "0101")
        + p("0110", "1001")
        - p("1110", "0001")
}

pub fn invariant_l(a: &FourQubitAmplitudes) -> C {
    det4(&a.matrix([
        ["0000", "0010", "0001", "0011"],
        ["1000", "1010", "1001", "1011"],
        ["0100", "0110", "0101", "0111"],
        ["1100", "1110", "1101", "1111"],
    ]))
}

pub fn invariant_m(a: &FourQubitAmplitudes) -> C {
    det4(&a.matrix([
        ["0000", "0001", "0100", "0101"],
        ["1000", "1001", "1100", "1101"],
        ["0010", "0011", "0110", "0111"],
        ["1010", "1011", "1110", "1111"],
    ]))
}

/// Matrix `B_xt` of `b_xt = det(∂²A/∂y_i∂z_j)` on the monomial bases
/// `(x0², x0x1, x1²)` and `(t0², t0t1, t1²)`.
///
/// With `∂²A/∂y_i∂z_j = Σ_{p,r} a_{p i j r} x_p t_r`, the determinant expands to
/// `Σ (a_{p00r} a_{q11s} − a_{p01r} a_{q10s}) x_p x_q t_r t_s`, and the monomial
/// `x_p x_q` sits at row `p + q` (likewise `t_r t_s` at column `r + s`).
pub fn b_xt_matrix(a: &FourQubitAmplitudes) -> [[C; 3]; 3] {
    let a = &a.a;
    let mut b = [[C::new(0.0, 0.0); 3]; 3];
    for p in 0..2 {
        for q in 0..2 {
            for r in 0..2 {
                for s in 0..2 {
                    b[p + q][r + s] += a[p][0][0][r] * a[q][1][1][s] - a[p][0][1][r] * a[q][1][0][s];
                }
            }
        }
    }
    b
}

pub fn invariant_d(a: &FourQubitAmplitudes) -> C {
    det3(&b_xt_matrix(a))
}

pub fn report(a: &FourQubitAmplitudes) -> InvariantReport {
    let h = invariant_h(a);
    let l = invariant_l(a);
    let m = invariant_m(a);
    let d = invariant_d(a);
    let u = h * h - 4.0 * (l - m);
    let v = 12.0 * (h * d - 2.0 * l * m);
    let s = (u * u - 2.0 * v) / 12.0;
    let t = (u * u * u - 3.0 * u * v + 216.0 * d * d) / 216.0;
    let delta = s * s * s - 27.0 * t * t;
    InvariantReport { h, l, m, d, u, v, s, t, delta }
}

pub fn delta2222(a: &FourQubitAmplitudes) -> C {
    report(a).delta
}

/// `|Δ₂₂₂₂|` of a four-qubit state vector.
pub fn delta_abs(state: &StateVector) -> Result<f64> {
    Ok(delta2222(&FourQubitAmplitudes::from_state(state)?).norm())
}

fn det3(m: &[[C; 3]; 3]) -> C {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Cofactor expansion along the first row.
fn det4(m: &[[C; 4]; 4]) -> C {
    let mut total = C::new(0.0, 0.0);
    for col in 0..4 {
        let mut minor = [[C::new(0.0, 0.0); 3]; 3];
        for (dst, row) in minor.iter_mut().zip(&m[1..]) {
            let kept = row.iter().enumerate().filter(|&(c, _)| c != col).map(|(_, &v)| v);
            for (d, v) in dst.iter_mut().zip(kept) {
                *d = v;
            }
        }
        let term = m[0][col] * det3(&minor);
        total += if col % 2 == 0 { term } else { -term };
    }
    total
}
