//! Dense complex matrices, pure-state vectors and qubit-local gate application.
//!
//! Basis indices are big-endian: qubit 1 is the most significant bit of the
//! index, qubit `n` the least significant one.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};

/// Default absolute tolerance for approximate comparisons.
pub const TOLERANCE: f64 = 1e-9;

/// Largest qubit count a dense state is allowed to carry.
pub const MAX_QUBITS: usize = 16;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![ZERO; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        m
    }

    /// Builds a matrix from row-major entries; `entries.len()` must be a perfect square.
    pub fn from_row_major(entries: Vec<Complex64>) -> Result<Self> {
        let dim = (entries.len() as f64).sqrt().round() as usize;
        if dim * dim != entries.len() || dim == 0 {
            return invalid(format!("{} entries do not form a square matrix", entries.len()));
        }
        Ok(Self { dim, data: entries })
    }

    pub fn from_rows<const D: usize>(rows: [[Complex64; D]; D]) -> Self {
        Self { dim: D, data: rows.iter().flatten().copied().collect() }
    }

    pub fn diagonal(entries: &[Complex64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &d) in entries.iter().enumerate() {
            m.data[i * m.dim + i] = d;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.dim + col] = value;
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                out.data[c * self.dim + r] = self.get(r, c).conj();
            }
        }
        out
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|&z| z * factor).collect() }
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let d = self.dim * other.dim;
        let mut out = Self::zeros(d);
        for r1 in 0..self.dim {
            for c1 in 0..self.dim {
                let a = self.get(r1, c1);
                if a == ZERO {
                    continue;
                }
                for r2 in 0..other.dim {
                    for c2 in 0..other.dim {
                        out.data[(r1 * other.dim + r2) * d + c1 * other.dim + c2] = a * other.get(r2, c2);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim {
            return invalid(format!("matrix of dimension {} applied to vector of length {}", self.dim, v.len()));
        }
        Ok(self.data.chunks_exact(self.dim).map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim == other.dim && self.max_abs_diff(other) <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        (&self.adjoint() * self).approx_eq(&Self::identity(self.dim), tol)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.approx_eq(&self.adjoint(), tol)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.dim).all(|r| (0..self.dim).all(|c| r == c || self.get(r, c) == ZERO))
    }

    pub fn diagonal_entries(&self) -> Vec<Complex64> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix({}x{})", self.dim, self.dim)?;
        for row in self.data.chunks_exact(self.dim) {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let d = self.dim;
        let mut out = Matrix::zeros(d);
        for r in 0..d {
            for k in 0..d {
                let a = self.get(r, k);
                if a == ZERO {
                    continue;
                }
                for c in 0..d {
                    out.data[r * d + c] += a * rhs.data[k * d + c];
                }
            }
        }
        out
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        Matrix { dim: self.dim, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        Matrix { dim: self.dim, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

/// `gate^{⊗n}`. The zeroth power is the 1×1 matrix `[1]`.
pub fn kronecker_power(gate: &Matrix, n: usize) -> Matrix {
    (0..n).fold(Matrix::identity(1), |acc, _| acc.kron(gate))
}

/// A 2×2 complex matrix acting on one qubit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SingleQubitGate {
    pub entries: [[Complex64; 2]; 2],
}

impl SingleQubitGate {
    pub const fn new(entries: [[Complex64; 2]; 2]) -> Self {
        Self { entries }
    }

    pub fn identity() -> Self {
        Self::new([[ONE, ZERO], [ZERO, ONE]])
    }

    pub fn pauli_x() -> Self {
        Self::new([[ZERO, ONE], [ONE, ZERO]])
    }

    pub fn pauli_y() -> Self {
        let i = Complex64::i();
        Self::new([[ZERO, -i], [i, ZERO]])
    }

    pub fn pauli_z() -> Self {
        Self::new([[ONE, ZERO], [ZERO, -ONE]])
    }

    pub fn hadamard() -> Self {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self::new([[h, h], [h, -h]])
    }

    pub fn adjoint(&self) -> Self {
        let e = &self.entries;
        Self::new([[e[0][0].conj(), e[1][0].conj()], [e[0][1].conj(), e[1][1].conj()]])
    }

    pub fn compose(&self, rhs: &Self) -> Self {
        let (a, b) = (&self.entries, &rhs.entries);
        let mut out = [[ZERO; 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                *v = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let e = &self.entries;
        Self::new([[e[0][0] * s, e[0][1] * s], [e[1][0] * s, e[1][1] * s]])
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let (a, b) = (&self.entries, &rhs.entries);
        Self::new([[a[0][0] + b[0][0], a[0][1] + b[0][1]], [a[1][0] + b[1][0], a[1][1] + b[1][1]]])
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(-ONE))
    }

    pub fn determinant(&self) -> Complex64 {
        let e = &self.entries;
        e[0][0] * e[1][1] - e[0][1] * e[1][0]
    }

    pub fn trace(&self) -> Complex64 {
        self.entries[0][0] + self.entries[1][1]
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .zip(other.entries.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.adjoint().compose(self).max_abs_diff(&Self::identity()) <= tol
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.adjoint()) <= tol
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_rows(self.entries)
    }
}

/// Pure state of `n` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Wraps raw amplitudes; the length must be `2^n` for some `n >= 1`. No normalization is applied.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return invalid(format!("state length {len} is not a power of two >= 2"));
        }
        let n_qubits = len.trailing_zeros() as usize;
        if n_qubits > MAX_QUBITS {
            return Err(Error::Capacity(format!("{n_qubits} qubits exceeds {MAX_QUBITS}")));
        }
        Ok(Self { n_qubits, amplitudes })
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::from_amplitudes(amplitudes.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        check_width(n_qubits)?;
        let dim = 1usize << n_qubits;
        if index >= dim {
            return invalid(format!("basis index {index} out of range for {n_qubits} qubits"));
        }
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[index] = ONE;
        Ok(Self { n_qubits, amplitudes })
    }

    /// `|+⟩^{⊗n}`.
    pub fn uniform(n_qubits: usize) -> Result<Self> {
        check_width(n_qubits)?;
        let dim = 1usize << n_qubits;
        let a = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
        Ok(Self { n_qubits, amplitudes: vec![a; dim] })
    }

    /// Tensor product of single-qubit states, first factor on qubit 1.
    pub fn product(factors: &[[Complex64; 2]]) -> Result<Self> {
        if factors.is_empty() {
            return invalid("product state needs at least one factor");
        }
        let mut amps = vec![ONE];
        for f in factors {
            amps = amps.iter().flat_map(|&a| [a * f[0], a * f[1]]).collect();
        }
        Self::from_amplitudes(amps)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalized(&self) -> Result<Self> {
        let norm = self.norm();
        if norm == 0.0 || !norm.is_finite() {
            return invalid("cannot normalize a zero or non-finite vector");
        }
        Ok(Self { n_qubits: self.n_qubits, amplitudes: self.amplitudes.iter().map(|a| a / norm).collect() })
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim() == other.dim() && self.max_abs_diff(other) <= tol
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    /// Dense matrix-vector product; the matrix must have the state's dimension.
    pub fn apply_matrix(&self, m: &Matrix) -> Result<Self> {
        Ok(Self { n_qubits: self.n_qubits, amplitudes: m.mul_vec(&self.amplitudes)? })
    }
}

fn check_width(n_qubits: usize) -> Result<()> {
    if n_qubits == 0 {
        return invalid("a state needs at least one qubit");
    }
    if n_qubits > MAX_QUBITS {
        return Err(Error::Capacity(format!("{n_qubits} qubits exceeds {MAX_QUBITS}")));
    }
    Ok(())
}

/// `Σ conj(a_i) b_i`.
pub fn inner_product(a: &StateVector, b: &StateVector) -> Result<Complex64> {
    if a.dim() != b.dim() {
        return invalid(format!("inner product of lengths {} and {}", a.dim(), b.dim()));
    }
    Ok(a.amplitudes.iter().zip(&b.amplitudes).map(|(x, y)| x.conj() * y).sum())
}

/// Applies `gate` to `qubit` (1-based) and returns the new state.
pub fn apply_single_qubit(state: &StateVector, qubit: usize, gate: &SingleQubitGate) -> Result<StateVector> {
    if qubit == 0 || qubit > state.n_qubits {
        return invalid(format!("qubit {qubit} out of range 1..={}", state.n_qubits));
    }
    let mut out = state.clone();
    apply_gate_in_place(&mut out.amplitudes, state.n_qubits, qubit, gate);
    Ok(out)
}

/// In-place single-qubit application on a raw amplitude slice of length `2^n`.
pub(crate) fn apply_gate_in_place(amps: &mut [Complex64], n_qubits: usize, qubit: usize, gate: &SingleQubitGate) {
    debug_assert_eq!(amps.len(), 1 << n_qubits);
    let stride = 1usize << (n_qubits - qubit);
    let [[g00, g01], [g10, g11]] = gate.entries;
    for block in amps.chunks_exact_mut(2 * stride) {
        let (lo, hi) = block.split_at_mut(stride);
        for (a0, a1) in lo.iter_mut().zip(hi.iter_mut()) {
            let (x0, x1) = (*a0, *a1);
            *a0 = g00 * x0 + g01 * x1;
            *a1 = g10 * x0 + g11 * x1;
        }
    }
}

/// Writes `gate` applied to `qubit` of `src` into `dst` without touching `src`.
pub(crate) fn apply_gate_into(
    src: &[Complex64],
    dst: &mut [Complex64],
    n_qubits: usize,
    qubit: usize,
    gate: &SingleQubitGate,
) {
    let stride = 1usize << (n_qubits - qubit);
    let [[g00, g01], [g10, g11]] = gate.entries;
    for (s, d) in src.chunks_exact(2 * stride).zip(dst.chunks_exact_mut(2 * stride)) {
        let (s0, s1) = s.split_at(stride);
        let (d0, d1) = d.split_at_mut(stride);
        for i in 0..stride {
            d0[i] = g00 * s0[i] + g01 * s1[i];
            d1[i] = g10 * s0[i] + g11 * s1[i];
        }
    }
}

/// Applies a `2^m × 2^m` block to the `m` consecutive qubits starting at `first_qubit` (1-based).
pub(crate) fn apply_block_in_place(amps: &mut [Complex64], n_qubits: usize, first_qubit: usize, block: &Matrix) {
    let width = block.dim().trailing_zeros() as usize;
    debug_assert!(first_qubit >= 1 && first_qubit + width - 1 <= n_qubits);
    let low_bits = n_qubits + 1 - first_qubit - width;
    let low = 1usize << low_bits;
    let d = block.dim();

    if block.is_diagonal() {
        let diag = block.diagonal_entries();
        for (i, a) in amps.iter_mut().enumerate() {
            *a *= diag[(i >> low_bits) & (d - 1)];
        }
        return;
    }

    let mut gathered = vec![ZERO; d];
    let high_count = amps.len() / (d * low);
    for high in 0..high_count {
        for lo in 0..low {
            let base = high * d * low + lo;
            for (j, g) in gathered.iter_mut().enumerate() {
                *g = amps[base + j * low];
            }
            for r in 0..d {
                let row = &block.entries()[r * d..(r + 1) * d];
                amps[base + r * low] = row.iter().zip(&gathered).map(|(m, v)| m * v).sum();
            }
        }
    }
}
