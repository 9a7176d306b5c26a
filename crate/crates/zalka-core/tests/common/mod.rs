//! Shared helpers for the integration-test oracles: dense operator
//! construction (Kronecker embeddings, DFT matrices) and small statistics
//! utilities. Everything here is deliberately written as directly as
//! possible — these are the reference implementations the fast library
//! routines are checked against.

#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use zalka_core::state::{Mat2, PureState};

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn mat2_to_dense(m: &Mat2) -> DMatrix<Complex64> {
    DMatrix::from_row_slice(2, 2, &[m[0][0], m[0][1], m[1][0], m[1][1]])
}

pub fn identity(dim: usize) -> DMatrix<Complex64> {
    DMatrix::from_diagonal_element(dim, dim, c(1.0, 0.0))
}

/// Dense 2ⁿ×2ⁿ embedding of a one-qubit gate on `target`, qubit 0 being the
/// most significant bit: I ⊗ … ⊗ G ⊗ … ⊗ I with G in slot `target`.
pub fn kron_embed_1q(gate: &Mat2, n: usize, target: usize) -> DMatrix<Complex64> {
    let g = mat2_to_dense(gate);
    let mut out = DMatrix::from_element(1, 1, c(1.0, 0.0));
    for q in 0..n {
        let factor = if q == target { g.clone() } else { identity(2) };
        out = out.kronecker(&factor);
    }
    out
}

/// Dense matrix of the controlled phase between two qubits: diagonal, with
/// e^{−iθ} at every index where both qubit bits are set.
pub fn dense_cphase(n: usize, q1: usize, q2: usize, theta: f64) -> DMatrix<Complex64> {
    let dim = 1usize << n;
    let mask = (1usize << (n - 1 - q1)) | (1usize << (n - 1 - q2));
    let phase = Complex64::from_polar(1.0, -theta);
    DMatrix::from_fn(dim, dim, |i, j| {
        if i != j {
            c(0.0, 0.0)
        } else if i & mask == mask {
            phase
        } else {
            c(1.0, 0.0)
        }
    })
}

/// Dense permutation matrix that exchanges the bits of qubits q1 and q2 in
/// the register index.
pub fn dense_swap(n: usize, q1: usize, q2: usize) -> DMatrix<Complex64> {
    let dim = 1usize << n;
    let (b1, b2) = (1usize << (n - 1 - q1), 1usize << (n - 1 - q2));
    DMatrix::from_fn(dim, dim, |i, j| {
        let mut src = j;
        let bit1 = (j & b1) != 0;
        let bit2 = (j & b2) != 0;
        src = src & !(b1 | b2);
        if bit1 {
            src |= b2;
        }
        if bit2 {
            src |= b1;
        }
        if i == src {
            c(1.0, 0.0)
        } else {
            c(0.0, 0.0)
        }
    })
}

/// The unitary discrete Fourier transform with kernel e^{+2πijk/N}/√N.
pub fn dft_matrix(n_qubits: usize) -> DMatrix<Complex64> {
    let dim = 1usize << n_qubits;
    let norm = 1.0 / (dim as f64).sqrt();
    DMatrix::from_fn(dim, dim, |j, k| {
        Complex64::from_polar(norm, std::f64::consts::TAU * (j * k % dim) as f64 / dim as f64)
    })
}

/// Matrix-vector product of a dense operator with a state's amplitudes.
pub fn dense_apply(m: &DMatrix<Complex64>, s: &PureState) -> Vec<Complex64> {
    let dim = s.dim();
    let mut out = vec![c(0.0, 0.0); dim];
    for (i, o) in out.iter_mut().enumerate() {
        for (j, a) in s.amplitudes().iter().enumerate() {
            *o += m[(i, j)] * a;
        }
    }
    out
}

/// Largest absolute amplitude difference between a state and a raw vector.
pub fn max_diff_vec(s: &PureState, expected: &[Complex64]) -> f64 {
    s.amplitudes()
        .iter()
        .zip(expected)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max)
}

/// Largest absolute amplitude difference between two states.
pub fn max_diff(a: &PureState, b: &PureState) -> f64 {
    max_diff_vec(a, b.amplitudes())
}

/// Largest absolute entry difference between two matrices.
pub fn max_mat_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Sample mean and standard error of the mean.
pub fn mean_and_sem(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Relative difference |a − b| / |b|.
pub fn rel_diff(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}
