//! Gate application checked against dense Kronecker-embedded operator
//! multiplication, Haar-sampling statistics, and the density-matrix layer
//! (projectors, channels, rank truncation) against independent oracles.

mod common;

use common::*;
use nalgebra::DMatrix;
use num_complex::Complex64;
use zalka_core::density::{DensityMatrix, KrausSet};
use zalka_core::noise::{kraus_cphase, kraus_cphase_principal, kraus_rotation, NoiseLevel};
use zalka_core::rng::RandomStream;
use zalka_core::state::{Mat2, PureState, HADAMARD};

/// An arbitrary-but-unitary 2×2 gate from three angles.
fn random_unitary(stream: &mut RandomStream) -> Mat2 {
    let theta = stream.standard_normal();
    let alpha = stream.standard_normal();
    let beta = stream.standard_normal();
    let (st, ct) = theta.sin_cos();
    [
        [
            Complex64::from_polar(ct, alpha),
            Complex64::from_polar(st, beta),
        ],
        [
            Complex64::from_polar(-st, -beta),
            Complex64::from_polar(ct, -alpha),
        ],
    ]
}

#[test]
fn one_qubit_gates_match_the_kronecker_oracle() {
    let mut stream = RandomStream::new(101, 0);
    for n in 1..=4 {
        for target in 0..n {
            for _ in 0..5 {
                let gate = random_unitary(&mut stream);
                assert!(zalka_core::state::mat2_unitarity_defect(&gate) < 1e-12);
                let psi = PureState::haar_state(n, &mut stream).unwrap();
                let dense = kron_embed_1q(&gate, n, target);
                let expected = dense_apply(&dense, &psi);
                let mut s = psi.clone();
                s.apply_1q(&gate, target).unwrap();
                let diff = max_diff_vec(&s, &expected);
                assert!(diff < 1e-10, "n={n} target={target}: diff {diff:.3e}");
                assert!((s.norm() - 1.0).abs() < 1e-12, "norm drifted");
            }
        }
    }
}

#[test]
fn controlled_phase_matches_the_dense_diagonal_oracle() {
    let mut stream = RandomStream::new(102, 0);
    // The two-qubit case from the reference worked example.
    let psi = PureState::haar_state(2, &mut stream).unwrap();
    let theta = std::f64::consts::FRAC_PI_4;
    let dense = dense_cphase(2, 0, 1, theta);
    let expected = dense_apply(&dense, &psi);
    let mut s = psi.clone();
    s.apply_cphase(0, 1, theta).unwrap();
    assert!(max_diff_vec(&s, &expected) < 1e-12);
    // All qubit pairs of larger registers, both argument orders.
    for n in 2..=4 {
        for q1 in 0..n {
            for q2 in 0..n {
                if q1 == q2 {
                    continue;
                }
                let theta = stream.standard_normal();
                let psi = PureState::haar_state(n, &mut stream).unwrap();
                let expected = dense_apply(&dense_cphase(n, q1, q2, theta), &psi);
                let mut s = psi.clone();
                s.apply_cphase(q1, q2, theta).unwrap();
                let diff = max_diff_vec(&s, &expected);
                assert!(diff < 1e-10, "n={n} pair ({q1},{q2}): diff {diff:.3e}");
            }
        }
    }
}

#[test]
fn qubit_swap_matches_the_permutation_oracle() {
    let mut stream = RandomStream::new(103, 0);
    for n in 2..=4 {
        for q1 in 0..n {
            for q2 in 0..n {
                if q1 == q2 {
                    continue;
                }
                let psi = PureState::haar_state(n, &mut stream).unwrap();
                let expected = dense_apply(&dense_swap(n, q1, q2), &psi);
                let mut s = psi.clone();
                s.swap_qubits(q1, q2).unwrap();
                assert!(max_diff_vec(&s, &expected) < 1e-12, "n={n} ({q1},{q2})");
            }
        }
    }
}

#[test]
fn haar_amplitude_weights_are_uniform_on_average() {
    let n = 3;
    let dim = 1usize << n;
    let draws = 10_000;
    let mut stream = RandomStream::new(104, 0);
    let mut weights: Vec<Vec<f64>> = vec![Vec::with_capacity(draws); 2];
    let probe = [0usize, dim - 1];
    for _ in 0..draws {
        let s = PureState::haar_state(n, &mut stream).unwrap();
        for (col, &j) in probe.iter().enumerate() {
            weights[col].push(s.amplitude_at(j).norm_sqr());
        }
    }
    for (col, &j) in probe.iter().enumerate() {
        let (mean, sem) = mean_and_sem(&weights[col]);
        let expect = 1.0 / dim as f64;
        assert!(
            (mean - expect).abs() < 5.0 * sem,
            "amplitude {j}: mean {mean:.5} vs {expect:.5} (sem {sem:.2e})"
        );
    }
}

#[test]
fn haar_pair_fidelity_averages_to_one_over_dim() {
    let n = 3;
    let pairs = 10_000;
    let mut stream = RandomStream::new(105, 0);
    let mut fids = Vec::with_capacity(pairs);
    for _ in 0..pairs {
        let a = PureState::haar_state(n, &mut stream).unwrap();
        let b = PureState::haar_state(n, &mut stream).unwrap();
        fids.push(a.fidelity(&b).unwrap());
    }
    let (mean, sem) = mean_and_sem(&fids);
    let expect = 1.0 / (1u64 << n) as f64;
    assert!(
        (mean - expect).abs() < 5.0 * sem,
        "mean {mean:.5} vs {expect:.5} (sem {sem:.2e})"
    );
}

#[test]
fn pure_projectors_are_idempotent() {
    let zero = PureState::basis_state(1, 0).unwrap();
    let rho = DensityMatrix::from_pure(&zero);
    assert!(max_mat_diff(
        rho.matrix(),
        &DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)])
    ) < 1e-15);
    let mut plus = PureState::basis_state(1, 0).unwrap();
    plus.apply_1q(&HADAMARD, 0).unwrap();
    let rho = DensityMatrix::from_pure(&plus);
    let half = c(0.5, 0.0);
    assert!(max_mat_diff(
        rho.matrix(),
        &DMatrix::from_row_slice(2, 2, &[half, half, half, half])
    ) < 1e-15);
    let mut stream = RandomStream::new(106, 0);
    let psi = PureState::haar_state(3, &mut stream).unwrap();
    let rho = DensityMatrix::from_pure(&psi);
    assert!((rho.trace() - 1.0).abs() < 1e-12);
    let squared = rho.matrix() * rho.matrix();
    assert!(max_mat_diff(&squared, rho.matrix()) < 1e-12);
}

/// Independent dominant-eigenpair oracle: plain power iteration.
fn power_iteration(m: &DMatrix<Complex64>, iters: usize) -> (f64, nalgebra::DVector<Complex64>) {
    let dim = m.nrows();
    let mut v = nalgebra::DVector::from_element(dim, c(1.0, 0.3));
    v /= Complex64::new(v.norm(), 0.0);
    for _ in 0..iters {
        v = m * v;
        v /= Complex64::new(v.norm(), 0.0);
    }
    let lambda = (v.adjoint() * m * &v)[(0, 0)].re;
    (lambda, v)
}

#[test]
fn rank_one_truncation_matches_power_iteration() {
    // A mixed state with a clearly dominant component.
    let mut stream = RandomStream::new(107, 0);
    let a = PureState::haar_state(2, &mut stream).unwrap();
    let b = PureState::haar_state(2, &mut stream).unwrap();
    let ra = DensityMatrix::from_pure(&a);
    let rb = DensityMatrix::from_pure(&b);
    let mixed = ra.matrix() * c(0.8, 0.0) + rb.matrix() * c(0.2, 0.0);
    let (lambda, v) = power_iteration(&mixed, 300);
    let expected = DMatrix::from_fn(4, 4, |i, j| c(lambda, 0.0) * v[i] * v[j].conj());
    let mut rho = DensityMatrix::from_matrix(2, mixed).unwrap();
    rho.truncate_rank(1).unwrap();
    let diff = max_mat_diff(rho.matrix(), &expected);
    assert!(diff < 1e-8, "rank-1 truncation vs power iteration: {diff:.3e}");
    assert!((rho.trace() - lambda).abs() < 1e-10);
}

#[test]
fn truncation_trace_is_monotone_in_rank_and_stays_positive() {
    let mut stream = RandomStream::new(108, 0);
    let states: Vec<PureState> = (0..4)
        .map(|_| PureState::haar_state(2, &mut stream).unwrap())
        .collect();
    let weights = [0.4, 0.3, 0.2, 0.1];
    let mut mixed = DMatrix::from_element(4, 4, c(0.0, 0.0));
    for (w, s) in weights.iter().zip(&states) {
        mixed += DensityMatrix::from_pure(s).matrix() * c(*w, 0.0);
    }
    let full = DensityMatrix::from_matrix(2, mixed).unwrap();
    let mut prev_trace = 0.0;
    for r in 1..=4 {
        let mut rho = full.clone();
        rho.truncate_rank(r).unwrap();
        let tr = rho.trace();
        assert!(tr >= prev_trace - 1e-12, "trace not monotone at rank {r}");
        let min = rho.eigenvalues_desc().last().copied().unwrap();
        assert!(min >= -1e-10, "negative eigenvalue {min:.3e} at rank {r}");
        prev_trace = tr;
    }
    assert!((prev_trace - 1.0).abs() < 1e-12, "full rank loses trace");
}

#[test]
fn diagonal_truncation_keeps_the_largest_entries() {
    let mat = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
        c(0.6, 0.0),
        c(0.3, 0.0),
        c(0.1, 0.0),
        c(0.0, 0.0),
    ]));
    let mut rho = DensityMatrix::from_matrix(2, mat).unwrap();
    rho.truncate_rank(2).unwrap();
    assert!((rho.trace() - 0.9).abs() < 1e-14);
    assert!((rho.matrix()[(0, 0)].re - 0.6).abs() < 1e-14);
    assert!((rho.matrix()[(1, 1)].re - 0.3).abs() < 1e-14);
    assert!(rho.matrix()[(2, 2)].norm() < 1e-14);
    assert!(rho.matrix()[(3, 3)].norm() < 1e-14);
}

#[test]
fn complete_channels_preserve_trace_on_embedded_targets() {
    let mut stream = RandomStream::new(109, 0);
    let e = NoiseLevel::new(0.3).unwrap();
    let channels: Vec<(KrausSet, Vec<usize>)> = vec![
        (kraus_rotation(e), vec![1]),
        (kraus_cphase(e), vec![0, 2]),
        (kraus_cphase_principal(e), vec![2, 1]),
    ];
    for (set, targets) in channels {
        let psi = PureState::haar_state(3, &mut stream).unwrap();
        let mut rho = DensityMatrix::from_pure(&psi);
        rho.apply_channel(&set, &targets).unwrap();
        assert!(
            (rho.trace() - 1.0).abs() < 1e-12,
            "{} on {targets:?} changed the trace",
            set.label()
        );
        // The output stays Hermitian and positive.
        let herm = max_mat_diff(&rho.matrix().adjoint(), rho.matrix());
        assert!(herm < 1e-12);
        let min = rho.eigenvalues_desc().last().copied().unwrap();
        assert!(min >= -1e-10);
    }
}
