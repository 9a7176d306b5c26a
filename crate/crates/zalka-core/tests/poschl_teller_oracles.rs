//! The analytic well on the discrete grid: orthonormality of the sampled
//! modes, eigen-residuals under the spectral Hamiltonian, parity, and the
//! closed-form beat dynamics of the two-mode superposition.

mod common;

use common::*;
use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;
use zalka_core::evolution::{build_grid, SpatialGrid};
use zalka_core::poschl_teller::{
    bound_count, energy, grid_eigenstate, grid_eigenstate_unchecked, reference_state,
    ModeCoefficients, PtParams,
};
use zalka_core::state::PureState;

/// Spectral-method Hamiltonian: kinetic phase-free application
/// Hψ = F⁻¹ (p²/2 · Fψ) + V∘ψ, with the dense transform as the oracle.
fn apply_hamiltonian(
    psi: &PureState,
    grid: &SpatialGrid,
    params: &PtParams,
) -> Vec<Complex64> {
    let n = grid.n_qubits();
    let dim = grid.dim();
    let f = dft_matrix(n);
    let momentum = dense_apply(&f, psi);
    let kinetic_spectrum: Vec<Complex64> = momentum
        .iter()
        .enumerate()
        .map(|(j, a)| {
            let p = grid.momentum_of_index(j);
            a * (p * p / 2.0)
        })
        .collect();
    let kinetic = f.adjoint() * nalgebra::DVector::from_vec(kinetic_spectrum);
    (0..dim)
        .map(|j| kinetic[j] + psi.amplitude_at(j) * params.potential_at(grid.x(j)))
        .collect()
}

fn eigen_residual(mode: usize, psi: &PureState, grid: &SpatialGrid, params: &PtParams) -> f64 {
    let h_psi = apply_hamiltonian(psi, grid, params);
    let e = energy(mode, params).unwrap();
    h_psi
        .iter()
        .zip(psi.amplitudes())
        .map(|(h, a)| (h - a * e).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

#[test]
fn sampled_modes_are_orthonormal_on_the_default_box() {
    let params = PtParams::new(4.0, 1.0).unwrap();
    assert_eq!(bound_count(&params), 3);
    let grid = build_grid(9, 10.0).unwrap();
    // Mode 2 decays as e^{-|x|} and keeps a ~5e-5 edge amplitude on this
    // box, so it only ships through the unchecked constructor.
    let modes = [
        grid_eigenstate(0, &params, &grid).unwrap(),
        grid_eigenstate(1, &params, &grid).unwrap(),
        grid_eigenstate_unchecked(2, &params, &grid).unwrap(),
    ];
    for (i, a) in modes.iter().enumerate() {
        for (j, b) in modes.iter().enumerate() {
            let gram = a.inner(b).unwrap();
            let expect = if i == j { 1.0 } else { 0.0 };
            assert!(
                (gram - c(expect, 0.0)).norm() <= 1e-8,
                "Gram[{i}][{j}] = {gram} deviates from {expect}"
            );
        }
    }
}

#[test]
fn eigen_residuals_vanish_on_a_wide_box() {
    // On a box wide enough for every bound mode's exponential tail, the
    // sampled modes solve the discrete eigenproblem to better than 1e-6.
    let params = PtParams::new(4.0, 1.0).unwrap();
    let grid = build_grid(9, 18.0).unwrap();
    for mode in 0..bound_count(&params) {
        let psi = grid_eigenstate(mode, &params, &grid).unwrap();
        let r = eigen_residual(mode, &psi, &grid, &params);
        assert!(r < 1e-6, "mode {mode} residual {r:.3e} on the wide box");
    }
}

#[test]
fn eigen_residuals_on_the_default_box_reflect_each_tail() {
    // On the default half-width-10 box the residual is set by the periodic
    // wraparound of each mode's tail: e^{-3|x|}, e^{-2|x|}, e^{-|x|}.
    let params = PtParams::new(4.0, 1.0).unwrap();
    let grid = build_grid(9, 10.0).unwrap();
    let r0 = eigen_residual(0, &grid_eigenstate(0, &params, &grid).unwrap(), &grid, &params);
    let r1 = eigen_residual(1, &grid_eigenstate(1, &params, &grid).unwrap(), &grid, &params);
    let r2 = eigen_residual(
        2,
        &grid_eigenstate_unchecked(2, &params, &grid).unwrap(),
        &grid,
        &params,
    );
    assert!(r0 < 1e-6, "ground-mode residual {r0:.3e}");
    assert!(r1 < 1e-5, "first-mode residual {r1:.3e}");
    assert!(r2 < 5e-3, "second-mode residual {r2:.3e}");
    assert!(r0 < r1 && r1 < r2, "residuals must grow with the mode's range");
}

#[test]
fn sampled_modes_alternate_parity() {
    let params = PtParams::new(4.0, 1.0).unwrap();
    let grid = build_grid(9, 10.0).unwrap();
    let dim = grid.dim();
    for mode in 0..3 {
        let psi = grid_eigenstate_unchecked(mode, &params, &grid).unwrap();
        let sign = if mode % 2 == 0 { 1.0 } else { -1.0 };
        // x_j = -L + j dx mirrors to x_{N-j} = -x_j for j >= 1; the j=0
        // point sits at -L with no grid partner.
        for j in 1..dim {
            let a = psi.amplitude_at(j);
            let b = psi.amplitude_at(dim - j);
            assert!(
                (a - b * c(sign, 0.0)).norm() < 1e-12,
                "mode {mode}: parity broken at j={j}"
            );
        }
    }
}

#[test]
fn two_mode_overlap_follows_the_beat_formula() {
    // |<psi(0)|psi(t)>|^2 = (1 + cos((E1-E0) t))/2 with E1-E0 = 2.5.
    let params = PtParams::new(4.0, 1.0).unwrap();
    let coeffs = ModeCoefficients::new(
        &params,
        vec![(0, c(FRAC_1_SQRT_2, 0.0)), (1, c(0.0, FRAC_1_SQRT_2))],
    )
    .unwrap();
    let grid = build_grid(9, 10.0).unwrap();
    let at = |t: f64| reference_state(&grid, t, &params, &coeffs).unwrap();
    let start = at(0.0);
    let beat = |t: f64| (1.0 + (2.5 * t).cos()) / 2.0;
    for &t in &[0.3, 1.0, 2.0, 4.7] {
        let fid = start.fidelity(&at(t)).unwrap();
        assert!(
            (fid - beat(t)).abs() < 1e-12,
            "overlap at t={t}: {fid:.17} vs {:.17}",
            beat(t)
        );
    }
    // Frozen spot value at t=1.
    let fid = start.fidelity(&at(1.0)).unwrap();
    assert!((fid - 0.099428192226533143).abs() < 1e-12);
}

#[test]
fn two_mode_state_revives_with_the_beat_period() {
    let params = PtParams::new(4.0, 1.0).unwrap();
    let coeffs = ModeCoefficients::new(
        &params,
        vec![(0, c(FRAC_1_SQRT_2, 0.0)), (1, c(0.0, FRAC_1_SQRT_2))],
    )
    .unwrap();
    let grid = build_grid(9, 10.0).unwrap();
    let period = 2.0 * std::f64::consts::PI / 2.5;
    let at = |t: f64| reference_state(&grid, t, &params, &coeffs).unwrap();
    for &t in &[0.0, 0.4, 1.3] {
        let fid = at(t).fidelity(&at(t + period)).unwrap();
        assert!((fid - 1.0).abs() < 1e-12, "no revival at t={t}: {fid}");
        // Half a beat later the state is orthogonal to where it started.
        let anti = at(t).fidelity(&at(t + period / 2.0)).unwrap();
        assert!(anti < 1e-12, "t={t}: half-period overlap {anti:.3e}");
    }
}

#[test]
fn the_well_deepens_quadratically_with_lambda() {
    // Spot physics: V(0) = -lambda(lambda-1)/2 and the mode count grows
    // with the well depth.
    for (lambda, depth, count) in [(2.0, 1.0, 1), (4.0, 6.0, 3), (5.5, 12.375, 5)] {
        let params = PtParams::new(lambda, 1.0).unwrap();
        assert!((params.potential_at(0.0) + depth).abs() < 1e-12);
        assert_eq!(bound_count(&params), count);
    }
}
