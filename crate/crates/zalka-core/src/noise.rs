//! Gate-noise model: Monte Carlo sampling of noisy gates, the equivalent
//! Kraus channels, and tools for comparing quantum operations.
//!
//! Every imperfect gate is the ideal gate followed by a random unitary
//! defect. One-qubit gates pick up a real rotation by angle eξ with
//! ξ ~ N(0,1); controlled phase gates pick up the extra phase eξ on the
//! |11⟩ amplitude. Averaging over ξ turns each of these into a two-operator
//! Kraus channel, and `kraus_cphase_principal` re-expresses the phase channel
//! in the operator pair whose diagonals are orthogonal — the form whose
//! leading operator directly measures how much of the state survives
//! rank-1 truncation.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::density::KrausSet;
use crate::error::{Error, Result};
use crate::rng::RandomStream;
use crate::state::Mat2;

/// Dimensionless gate-error level e ≥ 0; e = 0 means noiseless.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseLevel(f64);

impl NoiseLevel {
    pub fn new(e: f64) -> Result<Self> {
        if !e.is_finite() || e < 0.0 {
            return Err(Error::domain(format!(
                "noise level must be finite and ≥ 0, got {e}"
            )));
        }
        Ok(NoiseLevel(e))
    }

    pub const ZERO: NoiseLevel = NoiseLevel(0.0);

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0.0
    }
}

/// Weights (λ₁, λ₂) of the rotation-noise channel: the identity component
/// carries λ₁ = (1 + e^{−2e²})/2 and the orthogonal rotation component
/// λ₂ = (1 − e^{−2e²})/2; λ₁ + λ₂ = 1.
pub fn rotation_weights(e: NoiseLevel) -> (f64, f64) {
    let decay = (-2.0 * e.value() * e.value()).exp();
    ((1.0 + decay) / 2.0, (1.0 - decay) / 2.0)
}

/// Coherence survival factor P = e^{−e²} of the noisy controlled phase:
/// the |11⟩⟨11| weight kept by the leading Kraus operator.
pub fn phase_coherence(e: NoiseLevel) -> f64 {
    (-e.value() * e.value()).exp()
}

/// Mixing coefficient f = (√(1+3P) − P − 1)/√(P(1−P)) of the principal-axes
/// form of the phase channel. The numerator is evaluated through the exact
/// rearrangement √(1+3P) − P − 1 = (1−P)·(√(1+3P) − 1)/(√(1+3P) + 2), which
/// avoids the subtractive cancellation as P → 1. The expression is still
/// 0/0 at P = 1 itself; for 1 − P < 1e−10 the series limit
/// f ≈ (√(1−P)/4)·(1 − (1−P)/16) is used instead (the next correction is
/// O((1−P)²) and far below f64 resolution there).
pub fn principal_mixing(e: NoiseLevel) -> f64 {
    let p = phase_coherence(e);
    // 1 − e^{−e²} via exp_m1: forming it as 1 − p would inherit p's own
    // rounding and cost ~half the significand at small e.
    let q = -(-e.value() * e.value()).exp_m1();
    if q < 1e-10 {
        return (q.sqrt() / 4.0) * (1.0 - q / 16.0);
    }
    let root = (1.0 + 3.0 * p).sqrt();
    (q / p).sqrt() * (root - 1.0) / (root + 2.0)
}

/// Random unitary defect of a noisy one-qubit gate: the rotation
/// [[cos(eξ), sin(eξ)], [−sin(eξ), cos(eξ)]] with a fresh ξ ~ N(0,1).
pub fn sample_rotation_noise(e: NoiseLevel, stream: &mut RandomStream) -> Mat2 {
    let angle = e.value() * stream.standard_normal();
    let (s, c) = angle.sin_cos();
    [
        [Complex64::new(c, 0.0), Complex64::new(s, 0.0)],
        [Complex64::new(-s, 0.0), Complex64::new(c, 0.0)],
    ]
}

/// One noisy instance of a one-qubit gate: ideal · V_noise (the defect acts
/// on the state first). Unitary whenever `ideal` is.
pub fn noisy_1q_gate(ideal: &Mat2, e: NoiseLevel, stream: &mut RandomStream) -> Mat2 {
    let v = sample_rotation_noise(e, stream);
    crate::state::mat2_mul(ideal, &v)
}

/// One noisy instance of a controlled-phase angle: θ + eξ with a fresh
/// ξ ~ N(0,1). The caller applies it through `PureState::apply_cphase`.
pub fn noisy_cphase_angle(theta: f64, e: NoiseLevel, stream: &mut RandomStream) -> f64 {
    theta + e.value() * stream.standard_normal()
}

/// Kraus channel statistically equivalent to the rotation defect:
/// E₁ = √λ₁·I, E₂ = √λ₂·[[0,1],[−1,0]].
pub fn kraus_rotation(e: NoiseLevel) -> KrausSet {
    let (l1, l2) = rotation_weights(e);
    let (s1, s2) = (l1.sqrt(), l2.sqrt());
    let zero = Complex64::new(0.0, 0.0);
    let e1 = DMatrix::from_row_slice(
        2,
        2,
        &[Complex64::new(s1, 0.0), zero, zero, Complex64::new(s1, 0.0)],
    );
    let e2 = DMatrix::from_row_slice(
        2,
        2,
        &[zero, Complex64::new(s2, 0.0), Complex64::new(-s2, 0.0), zero],
    );
    KrausSet::new("rotation noise", vec![e1, e2])
        .expect("rotation Kraus pair is complete by construction")
}

fn diag4(d: [f64; 4]) -> DMatrix<Complex64> {
    DMatrix::from_diagonal(&DVector::from_iterator(
        4,
        d.iter().map(|&x| Complex64::new(x, 0.0)),
    ))
}

/// Kraus channel statistically equivalent to the controlled-phase defect:
/// E₁ = diag(1,1,1,√P), E₂ = diag(0,0,0,√(1−P)) with P = e^{−e²}.
pub fn kraus_cphase(e: NoiseLevel) -> KrausSet {
    let p = phase_coherence(e);
    let e1 = diag4([1.0, 1.0, 1.0, p.sqrt()]);
    let e2 = diag4([0.0, 0.0, 0.0, (1.0 - p).sqrt()]);
    KrausSet::new("controlled-phase noise", vec![e1, e2])
        .expect("phase Kraus pair is complete by construction")
}

/// The same phase channel re-expressed along its principal axes:
/// Ẽ₁ = (E₁ + f·E₂)/√(1+f²), Ẽ₂ = (−f·E₁ + E₂)/√(1+f²), with f chosen so
/// the two operator diagonals are orthogonal. At e = 0 the pair degenerates
/// to {identity, zero} (the f → 0 limit).
pub fn kraus_cphase_principal(e: NoiseLevel) -> KrausSet {
    let p = phase_coherence(e);
    let (sp, sq) = (p.sqrt(), (1.0 - p).sqrt());
    let f = principal_mixing(e);
    let scale = 1.0 / (1.0 + f * f).sqrt();
    let e1 = diag4([scale, scale, scale, scale * (sp + f * sq)]);
    let e2 = diag4([
        -f * scale,
        -f * scale,
        -f * scale,
        scale * (-f * sp + sq),
    ]);
    KrausSet::new("controlled-phase noise (principal axes)", vec![e1, e2])
        .expect("principal-axes pair is complete by construction")
}

/// Which sampled gate defect an empirical channel averages over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GateKind {
    /// One-qubit rotation defect (dimension 2).
    Rotation,
    /// Controlled-phase defect (dimension 4).
    ControlledPhase,
}

/// A quantum operation in Choi form: the dim²×dim² matrix
/// C = Σᵢⱼ |i⟩⟨j| ⊗ ℰ(|i⟩⟨j|). Two Kraus sets describe the same operation
/// exactly when their Choi matrices are equal, which makes this the
/// canonical representation for channel comparison.
#[derive(Clone, Debug)]
pub struct ChannelAction {
    dim: usize,
    choi: DMatrix<Complex64>,
}

impl ChannelAction {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn choi(&self) -> &DMatrix<Complex64> {
        &self.choi
    }

    pub fn trace(&self) -> f64 {
        (0..self.choi.nrows()).map(|i| self.choi[(i, i)].re).sum()
    }

    /// Largest absolute entry of C − C†.
    pub fn hermiticity_defect(&self) -> f64 {
        let diff = &self.choi - self.choi.adjoint();
        diff.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Smallest eigenvalue of the (Hermitian) Choi matrix; ≥ −1e−10 for any
    /// physical channel.
    pub fn min_eigenvalue(&self) -> f64 {
        let eig = self.choi.clone().symmetric_eigen();
        eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Largest absolute entry of Tr₂ C − I: zero exactly when the channel is
    /// trace preserving.
    pub fn trace_preservation_defect(&self) -> f64 {
        let d = self.dim;
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                let mut z = Complex64::new(0.0, 0.0);
                for r in 0..d {
                    z += self.choi[(i * d + r, j * d + r)];
                }
                if i == j {
                    z -= Complex64::new(1.0, 0.0);
                }
                worst = worst.max(z.norm());
            }
        }
        worst
    }

    /// Largest absolute entry of the difference of two Choi matrices — the
    /// channel-comparison metric used throughout.
    pub fn max_entry_distance(&self, other: &ChannelAction) -> Result<f64> {
        if self.dim != other.dim {
            return Err(Error::domain(format!(
                "channel dimension mismatch: {} vs {}",
                self.dim, other.dim
            )));
        }
        let diff = &self.choi - &other.choi;
        Ok(diff.iter().map(|z| z.norm()).fold(0.0, f64::max))
    }
}

/// The column vector w with w[i·d + r] = E[r][i]; then C = Σₖ wₖwₖ†.
fn choi_vector(op: &DMatrix<Complex64>) -> DVector<Complex64> {
    let d = op.nrows();
    DVector::from_fn(d * d, |idx, _| {
        let (i, r) = (idx / d, idx % d);
        op[(r, i)]
    })
}

fn accumulate_choi(choi: &mut DMatrix<Complex64>, op: &DMatrix<Complex64>, weight: f64) {
    let w = choi_vector(op);
    let n = w.len();
    let scale = Complex64::new(weight, 0.0);
    for i in 0..n {
        for j in 0..n {
            choi[(i, j)] += scale * w[i] * w[j].conj();
        }
    }
}

/// Choi representation of the channel ρ ↦ Σᵢ Eᵢ ρ Eᵢ†.
pub fn channel_action(kraus: &KrausSet) -> ChannelAction {
    let d = kraus.dim();
    let mut choi = DMatrix::from_element(d * d, d * d, Complex64::new(0.0, 0.0));
    for op in kraus.operators() {
        accumulate_choi(&mut choi, op, 1.0);
    }
    ChannelAction { dim: d, choi }
}

/// Monte Carlo estimate of a noise channel: averages the conjugation action
/// of `n_samples` freshly sampled gate defects. Each sampled unitary V
/// contributes its exact action on the full matrix-unit basis |i⟩⟨j| — that
/// is precisely one rank-one term of the Choi matrix — so the result
/// converges to the analytic channel at the usual 1/√n rate.
pub fn empirical_channel(
    e: NoiseLevel,
    kind: GateKind,
    n_samples: usize,
    stream: &mut RandomStream,
) -> Result<ChannelAction> {
    if n_samples == 0 {
        return Err(Error::domain("empirical channel needs at least one sample"));
    }
    let d = match kind {
        GateKind::Rotation => 2,
        GateKind::ControlledPhase => 4,
    };
    let mut choi = DMatrix::from_element(d * d, d * d, Complex64::new(0.0, 0.0));
    for _ in 0..n_samples {
        let v = match kind {
            GateKind::Rotation => {
                let m = sample_rotation_noise(e, stream);
                DMatrix::from_row_slice(2, 2, &[m[0][0], m[0][1], m[1][0], m[1][1]])
            }
            GateKind::ControlledPhase => {
                let angle = noisy_cphase_angle(0.0, e, stream);
                let mut m = DMatrix::from_diagonal_element(4, 4, Complex64::new(1.0, 0.0));
                m[(3, 3)] = Complex64::from_polar(1.0, -angle);
                m
            }
        };
        accumulate_choi(&mut choi, &v, 1.0);
    }
    choi /= Complex64::new(n_samples as f64, 0.0);
    Ok(ChannelAction { dim: d, choi })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn noise_level_rejects_negative_and_non_finite() {
        assert!(NoiseLevel::new(0.0).is_ok());
        assert!(NoiseLevel::new(1.5).is_ok());
        assert!(NoiseLevel::new(-0.1).is_err());
        assert!(NoiseLevel::new(f64::NAN).is_err());
        assert!(NoiseLevel::ZERO.is_zero());
    }

    #[test]
    fn zero_noise_defect_is_identity() {
        let mut stream = RandomStream::new(1, 0);
        let v = sample_rotation_noise(NoiseLevel::ZERO, &mut stream);
        assert_eq!(v[0][0], Complex64::new(1.0, 0.0));
        assert_eq!(v[0][1], Complex64::new(0.0, 0.0));
        assert_eq!(v[1][0], Complex64::new(0.0, 0.0));
        assert_eq!(v[1][1], Complex64::new(1.0, 0.0));
        assert_eq!(
            noisy_cphase_angle(0.3, NoiseLevel::ZERO, &mut stream),
            0.3
        );
    }

    #[test]
    fn sampled_defects_are_special_orthogonal() {
        let e = NoiseLevel::new(0.4).unwrap();
        let mut stream = RandomStream::new(2, 0);
        for _ in 0..50 {
            let v = sample_rotation_noise(e, &mut stream);
            let det = v[0][0] * v[1][1] - v[0][1] * v[1][0];
            assert!((det - Complex64::new(1.0, 0.0)).norm() < 1e-14);
            assert!(crate::state::mat2_unitarity_defect(&v) < 1e-14);
        }
    }

    #[test]
    fn rotation_weights_sum_to_one() {
        for &e in &[0.0, 0.001, 0.05, 0.5, 1.0] {
            let (l1, l2) = rotation_weights(NoiseLevel::new(e).unwrap());
            assert!((l1 + l2 - 1.0).abs() < 1e-15);
            assert!(l1 >= 0.5 && l2 >= 0.0);
        }
    }

    #[test]
    fn kraus_constructors_produce_complete_sets() {
        for &e in &[0.0, 0.001, 0.01, 0.05, 0.1, 0.5, 1.0] {
            let e = NoiseLevel::new(e).unwrap();
            assert!(kraus_rotation(e).completeness_defect() < 1e-15);
            assert!(kraus_cphase(e).completeness_defect() < 1e-15);
            assert!(kraus_cphase_principal(e).completeness_defect() < 1e-15);
        }
    }

    #[test]
    fn principal_pair_degenerates_at_zero_noise() {
        let set = kraus_cphase_principal(NoiseLevel::ZERO);
        let ops = set.operators();
        let id = DMatrix::from_diagonal_element(4, 4, Complex64::new(1.0, 0.0));
        let d1 = (&ops[0] - id).iter().map(|z| z.norm()).fold(0.0, f64::max);
        let d2 = ops[1].iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(d1 < 1e-15, "leading operator should be the identity");
        assert!(d2 < 1e-15, "second operator should vanish");
    }

    #[test]
    fn choi_of_identity_is_max_entangled_projector() {
        let id = DMatrix::from_diagonal_element(2, 2, Complex64::new(1.0, 0.0));
        let set = KrausSet::new("identity", vec![id]).unwrap();
        let act = channel_action(&set);
        assert!((act.trace() - 2.0).abs() < 1e-14);
        // C = ww† with w = |00⟩+|11⟩: entries 1 exactly at the four corners
        // of the {0,3} block.
        for i in 0..4 {
            for j in 0..4 {
                let expect = if (i == 0 || i == 3) && (j == 0 || j == 3) {
                    1.0
                } else {
                    0.0
                };
                assert!((act.choi()[(i, j)] - Complex64::new(expect, 0.0)).norm() < 1e-15);
            }
        }
        assert!(act.trace_preservation_defect() < 1e-15);
        assert!(act.hermiticity_defect() < 1e-15);
    }

    #[test]
    fn empirical_channel_at_zero_noise_is_exactly_identity() {
        let mut stream = RandomStream::new(7, 0);
        let emp = empirical_channel(NoiseLevel::ZERO, GateKind::Rotation, 10, &mut stream).unwrap();
        let id = DMatrix::from_diagonal_element(2, 2, Complex64::new(1.0, 0.0));
        let exact = channel_action(&KrausSet::new("identity", vec![id]).unwrap());
        assert_eq!(emp.max_entry_distance(&exact).unwrap(), 0.0);
    }
}
