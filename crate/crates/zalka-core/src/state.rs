//! Pure states of an n-qubit register and elementary gate application.
//!
//! Amplitude ordering: qubit 0 is the most significant bit of the register
//! index, so for n = 2 the basis order is |00⟩, |01⟩, |10⟩, |11⟩ and qubit 0
//! selects the high bit. Every gate-application routine below is validated
//! against dense Kronecker-embedded operator multiplication in the
//! integration tests.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::rng::RandomStream;

/// A 2×2 complex matrix in row-major order; the payload of one-qubit gates.
pub type Mat2 = [[Complex64; 2]; 2];

/// The Hadamard gate.
pub const HADAMARD: Mat2 = {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    [
        [Complex64::new(h, 0.0), Complex64::new(h, 0.0)],
        [Complex64::new(h, 0.0), Complex64::new(-h, 0.0)],
    ]
};

/// Product `a · b` of two one-qubit gates.
pub fn mat2_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

/// Largest absolute entry of `m† m − I`; zero for a unitary matrix.
pub fn mat2_unitarity_defect(m: &Mat2) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..2 {
        for j in 0..2 {
            let mut s = Complex64::new(0.0, 0.0);
            for k in 0..2 {
                s += m[k][i].conj() * m[k][j];
            }
            if i == j {
                s -= 1.0;
            }
            worst = worst.max(s.norm());
        }
    }
    worst
}

/// State vector of an n-qubit register: 2ⁿ complex amplitudes.
///
/// All gates applied here are unitary (the noisy gates of the noise model are
/// themselves unitary), so the squared norm stays 1 up to rounding.
#[derive(Clone, Debug)]
pub struct PureState {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl PureState {
    /// The computational basis state |index⟩.
    pub fn basis_state(n_qubits: usize, index: usize) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::domain("register needs at least one qubit"));
        }
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::domain(format!(
                "basis index {index} out of range for {n_qubits} qubits (dim {dim})"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(PureState { n_qubits, amps })
    }

    /// Wraps amplitudes that are already normalized (squared norm within
    /// 1e−8 of 1).
    pub fn from_amplitudes(n_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        if n_qubits == 0 || amps.len() != 1 << n_qubits {
            return Err(Error::domain(format!(
                "amplitude vector of length {} does not match {} qubits",
                amps.len(),
                n_qubits
            )));
        }
        let norm_sq: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > 1e-8 {
            return Err(Error::validation(format!(
                "amplitudes are not normalized (squared norm {norm_sq})"
            )));
        }
        Ok(PureState { n_qubits, amps })
    }

    /// Normalizes an arbitrary nonzero amplitude vector.
    pub fn from_unnormalized(n_qubits: usize, mut amps: Vec<Complex64>) -> Result<Self> {
        if n_qubits == 0 || amps.len() != 1 << n_qubits {
            return Err(Error::domain(format!(
                "amplitude vector of length {} does not match {} qubits",
                amps.len(),
                n_qubits
            )));
        }
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::validation("cannot normalize the zero vector"));
        }
        for a in &mut amps {
            *a /= norm;
        }
        Ok(PureState { n_qubits, amps })
    }

    /// A state drawn from the Haar (unitary-invariant) measure: 2ⁿ
    /// independent standard complex Gaussians, normalized.
    pub fn haar_state(n_qubits: usize, stream: &mut RandomStream) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::domain("register needs at least one qubit"));
        }
        let dim = 1usize << n_qubits;
        let mut amps = Vec::with_capacity(dim);
        for _ in 0..dim {
            let re = stream.standard_normal();
            let im = stream.standard_normal();
            amps.push(Complex64::new(re, im));
        }
        Self::from_unnormalized(n_qubits, amps)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Register-index bit mask selecting `qubit` (qubit 0 = most significant).
    fn bit(&self, qubit: usize) -> usize {
        1usize << (self.n_qubits - 1 - qubit)
    }

    fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit >= self.n_qubits {
            return Err(Error::domain(format!(
                "qubit {qubit} out of range for {} qubits",
                self.n_qubits
            )));
        }
        Ok(())
    }

    /// Applies a one-qubit gate to `target`, i.e. multiplies the state by
    /// `gate ⊗ identity` embedded on that qubit.
    pub fn apply_1q(&mut self, gate: &Mat2, target: usize) -> Result<()> {
        self.check_qubit(target)?;
        let bit = self.bit(target);
        let dim = self.amps.len();
        let (g00, g01, g10, g11) = (gate[0][0], gate[0][1], gate[1][0], gate[1][1]);
        let mut i = 0;
        while i < dim {
            if i & bit == 0 {
                let j = i | bit;
                let a0 = self.amps[i];
                let a1 = self.amps[j];
                self.amps[i] = g00 * a0 + g01 * a1;
                self.amps[j] = g10 * a0 + g11 * a1;
            }
            i += 1;
        }
        Ok(())
    }

    /// `apply_1q` with an upfront unitarity check (tolerance 1e−10). The
    /// unchecked variant is the hot-loop default because every gate the
    /// toolkit constructs is unitary by construction.
    pub fn apply_1q_strict(&mut self, gate: &Mat2, target: usize) -> Result<()> {
        let defect = mat2_unitarity_defect(gate);
        if defect > 1e-10 {
            return Err(Error::validation(format!(
                "gate is not unitary (defect {defect:.3e})"
            )));
        }
        self.apply_1q(gate, target)
    }

    /// Controlled phase: amplitudes with both `q1` and `q2` bits set gain the
    /// factor e^{−iθ}; all others are unchanged. The gate is symmetric in its
    /// two qubits.
    pub fn apply_cphase(&mut self, q1: usize, q2: usize, theta: f64) -> Result<()> {
        self.check_qubit(q1)?;
        self.check_qubit(q2)?;
        if q1 == q2 {
            return Err(Error::domain(format!(
                "controlled phase needs two distinct qubits (got {q1} twice)"
            )));
        }
        let mask = self.bit(q1) | self.bit(q2);
        let phase = Complex64::from_polar(1.0, -theta);
        for (i, a) in self.amps.iter_mut().enumerate() {
            if i & mask == mask {
                *a *= phase;
            }
        }
        Ok(())
    }

    /// Exchanges the roles of two qubits (amplitude at index i moves to the
    /// index with the q1 and q2 bits swapped). Involution.
    pub fn swap_qubits(&mut self, q1: usize, q2: usize) -> Result<()> {
        self.check_qubit(q1)?;
        self.check_qubit(q2)?;
        if q1 == q2 {
            return Err(Error::domain(format!(
                "swap needs two distinct qubits (got {q1} twice)"
            )));
        }
        let (b1, b2) = (self.bit(q1), self.bit(q2));
        for i in 0..self.amps.len() {
            // Pick each {01, 10} pair exactly once.
            if i & b1 != 0 && i & b2 == 0 {
                let j = (i & !b1) | b2;
                self.amps.swap(i, j);
            }
        }
        Ok(())
    }

    /// Reverses the qubit order (relabels qubit q as qubit n−1−q), i.e.
    /// permutes amplitudes by bit-reversal of the register index. This is the
    /// output-order correction of the Fourier circuits; it is pure index
    /// relabeling and carries no gate noise.
    pub fn reverse_qubit_order(&mut self) {
        let n = self.n_qubits as u32;
        for i in 0..self.amps.len() {
            let r = (i.reverse_bits() >> (usize::BITS - n)) as usize;
            if i < r {
                self.amps.swap(i, r);
            }
        }
    }

    /// Inner product ⟨self|other⟩ = Σⱼ conj(selfⱼ)·otherⱼ.
    pub fn inner(&self, other: &PureState) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::domain(format!(
                "dimension mismatch: {} vs {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Fidelity |⟨self|other⟩|² between two normalized states.
    pub fn fidelity(&self, other: &PureState) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// Amplitude at a register index (panics when out of range).
    pub fn amplitude_at(&self, index: usize) -> Complex64 {
        self.amps[index]
    }
}
