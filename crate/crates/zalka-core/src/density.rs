//! Density matrices on small registers, quantum-channel application, and
//! spectral rank truncation.
//!
//! These routines back the mixed-state fidelity oracle: they are dense and
//! O(dim²) per gate, intended for registers up to ~10 qubits, not for the
//! wave-function propagator (which stays in [`crate::state`]).

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::PureState;

/// A set of Kraus operators {Eᵢ} representing the quantum operation
/// ρ ↦ Σᵢ Eᵢ ρ Eᵢ†. Construction enforces the completeness relation
/// Σᵢ Eᵢ†Eᵢ = I within 1e−12, so every `KrausSet` is trace preserving.
#[derive(Clone, Debug)]
pub struct KrausSet {
    label: String,
    ops: Vec<DMatrix<Complex64>>,
}

impl KrausSet {
    pub fn new(label: impl Into<String>, ops: Vec<DMatrix<Complex64>>) -> Result<Self> {
        let label = label.into();
        let dim = match ops.first() {
            Some(op) => op.nrows(),
            None => return Err(Error::domain(format!("{label}: needs at least one operator"))),
        };
        if !dim.is_power_of_two() {
            return Err(Error::domain(format!(
                "{label}: operator dimension {dim} is not a power of two"
            )));
        }
        for op in &ops {
            if op.nrows() != dim || op.ncols() != dim {
                return Err(Error::domain(format!(
                    "{label}: operators must all be {dim}×{dim}"
                )));
            }
        }
        let defect = completeness_defect(&ops);
        if defect > 1e-12 {
            return Err(Error::validation(format!(
                "{label}: operators violate completeness (defect {defect:.3e})"
            )));
        }
        Ok(KrausSet { label, ops })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn operators(&self) -> &[DMatrix<Complex64>] {
        &self.ops
    }

    pub fn dim(&self) -> usize {
        self.ops[0].nrows()
    }

    /// Number of qubits the operators act on (dim = 2^k).
    pub fn n_target_qubits(&self) -> usize {
        self.dim().trailing_zeros() as usize
    }

    /// Largest absolute entry of Σᵢ Eᵢ†Eᵢ − I.
    pub fn completeness_defect(&self) -> f64 {
        completeness_defect(&self.ops)
    }
}

/// Largest absolute entry of Σᵢ Eᵢ†Eᵢ − I for a raw operator list.
fn completeness_defect(ops: &[DMatrix<Complex64>]) -> f64 {
    let dim = ops[0].nrows();
    let mut sum = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
    for op in ops {
        sum += op.adjoint() * op;
    }
    let mut worst = 0.0f64;
    for i in 0..dim {
        for j in 0..dim {
            let mut z = sum[(i, j)];
            if i == j {
                z -= Complex64::new(1.0, 0.0);
            }
            worst = worst.max(z.norm());
        }
    }
    worst
}

/// Dense density matrix ρ of an n-qubit register.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    n_qubits: usize,
    mat: DMatrix<Complex64>,
}

impl DensityMatrix {
    /// ρ = |ψ⟩⟨ψ| for a pure state.
    pub fn from_pure(state: &PureState) -> Self {
        let dim = state.dim();
        let amps = state.amplitudes();
        let mat = DMatrix::from_fn(dim, dim, |i, j| amps[i] * amps[j].conj());
        DensityMatrix {
            n_qubits: state.n_qubits(),
            mat,
        }
    }

    /// Wraps an existing matrix; the caller asserts it is a valid register
    /// operator (square, dimension 2ⁿ).
    pub fn from_matrix(n_qubits: usize, mat: DMatrix<Complex64>) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if mat.nrows() != dim || mat.ncols() != dim {
            return Err(Error::domain(format!(
                "matrix is {}×{}, expected {dim}×{dim} for {n_qubits} qubits",
                mat.nrows(),
                mat.ncols()
            )));
        }
        Ok(DensityMatrix { n_qubits, mat })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.mat
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.mat[(i, i)].re).sum()
    }

    /// ⟨ψ|ρ|ψ⟩ — the fidelity of ρ against a pure target.
    pub fn fidelity_with_pure(&self, state: &PureState) -> Result<f64> {
        if state.dim() != self.dim() {
            return Err(Error::domain(format!(
                "dimension mismatch: {} vs {}",
                state.dim(),
                self.dim()
            )));
        }
        let amps = state.amplitudes();
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                acc += amps[i].conj() * self.mat[(i, j)] * amps[j];
            }
        }
        Ok(acc.re)
    }

    /// Register-index bit positions (qubit 0 = most significant bit).
    fn masks(&self, targets: &[usize]) -> Result<Vec<usize>> {
        let mut seen = vec![false; self.n_qubits];
        let mut masks = Vec::with_capacity(targets.len());
        for &q in targets {
            if q >= self.n_qubits {
                return Err(Error::domain(format!(
                    "qubit {q} out of range for {} qubits",
                    self.n_qubits
                )));
            }
            if seen[q] {
                return Err(Error::domain(format!("qubit {q} listed twice")));
            }
            seen[q] = true;
            masks.push(1usize << (self.n_qubits - 1 - q));
        }
        Ok(masks)
    }

    /// Enumerates the register indices reachable by varying only the target
    /// qubits: for each of the dim/2^d "rest" configurations, the 2^d member
    /// indices in target-bit lexicographic order.
    fn embedding_classes(&self, masks: &[usize]) -> Vec<Vec<usize>> {
        let d = masks.len();
        let dim = self.dim();
        let all_mask: usize = masks.iter().sum();
        let mut classes = Vec::with_capacity(dim >> d);
        for rep in 0..dim {
            if rep & all_mask != 0 {
                continue;
            }
            let mut members = Vec::with_capacity(1 << d);
            for pattern in 0..(1usize << d) {
                let mut idx = rep;
                for (pos, &mask) in masks.iter().enumerate() {
                    if pattern & (1 << (d - 1 - pos)) != 0 {
                        idx |= mask;
                    }
                }
                members.push(idx);
            }
            classes.push(members);
        }
        classes
    }

    /// In-place ρ ← (op ⊗ I) ρ acting on the listed qubits; `op` must be
    /// 2^d × 2^d for d target qubits.
    fn left_multiply(&mut self, op: &DMatrix<Complex64>, classes: &[Vec<usize>]) {
        let d = classes[0].len();
        let dim = self.dim();
        let mut col_buf = vec![Complex64::new(0.0, 0.0); d];
        for class in classes {
            for col in 0..dim {
                for (k, &row) in class.iter().enumerate() {
                    col_buf[k] = self.mat[(row, col)];
                }
                for (k, &row) in class.iter().enumerate() {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (l, &v) in col_buf.iter().enumerate() {
                        acc += op[(k, l)] * v;
                    }
                    self.mat[(row, col)] = acc;
                }
            }
        }
    }

    /// In-place ρ ← ρ (op ⊗ I) acting on the listed qubits.
    fn right_multiply(&mut self, op: &DMatrix<Complex64>, classes: &[Vec<usize>]) {
        let d = classes[0].len();
        let dim = self.dim();
        let mut row_buf = vec![Complex64::new(0.0, 0.0); d];
        for class in classes {
            for row in 0..dim {
                for (k, &col) in class.iter().enumerate() {
                    row_buf[k] = self.mat[(row, col)];
                }
                for (k, &col) in class.iter().enumerate() {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (l, &v) in row_buf.iter().enumerate() {
                        acc += v * op[(l, k)];
                    }
                    self.mat[(row, col)] = acc;
                }
            }
        }
    }

    /// Unitary conjugation ρ ← U ρ U† with U acting on the listed qubits.
    /// `op` is the 2^d × 2^d matrix of U on those qubits (first listed qubit
    /// = most significant bit of the operator index).
    pub fn apply_gate(&mut self, op: &DMatrix<Complex64>, targets: &[usize]) -> Result<()> {
        let masks = self.masks(targets)?;
        let d = targets.len();
        if op.nrows() != 1 << d || op.ncols() != 1 << d {
            return Err(Error::domain(format!(
                "operator is {}×{}, expected {}×{} for {d} target qubits",
                op.nrows(),
                op.ncols(),
                1 << d,
                1 << d
            )));
        }
        let classes = self.embedding_classes(&masks);
        self.left_multiply(op, &classes);
        let op_dag = op.adjoint();
        self.right_multiply(&op_dag, &classes);
        Ok(())
    }

    /// Kraus-channel application ρ ← Σₖ Eₖ ρ Eₖ† with the operators embedded
    /// on the listed qubits.
    pub fn apply_channel(&mut self, kraus: &KrausSet, targets: &[usize]) -> Result<()> {
        let masks = self.masks(targets)?;
        let d = targets.len();
        if kraus.dim() != 1 << d {
            return Err(Error::domain(format!(
                "{}: operator dimension {} does not match {d} target qubits",
                kraus.label(),
                kraus.dim()
            )));
        }
        let classes = self.embedding_classes(&masks);
        let dim = self.dim();
        let mut acc = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
        for op in kraus.operators() {
            let mut term = self.clone();
            term.left_multiply(op, &classes);
            let op_dag = op.adjoint();
            term.right_multiply(&op_dag, &classes);
            acc += term.mat;
        }
        self.mat = acc;
        Ok(())
    }

    /// Eigenvalues of the (Hermitian) matrix in descending order.
    pub fn eigenvalues_desc(&self) -> Vec<f64> {
        let eig = self.mat.clone().symmetric_eigen();
        let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        vals.sort_by(|a, b| b.partial_cmp(a).unwrap());
        vals
    }

    /// Keeps the `rank` largest spectral components: ρ ← Σ_{k<rank} λₖ vₖvₖ†
    /// with eigenvalues sorted descending (ties keep their original order).
    /// The result is *not* renormalized — its trace is the surviving
    /// probability weight, which is exactly what the truncation-based
    /// fidelity oracle consumes.
    pub fn truncate_rank(&mut self, rank: usize) -> Result<()> {
        if rank == 0 {
            return Err(Error::domain("truncation rank must be at least 1"));
        }
        let dim = self.dim();
        if rank >= dim {
            return Ok(());
        }
        let eig = self.mat.clone().symmetric_eigen();
        let mut order: Vec<usize> = (0..dim).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[b].partial_cmp(&eig.eigenvalues[a]).unwrap());
        let mut out = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
        for &k in order.iter().take(rank) {
            let v = eig.eigenvectors.column(k);
            let lambda = Complex64::new(eig.eigenvalues[k], 0.0);
            for i in 0..dim {
                for j in 0..dim {
                    out[(i, j)] += lambda * v[i] * v[j].conj();
                }
            }
        }
        self.mat = out;
        Ok(())
    }
}
