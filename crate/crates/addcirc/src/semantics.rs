//! Dense-matrix evaluation of both circuit kinds.
//!
//! This is the ground truth every transformation in the crate is checked
//! against. Matrices are dense and complex; the intended scale is a desk
//! oracle (n ≤ 10 qubits, N ≤ 1024), not a simulator. Gates are applied as
//! sparse row operations on the accumulated matrix — a diagonal scale, a
//! two-row rotation or a row swap — which keeps evaluation at O(N²) per gate
//! while agreeing with the naive full matrix product to within 1e-12.

use num_complex::Complex;
use thiserror::Error;

use crate::angle::Angle;
use crate::ir::{AdditiveCircuit, AdditiveGate, BasisIndex, MultCircuit, MultGate};
use crate::scalar::Scalar;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SemanticsError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
}

/// A dense complex `N×N` matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryMatrix<S> {
    dim: usize,
    entries: Vec<Complex<S>>,
}

impl<S: Scalar> UnitaryMatrix<S> {
    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![Complex::new(S::zero(), S::zero()); dim * dim];
        for r in 0..dim {
            entries[r * dim + r] = Complex::new(S::one(), S::zero());
        }
        UnitaryMatrix { dim, entries }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex<S>) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                entries.push(f(r, c));
            }
        }
        UnitaryMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex<S> {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Complex<S>] {
        &self.entries
    }

    /// Naive `O(N³)` matrix product `self · rhs`.
    pub fn mul(&self, rhs: &Self) -> Result<Self, SemanticsError> {
        if self.dim != rhs.dim {
            return Err(SemanticsError::DimMismatch(self.dim, rhs.dim));
        }
        let n = self.dim;
        let mut out = vec![Complex::new(S::zero(), S::zero()); n * n];
        for r in 0..n {
            for k in 0..n {
                let a = self.entries[r * n + k];
                if a.norm_sqr() == S::zero() {
                    continue;
                }
                for c in 0..n {
                    out[r * n + c] = out[r * n + c] + a * rhs.entries[k * n + c];
                }
            }
        }
        Ok(UnitaryMatrix { dim: n, entries: out })
    }

    pub fn dagger(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self.get(c, r).conj())
    }

    pub fn scale(&self, factor: Complex<S>) -> Self {
        UnitaryMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|e| *e * factor).collect(),
        }
    }

    /// Largest elementwise absolute difference.
    pub fn max_diff(&self, other: &Self) -> Result<S, SemanticsError> {
        if self.dim != other.dim {
            return Err(SemanticsError::DimMismatch(self.dim, other.dim));
        }
        let mut worst = S::zero();
        for (a, b) in self.entries.iter().zip(&other.entries) {
            worst = worst.max((*a - *b).norm());
        }
        Ok(worst)
    }

    /// `‖U†U − I‖_max`, the unitarity defect.
    pub fn unitarity_defect(&self) -> S {
        let gram = self.dagger().mul(self).expect("same dim");
        gram.max_diff(&Self::identity(self.dim)).expect("same dim")
    }

    pub fn column(&self, col: usize) -> StateVector<S> {
        StateVector {
            amplitudes: (0..self.dim).map(|r| self.get(r, col)).collect(),
        }
    }

    /// True iff every entry is exactly 0 or 1 and the matrix is a permutation.
    pub fn as_exact_permutation(&self) -> Option<Vec<usize>> {
        let zero = Complex::new(S::zero(), S::zero());
        let one = Complex::new(S::one(), S::zero());
        let mut image = vec![usize::MAX; self.dim];
        for (c, slot) in image.iter_mut().enumerate() {
            let mut hit = None;
            for r in 0..self.dim {
                let e = self.get(r, c);
                if e == one {
                    if hit.is_some() {
                        return None;
                    }
                    hit = Some(r);
                } else if e != zero {
                    return None;
                }
            }
            *slot = hit?;
        }
        let mut seen = vec![false; self.dim];
        for &r in &image {
            if seen[r] {
                return None;
            }
            seen[r] = true;
        }
        Some(image)
    }
}

/// An `N`-dimensional complex state vector.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<S> {
    amplitudes: Vec<Complex<S>>,
}

impl<S: Scalar> StateVector<S> {
    pub fn basis(dim: usize, index: BasisIndex) -> Self {
        let mut amplitudes = vec![Complex::new(S::zero(), S::zero()); dim];
        amplitudes[index.index()] = Complex::new(S::one(), S::zero());
        StateVector { amplitudes }
    }

    pub fn from_amplitudes(amplitudes: Vec<Complex<S>>) -> Self {
        StateVector { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitude(&self, i: usize) -> Complex<S> {
        self.amplitudes[i]
    }

    pub fn amplitudes(&self) -> &[Complex<S>] {
        &self.amplitudes
    }

    pub fn norm(&self) -> S {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<S>().sqrt()
    }

    pub fn max_diff(&self, other: &Self) -> Result<S, SemanticsError> {
        if self.dim() != other.dim() {
            return Err(SemanticsError::DimMismatch(self.dim(), other.dim()));
        }
        let mut worst = S::zero();
        for (a, b) in self.amplitudes.iter().zip(&other.amplitudes) {
            worst = worst.max((*a - *b).norm());
        }
        Ok(worst)
    }
}

/// State snapshots through a circuit: one before gate 0 and one after each
/// gate. Wire styling in the renderer reads amplitudes off these.
#[derive(Clone, Debug)]
pub struct StateTrace<S> {
    snapshots: Vec<StateVector<S>>,
}

impl<S: Scalar> StateTrace<S> {
    pub fn snapshots(&self) -> &[StateVector<S>] {
        &self.snapshots
    }

    pub fn len(&self) -> usize {
        self.snapshots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.snapshots.is_empty()
    }

    pub fn final_state(&self) -> &StateVector<S> {
        self.snapshots.last().expect("trace has at least the input snapshot")
    }
}

fn cis<S: Scalar>(angle: Angle<S>) -> Complex<S> {
    Complex::new(angle.radians().cos(), angle.radians().sin())
}

// Row actions on a dim×ncols row-major buffer. Used for both matrices
// (ncols = dim) and state vectors (ncols = 1).

fn scale_row<S: Scalar>(buf: &mut [Complex<S>], ncols: usize, row: usize, factor: Complex<S>) {
    for e in &mut buf[row * ncols..(row + 1) * ncols] {
        *e = *e * factor;
    }
}

fn swap_rows<S: Scalar>(buf: &mut [Complex<S>], ncols: usize, a: usize, b: usize) {
    for c in 0..ncols {
        buf.swap(a * ncols + c, b * ncols + c);
    }
}

/// Rows (i, j) ← (cos·i − sin·j, sin·i + cos·j).
fn rotate_rows<S: Scalar>(buf: &mut [Complex<S>], ncols: usize, i: usize, j: usize, half: S) {
    let (cos, sin) = (half.cos(), half.sin());
    for c in 0..ncols {
        let top = buf[i * ncols + c];
        let bottom = buf[j * ncols + c];
        buf[i * ncols + c] = top.scale(cos) - bottom.scale(sin);
        buf[j * ncols + c] = top.scale(sin) + bottom.scale(cos);
    }
}

fn apply_additive_gate<S: Scalar>(
    buf: &mut [Complex<S>],
    ncols: usize,
    gate: &AdditiveGate<S>,
) {
    match *gate {
        AdditiveGate::RyPlus { i, j, theta } => {
            rotate_rows(buf, ncols, i, j, theta.half().radians());
        }
        AdditiveGate::RzPlus { k, theta } => scale_row(buf, ncols, k, cis(theta)),
        AdditiveGate::XPlus { i, j } => swap_rows(buf, ncols, i, j),
    }
}

fn apply_mult_gate<S: Scalar>(buf: &mut [Complex<S>], ncols: usize, n: usize, gate: &MultGate<S>) {
    let dim = 1usize << n;
    let controls_set = |m: usize, controls: &[usize]| controls.iter().all(|&c| m >> c & 1 == 1);
    match gate {
        MultGate::Ry { qubit, theta } => {
            let half = theta.half().radians();
            for m in 0..dim {
                if m >> qubit & 1 == 0 {
                    rotate_rows(buf, ncols, m, m | 1 << qubit, half);
                }
            }
        }
        MultGate::Rz { qubit, theta } => {
            let lower = cis(-theta.half());
            let upper = cis(theta.half());
            for m in 0..dim {
                let factor = if m >> qubit & 1 == 0 { lower } else { upper };
                scale_row(buf, ncols, m, factor);
            }
        }
        MultGate::X { qubit } => {
            for m in 0..dim {
                if m >> qubit & 1 == 0 {
                    swap_rows(buf, ncols, m, m | 1 << qubit);
                }
            }
        }
        MultGate::Cx { control, target } => {
            for m in 0..dim {
                if m >> control & 1 == 1 && m >> target & 1 == 0 {
                    swap_rows(buf, ncols, m, m | 1 << target);
                }
            }
        }
        MultGate::Mcx { controls, target } => {
            for m in 0..dim {
                if m >> target & 1 == 0 && controls_set(m, controls) {
                    swap_rows(buf, ncols, m, m | 1 << target);
                }
            }
        }
        MultGate::McRy { controls, target, theta } => {
            let half = theta.half().radians();
            for m in 0..dim {
                if m >> target & 1 == 0 && controls_set(m, controls) {
                    rotate_rows(buf, ncols, m, m | 1 << target, half);
                }
            }
        }
        MultGate::CPhase { controls, theta } => {
            let factor = cis(*theta);
            for m in 0..dim {
                if controls_set(m, controls) {
                    scale_row(buf, ncols, m, factor);
                }
            }
        }
    }
}

/// The `N×N` matrix of a single additive gate.
pub fn gate_matrix_additive<S: Scalar>(gate: &AdditiveGate<S>, dim: usize) -> UnitaryMatrix<S> {
    let mut m = UnitaryMatrix::identity(dim);
    apply_additive_gate(&mut m.entries, dim, gate);
    m
}

/// The `2ⁿ×2ⁿ` matrix of a single qubit gate.
pub fn gate_matrix_mult<S: Scalar>(gate: &MultGate<S>, n: usize) -> UnitaryMatrix<S> {
    let dim = 1usize << n;
    let mut m = UnitaryMatrix::identity(dim);
    apply_mult_gate(&mut m.entries, dim, n, gate);
    m
}

/// Evaluates an additive circuit to its unitary, including global phase.
pub fn eval_additive<S: Scalar>(circuit: &AdditiveCircuit<S>) -> UnitaryMatrix<S> {
    let dim = circuit.dim();
    let mut m = UnitaryMatrix::identity(dim);
    for gate in circuit.gates() {
        apply_additive_gate(&mut m.entries, dim, gate);
    }
    if circuit.global_phase().radians() != S::zero() {
        m = m.scale(cis(circuit.global_phase()));
    }
    m
}

/// Evaluates a qubit circuit to its unitary, including global phase.
pub fn eval_mult<S: Scalar>(circuit: &MultCircuit<S>) -> UnitaryMatrix<S> {
    let n = circuit.n_qubits();
    let dim = circuit.dim();
    let mut m = UnitaryMatrix::identity(dim);
    for gate in circuit.gates() {
        apply_mult_gate(&mut m.entries, dim, n, gate);
    }
    if circuit.global_phase().radians() != S::zero() {
        m = m.scale(cis(circuit.global_phase()));
    }
    m
}

/// Hilbert–Schmidt fidelity `|tr(U†V)| / N`.
pub fn hs_fidelity<S: Scalar>(
    u: &UnitaryMatrix<S>,
    v: &UnitaryMatrix<S>,
) -> Result<S, SemanticsError> {
    if u.dim() != v.dim() {
        return Err(SemanticsError::DimMismatch(u.dim(), v.dim()));
    }
    let mut trace = Complex::new(S::zero(), S::zero());
    for (a, b) in u.entries.iter().zip(&v.entries) {
        trace = trace + a.conj() * *b;
    }
    Ok(trace.norm() / S::from_f64_lossy(u.dim() as f64))
}

/// Global-phase-insensitive equivalence: `|tr(U†V)|/N ≥ 1 − tol`.
pub fn equiv_up_to_phase<S: Scalar>(
    u: &UnitaryMatrix<S>,
    v: &UnitaryMatrix<S>,
    tol: S,
) -> Result<bool, SemanticsError> {
    Ok(hs_fidelity(u, v)? >= S::one() - tol)
}

/// Runs a state through the circuit, snapshotting before gate 0 and after
/// every gate. The global phase enters at the first snapshot, so the final
/// snapshot equals `eval_additive(circuit) · input`.
pub fn trace_state<S: Scalar>(
    circuit: &AdditiveCircuit<S>,
    input: &StateVector<S>,
) -> Result<StateTrace<S>, SemanticsError> {
    if input.dim() != circuit.dim() {
        return Err(SemanticsError::DimMismatch(input.dim(), circuit.dim()));
    }
    let mut current = input.clone();
    if circuit.global_phase().radians() != S::zero() {
        let factor = cis(circuit.global_phase());
        for a in &mut current.amplitudes {
            *a = *a * factor;
        }
    }
    let mut snapshots = Vec::with_capacity(circuit.gates().len() + 1);
    snapshots.push(current.clone());
    for gate in circuit.gates() {
        apply_additive_gate(&mut current.amplitudes, 1, gate);
        snapshots.push(current.clone());
    }
    Ok(StateTrace { snapshots })
}

/// [`trace_state`] from a computational basis state.
pub fn trace_state_basis<S: Scalar>(
    circuit: &AdditiveCircuit<S>,
    input: BasisIndex,
) -> Result<StateTrace<S>, SemanticsError> {
    trace_state(circuit, &StateVector::basis(circuit.dim(), input))
}
