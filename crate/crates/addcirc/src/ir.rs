//! The two circuit representations.
//!
//! A [`MultCircuit`] is an ordinary qubit circuit: `n` qubits, gates embedded
//! into the `2^n`-dimensional joint space by Kronecker products. An
//! [`AdditiveCircuit`] instead treats every dimension of an `N`-dimensional
//! state space as a wire of its own; its three primitives act on one or two
//! dimensions and are the identity elsewhere.
//!
//! Gate lists compose left to right: the earliest gate in the list is applied
//! first. Both circuit kinds carry an explicit global phase so conversions
//! can be exact rather than "up to phase".
//!
//! Basis indices use the Little Endian convention: bit `q` of an index is the
//! state of qubit `q`, so |b₁b₀⟩ has index b₀ + 2·b₁.

use thiserror::Error;

use crate::angle::Angle;
use crate::scalar::Scalar;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IrError {
    #[error("dimension must be at least 1")]
    ZeroDim,
    #[error("qubit count must be at least 1")]
    ZeroQubits,
    #[error("index {index} out of range for dimension {dim}")]
    DimIndexOutOfRange { index: usize, dim: usize },
    #[error("qubit {qubit} out of range for {n} qubits")]
    QubitOutOfRange { qubit: usize, n: usize },
    #[error("gate indices must be distinct")]
    EqualIndices,
    #[error("control equals target")]
    ControlIsTarget,
    #[error("basis index {index} out of range for dimension {dim}")]
    BasisOutOfRange { index: usize, dim: usize },
}

/// A basis state of `n` qubits, identified by its Little Endian index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BasisIndex(usize);

impl BasisIndex {
    pub fn new(index: usize, dim: usize) -> Result<Self, IrError> {
        if index < dim {
            Ok(BasisIndex(index))
        } else {
            Err(IrError::BasisOutOfRange { index, dim })
        }
    }

    pub fn index(self) -> usize {
        self.0
    }

    /// State of qubit `q` in this basis index.
    pub fn bit(self, q: usize) -> bool {
        self.0 >> q & 1 == 1
    }
}

/// A primitive on an `N`-dimensional direct-sum space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AdditiveGate<S> {
    /// Real rotation mixing dimensions `i` and `j`; `i` indexes the first
    /// row of the 2×2 block.
    RyPlus { i: usize, j: usize, theta: Angle<S> },
    /// Phase `e^{iθ}` on dimension `k`.
    RzPlus { k: usize, theta: Angle<S> },
    /// Transposition of dimensions `i` and `j`.
    XPlus { i: usize, j: usize },
}

impl<S: Scalar> AdditiveGate<S> {
    pub fn ry(i: usize, j: usize, theta: S) -> Self {
        AdditiveGate::RyPlus { i, j, theta: Angle::new(theta) }
    }

    pub fn rz(k: usize, theta: S) -> Self {
        AdditiveGate::RzPlus { k, theta: Angle::new(theta) }
    }

    pub fn swap(i: usize, j: usize) -> Self {
        AdditiveGate::XPlus { i, j }
    }

    /// Dimensions the gate acts on, in slot order.
    pub fn support(&self) -> Vec<usize> {
        match *self {
            AdditiveGate::RyPlus { i, j, .. } | AdditiveGate::XPlus { i, j } => vec![i, j],
            AdditiveGate::RzPlus { k, .. } => vec![k],
        }
    }

    fn validate(&self, dim: usize) -> Result<(), IrError> {
        let check = |index: usize| {
            if index < dim {
                Ok(())
            } else {
                Err(IrError::DimIndexOutOfRange { index, dim })
            }
        };
        match *self {
            AdditiveGate::RyPlus { i, j, .. } | AdditiveGate::XPlus { i, j } => {
                check(i)?;
                check(j)?;
                if i == j {
                    return Err(IrError::EqualIndices);
                }
                Ok(())
            }
            AdditiveGate::RzPlus { k, .. } => check(k),
        }
    }
}

/// A circuit on an `N`-dimensional direct-sum space.
///
/// `dim` need not be a power of two; synthesis to qubits requires it, but the
/// model itself is defined for any `N ≥ 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct AdditiveCircuit<S> {
    dim: usize,
    gates: Vec<AdditiveGate<S>>,
    global_phase: Angle<S>,
}

impl<S: Scalar> AdditiveCircuit<S> {
    pub fn new(dim: usize) -> Result<Self, IrError> {
        if dim == 0 {
            return Err(IrError::ZeroDim);
        }
        Ok(AdditiveCircuit { dim, gates: Vec::new(), global_phase: Angle::zero() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gates(&self) -> &[AdditiveGate<S>] {
        &self.gates
    }

    pub fn global_phase(&self) -> Angle<S> {
        self.global_phase
    }

    pub fn set_global_phase(&mut self, phase: Angle<S>) {
        self.global_phase = phase;
    }

    pub fn add_global_phase(&mut self, phase: Angle<S>) {
        self.global_phase = self.global_phase + phase;
    }

    /// Appends a gate, validating its indices against `dim`.
    pub fn append(&mut self, gate: AdditiveGate<S>) -> Result<(), IrError> {
        gate.validate(self.dim)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend<I: IntoIterator<Item = AdditiveGate<S>>>(
        &mut self,
        gates: I,
    ) -> Result<(), IrError> {
        for gate in gates {
            self.append(gate)?;
        }
        Ok(())
    }

    /// Builds a circuit from gates, validating each.
    pub fn from_gates<I: IntoIterator<Item = AdditiveGate<S>>>(
        dim: usize,
        gates: I,
    ) -> Result<Self, IrError> {
        let mut circuit = Self::new(dim)?;
        circuit.extend(gates)?;
        Ok(circuit)
    }

    /// The inverse circuit: gates reversed, angles negated, swaps unchanged,
    /// global phase negated.
    pub fn inverse(&self) -> Self {
        let gates = self
            .gates
            .iter()
            .rev()
            .map(|gate| match *gate {
                AdditiveGate::RyPlus { i, j, theta } => AdditiveGate::RyPlus { i, j, theta: -theta },
                AdditiveGate::RzPlus { k, theta } => AdditiveGate::RzPlus { k, theta: -theta },
                AdditiveGate::XPlus { i, j } => AdditiveGate::XPlus { i, j },
            })
            .collect();
        AdditiveCircuit { dim: self.dim, gates, global_phase: -self.global_phase }
    }

    pub fn is_swap_free(&self) -> bool {
        !self.gates.iter().any(|g| matches!(g, AdditiveGate::XPlus { .. }))
    }
}

/// A gate on `n` qubits.
///
/// Multi-controlled gates keep their control sets sorted; an `Mcx` with no
/// controls is an `X`, with one a `Cx`, with two a Toffoli.
#[derive(Clone, Debug, PartialEq)]
pub enum MultGate<S> {
    Ry { qubit: usize, theta: Angle<S> },
    Rz { qubit: usize, theta: Angle<S> },
    X { qubit: usize },
    Cx { control: usize, target: usize },
    Mcx { controls: Vec<usize>, target: usize },
    McRy { controls: Vec<usize>, target: usize, theta: Angle<S> },
    CPhase { controls: Vec<usize>, theta: Angle<S> },
}

impl<S: Scalar> MultGate<S> {
    pub fn ry(qubit: usize, theta: S) -> Self {
        MultGate::Ry { qubit, theta: Angle::new(theta) }
    }

    pub fn rz(qubit: usize, theta: S) -> Self {
        MultGate::Rz { qubit, theta: Angle::new(theta) }
    }

    pub fn mcx(mut controls: Vec<usize>, target: usize) -> Self {
        controls.sort_unstable();
        controls.dedup();
        MultGate::Mcx { controls, target }
    }

    pub fn mcry(mut controls: Vec<usize>, target: usize, theta: S) -> Self {
        controls.sort_unstable();
        controls.dedup();
        MultGate::McRy { controls, target, theta: Angle::new(theta) }
    }

    pub fn cphase(mut controls: Vec<usize>, theta: S) -> Self {
        controls.sort_unstable();
        controls.dedup();
        MultGate::CPhase { controls, theta: Angle::new(theta) }
    }

    fn validate(&self, n: usize) -> Result<(), IrError> {
        let check = |qubit: usize| {
            if qubit < n {
                Ok(())
            } else {
                Err(IrError::QubitOutOfRange { qubit, n })
            }
        };
        match self {
            MultGate::Ry { qubit, .. } | MultGate::Rz { qubit, .. } | MultGate::X { qubit } => {
                check(*qubit)
            }
            MultGate::Cx { control, target } => {
                check(*control)?;
                check(*target)?;
                if control == target {
                    return Err(IrError::ControlIsTarget);
                }
                Ok(())
            }
            MultGate::Mcx { controls, target } | MultGate::McRy { controls, target, .. } => {
                check(*target)?;
                for &c in controls {
                    check(c)?;
                    if c == *target {
                        return Err(IrError::ControlIsTarget);
                    }
                }
                Ok(())
            }
            MultGate::CPhase { controls, .. } => {
                for &c in controls {
                    check(c)?;
                }
                Ok(())
            }
        }
    }
}

/// An `n`-qubit circuit with explicit global phase.
#[derive(Clone, Debug, PartialEq)]
pub struct MultCircuit<S> {
    n_qubits: usize,
    gates: Vec<MultGate<S>>,
    global_phase: Angle<S>,
}

impl<S: Scalar> MultCircuit<S> {
    pub fn new(n_qubits: usize) -> Result<Self, IrError> {
        if n_qubits == 0 {
            return Err(IrError::ZeroQubits);
        }
        Ok(MultCircuit { n_qubits, gates: Vec::new(), global_phase: Angle::zero() })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Dimension of the underlying state space, `2^n`.
    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn gates(&self) -> &[MultGate<S>] {
        &self.gates
    }

    pub fn global_phase(&self) -> Angle<S> {
        self.global_phase
    }

    pub fn set_global_phase(&mut self, phase: Angle<S>) {
        self.global_phase = phase;
    }

    pub fn add_global_phase(&mut self, phase: Angle<S>) {
        self.global_phase = self.global_phase + phase;
    }

    pub fn append(&mut self, gate: MultGate<S>) -> Result<(), IrError> {
        gate.validate(self.n_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend<I: IntoIterator<Item = MultGate<S>>>(&mut self, gates: I) -> Result<(), IrError> {
        for gate in gates {
            self.append(gate)?;
        }
        Ok(())
    }

    pub fn from_gates<I: IntoIterator<Item = MultGate<S>>>(
        n_qubits: usize,
        gates: I,
    ) -> Result<Self, IrError> {
        let mut circuit = Self::new(n_qubits)?;
        circuit.extend(gates)?;
        Ok(circuit)
    }
}
