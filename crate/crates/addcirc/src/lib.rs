//! Circuits over the direct sum: an alternative IR for quantum computation
//! where every wire is a dimension of the state space rather than a qubit.
//!
//! The crate provides:
//!
//! - [`ir`] — both circuit representations: ordinary qubit circuits
//!   ([`MultCircuit`]) and additive circuits ([`AdditiveCircuit`]) whose
//!   gates are two-dimensional rotations, one-dimensional phases and
//!   dimension swaps.
//! - [`semantics`] — dense-matrix evaluation of both kinds, the verification
//!   oracle for everything else.
//! - [`translate`] — exact conversion of qubit circuits into additive form.
//! - [`rewrite`] — the circuit identities and canonicalization: swap
//!   elimination, rotation merging, deterministic ordering.
//! - [`dag`] — the canonical graph form: rotation vertices, phase-labeled
//!   edges, boundary vertices per dimension.
//! - [`synth`] — the way back: vertex stacking, hypercube routing and
//!   synthesis of executable qubit circuits from additive DAGs.
//! - [`io`] / [`render`] — text formats for both circuit kinds and an SVG
//!   renderer with amplitude/phase wire styling.
//!
//! All numeric core types are generic over a [`scalar::Scalar`]; the aliases
//! at the crate root fix `f64`, the precision the default tolerances are
//! calibrated for.

pub mod angle;
pub mod cli;
pub mod dag;
pub mod io;
pub mod ir;
pub mod render;
pub mod rewrite;
pub mod scalar;
pub mod semantics;
pub mod synth;
pub mod translate;

/// An angle in radians at `f64` precision.
pub type Angle = angle::Angle<f64>;
/// An additive gate at `f64` precision.
pub type AdditiveGate = ir::AdditiveGate<f64>;
/// An additive circuit at `f64` precision.
pub type AdditiveCircuit = ir::AdditiveCircuit<f64>;
/// A qubit gate at `f64` precision.
pub type MultGate = ir::MultGate<f64>;
/// A qubit circuit at `f64` precision.
pub type MultCircuit = ir::MultCircuit<f64>;
/// A dense complex matrix at `f64` precision.
pub type UnitaryMatrix = semantics::UnitaryMatrix<f64>;
/// A state vector at `f64` precision.
pub type StateVector = semantics::StateVector<f64>;
/// A state trace at `f64` precision.
pub type StateTrace = semantics::StateTrace<f64>;
/// An additive DAG at `f64` precision.
pub type AdditiveDag = dag::AdditiveDag<f64>;
/// A stacked vertex at `f64` precision.
pub type StackedVertex = synth::StackedVertex<f64>;
/// A synthesis report at `f64` precision.
pub type SynthesisReport = synth::SynthesisReport<f64>;

pub use ir::BasisIndex;
pub use rewrite::Permutation;
pub use synth::{ConstraintReport, GateCounts, PlacementMap};
