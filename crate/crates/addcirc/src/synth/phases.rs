//! Diagonal unitaries as phase polynomials over control patterns.
//!
//! A diagonal `diag(e^{iφ_b})` splits into one coefficient per nonempty
//! subset of qubits: `φ_b − φ_0 = Σ_{S ⊆ bits(b)} c_S`. Möbius inversion over
//! the subset lattice recovers the coefficients in `O(2ⁿ·n)`, and each
//! nonzero `c_S` becomes one multi-controlled phase gate on exactly the
//! qubits of `S`. The emitted circuit realizes the diagonal up to the global
//! phase `e^{iφ_0}`.

use thiserror::Error;

use crate::angle::Angle;
use crate::ir::MultGate;
use crate::scalar::Scalar;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PhaseSynthError {
    #[error("{0} phases given, but the count must be a power of two matching 2^{1}")]
    LengthMismatch(usize, usize),
}

/// Synthesizes `diag(e^{iφ_0}, …, e^{iφ_{N−1}})` up to global phase as
/// controlled-phase gates. `phases.len()` must be `2ⁿ`.
#[allow(clippy::needless_range_loop)] // the transform reads coeff[mask ^ bit]
pub fn synth_phases<S: Scalar>(
    phases: &[S],
    n: usize,
) -> Result<Vec<MultGate<S>>, PhaseSynthError> {
    let dim = 1usize << n;
    if phases.len() != dim {
        return Err(PhaseSynthError::LengthMismatch(phases.len(), n));
    }
    let mut coeff: Vec<S> = phases.iter().map(|&p| p - phases[0]).collect();
    for bit in 0..n {
        for mask in 0..dim {
            if mask >> bit & 1 == 1 {
                coeff[mask] = coeff[mask] - coeff[mask ^ (1 << bit)];
            }
        }
    }
    let mut out = Vec::new();
    for mask in 1..dim {
        let c = coeff[mask];
        if Angle::new(c).is_zero_rz() {
            continue;
        }
        let controls: Vec<usize> = (0..n).filter(|&q| mask >> q & 1 == 1).collect();
        out.push(MultGate::cphase(controls, c));
    }
    Ok(out)
}
