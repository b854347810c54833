//! Conversion from qubit circuits to additive circuits.
//!
//! A gate touching `k + 1` qubits (k controls and a target) embeds into the
//! `2ⁿ`-dimensional joint space as a block-diagonal matrix, one block per
//! assignment of the untouched qubits. Each block becomes one additive
//! primitive, so a gate yields `2^{n−1−k}` additive gates. Index pairs are
//! enumerated directly by bit arithmetic instead of permuting the acted-on
//! qubits to the front; the result is the same block family.
//!
//! Z-rotations pick up an exact global phase of `−θ/2` per gate, which is
//! accumulated on the output circuit so translation is an equality, not an
//! equivalence up to phase.

use crate::angle::Angle;
use crate::ir::{AdditiveCircuit, AdditiveGate, MultCircuit, MultGate};
use crate::scalar::Scalar;

/// Translates one qubit gate into its additive gate family plus the global
/// phase the family is off by.
pub fn translate_gate<S: Scalar>(gate: &MultGate<S>, n: usize) -> (Vec<AdditiveGate<S>>, Angle<S>) {
    let dim = 1usize << n;
    let mut out = Vec::new();
    let mut phase = Angle::zero();
    let all_set = |m: usize, controls: &[usize]| controls.iter().all(|&c| m >> c & 1 == 1);
    match gate {
        MultGate::Ry { qubit, theta } => {
            for m in 0..dim {
                if m >> qubit & 1 == 0 {
                    out.push(AdditiveGate::RyPlus { i: m, j: m | 1 << qubit, theta: *theta });
                }
            }
        }
        MultGate::Rz { qubit, theta } => {
            for m in 0..dim {
                if m >> qubit & 1 == 1 {
                    out.push(AdditiveGate::RzPlus { k: m, theta: *theta });
                }
            }
            phase = -theta.half();
        }
        MultGate::X { qubit } => {
            for m in 0..dim {
                if m >> qubit & 1 == 0 {
                    out.push(AdditiveGate::XPlus { i: m, j: m | 1 << qubit });
                }
            }
        }
        MultGate::Cx { control, target } => {
            for m in 0..dim {
                if m >> control & 1 == 1 && m >> target & 1 == 0 {
                    out.push(AdditiveGate::XPlus { i: m, j: m | 1 << target });
                }
            }
        }
        MultGate::Mcx { controls, target } => {
            for m in 0..dim {
                if m >> target & 1 == 0 && all_set(m, controls) {
                    out.push(AdditiveGate::XPlus { i: m, j: m | 1 << target });
                }
            }
        }
        MultGate::McRy { controls, target, theta } => {
            for m in 0..dim {
                if m >> target & 1 == 0 && all_set(m, controls) {
                    out.push(AdditiveGate::RyPlus { i: m, j: m | 1 << target, theta: *theta });
                }
            }
        }
        MultGate::CPhase { controls, theta } => {
            for m in 0..dim {
                if all_set(m, controls) {
                    out.push(AdditiveGate::RzPlus { k: m, theta: *theta });
                }
            }
        }
    }
    (out, phase)
}

/// Translates a whole qubit circuit into an equivalent additive circuit on
/// `2ⁿ` dimensions. The result evaluates to exactly the same matrix,
/// global phase included.
pub fn translate_circuit<S: Scalar>(circuit: &MultCircuit<S>) -> AdditiveCircuit<S> {
    let n = circuit.n_qubits();
    let mut out = AdditiveCircuit::new(circuit.dim()).expect("2^n >= 1");
    out.set_global_phase(circuit.global_phase());
    for gate in circuit.gates() {
        let (gates, phase) = translate_gate(gate, n);
        out.extend(gates).expect("translated indices are in range");
        out.add_global_phase(phase);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::{eval_additive, eval_mult};

    #[test]
    fn cx_translates_to_one_transposition() {
        let (gates, phase) = translate_gate(&MultGate::<f64>::Cx { control: 1, target: 0 }, 2);
        assert_eq!(gates, vec![AdditiveGate::swap(2, 3)]);
        assert_eq!(phase.radians(), 0.0);
    }

    #[test]
    fn ry_splits_into_one_rotation_per_block() {
        let theta = 0.37;
        let (gates, _) = translate_gate(&MultGate::ry(0, theta), 2);
        assert_eq!(
            gates,
            vec![AdditiveGate::ry(0, 1, theta), AdditiveGate::ry(2, 3, theta)]
        );
    }

    #[test]
    fn rz_carries_the_half_angle_phase() {
        let theta = 0.9;
        let (gates, phase) = translate_gate(&MultGate::rz(0, theta), 1);
        assert_eq!(gates, vec![AdditiveGate::rz(1, theta)]);
        assert_eq!(phase.radians(), -theta / 2.0);
    }

    #[test]
    fn controlled_ry_targets_the_control_set_pair() {
        let theta = 0.55;
        let (gates, _) = translate_gate(&MultGate::mcry(vec![1], 0, theta), 2);
        assert_eq!(gates, vec![AdditiveGate::ry(2, 3, theta)]);
    }

    #[test]
    fn gate_count_law() {
        // A k-controlled primitive on n qubits yields 2^{n-1-k} gates.
        for n in 1..=5 {
            let (gates, _) = translate_gate(&MultGate::<f64>::ry(0, 0.2), n);
            assert_eq!(gates.len(), 1 << (n - 1));
            if n >= 2 {
                let (gates, _) =
                    translate_gate(&MultGate::<f64>::Cx { control: n - 1, target: 0 }, n);
                assert_eq!(gates.len(), 1 << (n - 2));
            }
            if n >= 3 {
                let controls: Vec<usize> = (1..n).collect();
                let k = controls.len();
                let (gates, _) = translate_gate(&MultGate::<f64>::mcry(controls, 0, 0.2), n);
                assert_eq!(gates.len(), 1 << (n - 1 - k));
            }
        }
    }

    #[test]
    fn empty_circuit_translates_to_empty() {
        let circuit = MultCircuit::<f64>::new(2).unwrap();
        let additive = translate_circuit(&circuit);
        assert_eq!(additive.dim(), 4);
        assert!(additive.gates().is_empty());
    }

    #[test]
    fn cry_decomposition_translates_to_six_gates() {
        let theta = 0.81;
        let circuit = MultCircuit::<f64>::from_gates(
            2,
            [
                MultGate::ry(0, theta / 2.0),
                MultGate::Cx { control: 1, target: 0 },
                MultGate::ry(0, -theta / 2.0),
                MultGate::Cx { control: 1, target: 0 },
            ],
        )
        .unwrap();
        let additive = translate_circuit(&circuit);
        let ry = additive
            .gates()
            .iter()
            .filter(|g| matches!(g, AdditiveGate::RyPlus { .. }))
            .count();
        let swaps = additive
            .gates()
            .iter()
            .filter(|g| matches!(g, AdditiveGate::XPlus { .. }))
            .count();
        assert_eq!((ry, swaps), (4, 2));
        assert!(eval_additive(&additive).max_diff(&eval_mult(&circuit)).unwrap() < 1e-12);
    }

    #[test]
    fn uncontrolled_cphase_phases_every_index() {
        let theta = 0.45;
        let (gates, phase) = translate_gate(&MultGate::<f64>::cphase(vec![], theta), 1);
        assert_eq!(gates, vec![AdditiveGate::rz(0, theta), AdditiveGate::rz(1, theta)]);
        assert_eq!(phase.radians(), 0.0);
    }

    #[test]
    fn diagonal_only_circuit_translates_to_phases_only() {
        let circuit = MultCircuit::<f64>::from_gates(
            2,
            [MultGate::rz(0, 0.3), MultGate::cphase(vec![0, 1], 0.5)],
        )
        .unwrap();
        let additive = translate_circuit(&circuit);
        assert!(additive
            .gates()
            .iter()
            .all(|g| matches!(g, AdditiveGate::RzPlus { .. })));
        assert!(eval_additive(&additive).max_diff(&eval_mult(&circuit)).unwrap() < 1e-12);
    }

    #[test]
    fn translation_is_exact_including_phase() {
        let circuit = MultCircuit::<f64>::from_gates(
            2,
            [
                MultGate::rz(0, 0.4),
                MultGate::ry(1, 1.2),
                MultGate::Cx { control: 0, target: 1 },
                MultGate::rz(1, -0.7),
            ],
        )
        .unwrap();
        let additive = translate_circuit(&circuit);
        assert!(eval_additive(&additive).max_diff(&eval_mult(&circuit)).unwrap() < 1e-12);
    }
}
