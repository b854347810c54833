//! Randomized properties of every pass, checked against the basis-action
//! oracles in `common`.

mod common;

use common::*;
use rand::prelude::*;

use addcirc::dag::{canonical_dag, from_dag, to_dag, Endpoint};
use addcirc::ir::{AdditiveGate, MultGate};
use addcirc::rewrite::canonicalize;
use addcirc::semantics::{
    eval_additive, eval_mult, gate_matrix_additive, gate_matrix_mult, hs_fidelity, trace_state_basis,
};
use addcirc::synth::{split_power_of_two, stack_vertices, synth_permutation, synthesize};
use addcirc::translate::translate_circuit;
use addcirc::{BasisIndex, MultCircuit, Permutation, UnitaryMatrix};

#[test]
fn additive_eval_agrees_with_the_naive_product() {
    let mut rng = rng(11);
    for _ in 0..40 {
        let dim = rng.gen_range(2..=9);
        let circuit = random_additive_circuit(&mut rng, dim, 20, true);
        let fast = eval_additive(&circuit);
        let mut slow = UnitaryMatrix::identity(dim);
        for gate in circuit.gates() {
            slow = gate_matrix_additive(gate, dim).mul(&slow).unwrap();
        }
        assert!(fast.max_diff(&slow).unwrap() < 1e-12);
        assert!(fast.max_diff(&oracle_eval_additive(&circuit)).unwrap() < 1e-12);
    }
}

#[test]
fn mult_eval_agrees_with_the_naive_product_and_basis_oracle() {
    let mut rng = rng(12);
    for _ in 0..40 {
        let n = rng.gen_range(1..=3);
        let circuit = random_mult_circuit(&mut rng, n, 15);
        let fast = eval_mult(&circuit);
        let mut slow = UnitaryMatrix::identity(circuit.dim());
        for gate in circuit.gates() {
            slow = gate_matrix_mult(gate, n).mul(&slow).unwrap();
        }
        assert!(fast.max_diff(&slow).unwrap() < 1e-12);
        assert!(fast.max_diff(&oracle_eval_mult(&circuit)).unwrap() < 1e-12);
    }
}

#[test]
fn every_evaluated_matrix_is_unitary() {
    let mut rng = rng(13);
    for _ in 0..25 {
        let dim = rng.gen_range(2..=8);
        let circuit = random_additive_circuit(&mut rng, dim, 25, true);
        assert!(eval_additive(&circuit).unitarity_defect() < 1e-10);
        let n = rng.gen_range(1..=3);
        let mult = random_mult_circuit(&mut rng, n, 15);
        assert!(eval_mult(&mult).unitarity_defect() < 1e-10);
    }
}

#[test]
fn inverse_evaluates_to_the_dagger() {
    let mut rng = rng(14);
    for _ in 0..25 {
        let dim = rng.gen_range(2..=8);
        let mut circuit = random_additive_circuit(&mut rng, dim, 20, true);
        circuit.set_global_phase(addcirc::Angle::new(rng.gen_range(-3.0..3.0)));
        let u = eval_additive(&circuit);
        let inv = eval_additive(&circuit.inverse());
        let product = inv.mul(&u).unwrap();
        assert!(product.max_diff(&UnitaryMatrix::identity(dim)).unwrap() < 1e-10);
        assert!(inv.max_diff(&u.dagger()).unwrap() < 1e-10);
    }
}

#[test]
fn translation_is_exact_on_random_circuits() {
    let mut rng = rng(15);
    for _ in 0..60 {
        let n = rng.gen_range(1..=4);
        let circuit = random_mult_circuit(&mut rng, n, 25);
        let additive = translate_circuit(&circuit);
        assert_eq!(additive.dim(), circuit.dim());
        let diff = eval_additive(&additive).max_diff(&eval_mult(&circuit)).unwrap();
        assert!(diff < 1e-9, "translation drifted by {diff}");
    }
}

#[test]
fn canonicalization_preserves_the_matrix_and_is_idempotent() {
    let mut rng = rng(16);
    for _ in 0..60 {
        let dim = rng.gen_range(2..=8);
        let circuit = random_additive_circuit(&mut rng, dim, 25, true);
        let (canonical, trailing) = canonicalize(&circuit);
        assert!(canonical.is_swap_free());
        let recomposed =
            trailing.matrix::<f64>().mul(&eval_additive(&canonical)).unwrap();
        assert!(recomposed.max_diff(&eval_additive(&circuit)).unwrap() < 1e-10);

        let (again, residue) = canonicalize(&canonical);
        assert_eq!(again.gates(), canonical.gates());
        assert!(residue.is_identity());
    }
}

#[test]
fn classical_circuits_evaluate_to_exact_permutations() {
    let mut rng = rng(17);
    for _ in 0..30 {
        let dim = rng.gen_range(2..=8);
        let circuit = random_swap_circuit(&mut rng, dim, 12);
        let perm = eval_additive(&circuit)
            .as_exact_permutation()
            .expect("swap circuits are permutation matrices");
        assert_eq!(perm.len(), dim);
    }
}

#[test]
fn dag_round_trip_is_oracle_equivalent() {
    let mut rng = rng(18);
    for _ in 0..60 {
        let dim = rng.gen_range(2..=16);
        let circuit = random_additive_circuit(&mut rng, dim, 30, true);
        let dag = canonical_dag(&circuit);
        let round = from_dag(&dag).unwrap();
        let diff = eval_additive(&round).max_diff(&eval_additive(&circuit)).unwrap();
        assert!(diff < 1e-10, "round trip drifted by {diff}");
    }
}

#[test]
fn dag_edge_phases_sum_to_the_circuit_phases_per_dimension() {
    let mut rng = rng(19);
    for _ in 0..30 {
        let dim = rng.gen_range(2..=8);
        let circuit = random_additive_circuit(&mut rng, dim, 20, false);
        let dag = to_dag(&circuit).unwrap();
        // Vertex count never exceeds the rotation count.
        let rotations = circuit
            .gates()
            .iter()
            .filter(|g| matches!(g, AdditiveGate::RyPlus { .. }))
            .count();
        assert!(dag.vertices().len() <= rotations);
        // Walking each dimension's path collects exactly the phases the
        // circuit put on that dimension.
        for d in 0..dim {
            let mut want = 0.0;
            for gate in circuit.gates() {
                if let AdditiveGate::RzPlus { k, theta } = gate {
                    if *k == d {
                        want += theta.radians();
                    }
                }
            }
            let mut got = 0.0;
            let mut at = Endpoint::Input(d);
            loop {
                let edge = dag
                    .edges()
                    .iter()
                    .find(|e| e.from == at)
                    .expect("every path endpoint continues");
                got += edge.phase.radians();
                match edge.to {
                    Endpoint::Output(out) => {
                        assert_eq!(out, d, "swap-free paths stay on their dimension");
                        break;
                    }
                    Endpoint::Slot(v, slot) => {
                        at = Endpoint::Slot(v, slot);
                        let vertex = dag.vertex(v).unwrap();
                        assert_eq!(vertex.dim_of_slot(slot), d);
                    }
                    Endpoint::Input(_) => unreachable!("edges never point at inputs"),
                }
            }
            let delta = (got - want).rem_euclid(2.0 * std::f64::consts::PI);
            let wrapped = delta.min(2.0 * std::f64::consts::PI - delta);
            assert!(wrapped < 1e-9, "dimension {d}: path phase {got} vs circuit {want}");
        }
    }
}

#[test]
fn stacks_partition_vertices_and_split_into_powers_of_two() {
    let mut rng = rng(20);
    for _ in 0..30 {
        let dim = 1 << rng.gen_range(1..=4);
        let circuit = random_additive_circuit(&mut rng, dim, 20, false);
        let dag = to_dag(&circuit).unwrap();
        let stacks = stack_vertices(&dag);
        let mut seen: Vec<usize> = stacks
            .iter()
            .flat_map(|s| s.vertex_ids.iter().map(|v| v.0))
            .collect();
        seen.sort_unstable();
        let expect: Vec<usize> = (0..dag.vertices().len()).collect();
        assert_eq!(seen, expect, "stacks partition the vertex set");
        for stack in &stacks {
            let mut dims = Vec::new();
            for &(a, b) in &stack.members {
                dims.push(a);
                dims.push(b);
            }
            dims.sort_unstable();
            dims.dedup();
            assert_eq!(dims.len(), 2 * stack.len(), "member pairs are disjoint");
            let parts = split_power_of_two(stack);
            assert!(parts.iter().all(|p| p.len().is_power_of_two()));
            assert_eq!(parts.iter().map(|p| p.len()).sum::<usize>(), stack.len());
        }
    }
}

#[test]
fn synthesis_reproduces_the_additive_matrix_exactly_up_to_float_error() {
    let mut rng = rng(21);
    for _ in 0..40 {
        let n = rng.gen_range(1..=3);
        let dim = 1 << n;
        let circuit = random_additive_circuit(&mut rng, dim, 15, true);
        let report = synthesize(&canonical_dag(&circuit)).unwrap();
        let got = eval_mult(&report.output);
        let want = eval_additive(&circuit);
        let diff = got.max_diff(&want).unwrap();
        assert!(diff < 1e-9, "synthesis drifted by {diff}");
    }
}

#[test]
fn synthesized_rotations_never_exceed_the_control_budget() {
    let mut rng = rng(22);
    for _ in 0..30 {
        let n = rng.gen_range(1..=3);
        let circuit = random_mult_circuit(&mut rng, n, 12);
        let report = synthesize(&canonical_dag(&translate_circuit(&circuit))).unwrap();
        for gate in report.output.gates() {
            if let MultGate::McRy { controls, .. } = gate {
                assert!(controls.len() < n);
            }
        }
    }
}

#[test]
fn routed_permutations_synthesize_exactly() {
    let mut rng = rng(23);
    for _ in 0..25 {
        let n = rng.gen_range(1..=4);
        let dim = 1usize << n;
        let mut image: Vec<usize> = (0..dim).collect();
        image.shuffle(&mut rng);
        let perm = Permutation::from_image(image.clone()).unwrap();
        let gates = synth_permutation::<f64>(&perm, n);
        let circuit = MultCircuit::from_gates(n, gates).unwrap();
        assert_eq!(eval_mult(&circuit).as_exact_permutation().unwrap(), image);
    }
}

#[test]
fn end_to_end_random_round_trips() {
    let mut rng = rng(24);
    for _ in 0..40 {
        let n = rng.gen_range(1..=3);
        let circuit = random_mult_circuit(&mut rng, n, 15);
        let report = synthesize(&canonical_dag(&translate_circuit(&circuit))).unwrap();
        let fidelity = hs_fidelity(&eval_mult(&report.output), &eval_mult(&circuit)).unwrap();
        assert!(fidelity >= 1.0 - 1e-9, "fidelity {fidelity}");
    }
}

#[test]
fn traces_match_matrix_columns() {
    let mut rng = rng(25);
    for _ in 0..25 {
        let dim = rng.gen_range(2..=8);
        let circuit = random_additive_circuit(&mut rng, dim, 20, true);
        let basis = rng.gen_range(0..dim);
        let trace =
            trace_state_basis(&circuit, BasisIndex::new(basis, dim).unwrap()).unwrap();
        assert_eq!(trace.len(), circuit.gates().len() + 1);
        let column = eval_additive(&circuit).column(basis);
        assert!(trace.final_state().max_diff(&column).unwrap() < 1e-9);
        assert!((trace.final_state().norm() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn io_round_trips_preserve_structure() {
    use addcirc::io::{emit_additive, emit_mult, parse_additive, parse_mult};
    let mut rng = rng(26);
    for _ in 0..25 {
        let dim = rng.gen_range(2..=9);
        let mut circuit = random_additive_circuit(&mut rng, dim, 15, true);
        if rng.gen_bool(0.5) {
            circuit.set_global_phase(addcirc::Angle::new(rng.gen_range(-3.0..3.0)));
        }
        let parsed = parse_additive(&emit_additive(&circuit)).unwrap();
        assert_eq!(parsed, circuit);

        let n = rng.gen_range(1..=4);
        let mult = random_mult_circuit(&mut rng, n, 15);
        let parsed = parse_mult(&emit_mult(&mult)).unwrap();
        assert_eq!(parsed, mult);
    }
}

#[test]
fn generic_core_works_at_reduced_precision() {
    use addcirc::ir::{AdditiveCircuit as Circuit, MultCircuit as Qubits, MultGate as Gate};
    use addcirc::semantics as sem;

    let mut circuit = Qubits::<f32>::new(2).unwrap();
    circuit.append(Gate::ry(0, 0.7f32)).unwrap();
    circuit.append(Gate::Cx { control: 1, target: 0 }).unwrap();
    let additive: Circuit<f32> = addcirc::translate::translate_circuit(&circuit);
    let diff = sem::eval_additive(&additive)
        .max_diff(&sem::eval_mult(&circuit))
        .unwrap();
    assert!(diff < 1e-5);
}

#[test]
fn block_embedding_law_on_random_gates() {
    // A gate on the leading dimensions embeds as its block plus identity.
    let mut rng = rng(27);
    for _ in 0..20 {
        let dim = rng.gen_range(3..=9);
        let theta = rng.gen_range(-3.0..3.0);
        let m = gate_matrix_additive(&AdditiveGate::ry(0, 1, theta), dim);
        let small = gate_matrix_additive(&AdditiveGate::ry(0, 1, theta), 2);
        for r in 0..dim {
            for c in 0..dim {
                let want = if r < 2 && c < 2 {
                    small.get(r, c)
                } else if r == c {
                    num_complex::Complex::new(1.0, 0.0)
                } else {
                    num_complex::Complex::new(0.0, 0.0)
                };
                assert_eq!(m.get(r, c), want);
            }
        }
    }
}
