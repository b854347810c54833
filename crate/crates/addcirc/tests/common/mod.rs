//! Shared test support: independent matrix oracles and random circuit
//! generators.
//!
//! The oracles here build gate matrices column by column from the gate's
//! action on basis states, a deliberately different route from the library's
//! in-place row operations. Composites are formed with the naive O(N³)
//! product.

#![allow(dead_code)]

use num_complex::Complex;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use addcirc::ir::{AdditiveGate, MultGate};
use addcirc::semantics::UnitaryMatrix as GenericMatrix;
use addcirc::{AdditiveCircuit, MultCircuit, UnitaryMatrix};

type C = Complex<f64>;

fn zero() -> C {
    Complex::new(0.0, 0.0)
}

/// Basis-action oracle for a qubit gate: column `m` of the result is the
/// image of basis state `|m⟩`.
pub fn oracle_mult_gate(gate: &MultGate<f64>, n: usize) -> UnitaryMatrix {
    let dim = 1usize << n;
    let mut cols: Vec<Vec<C>> = vec![vec![zero(); dim]; dim];
    let all_set = |m: usize, controls: &[usize]| controls.iter().all(|&c| m >> c & 1 == 1);
    for m in 0..dim {
        let col = &mut cols[m];
        match gate {
            MultGate::Ry { qubit, theta } => {
                let (c, s) = ((theta.radians() / 2.0).cos(), (theta.radians() / 2.0).sin());
                if m >> qubit & 1 == 0 {
                    col[m] = Complex::new(c, 0.0);
                    col[m | 1 << qubit] = Complex::new(s, 0.0);
                } else {
                    col[m & !(1 << qubit)] = Complex::new(-s, 0.0);
                    col[m] = Complex::new(c, 0.0);
                }
            }
            MultGate::Rz { qubit, theta } => {
                let half = theta.radians() / 2.0;
                let sign = if m >> qubit & 1 == 0 { -1.0 } else { 1.0 };
                col[m] = Complex::new(0.0, sign * half).exp();
            }
            MultGate::X { qubit } => col[m ^ 1 << qubit] = Complex::new(1.0, 0.0),
            MultGate::Cx { control, target } => {
                let image = if m >> control & 1 == 1 { m ^ 1 << target } else { m };
                col[image] = Complex::new(1.0, 0.0);
            }
            MultGate::Mcx { controls, target } => {
                let image = if all_set(m, controls) { m ^ 1 << target } else { m };
                col[image] = Complex::new(1.0, 0.0);
            }
            MultGate::McRy { controls, target, theta } => {
                if all_set(m, controls) {
                    let (c, s) =
                        ((theta.radians() / 2.0).cos(), (theta.radians() / 2.0).sin());
                    if m >> target & 1 == 0 {
                        col[m] = Complex::new(c, 0.0);
                        col[m | 1 << target] = Complex::new(s, 0.0);
                    } else {
                        col[m & !(1 << target)] = Complex::new(-s, 0.0);
                        col[m] = Complex::new(c, 0.0);
                    }
                } else {
                    col[m] = Complex::new(1.0, 0.0);
                }
            }
            MultGate::CPhase { controls, theta } => {
                col[m] = if all_set(m, controls) {
                    Complex::new(0.0, theta.radians()).exp()
                } else {
                    Complex::new(1.0, 0.0)
                };
            }
        }
    }
    GenericMatrix::from_fn(dim, |r, c| cols[c][r])
}

/// Basis-action oracle for an additive gate.
pub fn oracle_additive_gate(gate: &AdditiveGate<f64>, dim: usize) -> UnitaryMatrix {
    let mut cols: Vec<Vec<C>> = vec![vec![zero(); dim]; dim];
    for m in 0..dim {
        let col = &mut cols[m];
        match *gate {
            AdditiveGate::RyPlus { i, j, theta } => {
                let (c, s) = ((theta.radians() / 2.0).cos(), (theta.radians() / 2.0).sin());
                if m == i {
                    col[i] = Complex::new(c, 0.0);
                    col[j] = Complex::new(s, 0.0);
                } else if m == j {
                    col[i] = Complex::new(-s, 0.0);
                    col[j] = Complex::new(c, 0.0);
                } else {
                    col[m] = Complex::new(1.0, 0.0);
                }
            }
            AdditiveGate::RzPlus { k, theta } => {
                col[m] = if m == k {
                    Complex::new(0.0, theta.radians()).exp()
                } else {
                    Complex::new(1.0, 0.0)
                };
            }
            AdditiveGate::XPlus { i, j } => {
                let image = if m == i {
                    j
                } else if m == j {
                    i
                } else {
                    m
                };
                col[image] = Complex::new(1.0, 0.0);
            }
        }
    }
    GenericMatrix::from_fn(dim, |r, c| cols[c][r])
}

/// Naive-product evaluation of a qubit circuit from basis-action matrices.
pub fn oracle_eval_mult(circuit: &MultCircuit) -> UnitaryMatrix {
    let mut acc = UnitaryMatrix::identity(circuit.dim());
    for gate in circuit.gates() {
        acc = oracle_mult_gate(gate, circuit.n_qubits()).mul(&acc).unwrap();
    }
    let phase = circuit.global_phase().radians();
    if phase != 0.0 {
        acc = acc.scale(Complex::new(0.0, phase).exp());
    }
    acc
}

/// Naive-product evaluation of an additive circuit from basis-action
/// matrices.
pub fn oracle_eval_additive(circuit: &AdditiveCircuit) -> UnitaryMatrix {
    let mut acc = UnitaryMatrix::identity(circuit.dim());
    for gate in circuit.gates() {
        acc = oracle_additive_gate(gate, circuit.dim()).mul(&acc).unwrap();
    }
    let phase = circuit.global_phase().radians();
    if phase != 0.0 {
        acc = acc.scale(Complex::new(0.0, phase).exp());
    }
    acc
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_angle(rng: &mut ChaCha8Rng) -> f64 {
    rng.gen_range(-2.0 * std::f64::consts::PI..2.0 * std::f64::consts::PI)
}

fn distinct_pair(rng: &mut ChaCha8Rng, bound: usize) -> (usize, usize) {
    let a = rng.gen_range(0..bound);
    let mut b = rng.gen_range(0..bound - 1);
    if b >= a {
        b += 1;
    }
    (a, b)
}

/// A random qubit circuit over {Ry, Rz, X, CX, MCX, MCRy}; two-qubit and
/// controlled kinds appear only when `n` permits them.
pub fn random_mult_circuit(rng: &mut ChaCha8Rng, n: usize, max_gates: usize) -> MultCircuit {
    let mut circuit = MultCircuit::new(n).unwrap();
    let gates = rng.gen_range(0..=max_gates);
    for _ in 0..gates {
        let kind = rng.gen_range(0..6);
        let gate = match kind {
            0 => MultGate::ry(rng.gen_range(0..n), random_angle(rng)),
            1 => MultGate::rz(rng.gen_range(0..n), random_angle(rng)),
            2 => MultGate::X { qubit: rng.gen_range(0..n) },
            3 if n >= 2 => {
                let (c, t) = distinct_pair(rng, n);
                MultGate::Cx { control: c, target: t }
            }
            4 if n >= 2 => {
                let target = rng.gen_range(0..n);
                let k = rng.gen_range(1..n);
                let mut pool: Vec<usize> = (0..n).filter(|&q| q != target).collect();
                pool.shuffle(rng);
                MultGate::mcx(pool.into_iter().take(k).collect(), target)
            }
            5 if n >= 2 => {
                let target = rng.gen_range(0..n);
                let k = rng.gen_range(1..n);
                let mut pool: Vec<usize> = (0..n).filter(|&q| q != target).collect();
                pool.shuffle(rng);
                MultGate::mcry(pool.into_iter().take(k).collect(), target, random_angle(rng))
            }
            _ => MultGate::ry(rng.gen_range(0..n), random_angle(rng)),
        };
        circuit.append(gate).unwrap();
    }
    circuit
}

/// A random additive circuit, optionally with swaps.
pub fn random_additive_circuit(
    rng: &mut ChaCha8Rng,
    dim: usize,
    max_gates: usize,
    with_swaps: bool,
) -> AdditiveCircuit {
    let mut circuit = AdditiveCircuit::new(dim).unwrap();
    let gates = rng.gen_range(0..=max_gates);
    for _ in 0..gates {
        let kind = rng.gen_range(0..if with_swaps { 3 } else { 2 });
        let gate = match kind {
            0 => {
                let (i, j) = distinct_pair(rng, dim);
                AdditiveGate::ry(i, j, random_angle(rng))
            }
            1 => AdditiveGate::rz(rng.gen_range(0..dim), random_angle(rng)),
            _ => {
                let (i, j) = distinct_pair(rng, dim);
                AdditiveGate::swap(i, j)
            }
        };
        circuit.append(gate).unwrap();
    }
    circuit
}

/// A circuit of swaps only.
pub fn random_swap_circuit(rng: &mut ChaCha8Rng, dim: usize, gates: usize) -> AdditiveCircuit {
    let mut circuit = AdditiveCircuit::new(dim).unwrap();
    for _ in 0..gates {
        let (i, j) = distinct_pair(rng, dim);
        circuit.append(AdditiveGate::swap(i, j)).unwrap();
    }
    circuit
}
