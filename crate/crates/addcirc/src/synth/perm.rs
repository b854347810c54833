//! Reversible classical circuits from bitstring permutations.
//!
//! A permutation decomposes into transpositions; a transposition of two
//! bitstrings walks a Gray-code path between them, conjugating a final
//! one-bit swap with the swaps along the path. Each one-bit step is a
//! multi-controlled X on the differing bit, with X conjugation supplying the
//! zero-valued controls. The emitted gates reproduce the permutation matrix
//! exactly — every entry stays 0 or 1.

use crate::ir::MultGate;
use crate::rewrite::Permutation;
use crate::scalar::Scalar;

/// A multi-controlled X in its tightest form: X, CX or MCX.
fn controlled_flip<S: Scalar>(controls: Vec<usize>, target: usize) -> MultGate<S> {
    match controls.len() {
        0 => MultGate::X { qubit: target },
        1 => MultGate::Cx { control: controls[0], target },
        _ => MultGate::mcx(controls, target),
    }
}

/// Swaps two basis states at Hamming distance one: flips the differing bit
/// conditioned on every other bit of the codeword, X-conjugating controls
/// that sit at zero.
fn adjacent_transposition<S: Scalar>(out: &mut Vec<MultGate<S>>, n: usize, a: usize, b: usize) {
    let p = (a ^ b).trailing_zeros() as usize;
    debug_assert_eq!(a ^ b, 1 << p, "codewords differ in exactly one bit");
    let mut controls = Vec::new();
    let mut conjugated = Vec::new();
    for q in (0..n).filter(|&q| q != p) {
        controls.push(q);
        if a >> q & 1 == 0 {
            conjugated.push(q);
        }
    }
    for &q in &conjugated {
        out.push(MultGate::X { qubit: q });
    }
    out.push(controlled_flip(controls, p));
    for &q in conjugated.iter().rev() {
        out.push(MultGate::X { qubit: q });
    }
}

/// Swaps two arbitrary basis states along a Gray-code path.
fn transposition<S: Scalar>(out: &mut Vec<MultGate<S>>, n: usize, a: usize, b: usize) {
    let mut path = vec![a];
    let mut current = a;
    for p in 0..n {
        if (a ^ b) >> p & 1 == 1 {
            current ^= 1 << p;
            path.push(current);
        }
    }
    debug_assert_eq!(current, b);
    let steps = path.len() - 1;
    for k in 0..steps - 1 {
        adjacent_transposition(out, n, path[k], path[k + 1]);
    }
    adjacent_transposition(out, n, path[steps - 1], path[steps]);
    for k in (0..steps - 1).rev() {
        adjacent_transposition(out, n, path[k], path[k + 1]);
    }
}

/// Synthesizes a permutation of the `2ⁿ` basis states as X/CX/MCX gates.
pub fn synth_permutation<S: Scalar>(perm: &Permutation, n: usize) -> Vec<MultGate<S>> {
    assert_eq!(perm.dim(), 1 << n, "permutation must act on 2^n basis states");
    let mut out = Vec::new();
    for (a, b) in perm.transpositions() {
        transposition(&mut out, n, a, b);
    }
    out
}
