//! Placement of dimensions on qubit bitstrings and the hypercube
//! connectivity constraints.
//!
//! Think of the `2ⁿ` bitstrings as vertices of the `n`-hypercube, with edges
//! between strings at Hamming distance one. A stacked vertex factorizes into
//! a single controlled rotation exactly when its placement satisfies three
//! conditions: every member pair sits on a hypercube edge, all those edges
//! are parallel (same differing bit), and for a stack of length `2^k` the
//! placed strings span no more than `k + 1` bits. The checks are independent
//! of each other — a report can fail one and pass another.

use crate::rewrite::Permutation;
use crate::scalar::Scalar;
use crate::synth::stack::StackedVertex;

/// Bijection between state-space dimensions and `n`-bit strings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlacementMap {
    n: usize,
    to_bits: Vec<usize>,
    at_bits: Vec<usize>,
}

impl PlacementMap {
    /// Dimension `i` on bitstring `i`.
    pub fn identity(n: usize) -> Self {
        let ident: Vec<usize> = (0..1usize << n).collect();
        PlacementMap { n, to_bits: ident.clone(), at_bits: ident }
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    /// The bitstring a dimension is placed on.
    pub fn bitstring_of(&self, dim: usize) -> usize {
        self.to_bits[dim]
    }

    /// The dimension living at a bitstring.
    pub fn dim_at(&self, bits: usize) -> usize {
        self.at_bits[bits]
    }

    /// Swaps the occupants of two bitstrings.
    pub fn swap_bitstrings(&mut self, a: usize, b: usize) {
        let (da, db) = (self.at_bits[a], self.at_bits[b]);
        self.at_bits.swap(a, b);
        self.to_bits[da] = b;
        self.to_bits[db] = a;
    }

    /// Applies a bitstring permutation: whatever sat at `b` now sits at
    /// `rho(b)`.
    pub fn permute(&mut self, rho: &Permutation) {
        let mut at_bits = vec![0; self.dim()];
        for b in 0..self.dim() {
            at_bits[rho.apply(b)] = self.at_bits[b];
        }
        self.at_bits = at_bits;
        for slot in self.to_bits.iter_mut() {
            *slot = rho.apply(*slot);
        }
    }
}

/// Outcome of checking a stack against the three hypercube constraints.
/// `witness` holds the offending placed pairs of the strictest failing check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintReport {
    pub edge_ok: bool,
    pub parallel_ok: bool,
    pub dense_ok: bool,
    pub witness: Vec<(usize, usize)>,
}

impl ConstraintReport {
    pub fn all_ok(&self) -> bool {
        self.edge_ok && self.parallel_ok && self.dense_ok
    }
}

/// Checks the edge, parallel and dense constraints of a power-of-two stack
/// under a placement.
pub fn check_constraints<S: Scalar>(
    stack: &StackedVertex<S>,
    placement: &PlacementMap,
) -> ConstraintReport {
    assert!(stack.len().is_power_of_two(), "constraints apply to power-of-two stacks");
    let pairs: Vec<(usize, usize)> = stack
        .members
        .iter()
        .map(|&(i, j)| (placement.bitstring_of(i), placement.bitstring_of(j)))
        .collect();

    let mut witness = Vec::new();

    let edge_ok = pairs.iter().all(|&(a, b)| (a ^ b).count_ones() == 1);
    if !edge_ok {
        witness.extend(pairs.iter().filter(|&&(a, b)| (a ^ b).count_ones() != 1));
    }

    let first_mask = pairs[0].0 ^ pairs[0].1;
    let parallel_ok = pairs.iter().all(|&(a, b)| a ^ b == first_mask);
    if edge_ok && !parallel_ok {
        witness.extend(pairs.iter().filter(|&&(a, b)| a ^ b != first_mask));
    }

    let k = stack.len().trailing_zeros();
    let base = pairs[0].0;
    let mut span = 0usize;
    for &(a, b) in &pairs {
        span |= a ^ base;
        span |= b ^ base;
    }
    let dense_ok = span.count_ones() <= k + 1;
    if edge_ok && parallel_ok && !dense_ok {
        witness.extend(pairs.iter());
    }

    ConstraintReport { edge_ok, parallel_ok, dense_ok, witness }
}
