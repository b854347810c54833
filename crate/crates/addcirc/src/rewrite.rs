//! Circuit identities and the canonicalization pass.
//!
//! Additive circuits admit four identities: swaps push through every gate by
//! relabeling its wires, swapping the wires of a Y-rotation flips its angle,
//! equal-wire rotations merge by adding angles, and gates on disjoint wires
//! commute. Canonicalization applies them in a fixed order: all swaps are
//! commuted to the end of the circuit (returned as a trailing permutation),
//! Y-rotations are oriented to ascending wire order, rotations merge to a
//! fixpoint, and mutually commuting gates are put in a deterministic order.
//! Wire ordering carries no meaning in the additive model, so the trailing
//! permutation is pure bookkeeping; the deterministic order exists to make
//! canonical forms comparable.

use thiserror::Error;

use crate::ir::{AdditiveCircuit, AdditiveGate};
use crate::scalar::Scalar;
use crate::semantics::UnitaryMatrix;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermutationError {
    #[error("image of length {0} is not a bijection on [0, {0})")]
    NotABijection(usize),
}

/// A permutation of `N` dimensions, stored as its image: dimension `i` maps
/// to `image[i]`. Its matrix sends `|i⟩` to `|σ(i)⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(dim: usize) -> Self {
        Permutation { image: (0..dim).collect() }
    }

    pub fn from_image(image: Vec<usize>) -> Result<Self, PermutationError> {
        let dim = image.len();
        let mut seen = vec![false; dim];
        for &v in &image {
            if v >= dim || seen[v] {
                return Err(PermutationError::NotABijection(dim));
            }
            seen[v] = true;
        }
        Ok(Permutation { image })
    }

    pub fn transposition(dim: usize, a: usize, b: usize) -> Self {
        let mut image: Vec<usize> = (0..dim).collect();
        image.swap(a, b);
        Permutation { image }
    }

    pub fn dim(&self) -> usize {
        self.image.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `other ∘ self`: apply `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Self {
        Permutation { image: self.image.iter().map(|&v| other.image[v]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut image = vec![0; self.image.len()];
        for (i, &v) in self.image.iter().enumerate() {
            image[v] = i;
        }
        Permutation { image }
    }

    pub fn matrix<S: Scalar>(&self) -> UnitaryMatrix<S> {
        UnitaryMatrix::from_fn(self.dim(), |r, c| {
            if r == self.image[c] {
                num_complex::Complex::new(S::one(), S::zero())
            } else {
                num_complex::Complex::new(S::zero(), S::zero())
            }
        })
    }

    /// Decomposes into transpositions, returned in application order: applying
    /// them first-to-last reproduces this permutation.
    pub fn transpositions(&self) -> Vec<(usize, usize)> {
        let mut img = self.image.clone();
        let mut ts = Vec::new();
        for i in 0..img.len() {
            if img[i] != i {
                let j = img[i];
                for v in img.iter_mut() {
                    if *v == i {
                        *v = j;
                    } else if *v == j {
                        *v = i;
                    }
                }
                ts.push((i, j));
            }
        }
        ts.reverse();
        ts
    }
}

/// Commutes all swaps to the right end of the circuit.
///
/// Gates left of a swap get their wires relabeled as the swap passes them;
/// the accumulated relabeling is returned as a trailing permutation, so that
/// `matrix(trailing) · eval(swapfree) = eval(input)`.
pub fn push_swaps_right<S: Scalar>(
    circuit: &AdditiveCircuit<S>,
) -> (AdditiveCircuit<S>, Permutation) {
    let dim = circuit.dim();
    // relabel = σ⁻¹ of the permutation seen so far; gates to the right of
    // the swaps get their indices mapped through it.
    let mut relabel: Vec<usize> = (0..dim).collect();
    let mut body = AdditiveCircuit::new(dim).expect("dim validated by input circuit");
    body.set_global_phase(circuit.global_phase());
    for gate in circuit.gates() {
        match *gate {
            AdditiveGate::XPlus { i, j } => relabel.swap(i, j),
            AdditiveGate::RyPlus { i, j, theta } => body
                .append(AdditiveGate::RyPlus { i: relabel[i], j: relabel[j], theta })
                .expect("relabeled index in range"),
            AdditiveGate::RzPlus { k, theta } => body
                .append(AdditiveGate::RzPlus { k: relabel[k], theta })
                .expect("relabeled index in range"),
        }
    }
    let trailing =
        Permutation::from_image(relabel).expect("swaps preserve bijectivity").inverse();
    (body, trailing)
}

/// Orients a Y-rotation to ascending wire order, flipping the angle sign if
/// the wires swap. Other gates pass through unchanged.
pub fn normalize_ry_orientation<S: Scalar>(gate: &AdditiveGate<S>) -> AdditiveGate<S> {
    match *gate {
        AdditiveGate::RyPlus { i, j, theta } if i > j => {
            AdditiveGate::RyPlus { i: j, j: i, theta: -theta }
        }
        ref g => *g,
    }
}

fn support_overlaps<S: Scalar>(a: &AdditiveGate<S>, b: &AdditiveGate<S>) -> bool {
    a.support().iter().any(|d| b.support().contains(d))
}

fn commutes<S: Scalar>(a: &AdditiveGate<S>, b: &AdditiveGate<S>) -> bool {
    if matches!(a, AdditiveGate::RzPlus { .. }) && matches!(b, AdditiveGate::RzPlus { .. }) {
        return true;
    }
    !support_overlaps(a, b)
}

/// The oriented wire pair of a Y-rotation and the angle as seen in that
/// orientation.
fn oriented_ry<S: Scalar>(gate: &AdditiveGate<S>) -> Option<(usize, usize, crate::angle::Angle<S>)> {
    match *gate {
        AdditiveGate::RyPlus { i, j, theta } => {
            if i < j {
                Some((i, j, theta))
            } else {
                Some((j, i, -theta))
            }
        }
        _ => None,
    }
}

fn is_removable_zero<S: Scalar>(gate: &AdditiveGate<S>) -> bool {
    match gate {
        AdditiveGate::RyPlus { theta, .. } => theta.is_zero_ry(),
        AdditiveGate::RzPlus { theta, .. } => theta.is_zero_rz(),
        AdditiveGate::XPlus { .. } => false,
    }
}

/// Merges rotations on the same wires to a fixpoint, commuting gates on
/// disjoint wires out of the way, and drops zero-angle rotations.
///
/// When two gates merge, the combined rotation keeps the later position.
pub fn merge_adjacent<S: Scalar>(circuit: &AdditiveCircuit<S>) -> AdditiveCircuit<S> {
    let mut gates: Vec<AdditiveGate<S>> = circuit.gates().to_vec();
    'restart: loop {
        for i in 0..gates.len() {
            if is_removable_zero(&gates[i]) {
                gates.remove(i);
                continue 'restart;
            }
            for j in i + 1..gates.len() {
                if let Some(merged) = try_merge(&gates[i], &gates[j]) {
                    gates[j] = merged;
                    gates.remove(i);
                    continue 'restart;
                }
                if !commutes(&gates[i], &gates[j]) {
                    break;
                }
            }
        }
        break;
    }
    let mut out = AdditiveCircuit::new(circuit.dim()).expect("dim validated");
    out.set_global_phase(circuit.global_phase());
    out.extend(gates).expect("merged gates keep valid indices");
    out
}

fn try_merge<S: Scalar>(a: &AdditiveGate<S>, b: &AdditiveGate<S>) -> Option<AdditiveGate<S>> {
    match (a, b) {
        (AdditiveGate::RzPlus { k: ka, theta: ta }, AdditiveGate::RzPlus { k: kb, theta: tb })
            if ka == kb =>
        {
            Some(AdditiveGate::RzPlus { k: *kb, theta: *ta + *tb })
        }
        (AdditiveGate::RyPlus { .. }, AdditiveGate::RyPlus { i, j, theta }) => {
            let (ai, aj, atheta) = oriented_ry(a).expect("is a Ry");
            let (bi, bj, _) = oriented_ry(b).expect("is a Ry");
            if (ai, aj) == (bi, bj) {
                // Keep b's orientation; fold a's angle in as seen from it.
                let folded = if i < j { atheta } else { -atheta };
                Some(AdditiveGate::RyPlus { i: *i, j: *j, theta: *theta + folded })
            } else {
                None
            }
        }
        _ => None,
    }
}

fn sort_key<S: Scalar>(gate: &AdditiveGate<S>) -> (usize, u8, Vec<usize>, f64) {
    let support = gate.support();
    let min = *support.iter().min().expect("gates touch at least one wire");
    let (kind, angle) = match gate {
        AdditiveGate::RzPlus { theta, .. } => (0u8, theta.radians().to_f64_lossy()),
        AdditiveGate::RyPlus { theta, .. } => (1, theta.radians().to_f64_lossy()),
        AdditiveGate::XPlus { .. } => (2, 0.0),
    };
    (min, kind, support, angle)
}

/// Bubbles mutually commuting gates into the canonical order
/// (smallest touched wire, then kind, then angle).
fn sort_commuting<S: Scalar>(gates: &mut [AdditiveGate<S>]) {
    loop {
        let mut swapped = false;
        for p in 0..gates.len().saturating_sub(1) {
            if commutes(&gates[p], &gates[p + 1])
                && sort_key(&gates[p + 1]) < sort_key(&gates[p])
            {
                gates.swap(p, p + 1);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
}

/// Full canonicalization: swaps pushed out, rotations oriented, merges and
/// ordering applied to a fixpoint. The evaluated matrix is preserved as
/// `matrix(trailing) · eval(canonical) = eval(input)`.
pub fn canonicalize<S: Scalar>(
    circuit: &AdditiveCircuit<S>,
) -> (AdditiveCircuit<S>, Permutation) {
    let (body, trailing) = push_swaps_right(circuit);
    let oriented: Vec<AdditiveGate<S>> =
        body.gates().iter().map(normalize_ry_orientation).collect();
    let mut current = AdditiveCircuit::new(body.dim()).expect("dim validated");
    current.set_global_phase(body.global_phase());
    current.extend(oriented).expect("orientation keeps indices valid");

    // No rewrite increases the gate count, so a fixpoint arrives well within
    // the cap; overrunning it means a rule is broken.
    let cap = 10 * (current.gates().len() + 1);
    for _ in 0..cap {
        let merged = merge_adjacent(&current);
        let mut gates = merged.gates().to_vec();
        sort_commuting(&mut gates);
        if gates == current.gates() {
            return (current, trailing);
        }
        let mut next = AdditiveCircuit::new(merged.dim()).expect("dim validated");
        next.set_global_phase(merged.global_phase());
        next.extend(gates).expect("sorted gates keep valid indices");
        current = next;
    }
    panic!("canonicalization failed to reach a fixpoint within {cap} passes");
}
