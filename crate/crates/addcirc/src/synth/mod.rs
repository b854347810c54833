//! Synthesis of executable qubit circuits from additive DAGs.
//!
//! The pipeline: fuse rotations into stacks, split stacks to power-of-two
//! lengths, walk them in order routing bitstrings whenever a stack's
//! connectivity constraints fail, and emit per stack a phase layer for the
//! edge labels entering it, the routing permutation as a reversible circuit,
//! and the stacked rotation as a (multi-)controlled Ry. Output edge phases
//! and the trailing permutation close the circuit. Global phase is tracked
//! exactly throughout, so the synthesized circuit evaluates to the same
//! matrix as the DAG, not merely the same matrix up to phase.

pub mod perm;
pub mod phases;
pub mod placement;
pub mod stack;

use thiserror::Error;

use crate::angle::Angle;
use crate::dag::{AdditiveDag, DagError, Endpoint};
use crate::ir::{MultCircuit, MultGate};
use crate::rewrite::Permutation;
use crate::scalar::Scalar;

pub use perm::synth_permutation;
pub use phases::{synth_phases, PhaseSynthError};
pub use placement::{check_constraints, ConstraintReport, PlacementMap};
pub use stack::{split_power_of_two, stack_vertices, StackedVertex};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SynthError {
    #[error("dimension {0} is not a power of two with at least one qubit")]
    NotPowerOfTwo(usize),
    #[error("placement violates connectivity constraints (edge {edge_ok}, parallel {parallel_ok}, dense {dense_ok})")]
    ConstraintViolation { edge_ok: bool, parallel_ok: bool, dense_ok: bool },
    #[error("stack members are inconsistently oriented under the placement")]
    MixedOrientation,
    #[error(transparent)]
    Dag(#[from] DagError),
    #[error(transparent)]
    Phases(#[from] PhaseSynthError),
}

/// Synthesizes one power-of-two stack whose placement satisfies all three
/// constraints. Controls are the bit positions fixed across the stack,
/// X-conjugated where their common value is zero; a maximal stack needs no
/// controls at all and becomes a bare Ry.
pub fn synth_stacked_vertex<S: Scalar>(
    stack: &StackedVertex<S>,
    placement: &PlacementMap,
    n: usize,
) -> Result<Vec<MultGate<S>>, SynthError> {
    let report = check_constraints(stack, placement);
    if !report.all_ok() {
        return Err(SynthError::ConstraintViolation {
            edge_ok: report.edge_ok,
            parallel_ok: report.parallel_ok,
            dense_ok: report.dense_ok,
        });
    }
    let base = placement.bitstring_of(stack.members[0].0);
    let mask = base ^ placement.bitstring_of(stack.members[0].1);
    let target = mask.trailing_zeros() as usize;

    // All members must present the same side of the rotation to the target
    // bit; a uniformly flipped stack is fixed by conjugating the target.
    let first_orientation = base >> target & 1;
    for &(i, _) in &stack.members {
        if placement.bitstring_of(i) >> target & 1 != first_orientation {
            return Err(SynthError::MixedOrientation);
        }
    }

    let mut span = 0usize;
    for &(i, j) in &stack.members {
        span |= placement.bitstring_of(i) ^ base;
        span |= placement.bitstring_of(j) ^ base;
    }
    let controls: Vec<usize> = (0..n).filter(|&q| span >> q & 1 == 0).collect();
    let mut conjugated: Vec<usize> =
        controls.iter().copied().filter(|&q| base >> q & 1 == 0).collect();
    if first_orientation == 1 {
        conjugated.push(target);
        conjugated.sort_unstable();
    }

    let mut out = Vec::new();
    for &q in &conjugated {
        out.push(MultGate::X { qubit: q });
    }
    if controls.is_empty() {
        out.push(MultGate::Ry { qubit: target, theta: stack.theta });
    } else {
        out.push(MultGate::McRy { controls, target, theta: stack.theta });
    }
    for &q in conjugated.iter().rev() {
        out.push(MultGate::X { qubit: q });
    }
    Ok(out)
}

/// A scheduled stack with the placements bracketing its routing step.
#[derive(Clone, Debug)]
pub struct RoutedStack<S> {
    pub stack: StackedVertex<S>,
    pub placement_before: PlacementMap,
    pub routing: Option<Permutation>,
    pub placement_after: PlacementMap,
}

/// True when the stack synthesizes directly: all constraints hold and every
/// member faces the target bit the same way.
fn satisfied(stack: &StackedVertex<impl Scalar>, placement: &PlacementMap) -> bool {
    let report = check_constraints(stack, placement);
    if !report.all_ok() {
        return false;
    }
    let mask =
        placement.bitstring_of(stack.members[0].0) ^ placement.bitstring_of(stack.members[0].1);
    let t = mask.trailing_zeros() as usize;
    let first = placement.bitstring_of(stack.members[0].0) >> t & 1;
    stack
        .members
        .iter()
        .all(|&(i, _)| placement.bitstring_of(i) >> t & 1 == first)
}

/// Picks targets on a subcube for a stack that failed its constraints and
/// realizes them as a product of bitstring transpositions: each misplaced
/// dimension swaps with the occupant of its target slot. Targets are chosen
/// to keep total Hamming movement low, ties to the smallest index.
fn plan_route<S: Scalar>(
    stack: &StackedVertex<S>,
    placement: &mut PlacementMap,
    n: usize,
) -> Permutation {
    let len = stack.len();
    let k = len.trailing_zeros() as usize;

    // Target bit: the most common differing bit across member pairs.
    let mut votes = vec![0usize; n];
    for &(i, j) in &stack.members {
        let mask = placement.bitstring_of(i) ^ placement.bitstring_of(j);
        for (b, v) in votes.iter_mut().enumerate() {
            if mask >> b & 1 == 1 {
                *v += 1;
            }
        }
    }
    let t = (0..n).max_by_key(|&b| (votes[b], usize::MAX - b)).expect("n >= 1");

    // Anchors: where each pair's first half sits, ignoring the target bit.
    let anchors: Vec<usize> =
        stack.members.iter().map(|&(i, _)| placement.bitstring_of(i) & !(1 << t)).collect();

    // Free bits: the k positions where the anchors disagree the most stay
    // free; everything else gets pinned to the anchors' majority value.
    let mut diversity: Vec<(usize, usize)> = (0..n)
        .filter(|&b| b != t)
        .map(|b| {
            let ones = anchors.iter().filter(|&&a| a >> b & 1 == 1).count();
            (b, ones.min(len - ones))
        })
        .collect();
    diversity.sort_by_key(|&(b, d)| (usize::MAX - d, b));
    let free: Vec<usize> = {
        let mut f: Vec<usize> = diversity.iter().take(k).map(|&(b, _)| b).collect();
        f.sort_unstable();
        f
    };

    let mut base = 0usize;
    for b in (0..n).filter(|&b| b != t && !free.contains(&b)) {
        let ones = anchors.iter().filter(|&&a| a >> b & 1 == 1).count();
        let majority = if ones * 2 > len {
            1
        } else if ones * 2 < len {
            0
        } else {
            anchors[0] >> b & 1
        };
        base |= majority << b;
    }

    let mut slots: Vec<usize> = (0..len)
        .map(|x| {
            let mut beta = base;
            for (pos, &b) in free.iter().enumerate() {
                beta |= (x >> pos & 1) << b;
            }
            beta
        })
        .collect();

    // Assign each member the nearest remaining slot.
    let mut targets = Vec::with_capacity(len);
    for &(i, j) in &stack.members {
        let (pi, pj) = (placement.bitstring_of(i), placement.bitstring_of(j));
        let best = slots
            .iter()
            .enumerate()
            .min_by_key(|&(_, &beta)| {
                let cost = (pi ^ beta).count_ones() + (pj ^ (beta | 1 << t)).count_ones();
                (cost, beta)
            })
            .map(|(idx, _)| idx)
            .expect("one slot per member");
        targets.push(slots.swap_remove(best));
    }

    let mut rho = Permutation::identity(placement.dim());
    let move_to = |placement: &mut PlacementMap, rho: &mut Permutation, d: usize, tgt: usize| {
        let cur = placement.bitstring_of(d);
        if cur != tgt {
            placement.swap_bitstrings(cur, tgt);
            *rho = rho.then(&Permutation::transposition(placement.dim(), cur, tgt));
        }
    };
    for (m, &(i, j)) in stack.members.iter().enumerate() {
        move_to(placement, &mut rho, i, targets[m]);
        move_to(placement, &mut rho, j, targets[m] | 1 << t);
    }
    rho
}

/// Routes a schedule of power-of-two stacks: wherever constraints fail, a
/// bitstring permutation is inserted that makes them pass. Returns the
/// routed schedule and the inserted permutations.
pub fn route<S: Scalar>(
    stacks: Vec<StackedVertex<S>>,
    initial: PlacementMap,
) -> (Vec<RoutedStack<S>>, Vec<Permutation>) {
    let n = initial.n_qubits();
    let mut placement = initial;
    let mut routed = Vec::with_capacity(stacks.len());
    let mut perms = Vec::new();
    for stack in stacks {
        assert!(stack.len().is_power_of_two(), "route expects split stacks");
        let placement_before = placement.clone();
        let routing = if satisfied(&stack, &placement) {
            None
        } else {
            let rho = plan_route(&stack, &mut placement, n);
            perms.push(rho.clone());
            Some(rho)
        };
        routed.push(RoutedStack {
            stack,
            placement_before,
            routing,
            placement_after: placement.clone(),
        });
    }
    (routed, perms)
}

/// Gate tallies of a synthesized circuit.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GateCounts {
    pub ry: usize,
    pub rz: usize,
    pub x: usize,
    pub cx: usize,
    pub mcx: usize,
    pub mcry: usize,
    pub cphase: usize,
}

impl GateCounts {
    pub fn tally<S: Scalar>(circuit: &MultCircuit<S>) -> Self {
        let mut counts = GateCounts::default();
        for gate in circuit.gates() {
            match gate {
                MultGate::Ry { .. } => counts.ry += 1,
                MultGate::Rz { .. } => counts.rz += 1,
                MultGate::X { .. } => counts.x += 1,
                MultGate::Cx { .. } => counts.cx += 1,
                MultGate::Mcx { .. } => counts.mcx += 1,
                MultGate::McRy { .. } => counts.mcry += 1,
                MultGate::CPhase { .. } => counts.cphase += 1,
            }
        }
        counts
    }

    pub fn total(&self) -> usize {
        self.ry + self.rz + self.x + self.cx + self.mcx + self.mcry + self.cphase
    }
}

/// Result of the full pipeline.
#[derive(Clone, Debug)]
pub struct SynthesisReport<S> {
    pub output: MultCircuit<S>,
    pub counts: GateCounts,
    pub routing_permutations: usize,
}

/// Runs the full synthesis pipeline on a DAG whose dimension is `2ⁿ`.
pub fn synthesize<S: Scalar>(dag: &AdditiveDag<S>) -> Result<SynthesisReport<S>, SynthError> {
    let dim = dag.dim();
    if dim < 2 || !dim.is_power_of_two() {
        return Err(SynthError::NotPowerOfTwo(dim));
    }
    let n = dim.trailing_zeros() as usize;

    let stacks: Vec<StackedVertex<S>> = stack_vertices(dag)
        .iter()
        .flat_map(split_power_of_two)
        .collect();
    let (routed, perms) = route(stacks, PlacementMap::identity(n));

    let mut out = MultCircuit::new(n).expect("n >= 1");
    out.set_global_phase(dag.global_phase());

    let emit_phases =
        |out: &mut MultCircuit<S>, phases: &[S]| -> Result<(), SynthError> {
            if phases.iter().any(|p| *p != S::zero()) {
                out.extend(synth_phases(phases, n)?).expect("gates fit the circuit");
                // synth_phases realizes the diagonal relative to index 0.
                out.add_global_phase(Angle::new(phases[0]));
            }
            Ok(())
        };

    for r in &routed {
        let mut phases = vec![S::zero(); dim];
        for &vid in &r.stack.vertex_ids {
            let vertex = dag.vertex(vid)?;
            for (slot, edge) in dag.in_edges(vid).into_iter().enumerate() {
                if edge.phase.radians() != S::zero() {
                    let bits = r.placement_before.bitstring_of(vertex.dim_of_slot(slot as u8));
                    phases[bits] = phases[bits] + edge.phase.radians();
                }
            }
        }
        emit_phases(&mut out, &phases)?;
        if let Some(rho) = &r.routing {
            out.extend(synth_permutation(rho, n)).expect("gates fit the circuit");
        }
        out.extend(synth_stacked_vertex(&r.stack, &r.placement_after, n)?)
            .expect("gates fit the circuit");
    }

    let final_placement =
        routed.last().map(|r| r.placement_after.clone()).unwrap_or_else(|| PlacementMap::identity(n));

    let mut phases = vec![S::zero(); dim];
    for edge in dag.edges() {
        if let Endpoint::Output(d) = edge.to {
            if edge.phase.radians() != S::zero() {
                let bits = final_placement.bitstring_of(d);
                phases[bits] = phases[bits] + edge.phase.radians();
            }
        }
    }
    emit_phases(&mut out, &phases)?;

    // Undo the residual placement and apply the trailing permutation in one
    // reversible circuit.
    let correction = Permutation::from_image(
        (0..dim).map(|b| dag.trailing().apply(final_placement.dim_at(b))).collect(),
    )
    .expect("composition of bijections");
    if !correction.is_identity() {
        out.extend(synth_permutation(&correction, n)).expect("gates fit the circuit");
    }

    let counts = GateCounts::tally(&out);
    Ok(SynthesisReport { output: out, counts, routing_permutations: perms.len() })
}
