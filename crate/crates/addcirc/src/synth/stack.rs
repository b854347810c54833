//! Vertex fusion into stacked vertices.
//!
//! Rotations with the same angle that are causally unrelated and touch
//! disjoint dimensions synthesize jointly: a stack of `2^k` of them costs one
//! controlled rotation with `k` fewer controls than a lone vertex would. The
//! fusion here is greedy over a topological order — each vertex joins the
//! earliest stack that can legally take it — with one extra guard: joining
//! must not create a cycle between stacks, or no synthesis order would exist.
//! The returned stacks are in a valid synthesis order.

use crate::angle::Angle;
use crate::dag::{AdditiveDag, Endpoint, VertexId};
use crate::scalar::Scalar;

/// A set of fused equal-angle rotations, tracked by dimension pair.
///
/// `members[k]` is the pair of the `k`-th fused rotation in slot order;
/// `vertex_ids[k]` is the DAG vertex it came from. The length of the stack is
/// its member count.
#[derive(Clone, Debug, PartialEq)]
pub struct StackedVertex<S> {
    pub theta: Angle<S>,
    pub members: Vec<(usize, usize)>,
    pub vertex_ids: Vec<VertexId>,
}

impl<S: Scalar> StackedVertex<S> {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    fn touches(&self, dims: (usize, usize)) -> bool {
        self.members
            .iter()
            .any(|&(a, b)| a == dims.0 || a == dims.1 || b == dims.0 || b == dims.1)
    }
}

/// Per-vertex reachability over the internal vertices of the DAG.
fn reachability(dag: &AdditiveDag<impl Scalar>) -> Vec<Vec<bool>> {
    let nv = dag.vertices().len();
    let mut adj = vec![Vec::new(); nv];
    for edge in dag.edges() {
        if let (Endpoint::Slot(a, _), Endpoint::Slot(b, _)) = (edge.from, edge.to) {
            adj[a.0].push(b.0);
        }
    }
    let mut reach = vec![vec![false; nv]; nv];
    for (start, row) in reach.iter_mut().enumerate() {
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &next in &adj[v] {
                if !row[next] {
                    row[next] = true;
                    stack.push(next);
                }
            }
        }
    }
    reach
}

fn cond_reaches(adj: &[Vec<usize>], from: usize, to: usize) -> bool {
    if from == to {
        return true;
    }
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![from];
    while let Some(v) = stack.pop() {
        for &next in &adj[v] {
            if next == to {
                return true;
            }
            if !seen[next] {
                seen[next] = true;
                stack.push(next);
            }
        }
    }
    false
}

/// Greedily fuses the DAG's vertices into stacks and returns them in a
/// synthesis order that respects causality.
///
/// A vertex joins the earliest stack whose angle matches (modulo 4π), whose
/// members it shares no dimension with, which contains none of its causal
/// relatives, and whose adoption keeps the stack-level graph acyclic.
pub fn stack_vertices<S: Scalar>(dag: &AdditiveDag<S>) -> Vec<StackedVertex<S>> {
    let order = dag.topological_order().expect("canonical DAGs are acyclic");
    let reach = reachability(dag);

    let mut stacks: Vec<StackedVertex<S>> = Vec::new();
    let mut stack_of: Vec<usize> = vec![usize::MAX; dag.vertices().len()];
    let mut stack_adj: Vec<Vec<usize>> = Vec::new();

    for id in order {
        let vertex = dag.vertices()[id.0];
        // Stacks holding a causal ancestor of this vertex: joining stack s
        // will add edges ancestor-stack → s.
        let mut ancestor_stacks: Vec<usize> = (0..dag.vertices().len())
            .filter(|&u| reach[u][id.0])
            .map(|u| stack_of[u])
            .collect();
        ancestor_stacks.sort_unstable();
        ancestor_stacks.dedup();

        let mut chosen = None;
        'candidates: for (s, stack) in stacks.iter().enumerate() {
            if !stack.theta.eq_mod(vertex.theta, S::four_pi()) {
                continue;
            }
            if stack.touches(vertex.dims) {
                continue;
            }
            if stack
                .vertex_ids
                .iter()
                .any(|u| reach[u.0][id.0] || reach[id.0][u.0])
            {
                continue;
            }
            for &a in &ancestor_stacks {
                if cond_reaches(&stack_adj, s, a) {
                    continue 'candidates;
                }
            }
            chosen = Some(s);
            break;
        }

        let s = match chosen {
            Some(s) => {
                stacks[s].members.push(vertex.dims);
                stacks[s].vertex_ids.push(id);
                s
            }
            None => {
                stacks.push(StackedVertex {
                    theta: vertex.theta,
                    members: vec![vertex.dims],
                    vertex_ids: vec![id],
                });
                stack_adj.push(Vec::new());
                stacks.len() - 1
            }
        };
        stack_of[id.0] = s;
        for &a in &ancestor_stacks {
            if a != s && !stack_adj[a].contains(&s) {
                stack_adj[a].push(s);
            }
        }
    }

    // Schedule: topological order of the stack graph, earliest index first.
    let mut indegree = vec![0usize; stacks.len()];
    for targets in &stack_adj {
        for &t in targets {
            indegree[t] += 1;
        }
    }
    let mut ready: std::collections::BTreeSet<usize> = indegree
        .iter()
        .enumerate()
        .filter(|(_, &d)| d == 0)
        .map(|(i, _)| i)
        .collect();
    let mut schedule = Vec::with_capacity(stacks.len());
    while let Some(&next) = ready.iter().next() {
        ready.remove(&next);
        schedule.push(next);
        for &t in &stack_adj[next] {
            indegree[t] -= 1;
            if indegree[t] == 0 {
                ready.insert(t);
            }
        }
    }
    assert_eq!(schedule.len(), stacks.len(), "stack graph stayed acyclic");

    let mut placed: Vec<Option<StackedVertex<S>>> = stacks.into_iter().map(Some).collect();
    schedule.into_iter().map(|s| placed[s].take().expect("scheduled once")).collect()
}

/// Splits a stack along the binary decomposition of its length, largest
/// power first; members are partitioned in order.
pub fn split_power_of_two<S: Scalar>(stack: &StackedVertex<S>) -> Vec<StackedVertex<S>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for bit in (0..usize::BITS).rev() {
        let chunk = 1usize << bit;
        if stack.len() & chunk != 0 {
            out.push(StackedVertex {
                theta: stack.theta,
                members: stack.members[offset..offset + chunk].to_vec(),
                vertex_ids: stack.vertex_ids[offset..offset + chunk].to_vec(),
            });
            offset += chunk;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dag::to_dag;
    use crate::ir::{AdditiveCircuit, AdditiveGate};

    fn stack_lengths(stacks: &[StackedVertex<f64>]) -> Vec<usize> {
        stacks.iter().map(|s| s.len()).collect()
    }

    #[test]
    fn parallel_equal_rotations_fuse_into_one_stack() {
        let theta = 0.4;
        let circuit = AdditiveCircuit::<f64>::from_gates(
            8,
            (0..4).map(|k| AdditiveGate::ry(2 * k, 2 * k + 1, theta)),
        )
        .unwrap();
        let stacks = stack_vertices(&to_dag(&circuit).unwrap());
        assert_eq!(stack_lengths(&stacks), vec![4]);
        assert_eq!(stacks[0].members, vec![(0, 1), (2, 3), (4, 5), (6, 7)]);
    }

    #[test]
    fn chained_rotations_stay_separate() {
        let circuit = AdditiveCircuit::<f64>::from_gates(
            3,
            [AdditiveGate::ry(0, 1, 0.4), AdditiveGate::ry(1, 2, 0.4)],
        )
        .unwrap();
        let stacks = stack_vertices(&to_dag(&circuit).unwrap());
        assert_eq!(stack_lengths(&stacks), vec![1, 1]);
    }

    #[test]
    fn opposite_angles_do_not_fuse() {
        let circuit = AdditiveCircuit::<f64>::from_gates(
            4,
            [AdditiveGate::ry(0, 1, 0.4), AdditiveGate::ry(2, 3, -0.4)],
        )
        .unwrap();
        let stacks = stack_vertices(&to_dag(&circuit).unwrap());
        assert_eq!(stack_lengths(&stacks), vec![1, 1]);
    }

    #[test]
    fn angle_match_wraps_the_rotation_period() {
        let circuit = AdditiveCircuit::<f64>::from_gates(
            4,
            [
                AdditiveGate::ry(0, 1, 0.4),
                AdditiveGate::ry(2, 3, 0.4 + 4.0 * std::f64::consts::PI),
            ],
        )
        .unwrap();
        let stacks = stack_vertices(&to_dag(&circuit).unwrap());
        assert_eq!(stack_lengths(&stacks), vec![2]);
    }

    #[test]
    fn adoption_never_creates_a_stack_cycle() {
        // a(0,1) → b(1,2) and c(2,3) → d(0,3): fusing greedily pairs {a,c}
        // first; {b,d} must then still schedule after it.
        let circuit = AdditiveCircuit::<f64>::from_gates(
            4,
            [
                AdditiveGate::ry(0, 1, 0.4),
                AdditiveGate::ry(2, 3, 0.4),
                AdditiveGate::ry(1, 2, 0.4),
                AdditiveGate::ry(0, 3, 0.4),
            ],
        )
        .unwrap();
        let dag = to_dag(&circuit).unwrap();
        let stacks = stack_vertices(&dag);
        assert_eq!(stacks.iter().map(|s| s.len()).sum::<usize>(), 4);
        // Every causal edge points forward in the schedule.
        let position: std::collections::BTreeMap<usize, usize> = stacks
            .iter()
            .enumerate()
            .flat_map(|(pos, s)| s.vertex_ids.iter().map(move |v| (v.0, pos)))
            .collect();
        for a in 0..dag.vertices().len() {
            for b in 0..dag.vertices().len() {
                if a != b
                    && dag
                        .causally_related(VertexId(a), VertexId(b))
                        .unwrap()
                {
                    // Related vertices never share a stack.
                    assert_ne!(position[&a], position[&b]);
                }
            }
        }
    }

    #[test]
    fn splitting_follows_binary_decomposition() {
        let stack = |len: usize| StackedVertex::<f64> {
            theta: Angle::new(0.4),
            members: (0..len).map(|k| (2 * k, 2 * k + 1)).collect(),
            vertex_ids: (0..len).map(VertexId).collect(),
        };
        assert_eq!(
            split_power_of_two(&stack(4)).iter().map(|s| s.len()).collect::<Vec<_>>(),
            vec![4]
        );
        assert_eq!(
            split_power_of_two(&stack(3)).iter().map(|s| s.len()).collect::<Vec<_>>(),
            vec![2, 1]
        );
        assert_eq!(
            split_power_of_two(&stack(6)).iter().map(|s| s.len()).collect::<Vec<_>>(),
            vec![4, 2]
        );
        // Members keep their order across the split.
        let parts = split_power_of_two(&stack(3));
        assert_eq!(parts[0].members, vec![(0, 1), (2, 3)]);
        assert_eq!(parts[1].members, vec![(4, 5)]);
    }
}
