//! The canonical DAG form of an additive circuit.
//!
//! Y-rotations become internal vertices with two in and two out slots, one
//! per touched dimension. Phases live exclusively on edges: consecutive
//! Z-rotations between two vertices merge into a single edge label. Boundary
//! vertices mark where each dimension enters and leaves, and the swap residue
//! of canonicalization rides along as a trailing permutation. Wire ordering
//! and the interleaving of commuting gates — the redundancy of the linear
//! gate list — disappear in this form.
//!
//! Vertices are slot-normalized at build time: slot 0 carries the smaller
//! dimension index, with the angle sign-flipped when the source gate was
//! written the other way around. Neighboring vertices on the same pair with
//! nothing in between fuse; a fusion that cancels to angle zero deletes the
//! vertex and splices its edges together.

use thiserror::Error;

use crate::angle::Angle;
use crate::ir::{AdditiveCircuit, AdditiveGate};
use crate::rewrite::{canonicalize, Permutation};
use crate::scalar::Scalar;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DagError {
    #[error("circuit contains swap gates; run canonicalization first")]
    ContainsSwaps,
    #[error("unknown vertex id {0}")]
    UnknownVertex(usize),
    #[error("graph contains a cycle")]
    CyclicGraph,
    #[error("trailing permutation has dimension {perm} but the circuit has {dim}")]
    TrailingDimMismatch { perm: usize, dim: usize },
    #[error("malformed graph: {0}")]
    Malformed(String),
}

/// Identifier of an internal vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

/// An internal Y-rotation vertex. Slot 0 is `dims.0 < dims.1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RyVertex<S> {
    pub theta: Angle<S>,
    pub dims: (usize, usize),
}

impl<S> RyVertex<S> {
    pub fn dim_of_slot(&self, slot: u8) -> usize {
        if slot == 0 {
            self.dims.0
        } else {
            self.dims.1
        }
    }
}

/// One end of an edge: a dimension boundary or a vertex slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Endpoint {
    Input(usize),
    Output(usize),
    Slot(VertexId, u8),
}

/// A directed edge carrying the merged phase between its endpoints.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhasedEdge<S> {
    pub from: Endpoint,
    pub to: Endpoint,
    pub phase: Angle<S>,
}

#[derive(Clone, Debug)]
pub struct AdditiveDag<S> {
    dim: usize,
    vertices: Vec<RyVertex<S>>,
    edges: Vec<PhasedEdge<S>>,
    trailing: Permutation,
    global_phase: Angle<S>,
}

impl<S: Scalar> AdditiveDag<S> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[RyVertex<S>] {
        &self.vertices
    }

    pub fn vertex(&self, id: VertexId) -> Result<&RyVertex<S>, DagError> {
        self.vertices.get(id.0).ok_or(DagError::UnknownVertex(id.0))
    }

    pub fn edges(&self) -> &[PhasedEdge<S>] {
        &self.edges
    }

    pub fn trailing(&self) -> &Permutation {
        &self.trailing
    }

    pub fn global_phase(&self) -> Angle<S> {
        self.global_phase
    }

    /// The two in-edges of a vertex, indexed by slot.
    pub fn in_edges(&self, id: VertexId) -> [&PhasedEdge<S>; 2] {
        let mut found: [Option<&PhasedEdge<S>>; 2] = [None, None];
        for edge in &self.edges {
            if let Endpoint::Slot(v, slot) = edge.to {
                if v == id {
                    found[slot as usize] = Some(edge);
                }
            }
        }
        [
            found[0].expect("vertex has an in-edge on slot 0"),
            found[1].expect("vertex has an in-edge on slot 1"),
        ]
    }

    /// Adjacency on internal vertices only.
    fn successors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for edge in &self.edges {
            if let (Endpoint::Slot(a, _), Endpoint::Slot(b, _)) = (edge.from, edge.to) {
                adj[a.0].push(b.0);
            }
        }
        adj
    }

    /// Deterministic topological order of the vertices (smallest id first
    /// among ready vertices). Errors on a cycle.
    pub fn topological_order(&self) -> Result<Vec<VertexId>, DagError> {
        let adj = self.successors();
        let mut indegree = vec![0usize; self.vertices.len()];
        for targets in &adj {
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
        let mut order = Vec::with_capacity(self.vertices.len());
        while let Some(&next) = ready.iter().next() {
            ready.remove(&next);
            order.push(VertexId(next));
            for &t in &adj[next] {
                indegree[t] -= 1;
                if indegree[t] == 0 {
                    ready.insert(t);
                }
            }
        }
        if order.len() != self.vertices.len() {
            return Err(DagError::CyclicGraph);
        }
        Ok(order)
    }

    /// True iff a directed path runs between the two vertices, either way.
    pub fn causally_related(&self, a: VertexId, b: VertexId) -> Result<bool, DagError> {
        if a.0 >= self.vertices.len() {
            return Err(DagError::UnknownVertex(a.0));
        }
        if b.0 >= self.vertices.len() {
            return Err(DagError::UnknownVertex(b.0));
        }
        let adj = self.successors();
        Ok(reaches(&adj, a.0, b.0) || reaches(&adj, b.0, a.0))
    }

    /// Assembles a graph from raw parts, checking the structural invariants:
    /// slot degrees, boundary degrees and index bounds. Acyclicity is the
    /// concern of [`from_dag`] / [`AdditiveDag::topological_order`].
    pub fn from_parts(
        dim: usize,
        vertices: Vec<RyVertex<S>>,
        edges: Vec<PhasedEdge<S>>,
        trailing: Permutation,
        global_phase: Angle<S>,
    ) -> Result<Self, DagError> {
        if trailing.dim() != dim {
            return Err(DagError::TrailingDimMismatch { perm: trailing.dim(), dim });
        }
        let dag = AdditiveDag { dim, vertices, edges, trailing, global_phase };
        dag.check_degrees()?;
        Ok(dag)
    }

    fn check_degrees(&self) -> Result<(), DagError> {
        let nv = self.vertices.len();
        let mut in_slots = vec![[0usize; 2]; nv];
        let mut out_slots = vec![[0usize; 2]; nv];
        let mut input_out = vec![0usize; self.dim];
        let mut output_in = vec![0usize; self.dim];
        let mut tally = |end: Endpoint, outgoing: bool| -> Result<(), DagError> {
            match end {
                Endpoint::Input(d) => {
                    if d >= self.dim {
                        return Err(DagError::Malformed(format!("input {d} out of range")));
                    }
                    if !outgoing {
                        return Err(DagError::Malformed("edge into an input vertex".into()));
                    }
                    input_out[d] += 1;
                }
                Endpoint::Output(d) => {
                    if d >= self.dim {
                        return Err(DagError::Malformed(format!("output {d} out of range")));
                    }
                    if outgoing {
                        return Err(DagError::Malformed("edge out of an output vertex".into()));
                    }
                    output_in[d] += 1;
                }
                Endpoint::Slot(v, slot) => {
                    if v.0 >= nv {
                        return Err(DagError::UnknownVertex(v.0));
                    }
                    if slot > 1 {
                        return Err(DagError::Malformed(format!("slot {slot} out of range")));
                    }
                    if outgoing {
                        out_slots[v.0][slot as usize] += 1;
                    } else {
                        in_slots[v.0][slot as usize] += 1;
                    }
                }
            }
            Ok(())
        };
        for edge in &self.edges {
            tally(edge.from, true)?;
            tally(edge.to, false)?;
        }
        for v in 0..nv {
            if in_slots[v] != [1, 1] || out_slots[v] != [1, 1] {
                return Err(DagError::Malformed(format!(
                    "vertex {v} does not have exactly one edge per slot"
                )));
            }
        }
        if input_out.iter().any(|&d| d != 1) || output_in.iter().any(|&d| d != 1) {
            return Err(DagError::Malformed(
                "every dimension needs exactly one input and one output edge".into(),
            ));
        }
        Ok(())
    }
}

fn reaches(adj: &[Vec<usize>], from: usize, to: usize) -> bool {
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

/// Builds the DAG of a swap-free circuit with an identity trailing
/// permutation. Errors if the circuit still contains swaps.
pub fn to_dag<S: Scalar>(circuit: &AdditiveCircuit<S>) -> Result<AdditiveDag<S>, DagError> {
    to_dag_with_trailing(circuit, Permutation::identity(circuit.dim()))
}

/// Builds the DAG of a swap-free circuit, attaching the given trailing
/// permutation (typically the residue of canonicalization).
pub fn to_dag_with_trailing<S: Scalar>(
    circuit: &AdditiveCircuit<S>,
    trailing: Permutation,
) -> Result<AdditiveDag<S>, DagError> {
    let dim = circuit.dim();
    if trailing.dim() != dim {
        return Err(DagError::TrailingDimMismatch { perm: trailing.dim(), dim });
    }

    struct Pending<S> {
        theta: Angle<S>,
        dims: (usize, usize),
        inputs: [(Endpoint, Angle<S>); 2],
    }

    let mut pending: Vec<Option<Pending<S>>> = Vec::new();
    let mut frontier: Vec<(Endpoint, Angle<S>)> =
        (0..dim).map(|d| (Endpoint::Input(d), Angle::zero())).collect();

    for gate in circuit.gates() {
        match *gate {
            AdditiveGate::XPlus { .. } => return Err(DagError::ContainsSwaps),
            AdditiveGate::RzPlus { k, theta } => frontier[k].1 = frontier[k].1 + theta,
            AdditiveGate::RyPlus { i, j, theta } => {
                let (a, b, theta) =
                    if i < j { (i, j, theta) } else { (j, i, -theta) };
                if theta.is_zero_ry() {
                    continue;
                }
                // Fuse with the previous vertex when it sits directly on the
                // same pair with no phase in between.
                let direct_predecessor = match (frontier[a].0, frontier[b].0) {
                    (Endpoint::Slot(va, 0), Endpoint::Slot(vb, 1)) if va == vb => Some(va),
                    _ => None,
                };
                if let Some(vid) = direct_predecessor {
                    if frontier[a].1.is_zero_rz() && frontier[b].1.is_zero_rz() {
                        let prev = pending[vid.0].as_mut().expect("frontier points at live vertex");
                        let merged = prev.theta + theta;
                        if merged.is_zero_ry() {
                            let dead = pending[vid.0].take().expect("checked live");
                            frontier[a] = dead.inputs[0];
                            frontier[b] = dead.inputs[1];
                        } else {
                            prev.theta = merged;
                        }
                        continue;
                    }
                }
                let id = VertexId(pending.len());
                pending.push(Some(Pending {
                    theta,
                    dims: (a, b),
                    inputs: [frontier[a], frontier[b]],
                }));
                frontier[a] = (Endpoint::Slot(id, 0), Angle::zero());
                frontier[b] = (Endpoint::Slot(id, 1), Angle::zero());
            }
        }
    }

    // Compact away deleted vertices, keeping creation order.
    let mut remap = vec![usize::MAX; pending.len()];
    let mut vertices = Vec::new();
    for (old, slot) in pending.iter().enumerate() {
        if let Some(p) = slot {
            remap[old] = vertices.len();
            vertices.push(RyVertex { theta: p.theta, dims: p.dims });
        }
    }
    let fix = |end: Endpoint| match end {
        Endpoint::Slot(v, s) => Endpoint::Slot(VertexId(remap[v.0]), s),
        other => other,
    };
    let mut edges = Vec::new();
    for (old, slot) in pending.iter().enumerate() {
        if let Some(p) = slot {
            for s in 0..2 {
                edges.push(PhasedEdge {
                    from: fix(p.inputs[s].0),
                    to: Endpoint::Slot(VertexId(remap[old]), s as u8),
                    phase: p.inputs[s].1,
                });
            }
        }
    }
    for (d, &(end, phase)) in frontier.iter().enumerate() {
        edges.push(PhasedEdge { from: fix(end), to: Endpoint::Output(d), phase });
    }

    let dag = AdditiveDag {
        dim,
        vertices,
        edges,
        trailing,
        global_phase: circuit.global_phase(),
    };
    dag.topological_order().expect("construction order is topological");
    Ok(dag)
}

/// Canonicalizes a circuit and builds its DAG, storing the swap residue as
/// the trailing permutation.
pub fn canonical_dag<S: Scalar>(circuit: &AdditiveCircuit<S>) -> AdditiveDag<S> {
    let (canonical, trailing) = canonicalize(circuit);
    to_dag_with_trailing(&canonical, trailing).expect("canonical circuits are swap-free")
}

/// Emits the DAG back as an additive circuit: edge phases and vertices in
/// topological order, then the trailing permutation as explicit swaps.
pub fn from_dag<S: Scalar>(dag: &AdditiveDag<S>) -> Result<AdditiveCircuit<S>, DagError> {
    let order = dag.topological_order()?;
    let mut circuit = AdditiveCircuit::new(dag.dim()).expect("dag dim is positive");
    circuit.set_global_phase(dag.global_phase());
    let mut push = |gate: AdditiveGate<S>| {
        circuit.append(gate).expect("dag indices are in range");
    };
    for id in order {
        let vertex = &dag.vertices[id.0];
        for (slot, edge) in dag.in_edges(id).into_iter().enumerate() {
            if edge.phase.radians() != S::zero() {
                push(AdditiveGate::RzPlus {
                    k: vertex.dim_of_slot(slot as u8),
                    theta: edge.phase,
                });
            }
        }
        push(AdditiveGate::RyPlus { i: vertex.dims.0, j: vertex.dims.1, theta: vertex.theta });
    }
    for edge in &dag.edges {
        if let Endpoint::Output(d) = edge.to {
            if edge.phase.radians() != S::zero() {
                push(AdditiveGate::RzPlus { k: d, theta: edge.phase });
            }
        }
    }
    for (a, b) in dag.trailing.transpositions() {
        push(AdditiveGate::XPlus { i: a, j: b });
    }
    Ok(circuit)
}

/// One vertex or edge per line, for debugging synthesis inputs.
pub fn render_dag_text<S: Scalar>(dag: &AdditiveDag<S>) -> String {
    let mut out = String::new();
    out.push_str(&format!("dag dims {}\n", dag.dim()));
    for (i, v) in dag.vertices.iter().enumerate() {
        out.push_str(&format!(
            "vertex {} ry {} {} {:.17e}\n",
            i,
            v.dims.0,
            v.dims.1,
            v.theta.radians().to_f64_lossy()
        ));
    }
    let fmt_end = |e: Endpoint| match e {
        Endpoint::Input(d) => format!("in{d}"),
        Endpoint::Output(d) => format!("out{d}"),
        Endpoint::Slot(v, s) => format!("v{}.{}", v.0, s),
    };
    for e in &dag.edges {
        out.push_str(&format!(
            "edge {} -> {} phase {:.17e}\n",
            fmt_end(e.from),
            fmt_end(e.to),
            e.phase.radians().to_f64_lossy()
        ));
    }
    if !dag.trailing.is_identity() {
        let img: Vec<String> = dag.trailing.image().iter().map(|v| v.to_string()).collect();
        out.push_str(&format!("trailing {}\n", img.join(" ")));
    }
    out
}
