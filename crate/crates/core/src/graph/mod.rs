//! Unitrivalent multigraphs with labeled boundary vertices.
//!
//! Loops and parallel edges are allowed. A loop contributes two to the degree
//! of its vertex. Every vertex has degree 1 (a boundary vertex, declared
//! explicitly and in order) or degree 3. Edge indices follow the order in
//! which edges were supplied; every vector indexed by edges uses that order.

mod cut;
mod cycles;
mod text;

pub use cut::{cut_edges, isolate_cycle, BoundaryOrigin, CutGraph, Decomposition, Part};
pub use cycles::{classify_edge, cycle_basis, external_edges, Cycle, EdgeClass, Homology};
pub use text::{parse_graph, GraphFile};

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Non-fatal oddities found during validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphWarning {
    /// A component made of a single edge joining two univalent vertices.
    Segment { edge: String },
    /// A component whose edge or trivalent vertex count differs from the
    /// `3g-3+2n` / `2g-2+n` identities.
    CountIdentity { component: usize },
}

impl fmt::Display for GraphWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphWarning::Segment { edge } => {
                write!(f, "component of edge `{edge}` has no trivalent vertex")
            }
            GraphWarning::CountIdentity { component } => {
                write!(f, "component {component} violates the edge/vertex count identity")
            }
        }
    }
}

#[derive(Clone)]
pub struct Graph {
    edge_ids: Vec<String>,
    vertex_ids: Vec<String>,
    ends: Vec<[usize; 2]>,
    incidence: Vec<Vec<usize>>,
    boundary: Vec<usize>,
    legs: Vec<usize>,
    vertex_component: Vec<usize>,
    components: usize,
    edge_lookup: HashMap<String, usize>,
    vertex_lookup: HashMap<String, usize>,
    warnings: Vec<GraphWarning>,
}

impl Graph {
    /// Validate an edge list `(edge-id, endpoint, endpoint)` and the ordered
    /// list of univalent vertices.
    pub fn new(edges: Vec<(String, String, String)>, boundary: Vec<String>) -> Result<Graph> {
        let mut edge_ids = Vec::with_capacity(edges.len());
        let mut edge_lookup = HashMap::new();
        let mut vertex_ids: Vec<String> = Vec::new();
        let mut vertex_lookup: HashMap<String, usize> = HashMap::new();
        let mut ends = Vec::with_capacity(edges.len());

        let mut vertex = |id: String, ids: &mut Vec<String>| -> usize {
            *vertex_lookup.entry(id.clone()).or_insert_with(|| {
                ids.push(id);
                ids.len() - 1
            })
        };
        for (id, a, b) in edges {
            if edge_lookup.insert(id.clone(), edge_ids.len()).is_some() {
                return Err(Error::DuplicateId { kind: "edge", id });
            }
            edge_ids.push(id);
            let a = vertex(a, &mut vertex_ids);
            let b = vertex(b, &mut vertex_ids);
            ends.push([a, b]);
        }
        let vertex_lookup: HashMap<String, usize> =
            vertex_ids.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();

        let mut incidence = vec![Vec::new(); vertex_ids.len()];
        for (e, &[a, b]) in ends.iter().enumerate() {
            incidence[a].push(e);
            incidence[b].push(e);
        }
        for (v, inc) in incidence.iter().enumerate() {
            if inc.len() != 1 && inc.len() != 3 {
                return Err(Error::Degree {
                    vertex: vertex_ids[v].clone(),
                    degree: inc.len(),
                });
            }
        }

        let mut declared = vec![false; vertex_ids.len()];
        let mut boundary_idx = Vec::with_capacity(boundary.len());
        for id in boundary {
            let Some(&v) = vertex_lookup.get(&id) else {
                return Err(Error::BoundaryMismatch {
                    vertex: id,
                    reason: "declared boundary vertex is not an edge endpoint",
                });
            };
            if declared[v] {
                return Err(Error::DuplicateId {
                    kind: "boundary vertex",
                    id,
                });
            }
            if incidence[v].len() != 1 {
                return Err(Error::BoundaryMismatch {
                    vertex: id,
                    reason: "declared boundary vertex is not univalent",
                });
            }
            declared[v] = true;
            boundary_idx.push(v);
        }
        if let Some(v) = (0..vertex_ids.len()).find(|&v| incidence[v].len() == 1 && !declared[v]) {
            return Err(Error::BoundaryMismatch {
                vertex: vertex_ids[v].clone(),
                reason: "univalent vertex missing from the boundary list",
            });
        }
        let legs = boundary_idx.iter().map(|&v| incidence[v][0]).collect();

        let (vertex_component, components) = label_components(vertex_ids.len(), &ends);

        let mut graph = Graph {
            edge_ids,
            vertex_ids,
            ends,
            incidence,
            boundary: boundary_idx,
            legs,
            vertex_component,
            components,
            edge_lookup,
            vertex_lookup,
            warnings: Vec::new(),
        };
        graph.warnings = graph.check_counts();
        Ok(graph)
    }

    /// Convenience constructor from string slices.
    pub fn from_edges(edges: &[(&str, &str, &str)], boundary: &[&str]) -> Result<Graph> {
        Graph::new(
            edges
                .iter()
                .map(|&(e, a, b)| (e.to_owned(), a.to_owned(), b.to_owned()))
                .collect(),
            boundary.iter().map(|&v| v.to_owned()).collect(),
        )
    }

    /// The graph with no edges and no vertices.
    pub fn empty() -> Graph {
        Graph::new(Vec::new(), Vec::new()).expect("empty graph is valid")
    }

    fn check_counts(&self) -> Vec<GraphWarning> {
        let mut edges = vec![0usize; self.components];
        let mut trivalent = vec![0usize; self.components];
        let mut univalent = vec![0usize; self.components];
        let mut vertices = vec![0usize; self.components];
        for &[a, _] in &self.ends {
            edges[self.vertex_component[a]] += 1;
        }
        for v in 0..self.vertex_ids.len() {
            let c = self.vertex_component[v];
            vertices[c] += 1;
            if self.incidence[v].len() == 3 {
                trivalent[c] += 1;
            } else {
                univalent[c] += 1;
            }
        }
        let mut out = Vec::new();
        for c in 0..self.components {
            let g = edges[c] as i64 - vertices[c] as i64 + 1;
            let n = univalent[c] as i64;
            if trivalent[c] == 0 {
                let e = (0..self.ends.len())
                    .find(|&e| self.vertex_component[self.ends[e][0]] == c)
                    .expect("component has an edge");
                out.push(GraphWarning::Segment {
                    edge: self.edge_ids[e].clone(),
                });
            }
            if (n >= 1 || g >= 2) && (edges[c] as i64 != 3 * g - 3 + 2 * n || trivalent[c] as i64 != 2 * g - 2 + n) {
                out.push(GraphWarning::CountIdentity { component: c });
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_ids.len()
    }

    pub fn edge_id(&self, e: usize) -> &str {
        &self.edge_ids[e]
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertex_ids[v]
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edge_lookup.get(id).copied()
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertex_lookup.get(id).copied()
    }

    pub fn ends(&self, e: usize) -> [usize; 2] {
        self.ends[e]
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.ends[e][0] == self.ends[e][1]
    }

    /// Edge slots at `v`; a loop appears twice.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    pub fn is_univalent(&self, v: usize) -> bool {
        self.incidence[v].len() == 1
    }

    pub fn trivalent_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertex_count()).filter(|&v| self.incidence[v].len() == 3)
    }

    /// Univalent vertices in declared order.
    pub fn boundary(&self) -> &[usize] {
        &self.boundary
    }

    pub fn boundary_count(&self) -> usize {
        self.boundary.len()
    }

    /// The edge at each boundary vertex, in boundary order.
    pub fn legs(&self) -> &[usize] {
        &self.legs
    }

    /// Edges incident to a univalent vertex.
    pub fn is_leaf_edge(&self, e: usize) -> bool {
        let [a, b] = self.ends[e];
        self.is_univalent(a) || self.is_univalent(b)
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    pub fn component_of_vertex(&self, v: usize) -> usize {
        self.vertex_component[v]
    }

    pub fn component_of_edge(&self, e: usize) -> usize {
        self.vertex_component[self.ends[e][0]]
    }

    /// First Betti number `E - V + #components`.
    pub fn betti(&self) -> usize {
        self.edge_count() + self.components - self.vertex_count()
    }

    pub fn warnings(&self) -> &[GraphWarning] {
        &self.warnings
    }

    /// Edges sorted by id with sorted endpoint ids, plus boundary ids; equal
    /// for graphs that differ only in edge and vertex ordering.
    pub fn canonical_form(&self) -> (Vec<(String, [String; 2])>, Vec<String>) {
        let mut edges: Vec<(String, [String; 2])> = (0..self.edge_count())
            .map(|e| {
                let [a, b] = self.ends[e];
                let mut pair = [self.vertex_ids[a].clone(), self.vertex_ids[b].clone()];
                pair.sort();
                (self.edge_ids[e].clone(), pair)
            })
            .collect();
        edges.sort();
        let boundary = self.boundary.iter().map(|&v| self.vertex_ids[v].clone()).collect();
        (edges, boundary)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for e in 0..self.edge_count() {
            let [a, b] = self.ends[e];
            list.entry(&format_args!(
                "{}: {}-{}",
                self.edge_ids[e], self.vertex_ids[a], self.vertex_ids[b]
            ));
        }
        list.finish()
    }
}

fn label_components(n: usize, ends: &[[usize; 2]]) -> (Vec<usize>, usize) {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &[a, b] in ends {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut label = vec![usize::MAX; n];
    let mut count = 0;
    let out = (0..n)
        .map(|v| {
            let r = find(&mut parent, v);
            if label[r] == usize::MAX {
                label[r] = count;
                count += 1;
            }
            label[r]
        })
        .collect();
    (out, count)
}
