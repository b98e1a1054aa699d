//! Cutting internal edges and regrouping the pieces into two parts.
//!
//! Cutting an edge `f = (x, y)` replaces it by two legs `f:1` (at `x`) and
//! `f:2` (at `y`), each ending at a fresh univalent vertex `~f:1` / `~f:2`.
//! Both legs later carry the same boundary label `j''_f`.

use super::{Cycle, Graph};
use crate::error::{Error, Result};
use crate::f2::F2Vec;

/// Where a boundary vertex of a cut graph or part comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundaryOrigin {
    /// The `m`-th boundary vertex of the original graph.
    Original(usize),
    /// A half of the `position`-th cut edge; `side` is 0 at the first
    /// endpoint and 1 at the second.
    Cut { position: usize, side: usize },
}

/// Result of cutting a set of edges, before grouping into parts.
#[derive(Debug, Clone)]
pub struct CutGraph {
    pub graph: Graph,
    /// Cut edges of the original graph, ascending.
    pub cut: Vec<usize>,
    /// For each edge of `graph`, the original edge it comes from.
    pub edge_origin: Vec<usize>,
    pub boundary_origin: Vec<BoundaryOrigin>,
    original_edges: usize,
    original_boundary: usize,
}

/// One side of a decomposition.
#[derive(Debug, Clone)]
pub struct Part {
    pub graph: Graph,
    pub edge_origin: Vec<usize>,
    pub boundary_origin: Vec<BoundaryOrigin>,
}

impl Part {
    /// Boundary labels of the part from the original labels `j'` and the
    /// labels `j''` of the cut edges (indexed by cut position).
    pub fn boundary_values(&self, original: &[u32], cut: &[u32]) -> Vec<u32> {
        self.boundary_origin
            .iter()
            .map(|o| match *o {
                BoundaryOrigin::Original(m) => original[m],
                BoundaryOrigin::Cut { position, .. } => cut[position],
            })
            .collect()
    }

    /// Transport a cycle of the part to the original graph. Cycles never
    /// run through the new legs, so every support edge has an origin.
    pub fn transport_cycle(&self, cycle: &Cycle, original_edges: usize) -> Cycle {
        let mut support = F2Vec::zeros(original_edges);
        for e in cycle.edges() {
            support.flip(self.edge_origin[e]);
        }
        Cycle::from_support_unchecked(support)
    }

    pub fn is_empty(&self) -> bool {
        self.graph.edge_count() == 0
    }
}

/// A graph split along cut edges into `first` (Γ₁) and `second` (Γ₂).
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub cut: Vec<usize>,
    pub first: Part,
    pub second: Part,
    pub original_edges: usize,
    pub original_boundary: usize,
}

impl Decomposition {
    /// Cut `cut` and put the components selected by `first_components`
    /// (indexed as in [`CutGraph::graph`]) into the first part.
    pub fn new(graph: &Graph, cut: &[usize], first_components: &[bool]) -> Result<Decomposition> {
        Ok(cut_edges(graph, cut)?.split(first_components))
    }

    /// No cut: the whole graph is Γ₁ and Γ₂ is empty.
    pub fn whole(graph: &Graph) -> Decomposition {
        let cg = cut_edges(graph, &[]).expect("empty cut");
        let all = vec![true; cg.graph.component_count()];
        cg.split(&all)
    }

    /// Where each original non-cut edge landed: `(part, edge)` with part 0 or 1.
    pub fn edge_locations(&self) -> Vec<Option<(usize, usize)>> {
        let mut loc = vec![None; self.original_edges];
        for (p, part) in [&self.first, &self.second].into_iter().enumerate() {
            for (e, &o) in part.edge_origin.iter().enumerate() {
                if !self.cut.contains(&o) {
                    loc[o] = Some((p, e));
                }
            }
        }
        loc
    }
}

pub fn cut_edges(graph: &Graph, cut: &[usize]) -> Result<CutGraph> {
    let mut cut: Vec<usize> = cut.to_vec();
    cut.sort_unstable();
    cut.dedup();
    for &f in &cut {
        if f >= graph.edge_count() {
            return Err(Error::UnknownEdge(format!("#{f}")));
        }
        if graph.is_leaf_edge(f) {
            return Err(Error::CutLeafEdge {
                edge: graph.edge_id(f).to_owned(),
            });
        }
    }
    let mut edges = Vec::with_capacity(graph.edge_count() + cut.len());
    let mut edge_origin = Vec::with_capacity(graph.edge_count() + cut.len());
    for e in 0..graph.edge_count() {
        let [a, b] = graph.ends(e);
        let id = graph.edge_id(e);
        if cut.binary_search(&e).is_ok() {
            for (side, v) in [a, b].into_iter().enumerate() {
                let half = format!("{id}:{}", side + 1);
                edges.push((half.clone(), graph.vertex_id(v).to_owned(), format!("~{half}")));
                edge_origin.push(e);
            }
        } else {
            edges.push((
                id.to_owned(),
                graph.vertex_id(a).to_owned(),
                graph.vertex_id(b).to_owned(),
            ));
            edge_origin.push(e);
        }
    }
    let mut boundary: Vec<String> = graph
        .boundary()
        .iter()
        .map(|&v| graph.vertex_id(v).to_owned())
        .collect();
    let mut boundary_origin: Vec<BoundaryOrigin> = (0..graph.boundary_count()).map(BoundaryOrigin::Original).collect();
    for (position, &f) in cut.iter().enumerate() {
        for side in 0..2 {
            boundary.push(format!("~{}:{}", graph.edge_id(f), side + 1));
            boundary_origin.push(BoundaryOrigin::Cut { position, side });
        }
    }
    let cut_graph = Graph::new(edges, boundary)?;
    Ok(CutGraph {
        graph: cut_graph,
        cut,
        edge_origin,
        boundary_origin,
        original_edges: graph.edge_count(),
        original_boundary: graph.boundary_count(),
    })
}

impl CutGraph {
    /// Group components into two parts; `first[c]` puts component `c` in Γ₁.
    pub fn split(&self, first: &[bool]) -> Decomposition {
        assert_eq!(first.len(), self.graph.component_count());
        let part = |want: bool| {
            let g = &self.graph;
            let keep = |e: usize| first[g.component_of_edge(e)] == want;
            let mut edges = Vec::new();
            let mut edge_origin = Vec::new();
            for e in (0..g.edge_count()).filter(|&e| keep(e)) {
                let [a, b] = g.ends(e);
                edges.push((
                    g.edge_id(e).to_owned(),
                    g.vertex_id(a).to_owned(),
                    g.vertex_id(b).to_owned(),
                ));
                edge_origin.push(self.edge_origin[e]);
            }
            let mut boundary = Vec::new();
            let mut boundary_origin = Vec::new();
            for (slot, &v) in g.boundary().iter().enumerate() {
                if first[g.component_of_vertex(v)] == want {
                    boundary.push(g.vertex_id(v).to_owned());
                    boundary_origin.push(self.boundary_origin[slot]);
                }
            }
            Part {
                graph: Graph::new(edges, boundary).expect("union of components is valid"),
                edge_origin,
                boundary_origin,
            }
        };
        Decomposition {
            cut: self.cut.clone(),
            first: part(true),
            second: part(false),
            original_edges: self.original_edges,
            original_boundary: self.original_boundary,
        }
    }

    /// Identify paired legs again, recovering the original graph.
    pub fn glue(&self) -> Graph {
        let g = &self.graph;
        let mut rows: Vec<Option<(String, String, String)>> = vec![None; self.original_edges];
        let mut halves: Vec<Vec<String>> = vec![Vec::new(); self.original_edges];
        for e in 0..g.edge_count() {
            let o = self.edge_origin[e];
            let [a, b] = g.ends(e);
            if self.cut.binary_search(&o).is_ok() {
                // half edges run from the original endpoint to the fresh vertex
                halves[o].push(g.vertex_id(a).to_owned());
                if halves[o].len() == 2 {
                    let id = g.edge_id(e).rsplit_once(':').map(|(s, _)| s).unwrap_or("").to_owned();
                    rows[o] = Some((id, halves[o][0].clone(), halves[o][1].clone()));
                }
            } else {
                rows[o] = Some((
                    g.edge_id(e).to_owned(),
                    g.vertex_id(a).to_owned(),
                    g.vertex_id(b).to_owned(),
                ));
            }
        }
        let boundary = g
            .boundary()
            .iter()
            .zip(&self.boundary_origin)
            .filter(|(_, o)| matches!(o, BoundaryOrigin::Original(_)))
            .map(|(&v, _)| g.vertex_id(v).to_owned())
            .collect();
        debug_assert_eq!(
            self.boundary_origin
                .iter()
                .filter(|o| matches!(o, BoundaryOrigin::Original(_)))
                .count(),
            self.original_boundary
        );
        Graph::new(
            rows.into_iter().map(|r| r.expect("every edge restored")).collect(),
            boundary,
        )
        .expect("glued graph is valid")
    }
}

/// Cut every cuttable λ-external and λ-internal edge; Γ₁ = Γ(λ) is the union
/// of components meeting the support of λ, Γ₂ = Γ′(λ) the rest. Legs of the
/// original graph are never cut: a leg at a vertex of λ already is a leg of
/// Γ(λ).
pub fn isolate_cycle(graph: &Graph, cycle: &Cycle) -> Result<Decomposition> {
    if cycle.is_zero() {
        return Err(Error::ZeroCycle);
    }
    let on = cycle.vertices_on(graph);
    let cut: Vec<usize> = (0..graph.edge_count())
        .filter(|&e| {
            let [a, b] = graph.ends(e);
            !cycle.contains(e) && (on[a] || on[b]) && !graph.is_leaf_edge(e)
        })
        .collect();
    let cg = cut_edges(graph, &cut)?;
    let mut first = vec![false; cg.graph.component_count()];
    for e in 0..cg.graph.edge_count() {
        let o = cg.edge_origin[e];
        if cycle.contains(o) && cut.binary_search(&o).is_err() {
            first[cg.graph.component_of_edge(e)] = true;
        }
    }
    Ok(cg.split(&first))
}
