use std::collections::VecDeque;
use std::fmt;

use super::Graph;
use crate::error::{Error, Result};
use crate::f2::F2Vec;

/// An element of `H₁(Γ; Z₂)`: an edge set with even local degree everywhere.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    support: F2Vec,
}

impl Cycle {
    pub fn new(graph: &Graph, support: F2Vec) -> Result<Cycle> {
        if support.len() != graph.edge_count() {
            return Err(Error::Arity {
                what: "cycle support",
                expected: graph.edge_count(),
                actual: support.len(),
            });
        }
        let mut parity = vec![false; graph.vertex_count()];
        for e in support.ones() {
            let [a, b] = graph.ends(e);
            parity[a] ^= true;
            parity[b] ^= true;
        }
        if let Some(v) = parity.iter().position(|&odd| odd) {
            return Err(Error::NotACycle {
                vertex: graph.vertex_id(v).to_owned(),
            });
        }
        Ok(Cycle { support })
    }

    pub fn from_edge_ids(graph: &Graph, ids: &[&str]) -> Result<Cycle> {
        let mut support = F2Vec::zeros(graph.edge_count());
        for id in ids {
            let e = graph
                .edge_index(id)
                .ok_or_else(|| Error::UnknownEdge((*id).to_owned()))?;
            support.flip(e);
        }
        Cycle::new(graph, support)
    }

    pub fn zero(graph: &Graph) -> Cycle {
        Cycle {
            support: F2Vec::zeros(graph.edge_count()),
        }
    }

    /// Skips validation; callers guarantee even local degree.
    pub(crate) fn from_support_unchecked(support: F2Vec) -> Cycle {
        Cycle { support }
    }

    pub fn support(&self) -> &F2Vec {
        &self.support
    }

    pub fn contains(&self, e: usize) -> bool {
        self.support.get(e)
    }

    pub fn edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.support.ones()
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_zero()
    }

    pub fn add(&self, other: &Cycle) -> Cycle {
        Cycle {
            support: self.support.xor(&other.support),
        }
    }

    /// Per-vertex flag: the vertex is an endpoint of some support edge.
    pub fn vertices_on(&self, graph: &Graph) -> Vec<bool> {
        let mut on = vec![false; graph.vertex_count()];
        for e in self.support.ones() {
            let [a, b] = graph.ends(e);
            on[a] = true;
            on[b] = true;
        }
        on
    }

    /// Edge ids joined by `+`, or `0` for the zero cycle.
    pub fn display<'a>(&'a self, graph: &'a Graph) -> impl fmt::Display + 'a {
        DisplayCycle { cycle: self, graph }
    }
}

impl fmt::Debug for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cycle({:?})", self.support)
    }
}

struct DisplayCycle<'a> {
    cycle: &'a Cycle,
    graph: &'a Graph,
}

impl fmt::Display for DisplayCycle<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cycle.is_zero() {
            return f.write_str("0");
        }
        for (i, e) in self.cycle.edges().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            f.write_str(self.graph.edge_id(e))?;
        }
        Ok(())
    }
}

/// Position of an edge relative to a nonzero cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeClass {
    OnCycle,
    External,
    Internal,
    Off,
}

pub fn classify_edge(graph: &Graph, cycle: &Cycle, edge: usize) -> Result<EdgeClass> {
    if cycle.is_zero() {
        return Err(Error::ZeroCycle);
    }
    let on = cycle.vertices_on(graph);
    Ok(classify_with(graph, cycle, &on, edge))
}

fn classify_with(graph: &Graph, cycle: &Cycle, on: &[bool], edge: usize) -> EdgeClass {
    if cycle.contains(edge) {
        return EdgeClass::OnCycle;
    }
    let [a, b] = graph.ends(edge);
    match (on[a], on[b]) {
        (true, true) => EdgeClass::Internal,
        (true, false) | (false, true) => EdgeClass::External,
        (false, false) => EdgeClass::Off,
    }
}

/// The λ-external edges, ascending; empty for the zero cycle.
pub fn external_edges(graph: &Graph, cycle: &Cycle) -> Vec<usize> {
    let on = cycle.vertices_on(graph);
    (0..graph.edge_count())
        .filter(|&e| classify_with(graph, cycle, &on, e) == EdgeClass::External)
        .collect()
}

/// Fundamental cycle basis of `H₁(Γ; Z₂)`.
///
/// The spanning forest is grown greedily over edges in descending index, so
/// the lowest-index edges become chords; basis cycle `i` is the `i`-th chord
/// in ascending order plus its tree path.
#[derive(Debug, Clone)]
pub struct Homology {
    basis: Vec<Cycle>,
    chords: Vec<usize>,
    chord_position: Vec<Option<usize>>,
}

impl Homology {
    pub fn of(graph: &Graph) -> Homology {
        Self::of_subgraph(graph, |_| true)
    }

    /// Cycle basis of the subgraph formed by the edges accepted by `allowed`.
    pub fn of_subgraph(graph: &Graph, allowed: impl Fn(usize) -> bool) -> Homology {
        let n = graph.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut tree_adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        let mut chords = Vec::new();
        for e in (0..graph.edge_count()).rev().filter(|&e| allowed(e)) {
            let [a, b] = graph.ends(e);
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                chords.push(e);
            } else {
                parent[ra] = rb;
                tree_adj[a].push((b, e));
                tree_adj[b].push((a, e));
            }
        }
        chords.sort_unstable();

        // BFS parents in the forest, rooted at the lowest vertex of each tree.
        let mut up: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut depth = vec![usize::MAX; n];
        for root in 0..n {
            if depth[root] != usize::MAX {
                continue;
            }
            depth[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                for &(y, e) in &tree_adj[x] {
                    if depth[y] == usize::MAX {
                        depth[y] = depth[x] + 1;
                        up[y] = Some((x, e));
                        queue.push_back(y);
                    }
                }
            }
        }

        let m = graph.edge_count();
        let basis = chords
            .iter()
            .map(|&c| {
                let mut support = F2Vec::unit(m, c);
                let [mut a, mut b] = graph.ends(c);
                while a != b {
                    if depth[a] < depth[b] {
                        std::mem::swap(&mut a, &mut b);
                    }
                    let (pa, e) = up[a].expect("tree path exists");
                    support.flip(e);
                    a = pa;
                }
                Cycle { support }
            })
            .collect();
        let mut chord_position = vec![None; m];
        for (i, &c) in chords.iter().enumerate() {
            chord_position[c] = Some(i);
        }
        Homology {
            basis,
            chords,
            chord_position,
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Cycle] {
        &self.basis
    }

    pub fn chords(&self) -> &[usize] {
        &self.chords
    }

    /// Coordinates of a cycle of the whole graph in this basis. Only valid
    /// for the basis of the whole graph (every cycle is determined by its
    /// chords).
    pub fn coordinates(&self, cycle: &Cycle) -> F2Vec {
        let mut c = F2Vec::zeros(self.rank());
        for e in cycle.edges() {
            if let Some(i) = self.chord_position[e] {
                c.set(i, true);
            }
        }
        c
    }

    pub fn element(&self, coordinates: &F2Vec) -> Cycle {
        let m = self.chord_position.len();
        let mut support = F2Vec::zeros(m);
        for i in coordinates.ones() {
            support.xor_assign(self.basis[i].support());
        }
        Cycle { support }
    }
}

pub fn cycle_basis(graph: &Graph) -> Vec<Cycle> {
    Homology::of(graph).basis
}
