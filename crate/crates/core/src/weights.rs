//! Level-k admissible weights and the flip action of `H₁(Γ; Z₂)`.
//!
//! Weights are stored doubled: the entry for an edge is `2·j`, an integer in
//! `[0, k]`, so half-integers never appear.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Cycle, Graph, Homology};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Level(u32);

impl Level {
    pub fn new(k: u32) -> Result<Level> {
        if k == 0 {
            return Err(Error::InvalidLevel(k));
        }
        Ok(Level(k))
    }

    pub fn k(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Doubled edge labels `2·j_l`, indexed by edge.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector(Vec<u32>);

impl WeightVector {
    pub fn new(doubled: Vec<u32>) -> WeightVector {
        WeightVector(doubled)
    }

    pub fn doubled(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, e: usize) -> u32 {
        self.0[e]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Comma-separated doubled entries, for reports.
    pub fn compact(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        parts.join(",")
    }
}

impl From<Vec<u32>> for WeightVector {
    fn from(v: Vec<u32>) -> Self {
        WeightVector(v)
    }
}

/// Tab-separated doubled entries.
impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("\t")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Quantum Clebsch–Gordan condition on doubled labels at one vertex.
#[inline]
pub fn qcg_triple(a: u32, b: u32, c: u32, k: u32) -> bool {
    let s = a + b + c;
    s.is_multiple_of(2) && a.abs_diff(b) <= c && c <= a + b && s <= 2 * k
}

fn check_boundary(graph: &Graph, level: Level, boundary: &[u32]) -> Result<()> {
    if boundary.len() != graph.boundary_count() {
        return Err(Error::Arity {
            what: "boundary labels",
            expected: graph.boundary_count(),
            actual: boundary.len(),
        });
    }
    for (&v, &x) in graph.boundary().iter().zip(boundary) {
        if x > level.k() {
            return Err(Error::Range {
                place: format!("boundary vertex `{}`", graph.vertex_id(v)),
                value: x,
                level: level.k(),
            });
        }
    }
    Ok(())
}

fn vertex_ok(graph: &Graph, v: usize, w: &[u32], k: u32) -> bool {
    match graph.incident(v) {
        &[a, b, c] => qcg_triple(w[a], w[b], w[c], k),
        _ => true,
    }
}

pub fn check_admissible(graph: &Graph, level: Level, w: &WeightVector, boundary: &[u32]) -> Result<bool> {
    check_boundary(graph, level, boundary)?;
    if w.len() != graph.edge_count() {
        return Err(Error::Arity {
            what: "weight vector",
            expected: graph.edge_count(),
            actual: w.len(),
        });
    }
    let k = level.k();
    for (e, &x) in w.doubled().iter().enumerate() {
        if x > k {
            return Err(Error::Range {
                place: format!("edge `{}`", graph.edge_id(e)),
                value: x,
                level: k,
            });
        }
    }
    let legs_match = graph
        .boundary()
        .iter()
        .zip(boundary)
        .all(|(&v, &x)| w.get(graph.incident(v)[0]) == x);
    Ok(legs_match && graph.trivalent_vertices().all(|v| vertex_ok(graph, v, w.doubled(), k)))
}

/// Edges in breadth-first discovery order, so that vertices become fully
/// labeled early during the search.
fn search_order(graph: &Graph) -> Vec<usize> {
    let mut seen_v = vec![false; graph.vertex_count()];
    let mut seen_e = vec![false; graph.edge_count()];
    let mut order = Vec::with_capacity(graph.edge_count());
    for root in 0..graph.vertex_count() {
        if seen_v[root] {
            continue;
        }
        seen_v[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &e in graph.incident(v) {
                if !seen_e[e] {
                    seen_e[e] = true;
                    order.push(e);
                }
                let [a, b] = graph.ends(e);
                let other = if a == v { b } else { a };
                if !seen_v[other] {
                    seen_v[other] = true;
                    queue.push_back(other);
                }
            }
        }
    }
    order
}

struct Search<'a> {
    graph: &'a Graph,
    k: u32,
    order: Vec<usize>,
    forced: Vec<Option<u32>>,
    labels: Vec<u32>,
    remaining: Vec<u8>,
    out: Vec<WeightVector>,
}

impl Search<'_> {
    fn run(&mut self, pos: usize) {
        if pos == self.order.len() {
            self.out.push(WeightVector(self.labels.clone()));
            return;
        }
        let e = self.order[pos];
        let [a, b] = self.graph.ends(e);
        let (lo, hi) = match self.forced[e] {
            Some(x) => (x, x),
            None => (0, self.k),
        };
        self.remaining[a] -= 1;
        self.remaining[b] -= 1;
        for x in lo..=hi {
            self.labels[e] = x;
            let ok = [a, b]
                .iter()
                .all(|&v| self.remaining[v] != 0 || vertex_ok(self.graph, v, &self.labels, self.k));
            if ok {
                self.run(pos + 1);
            }
        }
        self.remaining[a] += 1;
        self.remaining[b] += 1;
    }
}

/// All admissible weights, sorted lexicographically.
pub fn enumerate_admissible(graph: &Graph, level: Level, boundary: &[u32]) -> Result<Vec<WeightVector>> {
    check_boundary(graph, level, boundary)?;
    if boundary.iter().sum::<u32>() % 2 == 1 {
        return Ok(Vec::new());
    }
    let mut forced = vec![None; graph.edge_count()];
    for (&v, &x) in graph.boundary().iter().zip(boundary) {
        let leg = graph.incident(v)[0];
        match forced[leg] {
            Some(y) if y != x => return Ok(Vec::new()),
            _ => forced[leg] = Some(x),
        }
    }
    let mut search = Search {
        graph,
        k: level.k(),
        order: search_order(graph),
        forced,
        labels: vec![0; graph.edge_count()],
        remaining: (0..graph.vertex_count()).map(|v| graph.degree(v) as u8).collect(),
        out: Vec::new(),
    };
    search.run(0);
    let mut out = search.out;
    out.sort_unstable();
    Ok(out)
}

/// Reference enumeration: filter the full product `[0, k]^E`. Exponential;
/// used to cross-check [`enumerate_admissible`].
pub fn enumerate_by_filtering(graph: &Graph, level: Level, boundary: &[u32]) -> Result<Vec<WeightVector>> {
    check_boundary(graph, level, boundary)?;
    let k = level.k();
    let m = graph.edge_count();
    let mut out = Vec::new();
    let mut w = vec![0u32; m];
    loop {
        let wv = WeightVector(w.clone());
        if check_admissible(graph, level, &wv, boundary)? {
            out.push(wv);
        }
        // odometer, last coordinate fastest
        let mut i = m;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if w[i] < k {
                w[i] += 1;
                break;
            }
            w[i] = 0;
        }
    }
}

/// `λ·j`: replace `2j_l` by `k - 2j_l` on every edge of `λ`.
pub fn act(cycle: &Cycle, w: &WeightVector, level: Level) -> WeightVector {
    let mut out = w.clone();
    for e in cycle.edges() {
        out.0[e] = level.k() - out.0[e];
    }
    out
}

/// `λ·j = j`, i.e. every edge of `λ` carries `k/4`.
pub fn fixes(cycle: &Cycle, w: &WeightVector, level: Level) -> bool {
    cycle.edges().all(|e| 2 * w.get(e) == level.k())
}

/// Basis of the stabilizer of `w`: the cycle space of the subgraph of edges
/// labeled `k/4`.
pub fn stabilizer_basis(graph: &Graph, level: Level, w: &WeightVector) -> Vec<Cycle> {
    Homology::of_subgraph(graph, |e| 2 * w.get(e) == level.k())
        .basis()
        .to_vec()
}

/// An `H₁`-orbit of admissible weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    /// Lexicographically least member.
    pub representative: WeightVector,
    /// Sorted members.
    pub members: Vec<WeightVector>,
    /// Basis of the common stabilizer of the members.
    pub stabilizer: Vec<Cycle>,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn stabilizer_dim(&self) -> usize {
        self.stabilizer.len()
    }
}

/// Orbits ordered by representative.
pub fn orbits(graph: &Graph, level: Level, boundary: &[u32]) -> Result<Vec<Orbit>> {
    Ok(crate::space::WeightSpace::new(graph.clone(), level, boundary.to_vec())?
        .orbits()
        .to_vec())
}
