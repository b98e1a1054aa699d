//! The admissible weight set of `(Γ; j')` at level `k` together with the
//! permutation action of a fixed homology basis, orbits and stabilizers.
//! Cochains and representations are indexed by positions in this set.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::f2::F2Vec;
use crate::graph::{Cycle, Graph, Homology};
use crate::weights::{enumerate_admissible, stabilizer_basis, Level, Orbit, WeightVector};

#[derive(Debug)]
pub struct WeightSpace {
    graph: Graph,
    level: Level,
    boundary: Vec<u32>,
    homology: Homology,
    weights: Vec<WeightVector>,
    index: HashMap<WeightVector, usize>,
    /// `moves[b][j]`: index of `b·j` for basis element `b`.
    moves: Vec<Vec<usize>>,
    orbits: Vec<Orbit>,
    orbit_members: Vec<Vec<usize>>,
    orbit_stabilizers: Vec<Vec<F2Vec>>,
    orbit_of: Vec<usize>,
}

impl WeightSpace {
    pub fn new(graph: Graph, level: Level, boundary: Vec<u32>) -> Result<WeightSpace> {
        let homology = Homology::of(&graph);
        if homology.rank() > 63 {
            return Err(Error::GenusTooLarge(homology.rank()));
        }
        let weights = enumerate_admissible(&graph, level, &boundary)?;
        let index: HashMap<WeightVector, usize> = weights.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let k = level.k();
        let moves: Vec<Vec<usize>> = homology
            .basis()
            .iter()
            .map(|b| {
                weights
                    .iter()
                    .map(|w| {
                        let mut moved = w.doubled().to_vec();
                        for e in b.edges() {
                            moved[e] = k - moved[e];
                        }
                        index[&WeightVector::new(moved)]
                    })
                    .collect()
            })
            .collect();

        let n = weights.len();
        let mut orbit_of = vec![usize::MAX; n];
        let mut orbit_members = Vec::new();
        // weights are sorted, so the first unvisited one is the least of its orbit
        for start in 0..n {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let id = orbit_members.len();
            orbit_of[start] = id;
            let mut members = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(j) = queue.pop_front() {
                for mv in &moves {
                    let t = mv[j];
                    if orbit_of[t] == usize::MAX {
                        orbit_of[t] = id;
                        members.push(t);
                        queue.push_back(t);
                    }
                }
            }
            members.sort_unstable();
            orbit_members.push(members);
        }

        let mut orbits = Vec::with_capacity(orbit_members.len());
        let mut orbit_stabilizers = Vec::with_capacity(orbit_members.len());
        for members in &orbit_members {
            let rep = &weights[members[0]];
            let stabilizer = stabilizer_basis(&graph, level, rep);
            orbit_stabilizers.push(stabilizer.iter().map(|c| homology.coordinates(c)).collect());
            orbits.push(Orbit {
                representative: rep.clone(),
                members: members.iter().map(|&j| weights[j].clone()).collect(),
                stabilizer,
            });
        }

        Ok(WeightSpace {
            graph,
            level,
            boundary,
            homology,
            weights,
            index,
            moves,
            orbits,
            orbit_members,
            orbit_stabilizers,
            orbit_of,
        })
    }

    pub fn shared(graph: Graph, level: Level, boundary: Vec<u32>) -> Result<Arc<WeightSpace>> {
        Self::new(graph, level, boundary).map(Arc::new)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn boundary(&self) -> &[u32] {
        &self.boundary
    }

    pub fn homology(&self) -> &Homology {
        &self.homology
    }

    /// Rank `g` of `H₁`.
    pub fn genus(&self) -> usize {
        self.homology.rank()
    }

    /// `|QCG_k(Γ; j')|`.
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[WeightVector] {
        &self.weights
    }

    pub fn weight(&self, j: usize) -> &WeightVector {
        &self.weights[j]
    }

    pub fn index_of(&self, w: &WeightVector) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Index of `b·j` for the `b`-th basis cycle.
    #[inline]
    pub fn act_basis(&self, b: usize, j: usize) -> usize {
        self.moves[b][j]
    }

    /// The permutation of weight indices by the `b`-th basis cycle.
    pub fn basis_moves(&self, b: usize) -> &[usize] {
        &self.moves[b]
    }

    /// Index of `λ·j` for `λ` given by basis coordinates.
    pub fn act(&self, coords: &F2Vec, j: usize) -> usize {
        coords.ones().fold(j, |j, b| self.moves[b][j])
    }

    pub fn coordinates(&self, cycle: &Cycle) -> F2Vec {
        self.homology.coordinates(cycle)
    }

    pub fn cycle(&self, coords: &F2Vec) -> Cycle {
        self.homology.element(coords)
    }

    /// Every element of `H₁` as coordinates, in binary counting order.
    pub fn group_elements(&self) -> impl Iterator<Item = F2Vec> + '_ {
        let g = self.genus();
        (0u64..(1u64 << g)).map(move |m| F2Vec::from_mask(g, m))
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }

    pub fn orbit_of(&self, j: usize) -> usize {
        self.orbit_of[j]
    }

    /// Member indices of orbit `o`; the first is the representative.
    pub fn orbit_members(&self, o: usize) -> &[usize] {
        &self.orbit_members[o]
    }

    pub fn representative(&self, o: usize) -> usize {
        self.orbit_members[o][0]
    }

    /// Stabilizer basis of orbit `o` in homology coordinates.
    pub fn stabilizer(&self, o: usize) -> &[F2Vec] {
        &self.orbit_stabilizers[o]
    }

    pub fn stabilizer_dim(&self, o: usize) -> usize {
        self.orbit_stabilizers[o].len()
    }

    /// The stabilizer element selected by `mask` over the stabilizer basis.
    pub fn stabilizer_element(&self, o: usize, mask: u64) -> F2Vec {
        let mut c = F2Vec::zeros(self.genus());
        for (i, s) in self.orbit_stabilizers[o].iter().enumerate() {
            if mask >> i & 1 == 1 {
                c.xor_assign(s);
            }
        }
        c
    }

    /// Same graph, level, boundary and basis.
    pub fn same_as(&self, other: &WeightSpace) -> bool {
        std::ptr::eq(self, other)
            || (self.level == other.level
                && self.boundary == other.boundary
                && self.weights == other.weights
                && self.graph.canonical_form() == other.graph.canonical_form()
                && self.homology.basis() == other.homology.basis())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::suite;

    #[test]
    fn orbit_stabilizer_counting() {
        for (name, g) in suite::graphs() {
            for k in 1..=6 {
                let level = Level::new(k).unwrap();
                let b = vec![k / 2; g.boundary_count()];
                let s = WeightSpace::new(g.clone(), level, b).unwrap();
                let total: usize = (0..s.orbit_count()).map(|o| s.orbit_members(o).len()).sum();
                assert_eq!(total, s.len());
                for o in 0..s.orbit_count() {
                    assert_eq!(
                        s.orbit_members(o).len() << s.stabilizer_dim(o),
                        1usize << s.genus(),
                        "{name} k={k}"
                    );
                    let rep = s.representative(o);
                    // brute-force stabilizer agrees with the k/4-subgraph basis
                    let fixing = s.group_elements().filter(|c| s.act(c, rep) == rep).count();
                    assert_eq!(fixing, 1 << s.stabilizer_dim(o), "{name} k={k}");
                    for m in 0..(1u64 << s.stabilizer_dim(o)) {
                        for &j in s.orbit_members(o) {
                            assert_eq!(s.act(&s.stabilizer_element(o, m), j), j);
                        }
                    }
                }
            }
        }
    }
}
