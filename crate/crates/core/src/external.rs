//! The external edge condition.
//!
//! For a fixed pair `(λ, j)` the target value is `exp(πi Σ_{Ex(λ)} j_l)`,
//! summed over the λ-external edges. Per orbit these targets form a
//! character of the stabilizer, and lifting the characters gives a cocycle
//! satisfying the condition.

use std::fmt;
use std::sync::Arc;

use crate::circle::CircleValue;
use crate::cohomology::{cocycle_from_characters, CocycleTable, CohomologyInvariant, MAX_STABILIZER_DIM};
use crate::error::{Error, Result};
use crate::f2::F2Vec;
use crate::graph::{external_edges, Cycle, Graph};
use crate::space::WeightSpace;
use crate::weights::{fixes, Level, WeightVector};

/// `exp(πi Σ_{Ex(λ)} j_l)` as an element of Q/Z. The zero cycle has no
/// external edges and gives 1.
pub fn external_target(graph: &Graph, level: Level, w: &WeightVector, cycle: &Cycle) -> Result<CircleValue> {
    if !fixes(cycle, w, level) {
        return Err(Error::NotFixed);
    }
    Ok(target_unchecked(graph, w, cycle))
}

fn target_unchecked(graph: &Graph, w: &WeightVector, cycle: &Cycle) -> CircleValue {
    let sum: u64 = external_edges(graph, cycle).iter().map(|&e| w.get(e) as u64).sum();
    CircleValue::new(sum as i64, 4)
}

/// A way the external targets can fail to define a stabilizer character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParityViolation {
    /// A λ-external edge with a half-integer weight.
    NonInteger { lambda: Cycle, edge: usize },
    /// `ε(λ₁ + λ₂) ≠ ε(λ₁) ε(λ₂)`.
    NotAdditive { lambda1: Cycle, lambda2: Cycle },
    /// The target at another member of the orbit differs.
    OrbitDependent { lambda: Cycle, member: usize },
}

impl ParityViolation {
    pub fn describe(&self, graph: &Graph) -> String {
        match self {
            ParityViolation::NonInteger { lambda, edge } => format!(
                "external edge {} of {} has a half-integer weight",
                graph.edge_id(*edge),
                lambda.display(graph)
            ),
            ParityViolation::NotAdditive { lambda1, lambda2 } => format!(
                "targets of {} and {} do not multiply to the target of their sum",
                lambda1.display(graph),
                lambda2.display(graph)
            ),
            ParityViolation::OrbitDependent { lambda, member } => {
                format!("target of {} differs at weight row {member}", lambda.display(graph))
            }
        }
    }
}

/// External edges and target value of one stabilizer basis cycle.
#[derive(Debug, Clone)]
pub struct StabilizerTarget {
    pub cycle: Cycle,
    pub external: Vec<usize>,
    pub value: CircleValue,
}

/// Per-orbit outcome of the parity check.
#[derive(Debug, Clone)]
pub struct OrbitParity {
    pub orbit: usize,
    pub representative: usize,
    pub targets: Vec<StabilizerTarget>,
    pub violation: Option<ParityViolation>,
}

impl OrbitParity {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

/// Check that `λ ↦ Σ_{Ex(λ)} j_l mod 2` is additive on the stabilizer of
/// orbit `o` and the same at every member of the orbit.
pub fn check_parity_identity(space: &WeightSpace, o: usize) -> Result<OrbitParity> {
    let graph = space.graph();
    let d = space.stabilizer_dim(o);
    if d > MAX_STABILIZER_DIM {
        return Err(Error::CapExceeded {
            needed: 1u128 << d,
            cap: 1u128 << MAX_STABILIZER_DIM,
        });
    }
    let rep = space.representative(o);
    let w = space.weight(rep);
    let targets = space
        .stabilizer(o)
        .iter()
        .map(|coords| {
            let cycle = space.cycle(coords);
            StabilizerTarget {
                external: external_edges(graph, &cycle),
                value: target_unchecked(graph, w, &cycle),
                cycle,
            }
        })
        .collect();
    let mut report = OrbitParity {
        orbit: o,
        representative: rep,
        targets,
        violation: None,
    };

    let elements: Vec<Cycle> = (0..1u64 << d)
        .map(|m| space.cycle(&space.stabilizer_element(o, m)))
        .collect();
    let mut values = Vec::with_capacity(elements.len());
    for cycle in &elements {
        if let Some(&edge) = external_edges(graph, cycle).iter().find(|&&e| w.get(e) % 2 == 1) {
            report.violation = Some(ParityViolation::NonInteger {
                lambda: cycle.clone(),
                edge,
            });
            return Ok(report);
        }
        values.push(target_unchecked(graph, w, cycle));
    }

    // every pair for small stabilizers; beyond that the equivalent check
    // against the basis expansion
    let additive = |m1: usize, m2: usize| values[m1 ^ m2] == values[m1] * values[m2];
    let failure = if d <= 10 {
        (0..values.len())
            .flat_map(|a| (a..values.len()).map(move |b| (a, b)))
            .find(|&(a, b)| !additive(a, b))
    } else {
        (1..values.len()).find_map(|m| {
            let low = m & m.wrapping_neg();
            (!additive(low, m ^ low)).then_some((low, m ^ low))
        })
    };
    if let Some((a, b)) = failure {
        report.violation = Some(ParityViolation::NotAdditive {
            lambda1: elements[a].clone(),
            lambda2: elements[b].clone(),
        });
        return Ok(report);
    }

    for &member in &space.orbit_members(o)[1..] {
        let mw = space.weight(member);
        if let Some(m) = (1..elements.len()).find(|&m| target_unchecked(graph, mw, &elements[m]) != values[m]) {
            report.violation = Some(ParityViolation::OrbitDependent {
                lambda: elements[m].clone(),
                member,
            });
            return Ok(report);
        }
    }
    Ok(report)
}

/// Parity reports for every orbit.
pub fn parity_reports(space: &WeightSpace) -> Result<Vec<OrbitParity>> {
    (0..space.orbit_count())
        .map(|o| check_parity_identity(space, o))
        .collect()
}

/// The stabilizer characters `λ ↦ exp(πi Σ_{Ex(λ)} j_l)` at the orbit
/// representatives.
pub fn external_invariant(space: &WeightSpace) -> Result<CohomologyInvariant> {
    let reports = parity_reports(space)?;
    if let Some(r) = reports.iter().find(|r| !r.holds()) {
        return Err(Error::ParityFailure {
            orbit: r.orbit,
            detail: r.violation.as_ref().expect("failed").describe(space.graph()),
        });
    }
    Ok(CohomologyInvariant::from_basis_values(space, |o, i| {
        reports[o].targets[i].value
    }))
}

/// An external edge cocycle: the external characters lifted trivially on a
/// complement of each stabilizer and spread constantly over each orbit.
pub fn construct_external_cocycle(space: Arc<WeightSpace>) -> Result<CocycleTable> {
    let inv = external_invariant(&space)?;
    cocycle_from_characters(space, &inv)
}

/// A fixed pair `(λ, j)` where a cocycle misses its external target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPairWitness {
    pub lambda: F2Vec,
    pub weight: usize,
    pub value: CircleValue,
    pub target: CircleValue,
}

impl FixedPairWitness {
    pub fn describe(&self, space: &WeightSpace) -> String {
        format!(
            "lambda={} weight=({}) value={} target={}",
            space.cycle(&self.lambda).display(space.graph()),
            space.weight(self.weight).compact(),
            self.value,
            self.target
        )
    }
}

/// The first fixed pair, in weight then group order, where `t` differs from
/// the external target.
pub fn external_condition_violation(t: &CocycleTable) -> Result<Option<FixedPairWitness>> {
    if !t.is_twisted_cocycle() {
        return Err(Error::NotACocycle);
    }
    let s = &**t.space();
    for j in 0..s.len() {
        let o = s.orbit_of(j);
        for m in 1..1u64 << s.stabilizer_dim(o) {
            let lambda = s.stabilizer_element(o, m);
            let value = t.eval(j, &lambda);
            let target = target_unchecked(s.graph(), s.weight(j), &s.cycle(&lambda));
            if value != target {
                return Ok(Some(FixedPairWitness {
                    lambda,
                    weight: j,
                    value,
                    target,
                }));
            }
        }
    }
    Ok(None)
}

pub fn satisfies_external_condition(t: &CocycleTable) -> Result<bool> {
    Ok(external_condition_violation(t)?.is_none())
}

/// The shape of a necklace Γ(n): one cycle, every other edge a leg.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Necklace {
    pub cycle: Cycle,
    pub legs: Vec<usize>,
}

pub fn recognize_gamma_n(graph: &Graph) -> Result<Necklace> {
    if graph.component_count() != 1 {
        return Err(Error::NotGammaN("graph is not connected"));
    }
    if graph.betti() != 1 {
        return Err(Error::NotGammaN("first Betti number is not 1"));
    }
    let cycle = crate::graph::cycle_basis(graph).remove(0);
    let legs: Vec<usize> = (0..graph.edge_count()).filter(|&e| !cycle.contains(e)).collect();
    if legs.iter().any(|&e| !graph.is_leaf_edge(e)) {
        return Err(Error::NotGammaN("an edge off the cycle is not a leg"));
    }
    Ok(Necklace { cycle, legs })
}

/// The standard cocycle of Γ(n): `exp(πi Σ j'_m)` on the generator at
/// `j₀ = (j', k/4, …, k/4)` and 1 everywhere else.
pub fn standard_gamma_n_cocycle(space: Arc<WeightSpace>) -> Result<CocycleTable> {
    let graph = space.graph();
    let necklace = recognize_gamma_n(graph)?;
    let k = space.level().k();
    let mut table = CocycleTable::trivial(space.clone());
    if k % 2 == 1 {
        return Ok(table);
    }
    let mut j0 = vec![k / 2; graph.edge_count()];
    let mut slot_of_vertex = vec![None; graph.vertex_count()];
    for (slot, &v) in graph.boundary().iter().enumerate() {
        slot_of_vertex[v] = Some(slot);
    }
    let mut sum = 0u64;
    for &e in &necklace.legs {
        let [a, b] = graph.ends(e);
        let slot = slot_of_vertex[a]
            .or(slot_of_vertex[b])
            .expect("leg ends at a boundary vertex");
        j0[e] = space.boundary()[slot];
        sum += j0[e] as u64;
    }
    if let Some(j) = space.index_of(&WeightVector::new(j0)) {
        // Σ doubled / 2 is Σ j'; exp(πi Σ j') = e(Σ doubled / 4)
        table.set_basis_value(0, j, CircleValue::new(sum as i64, 4));
    }
    Ok(table)
}

/// Human-readable per-orbit summary of the external construction.
pub struct ExternalReport<'a> {
    pub space: &'a WeightSpace,
    pub orbits: Vec<OrbitParity>,
}

impl<'a> ExternalReport<'a> {
    pub fn new(space: &'a WeightSpace) -> Result<Self> {
        Ok(ExternalReport {
            space,
            orbits: parity_reports(space)?,
        })
    }
}

impl fmt::Display for ExternalReport<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.space.graph();
        for r in &self.orbits {
            writeln!(
                f,
                "orbit {} rep ({}) stabilizer-dim {}",
                r.orbit,
                self.space.weight(r.representative).compact(),
                r.targets.len()
            )?;
            for t in &r.targets {
                let ex: Vec<&str> = t.external.iter().map(|&e| g.edge_id(e)).collect();
                let ex = if ex.is_empty() { "-".to_owned() } else { ex.join(",") };
                writeln!(f, "  lambda {} ex {} target {}", t.cycle.display(g), ex, t.value)?;
            }
            if let Some(v) = &r.violation {
                writeln!(f, "  parity FAIL {}", v.describe(g))?;
            }
        }
        Ok(())
    }
}
