//! Restriction of cocycles along decompositions `Γ = Γ₁ ∪ Γ₂`.
//!
//! Admissible weights of `Γ` split as pairs of weights on the two parts that
//! agree on the labels `j''` of the cut edges. Fixing the `Γ₂` side embeds
//! `QCG(Γ₁; j'₁, j'')` into `QCG(Γ; j')` equivariantly for
//! `H₁(Γ₁) ⊂ H₁(Γ)`, which pulls cocycles back to `Γ₁`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::circle::CircleValue;
use crate::cohomology::{coboundary_of, CocycleTable, CohomologyInvariant, ZeroCochain};
use crate::error::{Error, Result};
use crate::external::{construct_external_cocycle, standard_gamma_n_cocycle};
use crate::f2::F2Vec;
use crate::graph::{cut_edges, isolate_cycle, Cycle, Decomposition, Graph, Part};
use crate::representation::first_character_difference;
use crate::space::WeightSpace;
use crate::weights::{check_admissible, enumerate_admissible, WeightVector};

/// Weight sets of the two parts, keyed by the doubled cut labels `j''`.
pub type WeightSplit = BTreeMap<Vec<u32>, (Vec<WeightVector>, Vec<WeightVector>)>;

/// `QCG(Γ; j') = ⊔_{j''} QCG(Γ₁; j'₁, j'') × QCG(Γ₂; j'₂, j'')`, keeping the
/// labels for which both factors are nonempty.
pub fn decompose_weights(space: &WeightSpace, dec: &Decomposition) -> Result<WeightSplit> {
    let level = space.level();
    let mut out = BTreeMap::new();
    for labels in crate::suite::all_boundaries(dec.cut.len(), level.k()) {
        let w1 = enumerate_admissible(
            &dec.first.graph,
            level,
            &dec.first.boundary_values(space.boundary(), &labels),
        )?;
        if w1.is_empty() {
            continue;
        }
        let w2 = enumerate_admissible(
            &dec.second.graph,
            level,
            &dec.second.boundary_values(space.boundary(), &labels),
        )?;
        if !w2.is_empty() {
            out.insert(labels, (w1, w2));
        }
    }
    Ok(out)
}

/// The weight of `part` induced by a weight of the whole graph.
pub fn restrict_weight(part: &Part, w: &WeightVector) -> WeightVector {
    WeightVector::new(part.edge_origin.iter().map(|&o| w.get(o)).collect())
}

/// Glue part weights back into a weight of the whole graph.
pub fn glue_weights(dec: &Decomposition, labels: &[u32], w1: &WeightVector, w2: &WeightVector) -> WeightVector {
    let mut w = vec![0; dec.original_edges];
    for (part, pw) in [(&dec.first, w1), (&dec.second, w2)] {
        for (e, &o) in part.edge_origin.iter().enumerate() {
            w[o] = pw.get(e);
        }
    }
    for (position, &f) in dec.cut.iter().enumerate() {
        w[f] = labels[position];
    }
    WeightVector::new(w)
}

/// Pull-back `ι*` along one decomposition, cut labels and `Γ₂` weight.
#[derive(Debug, Clone)]
pub struct Restriction {
    pub labels: Vec<u32>,
    pub fixed: WeightVector,
    pub target: Arc<WeightSpace>,
    /// Basis of `H₁(Γ₁)` in coordinates of `H₁(Γ)`.
    basis: Vec<F2Vec>,
    /// Index in `Γ` of the weight glued from each `Γ₁` weight and `fixed`.
    glued: Vec<usize>,
    genus: usize,
}

impl Restriction {
    pub fn new(space: &WeightSpace, dec: &Decomposition, labels: &[u32], fixed: &WeightVector) -> Result<Restriction> {
        let level = space.level();
        let b1 = dec.first.boundary_values(space.boundary(), labels);
        let target = WeightSpace::shared(dec.first.graph.clone(), level, b1)?;
        Self::with_target(space, dec, labels, fixed, target)
    }

    /// As [`Restriction::new`] with a prebuilt weight space for `Γ₁`.
    pub fn with_target(
        space: &WeightSpace,
        dec: &Decomposition,
        labels: &[u32],
        fixed: &WeightVector,
        target: Arc<WeightSpace>,
    ) -> Result<Restriction> {
        let level = space.level();
        if labels.len() != dec.cut.len() {
            return Err(Error::Arity {
                what: "cut labels",
                expected: dec.cut.len(),
                actual: labels.len(),
            });
        }
        let b2 = dec.second.boundary_values(space.boundary(), labels);
        if fixed.len() != dec.second.graph.edge_count() || !check_admissible(&dec.second.graph, level, fixed, &b2)? {
            return Err(Error::WeightMismatch(format!(
                "({}) is not admissible on the second part with cut labels {labels:?}",
                fixed.compact()
            )));
        }
        let basis = target
            .homology()
            .basis()
            .iter()
            .map(|c| space.coordinates(&dec.first.transport_cycle(c, dec.original_edges)))
            .collect();
        let glued = target
            .weights()
            .iter()
            .map(|w1| {
                let w = glue_weights(dec, labels, w1, fixed);
                space
                    .index_of(&w)
                    .ok_or_else(|| Error::WeightMismatch(format!("glued weight ({}) is not admissible", w.compact())))
            })
            .collect::<Result<_>>()?;
        Ok(Restriction {
            labels: labels.to_vec(),
            fixed: fixed.clone(),
            target,
            basis,
            glued,
            genus: space.genus(),
        })
    }

    /// `(ι*δ)_{j₁}(λ₁) = δ_{ι(j₁, fixed)}(λ₁)`.
    pub fn apply(&self, t: &CocycleTable) -> Result<CocycleTable> {
        Ok(CocycleTable::from_fn(self.target.clone(), |b, j| {
            t.eval(self.glued[j], &self.basis[b])
        }))
    }

    /// A cycle of `Γ₁` in coordinates of `H₁(Γ)`.
    pub fn lift_cycle(&self, lambda1: &F2Vec) -> F2Vec {
        let mut lambda = F2Vec::zeros(self.genus);
        for b in lambda1.ones() {
            lambda.xor_assign(&self.basis[b]);
        }
        lambda
    }

    /// Index in `Γ` of the weight glued from `j1` and the fixed weight.
    pub fn lift_weight(&self, j1: usize) -> usize {
        self.glued[j1]
    }
}

pub fn restrict_cocycle(
    t: &CocycleTable,
    dec: &Decomposition,
    labels: &[u32],
    fixed: &WeightVector,
) -> Result<CocycleTable> {
    Restriction::new(t.space(), dec, labels, fixed)?.apply(t)
}

/// Every decomposition: each subset of cuttable edges, each grouping of
/// the resulting components into `Γ₁` and `Γ₂`.
pub fn decompositions(graph: &Graph, cap: u128) -> Result<Vec<Decomposition>> {
    let cuttable: Vec<usize> = (0..graph.edge_count()).filter(|&e| !graph.is_leaf_edge(e)).collect();
    let needed = 1u128.checked_shl(cuttable.len() as u32).unwrap_or(u128::MAX);
    if needed > cap {
        return Err(Error::CapExceeded { needed, cap });
    }
    let mut out = Vec::new();
    for mask in 0u64..1u64 << cuttable.len() {
        let cut: Vec<usize> = cuttable
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let cg = cut_edges(graph, &cut)?;
        let m = cg.graph.component_count();
        if m >= 24 {
            return Err(Error::CapExceeded {
                needed: 1u128 << m,
                cap,
            });
        }
        for choice in 0u64..1u64 << m {
            let first: Vec<bool> = (0..m).map(|c| choice >> c & 1 == 1).collect();
            out.push(cg.split(&first));
        }
    }
    Ok(out)
}

/// `cut e1,e3 first e2,e1:1,...`, with `-` for empty lists.
pub fn describe_decomposition(graph: &Graph, dec: &Decomposition) -> String {
    let list = |ids: Vec<&str>| if ids.is_empty() { "-".to_owned() } else { ids.join(",") };
    let cut = list(dec.cut.iter().map(|&e| graph.edge_id(e)).collect());
    let g1 = &dec.first.graph;
    let first = list((0..g1.edge_count()).map(|e| g1.edge_id(e)).collect());
    format!("cut {cut} first {first}")
}

/// All restrictions along one decomposition, one per distinct pair of cut
/// labels and `Γ₂` weight that occurs in `QCG(Γ; j')`.
pub fn restrictions(space: &WeightSpace, dec: &Decomposition) -> Result<Vec<Restriction>> {
    let mut by_labels: BTreeMap<Vec<u32>, Vec<WeightVector>> = BTreeMap::new();
    for w in space.weights() {
        let labels: Vec<u32> = dec.cut.iter().map(|&f| w.get(f)).collect();
        let fixed = restrict_weight(&dec.second, w);
        let entry = by_labels.entry(labels).or_default();
        if !entry.contains(&fixed) {
            entry.push(fixed);
        }
    }
    let mut out = Vec::new();
    for (labels, fixed_set) in by_labels {
        let b1 = dec.first.boundary_values(space.boundary(), &labels);
        let target = WeightSpace::shared(dec.first.graph.clone(), space.level(), b1)?;
        for fixed in fixed_set {
            out.push(Restriction::with_target(space, dec, &labels, &fixed, target.clone())?);
        }
    }
    Ok(out)
}

/// A failing instance of a verification: a cycle and, where one exists, a
/// weight of `Γ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub lambda: F2Vec,
    pub weight: Option<usize>,
    pub text: String,
}

impl Witness {
    fn new(space: &WeightSpace, lambda: F2Vec, weight: Option<usize>, detail: &str) -> Witness {
        let mut text = format!("lambda={}", space.cycle(&lambda).display(space.graph()));
        if let Some(j) = weight {
            text.push_str(&format!(" weight=({})", space.weight(j).compact()));
        }
        if !detail.is_empty() {
            text.push(' ');
            text.push_str(detail);
        }
        Witness { lambda, weight, text }
    }
}

/// Outcome of one labelled check.
#[derive(Debug, Clone)]
pub struct Check {
    pub label: String,
    pub witness: Option<Witness>,
}

/// PASS/FAIL lines for every check performed.
#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.witness.is_none())
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| c.witness.is_some())
    }

    fn push(&mut self, label: String, witness: Option<Witness>) {
        self.checks.push(Check { label, witness });
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.witness {
                None => writeln!(f, "PASS {}", c.label)?,
                Some(w) => writeln!(f, "FAIL {} witness {}", c.label, w.text)?,
            }
        }
        Ok(())
    }
}

fn restriction_label(graph: &Graph, dec: &Decomposition, r: &Restriction) -> String {
    let labels: Vec<String> = r.labels.iter().map(u32::to_string).collect();
    format!(
        "{} labels [{}] fixed ({})",
        describe_decomposition(graph, dec),
        labels.join(","),
        r.fixed.compact()
    )
}

/// Invariant difference of two cocycles on `Γ₁`, lifted to a pair in `Γ`.
fn invariant_witness(
    space: &WeightSpace,
    r: &Restriction,
    a: &CohomologyInvariant,
    b: &CohomologyInvariant,
) -> Option<Witness> {
    let (o, mask) = a.first_difference(b)?;
    let lambda1 = r.target.stabilizer_element(o, mask as u64);
    let lambda = r.lift_cycle(&lambda1);
    let j = r.lift_weight(r.target.representative(o));
    let detail = format!("values {} vs {}", a.orbits[o].values[mask], b.orbits[o].values[mask]);
    Some(Witness::new(space, lambda, Some(j), &detail))
}

/// All restrictions of a weight space, with their decomposition labels.
pub struct Factorizations {
    pub space: Arc<WeightSpace>,
    pub entries: Vec<(String, Restriction)>,
}

impl Factorizations {
    pub fn new(space: Arc<WeightSpace>, cap: u128) -> Result<Factorizations> {
        let mut entries = Vec::new();
        for dec in decompositions(space.graph(), cap)? {
            for r in restrictions(&space, &dec)? {
                entries.push((restriction_label(space.graph(), &dec, &r), r));
            }
        }
        Ok(Factorizations { space, entries })
    }

    /// Restricted representations are isomorphic for every decomposition
    /// and every fixed `Γ₂` weight.
    pub fn equivalent(&self, t1: &CocycleTable, t2: &CocycleTable) -> Result<VerifyReport> {
        if !t1.space().same_as(&self.space) || !t2.space().same_as(&self.space) {
            return Err(Error::ContextMismatch);
        }
        let mut report = VerifyReport::default();
        for (label, r) in &self.entries {
            let witness = first_character_difference(&r.apply(t1)?, &r.apply(t2)?)?
                .map(|l1| Witness::new(&self.space, r.lift_cycle(&l1), None, "characters differ"));
            report.push(label.clone(), witness);
        }
        Ok(report)
    }

    pub fn equivalent_bool(&self, t1: &CocycleTable, t2: &CocycleTable) -> Result<bool> {
        if !t1.space().same_as(&self.space) || !t2.space().same_as(&self.space) {
            return Err(Error::ContextMismatch);
        }
        for (_, r) in &self.entries {
            if first_character_difference(&r.apply(t1)?, &r.apply(t2)?)?.is_some() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `ι* δ_ext[Γ]` is cohomologous to `δ_ext[Γ₁]` everywhere.
    pub fn functoriality(&self) -> Result<VerifyReport> {
        let ext = construct_external_cocycle(self.space.clone())?;
        let mut report = VerifyReport::default();
        let mut cached: Option<(Arc<WeightSpace>, CohomologyInvariant)> = None;
        for (label, r) in &self.entries {
            let expect = match &cached {
                Some((s, inv)) if Arc::ptr_eq(s, &r.target) => inv.clone(),
                _ => {
                    let inv = construct_external_cocycle(r.target.clone())?.cohomology_invariant()?;
                    cached = Some((r.target.clone(), inv.clone()));
                    inv
                }
            };
            let got = r.apply(&ext)?.cohomology_invariant()?;
            report.push(label.clone(), invariant_witness(&self.space, r, &got, &expect));
        }
        Ok(report)
    }
}

/// Whether `t1` and `t2` are equivalent under factorization.
pub fn equivalent_under_factorization(t1: &CocycleTable, t2: &CocycleTable, cap: u128) -> Result<VerifyReport> {
    Factorizations::new(t1.space().clone(), cap)?.equivalent(t1, t2)
}

pub fn verify_functoriality(space: Arc<WeightSpace>, cap: u128) -> Result<VerifyReport> {
    Factorizations::new(space, cap)?.functoriality()
}

/// Support of `cycle` is one simple closed path.
pub fn is_simple_cycle(graph: &Graph, cycle: &Cycle) -> bool {
    let Some(start) = cycle.edges().next() else {
        return false;
    };
    let mut seen = vec![false; graph.edge_count()];
    seen[start] = true;
    let mut stack = vec![start];
    let mut reached = 1;
    while let Some(e) = stack.pop() {
        for v in graph.ends(e) {
            for &f in graph.incident(v) {
                if cycle.contains(f) && !seen[f] {
                    seen[f] = true;
                    reached += 1;
                    stack.push(f);
                }
            }
        }
    }
    // a connected even subgraph of a graph with maximal degree 3 is a circle
    reached == cycle.edges().count()
}

/// The necklaces `Γ(λ)` of all simple cycles `λ`, with their restrictions
/// and the standard class on each target.
pub struct NecklaceRestrictions {
    pub space: Arc<WeightSpace>,
    pub entries: Vec<(String, Restriction, CohomologyInvariant)>,
}

impl NecklaceRestrictions {
    pub fn new(space: Arc<WeightSpace>, cap: u128) -> Result<NecklaceRestrictions> {
        let g = space.genus();
        let needed = 1u128.checked_shl(g as u32).unwrap_or(u128::MAX);
        if needed > cap {
            return Err(Error::CapExceeded { needed, cap });
        }
        let graph = space.graph();
        let mut entries = Vec::new();
        for coords in space.group_elements().skip(1) {
            let cycle = space.cycle(&coords);
            if !is_simple_cycle(graph, &cycle) {
                continue;
            }
            let dec = isolate_cycle(graph, &cycle)?;
            for r in restrictions(&space, &dec)? {
                let standard = standard_gamma_n_cocycle(r.target.clone())?.cohomology_invariant()?;
                let label = format!("lambda {} {}", cycle.display(graph), restriction_label(graph, &dec, &r));
                entries.push((label, r, standard));
            }
        }
        Ok(NecklaceRestrictions { space, entries })
    }

    /// Each restriction of `t` to a necklace against the standard class.
    pub fn characterize(&self, t: &CocycleTable) -> Result<VerifyReport> {
        if !t.space().same_as(&self.space) {
            return Err(Error::ContextMismatch);
        }
        let mut report = VerifyReport::default();
        for (label, r, standard) in &self.entries {
            let got = r.apply(t)?.cohomology_invariant()?;
            report.push(label.clone(), invariant_witness(&self.space, r, &got, standard));
        }
        Ok(report)
    }

    fn matches_all(&self, t: &CocycleTable) -> Result<bool> {
        for (_, r, standard) in &self.entries {
            if r.apply(t)?.cohomology_invariant()? != *standard {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Restrictions of `t` to necklaces `Γ(λ)` against the standard cocycle.
pub fn characterize_cocycle(t: &CocycleTable, cap: u128) -> Result<VerifyReport> {
    NecklaceRestrictions::new(t.space().clone(), cap)?.characterize(t)
}

/// Perturbations of `t`: two coboundary twists, and one sign flip on each
/// stabilizer basis element of each orbit.
pub fn perturbation_family(t: &CocycleTable) -> Result<Vec<CocycleTable>> {
    let s = t.space().clone();
    let mut out = vec![t.clone(), CocycleTable::trivial(s.clone())];
    for den in [3i64, 4] {
        let c = ZeroCochain::new(
            s.clone(),
            (0..s.len())
                .map(|j| CircleValue::new(j as i64 * (j as i64 + 1), den as u64))
                .collect(),
        )?;
        out.push(t.mul(&coboundary_of(&c))?);
    }
    for o in 0..s.orbit_count() {
        for lambda in s.stabilizer(o) {
            out.push(t.flip_fixed_pair(s.representative(o), lambda)?);
        }
    }
    Ok(out)
}

/// The external class restricts to the standard class on every necklace,
/// and among the perturbation family exactly the cocycles cohomologous to
/// it do.
pub fn verify_characterization(space: Arc<WeightSpace>, cap: u128) -> Result<VerifyReport> {
    let necklaces = NecklaceRestrictions::new(space.clone(), cap)?;
    let ext = construct_external_cocycle(space.clone())?;
    let mut report = necklaces.characterize(&ext)?;
    let ext_inv = ext.cohomology_invariant()?;
    for (i, t) in perturbation_family(&ext)?.iter().enumerate() {
        let inv = t.cohomology_invariant()?;
        let matches = necklaces.matches_all(t)?;
        let witness = if matches != (inv == ext_inv) {
            let detail = if matches {
                "necklace restrictions match but the class differs"
            } else {
                "class agrees but a necklace restriction differs"
            };
            let lambda = match ext_inv.first_difference(&inv) {
                Some((o, m)) => space.stabilizer_element(o, m as u64),
                None => F2Vec::zeros(space.genus()),
            };
            Some(Witness::new(&space, lambda, None, detail))
        } else {
            None
        };
        report.push(format!("family member {i}"), witness);
    }
    Ok(report)
}
