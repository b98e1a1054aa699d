//! Acceptance criteria, one line each. Runs without the libtest harness so
//! every criterion prints its verdict and elapsed time.

use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use qcg_core::circle::CircleValue;
use qcg_core::cohomology::{
    brute_force_class_count, coboundary_of, cocycle_from_characters, cohomology_group_order, CocycleTable,
    CohomologyInvariant, ZeroCochain,
};
use qcg_core::external::{
    check_parity_identity, construct_external_cocycle, external_target, satisfies_external_condition,
    standard_gamma_n_cocycle,
};
use qcg_core::f2::F2Vec;
use qcg_core::factorization::{characterize_cocycle, verify_characterization, verify_functoriality, Factorizations};
use qcg_core::representation::{character_table, rep_matrix, reps_isomorphic, verify_intertwiner, DiagonalIntertwiner};
use qcg_core::weights::{act, check_admissible};
use qcg_core::{suite, Cycle, Graph, Level, WeightSpace, WeightVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

/// Name, time limit in seconds, and check; numbered by position.
type Criterion = (&'static str, u64, fn() -> Outcome);

struct Instance {
    label: String,
    space: Arc<WeightSpace>,
}

/// Every suite graph at the given levels; boundaries either exhaustive or
/// the constant vectors 0, 1 and 2.
fn instances(graphs: &[&str], levels: impl IntoIterator<Item = u32> + Clone, exhaustive: bool) -> Vec<Instance> {
    let mut out = Vec::new();
    for (name, g) in suite::graphs() {
        if !graphs.is_empty() && !graphs.contains(&name) {
            continue;
        }
        for k in levels.clone() {
            let boundaries = if exhaustive {
                suite::all_boundaries(g.boundary_count(), k)
            } else if g.boundary_count() == 0 {
                vec![vec![]]
            } else {
                (0..=2.min(k)).map(|x| vec![x; g.boundary_count()]).collect()
            };
            for b in boundaries {
                let label = format!("{name} k={k} j'={b:?}");
                let space = WeightSpace::shared(g.clone(), Level::new(k).unwrap(), b).unwrap();
                out.push(Instance { label, space });
            }
        }
    }
    out
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_value(rng: &mut ChaCha8Rng) -> CircleValue {
    let q = [1u64, 2, 3, 4, 5, 6, 8, 12][rng.gen_range(0..8)];
    CircleValue::new(rng.gen_range(0..q) as i64, q)
}

fn random_chain(space: &Arc<WeightSpace>, rng: &mut ChaCha8Rng) -> ZeroCochain {
    ZeroCochain::new(space.clone(), (0..space.len()).map(|_| random_value(rng)).collect()).unwrap()
}

fn sign_chain(space: &Arc<WeightSpace>, rng: &mut ChaCha8Rng) -> ZeroCochain {
    ZeroCochain::new(
        space.clone(),
        (0..space.len())
            .map(|_| CircleValue::sign(rng.gen_range(0..2)))
            .collect(),
    )
    .unwrap()
}

fn random_invariant(space: &WeightSpace, rng: &mut ChaCha8Rng) -> CohomologyInvariant {
    CohomologyInvariant::from_basis_values(space, |_, _| CircleValue::sign(rng.gen_range(0..2)))
}

/// The invariant whose stabilizer-basis signs are the bits of `mask`.
fn invariant_from_mask(space: &WeightSpace, mask: u64) -> CohomologyInvariant {
    let mut offsets = Vec::new();
    let mut at = 0;
    for o in 0..space.orbit_count() {
        offsets.push(at);
        at += space.stabilizer_dim(o);
    }
    CohomologyInvariant::from_basis_values(space, |o, i| CircleValue::sign(mask >> (offsets[o] + i) & 1))
}

fn h1_dim(space: &WeightSpace) -> usize {
    (0..space.orbit_count()).map(|o| space.stabilizer_dim(o)).sum()
}

/// The flip action of every cycle keeps every weight admissible.
fn action_preservation() -> Outcome {
    let mut checked = 0u64;
    for inst in instances(&[], 1..=6, true) {
        let s = &inst.space;
        let level = s.level();
        let cycles: Vec<Cycle> = s.group_elements().map(|c| s.cycle(&c)).collect();
        for w in s.weights() {
            for c in &cycles {
                let moved = act(c, w, level);
                let ok = check_admissible(s.graph(), level, &moved, s.boundary()).unwrap();
                ensure(ok && s.index_of(&moved).is_some(), || {
                    format!(
                        "{}: {} moves ({}) out of the admissible set",
                        inst.label,
                        c.display(s.graph()),
                        w.compact()
                    )
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (cycle, weight) pairs"))
}

/// Brute-force class counts equal the product of stabilizer orders.
fn structure_theorem() -> Outcome {
    let cap = 1_000_000u128;
    let mut compared = 0;
    let mut beyond_cap = 0;
    for inst in instances(&[], 1..=6, true) {
        let s = &inst.space;
        if (1u128 << s.genus()) * s.len() as u128 > cap {
            beyond_cap += 1;
            continue;
        }
        let count = brute_force_class_count(s.clone(), cap).map_err(|e| format!("{}: {e}", inst.label))?;
        let order = cohomology_group_order(s);
        ensure(count == order, || {
            format!("{}: brute force {count} vs order {order}", inst.label)
        })?;
        compared += 1;
    }
    let theta = WeightSpace::shared(suite::theta(), Level::new(2).unwrap(), vec![]).unwrap();
    let count = brute_force_class_count(theta, cap).unwrap();
    ensure(count == 8u32.into(), || format!("theta k=2 count {count}, expected 8"))?;
    Ok(format!(
        "{compared} instances equal, {beyond_cap} beyond cap, theta k=2 -> 8"
    ))
}

/// Coboundaries are detected and inverted; lifted nontrivial characters
/// never are coboundaries.
fn coboundary_criterion() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut with_nontrivial = 0;
    let all = instances(&[], 1..=6, false);
    for inst in &all {
        let s = &inst.space;
        for _ in 0..1000 {
            let c = random_chain(s, &mut rng);
            let t = coboundary_of(&c);
            ensure(t.is_coboundary().unwrap(), || {
                format!("{}: dc not a coboundary", inst.label)
            })?;
            let back = t.cobounding_chain().unwrap();
            ensure(coboundary_of(&back) == t, || {
                format!("{}: cobounding chain does not round-trip", inst.label)
            })?;
        }
        if h1_dim(s) == 0 {
            continue;
        }
        with_nontrivial += 1;
        let mut made = 0;
        while made < 1000 {
            let inv = random_invariant(s, &mut rng);
            if inv.is_trivial() {
                continue;
            }
            let t = cocycle_from_characters(s.clone(), &inv)
                .unwrap()
                .mul(&coboundary_of(&random_chain(s, &mut rng)))
                .unwrap();
            ensure(t.is_twisted_cocycle(), || {
                format!("{}: lift is not a cocycle", inst.label)
            })?;
            ensure(!t.is_coboundary().unwrap(), || {
                format!("{}: nontrivial class reported as coboundary", inst.label)
            })?;
            made += 1;
        }
    }
    Ok(format!(
        "{} instances, {with_nontrivial} with nontrivial classes",
        all.len()
    ))
}

/// Parity identity everywhere; the constructed cocycle meets the
/// external edge condition.
fn external_existence() -> Outcome {
    let mut orbits = 0;
    let all = instances(&[], 1..=6, true);
    for inst in &all {
        let s = &inst.space;
        for o in 0..s.orbit_count() {
            let r = check_parity_identity(s, o).unwrap();
            ensure(r.holds(), || {
                format!("{}: {}", inst.label, r.violation.unwrap().describe(s.graph()))
            })?;
            orbits += 1;
        }
        let t = construct_external_cocycle(s.clone()).map_err(|e| format!("{}: {e}", inst.label))?;
        ensure(t.is_twisted_cocycle(), || format!("{}: not a cocycle", inst.label))?;
        ensure(satisfies_external_condition(&t).unwrap(), || {
            format!("{}: external condition fails", inst.label)
        })?;
    }
    Ok(format!("{} instances, {orbits} orbits", all.len()))
}

/// Odd levels: trivial stabilizers, trivial cohomology, trivial class.
fn odd_levels() -> Outcome {
    let all = instances(&[], [1, 3, 5], true);
    for inst in &all {
        let s = &inst.space;
        ensure((0..s.orbit_count()).all(|o| s.stabilizer_dim(o) == 0), || {
            format!("{}: nontrivial stabilizer", inst.label)
        })?;
        ensure(cohomology_group_order(s) == 1u32.into(), || {
            format!("{}: order is not 1", inst.label)
        })?;
        let t = construct_external_cocycle(s.clone()).unwrap();
        ensure(t.is_coboundary().unwrap(), || {
            format!("{}: external class nontrivial", inst.label)
        })?;
    }
    Ok(format!("{} instances", all.len()))
}

/// Cohomologous pairs are intertwined by their cobounding chain.
fn intertwiner_law() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let all = instances(&[], 1..=6, false);
    for inst in &all {
        let s = &inst.space;
        let g = s.genus();
        for _ in 0..200 {
            let base = cocycle_from_characters(s.clone(), &random_invariant(s, &mut rng)).unwrap();
            let t1 = base.mul(&coboundary_of(&random_chain(s, &mut rng))).unwrap();
            let t2 = t1.mul(&coboundary_of(&random_chain(s, &mut rng))).unwrap();
            let c = t1.mul(&t2.inv()).unwrap().cobounding_chain().unwrap();
            ensure(verify_intertwiner(&t1, &t2, &c).unwrap(), || {
                format!("{}: intertwiner fails", inst.label)
            })?;
            let a = F2Vec::from_mask(g, rng.gen_range(0..1u64 << g));
            let b = F2Vec::from_mask(g, rng.gen_range(0..1u64 << g));
            let (ra, rb) = (rep_matrix(&t1, &a).unwrap(), rep_matrix(&t1, &b).unwrap());
            ensure(ra.compose(&rb) == rep_matrix(&t1, &a.xor(&b)).unwrap(), || {
                format!("{}: homomorphism law", inst.label)
            })?;
            ensure(ra.compose(&ra).is_identity(), || {
                format!("{}: involution law", inst.label)
            })?;
            let phi = DiagonalIntertwiner::new(&c).matrix();
            ensure(phi.compose(&rep_matrix(&t2, &a).unwrap()) == ra.compose(&phi), || {
                format!("{}: intertwining fails off the basis", inst.label)
            })?;
        }
    }
    Ok(format!("{} instances x 200 pairs", all.len()))
}

/// All ±1 cocycles of a genus one weight space: one sign per orbit.
fn genus_one_family(s: &Arc<WeightSpace>, rng: &mut ChaCha8Rng, cap: u32) -> Vec<CocycleTable> {
    let orbits = s.orbit_count() as u32;
    let signs: Vec<u64> = if orbits <= cap {
        (0..1u64 << orbits).collect()
    } else {
        (0..1u64 << cap).map(|_| rng.gen_range(0..1u64 << orbits)).collect()
    };
    signs
        .into_iter()
        .map(|m| CocycleTable::from_fn(s.clone(), |_, j| CircleValue::sign(m >> s.orbit_of(j) & 1)))
        .collect()
}

/// Checks over all pairs that `a` agree iff `b` agree, from per-member keys.
fn same_partition<
    A: Eq + std::hash::Hash + Clone + std::fmt::Debug,
    B: Eq + std::hash::Hash + Clone + std::fmt::Debug,
>(
    keys: &[(A, B)],
) -> Result<(), String> {
    let mut a_to_b: HashMap<&A, &B> = HashMap::new();
    let mut b_to_a: HashMap<&B, &A> = HashMap::new();
    for (i, (a, b)) in keys.iter().enumerate() {
        if *a_to_b.entry(a).or_insert(b) != b || *b_to_a.entry(b).or_insert(a) != a {
            return Err(format!("member {i} breaks the correspondence"));
        }
    }
    Ok(())
}

/// On necklaces, isomorphic representations ⇔ equal invariants.
fn gamma_n_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut members = 0usize;
    let all = instances(&["gamma1", "gamma2", "gamma3"], 1..=6, true);
    for inst in &all {
        let s = &inst.space;
        if s.is_empty() {
            continue;
        }
        let family = genus_one_family(s, &mut rng, 16);
        let mut keys = Vec::with_capacity(family.len());
        for t in &family {
            keys.push((character_table(t).unwrap(), t.cohomology_invariant().unwrap()));
        }
        same_partition(&keys).map_err(|e| format!("{}: {e}", inst.label))?;
        let references = [
            CocycleTable::trivial(s.clone()),
            standard_gamma_n_cocycle(s.clone()).unwrap(),
        ];
        for (t, key) in family.iter().zip(&keys) {
            for r in &references {
                let iso = reps_isomorphic(t, r).unwrap();
                let same = key.1 == r.cohomology_invariant().unwrap();
                ensure(iso == same, || {
                    format!("{}: reps_isomorphic {iso} but equal invariants {same}", inst.label)
                })?;
            }
        }
        members += family.len();
    }
    Ok(format!("{} instances, {members} cocycles", all.len()))
}

/// The standard necklace cocycle represents the external class.
fn standard_cocycle() -> Outcome {
    let all = instances(&["gamma1", "gamma2", "gamma3"], 1..=6, true);
    for inst in &all {
        let s = &inst.space;
        let st = standard_gamma_n_cocycle(s.clone()).unwrap();
        let ext = construct_external_cocycle(s.clone()).unwrap();
        ensure(
            st.cohomology_invariant().unwrap() == ext.cohomology_invariant().unwrap(),
            || format!("{}: standard and external classes differ", inst.label),
        )?;
    }
    let g1 = suite::gamma_n(1);
    let s = WeightSpace::shared(g1.clone(), Level::new(4).unwrap(), vec![2]).unwrap();
    let j0 = WeightVector::new(vec![2, 2]);
    let st = standard_gamma_n_cocycle(s.clone()).unwrap();
    let value = st.basis_value(0, s.index_of(&j0).unwrap());
    ensure(value == CircleValue::MINUS_ONE, || {
        format!("gamma1 k=4 j'=1: standard value {value}")
    })?;
    let target = external_target(
        &g1,
        Level::new(4).unwrap(),
        &j0,
        &Cycle::from_edge_ids(&g1, &["f2"]).unwrap(),
    )
    .unwrap();
    ensure(target == CircleValue::MINUS_ONE, || {
        format!("gamma1 k=4 j'=1: target {target}")
    })?;
    Ok(format!("{} instances, gamma1 k=4 j'=1 value -1", all.len()))
}

fn internal_edges(g: &Graph) -> usize {
    (0..g.edge_count()).filter(|&e| !g.is_leaf_edge(e)).count()
}

/// Functoriality and characterization; a flipped sign is caught.
fn functoriality_and_characterization() -> Outcome {
    let cap = 1 << 12;
    let small: Vec<&str> = suite::graphs()
        .into_iter()
        .filter(|(_, g)| internal_edges(g) <= 3)
        .map(|(n, _)| n)
        .collect();
    let all = instances(&small, 1..=4, true);
    let mut mutations = 0;
    for inst in &all {
        let s = &inst.space;
        let f = verify_functoriality(s.clone(), cap).unwrap();
        ensure(f.passed(), || {
            format!("{}: functoriality {}", inst.label, f.first_failure().unwrap().label)
        })?;
        let c = verify_characterization(s.clone(), cap).unwrap();
        ensure(c.passed(), || {
            format!("{}: characterization {}", inst.label, c.first_failure().unwrap().label)
        })?;
        let ext = construct_external_cocycle(s.clone()).unwrap();
        for o in 0..s.orbit_count() {
            let Some(lambda) = s.stabilizer(o).first() else {
                continue;
            };
            let bad = ext.flip_fixed_pair(s.representative(o), lambda).unwrap();
            let report = characterize_cocycle(&bad, cap).unwrap();
            let w = report
                .first_failure()
                .and_then(|c| c.witness.clone())
                .ok_or_else(|| format!("{}: flip on orbit {o} not detected", inst.label))?;
            let j = w
                .weight
                .ok_or_else(|| format!("{}: witness without weight", inst.label))?;
            ensure(
                s.act(&w.lambda, j) == j && bad.eval(j, &w.lambda) != ext.eval(j, &w.lambda),
                || format!("{}: witness {} is not an offending fixed pair", inst.label, w.text),
            )?;
            mutations += 1;
        }
    }
    Ok(format!(
        "{} instances on {:?}, {mutations} mutations caught",
        all.len(),
        small
    ))
}

/// Equivalence under factorization ⇔ equal invariants, on ±1 cocycles.
fn factorization_theorem() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut summary = Vec::new();
    for inst in instances(&["theta", "dumbbell"], 1..=4, true) {
        let s = &inst.space;
        let f = Factorizations::new(s.clone(), 1 << 12).unwrap();
        let dim = h1_dim(s);
        // every class, each as a lift and as a lift twisted by a ±1 coboundary
        let mut family = Vec::new();
        for mask in 0..1u64 << dim {
            let lift = cocycle_from_characters(s.clone(), &invariant_from_mask(s, mask)).unwrap();
            let twisted = lift.mul(&coboundary_of(&sign_chain(s, &mut rng))).unwrap();
            family.push(lift);
            family.push(twisted);
        }
        let mut keys = Vec::with_capacity(family.len());
        for t in &family {
            let signature: Vec<Vec<i64>> = f
                .entries
                .iter()
                .map(|(_, r)| character_table(&r.apply(t).unwrap()).unwrap())
                .collect();
            keys.push((signature, t.cohomology_invariant().unwrap()));
        }
        same_partition(&keys).map_err(|e| format!("{}: {e}", inst.label))?;
        // the API itself on every pair for small families, random pairs beyond
        let n = family.len();
        let pairs: Vec<(usize, usize)> = if n <= 128 {
            (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect()
        } else {
            (0..4000)
                .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
                .chain((0..n / 2).map(|i| (2 * i, 2 * i + 1)))
                .collect()
        };
        for &(a, b) in &pairs {
            let eq = f.equivalent_bool(&family[a], &family[b]).unwrap();
            let same = keys[a].1 == keys[b].1;
            ensure(eq == same, || {
                format!("{}: members {a},{b} equivalent={eq} same class={same}", inst.label)
            })?;
        }
        summary.push(format!("{} {}x{}", inst.label, n, pairs.len()));
    }
    Ok(summary.join("; "))
}

/// `((k+2)/2)^{g-1} Σ_{j=1}^{k+1} sin(jπ/(k+2))^{2-2g}`.
fn verlinde(genus: i32, k: u32) -> f64 {
    let n = (k + 2) as f64;
    let sum: f64 = (1..=k + 1)
        .map(|j| (j as f64 * std::f64::consts::PI / n).sin().powi(2 - 2 * genus))
        .sum();
    (n / 2.0).powi(genus - 1) * sum
}

/// Weight counts of closed graphs against the trigonometric formula.
fn dimension_oracle() -> Outcome {
    let mut lines = Vec::new();
    for (name, g) in suite::graphs().into_iter().filter(|(_, g)| g.boundary_count() == 0) {
        for k in 1..=6 {
            let s = WeightSpace::new(g.clone(), Level::new(k).unwrap(), vec![]).unwrap();
            let expect = verlinde(g.betti() as i32, k);
            ensure((s.len() as f64 - expect).abs() < 1e-6, || {
                format!("{name} k={k}: {} weights, formula {expect}", s.len())
            })?;
        }
        lines.push(name);
    }
    let theta = WeightSpace::new(suite::theta(), Level::new(2).unwrap(), vec![]).unwrap();
    ensure(theta.len() == 10, || format!("theta k=2 has {} weights", theta.len()))?;
    Ok(format!("{} graphs, k=1..6, theta k=2 -> 10", lines.len()))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("action preservation", 5, action_preservation),
        ("structure theorem: brute force = order", 60, structure_theorem),
        ("coboundary criterion", 30, coboundary_criterion),
        ("existence of external edge cocycles", 10, external_existence),
        ("odd-level triviality", 5, odd_levels),
        ("intertwiner law", 30, intertwiner_law),
        ("necklace isomorphism = equal invariant", 60, gamma_n_equivalence),
        ("standard necklace cocycle", 5, standard_cocycle),
        (
            "functoriality and characterization",
            120,
            functoriality_and_characterization,
        ),
        ("factorization theorem", 120, factorization_theorem),
        ("independent dimension oracle", 5, dimension_oracle),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let number = i + 1;
        if !filter.is_empty()
            && !filter
                .iter()
                .any(|f| name.contains(f.as_str()) || *f == number.to_string())
        {
            continue;
        }
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > Duration::from_secs(*limit) => Err(format!("over time limit {limit} s ({detail})")),
            other => other,
        };
        let secs = elapsed.as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {number:>2} PASS {name} [{secs:.2} s / {limit} s] {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {number:>2} FAIL {name} [{secs:.2} s / {limit} s] {why}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
