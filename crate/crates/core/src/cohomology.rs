//! Twisted cochains of `H₁(Γ)` with coefficients in `A = (C^×)^{QCG}`,
//! restricted to roots of unity.
//!
//! `H₁` acts on `A` by permuting entries, `(λ·c)_j = c_{λ·j}`. A 1-cochain
//! is stored on a homology basis; it is a twisted cocycle when
//! `δ_j(λ+μ) = δ_{λ·j}(μ) · δ_j(λ)` holds, and then its value on any `λ` is
//! obtained by walking the basis decomposition of `λ`.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use num_bigint::BigUint;

use crate::circle::CircleValue;
use crate::error::{Error, Result};
use crate::f2::{self, Echelon, F2Vec};
use crate::graph::Cycle;
use crate::space::WeightSpace;

/// Stabilizers larger than this are not expanded element by element.
pub const MAX_STABILIZER_DIM: usize = 24;

/// A 0-cochain `c = (c_j)`.
#[derive(Debug, Clone)]
pub struct ZeroCochain {
    space: Arc<WeightSpace>,
    values: Vec<CircleValue>,
}

impl ZeroCochain {
    pub fn new(space: Arc<WeightSpace>, values: Vec<CircleValue>) -> Result<ZeroCochain> {
        if values.len() != space.len() {
            return Err(Error::Arity {
                what: "0-cochain",
                expected: space.len(),
                actual: values.len(),
            });
        }
        Ok(ZeroCochain { space, values })
    }

    pub fn constant(space: Arc<WeightSpace>, value: CircleValue) -> ZeroCochain {
        let values = vec![value; space.len()];
        ZeroCochain { space, values }
    }

    pub fn space(&self) -> &Arc<WeightSpace> {
        &self.space
    }

    pub fn get(&self, j: usize) -> CircleValue {
        self.values[j]
    }

    pub fn values(&self) -> &[CircleValue] {
        &self.values
    }

    pub fn inv(&self) -> ZeroCochain {
        ZeroCochain {
            space: self.space.clone(),
            values: self.values.iter().map(|v| v.inv()).collect(),
        }
    }

    pub fn mul(&self, other: &ZeroCochain) -> Result<ZeroCochain> {
        if !self.space.same_as(&other.space) {
            return Err(Error::ContextMismatch);
        }
        Ok(ZeroCochain {
            space: self.space.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| *a * *b).collect(),
        })
    }
}

/// A 1-cochain given by its values `δ_j(b)` on the homology basis.
#[derive(Debug, Clone)]
pub struct CocycleTable {
    space: Arc<WeightSpace>,
    /// `values[b * n + j] = δ_j(b)`.
    values: Vec<CircleValue>,
}

impl PartialEq for CocycleTable {
    fn eq(&self, other: &Self) -> bool {
        self.space.same_as(&other.space) && self.values == other.values
    }
}

impl CocycleTable {
    /// `rows[b][j] = δ_j(b)`; every basis element needs a value at every weight.
    pub fn new(space: Arc<WeightSpace>, rows: Vec<Vec<CircleValue>>) -> Result<CocycleTable> {
        if rows.len() != space.genus() {
            return Err(Error::IncompleteTable(format!(
                "{} basis rows given, {} needed",
                rows.len(),
                space.genus()
            )));
        }
        if let Some((b, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != space.len()) {
            return Err(Error::IncompleteTable(format!(
                "basis row {b} has {} values, {} needed",
                row.len(),
                space.len()
            )));
        }
        Ok(CocycleTable {
            space,
            values: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(space: Arc<WeightSpace>, mut f: impl FnMut(usize, usize) -> CircleValue) -> CocycleTable {
        let n = space.len();
        let mut values = Vec::with_capacity(space.genus() * n);
        for b in 0..space.genus() {
            values.extend((0..n).map(|j| f(b, j)));
        }
        CocycleTable { space, values }
    }

    /// `δ ≡ 1`.
    pub fn trivial(space: Arc<WeightSpace>) -> CocycleTable {
        let values = vec![CircleValue::ONE; space.genus() * space.len()];
        CocycleTable { space, values }
    }

    pub fn space(&self) -> &Arc<WeightSpace> {
        &self.space
    }

    #[inline]
    pub fn basis_value(&self, b: usize, j: usize) -> CircleValue {
        self.values[b * self.space.len() + j]
    }

    pub fn set_basis_value(&mut self, b: usize, j: usize, v: CircleValue) {
        let n = self.space.len();
        self.values[b * n + j] = v;
    }

    /// `δ_j(λ)` through the cocycle rule, multiplying along the basis
    /// decomposition of `λ` in ascending order.
    pub fn eval(&self, j: usize, coords: &F2Vec) -> CircleValue {
        let mut at = j;
        let mut acc = CircleValue::ONE;
        for b in coords.ones() {
            acc *= self.basis_value(b, at);
            at = self.space.act_basis(b, at);
        }
        acc
    }

    pub fn eval_cycle(&self, j: usize, cycle: &Cycle) -> CircleValue {
        self.eval(j, &self.space.coordinates(cycle))
    }

    pub fn is_twisted_cocycle(&self) -> bool {
        let s = &*self.space;
        let n = s.len();
        let row = |b: usize| &self.values[b * n..(b + 1) * n];
        (0..s.genus()).all(|b| {
            let (vb, mb) = (row(b), s.basis_moves(b));
            (0..n).all(|j| (vb[mb[j]] * vb[j]).is_one())
                && (b + 1..s.genus()).all(|c| {
                    let (vc, mc) = (row(c), s.basis_moves(c));
                    (0..n).all(|j| vc[mb[j]] * vb[j] == vb[mc[j]] * vc[j])
                })
        })
    }

    fn require_cocycle(&self) -> Result<()> {
        if self.is_twisted_cocycle() {
            Ok(())
        } else {
            Err(Error::NotACocycle)
        }
    }

    pub fn mul(&self, other: &CocycleTable) -> Result<CocycleTable> {
        if !self.space.same_as(&other.space) {
            return Err(Error::ContextMismatch);
        }
        Ok(CocycleTable {
            space: self.space.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| *a * *b).collect(),
        })
    }

    pub fn inv(&self) -> CocycleTable {
        CocycleTable {
            space: self.space.clone(),
            values: self.values.iter().map(|v| v.inv()).collect(),
        }
    }

    /// Coboundary test: some 0-cochain has this table as its coboundary.
    /// For cocycles this is the same as every fixed pair having value 1.
    pub fn is_coboundary(&self) -> Result<bool> {
        if self.integrate().is_some() {
            return Ok(true);
        }
        self.require_cocycle()?;
        Ok(false)
    }

    /// A 0-cochain `c` with `coboundary_of(c) = self`: `c = 1` on each orbit
    /// representative and `c_{λ·j₀} = δ_{j₀}(λ)`.
    pub fn cobounding_chain(&self) -> Result<ZeroCochain> {
        if let Some(chain) = self.integrate() {
            return Ok(chain);
        }
        self.require_cocycle()?;
        Err(Error::NotACoboundary)
    }

    /// Integrate along a spanning tree of each orbit, then check every entry.
    fn integrate(&self) -> Option<ZeroCochain> {
        let s = &*self.space;
        let n = s.len();
        let mut values = vec![CircleValue::ONE; n];
        let mut seen = vec![false; n];
        let mut stack = Vec::new();
        for o in 0..s.orbit_count() {
            let rep = s.representative(o);
            seen[rep] = true;
            stack.push(rep);
            while let Some(j) = stack.pop() {
                for b in 0..s.genus() {
                    let t = s.act_basis(b, j);
                    if !seen[t] {
                        seen[t] = true;
                        values[t] = values[j] * self.basis_value(b, j);
                        stack.push(t);
                    }
                }
            }
        }
        let consistent = (0..s.genus()).all(|b| {
            let row = &self.values[b * n..(b + 1) * n];
            let moves = s.basis_moves(b);
            (0..n).all(|j| values[moves[j]] == values[j] * row[j])
        });
        consistent.then(|| ZeroCochain {
            space: self.space.clone(),
            values,
        })
    }

    /// `eval` with the cycle given as a coordinate bit mask.
    fn eval_mask(&self, j: usize, mut mask: u64) -> CircleValue {
        let n = self.space.len();
        let mut at = j;
        let mut acc = CircleValue::ONE;
        while mask != 0 {
            let b = mask.trailing_zeros() as usize;
            acc *= self.values[b * n + at];
            at = self.space.act_basis(b, at);
            mask &= mask - 1;
        }
        acc
    }

    /// Values on the stabilizer of each orbit representative.
    pub fn cohomology_invariant(&self) -> Result<CohomologyInvariant> {
        self.require_cocycle()?;
        let s = &*self.space;
        let mut orbits = Vec::with_capacity(s.orbit_count());
        for o in 0..s.orbit_count() {
            let d = s.stabilizer_dim(o);
            if d > MAX_STABILIZER_DIM {
                return Err(Error::CapExceeded {
                    needed: 1u128 << d,
                    cap: 1u128 << MAX_STABILIZER_DIM,
                });
            }
            let rep = s.representative(o);
            let basis: Vec<u64> = s.stabilizer(o).iter().map(F2Vec::to_mask).collect();
            let mut values = Vec::with_capacity(1 << d);
            let mut element = 0u64;
            for m in 0..1u64 << d {
                if m > 0 {
                    // consecutive masks differ in their low bits
                    element ^= (0..d)
                        .filter(|i| (m ^ (m - 1)) >> i & 1 == 1)
                        .fold(0, |e, i| e ^ basis[i]);
                }
                values.push(self.eval_mask(rep, element));
            }
            orbits.push(OrbitCharacter {
                representative: rep,
                stabilizer: s.stabilizer(o).to_vec(),
                values,
            });
        }
        Ok(CohomologyInvariant { orbits })
    }

    /// Multiply by the character `μ ↦ (-1)^{μ_i}` on the orbit of `j`, where
    /// `i` is the lowest basis coordinate of `lambda`. Flips the value at the
    /// fixed pair `(lambda, j)` and keeps the cocycle property.
    pub fn flip_fixed_pair(&self, j: usize, lambda: &F2Vec) -> Result<CocycleTable> {
        let s = &*self.space;
        let i = lambda.first_one().ok_or(Error::ZeroCycle)?;
        if s.act(lambda, j) != j {
            return Err(Error::NotFixed);
        }
        let mut out = self.clone();
        for &m in s.orbit_members(s.orbit_of(j)) {
            let v = out.basis_value(i, m);
            out.set_basis_value(i, m, v * CircleValue::MINUS_ONE);
        }
        Ok(out)
    }

    /// Basis-cycle/weight/value triples in serialization order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, CircleValue)> + '_ {
        let n = self.space.len();
        self.values.iter().enumerate().map(move |(i, &v)| (i / n, i % n, v))
    }
}

/// `(dc)_j(λ) = c_{λ·j} · c_j^{-1}`.
pub fn coboundary_of(c: &ZeroCochain) -> CocycleTable {
    let s = &c.space;
    let inverse: Vec<CircleValue> = c.values.iter().map(|v| v.inv()).collect();
    let mut values = Vec::with_capacity(s.genus() * s.len());
    for b in 0..s.genus() {
        values.extend(
            s.basis_moves(b)
                .iter()
                .zip(&inverse)
                .map(|(&t, &inv)| c.values[t] * inv),
        );
    }
    CocycleTable {
        space: s.clone(),
        values,
    }
}

/// A character of one orbit's stabilizer, tabulated on all stabilizer
/// elements. `values[m]` is the value at the element with basis mask `m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrbitCharacter {
    pub representative: usize,
    pub stabilizer: Vec<F2Vec>,
    pub values: Vec<CircleValue>,
}

impl OrbitCharacter {
    pub fn dim(&self) -> usize {
        self.stabilizer.len()
    }

    pub fn basis_values(&self) -> Vec<CircleValue> {
        (0..self.dim()).map(|i| self.values[1 << i]).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|v| v.is_one())
    }

    /// A homomorphism from an F₂-space: 1 at 0, order dividing 2 on the
    /// basis, multiplicative over the basis expansion.
    pub fn is_homomorphism(&self) -> bool {
        if self.values.len() != 1 << self.dim() || !self.values[0].is_one() {
            return false;
        }
        let basis = self.basis_values();
        basis.iter().all(|v| (*v * *v).is_one())
            && (0..self.values.len()).all(|m| {
                let expect: CircleValue = (0..self.dim()).filter(|i| m >> i & 1 == 1).map(|i| basis[i]).product();
                self.values[m] == expect
            })
    }
}

/// The image of a cocycle under `δ ↦ (λ ↦ δ_j(λ))`, one character per orbit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CohomologyInvariant {
    pub orbits: Vec<OrbitCharacter>,
}

impl CohomologyInvariant {
    pub fn trivial(space: &WeightSpace) -> CohomologyInvariant {
        Self::from_basis_values(space, |_, _| CircleValue::ONE)
    }

    /// The character with value `f(orbit, i)` on the `i`-th stabilizer basis
    /// element of each orbit, extended multiplicatively.
    pub fn from_basis_values(
        space: &WeightSpace,
        mut f: impl FnMut(usize, usize) -> CircleValue,
    ) -> CohomologyInvariant {
        let orbits = (0..space.orbit_count())
            .map(|o| {
                let d = space.stabilizer_dim(o);
                let basis: Vec<CircleValue> = (0..d).map(|i| f(o, i)).collect();
                let values = (0..1usize << d)
                    .map(|m| (0..d).filter(|i| m >> i & 1 == 1).map(|i| basis[i]).product())
                    .collect();
                OrbitCharacter {
                    representative: space.representative(o),
                    stabilizer: space.stabilizer(o).to_vec(),
                    values,
                }
            })
            .collect();
        CohomologyInvariant { orbits }
    }

    pub fn is_trivial(&self) -> bool {
        self.orbits.iter().all(OrbitCharacter::is_trivial)
    }

    /// Total stabilizer dimension, i.e. `log₂ |H¹|`.
    pub fn total_dim(&self) -> usize {
        self.orbits.iter().map(OrbitCharacter::dim).sum()
    }

    /// First orbit and stabilizer mask where the two characters differ.
    pub fn first_difference(&self, other: &CohomologyInvariant) -> Option<(usize, usize)> {
        self.orbits
            .iter()
            .zip(&other.orbits)
            .enumerate()
            .find_map(|(o, (a, b))| a.values.iter().zip(&b.values).position(|(x, y)| x != y).map(|m| (o, m)))
    }
}

/// Lift each orbit character to all of `H₁` (trivial on a complement of the
/// stabilizer) and use the lift as a cocycle constant along the orbit.
/// For each unit vector `e_b`, the stabilizer basis elements used when
/// `e_b` is written in the stabilizer basis extended by unit vectors.
fn lift_supports(stabilizer: &[F2Vec], g: usize) -> Vec<u64> {
    let d = stabilizer.len();
    let mut ech = Echelon::new(g);
    for v in stabilizer {
        ech.insert(v);
    }
    for i in 0..g {
        ech.insert(&F2Vec::unit(g, i));
    }
    (0..g)
        .map(|b| {
            let combo = ech.express(&F2Vec::unit(g, b)).expect("extended basis spans H1");
            combo.iter().filter(|&&id| id < d).fold(0, |m, &id| m | 1 << id)
        })
        .collect()
}

pub fn cocycle_from_characters(space: Arc<WeightSpace>, inv: &CohomologyInvariant) -> Result<CocycleTable> {
    let s = &*space;
    if inv.orbits.len() != s.orbit_count() {
        return Err(Error::ContextMismatch);
    }
    let g = s.genus();
    let mut table = CocycleTable::trivial(space.clone());
    let mut lifts: HashMap<&[F2Vec], Vec<u64>> = HashMap::new();
    for (o, ch) in inv.orbits.iter().enumerate() {
        if ch.representative != s.representative(o) || ch.stabilizer != s.stabilizer(o) {
            return Err(Error::ContextMismatch);
        }
        if !ch.is_homomorphism() {
            return Err(Error::NotAHomomorphism { orbit: o });
        }
        let eps = ch.basis_values();
        let supports = lifts
            .entry(s.stabilizer(o))
            .or_insert_with(|| lift_supports(s.stabilizer(o), g));
        for (b, &support) in supports.iter().enumerate() {
            let lift: CircleValue = eps
                .iter()
                .enumerate()
                .filter(|&(i, _)| support >> i & 1 == 1)
                .map(|(_, v)| *v)
                .product();
            for &j in s.orbit_members(o) {
                table.set_basis_value(b, j, lift);
            }
        }
    }
    Ok(table)
}

/// `|H¹| = Π 2^{dim Stab}` over orbits.
pub fn cohomology_group_order(space: &WeightSpace) -> BigUint {
    let dim: usize = (0..space.orbit_count()).map(|o| space.stabilizer_dim(o)).sum();
    BigUint::from(1u8) << dim
}

/// Largest `g·|QCG|` for which the class count enumerates every table.
pub const LITERAL_ENUMERATION_BITS: usize = 20;

/// Number of distinct invariants among ±1-valued twisted cocycles, computed
/// without the orbit–stabilizer description.
///
/// Small instances enumerate every ±1 table on (basis × weights) and filter
/// with [`CocycleTable::is_twisted_cocycle`]. Larger ones solve the cocycle
/// relations as a linear system over F₂ (value `(-1)^x`), block by block along
/// the coupling of unknowns, and count the image of the invariant map as
/// `2^rank`. Fails with `CapExceeded` when `2^g · |QCG| > cap`.
pub fn brute_force_class_count(space: Arc<WeightSpace>, cap: u128) -> Result<BigUint> {
    let g = space.genus();
    let n = space.len();
    let needed = (1u128 << g) * n as u128;
    if needed > cap {
        return Err(Error::CapExceeded { needed, cap });
    }
    if g * n <= LITERAL_ENUMERATION_BITS {
        return Ok(BigUint::from(literal_class_count(space)?));
    }
    linear_class_count(space)
}

fn linear_class_count(space: Arc<WeightSpace>) -> Result<BigUint> {
    let g = space.genus();
    let n = space.len();
    let unknown = |b: usize, j: usize| b * n + j;
    let width = g * n;
    let mut equations: Vec<Vec<usize>> = Vec::new();
    for j in 0..n {
        for b in 0..g {
            let bj = space.act_basis(b, j);
            equations.push(vec![unknown(b, bj), unknown(b, j)]);
            for c in b + 1..g {
                let cj = space.act_basis(c, j);
                equations.push(vec![unknown(c, bj), unknown(b, j), unknown(b, cj), unknown(c, j)]);
            }
        }
    }

    // blocks of unknowns coupled by some equation
    let mut parent: Vec<usize> = (0..width).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for eq in &equations {
        for w in eq.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            if a != b {
                parent[a] = b;
            }
        }
    }
    let mut block_of = vec![usize::MAX; width];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for x in 0..width {
        let r = find(&mut parent, x);
        if block_of[r] == usize::MAX {
            block_of[r] = blocks.len();
            blocks.push(Vec::new());
        }
        let id = block_of[r];
        block_of[x] = id;
        blocks[id].push(x);
    }
    let mut block_equations: Vec<Vec<&Vec<usize>>> = vec![Vec::new(); blocks.len()];
    for eq in &equations {
        block_equations[block_of[eq[0]]].push(eq);
    }

    // invariant coordinates: stabilizer basis values of every orbit, -1 as 1
    let mut offset = Vec::with_capacity(space.orbit_count());
    let mut total = 0;
    for o in 0..space.orbit_count() {
        offset.push(total);
        total += space.stabilizer_dim(o);
    }
    let mut scratch = CocycleTable::trivial(space.clone());
    let mut images: Vec<F2Vec> = Vec::new();
    for (id, vars) in blocks.iter().enumerate() {
        let local = |x: usize| vars.binary_search(&x).expect("unknown in block");
        let rows: Vec<F2Vec> = block_equations[id]
            .iter()
            .map(|eq| F2Vec::from_indices(vars.len(), eq.iter().map(|&x| local(x))))
            .collect();
        let mut touched: Vec<usize> = vars.iter().map(|&x| space.orbit_of(x % n)).collect();
        touched.sort_unstable();
        touched.dedup();
        for kernel_vector in f2::nullspace(&rows, vars.len()) {
            for i in kernel_vector.ones() {
                scratch.values[vars[i]] = CircleValue::MINUS_ONE;
            }
            let mut bits = F2Vec::zeros(total);
            for &o in &touched {
                let rep = space.representative(o);
                for (i, lambda) in space.stabilizer(o).iter().enumerate() {
                    match scratch.eval(rep, lambda).as_real_sign() {
                        Some(1) => {}
                        Some(_) => bits.set(offset[o] + i, true),
                        None => return Err(Error::NotAHomomorphism { orbit: o }),
                    }
                }
            }
            for i in kernel_vector.ones() {
                scratch.values[vars[i]] = CircleValue::ONE;
            }
            images.push(bits);
        }
    }
    Ok(BigUint::from(1u8) << f2::rank(&images, total))
}

fn literal_class_count(space: Arc<WeightSpace>) -> Result<u64> {
    let slots = space.genus() * space.len();
    let mut table = CocycleTable::trivial(space);
    let mut seen: HashSet<CohomologyInvariant> = HashSet::new();
    for mask in 0u64..(1u64 << slots) {
        for (i, v) in table.values.iter_mut().enumerate() {
            *v = CircleValue::sign(mask >> i & 1);
        }
        if table.is_twisted_cocycle() {
            seen.insert(table.cohomology_invariant()?);
        }
    }
    Ok(seen.len() as u64)
}
