//! Monomial representations `ρ(δ)(λ)|j⟩ = δ_j(λ)|λ·j⟩` on the space spanned
//! by admissible weights, and diagonal intertwiners between them.

use std::fmt;

use crate::circle::CircleValue;
use crate::cohomology::{CocycleTable, ZeroCochain};
use crate::error::{Error, Result};
use crate::f2::F2Vec;
use crate::graph::Cycle;

/// `|j⟩ ↦ scalars[j] |perm[j]⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialMatrix {
    perm: Vec<usize>,
    scalars: Vec<CircleValue>,
}

impl MonomialMatrix {
    pub fn new(perm: Vec<usize>, scalars: Vec<CircleValue>) -> Result<MonomialMatrix> {
        if perm.len() != scalars.len() {
            return Err(Error::Arity {
                what: "monomial matrix scalars",
                expected: perm.len(),
                actual: scalars.len(),
            });
        }
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Arity {
                    what: "permutation image",
                    expected: perm.len(),
                    actual: p,
                });
            }
        }
        Ok(MonomialMatrix { perm, scalars })
    }

    pub fn identity(n: usize) -> MonomialMatrix {
        MonomialMatrix {
            perm: (0..n).collect(),
            scalars: vec![CircleValue::ONE; n],
        }
    }

    pub fn diagonal(scalars: Vec<CircleValue>) -> MonomialMatrix {
        MonomialMatrix {
            perm: (0..scalars.len()).collect(),
            scalars,
        }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn target(&self, j: usize) -> usize {
        self.perm[j]
    }

    pub fn scalar(&self, j: usize) -> CircleValue {
        self.scalars[j]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &MonomialMatrix) -> MonomialMatrix {
        assert_eq!(self.dim(), other.dim());
        let (perm, scalars) = (0..other.dim())
            .map(|j| {
                let mid = other.perm[j];
                (self.perm[mid], other.scalars[j] * self.scalars[mid])
            })
            .unzip();
        MonomialMatrix { perm, scalars }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(j, &p)| p == j) && self.scalars.iter().all(|s| s.is_one())
    }

    /// Trace if every diagonal entry is ±1.
    pub fn integer_trace(&self) -> Option<i64> {
        (0..self.dim())
            .filter(|&j| self.perm[j] == j)
            .map(|j| self.scalars[j].as_real_sign())
            .sum()
    }
}

/// Rows `index -> target_index, p/q`.
impl fmt::Display for MonomialMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.dim() {
            writeln!(f, "{j} -> {}, {}", self.perm[j], self.scalars[j])?;
        }
        Ok(())
    }
}

fn require_cocycle(t: &CocycleTable) -> Result<()> {
    if t.is_twisted_cocycle() {
        Ok(())
    } else {
        Err(Error::NotACocycle)
    }
}

/// `ρ(δ)(λ)` for `λ` given by homology coordinates.
pub fn rep_matrix(t: &CocycleTable, lambda: &F2Vec) -> Result<MonomialMatrix> {
    require_cocycle(t)?;
    Ok(rep_matrix_unchecked(t, lambda))
}

pub fn rep_matrix_cycle(t: &CocycleTable, cycle: &Cycle) -> Result<MonomialMatrix> {
    rep_matrix(t, &t.space().coordinates(cycle))
}

fn rep_matrix_unchecked(t: &CocycleTable, lambda: &F2Vec) -> MonomialMatrix {
    let s = t.space();
    let (perm, scalars) = (0..s.len()).map(|j| (s.act(lambda, j), t.eval(j, lambda))).unzip();
    MonomialMatrix { perm, scalars }
}

/// `Tr ρ(δ)(λ)`: the sum of `δ_j(λ)` over weights fixed by `λ`.
pub fn character(t: &CocycleTable, lambda: &F2Vec) -> Result<i64> {
    require_cocycle(t)?;
    Ok(character_unchecked(t, lambda))
}

fn character_unchecked(t: &CocycleTable, lambda: &F2Vec) -> i64 {
    let s = t.space();
    (0..s.len())
        .filter(|&j| s.act(lambda, j) == j)
        .map(|j| {
            t.eval(j, lambda)
                .as_real_sign()
                .expect("fixed-pair values of a cocycle are ±1")
        })
        .sum()
}

/// The full character table over `H₁` in binary counting order.
pub fn character_table(t: &CocycleTable) -> Result<Vec<i64>> {
    require_cocycle(t)?;
    Ok(t.space().group_elements().map(|l| character_unchecked(t, &l)).collect())
}

/// Monomial representations of a finite abelian group are determined by
/// their characters.
pub fn reps_isomorphic(t1: &CocycleTable, t2: &CocycleTable) -> Result<bool> {
    Ok(first_character_difference(t1, t2)?.is_none())
}

/// The first group element, in counting order, where the characters differ.
pub fn first_character_difference(t1: &CocycleTable, t2: &CocycleTable) -> Result<Option<F2Vec>> {
    if !t1.space().same_as(t2.space()) {
        return Err(Error::ContextMismatch);
    }
    require_cocycle(t1)?;
    require_cocycle(t2)?;
    Ok(t1
        .space()
        .group_elements()
        .find(|l| character_unchecked(t1, l) != character_unchecked(t2, l)))
}

/// `φ_c |j⟩ = c_j |j⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalIntertwiner {
    values: Vec<CircleValue>,
}

impl DiagonalIntertwiner {
    pub fn new(c: &ZeroCochain) -> DiagonalIntertwiner {
        DiagonalIntertwiner {
            values: c.values().to_vec(),
        }
    }

    pub fn matrix(&self) -> MonomialMatrix {
        MonomialMatrix::diagonal(self.values.clone())
    }
}

/// `φ_c ∘ ρ(δ₂)(λ) = ρ(δ₁)(λ) ∘ φ_c` on every basis cycle, which holds exactly
/// when `dc = δ₁ δ₂⁻¹`; together with `φ_{c·c} = φ_c φ_c` and
/// `φ_{c·c⁻¹} = 1`.
pub fn verify_intertwiner(t1: &CocycleTable, t2: &CocycleTable, c: &ZeroCochain) -> Result<bool> {
    Ok(intertwiner_failure(t1, t2, c)?.is_none())
}

/// The first basis cycle where the intertwining relation fails, or `None`.
/// A failure of the composition law is reported as `Some(g)` with `g` the
/// genus, one past the last basis index.
pub fn intertwiner_failure(t1: &CocycleTable, t2: &CocycleTable, c: &ZeroCochain) -> Result<Option<usize>> {
    let s = t1.space();
    if !s.same_as(t2.space()) || !s.same_as(c.space()) {
        return Err(Error::ContextMismatch);
    }
    require_cocycle(t1)?;
    require_cocycle(t2)?;
    let phi = DiagonalIntertwiner::new(c).matrix();
    let g = s.genus();
    for b in 0..g {
        let unit = F2Vec::unit(g, b);
        let left = phi.compose(&rep_matrix_unchecked(t2, &unit));
        let right = rep_matrix_unchecked(t1, &unit).compose(&phi);
        if left != right {
            return Ok(Some(b));
        }
    }
    let square = DiagonalIntertwiner::new(&c.mul(c)?).matrix();
    let unit = DiagonalIntertwiner::new(&c.mul(&c.inv())?).matrix();
    if square != phi.compose(&phi) || !unit.is_identity() {
        return Ok(Some(g));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{coboundary_of, CocycleTable};
    use crate::external::{construct_external_cocycle, standard_gamma_n_cocycle};
    use crate::space::WeightSpace;
    use crate::suite;
    use crate::weights::{Level, WeightVector};
    use std::sync::Arc;

    fn space(g: crate::graph::Graph, k: u32, b: &[u32]) -> Arc<WeightSpace> {
        WeightSpace::shared(g, Level::new(k).unwrap(), b.to_vec()).unwrap()
    }

    #[test]
    fn zero_cycle_gives_identity() {
        let s = space(suite::dumbbell(), 4, &[]);
        let t = construct_external_cocycle(s.clone()).unwrap();
        let zero = F2Vec::zeros(2);
        assert!(rep_matrix(&t, &zero).unwrap().is_identity());
        assert_eq!(character(&t, &zero).unwrap(), s.len() as i64);
    }

    #[test]
    fn trivial_cocycle_gives_permutations() {
        let s = space(suite::theta(), 2, &[]);
        let t = CocycleTable::trivial(s.clone());
        let l = s.coordinates(&Cycle::from_edge_ids(s.graph(), &["e1", "e2"]).unwrap());
        let m = rep_matrix(&t, &l).unwrap();
        for j in 0..s.len() {
            assert_eq!(m.target(j), s.act(&l, j));
            assert!(m.scalar(j).is_one());
        }
        assert_eq!(character(&t, &l).unwrap(), 2);
    }

    #[test]
    fn homomorphism_law() {
        let s = space(suite::dumbbell(), 4, &[]);
        let t = construct_external_cocycle(s.clone()).unwrap();
        let elems: Vec<F2Vec> = s.group_elements().collect();
        for a in &elems {
            let ra = rep_matrix(&t, a).unwrap();
            assert!(ra.compose(&ra).is_identity());
            for b in &elems {
                let rb = rep_matrix(&t, b).unwrap();
                assert_eq!(ra.compose(&rb), rep_matrix(&t, &a.xor(b)).unwrap());
            }
        }
    }

    #[test]
    fn dumbbell_external_character() {
        let s = space(suite::dumbbell(), 4, &[]);
        let t = construct_external_cocycle(s.clone()).unwrap();
        let a = s.coordinates(&Cycle::from_edge_ids(s.graph(), &["a"]).unwrap());
        let j = s.index_of(&WeightVector::new(vec![2, 2, 2])).unwrap();
        let m = rep_matrix(&t, &a).unwrap();
        assert_eq!(m.target(j), j);
        assert_eq!(m.scalar(j), CircleValue::MINUS_ONE);
        let expect: i64 = s
            .weights()
            .iter()
            .filter(|w| w.get(0) == 2)
            .map(|w| if (w.get(2) / 2) % 2 == 0 { 1 } else { -1 })
            .sum();
        assert_eq!(character(&t, &a).unwrap(), expect);
    }

    #[test]
    fn intertwiners() {
        let s = space(suite::theta(), 2, &[]);
        let t1 = CocycleTable::trivial(s.clone());
        let one = ZeroCochain::constant(s.clone(), CircleValue::ONE);
        assert!(verify_intertwiner(&t1, &t1, &one).unwrap());

        let c = ZeroCochain::new(s.clone(), (0..s.len()).map(|j| CircleValue::new(j as i64, 5)).collect()).unwrap();
        let t2 = t1.mul(&coboundary_of(&c)).unwrap();
        // dc = t2 / t1, so c⁻¹ cobounds t1 / t2
        assert!(verify_intertwiner(&t1, &t2, &c.inv()).unwrap());
        assert!(!verify_intertwiner(&t1, &t2, &c).unwrap());
        let chain = t1.mul(&t2.inv()).unwrap().cobounding_chain().unwrap();
        assert!(verify_intertwiner(&t1, &t2, &chain).unwrap());
        assert!(reps_isomorphic(&t1, &t2).unwrap());
    }

    #[test]
    fn standard_gamma_one_is_not_isomorphic_to_trivial() {
        let s = space(suite::gamma_n(1), 4, &[2]);
        let st = standard_gamma_n_cocycle(s.clone()).unwrap();
        let tr = CocycleTable::trivial(s.clone());
        assert!(!reps_isomorphic(&st, &tr).unwrap());
        let gen = F2Vec::unit(1, 0);
        assert_eq!(character(&tr, &gen).unwrap() - character(&st, &gen).unwrap(), 2);
        assert_eq!(first_character_difference(&st, &tr).unwrap(), Some(gen));
        let any = ZeroCochain::constant(s, CircleValue::ONE);
        assert!(!verify_intertwiner(&st, &tr, &any).unwrap());
    }

    #[test]
    fn matrix_validation_and_display() {
        assert!(MonomialMatrix::new(vec![0, 0], vec![CircleValue::ONE; 2]).is_err());
        let m = MonomialMatrix::new(vec![1, 0], vec![CircleValue::ONE, CircleValue::new(1, 4)]).unwrap();
        assert_eq!(m.to_string(), "0 -> 1, 0/1\n1 -> 0, 1/4\n");
        assert_eq!(m.integer_trace(), Some(0));
    }
}
