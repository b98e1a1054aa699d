//! Dense vectors over F₂ and the elimination routines used for cycle
//! coordinates, basis extension and kernel computations.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct F2Vec {
    len: usize,
    words: Vec<u64>,
}

impl F2Vec {
    pub fn zeros(len: usize) -> Self {
        F2Vec {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, ones: I) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.flip(i);
        }
        v
    }

    /// Low `len` bits of `mask`.
    pub fn from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= 64);
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = if len == 64 { mask } else { mask & ((1u64 << len) - 1) };
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, bit: bool) {
        debug_assert!(i < self.len);
        let m = 1u64 << (i % 64);
        if bit {
            self.words[i / 64] |= m;
        } else {
            self.words[i / 64] &= !m;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &F2Vec) {
        assert_eq!(self.len, other.len, "F2Vec length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &F2Vec) -> F2Vec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn and(&self, other: &F2Vec) -> F2Vec {
        assert_eq!(self.len, other.len, "F2Vec length mismatch");
        F2Vec {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    /// Indices of set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + t)
            })
        })
    }

    /// The vector as a `u64` mask; panics when longer than 64.
    pub fn to_mask(&self) -> u64 {
        assert!(self.len <= 64);
        self.words.first().copied().unwrap_or(0)
    }
}

impl fmt::Debug for F2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Incrementally built echelon form that remembers how each reduced row was
/// obtained from the inserted vectors.
#[derive(Debug, Clone)]
pub struct Echelon {
    width: usize,
    inserted: usize,
    rows: Vec<EchelonRow>,
}

#[derive(Debug, Clone)]
struct EchelonRow {
    pivot: usize,
    reduced: F2Vec,
    combination: Vec<usize>,
}

impl Echelon {
    pub fn new(width: usize) -> Self {
        Echelon {
            width,
            inserted: 0,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the current rows, returning the residue and the
    /// indices of inserted vectors whose sum was subtracted.
    fn reduce(&self, v: &F2Vec) -> (F2Vec, Vec<usize>) {
        assert_eq!(v.len(), self.width);
        let mut residue = v.clone();
        let mut used: Vec<usize> = Vec::new();
        for row in &self.rows {
            if residue.get(row.pivot) {
                residue.xor_assign(&row.reduced);
                sym_diff(&mut used, &row.combination);
            }
        }
        (residue, used)
    }

    /// Insert `v`; returns `true` when it was independent of earlier vectors.
    /// Every call consumes one insertion index, dependent or not.
    pub fn insert(&mut self, v: &F2Vec) -> bool {
        let id = self.inserted;
        self.inserted += 1;
        let (residue, mut used) = self.reduce(v);
        match residue.first_one() {
            None => false,
            Some(pivot) => {
                sym_diff(&mut used, &[id]);
                self.rows.push(EchelonRow {
                    pivot,
                    reduced: residue,
                    combination: used,
                });
                true
            }
        }
    }

    pub fn contains(&self, v: &F2Vec) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// Write `v` as a sum of inserted vectors (by insertion index), if possible.
    pub fn express(&self, v: &F2Vec) -> Option<Vec<usize>> {
        let (residue, mut used) = self.reduce(v);
        if residue.is_zero() {
            used.sort_unstable();
            Some(used)
        } else {
            None
        }
    }
}

fn sym_diff(acc: &mut Vec<usize>, other: &[usize]) {
    for &x in other {
        if let Some(pos) = acc.iter().position(|&y| y == x) {
            acc.swap_remove(pos);
        } else {
            acc.push(x);
        }
    }
}

/// Basis of the solution space of the homogeneous system `rows · x = 0`.
pub fn nullspace(rows: &[F2Vec], width: usize) -> Vec<F2Vec> {
    let mut m: Vec<F2Vec> = rows.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..width {
        let Some(p) = (r..m.len()).find(|&i| m[i].get(col)) else {
            continue;
        };
        m.swap(r, p);
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row.get(col) {
                row.xor_assign(&pivot_row);
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let mut is_pivot = vec![false; width];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..width)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = F2Vec::unit(width, free);
            for (ri, &pc) in pivots.iter().enumerate() {
                if m[ri].get(free) {
                    v.set(pc, true);
                }
            }
            v
        })
        .collect()
}

pub fn rank(vectors: &[F2Vec], width: usize) -> usize {
    let mut e = Echelon::new(width);
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}
