//! The BNN representation type and explicit function tables.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::bits::BoolVec;
use crate::error::{Error, Result};

/// Default bound on `n` for polynomial-time operations.
pub const N_MAX: usize = 4096;
/// Default bound on `n` for operations that sweep all `2^n` vectors.
pub const EXH_MAX: usize = 24;
/// Exhaustive sweeps index the cube with machine words and keep a `2^n`-bit
/// table; `exh_max` may not be raised past this.
pub const EXH_HARD_CAP: usize = 30;

/// Dimension limits for the two operation tiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub n_max: usize,
    pub exh_max: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            n_max: N_MAX,
            exh_max: EXH_MAX,
        }
    }
}

impl Limits {
    /// Default limits with the exhaustive bound replaced.
    pub fn with_exh_max(exh_max: usize) -> Result<Self> {
        if exh_max == 0 || exh_max > EXH_HARD_CAP {
            return Err(Error::InvalidParameter(format!(
                "exhaustive bound must lie in 1..={EXH_HARD_CAP}, got {exh_max}"
            )));
        }
        Ok(Limits {
            exh_max,
            ..Limits::default()
        })
    }

    pub fn check_exhaustive(&self, n: usize) -> Result<()> {
        let max = self.exh_max.min(EXH_HARD_CAP);
        if n > max {
            return Err(Error::DimensionTooLarge { n, max });
        }
        Ok(())
    }

    pub fn check_polynomial(&self, n: usize) -> Result<()> {
        if n > self.n_max {
            return Err(Error::DimensionTooLarge { n, max: self.n_max });
        }
        Ok(())
    }
}

/// Outcome of the exhaustive tie check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validity {
    Valid,
    /// The lexicographically smallest vector equidistant from `P` and `N`.
    TieWitness(BoolVec),
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }
}

/// A pair `(P, N)` of disjoint prototype sets over the same dimension.
///
/// Construction enforces structural well-formedness only. Whether every
/// vector has a strictly nearest class is checked separately by
/// [`BnnRep::validate_semantic`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BnnRep {
    n: usize,
    pos: BTreeSet<BoolVec>,
    neg: BTreeSet<BoolVec>,
}

impl BnnRep {
    pub fn new(
        n: usize,
        pos: impl IntoIterator<Item = BoolVec>,
        neg: impl IntoIterator<Item = BoolVec>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        let pos: BTreeSet<BoolVec> = pos.into_iter().collect();
        let neg: BTreeSet<BoolVec> = neg.into_iter().collect();
        for v in pos.iter().chain(&neg) {
            v.check_dim(n)?;
        }
        if let Some(v) = pos.intersection(&neg).next() {
            return Err(Error::NotDisjoint { vector: v.clone() });
        }
        if pos.is_empty() && neg.is_empty() {
            return Err(Error::EmptyRepresentation);
        }
        Ok(BnnRep { n, pos, neg })
    }

    /// Convenience constructor from bitstrings.
    pub fn parse_lists(n: usize, pos: &[&str], neg: &[&str]) -> Result<Self> {
        let parse = |s: &&str| {
            s.parse::<BoolVec>()
                .map_err(|e| Error::InvalidParameter(format!("bad bitstring {s:?}: {e}")))
        };
        let pos = pos.iter().map(parse).collect::<Result<Vec<_>>>()?;
        let neg = neg.iter().map(parse).collect::<Result<Vec<_>>>()?;
        Self::new(n, pos, neg)
    }

    /// Constant 1 on `n` variables: a single positive prototype.
    pub fn constant_true(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        Self::new(n, [BoolVec::zeros(n)], [])
    }

    /// Constant 0 on `n` variables: a single negative prototype.
    pub fn constant_false(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        Self::new(n, [], [BoolVec::zeros(n)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn positives(&self) -> &BTreeSet<BoolVec> {
        &self.pos
    }

    pub fn negatives(&self) -> &BTreeSet<BoolVec> {
        &self.neg
    }

    /// `|P| + |N|`.
    pub fn size(&self) -> usize {
        self.pos.len() + self.neg.len()
    }

    /// Prototypes in canonical order: `P` lexicographically, then `N`.
    pub fn prototypes(&self) -> impl Iterator<Item = (&BoolVec, bool)> {
        self.pos
            .iter()
            .map(|p| (p, true))
            .chain(self.neg.iter().map(|q| (q, false)))
    }

    /// Classifies `x`; `None` when the nearest positive and nearest negative
    /// prototypes are equidistant.
    pub fn classify(&self, x: &BoolVec) -> Option<bool> {
        let d_pos = self.pos.iter().map(|p| p.distance(x)).min();
        let d_neg = self.neg.iter().map(|q| q.distance(x)).min();
        match (d_pos, d_neg) {
            (Some(_), None) => Some(true),
            (None, Some(_)) => Some(false),
            (Some(a), Some(b)) if a < b => Some(true),
            (Some(a), Some(b)) if b < a => Some(false),
            _ => None,
        }
    }

    /// Function value at `x`, or [`Error::Tie`] when `x` is equidistant from
    /// both classes.
    pub fn evaluate(&self, x: &BoolVec) -> Result<bool> {
        x.check_dim(self.n)?;
        self.classify(x)
            .ok_or_else(|| Error::Tie { witness: x.clone() })
    }

    /// `(N, P)`: represents the complement of this function.
    pub fn negate(&self) -> BnnRep {
        BnnRep {
            n: self.n,
            pos: self.neg.clone(),
            neg: self.pos.clone(),
        }
    }

    /// Scans the whole cube for a vector equidistant from both classes.
    pub fn validate_semantic(&self, limits: &Limits) -> Result<Validity> {
        limits.check_exhaustive(self.n)?;
        let packed = Packed::new(self);
        let hit = (0..1u64 << self.n)
            .into_par_iter()
            .find_first(|&i| packed.classify(i).is_none());
        Ok(match hit {
            None => Validity::Valid,
            Some(i) => Validity::TieWitness(BoolVec::from_index(self.n, i)),
        })
    }

    /// Brute-force model set. Fails with the smallest tie witness if the
    /// pair is not semantically valid.
    pub fn to_truth_table(&self, limits: &Limits) -> Result<FunctionTable> {
        limits.check_exhaustive(self.n)?;
        let packed = Packed::new(self);
        FunctionTable::try_from_fn(self.n, limits, |i| packed.classify(i))
    }
}

/// Prototype indices for `n <= 64`, used by exhaustive sweeps.
pub(crate) struct Packed {
    pos: Vec<u64>,
    neg: Vec<u64>,
}

impl Packed {
    pub(crate) fn new(rep: &BnnRep) -> Self {
        let idx = |v: &BoolVec| v.to_index().expect("packed sweep requires n <= 64");
        Packed {
            pos: rep.pos.iter().map(idx).collect(),
            neg: rep.neg.iter().map(idx).collect(),
        }
    }

    #[inline]
    pub(crate) fn classify(&self, x: u64) -> Option<bool> {
        let d = |set: &[u64]| set.iter().map(|&p| (p ^ x).count_ones()).min();
        match (d(&self.pos), d(&self.neg)) {
            (Some(_), None) => Some(true),
            (None, Some(_)) => Some(false),
            (Some(a), Some(b)) if a < b => Some(true),
            (Some(a), Some(b)) if b < a => Some(false),
            _ => None,
        }
    }
}

/// The explicit model set of a Boolean function on at most `exh_max`
/// variables, stored as a `2^n`-bit table indexed lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FunctionTable {
    n: usize,
    bits: Vec<u64>,
}

impl FunctionTable {
    pub fn new(
        n: usize,
        models: impl IntoIterator<Item = BoolVec>,
        limits: &Limits,
    ) -> Result<Self> {
        let mut t = Self::empty(n, limits)?;
        for m in models {
            m.check_dim(n)?;
            t.insert_index(m.to_index().expect("n is bounded by the exhaustive cap"));
        }
        Ok(t)
    }

    /// The constant-0 table.
    pub fn empty(n: usize, limits: &Limits) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        limits.check_exhaustive(n)?;
        let words = (1usize << n).div_ceil(64);
        Ok(FunctionTable {
            n,
            bits: vec![0; words],
        })
    }

    /// Table of `f` evaluated on every cube index.
    pub fn from_fn(n: usize, limits: &Limits, f: impl Fn(u64) -> bool + Sync) -> Result<Self> {
        Self::try_from_fn(n, limits, |i| Some(f(i)))
    }

    /// Like [`FunctionTable::from_fn`]; `f` returning `None` aborts with a
    /// tie error at the smallest such index.
    pub(crate) fn try_from_fn(
        n: usize,
        limits: &Limits,
        f: impl Fn(u64) -> Option<bool> + Sync,
    ) -> Result<Self> {
        let mut t = Self::empty(n, limits)?;
        let total = 1u64 << n;
        let chunks: Vec<std::result::Result<u64, u64>> = (0..t.bits.len() as u64)
            .into_par_iter()
            .map(|w| {
                let mut word = 0u64;
                for b in 0..64u64 {
                    let i = w * 64 + b;
                    if i >= total {
                        break;
                    }
                    match f(i) {
                        Some(true) => word |= 1 << b,
                        Some(false) => {}
                        None => return Err(i),
                    }
                }
                Ok(word)
            })
            .collect();
        for (slot, chunk) in t.bits.iter_mut().zip(chunks) {
            match chunk {
                Ok(word) => *slot = word,
                Err(i) => {
                    return Err(Error::Tie {
                        witness: BoolVec::from_index(n, i),
                    })
                }
            }
        }
        Ok(t)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of models.
    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// True when every vector is a model.
    pub fn is_full(&self) -> bool {
        self.len() == 1usize << self.n
    }

    #[inline]
    pub fn contains_index(&self, i: u64) -> bool {
        self.bits[(i / 64) as usize] >> (i % 64) & 1 == 1
    }

    pub fn contains(&self, x: &BoolVec) -> bool {
        x.len() == self.n && self.contains_index(x.to_index().expect("bounded n"))
    }

    pub(crate) fn insert_index(&mut self, i: u64) {
        self.bits[(i / 64) as usize] |= 1 << (i % 64);
    }

    /// Model indices in increasing (lexicographic) order.
    pub fn model_indices(&self) -> impl Iterator<Item = u64> + '_ {
        self.bits.iter().enumerate().flat_map(|(w, &word)| {
            let base = w as u64 * 64;
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as u64;
                rest &= rest - 1;
                Some(base + b)
            })
        })
    }

    /// Models in lexicographic order.
    pub fn models(&self) -> impl Iterator<Item = BoolVec> + '_ {
        let n = self.n;
        self.model_indices().map(move |i| BoolVec::from_index(n, i))
    }

    /// The complementary table.
    pub fn complement(&self) -> FunctionTable {
        let total = 1u64 << self.n;
        let mut bits: Vec<u64> = self.bits.iter().map(|w| !w).collect();
        if total < 64 {
            bits[0] &= (1u64 << total) - 1;
        }
        FunctionTable { n: self.n, bits }
    }
}
