//! Queries on BNN representations.
//!
//! CO, VA, IM, CE and ME run in polynomial time. EQ, SE and CT are hard for
//! this language, so they are offered only as exhaustive oracles.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::bits::BoolVec;
use crate::error::{Error, Result};
use crate::rep::{BnnRep, Limits, Packed};

/// A variable (1-based) with a polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal {
            var,
            positive: true,
        }
    }

    pub fn neg(var: usize) -> Self {
        Literal {
            var,
            positive: false,
        }
    }

    pub fn negated(self) -> Self {
        Literal {
            var: self.var,
            positive: !self.positive,
        }
    }

    /// DIMACS-style signed integer.
    pub fn to_signed(self) -> i64 {
        if self.positive {
            self.var as i64
        } else {
            -(self.var as i64)
        }
    }

    pub fn from_signed(v: i64) -> Result<Self> {
        if v == 0 {
            return Err(Error::InvalidParameter("literal 0".into()));
        }
        Ok(Literal {
            var: v.unsigned_abs() as usize,
            positive: v > 0,
        })
    }
}

/// A consistent set of literals, keyed by variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
struct LiteralSet(BTreeMap<usize, bool>);

impl LiteralSet {
    fn new(literals: impl IntoIterator<Item = Literal>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for lit in literals {
            if lit.var == 0 {
                return Err(Error::InvalidParameter("variable index 0".into()));
            }
            if let Some(&prev) = map.get(&lit.var) {
                if prev != lit.positive {
                    return Err(Error::InconsistentLiterals { var: lit.var });
                }
            }
            map.insert(lit.var, lit.positive);
        }
        Ok(LiteralSet(map))
    }

    fn literals(&self) -> impl Iterator<Item = Literal> + '_ {
        self.0
            .iter()
            .map(|(&var, &positive)| Literal { var, positive })
    }

    fn negated(&self) -> LiteralSet {
        LiteralSet(self.0.iter().map(|(&v, &p)| (v, !p)).collect())
    }

    fn check_range(&self, n: usize) -> Result<()> {
        match self.0.keys().next_back() {
            Some(&var) if var > n => Err(Error::VarOutOfRange { var, n }),
            _ => Ok(()),
        }
    }

    fn parse(s: &str) -> Result<Self> {
        let mut lits = Vec::new();
        for tok in s.split_whitespace() {
            let v: i64 = tok
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad literal {tok:?}")))?;
            if v == 0 {
                continue;
            }
            lits.push(Literal::from_signed(v)?);
        }
        LiteralSet::new(lits)
    }
}

impl fmt::Display for LiteralSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for lit in self.literals() {
            write!(f, "{} ", lit.to_signed())?;
        }
        f.write_str("0")
    }
}

/// A consistent conjunction of literals. The empty term is the whole cube.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Term(LiteralSet);

/// A consistent disjunction of literals. The empty clause is unsatisfiable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Clause(LiteralSet);

macro_rules! literal_set_api {
    ($ty:ident) => {
        impl $ty {
            pub fn new(literals: impl IntoIterator<Item = Literal>) -> Result<Self> {
                LiteralSet::new(literals).map($ty)
            }

            /// Literals ordered by variable index.
            pub fn literals(&self) -> impl Iterator<Item = Literal> + '_ {
                self.0.literals()
            }

            pub fn len(&self) -> usize {
                self.0 .0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0 .0.is_empty()
            }

            /// Polarity of `var` if it occurs.
            pub fn polarity(&self, var: usize) -> Option<bool> {
                self.0 .0.get(&var).copied()
            }

            pub fn check_range(&self, n: usize) -> Result<()> {
                self.0.check_range(n)
            }
        }

        impl FromStr for $ty {
            type Err = Error;

            /// Whitespace-separated signed integers; `0` is ignored.
            fn from_str(s: &str) -> Result<Self> {
                LiteralSet::parse(s).map($ty)
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt(f)
            }
        }
    };
}

literal_set_api!(Term);
literal_set_api!(Clause);

impl Term {
    /// De Morgan: the clause whose negation is this term.
    pub fn negate(&self) -> Clause {
        Clause(self.0.negated())
    }

    /// Term fixing `x_1..x_k` to the given prefix.
    pub fn from_prefix(prefix: &[bool]) -> Term {
        Term(LiteralSet(
            prefix
                .iter()
                .enumerate()
                .map(|(i, &b)| (i + 1, b))
                .collect(),
        ))
    }

    /// True when `x` lies in the sub-cube of this term.
    pub fn satisfied_by(&self, x: &BoolVec) -> bool {
        self.literals().all(|l| x.get(l.var - 1) == l.positive)
    }
}

impl Clause {
    pub fn negate(&self) -> Term {
        Term(self.0.negated())
    }

    pub fn satisfied_by(&self, x: &BoolVec) -> bool {
        self.literals().any(|l| x.get(l.var - 1) == l.positive)
    }
}

/// Packed form of a term's sub-cube: which coordinates are fixed and to what.
struct SubCube {
    mask: Vec<u64>,
    fixed: Vec<u64>,
}

impl SubCube {
    fn new(n: usize, t: &Term) -> Result<Self> {
        t.check_range(n)?;
        let mut mask = BoolVec::zeros(n);
        let mut fixed = BoolVec::zeros(n);
        for lit in t.literals() {
            mask.set(lit.var - 1, true);
            fixed.set(lit.var - 1, lit.positive);
        }
        Ok(SubCube {
            mask: mask.words().to_vec(),
            fixed: fixed.words().to_vec(),
        })
    }

    fn from_prefix(n: usize, prefix: &[bool]) -> Self {
        let mask = BoolVec::with_ones(n, 0..prefix.len());
        let fixed = BoolVec::with_ones(
            n,
            prefix
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(i, _)| i),
        );
        SubCube {
            mask: mask.words().to_vec(),
            fixed: fixed.words().to_vec(),
        }
    }

    /// Number of fixed coordinates on which `q` disagrees with the term;
    /// zero iff `q` is in the sub-cube, and equal to `d(q, proj(q))`.
    fn violations(&self, q: &BoolVec) -> usize {
        q.words()
            .iter()
            .zip(&self.mask)
            .zip(&self.fixed)
            .map(|((w, m), y)| ((w ^ y) & m).count_ones() as usize)
            .sum()
    }

    fn project(&self, q: &BoolVec) -> BoolVec {
        let words = q
            .words()
            .iter()
            .zip(&self.mask)
            .zip(&self.fixed)
            .map(|((w, m), y)| (w & !m) | y)
            .collect();
        BoolVec::from_words(q.len(), words)
    }
}

/// Consistency: the function has a model iff `P` is non-empty.
pub fn co(rep: &BnnRep) -> bool {
    !rep.positives().is_empty()
}

/// Validity: the function is constant 1 iff `N` is empty.
pub fn va(rep: &BnnRep) -> bool {
    rep.negatives().is_empty()
}

/// Projection of `q` onto the sub-cube of `t`: fixed coordinates take the
/// term's values, the rest are copied from `q`.
pub fn project(q: &BoolVec, t: &Term) -> Result<BoolVec> {
    Ok(SubCube::new(q.len(), t)?.project(q))
}

/// Work counters for [`im_with_stats`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ImStats {
    /// Hamming distances computed between a positive prototype and a
    /// projected negative prototype.
    pub distance_evals: usize,
}

/// Implicant check: does `t` imply the function?
///
/// For each negative prototype `q`: fail if `q` lies in the sub-cube, else
/// project it to `q'` and fail unless some positive prototype is strictly
/// closer to `q'` than `q` is. Runs in `O(n |P| |N|)`. The representation
/// must be semantically valid.
pub fn im(rep: &BnnRep, t: &Term) -> Result<bool> {
    im_with_stats(rep, t).map(|(ans, _)| ans)
}

pub fn im_with_stats(rep: &BnnRep, t: &Term) -> Result<(bool, ImStats)> {
    let cube = SubCube::new(rep.n(), t)?;
    let mut stats = ImStats::default();
    let ans = im_subcube(rep, &cube, &mut stats);
    Ok((ans, stats))
}

fn im_subcube(rep: &BnnRep, cube: &SubCube, stats: &mut ImStats) -> bool {
    for q in rep.negatives() {
        let to_projection = cube.violations(q);
        if to_projection == 0 {
            return false;
        }
        let q_proj = cube.project(q);
        let mut nearest_pos = usize::MAX;
        for p in rep.positives() {
            stats.distance_evals += 1;
            nearest_pos = nearest_pos.min(p.distance(&q_proj));
        }
        if to_projection <= nearest_pos {
            return false;
        }
    }
    true
}

/// Clausal entailment: does the function imply `c`? Runs the implicant
/// check on `(N, P)` with the negated clause.
pub fn ce(rep: &BnnRep, c: &Clause) -> Result<bool> {
    im(&rep.negate(), &c.negate())
}

/// Lazy model enumeration in lexicographic order.
///
/// Depth-first over `x_1..x_n`, branch 0 before 1. A branch is built only if
/// the partial assignment does not make the function identically zero, which
/// is an implicant check on the negation. Every built branch therefore ends
/// in a model.
pub struct Models {
    negated: BnnRep,
    n: usize,
    path: Vec<bool>,
    next_branch: Vec<u8>,
    started: bool,
    im_calls: usize,
}

impl Models {
    pub fn new(rep: &BnnRep) -> Self {
        Models {
            negated: rep.negate(),
            n: rep.n(),
            path: Vec::with_capacity(rep.n()),
            next_branch: Vec::with_capacity(rep.n()),
            started: false,
            im_calls: 0,
        }
    }

    /// Implicant checks issued so far.
    pub fn im_calls(&self) -> usize {
        self.im_calls
    }

    fn identically_zero(&mut self) -> bool {
        self.im_calls += 1;
        let cube = SubCube::from_prefix(self.n, &self.path);
        im_subcube(&self.negated, &cube, &mut ImStats::default())
    }
}

impl Iterator for Models {
    type Item = BoolVec;

    fn next(&mut self) -> Option<BoolVec> {
        if !self.started {
            self.started = true;
            if self.identically_zero() {
                return None;
            }
            self.next_branch.push(0);
        }
        loop {
            if self.path.len() == self.n {
                let model = BoolVec::from_bits(&self.path).expect("n >= 1");
                self.path.pop();
                return Some(model);
            }
            let depth = self.path.len();
            let branch = self.next_branch.get_mut(depth)?;
            if *branch == 2 {
                self.next_branch.pop();
                self.path.pop()?;
                continue;
            }
            let value = *branch == 1;
            *branch += 1;
            self.path.push(value);
            if self.identically_zero() {
                self.path.pop();
            } else if self.path.len() < self.n {
                self.next_branch.push(0);
            }
        }
    }
}

/// Work counters for [`me_with_stats`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MeStats {
    pub im_calls: usize,
}

/// Models in lexicographic order, at most `limit` of them.
pub fn me(rep: &BnnRep, limit: Option<usize>) -> Vec<BoolVec> {
    me_with_stats(rep, limit).0
}

pub fn me_with_stats(rep: &BnnRep, limit: Option<usize>) -> (Vec<BoolVec>, MeStats) {
    let mut it = Models::new(rep);
    let models: Vec<BoolVec> = match limit {
        Some(k) => it.by_ref().take(k).collect(),
        None => it.by_ref().collect(),
    };
    let stats = MeStats {
        im_calls: it.im_calls(),
    };
    (models, stats)
}

/// Exact model count by enumeration; cost grows with the count.
pub fn ct_enumerate(rep: &BnnRep) -> u64 {
    Models::new(rep).count() as u64
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equivalence {
    Equivalent,
    /// Smallest vector on which the two functions differ.
    Counterexample(BoolVec),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Entailment {
    Entails,
    /// Smallest vector that is a model of the first and not of the second.
    Counterexample(BoolVec),
}

fn scan_pair(
    a: &BnnRep,
    b: &BnnRep,
    limits: &Limits,
    differs: impl Fn(bool, bool) -> bool + Sync,
) -> Result<Option<BoolVec>> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch {
            expected: a.n(),
            found: b.n(),
        });
    }
    limits.check_exhaustive(a.n())?;
    let (pa, pb) = (Packed::new(a), Packed::new(b));
    let hit = (0..1u64 << a.n()).into_par_iter().find_first(|&i| {
        match (pa.classify(i), pb.classify(i)) {
            (Some(x), Some(y)) => differs(x, y),
            _ => true,
        }
    });
    match hit {
        None => Ok(None),
        Some(i) => {
            let x = BoolVec::from_index(a.n(), i);
            a.evaluate(&x)?;
            b.evaluate(&x)?;
            Ok(Some(x))
        }
    }
}

/// Exhaustive equivalence oracle.
pub fn eq(a: &BnnRep, b: &BnnRep, limits: &Limits) -> Result<Equivalence> {
    Ok(match scan_pair(a, b, limits, |x, y| x != y)? {
        None => Equivalence::Equivalent,
        Some(x) => Equivalence::Counterexample(x),
    })
}

/// Exhaustive sentential entailment oracle: does `a` entail `b`?
pub fn se(a: &BnnRep, b: &BnnRep, limits: &Limits) -> Result<Entailment> {
    Ok(match scan_pair(a, b, limits, |x, y| x && !y)? {
        None => Entailment::Entails,
        Some(x) => Entailment::Counterexample(x),
    })
}
