//! Conditioning and forgetting.
//!
//! Neither transformation has a polynomial algorithm on BNN inputs, so both
//! sweep the surviving sub-cube and recompile the result with
//! [`mods_to_bnn`]. The output is `(M, δ(M))`, not a minimal representation.

use std::collections::BTreeSet;

use crate::bits::BoolVec;
use crate::compile::mods_to_bnn;
use crate::error::{Error, Result};
use crate::queries::{self, Term};
use crate::rep::{BnnRep, FunctionTable, Limits};

/// A representation over the surviving variables, which are renumbered
/// `1..=n-k` in their original relative order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reindexed {
    pub rep: BnnRep,
    /// `(old, new)` variable pairs, both 1-based.
    pub var_map: Vec<(usize, usize)>,
}

fn surviving(n: usize, removed: &BTreeSet<usize>, limits: &Limits) -> Result<Vec<usize>> {
    if let Some(&var) = removed.iter().find(|&&v| v == 0 || v > n) {
        return Err(Error::VarOutOfRange { var, n });
    }
    let keep: Vec<usize> = (1..=n).filter(|v| !removed.contains(v)).collect();
    if keep.is_empty() {
        return Err(Error::DegenerateDimension);
    }
    limits.check_exhaustive(keep.len())?;
    Ok(keep)
}

fn reindexed(keep: &[usize], table: &FunctionTable) -> Reindexed {
    Reindexed {
        rep: mods_to_bnn(table),
        var_map: keep
            .iter()
            .enumerate()
            .map(|(i, &old)| (old, i + 1))
            .collect(),
    }
}

/// `f|T`: fixes the literals of `t` and drops those variables.
pub fn condition(rep: &BnnRep, t: &Term, limits: &Limits) -> Result<Reindexed> {
    let n = rep.n();
    t.check_range(n)?;
    let fixed: BTreeSet<usize> = t.literals().map(|l| l.var).collect();
    let keep = surviving(n, &fixed, limits)?;
    let mut base = BoolVec::zeros(n);
    for lit in t.literals() {
        base.set(lit.var - 1, lit.positive);
    }
    let r = keep.len();
    let lift = |i: u64| {
        let mut x = base.clone();
        for (pos, &var) in keep.iter().enumerate() {
            x.set(var - 1, i >> (r - 1 - pos) & 1 == 1);
        }
        x
    };
    let table = FunctionTable::try_from_fn(r, limits, |i| rep.classify(&lift(i)))?;
    Ok(reindexed(&keep, &table))
}

/// `∃vars. f`: a surviving assignment is a model iff some extension over
/// `vars` is a model of `f`.
///
/// Each surviving assignment `y` is decided by one implicant check on the
/// negation: `f` has a model extending `y` iff the term fixing `y` does not
/// imply `¬f`.
pub fn forget(rep: &BnnRep, vars: &BTreeSet<usize>, limits: &Limits) -> Result<Reindexed> {
    let n = rep.n();
    let keep = surviving(n, vars, limits)?;
    let negated = rep.negate();
    let r = keep.len();
    let table = FunctionTable::try_from_fn(r, limits, |i| {
        let lits = keep.iter().enumerate().map(|(pos, &var)| queries::Literal {
            var,
            positive: i >> (r - 1 - pos) & 1 == 1,
        });
        let term = Term::new(lits).expect("distinct variables");
        Some(!queries::im(&negated, &term).expect("variables in range"))
    })?;
    Ok(reindexed(&keep, &table))
}
