//! Size lower bounds from connected components of the hypercube, and an
//! exhaustive search for minimum-size representations at tiny dimensions.
//!
//! Every BNN representation of `f` places at least one positive prototype in
//! each connected component of the subgraph induced by the models, and one
//! negative prototype in each component induced by the non-models. An
//! isolated vector is its own component and so must be a prototype.

use std::collections::VecDeque;

use itertools::Itertools;

use crate::bits::BoolVec;
use crate::error::{Error, Result};
use crate::rep::{BnnRep, FunctionTable, Limits, Packed};

/// Components of one side (models or non-models).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SideReport {
    /// Smallest vector of each component, in increasing order.
    pub representatives: Vec<BoolVec>,
    /// Component sizes, aligned with `representatives`.
    pub sizes: Vec<usize>,
    /// Members of singleton components.
    pub isolated: Vec<BoolVec>,
}

impl SideReport {
    pub fn count(&self) -> usize {
        self.representatives.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentReport {
    pub positive: SideReport,
    pub negative: SideReport,
}

impl ComponentReport {
    /// Lower bound on the size of any BNN representation.
    pub fn lower_bound(&self) -> usize {
        self.positive.count() + self.negative.count()
    }
}

/// Connected components of the models and of the non-models in the
/// hypercube graph.
pub fn components(f: &FunctionTable) -> ComponentReport {
    let n = f.n();
    let total = 1usize << n;
    let mut seen = vec![false; total];
    let mut positive = SideReport::default();
    let mut negative = SideReport::default();
    let mut queue = VecDeque::new();
    for start in 0..total {
        if seen[start] {
            continue;
        }
        let side = f.contains_index(start as u64);
        seen[start] = true;
        queue.push_back(start);
        let mut size = 0;
        while let Some(v) = queue.pop_front() {
            size += 1;
            for b in 0..n {
                let w = v ^ (1 << b);
                if !seen[w] && f.contains_index(w as u64) == side {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        let report = if side { &mut positive } else { &mut negative };
        let rep = BoolVec::from_index(n, start as u64);
        if size == 1 {
            report.isolated.push(rep.clone());
        }
        report.representatives.push(rep);
        report.sizes.push(size);
    }
    ComponentReport { positive, negative }
}

/// Positive plus negative component count.
pub fn bnn_lower_bound(f: &FunctionTable) -> usize {
    components(f).lower_bound()
}

/// Largest dimension accepted by [`min_bnn`].
pub const MIN_BNN_MAX_N: usize = 4;

/// Exhaustive search for a smallest representation of `f`.
///
/// A prototype always classifies to its own class, so a candidate is fully
/// determined by its prototype set `S` (with `P = S ∩ M`, `N = S \ M`).
/// Candidates are visited by size and then lexicographically by their
/// sorted prototype list; the first one that represents `f` without ties is
/// returned. The search starts at the component lower bound.
pub fn min_bnn(f: &FunctionTable) -> Result<(usize, BnnRep)> {
    let n = f.n();
    if n > MIN_BNN_MAX_N {
        return Err(Error::DimensionTooLarge {
            n,
            max: MIN_BNN_MAX_N,
        });
    }
    let total = 1u64 << n;
    let start = bnn_lower_bound(f).max(1);
    let limits = Limits::default();
    for size in start..=total as usize {
        for subset in (0..total).combinations(size) {
            let (pos, neg): (Vec<u64>, Vec<u64>) =
                subset.iter().partition(|&&i| f.contains_index(i));
            let rep = BnnRep::new(
                n,
                pos.iter().map(|&i| BoolVec::from_index(n, i)),
                neg.iter().map(|&i| BoolVec::from_index(n, i)),
            )?;
            let packed = Packed::new(&rep);
            if (0..total).all(|x| packed.classify(x) == Some(f.contains_index(x))) {
                debug_assert_eq!(rep.to_truth_table(&limits).as_ref(), Ok(f));
                return Ok((size, rep));
            }
        }
    }
    unreachable!("(M, δ(M)) always represents f")
}
