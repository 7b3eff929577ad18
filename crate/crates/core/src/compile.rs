//! Compilers between BNN and other languages of the map.
//!
//! [`mods_to_bnn`] turns a model list into `(M, δ(M))`. [`bnn_to_bdd`] builds
//! an unrestricted binary decision diagram from a triangle of pairwise
//! comparison gadgets, `n(n+1)` decision nodes per gadget and `k(k-1)/2`
//! gadgets for `k` prototypes.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::bits::BoolVec;
use crate::error::{Error, Result};
use crate::rep::{BnnRep, FunctionTable};

/// Compiles an explicit model set into `(M, δ(M))`.
///
/// The constants get single-prototype representations: `({0..0}, ∅)` when
/// every vector is a model and `(∅, {0..0})` when none is.
pub fn mods_to_bnn(m: &FunctionTable) -> BnnRep {
    let n = m.n();
    if m.is_empty() {
        return BnnRep::constant_false(n).expect("n >= 1");
    }
    let mut pos = BTreeSet::new();
    let mut neg = BTreeSet::new();
    for i in m.model_indices() {
        pos.insert(BoolVec::from_index(n, i));
        for b in 0..n {
            let j = i ^ (1 << b);
            if !m.contains_index(j) {
                neg.insert(BoolVec::from_index(n, j));
            }
        }
    }
    if neg.is_empty() {
        let first = pos.into_iter().next().expect("non-empty");
        return BnnRep::new(n, [first], []).expect("single prototype");
    }
    BnnRep::new(n, pos, neg).expect("models and their neighborhood are disjoint")
}

/// Target of a decision-node edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Edge {
    Terminal(bool),
    Node(usize),
}

/// A decision node testing variable `var` (1-based); `lo` is taken when the
/// variable is 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BddNode {
    pub var: usize,
    pub lo: Edge,
    pub hi: Edge,
}

/// An unrestricted binary decision diagram. Variables may repeat along a
/// path.
///
/// Node ids are indices into the node table and every edge points to a
/// strictly larger id, so the table is in topological order and the root,
/// if it is a node, is node 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bdd {
    n: usize,
    nodes: Vec<BddNode>,
    root: Edge,
}

impl Bdd {
    pub fn new(n: usize, nodes: Vec<BddNode>, root: Edge) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        let malformed = |msg: String| Err(Error::MalformedBdd(msg));
        for (id, node) in nodes.iter().enumerate() {
            if node.var == 0 || node.var > n {
                return malformed(format!(
                    "node {id} tests variable {} outside 1..={n}",
                    node.var
                ));
            }
            for child in [node.lo, node.hi] {
                if let Edge::Node(c) = child {
                    if c <= id || c >= nodes.len() {
                        return malformed(format!(
                            "node {id} has child {c} out of topological order"
                        ));
                    }
                }
            }
        }
        match root {
            Edge::Terminal(_) if !nodes.is_empty() => {
                return malformed("terminal root with unreachable nodes".into())
            }
            Edge::Node(r) if r >= nodes.len() => {
                return malformed(format!("root {r} does not exist"))
            }
            _ => {}
        }
        let bdd = Bdd { n, nodes, root };
        let reached = bdd.reachable();
        if let Some(id) = reached.iter().position(|&r| !r) {
            return malformed(format!("node {id} is unreachable from the root"));
        }
        Ok(bdd)
    }

    /// A diagram with no decision nodes.
    pub fn terminal(n: usize, value: bool) -> Result<Self> {
        Self::new(n, Vec::new(), Edge::Terminal(value))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> &[BddNode] {
        &self.nodes
    }

    pub fn root(&self) -> Edge {
        self.root
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.nodes.len()];
        if let Edge::Node(r) = self.root {
            seen[r] = true;
        }
        // Ids are topological, so one forward pass suffices.
        for id in 0..self.nodes.len() {
            if !seen[id] {
                continue;
            }
            let node = self.nodes[id];
            for child in [node.lo, node.hi] {
                if let Edge::Node(c) = child {
                    seen[c] = true;
                }
            }
        }
        seen
    }

    /// Follows the path selected by `x` to a terminal.
    pub fn eval(&self, x: &BoolVec) -> Result<bool> {
        x.check_dim(self.n)?;
        let mut at = self.root;
        loop {
            match at {
                Edge::Terminal(v) => return Ok(v),
                Edge::Node(id) => {
                    let node = self.nodes[id];
                    at = if x.get(node.var - 1) {
                        node.hi
                    } else {
                        node.lo
                    };
                }
            }
        }
    }

    /// Decision nodes reachable from the root; terminals are not counted.
    pub fn node_count(&self) -> usize {
        self.reachable().into_iter().filter(|&r| r).count()
    }
}

/// Decision nodes in one comparison gadget over `n` variables.
pub fn gadget_size(n: usize) -> usize {
    n * (n + 1)
}

/// Emits the nodes of a gadget deciding whether `x` is at least as close to
/// `pi` as to `pj`.
///
/// The first phase is a triangle of `n` levels counting `a = d(x, pi)`. The
/// second phase tracks `D = a - b` where `b` counts mismatches against `pj`
/// after `s` tests: it leaves for `exit_i` as soon as `b >= a` and for
/// `exit_j` as soon as `b + (n - s) < a`. Undecided states satisfy
/// `1 <= D <= n - s`, which bounds the phase to `n(n+1)/2` nodes.
fn emit_gadget(
    pi: &BoolVec,
    pj: &BoolVec,
    base: usize,
    exit_i: Edge,
    exit_j: Edge,
) -> Vec<BddNode> {
    let n = pi.len();
    let phase1 = n * (n + 1) / 2;
    let first = |t: usize, c: usize| Edge::Node(base + (t - 1) * t / 2 + c);
    let second = |s: usize, d: usize| {
        Edge::Node(base + phase1 + s * n - s * (s.saturating_sub(1)) / 2 + d - 1)
    };
    let entry = |a: usize| if a == 0 { exit_i } else { second(0, a) };
    let decide = |var: usize, proto_bit: bool, on_match: Edge, on_miss: Edge| {
        let (lo, hi) = if proto_bit {
            (on_miss, on_match)
        } else {
            (on_match, on_miss)
        };
        BddNode { var, lo, hi }
    };

    let mut nodes = Vec::with_capacity(gadget_size(n));
    for t in 1..=n {
        for c in 0..t {
            let (on_match, on_miss) = if t < n {
                (first(t + 1, c), first(t + 1, c + 1))
            } else {
                (entry(c), entry(c + 1))
            };
            nodes.push(decide(t, pi.get(t - 1), on_match, on_miss));
        }
    }
    for s in 0..n {
        for d in 1..=n - s {
            let on_match = if d > n - (s + 1) {
                exit_j
            } else {
                second(s + 1, d)
            };
            let on_miss = if d == 1 { exit_i } else { second(s + 1, d - 1) };
            nodes.push(decide(s + 1, pj.get(s), on_match, on_miss));
        }
    }
    debug_assert_eq!(nodes.len(), gadget_size(n));
    nodes
}

/// A standalone gadget: `T1` when `d(x, pi) <= d(x, pj)`, else `T0`.
pub fn comparison_gadget(pi: &BoolVec, pj: &BoolVec) -> Result<Bdd> {
    pj.check_dim(pi.len())?;
    let nodes = emit_gadget(pi, pj, 0, Edge::Terminal(true), Edge::Terminal(false));
    Bdd::new(pi.len(), nodes, Edge::Node(0))
}

/// Compiles a BNN representation into a BDD with at most
/// `k(k-1)/2 · ((n+1)^2 - 1)` decision nodes.
///
/// Prototypes are numbered `1..=k` in canonical order (`P`, then `N`).
/// Level `l` of the triangle compares prototype `l+1` with every surviving
/// champion `i <= l`; ties go to the lower index. After level `k-1` the
/// champion's class is the output. Ties between classes are resolved by the
/// same rule, so an invalid pair still yields a diagram.
pub fn bnn_to_bdd(rep: &BnnRep) -> Bdd {
    let n = rep.n();
    let protos: Vec<(&BoolVec, bool)> = rep.prototypes().collect();
    let k = protos.len();
    if k == 1 {
        return Bdd::terminal(n, protos[0].1).expect("n >= 1");
    }
    let size = gadget_size(n);
    let index = |level: usize, i: usize| (level - 1) * level / 2 + (i - 1);
    let gadgets: Vec<(usize, usize)> = (1..k)
        .flat_map(|level| (1..=level).map(move |i| (level, i)))
        .collect();
    let chunks: Vec<Vec<BddNode>> = gadgets
        .par_iter()
        .map(|&(level, i)| {
            let route = |w: usize| {
                if level == k - 1 {
                    Edge::Terminal(protos[w - 1].1)
                } else {
                    Edge::Node(index(level + 1, w) * size)
                }
            };
            let base = index(level, i) * size;
            emit_gadget(
                protos[i - 1].0,
                protos[level].0,
                base,
                route(i),
                route(level + 1),
            )
        })
        .collect();
    let nodes = chunks.concat();
    Bdd::new(n, nodes, Edge::Node(0)).expect("triangle construction is well formed")
}

/// The bound `k(k-1)/2 · ((n+1)^2 - 1)` on [`bnn_to_bdd`] output size.
pub fn bdd_size_bound(n: usize, k: usize) -> usize {
    k * k.saturating_sub(1) / 2 * ((n + 1) * (n + 1) - 1)
}
