//! Generators for witness families and hardness reductions.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::bits::BoolVec;
use crate::error::{Error, Result};
use crate::queries::Literal;
use crate::rep::{BnnRep, FunctionTable, Limits};

/// Parity: odd-weight vectors positive, even-weight vectors negative. All
/// `2^n` vectors are isolated, so every one must be a prototype.
pub fn gen_parity(n: usize, limits: &Limits) -> Result<BnnRep> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    limits.check_exhaustive(n)?;
    let (pos, neg): (Vec<BoolVec>, Vec<BoolVec>) = (0..1u64 << n)
        .map(|i| BoolVec::from_index(n, i))
        .partition(|x| x.weight() % 2 == 1);
    BnnRep::new(n, pos, neg)
}

/// Non-strict majority `|x| >= ceil(n/2)`.
///
/// Odd `n`: `({1..1}, {0..0})`. Even `n = 2k`: the `k+1` vectors of weight
/// `2k-1` whose zero sits at one of positions `1..=k+1`, against `{0..0}`,
/// for `k+2` prototypes. Any weight-`k` vector has a zero among positions
/// `1..=k+1` and so lies at distance `k-1` from a positive prototype.
pub fn gen_majority(n: usize) -> Result<BnnRep> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    if n % 2 == 1 {
        return BnnRep::new(n, [BoolVec::ones(n)], [BoolVec::zeros(n)]);
    }
    let k = n / 2;
    let pos = (0..=k).map(|z| BoolVec::ones(n).flipped(z));
    BnnRep::new(n, pos, [BoolVec::zeros(n)])
}

/// Threshold `TH_n^t`: models are the vectors of weight at least `t`.
pub fn gen_threshold(n: usize, t: usize, limits: &Limits) -> Result<FunctionTable> {
    if t == 0 || t > n {
        return Err(Error::InvalidParameter(format!(
            "threshold requires 1 <= t <= n, got n={n} t={t}"
        )));
    }
    FunctionTable::from_fn(n, limits, |i| i.count_ones() as usize >= t)
}

/// `⋀ (x_i ⊕ y_i)` over variables `x_1..x_n, y_1..y_n`. Every model is
/// isolated.
pub fn gen_xor_match(n: usize, limits: &Limits) -> Result<FunctionTable> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    limits.check_exhaustive(2 * n)?;
    let low = (1u64 << n) - 1;
    FunctionTable::from_fn(2 * n, limits, |i| (i >> n) ^ (i & low) == low)
}

/// The CNF `⋀ (x_i ∨ y_i) ∧ (¬x_i ∨ ¬y_i)` of [`gen_xor_match`], with `y_i`
/// numbered `n + i`.
pub fn xor_match_cnf(n: usize) -> Result<Cnf3> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    let clauses = (1..=n)
        .flat_map(|i| {
            let y = n + i;
            [
                vec![Literal::pos(i), Literal::pos(y)],
                vec![Literal::neg(i), Literal::neg(y)],
            ]
        })
        .collect();
    Cnf3::new(2 * n, clauses)
}

/// Exactly-half on `2n` variables: models are the weight-`n` vectors, all
/// isolated.
pub fn gen_exact_half(n: usize, limits: &Limits) -> Result<FunctionTable> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    limits.check_exhaustive(2 * n)?;
    FunctionTable::from_fn(2 * n, limits, |i| i.count_ones() as usize == n)
}

/// A simple undirected graph on vertices `1..=vertices`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    vertices: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    /// Edges are normalized to `(min, max)`; duplicates collapse.
    pub fn new(vertices: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at vertex {u}")));
            }
            for w in [u, v] {
                if w == 0 || w > vertices {
                    return Err(Error::InvalidParameter(format!(
                        "vertex {w} outside 1..={vertices}"
                    )));
                }
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Graph {
            vertices,
            edges: set,
        })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn cycle(n: usize) -> Result<Self> {
        Self::new(n, (1..=n).map(|i| (i, i % n + 1)))
    }

    pub fn path(n: usize) -> Result<Self> {
        Self::new(n, (1..n).map(|i| (i, i + 1)))
    }

    pub fn complete(n: usize) -> Result<Self> {
        Self::new(n, (1..=n).tuple_combinations())
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, [])
    }

    /// Vertex bitmask of each vertex's neighbors (bit `v-1` for vertex `v`).
    fn adjacency(&self) -> Vec<u64> {
        let mut adj = vec![0u64; self.vertices];
        for &(u, v) in &self.edges {
            adj[u - 1] |= 1 << (v - 1);
            adj[v - 1] |= 1 << (u - 1);
        }
        adj
    }
}

/// Largest graph accepted by [`count_half_is`].
pub const HALF_IS_MAX_VERTICES: usize = 24;

/// Number of independent sets with exactly half of the vertices.
pub fn count_half_is(g: &Graph) -> Result<u64> {
    let nv = g.vertices();
    if nv > HALF_IS_MAX_VERTICES {
        return Err(Error::VertexCountTooLarge {
            vertices: nv,
            max: HALF_IS_MAX_VERTICES,
        });
    }
    if nv % 2 == 1 {
        return Err(Error::OddVertexCount(nv));
    }
    let adj = g.adjacency();
    let count = (0..nv)
        .combinations(nv / 2)
        .filter(|set| {
            let mask: u64 = set.iter().map(|&v| 1u64 << v).sum();
            set.iter().all(|&v| adj[v] & mask == 0)
        })
        .count();
    Ok(count as u64)
}

/// The equivalence-hardness pair `(F, H)` for a graph on `2k` vertices,
/// `k > 2`.
///
/// `F` has every weight-`(2k-1)` vector positive and the zero vector
/// negative; it represents `|x| >= k`. `H` has the all-ones vector plus, for
/// each edge `{i, j}`, the vector that is zero exactly at `i` and `j`
/// positive, and all weight-1 vectors negative. The two agree off the middle
/// level, and a weight-`k` vector is a non-model of `H` exactly when its
/// zero set is an independent set.
pub fn gen_hsis_pair(g: &Graph) -> Result<(BnnRep, BnnRep)> {
    let nv = g.vertices();
    if nv % 2 == 1 {
        return Err(Error::OddVertexCount(nv));
    }
    let k = nv / 2;
    if k <= 2 {
        return Err(Error::InvalidParameter(format!(
            "reduction needs k > 2 (at least 6 vertices), got {nv} vertices"
        )));
    }
    let ones = BoolVec::ones(nv);
    let f = BnnRep::new(nv, (0..nv).map(|z| ones.flipped(z)), [BoolVec::zeros(nv)])?;
    let edge_vectors = g
        .edges()
        .iter()
        .map(|&(u, v)| ones.flipped(u - 1).flipped(v - 1));
    let h = BnnRep::new(
        nv,
        std::iter::once(ones.clone()).chain(edge_vectors),
        (0..nv).map(|i| BoolVec::with_ones(nv, [i])),
    )?;
    Ok((f, h))
}

/// A CNF whose clauses have between one and three literals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cnf3 {
    num_vars: usize,
    clauses: Vec<Vec<Literal>>,
}

impl Cnf3 {
    pub fn new(num_vars: usize, clauses: Vec<Vec<Literal>>) -> Result<Self> {
        for (ci, clause) in clauses.iter().enumerate() {
            if clause.is_empty() || clause.len() > 3 {
                return Err(Error::InvalidParameter(format!(
                    "clause {} has {} literals; expected 1..=3",
                    ci + 1,
                    clause.len()
                )));
            }
            for lit in clause {
                if lit.var == 0 || lit.var > num_vars {
                    return Err(Error::VarOutOfRange {
                        var: lit.var,
                        n: num_vars,
                    });
                }
                if clause.contains(&lit.negated()) {
                    return Err(Error::InconsistentLiterals { var: lit.var });
                }
            }
        }
        Ok(Cnf3 { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<Literal>] {
        &self.clauses
    }

    /// Truth value under `assignment` (bit `v-1` is variable `v`).
    pub fn satisfied_by(&self, assignment: u64) -> bool {
        self.clauses.iter().all(|c| {
            c.iter()
                .any(|l| (assignment >> (l.var - 1) & 1 == 1) == l.positive)
        })
    }
}

/// Reduction from 3-SAT to half-size independent set.
///
/// Each clause becomes a triangle (shorter clauses repeat a literal on
/// distinct vertices), vertices carrying complementary literals are joined,
/// and `m` isolated vertices are appended. The formula is satisfiable iff
/// the `4m`-vertex graph has an independent set of size `2m`.
pub fn gen_hsis_from_3sat(phi: &Cnf3) -> Result<Graph> {
    let m = phi.clauses().len();
    if m == 0 {
        return Err(Error::EmptyFormula);
    }
    let labels: Vec<Literal> = phi
        .clauses()
        .iter()
        .flat_map(|c| (0..3).map(move |r| c[r % c.len()]))
        .collect();
    let mut edges = Vec::new();
    for c in 0..m {
        let base = 3 * c + 1;
        edges.extend([(base, base + 1), (base, base + 2), (base + 1, base + 2)]);
    }
    for (u, v) in (0..labels.len()).tuple_combinations() {
        if labels[u] == labels[v].negated() {
            edges.push((u + 1, v + 1));
        }
    }
    Graph::new(4 * m, edges)
}
