//! Brute-force oracles shared by the integration tests. They work on plain
//! `Vec<bool>` vectors and never call the library's own evaluators.

#![allow(dead_code)]

use bnnkc_core::{BnnRep, BoolVec};

pub type Bits = Vec<bool>;

/// Every vector of `{0,1}^n`, in lexicographic order with `x_1` leading.
pub fn cube(n: usize) -> Vec<Bits> {
    (0..1u64 << n)
        .map(|i| (0..n).map(|j| (i >> (n - 1 - j)) & 1 == 1).collect())
        .collect()
}

pub fn dist(a: &[bool], b: &[bool]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

pub fn to_bits(v: &BoolVec) -> Bits {
    v.bits().collect()
}

pub fn to_vec(b: &[bool]) -> BoolVec {
    BoolVec::from_bits(b).expect("non-empty")
}

/// Nearest-neighbour classifier over explicit prototype lists.
#[derive(Debug, Clone)]
pub struct Oracle {
    pub n: usize,
    pub pos: Vec<Bits>,
    pub neg: Vec<Bits>,
}

impl Oracle {
    pub fn new(n: usize, pos: Vec<Bits>, neg: Vec<Bits>) -> Self {
        Oracle { n, pos, neg }
    }

    pub fn of(rep: &BnnRep) -> Self {
        Oracle {
            n: rep.n(),
            pos: rep.positives().iter().map(to_bits).collect(),
            neg: rep.negatives().iter().map(to_bits).collect(),
        }
    }

    /// `None` on a tie.
    pub fn classify(&self, x: &[bool]) -> Option<bool> {
        let near = |s: &[Bits]| s.iter().map(|p| dist(p, x)).min().unwrap_or(usize::MAX);
        let (dp, dn) = (near(&self.pos), near(&self.neg));
        match dp.cmp(&dn) {
            std::cmp::Ordering::Less => Some(true),
            std::cmp::Ordering::Greater => Some(false),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn is_valid(&self) -> bool {
        cube(self.n).iter().all(|x| self.classify(x).is_some())
    }

    /// Truth values over the cube in lexicographic order.
    pub fn table(&self) -> Vec<bool> {
        cube(self.n)
            .iter()
            .map(|x| self.classify(x).expect("valid representation"))
            .collect()
    }

    pub fn models(&self) -> Vec<Bits> {
        cube(self.n)
            .into_iter()
            .filter(|x| self.classify(x) == Some(true))
            .collect()
    }
}

/// Literals as `(var, polarity)` with 1-based variables.
pub fn term_holds(lits: &[(usize, bool)], x: &[bool]) -> bool {
    lits.iter().all(|&(v, p)| x[v - 1] == p)
}

pub fn clause_holds(lits: &[(usize, bool)], x: &[bool]) -> bool {
    lits.iter().any(|&(v, p)| x[v - 1] == p)
}

/// Every consistent literal set over `x_1..x_n`.
pub fn all_literal_sets(n: usize) -> Vec<Vec<(usize, bool)>> {
    (0..3usize.pow(n as u32))
        .map(|code| {
            let mut c = code;
            let mut lits = Vec::new();
            for v in 1..=n {
                match c % 3 {
                    1 => lits.push((v, true)),
                    2 => lits.push((v, false)),
                    _ => {}
                }
                c /= 3;
            }
            lits
        })
        .collect()
}

/// Connected components of the vectors where `f` equals `side`, under
/// Hamming-distance-1 adjacency: `(count, isolated)`.
pub fn side_components(n: usize, f: &[bool], side: bool) -> (usize, usize) {
    let size = 1usize << n;
    let mut seen = vec![false; size];
    let (mut count, mut isolated) = (0, 0);
    for start in 0..size {
        if f[start] != side || seen[start] {
            continue;
        }
        count += 1;
        let mut members = 0;
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(u) = stack.pop() {
            members += 1;
            for b in 0..n {
                let w = u ^ (1 << b);
                if f[w] == side && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if members == 1 {
            isolated += 1;
        }
    }
    (count, isolated)
}

/// Smallest labelled prototype set whose classifier equals `f` on every
/// vector, by enumerating all 3^(2^n) labellings grouped by size.
pub fn min_size(n: usize, f: &[bool]) -> usize {
    let vecs = cube(n);
    let size = vecs.len();
    let mut best = usize::MAX;
    for code in 0..3usize.pow(size as u32) {
        let mut c = code;
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for v in &vecs {
            match c % 3 {
                1 => pos.push(v.clone()),
                2 => neg.push(v.clone()),
                _ => {}
            }
            c /= 3;
        }
        let k = pos.len() + neg.len();
        if k == 0 || k >= best {
            continue;
        }
        let o = Oracle::new(n, pos, neg);
        if vecs
            .iter()
            .zip(f)
            .all(|(x, &want)| o.classify(x) == Some(want))
        {
            best = k;
        }
    }
    best
}

/// Independent sets of exactly `k` vertices in a graph on `1..=v`.
pub fn count_independent(v: usize, edges: &[(usize, usize)], k: usize) -> u64 {
    (0..1u32 << v)
        .filter(|s| s.count_ones() as usize == k)
        .filter(|s| {
            edges
                .iter()
                .all(|&(a, b)| s & (1 << (a - 1)) == 0 || s & (1 << (b - 1)) == 0)
        })
        .count() as u64
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
