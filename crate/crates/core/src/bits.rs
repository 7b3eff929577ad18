//! Boolean vectors and the Hamming geometry of the hypercube.
//!
//! Coordinates are stored packed, most significant bit first, so that the
//! derived ordering on equal-dimension vectors is the lexicographic order of
//! their bitstrings (`x_1` is the leftmost character).

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD: usize = 64;

/// A point of the Boolean hypercube of dimension `n >= 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoolVec {
    n: usize,
    words: Vec<u64>,
}

#[inline]
fn word_count(n: usize) -> usize {
    n.div_ceil(WORD)
}

#[inline]
fn mask_of(i: usize) -> u64 {
    1u64 << (WORD - 1 - i % WORD)
}

impl BoolVec {
    /// The all-zeros vector.
    ///
    /// # Panics
    ///
    /// Panics if `n == 0`.
    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "BoolVec dimension must be at least 1");
        BoolVec {
            n,
            words: vec![0; word_count(n)],
        }
    }

    pub fn ones(n: usize) -> Self {
        let mut v = Self::zeros(n);
        for w in v.words.iter_mut() {
            *w = u64::MAX;
        }
        v.clear_tail();
        v
    }

    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::ZeroDimension);
        }
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        Ok(v)
    }

    /// Builds the vector whose bitstring is the `n`-bit binary expansion of
    /// `index` (so `x_1` is the most significant bit). Enumerating
    /// `0..2^n` therefore visits the cube in lexicographic order.
    ///
    /// # Panics
    ///
    /// Panics if `n == 0` or `n > 64`.
    pub fn from_index(n: usize, index: u64) -> Self {
        assert!((1..=WORD).contains(&n), "from_index requires 1 <= n <= 64");
        BoolVec {
            n,
            words: vec![index << (WORD - n)],
        }
    }

    /// Inverse of [`BoolVec::from_index`]; `None` when `n > 64`.
    pub fn to_index(&self) -> Option<u64> {
        if self.n > WORD {
            return None;
        }
        Some(self.words[0] >> (WORD - self.n))
    }

    /// Vector with ones exactly at the given 0-based positions.
    pub fn with_ones(n: usize, positions: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(n);
        for i in positions {
            v.set(i, true);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Value of coordinate `i` (0-based, i.e. variable `x_{i+1}`).
    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.n);
        self.words[i / WORD] & mask_of(i) != 0
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.n);
        if value {
            self.words[i / WORD] |= mask_of(i);
        } else {
            self.words[i / WORD] &= !mask_of(i);
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.n);
        self.words[i / WORD] ^= mask_of(i);
    }

    pub fn flipped(&self, i: usize) -> Self {
        let mut v = self.clone();
        v.flip(i);
        v
    }

    /// Number of coordinates equal to one.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Hamming distance without a dimension check. Both vectors must have
    /// the same dimension.
    #[inline]
    pub fn distance(&self, other: &BoolVec) -> usize {
        debug_assert_eq!(self.n, other.n);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.n).map(move |i| self.get(i))
    }

    /// The `n` vectors at Hamming distance one.
    pub fn neighbors(&self) -> impl Iterator<Item = BoolVec> + '_ {
        (0..self.n).map(move |i| self.flipped(i))
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    pub(crate) fn from_words(n: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), word_count(n));
        let mut v = BoolVec { n, words };
        v.clear_tail();
        v
    }

    fn clear_tail(&mut self) {
        let used = self.n % WORD;
        if used != 0 {
            let last = self.words.len() - 1;
            self.words[last] &= !(u64::MAX >> used);
        }
    }

    pub(crate) fn check_dim(&self, n: usize) -> Result<()> {
        if self.n != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.n,
            });
        }
        Ok(())
    }
}

/// Number of coordinates in which `x` and `y` differ.
pub fn hamming(x: &BoolVec, y: &BoolVec) -> Result<usize> {
    y.check_dim(x.len())?;
    Ok(x.distance(y))
}

/// Number of coordinates of `x` equal to one.
pub fn weight(x: &BoolVec) -> usize {
    x.weight()
}

/// `δ(S)`: the vectors at Hamming distance exactly one from `set`.
///
/// Runs in `O(|S| n)` set operations; no exhaustive sweep over the cube.
pub fn neighborhood(set: &BTreeSet<BoolVec>, n: usize) -> Result<BTreeSet<BoolVec>> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    let mut out = BTreeSet::new();
    for s in set {
        s.check_dim(n)?;
        for y in s.neighbors() {
            if !set.contains(&y) {
                out.insert(y);
            }
        }
    }
    Ok(out)
}

impl fmt::Display for BoolVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.bits().map(|b| if b { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for BoolVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BoolVec({self})")
    }
}

/// Error returned when a string is not a non-empty bitstring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseBitsError {
    /// 0-based character offset of the offending character.
    pub offset: usize,
}

impl fmt::Display for ParseBitsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "expected a non-empty string of 0/1 at offset {}",
            self.offset
        )
    }
}

impl std::error::Error for ParseBitsError {}

impl FromStr for BoolVec {
    type Err = ParseBitsError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s.is_empty() {
            return Err(ParseBitsError { offset: 0 });
        }
        let mut v = BoolVec::zeros(s.len());
        for (i, c) in s.bytes().enumerate() {
            match c {
                b'0' => {}
                b'1' => v.set(i, true),
                _ => return Err(ParseBitsError { offset: i }),
            }
        }
        Ok(v)
    }
}
