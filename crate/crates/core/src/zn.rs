//! Exact set algebra over Z_n.
//!
//! A [`CyclicSet`] is a bit-vector of length `n`; every set operation works a
//! word at a time. The sumset is a shift-OR: for each element `x` of the
//! smaller operand the other operand is rotated by `x` and OR-ed in, which
//! costs `O(min(|A|, |B|) * n / 64)` word operations.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::bits;
use crate::error::{Error, Result};

/// A subset of the cyclic group Z_n.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SetEncoding", into = "SetEncoding")]
pub struct CyclicSet {
    n: usize,
    words: Vec<u64>,
}

/// JSON exchange form: `{"n": 8, "elements": [3, 4, 5]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetEncoding {
    pub n: usize,
    pub elements: Vec<usize>,
}

impl TryFrom<SetEncoding> for CyclicSet {
    type Error = Error;

    fn try_from(enc: SetEncoding) -> Result<Self> {
        CyclicSet::new(enc.n, enc.elements)
    }
}

impl From<CyclicSet> for SetEncoding {
    fn from(set: CyclicSet) -> Self {
        SetEncoding {
            n: set.n,
            elements: set.elements(),
        }
    }
}

/// The three defining predicates plus cardinality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetProperties {
    pub symmetric: bool,
    pub sum_free: bool,
    pub complete: bool,
    pub size: usize,
}

impl CyclicSet {
    /// The empty subset of Z_n.
    ///
    /// Panics if `n == 0`; use [`CyclicSet::new`] for validated input.
    pub fn empty(n: usize) -> Self {
        assert!(n >= 1, "modulus must be at least 1");
        CyclicSet {
            n,
            words: vec![0; bits::words_for(n)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        s.words.fill(u64::MAX);
        s.trim();
        s
    }

    /// Builds a set from elements that must all lie in `[0, n)`.
    pub fn new(n: usize, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroModulus);
        }
        let mut s = Self::empty(n);
        for x in elements {
            if x >= n {
                return Err(Error::ElementOutOfRange {
                    element: x,
                    modulus: n,
                });
            }
            s.insert(x);
        }
        Ok(s)
    }

    /// Builds a set from arbitrary integers, reducing each modulo `n`.
    pub fn from_residues(n: usize, elements: impl IntoIterator<Item = i64>) -> Self {
        let mut s = Self::empty(n);
        for x in elements {
            s.insert(x.rem_euclid(n as i64) as usize);
        }
        s
    }

    /// `{a, a+1, ..., b}` reduced modulo `n`.
    pub fn interval(n: usize, a: i64, b: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroModulus);
        }
        if a > b {
            return Err(Error::ReversedInterval { a, b });
        }
        if (b - a) as u128 >= n as u128 {
            return Err(Error::IntervalCoversGroup { n, a, b });
        }
        Ok(Self::from_residues(n, a..=b))
    }

    pub fn modulus(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        bits::count(&self.words)
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn contains(&self, x: usize) -> bool {
        x < self.n && bits::get(&self.words, x)
    }

    /// Inserts `x mod n`.
    pub fn insert(&mut self, x: usize) {
        bits::set(&mut self.words, x % self.n);
    }

    pub fn remove(&mut self, x: usize) {
        bits::clear(&mut self.words, x % self.n);
    }

    /// Elements in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        bits::ones(&self.words)
    }

    pub fn elements(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn min(&self) -> Option<usize> {
        self.iter().next()
    }

    fn trim(&mut self) {
        if let Some(last) = self.words.last_mut() {
            *last &= bits::tail_mask(self.n);
        }
    }

    fn same_modulus(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::ModulusMismatch {
                left: self.n,
                right: other.n,
            })
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Result<Self> {
        self.same_modulus(other)?;
        let mut out = CyclicSet {
            n: self.n,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        };
        out.trim();
        Ok(out)
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> Self {
        let mut out = CyclicSet {
            n: self.n,
            words: self.words.iter().map(|w| !w).collect(),
        };
        out.trim();
        out
    }

    pub fn is_subset(&self, other: &Self) -> Result<bool> {
        self.same_modulus(other)?;
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0))
    }

    pub fn is_disjoint(&self, other: &Self) -> Result<bool> {
        self.same_modulus(other)?;
        Ok(self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0))
    }

    /// ORs `self + shift` into `acc`.
    fn or_rotated_into(&self, shift: usize, acc: &mut [u64]) {
        let shift = shift % self.n;
        bits::or_shl(acc, &self.words, shift, self.n);
        if shift != 0 {
            bits::or_shr(acc, &self.words, self.n - shift);
        }
    }

    /// `{x + shift | x in self}`.
    pub fn translate(&self, shift: usize) -> Self {
        let mut out = Self::empty(self.n);
        self.or_rotated_into(shift, &mut out.words);
        out
    }

    /// Exact modular sumset `A + B`.
    pub fn sumset(&self, other: &Self) -> Result<Self> {
        self.same_modulus(other)?;
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = Self::empty(self.n);
        for x in small.iter() {
            big.or_rotated_into(x, &mut out.words);
        }
        Ok(out)
    }

    /// `A + A`.
    pub fn double(&self) -> Self {
        self.sumset(self).expect("same modulus")
    }

    pub fn negate(&self) -> Self {
        let mut out = Self::empty(self.n);
        for x in self.iter() {
            out.insert((self.n - x) % self.n);
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.negate()
    }

    pub fn is_sum_free(&self) -> bool {
        self.double().is_disjoint(self).expect("same modulus")
    }

    pub fn is_complete(&self) -> bool {
        self.double().union(self).expect("same modulus").is_full()
    }

    pub fn is_full(&self) -> bool {
        *self == Self::full(self.n)
    }

    /// Complete and sum-free at once: `A + A` is exactly the complement of `A`.
    pub fn is_complete_sum_free(&self) -> bool {
        self.double() == self.complement()
    }

    pub fn properties(&self) -> SetProperties {
        let double = self.double();
        SetProperties {
            symmetric: self.is_symmetric(),
            sum_free: double.is_disjoint(self).expect("same modulus"),
            complete: double.union(self).expect("same modulus").is_full(),
            size: self.len(),
        }
    }

    fn check_half_range(&self, g1: &Self) -> Result<()> {
        self.same_modulus(g1)?;
        if !self.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        if !g1.union(&g1.negate())?.is_full() {
            return Err(Error::NotHalfCover { n: self.n });
        }
        Ok(())
    }

    /// Sum-freeness of a symmetric set, checking only sums of pairs from `G1`,
    /// where `G1 ∪ -G1 = Z_n`.
    pub fn half_range_sum_free(&self, g1: &Self) -> Result<bool> {
        self.check_half_range(g1)?;
        let low = self.intersection(g1)?;
        low.double().is_disjoint(self)
    }

    /// Completeness of a symmetric set, checking only `G1 \ A ⊆ A + A`.
    pub fn half_range_complete(&self, g1: &Self) -> Result<bool> {
        self.check_half_range(g1)?;
        g1.difference(self)?.is_subset(&self.double())
    }

    /// `{d * x mod n | x in self}` for a unit `d`.
    pub fn dilate(&self, d: u64) -> Result<Self> {
        let n = self.n as u64;
        let u = d % n;
        if u.gcd(&n) != 1 {
            return Err(Error::NotAUnit { d, n: self.n });
        }
        let mut out = Self::empty(self.n);
        for x in self.iter() {
            out.insert(((x as u128 * u as u128) % n as u128) as usize);
        }
        Ok(out)
    }

    /// All distinct dilations, sorted.
    pub fn dilation_orbit(&self) -> Vec<Self> {
        let mut orbit: Vec<Self> = units(self.n)
            .into_iter()
            .map(|u| self.dilate(u as u64).expect("unit"))
            .collect();
        orbit.sort();
        orbit.dedup();
        orbit
    }

    /// Least member of the dilation orbit in lexicographic bit order.
    pub fn canonical_dilation(&self) -> Self {
        units(self.n)
            .into_iter()
            .map(|u| self.dilate(u as u64).expect("unit"))
            .min()
            .expect("Z_n always has a unit")
    }

    /// Compares bit-strings read from index 0 upward.
    fn lex_cmp(&self, other: &Self) -> Ordering {
        for (&a, &b) in self.words.iter().zip(&other.words) {
            let diff = a ^ b;
            if diff != 0 {
                let lowest = diff & diff.wrapping_neg();
                return if a & lowest == 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        Ordering::Equal
    }
}

/// Units of Z_n in ascending order. For `n = 1` this is `[0]`, the identity.
pub fn units(n: usize) -> Vec<usize> {
    (0..n).filter(|&u| u.gcd(&n) == 1).collect()
}

/// `[0, ⌊n/2⌋]`, the standard half-cover `G1` with `G1 ∪ -G1 = Z_n`.
pub fn half_cover(n: usize) -> CyclicSet {
    CyclicSet::interval(n, 0, (n / 2) as i64).expect("⌊n/2⌋ < n")
}

impl Ord for CyclicSet {
    /// By modulus, then lexicographically on the bit-string from index 0.
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for CyclicSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for CyclicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z_{}", self.n)?;
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for CyclicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}} ⊆ Z_{}", self.n)
    }
}
