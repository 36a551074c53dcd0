//! The large construction `S_T = [n-2s+1, 2s-1] ∪ ±(s+T)` and the integer
//! conditions on `T` that decide its sum-freeness and completeness.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::bits;
use crate::error::{Error, Result};
use crate::special::is_t_special;
use crate::zn::CyclicSet;
use crate::Budget;

/// `(n, s)` with `t = (n - 3s + 1) / 2` a positive integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct STParameters {
    n: usize,
    s: usize,
    t: usize,
}

impl STParameters {
    pub fn new(n: usize, s: usize) -> Result<Self> {
        let numerator = n as i64 - 3 * s as i64 + 1;
        if numerator <= 0 {
            return Err(Error::InvalidParameters(format!(
                "n - 3s + 1 = {numerator} must be positive (n = {n}, s = {s})"
            )));
        }
        if numerator % 2 != 0 {
            return Err(Error::InvalidParameters(format!(
                "n - 3s + 1 = {numerator} is odd, t is not an integer (n = {n}, s = {s})"
            )));
        }
        Ok(STParameters {
            n,
            s,
            t: (numerator / 2) as usize,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// `n ≤ 4s - 3`: the construction is defined and the sum-free criterion applies.
    pub fn definition_valid(&self) -> bool {
        self.n + 3 <= 4 * self.s
    }

    /// `n ≤ 7s/2 - 1`: the completeness criterion (and the equivalence with
    /// t-special sets) applies as well.
    pub fn theorem_valid(&self) -> bool {
        2 * self.n + 2 <= 7 * self.s
    }

    fn require_definition_valid(&self) -> Result<()> {
        if self.definition_valid() {
            Ok(())
        } else {
            Err(Error::InvalidParameters(format!(
                "n = {} exceeds 4s - 3 = {}",
                self.n,
                (4 * self.s).saturating_sub(3)
            )))
        }
    }
}

/// A set of integers `T ⊆ [0, 2t-1]`; arithmetic on members is over the integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TCandidate {
    t: usize,
    words: Vec<u64>,
}

impl TCandidate {
    pub fn empty(t: usize) -> Result<Self> {
        if t == 0 {
            return Err(Error::InvalidParameters("t must be positive".into()));
        }
        Ok(TCandidate {
            t,
            words: vec![0; bits::words_for(2 * t)],
        })
    }

    pub fn new(t: usize, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut c = Self::empty(t)?;
        for x in elements {
            if x >= 2 * t {
                return Err(Error::TMemberOutOfRange {
                    element: x,
                    max: 2 * t - 1,
                });
            }
            bits::set(&mut c.words, x);
        }
        Ok(c)
    }

    /// Bit `i` of `mask` is membership of `i`. Requires `2t ≤ 64`.
    pub fn from_mask(t: usize, mask: u64) -> Result<Self> {
        if t == 0 || 2 * t > 64 {
            return Err(Error::InvalidParameters(format!(
                "mask form needs 1 ≤ t ≤ 32, got t = {t}"
            )));
        }
        if 2 * t < 64 && mask >> (2 * t) != 0 {
            return Err(Error::TMemberOutOfRange {
                element: 63 - mask.leading_zeros() as usize,
                max: 2 * t - 1,
            });
        }
        Ok(TCandidate {
            t,
            words: vec![mask],
        })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn len(&self) -> usize {
        bits::count(&self.words)
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn contains(&self, x: usize) -> bool {
        x < 2 * self.t && bits::get(&self.words, x)
    }

    pub fn min(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        bits::ones(&self.words)
    }

    pub fn elements(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// The 2t-bit mask, when it fits in a word.
    pub fn to_mask(&self) -> Option<u64> {
        (self.words.len() == 1).then(|| self.words[0])
    }
}

impl Ord for TCandidate {
    /// By `t`, then numerically as a 2t-bit mask.
    fn cmp(&self, other: &Self) -> Ordering {
        self.t
            .cmp(&other.t)
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for TCandidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for TCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T[t={}]", self.t)?;
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for TCandidate {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

/// Integer sumset `A + B` truncated to `[0, len)`.
fn int_sumset(a: &[u64], b: &[u64], len: usize) -> Vec<u64> {
    let mut out = vec![0u64; bits::words_for(len)];
    for x in bits::ones(a) {
        if x >= len {
            break;
        }
        bits::or_shl(&mut out, b, x, len);
    }
    out
}

/// `2t - 1 ∉ T + T + T`.
pub fn st_sum_free_condition(set: &TCandidate) -> bool {
    let target = 2 * set.t - 1;
    let pairs = int_sumset(&set.words, &set.words, target + 1);
    !set.iter().any(|x| bits::get(&pairs, target - x))
}

/// `[0, 2t - 1 + min T] \ (2t - 1 - T) ⊆ T + T`. Requires `T` nonempty.
pub fn st_completeness_condition(set: &TCandidate) -> Result<bool> {
    let m = set.min().ok_or(Error::EmptyT)?;
    let top = 2 * set.t - 1;
    let len = top + m + 1;
    let pairs = int_sumset(&set.words, &set.words, len);
    let mut reflected = vec![0u64; bits::words_for(len)];
    for x in set.iter() {
        bits::set(&mut reflected, top - x);
    }
    Ok((0..len).all(|z| bits::get(&reflected, z) || bits::get(&pairs, z)))
}

/// `[n-2s+1, 2s-1] ∪ (s+T) ∪ -(s+T)` in Z_n.
pub fn build_st(params: &STParameters, set: &TCandidate) -> Result<CyclicSet> {
    params.require_definition_valid()?;
    if set.t != params.t {
        return Err(Error::InvalidParameters(format!(
            "T has t = {} but (n, s) gives t = {}",
            set.t, params.t
        )));
    }
    let (n, s) = (params.n as i64, params.s as i64);
    let mut out = CyclicSet::interval(params.n, n - 2 * s + 1, 2 * s - 1)?;
    for x in set.iter() {
        let e = params.s + x;
        out.insert(e);
        out.insert(params.n - e);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub set: Vec<usize>,
    pub special: bool,
    pub construction_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub n: usize,
    pub s: usize,
    pub t: usize,
    pub candidates: u64,
    pub special_count: u64,
    pub counterexamples: Vec<Counterexample>,
}

pub const DEFAULT_EQUIVALENCE_BUDGET: Budget = Budget::new(1 << 24);

/// Checks, for every `T ⊆ [0, 2t-1]`, that T is t-special exactly when
/// `S_T` is complete, sum-free and of size `s`.
pub fn verify_st_equivalence(n: usize, s: usize, budget: Budget) -> Result<EquivalenceReport> {
    let params = STParameters::new(n, s)?;
    if !params.theorem_valid() {
        return Err(Error::InvalidParameters(format!(
            "n = {n} exceeds 7s/2 - 1 for s = {s}"
        )));
    }
    let width = 2 * params.t;
    let required = 1u128 << width.min(127);
    budget.check(required)?;
    let total = 1u64 << width;

    const CHUNK: u64 = 1 << 10;
    let chunks: Vec<(u64, u64, Vec<Counterexample>)> = (0..total.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut special = 0u64;
            let mut bad = Vec::new();
            for mask in c * CHUNK..((c + 1) * CHUNK).min(total) {
                let candidate = TCandidate::from_mask(params.t, mask).expect("mask in range");
                let is_special = is_t_special(&candidate);
                let set = build_st(&params, &candidate).expect("definition valid");
                let holds = set.len() == s && set.is_complete_sum_free();
                special += is_special as u64;
                if is_special != holds {
                    bad.push(Counterexample {
                        set: candidate.elements(),
                        special: is_special,
                        construction_holds: holds,
                    });
                }
            }
            (c, special, bad)
        })
        .collect();

    let mut report = EquivalenceReport {
        n,
        s,
        t: params.t,
        candidates: total,
        special_count: 0,
        counterexamples: Vec::new(),
    };
    for (_, special, bad) in chunks {
        report.special_count += special;
        report.counterexamples.extend(bad);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cand(t: usize, xs: &[usize]) -> TCandidate {
        TCandidate::new(t, xs.iter().copied()).unwrap()
    }

    #[test]
    fn parameters() {
        let p = STParameters::new(61, 18).unwrap();
        assert_eq!(p.t(), 4);
        assert!(p.definition_valid());
        assert!(p.theorem_valid());
        assert_eq!(p.s() + 2 * p.t() - 1, p.n() - 2 * p.s());

        assert!(matches!(
            STParameters::new(34, 10),
            Err(Error::InvalidParameters(_))
        ));
        assert!(STParameters::new(30, 10).is_err());

        // 43 ≤ 4·12 - 3 but 86 > 7·12 - 2
        let p = STParameters::new(43, 12).unwrap();
        assert!(p.definition_valid() && !p.theorem_valid());
        let p = STParameters::new(55, 16).unwrap();
        assert!(p.theorem_valid());
    }

    #[test]
    fn build_st_z61() {
        let p = STParameters::new(61, 18).unwrap();
        let s = build_st(&p, &cand(4, &[0, 4, 5, 6])).unwrap();
        let mut expected = vec![18, 22, 23, 24];
        expected.extend(26..=35);
        expected.extend([37, 38, 39, 43]);
        assert_eq!(s.elements(), expected);
        assert_eq!(s.len(), 18);
        assert!(s.is_symmetric() && s.is_complete_sum_free());
    }

    #[test]
    fn build_st_sizes() {
        let p = STParameters::new(61, 18).unwrap();
        let empty = build_st(&p, &TCandidate::empty(4).unwrap()).unwrap();
        assert_eq!(empty.len(), 4 * 18 - 61 - 1);
        let full = build_st(&p, &cand(4, &[0, 1, 2, 3, 4, 5, 6, 7])).unwrap();
        assert_eq!(full.len(), 26);
    }

    #[test]
    fn build_st_errors() {
        let p = STParameters::new(61, 18).unwrap();
        assert!(build_st(&p, &cand(3, &[0])).is_err());
        assert!(matches!(
            TCandidate::new(4, [8]),
            Err(Error::TMemberOutOfRange { element: 8, max: 7 })
        ));
        // t = 1 but n > 4s - 3
        let p = STParameters::new(10, 3).unwrap();
        assert!(!p.definition_valid());
        assert!(build_st(&p, &cand(1, &[0])).is_err());
    }

    #[test]
    fn sum_free_condition_examples() {
        assert!(st_sum_free_condition(&cand(4, &[0, 4, 5, 6])));
        assert!(!st_sum_free_condition(&cand(2, &[0, 1])));
        assert!(st_sum_free_condition(&TCandidate::empty(3).unwrap()));
    }

    #[test]
    fn completeness_condition_examples() {
        assert!(st_completeness_condition(&cand(3, &[0, 2, 4])).unwrap());
        assert!(!st_completeness_condition(&cand(1, &[1])).unwrap());
        assert!(st_completeness_condition(&cand(1, &[0])).unwrap());
        assert_eq!(
            st_completeness_condition(&TCandidate::empty(2).unwrap()),
            Err(Error::EmptyT)
        );
    }

    #[test]
    fn candidate_order_is_numeric_mask() {
        let a = cand(4, &[0, 2, 4, 6]);
        let b = cand(4, &[0, 3, 5, 6]);
        let c = cand(4, &[1, 2, 6, 7]);
        assert!(a < b && b < c);
        let wide_lo = cand(40, &[70]);
        let wide_hi = cand(40, &[0, 71]);
        assert!(wide_lo < wide_hi);
    }

    #[test]
    fn mask_round_trip() {
        let c = TCandidate::from_mask(4, 0b0111_0001).unwrap();
        assert_eq!(c.elements(), vec![0, 4, 5, 6]);
        assert_eq!(c.to_mask(), Some(0b0111_0001));
        assert!(TCandidate::from_mask(4, 1 << 8).is_err());
    }

    #[test]
    fn equivalence_examples() {
        let r = verify_st_equivalence(61, 18, DEFAULT_EQUIVALENCE_BUDGET).unwrap();
        assert!(r.counterexamples.is_empty());
        assert_eq!(r.special_count, 4);
        assert_eq!(r.candidates, 256);

        let r = verify_st_equivalence(55, 16, DEFAULT_EQUIVALENCE_BUDGET).unwrap();
        assert!(r.counterexamples.is_empty());

        assert!(verify_st_equivalence(34, 10, DEFAULT_EQUIVALENCE_BUDGET).is_err());
        assert!(matches!(
            verify_st_equivalence(61, 18, Budget::new(100)),
            Err(Error::BudgetExceeded {
                required: 256,
                limit: 100
            })
        ));
    }
}
