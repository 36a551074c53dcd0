//! t-special sets: `T ⊆ [0, 2t-1]` with `|T| = t`, `2t-1 ∉ T+T+T` and
//! `[0, 2t-1+min T] \ (2t-1-T) ⊆ T+T` (integer arithmetic throughout).

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::primes::require_prime;
use crate::st::{st_completeness_condition, st_sum_free_condition, TCandidate};
use crate::Budget;

/// `C(28, 14)`: enumeration up to t = 14 by default.
pub const DEFAULT_SPECIAL_BUDGET: Budget = Budget::new(40_116_600);

pub fn is_t_special(set: &TCandidate) -> bool {
    set.len() == set.t()
        && st_sum_free_condition(set)
        && st_completeness_condition(set).unwrap_or(false)
}

/// Shortcut valid when `0 ∈ T`: the first two conditions imply the third.
pub fn is_t_special_zero_fast(set: &TCandidate) -> Result<bool> {
    if !set.contains(0) {
        return Err(Error::FastPathInapplicable);
    }
    Ok(set.len() == set.t() && st_sum_free_condition(set))
}

/// Mask kernel for `t ≤ 32`; assumes `mask` has exactly `t` bits set.
fn special_mask(t: usize, mask: u64) -> bool {
    let target = 2 * t - 1;
    let wide = mask as u128;
    let mut pairs = 0u128;
    let mut rest = mask;
    while rest != 0 {
        let x = rest.trailing_zeros();
        pairs |= wide << x;
        rest &= rest - 1;
    }

    let mut rest = mask;
    while rest != 0 {
        let x = rest.trailing_zeros() as usize;
        if pairs >> (target - x) & 1 == 1 {
            return false;
        }
        rest &= rest - 1;
    }

    let len = target + mask.trailing_zeros() as usize + 1;
    let needed = if len >= 128 {
        u128::MAX
    } else {
        (1u128 << len) - 1
    };
    let reflected = (mask.reverse_bits() >> (64 - 2 * t)) as u128;
    needed & !reflected & !pairs == 0
}

/// Work units covering every `k`-subset of `width` bits: `(prefix, low_width,
/// low_k)` means `prefix | x` for every `low_k`-subset `x` of the low bits.
/// Listed so that concatenating their outputs is ascending.
fn shards(width: usize, k: usize) -> Vec<(u64, usize, usize)> {
    if k == 0 {
        return vec![(0, 0, 0)];
    }
    let mut out = Vec::new();
    for top in k - 1..width {
        let prefix = 1u64 << top;
        if k == 1 {
            out.push((prefix, 0, 0));
            continue;
        }
        for second in k - 2..top {
            out.push((prefix | 1 << second, second, k - 2));
        }
    }
    out
}

/// `k`-subsets of the low `width` bits in ascending order (Gosper's hack).
fn subsets(width: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = 1u64 << width;
    let mut next = if k == 0 {
        Some(0)
    } else {
        Some((1u64 << k) - 1)
    };
    std::iter::from_fn(move || {
        let x = next?;
        if k != 0 && x >= limit {
            return None;
        }
        next = if k == 0 {
            None
        } else {
            let c = x & x.wrapping_neg();
            let r = x + c;
            Some((((r ^ x) >> 2) / c) | r)
        };
        Some(x)
    })
}

pub fn central_binomial(t: usize) -> u128 {
    (1..=t as u128).fold(1u128, |acc, i| acc * (t as u128 + i) / i)
}

fn check_enumeration(t: usize, budget: Budget) -> Result<()> {
    if t == 0 {
        return Err(Error::InvalidParameters("t must be positive".into()));
    }
    let required = if t > 32 {
        u128::MAX
    } else {
        central_binomial(t)
    };
    budget.check(required)
}

fn special_masks(t: usize, budget: Budget) -> Result<Vec<u64>> {
    check_enumeration(t, budget)?;
    let per_shard: Vec<Vec<u64>> = shards(2 * t, t)
        .into_par_iter()
        .map(|(prefix, width, k)| {
            subsets(width, k)
                .map(|low| prefix | low)
                .filter(|&mask| special_mask(t, mask))
                .collect()
        })
        .collect();
    Ok(per_shard.into_iter().flatten().collect())
}

/// All t-special sets in ascending 2t-bit mask order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecialEnumeration {
    pub t: usize,
    pub g: usize,
    pub sets: Vec<TCandidate>,
}

pub fn enumerate_special(t: usize) -> Result<SpecialEnumeration> {
    enumerate_special_with_budget(t, DEFAULT_SPECIAL_BUDGET)
}

pub fn enumerate_special_with_budget(t: usize, budget: Budget) -> Result<SpecialEnumeration> {
    let sets: Vec<TCandidate> = special_masks(t, budget)?
        .into_iter()
        .map(|mask| TCandidate::from_mask(t, mask).expect("t ≤ 32"))
        .collect();
    Ok(SpecialEnumeration {
        t,
        g: sets.len(),
        sets,
    })
}

/// `g(t)`, the number of t-special sets.
pub fn count_special(t: usize, budget: Budget) -> Result<u64> {
    check_enumeration(t, budget)?;
    Ok(shards(2 * t, t)
        .into_par_iter()
        .map(|(prefix, width, k)| {
            subsets(width, k)
                .filter(|&low| special_mask(t, prefix | low))
                .count() as u64
        })
        .sum())
}

fn lower_family_range(t: usize) -> std::ops::Range<usize> {
    let lo = (2 * t).div_ceil(3);
    lo..t.max(lo)
}

/// `T_I = {0} ∪ I ∪ {2t-1-i : i ∈ [⌈2t/3⌉, t-1] \ I} ∪ [2t-⌈2t/3⌉, 2t-2]`.
pub fn lower_bound_family(t: usize, subset: &[usize]) -> Result<TCandidate> {
    if t == 0 {
        return Err(Error::InvalidParameters("t must be positive".into()));
    }
    let range = lower_family_range(t);
    if let Some(&bad) = subset.iter().find(|i| !range.contains(i)) {
        return Err(Error::InvalidParameters(format!(
            "{bad} is outside [{}, {}]",
            range.start,
            t as i64 - 1
        )));
    }
    let mut elements = vec![0];
    for i in range.clone() {
        elements.push(if subset.contains(&i) {
            i
        } else {
            2 * t - 1 - i
        });
    }
    elements.extend(2 * t - range.start..2 * t - 1);
    TCandidate::new(t, elements)
}

/// Every `T_I`, one per subset `I` of `[⌈2t/3⌉, t-1]` (`2^⌊t/3⌋` of them).
pub fn lower_bound_sets(t: usize) -> Result<Vec<TCandidate>> {
    let range: Vec<usize> = lower_family_range(t).collect();
    if range.len() >= 32 {
        return Err(Error::InvalidParameters(format!(
            "2^{} family members is too many to list",
            range.len()
        )));
    }
    (0..1u32 << range.len())
        .map(|bits| {
            let subset: Vec<usize> = range
                .iter()
                .enumerate()
                .filter(|(j, _)| bits >> j & 1 == 1)
                .map(|(_, &i)| i)
                .collect();
            lower_bound_family(t, &subset)
        })
        .collect()
}

/// Number of symmetric complete sum-free subsets of Z_p of a given size as
/// predicted by `(p-1)/2 · g(t)`. The prediction is only claimed for
/// sufficiently large `p`, so it is always tagged as asymptotic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountPrediction {
    pub p: u64,
    pub r: u64,
    pub k: u64,
    /// `p mod 3`
    pub residue: u64,
    pub t: usize,
    pub size: i64,
    pub g: u64,
    pub predicted_count: u128,
    pub asymptotic_claim: bool,
    /// Set when the target size is not a positive even number, so no
    /// symmetric sum-free set of that size can exist.
    pub vacuous: bool,
}

pub fn predicted_scsf_count(p: u64, r: u64, budget: Budget) -> Result<CountPrediction> {
    require_prime(p)?;
    if p.is_multiple_of(3) {
        return Err(Error::DivisibleByThree(p));
    }
    if r == 0 {
        return Err(Error::InvalidParameters("r must be at least 1".into()));
    }
    let residue = p % 3;
    let k = p / 3;
    let (t, size) = if residue == 1 {
        (3 * r + 1, k as i64 - 2 * r as i64)
    } else {
        (3 * r, k as i64 - 2 * r as i64 + 1)
    };
    let t = t as usize;
    let g = count_special(t, budget)?;
    Ok(CountPrediction {
        p,
        r,
        k,
        residue,
        t,
        size,
        g,
        predicted_count: (p as u128 - 1) / 2 * g as u128,
        asymptotic_claim: true,
        vacuous: size < 2 || size % 2 != 0,
    })
}

/// On-disk table of `g(t)` values. Lookups that miss are computed and
/// written back; the table is never trusted over a recomputation.
#[derive(Debug)]
pub struct GCache {
    path: PathBuf,
    table: BTreeMap<usize, u64>,
}

#[derive(Serialize, Deserialize)]
struct GTable {
    g: BTreeMap<usize, u64>,
}

impl GCache {
    /// A missing or unreadable file yields an empty cache.
    pub fn open(path: impl AsRef<Path>) -> Self {
        let path = path.as_ref().to_path_buf();
        let table = fs::read_to_string(&path)
            .ok()
            .and_then(|s| serde_json::from_str::<GTable>(&s).ok())
            .map(|t| t.g)
            .unwrap_or_default();
        GCache { path, table }
    }

    pub fn get(&self, t: usize) -> Option<u64> {
        self.table.get(&t).copied()
    }

    pub fn g(&mut self, t: usize, budget: Budget) -> Result<u64> {
        if let Some(g) = self.get(t) {
            return Ok(g);
        }
        let g = count_special(t, budget)?;
        self.table.insert(t, g);
        self.save()?;
        Ok(g)
    }

    pub fn save(&self) -> Result<()> {
        let body = serde_json::to_string_pretty(&GTable {
            g: self.table.clone(),
        })
        .expect("plain map");
        fs::write(&self.path, body).map_err(|e| Error::Io(e.to_string()))
    }
}
