//! Brute-force ground truth for small parameters.
//!
//! Nothing here relies on the structural results the constructions embody:
//! catalogs come from enumerating every symmetric subset, t-special sets from
//! evaluating the definition literally on every subset of `[0, 2t-1]`.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::primes::require_prime;
use crate::special::{enumerate_special_with_budget, predicted_scsf_count, SpecialEnumeration};
use crate::st::{build_st, STParameters, TCandidate};
use crate::zn::{units, CyclicSet};
use crate::Budget;

/// `2^22` symmetric candidates, i.e. `n ≤ 45`.
pub const DEFAULT_CATALOG_BUDGET: Budget = Budget::new(1 << 22);
/// `2^16` subsets, i.e. `t ≤ 8`.
pub const DEFAULT_BRUTE_SPECIAL_BUDGET: Budget = Budget::new(1 << 16);
/// Search cost for max sum-free sets is estimated as `2^((p-1)/2)`, so `p ≤ 43`.
pub const DEFAULT_MAX_SUM_FREE_BUDGET: Budget = Budget::new(1 << 22);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DilationClass {
    pub representative: CyclicSet,
    pub orbit_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Catalog {
    pub n: usize,
    pub size_filter: Option<usize>,
    pub count: usize,
    pub sets: Vec<CyclicSet>,
    pub classes: Vec<DilationClass>,
}

impl Catalog {
    fn from_sets(n: usize, size_filter: Option<usize>, mut sets: Vec<CyclicSet>) -> Self {
        sets.sort();
        sets.dedup();
        let mut counts: BTreeMap<CyclicSet, usize> = BTreeMap::new();
        for s in &sets {
            *counts.entry(s.canonical_dilation()).or_default() += 1;
        }
        let classes = counts
            .into_keys()
            .map(|representative| DilationClass {
                orbit_size: representative.dilation_orbit().len(),
                representative,
            })
            .collect();
        Catalog {
            n,
            size_filter,
            count: sets.len(),
            sets,
            classes,
        }
    }

    pub fn contains(&self, set: &CyclicSet) -> bool {
        self.sets.binary_search(set).is_ok()
    }
}

/// Number of pair orbits `{x, -x}` with `x ∈ [1, ⌈n/2⌉ - 1]`, plus one for
/// the self-paired `n/2` when `n` is even.
fn orbit_bits(n: usize) -> usize {
    (n - 1) / 2 + n.is_multiple_of(2) as usize
}

fn symmetric_from_orbits(n: usize, mask: u64) -> CyclicSet {
    let pairs = (n - 1) / 2;
    let mut s = CyclicSet::empty(n);
    for j in 0..orbit_bits(n) {
        if mask >> j & 1 == 1 {
            if j < pairs {
                s.insert(j + 1);
                s.insert(n - j - 1);
            } else {
                s.insert(n / 2);
            }
        }
    }
    s
}

fn orbit_size(n: usize, mask: u64) -> usize {
    let pairs = (n - 1) / 2;
    let low = mask & ((1u64 << pairs) - 1);
    2 * low.count_ones() as usize + (mask >> pairs & 1) as usize
}

/// Every symmetric complete sum-free subset of Z_n (optionally of one size).
pub fn exhaustive_scsf(n: usize, size_filter: Option<usize>) -> Result<Catalog> {
    exhaustive_scsf_with_budget(n, size_filter, DEFAULT_CATALOG_BUDGET)
}

pub fn exhaustive_scsf_with_budget(
    n: usize,
    size_filter: Option<usize>,
    budget: Budget,
) -> Result<Catalog> {
    if n == 0 {
        return Err(Error::ZeroModulus);
    }
    let width = orbit_bits(n);
    budget.check(1u128 << width.min(127))?;
    if width >= 64 {
        return Err(Error::BudgetExceeded {
            required: 1u128 << width.min(127),
            limit: budget.limit(),
        });
    }
    let total = 1u64 << width;
    const CHUNK: u64 = 1 << 12;
    let found: Vec<CyclicSet> = (0..total.div_ceil(CHUNK))
        .into_par_iter()
        .flat_map_iter(|c| {
            (c * CHUNK..((c + 1) * CHUNK).min(total)).filter_map(move |mask| {
                if size_filter.is_some_and(|s| s != orbit_size(n, mask)) {
                    return None;
                }
                let s = symmetric_from_orbits(n, mask);
                s.is_complete_sum_free().then_some(s)
            })
        })
        .collect();
    Ok(Catalog::from_sets(n, size_filter, found))
}

/// t-special sets by literal evaluation of the definition on all `2^{2t}`
/// subsets; no pruning, no shortcuts.
pub fn brute_special(t: usize) -> Result<SpecialEnumeration> {
    brute_special_with_budget(t, DEFAULT_BRUTE_SPECIAL_BUDGET)
}

pub fn brute_special_with_budget(t: usize, budget: Budget) -> Result<SpecialEnumeration> {
    if t == 0 {
        return Err(Error::InvalidParameters("t must be positive".into()));
    }
    budget.check(1u128 << (2 * t).min(127))?;
    let width = 2 * t;
    let target = 2 * t as i64 - 1;
    let mut sets = Vec::new();
    for mask in 0..1u64 << width {
        let members: Vec<i64> = (0..width as i64).filter(|&i| mask >> i & 1 == 1).collect();
        let has = |z: i64| members.contains(&z);

        if members.len() != t {
            continue;
        }
        let triple = members.iter().any(|&x| {
            members
                .iter()
                .any(|&y| members.iter().any(|&z| x + y + z == target))
        });
        if triple {
            continue;
        }
        let m = members[0];
        let covered = (0..=target + m).all(|z| {
            has(target - z) || members.iter().any(|&x| members.iter().any(|&y| x + y == z))
        });
        if covered {
            sets.push(TCandidate::new(t, members.iter().map(|&x| x as usize))?);
        }
    }
    Ok(SpecialEnumeration {
        t,
        g: sets.len(),
        sets,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaxSumFreeReport {
    pub p: u64,
    pub max_size: usize,
    pub catalog: Catalog,
}

#[inline]
fn rot(mask: u64, by: usize, p: usize) -> u64 {
    let full = (1u64 << p) - 1;
    let by = by % p;
    if by == 0 {
        mask
    } else {
        ((mask << by) | (mask >> (p - by))) & full
    }
}

struct MaxSearch {
    p: usize,
    full: u64,
    inv2: usize,
    best: usize,
    found: Vec<u64>,
}

#[derive(Clone, Copy)]
struct Node {
    set: u64,
    /// `S + S`
    sums: u64,
    /// `S - S`
    diffs: u64,
    /// `{y : 2y ∈ S}`
    halves: u64,
    size: usize,
}

impl MaxSearch {
    fn allowed(&self, node: &Node) -> u64 {
        !(node.set | node.sums | node.diffs | node.halves) & self.full & !1
    }

    fn add(&self, node: &Node, x: usize) -> Node {
        let p = self.p;
        let set = node.set | 1 << x;
        let neg = (0..p)
            .filter(|&y| node.set >> y & 1 == 1)
            .fold(0u64, |acc, y| acc | 1 << ((p - y) % p));
        Node {
            set,
            sums: node.sums | rot(set, x, p),
            diffs: node.diffs | rot(neg, x, p) | rot(node.set, p - x, p),
            halves: node.halves | 1 << (x * self.inv2 % p),
            size: node.size + 1,
        }
    }

    fn dfs(&mut self, node: Node, last: usize) {
        let above = if last + 1 >= 64 {
            0
        } else {
            !0u64 << (last + 1)
        };
        let mut cand = self.allowed(&node) & above;
        if node.size + (cand.count_ones() as usize) < self.best {
            return;
        }
        if node.size > self.best {
            self.best = node.size;
            self.found.clear();
        }
        if node.size == self.best {
            self.found.push(node.set);
        }
        while cand != 0 {
            if node.size + (cand.count_ones() as usize) < self.best {
                return;
            }
            let x = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            let child = self.add(&node, x);
            self.dfs(child, x);
        }
    }
}

/// All sum-free subsets of Z_p of maximum size, found by depth-first search
/// with incremental `S+S`, `S-S` masks and a cardinality bound.
pub fn exhaustive_max_sum_free(p: u64) -> Result<MaxSumFreeReport> {
    exhaustive_max_sum_free_with_budget(p, DEFAULT_MAX_SUM_FREE_BUDGET)
}

pub fn exhaustive_max_sum_free_with_budget(p: u64, budget: Budget) -> Result<MaxSumFreeReport> {
    require_prime(p)?;
    budget.check(1u128 << ((p - 1) / 2).min(127))?;
    if p >= 64 {
        return Err(Error::BudgetExceeded {
            required: 1u128 << ((p - 1) / 2).min(127),
            limit: budget.limit(),
        });
    }
    let pu = p as usize;
    let mut search = MaxSearch {
        p: pu,
        full: (1u64 << pu) - 1,
        // 2 has no inverse mod 2; there halving only ever concerns 0
        inv2: if pu == 2 { 1 } else { pu.div_ceil(2) },
        best: 0,
        found: Vec::new(),
    };
    let root = Node {
        set: 0,
        sums: 0,
        diffs: 0,
        halves: 0,
        size: 0,
    };
    search.dfs(root, 0);
    let sets = search
        .found
        .iter()
        .map(|&mask| CyclicSet::new(pu, (0..pu).filter(|&i| mask >> i & 1 == 1)))
        .collect::<Result<Vec<_>>>()?;
    Ok(MaxSumFreeReport {
        p,
        max_size: search.best,
        catalog: Catalog::from_sets(pu, Some(search.best), sets),
    })
}

/// Exploratory comparison of the exhaustive catalog of Z_p at one size
/// against the dilations of `S_T` over all t-special `T`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub p: u64,
    pub s: usize,
    pub t: usize,
    pub definition_valid: bool,
    pub theorem_valid: bool,
    pub hypotheses_unmet: bool,
    pub special_sets: usize,
    pub catalog_count: usize,
    pub construction_count: usize,
    pub matched: usize,
    pub catalog_extra: Vec<CyclicSet>,
    pub construction_extra: Vec<CyclicSet>,
    pub exact_match: bool,
    pub predicted_count: Option<u128>,
    pub count_matches_prediction: Option<bool>,
    /// The characterization is only claimed for sufficiently large `p`;
    /// this report is evidence, not a verdict.
    pub asymptotic_claim: bool,
}

pub fn characterization_probe(p: u64, s: usize, budget: Budget) -> Result<ProbeReport> {
    require_prime(p)?;
    let pu = p as usize;
    let params = STParameters::new(pu, s)?;
    let catalog = exhaustive_scsf_with_budget(pu, Some(s), budget)?;

    let special = enumerate_special_with_budget(params.t(), budget)?;
    let mut constructed = BTreeSet::new();
    if params.definition_valid() {
        for t_set in &special.sets {
            let base = build_st(&params, t_set)?;
            for u in units(pu) {
                constructed.insert(base.dilate(u as u64)?);
            }
        }
    }

    let catalog_set: BTreeSet<CyclicSet> = catalog.sets.iter().cloned().collect();
    let catalog_extra: Vec<CyclicSet> = catalog_set.difference(&constructed).cloned().collect();
    let construction_extra: Vec<CyclicSet> =
        constructed.difference(&catalog_set).cloned().collect();
    let matched = catalog_set.intersection(&constructed).count();

    // size s = k - 2r (p = 3k+1) or k - 2r + 1 (p = 3k+2)
    let k = pu / 3;
    let r = match p % 3 {
        1 if s < k && (k - s).is_multiple_of(2) => Some((k - s) / 2),
        2 if s <= k && (k + 1 - s).is_multiple_of(2) => Some((k + 1 - s) / 2),
        _ => None,
    };
    let prediction = match r {
        Some(r) if r >= 1 => Some(predicted_scsf_count(p, r as u64, budget)?),
        _ => None,
    };

    Ok(ProbeReport {
        p,
        s,
        t: params.t(),
        definition_valid: params.definition_valid(),
        theorem_valid: params.theorem_valid(),
        hypotheses_unmet: !params.theorem_valid(),
        special_sets: special.g,
        catalog_count: catalog.count,
        construction_count: constructed.len(),
        matched,
        exact_match: catalog_extra.is_empty() && construction_extra.is_empty(),
        catalog_extra,
        construction_extra,
        predicted_count: prediction.as_ref().map(|x| x.predicted_count),
        count_matches_prediction: prediction
            .as_ref()
            .map(|x| x.predicted_count == catalog.count as u128),
        asymptotic_claim: true,
    })
}
