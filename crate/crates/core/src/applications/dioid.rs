//! The three-part partition `{0}, S, (S+S) \ {0}` of Z_p.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::primes::require_prime;
use crate::zn::CyclicSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DioidAxioms {
    /// Every `P_i + P_j` is a union of parts.
    pub sums_are_unions: bool,
    /// `{0}` is a part and adding it changes nothing.
    pub identity_part: bool,
    /// `-P = P` for every part.
    pub closed_under_negation: bool,
}

impl DioidAxioms {
    pub fn all(&self) -> bool {
        self.sums_are_unions && self.identity_part && self.closed_under_negation
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionReport {
    pub p: u64,
    pub parts: Vec<CyclicSet>,
    pub sizes: Vec<usize>,
    /// Parts are nonempty, pairwise disjoint and cover Z_p.
    pub is_partition: bool,
    pub axioms: DioidAxioms,
    pub holds: bool,
}

/// Builds the partition and checks each axiom by direct sumset evaluation.
pub fn dioid_partition(set: &CyclicSet) -> Result<PartitionReport> {
    let p = set.modulus() as u64;
    require_prime(p)?;
    if p < 5 {
        return Err(Error::InvalidParameters(format!(
            "dioid partitions need p >= 5, got {p}"
        )));
    }
    if !set.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    if !set.is_complete_sum_free() {
        return Err(Error::NotCompleteSumFree);
    }

    let n = set.modulus();
    let zero = CyclicSet::new(n, [0])?;
    let mut rest = set.double();
    rest.remove(0);
    let parts = vec![zero.clone(), set.clone(), rest];
    let check = |r: Result<bool>| r.expect("same modulus");

    let mut cover = CyclicSet::empty(n);
    let mut is_partition = true;
    for part in &parts {
        is_partition &= !part.is_empty() && check(part.is_disjoint(&cover));
        cover = cover.union(part)?;
    }
    is_partition &= cover.is_full();

    let union_of_parts = |x: &CyclicSet| {
        parts.iter().all(|part| {
            let inter = x.intersection(part).expect("same modulus");
            inter.is_empty() || &inter == part
        })
    };
    let sums_are_unions = parts.iter().all(|a| {
        parts
            .iter()
            .all(|b| union_of_parts(&a.sumset(b).expect("same modulus")))
    });
    let identity_part = parts
        .iter()
        .all(|part| &zero.sumset(part).expect("same modulus") == part);
    let closed_under_negation = parts.iter().all(|part| &part.negate() == part);

    let axioms = DioidAxioms {
        sums_are_unions,
        identity_part,
        closed_under_negation,
    };
    Ok(PartitionReport {
        p,
        sizes: parts.iter().map(CyclicSet::len).collect(),
        parts,
        is_partition,
        holds: is_partition && axioms.all(),
        axioms,
    })
}
