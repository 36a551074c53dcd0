//! The family `S = (±A) ∪ (±B) ∪ C` in Z_n with `n = 4dk + 6t - a`,
//! `a ∈ {11, 14}`:
//!
//! * `A = [h, h + d - 2]` with `h = (⌈n/2⌉ + t + 1) / 2`,
//! * `B = {h + 2d - 2 + i·d : 0 ≤ i ≤ k - 4}`,
//! * `C = [⌊n/2⌋ - t, ⌈n/2⌉ + t]`.
//!
//! For fixed `n` the parameter solver produces a ladder of such sets whose
//! sizes form an arithmetic progression from `O(√n)` up to `n/3 - O(√n)`.
//!
//! Every half-integer in the formulas is computed exactly; an odd numerator
//! is reported as a parameter error rather than rounded.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::zn::CyclicSet;

/// Least `n` from which the solver's recipe succeeds. Measured: the recipe
/// fails at 685 and succeeds for every `n` in `[686, 686 + 1000]` (and on all
/// larger `n` we have tried).
pub const CONSTRUCTION_THRESHOLD: usize = 686;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Variant {
    /// `n = 4dk + 6t - 11`, odd.
    Odd,
    /// `n = 4dk + 6t - 14`, even.
    Even,
}

impl Variant {
    pub fn offset(self) -> usize {
        match self {
            Variant::Odd => 11,
            Variant::Even => 14,
        }
    }

    pub fn from_offset(a: usize) -> Result<Self> {
        match a {
            11 => Ok(Variant::Odd),
            14 => Ok(Variant::Even),
            _ => Err(Error::InvalidParameters(format!(
                "variant offset must be 11 or 14, got {a}"
            ))),
        }
    }

    pub fn for_parity(n: usize) -> Self {
        if n % 2 == 1 {
            Variant::Odd
        } else {
            Variant::Even
        }
    }
}

impl Serialize for IntervalAPParameters {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("IntervalAPParameters", 5)?;
        st.serialize_field("t", &self.t)?;
        st.serialize_field("d", &self.d)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("a", &self.variant.offset())?;
        st.serialize_field("n", &self.n)?;
        st.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IntervalAPParameters {
    t: usize,
    d: usize,
    k: usize,
    variant: Variant,
    n: usize,
}

fn half(numerator: i64, what: &str) -> Result<i64> {
    if numerator % 2 == 0 {
        Ok(numerator / 2)
    } else {
        Err(Error::InvalidParameters(format!(
            "{what} = {numerator} is odd"
        )))
    }
}

impl IntervalAPParameters {
    pub fn new(t: usize, d: usize, k: usize, variant: Variant) -> Result<Self> {
        if t < 1 || d < 2 || k < 4 {
            return Err(Error::InvalidParameters(format!(
                "need t ≥ 1, d ≥ 2, k ≥ 4; got t = {t}, d = {d}, k = {k}"
            )));
        }
        let n = 4 * d * k + 6 * t - variant.offset();
        let params = IntervalAPParameters {
            t,
            d,
            k,
            variant,
            n,
        };
        if n % 2 != (variant == Variant::Odd) as usize {
            return Err(Error::InvalidParameters(format!(
                "n = {n} has the wrong parity for offset {}",
                variant.offset()
            )));
        }
        params.a_start()?;
        Ok(params)
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn floor_half_n(&self) -> i64 {
        (self.n / 2) as i64
    }

    fn ceil_half_n(&self) -> i64 {
        self.n.div_ceil(2) as i64
    }

    /// `⌊3n/2⌋`
    fn floor_three_halves_n(&self) -> i64 {
        (3 * self.n / 2) as i64
    }

    /// `(⌈n/2⌉ + t + 1) / 2`, the first element of `A`.
    fn a_start(&self) -> Result<i64> {
        half(self.ceil_half_n() + self.t as i64 + 1, "⌈n/2⌉ + t + 1")
    }

    /// `|C|`: `2t + 2` for odd `n`, `2t + 1` for even `n`.
    pub fn central_size(&self) -> usize {
        (self.ceil_half_n() - self.floor_half_n()) as usize + 2 * self.t + 1
    }

    /// `|C| ≥ d`.
    pub fn satisfies_hypothesis(&self) -> bool {
        self.central_size() >= self.d
    }

    fn require_hypothesis(&self) -> Result<()> {
        if self.satisfies_hypothesis() {
            Ok(())
        } else {
            Err(Error::Hypothesis(format!(
                "|C| = {} < d = {}",
                self.central_size(),
                self.d
            )))
        }
    }

    /// `2(d + k - 4) + |C|`
    pub fn expected_size(&self) -> usize {
        2 * (self.d + self.k - 4) + self.central_size()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    pub a: CyclicSet,
    pub b: CyclicSet,
    pub c: CyclicSet,
}

pub fn component_sets(params: &IntervalAPParameters) -> Result<Components> {
    let n = params.n;
    let (t, d, k) = (params.t as i64, params.d as i64, params.k as i64);
    let h = params.a_start()?;
    let a = CyclicSet::interval(n, h, h + d - 2)?;
    let b = CyclicSet::from_residues(n, (0..=k - 4).map(|i| h + 2 * d - 2 + i * d));
    let c = CyclicSet::interval(n, params.floor_half_n() - t, params.ceil_half_n() + t)?;

    let last_b = h + 2 * d - 2 + (k - 4) * d;
    let expected_last = params.floor_half_n() - t - 2 * d + 2;
    if last_b != expected_last {
        return Err(Error::InvalidParameters(format!(
            "last element of B is {last_b}, expected ⌊n/2⌋ - t - 2d + 2 = {expected_last}"
        )));
    }
    let parts = [&a, &b, &c, &a.negate(), &b.negate()];
    let total: usize = parts.iter().map(|p| p.len()).sum();
    let union = parts
        .iter()
        .try_fold(CyclicSet::empty(n), |acc, p| acc.union(p))?;
    if union.len() != total {
        return Err(Error::InvalidParameters(
            "±A, ±B and C are not pairwise disjoint".into(),
        ));
    }
    Ok(Components { a, b, c })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CheckMode {
    /// Re-verify every constructed set with the Z_n predicates.
    #[default]
    Checked,
    Fast,
}

/// `(±A) ∪ (±B) ∪ C`, a symmetric complete sum-free set when `|C| ≥ d`.
pub fn build_small(params: &IntervalAPParameters, mode: CheckMode) -> Result<CyclicSet> {
    params.require_hypothesis()?;
    let Components { a, b, c } = component_sets(params)?;
    let set = a
        .union(&a.negate())?
        .union(&b)?
        .union(&b.negate())?
        .union(&c)?;
    if mode == CheckMode::Checked {
        verify_construction(&set, params.expected_size())?;
    }
    Ok(set)
}

fn verify_construction(set: &CyclicSet, expected_size: usize) -> Result<()> {
    let props = set.properties();
    if !(props.symmetric && props.sum_free && props.complete) || props.size != expected_size {
        return Err(Error::ConstructionFailed(format!(
            "Z_{}: {props:?}, expected size {expected_size}",
            set.modulus()
        )));
    }
    Ok(())
}

/// `-B` and `A + B` are disjoint and together form
/// `[⌈n/2⌉ + t + 2d - 2, (⌊3n/2⌋ - t - 1)/2 - d + 1]`.
pub fn gap_fill_check(params: &IntervalAPParameters) -> Result<bool> {
    let Components { a, b, .. } = component_sets(params)?;
    let (t, d) = (params.t as i64, params.d as i64);
    let neg_b = b.negate();
    let a_plus_b = a.sumset(&b)?;
    let lo = params.ceil_half_n() + t + 2 * d - 2;
    let hi = half(params.floor_three_halves_n() - t - 1, "⌊3n/2⌋ - t - 1")? - d + 1;
    let expected = CyclicSet::interval(params.n, lo, hi)?;
    Ok(neg_b.is_disjoint(&a_plus_b)? && neg_b.union(&a_plus_b)? == expected)
}

/// `B + C = [(⌊3n/2⌋ - t + 1)/2 + 2d - 2, n - 2d + 2]`, given `|C| ≥ d`.
pub fn bc_interval_check(params: &IntervalAPParameters) -> Result<bool> {
    params.require_hypothesis()?;
    let Components { b, c, .. } = component_sets(params)?;
    let (t, d) = (params.t as i64, params.d as i64);
    let lo = half(params.floor_three_halves_n() - t + 1, "⌊3n/2⌋ - t + 1")? + 2 * d - 2;
    let hi = params.n as i64 - 2 * d + 2;
    let expected = CyclicSet::interval(params.n, lo, hi)?;
    Ok(b.sumset(&c)? == expected)
}

/// Output of the parameter solver for a given `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SolvedParameters {
    pub n: usize,
    pub t0: usize,
    pub d0: usize,
    pub k0: usize,
    pub a: usize,
}

impl SolvedParameters {
    pub fn variant(&self) -> Variant {
        Variant::from_offset(self.a).expect("solver picks 11 or 14")
    }
}

pub fn solve_parameters(n: usize) -> Result<SolvedParameters> {
    let fail = |constraint: String| Error::BelowConstructionThreshold { n, constraint };
    let root = n.isqrt() as i64;
    let d0 = (0..3)
        .map(|j| root - j)
        .find(|d| d.rem_euclid(3) == 1)
        .expect("one of three consecutive integers is 1 mod 3");
    if d0 < 2 {
        return Err(fail(format!("d0 = {d0} < 2")));
    }
    let a = Variant::for_parity(n).offset() as i64;
    let m = (n as i64 + a) / 2;
    let step = 2 * d0;
    let m_res = m.rem_euclid(step);
    let three_t0 = [1, 2, 3]
        .iter()
        .map(|j| m_res + j * step)
        .find(|x| x % 3 == 0)
        .expect("d0 ≡ 1 (mod 3) makes the three residues distinct mod 3");
    let t0 = three_t0 / 3;
    let k0 = (m - three_t0).div_euclid(step);
    debug_assert_eq!((m - three_t0).rem_euclid(step), 0);

    if k0 < 4 {
        return Err(fail(format!("k0 = {k0} < 4")));
    }
    if d0 > 2 * t0 + 1 {
        return Err(fail(format!("d0 = {d0} > 2·t0 + 1 = {}", 2 * t0 + 1)));
    }
    let solved = SolvedParameters {
        n,
        t0: t0 as usize,
        d0: d0 as usize,
        k0: k0 as usize,
        a: a as usize,
    };
    debug_assert_eq!(4 * solved.d0 * solved.k0 + 6 * solved.t0 - solved.a, n);
    Ok(solved)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LadderRung {
    pub index: usize,
    pub t: usize,
    pub d: usize,
    pub k: usize,
    pub size: usize,
}

/// Sizes `base + i·difference` for `i = 0..=b`, `b = ⌊(k0 - 4)/3⌋`, realized
/// by parameters `(t0 + 2·d0·i, d0, k0 - 3i)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SizeLadder {
    pub n: usize,
    pub solved: SolvedParameters,
    pub base_size: usize,
    pub difference: usize,
    pub rungs: Vec<LadderRung>,
}

impl SizeLadder {
    pub fn params(&self, rung: &LadderRung) -> IntervalAPParameters {
        IntervalAPParameters::new(rung.t, rung.d, rung.k, self.solved.variant())
            .expect("ladder rungs satisfy the parameter invariants")
    }

    pub fn build(&self, rung: &LadderRung, mode: CheckMode) -> Result<CyclicSet> {
        build_small(&self.params(rung), mode)
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.rungs.iter().map(|r| r.size).collect()
    }

    pub fn first(&self) -> &LadderRung {
        &self.rungs[0]
    }

    pub fn last(&self) -> &LadderRung {
        self.rungs.last().expect("ladder has at least one rung")
    }
}

pub fn size_ladder(n: usize) -> Result<SizeLadder> {
    let solved = solve_parameters(n)?;
    let SolvedParameters { t0, d0, k0, .. } = solved;
    let b = (k0 - 4) / 3;
    let variant = solved.variant();
    let rungs = (0..=b)
        .map(|i| {
            let params = IntervalAPParameters::new(t0 + 2 * d0 * i, d0, k0 - 3 * i, variant)?;
            debug_assert_eq!(params.n(), n);
            params.require_hypothesis()?;
            Ok(LadderRung {
                index: i,
                t: params.t(),
                d: params.d(),
                k: params.k(),
                size: params.expected_size(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SizeLadder {
        n,
        solved,
        base_size: rungs[0].size,
        difference: 2 * (2 * d0 - 3),
        rungs,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityChoice {
    pub n: usize,
    pub alpha: f64,
    pub rung: LadderRung,
    pub deviation: f64,
    pub set: CyclicSet,
}

/// The ladder set whose size is closest to `alpha·n`; ties go to the smaller.
pub fn nearest_density_set(n: usize, alpha: f64, mode: CheckMode) -> Result<DensityChoice> {
    if !(0.0..=1.0 / 3.0).contains(&alpha) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    let ladder = size_ladder(n)?;
    let target = alpha * n as f64;
    let rung = *ladder
        .rungs
        .iter()
        .min_by(|x, y| {
            let dx = (x.size as f64 - target).abs();
            let dy = (y.size as f64 - target).abs();
            dx.total_cmp(&dy).then(x.size.cmp(&y.size))
        })
        .expect("ladder has at least one rung");
    let set = ladder.build(&rung, mode)?;
    Ok(DensityChoice {
        n,
        alpha,
        rung,
        deviation: (rung.size as f64 / n as f64 - alpha).abs(),
        set,
    })
}

/// The first ladder rung: size `2(d0 + k0 + t0) - 7` (even n) or `- 6` (odd n).
pub fn smallest_set(n: usize, mode: CheckMode) -> Result<(LadderRung, CyclicSet)> {
    let ladder = size_ladder(n)?;
    let rung = *ladder.first();
    Ok((rung, ladder.build(&rung, mode)?))
}
