//! Exceptional candidate values and the elimination pipeline.
//!
//! A candidate is a pair `(a, b)` with `a = L·C` and `b = mult_x C` for a
//! curve `C` that could compute `ε(L;1) = a / b` below the bound `p d / q`.
//! Enumeration covers `2 <= b < q^2` and `b <= a < b p d / q`; together with
//! the smooth values `1..=⌊√d⌋` this is the exceptional set. Filters then
//! discard candidates that contradict one of the known geometric constraints.

use alloc::collections::BTreeSet;
use core::cmp::Ordering;

use num_integer::Integer;
use num_traits::{One, Signed};

use crate::arith::{isqrt, Int, Rat};
use crate::pell::PellSolution;
use crate::Error;

mod filters;
mod pipeline;

pub use filters::{
    filter_fibration, filter_gino, filter_hodge_xu, filter_rationality, filter_rho1_divisibility,
    filter_xu, FilterId, Note, Outcome, Verdict,
};
pub use pipeline::{
    run_pipeline, ConjectureStatus, DegreeReport, Detail, FilterTrace, PipelineConfig, Stage,
    Subject,
};

/// `(a, b) = (L·C, mult_x C)`, not necessarily coprime.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CandidatePair {
    a: Int,
    b: Int,
}

impl CandidatePair {
    /// Requires `b >= 1`. Range conditions are checked by the enumerator,
    /// not here.
    pub fn new(a: Int, b: Int) -> Result<CandidatePair, Error> {
        if !b.is_positive() {
            return Err(Error::ZeroDenominator);
        }
        Ok(CandidatePair { a, b })
    }

    pub fn a(&self) -> &Int {
        &self.a
    }

    pub fn b(&self) -> &Int {
        &self.b
    }

    /// `a / b` in lowest terms.
    pub fn value(&self) -> Rat {
        Rat::ratio(&self.a, &self.b)
    }

    /// Ordering used for reports: by value, then by multiplicity.
    pub fn cmp_by_value(&self, other: &CandidatePair) -> Ordering {
        (&self.a * &other.b)
            .cmp(&(&other.a * &self.b))
            .then_with(|| self.b.cmp(&other.b))
    }
}

/// Enumeration order: `b` ascending, then `a` ascending.
impl Ord for CandidatePair {
    fn cmp(&self, other: &CandidatePair) -> Ordering {
        self.b.cmp(&other.b).then_with(|| self.a.cmp(&other.a))
    }
}

impl PartialOrd for CandidatePair {
    fn partial_cmp(&self, other: &CandidatePair) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl core::fmt::Display for CandidatePair {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// `{1, ..., ⌊√d⌋}`: the values a smooth Seshadri curve can give.
pub fn smooth_values(d: &Int) -> Result<BTreeSet<Int>, Error> {
    if d < &Int::one() {
        return Err(Error::InvalidDegree(d.clone()));
    }
    let top = isqrt(d)?;
    let mut out = BTreeSet::new();
    let mut v = Int::one();
    while v <= top {
        out.insert(v.clone());
        v += 1u32;
    }
    Ok(out)
}

/// Lazy enumeration of candidate pairs, `b` ascending then `a` ascending.
#[derive(Clone, Debug)]
pub struct PairIter {
    pd: Int,
    q: Int,
    b_end: Int,
    strict_lower: bool,
    b: Int,
    a: Int,
    a_max: Int,
    work: u64,
}

impl PairIter {
    fn new(d: &Int, p: &Int, q: &Int, strict_lower: bool) -> PairIter {
        let mut it = PairIter {
            pd: p * d,
            q: q.clone(),
            b_end: q * q,
            strict_lower,
            b: Int::from(1u32),
            a: Int::one(),
            a_max: Int::from(0u32),
            work: 0,
        };
        it.advance_row();
        it
    }

    /// Largest `a` with `a q < b p d`.
    fn row_max(&self, b: &Int) -> Int {
        (b * &self.pd - 1u32).div_floor(&self.q)
    }

    fn advance_row(&mut self) {
        self.b += 1u32;
        self.work += 1;
        self.a = if self.strict_lower { &self.b + 1u32 } else { self.b.clone() };
        self.a_max = self.row_max(&self.b);
    }

    /// Rows visited plus pairs yielded so far.
    pub fn work(&self) -> u64 {
        self.work
    }
}

impl Iterator for PairIter {
    type Item = CandidatePair;

    fn next(&mut self) -> Option<CandidatePair> {
        loop {
            if self.b >= self.b_end {
                return None;
            }
            if self.a <= self.a_max {
                let pair = CandidatePair { a: self.a.clone(), b: self.b.clone() };
                self.a += 1u32;
                self.work += 1;
                return Some(pair);
            }
            self.advance_row();
        }
    }
}

fn check_pell(d: &Int, p: &Int, q: &Int) -> Result<(), Error> {
    PellSolution::new(d, p.clone(), q.clone(), 1).map(|_| ())
}

/// Every pair with `2 <= b < q^2`, `a q < b p d` and `a >= b`
/// (`a >= b + 1` when `strict_lower`).
pub fn enumerate_pairs(d: &Int, p: &Int, q: &Int, strict_lower: bool) -> Result<PairIter, Error> {
    check_pell(d, p, q)?;
    Ok(PairIter::new(d, p, q, strict_lower))
}

/// `Σ_{i=0}^{n-1} ⌊(a i + b) / m⌋` for `n, a, b >= 0` and `m >= 1`, in
/// logarithmically many steps.
fn floor_sum(n: &Int, m: &Int, a: &Int, b: &Int) -> Int {
    let (mut n, mut m, mut a, mut b) = (n.clone(), m.clone(), a.clone(), b.clone());
    let mut total = Int::from(0u32);
    loop {
        if a >= m {
            total += (&n - 1u32) * &n / 2u32 * (&a / &m);
            a %= &m;
        }
        if b >= m {
            total += &n * (&b / &m);
            b %= &m;
        }
        let y_max = &a * &n + &b;
        if y_max < m {
            return total;
        }
        n = &y_max / &m;
        b = &y_max % &m;
        core::mem::swap(&mut m, &mut a);
    }
}

/// Number of pairs [`enumerate_pairs`] yields, without enumerating them.
///
/// Row `b` holds `⌊(b p d - 1) / q⌋ - b + 1` pairs (one fewer when
/// `strict_lower`), never negative because `p d > q`.
pub fn pair_count(d: &Int, p: &Int, q: &Int, strict_lower: bool) -> Result<Int, Error> {
    check_pell(d, p, q)?;
    let rows = q * q - 2u32;
    let pd = p * d;
    let tops = floor_sum(&rows, q, &pd, &(&pd * 2u32 - 1u32));
    // Σ_{b=2}^{q^2-1} (b - 1)
    let lows = &rows * (&rows + 1u32) / 2u32;
    let strict = if strict_lower { rows } else { Int::from(0u32) };
    Ok(tops - lows - strict)
}

/// Total [`PairIter::work`] of a full enumeration: every row from `b = 2`
/// to the terminating `b = q^2`, plus every pair.
pub fn enumeration_work(d: &Int, p: &Int, q: &Int, strict_lower: bool) -> Result<Int, Error> {
    Ok(pair_count(d, p, q, strict_lower)? + q * q - 1u32)
}

/// The exceptional set as distinct reduced values.
pub fn exc_set(d: &Int, p: &Int, q: &Int) -> Result<BTreeSet<Rat>, Error> {
    let pairs = enumerate_pairs(d, p, q, false)?;
    let mut out: BTreeSet<Rat> = smooth_values(d)?.into_iter().map(Rat::from_int).collect();
    out.extend(pairs.map(|pair| pair.value()));
    Ok(out)
}

/// Membership in the exceptional set without enumerating it.
///
/// A reduced value `n/m` is a member iff it is a smooth value, or
/// `1 <= n/m < p d / q` and some multiple `(jn, jm)` has `2 <= jm < q^2`.
/// The smallest multiple with `jm >= 2` is `m` itself, or `2m` when `m = 1`.
pub fn in_exc_set(d: &Int, p: &Int, q: &Int, value: &Rat) -> Result<bool, Error> {
    check_pell(d, p, q)?;
    if value.is_integer() && value.num().is_positive() && value.num() <= &isqrt(d)? {
        return Ok(true);
    }
    let below_bound = value.num() * q < value.den() * p * d;
    let at_least_one = value.num() >= value.den();
    let mult = if value.den().is_one() { Int::from(2u32) } else { value.den().clone() };
    Ok(below_bound && at_least_one && mult < q * q)
}
