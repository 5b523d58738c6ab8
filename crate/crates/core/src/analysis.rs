//! Degree classification and finite-grid checks of the arithmetic
//! contradictions behind the multiplicity bound `b < q^2` and the `p0 = 1`,
//! `p0 = 2` families.
//!
//! Each verifier evaluates an integer margin per grid cell; a cell passes
//! when its margin is at least 1. The margins have closed forms, which the
//! tests use as independent oracles.

use alloc::vec::Vec;
use core::fmt;

use num_traits::One;

use crate::arith::{is_square, isqrt, Int};
use crate::pell::{fundamental_solution, PellSolution};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pattern {
    /// `d = n^2 - 1`, primitive solution `(1, n)`.
    NSquaredMinusOne(Int),
    /// `d = n^2 + n`, primitive solution `(2, 2n + 1)`.
    NSquaredPlusN(Int),
    Other,
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::NSquaredMinusOne(n) => write!(f, "n^2-1 (n={n})"),
            Pattern::NSquaredPlusN(n) => write!(f, "n^2+n (n={n})"),
            Pattern::Other => f.write_str("other"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeClass {
    pub d: Int,
    pub square: bool,
    /// `None` for square `d`.
    pub primitive: Option<PellSolution>,
    pub pattern: Pattern,
}

impl DegreeClass {
    /// The primitive solution the pattern predicts, if any.
    pub fn predicted(&self) -> Option<(Int, Int)> {
        match &self.pattern {
            Pattern::NSquaredMinusOne(n) => Some((Int::one(), n.clone())),
            Pattern::NSquaredPlusN(n) => Some((Int::from(2u32), n * 2u32 + 1u32)),
            Pattern::Other => None,
        }
    }
}

pub fn classify_d(d: &Int) -> Result<DegreeClass, Error> {
    if d < &Int::one() {
        return Err(Error::InvalidDegree(d.clone()));
    }
    let square = is_square(d);
    let n = isqrt(&(d + 1u32))?;
    let pattern = if &n * &n == d + 1u32 {
        Pattern::NSquaredMinusOne(n)
    } else {
        // n^2 <= n^2 + n < (n + 1)^2, so n = ⌊√d⌋ is the only candidate.
        let n = isqrt(d)?;
        if &n * &n + &n == *d {
            Pattern::NSquaredPlusN(n)
        } else {
            Pattern::Other
        }
    };
    let primitive = if square { None } else { Some(fundamental_solution(d)?) };
    Ok(DegreeClass { d: d.clone(), square, primitive, pattern })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Claim {
    /// No `b >= q^2` survives the area inequality.
    MainBound,
    P0One,
    P0Two,
}

impl Claim {
    pub fn name(self) -> &'static str {
        match self {
            Claim::MainBound => "main",
            Claim::P0One => "p0-1",
            Claim::P0Two => "p0-2",
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Inclusive range of one grid parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Axis {
    pub name: &'static str,
    pub lo: Int,
    pub hi: Int,
}

/// A grid cell whose margin fell below 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Counterexample {
    pub params: Vec<(&'static str, Int)>,
    pub margin: Int,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub claim: Claim,
    pub axes: Vec<Axis>,
    pub cells: u64,
    pub counterexamples: Vec<Counterexample>,
    /// Smallest margin over all cells; `None` for an empty grid.
    pub min_margin: Option<Int>,
}

impl VerificationReport {
    fn new(claim: Claim, axes: Vec<Axis>) -> VerificationReport {
        VerificationReport { claim, axes, cells: 0, counterexamples: Vec::new(), min_margin: None }
    }

    fn record(&mut self, params: Vec<(&'static str, Int)>, margin: Int) {
        self.cells += 1;
        if self.min_margin.as_ref().is_none_or(|m| &margin < m) {
            self.min_margin = Some(margin.clone());
        }
        if margin < Int::one() {
            self.counterexamples.push(Counterexample { params, margin });
        }
    }

    fn finish(mut self) -> VerificationReport {
        self.counterexamples.sort();
        self
    }

    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty() && self.min_margin.as_ref().is_none_or(|m| m >= &Int::one())
    }
}

fn int(n: u64) -> Int {
    Int::from(n)
}

/// `d b (b-1) - a_max^2` where `a_max` is the largest `a` with `a q < b p d`.
pub fn main_bound_margin(d: &Int, p: &Int, q: &Int, b: &Int) -> Int {
    let a_max = (b * p * d - 1u32) / q;
    d * b * (b - 1u32) - &a_max * &a_max
}

/// For each `b` in `[q^2, q^2 + window)`, every admissible `a` violates the
/// area inequality. Checking the largest admissible `a` suffices.
pub fn verify_main_bqsq(d: &Int, p: &Int, q: &Int, window: u64) -> Result<VerificationReport, Error> {
    PellSolution::new(d, p.clone(), q.clone(), 1)?;
    if window < 1 {
        return Err(Error::InvalidParameter("window must be at least 1"));
    }
    let start = q * q;
    let end = &start + int(window);
    let mut report = VerificationReport::new(
        Claim::MainBound,
        alloc::vec![Axis { name: "b", lo: start.clone(), hi: &end - 1u32 }],
    );
    let mut b = start;
    while b < end {
        let margin = main_bound_margin(d, p, q, &b);
        report.record(alloc::vec![("d", d.clone()), ("b", b.clone())], margin);
        b += 1u32;
    }
    Ok(report.finish())
}

/// `(kn+1) kn + 1 - k^2 (n^2 - 1)`.
pub fn p0_1_margin(n: &Int, k: &Int) -> Int {
    let kn = k * n;
    (&kn + 1u32) * &kn + 1u32 - k * k * (n * n - 1u32)
}

pub fn verify_p0_1(n_max: u64, k_max: u64) -> Result<VerificationReport, Error> {
    if n_max < 1 || k_max < 1 {
        return Err(Error::InvalidParameter("n_max and k_max must be at least 1"));
    }
    let mut report = VerificationReport::new(
        Claim::P0One,
        alloc::vec![
            Axis { name: "n", lo: int(1), hi: int(n_max) },
            Axis { name: "k", lo: int(1), hi: int(k_max) },
        ],
    );
    for n in 1..=n_max {
        for k in 1..=k_max {
            let (n, k) = (int(n), int(k));
            let margin = p0_1_margin(&n, &k);
            report.record(alloc::vec![("n", n), ("k", k)], margin);
        }
    }
    Ok(report.finish())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    /// `k = 2l`, `l >= 1`.
    Even,
    /// `k = 2l + 1`, `l >= 0`.
    Odd,
}

/// Smallest multiplicity allowed by `k (2n+1) / 2 < b`, for `k = 2l` or `2l+1`.
pub fn p0_2_min_b(parity: Parity, n: &Int, l: &Int) -> Int {
    match parity {
        Parity::Even => (l * 2u32) * n + l + 1u32,
        Parity::Odd => (l * 2u32 + 1u32) * n + l + 1u32,
    }
}

/// `b_min (b_min - 1) + 1 - k^2 (n^2 + n)`.
pub fn p0_2_margin(parity: Parity, n: &Int, l: &Int) -> Int {
    let k = match parity {
        Parity::Even => l * 2u32,
        Parity::Odd => l * 2u32 + 1u32,
    };
    let b = p0_2_min_b(parity, n, l);
    &b * (&b - 1u32) + 1u32 - &k * &k * (n * n + n)
}

pub fn verify_p0_2_parity(n_max: u64, l_max: u64, parity: Parity) -> Result<VerificationReport, Error> {
    if n_max < 1 || l_max < 1 {
        return Err(Error::InvalidParameter("n_max and l_max must be at least 1"));
    }
    let l_lo = match parity {
        Parity::Even => 1,
        Parity::Odd => 0,
    };
    let mut report = VerificationReport::new(
        Claim::P0Two,
        alloc::vec![
            Axis { name: "n", lo: int(1), hi: int(n_max) },
            Axis { name: "l", lo: int(l_lo), hi: int(l_max) },
        ],
    );
    let tag = match parity {
        Parity::Even => int(0),
        Parity::Odd => int(1),
    };
    for n in 1..=n_max {
        for l in l_lo..=l_max {
            let (n, l) = (int(n), int(l));
            let margin = p0_2_margin(parity, &n, &l);
            report.record(alloc::vec![("k_mod_2", tag.clone()), ("n", n), ("l", l)], margin);
        }
    }
    Ok(report.finish())
}

/// Both parities of `k` merged into one report.
pub fn verify_p0_2(n_max: u64, l_max: u64) -> Result<VerificationReport, Error> {
    let even = verify_p0_2_parity(n_max, l_max, Parity::Even)?;
    let odd = verify_p0_2_parity(n_max, l_max, Parity::Odd)?;
    let mut merged = VerificationReport::new(
        Claim::P0Two,
        alloc::vec![
            Axis { name: "k_mod_2", lo: int(0), hi: int(1) },
            Axis { name: "n", lo: int(1), hi: int(n_max) },
            Axis { name: "l", lo: int(0), hi: int(l_max) },
        ],
    );
    merged.cells = even.cells + odd.cells;
    merged.min_margin = match (even.min_margin, odd.min_margin) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    };
    merged.counterexamples = even.counterexamples;
    merged.counterexamples.extend(odd.counterexamples);
    Ok(merged.finish())
}
