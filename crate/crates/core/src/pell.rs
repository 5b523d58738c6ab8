//! Continued fraction of `√d` and solutions of `y^2 - d x^2 = 1`.
//!
//! Solutions are written `(p, q)` with `p` the `x` coordinate and `q` the `y`
//! coordinate, so `p d / q` is a rational approximation of `√d` from below.

use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::arith::{is_square, isqrt, Int, Rat};
use crate::Error;

/// `√d = [a0; period, period, ...]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuedFractionExpansion {
    pub d: Int,
    pub a0: Int,
    /// One full period; the last entry is always `2 a0`.
    pub period: Vec<Int>,
}

impl ContinuedFractionExpansion {
    /// Partial quotients `a0, a1, a2, ...` without end.
    pub fn partial_quotients(&self) -> impl Iterator<Item = &Int> + '_ {
        core::iter::once(&self.a0).chain(self.period.iter().cycle())
    }

    /// Convergents `h_k / k_k` as `(h_k, k_k)` pairs.
    pub fn convergents(&self) -> Convergents<'_> {
        Convergents {
            quotients: alloc::boxed::Box::new(self.partial_quotients()),
            prev: (Int::zero(), Int::one()),
            cur: (Int::one(), Int::zero()),
        }
    }
}

pub struct Convergents<'a> {
    quotients: alloc::boxed::Box<dyn Iterator<Item = &'a Int> + 'a>,
    // (h_{k-2}, k_{k-2}) and (h_{k-1}, k_{k-1})
    prev: (Int, Int),
    cur: (Int, Int),
}

impl Iterator for Convergents<'_> {
    type Item = (Int, Int);

    fn next(&mut self) -> Option<(Int, Int)> {
        let a = self.quotients.next()?;
        let h = a * &self.cur.0 + &self.prev.0;
        let k = a * &self.cur.1 + &self.prev.1;
        let next = (h, k);
        self.prev = core::mem::replace(&mut self.cur, next.clone());
        Some(next)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PellSolution {
    p: Int,
    q: Int,
    index: u64,
}

impl PellSolution {
    /// Validates `q^2 - d p^2 = 1` with `p >= 1`.
    pub fn new(d: &Int, p: Int, q: Int, index: u64) -> Result<PellSolution, Error> {
        if index < 1 {
            return Err(Error::InvalidIndex(Int::from(index)));
        }
        if !p.is_positive() || &q * &q - d * &p * &p != Int::one() {
            return Err(Error::InvalidPellPair { d: d.clone(), p, q });
        }
        Ok(PellSolution { p, q, index })
    }

    pub fn p(&self) -> &Int {
        &self.p
    }

    pub fn q(&self) -> &Int {
        &self.q
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    /// `p d / q`.
    pub fn bound(&self, d: &Int) -> Rat {
        Rat::ratio(&(&self.p * d), &self.q)
    }

    /// `q^2 - d p^2 - 1`; zero for every valid solution.
    pub fn residual(&self, d: &Int) -> Int {
        &self.q * &self.q - d * &self.p * &self.p - 1
    }
}

fn check_degree(d: &Int) -> Result<(), Error> {
    if !d.is_positive() || is_square(d) {
        return Err(Error::NotPositiveNonSquare(d.clone()));
    }
    Ok(())
}

pub fn cf_sqrt(d: &Int) -> Result<ContinuedFractionExpansion, Error> {
    check_degree(d)?;
    let a0 = isqrt(d)?;
    let two_a0 = &a0 * 2u32;
    let (mut m, mut c, mut a) = (Int::zero(), Int::one(), a0.clone());
    let mut period = Vec::new();
    while a != two_a0 {
        m = &c * &a - &m;
        c = (d - &m * &m) / &c;
        a = (&a0 + &m) / &c;
        period.push(a.clone());
    }
    Ok(ContinuedFractionExpansion { d: d.clone(), a0, period })
}

/// The solution with the smallest `q >= 2`.
pub fn fundamental_solution(d: &Int) -> Result<PellSolution, Error> {
    let cf = cf_sqrt(d)?;
    let r = cf.period.len();
    // The convergent before the end of the period solves y^2 - d x^2 = (-1)^r.
    let terms = if r % 2 == 0 { r } else { 2 * r };
    let (q, p) = cf.convergents().nth(terms - 1).expect("periodic expansion is infinite");
    PellSolution::new(d, p, q, 1)
}

/// Successive solutions starting from the fundamental one.
pub fn solutions(d: &Int) -> Result<impl Iterator<Item = PellSolution>, Error> {
    let first = fundamental_solution(d)?;
    let d = d.clone();
    let (p1, q1) = (first.p.clone(), first.q.clone());
    Ok(core::iter::successors(Some(first), move |s| {
        Some(PellSolution {
            q: &q1 * &s.q + &d * &p1 * &s.p,
            p: &q1 * &s.p + &p1 * &s.q,
            index: s.index + 1,
        })
    }))
}

pub fn nth_solution(d: &Int, k: &Int) -> Result<PellSolution, Error> {
    if k < &Int::one() {
        return Err(Error::InvalidIndex(k.clone()));
    }
    let k: u64 = k.try_into().map_err(|_| Error::InvalidIndex(k.clone()))?;
    let k = usize::try_from(k).map_err(|_| Error::InvalidIndex(Int::from(k)))?;
    Ok(solutions(d)?.nth(k - 1).expect("solution sequence is infinite"))
}

/// `p0 d / q0` for the fundamental solution.
pub fn conjecture_bound(d: &Int) -> Result<Rat, Error> {
    Ok(fundamental_solution(d)?.bound(d))
}
