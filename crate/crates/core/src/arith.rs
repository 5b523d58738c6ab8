//! Exact integers and reduced rationals.
//!
//! [`Int`] is an arbitrary-precision signed integer. [`Rat`] is always stored
//! in lowest terms with a positive denominator, so structural equality is
//! numeric equality and rationals can live in ordered sets directly.

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Error;

pub type Int = BigInt;

/// Floor of the square root: the `r` with `r^2 <= n < (r + 1)^2`.
pub fn isqrt(n: &Int) -> Result<Int, Error> {
    if n.is_negative() {
        return Err(Error::NegativeSqrt(n.clone()));
    }
    Ok(n.sqrt())
}

pub fn is_square(n: &Int) -> bool {
    match isqrt(n) {
        Ok(r) => &r * &r == *n,
        Err(_) => false,
    }
}

/// Orders `r` against `√(m / s)` without leaving the integers.
///
/// Both sides are non-negative, so the order of `r` and `√(m/s)` is the order
/// of `r^2 s` and `m`, i.e. of `num^2 s` and `m den^2`.
pub fn rat_cmp_sqrt(r: &Rat, m: &Int, s: &Int) -> Result<Ordering, Error> {
    if s.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    if s.is_negative() || m.is_negative() || r.num.is_negative() {
        return Err(Error::NegativeOperand);
    }
    let lhs = &r.num * &r.num * s;
    let rhs = m * &r.den * &r.den;
    Ok(lhs.cmp(&rhs))
}

/// A rational number in lowest terms with positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rat {
    num: Int,
    den: Int,
}

impl Rat {
    pub fn new(num: Int, den: Int) -> Result<Rat, Error> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num / &g, den / &g);
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        Ok(Rat { num, den })
    }

    pub fn from_int(n: Int) -> Rat {
        Rat { num: n, den: Int::one() }
    }

    /// `a / b` for `b >= 1`; panics on a zero denominator.
    pub(crate) fn ratio(a: &Int, b: &Int) -> Rat {
        Rat::new(a.clone(), b.clone()).expect("nonzero denominator")
    }

    pub fn num(&self) -> &Int {
        &self.num
    }

    pub fn den(&self) -> &Int {
        &self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    /// Decimal rendering rounded half-up to `digits` places. Display only.
    pub fn to_decimal(&self, digits: usize) -> String {
        use core::fmt::Write;

        let scale = num_traits::pow(Int::from(10u32), digits);
        let neg = self.num.is_negative();
        let scaled = (self.num.abs() * &scale * 2u32 + &self.den) / (&self.den * 2u32);
        let (int_part, frac_part) = scaled.div_rem(&scale);
        let mut out = String::new();
        if neg && !scaled.is_zero() {
            out.push('-');
        }
        let _ = write!(out, "{int_part}");
        if digits > 0 {
            let frac = alloc::format!("{frac_part}");
            out.push('.');
            for _ in frac.len()..digits {
                out.push('0');
            }
            out.push_str(&frac);
        }
        out
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Rat) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Rat) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Int> for Rat {
    fn from(n: Int) -> Rat {
        Rat::from_int(n)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Parses `"num/den"` or a bare integer.
impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Rat, Error> {
        let bad = || Error::InvalidParameter("malformed rational");
        match s.split_once('/') {
            Some((n, d)) => Rat::new(
                Int::from_str(n.trim()).map_err(|_| bad())?,
                Int::from_str(d.trim()).map_err(|_| bad())?,
            ),
            None => Ok(Rat::from_int(Int::from_str(s.trim()).map_err(|_| bad())?)),
        }
    }
}
