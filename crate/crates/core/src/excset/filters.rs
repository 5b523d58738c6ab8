use core::fmt;
use core::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::CandidatePair;
use crate::arith::{rat_cmp_sqrt, Int, Rat};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FilterId {
    Range,
    Gino,
    Fibration,
    Rho1Divisibility,
    XuMovingCurve,
    HodgeXu,
    Rationality,
}

impl FilterId {
    pub const ALL: [FilterId; 7] = [
        FilterId::Range,
        FilterId::Gino,
        FilterId::Fibration,
        FilterId::Rho1Divisibility,
        FilterId::XuMovingCurve,
        FilterId::HodgeXu,
        FilterId::Rationality,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FilterId::Range => "range",
            FilterId::Gino => "gino",
            FilterId::Fibration => "fibration",
            FilterId::Rho1Divisibility => "rho1-divisibility",
            FilterId::XuMovingCurve => "xu-moving-curve",
            FilterId::HodgeXu => "hodge-xu",
            FilterId::Rationality => "rationality",
        }
    }

    /// The constraint the filter enforces.
    pub fn citation(self) -> &'static str {
        match self {
            FilterId::Range => "range of the exceptional set: 2 <= b < q^2, b <= a < b*p*d/q",
            FilterId::Gino => {
                "infinitesimal Newton-Okounkov area inequality (a/b)(a/(b-1)) >= d"
            }
            FilterId::Fibration => {
                "below sqrt(3d/4) the surface is fibred by Seshadri curves, so the value is an integer"
            }
            FilterId::Rho1Divisibility => "Picard number one: C in |kL|, so d divides a = L.C",
            FilterId::XuMovingCurve => {
                "moving curves of multiplicity b satisfy (C^2) = k^2 d >= b(b-1) + gon(C)"
            }
            FilterId::HodgeXu => "Hodge index with the moving-curve bound: d(b(b-1)+1) <= a^2",
            FilterId::Rationality => {
                "gonality 1 makes X rational with Picard number one, i.e. P^2, forcing d = 1"
            }
        }
    }

    /// Only meaningful on surfaces with Picard number one.
    pub fn requires_rho1(self) -> bool {
        matches!(
            self,
            FilterId::Rho1Divisibility | FilterId::XuMovingCurve | FilterId::Rationality
        )
    }

    /// Acts on distinct values rather than on pairs.
    pub fn is_value_level(self) -> bool {
        self == FilterId::Fibration
    }
}

impl fmt::Display for FilterId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownFilter;

impl fmt::Display for UnknownFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("unknown filter name")
    }
}

impl FromStr for FilterId {
    type Err = UnknownFilter;

    fn from_str(s: &str) -> Result<FilterId, UnknownFilter> {
        FilterId::ALL.into_iter().find(|f| f.name() == s).ok_or(UnknownFilter)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Eliminated,
    Kept,
    /// Possible only when the surface is fibred by Seshadri curves.
    Conditional,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Eliminated => "eliminated",
            Verdict::Kept => "kept",
            Verdict::Conditional => "conditional",
        }
    }

    fn keep_if(cond: bool) -> Verdict {
        if cond {
            Verdict::Kept
        } else {
            Verdict::Eliminated
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Extra data a filter derives on the way to its verdict.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Note {
    /// `k` with `a = k d`.
    Quotient(Int),
    /// Largest gonality compatible with `k^2 d >= b(b-1) + gon`; 0 if none.
    MaxGonality(Int),
}

impl fmt::Display for Note {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Note::Quotient(k) => write!(f, "k={k}"),
            Note::MaxGonality(g) => write!(f, "max_gon={g}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub verdict: Verdict,
    pub note: Option<Note>,
}

impl Outcome {
    fn plain(verdict: Verdict) -> Outcome {
        Outcome { verdict, note: None }
    }
}

fn require_singular(pair: &CandidatePair) -> Result<(), Error> {
    if pair.b() < &Int::from(2u32) {
        return Err(Error::MultiplicityTooSmall(pair.b().clone()));
    }
    Ok(())
}

fn quotient(pair: &CandidatePair, d: &Int) -> Result<Int, Error> {
    let (k, r) = pair.a().div_rem(d);
    if !r.is_zero() {
        return Err(Error::NotDivisible { d: d.clone(), a: pair.a().clone() });
    }
    Ok(k)
}

/// Kept iff `a^2 >= d b (b - 1)`.
pub fn filter_gino(pair: &CandidatePair, d: &Int) -> Result<Verdict, Error> {
    require_singular(pair)?;
    let b = pair.b();
    Ok(Verdict::keep_if(pair.a() * pair.a() >= d * b * (b - 1u32)))
}

/// Values at or above `√(3d/4)` are kept. Below it only integers survive,
/// and only through a fibration, which Picard number one rules out.
pub fn filter_fibration(value: &Rat, d: &Int, rho1: bool) -> Result<Verdict, Error> {
    let above = rat_cmp_sqrt(value, &(d * 3u32), &Int::from(4u32))?.is_ge();
    Ok(if above {
        Verdict::Kept
    } else if !value.is_integer() || rho1 {
        Verdict::Eliminated
    } else {
        Verdict::Conditional
    })
}

/// Kept iff `d | a`; the quotient is reported.
pub fn filter_rho1_divisibility(pair: &CandidatePair, d: &Int) -> Result<Outcome, Error> {
    require_singular(pair)?;
    Ok(match quotient(pair, d) {
        Ok(k) => Outcome { verdict: Verdict::Kept, note: Some(Note::Quotient(k)) },
        Err(_) => Outcome::plain(Verdict::Eliminated),
    })
}

/// Moving-curve bound with `(C^2) = k^2 d`: kept iff
/// `b(b-1) + gon_min <= k^2 d`. Requires `d | a`.
pub fn filter_xu(pair: &CandidatePair, d: &Int, gon_min: &Int) -> Result<Outcome, Error> {
    require_singular(pair)?;
    if gon_min < &Int::one() {
        return Err(Error::InvalidGonality(gon_min.clone()));
    }
    let k = quotient(pair, d)?;
    let b = pair.b();
    let slack = &k * &k * d - b * (b - 1u32);
    let verdict = Verdict::keep_if(&slack >= gon_min);
    let max_gon = if slack.is_positive() { slack } else { Int::zero() };
    Ok(Outcome { verdict, note: Some(Note::MaxGonality(max_gon)) })
}

/// Eliminates pairs whose only admissible gonality is 1, unless `d = 1`.
pub fn filter_rationality(pair: &CandidatePair, d: &Int) -> Result<Outcome, Error> {
    let xu = filter_xu(pair, d, &Int::one())?;
    let forced_rational = xu.verdict == Verdict::Kept && xu.note == Some(Note::MaxGonality(Int::one()));
    let verdict = Verdict::keep_if(!(forced_rational && !d.is_one()));
    Ok(Outcome { verdict, note: xu.note })
}

/// Kept iff `d (b(b-1) + 1) <= a^2` for the reduced form `a/b` of the value.
pub fn filter_hodge_xu(pair: &CandidatePair, d: &Int) -> Result<Verdict, Error> {
    require_singular(pair)?;
    let v = pair.value();
    let (a, b) = (v.num(), v.den());
    Ok(Verdict::keep_if(d * (b * (b - 1u32) + 1u32) <= a * a))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> Int {
        Int::from(n)
    }

    fn pair(a: i64, b: i64) -> CandidatePair {
        CandidatePair::new(int(a), int(b)).unwrap()
    }

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(int(n), int(d)).unwrap()
    }

    #[test]
    fn names_round_trip() {
        for f in FilterId::ALL {
            assert_eq!(f.name().parse::<FilterId>(), Ok(f));
        }
        assert_eq!("xu".parse::<FilterId>(), Err(UnknownFilter));
    }

    #[test]
    fn gino() {
        assert_eq!(filter_gino(&pair(4, 2), &int(5)), Ok(Verdict::Kept));
        assert_eq!(filter_gino(&pair(151, 68), &int(5)), Ok(Verdict::Kept));
        assert_eq!(filter_gino(&pair(3, 2), &int(5)), Ok(Verdict::Eliminated));
        // equality is kept
        assert_eq!(filter_gino(&pair(49, 19), &int(7)), Ok(Verdict::Kept));
        assert_eq!(filter_gino(&pair(3, 1), &int(5)), Err(Error::MultiplicityTooSmall(int(1))));
    }

    #[test]
    fn fibration() {
        assert_eq!(filter_fibration(&rat(4, 3), &int(3), false), Ok(Verdict::Eliminated));
        assert_eq!(filter_fibration(&rat(17, 8), &int(6), false), Ok(Verdict::Kept));
        assert_eq!(filter_fibration(&rat(2, 1), &int(8), false), Ok(Verdict::Conditional));
        assert_eq!(filter_fibration(&rat(2, 1), &int(8), true), Ok(Verdict::Eliminated));
        // 3/2 = √(3·3/4) exactly: not below the threshold
        assert_eq!(filter_fibration(&rat(3, 2), &int(3), false), Ok(Verdict::Kept));
    }

    #[test]
    fn divisibility() {
        let out = filter_rho1_divisibility(&pair(10, 5), &int(5)).unwrap();
        assert_eq!(out, Outcome { verdict: Verdict::Kept, note: Some(Note::Quotient(int(2))) });
        let out = filter_rho1_divisibility(&pair(11, 5), &int(5)).unwrap();
        assert_eq!(out.verdict, Verdict::Eliminated);
        let out = filter_rho1_divisibility(&pair(28, 11), &int(7)).unwrap();
        assert_eq!(out.note, Some(Note::Quotient(int(4))));
    }

    #[test]
    fn xu() {
        let out = filter_xu(&pair(49, 19), &int(7), &int(1)).unwrap();
        assert_eq!(out, Outcome { verdict: Verdict::Kept, note: Some(Note::MaxGonality(int(1))) });
        let out = filter_xu(&pair(49, 19), &int(7), &int(2)).unwrap();
        assert_eq!(out.verdict, Verdict::Eliminated);
        let out = filter_xu(&pair(10, 5), &int(5), &int(1)).unwrap();
        assert_eq!(out, Outcome { verdict: Verdict::Eliminated, note: Some(Note::MaxGonality(int(0))) });
        assert_eq!(
            filter_xu(&pair(11, 5), &int(5), &int(1)),
            Err(Error::NotDivisible { d: int(5), a: int(11) })
        );
        assert_eq!(filter_xu(&pair(10, 5), &int(5), &int(0)), Err(Error::InvalidGonality(int(0))));
    }

    #[test]
    fn rationality() {
        assert_eq!(filter_rationality(&pair(7, 3), &int(7)).unwrap().verdict, Verdict::Eliminated);
        assert_eq!(filter_rationality(&pair(49, 19), &int(7)).unwrap().verdict, Verdict::Eliminated);
        let out = filter_rationality(&pair(28, 11), &int(7)).unwrap();
        assert_eq!(out, Outcome { verdict: Verdict::Kept, note: Some(Note::MaxGonality(int(2))) });
        for (a, b) in [(2, 2), (3, 2), (5, 4), (40, 30)] {
            assert_eq!(filter_rationality(&pair(a, b), &int(1)).unwrap().verdict, Verdict::Kept);
        }
    }

    #[test]
    fn hodge_xu() {
        assert_eq!(filter_hodge_xu(&pair(9, 4), &int(6)), Ok(Verdict::Kept));
        assert_eq!(filter_hodge_xu(&pair(43, 18), &int(6)), Ok(Verdict::Kept));
        assert_eq!(filter_hodge_xu(&pair(17, 8), &int(6)), Ok(Verdict::Eliminated));
        // applied to the reduced value: (18,8) behaves like (9,4)
        assert_eq!(filter_hodge_xu(&pair(18, 8), &int(6)), Ok(Verdict::Kept));
    }
}
