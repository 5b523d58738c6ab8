use core::fmt;

use crate::arith::Int;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// `isqrt` of a negative integer.
    NegativeSqrt(Int),
    /// Zero denominator in a rational or in a square-root comparison.
    ZeroDenominator,
    /// A negative operand where the operation is only defined for `>= 0`.
    NegativeOperand,
    /// `d <= 0` or `d` a perfect square where a Pell equation is needed.
    NotPositiveNonSquare(Int),
    /// `d < 1` where a degree is expected.
    InvalidDegree(Int),
    /// Solution index below 1.
    InvalidIndex(Int),
    /// `(p, q)` does not satisfy `q^2 - d p^2 = 1` with `p >= 1`.
    InvalidPellPair { d: Int, p: Int, q: Int },
    /// Multiplicity below 2 where a singular pair is required.
    MultiplicityTooSmall(Int),
    /// A Picard-number-one filter applied to a pair with `d ∤ a`.
    NotDivisible { d: Int, a: Int },
    /// Gonality lower bound below 1.
    InvalidGonality(Int),
    /// A filter that only makes sense for Picard number one, in general mode.
    FilterRequiresRho1(&'static str),
    /// A verifier parameter out of range.
    InvalidParameter(&'static str),
    /// The enumeration exceeded the configured work budget.
    BudgetExceeded { budget: u64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NegativeSqrt(n) => write!(f, "square root of negative integer {n}"),
            Error::ZeroDenominator => f.write_str("zero denominator"),
            Error::NegativeOperand => f.write_str("operand must be non-negative"),
            Error::NotPositiveNonSquare(_) => f.write_str("d must be a positive non-square"),
            Error::InvalidDegree(d) => write!(f, "degree must be at least 1, got {d}"),
            Error::InvalidIndex(k) => write!(f, "solution index must be at least 1, got {k}"),
            Error::InvalidPellPair { d, p, q } => {
                write!(f, "({p},{q}) is not a solution of y^2 - {d}x^2 = 1")
            }
            Error::MultiplicityTooSmall(b) => write!(f, "multiplicity must be at least 2, got {b}"),
            Error::NotDivisible { d, a } => write!(f, "{d} does not divide a = {a}"),
            Error::InvalidGonality(g) => write!(f, "gonality bound must be at least 1, got {g}"),
            Error::FilterRequiresRho1(name) => {
                write!(f, "filter `{name}` requires Picard number one (--rho1)")
            }
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            Error::BudgetExceeded { budget } => {
                write!(f, "enumeration exceeded the work budget of {budget}")
            }
        }
    }
}

impl core::error::Error for Error {}
