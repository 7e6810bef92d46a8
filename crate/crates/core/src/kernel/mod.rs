//! Exact arithmetic: big rationals, sparse multivariate polynomials over a
//! fixed variable alphabet, Laurent polynomials in `q`, and reduced rational
//! functions in `q`.

mod laurent;
mod multipoly;
mod qnum;
mod ratfunc;
mod upoly;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use laurent::LaurentPolyQ;
pub use multipoly::{Monomial, MultiPoly};
pub use qnum::{binomial, factorial, qbinomial, qfactorial, qint, rising_factorial};
pub use ratfunc::QRatFunc;
pub use upoly::UPoly;

/// Arbitrary-precision rational number, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("polynomial division is not exact")]
    NotDivisible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("evaluation point {0} is a root of the denominator")]
    PoleAtPoint(String),
    #[error("negative q-exponent q^{0} cannot be stored in a MultiPoly")]
    NegativeQExponent(i64),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("cannot parse rational `{0}`")]
    BadRational(String),
}

/// Number of indeterminates in the alphabet.
pub const NVARS: usize = 9;

/// The closed alphabet of indeterminates, in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X,
    Y,
    U1,
    U2,
    U3,
    U4,
    Alpha,
    Beta,
    Q,
}

impl Var {
    pub const ALL: [Var; NVARS] = [
        Var::X,
        Var::Y,
        Var::U1,
        Var::U2,
        Var::U3,
        Var::U4,
        Var::Alpha,
        Var::Beta,
        Var::Q,
    ];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::U1 => "u1",
            Var::U2 => "u2",
            Var::U3 => "u3",
            Var::U4 => "u4",
            Var::Alpha => "alpha",
            Var::Beta => "beta",
            Var::Q => "q",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Var {
    type Err = KernelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Var::ALL
            .iter()
            .copied()
            .find(|v| v.name() == s)
            .ok_or_else(|| KernelError::UnknownVariable(s.to_string()))
    }
}

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num/den`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"3"`, `"-3/4"` style literals.
pub fn parse_rational(s: &str) -> Result<Rational, KernelError> {
    let bad = || KernelError::BadRational(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Integer power of a rational, negative exponents allowed for nonzero bases.
pub fn rational_pow(base: &Rational, exp: i64) -> Rational {
    if exp >= 0 {
        num_traits::pow(base.clone(), exp as usize)
    } else {
        num_traits::pow(base.recip(), exp.unsigned_abs() as usize)
    }
}

pub(crate) fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Writes `c*body` with sign handling; `first` suppresses the leading `+`.
pub(crate) fn write_signed_term(
    out: &mut String,
    coeff: &Rational,
    body: &str,
    first: bool,
) {
    let neg = coeff.is_negative();
    if first {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    let abs = coeff.abs();
    if body.is_empty() {
        out.push_str(&fmt_rational(&abs));
    } else if abs.is_one() {
        out.push_str(body);
    } else {
        out.push_str(&fmt_rational(&abs));
        out.push('*');
        out.push_str(body);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn var_names_round_trip() {
        for v in Var::ALL {
            assert_eq!(v.name().parse::<Var>().unwrap(), v);
        }
        assert!(matches!("z".parse::<Var>(), Err(KernelError::UnknownVariable(_))));
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("-3/6").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), rat(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn negative_powers() {
        assert_eq!(rational_pow(&ratio(2, 3), -2), ratio(9, 4));
        assert_eq!(rational_pow(&rat(5), 0), rat(1));
    }
}
