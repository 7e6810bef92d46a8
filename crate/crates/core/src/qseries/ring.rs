use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::SeriesError;
use crate::kernel::{qbinomial, LaurentPolyQ, MultiPoly, QRatFunc, Rational, UPoly, Var};

/// Identifies the coefficient ring of a series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingTag {
    Rational,
    QRatFunc,
    MultiPoly,
    LaurentPolyQ,
}

/// What a coefficient ring can do; operations check these before running.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RingCapabilities {
    pub has_division: bool,
    pub has_q_variable: bool,
    pub has_rational_scalars: bool,
}

/// Coefficient ring for [`TSeries`](super::TSeries).
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    const TAG: RingTag;
    const CAPS: RingCapabilities;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn scale(&self, r: &Rational) -> Self;

    /// Multiplicative inverse, when `self` is a unit of the ring.
    fn inverse(&self) -> Option<Self>;

    /// Embeds a polynomial in `q`; `None` if the ring has no `q`.
    fn from_q_poly(p: &UPoly) -> Option<Self>;

    /// `q^e`; negative `e` only where the ring has negative powers.
    fn q_power(e: i64) -> Option<Self>;

    /// Exact quotient, `None` when it does not exist in the ring.
    fn divide(&self, d: &Self) -> Option<Self> {
        d.inverse().map(|inv| self.mul_ref(&inv))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// Rings whose elements can be cut down to a window of q-degrees.
pub trait QTruncate: Coeff {
    /// Drops every term of q-degree `bound` or more.
    fn retain_q_below(&self, bound: i64) -> Self;
}

fn qint_upoly(n: usize) -> UPoly {
    UPoly::from_ints(&vec![1; n])
}

/// `[n]_q` as a ring element.
pub fn ring_qint<C: Coeff>(n: usize) -> Option<C> {
    C::from_q_poly(&qint_upoly(n))
}

/// `[n]_q!` as a ring element.
pub fn ring_qfactorial<C: Coeff>(n: usize) -> Option<C> {
    let p = (1..=n).fold(UPoly::one(), |acc, i| &acc * &qint_upoly(i));
    C::from_q_poly(&p)
}

/// Gaussian binomial as a ring element.
pub fn ring_qbinomial<C: Coeff>(n: usize, k: usize) -> Option<C> {
    let p = qbinomial(n, k).ok()?;
    C::from_q_poly(&p.to_upoly(Var::Q)?)
}

/// Rows `0..=n` of the Gaussian binomial triangle as ring elements,
/// built by the q-Pascal rule `[m k] = [m-1 k-1] + q^k [m-1 k]`.
pub(crate) fn q_binomial_rows<C: Coeff>(n: usize, op: &'static str) -> Result<Vec<Vec<C>>, SeriesError> {
    let qpow: Vec<C> = (0..=n)
        .map(|k| C::q_power(k as i64).ok_or_else(|| no_q::<C>(op)))
        .collect::<Result<_, _>>()?;
    let mut rows: Vec<Vec<C>> = vec![vec![C::one()]];
    for m in 1..=n {
        let prev = &rows[m - 1];
        let mut row = Vec::with_capacity(m + 1);
        row.push(C::one());
        for k in 1..m {
            row.push(prev[k - 1].add_ref(&qpow[k].mul_ref(&prev[k])));
        }
        row.push(C::one());
        rows.push(row);
    }
    Ok(rows)
}

pub(crate) fn no_q<C: Coeff>(op: &'static str) -> SeriesError {
    SeriesError::Capability {
        op,
        ring: C::TAG,
        need: "a q variable",
    }
}

impl Coeff for Rational {
    const TAG: RingTag = RingTag::Rational;
    const CAPS: RingCapabilities = RingCapabilities {
        has_division: true,
        has_q_variable: false,
        has_rational_scalars: true,
    };

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn from_q_poly(_: &UPoly) -> Option<Self> {
        None
    }
    fn q_power(_: i64) -> Option<Self> {
        None
    }
}

impl Coeff for QRatFunc {
    const TAG: RingTag = RingTag::QRatFunc;
    const CAPS: RingCapabilities = RingCapabilities {
        has_division: true,
        has_q_variable: true,
        has_rational_scalars: true,
    };

    fn zero() -> Self {
        QRatFunc::zero()
    }
    fn one() -> Self {
        QRatFunc::one()
    }
    fn is_zero(&self) -> bool {
        QRatFunc::is_zero(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_rational(r: &Rational) -> Self {
        QRatFunc::constant(r.clone())
    }
    fn scale(&self, r: &Rational) -> Self {
        QRatFunc::scale(self, r)
    }
    fn inverse(&self) -> Option<Self> {
        self.inv().ok()
    }
    fn from_q_poly(p: &UPoly) -> Option<Self> {
        Some(QRatFunc::from_poly(p.clone()))
    }
    fn q_power(e: i64) -> Option<Self> {
        Some(QRatFunc::q_power(e))
    }
    fn is_one(&self) -> bool {
        QRatFunc::is_one(self)
    }
}

impl Coeff for MultiPoly {
    const TAG: RingTag = RingTag::MultiPoly;
    const CAPS: RingCapabilities = RingCapabilities {
        has_division: false,
        has_q_variable: true,
        has_rational_scalars: true,
    };

    fn zero() -> Self {
        MultiPoly::zero()
    }
    fn one() -> Self {
        MultiPoly::one()
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_rational(r: &Rational) -> Self {
        MultiPoly::constant(r.clone())
    }
    fn scale(&self, r: &Rational) -> Self {
        MultiPoly::scale(self, r)
    }
    fn inverse(&self) -> Option<Self> {
        let c = self.as_constant()?;
        (!Zero::is_zero(&c)).then(|| MultiPoly::constant(c.recip()))
    }
    fn from_q_poly(p: &UPoly) -> Option<Self> {
        Some(MultiPoly::from_upoly(p, Var::Q))
    }
    fn q_power(e: i64) -> Option<Self> {
        (e >= 0).then(|| MultiPoly::var(Var::Q).pow(e as u32))
    }
    fn divide(&self, d: &Self) -> Option<Self> {
        self.exact_div(d).ok()
    }
    fn is_one(&self) -> bool {
        MultiPoly::is_one(self)
    }
}

impl QTruncate for MultiPoly {
    fn retain_q_below(&self, bound: i64) -> Self {
        if bound <= 0 {
            return MultiPoly::zero();
        }
        self.truncate_degree(Var::Q, bound.min(u16::MAX as i64) as u16)
    }
}

impl Coeff for LaurentPolyQ {
    const TAG: RingTag = RingTag::LaurentPolyQ;
    const CAPS: RingCapabilities = RingCapabilities {
        has_division: false,
        has_q_variable: true,
        has_rational_scalars: true,
    };

    fn zero() -> Self {
        LaurentPolyQ::zero()
    }
    fn one() -> Self {
        LaurentPolyQ::one()
    }
    fn is_zero(&self) -> bool {
        LaurentPolyQ::is_zero(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_rational(r: &Rational) -> Self {
        LaurentPolyQ::constant(r.clone())
    }
    fn scale(&self, r: &Rational) -> Self {
        LaurentPolyQ::scale(self, r)
    }
    fn inverse(&self) -> Option<Self> {
        self.unit_inverse()
    }
    fn from_q_poly(p: &UPoly) -> Option<Self> {
        Some(LaurentPolyQ::from_multipoly(&MultiPoly::from_upoly(p, Var::Q)))
    }
    fn q_power(e: i64) -> Option<Self> {
        Some(LaurentPolyQ::q_power(e))
    }
}

impl QTruncate for LaurentPolyQ {
    fn retain_q_below(&self, bound: i64) -> Self {
        self.retain_below(bound)
    }
}
