use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::laurent::LaurentPolyQ;
use super::{fmt_rational, KernelError, MultiPoly, Rational, UPoly, Var};

/// Rational function in `q` over the rationals, kept reduced: numerator and
/// denominator coprime, denominator monic. Equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QRatFunc {
    num: UPoly,
    den: UPoly,
}

impl QRatFunc {
    pub fn new(num: UPoly, den: UPoly) -> Result<Self, KernelError> {
        if den.is_zero() {
            return Err(KernelError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: UPoly, den: UPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_coeff();
        if lc.is_one() {
            QRatFunc { num, den }
        } else {
            let inv = lc.recip();
            QRatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn zero() -> Self {
        QRatFunc {
            num: UPoly::zero(),
            den: UPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        QRatFunc {
            num: UPoly::constant(c),
            den: UPoly::one(),
        }
    }

    pub fn q() -> Self {
        Self::from_poly(UPoly::from_ints(&[0, 1]))
    }

    pub fn from_poly(p: UPoly) -> Self {
        QRatFunc {
            num: p,
            den: UPoly::one(),
        }
    }

    /// Accepts a polynomial that only mentions `q`.
    pub fn from_multipoly(p: &MultiPoly) -> Result<Self, KernelError> {
        p.to_upoly(Var::Q)
            .map(Self::from_poly)
            .ok_or_else(|| KernelError::InvalidArgument(format!("{} is not univariate in q", p)))
    }

    /// `q^e` for any integer `e`.
    pub fn q_power(e: i64) -> Self {
        if e >= 0 {
            Self::from_poly(UPoly::monomial(Rational::one(), e as usize))
        } else {
            QRatFunc {
                num: UPoly::one(),
                den: UPoly::monomial(Rational::one(), e.unsigned_abs() as usize),
            }
        }
    }

    pub fn numer(&self) -> &UPoly {
        &self.num
    }

    pub fn denom(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The polynomial if the denominator is 1.
    pub fn as_poly(&self) -> Option<&UPoly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.as_poly()?.degree() {
            None => Some(Rational::zero()),
            Some(0) => Some(self.num.coeff(0)),
            _ => None,
        }
    }

    pub fn inv(&self) -> Result<Self, KernelError> {
        if self.is_zero() {
            return Err(KernelError::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, KernelError> {
        Ok(self * &other.inv()?)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        QRatFunc {
            num: self.num.scale(r),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: i64) -> Result<Self, KernelError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(QRatFunc {
            num: base.num.pow(k as u32),
            den: base.den.pow(k as u32),
        })
    }

    /// Evaluates at a rational `q`, rejecting poles.
    pub fn eval(&self, at: &Rational) -> Result<Rational, KernelError> {
        let d = self.den.eval(at);
        if d.is_zero() {
            return Err(KernelError::PoleAtPoint(fmt_rational(at)));
        }
        Ok(self.num.eval(at) / d)
    }

    /// `f(1/q)`.
    pub fn invert_q(&self) -> Self {
        let dn = self.num.degree().unwrap_or(0);
        let dd = self.den.degree().unwrap_or(0);
        // f(1/q) = q^(dd - dn) * rev(num) / rev(den)
        let mut num = self.num.reversed(dn);
        let mut den = self.den.reversed(dd);
        if dd >= dn {
            num = num.shift(dd - dn);
        } else {
            den = den.shift(dn - dd);
        }
        Self::reduce(num, den)
    }

    /// `f(c q^k)` for a rational `c` and integer `k`.
    pub fn rescale_q(&self, c: &Rational, k: i64) -> Result<Self, KernelError> {
        let sub = |p: &UPoly| -> Result<QRatFunc, KernelError> {
            let mut acc = QRatFunc::zero();
            for (i, a) in p.coeffs().iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let term = QRatFunc::q_power(k * i as i64)
                    .scale(&(a * super::rational_pow(c, i as i64)));
                acc = &acc + &term;
            }
            Ok(acc)
        };
        if c.is_zero() {
            return Err(KernelError::InvalidArgument("q scaled by zero".into()));
        }
        sub(&self.num)?.checked_div(&sub(&self.den)?)
    }

    /// Laurent expansion around `q = 0`, exact in every exponent below `bound`.
    pub fn expand_at_zero(&self, bound: i64) -> LaurentPolyQ {
        if self.is_zero() {
            return LaurentPolyQ::zero();
        }
        let vn = self.num.valuation().unwrap() as i64;
        let vd = self.den.valuation().unwrap() as i64;
        let lead = vn - vd;
        if bound <= lead {
            return LaurentPolyQ::zero();
        }
        let count = (bound - lead) as usize;
        let n = self.num.unshift(vn as usize);
        let d = self.den.unshift(vd as usize);
        let d0inv = d.coeff(0).recip();
        let mut out: Vec<Rational> = Vec::with_capacity(count);
        for i in 0..count {
            let mut s = n.coeff(i);
            for j in 1..=i.min(d.degree().unwrap_or(0)) {
                s -= d.coeff(j) * &out[i - j];
            }
            out.push(s * &d0inv);
        }
        LaurentPolyQ::from_terms(
            out.into_iter()
                .enumerate()
                .map(|(i, c)| (lead + i as i64, MultiPoly::constant(c))),
        )
    }

    /// Laurent expansion around `q = infinity` (in powers of `1/q`), exact in
    /// every exponent above `bound`.
    pub fn expand_at_infinity(&self, bound: i64) -> LaurentPolyQ {
        self.invert_q().expand_at_zero(-bound).invert_q()
    }
}

impl fmt::Display for QRatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &UPoly| {
            let s = p.to_string();
            let compound = p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1
                || (p.degree() == Some(0) && !p.coeff(0).is_integer());
            if compound {
                format!("({})", s)
            } else {
                s
            }
        };
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

impl fmt::Debug for QRatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QRatFunc({})", self)
    }
}

impl<'a> Add<&'a QRatFunc> for &'a QRatFunc {
    type Output = QRatFunc;
    fn add(self, rhs: &'a QRatFunc) -> QRatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return QRatFunc::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let a_co = self.den.exact_div(&g).expect("gcd divides");
        let b_co = rhs.den.exact_div(&g).expect("gcd divides");
        let num = &(&self.num * &b_co) + &(&rhs.num * &a_co);
        let den = &self.den * &b_co;
        QRatFunc::reduce(num, den)
    }
}

impl<'a> Sub<&'a QRatFunc> for &'a QRatFunc {
    type Output = QRatFunc;
    fn sub(self, rhs: &'a QRatFunc) -> QRatFunc {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a QRatFunc> for &'a QRatFunc {
    type Output = QRatFunc;
    fn mul(self, rhs: &'a QRatFunc) -> QRatFunc {
        if self.is_zero() || rhs.is_zero() {
            return QRatFunc::zero();
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let an = self.num.exact_div(&g1).expect("gcd divides");
        let bd = rhs.den.exact_div(&g1).expect("gcd divides");
        let bn = rhs.num.exact_div(&g2).expect("gcd divides");
        let ad = self.den.exact_div(&g2).expect("gcd divides");
        let num = &an * &bn;
        let den = &ad * &bd;
        let lc = den.leading_coeff();
        if lc.is_one() {
            QRatFunc { num, den }
        } else {
            let inv = lc.recip();
            QRatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }
}

impl Neg for &QRatFunc {
    type Output = QRatFunc;
    fn neg(self) -> QRatFunc {
        QRatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{qint, rat, ratio};

    fn qpoly(c: &[i64]) -> QRatFunc {
        QRatFunc::from_poly(UPoly::from_ints(c))
    }

    #[test]
    fn cancels_against_its_inverse() {
        let a = qpoly(&[1, 1]).inv().unwrap();
        assert_eq!(&a * &qpoly(&[1, 1]), QRatFunc::one());
    }

    #[test]
    fn sum_of_halves() {
        let q2 = QRatFunc::from_multipoly(&qint(2)).unwrap();
        let h = q2.inv().unwrap();
        let s = &h + &h;
        assert_eq!(s, QRatFunc::new(UPoly::from_ints(&[2]), UPoly::from_ints(&[1, 1])).unwrap());
        assert_eq!(s.to_string(), "2/(1 + q)");
    }

    #[test]
    fn reduction_by_gcd() {
        let f = QRatFunc::new(UPoly::from_ints(&[1, 0, -1]), UPoly::from_ints(&[1, -1])).unwrap();
        assert_eq!(f, qpoly(&[1, 1]));
        assert!(f.as_poly().is_some());
    }

    #[test]
    fn denominator_is_monic() {
        let f = QRatFunc::new(UPoly::from_ints(&[3]), UPoly::from_ints(&[2, 4])).unwrap();
        assert_eq!(f.denom().leading_coeff(), rat(1));
        assert_eq!(f.numer().coeff(0), ratio(3, 4));
    }

    #[test]
    fn division_errors() {
        assert_eq!(QRatFunc::zero().inv(), Err(KernelError::DivisionByZero));
        assert!(QRatFunc::new(UPoly::one(), UPoly::zero()).is_err());
        let f = qpoly(&[1, -1]).inv().unwrap();
        assert!(matches!(f.eval(&rat(1)), Err(KernelError::PoleAtPoint(_))));
        assert_eq!(f.eval(&rat(2)).unwrap(), rat(-1));
    }

    #[test]
    fn inversion_of_q() {
        // (1 + 2q) / (1 + q)  at 1/q  is  (q + 2) / (q + 1)
        let f = QRatFunc::new(UPoly::from_ints(&[1, 2]), UPoly::from_ints(&[1, 1])).unwrap();
        let g = QRatFunc::new(UPoly::from_ints(&[2, 1]), UPoly::from_ints(&[1, 1])).unwrap();
        assert_eq!(f.invert_q(), g);
        assert_eq!(f.invert_q().invert_q(), f);
        let h = QRatFunc::q_power(-3);
        assert_eq!(h.invert_q(), QRatFunc::q_power(3));
    }

    #[test]
    fn expansion_at_zero_is_geometric() {
        let f = qpoly(&[1, -1]).inv().unwrap();
        let e = f.expand_at_zero(5);
        for k in 0..5 {
            assert_eq!(e.coeff(k), MultiPoly::one());
        }
        assert!(e.coeff(5).is_zero());
        // 1/(q - q^2) = q^-1 + 1 + q + ...
        let g = qpoly(&[0, 1, -1]).inv().unwrap();
        let e = g.expand_at_zero(2);
        assert_eq!(e.min_q_degree(), Some(-1));
        assert_eq!(e.max_q_degree(), Some(1));
    }

    #[test]
    fn expansion_at_infinity() {
        // 1/(1 - q) = -q^-1 - q^-2 - ...
        let f = qpoly(&[1, -1]).inv().unwrap();
        let e = f.expand_at_infinity(-4);
        assert_eq!(e.max_q_degree(), Some(-1));
        assert_eq!(e.min_q_degree(), Some(-3));
        assert_eq!(e.coeff(-2), MultiPoly::int(-1));
    }

    #[test]
    fn rescaling_q() {
        let f = qpoly(&[1, 1]).inv().unwrap();
        let g = f.rescale_q(&rat(1), 2).unwrap();
        assert_eq!(g, qpoly(&[1, 0, 1]).inv().unwrap());
    }
}
