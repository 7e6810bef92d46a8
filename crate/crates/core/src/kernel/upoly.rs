use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{write_signed_term, KernelError, Rational};

/// Dense univariate polynomial over the rationals, coefficient `i` of `q^i`.
/// No trailing zeros are stored; the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    c: Vec<Rational>,
}

impl UPoly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn zero() -> Self {
        UPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(r: Rational) -> Self {
        Self::new(vec![r])
    }

    /// `coeff * q^deg`
    pub fn monomial(coeff: Rational, deg: usize) -> Self {
        let mut c = vec![Rational::zero(); deg + 1];
        c[deg] = coeff;
        Self::new(c)
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| super::rat(v)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.c.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    pub fn leading_coeff(&self) -> Rational {
        self.c.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, r: &Rational) -> UPoly {
        if r.is_zero() {
            return UPoly::zero();
        }
        UPoly {
            c: self.c.iter().map(|x| x * r).collect(),
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: usize) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![Rational::zero(); k];
        c.extend(self.c.iter().cloned());
        UPoly { c }
    }

    /// Divides by `q^k`; the low `k` coefficients must vanish.
    pub fn unshift(&self, k: usize) -> UPoly {
        debug_assert!(self.c.iter().take(k).all(|x| x.is_zero()));
        UPoly::new(self.c.iter().skip(k).cloned().collect())
    }

    /// Coefficients reversed within degree `d`, i.e. `q^d p(1/q)`.
    pub fn reversed(&self, d: usize) -> UPoly {
        let mut c = vec![Rational::zero(); d + 1];
        for (i, x) in self.c.iter().enumerate() {
            c[d - i] = x.clone();
        }
        UPoly::new(c)
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let lc = self.leading_coeff().recip();
        self.scale(&lc)
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for x in self.c.iter().rev() {
            acc = acc * at + x;
        }
        acc
    }

    pub fn pow(&self, k: u32) -> UPoly {
        let mut acc = UPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division over the rationals.
    pub fn div_rem(&self, d: &UPoly) -> Result<(UPoly, UPoly), KernelError> {
        let dd = d.degree().ok_or(KernelError::DivisionByZero)?;
        let mut r = self.c.clone();
        if r.len() <= dd {
            return Ok((UPoly::zero(), self.clone()));
        }
        let inv = d.leading_coeff().recip();
        let mut quo = vec![Rational::zero(); r.len() - dd];
        for k in (0..quo.len()).rev() {
            let t = &r[k + dd] * &inv;
            if !t.is_zero() {
                for (j, dc) in d.c.iter().enumerate() {
                    r[k + j] -= &t * dc;
                }
            }
            quo[k] = t;
        }
        r.truncate(dd);
        Ok((UPoly::new(quo), UPoly::new(r)))
    }

    pub fn exact_div(&self, d: &UPoly) -> Result<UPoly, KernelError> {
        let (q, r) = self.div_rem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(KernelError::NotDivisible)
        }
    }

    /// Monic greatest common divisor, computed by a primitive
    /// pseudo-remainder sequence over the integers.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.degree() == Some(0) || other.degree() == Some(0) {
            return UPoly::one();
        }
        let mut a = primitive_int(&self.c);
        let mut b = primitive_int(&other.c);
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = pseudo_rem(&a, &b);
            a = b;
            b = if r.is_empty() { r } else { primitive_of_ints(r) };
        }
        UPoly::new(a.into_iter().map(Rational::from_integer).collect()).monic()
    }
}

fn trim_ints(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|x| x.is_zero()) {
        v.pop();
    }
}

fn primitive_of_ints(mut v: Vec<BigInt>) -> Vec<BigInt> {
    trim_ints(&mut v);
    let mut g = BigInt::zero();
    for x in &v {
        g = g.gcd(x);
    }
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
    if v.last().is_some_and(|x| x.is_negative()) {
        for x in v.iter_mut() {
            *x = -&*x;
        }
    }
    v
}

fn primitive_int(c: &[Rational]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for x in c {
        l = l.lcm(x.denom());
    }
    primitive_of_ints(c.iter().map(|x| x.numer() * (&l / x.denom())).collect())
}

fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let lb = b.last().expect("nonzero divisor").clone();
    while r.len() >= b.len() {
        let lr = r.last().unwrap().clone();
        let g = lr.gcd(&lb);
        let ma = &lb / &g;
        let mb = &lr / &g;
        let k = r.len() - b.len();
        for x in r.iter_mut() {
            *x = &*x * &ma;
        }
        for (j, bc) in b.iter().enumerate() {
            r[k + j] -= &mb * bc;
        }
        trim_ints(&mut r);
    }
    r
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        let mut first = true;
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let body = match i {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{}", i),
            };
            write_signed_term(&mut out, x, &body, first);
            first = false;
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPoly({})", self)
    }
}

impl<'a> Add<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn add(self, rhs: &'a UPoly) -> UPoly {
        let n = self.c.len().max(rhs.c.len());
        UPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &'a UPoly) -> UPoly {
        let n = self.c.len().max(rhs.c.len());
        UPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &'a UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![Rational::zero(); self.c.len() + rhs.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UPoly::new(c)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly {
            c: self.c.iter().map(|x| -x).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_cancels_common_factor() {
        // (1 - q^2) and (1 - q) share (1 - q); monic gcd is q - 1
        let a = UPoly::from_ints(&[1, 0, -1]);
        let b = UPoly::from_ints(&[1, -1]);
        assert_eq!(a.gcd(&b), UPoly::from_ints(&[-1, 1]));
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        let a = UPoly::from_ints(&[1, 1]);
        let b = UPoly::from_ints(&[1, 1, 1]);
        assert_eq!(a.gcd(&b), UPoly::one());
    }

    #[test]
    fn gcd_of_q_factorials() {
        // [4]! = [2][3](1+q)(1+q^2) and [3]![2]! = [2][3][2] share [2]^2 [3]
        let q2 = UPoly::from_ints(&[1, 1]);
        let q3 = UPoly::from_ints(&[1, 1, 1]);
        let q4 = UPoly::from_ints(&[1, 1, 1, 1]);
        let f4 = &(&q2 * &q3) * &q4;
        let f3f2 = &(&q2 * &q3) * &q2;
        let g = f4.gcd(&f3f2);
        assert_eq!(g, (&(&q2 * &q2) * &q3).monic());
    }

    #[test]
    fn division_with_remainder() {
        let a = UPoly::from_ints(&[1, 2, 3, 4]);
        let d = UPoly::from_ints(&[1, 1]);
        let (q, r) = a.div_rem(&d).unwrap();
        assert_eq!(&(&q * &d) + &r, a);
        assert!(r.degree().unwrap_or(0) < 1);
        assert!(a.exact_div(&UPoly::zero()).is_err());
    }
}
