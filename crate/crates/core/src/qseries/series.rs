use std::fmt;

use num_traits::One;

use super::ring::{no_q, q_binomial_rows, ring_qfactorial, Coeff, RingTag};
use super::SeriesError;
use crate::kernel::Rational;

/// How stored coefficients are read: `c_m t^m`, or `c_m t^m / [m]_q!`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    Power,
    QFactorial,
}

/// A power series in `t` known modulo `t^(order+1)`.
#[derive(Clone, PartialEq, Debug)]
pub struct TSeries<C> {
    coeffs: Vec<C>,
    order: usize,
    basis: Basis,
}

fn capability<C: Coeff>(op: &'static str, need: &'static str) -> SeriesError {
    SeriesError::Capability {
        op,
        ring: C::TAG,
        need,
    }
}

impl<C: Coeff> TSeries<C> {
    /// Power-basis series; `coeffs` is padded with zeros or cut to `order + 1` entries.
    pub fn new(coeffs: Vec<C>, order: usize) -> Self {
        Self::with_basis(coeffs, order, Basis::Power)
    }

    /// Series whose `m`-th entry is the coefficient of `t^m / [m]_q!`.
    pub fn normalized(coeffs: Vec<C>, order: usize) -> Self {
        Self::with_basis(coeffs, order, Basis::QFactorial)
    }

    pub fn with_basis(mut coeffs: Vec<C>, order: usize, basis: Basis) -> Self {
        coeffs.resize(order + 1, C::zero());
        TSeries {
            coeffs,
            order,
            basis,
        }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(C::one(), order)
    }

    pub fn constant(c: C, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    /// The series `t`, identical in both bases.
    pub fn t(order: usize) -> Self {
        Self::monomial(C::one(), 1, order)
    }

    /// `c * t^m` in the power basis.
    pub fn monomial(c: C, m: usize, order: usize) -> Self {
        let mut v = vec![C::zero(); order + 1];
        if m <= order {
            v[m] = c;
        }
        Self::new(v, order)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn ring(&self) -> RingTag {
        C::TAG
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// Stored coefficient of index `m` (read according to the basis).
    pub fn coeff(&self, m: usize) -> &C {
        &self.coeffs[m]
    }

    pub fn get(&self, m: usize) -> Option<&C> {
        self.coeffs.get(m)
    }

    pub fn constant_term(&self) -> &C {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        TSeries {
            coeffs: self.coeffs[..=order].to_vec(),
            order,
            basis: self.basis,
        }
    }

    /// Applies `f` to every stored coefficient, keeping order and basis.
    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> TSeries<D> {
        TSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
            order: self.order,
            basis: self.basis,
        }
    }

    pub fn try_map_coeffs<D: Coeff, E>(
        &self,
        f: impl Fn(&C) -> Result<D, E>,
    ) -> Result<TSeries<D>, E> {
        Ok(TSeries {
            coeffs: self.coeffs.iter().map(f).collect::<Result<_, _>>()?,
            order: self.order,
            basis: self.basis,
        })
    }

    /// Power-basis coefficients, dividing out `[m]_q!` if necessary.
    pub fn to_power_basis(&self) -> Result<Self, SeriesError> {
        if self.basis == Basis::Power {
            return Ok(self.clone());
        }
        let mut out = Vec::with_capacity(self.order + 1);
        for (m, c) in self.coeffs.iter().enumerate() {
            if m < 2 || c.is_zero() {
                out.push(c.clone());
                continue;
            }
            let f: C = ring_qfactorial(m).ok_or_else(|| no_q::<C>("to_power_basis"))?;
            out.push(c.divide(&f).ok_or(SeriesError::NotRepresentable(m))?);
        }
        Ok(Self::new(out, self.order))
    }

    /// Coefficients against `t^m / [m]_q!`.
    pub fn to_normalized(&self) -> Result<Self, SeriesError> {
        if self.basis == Basis::QFactorial {
            return Ok(self.clone());
        }
        let mut out = Vec::with_capacity(self.order + 1);
        for (m, c) in self.coeffs.iter().enumerate() {
            if m < 2 || c.is_zero() {
                out.push(c.clone());
                continue;
            }
            let f: C = ring_qfactorial(m).ok_or_else(|| no_q::<C>("to_normalized"))?;
            out.push(c.mul_ref(&f));
        }
        Ok(Self::normalized(out, self.order))
    }

    pub fn to_basis(&self, basis: Basis) -> Result<Self, SeriesError> {
        match basis {
            Basis::Power => self.to_power_basis(),
            Basis::QFactorial => self.to_normalized(),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&C, &C) -> C) -> Result<Self, SeriesError> {
        if self.basis != other.basis {
            return Err(SeriesError::BasisMismatch);
        }
        let order = self.order.min(other.order);
        let coeffs = (0..=order)
            .map(|m| f(&self.coeffs[m], &other.coeffs[m]))
            .collect();
        Ok(TSeries {
            coeffs,
            order,
            basis: self.basis,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.zip_with(other, |a, b| a.add_ref(b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.zip_with(other, |a, b| a.sub_ref(b))
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg_ref())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map_coeffs(|c| c.scale(r))
    }

    /// Multiplies every coefficient by a ring element.
    pub fn scale_by(&self, c: &C) -> Self {
        self.map_coeffs(|x| x.mul_ref(c))
    }

    /// Product; in the q-factorial basis this is the q-binomial convolution.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        if self.basis != other.basis {
            return Err(SeriesError::BasisMismatch);
        }
        let order = self.order.min(other.order);
        let binoms = match self.basis {
            Basis::Power => None,
            Basis::QFactorial => Some(q_binomial_rows::<C>(order, "mul")?),
        };
        let mut out = vec![C::zero(); order + 1];
        for i in 0..=order {
            let a = &self.coeffs[i];
            if a.is_zero() {
                continue;
            }
            for j in 0..=order - i {
                let b = &other.coeffs[j];
                if b.is_zero() {
                    continue;
                }
                let mut term = a.mul_ref(b);
                if let Some(rows) = &binoms {
                    term = term.mul_ref(&rows[i + j][i]);
                }
                out[i + j] = out[i + j].add_ref(&term);
            }
        }
        Ok(TSeries {
            coeffs: out,
            order,
            basis: self.basis,
        })
    }

    fn require_power(&self, op: &'static str) -> Result<(), SeriesError> {
        match self.basis {
            Basis::Power => Ok(()),
            Basis::QFactorial => Err(SeriesError::PowerBasisOnly(op)),
        }
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        self.require_power("inverse")?;
        let inv0 = self.coeffs[0]
            .inverse()
            .ok_or(SeriesError::NonInvertibleConstant)?;
        let mut out: Vec<C> = Vec::with_capacity(self.order + 1);
        out.push(inv0.clone());
        for n in 1..=self.order {
            let mut acc = C::zero();
            for i in 1..=n {
                let a = &self.coeffs[i];
                if !a.is_zero() {
                    acc = acc.add_ref(&a.mul_ref(&out[n - i]));
                }
            }
            out.push(acc.mul_ref(&inv0).neg_ref());
        }
        Ok(Self::new(out, self.order))
    }

    /// Logarithm of a series with constant term 1.
    pub fn log(&self) -> Result<Self, SeriesError> {
        self.require_power("log")?;
        if !(C::CAPS.has_division && C::CAPS.has_rational_scalars) {
            return Err(capability::<C>("log", "division and rational scalars"));
        }
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::ConstantTermNotOne("log"));
        }
        let f = &self.coeffs;
        let mut out: Vec<C> = vec![C::zero(); self.order + 1];
        for n in 1..=self.order {
            let mut acc = f[n].scale(&Rational::from_integer(n.into()));
            for k in 1..n {
                if out[k].is_zero() || f[n - k].is_zero() {
                    continue;
                }
                let t = out[k].mul_ref(&f[n - k]).scale(&Rational::from_integer(k.into()));
                acc = acc.sub_ref(&t);
            }
            out[n] = acc.scale(&Rational::new(1.into(), n.into()));
        }
        Ok(Self::new(out, self.order))
    }

    /// `log(1 + self)` for a series with zero constant term.
    pub fn log1p(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstantTerm("log1p"));
        }
        let mut shifted = self.clone();
        shifted.coeffs[0] = C::one();
        shifted.log()
    }

    /// Exponential of a series with zero constant term.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        self.require_power("exp")?;
        if !C::CAPS.has_rational_scalars {
            return Err(capability::<C>("exp", "rational scalars"));
        }
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstantTerm("exp"));
        }
        let h = &self.coeffs;
        let mut out: Vec<C> = vec![C::zero(); self.order + 1];
        out[0] = C::one();
        for n in 1..=self.order {
            let mut acc = C::zero();
            for k in 1..=n {
                if h[k].is_zero() || out[n - k].is_zero() {
                    continue;
                }
                let t = h[k].mul_ref(&out[n - k]).scale(&Rational::from_integer(k.into()));
                acc = acc.add_ref(&t);
            }
            out[n] = acc.scale(&Rational::new(1.into(), n.into()));
        }
        Ok(Self::new(out, self.order))
    }

    /// `self^alpha` for a series with constant term 1 and rational `alpha`.
    pub fn power(&self, alpha: &Rational) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::ConstantTermNotOne("power"));
        }
        if One::is_one(alpha) {
            return Ok(self.clone());
        }
        self.log()?.scale(alpha).exp()
    }

    /// Substitutes `t -> c q^j t`.
    pub fn scale_argument(&self, c: &Rational, j: i64) -> Result<Self, SeriesError> {
        let mut step = C::from_rational(c);
        if j != 0 {
            let qj = C::q_power(j)
                .ok_or_else(|| capability::<C>("scale_argument", "the requested power of q"))?;
            step = step.mul_ref(&qj);
        }
        let mut factor = C::one();
        let mut out = Vec::with_capacity(self.order + 1);
        for x in &self.coeffs {
            out.push(x.mul_ref(&factor));
            factor = factor.mul_ref(&step);
        }
        Ok(TSeries {
            coeffs: out,
            order: self.order,
            basis: self.basis,
        })
    }

    /// Multiplies by `t` (power basis); the order grows by one.
    pub fn mul_t(&self) -> Result<Self, SeriesError> {
        self.require_power("mul_t")?;
        let mut v = Vec::with_capacity(self.order + 2);
        v.push(C::zero());
        v.extend(self.coeffs.iter().cloned());
        Ok(Self::new(v, self.order + 1))
    }

    /// Divides by `t` (power basis); the constant term must vanish.
    pub fn div_t(&self) -> Result<Self, SeriesError> {
        self.require_power("div_t")?;
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstantTerm("div_t"));
        }
        if self.order == 0 {
            return Err(SeriesError::EmptySeries("div_t"));
        }
        Ok(Self::new(self.coeffs[1..].to_vec(), self.order - 1))
    }

    /// Ordinary derivative in `t`.
    pub fn derivative(&self) -> Result<Self, SeriesError> {
        self.require_power("derivative")?;
        if self.order == 0 {
            return Err(SeriesError::EmptySeries("derivative"));
        }
        let v = (1..=self.order)
            .map(|m| self.coeffs[m].scale(&Rational::from_integer(m.into())))
            .collect();
        Ok(Self::new(v, self.order - 1))
    }

    /// Ordinary antiderivative vanishing at `t = 0`; the order grows by one.
    pub fn integral(&self) -> Result<Self, SeriesError> {
        self.require_power("integral")?;
        if !C::CAPS.has_rational_scalars {
            return Err(capability::<C>("integral", "rational scalars"));
        }
        let mut v = Vec::with_capacity(self.order + 2);
        v.push(C::zero());
        for (m, c) in self.coeffs.iter().enumerate() {
            v.push(c.scale(&Rational::new(1.into(), (m + 1).into())));
        }
        Ok(Self::new(v, self.order + 1))
    }
}

fn push_term(out: &mut String, coeff: &str, body: &str) {
    let first = out.is_empty();
    let compound = coeff[1..].contains(" + ") || coeff[1..].contains(" - ");
    let (neg, text) = if body.is_empty() {
        match coeff.strip_prefix('-') {
            Some(rest) if !compound => (true, rest.to_string()),
            _ => (false, coeff.to_string()),
        }
    } else if compound {
        (false, format!("({})*{}", coeff, body))
    } else {
        let (neg, mag) = match coeff.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, coeff),
        };
        if mag == "1" {
            (neg, body.to_string())
        } else {
            (neg, format!("{}*{}", mag, body))
        }
    };
    match (first, neg) {
        (true, true) => out.push('-'),
        (true, false) => {}
        (false, true) => out.push_str(" - "),
        (false, false) => out.push_str(" + "),
    }
    out.push_str(&text);
}

impl<C: Coeff> fmt::Display for TSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (m, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let power = match m {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{}", m),
            };
            let body = match (self.basis, m) {
                (Basis::QFactorial, m) if m >= 2 => format!("{}/[{}]_q!", power, m),
                _ => power,
            };
            push_term(&mut out, &c.to_string(), &body);
        }
        if out.is_empty() {
            out.push('0');
        }
        write!(f, "{} + O(t^{})", out, self.order + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{rat, ratio, MultiPoly, QRatFunc, Var};

    fn rs(v: &[i64], order: usize) -> TSeries<Rational> {
        TSeries::new(v.iter().map(|&x| rat(x)).collect(), order)
    }

    #[test]
    fn geometric_inverse() {
        let inv = rs(&[1, -1], 5).inverse().unwrap();
        assert_eq!(inv, rs(&[1, 1, 1, 1, 1, 1], 5));
        assert_eq!(
            rs(&[0, 1], 3).inverse(),
            Err(SeriesError::NonInvertibleConstant)
        );
    }

    #[test]
    fn exp_log_round_trip() {
        let f = rs(&[1, 1], 7);
        assert_eq!(f.log().unwrap().exp().unwrap(), f);
        let h = rs(&[0, 1], 7);
        assert_eq!(h.log1p().unwrap(), f.log().unwrap());
    }

    #[test]
    fn square_root_squares_back() {
        let f = rs(&[1, 1], 8);
        let r = f.power(&ratio(1, 2)).unwrap();
        assert_eq!(r.mul(&r).unwrap(), f);
        // binomial series: C(1/2, 2) = -1/8
        assert_eq!(*r.coeff(2), ratio(-1, 8));
    }

    #[test]
    fn mixed_orders_truncate_to_minimum() {
        let a = rs(&[1, 2, 3], 4);
        let b = rs(&[1, 1], 2);
        assert_eq!(a.add(&b).unwrap().order(), 2);
        assert_eq!(a.mul(&b).unwrap(), rs(&[1, 3, 5], 2));
    }

    #[test]
    fn scale_argument_identity_and_q() {
        let f = rs(&[3, 1, 4, 1], 3);
        assert_eq!(f.scale_argument(&rat(1), 0).unwrap(), f);
        assert_eq!(f.scale_argument(&rat(2), 0).unwrap(), rs(&[3, 2, 16, 8], 3));
        assert!(f.scale_argument(&rat(1), 1).is_err());
        let g: TSeries<QRatFunc> = TSeries::t(2).scale_argument(&rat(1), -1).unwrap();
        assert_eq!(*g.coeff(1), QRatFunc::q_power(-1));
    }

    #[test]
    fn basis_round_trip_and_normalized_product() {
        // (t/[1]!) * (t/[1]!) = [2]_q t^2/[2]_q!
        let t: TSeries<MultiPoly> = TSeries::normalized(vec![MultiPoly::zero(), MultiPoly::one()], 3);
        let sq = t.mul(&t).unwrap();
        assert_eq!(sq.coeff(2).to_string(), "1 + q");
        let p = sq.to_power_basis().unwrap();
        assert_eq!(*p.coeff(2), MultiPoly::one());
        assert_eq!(p.to_normalized().unwrap(), sq);
        assert_eq!(t.add(&p), Err(SeriesError::BasisMismatch));
    }

    #[test]
    fn capabilities_are_checked() {
        let f: TSeries<MultiPoly> = TSeries::new(vec![MultiPoly::one(), MultiPoly::var(Var::X)], 3);
        assert!(matches!(f.log(), Err(SeriesError::Capability { .. })));
        assert!(rs(&[1, 0, 1], 3).to_normalized().is_err());
    }

    #[test]
    fn rendering() {
        assert_eq!(rs(&[1, -2, 0, 1], 3).to_string(), "1 - 2*t + t^3 + O(t^4)");
        assert_eq!(rs(&[], 2).to_string(), "0 + O(t^3)");
        let q: TSeries<QRatFunc> = TSeries::new(
            vec![QRatFunc::one(), QRatFunc::one(), QRatFunc::from_poly(crate::kernel::UPoly::from_ints(&[1, 1])).inv().unwrap()],
            2,
        );
        assert_eq!(q.to_string(), "1 + t + (1/(1 + q))*t^2 + O(t^3)");
    }
}
