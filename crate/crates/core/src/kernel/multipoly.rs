use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::upoly::UPoly;
use super::{rational_pow, write_signed_term, KernelError, Rational, Var, NVARS};

/// Dense exponent vector over the fixed alphabet.
///
/// The derived `Ord` is lexicographic with `x > y > u1 > ... > q`, which is a
/// monomial order and is what exact division relies on.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Debug)]
pub struct Monomial([u16; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn new(exponents: [u16; NVARS]) -> Self {
        Monomial(exponents)
    }

    pub fn var(v: Var, exp: u16) -> Self {
        let mut e = [0; NVARS];
        e[v.index()] = exp;
        Monomial(e)
    }

    /// Builds a monomial from `(variable, exponent)` pairs; repeated variables add.
    pub fn from_pairs(pairs: &[(Var, u16)]) -> Self {
        let mut e = [0u16; NVARS];
        for &(v, k) in pairs {
            e[v.index()] += k;
        }
        Monomial(e)
    }

    #[inline]
    pub fn exponents(&self) -> &[u16; NVARS] {
        &self.0
    }

    #[inline]
    pub fn exponent(&self, v: Var) -> u16 {
        self.0[v.index()]
    }

    pub fn with_exponent(mut self, v: Var, exp: u16) -> Self {
        self.0[v.index()] = exp;
        self
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a = a.checked_add(*b).expect("monomial exponent overflow");
        }
        Monomial(e)
    }

    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a = a.checked_sub(*b)?;
        }
        Some(Monomial(e))
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Graded order used for rendering: lower total degree first, then
    /// lexicographically larger exponent vectors first.
    pub fn graded_cmp(&self, other: &Monomial) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in Var::ALL {
            let e = self.exponent(v);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", v)?;
            } else {
                write!(f, "{}^{}", v, e)?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Sparse polynomial over the rationals in the fixed alphabet.
///
/// Terms are kept sorted by [`Monomial`] order with no zero coefficients, so
/// structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: Vec<(Monomial, Rational)>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(Monomial::ONE, c)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(super::rat(n))
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v, 1), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            MultiPoly {
                terms: vec![(m, c)],
            }
        }
    }

    /// Collects arbitrary terms, merging duplicates and dropping zeros.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut v: Vec<(Monomial, Rational)> = terms.into_iter().collect();
        v.sort_by_key(|t| t.0);
        let mut out: Vec<(Monomial, Rational)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        MultiPoly { terms: out }
    }

    /// Builds a polynomial from integer counts per monomial; the common
    /// output of permutation enumerations.
    pub fn from_counts(counts: HashMap<Monomial, i64>) -> Self {
        let mut terms: Vec<(Monomial, Rational)> = counts
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|(m, c)| (m, super::rat(c)))
            .collect();
        terms.sort_by_key(|t| t.0);
        MultiPoly { terms }
    }

    /// Univariate polynomial in `v` with the given coefficients.
    pub fn from_upoly(p: &UPoly, v: Var) -> Self {
        MultiPoly::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(v, i as u16), c.clone())),
        )
    }

    /// Returns the univariate polynomial if only `v` occurs.
    pub fn to_upoly(&self, v: Var) -> Option<UPoly> {
        let mut coeffs = vec![Rational::zero(); self.degree(v) as usize + 1];
        for (m, c) in &self.terms {
            if m.with_exponent(v, 0) != Monomial::ONE {
                return None;
            }
            coeffs[m.exponent(v) as usize] = c.clone();
        }
        Some(UPoly::new(coeffs))
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// The value if the polynomial is a constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::ONE)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        match self.terms.binary_search_by(|(k, _)| k.cmp(m)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    /// The polynomial multiplying `v^exp`, with `v` removed.
    pub fn coeff_of(&self, v: Var, exp: u16) -> MultiPoly {
        MultiPoly::from_sorted_unchecked(
            self.terms
                .iter()
                .filter(|(m, _)| m.exponent(v) == exp)
                .map(|(m, c)| (m.with_exponent(v, 0), c.clone()))
                .collect(),
        )
    }

    pub fn degree(&self, v: Var) -> u16 {
        self.terms
            .iter()
            .map(|(m, _)| m.exponent(v))
            .max()
            .unwrap_or(0)
    }

    pub fn min_degree(&self, v: Var) -> u16 {
        self.terms
            .iter()
            .map(|(m, _)| m.exponent(v))
            .min()
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.iter().any(|(m, _)| m.exponent(v) > 0)
    }

    /// Drops every term whose `v`-degree is `bound` or more.
    pub fn truncate_degree(&self, v: Var, bound: u16) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exponent(v) < bound)
                .cloned()
                .collect(),
        }
    }

    // Filtering or re-mapping by an order-preserving transformation keeps
    // the vector sorted; callers of this helper guarantee that.
    fn from_sorted_unchecked(mut terms: Vec<(Monomial, Rational)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        terms.retain(|(_, c)| !c.is_zero());
        MultiPoly { terms }
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (*m, k * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (k.mul(m), a * c))
                .collect(),
        }
    }

    fn merge(&self, other: &MultiPoly, negate_other: bool) -> MultiPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        let conv = |c: &Rational| if negate_other { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b[j].0, conv(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = if negate_other {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !s.is_zero() {
                        out.push((a[i].0, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (*m, conv(c))));
        MultiPoly { terms: out }
    }

    /// Least common multiple of coefficient denominators together with the
    /// integer numerators after clearing it.
    fn cleared(&self) -> (BigInt, Vec<BigInt>) {
        let mut l = BigInt::one();
        for (_, c) in &self.terms {
            l = l.lcm(c.denom());
        }
        let nums = self
            .terms
            .iter()
            .map(|(_, c)| c.numer() * (&l / c.denom()))
            .collect();
        (l, nums)
    }

    fn mul_poly(&self, other: &MultiPoly) -> MultiPoly {
        if self.is_zero() || other.is_zero() {
            return MultiPoly::zero();
        }
        if other.terms.len() == 1 {
            return self.mul_monomial(&other.terms[0].0, &other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_monomial(&self.terms[0].0, &self.terms[0].1);
        }
        let (da, na) = self.cleared();
        let (db, nb) = other.cleared();
        let den = da * db;
        let terms: Vec<(Monomial, BigInt)> =
            match mul_small(&self.terms, &na, &other.terms, &nb) {
                Some(t) => t,
                None => mul_big(&self.terms, &na, &other.terms, &nb),
            };
        let mut out: Vec<(Monomial, Rational)> = terms
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m, Rational::new(c, den.clone())))
            .collect();
        out.sort_unstable_by_key(|t| t.0);
        MultiPoly { terms: out }
    }

    pub fn pow(&self, mut k: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = MultiPoly::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient `self / divisor`; fails if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &MultiPoly) -> Result<MultiPoly, KernelError> {
        let (lm, lc) = divisor.terms.last().ok_or(KernelError::DivisionByZero)?;
        if divisor.terms.len() == 1 {
            let inv = lc.recip();
            let mut out = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                let qm = m.div(lm).ok_or(KernelError::NotDivisible)?;
                out.push((qm, c * &inv));
            }
            return Ok(MultiPoly { terms: out });
        }
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rem.terms.last() {
            let qm = m.div(lm).ok_or(KernelError::NotDivisible)?;
            let qc = c / lc;
            rem = &rem - &divisor.mul_monomial(&qm, &qc);
            quotient.push((qm, qc));
        }
        Ok(MultiPoly::from_terms(quotient))
    }

    /// Replaces `v` by a rational value.
    pub fn substitute_rational(&self, v: Var, value: &Rational) -> MultiPoly {
        let mut cache: BTreeMap<u16, Rational> = BTreeMap::new();
        MultiPoly::from_terms(self.terms.iter().map(|(m, c)| {
            let e = m.exponent(v);
            let p = cache
                .entry(e)
                .or_insert_with(|| rational_pow(value, e as i64))
                .clone();
            (m.with_exponent(v, 0), c * p)
        }))
    }

    /// Replaces `v` by a polynomial.
    pub fn substitute(&self, v: Var, value: &MultiPoly) -> MultiPoly {
        self.substitute_many(&[(v, value.clone())])
    }

    /// Simultaneous substitution: every listed variable is replaced using the
    /// original polynomial, so a value may mention other substituted variables.
    pub fn substitute_many(&self, subs: &[(Var, MultiPoly)]) -> MultiPoly {
        let mut groups: BTreeMap<Vec<u16>, Vec<(Monomial, Rational)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key: Vec<u16> = subs.iter().map(|(v, _)| m.exponent(*v)).collect();
            let mut rest = *m;
            for (v, _) in subs {
                rest = rest.with_exponent(*v, 0);
            }
            groups.entry(key).or_default().push((rest, c.clone()));
        }
        let mut powers: Vec<Vec<MultiPoly>> = subs.iter().map(|_| vec![MultiPoly::one()]).collect();
        let mut acc = MultiPoly::zero();
        for (key, rest) in groups {
            let mut factor = MultiPoly::from_terms(rest);
            for (i, &e) in key.iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &subs[i].1;
                    powers[i].push(next);
                }
                factor = &factor * &powers[i][e as usize];
            }
            acc = &acc + &factor;
        }
        acc
    }

    /// Evaluates at a full rational point indexed by [`Var::index`].
    pub fn evaluate(&self, point: &[Rational; NVARS]) -> Rational {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for v in Var::ALL {
                let e = m.exponent(v);
                if e > 0 {
                    t *= rational_pow(&point[v.index()], e as i64);
                }
            }
            total += t;
        }
        total
    }

    /// Multiplies every `v`-exponent by `k`, i.e. substitutes `v -> v^k`.
    pub fn inflate(&self, v: Var, k: u16) -> MultiPoly {
        MultiPoly::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (m.with_exponent(v, m.exponent(v) * k), c.clone())),
        )
    }

    /// Reconstructs `sum_i coeffs[i] * v^i`.
    pub fn from_var_coeffs(v: Var, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut terms = Vec::new();
        for (i, p) in coeffs.iter().enumerate() {
            for (m, c) in p.terms() {
                debug_assert_eq!(m.exponent(v), 0);
                terms.push((m.with_exponent(v, i as u16), c.clone()));
            }
        }
        MultiPoly::from_terms(terms)
    }

    /// Terms in rendering order.
    pub fn graded_terms(&self) -> Vec<&(Monomial, Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.graded_cmp(&b.0));
        v
    }

    /// True if every coefficient is a nonnegative integer.
    pub fn has_nonnegative_integer_coeffs(&self) -> bool {
        self.terms
            .iter()
            .all(|(_, c)| c.is_integer() && !c.is_negative())
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.terms.iter().all(|(_, c)| !c.is_negative())
    }

    /// The first term in rendering order, used to summarise residuals.
    pub fn leading_display_term(&self) -> Option<MultiPoly> {
        self.graded_terms()
            .first()
            .map(|(m, c)| MultiPoly::monomial(*m, c.clone()))
    }
}

fn to_i128(v: &[BigInt]) -> Option<Vec<i128>> {
    v.iter().map(|b| b.to_i128()).collect()
}

fn mul_small(
    a: &[(Monomial, Rational)],
    na: &[BigInt],
    b: &[(Monomial, Rational)],
    nb: &[BigInt],
) -> Option<Vec<(Monomial, BigInt)>> {
    let xa = to_i128(na)?;
    let xb = to_i128(nb)?;
    let mut acc: HashMap<Monomial, i128> = HashMap::with_capacity(a.len() * b.len() / 2 + 1);
    for ((ma, _), ca) in a.iter().zip(&xa) {
        for ((mb, _), cb) in b.iter().zip(&xb) {
            let p = ca.checked_mul(*cb)?;
            let slot = acc.entry(ma.mul(mb)).or_insert(0);
            *slot = slot.checked_add(p)?;
        }
    }
    Some(acc.into_iter().map(|(m, c)| (m, BigInt::from(c))).collect())
}

fn mul_big(
    a: &[(Monomial, Rational)],
    na: &[BigInt],
    b: &[(Monomial, Rational)],
    nb: &[BigInt],
) -> Vec<(Monomial, BigInt)> {
    let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(a.len() * b.len() / 2 + 1);
    for ((ma, _), ca) in a.iter().zip(na) {
        for ((mb, _), cb) in b.iter().zip(nb) {
            *acc.entry(ma.mul(mb)).or_insert_with(BigInt::zero) += ca * cb;
        }
    }
    acc.into_iter().collect()
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (i, (m, c)) in self.graded_terms().into_iter().enumerate() {
            let body = if m.is_one() { String::new() } else { m.to_string() };
            write_signed_term(&mut out, c, &body, i == 0);
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({})", self)
    }
}

impl From<Rational> for MultiPoly {
    fn from(c: Rational) -> Self {
        MultiPoly::constant(c)
    }
}

impl From<Var> for MultiPoly {
    fn from(v: Var) -> Self {
        MultiPoly::var(v)
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.merge(rhs, false)
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.merge(rhs, true)
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.mul_poly(rhs)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: &'a MultiPoly) -> MultiPoly {
                (&self).$f(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{rat, ratio};

    fn x() -> MultiPoly {
        MultiPoly::var(Var::X)
    }
    fn y() -> MultiPoly {
        MultiPoly::var(Var::Y)
    }
    fn q() -> MultiPoly {
        MultiPoly::var(Var::Q)
    }

    #[test]
    fn difference_of_squares() {
        let p = (x() + y()) * (x() - y());
        assert_eq!(p, x() * x() - y() * y());
        assert_eq!(p.to_string(), "x^2 - y^2");
    }

    #[test]
    fn rendering_is_graded() {
        let p = MultiPoly::one() + q().scale(&rat(2)) + q().pow(2).scale(&rat(2)) + q().pow(3);
        assert_eq!(p.to_string(), "1 + 2*q + 2*q^2 + q^3");
        let a2 = x() * MultiPoly::var(Var::Alpha) + y() * MultiPoly::var(Var::Beta);
        assert_eq!(a2.to_string(), "x*alpha + y*beta");
        let h = x().pow(2) + (x() * y()).scale(&rat(4)) + y().pow(2);
        assert_eq!(h.to_string(), "x^2 + 4*x*y + y^2");
        assert_eq!(MultiPoly::zero().to_string(), "0");
        assert_eq!((-x()).scale(&ratio(3, 2)).to_string(), "-3/2*x");
    }

    #[test]
    fn coefficient_extraction() {
        let h = x().pow(2) + (x() * y()).scale(&rat(4)) + y().pow(2);
        let m = Monomial::from_pairs(&[(Var::X, 1), (Var::Y, 1)]);
        assert_eq!(h.coefficient(&m), rat(4));
        assert_eq!(h.coefficient(&Monomial::ONE), rat(0));
        assert_eq!(h.coeff_of(Var::X, 2), MultiPoly::one());
    }

    #[test]
    fn substitution_into_constant_is_identity() {
        let c = MultiPoly::constant(ratio(7, 3));
        let value = x() + MultiPoly::var(Var::U3) + MultiPoly::var(Var::U4) - y();
        assert_eq!(c.substitute(Var::Y, &value), c);
    }

    #[test]
    fn simultaneous_substitution_swaps() {
        let p = x() * x() + y().scale(&rat(3));
        let swapped = p.substitute_many(&[(Var::X, y()), (Var::Y, x())]);
        assert_eq!(swapped, y() * y() + x().scale(&rat(3)));
    }

    #[test]
    fn exact_division() {
        let a = x() + y();
        let b = x() - q() + MultiPoly::int(2);
        let p = &a * &b;
        assert_eq!(p.exact_div(&a).unwrap(), b);
        assert_eq!(p.exact_div(&b).unwrap(), a);
        assert_eq!(
            (&p + &MultiPoly::one()).exact_div(&a),
            Err(KernelError::NotDivisible)
        );
        assert_eq!(p.exact_div(&MultiPoly::zero()), Err(KernelError::DivisionByZero));
    }

    #[test]
    fn big_coefficients_fall_back_to_bigint() {
        let big = MultiPoly::constant(Rational::from_integer(BigInt::from(1u8) << 100));
        let p = (&big * &x()) + &big;
        let sq = &p * &p;
        let expect = (&big * &big) * (x() * x() + x().scale(&rat(2)) + MultiPoly::one());
        assert_eq!(sq, expect);
    }

    #[test]
    fn evaluation_matches_substitution() {
        let p = x().pow(3) - (x() * y()).scale(&ratio(1, 2)) + MultiPoly::int(4);
        let mut pt: [Rational; NVARS] = std::array::from_fn(|_| rat(0));
        pt[Var::X.index()] = ratio(2, 3);
        pt[Var::Y.index()] = rat(-5);
        let via_sub = p
            .substitute_rational(Var::X, &ratio(2, 3))
            .substitute_rational(Var::Y, &rat(-5));
        assert_eq!(via_sub.as_constant().unwrap(), p.evaluate(&pt));
    }
}
