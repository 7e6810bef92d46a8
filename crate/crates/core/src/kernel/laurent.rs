use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{write_signed_term, KernelError, Monomial, MultiPoly, Rational, Var};

/// Laurent polynomial in `q` whose coefficients are polynomials in the
/// remaining variables. The only type allowed to carry negative q-exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPolyQ {
    terms: BTreeMap<i64, MultiPoly>,
}

impl LaurentPolyQ {
    pub fn zero() -> Self {
        LaurentPolyQ {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::q_power(0)
    }

    pub fn q_power(e: i64) -> Self {
        Self::monomial(e, MultiPoly::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, MultiPoly::constant(c))
    }

    /// `coeff * q^e`; `coeff` must not mention `q`.
    pub fn monomial(e: i64, coeff: MultiPoly) -> Self {
        debug_assert!(!coeff.contains_var(Var::Q));
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(e, coeff);
        }
        LaurentPolyQ { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, MultiPoly)>>(it: I) -> Self {
        let mut terms: BTreeMap<i64, MultiPoly> = BTreeMap::new();
        for (e, c) in it {
            debug_assert!(!c.contains_var(Var::Q));
            let slot = terms.entry(e).or_default();
            *slot = &*slot + &c;
        }
        terms.retain(|_, c| !c.is_zero());
        LaurentPolyQ { terms }
    }

    /// Splits a polynomial by its `q`-degree.
    pub fn from_multipoly(p: &MultiPoly) -> Self {
        let mut buckets: BTreeMap<i64, Vec<(Monomial, Rational)>> = BTreeMap::new();
        for (m, c) in p.terms() {
            buckets
                .entry(m.exponent(Var::Q) as i64)
                .or_default()
                .push((m.with_exponent(Var::Q, 0), c.clone()));
        }
        LaurentPolyQ {
            terms: buckets
                .into_iter()
                .map(|(e, t)| (e, MultiPoly::from_terms(t)))
                .collect(),
        }
    }

    /// Converts back, failing on negative exponents.
    pub fn to_multipoly(&self) -> Result<MultiPoly, KernelError> {
        let mut out = Vec::new();
        for (&e, c) in &self.terms {
            if e < 0 {
                return Err(KernelError::NegativeQExponent(e));
            }
            for (m, k) in c.terms() {
                out.push((m.with_exponent(Var::Q, e as u16), k.clone()));
            }
        }
        Ok(MultiPoly::from_terms(out))
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &MultiPoly)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> MultiPoly {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_q_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_q_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Keeps exponents strictly below `bound`.
    pub fn retain_below(&self, bound: i64) -> Self {
        LaurentPolyQ {
            terms: self.terms.range(..bound).map(|(e, c)| (*e, c.clone())).collect(),
        }
    }

    /// Keeps exponents strictly above `bound`.
    pub fn retain_above(&self, bound: i64) -> Self {
        LaurentPolyQ {
            terms: self
                .terms
                .range(bound.saturating_add(1)..)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPolyQ {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// `f(1/q)`.
    pub fn invert_q(&self) -> Self {
        LaurentPolyQ {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (*e, c.scale(r))))
    }

    /// Multiplies by a `q`-free polynomial.
    pub fn mul_coeff(&self, p: &MultiPoly) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (*e, c * p)))
    }

    /// Applies a map to every coefficient (for instance a rational specialisation).
    pub fn map_coeffs(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))))
    }

    /// Inverse when the value is a unit: a single power of `q` times a nonzero rational.
    pub fn unit_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        let k = c.as_constant()?;
        if num_traits::Zero::is_zero(&k) {
            return None;
        }
        Some(Self::monomial(-e, MultiPoly::constant(k.recip())))
    }
}

impl fmt::Display for LaurentPolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        let mut first = true;
        for (&e, c) in &self.terms {
            let qpart = match e {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{}", e),
            };
            for (m, k) in c.graded_terms() {
                let body = match (m.is_one(), qpart.is_empty()) {
                    (true, _) => qpart.clone(),
                    (false, true) => m.to_string(),
                    (false, false) => format!("{}*{}", m, qpart),
                };
                write_signed_term(&mut out, k, &body, first);
                first = false;
            }
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for LaurentPolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPolyQ({})", self)
    }
}

impl<'a> Add<&'a LaurentPolyQ> for &'a LaurentPolyQ {
    type Output = LaurentPolyQ;
    fn add(self, rhs: &'a LaurentPolyQ) -> LaurentPolyQ {
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            let slot = terms.entry(*e).or_default();
            *slot = &*slot + c;
        }
        terms.retain(|_, c| !c.is_zero());
        LaurentPolyQ { terms }
    }
}

impl<'a> Sub<&'a LaurentPolyQ> for &'a LaurentPolyQ {
    type Output = LaurentPolyQ;
    fn sub(self, rhs: &'a LaurentPolyQ) -> LaurentPolyQ {
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            let slot = terms.entry(*e).or_default();
            *slot = &*slot - c;
        }
        terms.retain(|_, c| !c.is_zero());
        LaurentPolyQ { terms }
    }
}

impl<'a> Mul<&'a LaurentPolyQ> for &'a LaurentPolyQ {
    type Output = LaurentPolyQ;
    fn mul(self, rhs: &'a LaurentPolyQ) -> LaurentPolyQ {
        let mut terms: BTreeMap<i64, MultiPoly> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let slot = terms.entry(ea + eb).or_default();
                *slot = &*slot + &(ca * cb);
            }
        }
        terms.retain(|_, c| !c.is_zero());
        LaurentPolyQ { terms }
    }
}

impl Neg for &LaurentPolyQ {
    type Output = LaurentPolyQ;
    fn neg(self) -> LaurentPolyQ {
        LaurentPolyQ {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}
