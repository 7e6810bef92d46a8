use num_bigint::BigInt;
use num_traits::One;

use super::{IdentityError, SubstitutionScheme};
use crate::kernel::{
    binomial, factorial, rat, LaurentPolyQ, Monomial, MultiPoly, QRatFunc, Rational, UPoly, Var,
};
use crate::qseries::{exp_q_series, Coeff, TSeries};

/// `exp(c t)` with rational coefficients.
pub fn exp_linear(c: &Rational, order: usize) -> TSeries<Rational> {
    let mut out = Vec::with_capacity(order + 1);
    let mut term = rat(1);
    for m in 0..=order {
        out.push(term.clone());
        term = term * c / rat(m as i64 + 1);
    }
    TSeries::new(out, order)
}

/// `F(x, y; t) = (e^{xt} - e^{yt}) / (x e^{yt} - y e^{xt})`.
pub fn f_classical(s: &SubstitutionScheme, order: usize) -> Result<TSeries<Rational>, IdentityError> {
    let (ex, ey) = (exp_linear(s.x(), order), exp_linear(s.y(), order));
    let num = ex.sub(&ey)?;
    let den = ey.scale(s.x()).sub(&ex.scale(s.y()))?;
    Ok(num.mul(&den.inverse()?)?)
}

/// `F(x, y, u, q; t) = u1 (E_x - E_y) / (x E_y - y E_x)` with `E_z = exp_q((z - u) t)`.
pub fn f_q(u: &Rational, s: &SubstitutionScheme, order: usize) -> Result<TSeries<QRatFunc>, IdentityError> {
    let ex = exp_q_series(&QRatFunc::constant(s.x() - u), order)?;
    let ey = exp_q_series(&QRatFunc::constant(s.y() - u), order)?;
    let num = ex.sub(&ey)?.scale(s.u1());
    let den = ey.scale(s.x()).sub(&ex.scale(s.y()))?;
    Ok(num.mul(&den.inverse()?)?)
}

/// `1 - q` as a rational function.
pub(crate) fn one_minus_q() -> QRatFunc {
    QRatFunc::from_poly(UPoly::from_ints(&[1, -1]))
}

/// `u3 + u2 F(x, y, u4, q; t)` expanded around `q = 0`, exact below `q^window`.
pub(crate) fn first_base(
    s: &SubstitutionScheme,
    order: usize,
    window: usize,
) -> Result<TSeries<LaurentPolyQ>, IdentityError> {
    let f = f_q(s.u4(), s, order)?;
    let mut h = f.map_coeffs(|c| c.expand_at_zero(window as i64).scale(s.u2()));
    h = h.add(&TSeries::constant(LaurentPolyQ::constant(s.u3().clone()), order))?;
    Ok(h)
}

/// `u4 + u2 F(x, y, u3, 1/q; t)` expanded around `q = infinity`, exact in
/// q-degrees `>= -window`; every exponent is `<= 0`.
pub(crate) fn second_base(
    s: &SubstitutionScheme,
    order: usize,
    window: usize,
) -> Result<TSeries<LaurentPolyQ>, IdentityError> {
    let f = f_q(s.u3(), s, order)?;
    let bound = -(window as i64) - 1;
    let mut h = f.map_coeffs(|c| c.invert_q().expand_at_infinity(bound).scale(s.u2()));
    h = h.add(&TSeries::constant(LaurentPolyQ::constant(s.u4().clone()), order))?;
    Ok(h)
}

fn symbolic_or(value: &Option<Rational>, v: Var) -> MultiPoly {
    match value {
        Some(r) => MultiPoly::constant(r.clone()),
        None => MultiPoly::var(v),
    }
}

/// `[1 - t alpha q^k (1-q) h(q^{k+1} t)]^{-1}` cut below `q^window`.
pub(crate) fn first_bracket(
    base: &TSeries<LaurentPolyQ>,
    alpha: &MultiPoly,
    k: usize,
    window: usize,
) -> Result<TSeries<LaurentPolyQ>, IdentityError> {
    let order = base.order();
    let w = window as i64;
    let lead = (&LaurentPolyQ::q_power(k as i64) - &LaurentPolyQ::q_power(k as i64 + 1)).mul_coeff(alpha);
    let shifted = base.scale_argument(&rat(1), k as i64 + 1)?;
    let mut factor = vec![LaurentPolyQ::one()];
    for m in 0..order {
        factor.push((-&(&lead * shifted.coeff(m))).retain_below(w));
    }
    let inv = TSeries::new(factor, order).inverse()?;
    Ok(inv.map_coeffs(|c| c.retain_below(w)))
}

/// The second bracket after `t -> s / q`:
/// `[1 - s beta q^{-k} (1 - 1/q) h~(s q^{-k-1})]^{-1}`, kept in q-degrees `>= -window`.
pub(crate) fn second_bracket_rescaled(
    base: &TSeries<LaurentPolyQ>,
    beta: &MultiPoly,
    k: usize,
    window: usize,
) -> Result<TSeries<LaurentPolyQ>, IdentityError> {
    let order = base.order();
    let bound = -(window as i64) - 1;
    let k = k as i64;
    let lead = (&LaurentPolyQ::q_power(-k) - &LaurentPolyQ::q_power(-k - 1)).mul_coeff(beta);
    let shifted = base.scale_argument(&rat(1), -k - 1)?;
    let mut factor = vec![LaurentPolyQ::one()];
    for m in 0..order {
        factor.push((-&(&lead * shifted.coeff(m))).retain_above(bound));
    }
    let inv = TSeries::new(factor, order).inverse()?;
    Ok(inv.map_coeffs(|c| c.retain_above(bound)))
}

/// One factor `G_k` of the main product, split into its two brackets.
#[derive(Debug, Clone)]
pub struct GFactor {
    /// `[1 - t alpha q^k (1-q)(u3 + u2 F(x,y,u4,q; t q^{k+1}))]^{-1}`, exact in q-degrees `< window`.
    pub first: TSeries<LaurentPolyQ>,
    /// `[1 - (t beta / q^k)(q-1)(u4 + u2 F(x,y,u3,1/q; t / q^k))]^{-1}`; its `t^m`
    /// coefficient is exact in q-degrees `>= m - window`.
    pub second: TSeries<LaurentPolyQ>,
    pub window: usize,
}

impl GFactor {
    /// Offset of the second bracket's top q-degree above `-k` at `t^1`.
    pub const SECOND_OFFSET: i64 = 1;
}

/// The `k`-th factor of the main product. Unspecialized `alpha`, `beta` stay symbolic.
pub fn g_factor(
    k: usize,
    s: &SubstitutionScheme,
    order: usize,
    window: usize,
) -> Result<GFactor, IdentityError> {
    let alpha = symbolic_or(&s.alpha, Var::Alpha);
    let beta = symbolic_or(&s.beta, Var::Beta);
    let first = first_bracket(&first_base(s, order, window)?, &alpha, k, window)?;
    let second = second_bracket_rescaled(&second_base(s, order, window)?, &beta, k, window)?
        .scale_argument(&rat(1), 1)?;
    Ok(GFactor { first, second, window })
}

/// `h = sum gamma_k (xy)^k (x+y)^{d-2k}`, returning `gamma_0..gamma_{d/2}`.
pub fn gamma_extract(h: &MultiPoly) -> Result<Vec<MultiPoly>, IdentityError> {
    if h.is_zero() {
        return Ok(Vec::new());
    }
    let degree_of = |m: &Monomial| m.exponent(Var::X) as usize + m.exponent(Var::Y) as usize;
    let d = degree_of(&h.terms()[0].0);
    if h.terms().iter().any(|(m, _)| degree_of(m) != d) {
        return Err(IdentityError::NotGammaExpandable("not homogeneous in x, y".into()));
    }
    let swapped = h.substitute_many(&[(Var::X, MultiPoly::var(Var::Y)), (Var::Y, MultiPoly::var(Var::X))]);
    if &swapped != h {
        return Err(IdentityError::NotGammaExpandable("not symmetric in x, y".into()));
    }
    let mut gamma: Vec<MultiPoly> = Vec::with_capacity(d / 2 + 1);
    for k in 0..=d / 2 {
        let mut g = h.coeff_of(Var::X, (d - k) as u16).coeff_of(Var::Y, k as u16);
        for (j, gj) in gamma.iter().enumerate() {
            let c = Rational::from_integer(binomial(d - 2 * j, k - j));
            g = &g - &gj.scale(&c);
        }
        gamma.push(g);
    }
    if &gamma_rebuild(&gamma, d) != h {
        return Err(IdentityError::NotGammaExpandable("reconstruction failed".into()));
    }
    Ok(gamma)
}

/// `sum gamma_k (xy)^k (x+y)^{d-2k}`.
pub fn gamma_rebuild(gamma: &[MultiPoly], d: usize) -> MultiPoly {
    let xy = &MultiPoly::var(Var::X) * &MultiPoly::var(Var::Y);
    let sum = &MultiPoly::var(Var::X) + &MultiPoly::var(Var::Y);
    gamma.iter().enumerate().fold(MultiPoly::zero(), |acc, (k, g)| {
        &acc + &(&(g * &xy.pow(k as u32)) * &sum.pow((d - 2 * k) as u32))
    })
}

/// Largest index accepted by [`euler_numbers`].
pub const EULER_MAX: usize = 12;

/// `E_0..E_n` from `sec t + tan t`, computed by inverting the cosine series.
pub fn euler_numbers(n: usize) -> Result<Vec<BigInt>, IdentityError> {
    if n > EULER_MAX {
        return Err(IdentityError::Policy(format!("euler_numbers is limited to N <= {}", EULER_MAX)));
    }
    let mut cos = Vec::with_capacity(n + 1);
    let mut sin = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let inv = Rational::new(BigInt::one(), factorial(m));
        let sign = if (m / 2) % 2 == 0 { inv.clone() } else { -inv.clone() };
        if m % 2 == 0 {
            cos.push(sign);
            sin.push(rat(0));
        } else {
            cos.push(rat(0));
            sin.push(sign);
        }
    }
    let sec = TSeries::new(cos, n).inverse()?;
    let tan = TSeries::new(sin, n).mul(&sec)?;
    let sum = sec.add(&tan)?;
    Ok((0..=n)
        .map(|m| (sum.coeff(m) * Rational::from_integer(factorial(m))).to_integer())
        .collect())
}

/// Every coefficient of `F(x,y,u,q;t)` times `[n]_q!` is a polynomial in `q`.
pub fn denominators_cancel(f: &TSeries<QRatFunc>) -> bool {
    f.coeffs().iter().enumerate().all(|(m, c)| {
        let fact = QRatFunc::from_poly(crate::kernel::qfactorial(m).to_upoly(Var::Q).expect("q-only"));
        c.mul_ref(&fact).as_poly().is_some()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::ratio;
    use crate::permstats::{distribution, is_alternating, Statistic, Weight};

    fn scheme() -> SubstitutionScheme {
        SubstitutionScheme::new(ratio(3, 2), rat(-2), ratio(1, 3), rat(5)).unwrap()
    }

    #[test]
    fn classical_f_low_coefficients() {
        let s = scheme();
        let f = f_classical(&s, 4).unwrap();
        assert!(f.coeff(0).is_zero());
        assert_eq!(f.coeff(1), &rat(1));
        assert_eq!(f.coeff(2), &((s.x() + s.y()) / rat(2)));
        let two = SubstitutionScheme::from_ints(2, 0, 0, 1).unwrap();
        let f = f_classical(&two, 5).unwrap();
        let e = exp_linear(&rat(2), 5);
        for m in 1..=5 {
            assert_eq!(f.coeff(m), &(e.coeff(m) / rat(2)));
        }
    }

    #[test]
    fn q_f_low_coefficients() {
        let s = scheme();
        let f = f_q(s.u4(), &s, 5).unwrap();
        assert!(f.coeff(0).is_zero());
        assert_eq!(f.coeff(1), &QRatFunc::constant(s.u1().clone()));
        let two = f.coeff(2).mul_ref(&QRatFunc::from_poly(UPoly::from_ints(&[1, 1])));
        let expected = UPoly::new(vec![s.u1() * s.u3(), s.u1() * s.u4()]);
        assert_eq!(two, QRatFunc::from_poly(expected));
        assert!(denominators_cancel(&f));
    }

    #[test]
    fn q_f_at_one_is_classical() {
        let s = scheme();
        let fq = f_q(s.u4(), &s, 5).unwrap();
        let fc = f_classical(&s, 5).unwrap();
        for m in 0..=5 {
            assert_eq!(fq.coeff(m).eval(&rat(1)).unwrap(), s.u1() * fc.coeff(m) * rat(1));
        }
    }

    #[test]
    fn g_factor_shape() {
        let s = scheme();
        let window = 8;
        let g0 = g_factor(0, &s, 3, window).unwrap();
        assert!(g0.first.coeff(0).is_one());
        assert!(g0.second.coeff(0).is_one());
        let alpha = MultiPoly::var(Var::Alpha);
        let u3 = MultiPoly::constant(s.u3().clone());
        let lead = &alpha * &u3;
        let expected = LaurentPolyQ::from_terms([(0, lead.clone()), (1, -&lead)]);
        assert_eq!(g0.first.coeff(1), &expected);

        let mut total = LaurentPolyQ::zero();
        for k in 0..window {
            let g = g_factor(k, &s, 2, window).unwrap();
            assert!(g.first.coeff(1).min_q_degree().is_none_or(|d| d >= k as i64));
            let top = g.second.coeff(1).max_q_degree();
            assert!(top.is_none_or(|d| d <= GFactor::SECOND_OFFSET - k as i64));
            total = &total + g.first.coeff(1);
        }
        assert_eq!(total, LaurentPolyQ::from_multipoly(&lead));
    }

    #[test]
    fn gamma_examples() {
        let x = MultiPoly::var(Var::X);
        let y = MultiPoly::var(Var::Y);
        let sq = (&x + &y).pow(2);
        assert_eq!(gamma_extract(&sq).unwrap(), vec![MultiPoly::one(), MultiPoly::zero()]);
        assert_eq!(gamma_extract(&(&x * &y)).unwrap(), vec![MultiPoly::zero(), MultiPoly::one()]);
        let a3 = distribution(
            3,
            &[Weight::new(Statistic::Asc, Var::X), Weight::new(Statistic::Des, Var::Y)],
            &[],
        )
        .unwrap();
        assert_eq!(a3.to_string(), "x^2 + 4*x*y + y^2");
        assert_eq!(gamma_extract(&a3).unwrap(), vec![MultiPoly::one(), MultiPoly::int(2)]);
        assert!(gamma_extract(&x).is_err());
        assert!(gamma_extract(&(&x.pow(2) + &y)).is_err());
    }

    #[test]
    fn euler_numbers_match_alternating_counts() {
        let e = euler_numbers(9).unwrap();
        let expected: Vec<BigInt> = [1, 1, 1, 2, 5, 16, 61, 272, 1385, 7936].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(e, expected);
        for (n, en) in e.iter().enumerate().take(7) {
            let count = crate::permstats::enumerate(n).unwrap().filter(is_alternating).count();
            assert_eq!(BigInt::from(count), *en);
        }
        assert!(euler_numbers(13).is_err());
    }

    #[test]
    fn first_base_starts_with_u3() {
        let s = scheme();
        let h = first_base(&s, 3, 6).unwrap();
        assert_eq!(h.coeff(0), &LaurentPolyQ::constant(s.u3().clone()));
        assert_eq!(h.coeff(1), &LaurentPolyQ::constant(s.u2() * s.u1()));
    }
}
