use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use super::builders::{
    denominators_cancel, euler_numbers, exp_linear, f_classical, f_q, first_base, gamma_extract,
    one_minus_q, second_base, second_bracket_rescaled,
};
use super::family::{lhs_family, Family};
use super::scheme::{schemes, small_rational, x_values, Free};
use super::{IdentityError, SubstitutionScheme, TruncationPolicy};
use crate::kernel::{
    factorial, qbinomial, qfactorial, rat, ratio, LaurentPolyQ, MultiPoly, QRatFunc, Rational, Var,
};
use crate::permstats::{distribution, enumerate, Boundary, Restriction, Statistic, Weight};
use crate::qseries::{
    exp_q_normalized, exp_q_series, product_expansion, product_expansion_of, q_compose, q_integral, Coeff,
    IntegralDirection, TSeries,
};

type Res<T> = Result<T, IdentityError>;

/// First point at which two sides disagree.
#[derive(Debug, Clone)]
pub(crate) struct Failure {
    pub degree: usize,
    pub detail: String,
}

impl Failure {
    fn new(degree: usize, detail: impl Into<String>) -> Self {
        Failure { degree, detail: detail.into() }
    }

    fn context(self, what: impl fmt::Display) -> Self {
        Failure {
            degree: self.degree,
            detail: format!("{} [{}]", self.detail, what),
        }
    }
}

/// Parameters and verdict of one verifier run.
#[derive(Debug, Default)]
pub(crate) struct Outcome {
    pub params: Vec<(String, String)>,
    pub failure: Option<Failure>,
}

impl Outcome {
    fn param(&mut self, key: &str, value: impl fmt::Display) {
        self.params.push((key.to_string(), value.to_string()));
    }

    fn absorb(&mut self, f: Option<Failure>) {
        if self.failure.is_none() {
            self.failure = f;
        }
    }

    fn sampling(&mut self, policy: &TruncationPolicy, count: usize, degree_bound: usize) {
        self.param("mode", if policy.exhaustive_grid { "grid" } else { "random" });
        self.param("samples", count);
        self.param("degree_bound", degree_bound);
    }

    fn symbolic(&mut self) {
        self.param("mode", "symbolic");
    }
}

fn residual<C: Coeff + fmt::Display>(degree: usize, label: &str, lhs: &C, rhs: &C) -> Option<Failure> {
    let diff = lhs.sub_ref(rhs);
    (!diff.is_zero()).then(|| Failure::new(degree, format!("{}: residual {}", label, diff)))
}

fn first_residual<C: Coeff + fmt::Display>(label: &str, lhs: &[C], rhs: &[C]) -> Option<Failure> {
    lhs.iter()
        .zip(rhs)
        .enumerate()
        .find_map(|(m, (l, r))| residual(m, label, l, r))
}

/// Runs `check` on every item in parallel and keeps the first failure in input order.
fn first_failure<T, F>(items: &[T], check: F) -> Res<Option<Failure>>
where
    T: Sync + fmt::Display,
    F: Fn(&T) -> Res<Option<Failure>> + Sync,
{
    let results: Vec<Res<Option<Failure>>> = items
        .par_iter()
        .map(|item| Ok(check(item)?.map(|f| f.context(item))))
        .collect();
    for r in results {
        if let Some(f) = r? {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

fn family(f: Family, n: usize) -> Res<MultiPoly> {
    Ok((*lhs_family(f, n)?).clone())
}

fn qfact(m: usize) -> QRatFunc {
    QRatFunc::from_multipoly(&qfactorial(m)).expect("q-only")
}

fn fact(m: usize) -> Rational {
    Rational::from_integer(factorial(m))
}

fn to_constant(p: &MultiPoly) -> Res<Rational> {
    p.as_constant()
        .ok_or_else(|| IdentityError::DegenerateScheme(format!("{} is not fully specialized", p)))
}

const U_VARS: [Var; 4] = [Var::U1, Var::U2, Var::U3, Var::U4];
const ALL_BUT_Q: [Var; 8] = [Var::X, Var::Y, Var::U1, Var::U2, Var::U3, Var::U4, Var::Alpha, Var::Beta];

fn lmp(p: &MultiPoly) -> LaurentPolyQ {
    LaurentPolyQ::from_multipoly(p)
}

fn sum_var() -> MultiPoly {
    &MultiPoly::var(Var::Alpha) + &MultiPoly::var(Var::Beta)
}

/// `sum x A_n(x) t^n / n! = (1-x) / (1 - x e^{(1-x) t})`, plus the constant 1.
pub(crate) fn eulerian_egf(n: usize, policy: &TruncationPolicy) -> Res<Outcome> {
    let xs = x_values(policy, n)?;
    let mut out = Outcome::default();
    out.sampling(policy, xs.len(), n);
    let lhs: Vec<MultiPoly> = (1..=n).map(|m| family(Family::Eulerian, m)).collect::<Res<_>>()?;
    let f = first_failure(&xs, |x| {
        let c = rat(1) - x;
        let den = TSeries::one(n).sub(&exp_linear(&c, n).scale(x))?;
        let rhs = den.inverse()?.scale(&c);
        let mut left = vec![rat(1)];
        for (i, a) in lhs.iter().enumerate() {
            left.push(x * to_constant(&a.substitute_rational(Var::X, x))? / fact(i + 1));
        }
        Ok(first_residual("eulerian egf", &left, rhs.coeffs()))
    })?;
    out.absorb(f);
    Ok(out)
}

/// `1 + sum x^{des+1} q^inv t^n/[n]_q! = (1-x) / (1 - x exp_q(t(1-x)))` with symbolic `q`.
pub(crate) fn stanley(n: usize, policy: &TruncationPolicy) -> Res<Outcome> {
    let xs = x_values(policy, n)?;
    let mut out = Outcome::default();
    out.sampling(policy, xs.len(), n + 1);
    let lhs: Vec<MultiPoly> = (1..=n).map(|m| family(Family::Stanley, m)).collect::<Res<_>>()?;
    let f = first_failure(&xs, |x| {
        let c = rat(1) - x;
        let e = exp_q_series(&QRatFunc::constant(c.clone()), n)?;
        let rhs = TSeries::one(n).sub(&e.scale(x))?.inverse()?.scale(&c);
        let mut left = vec![QRatFunc::one()];
        for (i, a) in lhs.iter().enumerate() {
            let p = QRatFunc::from_multipoly(&a.substitute_rational(Var::X, x))?;
            left.push(p.checked_div(&qfact(i + 1))?);
        }
        Ok(first_residual("stanley", &left, rhs.coeffs()))
    })?;
    out.absorb(f);
    Ok(out)
}

/// `sum A_{n+1}(x,y|alpha,beta) t^n/n! = (1 + xF)^alpha (1 + yF)^beta`.
pub(crate) fn carlitz(n: usize, policy: &TruncationPolicy) -> Res<Outcome> {
    let all = schemes(policy, n, &[Free::X, Free::Y, Free::Alpha, Free::Beta], n + 1)?;
    let mut out = Outcome::default();
    out.sampling(policy, all.len(), n);
    let order = n - 1;
    let lhs: Vec<MultiPoly> = (1..=n).map(|m| family(Family::StirlingEulerian, m)).collect::<Res<_>>()?;
    let f = first_failure(&all, |s| {
        let f = f_classical(s, order)?;
        let one = TSeries::one(order);
        let a = one.add(&f.scale(s.x()))?.power(s.alpha()?)?;
        let b = one.add(&f.scale(s.y()))?.power(s.beta()?)?;
        let rhs = a.mul(&b)?;
        let left: Vec<Rational> = lhs
            .iter()
            .enumerate()
            .map(|(m, p)| Ok(to_constant(&s.specialize(p, &ALL_BUT_Q)?)? / fact(m)))
            .collect::<Res<_>>()?;
        Ok(first_residual("carlitz", &left, rhs.coeffs()))
    })?;
    out.absorb(f);
    Ok(out)
}

/// `sum_{n>=1} sum u1^V u2^{M-1} u3^da u4^dd t^n/n! = F(x, y; t)`.
pub(crate) fn carlitz2(n: usize, policy: &TruncationPolicy) -> Res<Outcome> {
    let all = schemes(policy, n, &[Free::X, Free::Y, Free::U3], n + 1)?;
    let mut out = Outcome::default();
    out.sampling(policy, all.len(), n);
    let lhs: Vec<MultiPoly> = (1..=n).map(|m| family(Family::CarlitzQuadruple, m)).collect::<Res<_>>()?;
    let f = first_failure(&all, |s| {
        let rhs = f_classical(s, n)?;
        let mut left = vec![rat(0)];
        for (i, p) in lhs.iter().enumerate() {
            left.push(to_constant(&s.specialize(p, &U_VARS)?)? / fact(i + 1));
        }
        Ok(first_residual("carlitz quadruple", &left, rhs.coeffs()))
    })?;
    out.absorb(f);
    Ok(out)
}

/// Tilde statistics with `q^inv` against `F(x, y, u4, q; t)`, and denominator cancellation.
pub(crate) fn pan_zeng(n: usize, policy: &TruncationPolicy) -> Res<Outcome> {
    let all = schemes(policy, n, &[Free::X, Free::Y, Free::U3, Free::U1], n + 1)?;
    let mut out = Outcome::default();
    out.sampling(policy, all.len(), n);
    let lhs: Vec<MultiPoly> = (1..=n).map(|m| family(Family::PanZeng, m)).collect::<Res<_>>()?;
    let f = first_failure(&all, |s| {
        let rhs = f_q(s.u4(), s, n)?;
        if !denominators_cancel(&rhs) {
            let m = (0..=n)
                .find(|&m| rhs.coeff(m).mul_ref(&qfact(m)).as_poly().is_none())
                .unwrap_or(0);
            return Ok(Some(Failure::new(m, "[n]_q! F_n is not a polynomial in q")));
        }
        let mut left = vec![QRatFunc::zero()];
        for (i, p) in lhs.iter().enumerate() {
            let v = QRatFunc::from_multipoly(&s.specialize(p, &U_VARS)?)?;
            left.push(v.checked_div(&qfact(i + 1))?);
        }
        Ok(first_residual("pan-zeng", &left, rhs.coeffs()))
    })?;
    out.absorb(f);
    Ok(out)
}

/// `(1+yF)^{(a+b)/2} (1+xF)^{(a+b)/2} e^{(b-a)(u4-u3)t/2}`.
pub fn ji_rhs(s: &SubstitutionScheme, order: usize) -> Res<TSeries<Rational>> {
    let f = f_classical(s, order)?;
    let (a, b) = (s.alpha()?, s.beta()?);
    let e = (a + b) / rat(2);
    let one = TSeries::one(order);
    let left = one.add(&f.scale(s.y()))?.power(&e)?;
    let right = one.add(&f.scale(s.x()))?.power(&e)?;
    let lin = (b - a) * (s.u4() - s.u3()) / rat(2);
    Ok(left.mul(&right)?.mul(&exp_linear(&lin, order))?)
}

pub(crate) fn ji(n: usize, policy: &TruncationPolicy) -> Res<Outcome> {
    let all = schemes(policy, n, &[Free::X, Free::Y, Free::U3, Free::Alpha, Free::Beta], n + 1)?;
    let mut out = Outcome::default();
    out.sampling(policy, all.len(), n);
    let order = n - 1;
    let lhs: Vec<MultiPoly> = (1..=n).map(|m| family(Family::P, m)).collect::<Res<_>>()?;
    let f = first_failure(&all, |s| {
        let rhs = ji_rhs(s, order)?;
        let left: Vec<Rational> = lhs
            .iter()
            .enumerate()
            .map(|(m, p)| Ok(to_constant(&s.specialize(p, &ALL_BUT_Q)?)? / fact(m)))
            .collect::<Res<_>>()?;
        Ok(first_residual("ji", &left, rhs.coeffs()))
    })?;
    out.absorb(f);
    Ok(out)
}

/// The q-product form of `exp_q[f]` against the q-composition, for random `f`.
pub(crate) fn gessel_product(policy: &TruncationPolicy) -> Res<Outcome> {
    let (order, window) = (policy.t_order, policy.q_window);
    let mut out = Outcome::default();
    out.param("mode", "random");
    out.param("samples", policy.samples);
    out.param("t_order", order);
    out.param("q_window", window);
    let mut rng = policy.rng();
    let q = MultiPoly::var(Var::Q);
    let fs: Vec<TSeries<MultiPoly>> = (0..policy.samples)
        .map(|_| {
            let mut c = vec![MultiPoly::zero()];
            for _ in 1..=order {
                let p = (0..3u32).fold(MultiPoly::zero(), |acc, j| {
                    &acc + &q.pow(j).scale(&small_rational(&mut rng))
                });
                c.push(p);
            }
            TSeries::new(c, order)
        })
        .collect();
    let exp = exp_q_normalized(&MultiPoly::one(), order);
    let w = window.min(u16::MAX as usize) as u16;
    let f = first_failure(&fs, |f| {
        let oracle = q_compose(&exp, f)?;
        let prod = product_expansion_of(f, window, order)?;
        let left: Vec<MultiPoly> = (0..=order)
            .map(|m| (prod.coeff(m) * &qfactorial(m)).truncate_degree(Var::Q, w))
            .collect();
        let right: Vec<MultiPoly> = oracle.coeffs().iter().map(|c| c.truncate_degree(Var::Q, w)).collect();
        Ok(first_residual("product vs composition", &left, &right))
    })?;
    out.absorb(f);
    Ok(out)
}

/// `B_1 = u3 alpha` and `B_n = u2 alpha q^{n-1} (tilde weight of S_{n-1} with q^inv)`.
fn basic_formula(n: usize) -> Res<Option<Failure>> {
    let alpha = MultiPoly::var(Var::Alpha);
    for m in 1..=n {
        let b = family(Family::B, m)?;
        let expected = if m == 1 {
            &MultiPoly::var(Var::U3) * &alpha
        } else {
            let lead = &(&MultiPoly::var(Var::U2) * &alpha) * &MultiPoly::var(Var::Q).pow(m as u32 - 1);
            &lead * &family(Family::PanZeng, m - 1)?
        };
        if let Some(f) = residual(m, "basic permutations", &b, &expected) {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

/// `sum g_n t^n/[n]_q! = exp_q[sum f_n t^n/[n]_q!]` with `f_n` summed over basic permutations.
pub(crate) fn gessel_multiplicative(n: usize) -> Res<Outcome> {
    let mut out = Outcome::default();
    out.symbolic();
    let exp = exp_q_normalized(&MultiPoly::one(), n);
    for (whole, basic, label) in [
        (Family::LmaInv, Family::BasicLmaInv, "x^lma"),
        (Family::L, Family::B, "omega_0"),
    ] {
        let g: Vec<MultiPoly> = (0..=n).map(|m| family(whole, m)).collect::<Res<_>>()?;
        let f: Vec<MultiPoly> = (0..=n).map(|m| family(basic, m)).collect::<Res<_>>()?;
        let rhs = q_compose(&exp, &TSeries::normalized(f, n))?;
        out.absorb(first_residual(label, &g, rhs.coeffs()));
    }
    out.absorb(basic_formula(n)?);
    Ok(out)
}

/// `prod_{k<window} [1 - t alpha q^k (1-q)(u3 + u2 F(x,y,u4,q; t q^{k+1}))]^{-1}`.
fn ln_product(s: &SubstitutionScheme, alpha: &MultiPoly, order: usize, window: usize) -> Res<TSeries<LaurentPolyQ>> {
    let base = first_base(s, order, window)?.scale_by(&lmp(alpha));
    Ok(product_expansion(
        |k| base.scale_argument(&rat(1), k as i64 + 1),
        window,
        order,
    )?)
}

fn ln_scheme(s: &SubstitutionScheme, n: usize, window: usize, lhs: &[MultiPoly]) -> Res<Option<Failure>> {
    let prod = ln_product(s, &MultiPoly::var(Var::Alpha), n, window)?;
    let w = window as i64;
    let mut left = Vec::with_capacity(n + 1);
    let mut right = Vec::with_capacity(n + 1);
    for (m, l) in lhs.iter().enumerate() {
        left.push(lmp(&s.specialize(l, &U_VARS)?).retain_below(w));
        right.push((prod.coeff(m) * &lmp(&qfactorial(m))).retain_below(w));
    }
    Ok(first_residual("ln product", &left, &right))
}

pub(crate) fn ln_formula(n: usize, policy: &TruncationPolicy) -> Res<Outcome> {
    let all = schemes(policy, n, &[Free::X, Free::Y, Free::U3, Free::U1], n + 1)?;
    let mut out = Outcome::default();
    out.sampling(policy, all.len(), n);
    out.param("q_window", policy.q_window);
    let lhs: Vec<MultiPoly> = (0..=n).map(|m| family(Family::L, m)).collect::<Res<_>>()?;
    out.absorb(first_failure(&all, |s| ln_scheme(s, n, policy.q_window, &lhs))?);
    Ok(out)
}

fn choose2(m: usize) -> usize {
    m * m.saturating_sub(1) / 2
}

/// `q^{C(m,2)} L_m(u4, u3, beta, 1/q)`.
fn reflect(l: &MultiPoly, m: usize) -> Res<MultiPoly> {
    let swapped = l.substitute_many(&[
        (Var::U3, MultiPoly::var(Var::U4)),
        (Var::U4, MultiPoly::var(Var::U3)),
        (Var::Alpha, MultiPoly::var(Var::Beta)),
    ]);
    Ok(lmp(&swapped).invert_q().shift(choose2(m) as i64).to_multipoly()?)
}

pub(crate) fn rn_formula(n: usize) -> Res<Outcome> {
    let mut out = Outcome::default();
    out.symbolic();
    for m in 0..=n {
        let r = family(Family::R, m)?;
        let l = family(Family::L, m)?;
        if let Some(f) = residual(m, "reversal", &r, &reflect(&l, m)?) {
            out.absorb(Some(f));
            break;
        }
    }
    Ok(out)
}

fn p_q_weights() -> Vec<Weight> {
    let (zz, w) = (Boundary::ZERO, Weight::new);
    vec![
        w(Statistic::Valleys(zz), Var::U1),
        w(Statistic::Peaks(zz), Var::U2).minus(1),
        w(Statistic::DoubleAscents(zz), Var::U3),
        w(Statistic::DoubleDescents(zz), Var::U4),
        w(Statistic::Lma, Var::Alpha).minus(1),
        w(Statistic::Rma, Var::Beta).minus(1),
        w(Statistic::Inv, Var::Q),
    ]
}

/// `P_{n+1} = sum_k [n k]_q q^{n-k} L_k R_{n-k}`, and the same split for each position of `n+1`.
pub(crate) fn convolution(n: usize) -> Res<Outcome> {
    let mut out = Outcome::default();
    out.symbolic();
    let ls: Vec<MultiPoly> = (0..n).map(|m| family(Family::L, m)).collect::<Res<_>>()?;
    let rs: Vec<MultiPoly> = (0..n).map(|m| family(Family::R, m)).collect::<Res<_>>()?;
    let weights = p_q_weights();
    let q = MultiPoly::var(Var::Q);
    for m in 0..n {
        let mut total = MultiPoly::zero();
        for k in 0..=m {
            let term = &(&qbinomial(m, k)? * &q.pow((m - k) as u32)) * &(&ls[k] * &rs[m - k]);
            let split = distribution(
                m + 1,
                &weights,
                &[Restriction::LetterAt { position: k + 1, letter: m + 1 }],
            )?;
            if let Some(f) = residual(m, &format!("split at position {}", k + 1), &split, &term) {
                out.absorb(Some(f));
            }
            total = &total + &term;
        }
        out.absorb(residual(m, "convolution", &family(Family::PQ, m + 1)?, &total));
    }
    Ok(out)
}

/// Reconstructs `L_m` and `q^m R_m` from the two truncated half products and
/// compares their q-binomial convolution with `P_{m+1}`.
fn main_direct_scheme(s: &SubstitutionScheme, n: usize, lhs: &[MultiPoly]) -> Res<Option<Failure>> {
    let order = n - 1;
    let window = choose2(n) + 2;
    let w = window as i64;
    let left = ln_product(s, &MultiPoly::var(Var::Alpha), order, window)?;
    let base = second_base(s, order, window)?;
    let beta = MultiPoly::var(Var::Beta);
    let mut right = TSeries::<LaurentPolyQ>::one(order);
    for k in 0..=window {
        let factor = second_bracket_rescaled(&base, &beta, k, window)?;
        right = right.mul(&factor)?.map_coeffs(|c| c.retain_above(-w - 1));
    }
    let mut l_hat = Vec::with_capacity(order + 1);
    let mut r_hat = Vec::with_capacity(order + 1);
    for m in 0..=order {
        let fq = lmp(&qfactorial(m));
        l_hat.push((left.coeff(m) * &fq).retain_below(w));
        let r = (right.coeff(m) * &fq.invert_q()).retain_above(-w - 1);
        r_hat.push(r.shift((m + choose2(m)) as i64));
    }
    let prod = TSeries::normalized(l_hat, order).mul(&TSeries::normalized(r_hat, order))?;
    let mut got = Vec::with_capacity(order + 1);
    let mut want = Vec::with_capacity(order + 1);
    for (m, l) in lhs.iter().enumerate().take(order + 1) {
        got.push(prod.coeff(m).to_multipoly()?);
        want.push(s.specialize(l, &U_VARS)?);
    }
    Ok(first_residual("direct product", &want, &got))
}

pub(crate) fn main_theorem(n: usize, policy: &TruncationPolicy) -> Res<Outcome> {
    let mut out = Outcome::default();
    let ln = ln_formula(n, policy)?;
    let rn = rn_formula(n)?;
    let conv = convolution(n)?;
    out.params = ln.params;
    let all = schemes(policy, n, &[Free::X, Free::Y, Free::U3, Free::U1], n + 1)?;
    let lhs: Vec<MultiPoly> = (1..=n).map(|m| family(Family::PQ, m)).collect::<Res<_>>()?;
    let direct = first_failure(&all, |s| main_direct_scheme(s, n, &lhs))?;
    let verdict = |f: &Option<Failure>| if f.is_none() { "pass" } else { "fail" };
    out.param("ln-formula", verdict(&ln.failure));
    out.param("rn-formula", verdict(&rn.failure));
    out.param("convolution", verdict(&conv.failure));
    out.param("direct", verdict(&direct));
    out.param("direct_q_window", choose2(n) + 2);
    for f in [ln.failure, rn.failure, conv.failure, direct] {
        out.absorb(f);
    }
    Ok(out)
}

/// `exp( int ln[1-(1-q)z alpha(u3+u2F(zq))]^{-1} / ((1-q)z) d_q z
///     + int ln[1-(q-1)z beta(u4+u2F~(z))]^{-1} / ((1-1/q)z) d_{1/q} z )`.
pub fn main2_series(s: &SubstitutionScheme, order: usize) -> Res<TSeries<QRatFunc>> {
    let q = QRatFunc::q();
    let alpha = QRatFunc::constant(s.alpha()?.clone());
    let beta = QRatFunc::constant(s.beta()?.clone());
    let one = TSeries::<QRatFunc>::one(order + 1);
    let omq = one_minus_q();

    let h = f_q(s.u4(), s, order)?
        .scale(s.u2())
        .add(&TSeries::constant(QRatFunc::constant(s.u3().clone()), order))?;
    let g = h.scale_argument(&rat(1), 1)?.scale_by(&alpha.mul_ref(&omq)).mul_t()?;
    let a = one.sub(&g)?.log()?.neg().div_t()?.scale_by(&omq.inv()?);
    let ia = q_integral(&a, IntegralDirection::Q)?;

    let ht = f_q(s.u3(), s, order)?
        .map_coeffs(|c| c.invert_q())
        .scale(s.u2())
        .add(&TSeries::constant(QRatFunc::constant(s.u4().clone()), order))?;
    let qm1 = q.sub_ref(&QRatFunc::one());
    let gt = ht.scale_by(&beta.mul_ref(&qm1)).mul_t()?;
    let one_minus_inv = QRatFunc::one().sub_ref(&q.inv()?);
    let b = one.sub(&gt)?.log()?.neg().div_t()?.scale_by(&one_minus_inv.inv()?);
    let ib = q_integral(&b, IntegralDirection::QInverse)?;

    Ok(ia.add(&ib)?.exp()?.truncate(order))
}

/// `int_0^t xy F(x,y;z) dz = ln((x-y) / (x e^{yt} - y e^{xt}))`.
fn parint(s: &SubstitutionScheme, order: usize) -> Res<Option<Failure>> {
    let lhs = f_classical(s, order)?.scale(&(s.x() * s.y())).integral()?.truncate(order);
    let den = exp_linear(s.y(), order)
        .scale(s.x())
        .sub(&exp_linear(s.x(), order).scale(s.y()))?;
    let rhs = den.inverse()?.scale(&(s.x() - s.y())).log()?;
    Ok(first_residual("integral lemma", lhs.coeffs(), rhs.coeffs()))
}

pub(crate) fn main2(n: usize, policy: &TruncationPolicy) -> Res<Outcome> {
    let free = [Free::X, Free::Y, Free::U3, Free::U1, Free::Alpha, Free::Beta];
    let all = schemes(policy, n, &free, n + 1)?;
    let mut out = Outcome::default();
    out.sampling(policy, all.len(), n);
    out.param("parint_order", policy.t_order);
    let order = n - 1;
    let lhs: Vec<MultiPoly> = (1..=n).map(|m| family(Family::PQ, m)).collect::<Res<_>>()?;
    let f = first_failure(&all, |s| {
        let rhs = main2_series(s, order)?;
        let mut left = Vec::with_capacity(order + 1);
        for (m, p) in lhs.iter().enumerate() {
            let v = QRatFunc::from_multipoly(&s.specialize(p, &ALL_BUT_Q)?)?;
            left.push(v.checked_div(&qfact(m))?);
        }
        if let Some(f) = first_residual("integral form", &left, rhs.coeffs()) {
            return Ok(Some(f));
        }
        let ji = ji_rhs(s, order)?;
        let at_one: Vec<Rational> = rhs.coeffs().iter().map(|c| c.eval(&rat(1))).collect::<Result<_, _>>()?;
        if let Some(f) = first_residual("q = 1 against ji", &at_one, ji.coeffs()) {
            return Ok(Some(f));
        }
        parint(s, policy.t_order)
    })?;
    out.absorb(f);
    Ok(out)
}

fn power_of_two(e: i64) -> Rational {
    if e >= 0 {
        Rational::from_integer(num_bigint::BigInt::from(1) << e as usize)
    } else {
        Rational::new(1.into(), num_bigint::BigInt::from(1) << (-e) as usize)
    }
}

/// `gamma_extract(h)` against `2^{2k+1-n}` times the `u2^k` layer of `peaks`, plus positivity.
fn gamma_against(n: usize, h: &MultiPoly, peaks: &MultiPoly, label: &str) -> Res<Option<Failure>> {
    let gamma = gamma_extract(h)?;
    if peaks.degree(Var::U2) as usize >= gamma.len().max(1) {
        return Ok(Some(Failure::new(
            peaks.degree(Var::U2) as usize,
            format!("{}: peak count exceeds the gamma range", label),
        )));
    }
    for (k, g) in gamma.iter().enumerate() {
        let scale = power_of_two(2 * k as i64 + 1 - n as i64);
        let rhs = peaks.coeff_of(Var::U2, k as u16).scale(&scale);
        if let Some(f) = residual(k, label, g, &rhs) {
            return Ok(Some(f));
        }
        let lifted = g.scale(&power_of_two(n as i64 - 2 * k as i64 - 1));
        if !g.has_nonnegative_coeffs() || !lifted.has_nonnegative_integer_coeffs() {
            return Ok(Some(Failure::new(k, format!("{}: gamma_{} = {} is not positive", label, k, g))));
        }
    }
    Ok(None)
}

/// Runs `check` for every size `1..=n`, labelling failures with the size.
fn each_size(n: usize, check: impl Fn(usize) -> Res<Option<Failure>>) -> Res<Outcome> {
    let mut out = Outcome::default();
    out.symbolic();
    for size in 1..=n {
        if let Some(f) = check(size)? {
            out.absorb(Some(f.context(format_args!("n={}", size))));
            break;
        }
    }
    Ok(out)
}

pub(crate) fn gamma_ab(n: usize) -> Res<Outcome> {
    each_size(n, |n| {
        let half = sum_var().scale(&ratio(1, 2));
        let a = family(Family::StirlingEulerian, n)?;
        let h = a.substitute_many(&[(Var::Alpha, half.clone()), (Var::Beta, half)]);
        gamma_against(n, &h, &family(Family::PeaksLmiRmi, n)?, "gamma(alpha, beta)")
    })
}

pub(crate) fn gamma_aa(n: usize) -> Res<Outcome> {
    each_size(n, |n| {
        let a = family(Family::StirlingEulerian, n)?;
        let h = a.substitute(Var::Beta, &MultiPoly::var(Var::Alpha));
        gamma_against(n, &h, &family(Family::PeaksLmiPlusRmi, n)?, "gamma(alpha)")
    })
}

/// `sum_{P_{n,k}} (2a)^{lmi-1} (2b)^{rmi-1} = sum_{P_{n,k}} (a+b)^{lmi+rmi-2}` for every `k`.
pub(crate) fn pk_lr(n: usize) -> Res<Outcome> {
    each_size(n, pk_lr_at)
}

fn pk_lr_at(n: usize) -> Res<Option<Failure>> {
    let mut out = Outcome::default();
    let two = |v: Var| MultiPoly::var(v).scale(&rat(2));
    let d = family(Family::PeaksLmiRmi, n)?;
    let e = family(Family::PeaksLmiPlusRmi, n)?;
    for k in 0..=n / 2 {
        let lhs = d
            .coeff_of(Var::U2, k as u16)
            .substitute_many(&[(Var::Alpha, two(Var::Alpha)), (Var::Beta, two(Var::Beta))]);
        let rhs = e.coeff_of(Var::U2, k as u16).substitute(Var::Alpha, &sum_var());
        out.absorb(residual(k, "peak layer", &lhs, &rhs));
    }
    Ok(out.failure)
}

/// `sum_{P_{n,k}} a^{lmi-1} b^{rmi-1} = sum_{L_{n-1,k}} (a+b)^rmi`, through the
/// permutations starting with 1 and the map `σ -> (σ_2 - 1)...(σ_n - 1)`.
pub(crate) fn pk_lr2(n: usize) -> Res<Outcome> {
    each_size(n, pk_lr2_at)
}

fn pk_lr2_at(n: usize) -> Res<Option<Failure>> {
    let mut out = Outcome::default();
    let ii = Boundary::INFINITY;
    let d = family(Family::PeaksLmiRmi, n)?;
    let z = family(Family::ZeroPeaksRmi, n - 1)?;
    let pivot = distribution(
        n,
        &[
            Weight::new(Statistic::Peaks(ii), Var::U2),
            Weight::new(Statistic::Rmi, Var::Alpha).minus(1),
        ],
        &[Restriction::LetterAt { position: 1, letter: 1 }],
    )?;
    for k in 0..=n / 2 {
        let lhs = d.coeff_of(Var::U2, k as u16);
        let via_pivot = pivot.coeff_of(Var::U2, k as u16).substitute(Var::Alpha, &sum_var());
        let rhs = z.coeff_of(Var::U2, k as u16).substitute(Var::Alpha, &sum_var());
        out.absorb(residual(k, "orbit sum", &lhs, &via_pivot));
        out.absorb(residual(k, "peak layer", &lhs, &rhs));
    }
    let mut images = BTreeSet::new();
    for sigma in enumerate(n)?.filter(|p| p.at(1) == 1) {
        let w = sigma.word();
        let tau: Vec<usize> = w[1..].iter().map(|&v| v - 1).collect();
        let k = Statistic::Peaks(ii).eval(w);
        let same_peaks = k == Statistic::Peaks(Boundary::ZERO_INFINITY).eval(&tau);
        let same_rmi = Statistic::Rmi.eval(w) == Statistic::Rmi.eval(&tau) + 1;
        if !(same_peaks && same_rmi) {
            out.absorb(Some(Failure::new(k as usize, format!("pivot map breaks statistics at {}", sigma))));
        }
        images.insert(tau);
    }
    let expected = factorial(n - 1);
    if num_bigint::BigInt::from(images.len()) != expected {
        out.absorb(Some(Failure::new(0, "pivot map is not a bijection")));
    }
    Ok(out.failure)
}

/// `A_{2m+1}(-1, 1 | a/2, a/2) = (-1)^m sum_{A_{2m}} a^rmi`, and `E_j = |A_j|`.
pub(crate) fn secant(n: usize) -> Res<Outcome> {
    let mut out = Outcome::default();
    out.symbolic();
    let half = MultiPoly::var(Var::Alpha).scale(&ratio(1, 2));
    for m in 0..=(n - 1) / 2 {
        let a = family(Family::StirlingEulerian, 2 * m + 1)?;
        let lhs = a.substitute_many(&[
            (Var::X, MultiPoly::int(-1)),
            (Var::Y, MultiPoly::one()),
            (Var::Alpha, half.clone()),
            (Var::Beta, half.clone()),
        ]);
        let sign = if m % 2 == 0 { rat(1) } else { rat(-1) };
        let rhs = family(Family::AlternatingRmi, 2 * m)?.scale(&sign);
        out.absorb(residual(2 * m + 1, "secant", &lhs, &rhs));
    }
    let euler = euler_numbers(n.min(super::builders::EULER_MAX))?;
    for (j, e) in euler.iter().enumerate() {
        let count = family(Family::AlternatingRmi, j)?.substitute_rational(Var::Alpha, &rat(1));
        let e = MultiPoly::constant(Rational::from_integer(e.clone()));
        out.absorb(residual(j, "euler number", &count, &e));
    }
    Ok(out)
}
