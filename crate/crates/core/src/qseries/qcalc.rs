use super::ring::{no_q, q_binomial_rows, ring_qint, Coeff, QTruncate};
use super::series::{Basis, TSeries};
use super::SeriesError;
use crate::kernel::{KernelError, Rational};

/// Which q-integral: `d_q` or `d_{1/q}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IntegralDirection {
    Q,
    QInverse,
}

fn require_q<C: Coeff>(op: &'static str) -> Result<(), SeriesError> {
    if C::CAPS.has_q_variable {
        Ok(())
    } else {
        Err(no_q::<C>(op))
    }
}

fn require_zero_constant<C: Coeff>(f: &TSeries<C>, op: &'static str) -> Result<(), SeriesError> {
    if f.constant_term().is_zero() {
        Ok(())
    } else {
        Err(SeriesError::NonzeroConstantTerm(op))
    }
}

/// The Eulerian differential operator `(f(qt) - f(t)) / ((q - 1) t)`.
pub fn delta_t<C: Coeff>(f: &TSeries<C>) -> Result<TSeries<C>, SeriesError> {
    require_q::<C>("delta_t")?;
    if f.order() == 0 {
        return Err(SeriesError::EmptySeries("delta_t"));
    }
    let order = f.order() - 1;
    match f.basis() {
        Basis::QFactorial => Ok(TSeries::normalized(f.coeffs()[1..].to_vec(), order)),
        Basis::Power => {
            let mut out = Vec::with_capacity(order + 1);
            for m in 0..=order {
                let c = f.coeff(m + 1);
                if c.is_zero() {
                    out.push(C::zero());
                } else {
                    let qi: C = ring_qint(m + 1).ok_or_else(|| no_q::<C>("delta_t"))?;
                    out.push(c.mul_ref(&qi));
                }
            }
            Ok(TSeries::new(out, order))
        }
    }
}

/// `delta_t` with `q` specialised to a rational value, usable over any ring.
/// At `q = 1` this is the ordinary derivative.
pub fn delta_t_at<C: Coeff>(f: &TSeries<C>, q: &Rational) -> Result<TSeries<C>, SeriesError> {
    if f.basis() != Basis::Power {
        return Err(SeriesError::PowerBasisOnly("delta_t_at"));
    }
    if f.order() == 0 {
        return Err(SeriesError::EmptySeries("delta_t_at"));
    }
    let mut out = Vec::with_capacity(f.order());
    let mut qint = Rational::from_integer(0.into());
    let mut qpow = Rational::from_integer(1.into());
    for m in 1..=f.order() {
        qint += &qpow;
        qpow *= q;
        out.push(f.coeff(m).scale(&qint));
    }
    Ok(TSeries::new(out, f.order() - 1))
}

/// `exp_q(c t) = sum c^n t^n / [n]_q!` in the power basis.
pub fn exp_q_series<C: Coeff>(c: &C, order: usize) -> Result<TSeries<C>, SeriesError> {
    if !(C::CAPS.has_q_variable && C::CAPS.has_division) {
        return Err(SeriesError::Capability {
            op: "exp_q_series",
            ring: C::TAG,
            need: "a q variable with division",
        });
    }
    exp_q_normalized(c, order).to_power_basis()
}

/// `exp_q(c t)` stored against `t^n / [n]_q!`, so every entry is `c^n`.
pub fn exp_q_normalized<C: Coeff>(c: &C, order: usize) -> TSeries<C> {
    let mut out = Vec::with_capacity(order + 1);
    let mut p = C::one();
    for _ in 0..=order {
        out.push(p.clone());
        p = p.mul_ref(c);
    }
    TSeries::normalized(out, order)
}

fn bracket_step<C: Coeff>(f1: &[C], prev: &[C], rows: &[Vec<C>]) -> Vec<C> {
    let n = f1.len() - 1;
    let mut out = vec![C::zero(); n + 1];
    for m in 0..n {
        let mut acc = C::zero();
        for i in 0..=m {
            let (a, b) = (&f1[m - i + 1], &prev[i]);
            if a.is_zero() || b.is_zero() {
                continue;
            }
            acc = acc.add_ref(&a.mul_ref(b).mul_ref(&rows[m][i]));
        }
        out[m + 1] = acc;
    }
    out
}

fn unit_vec<C: Coeff>(len: usize) -> Vec<C> {
    let mut v = vec![C::zero(); len];
    v[0] = C::one();
    v
}

/// `f^[k]`: `f^[0] = 1` and `delta_t f^[k] = delta_t(f) f^[k-1]` with zero constant term.
/// The result is returned in the basis of `f`.
pub fn bracket_power<C: Coeff>(f: &TSeries<C>, k: usize) -> Result<TSeries<C>, SeriesError> {
    require_zero_constant(f, "bracket_power")?;
    require_q::<C>("bracket_power")?;
    let norm = f.to_normalized()?;
    let rows = q_binomial_rows::<C>(f.order(), "bracket_power")?;
    let mut cur = unit_vec::<C>(f.order() + 1);
    for _ in 0..k {
        cur = bracket_step(norm.coeffs(), &cur, &rows);
    }
    TSeries::normalized(cur, f.order()).to_basis(f.basis())
}

/// `g[f] = sum g_n f^[n]`, with `g_n` the coefficients of `t^n / [n]_q!`.
/// The result is returned in the basis of `g`.
pub fn q_compose<C: Coeff>(g: &TSeries<C>, f: &TSeries<C>) -> Result<TSeries<C>, SeriesError> {
    require_zero_constant(f, "q_compose")?;
    require_q::<C>("q_compose")?;
    let order = g.order().min(f.order());
    let gn = g.truncate(order).to_normalized()?;
    let fn_ = f.truncate(order).to_normalized()?;
    let rows = q_binomial_rows::<C>(order, "q_compose")?;
    let mut out = vec![C::zero(); order + 1];
    let mut cur = unit_vec::<C>(order + 1);
    for k in 0..=order {
        let gk = gn.coeff(k);
        if !gk.is_zero() {
            for (o, c) in out.iter_mut().zip(&cur) {
                if !c.is_zero() {
                    *o = o.add_ref(&gk.mul_ref(c));
                }
            }
        }
        if k < order {
            cur = bracket_step(fn_.coeffs(), &cur, &rows);
        }
    }
    TSeries::normalized(out, order).to_basis(g.basis())
}

/// `prod_{k<factors} (1 - t q^k (1-q) f'_k(t))^{-1}` truncated at `t^order`,
/// where `fprime(k)` supplies `f'(q^k t)` in the power basis.
///
/// Every product is cut to q-degrees below `factors`. Provided the inputs have
/// no negative powers of `q`, each coefficient then agrees with the infinite
/// product in all q-degrees below `factors`.
pub fn product_expansion<C, F>(fprime: F, factors: usize, order: usize) -> Result<TSeries<C>, SeriesError>
where
    C: QTruncate,
    F: Fn(usize) -> Result<TSeries<C>, SeriesError>,
{
    require_q::<C>("product_expansion")?;
    if factors == 0 {
        return Err(KernelError::InvalidArgument("product_expansion needs at least one factor".into()).into());
    }
    let window = factors as i64;
    let mut acc = TSeries::<C>::one(order);
    for k in 0..factors {
        let fp = fprime(k)?.to_power_basis()?;
        if order > 0 && fp.order() + 1 < order {
            return Err(SeriesError::EmptySeries("product_expansion"));
        }
        let qk = C::q_power(k as i64).ok_or_else(|| no_q::<C>("product_expansion"))?;
        let qk1 = C::q_power(k as i64 + 1).ok_or_else(|| no_q::<C>("product_expansion"))?;
        let lead = qk1.sub_ref(&qk);
        let mut factor = vec![C::one()];
        let mut trivial = true;
        for m in 0..order {
            let c = fp.coeff(m).mul_ref(&lead).retain_q_below(window);
            trivial &= c.is_zero();
            factor.push(c);
        }
        if trivial {
            continue;
        }
        let inv = TSeries::new(factor, order).inverse()?;
        let inv = inv.map_coeffs(|c| c.retain_q_below(window));
        acc = acc.mul(&inv)?.map_coeffs(|c| c.retain_q_below(window));
    }
    Ok(acc)
}

/// [`product_expansion`] with `f'(q^k t)` derived from `f` itself via `delta_t`.
pub fn product_expansion_of<C: QTruncate>(
    f: &TSeries<C>,
    factors: usize,
    order: usize,
) -> Result<TSeries<C>, SeriesError> {
    require_zero_constant(f, "product_expansion")?;
    let order = order.min(f.order());
    if order == 0 {
        return Ok(TSeries::one(0));
    }
    let fp = delta_t(&f.truncate(order))?.to_power_basis()?;
    product_expansion(|k| fp.scale_argument(&Rational::from_integer(1.into()), k as i64), factors, order)
}

/// q-integral from 0 to `t`, by its monomial action:
/// `t^m -> t^(m+1)/[m+1]_q` for `d_q`, and `t^m -> q^m t^(m+1)/[m+1]_q` for `d_{1/q}`.
pub fn q_integral<C: Coeff>(f: &TSeries<C>, direction: IntegralDirection) -> Result<TSeries<C>, SeriesError> {
    require_q::<C>("q_integral")?;
    let order = f.order() + 1;
    let mut out = Vec::with_capacity(order + 1);
    out.push(C::zero());
    for (m, c) in f.coeffs().iter().enumerate() {
        if c.is_zero() {
            out.push(C::zero());
            continue;
        }
        let mut v = c.clone();
        if direction == IntegralDirection::QInverse && m > 0 {
            v = v.mul_ref(&C::q_power(m as i64).ok_or_else(|| no_q::<C>("q_integral"))?);
        }
        if f.basis() == Basis::Power && m > 0 {
            if !C::CAPS.has_division {
                return Err(SeriesError::Capability {
                    op: "q_integral",
                    ring: C::TAG,
                    need: "division by q-integers",
                });
            }
            let qi: C = ring_qint(m + 1).ok_or_else(|| no_q::<C>("q_integral"))?;
            v = v.divide(&qi).ok_or(SeriesError::NotRepresentable(m + 1))?;
        }
        out.push(v);
    }
    Ok(TSeries::with_basis(out, order, f.basis()))
}
