use proptest::prelude::*;

use qeulerian::kernel::{qfactorial, rat, ratio, MultiPoly, QRatFunc, Rational, UPoly, Var};
use qeulerian::qseries::{
    bracket_power, delta_t, exp_q_normalized, exp_q_series, product_expansion_of, q_compose,
    q_integral, IntegralDirection, TSeries,
};

fn small_rat() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| ratio(n, d))
}

fn coeffs(len: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(small_rat(), len)
}

fn mp_series(c: &[Rational], order: usize) -> TSeries<MultiPoly> {
    TSeries::new(c.iter().cloned().map(MultiPoly::constant).collect(), order)
}

fn q_at_one(s: &TSeries<QRatFunc>) -> TSeries<Rational> {
    s.map_coeffs(|c| c.eval(&rat(1)).unwrap())
}

fn factorial(n: usize) -> Rational {
    (1..=n as i64).map(rat).fold(rat(1), |a, b| a * b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn product_expansion_agrees_with_composition(
        mut c in coeffs(9),
        order in 1usize..=8,
    ) {
        c[0] = rat(0);
        let f = mp_series(&c, order);
        let exp_f = q_compose(&exp_q_normalized(&MultiPoly::one(), order), &f).unwrap();
        let prod = product_expansion_of(&f, 12, order).unwrap();
        for n in 0..=order {
            let lhs = (prod.coeff(n) * &qfactorial(n)).truncate_degree(Var::Q, 12);
            let rhs = exp_f.coeff(n).truncate_degree(Var::Q, 12);
            prop_assert_eq!(lhs, rhs, "t^{}", n);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn bracket_power_satisfies_its_recursion(mut c in coeffs(7), k in 1usize..=6) {
        c[0] = rat(0);
        let f = mp_series(&c, 6).to_normalized().unwrap();
        let fk = bracket_power(&f, k).unwrap();
        let fk1 = bracket_power(&f, k - 1).unwrap();
        let lhs = delta_t(&fk).unwrap();
        let rhs = delta_t(&f).unwrap().mul(&fk1).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(fk.constant_term().is_zero());
    }

    #[test]
    fn delta_t_is_linear(a in coeffs(6), b in coeffs(6), s in small_rat()) {
        let fa = mp_series(&a, 5);
        let fb = mp_series(&b, 5);
        let lhs = delta_t(&fa.scale(&s).add(&fb).unwrap()).unwrap();
        let rhs = delta_t(&fa).unwrap().scale(&s).add(&delta_t(&fb).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn q_integral_inverts_delta(c in coeffs(6), lin in prop::collection::vec(-3i64..=3, 6)) {
        let v: Vec<QRatFunc> = c
            .iter()
            .zip(&lin)
            .map(|(r, &l)| QRatFunc::from_poly(UPoly::new(vec![r.clone(), rat(l)])))
            .collect();
        let f = TSeries::new(v, 5);
        for dir in [IntegralDirection::Q, IntegralDirection::QInverse] {
            let i = q_integral(&f, dir).unwrap();
            prop_assert!(i.constant_term().is_zero());
            if dir == IntegralDirection::Q {
                prop_assert_eq!(delta_t(&i).unwrap(), f.clone());
            }
        }
    }

    #[test]
    fn q_equal_one_recovers_classical_calculus(mut fc in coeffs(7), gc in coeffs(7), c in small_rat()) {
        fc[0] = rat(0);
        let order = 6;
        let lift = |v: &[Rational]| TSeries::new(v.iter().cloned().map(QRatFunc::constant).collect::<Vec<_>>(), order);
        let f = lift(&fc);

        // exp_q(c t) at q = 1 is exp(c t)
        let e = q_at_one(&exp_q_series(&QRatFunc::constant(c.clone()), order).unwrap());
        let classical = TSeries::<Rational>::monomial(c.clone(), 1, order).exp().unwrap();
        prop_assert_eq!(e, classical);

        // g[f] at q = 1 is sum g_n f^n / n!
        let g = TSeries::normalized(gc.iter().cloned().map(QRatFunc::constant).collect(), order);
        let comp = q_at_one(&q_compose(&g, &f).unwrap().to_power_basis().unwrap());
        let fr = TSeries::new(fc.clone(), order);
        let mut oracle = TSeries::<Rational>::zero(order);
        let mut pow = TSeries::<Rational>::one(order);
        for (n, gn) in gc.iter().enumerate() {
            oracle = oracle.add(&pow.scale(&(gn / factorial(n)))).unwrap();
            pow = pow.mul(&fr).unwrap();
        }
        prop_assert_eq!(comp, oracle);

        // both q-integrals at q = 1 are the ordinary integral
        for dir in [IntegralDirection::Q, IntegralDirection::QInverse] {
            let i = q_at_one(&q_integral(&f, dir).unwrap());
            prop_assert_eq!(i, fr.integral().unwrap());
        }
    }

    #[test]
    fn series_calculus_round_trips(mut hc in coeffs(7), a in small_rat()) {
        hc[0] = rat(0);
        let h = TSeries::new(hc, 6);
        let one_plus = h.add(&TSeries::one(6)).unwrap();
        prop_assert_eq!(h.log1p().unwrap().exp().unwrap(), one_plus.clone());
        prop_assert_eq!(one_plus.mul(&one_plus.inverse().unwrap()).unwrap(), TSeries::one(6));
        let p = one_plus.power(&a).unwrap();
        let q = one_plus.power(&(rat(1) - &a)).unwrap();
        prop_assert_eq!(p.mul(&q).unwrap(), one_plus);
    }
}
