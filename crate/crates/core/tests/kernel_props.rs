use num_bigint::BigInt;
use proptest::prelude::*;

use qeulerian::kernel::{
    binomial, factorial, qbinomial, qfactorial, rat, ratio, Monomial, MultiPoly, QRatFunc, Rational, UPoly, Var,
};

fn small_rat() -> impl Strategy<Value = Rational> {
    (-5i64..=5, 1i64..=3).prop_map(|(n, d)| ratio(n, d))
}

fn multipoly() -> impl Strategy<Value = MultiPoly> {
    let vars = [Var::X, Var::Y, Var::Alpha, Var::Q];
    let term = (prop::collection::vec(0u16..=2, 4), small_rat()).prop_map(move |(e, c)| {
        let pairs: Vec<(Var, u16)> = vars.iter().copied().zip(e).collect();
        MultiPoly::monomial(Monomial::from_pairs(&pairs), c)
    });
    prop::collection::vec(term, 0..=4).prop_map(|ts| ts.iter().fold(MultiPoly::zero(), |a, t| &a + t))
}

fn upoly() -> impl Strategy<Value = UPoly> {
    prop::collection::vec(small_rat(), 0..=3).prop_map(UPoly::new)
}

fn ratfunc() -> impl Strategy<Value = QRatFunc> {
    (upoly(), upoly()).prop_filter_map("zero denominator", |(n, d)| QRatFunc::new(n, d).ok())
}

fn at_one(p: &MultiPoly) -> Rational {
    p.substitute_rational(Var::Q, &rat(1)).as_constant().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn multipoly_ring_axioms(a in multipoly(), b in multipoly(), c in multipoly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn ratfunc_field_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        for r in [&a + &b, &a * &c, &b - &c] {
            let g = r.numer().gcd(r.denom());
            prop_assert!(g.degree() == Some(0), "{} is not reduced", r);
        }
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }
}

#[test]
fn q_numbers_at_one_and_symmetry() {
    for n in 0..=12usize {
        assert_eq!(at_one(&qfactorial(n)), Rational::from(factorial(n)));
        for k in 0..=n {
            let qb = qbinomial(n, k).unwrap();
            assert_eq!(at_one(&qb), Rational::from(binomial(n, k)));
            assert_eq!(qb, qbinomial(n, n - k).unwrap());
        }
    }
    assert_eq!(binomial(12, 6), BigInt::from(924));
}
