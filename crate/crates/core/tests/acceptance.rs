use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use qeulerian::decomp::{bi_basic_decomposition, lmi_set, psi_x, rmi_set, BiBasicDecomposition};
use qeulerian::identities::{
    euler_numbers, gamma_extract, lhs_family, verify_identity, Family, IdentityId, TruncationPolicy,
};
use qeulerian::kernel::{qbinomial, rat, rising_factorial, MultiPoly, Var};
use qeulerian::permstats::{
    distribution, enumerate, is_alternating, quadruple_stats, Boundary, Permutation, Statistic, Weight,
};

type Check = Result<(), String>;

/// Name, time limit in seconds, and check.
type Criterion = (&'static str, u64, fn() -> Check);

fn verify(id: IdentityId, n: usize, policy: &TruncationPolicy) -> Check {
    let r = verify_identity(id, n, policy).map_err(|e| format!("{}: {}", id, e))?;
    if r.pass {
        Ok(())
    } else {
        Err(r.to_text())
    }
}

fn policy(n: usize, samples: usize) -> TruncationPolicy {
    TruncationPolicy { samples, ..TruncationPolicy::for_n_max(n) }
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn alpha_plus_beta() -> MultiPoly {
    &MultiPoly::var(Var::Alpha) + &MultiPoly::var(Var::Beta)
}

fn eulerian_egf() -> Check {
    verify(IdentityId::EulerianEgf, 8, &policy(8, 10))
}

fn stanley() -> Check {
    verify(IdentityId::Stanley, 7, &policy(7, 25))
}

fn carlitz() -> Check {
    verify(IdentityId::Carlitz, 7, &policy(7, 25))?;
    verify(IdentityId::Carlitz2, 7, &policy(7, 25))
}

fn pan_zeng() -> Check {
    verify(IdentityId::PanZeng, 7, &policy(7, 25))
}

fn ji() -> Check {
    verify(IdentityId::Ji, 7, &policy(7, 25))
}

fn gessel_product() -> Check {
    let p = TruncationPolicy { t_order: 8, q_window: 12, samples: 50, ..TruncationPolicy::for_n_max(8) };
    verify(IdentityId::GesselProduct, 8, &p)
}

fn gessel_multiplicative() -> Check {
    verify(IdentityId::GesselMultiplicative, 7, &policy(7, 25))
}

fn main_theorem() -> Check {
    let p = policy(6, 25);
    let r = verify_identity(IdentityId::Main, 6, &p).map_err(|e| e.to_string())?;
    ensure(r.pass, || r.to_text())?;
    for part in ["ln-formula", "rn-formula", "convolution", "direct"] {
        ensure(r.params.get(part).map(String::as_str) == Some("pass"), || format!("{} did not pass", part))?;
    }
    ensure(p.q_window == 16, || "window is not n(n-1)/2 + 1".into())
}

fn main2() -> Check {
    let p = TruncationPolicy { t_order: 8, samples: 10, ..TruncationPolicy::for_n_max(6) };
    verify(IdentityId::Main2, 6, &p)
}

fn peak_identities() -> Check {
    let p = policy(8, 1);
    verify(IdentityId::PkLr, 8, &p)?;
    verify(IdentityId::PkLr2, 8, &p)?;
    let two = |v: Var| MultiPoly::var(v).scale(&rat(2));
    let p30 = lhs_family(Family::PeaksLmiRmi, 3).map_err(|e| e.to_string())?.coeff_of(Var::U2, 0);
    let lhs = p30.substitute_many(&[(Var::Alpha, two(Var::Alpha)), (Var::Beta, two(Var::Beta))]);
    let four_sq = alpha_plus_beta().pow(2).scale(&rat(4));
    ensure(lhs == four_sq, || format!("P(3,0) sum is {}", lhs))?;
    let plus = lhs_family(Family::PeaksLmiPlusRmi, 3).map_err(|e| e.to_string())?.coeff_of(Var::U2, 0);
    let rhs = plus.substitute(Var::Alpha, &alpha_plus_beta());
    ensure(rhs == four_sq, || format!("P(3,0) merged sum is {}", rhs))?;
    let p31 = lhs_family(Family::PeaksLmiRmi, 3).map_err(|e| e.to_string())?.coeff_of(Var::U2, 1);
    ensure(p31 == alpha_plus_beta(), || format!("P(3,1) sum is {}", p31))?;
    let l21 = lhs_family(Family::ZeroPeaksRmi, 2).map_err(|e| e.to_string())?.coeff_of(Var::U2, 1);
    ensure(l21 == MultiPoly::var(Var::Alpha), || format!("L(2,1) sum is {}", l21))
}

fn gamma() -> Check {
    let p = policy(8, 1);
    verify(IdentityId::GammaAb, 8, &p)?;
    verify(IdentityId::GammaAa, 8, &p)?;
    let a3 = lhs_family(Family::StirlingEulerian, 3).map_err(|e| e.to_string())?;
    let at_one = a3.substitute_rational(Var::Alpha, &rat(1)).substitute_rational(Var::Beta, &rat(1));
    let g = gamma_extract(&at_one).map_err(|e| e.to_string())?;
    ensure(g == vec![MultiPoly::one(), MultiPoly::int(2)], || format!("gamma_3(1,1) = {:?}", g))
}

/// The block `x` heads, reversed and tried at every gap among the other side's
/// blocks: exactly one gap yields a decomposition, and it is `ψ_x`.
fn unique_gap(p: &Permutation, d: &BiBasicDecomposition, x: usize) -> Check {
    let from_left = d.left.iter().position(|b| b[0] == x);
    let (mut lmi, mut rmi) = (lmi_set(p), rmi_set(p));
    let mut hits = Vec::new();
    if let Some(i) = from_left {
        let mut rest = d.clone();
        let mut block = rest.left.remove(i);
        block.reverse();
        lmi.remove(&x);
        rmi.insert(x);
        for gap in 0..=rest.right.len() {
            let mut c = rest.clone();
            c.right.insert(gap, block.clone());
            let q = c.concat();
            if lmi_set(&q) == lmi && rmi_set(&q) == rmi && bi_basic_decomposition(&q) == c {
                hits.push(q);
            }
        }
    } else {
        let j = d.right.iter().position(|b| *b.last().unwrap() == x).unwrap();
        let mut rest = d.clone();
        let mut block = rest.right.remove(j);
        block.reverse();
        rmi.remove(&x);
        lmi.insert(x);
        for gap in 0..=rest.left.len() {
            let mut c = rest.clone();
            c.left.insert(gap, block.clone());
            let q = c.concat();
            if lmi_set(&q) == lmi && rmi_set(&q) == rmi && bi_basic_decomposition(&q) == c {
                hits.push(q);
            }
        }
    }
    let image = psi_x(p, x).map_err(|e| e.to_string())?;
    ensure(hits == vec![image], || format!("gap for ψ_{} on {} is not unique: {:?}", x, p, hits))
}

fn psi_laws() -> Check {
    for n in 1..=7 {
        for p in enumerate(n).map_err(|e| e.to_string())? {
            let images: Vec<Permutation> = (1..=n).map(|x| psi_x(&p, x).unwrap()).collect();
            let peaks = quadruple_stats(&p, Boundary::INFINITY).peaks;
            let d = bi_basic_decomposition(&p);
            let (lmi, rmi) = (lmi_set(&p), rmi_set(&p));
            for x in 1..=n {
                let img = &images[x - 1];
                ensure(psi_x(img, x).unwrap() == p, || format!("ψ_{} is not an involution on {}", x, p))?;
                for y in x + 1..=n {
                    let xy = psi_x(&images[y - 1], x).unwrap();
                    let yx = psi_x(img, y).unwrap();
                    ensure(xy == yx, || format!("ψ_{} and ψ_{} do not commute on {}", x, y, p))?;
                }
                if lmi.contains(&x) {
                    ensure(rmi_set(img).contains(&x), || format!("ψ_{} keeps {} a left minimum", x, p))?;
                }
                if rmi.contains(&x) {
                    ensure(lmi_set(img).contains(&x), || format!("ψ_{} keeps {} a right minimum", x, p))?;
                }
                if lmi.contains(&x) || rmi.contains(&x) {
                    unique_gap(&p, &d, x)?;
                } else {
                    ensure(img == &p, || format!("ψ_{} moves {}", x, p))?;
                }
                let moved = quadruple_stats(img, Boundary::INFINITY).peaks;
                ensure(moved == peaks, || format!("ψ_{} changes peaks of {}", x, p))?;
            }
        }
    }
    Ok(())
}

fn euler_and_secant() -> Check {
    let e = euler_numbers(9).map_err(|e| e.to_string())?;
    for (n, en) in e.iter().enumerate() {
        let count = enumerate(n).map_err(|e| e.to_string())?.filter(is_alternating).count();
        ensure(BigInt::from(count) == *en, || format!("E_{} = {} but |A_{}| = {}", n, en, n, count))?;
    }
    verify(IdentityId::Secant, 9, &policy(9, 1))
}

fn structural() -> Check {
    let (zz, ii) = (Boundary::ZERO, Boundary::INFINITY);
    for n in 1..=7 {
        for p in enumerate(n).map_err(|e| e.to_string())? {
            let z = quadruple_stats(&p, zz);
            ensure(z.peaks == z.valleys + 1, || format!("M != V + 1 on {}", p))?;
        }
        let zero = distribution(
            n,
            &[
                Weight::new(Statistic::Valleys(zz), Var::U1),
                Weight::new(Statistic::Peaks(zz), Var::U2),
                Weight::new(Statistic::DoubleAscents(zz), Var::U3),
                Weight::new(Statistic::DoubleDescents(zz), Var::U4),
            ],
            &[],
        )
        .map_err(|e| e.to_string())?;
        let inf = distribution(
            n,
            &[
                Weight::new(Statistic::Peaks(ii), Var::U1),
                Weight::new(Statistic::Valleys(ii), Var::U2),
                Weight::new(Statistic::DoubleDescents(ii), Var::U3),
                Weight::new(Statistic::DoubleAscents(ii), Var::U4),
            ],
            &[],
        )
        .map_err(|e| e.to_string())?;
        ensure(zero == inf, || format!("boundary duality fails at n={}", n))?;
    }
    for n in 0..=8 {
        let rf = rising_factorial(n);
        for stat in [Statistic::Lma, Statistic::Lmi, Statistic::Rma, Statistic::Rmi, Statistic::Cyc] {
            let d = distribution(n, &[Weight::new(stat, Var::X)], &[]).map_err(|e| e.to_string())?;
            ensure(d == rf, || format!("{} is not Stirling at n={}", stat, n))?;
        }
        for k in 0..=n {
            let mut sum = MultiPoly::zero();
            for mask in 0u32..(1 << n) {
                if mask.count_ones() as usize != k {
                    continue;
                }
                let inv = (0..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| mask >> i & 1 == 1 && mask >> j & 1 == 0)
                    .count();
                sum = &sum + &MultiPoly::var(Var::Q).pow(inv as u32);
            }
            let qb = qbinomial(n, k).map_err(|e| e.to_string())?;
            ensure(sum == qb, || format!("q-binomial ({} {}) differs from inversion sum", n, k))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 14] = [
        ("eulerian-egf", 5, eulerian_egf),
        ("stanley", 30, stanley),
        ("carlitz and carlitz2", 60, carlitz),
        ("pan-zeng", 60, pan_zeng),
        ("ji", 60, ji),
        ("gessel-product", 30, gessel_product),
        ("gessel-multiplicative", 120, gessel_multiplicative),
        ("main", 120, main_theorem),
        ("main2", 120, main2),
        ("pk-lr and pk-lr2", 60, peak_identities),
        ("gamma-ab and gamma-aa", 60, gamma),
        ("psi action laws", 60, psi_laws),
        ("euler numbers and secant", 60, euler_and_secant),
        ("structural invariants", 60, structural),
    ];
    let mut failures = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let limit = Duration::from_secs(*limit);
        let verdict = match (&result, elapsed <= limit) {
            (Ok(()), true) => "PASS".to_string(),
            (Ok(()), false) => format!("FAIL (over the {}s limit)", limit.as_secs()),
            (Err(e), _) => format!("FAIL ({})", e),
        };
        if !verdict.starts_with("PASS") {
            failures += 1;
        }
        println!("{} [{:>2}] {} in {:.2}s", verdict, i + 1, name, elapsed.as_secs_f64());
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{} acceptance criteria failed", failures);
        ExitCode::FAILURE
    }
}
