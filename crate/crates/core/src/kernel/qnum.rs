use num_bigint::BigInt;
use num_traits::One;

use super::{KernelError, MultiPoly, UPoly, Var};

fn qint_upoly(n: usize) -> UPoly {
    UPoly::from_ints(&vec![1; n])
}

fn qfactorial_upoly(n: usize) -> UPoly {
    (1..=n).fold(UPoly::one(), |acc, i| &acc * &qint_upoly(i))
}

/// `[n]_q = 1 + q + ... + q^(n-1)`; zero when `n = 0`.
pub fn qint(n: usize) -> MultiPoly {
    MultiPoly::from_upoly(&qint_upoly(n), Var::Q)
}

/// `[n]_q! = [1]_q [2]_q ... [n]_q`.
pub fn qfactorial(n: usize) -> MultiPoly {
    MultiPoly::from_upoly(&qfactorial_upoly(n), Var::Q)
}

/// Gaussian binomial `[n]_q! / ([k]_q! [n-k]_q!)`.
pub fn qbinomial(n: usize, k: usize) -> Result<MultiPoly, KernelError> {
    if k > n {
        return Err(KernelError::InvalidArgument(format!(
            "q-binomial needs k <= n, got n={}, k={}",
            n, k
        )));
    }
    let den = &qfactorial_upoly(k) * &qfactorial_upoly(n - k);
    let quo = qfactorial_upoly(n).exact_div(&den)?;
    Ok(MultiPoly::from_upoly(&quo, Var::Q))
}

/// `(x)_n = x (x+1) ... (x+n-1)` in the variable `x`.
pub fn rising_factorial(n: usize) -> MultiPoly {
    let x = MultiPoly::var(Var::X);
    (0..n).fold(MultiPoly::one(), |acc, i| {
        &acc * &(&x + &MultiPoly::int(i as i64))
    })
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}
