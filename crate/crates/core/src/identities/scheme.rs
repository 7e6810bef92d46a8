use std::fmt;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::IdentityError;
use crate::kernel::{rat, ratio, MultiPoly, Rational, Var};

pub const DEFAULT_SEED: u64 = 20240501;
pub const DEFAULT_SAMPLES: usize = 25;

/// A point satisfying `x + y = u3 + u4` and `x y = u1 u2` by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct SubstitutionScheme {
    x: Rational,
    y: Rational,
    u3: Rational,
    u1: Rational,
    u4: Rational,
    u2: Rational,
    pub alpha: Option<Rational>,
    pub beta: Option<Rational>,
    pub q: Option<Rational>,
}

impl SubstitutionScheme {
    pub fn new(x: Rational, y: Rational, u3: Rational, u1: Rational) -> Result<Self, IdentityError> {
        if x == y {
            return Err(IdentityError::DegenerateScheme("x = y".into()));
        }
        if u1.is_zero() {
            return Err(IdentityError::DegenerateScheme("u1 = 0".into()));
        }
        let u4 = &x + &y - &u3;
        let u2 = &x * &y / &u1;
        Ok(SubstitutionScheme {
            x,
            y,
            u3,
            u1,
            u4,
            u2,
            alpha: None,
            beta: None,
            q: None,
        })
    }

    pub fn from_ints(x: i64, y: i64, u3: i64, u1: i64) -> Result<Self, IdentityError> {
        Self::new(rat(x), rat(y), rat(u3), rat(u1))
    }

    pub fn with_exponents(mut self, alpha: Rational, beta: Rational) -> Self {
        self.alpha = Some(alpha);
        self.beta = Some(beta);
        self
    }

    pub fn with_q(mut self, q: Rational) -> Self {
        self.q = Some(q);
        self
    }

    pub fn x(&self) -> &Rational {
        &self.x
    }
    pub fn y(&self) -> &Rational {
        &self.y
    }
    pub fn u1(&self) -> &Rational {
        &self.u1
    }
    pub fn u2(&self) -> &Rational {
        &self.u2
    }
    pub fn u3(&self) -> &Rational {
        &self.u3
    }
    pub fn u4(&self) -> &Rational {
        &self.u4
    }

    pub fn alpha(&self) -> Result<&Rational, IdentityError> {
        self.alpha
            .as_ref()
            .ok_or_else(|| IdentityError::DegenerateScheme("alpha is not specialized".into()))
    }

    pub fn beta(&self) -> Result<&Rational, IdentityError> {
        self.beta
            .as_ref()
            .ok_or_else(|| IdentityError::DegenerateScheme("beta is not specialized".into()))
    }

    pub fn value(&self, v: Var) -> Option<&Rational> {
        match v {
            Var::X => Some(&self.x),
            Var::Y => Some(&self.y),
            Var::U1 => Some(&self.u1),
            Var::U2 => Some(&self.u2),
            Var::U3 => Some(&self.u3),
            Var::U4 => Some(&self.u4),
            Var::Alpha => self.alpha.as_ref(),
            Var::Beta => self.beta.as_ref(),
            Var::Q => self.q.as_ref(),
        }
    }

    /// Substitutes the scheme's values for `vars`, leaving every other variable symbolic.
    pub fn specialize(&self, p: &MultiPoly, vars: &[Var]) -> Result<MultiPoly, IdentityError> {
        let mut out = p.clone();
        for &v in vars {
            if !out.contains_var(v) {
                continue;
            }
            let value = self
                .value(v)
                .ok_or_else(|| IdentityError::DegenerateScheme(format!("{} is not specialized", v)))?;
            out = out.substitute_rational(v, value);
        }
        Ok(out)
    }

    /// A random scheme with small rational entries, including `alpha` and `beta`.
    pub fn random(rng: &mut impl Rng) -> Self {
        loop {
            let (x, y) = (small_rational(rng), small_rational(rng));
            let (u3, u1) = (small_rational(rng), small_rational(rng));
            if let Ok(s) = Self::new(x, y, u3, u1) {
                return s.with_exponents(small_rational(rng), small_rational(rng));
            }
        }
    }
}

impl fmt::Display for SubstitutionScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "x={} y={} u1={} u2={} u3={} u4={}",
            self.x, self.y, self.u1, self.u2, self.u3, self.u4
        )?;
        for (name, v) in [("alpha", &self.alpha), ("beta", &self.beta), ("q", &self.q)] {
            if let Some(v) = v {
                write!(f, " {}={}", name, v)?;
            }
        }
        Ok(())
    }
}

pub(crate) fn small_rational(rng: &mut impl Rng) -> Rational {
    ratio(rng.gen_range(-7..=7), rng.gen_range(1..=5))
}

/// Truncation and sampling parameters shared by every verifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncationPolicy {
    /// Series order for checks not indexed by permutation size.
    pub t_order: usize,
    /// Number of product factors, and the exact q-degree window.
    pub q_window: usize,
    pub samples: usize,
    pub seed: u64,
    /// Replace random schemes by a full grid of `n + 1` integer points per free variable.
    pub exhaustive_grid: bool,
}

impl TruncationPolicy {
    pub fn for_n_max(n_max: usize) -> Self {
        TruncationPolicy {
            t_order: n_max.max(1),
            q_window: n_max * n_max.saturating_sub(1) / 2 + 1,
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
            exhaustive_grid: false,
        }
    }

    pub fn validate(&self) -> Result<(), IdentityError> {
        if self.t_order == 0 {
            return Err(IdentityError::Policy("t_order must be at least 1".into()));
        }
        if self.q_window == 0 {
            return Err(IdentityError::Policy("q_window must be at least 1".into()));
        }
        if self.samples == 0 && !self.exhaustive_grid {
            return Err(IdentityError::Policy("sample count must be at least 1".into()));
        }
        Ok(())
    }

    pub(crate) fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self::for_n_max(6)
    }
}

/// Variables a verifier lets vary over its schemes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Free {
    X,
    Y,
    U3,
    U1,
    Alpha,
    Beta,
}

/// Largest `n` for which the exhaustive grid is offered.
pub const GRID_MAX_N: usize = 4;

fn grid_value(v: Free, i: usize) -> Rational {
    let i = i as i64;
    match v {
        Free::X | Free::U1 => rat(i + 1),
        Free::Y => rat(-i - 1),
        Free::U3 | Free::Alpha | Free::Beta => rat(i),
    }
}

/// The schemes a verifier runs over: `samples` random draws, or a grid of
/// `points` values per free variable.
pub(crate) fn schemes(
    policy: &TruncationPolicy,
    n: usize,
    free: &[Free],
    points: usize,
) -> Result<Vec<SubstitutionScheme>, IdentityError> {
    if !policy.exhaustive_grid {
        let mut rng = policy.rng();
        return Ok((0..policy.samples).map(|_| SubstitutionScheme::random(&mut rng)).collect());
    }
    if n > GRID_MAX_N {
        return Err(IdentityError::Policy(format!(
            "exhaustive grid is limited to n <= {}",
            GRID_MAX_N
        )));
    }
    let mut out = Vec::new();
    let total = points.pow(free.len() as u32);
    for code in 0..total {
        let pick = |v: Free| {
            if let Some(pos) = free.iter().position(|&f| f == v) {
                let i = (code / points.pow(pos as u32)) % points;
                grid_value(v, i)
            } else {
                grid_value(v, 0)
            }
        };
        let s = SubstitutionScheme::new(pick(Free::X), pick(Free::Y), pick(Free::U3), pick(Free::U1))?
            .with_exponents(pick(Free::Alpha), pick(Free::Beta));
        out.push(s);
    }
    Ok(out)
}

/// Values of a single rational parameter `x != 1`: random, or `2..n + 2` on the grid.
pub(crate) fn x_values(policy: &TruncationPolicy, n: usize) -> Result<Vec<Rational>, IdentityError> {
    if policy.exhaustive_grid {
        if n > GRID_MAX_N {
            return Err(IdentityError::Policy(format!(
                "exhaustive grid is limited to n <= {}",
                GRID_MAX_N
            )));
        }
        return Ok((0..=n as i64 + 1).map(|i| rat(i + 2)).collect());
    }
    let mut rng = policy.rng();
    let mut out = Vec::with_capacity(policy.samples);
    while out.len() < policy.samples {
        let x = small_rational(&mut rng);
        if x != rat(1) {
            out.push(x);
        }
    }
    Ok(out)
}
