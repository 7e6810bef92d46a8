use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use super::IdentityError;
use crate::decomp::{omega_infinity_weights, omega_zero_weights};
use crate::kernel::{MultiPoly, Var};
use crate::permstats::{distribution, Boundary, Restriction, Statistic, Weight};

/// Enumeration-side polynomials, each a weighted sum over (a subset of) `S_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `sum x^des`
    Eulerian,
    /// `sum x^(des+1) q^inv`
    Stanley,
    /// `A_n(x,y|alpha,beta) = sum x^asc y^des alpha^(lma-1) beta^(rma-1)`
    StirlingEulerian,
    /// `sum u1^V u2^(M-1) u3^da u4^dd` with boundary `(0,0)`
    CarlitzQuadruple,
    /// `sum u1^V u2^M u3^da u4^dd q^inv` with boundary `(inf,inf)`
    PanZeng,
    /// `P_n`: the quadruple `(0,0)` weight times `alpha^(lma-1) beta^(rma-1)`
    P,
    /// `P_n` with `q^inv`
    PQ,
    /// `L_n = sum omega_0 q^inv`
    L,
    /// `B_n`: `L_n` restricted to basic permutations
    B,
    /// `R_n = sum omega_inf q^inv`
    R,
    /// `sum u2^M~ alpha^(lmi-1) beta^(rmi-1)`; the `u2^k` part sums over `P_{n,k}`
    PeaksLmiRmi,
    /// `sum u2^M~ alpha^(lmi+rmi-2)`
    PeaksLmiPlusRmi,
    /// `sum u2^M0 alpha^rmi` with boundary `(0,inf)`; the `u2^k` part sums over `L_{n,k}`
    ZeroPeaksRmi,
    /// `sum alpha^rmi` over alternating permutations
    AlternatingRmi,
    /// `sum x^lma q^inv`
    LmaInv,
    /// `sum x^lma q^inv` over basic permutations
    BasicLmaInv,
}

impl Family {
    pub const ALL: [Family; 16] = [
        Family::Eulerian,
        Family::Stanley,
        Family::StirlingEulerian,
        Family::CarlitzQuadruple,
        Family::PanZeng,
        Family::P,
        Family::PQ,
        Family::L,
        Family::B,
        Family::R,
        Family::PeaksLmiRmi,
        Family::PeaksLmiPlusRmi,
        Family::ZeroPeaksRmi,
        Family::AlternatingRmi,
        Family::LmaInv,
        Family::BasicLmaInv,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Eulerian => "eulerian",
            Family::Stanley => "stanley",
            Family::StirlingEulerian => "stirling-eulerian",
            Family::CarlitzQuadruple => "carlitz-quadruple",
            Family::PanZeng => "pan-zeng",
            Family::P => "p",
            Family::PQ => "p-q",
            Family::L => "l",
            Family::B => "b",
            Family::R => "r",
            Family::PeaksLmiRmi => "peaks-lmi-rmi",
            Family::PeaksLmiPlusRmi => "peaks-lmi-plus-rmi",
            Family::ZeroPeaksRmi => "zero-peaks-rmi",
            Family::AlternatingRmi => "alternating-rmi",
            Family::LmaInv => "lma-inv",
            Family::BasicLmaInv => "basic-lma-inv",
        }
    }

    /// Whether some weight subtracts an offset, so `n = 0` has no meaning.
    fn needs_letters(self) -> bool {
        !matches!(
            self,
            Family::Eulerian
                | Family::PanZeng
                | Family::L
                | Family::B
                | Family::R
                | Family::ZeroPeaksRmi
                | Family::AlternatingRmi
                | Family::LmaInv
                | Family::BasicLmaInv
        )
    }

    fn recipe(self) -> (Vec<Weight>, Vec<Restriction>) {
        let w = Weight::new;
        let (zz, ii, zi) = (Boundary::ZERO, Boundary::INFINITY, Boundary::ZERO_INFINITY);
        let quadruple = vec![
            w(Statistic::Valleys(zz), Var::U1),
            w(Statistic::Peaks(zz), Var::U2).minus(1),
            w(Statistic::DoubleAscents(zz), Var::U3),
            w(Statistic::DoubleDescents(zz), Var::U4),
        ];
        let lr_maxima = [w(Statistic::Lma, Var::Alpha).minus(1), w(Statistic::Rma, Var::Beta).minus(1)];
        let inv = w(Statistic::Inv, Var::Q);
        match self {
            Family::Eulerian => (vec![w(Statistic::Des, Var::X)], vec![]),
            Family::Stanley => (vec![w(Statistic::Des, Var::X), inv], vec![]),
            Family::StirlingEulerian => {
                let mut v = vec![w(Statistic::Asc, Var::X), w(Statistic::Des, Var::Y)];
                v.extend(lr_maxima);
                (v, vec![])
            }
            Family::CarlitzQuadruple => (quadruple, vec![]),
            Family::PanZeng => (
                vec![
                    w(Statistic::Valleys(ii), Var::U1),
                    w(Statistic::Peaks(ii), Var::U2),
                    w(Statistic::DoubleAscents(ii), Var::U3),
                    w(Statistic::DoubleDescents(ii), Var::U4),
                    inv,
                ],
                vec![],
            ),
            Family::P => {
                let mut v = quadruple;
                v.extend(lr_maxima);
                (v, vec![])
            }
            Family::PQ => {
                let mut v = quadruple;
                v.extend(lr_maxima);
                v.push(inv);
                (v, vec![])
            }
            Family::L | Family::B => {
                let mut v = omega_zero_weights().to_vec();
                v.push(inv);
                let r = if self == Family::B { vec![Restriction::Basic] } else { vec![] };
                (v, r)
            }
            Family::R => {
                let mut v = omega_infinity_weights().to_vec();
                v.push(inv);
                (v, vec![])
            }
            Family::PeaksLmiRmi => (
                vec![
                    w(Statistic::Peaks(ii), Var::U2),
                    w(Statistic::Lmi, Var::Alpha).minus(1),
                    w(Statistic::Rmi, Var::Beta).minus(1),
                ],
                vec![],
            ),
            Family::PeaksLmiPlusRmi => (
                vec![
                    w(Statistic::Peaks(ii), Var::U2),
                    w(Statistic::Lmi, Var::Alpha).minus(1),
                    w(Statistic::Rmi, Var::Alpha).minus(1),
                ],
                vec![],
            ),
            Family::ZeroPeaksRmi => (
                vec![w(Statistic::Peaks(zi), Var::U2), w(Statistic::Rmi, Var::Alpha)],
                vec![],
            ),
            Family::AlternatingRmi => (vec![w(Statistic::Rmi, Var::Alpha)], vec![Restriction::Alternating]),
            Family::LmaInv => (vec![w(Statistic::Lma, Var::X), inv], vec![]),
            Family::BasicLmaInv => (vec![w(Statistic::Lma, Var::X), inv], vec![Restriction::Basic]),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = IdentityError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| IdentityError::UnknownFamily(s.to_string()))
    }
}

type Cache = Mutex<HashMap<(Family, usize), Arc<MultiPoly>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The family polynomial at size `n`, memoized across calls.
pub fn lhs_family(family: Family, n: usize) -> Result<Arc<MultiPoly>, IdentityError> {
    if let Some(p) = cache().lock().expect("cache poisoned").get(&(family, n)) {
        return Ok(Arc::clone(p));
    }
    if n == 0 && family.needs_letters() {
        return Err(IdentityError::Policy(format!("family {} needs n >= 1", family)));
    }
    let (weights, restrictions) = family.recipe();
    let mut p = distribution(n, &weights, &restrictions)?;
    if family == Family::Stanley {
        p = &p * &MultiPoly::var(Var::X);
    }
    let p = Arc::new(p);
    cache()
        .lock()
        .expect("cache poisoned")
        .insert((family, n), Arc::clone(&p));
    Ok(p)
}
