use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{PermError, Permutation};

type QuadrupleStat = fn(Boundary) -> Statistic;

/// Value of the virtual letters `σ_0` and `σ_{n+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sentinel {
    Zero,
    Infinity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Boundary {
    pub left: Sentinel,
    pub right: Sentinel,
}

impl Boundary {
    /// `σ_0 = σ_{n+1} = 0`: peaks `M`, valleys `V`, `da`, `dd`.
    pub const ZERO: Boundary = Boundary {
        left: Sentinel::Zero,
        right: Sentinel::Zero,
    };
    /// `σ_0 = σ_{n+1} = ∞`: the tilde statistics.
    pub const INFINITY: Boundary = Boundary {
        left: Sentinel::Infinity,
        right: Sentinel::Infinity,
    };
    /// `σ_0 = 0, σ_{n+1} = ∞`
    pub const ZERO_INFINITY: Boundary = Boundary {
        left: Sentinel::Zero,
        right: Sentinel::Infinity,
    };
    /// `σ_0 = ∞, σ_{n+1} = 0`
    pub const INFINITY_ZERO: Boundary = Boundary {
        left: Sentinel::Infinity,
        right: Sentinel::Zero,
    };

    pub const ALL: [Boundary; 4] = [
        Boundary::ZERO,
        Boundary::INFINITY,
        Boundary::ZERO_INFINITY,
        Boundary::INFINITY_ZERO,
    ];

    fn suffix(self) -> &'static str {
        match (self.left, self.right) {
            (Sentinel::Zero, Sentinel::Zero) => "",
            (Sentinel::Infinity, Sentinel::Infinity) => "~",
            (Sentinel::Zero, Sentinel::Infinity) => "0",
            (Sentinel::Infinity, Sentinel::Zero) => "inf",
        }
    }

    fn from_suffix(s: &str) -> Option<Boundary> {
        Boundary::ALL.into_iter().find(|b| b.suffix() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct StatProfile {
    pub n: u32,
    pub inv: u32,
    pub maj: u32,
    pub des: u32,
    pub asc: u32,
    pub exc: u32,
    pub cyc: u32,
    pub lma: u32,
    pub lmi: u32,
    pub rma: u32,
    pub rmi: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Quadruple {
    pub valleys: u32,
    pub peaks: u32,
    pub double_ascents: u32,
    pub double_descents: u32,
}

/// A permutation statistic; the quadruple statistics carry their boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Statistic {
    Inv,
    Maj,
    Des,
    Asc,
    Exc,
    Cyc,
    Lma,
    Lmi,
    Rma,
    Rmi,
    Valleys(Boundary),
    Peaks(Boundary),
    DoubleAscents(Boundary),
    DoubleDescents(Boundary),
}

impl Statistic {
    pub fn eval(self, w: &[usize]) -> u32 {
        match self {
            Statistic::Inv => inv(w),
            Statistic::Maj => maj(w),
            Statistic::Des => des(w),
            Statistic::Asc => (w.len().saturating_sub(1) as u32) - des(w),
            Statistic::Exc => exc(w),
            Statistic::Cyc => cyc(w),
            Statistic::Lma => records(w.iter(), |a, b| a > b),
            Statistic::Lmi => records(w.iter(), |a, b| a < b),
            Statistic::Rma => records(w.iter().rev(), |a, b| a > b),
            Statistic::Rmi => records(w.iter().rev(), |a, b| a < b),
            Statistic::Valleys(b) => quadruple(w, b).valleys,
            Statistic::Peaks(b) => quadruple(w, b).peaks,
            Statistic::DoubleAscents(b) => quadruple(w, b).double_ascents,
            Statistic::DoubleDescents(b) => quadruple(w, b).double_descents,
        }
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (base, b) = match self {
            Statistic::Inv => ("inv", None),
            Statistic::Maj => ("maj", None),
            Statistic::Des => ("des", None),
            Statistic::Asc => ("asc", None),
            Statistic::Exc => ("exc", None),
            Statistic::Cyc => ("cyc", None),
            Statistic::Lma => ("lma", None),
            Statistic::Lmi => ("lmi", None),
            Statistic::Rma => ("rma", None),
            Statistic::Rmi => ("rmi", None),
            Statistic::Valleys(b) => ("V", Some(b)),
            Statistic::Peaks(b) => ("M", Some(b)),
            Statistic::DoubleAscents(b) => ("da", Some(b)),
            Statistic::DoubleDescents(b) => ("dd", Some(b)),
        };
        write!(f, "{}{}", base, b.map_or("", |b| b.suffix()))
    }
}

impl FromStr for Statistic {
    type Err = PermError;

    /// Names: `inv maj des asc exc cyc lma lmi rma rmi`, and `V M da dd`
    /// followed by a boundary suffix: none for (0,0), `~` for (∞,∞),
    /// `0` for (0,∞), `inf` for (∞,0).
    fn from_str(s: &str) -> Result<Self, PermError> {
        let plain = match s {
            "inv" => Some(Statistic::Inv),
            "maj" => Some(Statistic::Maj),
            "des" => Some(Statistic::Des),
            "asc" => Some(Statistic::Asc),
            "exc" => Some(Statistic::Exc),
            "cyc" => Some(Statistic::Cyc),
            "lma" => Some(Statistic::Lma),
            "lmi" => Some(Statistic::Lmi),
            "rma" => Some(Statistic::Rma),
            "rmi" => Some(Statistic::Rmi),
            _ => None,
        };
        if let Some(st) = plain {
            return Ok(st);
        }
        let quad: [(&str, QuadrupleStat); 4] = [
            ("da", Statistic::DoubleAscents),
            ("dd", Statistic::DoubleDescents),
            ("V", Statistic::Valleys),
            ("M", Statistic::Peaks),
        ];
        for (prefix, make) in quad {
            if let Some(b) = s.strip_prefix(prefix).and_then(Boundary::from_suffix) {
                return Ok(make(b));
            }
        }
        Err(PermError::UnknownStatistic(s.to_string()))
    }
}

fn inv(w: &[usize]) -> u32 {
    let mut c = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] > w[j] {
                c += 1;
            }
        }
    }
    c
}

fn des(w: &[usize]) -> u32 {
    w.windows(2).filter(|p| p[0] > p[1]).count() as u32
}

fn maj(w: &[usize]) -> u32 {
    w.windows(2)
        .enumerate()
        .filter(|(_, p)| p[0] > p[1])
        .map(|(i, _)| i as u32 + 1)
        .sum()
}

fn exc(w: &[usize]) -> u32 {
    w.iter().enumerate().filter(|(i, &v)| v > i + 1).count() as u32
}

fn cyc(w: &[usize]) -> u32 {
    let mut seen = vec![false; w.len() + 1];
    let mut c = 0;
    for start in 1..=w.len() {
        if seen[start] {
            continue;
        }
        c += 1;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = w[i - 1];
        }
    }
    c
}

fn records<'a>(it: impl Iterator<Item = &'a usize>, beats: fn(usize, usize) -> bool) -> u32 {
    let mut best: Option<usize> = None;
    let mut c = 0;
    for &v in it {
        if best.is_none_or(|b| beats(v, b)) {
            best = Some(v);
            c += 1;
        }
    }
    c
}

fn quadruple(w: &[usize], b: Boundary) -> Quadruple {
    let n = w.len();
    let sentinel = |s: Sentinel| match s {
        Sentinel::Zero => 0,
        Sentinel::Infinity => n + 1,
    };
    let mut q = Quadruple::default();
    for i in 0..n {
        let prev = if i == 0 { sentinel(b.left) } else { w[i - 1] };
        let next = if i + 1 == n { sentinel(b.right) } else { w[i + 1] };
        let v = w[i];
        match (prev < v, v < next) {
            (true, false) => q.peaks += 1,
            (false, true) => q.valleys += 1,
            (true, true) => q.double_ascents += 1,
            (false, false) => q.double_descents += 1,
        }
    }
    q
}

pub fn classic_stats(p: &Permutation) -> StatProfile {
    let w = p.word();
    let d = des(w);
    StatProfile {
        n: w.len() as u32,
        inv: inv(w),
        maj: maj(w),
        des: d,
        asc: (w.len().saturating_sub(1) as u32) - d,
        exc: exc(w),
        cyc: cyc(w),
        lma: Statistic::Lma.eval(w),
        lmi: Statistic::Lmi.eval(w),
        rma: Statistic::Rma.eval(w),
        rmi: Statistic::Rmi.eval(w),
    }
}

pub fn quadruple_stats(p: &Permutation, b: Boundary) -> Quadruple {
    quadruple(p.word(), b)
}

/// `σ_1 > σ_2 < σ_3 > σ_4 < ...`
pub fn is_alternating(p: &Permutation) -> bool {
    is_alternating_word(p.word())
}

pub(crate) fn is_alternating_word(w: &[usize]) -> bool {
    w.windows(2)
        .enumerate()
        .all(|(i, pr)| if i % 2 == 0 { pr[0] > pr[1] } else { pr[0] < pr[1] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permstats::enumerate;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn classic_examples() {
        assert_eq!(classic_stats(&p("2164573")).lma, 3);
        let id = classic_stats(&Permutation::identity(6));
        assert_eq!((id.des, id.inv, id.lmi, id.rmi), (0, 0, 1, 6));
        let s = classic_stats(&p("321"));
        assert_eq!((s.inv, s.maj), (3, 3));
    }

    #[test]
    fn quadruple_examples() {
        let q = quadruple_stats(&p("213"), Boundary::ZERO);
        assert_eq!(q, Quadruple { valleys: 1, peaks: 2, double_ascents: 0, double_descents: 0 });
        let t = quadruple_stats(&p("213"), Boundary::INFINITY);
        assert_eq!(t, Quadruple { valleys: 1, peaks: 0, double_ascents: 1, double_descents: 1 });
    }

    #[test]
    fn alternating_examples() {
        assert!(is_alternating(&p("3142")));
        assert!(!is_alternating(&p("123")));
        assert_eq!(enumerate(4).unwrap().filter(is_alternating).count(), 5);
    }

    #[test]
    fn statistic_names_round_trip() {
        let all = [Statistic::Inv, Statistic::Maj, Statistic::Des, Statistic::Asc, Statistic::Exc, Statistic::Cyc,
            Statistic::Lma, Statistic::Lmi, Statistic::Rma, Statistic::Rmi];
        for s in all {
            assert_eq!(s.to_string().parse::<Statistic>().unwrap(), s);
        }
        for b in Boundary::ALL {
            for s in [Statistic::Valleys(b), Statistic::Peaks(b), Statistic::DoubleAscents(b), Statistic::DoubleDescents(b)] {
                assert_eq!(s.to_string().parse::<Statistic>().unwrap(), s);
            }
        }
        assert_eq!("M~".parse::<Statistic>().unwrap(), Statistic::Peaks(Boundary::INFINITY));
        assert!("ai".parse::<Statistic>().is_err());
    }

    #[test]
    fn profile_invariants() {
        for n in 1..=6 {
            for perm in enumerate(n).unwrap() {
                let s = classic_stats(&perm);
                assert_eq!(s.des + s.asc, n as u32 - 1);
                assert!(s.lma >= 1 && s.lmi >= 1 && s.rma >= 1 && s.rmi >= 1);
                assert!(s.inv as usize <= n * (n - 1) / 2);
            }
        }
    }
}
