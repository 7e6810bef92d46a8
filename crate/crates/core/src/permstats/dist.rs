use std::collections::HashMap;

use rayon::prelude::*;

use super::stats::{is_alternating_word, Statistic};
use super::{check_guard, next_permutation, PermError};
use crate::kernel::{Monomial, MultiPoly, Var, NVARS};

/// Assigns `var^(stat - offset)` to each permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Weight {
    pub stat: Statistic,
    pub var: Var,
    pub offset: u32,
}

impl Weight {
    pub fn new(stat: Statistic, var: Var) -> Self {
        Weight { stat, var, offset: 0 }
    }

    /// Same weight with exponent `stat - c`.
    pub fn minus(self, c: u32) -> Self {
        Weight { offset: c, ..self }
    }
}

/// Limits a sum to a subset of `S_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Restriction {
    /// Permutations beginning with `n`.
    Basic,
    /// `σ_1 > σ_2 < σ_3 > ...`
    Alternating,
    StatEquals(Statistic, u32),
    /// `σ_position = letter`, 1-based.
    LetterAt { position: usize, letter: usize },
}

impl Restriction {
    fn admits(&self, w: &[usize]) -> bool {
        match *self {
            Restriction::Basic => w.first() == Some(&w.len()),
            Restriction::Alternating => is_alternating_word(w),
            Restriction::StatEquals(s, v) => s.eval(w) == v,
            Restriction::LetterAt { position, letter } => {
                position >= 1 && w.get(position - 1) == Some(&letter)
            }
        }
    }
}

/// The monomial `prod var^(stat - offset)` for one word.
pub fn weight_monomial(w: &[usize], weights: &[Weight]) -> Result<Monomial, PermError> {
    let mut e = [0i64; NVARS];
    for wt in weights {
        let value = wt.stat.eval(w) as i64 - wt.offset as i64;
        if value < 0 {
            return Err(PermError::NegativeExponent {
                stat: wt.stat.to_string(),
                value,
            });
        }
        e[wt.var.index()] += value;
    }
    let mut out = [0u16; NVARS];
    for (o, v) in out.iter_mut().zip(e) {
        *o = u16::try_from(v).map_err(|_| PermError::ExponentOverflow(v))?;
    }
    Ok(Monomial::new(out))
}

fn for_each_in_shard<E>(
    n: usize,
    first: usize,
    f: &mut impl FnMut(&[usize]) -> Result<(), E>,
) -> Result<(), E> {
    if n == 0 {
        return f(&[]);
    }
    let mut w = Vec::with_capacity(n);
    w.push(first);
    w.extend((1..=n).filter(|&v| v != first));
    loop {
        f(&w)?;
        if !next_permutation(&mut w[1..]) {
            return Ok(());
        }
    }
}

/// Visits every permutation of `S_n` in lexicographic order without allocating per item.
pub fn for_each_permutation<E>(
    n: usize,
    mut f: impl FnMut(&[usize]) -> Result<(), E>,
) -> Result<(), E>
where
    E: From<PermError>,
{
    check_guard(n)?;
    if n == 0 {
        return f(&[]);
    }
    for first in 1..=n {
        for_each_in_shard(n, first, &mut f)?;
    }
    Ok(())
}

/// `sum over admitted σ in S_n of prod var^(stat(σ) - offset)`.
///
/// The factorial range is split by first letter across the rayon pool; the
/// term maps are merged by addition, so the result does not depend on scheduling.
pub fn distribution(
    n: usize,
    weights: &[Weight],
    restrictions: &[Restriction],
) -> Result<MultiPoly, PermError> {
    check_guard(n)?;
    let firsts: Vec<usize> = if n == 0 {
        vec![0]
    } else if restrictions.contains(&Restriction::Basic) {
        vec![n]
    } else if let Some(first) = restrictions.iter().find_map(|r| match *r {
        Restriction::LetterAt { position: 1, letter } => Some(letter),
        _ => None,
    }) {
        if (1..=n).contains(&first) { vec![first] } else { Vec::new() }
    } else {
        (1..=n).collect()
    };
    let maps = firsts
        .into_par_iter()
        .map(|first| {
            let mut counts: HashMap<Monomial, i64> = HashMap::new();
            for_each_in_shard(n, first, &mut |w: &[usize]| {
                if restrictions.iter().all(|r| r.admits(w)) {
                    *counts.entry(weight_monomial(w, weights)?).or_insert(0) += 1;
                }
                Ok::<_, PermError>(())
            })?;
            Ok(counts)
        })
        .collect::<Result<Vec<_>, PermError>>()?;
    let mut total: HashMap<Monomial, i64> = HashMap::new();
    for m in maps {
        for (k, v) in m {
            *total.entry(k).or_insert(0) += v;
        }
    }
    Ok(MultiPoly::from_counts(total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{qfactorial, rising_factorial};
    use crate::permstats::Boundary;

    fn w(stat: Statistic, var: Var) -> Weight {
        Weight::new(stat, var)
    }

    #[test]
    fn eulerian_three() {
        let d = distribution(3, &[w(Statistic::Des, Var::X)], &[]).unwrap();
        assert_eq!(d.to_string(), "1 + 4*x + x^2");
    }

    #[test]
    fn lma_two_is_rising_factorial() {
        let d = distribution(2, &[w(Statistic::Lma, Var::X)], &[]).unwrap();
        assert_eq!(d, rising_factorial(2));
        assert_eq!(d.to_string(), "x + x^2");
    }

    #[test]
    fn inversions_three() {
        let d = distribution(3, &[w(Statistic::Inv, Var::Q)], &[]).unwrap();
        assert_eq!(d, qfactorial(3));
    }

    #[test]
    fn offsets_and_negative_exponents() {
        let d = distribution(3, &[w(Statistic::Lma, Var::Alpha).minus(1)], &[]).unwrap();
        assert_eq!(d.to_string(), "2 + 3*alpha + alpha^2");
        let err = distribution(3, &[w(Statistic::Des, Var::X).minus(1)], &[]);
        assert!(matches!(err, Err(PermError::NegativeExponent { .. })));
    }

    #[test]
    fn restrictions() {
        let basic = distribution(4, &[], &[Restriction::Basic]).unwrap();
        assert_eq!(basic, MultiPoly::int(6));
        let alt = distribution(5, &[], &[Restriction::Alternating]).unwrap();
        assert_eq!(alt, MultiPoly::int(16));
        let k2 = distribution(4, &[], &[Restriction::StatEquals(Statistic::Lma, 2)]).unwrap();
        assert_eq!(k2, MultiPoly::int(11));
        let max_third = distribution(4, &[], &[Restriction::LetterAt { position: 3, letter: 4 }]).unwrap();
        assert_eq!(max_third, MultiPoly::int(6));
        let starts_one = distribution(4, &[w(Statistic::Lmi, Var::X)], &[Restriction::LetterAt { position: 1, letter: 1 }]).unwrap();
        assert_eq!(starts_one.to_string(), "6*x");
        let peaks = distribution(3, &[w(Statistic::Peaks(Boundary::ZERO), Var::U2).minus(1)], &[]).unwrap();
        assert_eq!(peaks.to_string(), "4 + 2*u2");
        assert!(distribution(11, &[], &[]).is_err());
    }

    #[test]
    fn visitor_matches_iterator() {
        let mut seen = Vec::new();
        for_each_permutation(4, |w| {
            seen.push(w.to_vec());
            Ok::<_, PermError>(())
        })
        .unwrap();
        let it: Vec<Vec<usize>> = crate::permstats::enumerate(4).unwrap().map(|p| p.into_word()).collect();
        assert_eq!(seen, it);
    }
}
