//! Permutations, their statistics, and polynomial-valued distributions over `S_n`.

mod dist;
mod stats;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use dist::{distribution, for_each_permutation, weight_monomial, Restriction, Weight};
pub use stats::{
    classic_stats, is_alternating, quadruple_stats, Boundary, Quadruple, Sentinel, StatProfile, Statistic,
};

/// Largest `n` accepted by the exhaustive enumerators.
pub const MAX_ENUMERATION: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("n = {n} is outside the enumeration guard 0..={max}")]
    OutOfGuard { n: usize, max: usize },
    #[error("not a permutation: {0}")]
    InvalidPermutation(String),
    #[error("letter {letter} is outside 1..={n}")]
    LetterOutOfRange { letter: usize, n: usize },
    #[error("statistic {stat} minus offset gives negative exponent {value}")]
    NegativeExponent { stat: String, value: i64 },
    #[error("exponent {0} does not fit a monomial")]
    ExponentOverflow(i64),
    #[error("unknown statistic `{0}`")]
    UnknownStatistic(String),
}

/// A permutation of `1..=n` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    word: Vec<usize>,
}

impl Permutation {
    pub fn new(word: Vec<usize>) -> Result<Self, PermError> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &w in &word {
            if w == 0 || w > n || seen[w] {
                return Err(PermError::InvalidPermutation(format!("{:?}", word)));
            }
            seen[w] = true;
        }
        Ok(Permutation { word })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            word: (1..=n).collect(),
        }
    }

    /// `n (n-1) ... 1`
    pub fn decreasing(n: usize) -> Self {
        Permutation {
            word: (1..=n).rev().collect(),
        }
    }

    pub(crate) fn from_word_unchecked(word: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(word.clone()).is_ok());
        Permutation { word }
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn into_word(self) -> Vec<usize> {
        self.word
    }

    /// Letter at 1-based position `i`.
    pub fn at(&self, i: usize) -> usize {
        self.word[i - 1]
    }

    /// 1-based position of `letter`.
    pub fn position(&self, letter: usize) -> Option<usize> {
        self.word.iter().position(|&w| w == letter).map(|i| i + 1)
    }

    pub fn reverse(&self) -> Self {
        Permutation {
            word: self.word.iter().rev().copied().collect(),
        }
    }

    /// Begins with its greatest element.
    pub fn is_basic(&self) -> bool {
        self.word.first() == Some(&self.len())
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    /// Accepts `2164573`, or letters separated by spaces or commas when `n > 9`.
    fn from_str(s: &str) -> Result<Self, PermError> {
        let s = s.trim();
        let bad = || PermError::InvalidPermutation(s.to_string());
        let word: Vec<usize> = if s.contains([' ', ',']) {
            s.split([' ', ','])
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().map_err(|_| bad()))
                .collect::<Result<_, _>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
                .collect::<Result<_, _>>()?
        };
        Permutation::new(word)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.len() > 9 { " " } else { "" };
        let parts: Vec<String> = self.word.iter().map(|w| w.to_string()).collect();
        f.write_str(&parts.join(sep))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({})", self)
    }
}

pub(crate) fn check_guard(n: usize) -> Result<(), PermError> {
    if n > MAX_ENUMERATION {
        Err(PermError::OutOfGuard {
            n,
            max: MAX_ENUMERATION,
        })
    } else {
        Ok(())
    }
}

/// Rearranges `w` into its lexicographic successor; false once `w` is decreasing.
pub(crate) fn next_permutation(w: &mut [usize]) -> bool {
    if w.len() < 2 {
        return false;
    }
    let mut i = w.len() - 1;
    while i > 0 && w[i - 1] > w[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = w.len() - 1;
    while w[j] < w[i - 1] {
        j -= 1;
    }
    w.swap(i - 1, j);
    w[i..].reverse();
    true
}

/// Lexicographic iterator over `S_n`.
pub struct Permutations {
    current: Option<Vec<usize>>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let cur = self.current.take()?;
        let mut succ = cur.clone();
        if next_permutation(&mut succ) {
            self.current = Some(succ);
        }
        Some(Permutation { word: cur })
    }
}

/// All `n!` permutations of `1..=n` in lexicographic order.
pub fn enumerate(n: usize) -> Result<Permutations, PermError> {
    check_guard(n)?;
    Ok(Permutations {
        current: Some((1..=n).collect()),
    })
}

/// Standardises a word of distinct integers to the order-isomorphic permutation.
pub fn red(word: &[usize]) -> Result<Permutation, PermError> {
    let mut sorted = word.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|p| p[0] == p[1]) {
        return Err(PermError::InvalidPermutation(format!("repeated letters in {:?}", word)));
    }
    let out = word
        .iter()
        .map(|w| sorted.binary_search(w).unwrap() + 1)
        .collect();
    Ok(Permutation { word: out })
}
