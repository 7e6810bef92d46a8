//! Basic and bi-basic decompositions of permutations, the involutions `ψ_x`
//! acting on bi-basic blocks, marked permutations, and multiplicative weights.

use std::collections::BTreeSet;
use std::fmt;

use crate::kernel::{MultiPoly, Rational, Var};
use crate::permstats::{red, weight_monomial, Boundary, PermError, Permutation, Statistic, Weight};

/// Blocks `β_1 ... β_k`, each beginning with its maximum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicDecomposition {
    pub blocks: Vec<Vec<usize>>,
}

/// `α_1 ... α_k 1 β_1 ... β_l`: left blocks begin with their minimum, right
/// blocks end with their minimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiBasicDecomposition {
    pub left: Vec<Vec<usize>>,
    pub right: Vec<Vec<usize>>,
}

fn write_blocks(f: &mut fmt::Formatter<'_>, blocks: &[&[usize]]) -> fmt::Result {
    let sep = if blocks.iter().flat_map(|b| b.iter()).any(|&v| v > 9) { " " } else { "" };
    let parts: Vec<String> = blocks
        .iter()
        .map(|b| b.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(sep))
        .collect();
    f.write_str(&parts.join(" | "))
}

impl BasicDecomposition {
    pub fn concat(&self) -> Permutation {
        Permutation::from_word_unchecked(self.blocks.concat())
    }
}

impl fmt::Display for BasicDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<&[usize]> = self.blocks.iter().map(|b| b.as_slice()).collect();
        write_blocks(f, &v)
    }
}

impl BiBasicDecomposition {
    pub fn concat(&self) -> Permutation {
        let mut w = self.left.concat();
        w.push(1);
        w.extend(self.right.concat());
        Permutation::from_word_unchecked(w)
    }
}

impl fmt::Display for BiBasicDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pivot = [1usize];
        let mut v: Vec<&[usize]> = self.left.iter().map(|b| b.as_slice()).collect();
        v.push(&pivot);
        v.extend(self.right.iter().map(|b| b.as_slice()));
        write_blocks(f, &v)
    }
}

/// Cuts before every left-to-right maximum.
pub fn basic_decomposition(p: &Permutation) -> BasicDecomposition {
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut best = 0;
    for &v in p.word() {
        if v > best {
            best = v;
            blocks.push(Vec::new());
        }
        blocks.last_mut().unwrap().push(v);
    }
    BasicDecomposition { blocks }
}

/// Cuts the prefix before `1` at each left-to-right minimum and the suffix
/// after `1` after each right-to-left minimum.
pub fn bi_basic_decomposition(p: &Permutation) -> BiBasicDecomposition {
    let w = p.word();
    let one = match p.position(1) {
        Some(i) => i - 1,
        None => {
            return BiBasicDecomposition {
                left: Vec::new(),
                right: Vec::new(),
            }
        }
    };
    let mut left: Vec<Vec<usize>> = Vec::new();
    let mut low = usize::MAX;
    for &v in &w[..one] {
        if v < low {
            low = v;
            left.push(Vec::new());
        }
        left.last_mut().unwrap().push(v);
    }
    let mut right: Vec<Vec<usize>> = Vec::new();
    let mut low = usize::MAX;
    for &v in w[one + 1..].iter().rev() {
        if v < low {
            low = v;
            right.push(Vec::new());
        }
        right.last_mut().unwrap().push(v);
    }
    right.reverse();
    for b in right.iter_mut() {
        b.reverse();
    }
    BiBasicDecomposition { left, right }
}

/// Left-to-right minima of `p` other than the letter 1.
pub fn lmi_set(p: &Permutation) -> BTreeSet<usize> {
    bi_basic_decomposition(p).left.iter().map(|b| b[0]).collect()
}

/// Right-to-left minima of `p` other than the letter 1.
pub fn rmi_set(p: &Permutation) -> BTreeSet<usize> {
    bi_basic_decomposition(p)
        .right
        .iter()
        .map(|b| *b.last().unwrap())
        .collect()
}

fn check_letter(p: &Permutation, x: usize) -> Result<(), PermError> {
    if x == 0 || x > p.len() {
        Err(PermError::LetterOutOfRange { letter: x, n: p.len() })
    } else {
        Ok(())
    }
}

/// The involution `ψ_x`.
///
/// If `x` is the minimum of a left block, that block is removed and its
/// reversal is inserted among the right blocks at the gap keeping the
/// right-block minima increasing. If `x` is the minimum (last letter) of a
/// right block, its reversal is inserted among the left blocks keeping the
/// left-block minima decreasing. Otherwise `p` is returned unchanged.
pub fn psi_x(p: &Permutation, x: usize) -> Result<Permutation, PermError> {
    check_letter(p, x)?;
    let mut d = bi_basic_decomposition(p);
    let from_left = d.left.iter().position(|b| b[0] == x);
    let from_right = d.right.iter().position(|b| *b.last().unwrap() == x);
    assert!(
        from_left.is_none() || from_right.is_none(),
        "letter {} heads both a left and a right block",
        x
    );
    if let Some(i) = from_left {
        let mut block = d.left.remove(i);
        block.reverse();
        let gap = d.right.iter().filter(|b| *b.last().unwrap() < x).count();
        d.right.insert(gap, block);
        let minima: Vec<usize> = d.right.iter().map(|b| *b.last().unwrap()).collect();
        assert!(minima.windows(2).all(|m| m[0] < m[1]), "no unique gap for ψ_{}", x);
    } else if let Some(j) = from_right {
        let mut block = d.right.remove(j);
        block.reverse();
        let gap = d.left.iter().filter(|b| b[0] > x).count();
        d.left.insert(gap, block);
        let minima: Vec<usize> = d.left.iter().map(|b| b[0]).collect();
        assert!(minima.windows(2).all(|m| m[0] > m[1]), "no unique gap for ψ_{}", x);
    } else {
        return Ok(p.clone());
    }
    Ok(d.concat())
}

/// `ψ_X`, the composition of `ψ_x` over `x ∈ X`.
pub fn psi_action(p: &Permutation, xs: &BTreeSet<usize>) -> Result<Permutation, PermError> {
    xs.iter().try_fold(p.clone(), |acc, &x| psi_x(&acc, x))
}

/// A permutation together with a set of marked minima.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkedPermutation {
    perm: Permutation,
    marks: BTreeSet<usize>,
}

impl MarkedPermutation {
    /// Every mark must be a left-to-right or right-to-left minimum other than 1.
    pub fn new(perm: Permutation, marks: BTreeSet<usize>) -> Result<Self, PermError> {
        let mut allowed = lmi_set(&perm);
        allowed.extend(rmi_set(&perm));
        if let Some(bad) = marks.iter().find(|m| !allowed.contains(m)) {
            return Err(PermError::InvalidPermutation(format!(
                "mark {} is not a left-to-right or right-to-left minimum of {}",
                bad, perm
            )));
        }
        Ok(MarkedPermutation { perm, marks })
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn marks(&self) -> &BTreeSet<usize> {
        &self.marks
    }
}

/// `Ψ_x(σ, S) = (ψ_x(σ), S Δ {x})` when `x` is a minimum other than 1; identity otherwise.
pub fn marked_action(m: &MarkedPermutation, x: usize) -> Result<MarkedPermutation, PermError> {
    check_letter(&m.perm, x)?;
    let applicable = lmi_set(&m.perm).contains(&x) || rmi_set(&m.perm).contains(&x);
    if !applicable {
        return Ok(m.clone());
    }
    let mut marks = m.marks.clone();
    if !marks.remove(&x) {
        marks.insert(x);
    }
    Ok(MarkedPermutation {
        perm: psi_x(&m.perm, x)?,
        marks,
    })
}

/// The orbit representative beginning with 1: `ψ_x` for every left-to-right minimum `x ≠ 1`.
pub fn orbit_canonicalize(p: &Permutation) -> Permutation {
    psi_action(p, &lmi_set(p)).expect("minima are valid letters")
}

/// The orbit representative with no marks: `Ψ_S` applied to `(σ, S)`.
pub fn orbit_canonicalize_marked(m: &MarkedPermutation) -> MarkedPermutation {
    m.marks.iter().fold(m.clone(), |acc, &x| {
        marked_action(&acc, x).expect("marks are valid letters")
    })
}

/// `ω(σ) = ω(red β_1) ... ω(red β_k)` over the basic decomposition.
pub fn multiplicative_eval(base: impl Fn(&Permutation) -> MultiPoly, p: &Permutation) -> MultiPoly {
    basic_decomposition(p)
        .blocks
        .iter()
        .map(|b| base(&red(b).expect("blocks have distinct letters")))
        .fold(MultiPoly::one(), |acc, v| &acc * &v)
}

fn weighted(p: &Permutation, weights: &[Weight]) -> MultiPoly {
    let m = weight_monomial(p.word(), weights).expect("weights have no offsets");
    MultiPoly::monomial(m, Rational::from_integer(1.into()))
}

/// Weights of `ω_0 = u1^V0 u2^M0 u3^da0 u4^dd0 alpha^lma` with boundary `σ_0 = 0, σ_{n+1} = ∞`.
pub fn omega_zero_weights() -> [Weight; 5] {
    let b = Boundary::ZERO_INFINITY;
    [
        Weight::new(Statistic::Valleys(b), Var::U1),
        Weight::new(Statistic::Peaks(b), Var::U2),
        Weight::new(Statistic::DoubleAscents(b), Var::U3),
        Weight::new(Statistic::DoubleDescents(b), Var::U4),
        Weight::new(Statistic::Lma, Var::Alpha),
    ]
}

/// Weights of `ω_∞ = u1^V∞ u2^M∞ u3^da∞ u4^dd∞ beta^rma` with boundary `σ_0 = ∞, σ_{n+1} = 0`.
pub fn omega_infinity_weights() -> [Weight; 5] {
    let b = Boundary::INFINITY_ZERO;
    [
        Weight::new(Statistic::Valleys(b), Var::U1),
        Weight::new(Statistic::Peaks(b), Var::U2),
        Weight::new(Statistic::DoubleAscents(b), Var::U3),
        Weight::new(Statistic::DoubleDescents(b), Var::U4),
        Weight::new(Statistic::Rma, Var::Beta),
    ]
}

pub fn omega_zero(p: &Permutation) -> MultiPoly {
    weighted(p, &omega_zero_weights())
}

pub fn omega_infinity(p: &Permutation) -> MultiPoly {
    weighted(p, &omega_infinity_weights())
}
