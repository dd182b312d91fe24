//! Words in the free commutative monoid on the `n·m` variables `x_{ij}`, the
//! maps to vectors and syndromes, and the two orderings on words.
//!
//! Variable `x_{ij}` (position `i`, sublevel `j`, both 1-based) has flat
//! 0-based index `(i - 1)·m + (j - 1)`; textual form uses the 1-based flat
//! index, so `x3*x7^2`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::code::{Code, Syndrome, VectorFq};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::perm::Permutation;

/// Largest exponent a single variable may carry.
pub const MAX_EXPONENT: u8 = u8::MAX;

/// An exponent vector over the `n·m` variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    exps: Vec<u8>,
}

impl Word {
    /// The identity word `1`.
    pub fn one(nvars: usize) -> Self {
        Word { exps: vec![0; nvars] }
    }

    pub fn from_exponents(exps: Vec<u8>) -> Self {
        Word { exps }
    }

    /// The single variable with 0-based flat index `k`.
    pub fn var(nvars: usize, k: usize) -> Self {
        let mut w = Self::one(nvars);
        w.exps[k] = 1;
        w
    }

    pub fn exponents(&self) -> &[u8] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponent(&self, k: usize) -> u8 {
        self.exps[k]
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn max_exponent(&self) -> u8 {
        self.exps.iter().copied().max().unwrap_or(0)
    }

    /// `self | other`.
    pub fn divides(&self, other: &Word) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `self · x_k`. Panics if the exponent would exceed [`MAX_EXPONENT`].
    pub fn mul_var(&self, k: usize) -> Word {
        let mut w = self.clone();
        w.exps[k] = w.exps[k].checked_add(1).expect("exponent overflow");
        w
    }

    /// `self / x_k` when `x_k` divides `self`.
    pub fn div_var(&self, k: usize) -> Option<Word> {
        if self.exps[k] == 0 {
            return None;
        }
        let mut w = self.clone();
        w.exps[k] -= 1;
        Some(w)
    }

    pub fn mul(&self, other: &Word) -> Word {
        Word {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Word) -> Option<Word> {
        if !other.divides(self) {
            return None;
        }
        Some(Word {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(),
        })
    }

    /// Flat indices of the variables dividing `self`.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(k, _)| k)
    }

    /// Parses `x3*x7^2` or `1` over `nvars` variables.
    pub fn parse(s: &str, nvars: usize) -> Result<Word> {
        let s = s.trim();
        let mut w = Word::one(nvars);
        if s == "1" {
            return Ok(w);
        }
        for factor in s.split('*') {
            let factor = factor.trim();
            let body = factor
                .strip_prefix('x')
                .ok_or_else(|| Error::Parse(format!("bad word factor {factor:?}")))?;
            let (idx, exp) = match body.split_once('^') {
                Some((i, e)) => (i, e),
                None => (body, "1"),
            };
            let idx: usize = idx
                .parse()
                .map_err(|_| Error::Parse(format!("bad variable index in {factor:?}")))?;
            let exp: u8 = exp
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?;
            if idx == 0 || idx > nvars {
                return Err(Error::Parse(format!("variable x{idx} outside 1..={nvars}")));
            }
            w.exps[idx - 1] = w.exps[idx - 1]
                .checked_add(exp)
                .ok_or_else(|| Error::Parse(format!("exponent overflow in {s:?}")))?;
        }
        Ok(w)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x{}", k + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Where a variable sits: 1-based position and sublevel.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VariableIndex {
    pub position: usize,
    pub sublevel: usize,
}

impl VariableIndex {
    /// From the 0-based flat index.
    pub fn from_flat(k: usize, m: usize) -> Self {
        VariableIndex { position: k / m + 1, sublevel: k % m + 1 }
    }

    /// 1-based flat index `(i - 1)m + j`.
    pub fn flat(&self, m: usize) -> usize {
        (self.position - 1) * m + self.sublevel
    }
}

/// `ψ(w)`: position `i` gets `Σ_j β_{ij} α^{j-1}` with coefficients mod `p`.
pub fn psi(code: &Code, w: &Word) -> Result<VectorFq> {
    let m = code.field().degree();
    let expected = code.len() * m;
    if w.nvars() != expected {
        return Err(Error::LengthMismatch { expected, found: w.nvars() });
    }
    Ok(psi_unchecked(code.field(), w))
}

pub(crate) fn psi_unchecked(field: &FieldSpec, w: &Word) -> VectorFq {
    let p = field.characteristic();
    let m = field.degree();
    VectorFq(
        w.exps
            .chunks(m)
            .map(|block| {
                let packed = block.iter().rev().fold(0u32, |acc, &e| acc * p + e as u32 % p);
                FieldElement(packed as u8)
            })
            .collect(),
    )
}

/// `ξ(w) = ψ(w)·H`.
pub fn xi(code: &Code, w: &Word) -> Result<Syndrome> {
    let v = psi(code, w)?;
    Ok(code.syndrome_unchecked(&v.0))
}

/// 0-based positions `i` with some `x_{ij}` dividing `w`, ascending.
pub fn ind(w: &Word, m: usize) -> Vec<usize> {
    w.exps
        .chunks(m)
        .enumerate()
        .filter(|(_, b)| b.iter().any(|&e| e > 0))
        .map(|(i, _)| i)
        .collect()
}

/// `|Ind(w)|`.
pub fn ind_size(w: &Word, m: usize) -> usize {
    w.exps.chunks(m).filter(|b| b.iter().any(|&e| e > 0)).count()
}

pub fn is_standard(w: &Word, p: u32) -> bool {
    w.exps.iter().all(|&e| (e as u32) < p)
}

/// The standard word whose `ψ`-image is `v`.
pub fn standardize(field: &FieldSpec, v: &VectorFq) -> Word {
    let m = field.degree();
    let mut exps = Vec::with_capacity(v.len() * m);
    for &x in &v.0 {
        exps.extend(field.coeffs(x).into_iter().map(|c| c as u8));
    }
    Word { exps }
}

/// `w` with every exponent reduced mod `p`; equals `standardize(ψ(w))`.
pub fn standard_form(w: &Word, p: u32) -> Word {
    Word { exps: w.exps.iter().map(|&e| (e as u32 % p) as u8).collect() }
}

/// Exponent of `x_{ij}` moves to `x_{σ(i)j}`.
pub fn permute_word(sigma: &Permutation, w: &Word, m: usize) -> Word {
    let mut exps = vec![0; w.exps.len()];
    for (i, block) in w.exps.chunks(m).enumerate() {
        let t = sigma.apply(i) * m;
        exps[t..t + m].copy_from_slice(block);
    }
    Word { exps }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    /// Lexicographic: the exponent of the highest-ranked variable decides.
    Lex,
    /// Degree first, then the ascending sequences of variable ranks (each
    /// variable repeated by its exponent) at the first difference; the
    /// lower rank is the smaller word.
    Drl,
}

impl FromStr for OrderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lex" => Ok(OrderKind::Lex),
            "drl" => Ok(OrderKind::Drl),
            other => Err(Error::Parse(format!("unknown order {other:?}"))),
        }
    }
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderKind::Lex => "lex",
            OrderKind::Drl => "drl",
        })
    }
}

/// An admissible order on words together with its variable order
/// `x_{π(1)} ≺ … ≺ x_{π(nm)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleOrder {
    kind: OrderKind,
    /// `by_rank[r]` is the flat index of the variable of rank `r`.
    by_rank: Vec<usize>,
    /// `rank[k]` is the rank of variable `k`.
    rank: Vec<usize>,
}

impl AdmissibleOrder {
    /// Natural variable order `x_1 ≺ x_2 ≺ …`.
    pub fn new(kind: OrderKind, nvars: usize) -> Self {
        AdmissibleOrder {
            kind,
            by_rank: (0..nvars).collect(),
            rank: (0..nvars).collect(),
        }
    }

    pub fn lex(nvars: usize) -> Self {
        Self::new(OrderKind::Lex, nvars)
    }

    pub fn drl(nvars: usize) -> Self {
        Self::new(OrderKind::Drl, nvars)
    }

    /// `pi` lists the variables from smallest to largest.
    pub fn with_variable_order(kind: OrderKind, pi: &Permutation) -> Self {
        let by_rank = pi.images().to_vec();
        let rank = pi.inverse().images().to_vec();
        AdmissibleOrder { kind, by_rank, rank }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn nvars(&self) -> usize {
        self.rank.len()
    }

    /// Variables from smallest to largest, as 0-based flat indices.
    pub fn variables_ascending(&self) -> &[usize] {
        &self.by_rank
    }

    pub fn rank_of(&self, k: usize) -> usize {
        self.rank[k]
    }

    pub fn variable_order(&self) -> Permutation {
        Permutation::from_images(self.by_rank.clone()).expect("stored order is a permutation")
    }

    /// A key whose lexicographic order is `≺`.
    pub fn key(&self, w: &Word) -> Vec<u32> {
        let mut key = Vec::new();
        self.extend_key(w, &mut key);
        key
    }

    fn extend_key(&self, w: &Word, key: &mut Vec<u32>) {
        match self.kind {
            OrderKind::Lex => {
                key.extend(self.by_rank.iter().rev().map(|&k| w.exps[k] as u32));
            }
            OrderKind::Drl => {
                key.push(w.degree());
                for (r, &k) in self.by_rank.iter().enumerate() {
                    for _ in 0..w.exps[k] {
                        key.push(r as u32);
                    }
                }
            }
        }
    }

    /// A key whose lexicographic order is `<_e` for words with `m` variables
    /// per position.
    pub fn error_key(&self, w: &Word, m: usize) -> Vec<u32> {
        let mut key = vec![ind_size(w, m) as u32];
        self.extend_key(w, &mut key);
        key
    }

    pub fn cmp(&self, u: &Word, w: &Word) -> Ordering {
        self.key(u).cmp(&self.key(w))
    }

    /// `<_e`: `|Ind|` first, then `≺`.
    pub fn cmp_error_vector(&self, u: &Word, w: &Word, m: usize) -> Ordering {
        ind_size(u, m)
            .cmp(&ind_size(w, m))
            .then_with(|| self.cmp(u, w))
    }
}

pub fn cmp_admissible(order: &AdmissibleOrder, u: &Word, w: &Word) -> Ordering {
    order.cmp(u, w)
}

pub fn cmp_error_vector(order: &AdmissibleOrder, u: &Word, w: &Word, m: usize) -> Ordering {
    order.cmp_error_vector(u, w, m)
}
