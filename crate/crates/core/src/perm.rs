//! Permutations of the coordinate positions `1..=n`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bijection on `{1, …, n}`, stored 0-based: `images[i] = σ(i + 1) - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// From 0-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// From list notation `[σ(1), …, σ(n)]` (1-based).
    pub fn from_list(list: &[usize]) -> Result<Self> {
        if list.contains(&0) {
            return Err(Error::InvalidPermutation("list notation is 1-based".into()));
        }
        Self::from_images(list.iter().map(|&x| x - 1).collect())
    }

    /// From disjoint or overlapping cycles (1-based), composed right to left.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut perm = Self::identity(n);
        for cycle in cycles.iter().rev() {
            let mut images: Vec<usize> = (0..n).collect();
            let mut seen = std::collections::HashSet::new();
            for &x in cycle {
                if x == 0 || x > n {
                    return Err(Error::InvalidPermutation(format!(
                        "cycle entry {x} outside 1..={n}"
                    )));
                }
                if !seen.insert(x) {
                    return Err(Error::InvalidPermutation(format!("cycle repeats {x}")));
                }
            }
            for (k, &x) in cycle.iter().enumerate() {
                images[x - 1] = cycle[(k + 1) % cycle.len()] - 1;
            }
            let cyc = Permutation { images };
            perm = cyc.compose(&perm);
        }
        Ok(perm)
    }

    /// Parses cycle notation `(1,10,2)(3,5)`, `()` for the identity, or list
    /// notation `[1,3,4,…]` / `1,3,4,…`.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let s = s.trim();
        let parse_nums = |body: &str| -> Result<Vec<usize>> {
            body.split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::InvalidPermutation(format!("bad entry {t:?}")))
                })
                .collect()
        };
        if s.starts_with('(') {
            let mut cycles = Vec::new();
            let mut rest = s;
            while !rest.is_empty() {
                let rest_trim = rest.trim_start();
                if rest_trim.is_empty() {
                    break;
                }
                let Some(body) = rest_trim.strip_prefix('(') else {
                    return Err(Error::InvalidPermutation(format!("unexpected {rest_trim:?}")));
                };
                let end = body
                    .find(')')
                    .ok_or_else(|| Error::InvalidPermutation("unclosed cycle".into()))?;
                let cycle = parse_nums(&body[..end])?;
                if !cycle.is_empty() {
                    cycles.push(cycle);
                }
                rest = &body[end + 1..];
            }
            Self::from_cycles(n, &cycles)
        } else {
            let body = s.trim_start_matches('[').trim_end_matches(']');
            let list = parse_nums(body)?;
            if list.len() != n {
                return Err(Error::InvalidPermutation(format!(
                    "list notation has {} entries, expected {n}",
                    list.len()
                )));
            }
            Self::from_list(&list)
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// Image of the 0-based position `i`.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// 1-based list notation.
    pub fn to_list(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i + 1).collect()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`, i.e. `other` first.
    pub fn compose(&self, other: &Permutation) -> Self {
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Cycle notation without fixed points; `()` for the identity.
    pub fn to_cycle_string(&self) -> String {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push((i + 1).to_string());
                i = self.images[i];
            }
            out.push('(');
            out.push_str(&cyc.join(","));
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }

    /// Lifts a position permutation to the `n·m` variables, moving each block
    /// of `m` variables as a unit.
    pub fn on_variables(&self, m: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.images.len() * m);
        for &i in &self.images {
            for j in 0..m {
                out.push(i * m + j);
            }
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list: Vec<String> = self.to_list().iter().map(ToString::to_string).collect();
        write!(f, "[{}]", list.join(","))
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_list().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let list = Vec::<usize>::deserialize(d)?;
        Permutation::from_list(&list).map_err(serde::de::Error::custom)
    }
}

/// All permutations of `0..n` in lexicographic order of image lists.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    let mut current: Option<Vec<usize>> = Some((0..n).collect());
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let mut next = out.clone();
        // next lexicographic permutation
        let ok = (|| {
            let i = (0..next.len().saturating_sub(1)).rev().find(|&i| next[i] < next[i + 1])?;
            let j = (i + 1..next.len()).rev().find(|&j| next[j] > next[i])?;
            next.swap(i, j);
            next[i + 1..].reverse();
            Some(())
        })();
        current = ok.map(|_| next);
        Some(Permutation { images: out })
    })
}
