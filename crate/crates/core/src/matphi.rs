//! The canonical-form set `N` and the table `φ: N × X → N`.
//!
//! Words are visited in increasing `<_e` order starting from `1`. A word
//! whose syndrome has not been seen joins `N` and queues its products with
//! every variable; otherwise it only fills in the `φ` entries of its
//! divisors in `N`.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::code::{Code, Syndrome, VectorFq};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::format;
use crate::monomial::{self, AdmissibleOrder, Word};

/// Default cap on `q^{n-k}`.
pub const MAX_COSETS: u128 = 1 << 16;

/// Raw result of the traversal shared by the table and the reduced basis.
pub(crate) struct Traversal {
    pub words: Vec<Word>,
    pub syndromes: Vec<Syndrome>,
    pub index: HashMap<Syndrome, usize>,
    /// `phi[i][k]` is the index of the representative of `N[i]·x_k`.
    pub phi: Vec<Vec<usize>>,
    /// Popped words outside `N`, in visiting order, with their coset index.
    pub outside: Vec<(Word, usize)>,
}

pub(crate) fn coset_count(code: &Code) -> u128 {
    (code.field().order() as u128).pow(code.redundancy() as u32)
}

pub(crate) fn traverse(code: &Code, order: &AdmissibleOrder, cap: u128) -> Result<Traversal> {
    let m = code.field().degree();
    let nvars = code.len() * m;
    if order.nvars() != nvars {
        return Err(Error::LengthMismatch { expected: nvars, found: order.nvars() });
    }
    let needed = coset_count(code);
    if needed > cap {
        return Err(Error::CapExceeded { what: "canonical forms", needed, cap });
    }

    let mut list: BTreeMap<Vec<u32>, Word> = BTreeMap::new();
    let one = Word::one(nvars);
    list.insert(order.error_key(&one, m), one);

    let mut t = Traversal {
        words: Vec::new(),
        syndromes: Vec::new(),
        index: HashMap::new(),
        phi: Vec::new(),
        outside: Vec::new(),
    };
    let mut member: HashMap<Word, usize> = HashMap::new();

    while let Some((_, w)) = list.pop_first() {
        let v = monomial::psi_unchecked(code.field(), &w);
        let s = code.syndrome_unchecked(&v.0);
        let target = match t.index.get(&s) {
            Some(&j) => {
                t.outside.push((w.clone(), j));
                j
            }
            None => {
                let j = t.words.len();
                t.index.insert(s.clone(), j);
                t.syndromes.push(s);
                t.words.push(w.clone());
                t.phi.push(vec![usize::MAX; nvars]);
                member.insert(w.clone(), j);
                for k in 0..nvars {
                    let next = w.mul_var(k);
                    list.insert(order.error_key(&next, m), next);
                }
                j
            }
        };
        for k in w.support().collect::<Vec<_>>() {
            let u = w.div_var(k).expect("k divides w");
            if let Some(&i) = member.get(&u) {
                t.phi[i][k] = target;
            }
        }
    }
    debug_assert!(t.phi.iter().all(|row| row.iter().all(|&x| x != usize::MAX)));
    Ok(t)
}

/// `N`, `φ` and the error-capability flags of a code under an order.
#[derive(Clone, Debug)]
pub struct MatphiTable {
    pub(crate) field: FieldSpec,
    pub(crate) m: usize,
    pub(crate) order: AdmissibleOrder,
    pub(crate) words: Vec<Word>,
    pub(crate) vectors: Vec<VectorFq>,
    pub(crate) syndromes: Vec<Syndrome>,
    pub(crate) index: HashMap<Syndrome, usize>,
    pub(crate) flags: Vec<bool>,
    pub(crate) phi: Vec<Vec<usize>>,
    pub(crate) t: usize,
}

pub fn build_matphi(code: &Code, order: &AdmissibleOrder) -> Result<MatphiTable> {
    build_matphi_with_cap(code, order, MAX_COSETS)
}

pub fn build_matphi_with_cap(code: &Code, order: &AdmissibleOrder, cap: u128) -> Result<MatphiTable> {
    let t = code.error_capability()?;
    let tr = traverse(code, order, cap)?;
    let vectors: Vec<VectorFq> = tr
        .words
        .iter()
        .map(|w| monomial::psi_unchecked(code.field(), w))
        .collect();
    let flags = vectors.iter().map(|v| v.weight() <= t).collect();
    Ok(MatphiTable {
        field: code.field().clone(),
        m: code.field().degree(),
        order: order.clone(),
        words: tr.words,
        vectors,
        syndromes: tr.syndromes,
        index: tr.index,
        flags,
        phi: tr.phi,
        t,
    })
}

impl MatphiTable {
    /// `N` in insertion order.
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn vectors(&self) -> &[VectorFq] {
        &self.vectors
    }

    pub fn syndromes(&self) -> &[Syndrome] {
        &self.syndromes
    }

    pub fn flags(&self) -> &[bool] {
        &self.flags
    }

    /// 0-based `φ` rows.
    pub fn phi(&self) -> &[Vec<usize>] {
        &self.phi
    }

    pub fn order(&self) -> &AdmissibleOrder {
        &self.order
    }

    pub fn error_capability(&self) -> usize {
        self.t
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.order.nvars()
    }

    pub fn vars_per_position(&self) -> usize {
        self.m
    }

    /// Index of the entry representing the coset with syndrome `s`.
    pub fn index_of_syndrome(&self, s: &Syndrome) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// Index in `N` of `cf(w)`: one `φ` lookup per letter, taking the
    /// variables from smallest to largest.
    pub fn cf_index(&self, w: &Word) -> Result<usize> {
        if w.nvars() != self.nvars() {
            return Err(Error::LengthMismatch { expected: self.nvars(), found: w.nvars() });
        }
        let mut cur = 0;
        for &k in self.order.variables_ascending() {
            for _ in 0..w.exponent(k) {
                cur = self.phi[cur][k];
            }
        }
        Ok(cur)
    }

    /// Indices of the entries with `|Ind| = level`, in insertion order.
    pub fn level_indices(&self, level: usize) -> Vec<usize> {
        (0..self.words.len())
            .filter(|&i| monomial::ind_size(&self.words[i], self.m) == level)
            .collect()
    }

    pub fn export(&self) -> MatphiExport {
        MatphiExport {
            n_words: self.words.iter().map(ToString::to_string).collect(),
            table: (0..self.words.len())
                .map(|i| MatphiEntry {
                    vector: format::vector_json(&self.field, &self.vectors[i]),
                    flag: self.flags[i] as u8,
                    phi_row: self.phi[i].iter().map(|&j| j + 1).collect(),
                })
                .collect(),
            t: self.t,
        }
    }
}

/// `cf(w)`, the element of `N` in the coset of `w`.
pub fn canonical_form_cf(table: &MatphiTable, w: &Word) -> Result<Word> {
    Ok(table.words[table.cf_index(w)?].clone())
}

/// Entries of `N` with `|Ind| = level`, in insertion order.
pub fn coset_level_slice(table: &MatphiTable, level: usize) -> Vec<Word> {
    table
        .level_indices(level)
        .into_iter()
        .map(|i| table.words[i].clone())
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct MatphiEntry {
    pub vector: serde_json::Value,
    pub flag: u8,
    pub phi_row: Vec<usize>,
}

/// Serialized form: `N`, one `{vector, flag, phi_row}` per entry with 1-based
/// `φ` indices, and `t`.
#[derive(Clone, Debug, Serialize)]
pub struct MatphiExport {
    #[serde(rename = "N")]
    pub n_words: Vec<String>,
    pub table: Vec<MatphiEntry>,
    pub t: usize,
}
