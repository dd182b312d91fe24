//! Linear codes over `GF(q)`: parity checks, syndromes, codeword enumeration.
//!
//! The parity-check matrix is held in the right-multiplication form: `n` rows
//! of `n - k` entries, so that `c · H = 0` for every codeword `c`. Definition
//! files store the textbook `(n - k) × n` layout and are transposed on load.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::{self, Row};
use crate::perm::Permutation;

/// Default cap on the number of codewords enumerated.
pub const MAX_CODEWORDS: u128 = 1 << 20;

/// An element of `F_q^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VectorFq(pub Vec<FieldElement>);

impl VectorFq {
    pub fn zero(n: usize) -> Self {
        VectorFq(vec![FieldElement::ZERO; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn add(&self, field: &FieldSpec, other: &VectorFq) -> VectorFq {
        VectorFq(self.0.iter().zip(&other.0).map(|(&a, &b)| field.add(a, b)).collect())
    }

    pub fn sub(&self, field: &FieldSpec, other: &VectorFq) -> VectorFq {
        VectorFq(self.0.iter().zip(&other.0).map(|(&a, &b)| field.sub(a, b)).collect())
    }

    /// Value at position `i` moves to position `σ(i)`.
    pub fn permute(&self, sigma: &Permutation) -> VectorFq {
        let mut out = vec![FieldElement::ZERO; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            out[sigma.apply(i)] = x;
        }
        VectorFq(out)
    }

    /// Every vector of `F_q^n`, in little-endian counting order.
    pub fn all(field: &FieldSpec, n: usize) -> impl Iterator<Item = VectorFq> {
        let q = field.order();
        let total = (q as u128).pow(n as u32);
        (0..total).map(move |mut c| {
            let mut v = Vec::with_capacity(n);
            for _ in 0..n {
                v.push(FieldElement((c % q as u128) as u8));
                c /= q as u128;
            }
            VectorFq(v)
        })
    }
}

/// The syndrome `v·H` of a vector; identifies the coset of `v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syndrome(pub Vec<FieldElement>);

impl Syndrome {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }
}

/// A linear `[n, k]` code over `GF(p^m)`.
#[derive(Clone, Debug)]
pub struct Code {
    field: FieldSpec,
    n: usize,
    k: usize,
    /// `n × (n - k)`.
    h: Vec<Row>,
    /// `k × n`.
    g: Vec<Row>,
}

impl Code {
    /// From a parity-check matrix in `(n - k) × n` layout.
    pub fn from_parity_check(field: FieldSpec, rows: Vec<Row>) -> Result<Self> {
        let n = rows.first().map_or(0, Vec::len);
        Self::from_parity_check_with_len(field, n, rows)
    }

    /// Like [`Code::from_parity_check`] but with an explicit length, so that
    /// `k = n` codes (no parity rows) can be expressed.
    pub fn from_parity_check_with_len(field: FieldSpec, n: usize, rows: Vec<Row>) -> Result<Self> {
        check_entries(&field, &rows, n)?;
        let r = matrix::rank(&field, &rows);
        if r != rows.len() {
            return Err(Error::RankDeficient { rank: r, expected: rows.len() });
        }
        let k = n - r;
        let g = matrix::nullspace(&field, &rows, n);
        debug_assert_eq!(g.len(), k);
        Ok(Code {
            h: matrix::transpose(&rows, n),
            field,
            n,
            k,
            g,
        })
    }

    /// From a `k × n` generator matrix; the parity-check matrix is derived
    /// by elimination.
    pub fn from_generator(field: FieldSpec, n: usize, rows: Vec<Row>) -> Result<Self> {
        check_entries(&field, &rows, n)?;
        let r = matrix::rank(&field, &rows);
        if r != rows.len() {
            return Err(Error::RankDeficient { rank: r, expected: rows.len() });
        }
        let check = matrix::nullspace(&field, &rows, n);
        Ok(Code {
            h: matrix::transpose(&check, n),
            field,
            n,
            k: rows.len(),
            g: rows,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    pub fn redundancy(&self) -> usize {
        self.n - self.k
    }

    /// `n × (n - k)` parity-check matrix.
    pub fn parity_check(&self) -> &[Row] {
        &self.h
    }

    /// Parity-check matrix in `(n - k) × n` layout.
    pub fn parity_check_rows(&self) -> Vec<Row> {
        matrix::transpose(&self.h, self.n - self.k)
    }

    pub fn generator(&self) -> &[Row] {
        &self.g
    }

    pub fn syndrome(&self, v: &VectorFq) -> Result<Syndrome> {
        if v.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, found: v.len() });
        }
        Ok(self.syndrome_unchecked(&v.0))
    }

    pub(crate) fn syndrome_unchecked(&self, v: &[FieldElement]) -> Syndrome {
        Syndrome(matrix::vec_mul(&self.field, v, &self.h, self.n - self.k))
    }

    pub fn is_codeword(&self, v: &VectorFq) -> Result<bool> {
        Ok(self.syndrome(v)?.is_zero())
    }

    pub fn codeword_count(&self) -> u128 {
        (self.field.order() as u128).pow(self.k as u32)
    }

    /// All `q^k` codewords (message order).
    pub fn codewords(&self) -> Result<Vec<VectorFq>> {
        let count = self.codeword_count();
        if count > MAX_CODEWORDS {
            return Err(Error::CapExceeded { what: "codeword enumeration", needed: count, cap: MAX_CODEWORDS });
        }
        Ok(VectorFq::all(&self.field, self.k)
            .map(|msg| VectorFq(matrix::vec_mul(&self.field, &msg.0, &self.g, self.n)))
            .collect())
    }

    /// Number of codewords of each weight `0..=n`.
    pub fn weight_distribution(&self) -> Result<Vec<u64>> {
        let mut dist = vec![0u64; self.n + 1];
        for c in self.codewords()? {
            dist[c.weight()] += 1;
        }
        Ok(dist)
    }

    /// Minimum nonzero weight; `n + 1` when `k = 0`.
    pub fn minimum_distance(&self) -> Result<usize> {
        let dist = self.weight_distribution()?;
        Ok((1..=self.n).find(|&w| dist[w] > 0).unwrap_or(self.n + 1))
    }

    /// `⌊(d - 1) / 2⌋`.
    pub fn error_capability(&self) -> Result<usize> {
        Ok((self.minimum_distance()? - 1) / 2)
    }

    /// The code `{σ(c) : c ∈ C}`.
    pub fn apply_permutation(&self, sigma: &Permutation) -> Result<Code> {
        if sigma.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, found: sigma.len() });
        }
        let mut h = vec![Vec::new(); self.n];
        for (i, row) in self.h.iter().enumerate() {
            h[sigma.apply(i)] = row.clone();
        }
        let g = self
            .g
            .iter()
            .map(|row| VectorFq(row.clone()).permute(sigma).0)
            .collect();
        Ok(Code {
            field: self.field.clone(),
            n: self.n,
            k: self.k,
            h,
            g,
        })
    }

    /// Same field, length and codeword set.
    pub fn same_code(&self, other: &Code) -> bool {
        self.field == other.field
            && self.n == other.n
            && self.k == other.k
            && matrix::same_row_space(&self.field, &self.g, &other.g)
    }

    /// Set of codewords, for small codes.
    pub fn codeword_set(&self) -> Result<HashSet<VectorFq>> {
        Ok(self.codewords()?.into_iter().collect())
    }
}

/// Derives the parity-check side of a generator matrix.
pub fn derive_parity_check(field: FieldSpec, n: usize, generator: Vec<Row>) -> Result<Code> {
    Code::from_generator(field, n, generator)
}

fn check_entries(field: &FieldSpec, rows: &[Row], n: usize) -> Result<()> {
    for row in rows {
        if row.len() != n {
            return Err(Error::LengthMismatch { expected: n, found: row.len() });
        }
        if row.iter().any(|x| x.0 as usize >= field.order()) {
            return Err(Error::InvalidCode("matrix entry outside the field".into()));
        }
    }
    Ok(())
}
