//! Arithmetic in `GF(p^m)` for `p^m <= 256`.
//!
//! Elements are stored in the power basis `a_0 + a_1 α + … + a_{m-1} α^{m-1}`
//! of a fixed monic irreducible polynomial. The packed form of an element is
//! the integer `Σ a_j p^j`, so `FieldElement(c)` for `c < p` is the embedded
//! residue `c`. Addition and multiplication go through dense tables built once
//! per field.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field order supported.
pub const MAX_ORDER: u32 = 256;

/// An element of a [`FieldSpec`], in packed power-basis form.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(pub u8);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Debug)]
struct Tables {
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

/// `GF(p^m)` together with its arithmetic tables. Cloning is cheap.
#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    m: usize,
    /// `m + 1` coefficients, constant term first, monic.
    irreducible: Vec<u32>,
    tables: Arc<Tables>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("irreducible", &self.irreducible)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.irreducible == other.irreducible
    }
}

impl Eq for FieldSpec {}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Remainder of `a` modulo the monic polynomial `b` over `F_p`, coefficients
/// constant term first.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, &c) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p - lead) * c) % p;
            }
        }
        r.pop();
    }
    r
}

/// Monic polynomials of degree `d` over `F_p`, in increasing packed order.
fn monic_polys(p: u32, d: usize) -> impl Iterator<Item = Vec<u32>> {
    let count = p.pow(d as u32);
    (0..count).map(move |mut c| {
        let mut poly = Vec::with_capacity(d + 1);
        for _ in 0..d {
            poly.push(c % p);
            c /= p;
        }
        poly.push(1);
        poly
    })
}

fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    (1..=deg / 2).all(|d| {
        monic_polys(p, d).all(|f| poly_rem(poly, &f, p).iter().any(|&c| c != 0))
    })
}

/// Default defining polynomial for `GF(p^m)`.
fn default_irreducible(p: u32, m: usize) -> Vec<u32> {
    match (p, m) {
        (_, 1) => vec![0, 1],
        (2, 2) => vec![1, 1, 1],
        (2, 3) => vec![1, 1, 0, 1],
        (3, 2) => vec![1, 0, 1],
        _ => monic_polys(p, m)
            .find(|f| f[0] != 0 && is_irreducible(f, p))
            .expect("an irreducible polynomial exists in every degree"),
    }
}

impl FieldSpec {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1, None)
    }

    /// `GF(p^m)`, optionally with an explicit defining polynomial of `m + 1`
    /// coefficients (constant term first).
    pub fn new(p: u32, m: usize, irreducible: Option<Vec<u32>>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if m == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        let q = (p as u64).checked_pow(m as u32).unwrap_or(u64::MAX);
        if q > MAX_ORDER as u64 {
            return Err(Error::InvalidField(format!(
                "field order {p}^{m} exceeds {MAX_ORDER}"
            )));
        }
        let irreducible = match irreducible {
            Some(poly) => {
                if poly.len() != m + 1 || poly.iter().any(|&c| c >= p) || poly[m] != 1 {
                    return Err(Error::InvalidField(format!(
                        "defining polynomial must be monic of degree {m} with residues mod {p}"
                    )));
                }
                if m > 1 && !is_irreducible(&poly, p) {
                    return Err(Error::InvalidField(format!(
                        "polynomial {poly:?} is reducible over F_{p}"
                    )));
                }
                poly
            }
            None => default_irreducible(p, m),
        };
        let tables = Arc::new(build_tables(p, m, &irreducible));
        Ok(FieldSpec {
            p,
            m,
            irreducible,
            tables,
        })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn order(&self) -> usize {
        (self.p as usize).pow(self.m as u32)
    }

    pub fn irreducible(&self) -> &[u32] {
        &self.irreducible
    }

    pub fn is_prime_field(&self) -> bool {
        self.m == 1
    }

    /// All elements in packed order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order()).map(|c| FieldElement(c as u8))
    }

    #[inline]
    fn idx(&self, a: FieldElement, b: FieldElement) -> usize {
        debug_assert!((a.0 as usize) < self.order() && (b.0 as usize) < self.order());
        a.0 as usize * self.order() + b.0 as usize
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.tables.add[self.idx(a, b)])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.tables.mul[self.idx(a, b)])
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.tables.neg[a.0 as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        (!a.is_zero()).then(|| FieldElement(self.tables.inv[a.0 as usize]))
    }

    /// Embeds a residue of `Z/pZ` as `(c, 0, …, 0)`.
    pub fn scalar_embed(&self, c: u32) -> Result<FieldElement> {
        if c >= self.p {
            return Err(Error::InvalidField(format!("residue {c} is not below {}", self.p)));
        }
        Ok(FieldElement(c as u8))
    }

    /// Power-basis coefficients, `α^0` first.
    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        let mut c = a.0 as u32;
        (0..self.m)
            .map(|_| {
                let d = c % self.p;
                c /= self.p;
                d
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() != self.m {
            return Err(Error::InvalidField(format!(
                "expected {} coefficients, got {}",
                self.m,
                coeffs.len()
            )));
        }
        let mut packed = 0u32;
        for &c in coeffs.iter().rev() {
            if c >= self.p {
                return Err(Error::InvalidField(format!("coefficient {c} is not below {}", self.p)));
            }
            packed = packed * self.p + c;
        }
        Ok(FieldElement(packed as u8))
    }

    /// The primitive-basis element `α^j` (for `j < m`).
    pub fn basis_element(&self, j: usize) -> FieldElement {
        assert!(j < self.m, "basis index out of range");
        FieldElement(self.p.pow(j as u32) as u8)
    }
}

fn build_tables(p: u32, m: usize, irreducible: &[u32]) -> Tables {
    let q = (p as usize).pow(m as u32);
    let unpack = |mut c: usize| -> Vec<u32> {
        (0..m)
            .map(|_| {
                let d = (c % p as usize) as u32;
                c /= p as usize;
                d
            })
            .collect()
    };
    let pack = |coeffs: &[u32]| -> u8 {
        coeffs.iter().rev().fold(0u32, |acc, &c| acc * p + c) as u8
    };
    let digits: Vec<Vec<u32>> = (0..q).map(unpack).collect();

    let mut add = vec![0u8; q * q];
    let mut mul = vec![0u8; q * q];
    for a in 0..q {
        for b in 0..q {
            let sum: Vec<u32> = digits[a]
                .iter()
                .zip(&digits[b])
                .map(|(x, y)| (x + y) % p)
                .collect();
            add[a * q + b] = pack(&sum);

            let mut prod = vec![0u32; 2 * m - 1];
            for (i, x) in digits[a].iter().enumerate() {
                for (j, y) in digits[b].iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            let reduced = if m == 1 {
                prod
            } else {
                let mut r = poly_rem(&prod, irreducible, p);
                r.resize(m, 0);
                r
            };
            mul[a * q + b] = pack(&reduced);
        }
    }
    let neg = (0..q)
        .map(|a| {
            let n: Vec<u32> = digits[a].iter().map(|&x| (p - x) % p).collect();
            pack(&n)
        })
        .collect();
    let mut inv = vec![0u8; q];
    for a in 1..q {
        inv[a] = (1..q)
            .find(|&b| mul[a * q + b] == 1)
            .expect("nonzero element of a field has an inverse") as u8;
    }
    Tables { add, mul, neg, inv }
}
