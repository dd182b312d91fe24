//! Code-definition files, vector literals and JSON helpers.
//!
//! A definition file looks like
//!
//! ```json
//! {
//!   "p": 2,
//!   "m": 1,
//!   "n": 6,
//!   "k": 3,
//!   "H": [
//!     [1, 1, 0, 0, 0, 0],
//!     [0, 0, 1, 1, 0, 0],
//!     [0, 0, 0, 0, 1, 1]
//!   ]
//! }
//! ```
//!
//! with `G` (`k × n`) allowed in place of `H` (`(n - k) × n`). Over
//! `GF(p^m)`, `m > 1`, each entry is a list of `m` residues, constant
//! coefficient first, and an `irreducible` list of `m + 1` residues may fix
//! the modulus.

use serde::{Deserialize, Serialize};

use crate::code::{Code, VectorFq};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::Row;

/// A matrix entry as written in a definition file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Scalar(u32),
    Coeffs(Vec<u32>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeDefinition {
    pub p: u32,
    pub m: usize,
    pub n: usize,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub irreducible: Option<Vec<u32>>,
    #[serde(rename = "H", default, skip_serializing_if = "Option::is_none")]
    pub h: Option<Vec<Vec<Entry>>>,
    #[serde(rename = "G", default, skip_serializing_if = "Option::is_none")]
    pub g: Option<Vec<Vec<Entry>>>,
}

impl CodeDefinition {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn field(&self) -> Result<FieldSpec> {
        FieldSpec::new(self.p, self.m, self.irreducible.clone())
    }

    pub fn to_code(&self) -> Result<Code> {
        let field = self.field()?;
        if self.k > self.n {
            return Err(Error::InvalidCode(format!("k = {} exceeds n = {}", self.k, self.n)));
        }
        match (&self.h, &self.g) {
            (Some(h), None) => {
                if h.len() != self.n - self.k {
                    return Err(Error::InvalidCode(format!(
                        "H has {} rows, expected n - k = {}",
                        h.len(),
                        self.n - self.k
                    )));
                }
                let rows = self.rows(&field, h)?;
                Code::from_parity_check_with_len(field, self.n, rows)
            }
            (None, Some(g)) => {
                if g.len() != self.k {
                    return Err(Error::InvalidCode(format!(
                        "G has {} rows, expected k = {}",
                        g.len(),
                        self.k
                    )));
                }
                let rows = self.rows(&field, g)?;
                Code::from_generator(field, self.n, rows)
            }
            _ => Err(Error::InvalidCode("exactly one of H and G must be given".into())),
        }
    }

    fn rows(&self, field: &FieldSpec, m: &[Vec<Entry>]) -> Result<Vec<Row>> {
        m.iter()
            .map(|row| {
                if row.len() != self.n {
                    return Err(Error::LengthMismatch { expected: self.n, found: row.len() });
                }
                row.iter().map(|e| entry_value(field, e)).collect()
            })
            .collect()
    }

    /// The `H` form of an existing code.
    pub fn from_code(code: &Code) -> Self {
        let field = code.field();
        let h = code
            .parity_check_rows()
            .iter()
            .map(|row| row.iter().map(|&x| entry_of(field, x)).collect())
            .collect();
        CodeDefinition {
            p: field.characteristic(),
            m: field.degree(),
            n: code.len(),
            k: code.dimension(),
            irreducible: (!field.is_prime_field()).then(|| field.irreducible().to_vec()),
            h: Some(h),
            g: None,
        }
    }

    /// Canonical text: one key per line, one matrix row per line.
    pub fn to_canonical_json(&self) -> String {
        let mut out = String::from("{\n");
        let mut fields = vec![
            format!("  \"p\": {}", self.p),
            format!("  \"m\": {}", self.m),
            format!("  \"n\": {}", self.n),
            format!("  \"k\": {}", self.k),
        ];
        if let Some(irr) = &self.irreducible {
            fields.push(format!("  \"irreducible\": {}", json_list(irr.iter().map(u32::to_string))));
        }
        for (name, mat) in [("H", &self.h), ("G", &self.g)] {
            if let Some(mat) = mat {
                fields.push(format!("  \"{name}\": {}", matrix_text(mat)));
            }
        }
        out.push_str(&fields.join(",\n"));
        out.push_str("\n}\n");
        out
    }
}

fn json_list(items: impl Iterator<Item = String>) -> String {
    format!("[{}]", items.collect::<Vec<_>>().join(", "))
}

fn matrix_text(mat: &[Vec<Entry>]) -> String {
    if mat.is_empty() {
        return "[]".into();
    }
    let rows: Vec<String> = mat
        .iter()
        .map(|row| {
            let cells = row.iter().map(|e| match e {
                Entry::Scalar(c) => c.to_string(),
                Entry::Coeffs(cs) => format!("[{}]", cs.iter().map(u32::to_string).collect::<Vec<_>>().join(",")),
            });
            format!("    {}", json_list(cells))
        })
        .collect();
    format!("[\n{}\n  ]", rows.join(",\n"))
}

fn entry_value(field: &FieldSpec, e: &Entry) -> Result<FieldElement> {
    match e {
        Entry::Scalar(c) if field.is_prime_field() => {
            if *c >= field.characteristic() {
                return Err(Error::InvalidCode(format!("entry {c} is not a residue mod {}", field.characteristic())));
            }
            field.scalar_embed(*c)
        }
        Entry::Scalar(_) => Err(Error::InvalidCode(format!(
            "entries over GF({}^{}) must be lists of {} residues",
            field.characteristic(),
            field.degree(),
            field.degree()
        ))),
        Entry::Coeffs(cs) => {
            if cs.len() != field.degree() {
                return Err(Error::InvalidCode(format!(
                    "entry {cs:?} has {} coefficients, expected {}",
                    cs.len(),
                    field.degree()
                )));
            }
            field.from_coeffs(cs)
        }
    }
}

fn entry_of(field: &FieldSpec, x: FieldElement) -> Entry {
    if field.is_prime_field() {
        Entry::Scalar(x.0 as u32)
    } else {
        Entry::Coeffs(field.coeffs(x))
    }
}

/// JSON form of a vector: residues for prime fields, coefficient lists
/// otherwise.
pub fn vector_json(field: &FieldSpec, v: &VectorFq) -> serde_json::Value {
    let items = v.0.iter().map(|&x| match entry_of(field, x) {
        Entry::Scalar(c) => serde_json::Value::from(c),
        Entry::Coeffs(cs) => serde_json::Value::from(cs),
    });
    serde_json::Value::Array(items.collect())
}

/// Parses a received vector: `1,0,1` over prime fields, `1,0;0,1;…` (one
/// group of `m` coefficients per position) otherwise.
pub fn parse_vector(field: &FieldSpec, n: usize, literal: &str) -> Result<VectorFq> {
    let parse_residue = |t: &str| -> Result<u32> {
        t.trim()
            .parse::<u32>()
            .map_err(|_| Error::Parse(format!("bad residue {t:?}")))
    };
    let literal = literal.trim();
    let entries: Vec<FieldElement> = if field.is_prime_field() {
        literal
            .split(',')
            .map(|t| {
                let c = parse_residue(t)?;
                if c >= field.characteristic() {
                    return Err(Error::Parse(format!("{c} is not a residue mod {}", field.characteristic())));
                }
                field.scalar_embed(c)
            })
            .collect::<Result<_>>()?
    } else {
        literal
            .split(';')
            .map(|group| {
                let cs = group.split(',').map(parse_residue).collect::<Result<Vec<_>>>()?;
                if cs.len() != field.degree() {
                    return Err(Error::Parse(format!(
                        "position {group:?} needs {} coefficients",
                        field.degree()
                    )));
                }
                field.from_coeffs(&cs).map_err(|e| Error::Parse(e.to_string()))
            })
            .collect::<Result<_>>()?
    };
    if entries.len() != n {
        return Err(Error::LengthMismatch { expected: n, found: entries.len() });
    }
    Ok(VectorFq(entries))
}

/// Inverse of [`parse_vector`].
pub fn vector_literal(field: &FieldSpec, v: &VectorFq) -> String {
    if field.is_prime_field() {
        v.0.iter().map(|x| x.0.to_string()).collect::<Vec<_>>().join(",")
    } else {
        v.0.iter()
            .map(|&x| field.coeffs(x).iter().map(u32::to_string).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join(";")
    }
}
