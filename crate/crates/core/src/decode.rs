//! Decoding up to `t` errors, with the reduced basis (binary codes) or with
//! the `φ` table (any field).

use serde::Serialize;

use crate::code::{Code, VectorFq};
use crate::error::{Error, Result};
use crate::format;
use crate::matphi::MatphiTable;
use crate::monomial;
use crate::rbasis::{self, ReducedBasis};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecodeResult {
    Corrected { error: VectorFq, codeword: VectorFq },
    /// The coset leader found has more than `t` nonzero entries.
    TooManyErrors { canonical_weight: usize },
}

impl DecodeResult {
    pub fn is_corrected(&self) -> bool {
        matches!(self, DecodeResult::Corrected { .. })
    }

    pub fn to_json(&self, code: &Code) -> DecodeJson {
        let f = code.field();
        match self {
            DecodeResult::Corrected { error, codeword } => DecodeJson::Corrected {
                error: format::vector_json(f, error),
                codeword: format::vector_json(f, codeword),
                weight: error.weight(),
            },
            DecodeResult::TooManyErrors { canonical_weight } => {
                DecodeJson::TooManyErrors { canonical_weight: *canonical_weight }
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum DecodeJson {
    Corrected {
        error: serde_json::Value,
        codeword: serde_json::Value,
        weight: usize,
    },
    TooManyErrors {
        canonical_weight: usize,
    },
}

fn outcome(code: &Code, received: &VectorFq, error: VectorFq, t: usize) -> DecodeResult {
    let weight = error.weight();
    if weight <= t {
        let codeword = received.sub(code.field(), &error);
        DecodeResult::Corrected { error, codeword }
    } else {
        DecodeResult::TooManyErrors { canonical_weight: weight }
    }
}

fn check_len(code: &Code, received: &VectorFq) -> Result<()> {
    if received.len() != code.len() {
        return Err(Error::LengthMismatch { expected: code.len(), found: received.len() });
    }
    Ok(())
}

/// Error vector `ψ(Can(w, G))` for the standard word `w` of `received`.
pub fn decode_binary(g: &ReducedBasis, code: &Code, received: &VectorFq) -> Result<DecodeResult> {
    check_len(code, received)?;
    let w = monomial::standardize(code.field(), received);
    let can = rbasis::canonical_form_binary(g, &w)?;
    let error = monomial::psi(code, &can)?;
    Ok(outcome(code, received, error, g.error_capability()))
}

/// Error vector `ψ(cf(w))`, accepted when the table flags the entry.
pub fn decode_matphi(table: &MatphiTable, code: &Code, received: &VectorFq) -> Result<DecodeResult> {
    check_len(code, received)?;
    let w = monomial::standardize(code.field(), received);
    let i = table.cf_index(&w)?;
    let error = table.vectors()[i].clone();
    if table.flags()[i] {
        let codeword = received.sub(code.field(), &error);
        Ok(DecodeResult::Corrected { error, codeword })
    } else {
        Ok(DecodeResult::TooManyErrors { canonical_weight: error.weight() })
    }
}
