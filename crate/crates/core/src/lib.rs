//! Canonical forms, reduced bases and permutation equivalence for linear
//! codes over small finite fields.

pub mod code;
pub mod decode;
pub mod equiv;
pub mod error;
pub mod field;
pub mod format;
pub mod matphi;
pub mod matrix;
pub mod monomial;
pub mod perm;
pub mod rbasis;

pub use code::{Code, Syndrome, VectorFq};
pub use decode::{decode_binary, decode_matphi, DecodeResult};
pub use equiv::{find_permutation, EquivVerdict};
pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec};
pub use format::CodeDefinition;
pub use matphi::{build_matphi, MatphiTable};
pub use monomial::{AdmissibleOrder, OrderKind, Word};
pub use perm::Permutation;
pub use rbasis::{build_reduced_basis, Binomial, ReducedBasis};
