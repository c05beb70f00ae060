//! Homogeneous forms, semi-invariant spaces, Molien series and moduli
//! bookkeeping.

mod molien;
mod moduli;
mod monomial;
mod polynomial;
mod reynolds;

pub use molien::{inverse_char_poly_series, molien_series, MolienSeries};
pub use moduli::{moduli_report, ModuliReport};
pub use monomial::{binomial, MonomialBasis};
pub use polynomial::{grlex_cmp, parse_polynomial, verify_relation, Exponents, PolyError, Polynomial};
pub use reynolds::{
    basis_polynomials, check_semi_invariance, reynolds_projection, scalar_condition,
    semi_invariant_space, semi_invariant_space_by_generators, span_of, SymmetricPower,
};

use crate::group::SpectrumError;
use crate::linalg::LinalgError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvariantError {
    #[error("a scalar in the group acts on degree {degree} forms by a value other than the character; no nonzero semi-invariants exist")]
    ScalarLemma { degree: u32 },
    #[error("averaging operator is not idempotent")]
    NotIdempotent,
    #[error("Molien coefficient in degree {degree} is {value}, not a non-negative integer")]
    NonIntegralMolien { degree: usize, value: String },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
}
