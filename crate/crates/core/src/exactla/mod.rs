//! Exact linear algebra over prime fields and the rationals.

pub mod enumerate;
pub mod field;
pub mod matrix;
pub mod subspace;

pub use enumerate::{
    all_matrices, all_vectors, budget_from_env, check_budget, enumerate_all_subspaces, enumerate_subspaces,
    gaussian_binomial, subspace_elements, DEFAULT_BUDGET,
};
pub use field::{field_from_json, parse_field_descriptor, Field, FieldChoice, PrimeField, Rationals};
pub use matrix::Matrix;
pub use subspace::Subspace;
