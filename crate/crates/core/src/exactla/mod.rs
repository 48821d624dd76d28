//! Exact linear and multilinear algebra over Q and F_p.

pub mod enumerate;
pub mod field;
pub mod matrix;
pub mod subspace;
pub mod tensor;

pub use enumerate::{all_vectors, enumerate_subspaces, projective_points, subspaces};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use matrix::{Matrix, Vector};
pub use subspace::{kernel, solve_linear, solve_vector, LinearSolution, Subspace};
pub use tensor::{tensor_quotient, TensorQuotient};
