//! Dense real matrix kernel: arithmetic, symmetric eigendecomposition,
//! functional calculus, singular values, definiteness tests and seeded random
//! positive definite matrices.

pub mod eigen;
pub mod funcs;
mod graded;
pub mod matrix;
pub mod random;
pub mod text;

pub use eigen::{sym_eigen, EigenDecomposition};
pub use funcs::{
    apply_spectral_fn, is_positive_definite, is_positive_semidefinite, pd_congruence, pd_log, pd_power,
    pd_weighted_power_sum, singular_values, sym_exp, Definiteness,
};
pub use matrix::{multiply, multiply_chain, GenMatrix, PdMatrix, SymMatrix};
pub use random::{random_orthogonal, random_pd, random_pd_with, random_symmetric, seeded_rng};
pub use text::{format_matrix, parse_matrix};
