//! Means of positive definite matrices (t-geometric, power, log-Euclidean,
//! sandwich and cross terms, multi-matrix variants) on a self-contained dense
//! symmetric kernel, and a catalogue of the norm, eigenvalue and majorization
//! inequalities relating them, checked over seeded random instances.

pub mod compound;
pub mod densela;
pub mod error;
pub mod means;
pub mod spectra;
pub mod suite;

pub use densela::{EigenDecomposition, GenMatrix, PdMatrix, SymMatrix};
pub use error::{Error, Result};
pub use spectra::Spectrum;
