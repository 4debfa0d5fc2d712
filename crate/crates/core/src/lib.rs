//! Exact computations for Calabi-Yau questions about enveloping algebras,
//! Sridharan algebras, skew group algebras and their superpotentials.

pub mod cli;
pub mod groupact;
pub mod homology;
pub mod lie;
pub mod linalg;
pub mod ncpoly;
pub mod potential;
pub mod problem;
pub mod sampling;
pub mod scalar;
pub mod selftest;
pub mod sridharan;
