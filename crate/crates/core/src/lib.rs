//! Exact computations with cyclic integrable logarithmic connections along
//! quasi-homogeneous plane curves: Weyl-algebra Gröbner bases,
//! Bernstein–Sato polynomials, intersection-module presentations and
//! characteristic varieties.

pub mod cli;
pub mod dmodcalc;
pub mod error;
pub mod groebner;
pub mod ilc;
pub mod logcurve;
pub mod ratpoly;
pub mod weyl;

pub use error::{Error, Result};
