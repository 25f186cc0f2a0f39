//! Exact canonical forms for pencils of skew-symmetric forms and linear
//! relations, with applications to Lie–Poisson argument-translation pencils.
//!
//! Everything is computed over the rationals with arbitrary precision; no
//! floating point is involved anywhere.

pub mod error;
pub mod exact_core;
pub mod io;
pub mod lie_poisson;
pub mod par;
pub mod relations;
pub mod random;
pub mod selftest;
pub mod skew_pairs;
pub mod webtools;

pub use error::{Error, Result};
pub use exact_core::{BinaryForm, Mat, PolyMat, Scalar, Subspace, UniPoly};
