//! Exact arithmetic: rationals, polynomials, matrices, subspaces, and the
//! polynomial-matrix algorithms (Smith form, minimal bases, minor gcds).

pub mod factor;
pub mod mat;
pub mod minimal;
pub mod minors;
pub mod mpoly;
pub mod poly;
pub mod polymat;
pub mod scalar;
pub mod subspace;
pub mod zfactor;

pub use factor::{exceptional_factors, factor_binary_form, factor_over_q, rank_at_form_root, NumberField};
pub use mat::{rref_rank_kernel, Mat};
pub use minimal::{generic_rank, minimal_nullspace_basis, NullVector};
pub use minors::gcd_of_minors;
pub use mpoly::MPoly;
pub use poly::{BinaryForm, UniPoly};
pub use polymat::{smith_normal_form, PolyMat, SmithForm};
pub use scalar::{format_scalar, parse_scalar, Scalar};
pub use subspace::Subspace;
