//! Pairs of skew-symmetric forms: canonical blocks, decomposition into
//! Kronecker and Jordan blocks, micro-Kronecker tests, action subspaces.
//!
//! The pencil of a pair `(h₁, h₂)` is `λ₁h₁ + λ₂h₂`. A Jordan block
//! `J_{2k,μ}` degenerates at `(λ₁:λ₂) = (1:−μ)`; `μ = ∞` means `(0:1)`.

mod decompose;

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_core::factor::poly_order;
use crate::exact_core::{
    exceptional_factors, gcd_of_minors, generic_rank, minimal_nullspace_basis, BinaryForm, Mat,
    Scalar, Subspace, UniPoly,
};
use crate::relations::{jordan_cell, pencil_to_relation, LinearRelation, Pencil};

pub use decompose::decompose;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewPair {
    pub h1: Mat,
    pub h2: Mat,
}

impl SkewPair {
    pub fn new(h1: Mat, h2: Mat) -> Result<Self> {
        if h1.shape() != h2.shape() {
            return Err(Error::DimensionMismatch(format!(
                "h1 is {:?}, h2 is {:?}",
                h1.shape(),
                h2.shape()
            )));
        }
        if !h1.is_skew() || !h2.is_skew() {
            return Err(Error::NotSkew);
        }
        Ok(SkewPair { h1, h2 })
    }

    pub fn zero(n: usize) -> Self {
        SkewPair { h1: Mat::zeros(n, n), h2: Mat::zeros(n, n) }
    }

    pub fn n(&self) -> usize {
        self.h1.rows()
    }

    /// `λ₁h₁ + λ₂h₂`.
    pub fn at(&self, l1: &Scalar, l2: &Scalar) -> Mat {
        self.h1.combine(l1, &self.h2, l2)
    }
}

/// Eigenvalue parameter of a Jordan block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mu {
    Finite(Scalar),
    Infinity,
}

/// Eigenvalue of a Jordan block as reported by [`decompose`]: a monic
/// irreducible polynomial in μ, or the point at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Eigenvalue {
    Finite(UniPoly),
    Infinity,
}

impl Eigenvalue {
    pub fn rational(mu: Scalar) -> Self {
        Eigenvalue::Finite(UniPoly::new(vec![-mu, Scalar::one()]))
    }

    /// Degree of the field extension carrying the eigenvalue.
    pub fn degree(&self) -> usize {
        match self {
            Eigenvalue::Finite(q) => q.degree().unwrap_or(0),
            Eigenvalue::Infinity => 1,
        }
    }

    /// The rational value when the factor is linear.
    pub fn as_mu(&self) -> Option<Mu> {
        match self {
            Eigenvalue::Infinity => Some(Mu::Infinity),
            Eigenvalue::Finite(q) if q.degree() == Some(1) => Some(Mu::Finite(-q.coeff(0))),
            Eigenvalue::Finite(_) => None,
        }
    }
}

impl Ord for Eigenvalue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Eigenvalue::Finite(a), Eigenvalue::Finite(b)) => poly_order(a, b),
            (Eigenvalue::Finite(_), Eigenvalue::Infinity) => Ordering::Less,
            (Eigenvalue::Infinity, Eigenvalue::Finite(_)) => Ordering::Greater,
            (Eigenvalue::Infinity, Eigenvalue::Infinity) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Eigenvalue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Eigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Eigenvalue::Finite(q) => write!(f, "{}", q),
            Eigenvalue::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockSpec {
    /// `K_{2k−1}`: odd dimension, one minimal index `k − 1`.
    Kronecker { dim: usize },
    /// `J_{2k,μ}` (for an irreducible factor of degree d the dimension is `2dk`).
    Jordan { dim: usize, eigenvalue: Eigenvalue },
}

impl BlockSpec {
    pub fn dim(&self) -> usize {
        match self {
            BlockSpec::Kronecker { dim } | BlockSpec::Jordan { dim, .. } => *dim,
        }
    }

    pub fn is_kronecker(&self) -> bool {
        matches!(self, BlockSpec::Kronecker { .. })
    }

    pub fn eigenvalue(&self) -> Option<&Eigenvalue> {
        match self {
            BlockSpec::Kronecker { .. } => None,
            BlockSpec::Jordan { eigenvalue, .. } => Some(eigenvalue),
        }
    }

    /// Canonical ordering: Kronecker before Jordan, then by dimension, then eigenvalue.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (BlockSpec::Kronecker { dim: a }, BlockSpec::Kronecker { dim: b }) => a.cmp(b),
            (BlockSpec::Kronecker { .. }, BlockSpec::Jordan { .. }) => Ordering::Less,
            (BlockSpec::Jordan { .. }, BlockSpec::Kronecker { .. }) => Ordering::Greater,
            (
                BlockSpec::Jordan { dim: a, eigenvalue: ea },
                BlockSpec::Jordan { dim: b, eigenvalue: eb },
            ) => a.cmp(b).then_with(|| ea.cmp(eb)),
        }
    }

    /// The canonical model pair of this block.
    ///
    /// Jordan blocks have the shape `[[0, X₁], [−X₁ᵀ, 0]], [[0, X₂], [−X₂ᵀ, 0]]`
    /// with `(X₁, X₂) = (J_{k,μ}, I)` for rational μ, `(C, I)` with `C` the
    /// companion matrix of `q^k` for an irreducible `q` of degree ≥ 2, and
    /// `(I, J_{k,0})` at infinity.
    pub fn canonical_pair(&self) -> SkewPair {
        match self {
            BlockSpec::Kronecker { dim } => make_kron_pair(dim.div_ceil(2)),
            BlockSpec::Jordan { dim, eigenvalue } => {
                let (x1, x2) = jordan_blocks(*dim / 2, eigenvalue);
                off_diagonal_pair(&x1, &x2)
            }
        }
    }
}

impl fmt::Display for BlockSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockSpec::Kronecker { dim } => write!(f, "K{dim}"),
            BlockSpec::Jordan { dim, eigenvalue } => write!(f, "J{dim}[{eigenvalue}]"),
        }
    }
}

/// `(X₁, X₂)` for a Jordan block with `p × p` off-diagonal parts.
pub(crate) fn jordan_blocks(p: usize, eigenvalue: &Eigenvalue) -> (Mat, Mat) {
    match eigenvalue {
        Eigenvalue::Infinity => (Mat::identity(p), jordan_cell(p, &Scalar::zero())),
        Eigenvalue::Finite(q) if q.degree() == Some(1) => {
            (jordan_cell(p, &-q.coeff(0)), Mat::identity(p))
        }
        Eigenvalue::Finite(q) => {
            let d = q.degree().unwrap_or(1);
            (companion(&q.pow(p / d)), Mat::identity(p))
        }
    }
}

/// Companion matrix with ones on the superdiagonal and `−c_j` in the last row.
pub(crate) fn companion(q: &UniPoly) -> Mat {
    let q = q.monic();
    let p = q.degree().unwrap_or(0);
    Mat::from_fn(p, p, |i, j| {
        if i + 1 == j {
            Scalar::one()
        } else if i + 1 == p {
            -q.coeff(j)
        } else {
            Scalar::zero()
        }
    })
}

fn off_diagonal_pair(x1: &Mat, x2: &Mat) -> SkewPair {
    let p = x1.rows();
    let build = |x: &Mat| {
        let mut m = Mat::zeros(2 * p, 2 * p);
        m.set_block(0, p, x);
        m.set_block(p, 0, &-&x.transpose());
        m
    };
    SkewPair { h1: build(x1), h2: build(x2) }
}

/// Block sizes, basis and the blocks of a decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub blocks: Vec<BlockSpec>,
    /// Columns form the adapted basis.
    pub basis: Mat,
}

impl Decomposition {
    /// Block-diagonal canonical pair for the listed blocks.
    pub fn canonical(&self) -> SkewPair {
        pair_direct_sum(&self.blocks.iter().map(BlockSpec::canonical_pair).collect::<Vec<_>>())
    }
}

/// `K_{2k−1}` on `w₀..w_{2k−2}`: `(w_{2l}, w_{2l+1})₁ = 1`, `(w_{2l+1}, w_{2l+2})₂ = 1`.
pub fn make_kron_pair(k: usize) -> SkewPair {
    assert!(k >= 1, "Kronecker block parameter must be positive");
    let n = 2 * k - 1;
    let mut p = SkewPair::zero(n);
    for l in 0..k - 1 {
        let (a, b, c) = (2 * l, 2 * l + 1, 2 * l + 2);
        p.h1[(a, b)] = Scalar::one();
        p.h1[(b, a)] = -Scalar::one();
        p.h2[(b, c)] = Scalar::one();
        p.h2[(c, b)] = -Scalar::one();
    }
    p
}

/// `J_{2k,μ}`: `h₁ = [[0, J_{k,μ}], [−J_{k,μ}ᵀ, 0]]`, `h₂` with `I` in place of `J`;
/// at infinity `h₁` carries `I` and `h₂` carries `J_{k,0}`.
pub fn make_jordan_pair(k: usize, mu: &Mu) -> SkewPair {
    assert!(k >= 1, "Jordan block parameter must be positive");
    let (x1, x2) = match mu {
        Mu::Finite(m) => (jordan_cell(k, m), Mat::identity(k)),
        Mu::Infinity => (Mat::identity(k), jordan_cell(k, &Scalar::zero())),
    };
    off_diagonal_pair(&x1, &x2)
}

pub fn pair_direct_sum(ps: &[SkewPair]) -> SkewPair {
    let h1: Vec<Mat> = ps.iter().map(|p| p.h1.clone()).collect();
    let h2: Vec<Mat> = ps.iter().map(|p| p.h2.clone()).collect();
    SkewPair { h1: Mat::block_diag(&h1), h2: Mat::block_diag(&h2) }
}

/// `(sᵀh₁s, sᵀh₂s)`.
pub fn conjugate(p: &SkewPair, s: &Mat) -> Result<SkewPair> {
    if s.shape() != (p.n(), p.n()) {
        return Err(Error::DimensionMismatch(format!(
            "conjugating matrix is {:?}, pair has n = {}",
            s.shape(),
            p.n()
        )));
    }
    if s.det().is_zero() {
        return Err(Error::InvalidArgument("conjugating matrix is singular".into()));
    }
    let st = s.transpose();
    Ok(SkewPair { h1: &(&st * &p.h1) * s, h2: &(&st * &p.h2) * s })
}

/// Micro-Kronecker flag and rank (`n −` generic rank of the pencil).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MicroKronecker {
    pub flag: bool,
    pub rank: usize,
}

pub fn is_micro_kronecker(p: &SkewPair) -> MicroKronecker {
    let rho = generic_rank(&p.h1, &p.h2);
    let flag = gcd_of_minors(&p.h1, &p.h2, rho).is_nonzero_constant();
    MicroKronecker { flag, rank: p.n() - rho }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorankProfile {
    pub generic_corank: usize,
    /// Irreducible factors of the minor gcd with the corank at their roots.
    pub exceptional: Vec<(BinaryForm, usize)>,
}

pub fn corank_profile(p: &SkewPair) -> CorankProfile {
    let (generic_corank, exceptional) = exceptional_factors(&p.h1, &p.h2);
    CorankProfile { generic_corank, exceptional }
}

/// Sample points `(0:1), (1:0), (1:1), (1:2), …` as `(λ₁, λ₂)`.
pub fn sample_points() -> impl Iterator<Item = (Scalar, Scalar)> {
    let fixed = [(Scalar::zero(), Scalar::one()), (Scalar::one(), Scalar::zero())];
    fixed
        .into_iter()
        .chain((1i64..).map(|t| (Scalar::one(), Scalar::from_integer(t.into()))))
}

/// Sum of the kernels of `λ₁h₁ + λ₂h₂` over `max ε + 1` sample points, where
/// ε runs over the minimal indices.
pub fn action_subspace(p: &SkewPair) -> Result<Subspace> {
    if !is_micro_kronecker(p).flag {
        return Err(Error::NotMicroKronecker);
    }
    let n = p.n();
    let m = minimal_nullspace_basis(&p.h1, &p.h2)
        .iter()
        .map(|v| v.degree + 1)
        .max()
        .unwrap_or(0);
    let kernels: Vec<Subspace> =
        sample_points().take(m).map(|(l1, l2)| p.at(&l1, &l2).kernel()).collect();
    Ok(Subspace::sum_all(n, &kernels))
}

/// The Kronecker relation `{(a, a′) : α₁a = α₂a′}` on the action subspace A,
/// where `α_i(a) = (a, ·)_i` restricted to a complement of A. Coordinates on A
/// are those of its echelon basis.
pub fn induced_relation(p: &SkewPair) -> Result<LinearRelation> {
    let a = action_subspace(p)?;
    let comp = a.complement_in(&Subspace::full(p.n()));
    let c = Mat::from_cols(p.n(), &comp);
    let basis = a.basis();
    let alpha = |h: &Mat| &(&basis.transpose() * h) * &c;
    // α_i as (dim C) × (dim A): row j is (a_l, c_j)_i
    let m1 = alpha(&p.h1).transpose();
    let m2 = alpha(&p.h2).transpose();
    let pencil = Pencil::new(m1, m2)?;
    Ok(pencil_to_relation(&pencil))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::scalar::{int, ratio};
    use crate::relations::relation_is_kronecker;

    #[test]
    fn kron_pair_shapes() {
        assert_eq!(make_kron_pair(1), SkewPair::zero(1));
        let k3 = make_kron_pair(2);
        assert_eq!(k3.h1, Mat::from_ints(&[&[0, 1, 0], &[-1, 0, 0], &[0, 0, 0]]));
        assert_eq!(k3.h2, Mat::from_ints(&[&[0, 0, 0], &[0, 0, 1], &[0, -1, 0]]));
        let k5 = make_kron_pair(3);
        assert_eq!((k5.h1.rank(), k5.h2.rank()), (4, 4));
    }

    #[test]
    fn jordan_pair_shapes() {
        let j = make_jordan_pair(1, &Mu::Finite(int(5)));
        assert_eq!(j.h1, Mat::from_ints(&[&[0, 5], &[-5, 0]]));
        assert_eq!(j.h2, Mat::from_ints(&[&[0, 1], &[-1, 0]]));
        let j = make_jordan_pair(1, &Mu::Infinity);
        assert_eq!(j.h1, Mat::from_ints(&[&[0, 1], &[-1, 0]]));
        assert!(j.h2.is_zero());
        let j = make_jordan_pair(2, &Mu::Finite(int(0)));
        assert_eq!(j.h1.block(0, 2, 2, 2), Mat::from_ints(&[&[0, 1], &[0, 0]]));
        assert!(SkewPair::new(j.h1, j.h2).is_ok());
    }

    #[test]
    fn canonical_pairs_match_constructors() {
        let b = BlockSpec::Jordan { dim: 4, eigenvalue: Eigenvalue::rational(int(3)) };
        assert_eq!(b.canonical_pair(), make_jordan_pair(2, &Mu::Finite(int(3))));
        let b = BlockSpec::Jordan { dim: 2, eigenvalue: Eigenvalue::Infinity };
        assert_eq!(b.canonical_pair(), make_jordan_pair(1, &Mu::Infinity));
        assert_eq!(BlockSpec::Kronecker { dim: 5 }.canonical_pair(), make_kron_pair(3));
    }

    #[test]
    fn direct_sum_and_conjugate() {
        let s = pair_direct_sum(&[make_kron_pair(2), make_jordan_pair(1, &Mu::Finite(int(0)))]);
        assert_eq!(s.n(), 5);
        assert_eq!(conjugate(&s, &Mat::identity(5)).unwrap(), s);
        assert!(conjugate(&s, &Mat::zeros(5, 5)).is_err());
    }

    #[test]
    fn micro_kronecker_examples() {
        assert_eq!(is_micro_kronecker(&make_kron_pair(3)), MicroKronecker { flag: true, rank: 1 });
        let j = make_jordan_pair(2, &Mu::Finite(int(1)));
        assert_eq!(is_micro_kronecker(&j), MicroKronecker { flag: false, rank: 0 });
        let kk = pair_direct_sum(&[make_kron_pair(2), make_kron_pair(2)]);
        assert_eq!(is_micro_kronecker(&kk), MicroKronecker { flag: true, rank: 2 });
    }

    #[test]
    fn corank_profiles() {
        assert!(corank_profile(&make_kron_pair(3)).exceptional.is_empty());
        let j = make_jordan_pair(1, &Mu::Finite(int(2)));
        let prof = corank_profile(&j);
        assert_eq!(prof.generic_corank, 0);
        // degenerate at (1 : −2)
        assert_eq!(prof.exceptional, vec![(BinaryForm::new(vec![int(1), ratio(1, 2)]), 2)]);
        let jj = pair_direct_sum(&[j.clone(), j]);
        assert_eq!(corank_profile(&jj).exceptional[0].1, 4);
    }

    #[test]
    fn action_subspaces() {
        let a = action_subspace(&make_kron_pair(2)).unwrap();
        assert_eq!(a, Subspace::from_vectors(3, &[vec![int(1), int(0), int(0)], vec![int(0), int(0), int(1)]]));
        assert!(action_subspace(&make_kron_pair(1)).unwrap().is_full());
        let s = pair_direct_sum(&[make_kron_pair(2), make_kron_pair(3)]);
        let a = action_subspace(&s).unwrap();
        assert_eq!(a.dim(), 5);
        let b = a.basis();
        assert!((&(&b.transpose() * &s.h1) * b).is_zero());
        assert!((&(&b.transpose() * &s.h2) * b).is_zero());
        assert_eq!(
            action_subspace(&make_jordan_pair(1, &Mu::Infinity)),
            Err(Error::NotMicroKronecker)
        );
    }

    #[test]
    fn induced_relation_of_k3() {
        let r = induced_relation(&make_kron_pair(2)).unwrap();
        // x = −z′ in coordinates (w₀, w₂)
        assert_eq!(r.dim_v(), 2);
        assert!(r.contains_pair(&[int(1), int(0)], &[int(0), int(-1)]));
        assert!(r.contains_pair(&[int(0), int(1)], &[int(0), int(0)]));
        assert!(r.contains_pair(&[int(0), int(0)], &[int(1), int(0)]));
        assert!(!r.contains_pair(&[int(1), int(0)], &[int(0), int(1)]));
        let chk = relation_is_kronecker(&r);
        assert!(chk.kronecker);
        assert_eq!(chk.rank, 1);

        let full = induced_relation(&make_kron_pair(1)).unwrap();
        assert_eq!(full.dim(), 2);
        let kk = induced_relation(&pair_direct_sum(&[make_kron_pair(2), make_kron_pair(2)])).unwrap();
        let chk = relation_is_kronecker(&kk);
        assert!(chk.kronecker);
        assert_eq!(chk.rank, 2);
    }
}
