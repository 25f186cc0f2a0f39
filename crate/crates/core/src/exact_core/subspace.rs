//! Subspaces of K^n held in reduced column-echelon form.
//!
//! The echelon basis is unique, so derived `PartialEq` is subspace equality.

use num_traits::Zero;

use super::mat::Mat;
use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Mat,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Mat::zeros(ambient, 0), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: Mat::identity(ambient), pivots: (0..ambient).collect() }
    }

    /// Span of the given vectors (each of length `ambient`).
    pub fn from_vectors(ambient: usize, vecs: &[Vec<Scalar>]) -> Self {
        if vecs.is_empty() {
            return Self::zero(ambient);
        }
        let stacked = Mat::from_rows(vecs.to_vec(), ambient);
        let rr = stacked.rref();
        let d = rr.pivots.len();
        let basis = rr.reduced.block(0, 0, d, ambient).transpose();
        Subspace { ambient, basis, pivots: rr.pivots }
    }

    /// Span of the columns of `m`.
    pub fn span_of(m: &Mat) -> Self {
        m.column_space()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Columns form the canonical basis.
    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.columns()
    }

    /// Pivot rows of the echelon basis.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.ambient);
        let c: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let back = self.basis.mul_vec(&c);
        (back == v).then_some(c)
    }

    pub fn contains_vec(&self, v: &[Scalar]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        other.ambient == self.ambient && other.vectors().iter().all(|v| self.contains_vec(v))
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of K^{} and K^{}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let mut vs = self.vectors();
        vs.extend(other.vectors());
        Ok(Subspace::from_vectors(self.ambient, &vs))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient));
        }
        // A·u = B·v  ⇔  [A | −B]·(u; v) = 0
        let stacked = self.basis.hstack(&-&other.basis);
        let ker = stacked.kernel();
        let d = self.dim();
        let vs: Vec<Vec<Scalar>> = ker
            .vectors()
            .iter()
            .map(|uv| self.basis.mul_vec(&uv[..d]))
            .collect();
        Ok(Subspace::from_vectors(self.ambient, &vs))
    }

    /// Sum of many subspaces of the same ambient space.
    pub fn sum_all<'a>(ambient: usize, parts: impl IntoIterator<Item = &'a Subspace>) -> Subspace {
        let mut vs = Vec::new();
        for p in parts {
            assert_eq!(p.ambient, ambient);
            vs.extend(p.vectors());
        }
        Subspace::from_vectors(ambient, &vs)
    }

    /// Standard basis vectors (in index order) completing `self` to K^n.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient).filter(|i| !self.pivots.contains(i)).collect()
    }

    /// A complement of `self` inside `outer` (greedy over `outer`'s echelon basis).
    pub fn complement_in(&self, outer: &Subspace) -> Vec<Vec<Scalar>> {
        let mut acc = self.vectors();
        let mut cur = self.clone();
        let mut out = Vec::new();
        for v in outer.vectors() {
            if !cur.contains_vec(&v) {
                acc.push(v.clone());
                out.push(v);
                cur = Subspace::from_vectors(self.ambient, &acc);
            }
        }
        out
    }

    /// Annihilator `{φ : φ(v) = 0 ∀ v ∈ self}` as a subspace of the dual (rows as vectors).
    pub fn annihilator(&self) -> Subspace {
        self.basis.transpose().kernel()
    }

    /// Image under a linear map.
    pub fn image(&self, m: &Mat) -> Subspace {
        assert_eq!(m.cols(), self.ambient);
        (m * &self.basis).column_space()
    }

    /// Preimage `{v : m·v ∈ self}`.
    pub fn preimage(&self, m: &Mat) -> Subspace {
        assert_eq!(m.rows(), self.ambient);
        // m·v ∈ S  ⇔  ann(S)ᵀ·m·v = 0
        let ann = self.annihilator();
        (&ann.basis().transpose() * m).kernel()
    }

    pub fn is_independent_of(&self, other: &Subspace) -> bool {
        self.intersect(other).map(|s| s.is_zero()).unwrap_or(false)
    }
}

/// True iff `vecs` are linearly independent.
pub fn independent(ambient: usize, vecs: &[Vec<Scalar>]) -> bool {
    Subspace::from_vectors(ambient, vecs).dim() == vecs.len()
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}
