//! Linear relations `W ⊂ V ⊕ V`, their pencils, and the kernel family Ker_λ.
//!
//! Sign convention: `Ker_(λ₁:λ₂) = ker(λ₁P₁ − λ₂P₂)`. With `W = {(v₁, v₂) :
//! P₁v₁ = P₂v₂}` this makes the lifting `{(λ₁k, λ₂k) : k ∈ Ker_λ}` a subspace
//! of `W`, and `Ker_(1:0) = ker P₁`, `Ker_(0:1) = ker P₂`.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_core::{
    exceptional_factors, gcd_of_minors, generic_rank, BinaryForm, Mat, Scalar, Subspace,
};

/// A subspace `W ⊂ V ⊕ V`; coordinates `0..n` are the left copy, `n..2n` the right.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinearRelation {
    dim_v: usize,
    w: Subspace,
}

impl LinearRelation {
    pub fn new(dim_v: usize, w: Subspace) -> Result<Self> {
        if w.ambient_dim() != 2 * dim_v {
            return Err(Error::DimensionMismatch(format!(
                "relation on K^{dim_v} needs a subspace of K^{}, got K^{}",
                2 * dim_v,
                w.ambient_dim()
            )));
        }
        Ok(LinearRelation { dim_v, w })
    }

    /// Span of the given pairs `(v₁, v₂)`.
    pub fn from_pairs(dim_v: usize, pairs: &[(Vec<Scalar>, Vec<Scalar>)]) -> Self {
        let vecs: Vec<Vec<Scalar>> = pairs
            .iter()
            .map(|(a, b)| a.iter().chain(b).cloned().collect())
            .collect();
        LinearRelation { dim_v, w: Subspace::from_vectors(2 * dim_v, &vecs) }
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn w(&self) -> &Subspace {
        &self.w
    }

    pub fn dim(&self) -> usize {
        self.w.dim()
    }

    pub fn contains_pair(&self, v1: &[Scalar], v2: &[Scalar]) -> bool {
        let v: Vec<Scalar> = v1.iter().chain(v2).cloned().collect();
        self.w.contains_vec(&v)
    }

    fn halves(&self) -> (Mat, Mat) {
        let b = self.w.basis();
        let n = self.dim_v;
        (b.block(0, 0, n, b.cols()), b.block(n, 0, n, b.cols()))
    }

    /// `Ker_L W = {v : (v, 0) ∈ W}`.
    pub fn left_kernel(&self) -> Subspace {
        let (l, r) = self.halves();
        r.kernel().image(&l)
    }

    /// `Ker_R W = {v : (0, v) ∈ W}`.
    pub fn right_kernel(&self) -> Subspace {
        let (l, r) = self.halves();
        l.kernel().image(&r)
    }

    pub fn left_projection(&self) -> Subspace {
        self.halves().0.column_space()
    }

    pub fn right_projection(&self) -> Subspace {
        self.halves().1.column_space()
    }

    pub fn is_bisurjective(&self) -> bool {
        self.left_projection().is_full() && self.right_projection().is_full()
    }

    /// `W⁻¹ = {(v₂, v₁) : (v₁, v₂) ∈ W}`.
    pub fn inverse(&self) -> LinearRelation {
        let pairs: Vec<(Vec<Scalar>, Vec<Scalar>)> = self
            .w
            .vectors()
            .into_iter()
            .map(|v| (v[self.dim_v..].to_vec(), v[..self.dim_v].to_vec()))
            .collect();
        LinearRelation::from_pairs(self.dim_v, &pairs)
    }

    /// Image under an automorphism `t` of V: `{(tv₁, tv₂) : (v₁, v₂) ∈ W}`.
    pub fn transform(&self, t: &Mat) -> Result<LinearRelation> {
        if t.shape() != (self.dim_v, self.dim_v) {
            return Err(Error::DimensionMismatch(format!("transform must be {0}×{0}", self.dim_v)));
        }
        if t.inverse().is_none() {
            return Err(Error::InvalidArgument("transform is singular".into()));
        }
        let tt = Mat::block_diag(&[t.clone(), t.clone()]);
        Ok(LinearRelation { dim_v: self.dim_v, w: self.w.image(&tt) })
    }

    /// Restriction to a subspace `S ⊂ V`: `W ∩ (S ⊕ S)` as a relation on S in the
    /// coordinates of S's echelon basis.
    pub fn restrict(&self, s: &Subspace) -> LinearRelation {
        let n = self.dim_v;
        let d = s.dim();
        let ss = Mat::block_diag(&[s.basis().clone(), s.basis().clone()]);
        let both = Subspace::span_of(&ss).intersect(&self.w).expect("same ambient");
        let pairs: Vec<(Vec<Scalar>, Vec<Scalar>)> = both
            .vectors()
            .iter()
            .map(|v| {
                let a = s.coords(&v[..n]).expect("inside S");
                let b = s.coords(&v[n..]).expect("inside S");
                (a, b)
            })
            .collect();
        LinearRelation::from_pairs(d, &pairs)
    }
}

/// A pair of maps `P₁, P₂ : V → V′`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Pencil {
    pub p1: Mat,
    pub p2: Mat,
}

impl Pencil {
    pub fn new(p1: Mat, p2: Mat) -> Result<Self> {
        if p1.shape() != p2.shape() {
            return Err(Error::DimensionMismatch(format!(
                "pencil maps of shapes {:?} and {:?}",
                p1.shape(),
                p2.shape()
            )));
        }
        Ok(Pencil { p1, p2 })
    }

    /// `dim V`.
    pub fn dim_v(&self) -> usize {
        self.p1.cols()
    }

    /// `dim V′`.
    pub fn dim_target(&self) -> usize {
        self.p1.rows()
    }

    /// `λ₁P₁ − λ₂P₂`.
    pub fn at(&self, pt: &ProjPoint) -> Mat {
        self.p1.combine(&pt.lambda1, &self.p2, &-&pt.lambda2)
    }

    /// The same family written as `λ₁A + λ₂B` (i.e. `A = P₁`, `B = −P₂`).
    pub fn plus_form(&self) -> (Mat, Mat) {
        (self.p1.clone(), -&self.p2)
    }

    pub fn is_degenerate(&self) -> bool {
        self.dim_target() > 0 && self.dim_v() > 0 && self.p1.is_zero() && self.p2.is_zero()
    }
}

/// A point `(λ₁:λ₂)` of P¹, normalized to `(1:λ)` or `(0:1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    lambda1: Scalar,
    lambda2: Scalar,
}

impl ProjPoint {
    pub fn new(l1: Scalar, l2: Scalar) -> Result<Self> {
        if l1.is_zero() && l2.is_zero() {
            return Err(Error::InvalidArgument("(0:0) is not a point of P¹".into()));
        }
        if l1.is_zero() {
            return Ok(ProjPoint { lambda1: Scalar::zero(), lambda2: Scalar::one() });
        }
        Ok(ProjPoint { lambda2: l2 / &l1, lambda1: Scalar::one() })
    }

    /// `(1:t)`.
    pub fn affine(t: Scalar) -> Self {
        ProjPoint { lambda1: Scalar::one(), lambda2: t }
    }

    /// `(0:1)`.
    pub fn infinity() -> Self {
        ProjPoint { lambda1: Scalar::zero(), lambda2: Scalar::one() }
    }

    pub fn lambda1(&self) -> &Scalar {
        &self.lambda1
    }

    pub fn lambda2(&self) -> &Scalar {
        &self.lambda2
    }

    pub fn is_infinity(&self) -> bool {
        self.lambda1.is_zero()
    }

    /// Action of an invertible 2×2 matrix `g = [[a, b], [c, d]]` on P¹, chosen so
    /// that `ker_point(mobius_act(p, g), pt) = ker_point(p, pt.mobius(g⁻¹))`.
    /// Concretely `g·(λ₁:λ₂) = (dλ₁ + cλ₂ : bλ₁ + aλ₂)`.
    pub fn mobius(&self, g: &Mat) -> Result<ProjPoint> {
        let (a, b, c, d) = mobius_entries(g)?;
        let l1 = &d * &self.lambda1 + &c * &self.lambda2;
        let l2 = &b * &self.lambda1 + &a * &self.lambda2;
        ProjPoint::new(l1, l2)
    }

    /// Whether the binary form vanishes here.
    pub fn is_root_of(&self, f: &BinaryForm) -> bool {
        f.eval(&self.lambda1, &self.lambda2).is_zero()
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{})", self.lambda1, self.lambda2)
    }
}

fn mobius_entries(g: &Mat) -> Result<(Scalar, Scalar, Scalar, Scalar)> {
    if g.shape() != (2, 2) {
        return Err(Error::DimensionMismatch("Möbius matrix must be 2×2".into()));
    }
    if g.det().is_zero() {
        return Err(Error::SingularMobius);
    }
    Ok((g[(0, 0)].clone(), g[(0, 1)].clone(), g[(1, 0)].clone(), g[(1, 1)].clone()))
}

/// `V′ = V / Ker_L`, `P₁` = projection, `P₂ = α ∘ (projection mod Ker_R)` where
/// `α : V/Ker_R → V/Ker_L` is induced by W.
pub fn relation_to_pencil(r: &LinearRelation) -> Result<Pencil> {
    if !r.left_projection().is_full() {
        return Err(Error::NotBisurjective("left"));
    }
    if !r.right_projection().is_full() {
        return Err(Error::NotBisurjective("right"));
    }
    let n = r.dim_v;
    let ker_l = r.left_kernel();
    // rows of P₁: a basis of the annihilator of Ker_L (quotient coordinates)
    let p1 = ker_l.annihilator().basis().transpose();
    let (l, rt) = r.halves();
    // a W-partner of e_j: (L c, R c) with R c = e_j
    let partners = rt.solve(&Mat::identity(n)).expect("right projection is onto");
    let p2 = &(&p1 * &l) * &partners;
    Ok(Pencil { p1, p2 })
}

/// `W = {(v₁, v₂) : P₁v₁ = P₂v₂}`.
pub fn pencil_to_relation(p: &Pencil) -> LinearRelation {
    let n = p.dim_v();
    let m = p.p1.hstack(&-&p.p2);
    LinearRelation { dim_v: n, w: m.kernel() }
}

/// `ker(λ₁P₁ − λ₂P₂)`.
pub fn ker_point(p: &Pencil, pt: &ProjPoint) -> Subspace {
    p.at(pt).kernel()
}

/// Result of the Kronecker test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KroneckerCheck {
    pub kronecker: bool,
    /// `dim V − generic rank`: the common kernel dimension when Kronecker.
    pub rank: usize,
    /// Both maps vanish on `V ≠ 0` with `V′ ≠ 0`.
    pub degenerate: bool,
}

/// Kronecker iff the gcd of the maximal nonvanishing minors is a nonzero constant.
pub fn is_kronecker(p: &Pencil) -> KroneckerCheck {
    let (a, b) = p.plus_form();
    let rho = generic_rank(&a, &b);
    let rank = p.dim_v() - rho;
    if p.is_degenerate() {
        return KroneckerCheck { kronecker: false, rank, degenerate: true };
    }
    let kronecker = gcd_of_minors(&a, &b, rho).is_nonzero_constant();
    KroneckerCheck { kronecker, rank, degenerate: false }
}

/// Pencil onto the quotient `(V ⊕ V)/W`: writing the quotient map as `[Q₁ | Q₂]`,
/// `P₁ = Q₁` and `P₂ = −Q₂`. Defined for every relation; its kernels are
/// `{v : (λ₁v, λ₂v) ∈ W}`, and for bisurjective W it is isomorphic to
/// [`relation_to_pencil`].
pub fn quotient_pencil(r: &LinearRelation) -> Pencil {
    let n = r.dim_v;
    let q = r.w.annihilator().basis().transpose();
    let rows = q.rows();
    Pencil { p1: q.block(0, 0, rows, n), p2: -&q.block(0, n, rows, n) }
}

/// Kronecker test for an arbitrary relation (through [`quotient_pencil`]).
pub fn relation_is_kronecker(r: &LinearRelation) -> KroneckerCheck {
    is_kronecker(&quotient_pencil(r))
}

/// Kernels along a list of points, plus the exceptional set when not Kronecker.
#[derive(Clone, Debug)]
pub struct SpectralCurve {
    pub kernels: Vec<Subspace>,
    pub kronecker: bool,
    pub rank: usize,
    /// Irreducible factors (relation sign convention) with the kernel dimension at their roots.
    pub exceptional: Vec<(BinaryForm, usize)>,
}

pub fn spectral_curve(p: &Pencil, pts: &[ProjPoint]) -> SpectralCurve {
    let check = is_kronecker(p);
    let kernels = pts.iter().map(|pt| ker_point(p, pt)).collect();
    let exceptional = if check.kronecker || check.degenerate {
        Vec::new()
    } else {
        let (a, b) = p.plus_form();
        exceptional_factors(&a, &b).1
    };
    SpectralCurve { kernels, kronecker: check.kronecker, rank: check.rank, exceptional }
}

/// Span of the liftings `{(λ₁k, λ₂k)}` of the supplied kernels.
pub fn reconstruct_from_kernels(
    dim_v: usize,
    data: &[(ProjPoint, Subspace)],
) -> Result<LinearRelation> {
    for (i, (pi, _)) in data.iter().enumerate() {
        if data[..i].iter().any(|(pj, _)| pj == pi) {
            return Err(Error::InvalidArgument(format!("repeated point {pi:?}")));
        }
    }
    let mut pairs = Vec::new();
    for (pt, k) in data {
        if k.ambient_dim() != dim_v {
            return Err(Error::DimensionMismatch(format!(
                "kernel in K^{} for a relation on K^{dim_v}",
                k.ambient_dim()
            )));
        }
        for v in k.vectors() {
            let a = v.iter().map(|x| x * &pt.lambda1).collect();
            let b = v.iter().map(|x| x * &pt.lambda2).collect();
            pairs.push((a, b));
        }
    }
    Ok(LinearRelation::from_pairs(dim_v, &pairs))
}

/// `(P₁, P₂) ↦ (aP₁ + bP₂, cP₁ + dP₂)`.
pub fn mobius_act(p: &Pencil, g: &Mat) -> Result<Pencil> {
    let (a, b, c, d) = mobius_entries(g)?;
    Ok(Pencil { p1: p.p1.combine(&a, &p.p2, &b), p2: p.p1.combine(&c, &p.p2, &d) })
}

pub fn relation_direct_sum(rs: &[LinearRelation]) -> LinearRelation {
    let n: usize = rs.iter().map(|r| r.dim_v).sum();
    let mut pairs = Vec::new();
    let mut off = 0;
    for r in rs {
        for v in r.w.vectors() {
            let mut a = vec![Scalar::zero(); n];
            let mut b = vec![Scalar::zero(); n];
            a[off..off + r.dim_v].clone_from_slice(&v[..r.dim_v]);
            b[off..off + r.dim_v].clone_from_slice(&v[r.dim_v..]);
            pairs.push((a, b));
        }
        off += r.dim_v;
    }
    LinearRelation::from_pairs(n, &pairs)
}

/// The rank-1 Kronecker block of dimension n: `(v, v′) ∈ W` iff `v_k = v′_{k+1}`.
pub fn kronecker_relation(n: usize) -> LinearRelation {
    assert!(n >= 1);
    let mut m = Mat::zeros(n - 1, 2 * n);
    for k in 0..n - 1 {
        m[(k, k)] = Scalar::one();
        m[(k, n + k + 1)] = -Scalar::one();
    }
    LinearRelation { dim_v: n, w: m.kernel() }
}

/// Jordan block relation whose kernel jumps exactly at `mu`:
/// `(1:μ)` gives the graph `{(v, J_{n,μ}v)}`; `(0:1)` gives the inverse of the
/// graph of the nilpotent cell.
pub fn jordan_relation(n: usize, mu: &ProjPoint) -> LinearRelation {
    assert!(n >= 1);
    let (ev, inverse) = if mu.is_infinity() { (Scalar::zero(), true) } else { (mu.lambda2.clone(), false) };
    let j = jordan_cell(n, &ev);
    let pairs: Vec<(Vec<Scalar>, Vec<Scalar>)> = (0..n)
        .map(|c| {
            let mut e = vec![Scalar::zero(); n];
            e[c] = Scalar::one();
            let je = j.col(c);
            if inverse {
                (je, e)
            } else {
                (e, je)
            }
        })
        .collect();
    LinearRelation::from_pairs(n, &pairs)
}

/// `μ` on the diagonal, ones on the superdiagonal.
pub fn jordan_cell(n: usize, mu: &Scalar) -> Mat {
    Mat::from_fn(n, n, |i, j| {
        if i == j {
            mu.clone()
        } else if j == i + 1 {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    })
}
