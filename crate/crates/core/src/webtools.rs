//! Decompositions of Kronecker relations: the isotypic filtration, explicit
//! splitting into blocks, W-chains and the elementary operations relating
//! different choices of isotypic blocks.
//!
//! A W-chain `v₁,…,v_l` has `(0, v₁), (v₁, v₂), …, (v_l, 0) ∈ W`; equivalently
//! `Σ λ^{i−1} v_i` lies in `Ker_(λ:1)` identically in λ. Kernels use the
//! relation convention `Ker_(λ₁:λ₂) = {v : (λ₁v, λ₂v) ∈ W}`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_core::{minimal_nullspace_basis, Mat, Scalar, Subspace};
use crate::relations::{ker_point, quotient_pencil, relation_is_kronecker, LinearRelation, Pencil, ProjPoint};
use crate::skew_pairs::{make_kron_pair, pair_direct_sum, SkewPair};

/// `F₁ ⊆ F₂ ⊆ … ⊆ F_n` where `F_k` is the span of all blocks of dimension ≤ k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    pub ambient_dim: usize,
    /// `steps[k − 1] = F_k` for `k = 1..=ambient_dim`.
    pub steps: Vec<Subspace>,
}

impl Filtration {
    /// `F_k`; `F_0 = 0` and `F_k = V` beyond the last step.
    pub fn step(&self, k: usize) -> Subspace {
        match k {
            0 => Subspace::zero(self.ambient_dim),
            k if k > self.steps.len() => self.steps.last().cloned().unwrap_or_else(|| Subspace::zero(self.ambient_dim)),
            k => self.steps[k - 1].clone(),
        }
    }

    /// `(k, number of blocks of dimension k)` for each occurring k.
    pub fn block_counts(&self) -> Vec<(usize, usize)> {
        (1..=self.steps.len())
            .filter_map(|k| {
                let jump = self.step(k).dim() - self.step(k - 1).dim();
                (jump > 0).then_some((k, jump / k))
            })
            .collect()
    }

    /// Largest block dimension (0 on the zero space).
    pub fn max_block_dim(&self) -> usize {
        self.block_counts().last().map_or(0, |&(k, _)| k)
    }
}

/// `(1:start), (1:start+1), …` — `count` affine points.
pub fn schedule(start: i64, count: usize) -> Vec<ProjPoint> {
    (0..count as i64).map(|i| ProjPoint::affine(Scalar::from_integer((start + i).into()))).collect()
}

fn kernels(q: &Pencil, pts: &[ProjPoint]) -> Vec<Subspace> {
    pts.iter().map(|p| ker_point(q, p)).collect()
}

/// Kronecker in the sense used here: constant kernel dimension on P¹ and
/// `V` spanned by the kernels.
fn require_kronecker(r: &LinearRelation) -> Result<Pencil> {
    let q = quotient_pencil(r);
    if !relation_is_kronecker(r).kronecker {
        return Err(Error::NotKronecker);
    }
    let n = r.dim_v();
    let span = Subspace::sum_all(n, &kernels(&q, &schedule(0, n + 1)));
    if !span.is_full() {
        return Err(Error::NotKronecker);
    }
    Ok(q)
}

/// Isotypic filtration on the default schedule `λ_i = i`.
pub fn isotypic_filtration(r: &LinearRelation) -> Result<Filtration> {
    isotypic_filtration_with(r, &schedule(0, r.dim_v() + 1))
}

/// `F_k Ker_{λ_i} = Ker_{λ_i} ∩ Σ_{j ≠ i, j ≤ k} Ker_{λ_j}` and
/// `F_k V = Σ_{i < k} F_k Ker_{λ_i}`, from `dim V + 1` distinct points.
pub fn isotypic_filtration_with(r: &LinearRelation, pts: &[ProjPoint]) -> Result<Filtration> {
    let n = r.dim_v();
    if pts.len() < n + 1 {
        return Err(Error::InvalidArgument(format!("need {} points, got {}", n + 1, pts.len())));
    }
    for (i, p) in pts.iter().enumerate() {
        if pts[..i].contains(p) {
            return Err(Error::InvalidArgument(format!("repeated point {p:?}")));
        }
    }
    let q = require_kronecker(r)?;
    let ks = kernels(&q, &pts[..=n]);
    let steps = (1..=n)
        .map(|k| {
            let parts: Vec<Subspace> = (0..k)
                .map(|i| {
                    let others = Subspace::sum_all(n, (0..=k).filter(|&j| j != i).map(|j| &ks[j]));
                    ks[i].intersect(&others).expect("same ambient")
                })
                .collect();
            Subspace::sum_all(n, &parts)
        })
        .collect();
    Ok(Filtration { ambient_dim: n, steps })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WChain {
    pub vectors: Vec<Vec<Scalar>>,
}

impl WChain {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// `Σ λ^{i−1} v_i` evaluated at `t`.
    pub fn eval(&self, t: &Scalar, dim: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); dim];
        let mut pw = Scalar::one();
        for v in &self.vectors {
            for (o, x) in out.iter_mut().zip(v) {
                *o += x * &pw;
            }
            pw *= t;
        }
        out
    }
}

pub fn is_w_chain(r: &LinearRelation, vs: &[Vec<Scalar>]) -> bool {
    let n = r.dim_v();
    if vs.iter().any(|v| v.len() != n) {
        return false;
    }
    let zero = vec![Scalar::zero(); n];
    let padded: Vec<&[Scalar]> =
        std::iter::once(zero.as_slice()).chain(vs.iter().map(Vec::as_slice)).chain(std::iter::once(zero.as_slice())).collect();
    padded.windows(2).all(|w| r.contains_pair(w[0], w[1]))
}

/// A basis of the space of W-chains of length `len` with all vectors in `s`.
pub fn chains_in(r: &LinearRelation, s: &Subspace, len: usize) -> Vec<WChain> {
    let n = r.dim_v();
    let d = s.dim();
    if len == 0 || d == 0 {
        return Vec::new();
    }
    let q = quotient_pencil(r);
    let a = &q.p1 * s.basis();
    let b = -&(&q.p2 * s.basis());
    let m = a.rows();
    // pairs (v_i, v_{i+1}) for i = 0..=len with v_0 = v_{len+1} = 0
    let mut sys = Mat::zeros(m * (len + 1), d * len);
    for i in 0..=len {
        if i >= 1 {
            sys.set_block(m * i, d * (i - 1), &a);
        }
        if i < len {
            sys.set_block(m * i, d * i, &b);
        }
    }
    sys.kernel()
        .vectors()
        .into_iter()
        .map(|sol| WChain { vectors: sol.chunks(d).map(|c| s.basis().mul_vec(c)).collect() })
        .filter(|_| n > 0)
        .collect()
}

/// A block of a decomposition: its span, a W-chain basis and the restricted relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPart {
    pub span: Subspace,
    pub chain: WChain,
    /// `W ∩ (span ⊕ span)` in the coordinates of the span's echelon basis.
    pub relation: LinearRelation,
}

impl BlockPart {
    pub fn dim(&self) -> usize {
        self.span.dim()
    }
}

fn block_part(r: &LinearRelation, span: Subspace) -> Result<BlockPart> {
    let k = span.dim();
    let chain = chains_in(r, &span, k)
        .into_iter()
        .next()
        .ok_or_else(|| Error::InternalVerificationFailure("block carries no full-length W-chain".into()))?;
    let relation = r.restrict(&span);
    Ok(BlockPart { span, chain, relation })
}

/// Checks that blocks are independent, span V, are single Kronecker blocks,
/// and that their relations sum back to W.
fn verify_split(r: &LinearRelation, blocks: &[BlockPart]) -> Result<()> {
    let n = r.dim_v();
    let total: usize = blocks.iter().map(BlockPart::dim).sum();
    let spans: Vec<&Subspace> = blocks.iter().map(|b| &b.span).collect();
    if total != n || Subspace::sum_all(n, spans.iter().copied()).dim() != n {
        return Err(Error::InternalVerificationFailure("blocks do not form a direct sum of V".into()));
    }
    let mut w = Subspace::zero(2 * n);
    for b in blocks {
        let check = relation_is_kronecker(&b.relation);
        if !check.kronecker || check.rank != 1 {
            return Err(Error::InternalVerificationFailure(format!(
                "block of dimension {} is not a single Kronecker block",
                b.dim()
            )));
        }
        let ss = Subspace::span_of(&Mat::block_diag(&[b.span.basis().clone(), b.span.basis().clone()]));
        w = w.sum(&ss.intersect(r.w())?)?;
    }
    if &w != r.w() {
        return Err(Error::InternalVerificationFailure("blocks do not reconstruct the relation".into()));
    }
    Ok(())
}

/// Splits a Kronecker relation into blocks: chains from a minimal polynomial
/// basis give the isotypic blocks, each of which is split along the echelon
/// lines of its kernel at `(1:0)`. Output is ordered by block dimension.
pub fn split_into_blocks(r: &LinearRelation) -> Result<Vec<BlockPart>> {
    let q = require_kronecker(r)?;
    let n = r.dim_v();
    let basis = minimal_nullspace_basis(&q.p1, &q.p2);
    let mut layers: Vec<(usize, Vec<Vec<Scalar>>)> = Vec::new();
    for v in basis {
        let k = v.degree + 1;
        match layers.last_mut() {
            Some((d, vs)) if *d == k => vs.extend(v.coeffs),
            _ => layers.push((k, v.coeffs)),
        }
    }
    let mut out = Vec::new();
    for (_, vs) in layers {
        let layer = Subspace::from_vectors(n, &vs);
        let local = r.restrict(&layer);
        for part in split_isotypic(&local, None)? {
            let span = Subspace::span_of(&(layer.basis() * part.span.basis()));
            out.push(block_part(r, span)?);
        }
    }
    verify_split(r, &out)?;
    Ok(out)
}

/// Splits a relation whose blocks all have the same dimension k, one block
/// through each given line of `Ker_(1:0)` (default: its echelon basis).
///
/// With `Λ₀ = {(1:0), …, (1:k−1)}`, `V = ⊕_{λ∈Λ₀} K_λ`; the projections `π_λ`
/// identify each `K_λ` with `K_(1:k)`, and the block through a line `Y` is
/// spanned by `π_λ(w)` for the `w ∈ K_(1:k)` with `π_(1:0)(w) ∈ Y`.
pub fn split_isotypic(r: &LinearRelation, lines: Option<&[Vec<Scalar>]>) -> Result<Vec<BlockPart>> {
    let q = require_kronecker(r)?;
    let n = r.dim_v();
    if n == 0 {
        return Ok(Vec::new());
    }
    let filt = isotypic_filtration(r)?;
    let counts = filt.block_counts();
    let &[(k, m)] = counts.as_slice() else {
        return Err(Error::InvalidArgument("relation is not isotypic".into()));
    };
    let pts = schedule(0, k + 1);
    let ks = kernels(&q, &pts);
    let k0 = &ks[0];
    let ys: Vec<Vec<Scalar>> = match lines {
        None => k0.vectors(),
        Some(ls) => {
            let ok = ls.len() == m
                && ls.iter().all(|l| l.len() == n && k0.contains_vec(l))
                && Subspace::from_vectors(n, ls).dim() == m;
            if !ok {
                return Err(Error::InvalidArgument(format!("lines must be a basis of the {m}-dimensional kernel at (1:0)")));
            }
            ls.to_vec()
        }
    };
    // columns: bases of K_λ for λ ∈ Λ₀, stacked
    let mcat = ks[..k].iter().fold(Mat::zeros(n, 0), |acc, s| acc.hstack(s.basis()));
    let minv = mcat.inverse().ok_or_else(|| {
        Error::InternalVerificationFailure("kernels at k points do not form a direct sum".into())
    })?;
    let tilde = ks[k].basis();
    // coordinates of K_λ̃ in the split, and the π_(1:0) block
    let coords = &minv * tilde;
    let pi0 = coords.block(0, 0, m, m);
    let mut out = Vec::with_capacity(m);
    for y in &ys {
        let target = k0.coords(y).expect("line inside the kernel");
        let z = pi0
            .solve(&Mat::col_vector(&target))
            .ok_or_else(|| Error::InternalVerificationFailure("π_(1:0) is not onto on K_λ̃".into()))?;
        let c = coords.mul_vec(&z.col(0));
        let comps: Vec<Vec<Scalar>> =
            (0..k).map(|l| ks[l].basis().mul_vec(&c[l * m..(l + 1) * m])).collect();
        let span = Subspace::from_vectors(n, &comps);
        if span.dim() != k {
            return Err(Error::InternalVerificationFailure("transported line spans a degenerate block".into()));
        }
        out.push(block_part(r, span)?);
    }
    verify_split(r, &out)?;
    Ok(out)
}

/// `v_i ↦ v_i + C·v′_{i−shift}` (1-based, `v′` extended by zero), for W-chains
/// `chain` of length l and `other` of length m ≤ l, `0 ≤ shift ≤ l − m`.
pub fn elementary_op(
    r: &LinearRelation,
    chain: &WChain,
    other: &WChain,
    shift: usize,
    c: &Scalar,
) -> Result<WChain> {
    let (l, m) = (chain.len(), other.len());
    if m > l || shift > l - m {
        return Err(Error::InvalidArgument(format!("shift {shift} outside 0..={} for chains of lengths {l}, {m}", l.saturating_sub(m))));
    }
    if !is_w_chain(r, &chain.vectors) || !is_w_chain(r, &other.vectors) {
        return Err(Error::InvalidArgument("elementary operations act on W-chains".into()));
    }
    let mut vectors = chain.vectors.clone();
    for (j, w) in other.vectors.iter().enumerate() {
        for (x, y) in vectors[j + shift].iter_mut().zip(w) {
            *x += c * y;
        }
    }
    if !is_w_chain(r, &vectors) {
        return Err(Error::InternalVerificationFailure("elementary operation left the chain space".into()));
    }
    Ok(WChain { vectors })
}

/// Outcome of the isotypic-block criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotypicCheck {
    pub k: usize,
    /// `s ⊕ F_{k−1}V = V`.
    pub complement: bool,
    /// `s` is spanned by W-chains of length k inside it.
    pub chains: bool,
    /// `P₁s = P₂s`.
    pub images_equal: bool,
    /// `P₁(F_{k−1}V) ∩ P₁s = 0`.
    pub images_disjoint: bool,
}

impl IsotypicCheck {
    pub fn holds(&self) -> bool {
        self.complement && self.chains && self.images_equal && self.images_disjoint
    }
}

/// Whether `s` is a top isotypic block of `r` (k = largest block dimension).
pub fn verify_isotypic_block(r: &LinearRelation, s: &Subspace) -> Result<IsotypicCheck> {
    let n = r.dim_v();
    if s.ambient_dim() != n {
        return Err(Error::DimensionMismatch(format!("subspace must live in K^{n}")));
    }
    let q = require_kronecker(r)?;
    let filt = isotypic_filtration(r)?;
    let k = filt.max_block_dim();
    let lower = filt.step(k.saturating_sub(1));
    let complement = s.dim() + lower.dim() == n && s.intersect(&lower)?.is_zero();
    let chain_span = Subspace::sum_all(
        n,
        &chains_in(r, s, k)
            .iter()
            .map(|c| Subspace::from_vectors(n, &c.vectors))
            .collect::<Vec<_>>(),
    );
    let chains = &chain_span == s;
    let p1s = s.image(&q.p1);
    let images_equal = p1s == s.image(&q.p2);
    let images_disjoint = lower.image(&q.p1).intersect(&p1s)?.is_zero();
    Ok(IsotypicCheck { k, complement, chains, images_equal, images_disjoint })
}

/// One elementary operation applied to chain `chain` of the source block,
/// adding `c·λ^shift` times the chain of lower block `lower`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryStep {
    pub chain: usize,
    pub lower: usize,
    pub shift: usize,
    pub c: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryPath {
    pub source_chains: Vec<WChain>,
    /// Chains of the blocks of `F_{k−1}V`, indexed by [`ElementaryStep::lower`].
    pub lower_chains: Vec<WChain>,
    pub steps: Vec<ElementaryStep>,
    /// The chains after all steps; they span the target block.
    pub result: Vec<WChain>,
}

/// Transforms the top isotypic block `from` into `to` by elementary
/// operations: first-kind operations match the parts in `Ker_(0:1)`, then the
/// difference of corresponding chains is `λq` with `q` a chain in
/// `F_{k−1}V`, whose block components are polynomial multiples of the lower
/// block chains.
pub fn elementary_path(r: &LinearRelation, from: &Subspace, to: &Subspace) -> Result<ElementaryPath> {
    for s in [from, to] {
        if !verify_isotypic_block(r, s)?.holds() {
            return Err(Error::InvalidArgument("both subspaces must be top isotypic blocks".into()));
        }
    }
    let n = r.dim_v();
    let filt = isotypic_filtration(r)?;
    let k = filt.max_block_dim();
    let lower_space = filt.step(k - 1);
    let lower_chains: Vec<WChain> = if lower_space.is_zero() {
        Vec::new()
    } else {
        let local = r.restrict(&lower_space);
        split_into_blocks(&local)?
            .into_iter()
            .map(|b| WChain {
                vectors: b.chain.vectors.iter().map(|v| lower_space.basis().mul_vec(v)).collect(),
            })
            .collect()
    };
    // all lower chain vectors, flattened, form a basis of F_{k−1}V
    let mut flat_index = Vec::new();
    let mut cols = Vec::new();
    for (a, ch) in lower_chains.iter().enumerate() {
        for (t, v) in ch.vectors.iter().enumerate() {
            flat_index.push((a, t));
            cols.push(v.clone());
        }
    }
    let lower_basis = Mat::from_cols(n, &cols);
    let firsts = Mat::from_cols(n, &lower_chains.iter().map(|c| c.vectors[0].clone()).collect::<Vec<_>>());

    let q = quotient_pencil(r);
    let k01 = ker_point(&q, &ProjPoint::infinity());
    let to_k01 = to.intersect(&k01)?;
    let to_chains = chains_in(r, to, k);
    let to_firsts = Mat::from_cols(n, &to_chains.iter().map(|c| c.vectors[0].clone()).collect::<Vec<_>>());

    let source_chains = chains_in(r, from, k);
    let mut steps = Vec::new();
    let mut result = Vec::with_capacity(source_chains.len());
    for (j, src) in source_chains.iter().enumerate() {
        let mut cur = src.clone();
        // first kind: v₁ + Σ C_α p_α,1 ∈ to ∩ Ker_(0:1)
        let sys = to_k01.basis().hstack(&-&firsts);
        let sol = sys
            .solve(&Mat::col_vector(&cur.vectors[0]))
            .ok_or_else(|| Error::InternalVerificationFailure("pivot spaces do not match modulo F_{k−1}".into()))?
            .col(0);
        let d = to_k01.dim();
        for (a, c) in sol[d..].iter().enumerate() {
            if !c.is_zero() {
                cur = elementary_op(r, &cur, &lower_chains[a], 0, c)?;
                steps.push(ElementaryStep { chain: j, lower: a, shift: 0, c: c.clone() });
            }
        }
        // the chain of `to` with the same first vector
        let x = to_firsts
            .solve(&Mat::col_vector(&cur.vectors[0]))
            .ok_or_else(|| Error::InternalVerificationFailure("no target chain through the pivot".into()))?
            .col(0);
        let mut target = vec![vec![Scalar::zero(); n]; k];
        for (c, ch) in x.iter().zip(&to_chains) {
            for (t, v) in target.iter_mut().zip(&ch.vectors) {
                for (tt, vv) in t.iter_mut().zip(v) {
                    *tt += c * vv;
                }
            }
        }
        // λq = target − cur, q_i = difference at position i + 1
        let qs: Vec<Vec<Scalar>> = (1..k)
            .map(|i| target[i].iter().zip(&cur.vectors[i]).map(|(a, b)| a - b).collect())
            .collect();
        for (i, qi) in qs.iter().enumerate() {
            if qi.iter().all(Zero::is_zero) {
                continue;
            }
            let coords = lower_basis
                .solve(&Mat::col_vector(qi))
                .ok_or_else(|| Error::InternalVerificationFailure("chain difference leaves F_{k−1}V".into()))?
                .col(0);
            // the coefficient of p_α,1 in q_{n+1} is C_n for block α
            for ((a, t), c) in flat_index.iter().zip(&coords) {
                if *t == 0 && !c.is_zero() {
                    let shift = i + 1;
                    cur = elementary_op(r, &cur, &lower_chains[*a], shift, c)?;
                    steps.push(ElementaryStep { chain: j, lower: *a, shift, c: c.clone() });
                }
            }
        }
        if cur.vectors != target {
            return Err(Error::InternalVerificationFailure("elementary operations missed the target chain".into()));
        }
        result.push(cur);
    }
    let reached = Subspace::sum_all(
        n,
        &result.iter().map(|c| Subspace::from_vectors(n, &c.vectors)).collect::<Vec<_>>(),
    );
    if &reached != to {
        return Err(Error::InternalVerificationFailure("transformed chains do not span the target".into()));
    }
    Ok(ElementaryPath { source_chains, lower_chains, steps, result })
}

/// Direct sum of the Kronecker models `K_{2k−1}` for the given `k`s.
pub fn flat_model(ks: &[usize]) -> Result<SkewPair> {
    if ks.contains(&0) {
        return Err(Error::InvalidArgument("block parameters must be ≥ 1".into()));
    }
    Ok(pair_direct_sum(&ks.iter().map(|&k| make_kron_pair(k)).collect::<Vec<_>>()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::scalar::int;
    use crate::random;
    use crate::relations::{kronecker_relation, relation_direct_sum};
    use crate::skew_pairs::{decompose, induced_relation, BlockSpec};

    fn e(n: usize, i: usize) -> Vec<Scalar> {
        (0..n).map(|j| if i == j { int(1) } else { int(0) }).collect()
    }

    fn sum(blocks: &[usize]) -> LinearRelation {
        relation_direct_sum(&blocks.iter().map(|&k| kronecker_relation(k)).collect::<Vec<_>>())
    }

    #[test]
    fn filtration_examples() {
        let f = isotypic_filtration(&kronecker_relation(3)).unwrap();
        assert!(f.step(1).is_zero() && f.step(2).is_zero() && f.step(3).is_full());
        let f = isotypic_filtration(&sum(&[1, 3])).unwrap();
        assert_eq!(f.step(1), Subspace::from_vectors(4, &[e(4, 0)]));
        assert_eq!(f.step(2), f.step(1));
        assert!(f.step(3).is_full());
        assert_eq!(f.block_counts(), vec![(1, 1), (3, 1)]);
        let f = isotypic_filtration(&sum(&[2, 2, 2])).unwrap();
        assert!(f.step(1).is_zero() && f.step(2).is_full());
    }

    #[test]
    fn filtration_is_point_independent() {
        let mut rng = random::seeded(5);
        for _ in 0..10 {
            let sizes = random::relation_block_sizes(&mut rng, 8);
            let n: usize = sizes.iter().sum();
            let t = random::unimodular(&mut rng, n);
            let r = sum(&sizes).transform(&t).unwrap();
            let a = isotypic_filtration_with(&r, &schedule(0, n + 1)).unwrap();
            let b = isotypic_filtration_with(&r, &schedule(-(n as i64) - 7, n + 1)).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn jordan_is_rejected() {
        let r = crate::relations::jordan_relation(2, &ProjPoint::affine(int(0)));
        assert_eq!(isotypic_filtration(&r), Err(Error::NotKronecker));
    }

    #[test]
    fn chains() {
        let r = kronecker_relation(3);
        let basis: Vec<_> = (0..3).map(|i| e(3, i)).collect();
        assert!(is_w_chain(&r, &basis));
        let rev: Vec<_> = basis.iter().rev().cloned().collect();
        assert!(!is_w_chain(&r, &rev));
        let ch = WChain { vectors: basis };
        assert_eq!(elementary_op(&r, &ch, &ch, 0, &int(0)).unwrap(), ch);
        assert_eq!(chains_in(&r, &Subspace::full(3), 3).len(), 1);
    }

    #[test]
    fn elementary_op_kinds() {
        let r = sum(&[4, 2]);
        let long = WChain { vectors: (0..4).map(|i| e(6, i)).collect() };
        let short = WChain { vectors: (4..6).map(|i| e(6, i)).collect() };
        let first = elementary_op(&r, &long, &short, 0, &int(3)).unwrap();
        assert_eq!(first.vectors[3], long.vectors[3]);
        let second = elementary_op(&r, &long, &short, 2, &int(-2)).unwrap();
        assert_eq!(second.vectors[0], long.vectors[0]);
        assert!(elementary_op(&r, &long, &short, 3, &int(1)).is_err());
        assert!(elementary_op(&r, &short, &long, 0, &int(1)).is_err());
    }

    #[test]
    fn split_examples() {
        let b = split_into_blocks(&kronecker_relation(3)).unwrap();
        assert_eq!(b.len(), 1);
        assert!(b[0].span.is_full());

        let mut rng = random::seeded(9);
        let t = random::unimodular(&mut rng, 4);
        let r = sum(&[2, 2]).transform(&t).unwrap();
        let b = split_into_blocks(&r).unwrap();
        assert_eq!(b.iter().map(BlockPart::dim).collect::<Vec<_>>(), vec![2, 2]);

        let pair = flat_model(&[2, 3]).unwrap();
        let rel = induced_relation(&pair).unwrap();
        let b = split_into_blocks(&rel).unwrap();
        assert_eq!(b.iter().map(BlockPart::dim).collect::<Vec<_>>(), vec![2, 3]);
    }

    #[test]
    fn split_through_chosen_lines() {
        let r = sum(&[3, 3]);
        let q = quotient_pencil(&r);
        let k0 = ker_point(&q, &ProjPoint::affine(int(0)));
        let basis = k0.vectors();
        let lines = vec![
            basis[0].iter().zip(&basis[1]).map(|(a, b)| a + b).collect::<Vec<_>>(),
            basis[0].iter().zip(&basis[1]).map(|(a, b)| a - b * int(2)).collect(),
        ];
        let blocks = split_isotypic(&r, Some(&lines)).unwrap();
        let again = split_isotypic(&r, Some(&lines)).unwrap();
        assert_eq!(blocks, again);
        for (b, l) in blocks.iter().zip(&lines) {
            assert_eq!(b.span.intersect(&k0).unwrap(), Subspace::from_vectors(6, std::slice::from_ref(l)));
        }
        assert!(split_isotypic(&r, Some(&lines[..1])).is_err());
        assert!(split_isotypic(&sum(&[1, 2]), None).is_err());
    }

    #[test]
    fn isotypic_block_checks() {
        // blocks K2 (e0, e1) and K3 (e2, e3, e4)
        let r = sum(&[2, 3]);
        let top = Subspace::from_vectors(5, &[e(5, 2), e(5, 3), e(5, 4)]);
        assert!(verify_isotypic_block(&r, &top).unwrap().holds());
        let lower = isotypic_filtration(&r).unwrap().step(2);
        assert!(!verify_isotypic_block(&r, &lower).unwrap().complement);
        let f2_plus: Vec<Scalar> = e(5, 3).iter().zip(&e(5, 1)).map(|(a, b)| a + b).collect();
        let bent = Subspace::from_vectors(5, &[e(5, 2), f2_plus, e(5, 4)]);
        let check = verify_isotypic_block(&r, &bent).unwrap();
        assert!(check.complement && !check.chains && !check.holds());
    }

    #[test]
    fn path_between_blocks() {
        let r = sum(&[1, 2, 4]);
        let top = Subspace::from_vectors(7, &[e(7, 3), e(7, 4), e(7, 5), e(7, 6)]);
        let chain = WChain { vectors: (3..7).map(|i| e(7, i)).collect() };
        let mid = WChain { vectors: vec![e(7, 1), e(7, 2)] };
        let low = WChain { vectors: vec![e(7, 0)] };
        let moved = elementary_op(&r, &chain, &mid, 1, &int(5)).unwrap();
        let moved = elementary_op(&r, &moved, &low, 3, &int(-1)).unwrap();
        let moved = elementary_op(&r, &moved, &mid, 0, &int(2)).unwrap();
        let other = Subspace::from_vectors(7, &moved.vectors);
        assert!(verify_isotypic_block(&r, &other).unwrap().holds());
        let path = elementary_path(&r, &top, &other).unwrap();
        assert!(!path.steps.is_empty());
        let back = elementary_path(&r, &other, &top).unwrap();
        assert_eq!(Subspace::from_vectors(7, &back.result[0].vectors), top);
    }

    #[test]
    fn flat_models() {
        assert_eq!(flat_model(&[1]).unwrap(), SkewPair::zero(1));
        assert_eq!(flat_model(&[2]).unwrap(), make_kron_pair(2));
        let d = decompose(&flat_model(&[2, 3]).unwrap()).unwrap();
        assert_eq!(d.blocks, vec![BlockSpec::Kronecker { dim: 3 }, BlockSpec::Kronecker { dim: 5 }]);
        assert!(flat_model(&[0]).is_err());
    }
}
