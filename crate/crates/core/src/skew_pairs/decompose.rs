//! Kronecker–Jordan decomposition of a pair of skew forms.
//!
//! Two independent routes are run and must agree:
//!
//! * invariants — minimal indices of `λh₁ + h₂` give the Kronecker blocks,
//!   the elementary divisors of `t·h₁ + h₂` and of the swapped pencil give
//!   the Jordan blocks (each divisor occurs twice per block);
//! * construction — an explicit adapted basis. The Kronecker action subspace
//!   `A` (spanned by minimal-basis coefficients) is split off together with
//!   an isotropic complement `O`, chains are paired by a dual basis, and the
//!   regular remainder is split into cyclic pairs for `T = G₂⁻¹G₁`.
//!
//! The result is checked by conjugation; any mismatch is a bug and surfaces
//! as `InternalVerificationFailure`.

use num_traits::{One, Zero};

use super::{jordan_blocks, sample_points, BlockSpec, Decomposition, Eigenvalue, SkewPair};
use crate::error::{Error, Result};
use crate::exact_core::factor::factor_over_q;
use crate::exact_core::polymat::invariant_factors;
use crate::exact_core::{minimal_nullspace_basis, Mat, PolyMat, Scalar, Subspace, UniPoly};

fn fail(msg: impl Into<String>) -> Error {
    Error::InternalVerificationFailure(msg.into())
}

pub fn decompose(p: &SkewPair) -> Result<Decomposition> {
    if !p.h1.is_skew() || !p.h2.is_skew() || p.h1.shape() != p.h2.shape() {
        return Err(Error::NotSkew);
    }
    let mut expected = invariant_blocks(p)?;
    expected.sort_by(BlockSpec::canonical_cmp);
    let mut built = construct(p)?;
    built.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    let blocks: Vec<BlockSpec> = built.iter().map(|(b, _)| b.clone()).collect();
    if blocks != expected {
        return Err(fail(format!(
            "constructed blocks {} differ from invariants {}",
            list(&blocks),
            list(&expected)
        )));
    }
    let cols: Vec<Vec<Scalar>> = built.iter().flat_map(|(_, m)| m.columns()).collect();
    let basis = Mat::from_cols(p.n(), &cols);
    let dec = Decomposition { blocks, basis };
    verify(p, &dec)?;
    Ok(dec)
}

fn list(bs: &[BlockSpec]) -> String {
    let parts: Vec<String> = bs.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn verify(p: &SkewPair, d: &Decomposition) -> Result<()> {
    if d.basis.det().is_zero() {
        return Err(fail("adapted basis is singular"));
    }
    let can = d.canonical();
    let bt = d.basis.transpose();
    if &(&bt * &p.h1) * &d.basis != can.h1 || &(&bt * &p.h2) * &d.basis != can.h2 {
        return Err(fail("conjugation by the adapted basis does not give the canonical form"));
    }
    Ok(())
}

/// Block multiset from minimal indices and elementary divisors.
pub(crate) fn invariant_blocks(p: &SkewPair) -> Result<Vec<BlockSpec>> {
    let mut out: Vec<BlockSpec> = minimal_nullspace_basis(&p.h1, &p.h2)
        .iter()
        .map(|v| BlockSpec::Kronecker { dim: 2 * v.degree + 1 })
        .collect();

    // elementary divisors of t·h₁ + h₂; the root t = −1/μ
    let mut divisors: Vec<(UniPoly, usize, usize)> = Vec::new();
    fn record(divisors: &mut Vec<(UniPoly, usize, usize)>, q: UniPoly, e: usize) {
        match divisors.iter_mut().find(|d| d.0 == q && d.1 == e) {
            Some(d) => d.2 += 1,
            None => divisors.push((q, e, 1)),
        }
    }
    for f in invariant_factors(&PolyMat::pencil(&p.h1, &p.h2)) {
        for (q, e) in factor_over_q(&f) {
            record(&mut divisors, q, e);
        }
    }
    let finite_count = divisors.len();
    // root s = 0 of s·h₂ + h₁ is t = ∞, i.e. μ = 0
    let s_marker = UniPoly::zero();
    for f in invariant_factors(&PolyMat::pencil(&p.h2, &p.h1)) {
        let v = f.valuation();
        if v > 0 {
            record(&mut divisors, s_marker.clone(), v);
        }
    }
    for (i, (q, e, count)) in divisors.into_iter().enumerate() {
        let at_s = i >= finite_count;
        if count % 2 == 1 {
            let divisor = if at_s { format!("s^{e}") } else { format!("({q})^{e}") };
            return Err(Error::OddElementaryDivisor { divisor, count });
        }
        let eigenvalue =
            if at_s { Eigenvalue::rational(Scalar::zero()) } else { t_factor_to_eigenvalue(&q) };
        let dim = 2 * eigenvalue.degree() * e;
        for _ in 0..count / 2 {
            out.push(BlockSpec::Jordan { dim, eigenvalue: eigenvalue.clone() });
        }
    }
    Ok(out)
}

/// Irreducible `q(t)` with `t = −1/μ` as a monic polynomial in μ; `t` itself is μ = ∞.
fn t_factor_to_eigenvalue(q: &UniPoly) -> Eigenvalue {
    if *q == UniPoly::x() {
        return Eigenvalue::Infinity;
    }
    let d = q.degree().unwrap_or(0);
    let mut c = vec![Scalar::zero(); d + 1];
    for i in 0..=d {
        let a = q.coeff(i);
        c[d - i] = if i % 2 == 0 { a } else { -a };
    }
    Eigenvalue::Finite(UniPoly::new(c).monic())
}

/// Dense linear system from sparse rows `Σ coeff·x_idx = rhs`.
fn solve_sparse(eqs: &[(Vec<(usize, Scalar)>, Scalar)], unknowns: usize) -> Option<Vec<Scalar>> {
    let mut a = Mat::zeros(eqs.len(), unknowns);
    let mut b = Mat::zeros(eqs.len(), 1);
    for (r, (terms, rhs)) in eqs.iter().enumerate() {
        for (j, c) in terms {
            a[(r, *j)] += c;
        }
        b[(r, 0)] = rhs.clone();
    }
    a.solve(&b).map(|x| x.col(0))
}

fn mat_from_flat(rows: usize, cols: usize, flat: &[Scalar]) -> Mat {
    Mat::new(rows, cols, flat.to_vec())
}

/// `uᵀ h v`.
fn gram(u: &Mat, h: &Mat, v: &Mat) -> Mat {
    &(&u.transpose() * h) * v
}

fn construct(p: &SkewPair) -> Result<Vec<(BlockSpec, Mat)>> {
    let n = p.n();
    let hs = [&p.h1, &p.h2];
    let nulls = minimal_nullspace_basis(&p.h1, &p.h2);

    // Kronecker action subspace and its joint orthogonal
    let coeffs: Vec<Vec<Scalar>> = nulls.iter().flat_map(|v| v.coeffs.iter().cloned()).collect();
    let ak = Subspace::from_vectors(n, &coeffs);
    let a_dim: usize = nulls.iter().map(|v| v.degree + 1).sum();
    if ak.dim() != a_dim {
        return Err(fail("minimal-basis coefficients are dependent"));
    }
    let a = ak.basis().clone();
    let perp = (&a.transpose() * &p.h1).vstack(&(&a.transpose() * &p.h2)).kernel();
    if !perp.contains(&ak) {
        return Err(fail("Kronecker action subspace is not isotropic"));
    }
    let r0 = Mat::from_cols(n, &ak.complement_in(&perp));
    let o0 = Mat::from_cols(n, &perp.complement_in(&Subspace::full(n)));
    let (m, b) = (r0.cols(), o0.cols());

    // R = R0 + AΦ orthogonal to O1 = O0 + R0Χ for both forms
    let nphi = a_dim * m;
    let mut eqs = Vec::new();
    for h in hs {
        let rr = gram(&r0, h, &r0);
        let ro = gram(&r0, h, &o0);
        let ao = gram(&a, h, &o0);
        for pi in 0..m {
            for q in 0..b {
                let mut terms = Vec::new();
                for s in 0..m {
                    terms.push((nphi + s * b + q, rr[(pi, s)].clone()));
                }
                for t in 0..a_dim {
                    terms.push((t * m + pi, ao[(t, q)].clone()));
                }
                eqs.push((terms, -&ro[(pi, q)]));
            }
        }
    }
    let sol = solve_sparse(&eqs, nphi + m * b)
        .ok_or_else(|| fail("no orthogonal splitting of the regular part"))?;
    let phi = mat_from_flat(a_dim, m, &sol[..nphi]);
    let chi = mat_from_flat(m, b, &sol[nphi..]);
    let r = &r0 + &(&a * &phi);
    let o1 = &o0 + &(&r0 * &chi);

    // O = O1 + AΨ isotropic for both forms
    let mut eqs = Vec::new();
    for h in hs {
        let g = gram(&o1, h, &o1);
        let mm = gram(&a, h, &o1);
        for pi in 0..b {
            for q in pi + 1..b {
                let mut terms = Vec::new();
                for t in 0..a_dim {
                    terms.push((t * b + q, -&mm[(t, pi)]));
                    terms.push((t * b + pi, mm[(t, q)].clone()));
                }
                eqs.push((terms, -&g[(pi, q)]));
            }
        }
    }
    let sol = solve_sparse(&eqs, a_dim * b)
        .ok_or_else(|| fail("no isotropic complement of the action subspace"))?;
    let o = &o1 + &(&a * &mat_from_flat(a_dim, b, &sol));

    let mut out = kronecker_chains(p, &a, &o, &nulls.iter().map(|v| v.degree).collect::<Vec<_>>())?;
    if m > 0 {
        out.extend(jordan_part(p, &r)?);
    }
    Ok(out)
}

/// Chains `w₀, w₁, …, w_{2ε}` with evens in `A` and odds in `O`.
fn kronecker_chains(
    p: &SkewPair,
    a: &Mat,
    o: &Mat,
    degrees: &[usize],
) -> Result<Vec<(BlockSpec, Mat)>> {
    let n = p.n();
    let m1t = gram(a, &p.h1, o).transpose();
    let m2t = gram(a, &p.h2, o).transpose();
    let chains = minimal_nullspace_basis(&m1t, &m2t);
    let mut got: Vec<usize> = chains.iter().map(|c| c.degree).collect();
    let mut want = degrees.to_vec();
    got.sort_unstable();
    want.sort_unstable();
    if got != want {
        return Err(fail(format!("reduced chain degrees {got:?} differ from minimal indices {want:?}")));
    }
    // f_j = M₁ᵀx_{j−1} = −M₂ᵀx_j
    let mut fs: Vec<Vec<Scalar>> = Vec::new();
    for c in &chains {
        for j in 1..=c.degree {
            fs.push(m1t.mul_vec(&c.coeffs[j - 1]));
        }
    }
    let f = Mat::from_cols(o.cols(), &fs);
    let q = f
        .inverse()
        .ok_or_else(|| fail("chain pairing vectors are dependent"))?
        .transpose();
    let odd = o * &q;
    let mut out = Vec::new();
    let mut k = 0;
    for c in &chains {
        let mut cols = Vec::with_capacity(2 * c.degree + 1);
        for j in 0..=c.degree {
            cols.push(a.mul_vec(&c.coeffs[j]));
            if j < c.degree {
                cols.push(odd.col(k));
                k += 1;
            }
        }
        out.push((BlockSpec::Kronecker { dim: 2 * c.degree + 1 }, Mat::from_cols(n, &cols)));
    }
    Ok(out)
}

/// Split the nondegenerate regular part spanned by the columns of `r`.
fn jordan_part(p: &SkewPair, r: &Mat) -> Result<Vec<(BlockSpec, Mat)>> {
    let m = r.cols();
    let s1 = gram(r, &p.h1, r);
    let s2 = gram(r, &p.h2, r);
    let (g1, g2) = sample_points()
        .take(m + 3)
        .find_map(|(l1, l2)| {
            let g2 = s1.combine(&l1, &s2, &l2);
            if g2.det().is_zero() {
                return None;
            }
            let g1 = if l2.is_zero() { s2.clone() } else { s1.clone() };
            Some((g1, g2))
        })
        .ok_or_else(|| fail("regular part has a degenerate pencil"))?;
    let g2inv = g2.inverse().expect("checked invertible");
    let t = &g2inv * &g1;

    let mut out = Vec::new();
    for (q, e) in factor_over_q(&t.char_poly()) {
        let comp = t.eval_poly(&q.pow(e)).kernel();
        let bq = comp.basis().clone();
        let tq = bq
            .solve(&(&t * &bq))
            .ok_or_else(|| fail("primary component is not invariant"))?;
        let g2q = gram(&bq, &g2, &bq);
        let rb = r * &bq;
        for (x, y) in cyclic_pairs(&tq, &g2q, &q)? {
            out.push(canonical_block(p, &(&rb * &x), &(&rb * &y))?);
        }
    }
    Ok(out)
}

/// Krylov matrix `[v, Tv, …, T^{len−1}v]`.
fn krylov(t: &Mat, v: &[Scalar], len: usize) -> Mat {
    let mut cols = Vec::with_capacity(len);
    let mut cur = v.to_vec();
    for _ in 0..len {
        let next = t.mul_vec(&cur);
        cols.push(std::mem::replace(&mut cur, next));
    }
    Mat::from_cols(v.len(), &cols)
}

/// Pairs `(E, F)` of bases of cyclic subspaces with `Eᵀg₂F = I`, both isotropic,
/// jointly spanning the primary component.
fn cyclic_pairs(t: &Mat, g2: &Mat, q: &UniPoly) -> Result<Vec<(Mat, Mat)>> {
    let dim = t.rows();
    let d = q.degree().unwrap_or(1);
    let qt = t.eval_poly(q);
    let mut cur = Mat::identity(dim);
    let mut out = Vec::new();
    while cur.cols() > 0 {
        // height of the current subspace and a vector realizing it
        let mut h = 0;
        let mut acc = cur.clone();
        while !acc.is_zero() {
            acc = &qt * &acc;
            h += 1;
        }
        let top = qt.pow(h - 1);
        let x = cur
            .columns()
            .into_iter()
            .find(|c| !top.mul_vec(c).iter().all(Zero::is_zero))
            .expect("height is attained by a basis vector");
        let len = d * h;
        let xk = krylov(t, &x, len);
        let lhs = gram(&xk, g2, &cur);
        let mut rhs = Mat::zeros(len, 1);
        rhs[(len - 1, 0)] = Scalar::one();
        let z = lhs.solve(&rhs).ok_or_else(|| fail("no dual partner for a cyclic vector"))?;
        let y = cur.mul_vec(&z.col(0));
        let yk = krylov(t, &y, len);
        let hm = gram(&xk, g2, &yk);
        let f = &yk * &hm.inverse().ok_or_else(|| fail("cyclic pairing is degenerate"))?;
        let both = xk.hstack(&f);
        let w = gram(&both, g2, &cur).kernel();
        cur = &cur * w.basis();
        out.push((xk, f));
    }
    Ok(out)
}

/// Bring a block with basis `(E, F)` to canonical form by `diag(P, Q)`.
fn canonical_block(p: &SkewPair, e: &Mat, f: &Mat) -> Result<(BlockSpec, Mat)> {
    let len = e.cols();
    let x1 = gram(e, &p.h1, f);
    let x2 = gram(e, &p.h2, f);
    // N = X₁X₂⁻¹ (finite) or X₂X₁⁻¹ (infinite); X_a is the invertible one
    let (eigenvalue, n_mat, xa) = match x2.inverse() {
        Some(x2i) => {
            let n_mat = &x1 * &x2i;
            let fs = factor_over_q(&n_mat.char_poly());
            if fs.len() != 1 || fs[0].0.degree().unwrap_or(0) * fs[0].1 != len {
                return Err(fail("regular block is not primary"));
            }
            (Eigenvalue::Finite(fs[0].0.clone()), n_mat, x2)
        }
        None => {
            let x1i = x1.inverse().ok_or_else(|| fail("regular block has a singular pencil"))?;
            (Eigenvalue::Infinity, &x2 * &x1i, x1)
        }
    };
    let (c1, c2) = jordan_blocks(len, &eigenvalue);
    // W⁻¹NᵀW = Cᵀ with C the non-identity canonical block
    let shift = match eigenvalue.as_mu() {
        Some(super::Mu::Finite(mu)) => mu,
        _ => Scalar::zero(),
    };
    let step = &n_mat.transpose() - &Mat::identity(len).scale(&shift);
    let target = if c2 == Mat::identity(len) { &c1 } else { &c2 };
    let w = (0..len)
        .map(|i| {
            let mut v = vec![Scalar::zero(); len];
            v[i] = Scalar::one();
            krylov(&step, &v, len)
        })
        .find(|w| w.det() != Scalar::zero() && (&n_mat.transpose() * w) == (w * &target.transpose()))
        .ok_or_else(|| {
            fail(format!("no cyclic vector for block with eigenvalue {eigenvalue}"))
        })?;
    let winv_t = w.inverse().expect("checked invertible").transpose();
    let qm = &xa.inverse().expect("checked invertible") * &winv_t;
    let basis = (e * &w).hstack(&(f * &qm));
    Ok((BlockSpec::Jordan { dim: 2 * len, eigenvalue }, basis))
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use super::*;
    use crate::exact_core::scalar::int;

    fn sl(mu: i64) -> Eigenvalue {
        Eigenvalue::rational(int(mu))
    }

    #[test]
    fn single_blocks() {
        let d = decompose(&make_kron_pair(2)).unwrap();
        assert_eq!(d.blocks, vec![BlockSpec::Kronecker { dim: 3 }]);
        let d = decompose(&make_jordan_pair(1, &Mu::Finite(int(5)))).unwrap();
        assert_eq!(d.blocks, vec![BlockSpec::Jordan { dim: 2, eigenvalue: sl(5) }]);
        let d = decompose(&make_jordan_pair(3, &Mu::Infinity)).unwrap();
        assert_eq!(d.blocks, vec![BlockSpec::Jordan { dim: 6, eigenvalue: Eigenvalue::Infinity }]);
        let d = decompose(&make_jordan_pair(2, &Mu::Finite(int(0)))).unwrap();
        assert_eq!(d.blocks, vec![BlockSpec::Jordan { dim: 4, eigenvalue: sl(0) }]);
        assert!(decompose(&SkewPair::zero(0)).unwrap().blocks.is_empty());
    }

    #[test]
    fn conjugated_sum_round_trips() {
        let src = pair_direct_sum(&[
            make_jordan_pair(1, &Mu::Finite(int(0))),
            make_kron_pair(3),
            make_kron_pair(2),
        ]);
        let n = src.n();
        let s = Mat::from_fn(n, n, |i, j| {
            if i == j {
                int(1)
            } else if j > i {
                int(((i * 3 + j * 7) % 5) as i64 - 2)
            } else {
                int(0)
            }
        });
        let s = &s * &s.transpose();
        let p = conjugate(&src, &s).unwrap();
        let d = decompose(&p).unwrap();
        assert_eq!(
            d.blocks,
            vec![
                BlockSpec::Kronecker { dim: 3 },
                BlockSpec::Kronecker { dim: 5 },
                BlockSpec::Jordan { dim: 2, eigenvalue: sl(0) },
            ]
        );
    }

    #[test]
    fn irrational_eigenvalue_uses_companion_block() {
        // μ² = 2: X₁ = companion of μ² − 2 (two 4×4 copies to get a Jordan pair)
        let q = UniPoly::from_ints(&[-2, 0, 1]);
        let spec = BlockSpec::Jordan { dim: 4, eigenvalue: Eigenvalue::Finite(q.clone()) };
        let p = spec.canonical_pair();
        let s = Mat::from_ints(&[&[1, 1, 0, 0], &[0, 1, 2, 0], &[0, 0, 1, -1], &[1, 0, 0, 1]]);
        let d = decompose(&conjugate(&p, &s).unwrap()).unwrap();
        assert_eq!(d.blocks, vec![spec]);

        let big = BlockSpec::Jordan { dim: 8, eigenvalue: Eigenvalue::Finite(q) };
        let d = decompose(&big.canonical_pair()).unwrap();
        assert_eq!(d.blocks, vec![big]);
    }

    #[test]
    fn repeated_eigenvalues() {
        let p = pair_direct_sum(&[
            make_jordan_pair(2, &Mu::Finite(int(3))),
            make_jordan_pair(1, &Mu::Finite(int(3))),
            make_jordan_pair(1, &Mu::Infinity),
            make_jordan_pair(2, &Mu::Infinity),
            make_kron_pair(1),
            make_kron_pair(1),
        ]);
        let d = decompose(&p).unwrap();
        let dims: Vec<String> = d.blocks.iter().map(ToString::to_string).collect();
        assert_eq!(dims, ["K1", "K1", "J2[x - 3]", "J2[inf]", "J4[x - 3]", "J4[inf]"].map(String::from));
    }

    #[test]
    fn non_skew_is_rejected() {
        let h1 = Mat::from_ints(&[&[0, 1], &[-1, 0]]);
        let p = SkewPair { h1: Mat::block_diag(&[h1.clone(), Mat::zeros(1, 1)]), h2: Mat::identity(3) };
        assert_eq!(decompose(&p), Err(Error::NotSkew));
    }
}
