//! Invariant polynomials and the flat chart of the argument-translation web.
//!
//! For invariants `p₁,…,p_r` the coefficients `a_ij` of `p_i(β + λc₁) = Σ_j a_ij(β)λ^j`
//! are coordinates in which every leaf `{Σ_j a_ij λ^j = C_i}` is affine.

use num_traits::{One, Zero};

use super::{algebra_rank, compatible, is_regular, Covector, LieAlgebraData};
use crate::error::{Error, Result};
use crate::exact_core::mpoly::{symbolic_rank, MPoly};
use crate::exact_core::{Mat, Scalar};

/// An Ad*-invariant polynomial on g*.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantPoly {
    pub poly: MPoly,
    /// Total degree.
    pub degree: usize,
}

impl InvariantPoly {
    /// Validates invariance: `Σ_j LP_ij(β)·∂_j p ≡ 0` for every `i`.
    pub fn new(g: &LieAlgebraData, poly: MPoly) -> Result<Self> {
        validated(g, poly, 0)
    }

    /// Exponent used in the dimension identity: `degree − 1`.
    pub fn web_degree(&self) -> usize {
        self.degree.saturating_sub(1)
    }
}

fn validated(g: &LieAlgebraData, poly: MPoly, idx: usize) -> Result<InvariantPoly> {
    let n = g.n();
    if poly.nvars() != n {
        return Err(Error::DimensionMismatch(format!(
            "polynomial {idx} has {} variables, algebra has dimension {n}",
            poly.nvars()
        )));
    }
    let grads: Vec<MPoly> = (0..n).map(|j| poly.derivative(j)).collect();
    for i in 0..n {
        let mut acc = MPoly::zero(n);
        for (j, dj) in grads.iter().enumerate() {
            if dj.is_zero() {
                continue;
            }
            let lp = MPoly::linear(g.structure(i, j));
            if !lp.is_zero() {
                acc = acc.add(&lp.mul(dj));
            }
        }
        if !acc.is_zero() {
            return Err(Error::NotInvariant(idx));
        }
    }
    let degree = poly.total_degree().unwrap_or(0);
    Ok(InvariantPoly { poly, degree })
}

/// Validates a list, reporting the index of the first non-invariant entry.
pub fn validate_invariants(g: &LieAlgebraData, polys: Vec<MPoly>) -> Result<Vec<InvariantPoly>> {
    polys.into_iter().enumerate().map(|(i, p)| validated(g, p, i)).collect()
}

/// `tr X(β)^m` for each `m`, where `X(β) = Σ β_k D_k` with `D` the basis
/// dual to `basis` under the trace form.
pub fn trace_invariants(g: &LieAlgebraData, basis: &[Mat], degrees: &[usize]) -> Result<Vec<InvariantPoly>> {
    let n = g.n();
    if basis.len() != n {
        return Err(Error::DimensionMismatch(format!("{} matrices for dimension {n}", basis.len())));
    }
    let gram = Mat::from_fn(n, n, |k, l| (&basis[k] * &basis[l]).trace());
    let ginv = gram
        .inverse()
        .ok_or_else(|| Error::InvalidArgument("trace form is degenerate on the basis".into()))?;
    let d = basis.first().map_or(0, Mat::rows);
    // X(β)_{ab} = Σ_k β_k Σ_l (G⁻¹)_{lk} B_l[a][b]
    let x: Vec<Vec<MPoly>> = (0..d)
        .map(|a| {
            (0..d)
                .map(|b| {
                    let cs: Vec<Scalar> = (0..n)
                        .map(|k| (0..n).map(|l| &ginv[(l, k)] * &basis[l][(a, b)]).sum())
                        .collect();
                    MPoly::linear(&cs)
                })
                .collect()
        })
        .collect();
    let mul = |p: &[Vec<MPoly>], q: &[Vec<MPoly>]| -> Vec<Vec<MPoly>> {
        (0..d)
            .map(|a| {
                (0..d)
                    .map(|b| (0..d).fold(MPoly::zero(n), |acc, c| acc.add(&p[a][c].mul(&q[c][b]))))
                    .collect()
            })
            .collect()
    };
    let max = degrees.iter().copied().max().unwrap_or(0);
    let mut powers = Vec::with_capacity(max);
    let mut cur = x.clone();
    for m in 1..=max {
        if m > 1 {
            cur = mul(&cur, &x);
        }
        powers.push((0..d).fold(MPoly::zero(n), |acc, a| acc.add(&cur[a][a])));
    }
    let polys = degrees.iter().map(|&m| if m == 0 { MPoly::constant(n, crate::exact_core::scalar::int(d as i64)) } else { powers[m - 1].clone() });
    validate_invariants(g, polys.collect())
}

/// `Σ_j a_ij λ^j = C_i`: one leaf equation of `F_λ` in the coefficient chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeafEquation {
    pub poly_index: usize,
    /// `a_i0, …, a_i,deg` as polynomials in β.
    pub coefficients: Vec<MPoly>,
}

impl LeafEquation {
    /// The equation with chart variables `y_0..y_deg` and λ (last variable)
    /// substituted for the coefficients, minus the level constant `C`.
    pub fn in_chart(&self, level: &Scalar) -> MPoly {
        let m = self.coefficients.len();
        let lam = MPoly::var(m + 1, m);
        let mut out = MPoly::constant(m + 1, -level.clone());
        for j in 0..m {
            out = out.add(&MPoly::var(m + 1, j).mul(&lam.pow(j)));
        }
        out
    }

    /// Whether the equation has degree ≤ 1 in the chart variables.
    pub fn is_affine_in_chart(&self) -> bool {
        let m = self.coefficients.len();
        self.in_chart(&Scalar::one())
            .terms()
            .all(|(e, _)| e[..m].iter().map(|&k| k as usize).sum::<usize>() <= 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WebPoint {
    pub beta: Covector,
    pub regular: bool,
    pub compatible: bool,
    pub jacobian_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CasimirWebReport {
    pub dim: usize,
    pub rank: usize,
    pub degrees: Vec<usize>,
    pub web_degrees: Vec<usize>,
    /// `2Σ web_degree + r`; equals `dim`.
    pub web_identity: usize,
    /// `2Σ degree + r`, reported for comparison.
    pub literal_identity: usize,
    /// `(dim + r) / 2`.
    pub expected_jacobian_rank: usize,
    /// Generic rank of the full coefficient map.
    pub generic_jacobian_rank: usize,
    pub leaves: Vec<LeafEquation>,
    pub points: Vec<WebPoint>,
    /// Every leaf equation is affine in the chart.
    pub affine: bool,
    /// `p_i(β + λc₁) = Σ_j a_ij(β)λ^j` at every sample point and λ ∈ {−1, 2}.
    pub expansion_matches: bool,
}

impl CasimirWebReport {
    /// Sample points that are regular and compatible with `c₁`.
    pub fn good_points(&self) -> impl Iterator<Item = &WebPoint> {
        self.points.iter().filter(|p| p.regular && p.compatible)
    }

    pub fn flat(&self) -> bool {
        self.affine
            && self.expansion_matches
            && self.good_points().all(|p| p.jacobian_rank == self.expected_jacobian_rank)
    }
}

/// Coefficients of `p(β + λc₁)` in λ, lowest first, up to `degree`.
fn lambda_expansion(p: &InvariantPoly, c1: &[Scalar]) -> Vec<MPoly> {
    let n = c1.len();
    let subs: Vec<MPoly> = (0..n)
        .map(|k| {
            let mut e = vec![0u16; n + 1];
            e[k] = 1;
            let mut t = MPoly::from_terms(n + 1, [(e, Scalar::one())]);
            if !c1[k].is_zero() {
                let mut e = vec![0u16; n + 1];
                e[n] = 1;
                t = t.add(&MPoly::from_terms(n + 1, [(e, c1[k].clone())]));
            }
            t
        })
        .collect();
    let shifted = p.poly.compose(&subs);
    let mut coeffs = vec![MPoly::zero(n); p.degree + 1];
    for (e, c) in shifted.terms() {
        let j = e[n] as usize;
        coeffs[j].add_term(e[..n].to_vec(), c.clone());
    }
    coeffs
}

pub fn casimir_web(
    g: &LieAlgebraData,
    c1: &[Scalar],
    polys: &[InvariantPoly],
    points: &[Covector],
) -> Result<CasimirWebReport> {
    let n = g.n();
    if c1.len() != n {
        return Err(Error::DimensionMismatch(format!("c1 must have {n} coordinates")));
    }
    let r = algebra_rank(g).rank;
    if polys.len() != r {
        return Err(Error::WrongPolyCount { expected: r, got: polys.len() });
    }
    let degrees: Vec<usize> = polys.iter().map(|p| p.degree).collect();
    let web_degrees: Vec<usize> = polys.iter().map(InvariantPoly::web_degree).collect();
    let web_identity = 2 * web_degrees.iter().sum::<usize>() + r;
    let literal_identity = 2 * degrees.iter().sum::<usize>() + r;
    if web_identity != n {
        return Err(Error::DimensionIdentityFailure { dim: n, web: web_identity, literal: literal_identity });
    }

    let leaves: Vec<LeafEquation> = polys
        .iter()
        .enumerate()
        .map(|(i, p)| LeafEquation { poly_index: i, coefficients: lambda_expansion(p, c1) })
        .collect();
    let jac: Vec<Vec<MPoly>> = leaves
        .iter()
        .flat_map(|l| l.coefficients.iter())
        .map(|a| (0..n).map(|k| a.derivative(k)).collect())
        .collect();
    let generic_jacobian_rank = symbolic_rank(&jac);

    let mut expansion_matches = true;
    let mut out_points = Vec::with_capacity(points.len());
    for beta in points {
        if beta.len() != n {
            return Err(Error::DimensionMismatch(format!("sample point must have {n} coordinates")));
        }
        let rows: Vec<Vec<Scalar>> =
            jac.iter().map(|row| row.iter().map(|d| d.eval(beta)).collect()).collect();
        let jacobian_rank = Mat::from_rows(rows, n).rank();
        for lam in [crate::exact_core::scalar::int(-1), crate::exact_core::scalar::int(2)] {
            let shifted: Vec<Scalar> = beta.iter().zip(c1).map(|(b, c)| b + &lam * c).collect();
            for (p, leaf) in polys.iter().zip(&leaves) {
                let mut pw = Scalar::one();
                let mut sum = Scalar::zero();
                for a in &leaf.coefficients {
                    sum += a.eval(beta) * &pw;
                    pw *= &lam;
                }
                expansion_matches &= sum == p.poly.eval(&shifted);
            }
        }
        out_points.push(WebPoint {
            beta: beta.clone(),
            regular: is_regular(g, beta)?,
            compatible: compatible(g, c1, beta)?,
            jacobian_rank,
        });
    }
    Ok(CasimirWebReport {
        dim: n,
        rank: r,
        degrees,
        web_degrees,
        web_identity,
        literal_identity,
        expected_jacobian_rank: (n + r) / 2,
        generic_jacobian_rank,
        affine: leaves.iter().all(LeafEquation::is_affine_in_chart),
        leaves,
        points: out_points,
        expansion_matches,
    })
}

/// Whether `λ₁h₁ + λ₂·LP` is Poisson for all `(λ₁, λ₂)`. The Jacobiator is
/// a polynomial in `(λ₁, λ₂, β)`; its `λ₁²` part vanishes since `h₁` is
/// constant, the `λ₂²` part is the Jacobi identity of g and the `λ₁λ₂` part
/// is the 2-cocycle identity of `h₁`. Both are checked coefficientwise.
pub fn jacobi_compat_check(h1: &Mat, g: &LieAlgebraData) -> Result<bool> {
    let n = g.n();
    if h1.shape() != (n, n) {
        return Err(Error::DimensionMismatch(format!("h1 must be {n}×{n}")));
    }
    if !h1.is_skew() {
        return Err(Error::NotSkew);
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let cyc = [(i, j, k), (j, k, i), (k, i, j)];
                // λ₁λ₂: Σ_l h1_il c_jk^l + cyclic
                let mixed: Scalar = cyc
                    .iter()
                    .map(|&(a, b, c)| -> Scalar {
                        (0..n).map(|l| &h1[(a, l)] * &g.structure(b, c)[l]).sum()
                    })
                    .sum();
                if !mixed.is_zero() {
                    return Ok(false);
                }
                // λ₂²: coefficient of β_m in Σ_l c_al^m c_bc^l + cyclic
                for m in 0..n {
                    let s: Scalar = cyc
                        .iter()
                        .map(|&(a, b, c)| -> Scalar {
                            (0..n).map(|l| &g.structure(a, l)[m] * &g.structure(b, c)[l]).sum()
                        })
                        .sum();
                    if !s.is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::scalar::int;
    use crate::lie_poisson::frozen_matrix;
    use crate::lie_poisson::tables::builtin;

    fn sl2_casimir() -> MPoly {
        // β_h² + 4β_eβ_f in coordinates (e, f, h)
        MPoly::from_terms(3, [(vec![0, 0, 2], int(1)), (vec![1, 1, 0], int(4))])
    }

    #[test]
    fn sl2_expansion() {
        let g = builtin("sl2").unwrap().algebra;
        let p = InvariantPoly::new(&g, sl2_casimir()).unwrap();
        assert_eq!((p.degree, p.web_degree()), (2, 1));
        let c1 = [int(0), int(0), int(1)];
        let rep = casimir_web(&g, &c1, &[p], &[vec![int(1), int(1), int(0)]]).unwrap();
        let a = &rep.leaves[0].coefficients;
        assert_eq!(a[0], sl2_casimir());
        assert_eq!(a[1], MPoly::from_terms(3, [(vec![0, 0, 1], int(2))]));
        assert_eq!(a[2], MPoly::one(3));
        assert_eq!(rep.points[0].jacobian_rank, 2);
        assert_eq!((rep.web_identity, rep.literal_identity), (3, 5));
        assert!(rep.flat());
    }

    #[test]
    fn rejections() {
        let g = builtin("sl2").unwrap().algebra;
        let bad = MPoly::var(3, 0);
        assert_eq!(validate_invariants(&g, vec![sl2_casimir(), bad]), Err(Error::NotInvariant(1)));
        let p = InvariantPoly::new(&g, sl2_casimir()).unwrap();
        let c1 = [int(0), int(0), int(1)];
        assert_eq!(
            casimir_web(&g, &c1, &[p.clone(), p], &[]),
            Err(Error::WrongPolyCount { expected: 1, got: 2 })
        );
        // the squared Casimir breaks the identity: 2·3 + 1 ≠ 3
        let sq = InvariantPoly::new(&g, sl2_casimir().pow(2)).unwrap();
        assert_eq!(
            casimir_web(&g, &c1, &[sq], &[]),
            Err(Error::DimensionIdentityFailure { dim: 3, web: 7, literal: 9 })
        );
    }

    #[test]
    fn trace_invariants_match_casimir() {
        let t = builtin("sl2").unwrap();
        let ps = trace_invariants(&t.algebra, &t.matrices, &[2]).unwrap();
        // X(β) = β_f·e + β_e·f + (β_h/2)·h, tr X² = β_h²/2 + 2β_eβ_f
        assert_eq!(ps[0].poly.scale(&int(2)), sl2_casimir());
        let t = builtin("gl3").unwrap();
        let ps = trace_invariants(&t.algebra, &t.matrices, &[1, 2, 3]).unwrap();
        assert_eq!(ps.iter().map(|p| p.degree).collect::<Vec<_>>(), vec![1, 2, 3]);
    }

    #[test]
    fn abelian_linear_invariants() {
        let g = LieAlgebraData::abelian(2);
        let ps = validate_invariants(&g, vec![MPoly::var(2, 0), MPoly::var(2, 1)]).unwrap();
        let rep = casimir_web(&g, &[int(1), int(0)], &ps, &[vec![int(3), int(4)]]).unwrap();
        assert_eq!(rep.web_identity, 2);
        assert_eq!(rep.points[0].jacobian_rank, 2);
        assert!(rep.flat());
    }

    #[test]
    fn compat_check() {
        let g = builtin("sl2").unwrap().algebra;
        let h1 = frozen_matrix(&g, &[int(2), int(-1), int(5)]).unwrap();
        assert!(jacobi_compat_check(&h1, &g).unwrap());
        // sl₂ is perfect, so only coboundaries are cocycles; use the Heisenberg algebra
        let heis = LieAlgebraData::new(4, [(0, 1, vec![(2, int(1))])]).unwrap();
        let mut bad = Mat::zeros(4, 4);
        bad[(2, 3)] = int(1);
        bad[(3, 2)] = int(-1);
        assert!(!jacobi_compat_check(&bad, &heis).unwrap());
        assert!(jacobi_compat_check(&bad, &LieAlgebraData::abelian(4)).unwrap());
    }
}
