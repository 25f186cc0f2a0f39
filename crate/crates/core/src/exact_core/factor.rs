//! Factorization over Q and linear algebra over simple extensions Q[t]/(f).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::mat::Mat;
use super::poly::{BinaryForm, UniPoly};
use super::polymat::PolyMat;
use super::scalar::{common_denominator, Scalar};
use super::zfactor::factor_squarefree;

/// Monic irreducible factors with multiplicities, sorted by (degree, coefficients).
pub fn factor_over_q(p: &UniPoly) -> Vec<(UniPoly, usize)> {
    assert!(!p.is_zero(), "cannot factor the zero polynomial");
    let mut out: Vec<(UniPoly, usize)> = Vec::new();
    for (part, m) in squarefree_parts(&p.monic()) {
        for f in factor_squarefree(&primitive_integer(&part)) {
            let coeffs = f.into_iter().map(Scalar::from_integer).collect();
            out.push((UniPoly::new(coeffs).monic(), m));
        }
    }
    out.sort_by(|a, b| poly_order(&a.0, &b.0));
    out
}

/// Yun's square-free decomposition of a monic polynomial: `(a_i, i)` with
/// `p = Π a_iⁱ`, the `a_i` square-free and pairwise coprime.
fn squarefree_parts(p: &UniPoly) -> Vec<(UniPoly, usize)> {
    let mut out = Vec::new();
    if p.is_constant() {
        return out;
    }
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.div_rem(&a0).0;
    let mut c = dp.div_rem(&a0).0;
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while !b.is_constant() {
        let a = b.gcd(&d);
        b = b.div_rem(&a).0;
        c = d.div_rem(&a).0;
        d = &c - &b.derivative();
        if !a.is_constant() {
            out.push((a.monic(), i));
        }
        i += 1;
    }
    out
}

/// Integer multiple with coprime coefficients and positive leading coefficient.
fn primitive_integer(p: &UniPoly) -> Vec<BigInt> {
    let den = common_denominator(p.coeffs());
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * Scalar::from_integer(den.clone())).to_integer())
        .collect();
    let mut g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if ints.last().is_some_and(|l| l.is_negative()) {
        g = -g;
    }
    ints.into_iter().map(|c| c / &g).collect()
}

/// Deterministic total order: degree first, then coefficients from the top.
pub fn poly_order(a: &UniPoly, b: &UniPoly) -> std::cmp::Ordering {
    a.degree().cmp(&b.degree()).then_with(|| {
        a.coeffs().iter().rev().cmp(b.coeffs().iter().rev())
    })
}

/// Irreducible factors of a nonzero binary form, each normalized with first
/// nonzero coefficient 1. The factor λ₂ represents the root (1:0).
pub fn factor_binary_form(f: &BinaryForm) -> Vec<(BinaryForm, usize)> {
    assert!(!f.is_zero());
    let mut out = Vec::new();
    let e = f.lambda2_valuation();
    let g = f.dehomogenize();
    for (q, m) in factor_over_q(&g) {
        let d = q.degree().unwrap_or(0);
        out.push((q.homogenize(d).normalized(), m));
    }
    if e > 0 {
        out.push((BinaryForm::lambda2(), e));
    }
    out
}

/// Rational root of a linear binary form `c₀λ₁ + c₁λ₂` as a point (λ₁:λ₂).
pub fn linear_root(f: &BinaryForm) -> Option<(Scalar, Scalar)> {
    if f.degree() != 1 {
        return None;
    }
    let c = f.coeffs();
    // c0 λ1 + c1 λ2 = 0  at (c1 : −c0)
    Some((c[1].clone(), -&c[0]))
}

/// Element arithmetic in Q[t]/(f) for irreducible `f`.
#[derive(Clone, Debug)]
pub struct NumberField {
    modulus: UniPoly,
}

impl NumberField {
    pub fn new(modulus: UniPoly) -> Self {
        assert!(modulus.degree().unwrap_or(0) >= 1);
        NumberField { modulus: modulus.monic() }
    }

    pub fn reduce(&self, a: &UniPoly) -> UniPoly {
        a.rem(&self.modulus)
    }

    pub fn mul(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        self.reduce(&(a * b))
    }

    pub fn inv(&self, a: &UniPoly) -> UniPoly {
        let (g, s, _) = a.ext_gcd(&self.modulus);
        assert!(g == UniPoly::one(), "element not invertible: modulus not irreducible?");
        self.reduce(&s)
    }

    /// Rank of a matrix with entries in Q[t], read modulo the modulus.
    pub fn rank(&self, m: &PolyMat) -> usize {
        let (rows, cols) = (m.rows(), m.cols());
        let mut a: Vec<Vec<UniPoly>> = (0..rows)
            .map(|i| (0..cols).map(|j| self.reduce(m.at(i, j))).collect())
            .collect();
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            let inv = self.inv(&a[rank][c]);
            for j in c..cols {
                a[rank][j] = self.mul(&a[rank][j], &inv);
            }
            for i in rank + 1..rows {
                if a[i][c].is_zero() {
                    continue;
                }
                let f = a[i][c].clone();
                for j in c..cols {
                    let d = self.mul(&f, &a[rank][j]);
                    a[i][j] = &a[i][j] - &d;
                }
            }
            rank += 1;
        }
        rank
    }
}

/// Rank of `λ₁a + λ₂b` at the roots of an irreducible binary form (the same at
/// every conjugate root).
pub fn rank_at_form_root(a: &Mat, b: &Mat, f: &BinaryForm) -> usize {
    if let Some((l1, l2)) = linear_root(f) {
        return a.combine(&l1, b, &l2).rank();
    }
    // f has no root at (1:0) or (0:1) when deg ≥ 2 and irreducible; use λ₂ = 1, λ₁ = t.
    let field = NumberField::new(f.dehomogenize());
    field.rank(&PolyMat::pencil(a, b))
}

/// Points of P¹ where `λ₁a + λ₂b` loses rank: `(generic corank, [(irreducible
/// factor of the minor gcd, corank at its roots)])`.
pub fn exceptional_factors(a: &Mat, b: &Mat) -> (usize, Vec<(BinaryForm, usize)>) {
    let rho = super::minimal::generic_rank(a, b);
    let cols = a.cols();
    let g = super::minors::gcd_of_minors(a, b, rho);
    if g.is_zero() || g.degree() == 0 {
        return (cols - rho, Vec::new());
    }
    let out = factor_binary_form(&g)
        .into_iter()
        .map(|(f, _)| {
            let r = rank_at_form_root(a, b, &f);
            (f, cols - r)
        })
        .collect();
    (cols - rho, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::scalar::{int, ratio};

    fn p(cs: &[i64]) -> UniPoly {
        UniPoly::from_ints(cs)
    }

    #[test]
    fn factors_mixed_polynomial() {
        // 6 (x^2 − 2)(x + 1)^2 (x^3 − x − 1)
        let f = &(&(&p(&[-2, 0, 1]) * &p(&[1, 1])) * &p(&[1, 1])) * &p(&[-1, -1, 0, 1]);
        let f = f.scale(&int(6));
        let fs = factor_over_q(&f);
        assert_eq!(
            fs,
            vec![(p(&[1, 1]), 2), (p(&[-2, 0, 1]), 1), (p(&[-1, -1, 0, 1]), 1)]
        );
        let back = fs.iter().fold(UniPoly::one(), |acc, (q, m)| &acc * &q.pow(*m));
        assert_eq!(back, f.monic());
    }

    #[test]
    fn refactors_incomplete_backend_output() {
        // (x + 1)(3x² − x + 3)(5x³ + 17x² + 7x + 16): the backend alone
        // leaves the quintic cofactor of x + 1 unsplit
        let f = &(&p(&[1, 1]) * &p(&[3, -1, 3])) * &p(&[16, 7, 17, 5]);
        let fs = factor_over_q(&f);
        assert_eq!(fs.len(), 3);
        assert!(fs.iter().all(|(_, m)| *m == 1));
        assert_eq!(fs.iter().map(|(q, _)| q.degree().unwrap()).collect::<Vec<_>>(), vec![1, 2, 3]);
    }

    #[test]
    fn rational_coefficients() {
        // (x − 1/2)(x + 1/3)
        let f = &UniPoly::new(vec![ratio(-1, 2), int(1)]) * &UniPoly::new(vec![ratio(1, 3), int(1)]);
        let fs = factor_over_q(&f);
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0].0, UniPoly::new(vec![ratio(-1, 2), int(1)]));
    }

    #[test]
    fn binary_form_factors_include_infinity() {
        // λ₁²λ₂ + 5λ₁λ₂² = λ₁·λ₂·(λ₁ + 5λ₂)
        let f = BinaryForm::new(vec![int(0), int(1), int(5), int(0)]);
        let fs = factor_binary_form(&f);
        assert_eq!(fs.len(), 3);
        assert!(fs.contains(&(BinaryForm::lambda2(), 1)));
        assert!(fs.contains(&(BinaryForm::lambda1(), 1)));
        assert!(fs.contains(&(BinaryForm::new(vec![int(1), int(5)]), 1)));
    }

    #[test]
    fn rank_in_quadratic_field() {
        // λ₁·I + λ₂·[[0,2],[1,0]] is singular where λ₁² = 2λ₂²
        let a = Mat::identity(2);
        let b = Mat::from_ints(&[&[0, 2], &[1, 0]]);
        let f = BinaryForm::new(vec![int(1), int(0), int(-2)]);
        assert_eq!(rank_at_form_root(&a, &b, &f), 1);
        let g = BinaryForm::new(vec![int(1), int(0), int(-3)]);
        assert_eq!(rank_at_form_root(&a, &b, &g), 2);
    }
}
