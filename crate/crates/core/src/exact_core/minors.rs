//! Greatest common divisor of the r×r minors of `λ₁a + λ₂b`.
//!
//! The gcd of the r×r minors of a polynomial matrix is its r-th determinantal
//! divisor, i.e. the product of the first r Smith invariant factors. We take
//! the finite part from `t·a + b` (t = λ₁/λ₂) and the multiplicity of the root
//! (1:0) from the swapped pencil `a + s·b` (s = λ₂/λ₁).

use super::mat::Mat;
use super::poly::{BinaryForm, UniPoly};
use super::polymat::{invariant_factors, PolyMat};
use super::scalar::Scalar;

/// Product of the first `r` invariant factors, or zero if the rank is below `r`.
pub fn determinantal_divisor(p: &PolyMat, r: usize) -> UniPoly {
    let f = invariant_factors(p);
    if f.len() < r {
        return UniPoly::zero();
    }
    f[..r].iter().fold(UniPoly::one(), |acc, x| &acc * x)
}

/// Normalized gcd of all r×r minors of `λ₁a + λ₂b` as a binary form.
pub fn gcd_of_minors(a: &Mat, b: &Mat, r: usize) -> BinaryForm {
    assert_eq!(a.shape(), b.shape());
    assert!(r <= a.rows().min(a.cols()), "minor size exceeds matrix size");
    if r == 0 {
        return BinaryForm::one();
    }
    let finite = determinantal_divisor(&PolyMat::pencil(a, b), r);
    if finite.is_zero() {
        return BinaryForm::zero();
    }
    let swapped = determinantal_divisor(&PolyMat::pencil(b, a), r);
    let e = swapped.valuation();
    let deg = finite.degree().unwrap_or(0);
    let mut form = finite.monic().homogenize(deg);
    for _ in 0..e {
        form = form.mul(&BinaryForm::lambda2());
    }
    form.normalized()
}

/// Whether `gcd_of_minors` at the generic rank is a nonzero constant:
/// the rank of `λ₁a + λ₂b` does not drop anywhere on P¹ over the closure.
pub fn rank_is_constant(a: &Mat, b: &Mat, generic_rank: usize) -> bool {
    gcd_of_minors(a, b, generic_rank).is_nonzero_constant()
}

/// All r×r minors, enumerated literally; only for small matrices.
pub fn all_minors(a: &Mat, b: &Mat, r: usize) -> Vec<BinaryForm> {
    let rows = combinations(a.rows(), r);
    let cols = combinations(a.cols(), r);
    let mut out = Vec::new();
    for ri in &rows {
        for ci in &cols {
            // det(λ₁A + λ₂B) restricted: det of pencil in t, homogenized to degree r
            let sa = a.select_rows(ri).select_cols(ci);
            let sb = b.select_rows(ri).select_cols(ci);
            let det = PolyMat::pencil(&sa, &sb).det();
            out.push(det.homogenize(r));
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Gcd of binary forms, normalized (zero if all inputs vanish).
pub fn gcd_forms(forms: &[BinaryForm]) -> BinaryForm {
    let nz: Vec<&BinaryForm> = forms.iter().filter(|f| !f.is_zero()).collect();
    if nz.is_empty() {
        return BinaryForm::zero();
    }
    let e = nz.iter().map(|f| f.lambda2_valuation()).min().unwrap_or(0);
    let mut g = UniPoly::zero();
    for f in &nz {
        g = g.gcd(&f.dehomogenize());
    }
    let deg = g.degree().unwrap_or(0);
    let mut form = g.homogenize(deg);
    for _ in 0..e {
        form = form.mul(&BinaryForm::lambda2());
    }
    form.normalized()
}

/// Evaluate `λ₁a + λ₂b`.
pub fn eval_pencil(a: &Mat, b: &Mat, l1: &Scalar, l2: &Scalar) -> Mat {
    a.combine(l1, b, l2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::scalar::int;
    use proptest::prelude::*;

    #[test]
    fn identity_pencil_drops_at_lambda1_zero() {
        let g = gcd_of_minors(&Mat::identity(2), &Mat::zeros(2, 2), 2);
        assert_eq!(g, BinaryForm::new(vec![int(1), int(0), int(0)]));
    }

    #[test]
    fn kronecker_three_is_constant() {
        let h1 = Mat::from_ints(&[&[0, 1, 0], &[-1, 0, 0], &[0, 0, 0]]);
        let h2 = Mat::from_ints(&[&[0, 0, 0], &[0, 0, 1], &[0, -1, 0]]);
        let g = gcd_of_minors(&h1, &h2, 2);
        assert!(g.is_nonzero_constant());
        assert_eq!(g, gcd_forms(&all_minors(&h1, &h2, 2)));
    }

    #[test]
    fn trivial_sizes() {
        let a = Mat::from_ints(&[&[1, 2], &[3, 4]]);
        assert_eq!(gcd_of_minors(&a, &a, 0), BinaryForm::one());
        assert!(gcd_of_minors(&Mat::zeros(2, 2), &Mat::zeros(2, 2), 1).is_zero());
    }

    #[test]
    fn root_at_infinity_is_seen() {
        // λ₁·diag(1,0) + λ₂·I: det = (λ₁ + λ₂)λ₂
        let a = Mat::from_ints(&[&[1, 0], &[0, 0]]);
        let g = gcd_of_minors(&a, &Mat::identity(2), 2);
        assert_eq!(g, BinaryForm::new(vec![int(0), int(1), int(1)]));
    }

    fn mat(r: usize, c: usize) -> impl Strategy<Value = Mat> {
        prop::collection::vec(-2i64..=2, r * c)
            .prop_map(move |v| Mat::new(r, c, v.into_iter().map(int).collect()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]
        // the Smith route agrees with literal enumeration of minors
        #[test]
        fn matches_enumeration(
            (a, b, r) in (1usize..4, 1usize..5)
                .prop_flat_map(|(m, n)| (mat(m, n), mat(m, n), 0..=m.min(n)))
        ) {
            prop_assert_eq!(gcd_of_minors(&a, &b, r), gcd_forms(&all_minors(&a, &b, r)));
        }
    }
}
