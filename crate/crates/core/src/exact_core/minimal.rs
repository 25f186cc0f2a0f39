//! Minimal polynomial bases of the right nullspace of a pencil `λa + b`.

use super::mat::Mat;
use super::poly::UniPoly;
use super::scalar::Scalar;
use super::subspace::Subspace;

/// One basis vector: its degree (the minimal index) and the coefficient
/// vectors `v_0..v_d` with `v(λ) = Σ λ^j v_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NullVector {
    pub degree: usize,
    pub coeffs: Vec<Vec<Scalar>>,
}

impl NullVector {
    /// Entries of `v(λ)` as polynomials.
    pub fn as_polys(&self) -> Vec<UniPoly> {
        let n = self.coeffs.first().map_or(0, Vec::len);
        (0..n)
            .map(|i| UniPoly::new(self.coeffs.iter().map(|c| c[i].clone()).collect()))
            .collect()
    }

    pub fn eval(&self, x: &Scalar) -> Vec<Scalar> {
        self.as_polys().iter().map(|p| p.eval(x)).collect()
    }
}

/// Block coefficient system for degree `d`: unknowns `v_0..v_d` (n each),
/// equations `b v_0 = 0`, `b v_j + a v_{j−1} = 0`, `a v_d = 0`.
fn coefficient_system(a: &Mat, b: &Mat, d: usize) -> Mat {
    let (m, n) = a.shape();
    let mut sys = Mat::zeros(m * (d + 2), n * (d + 1));
    for j in 0..=d {
        sys.set_block(m * j, n * j, b);
        sys.set_block(m * (j + 1), n * j, a);
    }
    sys
}

/// Minimal basis of the right nullspace of `λa + b` over K(λ), degrees nondecreasing.
///
/// At each degree bound `d`, the solutions of the coefficient system are
/// reduced modulo the shifts `λ^s·v_i` of the vectors already found; any
/// excess dimension yields new basis vectors of degree exactly `d`.
pub fn minimal_nullspace_basis(a: &Mat, b: &Mat) -> Vec<NullVector> {
    assert_eq!(a.shape(), b.shape(), "pencil matrices must share a shape");
    let n = a.cols();
    let target = n - generic_rank(a, b);
    let mut found: Vec<NullVector> = Vec::new();
    let mut d = 0;
    while found.len() < target && d <= n {
        let sys = coefficient_system(a, b, d);
        let sols = sys.kernel();
        let mut shifts: Vec<Vec<Scalar>> = Vec::new();
        for v in &found {
            for s in 0..=(d - v.degree) {
                let mut flat = vec![Scalar::default(); n * (d + 1)];
                for (j, c) in v.coeffs.iter().enumerate() {
                    flat[n * (j + s)..n * (j + s + 1)].clone_from_slice(c);
                }
                shifts.push(flat);
            }
        }
        let mut span = Subspace::from_vectors(n * (d + 1), &shifts);
        for sol in sols.vectors() {
            if found.len() == target {
                break;
            }
            if span.contains_vec(&sol) {
                continue;
            }
            let coeffs: Vec<Vec<Scalar>> = sol.chunks(n).map(<[Scalar]>::to_vec).collect();
            // one new vector of degree d, plus its shifts at this degree (s = 0 only)
            shifts.push(sol);
            span = Subspace::from_vectors(n * (d + 1), &shifts);
            found.push(NullVector { degree: d, coeffs });
        }
        d += 1;
    }
    found
}

/// Rank of `λa + b` over K(λ): the maximum rank over `n+1` distinct points.
pub fn generic_rank(a: &Mat, b: &Mat) -> usize {
    let bound = a.rows().min(a.cols());
    let mut best = 0;
    for t in 0..=(bound as i64) {
        let r = a.combine(&Scalar::from_integer(t.into()), b, &Scalar::from_integer(1.into())).rank();
        best = best.max(r);
        if best == bound {
            break;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::scalar::int;
    use proptest::prelude::*;

    #[test]
    fn kronecker_three_by_three() {
        // K3 skew pair: h1 pairs (w0,w1), h2 pairs (w1,w2)
        let h1 = Mat::from_ints(&[&[0, 1, 0], &[-1, 0, 0], &[0, 0, 0]]);
        let h2 = Mat::from_ints(&[&[0, 0, 0], &[0, 0, 1], &[0, -1, 0]]);
        let basis = minimal_nullspace_basis(&h1, &h2);
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0].degree, 1);
        // v(λ) ∝ w0 + λ w2 (up to sign)
        let v = &basis[0];
        assert!(v.coeffs[0][1] == int(0) && v.coeffs[1][1] == int(0));
        assert!(v.coeffs[0][2] == int(0) && v.coeffs[1][0] == int(0));
    }

    #[test]
    fn invertible_and_zero() {
        assert!(minimal_nullspace_basis(&Mat::identity(3), &Mat::zeros(3, 3)).is_empty());
        let z = minimal_nullspace_basis(&Mat::zeros(2, 2), &Mat::zeros(2, 2));
        assert_eq!(z.len(), 2);
        assert!(z.iter().all(|v| v.degree == 0));
    }

    fn mat(r: usize, c: usize) -> impl Strategy<Value = Mat> {
        prop::collection::vec(-2i64..=2, r * c)
            .prop_map(move |v| Mat::new(r, c, v.into_iter().map(int).collect()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn basis_is_null_and_counts_match(
            (a, b) in (1usize..5, 1usize..7).prop_flat_map(|(r, c)| (mat(r, c), mat(r, c)))
        ) {
            let basis = minimal_nullspace_basis(&a, &b);
            let rho = generic_rank(&a, &b);
            prop_assert_eq!(basis.len(), a.cols() - rho);
            for w in basis.windows(2) {
                prop_assert!(w[0].degree <= w[1].degree);
            }
            for v in &basis {
                for x in [-3i64, -1, 2, 5, 7] {
                    let x = int(x);
                    let m = a.combine(&x, &b, &int(1));
                    prop_assert!(m.mul_vec(&v.eval(&x)).iter().all(|e| *e == int(0)));
                }
            }
        }
    }
}
