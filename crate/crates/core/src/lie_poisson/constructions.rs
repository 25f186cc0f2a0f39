//! Mapping algebras `g ⊗ A` over finite-dimensional commutative algebras.

use num_traits::{One, Zero};

use super::LieAlgebraData;
use crate::error::{Error, Result};
use crate::exact_core::{Mat, Scalar};

/// A commutative associative unital algebra given by its multiplication table
/// `a_p·a_q = Σ_s t[p][q][s]·a_s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommAlgebra {
    table: Vec<Vec<Vec<Scalar>>>,
}

impl CommAlgebra {
    pub fn new(table: Vec<Vec<Vec<Scalar>>>) -> Result<Self> {
        let m = table.len();
        if table.iter().any(|row| row.len() != m || row.iter().any(|v| v.len() != m)) {
            return Err(Error::Schema(format!("multiplication table must be {m}×{m}×{m}")));
        }
        let a = CommAlgebra { table };
        for p in 0..m {
            for q in 0..p {
                if a.table[p][q] != a.table[q][p] {
                    return Err(Error::NotCommutative);
                }
            }
        }
        let basis = |i: usize| -> Vec<Scalar> {
            (0..m).map(|k| if k == i { Scalar::one() } else { Scalar::zero() }).collect()
        };
        for p in 0..m {
            for q in 0..m {
                for s in 0..m {
                    let lhs = a.mul(&a.table[p][q], &basis(s));
                    let rhs = a.mul(&basis(p), &a.table[q][s]);
                    if lhs != rhs {
                        return Err(Error::NotAssociative);
                    }
                }
            }
        }
        // unit u: Σ_p u_p t[p][q] = e_q for all q
        let rows: Vec<Vec<Scalar>> = (0..m)
            .flat_map(|q| (0..m).map(move |s| (q, s)))
            .map(|(q, s)| (0..m).map(|p| a.table[p][q][s].clone()).collect())
            .collect();
        let rhs: Vec<Scalar> =
            (0..m).flat_map(|q| (0..m).map(move |s| if q == s { Scalar::one() } else { Scalar::zero() })).collect();
        if m > 0 && Mat::from_rows(rows, m).solve(&Mat::col_vector(&rhs)).is_none() {
            return Err(Error::NoUnit);
        }
        Ok(a)
    }

    /// The ground field `K`.
    pub fn ground() -> Self {
        CommAlgebra { table: vec![vec![vec![Scalar::one()]]] }
    }

    /// `K[z]/z^{k+1}` with basis `1, z, …, z^k`.
    pub fn truncated(k: usize) -> Self {
        let m = k + 1;
        let table = (0..m)
            .map(|p| {
                (0..m)
                    .map(|q| (0..m).map(|s| if p + q == s { Scalar::one() } else { Scalar::zero() }).collect())
                    .collect()
            })
            .collect();
        CommAlgebra { table }
    }

    /// `K[z₁, z₂]/(z₁z₂, z₁^k − z₂^k)` with basis `1, z₁, …, z₁^k, z₂, …, z₂^{k−1}`.
    pub fn b_k(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("B_k needs k ≥ 1".into()));
        }
        let m = 2 * k;
        // monomial of index i as (power of z₁, power of z₂)
        let mono = |i: usize| if i <= k { (i, 0) } else { (0, i - k) };
        let index = |a: usize, b: usize| -> Option<usize> {
            match (a, b) {
                (a, 0) if a <= k => Some(a),
                (0, b) if b < k => Some(k + b),
                (0, b) if b == k => Some(k),
                _ => None,
            }
        };
        let table = (0..m)
            .map(|p| {
                (0..m)
                    .map(|q| {
                        let ((a1, b1), (a2, b2)) = (mono(p), mono(q));
                        let target = if (a1 + a2 > 0) && (b1 + b2 > 0) { None } else { index(a1 + a2, b1 + b2) };
                        (0..m).map(|s| if target == Some(s) { Scalar::one() } else { Scalar::zero() }).collect()
                    })
                    .collect()
            })
            .collect();
        Self::new(table)
    }

    pub fn dim(&self) -> usize {
        self.table.len()
    }

    pub fn product(&self, p: usize, q: usize) -> &[Scalar] {
        &self.table[p][q]
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let m = self.dim();
        let mut out = vec![Scalar::zero(); m];
        for (p, xp) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (q, yq) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let w = xp * yq;
                for (o, t) in out.iter_mut().zip(&self.table[p][q]) {
                    if !t.is_zero() {
                        *o += &w * t;
                    }
                }
            }
        }
        out
    }
}

/// `g ⊗ A` with `[x ⊗ a, y ⊗ b] = [x, y] ⊗ ab`; `x_i ⊗ a_p` has index `p·n + i`.
pub fn tensor_with_algebra(g: &LieAlgebraData, a: &CommAlgebra) -> Result<LieAlgebraData> {
    let (n, m) = (g.n(), a.dim());
    let mut entries = Vec::new();
    for big_i in 0..n * m {
        for big_j in big_i + 1..n * m {
            let (p, i) = (big_i / n, big_i % n);
            let (q, j) = (big_j / n, big_j % n);
            let mut cs = Vec::new();
            for (s, t) in a.product(p, q).iter().enumerate().filter(|(_, t)| !t.is_zero()) {
                for (k, c) in g.structure(i, j).iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    cs.push((s * n + k, c * t));
                }
            }
            if !cs.is_empty() {
                entries.push((big_i, big_j, cs));
            }
        }
    }
    LieAlgebraData::new(n * m, entries)
}

/// `g ⋉ ad_g = g ⊗ K[z]/z²`.
pub fn semidirect_double(g: &LieAlgebraData) -> Result<LieAlgebraData> {
    tensor_with_algebra(g, &CommAlgebra::truncated(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::scalar::int;
    use crate::lie_poisson::{algebra_rank, tables::builtin};

    #[test]
    fn algebra_validation() {
        assert_eq!(CommAlgebra::new(CommAlgebra::truncated(3).table.clone()).unwrap().dim(), 4);
        assert_eq!(CommAlgebra::b_k(2).unwrap().dim(), 4);
        // x·y = x, y·x = 0
        let nc = vec![vec![vec![int(1), int(0)], vec![int(1), int(0)]], vec![vec![int(0), int(0)], vec![int(0), int(0)]]];
        assert_eq!(CommAlgebra::new(nc), Err(Error::NotCommutative));
        // a² = b, ab = a, b² = a: (aa)b = a but a(ab) = b
        let na = vec![vec![vec![int(0), int(1)], vec![int(1), int(0)]], vec![vec![int(1), int(0)], vec![int(1), int(0)]]];
        assert_eq!(CommAlgebra::new(na), Err(Error::NotAssociative));
        let nil = vec![vec![vec![int(0)]]];
        assert_eq!(CommAlgebra::new(nil), Err(Error::NoUnit));
    }

    #[test]
    fn tensor_products() {
        let sl2 = builtin("sl2").unwrap().algebra;
        assert_eq!(tensor_with_algebra(&sl2, &CommAlgebra::ground()).unwrap(), sl2);
        let d = semidirect_double(&sl2).unwrap();
        assert_eq!(d.n(), 6);
        assert_eq!(algebra_rank(&d).rank, 2);
        let t = tensor_with_algebra(&sl2, &CommAlgebra::truncated(2)).unwrap();
        assert_eq!((t.n(), algebra_rank(&t).rank), (9, 3));
        let b = tensor_with_algebra(&sl2, &CommAlgebra::b_k(2).unwrap()).unwrap();
        assert_eq!(b.n(), 12);
    }
}
