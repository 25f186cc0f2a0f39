//! Matrices over K[λ] and their Smith normal form.

use num_traits::One;

use super::mat::Mat;
use super::poly::UniPoly;
use super::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMat {
    rows: usize,
    cols: usize,
    data: Vec<UniPoly>,
}

impl PolyMat {
    pub fn new(rows: usize, cols: usize, data: Vec<UniPoly>) -> Self {
        assert_eq!(data.len(), rows * cols);
        PolyMat { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMat { rows, cols, data: vec![UniPoly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = UniPoly::one();
        }
        m
    }

    /// The pencil `λ·a + b`.
    pub fn pencil(a: &Mat, b: &Mat) -> Self {
        assert_eq!(a.shape(), b.shape());
        let (r, c) = a.shape();
        let data = (0..r * c)
            .map(|k| {
                let (i, j) = (k / c, k % c);
                UniPoly::new(vec![b[(i, j)].clone(), a[(i, j)].clone()])
            })
            .collect();
        PolyMat { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &UniPoly {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut UniPoly {
        &mut self.data[i * self.cols + j]
    }

    pub fn entries(&self) -> &[UniPoly] {
        &self.data
    }

    pub fn mul(&self, rhs: &PolyMat) -> PolyMat {
        assert_eq!(self.cols, rhs.rows);
        let mut out = PolyMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.at(k, j);
                    if !b.is_zero() {
                        let p = a * b;
                        let e = out.at_mut(i, j);
                        *e = &*e + &p;
                    }
                }
            }
        }
        out
    }

    /// Evaluate every entry at `x`.
    pub fn eval(&self, x: &Scalar) -> Mat {
        Mat::new(self.rows, self.cols, self.data.iter().map(|p| p.eval(x)).collect())
    }

    /// Determinant by cofactor-free elimination over K(λ) (fraction-free Bareiss).
    pub fn det(&self) -> UniPoly {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return UniPoly::one();
        }
        let mut m = self.clone();
        let mut sign = false;
        let mut prev = UniPoly::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !m.at(i, k).is_zero()) else {
                return UniPoly::zero();
            };
            if p != k {
                m.swap_rows(p, k);
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &(m.at(i, j) * m.at(k, k)) - &(m.at(i, k) * m.at(k, j));
                    *m.at_mut(i, j) = v.div_rem(&prev).0;
                }
            }
            prev = m.at(k, k).clone();
        }
        let d = m.at(n - 1, n - 1).clone();
        if sign {
            -d
        } else {
            d
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_dst += f · row_src
    fn add_row(&mut self, dst: usize, src: usize, f: &UniPoly) {
        for j in 0..self.cols {
            let s = self.at(src, j);
            if s.is_zero() {
                continue;
            }
            let v = self.at(dst, j) + &(f * s);
            *self.at_mut(dst, j) = v;
        }
    }

    /// col_dst += f · col_src
    fn add_col(&mut self, dst: usize, src: usize, f: &UniPoly) {
        for i in 0..self.rows {
            let s = self.at(i, src);
            if s.is_zero() {
                continue;
            }
            let v = self.at(i, dst) + &(s * f);
            *self.at_mut(i, dst) = v;
        }
    }

    fn scale_row(&mut self, r: usize, c: &Scalar) {
        for j in 0..self.cols {
            let v = self.at(r, j).scale(c);
            *self.at_mut(r, j) = v;
        }
    }
}

/// Smith normal form `left · p · right = diag(factors, 0, …)`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Nonzero invariant factors, monic, each dividing the next.
    pub factors: Vec<UniPoly>,
    pub left: PolyMat,
    pub right: PolyMat,
}

pub fn smith_normal_form(p: &PolyMat) -> SmithForm {
    let (factors, t) = snf_impl(p, true);
    let (left, right) = t.expect("transforms requested");
    SmithForm { factors, left, right }
}

/// Invariant factors only (no transforms).
pub fn invariant_factors(p: &PolyMat) -> Vec<UniPoly> {
    snf_impl(p, false).0
}

/// Pivot: lowest-degree nonzero entry, ties broken by row-major order.
fn find_pivot(m: &PolyMat, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for i in t..m.rows {
        for j in t..m.cols {
            if let Some(d) = m.at(i, j).degree() {
                if best.is_none_or(|(bd, _, _)| d < bd) {
                    best = Some((d, i, j));
                }
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

fn snf_impl(p: &PolyMat, with_transforms: bool) -> (Vec<UniPoly>, Option<(PolyMat, PolyMat)>) {
    let mut m = p.clone();
    let mut left = with_transforms.then(|| PolyMat::identity(p.rows));
    let mut right = with_transforms.then(|| PolyMat::identity(p.cols));
    let mut factors = Vec::new();
    for t in 0..p.rows.min(p.cols) {
        loop {
            let Some((pi, pj)) = find_pivot(&m, t) else {
                return (factors, left.zip(right));
            };
            if pi != t {
                m.swap_rows(pi, t);
                if let Some(l) = left.as_mut() {
                    l.swap_rows(pi, t);
                }
            }
            if pj != t {
                m.swap_cols(pj, t);
                if let Some(r) = right.as_mut() {
                    r.swap_cols(pj, t);
                }
            }
            let piv = m.at(t, t).clone();
            let mut dirty = false;
            for i in t + 1..m.rows {
                if m.at(i, t).is_zero() {
                    continue;
                }
                let (q, r) = m.at(i, t).div_rem(&piv);
                let nq = -q;
                m.add_row(i, t, &nq);
                if let Some(l) = left.as_mut() {
                    l.add_row(i, t, &nq);
                }
                dirty |= !r.is_zero();
            }
            for j in t + 1..m.cols {
                if m.at(t, j).is_zero() {
                    continue;
                }
                let (q, r) = m.at(t, j).div_rem(&piv);
                let nq = -q;
                m.add_col(j, t, &nq);
                if let Some(rt) = right.as_mut() {
                    rt.add_col(j, t, &nq);
                }
                dirty |= !r.is_zero();
            }
            if dirty {
                continue;
            }
            // pivot must divide the rest of the submatrix
            let bad = (t + 1..m.rows)
                .find(|&i| (t + 1..m.cols).any(|j| !piv.divides(m.at(i, j))));
            if let Some(i) = bad {
                m.add_row(t, i, &UniPoly::one());
                if let Some(l) = left.as_mut() {
                    l.add_row(t, i, &UniPoly::one());
                }
                continue;
            }
            break;
        }
        let lc = m.at(t, t).leading().expect("nonzero pivot").clone();
        if !lc.is_one() {
            let inv = lc.recip();
            m.scale_row(t, &inv);
            if let Some(l) = left.as_mut() {
                l.scale_row(t, &inv);
            }
        }
        factors.push(m.at(t, t).clone());
    }
    (factors, left.zip(right))
}

/// Whether a square polynomial matrix is unimodular (nonzero constant determinant).
pub fn is_unimodular(p: &PolyMat) -> bool {
    let d = p.det();
    d.is_constant() && !d.is_zero()
}

impl PolyMat {
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(UniPoly::is_zero)
    }

    pub fn is_diagonal_with(&self, diag: &[UniPoly]) -> bool {
        (0..self.rows).all(|i| {
            (0..self.cols).all(|j| {
                let want = if i == j && i < diag.len() { diag[i].clone() } else { UniPoly::zero() };
                *self.at(i, j) == want
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::scalar::int;
    use proptest::prelude::*;

    fn p(cs: &[i64]) -> UniPoly {
        UniPoly::from_ints(cs)
    }

    fn check_snf(m: &PolyMat) -> Vec<UniPoly> {
        let s = smith_normal_form(m);
        let d = s.left.mul(m).mul(&s.right);
        assert!(d.is_diagonal_with(&s.factors), "not diagonal: {d:?}");
        assert!(is_unimodular(&s.left) && is_unimodular(&s.right));
        for w in s.factors.windows(2) {
            assert!(w[0].divides(&w[1]));
        }
        assert!(s.factors.iter().all(UniPoly::is_monic));
        assert_eq!(s.factors, invariant_factors(m));
        s.factors
    }

    #[test]
    fn diagonal_input() {
        let m = PolyMat::new(2, 2, vec![p(&[1]), p(&[]), p(&[]), p(&[0, 1])]);
        assert_eq!(check_snf(&m), vec![p(&[1]), p(&[0, 1])]);
    }

    #[test]
    fn skew_jordan_block() {
        // [[0, 5λ+1], [-(5λ+1), 0]]
        let f = p(&[1, 5]);
        let m = PolyMat::new(2, 2, vec![p(&[]), f.clone(), -&f, p(&[])]);
        let monic = f.monic();
        assert_eq!(check_snf(&m), vec![monic.clone(), monic]);
    }

    #[test]
    fn zero_matrix() {
        assert!(check_snf(&PolyMat::zeros(2, 3)).is_empty());
    }

    #[test]
    fn coprime_diagonal_merges() {
        // diag(λ, λ+1) ~ diag(1, λ(λ+1))
        let m = PolyMat::new(2, 2, vec![p(&[0, 1]), p(&[]), p(&[]), p(&[1, 1])]);
        assert_eq!(check_snf(&m), vec![p(&[1]), p(&[0, 1, 1])]);
    }

    #[test]
    fn det_of_pencil() {
        let a = Mat::identity(2);
        let b = Mat::from_ints(&[&[1, 2], &[3, 4]]);
        // det(λI + B) = λ² + 5λ − 2
        assert_eq!(PolyMat::pencil(&a, &b).det(), p(&[-2, 5, 1]));
        let _ = int(0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn snf_round_trip(
            a in prop::collection::vec(-2i64..=2, 9),
            b in prop::collection::vec(-2i64..=2, 9),
        ) {
            let a = Mat::new(3, 3, a.into_iter().map(int).collect());
            let b = Mat::new(3, 3, b.into_iter().map(int).collect());
            let m = PolyMat::pencil(&a, &b);
            let f = check_snf(&m);
            // product of factors = det up to scalar
            let det = m.det();
            let prod = f.iter().fold(UniPoly::one(), |acc, x| &acc * x);
            if det.is_zero() {
                prop_assert!(f.len() < 3);
            } else {
                prop_assert_eq!(det.monic(), prod);
            }
        }
    }
}
