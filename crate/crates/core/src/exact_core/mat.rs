//! Dense row-major matrices over Q.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::scalar::{format_scalar, int, Scalar};
use super::subspace::Subspace;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Result of Gauss–Jordan elimination.
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: Mat,
    pub pivots: Vec<usize>,
}

impl Mat {
    pub fn new(rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count does not match shape");
        Mat { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    /// Integer matrix from rows; all rows must have equal length.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_fn(rows.len(), cols, |i, j| int(rows[i][j]))
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>, cols: usize) -> Self {
        let r = rows.len();
        let data: Vec<Scalar> = rows.into_iter().flatten().collect();
        Self::new(r, cols, data)
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_cols(rows: usize, cols: &[Vec<Scalar>]) -> Self {
        Self::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn col_vector(v: &[Scalar]) -> Self {
        Self::new(v.len(), 1, v.to_vec())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Mat {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_skew(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i..self.cols).all(|j| self[(i, j)] == -&self[(j, i)]))
    }

    pub fn scale(&self, c: &Scalar) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    /// `λ₁·self + λ₂·other`.
    pub fn combine(&self, l1: &Scalar, other: &Mat, l2: &Scalar) -> Mat {
        assert_eq!(self.shape(), other.shape());
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a * l1 + b * l2).collect(),
        }
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Mat { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn block_diag(blocks: &[Mat]) -> Mat {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            m.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Mat) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        Self::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Mat {
        Self::from_fn(self.rows, idx.len(), |i, j| self[(i, idx[j])].clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        Self::from_fn(idx.len(), self.cols, |i, j| self[(idx[i], j)].clone())
    }

    /// Gauss–Jordan elimination to reduced row-echelon form.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let d = &f * &m[(r, j)];
                    m[(i, j)] -= d;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { reduced: m, pivots }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Right kernel `{x : self·x = 0}`.
    pub fn kernel(&self) -> Subspace {
        let Rref { reduced, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let vecs: Vec<Vec<Scalar>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[f] = Scalar::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&reduced[(r, f)];
                }
                v
            })
            .collect();
        Subspace::from_vectors(self.cols, &vecs)
    }

    /// Column space as a subspace of K^rows.
    pub fn column_space(&self) -> Subspace {
        Subspace::from_vectors(self.rows, &self.columns())
    }

    /// Row space as a subspace of K^cols.
    pub fn row_space(&self) -> Subspace {
        let rows: Vec<Vec<Scalar>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        Subspace::from_vectors(self.cols, &rows)
    }

    pub fn det(&self) -> Scalar {
        assert!(self.is_square());
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Scalar::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det *= &piv;
            let inv = piv.recip();
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] * &inv;
                for j in c..n {
                    let d = &f * &m[(c, j)];
                    m[(i, j)] -= d;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let Rref { reduced, pivots } = self.hstack(&Mat::identity(n)).rref();
        if pivots.len() < n || pivots.last().is_some_and(|&p| p != n - 1) {
            return None;
        }
        Some(reduced.block(0, n, n, n))
    }

    /// Some `X` with `self·X = rhs`, or `None` if inconsistent.
    pub fn solve(&self, rhs: &Mat) -> Option<Mat> {
        assert_eq!(self.rows, rhs.rows);
        let n = self.cols;
        let Rref { reduced, pivots } = self.hstack(rhs).rref();
        if pivots.iter().any(|&p| p >= n) {
            return None;
        }
        let mut x = Mat::zeros(n, rhs.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x[(pc, j)] = reduced[(r, n + j)].clone();
            }
        }
        Some(x)
    }

    pub fn pow(&self, e: usize) -> Mat {
        let mut acc = Mat::identity(self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    /// `det(t·I − self)` by the Faddeev–LeVerrier recursion.
    pub fn char_poly(&self) -> super::poly::UniPoly {
        assert!(self.is_square());
        let n = self.rows;
        let mut c = vec![Scalar::zero(); n + 1];
        c[n] = Scalar::one();
        let mut m = Mat::zeros(n, n);
        for k in 1..=n {
            m = &(self * &m) + &Mat::identity(n).scale(&c[n + 1 - k]);
            let t = (self * &m).trace();
            c[n - k] = -t / Scalar::from_integer((k as i64).into());
        }
        super::poly::UniPoly::new(c)
    }

    /// `p(self)` by Horner's rule.
    pub fn eval_poly(&self, p: &super::poly::UniPoly) -> Mat {
        let n = self.rows;
        let mut acc = Mat::zeros(n, n);
        for c in p.coeffs().iter().rev() {
            acc = &acc * self;
            for i in 0..n {
                acc[(i, i)] += c;
            }
        }
        acc
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul<&Mat> for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Mul<Mat> for Mat {
    type Output = Mat;
    fn mul(self, rhs: Mat) -> Mat {
        &self * &rhs
    }
}

impl Add<&Mat> for &Mat {
    type Output = Mat;
    fn add(self, rhs: &Mat) -> Mat {
        assert_eq!(self.shape(), rhs.shape());
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub<&Mat> for &Mat {
    type Output = Mat;
    fn sub(self, rhs: &Mat) -> Mat {
        assert_eq!(self.shape(), rhs.shape());
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a).collect() }
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_scalar).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// `(rank, kernel, rowspace)` of a matrix, all canonical.
pub fn rref_rank_kernel(m: &Mat) -> (usize, Subspace, Subspace) {
    (m.rank(), m.kernel(), m.row_space())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::scalar::ratio;
    use proptest::prelude::*;

    #[test]
    fn identity_and_zero() {
        let (r, k, _) = rref_rank_kernel(&Mat::identity(3));
        assert_eq!((r, k.dim()), (3, 0));
        let (r, k, row) = rref_rank_kernel(&Mat::zeros(2, 4));
        assert_eq!((r, k.dim(), row.dim()), (0, 4, 0));
    }

    #[test]
    fn skew_kernel_example() {
        let m = Mat::from_ints(&[&[0, 1, 0], &[-1, 0, 0], &[0, 0, 0]]);
        let (r, k, _) = rref_rank_kernel(&m);
        assert_eq!(r, 2);
        assert_eq!(k, Subspace::from_vectors(3, &[vec![int(0), int(0), int(1)]]));
    }

    #[test]
    fn inverse_and_det() {
        let m = Mat::from_ints(&[&[2, 1], &[7, 4]]);
        assert_eq!(m.det(), int(1));
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Mat::identity(2));
        assert!(Mat::from_ints(&[&[1, 2], &[2, 4]]).inverse().is_none());
        let h = Mat::from_ints(&[&[1, 2], &[3, 4]]).scale(&ratio(1, 2));
        assert_eq!(h.det(), ratio(-1, 2));
    }

    #[test]
    fn char_poly_companion() {
        // companion of x^3 − 2x + 5 has that characteristic polynomial
        let m = Mat::from_ints(&[&[0, 0, -5], &[1, 0, 2], &[0, 1, 0]]);
        assert_eq!(m.char_poly(), crate::exact_core::UniPoly::from_ints(&[5, -2, 0, 1]));
        assert!(m.eval_poly(&m.char_poly()).is_zero());
    }

    #[test]
    fn solve_consistent_and_not() {
        let a = Mat::from_ints(&[&[1, 1], &[2, 2]]);
        let x = a.solve(&Mat::from_ints(&[&[3], &[6]])).unwrap();
        assert_eq!(&a * &x, Mat::from_ints(&[&[3], &[6]]));
        assert!(a.solve(&Mat::from_ints(&[&[3], &[7]])).is_none());
    }

    fn small_mat(r: usize, c: usize) -> impl Strategy<Value = Mat> {
        prop::collection::vec(-3i64..=3, r * c)
            .prop_map(move |v| Mat::new(r, c, v.into_iter().map(int).collect()))
    }

    proptest! {
        #[test]
        fn rank_nullity(m in (1usize..5, 1usize..6).prop_flat_map(|(r, c)| small_mat(r, c))) {
            let (rank, ker, row) = rref_rank_kernel(&m);
            prop_assert_eq!(rank + ker.dim(), m.cols());
            prop_assert_eq!(row.dim(), rank);
            prop_assert!((&m * ker.basis()).is_zero());
        }

        #[test]
        fn det_multiplicative(a in small_mat(3, 3), b in small_mat(3, 3)) {
            prop_assert_eq!((&a * &b).det(), a.det() * b.det());
        }
    }
}
