//! Sparse multivariate polynomials over Q.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::mat::Mat;
use super::scalar::{format_scalar, Scalar};

/// Exponent vector; monomials are ordered lexicographically.
pub type Monomial = Vec<u16>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Scalar::one())
    }

    /// The coordinate function `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, Scalar::one());
        p
    }

    /// `Σ c_i x_i`.
    pub fn linear(coeffs: &[Scalar]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().map(|e| e.iter().map(|&x| x as usize).sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().map(|&x| x as usize).sum::<usize>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn add_term(&mut self, e: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect() }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = MPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Monomial = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> MPoly {
        let mut acc = MPoly::one(self.nvars);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `∂/∂x_i`.
    pub fn derivative(&self, i: usize) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[i] -= 1;
            out.add_term(f, c * Scalar::from_integer(e[i].into()));
        }
        out
    }

    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        assert_eq!(x.len(), self.nvars);
        let mut acc = Scalar::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(xi.clone(), k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute `x_i ↦ polys[i]` (all polys share a variable count).
    pub fn compose(&self, polys: &[MPoly]) -> MPoly {
        assert_eq!(polys.len(), self.nvars);
        let m = polys.first().map_or(0, |p| p.nvars);
        let mut out = MPoly::zero(m);
        for (e, c) in &self.terms {
            let mut t = MPoly::constant(m, c.clone());
            for (p, &k) in polys.iter().zip(e) {
                if k > 0 {
                    t = t.mul(&p.pow(k as usize));
                }
            }
            out = out.add(&t);
        }
        out
    }

    fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        let (de, dc) = d.leading().expect("division by zero polynomial");
        let dinv = dc.recip();
        let mut rem = self.clone();
        let mut q = MPoly::zero(self.nvars);
        while let Some((re, rc)) = rem.leading() {
            if re.iter().zip(de).any(|(a, b)| a < b) {
                return None;
            }
            let e: Monomial = re.iter().zip(de).map(|(a, b)| a - b).collect();
            let c = rc * &dinv;
            let t = MPoly::from_terms(self.nvars, [(e, c)]);
            rem = rem.sub(&t.mul(d));
            q = q.add(&t);
        }
        Some(q)
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", format_scalar(c))?;
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "·x{i}")?,
                    _ => write!(f, "·x{i}^{k}")?,
                }
            }
        }
        Ok(())
    }
}

/// Rank over the rational function field of a matrix with polynomial entries,
/// by fraction-free (Bareiss) elimination with first-nonzero pivoting.
pub fn symbolic_rank(m: &[Vec<MPoly>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let nvars = m[0].first().map_or(0, MPoly::nvars);
    let mut a: Vec<Vec<MPoly>> = m.to_vec();
    let mut prev = MPoly::one(nvars);
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let piv = a[rank][c].clone();
        for i in rank + 1..rows {
            let f = a[i][c].clone();
            for j in c + 1..cols {
                let v = a[i][j].mul(&piv).sub(&f.mul(&a[rank][j]));
                a[i][j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][c] = MPoly::zero(nvars);
        }
        prev = piv;
        rank += 1;
    }
    rank
}

/// Matrix of linear forms `M(x) = Σ_k x_k·coeffs[k]` as polynomial entries.
pub fn linear_matrix(coeffs: &[Mat]) -> Vec<Vec<MPoly>> {
    let (r, c) = coeffs.first().map_or((0, 0), Mat::shape);
    (0..r)
        .map(|i| {
            (0..c)
                .map(|j| {
                    let cs: Vec<Scalar> = coeffs.iter().map(|m| m[(i, j)].clone()).collect();
                    MPoly::linear(&cs)
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::scalar::int;

    #[test]
    fn arithmetic_and_division() {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let p = x.add(&y).mul(&x.sub(&y)); // x² − y²
        assert_eq!(p.eval(&[int(3), int(2)]), int(5));
        assert_eq!(p.div_exact(&x.add(&y)), Some(x.sub(&y)));
        assert_eq!(p.div_exact(&x), None);
        assert_eq!(p.derivative(0), x.scale(&int(2)));
        assert!(p.is_homogeneous());
    }

    #[test]
    fn compose_substitutes() {
        let x = MPoly::var(1, 0);
        let p = x.pow(2).add(&MPoly::one(1)); // x² + 1
        let q = p.compose(&[x.add(&MPoly::one(1))]); // (x+1)² + 1
        assert_eq!(q.eval(&[int(2)]), int(10));
    }

    #[test]
    fn symbolic_rank_of_skew_lie_poisson_sl2() {
        // [[0, z, −2x],[−z, 0, 2y],[2x, −2y, 0]] in variables (x, y, z)
        let x = MPoly::var(3, 0);
        let y = MPoly::var(3, 1);
        let z = MPoly::var(3, 2);
        let zero = MPoly::zero(3);
        let m = vec![
            vec![zero.clone(), z.clone(), x.scale(&int(-2))],
            vec![z.scale(&int(-1)), zero.clone(), y.scale(&int(2))],
            vec![x.scale(&int(2)), y.scale(&int(-2)), zero],
        ];
        assert_eq!(symbolic_rank(&m), 2);
    }
}
