//! Univariate polynomials over Q and homogeneous binary forms in (λ₁, λ₂).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::scalar::{format_scalar, Scalar};

/// Polynomial in one variable, coefficients lowest degree first.
/// The zero polynomial is the empty coefficient list.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| super::scalar::int(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c·x^k`.
    pub fn monomial(c: Scalar, k: usize) -> Self {
        let mut v = vec![Scalar::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `x`.
    pub fn x() -> Self {
        Self::monomial(Scalar::one(), 1)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(Scalar::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Scalar::from_integer(k.into()))
                .collect(),
        )
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc_inv = d.coeffs[dd].recip();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Scalar::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &lc_inv;
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dj;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.div_rem(d).1
    }

    pub fn divides(&self, other: &UniPoly) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s·self + t·other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading().cloned() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = lc.recip();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    /// `x^deg · p(1/x)` with the given nominal degree.
    pub fn reversed(&self, deg: usize) -> UniPoly {
        let mut v = vec![Scalar::zero(); deg + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[deg - k] = c.clone();
        }
        Self::new(v)
    }

    /// Multiplicity of 0 as a root (0 for the zero polynomial).
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Homogenize to a binary form of the given degree: `x ↦ λ₁/λ₂`.
    pub fn homogenize(&self, deg: usize) -> BinaryForm {
        assert!(self.degree().is_none_or(|d| d <= deg));
        // coefficient of λ1^{deg-j} λ2^j is the coefficient of x^{deg-j}
        BinaryForm::new((0..=deg).map(|j| self.coeff(deg - j)).collect())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.coeffs.iter().enumerate().rev().map(|(k, c)| {
            let mono = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            (c, mono)
        });
        write_terms(f, terms)
    }
}

/// Signed sum of `coefficient·monomial` terms, e.g. `x^2 - (1/2)x + 3`.
pub(crate) fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a Scalar, String)>,
) -> fmt::Result {
    let mut first = true;
    for (c, mono) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        match (first, neg) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        first = false;
        let a = c.abs();
        if mono.is_empty() {
            write!(f, "{}", format_scalar(&a))?;
        } else if a.is_one() {
            write!(f, "{mono}")?;
        } else if a.is_integer() {
            write!(f, "{}{mono}", format_scalar(&a))?;
        } else {
            write!(f, "({}){mono}", format_scalar(&a))?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: &UniPoly) -> UniPoly {
                (&self).$m(rhs)
            }
        }
    };
}

impl Add<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UniPoly::new(v)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

/// Homogeneous form Σ_j c_j λ₁^{d−j} λ₂^j.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    coeffs: Vec<Scalar>,
}

impl BinaryForm {
    /// Degree is `coeffs.len() - 1`; an empty list is read as the zero constant.
    pub fn new(coeffs: Vec<Scalar>) -> Self {
        if coeffs.is_empty() {
            return BinaryForm { coeffs: vec![Scalar::zero()] };
        }
        BinaryForm { coeffs }
    }

    pub fn one() -> Self {
        BinaryForm { coeffs: vec![Scalar::one()] }
    }

    pub fn zero() -> Self {
        BinaryForm { coeffs: vec![Scalar::zero()] }
    }

    /// `λ₁`
    pub fn lambda1() -> Self {
        BinaryForm { coeffs: vec![Scalar::one(), Scalar::zero()] }
    }

    /// `λ₂`
    pub fn lambda2() -> Self {
        BinaryForm { coeffs: vec![Scalar::zero(), Scalar::one()] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Nonzero and of degree 0.
    pub fn is_nonzero_constant(&self) -> bool {
        self.degree() == 0 && !self.is_zero()
    }

    pub fn eval(&self, l1: &Scalar, l2: &Scalar) -> Scalar {
        let d = self.degree();
        let mut acc = Scalar::zero();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc += c * num_traits::pow(l1.clone(), d - j) * num_traits::pow(l2.clone(), j);
        }
        acc
    }

    /// Scale so that the first nonzero coefficient is 1.
    pub fn normalized(&self) -> Self {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            None => self.clone(),
            Some(c) => {
                let inv = c.recip();
                BinaryForm { coeffs: self.coeffs.iter().map(|a| a * &inv).collect() }
            }
        }
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        let mut v = vec![Scalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        BinaryForm { coeffs: v }
    }

    /// Power of λ₂ dividing the form (a root at (1:0)).
    pub fn lambda2_valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Power of λ₁ dividing the form (a root at (0:1)).
    pub fn lambda1_valuation(&self) -> usize {
        self.coeffs.iter().rev().take_while(|c| c.is_zero()).count()
    }

    /// `f(t, 1)` as a polynomial in t = λ₁/λ₂.
    pub fn dehomogenize(&self) -> UniPoly {
        let d = self.degree();
        UniPoly::new((0..=d).map(|k| self.coeffs[d - k].clone()).collect())
    }
}

impl fmt::Debug for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let terms = self.coeffs.iter().enumerate().map(|(j, c)| {
            let pow = |v: &str, e: usize| match e {
                0 => String::new(),
                1 => v.to_string(),
                _ => format!("{v}^{e}"),
            };
            let mono = [pow("l1", d - j), pow("l2", j)]
                .into_iter()
                .filter(|s| !s.is_empty())
                .collect::<Vec<_>>()
                .join("·");
            (c, mono)
        });
        write_terms(f, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::super::scalar::{int, ratio};
    use super::*;
    use proptest::prelude::*;

    fn p(cs: &[i64]) -> UniPoly {
        UniPoly::from_ints(cs)
    }

    #[test]
    fn trims_trailing_zeros() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[]).degree(), None);
    }

    #[test]
    fn division_and_gcd() {
        // (x+1)(x-2) and (x+1)(x+3)
        let a = &p(&[1, 1]) * &p(&[-2, 1]);
        let b = &p(&[1, 1]) * &p(&[3, 1]);
        assert_eq!(a.gcd(&b), p(&[1, 1]));
        let (q, r) = a.div_rem(&p(&[1, 1]));
        assert_eq!(q, p(&[-2, 1]));
        assert!(r.is_zero());
        assert_eq!(UniPoly::zero().gcd(&UniPoly::zero()), UniPoly::zero());
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[2, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(g, UniPoly::one());
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn homogenize_round_trip() {
        // 5t + 1 -> 5λ1 + λ2
        let f = p(&[1, 5]).homogenize(1);
        assert_eq!(f.coeffs(), &[int(5), int(1)]);
        assert_eq!(f.dehomogenize(), p(&[1, 5]));
        assert_eq!(f.normalized().coeffs(), &[int(1), ratio(1, 5)]);
        // λ1 λ2^2 in degree 3: coefficient index 2
        let g = p(&[0, 1]).homogenize(1).mul(&BinaryForm::lambda2()).mul(&BinaryForm::lambda2());
        assert_eq!(g.lambda2_valuation(), 2);
        assert_eq!(g.eval(&int(2), &int(3)), int(18));
    }

    proptest! {
        #[test]
        fn div_rem_identity(a in prop::collection::vec(-9i64..9, 0..6), b in prop::collection::vec(-9i64..9, 1..4)) {
            let (a, b) = (p(&a), p(&b));
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b);
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.degree() < b.degree());
        }

        #[test]
        fn eval_is_ring_hom(a in prop::collection::vec(-9i64..9, 0..5), b in prop::collection::vec(-9i64..9, 0..5), x in -5i64..5) {
            let (a, b, x) = (p(&a), p(&b), int(x));
            prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
            prop_assert_eq!((&a + &b).eval(&x), a.eval(&x) + b.eval(&x));
        }
    }
}
