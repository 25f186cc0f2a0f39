//! Factorization of square-free primitive integer polynomials (Zassenhaus):
//! factor modulo a small prime, Hensel-lift past a coefficient bound, then
//! recombine modular factors by exact trial division.
//!
//! Polynomials are coefficient vectors, lowest degree first.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Number of admissible primes tried; the one giving the fewest modular
/// factors is used for lifting.
const PRIME_TRIALS: usize = 5;

type Fp = Vec<u64>;

fn deg<T>(a: &[T]) -> usize {
    a.len().saturating_sub(1)
}

fn trim_fp(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn trim_z(mut a: Vec<BigInt>) -> Vec<BigInt> {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

/// Arithmetic in `F_p[x]` for a small odd prime.
struct Field {
    p: u64,
}

impl Field {
    fn reduce(&self, x: &BigInt) -> u64 {
        x.mod_floor(&BigInt::from(self.p)).to_u64().expect("reduced below p")
    }

    fn from_z(&self, a: &[BigInt]) -> Fp {
        trim_fp(a.iter().map(|c| self.reduce(c)).collect())
    }

    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * a % self.p;
            }
            a = a * a % self.p;
            e >>= 1;
        }
        r
    }

    fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverting zero mod {}", self.p);
        self.pow(a, self.p - 2)
    }

    fn add(&self, a: &[u64], b: &[u64]) -> Fp {
        let n = a.len().max(b.len());
        trim_fp(
            (0..n)
                .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % self.p)
                .collect(),
        )
    }

    fn sub(&self, a: &[u64], b: &[u64]) -> Fp {
        let n = a.len().max(b.len());
        trim_fp(
            (0..n)
                .map(|i| (a.get(i).copied().unwrap_or(0) + self.p - b.get(i).copied().unwrap_or(0)) % self.p)
                .collect(),
        )
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Fp {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % self.p;
            }
        }
        trim_fp(out)
    }

    fn scale(&self, a: &[u64], c: u64) -> Fp {
        trim_fp(a.iter().map(|x| x * c % self.p).collect())
    }

    fn monic(&self, a: &[u64]) -> Fp {
        match a.last() {
            Some(&l) => self.scale(a, self.inv(l)),
            None => Vec::new(),
        }
    }

    fn divrem(&self, a: &[u64], b: &[u64]) -> (Fp, Fp) {
        assert!(!b.is_empty(), "division by zero polynomial");
        let mut r = a.to_vec();
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let li = self.inv(*b.last().expect("nonzero"));
        let mut q = vec![0u64; r.len() - b.len() + 1];
        for k in (0..q.len()).rev() {
            let c = r[k + b.len() - 1] * li % self.p;
            q[k] = c;
            if c != 0 {
                for (j, y) in b.iter().enumerate() {
                    r[k + j] = (r[k + j] + self.p - c * y % self.p) % self.p;
                }
            }
        }
        (trim_fp(q), trim_fp(r))
    }

    fn rem(&self, a: &[u64], b: &[u64]) -> Fp {
        self.divrem(a, b).1
    }

    fn gcd(&self, a: &[u64], b: &[u64]) -> Fp {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// `(g, s, t)` with `s·a + t·b = g` monic.
    fn ext_gcd(&self, a: &[u64], b: &[u64]) -> (Fp, Fp, Fp) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let l = self.inv(*r0.last().expect("gcd of nonzero inputs"));
        (self.scale(&r0, l), self.scale(&s0, l), self.scale(&t0, l))
    }

    fn powmod(&self, a: &[u64], e: &BigUint, m: &[u64]) -> Fp {
        let mut result = vec![1u64];
        let mut base = self.rem(a, m);
        for i in 0..e.bits() {
            if e.bit(i) {
                result = self.rem(&self.mul(&result, &base), m);
            }
            base = self.rem(&self.mul(&base, &base), m);
        }
        self.rem(&result, m)
    }

    fn derivative(&self, a: &[u64]) -> Fp {
        trim_fp(a.iter().enumerate().skip(1).map(|(i, c)| (i as u64 % self.p) * c % self.p).collect())
    }

    /// Distinct-degree factorization of a monic square-free polynomial.
    fn ddf(&self, f: &[u64]) -> Vec<(Fp, usize)> {
        let x = vec![0u64, 1];
        let mut f = f.to_vec();
        let mut h = x.clone();
        let mut out = Vec::new();
        let mut i = 0;
        while deg(&f) >= 2 * (i + 1) {
            i += 1;
            h = self.powmod(&h, &BigUint::from(self.p), &f);
            let g = self.gcd(&f, &self.sub(&h, &x));
            if deg(&g) > 0 {
                f = self.divrem(&f, &g).0;
                h = self.rem(&h, &f);
                out.push((g, i));
            }
        }
        if deg(&f) > 0 {
            let d = deg(&f);
            out.push((f, d));
        }
        out
    }

    /// Cantor–Zassenhaus splitting of a product of degree-`d` irreducibles.
    fn edf(&self, g: &[u64], d: usize, rng: &mut ChaCha8Rng) -> Vec<Fp> {
        let n = deg(g);
        if n == d {
            return vec![g.to_vec()];
        }
        let e = (BigUint::from(self.p).pow(d as u32) - 1u32) / 2u32;
        loop {
            let a = trim_fp((0..n).map(|_| rng.gen_range(0..self.p)).collect());
            if deg(&a) == 0 {
                continue;
            }
            let b = self.sub(&self.powmod(&a, &e, g), &[1]);
            let u = self.gcd(g, &b);
            if deg(&u) > 0 && deg(&u) < n {
                let v = self.divrem(g, &u).0;
                let mut out = self.edf(&u, d, rng);
                out.extend(self.edf(&v, d, rng));
                return out;
            }
        }
    }

    /// Monic irreducible factors of a monic square-free polynomial.
    fn factor(&self, f: &[u64]) -> Vec<Fp> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.p);
        self.ddf(f).into_iter().flat_map(|(g, d)| self.edf(&g, d, &mut rng)).collect()
    }
}

fn odd_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| (3..).step_by(2).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

// Arithmetic in (Z/mZ)[x], representatives in [0, m).

fn zred(a: Vec<BigInt>, m: &BigInt) -> Vec<BigInt> {
    trim_z(a.into_iter().map(|c| c.mod_floor(m)).collect())
}

fn zadd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim_z((0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect())
}

fn zsub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim_z((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim_z(out)
}

/// Division by a monic polynomial modulo m.
fn zdivrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    let mut r = zred(a.to_vec(), m);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let c = r[k + b.len() - 1].mod_floor(m);
        if !c.is_zero() {
            for (j, y) in b.iter().enumerate() {
                r[k + j] = (&r[k + j] - &c * y).mod_floor(m);
            }
        }
        q[k] = c;
    }
    (trim_z(q), zred(r, m))
}

fn fp_to_z(a: &[u64]) -> Vec<BigInt> {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// Lifts the monic factor `u` of `f mod p` to a monic factor modulo `m ≥ bound`
/// (m a power of p, the same for every factor).
fn hensel_lift(field: &Field, f: &[BigInt], u: &[u64], bound: &BigInt) -> (Vec<BigInt>, BigInt) {
    let fp = field.from_z(f);
    let w = field.divrem(&fp, u).0;
    let (one, s, t) = field.ext_gcd(&w, u);
    assert_eq!(one, vec![1], "modular factors must be coprime");
    // normalize so that deg s < deg u and deg t < deg w
    let (q, s) = field.divrem(&s, u);
    let t = field.add(&t, &field.mul(&q, &w));
    let (mut g, mut h, mut s, mut t) = (fp_to_z(&w), fp_to_z(u), fp_to_z(&s), fp_to_z(&t));
    let mut m = BigInt::from(field.p);
    while &m <= bound {
        let m2 = &m * &m;
        let e = zred(zsub(f, &zmul(&g, &h)), &m2);
        let (q, r) = zdivrem_monic(&zmul(&s, &e), &h, &m2);
        let g2 = zred(zadd(&g, &zadd(&zmul(&t, &e), &zmul(&q, &g))), &m2);
        let h2 = zred(zadd(&h, &r), &m2);
        let b = zred(zsub(&zadd(&zmul(&s, &g2), &zmul(&t, &h2)), &[BigInt::one()]), &m2);
        let (c, d) = zdivrem_monic(&zmul(&s, &b), &h2, &m2);
        s = zred(zsub(&s, &d), &m2);
        t = zred(zsub(&t, &zadd(&zmul(&t, &b), &zmul(&c, &g2))), &m2);
        g = g2;
        h = h2;
        m = m2;
    }
    (h, m)
}

fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part with positive leading coefficient.
fn primitive(a: Vec<BigInt>) -> Vec<BigInt> {
    let mut c = content(&a);
    if c.is_zero() {
        return a;
    }
    if a.last().is_some_and(Signed::is_negative) {
        c = -c;
    }
    a.into_iter().map(|x| x / &c).collect()
}

/// `a / b` over Z when b divides a exactly.
fn exact_div(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    if b.len() > a.len() {
        return None;
    }
    if !b[0].is_zero() && !a[0].is_zero() && !a[0].is_multiple_of(&b[0]) {
        return None;
    }
    let lb = b.last().expect("nonzero divisor");
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let top = &r[k + b.len() - 1];
        if !top.is_multiple_of(lb) {
            return None;
        }
        let c = top / lb;
        for (j, y) in b.iter().enumerate() {
            r[k + j] -= &c * y;
        }
        q[k] = c;
    }
    r.iter().all(Zero::is_zero).then(|| trim_z(q))
}

fn symmetric(a: Vec<BigInt>, m: &BigInt) -> Vec<BigInt> {
    let half = m / 2;
    trim_z(
        a.into_iter()
            .map(|c| {
                let c = c.mod_floor(m);
                if c > half {
                    c - m
                } else {
                    c
                }
            })
            .collect(),
    )
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
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

/// Irreducible factors over Z of a square-free primitive polynomial with
/// positive leading coefficient, each primitive with positive leading
/// coefficient. The product of the output equals the input.
pub fn factor_squarefree(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let f = trim_z(f.to_vec());
    let n = deg(&f);
    if f.len() <= 2 {
        return vec![f];
    }
    let lc = f.last().expect("nonzero").clone();

    let mut best: Option<(Field, Vec<Fp>)> = None;
    let mut tried = 0;
    for p in odd_primes() {
        if tried == PRIME_TRIALS {
            break;
        }
        let field = Field { p };
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = field.monic(&field.from_z(&f));
        if deg(&field.gcd(&fp, &field.derivative(&fp))) > 0 {
            continue;
        }
        tried += 1;
        let factors = field.factor(&fp);
        if factors.len() == 1 {
            return vec![f];
        }
        if best.as_ref().is_none_or(|(_, b)| factors.len() < b.len()) {
            best = Some((field, factors));
        }
    }
    let (field, modular) = best.expect("a square-free polynomial stays square-free modulo almost every prime");

    // Mignotte: a factor g of f has |coefficients| ≤ 2^n·‖f‖₂; scaled by lc.
    let norm2: BigInt = f.iter().map(|c| c * c).sum::<BigInt>().sqrt() + 1;
    let bound = 2 * (lc.abs() << n) * norm2;
    let mut lifted = Vec::with_capacity(modular.len());
    let mut modulus = BigInt::one();
    for u in &modular {
        let (h, m) = hensel_lift(&field, &f, u, &bound);
        lifted.push(h);
        modulus = m;
    }

    let mut out = Vec::new();
    let mut rest = f;
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let mut hit = None;
        for subset in subsets(lifted.len(), s) {
            let b = rest.last().expect("nonzero").clone();
            let prod = subset.iter().fold(vec![b], |acc, &i| zred(zmul(&acc, &lifted[i]), &modulus));
            let g = primitive(symmetric(prod, &modulus));
            if let Some(q) = exact_div(&rest, &g) {
                hit = Some((subset, g, q));
                break;
            }
        }
        match hit {
            Some((subset, g, q)) => {
                out.push(g);
                rest = q;
                for i in subset.into_iter().rev() {
                    lifted.remove(i);
                }
            }
            None => s += 1,
        }
    }
    out.push(rest);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(cs: &[i64]) -> Vec<BigInt> {
        cs.iter().map(|&c| BigInt::from(c)).collect()
    }

    fn product(fs: &[Vec<BigInt>]) -> Vec<BigInt> {
        fs.iter().fold(z(&[1]), |acc, f| zmul(&acc, f))
    }

    #[test]
    fn modular_factorization() {
        let field = Field { p: 7 };
        // x⁴ − 1 = (x − 1)(x + 1)(x² + 1) over F_7
        let fs = field.factor(&[6, 0, 0, 0, 1]);
        assert_eq!(fs.len(), 3);
        let back = fs.iter().fold(vec![1u64], |acc, f| field.mul(&acc, f));
        assert_eq!(back, vec![6, 0, 0, 0, 1]);
    }

    #[test]
    fn two_cubics() {
        // (21x³ + 9x² − 25x − 10)(35x³ − 100x² + 66x − 23)
        let a = z(&[-10, -25, 9, 21]);
        let b = z(&[-23, 66, -100, 35]);
        let f = zmul(&a, &b);
        let mut fs = factor_squarefree(&f);
        fs.sort_by_key(|g| g[3].clone());
        assert_eq!(fs, vec![a, b]);
    }

    #[test]
    fn swinnerton_dyer_like() {
        // x⁴ − 10x² + 1 is irreducible but splits modulo every prime
        let f = z(&[1, 0, -10, 0, 1]);
        assert_eq!(factor_squarefree(&f), vec![f.clone()]);
        let g = zmul(&f, &z(&[-2, 0, 1]));
        let fs = factor_squarefree(&g);
        assert_eq!(fs.len(), 2);
        assert_eq!(product(&fs), g);
    }

    #[test]
    fn linear_factors_and_lc() {
        // (2x − 1)(3x + 2)(x + 5)
        let f = product(&[z(&[-1, 2]), z(&[2, 3]), z(&[5, 1])]);
        let fs = factor_squarefree(&f);
        assert_eq!(fs.len(), 3);
        assert_eq!(product(&fs), f);
    }
}
