//! Seeded generators for test inputs: rationals, unimodular matrices, block sums.
//!
//! All randomness flows through a ChaCha8 stream, so a seed fixes every draw
//! on every platform.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact_core::{Mat, Scalar};
use crate::relations::ProjPoint;
use crate::skew_pairs::{BlockSpec, Eigenvalue};

pub type Rng8 = ChaCha8Rng;

pub fn seeded(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rational with `|num| ≤ 1000`, `1 ≤ den ≤ 100`.
pub fn scalar(rng: &mut Rng8) -> Scalar {
    let num: i64 = rng.gen_range(-1000..=1000);
    let den: i64 = rng.gen_range(1..=100);
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

/// Integer in `[−bound, bound]`.
pub fn small_int(rng: &mut Rng8, bound: i64) -> Scalar {
    Scalar::from_integer(rng.gen_range(-bound..=bound).into())
}

pub fn vector(rng: &mut Rng8, n: usize) -> Vec<Scalar> {
    (0..n).map(|_| scalar(rng)).collect()
}

/// Matrix with small integer entries.
pub fn small_int_matrix(rng: &mut Rng8, rows: usize, cols: usize, bound: i64) -> Mat {
    Mat::from_fn(rows, cols, |_, _| small_int(rng, bound))
}

/// Integer matrix with determinant ±1: a signed permutation times unit
/// triangular factors with entries in {−1, 0, 1}.
pub fn unimodular(rng: &mut Rng8, n: usize) -> Mat {
    let lower = Mat::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => Scalar::from_integer(1.into()),
        std::cmp::Ordering::Greater => small_int(rng, 1),
        std::cmp::Ordering::Less => Scalar::from_integer(0.into()),
    });
    let upper = Mat::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => Scalar::from_integer(1.into()),
        std::cmp::Ordering::Less => small_int(rng, 1),
        std::cmp::Ordering::Greater => Scalar::from_integer(0.into()),
    });
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let signs: Vec<i64> = (0..n).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
    let p = Mat::from_fn(n, n, |i, j| {
        Scalar::from_integer(if perm[i] == j { signs[i].into() } else { 0.into() })
    });
    &(&p * &lower) * &upper
}

/// `count` pairwise distinct points: affine rationals, with `(0:1)` mixed in.
pub fn distinct_points(rng: &mut Rng8, count: usize) -> Vec<ProjPoint> {
    let mut out: Vec<ProjPoint> = Vec::with_capacity(count);
    if count > 0 && rng.gen_bool(0.25) {
        out.push(ProjPoint::infinity());
    }
    while out.len() < count {
        let p = ProjPoint::affine(scalar(rng));
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// Random block list of total dimension in `1..=max_dim` drawn from
/// `K₁, K₃, K₅, K₇, J_{2,μ}, J_{4,μ}` with `μ ∈ {0, ±1, ±2, ∞}`.
pub fn block_specs(rng: &mut Rng8, max_dim: usize) -> Vec<BlockSpec> {
    let mus = [Some(0), Some(1), Some(-1), Some(2), Some(-2), None];
    let mut out = Vec::new();
    let mut total = 0;
    loop {
        let b = if rng.gen_bool(0.5) {
            BlockSpec::Kronecker { dim: 2 * rng.gen_range(0..4) + 1 }
        } else {
            let eigenvalue = match mus[rng.gen_range(0..mus.len())] {
                Some(m) => Eigenvalue::rational(Scalar::from_integer(m.into())),
                None => Eigenvalue::Infinity,
            };
            BlockSpec::Jordan { dim: 2 * rng.gen_range(1..=2), eigenvalue }
        };
        if total + b.dim() > max_dim {
            if out.is_empty() {
                continue;
            }
            break;
        }
        total += b.dim();
        out.push(b);
        if rng.gen_bool(0.3) {
            break;
        }
    }
    out
}

/// Kronecker-only block list: dims `2k−1` with `k ≤ max_k`, total ≤ `max_dim`.
pub fn kronecker_specs(rng: &mut Rng8, max_dim: usize, max_k: usize) -> Vec<BlockSpec> {
    let mut out = Vec::new();
    let mut total = 0;
    loop {
        let dim = 2 * rng.gen_range(1..=max_k) - 1;
        if total + dim > max_dim {
            if out.is_empty() {
                continue;
            }
            break;
        }
        total += dim;
        out.push(BlockSpec::Kronecker { dim });
        if rng.gen_bool(0.35) {
            break;
        }
    }
    out
}

/// Block sizes (each ≥ 1) of a Kronecker relation with total dimension ≤ `max_dim`.
pub fn relation_block_sizes(rng: &mut Rng8, max_dim: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut total = 0;
    loop {
        let k = rng.gen_range(1..=4.min(max_dim));
        if total + k > max_dim {
            break;
        }
        total += k;
        out.push(k);
        if rng.gen_bool(0.35) {
            break;
        }
    }
    if out.is_empty() {
        out.push(1);
    }
    out
}
