//! Fixed benchmark inputs, shared by the criterion benches.

use kronwebs::exact_core::scalar::int;
use kronwebs::random::{self, Rng8};
use kronwebs::relations::{kronecker_relation, relation_direct_sum, LinearRelation};
use kronwebs::skew_pairs::{conjugate, pair_direct_sum, BlockSpec, Eigenvalue, SkewPair};
use kronwebs::UniPoly;

/// `K₃ ⊕ K₅ ⊕ J_{4,1}` (dim 12), conjugated by a seeded unimodular matrix.
pub fn mixed_pair(seed: u64) -> SkewPair {
    let specs = [
        BlockSpec::Kronecker { dim: 3 },
        BlockSpec::Kronecker { dim: 5 },
        BlockSpec::Jordan { dim: 4, eigenvalue: Eigenvalue::rational(int(1)) },
    ];
    conjugated(&specs, seed)
}

/// A single `K_dim`, conjugated.
pub fn kronecker_pair(dim: usize, seed: u64) -> SkewPair {
    conjugated(&[BlockSpec::Kronecker { dim }], seed)
}

fn conjugated(specs: &[BlockSpec], seed: u64) -> SkewPair {
    let src = pair_direct_sum(&specs.iter().map(BlockSpec::canonical_pair).collect::<Vec<_>>());
    let mut rng: Rng8 = random::seeded(seed);
    let s = random::unimodular(&mut rng, src.n());
    conjugate(&src, &s).expect("unimodular matrices are invertible")
}

/// `(x⁴ − 10x² + 1)(x³ − 2)(3x² − x + 3)`: irreducible over Q but reducible
/// modulo every prime, plus two easy factors.
pub fn hard_polynomial() -> UniPoly {
    let a = UniPoly::from_ints(&[1, 0, -10, 0, 1]);
    let b = UniPoly::from_ints(&[-2, 0, 0, 1]);
    let c = UniPoly::from_ints(&[3, -1, 3]);
    &(&a * &b) * &c
}

/// Kronecker relation with blocks of dimensions 1, 2, 3 and 4, moved by a
/// unimodular change of basis.
pub fn kronecker_relation_sum(seed: u64) -> LinearRelation {
    let r = relation_direct_sum(&[1, 2, 3, 4].map(kronecker_relation));
    let mut rng = random::seeded(seed);
    let t = random::unimodular(&mut rng, r.dim_v());
    r.transform(&t).expect("unimodular matrices are invertible")
}

#[cfg(test)]
mod tests {
    use super::*;
    use kronwebs::exact_core::factor_over_q;
    use kronwebs::relations::relation_is_kronecker;
    use kronwebs::skew_pairs::decompose;

    #[test]
    fn fixtures_are_what_they_claim() {
        assert_eq!(factor_over_q(&hard_polynomial()).len(), 3);
        assert_eq!(decompose(&mixed_pair(1)).unwrap().blocks.len(), 3);
        assert_eq!(decompose(&kronecker_pair(7, 2)).unwrap().blocks, vec![BlockSpec::Kronecker { dim: 7 }]);
        let c = relation_is_kronecker(&kronecker_relation_sum(4));
        assert_eq!((c.kronecker, c.rank), (true, 4));
    }
}
