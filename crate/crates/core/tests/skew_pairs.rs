use kronwebs::random::{block_specs, seeded, unimodular};
use kronwebs::skew_pairs::{
    conjugate, decompose, is_micro_kronecker, pair_direct_sum, BlockSpec, SkewPair,
};
use proptest::prelude::*;

fn sorted(mut bs: Vec<BlockSpec>) -> Vec<BlockSpec> {
    bs.sort_by(BlockSpec::canonical_cmp);
    bs
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn decompose_recovers_conjugated_block_sums(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let specs = block_specs(&mut rng, 12);
        let src = pair_direct_sum(&specs.iter().map(BlockSpec::canonical_pair).collect::<Vec<_>>());
        let s = unimodular(&mut rng, src.n());
        let p = conjugate(&src, &s).unwrap();
        let d = decompose(&p).unwrap();
        prop_assert_eq!(&d.blocks, &sorted(specs.clone()));
        let can = d.canonical();
        let bt = d.basis.transpose();
        prop_assert_eq!(&(&bt * &p.h1) * &d.basis, can.h1);
        prop_assert_eq!(&(&bt * &p.h2) * &d.basis, can.h2);
        let micro = is_micro_kronecker(&p);
        prop_assert_eq!(micro.flag, specs.iter().all(BlockSpec::is_kronecker));
    }
}

#[test]
fn random_rational_pair_decomposes() {
    // a generic pair of skew forms in odd dimension n is a single K_n
    let mut rng = seeded(11);
    let a = kronwebs::random::small_int_matrix(&mut rng, 5, 5, 3);
    let b = kronwebs::random::small_int_matrix(&mut rng, 5, 5, 3);
    let p = SkewPair::new(&a - &a.transpose(), &b - &b.transpose()).unwrap();
    let d = decompose(&p).unwrap();
    assert_eq!(d.blocks, vec![BlockSpec::Kronecker { dim: 5 }]);
}
