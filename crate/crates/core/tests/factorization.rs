use kronwebs::exact_core::factor_over_q;
use kronwebs::UniPoly;
use proptest::prelude::*;

/// `x² + bx + c` with negative discriminant.
fn quadratic() -> impl Strategy<Value = UniPoly> {
    (-6i64..=6, 1i64..=20).prop_map(|(b, extra)| UniPoly::from_ints(&[b * b / 4 + extra, b, 1]))
}

/// Monic integer cubic without integer roots, hence irreducible over Q.
fn cubic() -> impl Strategy<Value = UniPoly> {
    (-5i64..=5, -5i64..=5, 1i64..=12, any::<bool>())
        .prop_map(|(a, b, c, neg)| [if neg { -c } else { c }, b, a, 1])
        .prop_filter("has an integer root", |cs| {
            let c0 = cs[0].abs();
            !(1..=c0).any(|d| [d, -d].iter().any(|&x| cs[0] + cs[1] * x + cs[2] * x * x + x * x * x == 0))
        })
        .prop_map(|cs| UniPoly::from_ints(&cs))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn products_of_known_irreducibles(
        qs in prop::collection::vec(quadratic(), 0..3),
        cs in prop::collection::vec(cubic(), 0..3),
        roots in prop::collection::vec(-4i64..=4, 0..3),
    ) {
        let mut expected: Vec<UniPoly> = qs.iter().chain(&cs).cloned().collect();
        expected.extend(roots.iter().map(|&r| UniPoly::from_ints(&[-r, 1])));
        prop_assume!(!expected.is_empty());
        let f = expected.iter().fold(UniPoly::one(), |acc, q| &acc * q);
        let fs = factor_over_q(&f);
        let mut got: Vec<UniPoly> = fs.iter().flat_map(|(q, m)| std::iter::repeat_n(q.clone(), *m)).collect();
        let key = |p: &UniPoly| format!("{p}");
        got.sort_by_key(key);
        expected.sort_by_key(key);
        prop_assert_eq!(got, expected);
    }
}
