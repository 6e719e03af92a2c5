use automorphic::{QSeries, Rational};
use num_bigint::BigInt;
use proptest::prelude::*;

fn series(h: u64) -> impl Strategy<Value = QSeries> {
    (
        -3i64..=3,
        1i64..=8,
        1i64..=9,
        prop::collection::vec((-12i64..=12, 1i64..=5), 0..8),
    )
        .prop_map(move |(order, len, lead, rest)| {
            let mut terms = vec![(order, Rational::from_integer(BigInt::from(lead)))];
            for (i, (n, d)) in rest.into_iter().enumerate().take((len - 1) as usize) {
                terms.push((order + 1 + i as i64, Rational::new(n.into(), d.into())));
            }
            QSeries::new(h, terms, order + len).unwrap()
        })
}

fn triple() -> impl Strategy<Value = (QSeries, QSeries, QSeries)> {
    (1u64..=3).prop_flat_map(|h| (series(h), series(h), series(h)))
}

fn agree(a: &QSeries, b: &QSeries) -> bool {
    a.equal_to_prec(b, a.prec().min(b.prec())).unwrap()
}

fn rel(s: &QSeries) -> i64 {
    s.prec() - s.order().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_laws((f, g, e) in triple()) {
        prop_assert!(agree(&(&f + &g), &(&g + &f)));
        prop_assert!(agree(&(&f * &g), &(&g * &f)));
        prop_assert!(agree(&(&(&f + &g) + &e), &(&f + &(&g + &e))));
        prop_assert!(agree(&(&(&f * &g) * &e), &(&f * &(&g * &e))));
        prop_assert!(agree(&(&f * &(&g + &e)), &(&(&f * &g) + &(&f * &e))));
        prop_assert!((&f - &f).is_zero());
        prop_assert!(agree(&(&f + &(-&f)), &QSeries::zero(f.base_den(), f.prec())));
    }

    #[test]
    fn leibniz((f, g, _) in triple()) {
        let lhs = (&f * &g).theta();
        let rhs = &(&f.theta() * &g) + &(&f * &g.theta());
        prop_assert!(agree(&lhs, &rhs));
    }

    #[test]
    fn division_roundtrip((f, g, _) in triple()) {
        let back = (&f * &g).div(&g).unwrap();
        prop_assert_eq!(rel(&back), rel(&f).min(rel(&g)));
        prop_assert!(agree(&back, &f));
        let one = &g * &g.inverse().unwrap();
        prop_assert!(agree(&one, &QSeries::one(g.base_den(), rel(&g))));
    }

    #[test]
    fn pow_matches_repeated_mul((f, _, _) in triple(), m in 0i64..=6) {
        let mut acc = QSeries::one(f.base_den(), rel(&f));
        for _ in 0..m {
            acc = &acc * &f;
        }
        let p = f.pow(m).unwrap();
        prop_assert!(agree(&p, &acc));
        prop_assert_eq!(rel(&p), rel(&f));
        let neg = f.pow(-m).unwrap();
        prop_assert!(agree(&(&neg * &p), &QSeries::one(f.base_den(), rel(&f))));
    }

    #[test]
    fn json_roundtrip((f, _, _) in triple()) {
        let text = f.to_json_string();
        let back = QSeries::from_json_str(&text).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(back.to_json_string(), text);
    }

    #[test]
    fn rescale_is_transparent((f, g, _) in triple(), m in 1u64..=3) {
        let big = f.rescale(f.base_den() * m).unwrap();
        prop_assert!(agree(&(&big * &g), &(&f * &g)));
    }
}
