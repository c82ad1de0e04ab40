// Property tests over generated integers and seeds.

use proptest::prelude::*;
use tdual::cocycle::{random_tb1, random_tdhalf};
use tdual::dualize::roundtrip_check;
use tdual::io::{document_json, parse_document, render, AnyCocycle, Document};
use tdual::nerve::Nerve;
use tdual::sample::Sampler;
use tdual::scalars::{fmt_rat, parse_rat, rat, IntVec, RatVec, SkewIntMat};

fn ratvec(v: &[(i64, i64)]) -> RatVec {
    RatVec::from_fracs(v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rationals_print_and_parse_back(p in -10_000i64..10_000, q in 1i64..10_000) {
        let r = rat(p, q);
        prop_assert_eq!(parse_rat(&fmt_rat(&r)).unwrap(), r);
    }

    #[test]
    fn low_bracket_antisymmetrizes_to_full(
        lower in proptest::collection::vec(-5i64..5, 3),
        v in proptest::collection::vec((-9i64..9, 1i64..9), 3),
        w in proptest::collection::vec((-9i64..9, 1i64..9), 3),
    ) {
        let b = SkewIntMat::from_lower(3, &lower.iter().map(|x| (*x).into()).collect::<Vec<_>>());
        let (v, w) = (ratvec(&v), ratvec(&w));
        prop_assert_eq!(b.low(&v, &w) - b.low(&w, &v), b.full(&v, &w));
    }

    #[test]
    fn skew_bracket_vanishes_on_the_diagonal(m in proptest::collection::vec(-9i64..9, 2), k in -3i64..3) {
        let b = SkewIntMat::from_i64(&[&[0, -k], &[k, 0]]).unwrap();
        let m = IntVec::from_i64(&m);
        prop_assert!(b.full(&m.to_rat(), &m.to_rat()) == rat(0, 1));
    }

    #[test]
    fn seeded_cocycles_dualize_and_serialize(seed in any::<u64>(), n in 1usize..=3) {
        let mut s = Sampler::new(seed);
        let nv = Nerve::cone();
        let x = random_tb1(&nv, n, &mut s);
        prop_assert!(roundtrip_check(&x).is_ok());
        let doc = Document::Cocycle(AnyCocycle::TDhalf(random_tdhalf(&nv, n, &mut s)));
        prop_assert_eq!(parse_document(&render(&document_json(&doc))).unwrap(), doc);
    }
}
