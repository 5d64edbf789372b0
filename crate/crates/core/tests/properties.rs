mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cherednik::crosscheck::random_case;
use cherednik::diagonal::{fast_invariant, neighbours};
use cherednik::io::context_file;
use cherednik::{
    bar_split, chi_equivalent, enumerate_sstd, kn_matrix_for_gamma, length_ell, parse_context, ChiEquivalence, ChiSequence, ChiSymbol, CrosscheckConfig,
    ExactCoord, FactoredContext, LaurentPoly, Mode, Multipartition, TransportMap,
};
use common::examples;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

prop_compose! {
    fn coord()(n in -2000i64..2000, d in 1i64..50, e in -500i64..500) -> ExactCoord {
        ExactCoord::new(rat(n, d), e)
    }
}

prop_compose! {
    fn poly()(terms in prop::collection::vec((-8i32..8, -5i64..6), 0..8)) -> LaurentPoly {
        LaurentPoly::from_terms(terms)
    }
}

fn symbol() -> impl Strategy<Value = ChiSymbol> {
    prop_oneof![
        (any::<bool>(), 4u8..=6, prop::sample::select(vec![0u8, 2, 3])).prop_map(|(n, k, j)| ChiSymbol::brick(n, k, j)),
        Just(ChiSymbol::Empty),
        Just(ChiSymbol::NegEmpty),
    ]
}

fn partition_str() -> impl Strategy<Value = String> {
    prop::collection::vec(1usize..9, 0..6).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        if v.is_empty() {
            "-".to_string()
        } else {
            v.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
        }
    })
}

proptest! {
    #[test]
    fn coord_order_is_the_small_epsilon_limit(a in coord(), b in coord()) {
        // Bases differ by at least 1/2401 when unequal, which dwarfs 1000ε.
        let eps = rat(1, 1_000_000_000);
        prop_assert_eq!(a.cmp(&b), a.numeric(&eps).cmp(&b.numeric(&eps)));
        prop_assert_eq!(a.cmp(&b), b.cmp(&a).reverse());
    }

    #[test]
    fn laurent_display_round_trips(f in poly()) {
        let back: LaurentPoly = f.to_string().parse().unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn bar_is_an_involution_and_split_reassembles(f in poly()) {
        prop_assert_eq!(f.bar().bar(), f.clone());
        let g = &f + &f.bar();
        prop_assert!(g.is_bar_invariant());
        if let Ok((d, l)) = bar_split(&f) {
            prop_assert!(d.in_t_nat_t());
            prop_assert!(l.is_bar_invariant());
            prop_assert_eq!(&d + &l, f);
        }
    }

    #[test]
    fn multipartition_display_round_trips(comps in prop::collection::vec(partition_str(), 1..4)) {
        let m: Multipartition = comps.join("|").parse().unwrap();
        let back: Multipartition = m.to_string().parse().unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn chi_sequence_display_round_trips(seq in prop::collection::vec(symbol(), 0..12)) {
        let s = ChiSequence(seq);
        let back: ChiSequence = s.to_string().parse().unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn rewrites_preserve_the_invariant(seq in prop::collection::vec(symbol(), 1..10)) {
        let s = ChiSequence(seq);
        let inv = fast_invariant(&s);
        for (rule, pos, next) in neighbours(&s.0, s.0.len() + 2) {
            let n = ChiSequence(next);
            prop_assert_eq!(fast_invariant(&n), inv.clone(), "{} at {}", rule, pos);
            prop_assert!(matches!(chi_equivalent(&s, &n, 1), ChiEquivalence::Equivalent(_)));
        }
    }

    #[test]
    fn random_context_round_trips_through_json(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gc = random_case(&mut rng, &CrosscheckConfig::default()).gamma_context;
        let text = serde_json::to_string(&context_file(gc.ctx(), Some(&gc))).unwrap();
        let back = parse_context(&text).unwrap();
        prop_assert_eq!(&back.params, gc.ctx());
        let bg = back.gamma_context().unwrap();
        prop_assert_eq!(bg.gamma(), gc.gamma());
        prop_assert_eq!(bg.elements(), gc.elements());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_matrices_are_unitriangular_with_positive_entries(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let config = CrosscheckConfig { max_addable: 5, max_m: 3, ..CrosscheckConfig::default() };
        let gc = random_case(&mut rng, &config).gamma_context;
        let m = kn_matrix_for_gamma(&gc).unwrap();
        for a in 0..gc.len() {
            for b in 0..gc.len() {
                let d = &m.d[a][b];
                if a == b {
                    prop_assert_eq!(d, &LaurentPoly::one());
                } else if !d.is_zero() {
                    prop_assert!(d.in_t_nat_t());
                    prop_assert!(gc.dominates_idx(a, b));
                }
            }
        }
    }
}

#[test]
fn psi_round_trips_and_preserves_degrees() {
    let gc = examples::two_residue();
    let fc = FactoredContext::new(&gc).unwrap();
    for l in gc.elements() {
        let parts = fc.psi_multipartition(l).unwrap();
        assert_eq!(&fc.psi_inverse(&parts).unwrap(), l);
    }
    for l in gc.elements() {
        for m in gc.elements() {
            for t in enumerate_sstd(l, m, gc.ctx(), Mode::GammaRestricted(&gc)).unwrap() {
                let pieces = fc.psi_tableau(&t).unwrap();
                assert_eq!(pieces.iter().map(|p| p.degree()).sum::<i64>(), t.degree());
            }
        }
    }
}

#[test]
fn transport_is_a_length_preserving_bijection() {
    let src = common::gamma(examples::FLOTW_GAMMA, &[(0, 6)], &examples::flotw_level2_ctx());
    let dst = common::gamma(examples::FLOTW_L1_GAMMA, &[(0, 6)], &examples::flotw_level1_ctx());
    let tm = TransportMap::new(&src, &dst).unwrap();
    let back = TransportMap::new(&dst, &src).unwrap();
    let images: Vec<Multipartition> = src.elements().iter().map(|l| tm.transport_multipartition(l).unwrap()).collect();
    let mut sorted = images.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), src.len());
    for (l, img) in src.elements().iter().zip(&images) {
        assert!(dst.contains(img));
        assert_eq!(&back.transport_multipartition(img).unwrap(), l);
    }
    for (a, la) in src.elements().iter().enumerate().step_by(7) {
        for (b, lb) in src.elements().iter().enumerate().step_by(5) {
            assert_eq!(src.dominates_idx(a, b), dst.dominates_idx(dst.index_of(&images[a]).unwrap(), dst.index_of(&images[b]).unwrap()));
            if src.dominates_idx(a, b) {
                assert_eq!(length_ell(la, lb, &src).unwrap(), length_ell(&images[a], &images[b], &dst).unwrap());
            }
        }
    }
}
