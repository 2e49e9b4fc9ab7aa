mod common;

use freeinv::bipartite::{injectivity_test, InjectivityOptions};
use freeinv::corpus::tame_automorphism;
use freeinv::inverter::{invert, verify_inverse, InversionOutcome, InvertOptions};
use freeinv::registry::{Registry, Verdict};
use freeinv::{Coefficient, FreePolyMap};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn inverse_of(p: &FreePolyMap) -> FreePolyMap {
    match invert(p, &InvertOptions::default()).unwrap().outcome {
        InversionOutcome::PolynomialInverse { q, .. } => q,
        other => panic!("{p}: {other:?}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tame_maps_invert_exactly(seed in any::<u64>(), g in 1usize..=3) {
        let s = tame_automorphism(&mut ChaCha8Rng::seed_from_u64(seed), g, 3, 3);
        let q = inverse_of(&s.p);
        prop_assert!(verify_inverse(&s.p, &q));
        prop_assert_eq!(&q, &s.inverse);
        prop_assert_eq!(inverse_of(&q), s.p.clone());
        prop_assert!(injectivity_test(&s.p, &InjectivityOptions::default()).unwrap().is_injective());
    }

    #[test]
    fn constants_are_restored(seed in any::<u64>(), c1 in -3i64..=3, c2 in -3i64..=3) {
        let s = tame_automorphism(&mut ChaCha8Rng::seed_from_u64(seed), 2, 2, 3);
        let shift = FreePolyMap::translation(&[Coefficient::from_integer(c1), Coefficient::from_integer(c2)]);
        let p = shift.compose(&s.p).unwrap();
        let q = inverse_of(&p);
        prop_assert!(verify_inverse(&p, &q));
    }
}

#[test]
fn registry_methods_agree() {
    let r = Registry::with_defaults(InvertOptions::default(), InjectivityOptions::default());
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let s = tame_automorphism(&mut rng, 2, 3, 4);
        let verdicts: Vec<Verdict> = r.names().map(|n| r.get(n).unwrap().decide(&s.p).unwrap()).collect();
        assert!(verdicts.iter().all(Verdict::is_injective), "{}: {verdicts:?}", s.p);
    }
    let sad = freeinv::parse_map(&["x1", "x2 - x1*x2*x1"]).unwrap();
    for n in ["aux-inverse", "hypo-jacobian"] {
        assert!(matches!(r.get(n).unwrap().decide(&sad).unwrap(), Verdict::NotInjective(_)), "{n}");
    }
}
