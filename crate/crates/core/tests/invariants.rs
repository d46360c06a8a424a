use std::f64::consts::PI;

use num_rational::Rational64;
use phi_torsion::cli::to_json_string;
use phi_torsion::glue::{alternating_sum_check, builtin_sequences, chi_factor, CohomologyProfile, Flavor};
use phi_torsion::index_set::{IndexSet, IndexTerm};
use phi_torsion::reg::reg_int_zero_check;
use phi_torsion::spectra::{Boundary, Geometry, SpectralModel};
use phi_torsion::zeta::log_torsion;
use proptest::prelude::*;

fn term() -> impl Strategy<Value = IndexTerm> {
    (-12i64..=12, prop_oneof![Just(0i64), Just(1)], 0u32..=2)
        .prop_map(|(re, im, k)| IndexTerm::new(Rational64::new(re, 2), Rational64::new(im, 2), k))
}

fn set() -> impl Strategy<Value = IndexSet> {
    prop::collection::vec(term(), 0..=3).prop_map(IndexSet::from_terms)
}

proptest! {
    #[test]
    fn normalize_is_idempotent(s in set()) {
        let again = IndexSet::normalize(s.generators().copied(), s.cutoff());
        prop_assert_eq!(again, s);
    }

    #[test]
    fn text_round_trip(s in set()) {
        prop_assert_eq!(s.to_string().parse::<IndexSet>().unwrap(), s);
    }

    #[test]
    fn extended_union_is_commutative_and_contains_both(a in set(), b in set()) {
        let ab = a.extended_union(&b);
        prop_assert_eq!(&ab, &b.extended_union(&a));
        for t in a.members_below_cutoff().iter().chain(b.members_below_cutoff().iter()) {
            prop_assert_eq!(ab.contains(t), Some(true));
        }
    }

    #[test]
    fn minkowski_sum_is_associative(a in set(), b in set(), c in set()) {
        prop_assert_eq!(a.minkowski_sum(&b).minkowski_sum(&c), a.minkowski_sum(&b.minkowski_sum(&c)));
    }

    #[test]
    fn reg_int_zero_vanishes(p in -40i64..=10, q in 1i64..=6, k in 0u32..=4) {
        prop_assert!(reg_int_zero_check(Rational64::new(p, q), k).is_zero());
    }

    #[test]
    fn twisted_circle_torsion_is_length_free(theta in 0.3f64..(2.0 * PI - 0.3), l in 0.5f64..20.0) {
        let m = SpectralModel::build(&Geometry::circle(l, theta)).unwrap();
        let want = (2.0 * (theta / 2.0).sin().abs()).ln();
        prop_assert!((log_torsion(&m).unwrap().log_t - want).abs() < 1e-8);
    }

    #[test]
    fn supertrace_is_euler_characteristic(l1 in 0.5f64..5.0, l2 in 0.5f64..5.0, t in 0.05f64..20.0) {
        let g = Geometry::product(vec![Geometry::circle(l1, 0.0), Geometry::interval(l2, Boundary::Absolute)]);
        let m = SpectralModel::build(&g).unwrap();
        prop_assert!((m.supertraces(t).unwrap().plain.value - m.chi() as f64).abs() < 1e-10);
    }

    #[test]
    fn geometry_json_round_trip(l in 1e-3f64..1e3, h in 0.0f64..(2.0 * PI), w in 1e-3f64..1e3) {
        let g = Geometry::product(vec![Geometry::circle(l, h), Geometry::torus(&[w, l])]);
        let text = to_json_string(&g);
        prop_assert_eq!(Geometry::from_json(&text).unwrap(), g);
    }

    #[test]
    fn chi_factor_is_multiplicative(a in prop::collection::vec(0u64..4, 1..4), b in prop::collection::vec(0u64..4, 1..4), r in 1u32..4) {
        let pa = CohomologyProfile::new(&a, Flavor::Absolute, r);
        let pb = CohomologyProfile::new(&b, Flavor::Absolute, r);
        let u = pa.disjoint_union(&pb).unwrap();
        prop_assert!((chi_factor(&u) - chi_factor(&pa) * chi_factor(&pb)).abs() < 1e-12 * chi_factor(&u));
    }

    #[test]
    fn model_sequences_are_exact(l in 0.1f64..50.0) {
        for s in builtin_sequences(l).unwrap() {
            prop_assert!(alternating_sum_check(&s));
        }
    }
}
