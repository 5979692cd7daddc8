use ndep_core::algebra::parse::{parse_gf, parse_series};
use ndep_core::algebra::{gf_make, rf_valuation, ts_as_root, Field, GfElem, PExponent, Place, RationalFunction, TruncatedSeries, Valuation};
use proptest::prelude::*;

const FIELDS: [(u64, usize); 5] = [(2, 1), (2, 3), (3, 2), (5, 1), (2, 4)];

fn field_and_raws() -> impl Strategy<Value = ((u64, usize), u64, u64, u64)> {
    prop::sample::select(FIELDS.to_vec()).prop_flat_map(|(p, k)| {
        let q = p.pow(k as u32);
        (Just((p, k)), 0..q, 0..q, 0..q)
    })
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn field_axioms(((p, k), a, b, c) in field_and_raws()) {
        let f = gf_make(p, k).unwrap();
        let (a, b, c) = (GfElem::new(&f, a), GfElem::new(&f, b), GfElem::new(&f, c));
        prop_assert_eq!((a.clone() + b.clone()) * c.clone(), a.clone() * c.clone() + b.clone() * c.clone());
        prop_assert_eq!(a.clone() - a.clone(), GfElem::zero(&f));
        if a.raw() != 0 {
            prop_assert_eq!(a.clone() * a.try_inv().unwrap(), GfElem::one(&f));
        }
        prop_assert_eq!((a.clone() + b.clone()).frob(1), a.frob(1) + b.frob(1));
        prop_assert_eq!((a.clone() * b.clone()).frob(1), a.frob(1) * b.frob(1));
        prop_assert_eq!(a.frob(k as i64), a.clone());
        prop_assert_eq!((a.trace() + b.trace()) % p, (a.clone() + b.clone()).trace());
    }

    #[test]
    fn elements_print_and_parse_back(((p, k), a, _, _) in field_and_raws()) {
        let f = gf_make(p, k).unwrap();
        let x = GfElem::new(&f, a);
        prop_assert_eq!(parse_gf(&f, &x.to_string()).unwrap(), x);
    }

    #[test]
    fn series_products_and_inverses(v1 in 0i64..6, v2 in 0i64..6, c in 1u64..3, tail in 1i64..4) {
        let f = gf_make(3, 1).unwrap();
        let prec = PExponent::int(30);
        let one = GfElem::one(&f);
        let x = TruncatedSeries::from_terms(&f, 2, &[(PExponent::int(v1), GfElem::new(&f, c)), (PExponent::new(3 * v1 + tail, 1, 3), one.clone())], prec).unwrap();
        let y = TruncatedSeries::from_terms(&f, 2, &[(PExponent::int(v2), one.clone()), (PExponent::int(v2 + tail), one)], prec).unwrap();
        let xy = x.clone() * y.clone();
        prop_assert_eq!(xy.val().unwrap(), x.val().unwrap() + y.val().unwrap());
        let back = xy * y.inverse().unwrap();
        prop_assert!((back - x).is_zero_to_precision());
    }

    #[test]
    fn artin_schreier_root_in_maximal_ideal(e in 1i64..8, c in 1u64..4) {
        let f = gf_make(2, 2).unwrap();
        let z = TruncatedSeries::from_terms(&f, 3, &[(PExponent::new(e, 1, 2), GfElem::new(&f, c))], PExponent::int(24)).unwrap();
        let x = ts_as_root(&z).unwrap();
        prop_assert!((x.wp() - z).is_zero_to_precision());
    }

    #[test]
    fn place_valuations_add(n1 in prop::collection::vec(0u64..4, 1..4), n2 in prop::collection::vec(0u64..4, 1..4), a in 0u64..4) {
        let f = gf_make(2, 2).unwrap();
        let x = RationalFunction::poly(&f, &n1);
        let y = RationalFunction::new(&f, &[1], &n2);
        prop_assume!(!x.is_zero().unwrap() && y.is_ok());
        let y = y.unwrap();
        for place in [Place::linear(&GfElem::new(&f, a)), Place::Infinite] {
            let (vx, vy, vxy) = (rf_valuation(&x, &place), rf_valuation(&y, &place), rf_valuation(&(x.clone() * y.clone()), &place));
            if let (Valuation::Finite(a), Valuation::Finite(b)) = (vx, vy) {
                prop_assert_eq!(vxy, Valuation::Finite(a + b));
            }
        }
    }
}

#[test]
fn series_literals() {
    let f = gf_make(2, 1).unwrap();
    let s = parse_series(&f, 3, "t^(1/2) + t^3 + O(t^5)", None).unwrap();
    assert_eq!(s.val().unwrap(), PExponent::new(1, 1, 2));
    assert_eq!(s.precision(), Some(PExponent::int(5)));
    assert!(parse_series(&f, 3, "t^(1/3)", Some(PExponent::int(4))).is_err());
    assert!(parse_series(&f, 1, "t^(1/4)", Some(PExponent::int(4))).is_err());
}

#[test]
fn trace_zero_elements_are_wp_images() {
    let f = gf_make(2, 3).unwrap();
    let images: std::collections::BTreeSet<u64> = GfElem::all(&f).map(|x| x.wp().raw()).collect();
    let kernel: std::collections::BTreeSet<u64> = GfElem::all(&f).filter(|x| x.trace() == 0).map(|x| x.raw()).collect();
    assert_eq!(images, kernel);
}
