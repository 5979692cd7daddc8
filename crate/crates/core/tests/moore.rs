use ndep_core::algebra::{gf_make, GfElem};
use ndep_core::moore::{build_iso, f_apply, f_inv_apply, ga_contains, is_fp_independent, moore_det, tfrob_check, AdditivePoly};
use ndep_core::oracle;
use proptest::prelude::*;

fn tuple(p: u64, k: usize, max_len: usize) -> impl Strategy<Value = Vec<GfElem>> {
    let f = gf_make(p, k).unwrap();
    prop::collection::vec(0..f.order(), 1..=max_len).prop_map(move |raws| raws.into_iter().map(|r| GfElem::new(&f, r)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn moore_criterion_over_f8(c in tuple(2, 3, 4)) {
        prop_assert_eq!(is_fp_independent(&c).unwrap(), !oracle::fp_dependent_naive(&c));
    }

    #[test]
    fn moore_criterion_over_f27(c in tuple(3, 3, 3)) {
        prop_assert_eq!(is_fp_independent(&c).unwrap(), !oracle::fp_dependent_naive(&c));
    }

    #[test]
    fn isomorphism_round_trips(a in tuple(2, 4, 3), s in 0u64..16, i in 0usize..3) {
        prop_assume!(a.iter().all(|x| x.raw() != 0));
        let Ok(iso) = build_iso(&a) else { return Ok(()) };
        let f = a[0].field();
        let s = GfElem::new(f, s);
        let x = f_inv_apply(&iso, &s).unwrap();
        prop_assert!(ga_contains(&a, x.coords()).unwrap());
        prop_assert_eq!(f_apply(&iso, x.coords()).unwrap(), s);
        prop_assert!(tfrob_check(&iso, x.coords(), i.min(iso.m())).unwrap());
    }
}

#[test]
fn f4_example() {
    let f = gf_make(2, 2).unwrap();
    let g = GfElem::generator(&f);
    let iso = build_iso(&[GfElem::one(&f), g.clone()]).unwrap();
    assert_eq!(iso.alpha, vec![g, GfElem::one(&f)]);
    assert_eq!(iso.delta, GfElem::one(&f));
}

#[test]
fn rejects_dependent_and_zero_tuples() {
    let f = gf_make(3, 2).unwrap();
    let one = GfElem::one(&f);
    assert!(build_iso(&[one.clone(), GfElem::zero(&f)]).is_err());
    // m + 1 > k leaves no valid tuple
    let g = GfElem::generator(&f);
    assert!(build_iso(&[one.clone(), g.clone(), g.clone() + one.clone()]).is_err());
    assert_eq!(moore_det(&[one.clone(), one.clone() + one.clone()]).unwrap(), GfElem::zero(&f));
}

#[test]
fn additive_polynomials_compose() {
    let f = gf_make(2, 3).unwrap();
    let c = GfElem::new(&f, 5);
    let wp = AdditivePoly::scaled_wp(&GfElem::one(&f));
    let scaled = AdditivePoly::scaled_wp(&c);
    for t in GfElem::all(&f) {
        assert_eq!(scaled.eval(&t), c.clone() * wp.eval(&t));
        assert_eq!(wp.compose(&wp).eval(&t), wp.eval(&wp.eval(&t)));
    }
}
