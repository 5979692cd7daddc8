use std::sync::Arc;

use ndep_core::algebra::{gf_make, GaloisField, GfElem, PExponent, TruncatedSeries};
use ndep_core::valo::{
    alpha_val_closed_form, as_root_in_maximal_ideal, build_b_grid, build_b_grid_with, preimage_small_val,
    preimage_valuations, verify_alpha_vals, Schedule, ValProfile,
};
use proptest::prelude::*;

fn t_pow(f: &Arc<GaloisField>, cap: u32, e: i64, prec: i64) -> TruncatedSeries {
    TruncatedSeries::t_pow(f, cap, PExponent::int(e), PExponent::int(prec)).unwrap()
}

fn ints(v: &[i64]) -> Vec<PExponent> {
    v.iter().map(|&x| PExponent::int(x)).collect()
}

#[test]
fn alpha_example() {
    let f = gf_make(2, 1).unwrap();
    let a = [t_pow(&f, 4, 1, 40), t_pow(&f, 4, 3, 40)];
    let r = verify_alpha_vals(&a).unwrap();
    assert!(r.pass());
    assert_eq!(r.direct, ints(&[2, 3]));
    assert_eq!(r.permutations_checked, 2);
}

#[test]
fn preimage_example() {
    let f = gf_make(2, 1).unwrap();
    let a = [t_pow(&f, 4, 1, 40), t_pow(&f, 4, 3, 40)];
    let r = preimage_valuations(&a, &t_pow(&f, 4, 5, 40)).unwrap();
    assert!(r.pass());
    assert_eq!(r.x_vals[1], PExponent::int(2));
}

#[test]
fn pipeline_example() {
    let f = gf_make(2, 1).unwrap();
    let a = [t_pow(&f, 4, 1, 40), t_pow(&f, 4, 3, 40)];
    let u = t_pow(&f, 4, 4, 40);
    let r = preimage_small_val(&a, &u).unwrap();
    assert!(r.pass());
    assert_eq!(r.val_w, PExponent::int(1));
    assert!(as_root_in_maximal_ideal(&a, &u).unwrap().pass());
}

#[test]
fn preimage_needs_small_a() {
    let f = gf_make(2, 1).unwrap();
    let a = [t_pow(&f, 4, 1, 40), t_pow(&f, 4, 6, 40)];
    assert!(preimage_valuations(&a, &t_pow(&f, 4, 5, 40)).is_err());
}

#[test]
fn row_major_grid_obeys_lex_law() {
    for p in [2u64, 3] {
        let f = gf_make(p, 1).unwrap();
        for n in 1..=3usize {
            for ell in 1..=3usize {
                let gap = (1..).find(|&g| (n as u64) < p.pow(g)).unwrap();
                let y = t_pow(&f, (n * ell) as u32 * gap + 1, 1, 12);
                assert!(build_b_grid(n, ell, &y, gap).unwrap().pass(), "p = {p}, n = {n}, l = {ell}");
            }
        }
    }
}

#[test]
fn interleaved_grid_breaks_lex_law() {
    let f = gf_make(2, 1).unwrap();
    let y = t_pow(&f, 14, 1, 12);
    assert!(build_b_grid_with(2, 2, &y, 2, Schedule::Interleaved).unwrap().pass());
    assert!(!build_b_grid_with(2, 3, &y, 2, Schedule::Interleaved).unwrap().pass());
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn closed_form_is_strictly_increasing(p in prop::sample::select(vec![2u64, 3]), raw in prop::collection::btree_set(1i64..40, 1..5)) {
        let vals: Vec<PExponent> = raw.iter().map(|&v| PExponent::int(v)).collect();
        let cf = alpha_val_closed_form(&ValProfile::new(p, vals.clone()).unwrap(), true).unwrap();
        prop_assert!(cf.windows(2).all(|w| w[0] < w[1]));
        prop_assert_eq!(*cf.last().unwrap(), *vals.last().unwrap());
        prop_assert!(cf.iter().all(PExponent::is_positive));
    }

    #[test]
    fn direct_matches_closed_form(raw in prop::collection::btree_set(1i64..12, 2..4), c in 1u64..4) {
        let f = gf_make(2, 2).unwrap();
        let vals: Vec<i64> = raw.into_iter().collect();
        let top = *vals.last().unwrap();
        let a: Vec<TruncatedSeries> = vals
            .iter()
            .map(|&v| {
                let terms = [(PExponent::int(v), GfElem::new(&f, c)), (PExponent::int(v + 1), GfElem::one(&f))];
                TruncatedSeries::from_terms(&f, 5, &terms, PExponent::int(v + 8 * top + 32)).unwrap()
            })
            .collect();
        let r = verify_alpha_vals(&a).unwrap();
        prop_assert!(r.pass(), "{:?}", r.checks);
    }
}
