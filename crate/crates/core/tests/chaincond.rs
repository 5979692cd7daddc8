use ndep_core::algebra::{gf_make, Field, GfElem};
use ndep_core::chaincond::{
    baldwin_saxl_threshold, find_redundant, proof_bound, random_array, verify_redundant, wp_image_subgroup, Family,
    FamilyArray, SubspaceSubgroup,
};
use ndep_core::oracle;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn hyperplane_arrays_past_the_bound(k in 1usize..=4, n in 1usize..=2, seed in any::<u64>()) {
        let f = gf_make(2, k).unwrap();
        let d = (1..).find(|d: &usize| d.pow(n as u32) > k).unwrap();
        let fa = random_array(&f, n, d, &[Family::wp()], &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let nu = find_redundant(&fa).unwrap();
        prop_assert!(nu.is_some());
        prop_assert_eq!(&nu, &oracle::redundant_naive(&fa).unwrap());
        prop_assert!(verify_redundant(&fa, nu.as_ref().unwrap()).unwrap());
    }

    #[test]
    fn simultaneous_nu_is_redundant_for_each_family(k in 2usize..=3, seed in any::<u64>()) {
        let f = gf_make(2, k).unwrap();
        let fams = [Family::wp(), Family::WpProduct { power: 3 }];
        let d = 2 * k + 1;
        let fa = random_array(&f, 1, d, &fams, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let nu = find_redundant(&fa).unwrap().expect("two hyperplane families at d > 2k");
        for fam in &fams {
            let single = FamilyArray::new(&f, fa.params().to_vec(), vec![fam.clone()]).unwrap();
            prop_assert!(verify_redundant(&single, &nu).unwrap());
        }
    }
}

#[test]
fn wp_image_is_trace_kernel() {
    for k in 1..=4 {
        let f = gf_make(2, k).unwrap();
        for b in GfElem::all(&f).skip(1) {
            let h = wp_image_subgroup(&b).unwrap();
            assert_eq!(h.dim(), k - 1);
            for x in GfElem::all(&f) {
                let in_h = (x.clone() * b.try_inv().unwrap()).trace() == 0;
                assert_eq!(h.contains(&x), in_h);
            }
        }
    }
    assert!(wp_image_subgroup(&GfElem::zero(&gf_make(2, 2).unwrap())).is_err());
}

#[test]
fn intersections() {
    let f = gf_make(3, 2).unwrap();
    let g = GfElem::generator(&f);
    let one = GfElem::one(&f);
    let a = SubspaceSubgroup::span(&f, &[one.clone()]);
    let b = SubspaceSubgroup::span(&f, &[g.clone()]);
    assert_eq!(a.intersect(&b).dim(), 0);
    assert_eq!(a.intersect(&SubspaceSubgroup::whole(&f)), a);
    assert_eq!(SubspaceSubgroup::intersect_all(&f, []).dim(), 2);
    assert_eq!(SubspaceSubgroup::span(&f, &[one, g]).elements().len(), 9);
}

#[test]
fn proof_bound_for_two_families() {
    let pb = proof_bound(4, 1, &[Family::wp(), Family::WpProduct { power: 3 }], 1 << 20);
    assert_eq!(pb.base, vec![5, 5]);
    assert_eq!(pb.value, Some(105));
}

#[test]
fn sampled_threshold_within_proof_bound() {
    let f = gf_make(2, 3).unwrap();
    let th = baldwin_saxl_threshold(&f, 1, &[Family::wp()], 100, 7, 10).unwrap();
    assert!(th.d <= 4);
    assert_eq!(th.within_proof_bound, Some(true));
    assert!(baldwin_saxl_threshold(&f, 1, &[Family::wp()], 0, 7, 10).is_err());
}
