use ndep_core::algebra::{gf_make, GfElem, Matrix};
use ndep_core::oracle;
use ndep_core::shatter::{
    bilinear_encode, bilinear_shatter_demo, compose_relation, is_box_free, max_shattered_grid, ramsey_partite, shatters,
    BilinearSpace, Grid, WitnessedRelation,
};
use proptest::prelude::*;

fn relation() -> impl Strategy<Value = (WitnessedRelation, Grid)> {
    prop::collection::vec(1usize..=3, 1..=3).prop_flat_map(|parts| {
        let cells: usize = parts.iter().product();
        let witnesses = prop::collection::vec(prop::collection::vec(any::<bool>(), cells), 0..24);
        let grid = parts.iter().map(|&s| prop::sample::subsequence((0..s).collect::<Vec<_>>(), 0..=s)).collect::<Vec<_>>();
        (Just(parts), witnesses, grid).prop_map(|(parts, ws, grid)| {
            let mut rel = WitnessedRelation::new(parts).unwrap();
            for (i, bits) in ws.iter().enumerate() {
                rel.push(format!("w{i}"), bits).unwrap();
            }
            (rel, Grid(grid))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn decision_matches_enumeration((rel, grid) in relation()) {
        prop_assume!(grid.cells() <= 9);
        prop_assert_eq!(shatters(&rel, &grid).unwrap(), oracle::shatters_naive(&rel, &grid));
    }

    #[test]
    fn max_grid_matches_enumeration((rel, _) in relation()) {
        let caps = vec![3; rel.n()];
        let mg = max_shattered_grid(&rel, &caps).unwrap();
        prop_assert_eq!(mg.grid.as_ref().map(|_| mg.side), oracle::max_grid_naive(&rel, &caps));
    }

    #[test]
    fn relations_survive_both_formats((rel, _) in relation()) {
        prop_assert_eq!(WitnessedRelation::from_json(&rel.to_json()).unwrap(), rel.clone());
        prop_assert_eq!(WitnessedRelation::from_text(&rel.to_text()).unwrap(), rel);
    }

    #[test]
    fn encoder_realizes_matrix(raws in prop::collection::vec(0u64..16, 9), symplectic in any::<bool>()) {
        let f = gf_make(2, 4).unwrap();
        let space = if symplectic { BilinearSpace::symplectic(&f, 2).unwrap() } else { BilinearSpace::identity(&f, 3).unwrap() };
        let c = Matrix::from_fn(3, 3, |i, j| GfElem::new(&f, raws[3 * i + j]));
        let enc = bilinear_encode(&space, &c).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                prop_assert_eq!(&space.form(&enc.a[i], &enc.b[j]), c.get(i, j));
            }
        }
    }
}

#[test]
fn ramsey_values() {
    assert_eq!(ramsey_partite(2, 2, 1, 1 << 20).unwrap().r, 3);
    for n in 1..=3 {
        assert_eq!(ramsey_partite(1, 3, n, 1 << 20).unwrap().r, 1);
        assert_eq!(ramsey_partite(2, 1, n, 1 << 20).unwrap().r, 2);
    }
    let r = ramsey_partite(2, 2, 2, 1 << 22).unwrap();
    // brute force over all 2^25 colorings of [5]^2 gives the same value
    assert_eq!(r.r, 5);
    assert!(is_box_free(&r.bad_coloring, r.r as usize - 1, 2, 2));
    assert!(!oracle::has_mono_box_naive(&r.bad_coloring, r.r as usize - 1, 2, 2));
}

#[test]
fn bilinear_demo_q16() {
    let f = gf_make(2, 4).unwrap();
    for space in [BilinearSpace::identity(&f, 3).unwrap(), BilinearSpace::symplectic(&f, 2).unwrap()] {
        let demo = bilinear_shatter_demo(&space, 3).unwrap();
        assert!(demo.shattered);
        assert_eq!(demo.distinct_values, 9);
    }
    assert!(bilinear_shatter_demo(&BilinearSpace::identity(&gf_make(2, 3).unwrap(), 3).unwrap(), 3).is_err());
}

#[test]
fn equality_composed_with_addition() {
    // y1 + y2 = y3 over Z/5: each witness meets a row in one cell
    let eq: Vec<bool> = (0..25).map(|i| i / 5 == i % 5).collect();
    let add: Vec<usize> = (0..25).map(|i| (i / 5 + i % 5) % 5).collect();
    let second: Vec<usize> = (0..25).map(|i| i % 5).collect();
    let rel = compose_relation(5, &eq, &[(1, 2), (1, 3)], &[add, second]).unwrap();
    assert!(shatters(&rel, &Grid(vec![vec![0], vec![0]])).unwrap());
    assert!(!shatters(&rel, &Grid(vec![vec![0, 1], vec![0, 1]])).unwrap());
}
