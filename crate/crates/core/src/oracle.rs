//! Slow, direct reference implementations used to cross-check the fast paths.
//! Each one works from the definitions and shares no search code with the
//! module it checks.

use itertools::Itertools;

use crate::algebra::{Field, GfElem};
use crate::chaincond::{Family, FamilyArray};
use crate::opg::Opg;
use crate::shatter::{Grid, WitnessedRelation};
use crate::{Error, Result};

/// Some nontrivial F_p-combination of `c` vanishes.
pub fn fp_dependent_naive(c: &[GfElem]) -> bool {
    let Some(first) = c.first() else {
        return false;
    };
    let p = first.field().p();
    (0..c.len()).map(|_| 0..p).multi_cartesian_product().any(|lam| {
        lam.iter().any(|&l| l != 0)
            && c.iter()
                .zip(&lam)
                .fold(first.zero_like(), |acc, (x, &l)| acc + x.from_int_like(l as i64) * x.clone())
                .raw()
                == 0
    })
}

/// Every point of `G_a(K)` by scanning all tuples.
pub fn ga_points_naive(a: &[GfElem]) -> Vec<Vec<GfElem>> {
    let elems: Vec<GfElem> = GfElem::all(a[0].field()).collect();
    (0..a.len())
        .map(|_| elems.iter().cloned())
        .multi_cartesian_product()
        .filter(|x| {
            let lhs = a[0].clone() * x[0].wp();
            a.iter().zip(x).all(|(ai, xi)| ai.clone() * xi.wp() == lhs)
        })
        .collect()
}

/// Every subset of the grid is cut out by some witness, checked one subset at a time.
pub fn shatters_naive(rel: &WitnessedRelation, g: &Grid) -> bool {
    let tuples: Vec<Vec<usize>> = g.0.iter().map(|s| s.iter().copied()).multi_cartesian_product().collect();
    let c = tuples.len();
    (0u64..1 << c).all(|subset| {
        (0..rel.witnesses().len())
            .any(|w| tuples.iter().enumerate().all(|(i, t)| rel.holds(w, t) == (subset >> i & 1 == 1)))
    })
}

/// Largest side of a shattered cube grid, `None` if not even the empty grid is shattered.
pub fn max_grid_naive(rel: &WitnessedRelation, caps: &[usize]) -> Option<usize> {
    let n = rel.n();
    if !shatters_naive(rel, &Grid(vec![Vec::new(); n])) {
        return None;
    }
    let limit = caps.iter().zip(rel.parts()).map(|(&c, &d)| c.min(d)).min().unwrap_or(0);
    (1..=limit)
        .rev()
        .find(|&d| {
            rel.parts()
                .iter()
                .map(|&s| (0..s).combinations(d))
                .multi_cartesian_product()
                .any(|sets| shatters_naive(rel, &Grid(sets)))
        })
        .or(Some(0))
}

/// `(demands, satisfied, betweenness failures)` of the extension axioms up to
/// `k` demanded links, counted directly.
pub fn extension_naive(h: &Opg, k: usize) -> (usize, usize, usize) {
    let n = h.n();
    let (mut demands, mut satisfied, mut between) = (0, 0, 0);
    for part in 0..n {
        let cross: Vec<Vec<usize>> = (0..n).filter(|&i| i != part).map(|i| 0..h.parts()[i]).multi_cartesian_product().collect();
        let full = |cr: &[usize], b: usize| {
            let mut t = cr.to_vec();
            t.insert(part, b);
            t
        };
        // label 1: must link, 2: must not link; unlabeled tuples are free
        let mut labelings: Vec<Vec<u8>> = Vec::new();
        for s in 0..=k.min(cross.len()) {
            for pos in (0..cross.len()).combinations(s) {
                for signs in 0u64..1 << s {
                    let mut lab = vec![0u8; cross.len()];
                    for (i, &q) in pos.iter().enumerate() {
                        lab[q] = 1 + (signs >> i & 1) as u8;
                    }
                    labelings.push(lab);
                }
            }
        }
        for lab in &labelings {
            for b0 in 0..h.parts()[part] {
                for b1 in b0 + 1..h.parts()[part] {
                    demands += 1;
                    if b1 == b0 + 1 {
                        between += 1;
                        continue;
                    }
                    let ok = (b0 + 1..b1).any(|b| {
                        cross.iter().zip(lab).all(|(cr, &l)| match l {
                            1 => h.has_edge(&full(cr, b)),
                            2 => !h.has_edge(&full(cr, b)),
                            _ => true,
                        })
                    });
                    if ok {
                        satisfied += 1;
                    }
                }
            }
        }
    }
    (demands, satisfied, between)
}

/// Least induced copy by scanning every choice of subsets in the boxes.
pub fn induced_copy_naive(h: &Opg, pattern: &Opg, boxes: &[(usize, usize)]) -> Option<Vec<Vec<usize>>> {
    let n = h.n();
    boxes
        .iter()
        .zip(pattern.parts())
        .map(|(&(lo, hi), &s)| (lo..hi).combinations(s))
        .multi_cartesian_product()
        .find(|emb| {
            pattern.tuples().all(|t| {
                let img: Vec<usize> = (0..n).map(|i| emb[i][t[i]]).collect();
                pattern.has_edge(&t) == h.has_edge(&img)
            })
        })
}

/// A monochromatic `l × ... × l` box exists in a coloring of `[r]^n`, stored row-major.
pub fn has_mono_box_naive(coloring: &[u8], r: usize, l: usize, n: usize) -> bool {
    if l == 0 {
        return true;
    }
    (0..n).map(|_| (0..r).combinations(l)).multi_cartesian_product().any(|sets| {
        let colors: Vec<u8> = sets
            .iter()
            .map(|s| s.iter().copied())
            .multi_cartesian_product()
            .map(|idx| coloring[idx.iter().fold(0, |acc, &i| acc * r + i)])
            .collect();
        colors.iter().all_equal()
    })
}

/// Least `r ≤ max_r` such that every m-coloring of `[r]^n` has a monochromatic box, by brute force.
pub fn ramsey_naive(l: usize, m: usize, n: usize, max_r: usize) -> Option<usize> {
    (0..=max_r).find(|&r| {
        let cells = r.pow(n as u32);
        if cells == 0 {
            return l == 0;
        }
        (0..cells).map(|_| 0..m as u8).multi_cartesian_product().all(|c| has_mono_box_naive(&c, r, l, n))
    })
}

/// Element set of a family member as a membership table indexed by raw value.
/// Hyperplanes use `x ∈ c·℘(K) ⇔ Tr(x / c) = 0`.
fn member_table(fam: &Family, params: &[GfElem]) -> Result<Vec<bool>> {
    let f = params[0].field();
    match fam {
        Family::WpProduct { power } => {
            let c = params[1..].iter().fold(params[0].clone(), |acc, b| acc * b.clone()).pow(*power);
            let ci = c.try_inv().map_err(Error::from)?;
            Ok(GfElem::all(f).map(|x| (x * ci.clone()).trace() == 0).collect())
        }
        Family::Fixed { subgroup } => {
            let mut t = vec![false; f.order() as usize];
            for e in subgroup.elements() {
                t[e.raw() as usize] = true;
            }
            Ok(t)
        }
    }
}

/// Least redundant ν computed on explicit element sets.
pub fn redundant_naive(fa: &FamilyArray) -> Result<Option<Vec<usize>>> {
    let etas = fa.etas();
    let tables: Vec<Vec<Vec<bool>>> = fa
        .families()
        .iter()
        .map(|fam| etas.iter().map(|e| member_table(fam, &fa.params_at(e))).collect())
        .collect::<Result<_>>()?;
    let q = fa.field().order() as usize;
    let meet = |hs: &[Vec<bool>], skip: Option<usize>| -> Vec<bool> {
        (0..q).map(|x| hs.iter().enumerate().all(|(i, h)| Some(i) == skip || h[x])).collect()
    };
    for (idx, eta) in etas.iter().enumerate() {
        if tables.iter().all(|hs| meet(hs, None) == meet(hs, Some(idx))) {
            return Ok(Some(eta.clone()));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gf_make;

    #[test]
    fn dependence_over_f4() {
        let f = gf_make(2, 2).unwrap();
        let one = GfElem::one(&f);
        let g = GfElem::generator(&f);
        assert!(!fp_dependent_naive(&[one.clone(), g.clone()]));
        assert!(fp_dependent_naive(&[one.clone(), one.clone()]));
        assert!(fp_dependent_naive(&[one.clone(), g.clone(), one + g]));
    }

    #[test]
    fn ga_has_q_points() {
        let f = gf_make(3, 2).unwrap();
        let a = [GfElem::one(&f), GfElem::generator(&f)];
        assert_eq!(ga_points_naive(&a).len(), 9);
    }

    #[test]
    fn ramsey_small() {
        assert_eq!(ramsey_naive(2, 2, 1, 4), Some(3));
        assert_eq!(ramsey_naive(1, 3, 2, 3), Some(1));
        assert_eq!(ramsey_naive(3, 1, 2, 4), Some(3));
    }
}
