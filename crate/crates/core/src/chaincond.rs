//! Intersections of subgroup families of `(F_{p^k}, +)` and the redundant index ν.

use std::sync::Arc;

use itertools::Itertools;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::fp::FpMatrix;
use crate::algebra::{GaloisField, GfElem};
use crate::shatter::ramsey_partite;
use crate::{Error, Result};

/// An F_p-subspace of `F_{p^k}`, stored as a reduced row echelon basis over coordinate vectors.
#[derive(Debug, Clone, Serialize)]
pub struct SubspaceSubgroup {
    #[serde(skip)]
    field: Arc<GaloisField>,
    basis: Vec<Vec<u64>>,
}

impl PartialEq for SubspaceSubgroup {
    fn eq(&self, other: &Self) -> bool {
        self.field.order() == other.field.order() && self.basis == other.basis
    }
}

impl Eq for SubspaceSubgroup {}

impl SubspaceSubgroup {
    fn from_rows(field: &Arc<GaloisField>, rows: Vec<Vec<u64>>) -> SubspaceSubgroup {
        let k = field.degree();
        let basis = if rows.is_empty() {
            Vec::new()
        } else {
            FpMatrix::new(field.p(), k, rows).rref().0.rows().to_vec()
        };
        SubspaceSubgroup { field: field.clone(), basis }
    }

    pub fn span(field: &Arc<GaloisField>, gens: &[GfElem]) -> SubspaceSubgroup {
        SubspaceSubgroup::from_rows(field, gens.iter().map(|g| g.coeffs()).collect())
    }

    pub fn whole(field: &Arc<GaloisField>) -> SubspaceSubgroup {
        let k = field.degree();
        let rows = (0..k)
            .map(|i| {
                let mut v = vec![0; k];
                v[i] = 1;
                v
            })
            .collect();
        SubspaceSubgroup::from_rows(field, rows)
    }

    pub fn zero(field: &Arc<GaloisField>) -> SubspaceSubgroup {
        SubspaceSubgroup { field: field.clone(), basis: Vec::new() }
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_whole(&self) -> bool {
        self.dim() == self.field.degree()
    }

    pub fn contains(&self, x: &GfElem) -> bool {
        let mut rows = self.basis.clone();
        rows.push(x.coeffs());
        FpMatrix::new(self.field.p(), self.field.degree(), rows).rank() == self.dim()
    }

    /// Linear functionals vanishing on the subspace.
    fn annihilator(&self) -> Vec<Vec<u64>> {
        let k = self.field.degree();
        if self.basis.is_empty() {
            return SubspaceSubgroup::whole(&self.field).basis;
        }
        FpMatrix::new(self.field.p(), k, self.basis.clone()).kernel()
    }

    /// Intersection of a list of subspaces; the empty list gives the whole group.
    pub fn intersect_all<'a>(field: &Arc<GaloisField>, subs: impl IntoIterator<Item = &'a SubspaceSubgroup>) -> SubspaceSubgroup {
        let rows: Vec<Vec<u64>> = subs.into_iter().flat_map(|s| s.annihilator()).collect();
        if rows.is_empty() {
            return SubspaceSubgroup::whole(field);
        }
        let kernel = FpMatrix::new(field.p(), field.degree(), rows).kernel();
        SubspaceSubgroup::from_rows(field, kernel)
    }

    pub fn intersect(&self, other: &SubspaceSubgroup) -> SubspaceSubgroup {
        SubspaceSubgroup::intersect_all(&self.field, [self, other])
    }

    /// All elements, in increasing raw order.
    pub fn elements(&self) -> Vec<GfElem> {
        let p = self.field.p();
        let k = self.field.degree();
        let mut out: Vec<GfElem> = (0..self.dim())
            .map(|_| 0..p)
            .multi_cartesian_product()
            .map(|c| {
                let mut v = vec![0u64; k];
                for (ci, row) in c.iter().zip(&self.basis) {
                    for (x, r) in v.iter_mut().zip(row) {
                        *x = (*x + ci * r) % p;
                    }
                }
                GfElem::from_coeffs(&self.field, &v)
            })
            .collect();
        if self.dim() == 0 {
            out = vec![GfElem::zero(&self.field)];
        }
        out.sort_by_key(|e| e.raw());
        out
    }
}

/// The subgroup `b·℘(K)`, which has dimension `k − 1`.
pub fn wp_image_subgroup(b: &GfElem) -> Result<SubspaceSubgroup> {
    if b.raw() == 0 {
        return Err(Error::Precondition("b must be nonzero".into()));
    }
    let field = b.field();
    let p = field.p();
    let gens: Vec<GfElem> = (0..field.degree())
        .map(|i| {
            let mut c = vec![0u64; field.degree()];
            c[i] = 1;
            let e = GfElem::from_coeffs(field, &c);
            b.clone() * (e.pow(p) - e)
        })
        .collect();
    let s = SubspaceSubgroup::span(field, &gens);
    if s.dim() + 1 != field.degree() {
        return Err(Error::Postcondition(format!("b*wp(K) has dimension {}", s.dim())));
    }
    Ok(s)
}

/// A uniformly defined family of subgroups indexed by an n-tuple of parameters.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Family {
    /// `(b_0 ⋯ b_{n−1})^power · ℘(K)`.
    WpProduct { power: u64 },
    /// The same subgroup for every parameter tuple.
    Fixed { subgroup: SubspaceSubgroup },
}

impl Family {
    pub fn wp() -> Family {
        Family::WpProduct { power: 1 }
    }

    pub fn subgroup(&self, params: &[GfElem]) -> Result<SubspaceSubgroup> {
        match self {
            Family::WpProduct { power } => {
                let first = params.first().ok_or_else(|| Error::Precondition("empty parameter tuple".into()))?;
                let prod = params[1..].iter().fold(first.clone(), |acc, b| acc * b.clone());
                wp_image_subgroup(&prod.pow(*power))
            }
            Family::Fixed { subgroup } => Ok(subgroup.clone()),
        }
    }

    /// Least d such that every width-d array has a redundant index for this family alone.
    /// An irredundant family of subspaces has at most `codim` members.
    pub fn base_bound(&self, k: usize, n: usize) -> usize {
        let codim = match self {
            Family::WpProduct { .. } => k,
            Family::Fixed { subgroup } if subgroup.is_whole() => 0,
            Family::Fixed { .. } => 1,
        };
        (1..).find(|d: &usize| d.pow(n as u32) > codim).unwrap()
    }
}

/// Parameters `b_{i,j}` for `i < n`, `j < d` together with the families they feed.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyArray {
    #[serde(skip)]
    field: Arc<GaloisField>,
    n: usize,
    d: usize,
    params: Vec<Vec<GfElem>>,
    families: Vec<Family>,
}

impl FamilyArray {
    pub fn new(field: &Arc<GaloisField>, params: Vec<Vec<GfElem>>, families: Vec<Family>) -> Result<FamilyArray> {
        let n = params.len();
        if n == 0 {
            return Err(Error::Precondition("n must be positive".into()));
        }
        let d = params[0].len();
        if d == 0 || params.iter().any(|r| r.len() != d) {
            return Err(Error::Precondition("parameter rows must share a positive width".into()));
        }
        if families.is_empty() {
            return Err(Error::Precondition("at least one family is required".into()));
        }
        for (i, r) in params.iter().enumerate() {
            for (j, b) in r.iter().enumerate() {
                if b.raw() == 0 {
                    return Err(Error::Precondition(format!("b[{i}][{j}] is zero")));
                }
                if b.field().order() != field.order() {
                    return Err(Error::Precondition(format!("b[{i}][{j}] lies in another field")));
                }
            }
        }
        Ok(FamilyArray { field: field.clone(), n, d, params, families })
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn params(&self) -> &[Vec<GfElem>] {
        &self.params
    }

    pub fn families(&self) -> &[Family] {
        &self.families
    }

    /// Index tuples η ∈ d^n in lexicographic order.
    pub fn etas(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|_| 0..self.d).multi_cartesian_product().collect()
    }

    pub fn params_at(&self, eta: &[usize]) -> Vec<GfElem> {
        eta.iter().enumerate().map(|(i, &j)| self.params[i][j].clone()).collect()
    }

    /// `H^t_η` for every family t and every η in lexicographic order.
    pub fn subgroups(&self) -> Result<Vec<Vec<SubspaceSubgroup>>> {
        let etas = self.etas();
        self.families
            .iter()
            .map(|f| etas.iter().map(|e| f.subgroup(&self.params_at(e))).collect())
            .collect()
    }
}

fn redundant_in(field: &Arc<GaloisField>, hs: &[SubspaceSubgroup], full: &SubspaceSubgroup, skip: usize) -> bool {
    let rest = SubspaceSubgroup::intersect_all(field, hs.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, h)| h));
    rest == *full
}

/// Lexicographically least ν whose removal leaves every family's intersection unchanged.
pub fn find_redundant(fa: &FamilyArray) -> Result<Option<Vec<usize>>> {
    let hs = fa.subgroups()?;
    let fulls: Vec<SubspaceSubgroup> = hs.iter().map(|h| SubspaceSubgroup::intersect_all(&fa.field, h)).collect();
    let etas = fa.etas();
    for (idx, eta) in etas.iter().enumerate() {
        if hs.iter().zip(&fulls).all(|(h, full)| redundant_in(&fa.field, h, full, idx)) {
            return Ok(Some(eta.clone()));
        }
    }
    Ok(None)
}

/// Recomputes both intersections for every family from scratch.
pub fn verify_redundant(fa: &FamilyArray, nu: &[usize]) -> Result<bool> {
    if nu.len() != fa.n || nu.iter().any(|&j| j >= fa.d) {
        return Ok(false);
    }
    for f in &fa.families {
        let mut all = SubspaceSubgroup::whole(&fa.field);
        let mut rest = SubspaceSubgroup::whole(&fa.field);
        for eta in fa.etas() {
            let h = f.subgroup(&fa.params_at(&eta))?;
            all = all.intersect(&h);
            if eta != nu {
                rest = rest.intersect(&h);
            }
        }
        if all != rest {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Random array of nonzero parameters.
pub fn random_array(field: &Arc<GaloisField>, n: usize, d: usize, families: &[Family], rng: &mut ChaCha8Rng) -> Result<FamilyArray> {
    let q = field.order();
    let params = (0..n)
        .map(|_| (0..d).map(|_| GfElem::new(field, rng.random_range(1..q))).collect())
        .collect();
    FamilyArray::new(field, params, families.to_vec())
}

/// Every array of width d with `b_{i,0} = 1`. Scaling row i by c multiplies every
/// `WpProduct` subgroup by the same `c^power`, a linear automorphism, so for those
/// families redundancy is unchanged and these arrays cover all cases.
pub fn arrays_mod_scaling<'a>(field: &'a Arc<GaloisField>, n: usize, d: usize, families: &[Family]) -> impl Iterator<Item = FamilyArray> + 'a {
    let q = field.order();
    let families = families.to_vec();
    (0..n * (d - 1)).map(|_| 1..q).multi_cartesian_product().map(move |free| {
        let params = (0..n)
            .map(|i| {
                std::iter::once(GfElem::one(field))
                    .chain(free[i * (d - 1)..(i + 1) * (d - 1)].iter().map(|&r| GfElem::new(field, r)))
                    .collect()
            })
            .collect();
        FamilyArray::new(field, params, families.clone()).expect("nonzero parameters")
    })
}

/// Bound `R(m_2, m_1^n, n)·m_1` from the inductive proof, computed family by family.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProofBound {
    pub base: Vec<usize>,
    pub value: Option<u64>,
    pub detail: String,
}

pub fn proof_bound(k: usize, n: usize, families: &[Family], ramsey_budget: u64) -> ProofBound {
    let base: Vec<usize> = families.iter().map(|f| f.base_bound(k, n)).collect();
    let mut acc: Option<u64> = None;
    let mut detail = String::new();
    for &m1 in base.iter().rev() {
        acc = match acc {
            None => Some(m1 as u64),
            Some(m2) => {
                let colors = (m1 as u64).pow(n as u32);
                if m2 <= 1 || colors <= 1 {
                    Some(m2.max(1) * m1 as u64)
                } else {
                    match ramsey_partite(m2 as usize, colors as usize, n, ramsey_budget) {
                        Ok(r) => Some(r.r * m1 as u64),
                        Err(e) => {
                            detail = format!("R({m2}, {colors}, {n}) not computed: {e}");
                            None
                        }
                    }
                }
            }
        };
        if acc.is_none() {
            break;
        }
    }
    ProofBound { base, value: acc, detail }
}

#[derive(Debug, Clone, Serialize)]
pub struct Threshold {
    pub d: usize,
    pub trials: usize,
    pub seed: u64,
    pub failing_below: Option<FamilyArray>,
    pub proof: ProofBound,
    pub within_proof_bound: Option<bool>,
}

/// Least d for which every sampled width-d array has a redundant ν. An estimate, not a proof.
pub fn baldwin_saxl_threshold(
    field: &Arc<GaloisField>,
    n: usize,
    families: &[Family],
    trials: usize,
    seed: u64,
    max_d: usize,
) -> Result<Threshold> {
    if trials == 0 {
        return Err(Error::Precondition("trials must be positive".into()));
    }
    if n == 0 || families.is_empty() {
        return Err(Error::Precondition("n and the family list must be nonempty".into()));
    }
    let mut failing: Option<FamilyArray> = None;
    for d in 1..=max_d {
        let mut failed = None;
        for trial in 0..trials {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((d as u64) << 32) ^ trial as u64);
            let fa = random_array(field, n, d, families, &mut rng)?;
            if find_redundant(&fa)?.is_none() {
                failed = Some(fa);
                break;
            }
        }
        match failed {
            Some(fa) => failing = Some(fa),
            None => {
                let proof = proof_bound(field.degree(), n, families, 1 << 20);
                let within_proof_bound = proof.value.map(|v| d as u64 <= v);
                return Ok(Threshold { d, trials, seed, failing_below: failing, proof, within_proof_bound });
            }
        }
    }
    Err(Error::BudgetExceeded { budget: max_d as u64, lower: max_d as u64 + 1, upper: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gf_make;

    #[test]
    fn wp_image_over_f4() {
        let f = gf_make(2, 2).unwrap();
        let s = wp_image_subgroup(&GfElem::one(&f)).unwrap();
        let raws: Vec<u64> = s.elements().iter().map(|e| e.raw()).collect();
        assert_eq!(raws, vec![0, 1]);
        assert!(wp_image_subgroup(&GfElem::zero(&f)).is_err());
    }

    #[test]
    fn wp_image_dimension() {
        for (p, k) in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (5, 2)] {
            let f = gf_make(p, k).unwrap();
            for b in GfElem::all(&f).filter(|b| b.raw() != 0) {
                assert_eq!(wp_image_subgroup(&b).unwrap().dim(), k - 1);
            }
        }
    }

    #[test]
    fn intersections() {
        let f = gf_make(2, 3).unwrap();
        let a = wp_image_subgroup(&GfElem::one(&f)).unwrap();
        let b = wp_image_subgroup(&GfElem::generator(&f)).unwrap();
        let i = a.intersect(&b);
        assert_eq!(i.dim(), 1);
        for e in GfElem::all(&f) {
            assert_eq!(i.contains(&e), a.contains(&e) && b.contains(&e));
        }
        assert!(SubspaceSubgroup::intersect_all(&f, []).is_whole());
    }

    #[test]
    fn constant_parameters_give_zero() {
        let f = gf_make(2, 4).unwrap();
        let g = GfElem::generator(&f);
        let fa = FamilyArray::new(&f, vec![vec![g.clone(); 3], vec![g.clone(); 3]], vec![Family::wp()]).unwrap();
        assert_eq!(find_redundant(&fa).unwrap(), Some(vec![0, 0]));
    }

    #[test]
    fn single_proper_subgroup_has_no_redundancy() {
        let f = gf_make(2, 3).unwrap();
        let fa = FamilyArray::new(&f, vec![vec![GfElem::one(&f)]], vec![Family::wp()]).unwrap();
        assert_eq!(find_redundant(&fa).unwrap(), None);
    }

    #[test]
    fn hyperplanes_past_dimension() {
        let f = gf_make(2, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let fa = random_array(&f, 2, 2, &[Family::wp()], &mut rng).unwrap();
            let nu = find_redundant(&fa).unwrap().expect("4 > 3 hyperplanes");
            assert!(verify_redundant(&fa, &nu).unwrap());
        }
    }

    #[test]
    fn thresholds() {
        let f = gf_make(2, 4).unwrap();
        let whole = Family::Fixed { subgroup: SubspaceSubgroup::whole(&f) };
        assert_eq!(baldwin_saxl_threshold(&f, 1, &[whole], 5, 1, 6).unwrap().d, 1);
        let t = baldwin_saxl_threshold(&f, 1, &[Family::wp()], 50, 1, 8).unwrap();
        assert!(t.d <= 5);
        assert_eq!(t.within_proof_bound, Some(true));
        assert!(baldwin_saxl_threshold(&f, 1, &[Family::wp()], 0, 1, 8).is_err());
    }

    #[test]
    fn two_families_bound() {
        let pb = proof_bound(4, 1, &[Family::wp(), Family::WpProduct { power: 3 }], 1 << 20);
        assert_eq!(pb.base, vec![5, 5]);
        assert_eq!(pb.value, Some(21 * 5));
    }
}
