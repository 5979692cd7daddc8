//! Moore matrices, the group `G_a` and its isomorphism onto `(K, +)`.
//!
//! For `a = (a_0, ..., a_m)` the group `G_a` is cut out by
//! `a_0 ℘(x_0) = a_i ℘(x_i)`. With `A = M(a_0^{-1/p^m}, ..., a_m^{-1/p^m})`,
//! `α = A^{-1} e_m` and `β = M(α)^{-1}`, the map `f(x) = Σ α_j x_j` is an
//! isomorphism with inverse `t ↦ (Σ_j β_ij t^{p^j})_i`.

use serde::Serialize;

use crate::algebra::{Field, GfElem, Matrix};
use crate::algebra::fp::FpMatrix;
use crate::error::{Error, Result};

/// `M(c)_{ij} = φ^i(c_j)`.
pub fn moore_matrix<F: Field>(c: &[F]) -> Result<Matrix<F>> {
    if c.is_empty() {
        return Err(Error::Invalid("Moore matrix of an empty tuple".into()));
    }
    let mut rows = vec![c.to_vec()];
    for i in 1..c.len() {
        rows.push(rows[i - 1].iter().map(F::pth_power).collect());
    }
    Ok(Matrix::from_rows(rows))
}

pub fn moore_det<F: Field>(c: &[F]) -> Result<F> {
    Ok(moore_matrix(c)?.det()?)
}

/// `Δ(c) ≠ 0`; on series this is decided to precision.
pub fn is_fp_independent<F: Field>(c: &[F]) -> Result<bool> {
    Ok(!moore_det(c)?.is_zero()?)
}

#[derive(Debug, Clone, Serialize)]
pub struct IsoData<F> {
    pub a: Vec<F>,
    /// `a_j^{-1/p^m}`
    #[serde(skip)]
    pub roots: Vec<F>,
    /// `A`
    pub moore: Matrix<F>,
    /// `Δ = det A`
    pub delta: F,
    pub alpha: Vec<F>,
    pub beta: Matrix<F>,
}

impl<F: Field> IsoData<F> {
    pub fn m(&self) -> usize {
        self.a.len() - 1
    }
}

pub fn build_iso<F: Field>(a: &[F]) -> Result<IsoData<F>> {
    if a.is_empty() {
        return Err(Error::Invalid("empty tuple".into()));
    }
    let m = a.len() - 1;
    for (i, x) in a.iter().enumerate() {
        if x.is_zero()? {
            return Err(Error::ZeroEntry(i));
        }
    }
    let inv: Vec<F> = a.iter().map(F::try_inv).collect::<std::result::Result<_, _>>()?;
    // the p^m-th roots are the only step that needs the perfection cap
    let roots: Vec<F> = inv.iter().map(|x| x.frobenius(-(m as i64))).collect::<std::result::Result<_, _>>()?;
    let moore = Matrix::from_fn(m + 1, m + 1, |i, j| {
        inv[j].frobenius(i as i64 - m as i64).expect("within cap once the roots exist")
    });
    let delta = moore.det()?;
    if delta.is_zero()? {
        return Err(Error::Dependent(format!("inverses of {a:?}")));
    }
    let a_inv = moore.inverse()?.ok_or_else(|| Error::Dependent(format!("inverses of {a:?}")))?;
    let alpha = a_inv.column(m);
    let m_alpha = moore_matrix(&alpha)?;
    let beta = m_alpha
        .inverse()?
        .ok_or_else(|| Error::Postcondition(format!("alpha {alpha:?} is F_p-dependent")))?;
    if !m_alpha.mul(&beta).is_identity()? || !beta.mul(&m_alpha).is_identity()? {
        return Err(Error::Postcondition("beta is not a two-sided inverse of M(alpha)".into()));
    }
    Ok(IsoData { a: a.to_vec(), roots, moore, delta, alpha, beta })
}

pub fn ga_contains<F: Field>(a: &[F], x: &[F]) -> Result<bool> {
    if a.len() != x.len() {
        return Err(Error::Invalid(format!("tuple lengths {} and {} differ", a.len(), x.len())));
    }
    let lhs = a[0].clone() * x[0].wp();
    for i in 1..a.len() {
        if !(lhs.clone() - a[i].clone() * x[i].wp()).is_zero()? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A point of `G_a`, validated on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct GaTuple<F>(Vec<F>);

impl<F: Field> GaTuple<F> {
    pub fn new(a: &[F], x: Vec<F>) -> Result<GaTuple<F>> {
        if !ga_contains(a, &x)? {
            return Err(Error::NotInGroup(format!("{x:?}")));
        }
        Ok(GaTuple(x))
    }

    pub fn coords(&self) -> &[F] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<F> {
        self.0
    }
}

fn dot<F: Field>(u: &[F], v: &[F]) -> F {
    u.iter().zip(v).skip(1).fold(u[0].clone() * v[0].clone(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn f_apply<F: Field>(iso: &IsoData<F>, x: &[F]) -> Result<F> {
    if !ga_contains(&iso.a, x)? {
        return Err(Error::NotInGroup(format!("{x:?}")));
    }
    Ok(dot(&iso.alpha, x))
}

pub fn f_inv_apply<F: Field>(iso: &IsoData<F>, t: &F) -> Result<GaTuple<F>> {
    let mut powers = vec![t.clone()];
    for j in 1..=iso.m() {
        powers.push(powers[j - 1].pth_power());
    }
    let x = iso.beta.mul_vec(&powers);
    if !ga_contains(&iso.a, &x)? {
        return Err(Error::Postcondition(format!("f^-1({t:?}) = {x:?} left G_a")));
    }
    Ok(GaTuple(x))
}

/// `φ^i(f(x)) = Σ φ^i(α_j) x_j` for a point `x` of `G_a`.
pub fn tfrob_check<F: Field>(iso: &IsoData<F>, x: &[F], i: usize) -> Result<bool> {
    if i > iso.m() {
        return Err(Error::Precondition(format!("i = {i} exceeds m = {}", iso.m())));
    }
    let t = f_apply(iso, x)?;
    let lhs = t.frobenius(i as i64)?;
    let twisted: Vec<F> = iso.alpha.iter().map(|al| al.frobenius(i as i64)).collect::<std::result::Result<_, _>>()?;
    Ok((lhs - dot(&twisted, x)).is_zero()?)
}

/// All `x` with `x^p - x = a`, sorted by raw value.
pub fn artin_schreier_roots_gf(a: &GfElem) -> Vec<GfElem> {
    let f = a.field();
    let (p, k) = (f.p(), f.degree());
    // column i is ℘ of the i-th basis vector
    let cols: Vec<Vec<u64>> = (0..k)
        .map(|i| {
            let e: Vec<u64> = (0..k).map(|j| u64::from(i == j)).collect();
            GfElem::from_coeffs(f, &e).wp().coeffs()
        })
        .collect();
    let rows = (0..k).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
    let Some(x0) = FpMatrix::new(p, k, rows).solve(&a.coeffs()) else {
        return Vec::new();
    };
    let x0 = GfElem::from_coeffs(f, &x0);
    let mut out: Vec<GfElem> = (0..p as i64).map(|c| x0.clone() + x0.from_int_like(c)).collect();
    out.sort_by_key(GfElem::raw);
    out
}

/// An additive polynomial `Σ c_j t^{p^j}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdditivePoly<F> {
    pub coeffs: Vec<F>,
}

impl<F: Field> AdditivePoly<F> {
    pub fn new(coeffs: Vec<F>) -> AdditivePoly<F> {
        assert!(!coeffs.is_empty());
        AdditivePoly { coeffs }
    }

    /// `c (t^p - t)`
    pub fn scaled_wp(c: &F) -> AdditivePoly<F> {
        AdditivePoly::new(vec![-c.clone(), c.clone()])
    }

    pub fn eval(&self, t: &F) -> F {
        let mut pw = t.clone();
        let mut acc = self.coeffs[0].clone() * pw.clone();
        for c in &self.coeffs[1..] {
            pw = pw.pth_power();
            acc = acc + c.clone() * pw.clone();
        }
        acc
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AdditivePoly<F>) -> AdditivePoly<F> {
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                let twisted = b.frobenius(i as i64).expect("positive frobenius");
                out[i + j] = out[i + j].clone() + a.clone() * twisted;
            }
        }
        AdditivePoly::new(out)
    }

    pub fn add(&self, other: &AdditivePoly<F>) -> AdditivePoly<F> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = self.coeffs[0].zero_like();
        AdditivePoly::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).cloned().unwrap_or(zero.clone())
                        + other.coeffs.get(i).cloned().unwrap_or(zero.clone())
                })
                .collect(),
        )
    }

    pub fn scale(&self, c: &F) -> AdditivePoly<F> {
        AdditivePoly::new(self.coeffs.iter().map(|x| c.clone() * x.clone()).collect())
    }

    /// Index of the highest coefficient that is not zero to precision.
    pub fn degree_log(&self) -> Result<Option<usize>> {
        for j in (0..self.coeffs.len()).rev() {
            if !self.coeffs[j].is_zero()? {
                return Ok(Some(j));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gf_make;

    #[test]
    fn moore_det_examples() {
        let f = gf_make(2, 2).unwrap();
        let one = GfElem::one(&f);
        let g = GfElem::generator(&f);
        assert_eq!(moore_det(&[g.clone()]).unwrap(), g);
        assert_eq!(moore_det(&[one.clone(), one.clone()]).unwrap(), GfElem::zero(&f));
        assert_eq!(moore_det(&[one.clone(), g.clone()]).unwrap(), one);
        assert!(is_fp_independent(&[one.clone(), g.clone()]).unwrap());
        assert!(!is_fp_independent(&[GfElem::zero(&f)]).unwrap());
    }

    #[test]
    fn iso_for_one_g_over_f4() {
        let f = gf_make(2, 2).unwrap();
        let one = GfElem::one(&f);
        let g = GfElem::generator(&f);
        let iso = build_iso(&[one.clone(), g.clone()]).unwrap();
        assert_eq!(iso.moore.to_rows(), vec![vec![one.clone(), g.clone()], vec![one.clone(), g.clone() + one.clone()]]);
        assert_eq!(iso.alpha, vec![g.clone(), one.clone()]);
        let zero = GfElem::zero(&f);
        assert_eq!(f_apply(&iso, &[one.clone(), zero.clone()]).unwrap(), g);
        assert_eq!(f_apply(&iso, &[one.clone(), one.clone()]).unwrap(), g.clone() + one.clone());
        assert!(!ga_contains(&iso.a, &[g.clone(), zero.clone()]).unwrap());
        assert!(matches!(f_apply(&iso, &[g.clone(), zero]), Err(Error::NotInGroup(_))));
    }

    #[test]
    fn iso_singleton_and_dependent() {
        let f = gf_make(3, 2).unwrap();
        let a = GfElem::generator(&f);
        let iso = build_iso(&[a.clone()]).unwrap();
        assert_eq!(iso.alpha, vec![a.clone()]);
        assert_eq!(*iso.beta.get(0, 0), a.try_inv().unwrap());
        let one = GfElem::one(&f);
        assert!(matches!(build_iso(&[one.clone(), one.clone()]), Err(Error::Dependent(_))));
        assert!(matches!(build_iso(&[one, GfElem::zero(&f)]), Err(Error::ZeroEntry(1))));
    }

    #[test]
    fn as_roots_small_fields() {
        let f2 = gf_make(2, 1).unwrap();
        assert!(artin_schreier_roots_gf(&GfElem::one(&f2)).is_empty());
        let zero3 = GfElem::zero(&gf_make(3, 1).unwrap());
        assert_eq!(artin_schreier_roots_gf(&zero3).len(), 3);
        let f4 = gf_make(2, 2).unwrap();
        let roots: Vec<String> = artin_schreier_roots_gf(&GfElem::one(&f4)).iter().map(|x| x.to_string()).collect();
        assert_eq!(roots, ["g", "g+1"]);
    }

    #[test]
    fn additive_poly_composition() {
        let f = gf_make(2, 3).unwrap();
        let c = GfElem::generator(&f);
        let p = AdditivePoly::scaled_wp(&c);
        let q = AdditivePoly::new(vec![c.clone(), GfElem::one(&f)]);
        let pq = p.compose(&q);
        for t in GfElem::all(&f) {
            assert_eq!(pq.eval(&t), p.eval(&q.eval(&t)));
        }
    }
}
