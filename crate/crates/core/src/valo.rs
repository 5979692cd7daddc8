//! Valuations of the isomorphism data over series, and the single-valuation
//! Artin–Schreier root pipeline.

use itertools::Itertools;
use serde::Serialize;

use crate::algebra::{ts_as_root, AlgebraError, Field, PExponent, TruncatedSeries};
use crate::error::{Error, Result};
use crate::moore::{build_iso, f_apply, f_inv_apply, ga_contains, AdditivePoly, IsoData};
use crate::report::{all_pass, Check};

/// Pairwise distinct, positive valuations `(val a_0, ..., val a_m)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValProfile {
    pub p: u64,
    pub vals: Vec<PExponent>,
}

impl ValProfile {
    pub fn new(p: u64, vals: Vec<PExponent>) -> Result<ValProfile> {
        if vals.is_empty() {
            return Err(Error::Precondition("empty profile".into()));
        }
        if let Some(v) = vals.iter().find(|v| !v.is_positive()) {
            return Err(Error::Precondition(format!("valuation {v} is not positive")));
        }
        if !vals.iter().all_unique() {
            return Err(Error::Precondition(format!("valuations {vals:?} are not distinct")));
        }
        Ok(ValProfile { p, vals })
    }

    pub fn of(a: &[TruncatedSeries]) -> Result<ValProfile> {
        let p = a.first().map(|x| x.p()).ok_or_else(|| Error::Precondition("empty tuple".into()))?;
        let vals = a.iter().map(|x| x.val()).collect::<std::result::Result<_, _>>()?;
        ValProfile::new(p, vals)
    }

    pub fn m(&self) -> usize {
        self.vals.len() - 1
    }

    pub fn is_sorted(&self) -> bool {
        self.vals.windows(2).all(|w| w[0] < w[1])
    }

    /// Indices ordered by increasing valuation.
    pub fn order(&self) -> Vec<usize> {
        (0..self.vals.len()).sorted_by_key(|&i| self.vals[i]).collect()
    }

    pub fn argmax(&self) -> usize {
        *self.order().last().unwrap()
    }
}

/// `val(α_i) = v_i / p^{m-i} + Σ_{j=i}^{m-1} (p-1) v_{j+1} / p^{m-j}` for a
/// sorted profile. With `sorted_ascending = false` the profile may come in
/// any order and entry `i` is the value at the sorted rank of `v_i`.
pub fn alpha_val_closed_form(profile: &ValProfile, sorted_ascending: bool) -> Result<Vec<PExponent>> {
    if sorted_ascending && !profile.is_sorted() {
        return Err(Error::Precondition(format!("profile {:?} is not increasing", profile.vals)));
    }
    let p = profile.p;
    let m = profile.m();
    let order = profile.order();
    let v: Vec<PExponent> = order.iter().map(|&i| profile.vals[i]).collect();
    let sorted: Vec<PExponent> = (0..=m)
        .map(|i| {
            (i..m).fold(v[i].scale_p(p, -((m - i) as i32)), |acc, j| {
                acc + v[j + 1].times(p as i64 - 1).scale_p(p, -((m - j) as i32))
            })
        })
        .collect();
    let mut out = vec![PExponent::zero(); m + 1];
    for (rank, &i) in order.iter().enumerate() {
        out[i] = sorted[rank];
    }
    Ok(out)
}

fn vals(xs: &[TruncatedSeries]) -> Result<Vec<PExponent>> {
    Ok(xs.iter().map(|x| x.val()).collect::<std::result::Result<_, _>>()?)
}

fn fmt_vals(v: &[PExponent]) -> String {
    format!("({})", v.iter().join(", "))
}

#[derive(Debug, Clone, Serialize)]
pub struct AlphaReport {
    pub profile: ValProfile,
    pub direct: Vec<PExponent>,
    pub closed_form: Vec<PExponent>,
    pub permutations_checked: usize,
    pub checks: Vec<Check>,
}

impl AlphaReport {
    pub fn pass(&self) -> bool {
        all_pass(&self.checks)
    }
}

/// Computes `val(α)` through `build_iso` and compares it with the closed
/// form; for `m ≤ 2` also checks `val(α'_i) = val(α_{σ(i)})` for every
/// permutation `σ`.
pub fn verify_alpha_vals(a: &[TruncatedSeries]) -> Result<AlphaReport> {
    let profile = ValProfile::of(a)?;
    let iso = build_iso(a)?;
    let direct = vals(&iso.alpha)?;
    let closed_form = alpha_val_closed_form(&profile, false)?;
    let mut checks = vec![Check::eq("val(alpha) equals closed form", fmt_vals(&closed_form), fmt_vals(&direct))];
    let order = profile.order();
    let increasing = order.windows(2).all(|w| direct[w[0]] < direct[w[1]]);
    checks.push(Check::holds("val(alpha) strictly increasing along sorted val(a)", "increasing", increasing));
    checks.push(Check::holds("val(alpha) positive", "all > 0", direct.iter().all(PExponent::is_positive)));
    let mut permutations_checked = 0;
    if profile.m() <= 2 {
        for sigma in (0..a.len()).permutations(a.len()) {
            let permuted: Vec<TruncatedSeries> = sigma.iter().map(|&i| a[i].clone()).collect();
            let got = vals(&build_iso(&permuted)?.alpha)?;
            let want: Vec<PExponent> = sigma.iter().map(|&i| direct[i]).collect();
            checks.push(Check::eq(format!("permutation rule for sigma = {sigma:?}"), fmt_vals(&want), fmt_vals(&got)));
            permutations_checked += 1;
        }
    }
    Ok(AlphaReport { profile, direct, closed_form, permutations_checked, checks })
}

#[derive(Debug, Clone, Serialize)]
pub struct MinValReport {
    pub l: usize,
    pub alpha_vals: Vec<PExponent>,
    pub holds: bool,
    pub checks: Vec<Check>,
}

/// `val(α_l) = val(a_l)` and `val(α_s) < val(a_l)` for `s ≠ l`, where `l`
/// carries the largest valuation.
pub fn min_val_check(a: &[TruncatedSeries], l: usize) -> Result<MinValReport> {
    let profile = ValProfile::of(a)?;
    if l >= a.len() || profile.argmax() != l {
        return Err(Error::Precondition(format!("index {l} does not carry the largest valuation")));
    }
    let alpha_vals = vals(&build_iso(a)?.alpha)?;
    let top = profile.vals[l];
    let mut checks = vec![Check::eq(format!("val(alpha_{l}) = val(a_{l})"), top, alpha_vals[l])];
    for s in (0..a.len()).filter(|&s| s != l) {
        checks.push(Check::holds(
            format!("val(alpha_{s}) < val(a_{l})"),
            format!("{} < {top}", alpha_vals[s]),
            alpha_vals[s] < top,
        ));
    }
    Ok(MinValReport { l, holds: all_pass(&checks), alpha_vals, checks })
}

#[derive(Debug, Clone, Serialize)]
pub struct PreimageReport {
    pub x: Vec<TruncatedSeries>,
    pub x_vals: Vec<PExponent>,
    pub wp_vals: Vec<PExponent>,
    /// Index whose `a` valuation is largest; plays the role of `m`.
    pub top: usize,
    /// Coordinates with `val(x_j) = 0`.
    pub boundary_hits: usize,
    pub checks: Vec<Check>,
}

impl PreimageReport {
    pub fn pass(&self) -> bool {
        all_pass(&self.checks)
    }
}

/// `val(℘x)` from `val(x)`, where it is determined.
fn wp_val_rule(v: PExponent, p: u64) -> Option<PExponent> {
    if v.is_positive() {
        Some(v)
    } else if v.is_negative() {
        Some(v.times(p as i64))
    } else {
        None
    }
}

/// `x = f_a^{-1}(y)` with its valuations. The `val(x_m)` formula is checked at
/// the index of largest `val(a)`, which is `m` for a sorted tuple.
pub fn preimage_valuations(a: &[TruncatedSeries], y: &TruncatedSeries) -> Result<PreimageReport> {
    let profile = ValProfile::of(a)?;
    let p = profile.p;
    let vy = y.val()?;
    if let Some(j) = (0..a.len()).find(|&j| profile.vals[j] >= vy) {
        return Err(Error::Precondition(format!("val(a_{j}) = {} is not below val(y) = {vy}", profile.vals[j])));
    }
    let iso = build_iso(a)?;
    let x = f_inv_apply(&iso, y)?.into_coords();
    let x_vals = vals(&x)?;
    let wp: Vec<TruncatedSeries> = x.iter().map(Field::wp).collect();
    let wp_vals = vals(&wp)?;
    let alpha_vals = vals(&iso.alpha)?;
    let top = profile.argmax();
    let mut checks = vec![Check::eq(
        format!("val(x_{top}) = val(y) - val(a_{top})"),
        vy - profile.vals[top],
        x_vals[top],
    )];
    checks.push(Check::holds("val(x_j) > 0 for all j", "all > 0", x_vals.iter().all(PExponent::is_positive)));
    let level = profile.vals[0] + wp_vals[0];
    for i in 1..a.len() {
        checks.push(Check::eq(format!("val(a_{i}) + val(wp x_{i}) = val(a_0) + val(wp x_0)"), level, profile.vals[i] + wp_vals[i]));
    }
    for j in 0..a.len() {
        match wp_val_rule(x_vals[j], p) {
            Some(w) => checks.push(Check::eq(format!("val(wp x_{j}) from val(x_{j})"), w, wp_vals[j])),
            None => checks.push(Check::holds(format!("val(wp x_{j}) >= 0"), ">= 0", !wp_vals[j].is_negative())),
        }
    }
    let ax: Vec<PExponent> = (0..a.len()).map(|j| alpha_vals[j] + x_vals[j]).collect();
    let by_val = profile.order();
    // ordering lemma, part 1: l is the top-valued index among those with val(x_l) >= 0
    if let Some(&l) = by_val.iter().rev().find(|&&l| !x_vals[l].is_negative()) {
        for s in (0..a.len()).filter(|&s| s != l && x_vals[s].is_positive()) {
            checks.push(Check::holds(
                format!("val(alpha_{s} x_{s}) > val(alpha_{l} x_{l})"),
                format!("{} > {}", ax[s], ax[l]),
                ax[s] > ax[l],
            ));
        }
    }
    // part 2
    for [&s, &t] in by_val.iter().array_combinations() {
        if x_vals[s] == PExponent::zero() && !x_vals[t].is_negative() {
            checks.push(Check::holds(
                format!("val(alpha_{s} x_{s}) < val(alpha_{t} x_{t})"),
                format!("{} < {}", ax[s], ax[t]),
                ax[s] < ax[t],
            ));
        }
    }
    let boundary_hits = x_vals.iter().filter(|v| **v == PExponent::zero()).count();
    Ok(PreimageReport { x, x_vals, wp_vals, top, boundary_hits, checks })
}

/// `ρ' = f_{a'} ∘ π ∘ f_a^{-1} ∘ μ` with `μ(t) = α_m t` and `π` dropping the
/// last coordinate; `ρ'(t) = c (t^p - t)`.
#[derive(Debug, Clone, Serialize)]
pub struct RhoFit<F> {
    pub a: Vec<F>,
    pub a_prime: Vec<F>,
    pub mu: F,
    pub rho_prime: AdditivePoly<F>,
    pub c: F,
    #[serde(skip)]
    pub iso: IsoData<F>,
    #[serde(skip)]
    pub iso_prime: IsoData<F>,
}

impl<F: Field> RhoFit<F> {
    pub fn eval(&self, t: &F) -> F {
        self.rho_prime.eval(t)
    }
}

pub fn rho_prime_fit<F: Field>(a: &[F]) -> Result<RhoFit<F>> {
    if a.len() < 2 {
        return Err(Error::Precondition("need at least two entries".into()));
    }
    let m = a.len() - 1;
    let iso = build_iso(a)?;
    let iso_prime = build_iso(&a[..m])?;
    let mu = iso.alpha[m].clone();
    // x_i = Σ_j β_ij φ^j(α_m) t^{p^j}, then apply Σ_{i<m} α'_i x_i
    let coeffs: Vec<F> = (0..=m)
        .map(|j| {
            let twist = mu.frobenius(j as i64)?;
            Ok((0..m).fold(mu.zero_like(), |acc, i| {
                acc + iso_prime.alpha[i].clone() * iso.beta.get(i, j).clone() * twist.clone()
            }))
        })
        .collect::<std::result::Result<_, AlgebraError>>()?;
    let rho_prime = AdditivePoly::new(coeffs);
    for j in 2..=m {
        if !rho_prime.coeffs[j].is_zero()? {
            return Err(Error::Postcondition(format!("coefficient of t^(p^{j}) in rho' is {:?}", rho_prime.coeffs[j])));
        }
    }
    let c = rho_prime.coeffs.get(1).cloned().unwrap_or_else(|| mu.zero_like());
    if c.is_zero()? || !(rho_prime.coeffs[0].clone() + c.clone()).is_zero()? {
        return Err(Error::Postcondition(format!("rho' = {:?} is not c(t^p - t)", rho_prime.coeffs)));
    }
    if !rho_prime.eval(&mu.one_like()).is_zero()? {
        return Err(Error::Postcondition("rho'(1) is not zero".into()));
    }
    Ok(RhoFit { a: a.to_vec(), a_prime: a[..m].to_vec(), mu, rho_prime, c, iso, iso_prime })
}

#[derive(Debug, Clone, Serialize)]
pub struct SmallValReport {
    pub x: Vec<TruncatedSeries>,
    pub w: TruncatedSeries,
    pub val_w: PExponent,
    pub c: TruncatedSeries,
    pub checks: Vec<Check>,
}

impl SmallValReport {
    pub fn pass(&self) -> bool {
        all_pass(&self.checks)
    }
}

fn sorted_profile(a: &[TruncatedSeries]) -> Result<ValProfile> {
    let profile = ValProfile::of(a)?;
    if !profile.is_sorted() {
        return Err(Error::Precondition(format!("valuations {:?} are not increasing", profile.vals)));
    }
    Ok(profile)
}

/// Errors unless the difference is certified zero beyond `floor`.
fn zero_beyond(d: &TruncatedSeries, floor: PExponent, what: &str) -> Result<bool> {
    if let Some(pr) = d.precision() {
        if pr <= floor {
            return Err(AlgebraError::PrecisionExhausted(format!("{what}: precision {pr} does not pass {floor}")).into());
        }
    }
    Ok(d.is_zero_to_precision())
}

/// An element `w` of the maximal ideal with `val(w) < val(u)` and `ρ'(w) = u`.
pub fn preimage_small_val(a: &[TruncatedSeries], u: &TruncatedSeries) -> Result<SmallValReport> {
    let fit = rho_prime_fit(a)?;
    preimage_small_val_with(&fit, u)
}

fn preimage_small_val_with(fit: &RhoFit<TruncatedSeries>, u: &TruncatedSeries) -> Result<SmallValReport> {
    let a = &fit.a;
    let profile = sorted_profile(a)?;
    let m = profile.m();
    let vu = u.val()?;
    if vu <= profile.vals[m] {
        return Err(Error::Precondition(format!("val(u) = {vu} is not above val(a_{m}) = {}", profile.vals[m])));
    }
    let mut x = f_inv_apply(&fit.iso_prime, u)?.into_coords();
    let z = (a[0].clone() * x[0].wp()).try_div(&a[m])?;
    let xm = match ts_as_root(&z) {
        Ok(r) => r,
        Err(AlgebraError::NonPositiveValuation(v)) => {
            return Err(Error::Unsolvable(format!("wp(x_{m}) = {z} has valuation {v}")));
        }
        Err(e) => return Err(e.into()),
    };
    x.push(xm);
    if !ga_contains(a, &x)? {
        return Err(Error::Postcondition("completed tuple left G_a".into()));
    }
    let w = f_apply(&fit.iso, &x)?.try_div(&fit.mu)?;
    let val_w = w.val()?;
    let checks = vec![
        Check::holds("val(w) > 0", format!("{val_w} > 0"), val_w.is_positive()),
        Check::holds("val(w) < val(u)", format!("{val_w} < {vu}"), val_w < vu),
        Check::holds("rho'(w) = u", "0 to precision", zero_beyond(&(fit.eval(&w) - u.clone()), vu, "rho'(w) - u")?),
        Check::holds(
            "c wp(w) = u",
            "0 to precision",
            zero_beyond(&(fit.c.clone() * w.wp() - u.clone()), vu, "c wp(w) - u")?,
        ),
    ];
    Ok(SmallValReport { x, w, val_w, c: fit.c.clone(), checks })
}

#[derive(Debug, Clone, Serialize)]
pub struct AsRootReport {
    pub w: TruncatedSeries,
    pub c: TruncatedSeries,
    pub val_c: PExponent,
    pub w_prime: TruncatedSeries,
    pub val_w_prime: PExponent,
    pub checks: Vec<Check>,
}

impl AsRootReport {
    pub fn pass(&self) -> bool {
        all_pass(&self.checks)
    }
}

/// Artin–Schreier root of `y` in the maximal ideal, via two rounds of
/// [`preimage_small_val`].
pub fn as_root_in_maximal_ideal(a: &[TruncatedSeries], y: &TruncatedSeries) -> Result<AsRootReport> {
    let fit = rho_prime_fit(a)?;
    let first = preimage_small_val_with(&fit, y)?;
    let vy = y.val()?;
    let c = y.try_div(&first.w.wp())?;
    let val_c = c.val()?;
    let mut checks = first.checks.clone();
    checks.push(Check::eq("val(c) = val(y) - val(w)", vy - first.val_w, val_c));
    checks.push(Check::holds("val(c) > 0", format!("{val_c} > 0"), val_c.is_positive()));
    checks.push(Check::holds(
        "y / wp(w) equals the constant of rho'",
        "0 to precision",
        zero_beyond(&(c.clone() - fit.c.clone()), val_c, "c - c_fit")?,
    ));
    let second = preimage_small_val_with(&fit, &(c.clone() * y.clone()))?;
    let w_prime = second.w;
    let val_w_prime = w_prime.val()?;
    checks.extend(second.checks.into_iter().map(|mut ch| {
        ch.claim = format!("second round: {}", ch.claim);
        ch
    }));
    checks.push(Check::holds(
        "wp(w') = y",
        "0 to precision",
        zero_beyond(&(w_prime.wp() - y.clone()), vy, "wp(w') - y")?,
    ));
    checks.push(Check::holds("val(w') > 0", format!("{val_w_prime} > 0"), val_w_prime.is_positive()));
    Ok(AsRootReport { w: first.w, c, val_c, w_prime, val_w_prime, checks })
}

#[derive(Debug, Clone, Serialize)]
pub struct GridProduct {
    pub index: Vec<usize>,
    pub val: PExponent,
}

/// Order in which the grid entries receive increasing valuations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Schedule {
    /// Row by row: every `b_{j,·}` lies below every `b_{j+1,·}`.
    RowMajor,
    /// Level by level: `b_{0,l} < ... < b_{n-1,l} < b_{0,l+1}`. Satisfies
    /// `val(b_{n-1,l}) < val(b_{0,l+1})` but breaks the reversed-lex law once
    /// `n ≥ 2` and `ℓ ≥ 3`.
    Interleaved,
}

/// `b_{j,l}` for `0 ≤ j < n`, `0 ≤ l < ℓ`, stored as `b[j][l]`.
#[derive(Debug, Clone, Serialize)]
pub struct BGrid {
    pub n: usize,
    pub ell: usize,
    pub gap: u32,
    pub order: Schedule,
    pub y: TruncatedSeries,
    pub schedule: Vec<Vec<u32>>,
    pub b: Vec<Vec<TruncatedSeries>>,
    pub products: Vec<GridProduct>,
    pub pairs_checked: usize,
    pub checks: Vec<Check>,
}

impl BGrid {
    pub fn vals(&self) -> Result<Vec<Vec<PExponent>>> {
        self.b.iter().map(|row| vals(row)).collect()
    }

    pub fn pass(&self) -> bool {
        all_pass(&self.checks)
    }
}

fn violated(constraint: u8, detail: String) -> Error {
    Error::Constraint { constraint, detail }
}

/// Row-major grid; see [`build_b_grid_with`].
pub fn build_b_grid(n: usize, ell: usize, y: &TruncatedSeries, gap: u32) -> Result<BGrid> {
    build_b_grid_with(n, ell, y, gap, Schedule::RowMajor)
}

/// `b_{j,l} = φ^{-s}(y)` with `s = (nℓ - pos(j,l)) gap`, so that
/// `val(b_{j,l}) = val(y) / p^s`; `pos` is `j ℓ + l` row-major and `l n + j`
/// interleaved. Products over index tuples should be ordered by
/// reversed-lex order of the tuple, which is checked on every pair.
///
/// Constraint 1 is row separation `val(b_{j,ℓ-1}) < val(b_{j+1,0})` for the
/// row-major order and `val(b_{n-1,l}) < val(b_{0,l+1})` for the interleaved
/// one; constraint 2 is `(j+1) val(b_{j,l}) < val(b_{j,l+1})`; constraint 3 is
/// `n val(b_max) < val(y)`.
pub fn build_b_grid_with(n: usize, ell: usize, y: &TruncatedSeries, gap: u32, order: Schedule) -> Result<BGrid> {
    if n == 0 || ell == 0 {
        return Err(Error::Precondition("grid dimensions must be positive".into()));
    }
    let vy = y.val()?;
    if !vy.is_positive() {
        return Err(Error::Precondition(format!("val(y) = {vy} is not positive")));
    }
    let top = (n * ell) as u32;
    let pos = |j: usize, l: usize| match order {
        Schedule::RowMajor => (j * ell + l) as u32,
        Schedule::Interleaved => (l * n + j) as u32,
    };
    let schedule: Vec<Vec<u32>> = (0..n).map(|j| (0..ell).map(|l| (top - pos(j, l)) * gap).collect()).collect();
    let v = |j: usize, l: usize| vy.scale_p(y.p(), -(schedule[j][l] as i32));
    match order {
        Schedule::RowMajor => {
            for j in 0..n - 1 {
                if v(j, ell - 1) >= v(j + 1, 0) {
                    return Err(violated(1, format!("val(b_{j},{}) = {} >= val(b_{},0) = {}", ell - 1, v(j, ell - 1), j + 1, v(j + 1, 0))));
                }
            }
        }
        Schedule::Interleaved => {
            for l in 0..ell - 1 {
                if v(n - 1, l) >= v(0, l + 1) {
                    return Err(violated(1, format!("val(b_{},{l}) = {} >= val(b_0,{}) = {}", n - 1, v(n - 1, l), l + 1, v(0, l + 1))));
                }
            }
        }
    }
    for j in 0..n {
        for l in 0..ell - 1 {
            if v(j, l).times(j as i64 + 1) >= v(j, l + 1) {
                return Err(violated(2, format!("{} val(b_{j},{l}) >= val(b_{j},{})", j + 1, l + 1)));
            }
        }
    }
    let (jm, lm) = (0..n).cartesian_product(0..ell).max_by_key(|&(j, l)| v(j, l)).unwrap();
    if v(jm, lm).times(n as i64) >= vy {
        return Err(violated(3, format!("{n} val(b_{jm},{lm}) = {} >= val(y) = {vy}", v(jm, lm).times(n as i64))));
    }
    let b: Vec<Vec<TruncatedSeries>> = schedule
        .iter()
        .map(|row| row.iter().map(|&s| y.frob(-(s as i64))).collect::<std::result::Result<_, _>>())
        .collect::<std::result::Result<_, _>>()?;
    let mut checks = Vec::new();
    for j in 0..n {
        for l in 0..ell {
            checks.push(Check::eq(format!("val(b_{j},{l})"), v(j, l), b[j][l].val()?));
        }
    }
    let mut products = Vec::new();
    for index in (0..n).map(|_| 0..ell).multi_cartesian_product() {
        let prod = index.iter().enumerate().skip(1).fold(b[0][index[0]].clone(), |acc, (j, &l)| acc * b[j][l].clone());
        products.push(GridProduct { index, val: prod.val()? });
    }
    let inside = products.iter().all(|g| g.val.is_positive() && g.val < vy);
    checks.push(Check::holds("product valuations in (0, val(y))", "all inside", inside));
    let rev = |ix: &[usize]| ix.iter().rev().copied().collect::<Vec<_>>();
    let mut bad = 0;
    let mut pairs_checked = 0;
    for [g, h] in products.iter().array_combinations() {
        pairs_checked += 1;
        let lex = rev(&g.index).cmp(&rev(&h.index));
        if lex != g.val.cmp(&h.val) {
            bad += 1;
        }
    }
    checks.push(Check::eq("pairs whose valuation order differs from reversed-lex order", 0, bad));
    Ok(BGrid { n, ell, gap, order, y: y.clone(), schedule, b, products, pairs_checked, checks })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{gf_make, GaloisField, GfElem};

    const CAP: u32 = 6;

    fn t(f: &Arc<GaloisField>, e: i64, prec: i64) -> TruncatedSeries {
        TruncatedSeries::t_pow(f, CAP, PExponent::int(e), PExponent::int(prec)).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<PExponent> {
        v.iter().map(|&x| PExponent::int(x)).collect()
    }

    #[test]
    fn closed_form_examples() {
        let prof = ValProfile::new(2, ints(&[1, 3])).unwrap();
        assert_eq!(alpha_val_closed_form(&prof, true).unwrap(), ints(&[2, 3]));
        let single = ValProfile::new(3, ints(&[5])).unwrap();
        assert_eq!(alpha_val_closed_form(&single, true).unwrap(), ints(&[5]));
        let rev = ValProfile::new(2, ints(&[3, 1])).unwrap();
        assert!(matches!(alpha_val_closed_form(&rev, true), Err(Error::Precondition(_))));
        assert_eq!(alpha_val_closed_form(&rev, false).unwrap(), ints(&[3, 2]));
        assert!(ValProfile::new(2, ints(&[1, 1])).is_err());
    }

    #[test]
    fn direct_alpha_vals() {
        let f = gf_make(2, 1).unwrap();
        let r = verify_alpha_vals(&[t(&f, 1, 20), t(&f, 3, 20)]).unwrap();
        assert!(r.pass(), "{:?}", r.checks);
        assert_eq!(r.direct, ints(&[2, 3]));
        assert_eq!(r.permutations_checked, 2);
        let r = verify_alpha_vals(&[t(&f, 3, 20), t(&f, 1, 20)]).unwrap();
        assert_eq!(r.direct, ints(&[3, 2]));
        assert!(verify_alpha_vals(&[t(&f, 1, 20), t(&f, 1, 20)]).is_err());
    }

    #[test]
    fn min_val_examples() {
        let f = gf_make(2, 1).unwrap();
        let a = [t(&f, 1, 20), t(&f, 3, 20)];
        assert!(min_val_check(&a, 1).unwrap().holds);
        assert!(matches!(min_val_check(&a, 0), Err(Error::Precondition(_))));
        assert!(min_val_check(&[t(&f, 2, 20)], 0).unwrap().holds);
    }

    #[test]
    fn preimage_example() {
        let f = gf_make(2, 1).unwrap();
        let a = [t(&f, 1, 30), t(&f, 3, 30)];
        let r = preimage_valuations(&a, &t(&f, 5, 30)).unwrap();
        assert!(r.pass(), "{:?}", r.checks);
        assert_eq!(r.x_vals[1], PExponent::int(2));
        assert!(r.x_vals[0].is_positive());
        assert!(matches!(preimage_valuations(&a, &t(&f, 2, 30)), Err(Error::Precondition(_))));
    }

    #[test]
    fn rho_fit_over_f4() {
        let f = gf_make(2, 2).unwrap();
        let one = GfElem::one(&f);
        let g = GfElem::generator(&f);
        let fit = rho_prime_fit(&[one.clone(), g]).unwrap();
        assert_eq!(fit.c, one);
        assert_eq!(fit.rho_prime.coeffs, vec![one.clone(), one]);
        let kernel = GfElem::all(&f).filter(|x| fit.eval(x).raw() == 0).count();
        assert_eq!(kernel, 2);
    }

    #[test]
    fn small_val_example() {
        let f = gf_make(2, 1).unwrap();
        let a = [t(&f, 1, 40), t(&f, 3, 40)];
        let r = preimage_small_val(&a, &t(&f, 4, 40)).unwrap();
        assert!(r.pass(), "{:?}", r.checks);
        assert_eq!(r.x[0].val().unwrap(), PExponent::int(3));
        assert_eq!(r.x[1].val().unwrap(), PExponent::int(1));
        assert_eq!(r.val_w, PExponent::int(1));
        assert!(matches!(preimage_small_val(&a, &t(&f, 2, 40)), Err(Error::Precondition(_))));
    }

    #[test]
    fn closing_pipeline() {
        let f = gf_make(2, 1).unwrap();
        let a = [t(&f, 1, 40), t(&f, 3, 40)];
        let r = as_root_in_maximal_ideal(&a, &t(&f, 4, 40)).unwrap();
        assert!(r.pass(), "{:?}", r.checks);
        assert_eq!(r.val_c, PExponent::int(3));
        assert!(r.val_w_prime.is_positive());
    }

    #[test]
    fn b_grid_examples() {
        let f = gf_make(2, 1).unwrap();
        let y = TruncatedSeries::t_pow(&f, 12, PExponent::int(1), PExponent::int(4)).unwrap();
        let g = build_b_grid(2, 2, &y, 2).unwrap();
        assert!(g.pass(), "{:?}", g.checks);
        assert_eq!(g.pairs_checked, 6);
        let row = build_b_grid(1, 3, &y, 1).unwrap();
        let v = row.vals().unwrap();
        assert!(v[0][0] < v[0][1] && v[0][1] < v[0][2]);
        assert!(matches!(build_b_grid(2, 2, &y, 0), Err(Error::Constraint { .. })));
        let inter = build_b_grid_with(2, 2, &y, 2, Schedule::Interleaved).unwrap();
        assert!(inter.pass());
        let wide = TruncatedSeries::t_pow(&f, 14, PExponent::int(1), PExponent::int(4)).unwrap();
        assert!(build_b_grid(2, 3, &wide, 2).unwrap().pass());
        assert!(!build_b_grid_with(2, 3, &wide, 2, Schedule::Interleaved).unwrap().pass());
    }
}
