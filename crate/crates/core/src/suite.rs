//! The acceptance battery. Each criterion runs a fixed family of instances,
//! cross-checks fast paths against [`crate::oracle`], and reports failures
//! together with its wall-clock time against a limit.

use std::sync::Arc;
use std::time::{Duration, Instant};

use itertools::Itertools;
use num_rational::Ratio;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{gf_make, Field, GaloisField, GfElem, Matrix, PExponent, TruncatedSeries};
use crate::chaincond::{arrays_mod_scaling, find_redundant, random_array, verify_redundant, Family};
use crate::moore::{build_iso, f_apply, f_inv_apply, is_fp_independent, tfrob_check};
use crate::opg::{amalgamate, check_extension, find_induced_copy, is_induced_embedding, random_extension, random_opg};
use crate::oracle;
use crate::shatter::{
    bilinear_encode, bilinear_shatter_demo, compose_relation, is_box_free, max_shattered_grid, ramsey_partite, shatters,
    BilinearSpace, Grid, WitnessedRelation,
};
use crate::valo::{
    as_root_in_maximal_ideal, build_b_grid, min_val_check, preimage_small_val, preimage_valuations, rho_prime_fit,
    verify_alpha_vals, ValProfile,
};
use crate::{Error, Result};

pub const DEFAULT_SEED: u64 = 20_240_917;

/// `(id, name, limit in seconds)`.
pub const CRITERIA: [(u8, &str, u64); 12] = [
    (1, "Moore determinant vs F_p-combination oracle", 10),
    (2, "explicit isomorphism f_a over finite fields", 60),
    (3, "closed form for val(alpha)", 60),
    (4, "preimage valuations", 60),
    (5, "rho' = c(t^p - t)", 30),
    (6, "small-valuation preimage and AS root pipeline", 60),
    (7, "b-grid reversed-lex law", 10),
    (8, "shattering vs naive enumeration", 120),
    (9, "bilinear encoder and IP demo", 60),
    (10, "partite Ramsey values", 30),
    (11, "chain condition for hyperplane families", 60),
    (12, "hypergraph amalgamation, copies and extensions", 60),
];

#[derive(Debug, Clone, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: &'static str,
    pub instances: usize,
    pub failures: Vec<String>,
    /// Observations recorded but not asserted.
    pub notes: Vec<String>,
    pub elapsed_ms: u128,
    pub limit_s: u64,
    pub within_limit: bool,
    pub pass: bool,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        let status = if self.pass { "PASS" } else { "FAIL" };
        let mut s = format!(
            "criterion {:>2}: {status}  {} ({} instances, {} failures, {:.2}s / {}s)",
            self.id,
            self.name,
            self.instances,
            self.failures.len(),
            self.elapsed_ms as f64 / 1000.0,
            self.limit_s
        );
        if let Some(f) = self.failures.first() {
            s.push_str(&format!("; first failure: {f}"));
        }
        s
    }
}

/// Collects instance counts and failure messages.
#[derive(Default)]
struct Tally {
    instances: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn run(&mut self, label: impl FnOnce() -> String, f: impl FnOnce(&mut Tally) -> Result<()>) {
        self.instances += 1;
        if let Err(e) = f(self) {
            self.failures.push(format!("{}: {e}", label()));
        }
    }
}

pub fn run_criterion(id: u8, seed: u64) -> Result<CriterionOutcome> {
    let &(_, name, limit_s) = CRITERIA
        .iter()
        .find(|c| c.0 == id)
        .ok_or_else(|| Error::Invalid(format!("no criterion {id}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (id as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let start = Instant::now();
    let mut t = Tally::default();
    match id {
        1 => c1_moore(&mut t)?,
        2 => c2_iso(&mut t, &mut rng)?,
        3 => c3_alpha(&mut t, &mut rng)?,
        4 => c4_preimage(&mut t, &mut rng)?,
        5 => c5_rho(&mut t, &mut rng)?,
        6 => c6_pipeline(&mut t, &mut rng)?,
        7 => c7_bgrid(&mut t)?,
        8 => c8_shatter(&mut t, &mut rng)?,
        9 => c9_bilinear(&mut t, &mut rng)?,
        10 => c10_ramsey(&mut t)?,
        11 => c11_chain(&mut t, &mut rng)?,
        12 => c12_opg(&mut t, &mut rng)?,
        _ => unreachable!(),
    }
    let elapsed = start.elapsed();
    let within_limit = elapsed < Duration::from_secs(limit_s);
    Ok(CriterionOutcome {
        id,
        name,
        instances: t.instances,
        pass: t.failures.is_empty() && within_limit,
        failures: t.failures,
        notes: t.notes,
        elapsed_ms: elapsed.as_millis(),
        limit_s,
        within_limit,
    })
}

pub fn run_all(seed: u64) -> Result<Vec<CriterionOutcome>> {
    CRITERIA.iter().map(|c| run_criterion(c.0, seed)).collect()
}

fn field(p: u64, k: usize) -> Result<Arc<GaloisField>> {
    Ok(gf_make(p, k)?)
}

fn nonzero(f: &Arc<GaloisField>, rng: &mut ChaCha8Rng) -> GfElem {
    GfElem::new(f, rng.random_range(1..f.order()))
}

fn any_elem(f: &Arc<GaloisField>, rng: &mut ChaCha8Rng) -> GfElem {
    GfElem::new(f, rng.random_range(0..f.order()))
}

fn int(n: i64) -> PExponent {
    PExponent::int(n)
}

/// `c t^v (+ c' t^{v+1})`, known up to `v + rel`.
fn series(f: &Arc<GaloisField>, cap: u32, v: PExponent, rel: i64, perturb: bool, rng: &mut ChaCha8Rng) -> Result<TruncatedSeries> {
    let mut terms = vec![(v, nonzero(f, rng))];
    if perturb {
        terms.push((v + int(1), nonzero(f, rng)));
    }
    Ok(TruncatedSeries::from_terms(f, cap, &terms, v + int(rel))?)
}

fn t_pow(f: &Arc<GaloisField>, cap: u32, e: i64, prec: i64) -> Result<TruncatedSeries> {
    Ok(TruncatedSeries::t_pow(f, cap, int(e), int(prec))?)
}

/// Random nonzero tuple accepted by `build_iso`.
fn valid_gf_tuple(f: &Arc<GaloisField>, len: usize, rng: &mut ChaCha8Rng) -> Vec<GfElem> {
    loop {
        let a: Vec<GfElem> = (0..len).map(|_| nonzero(f, rng)).collect();
        if build_iso(&a).is_ok() {
            return a;
        }
    }
}

fn c1_moore(t: &mut Tally) -> Result<()> {
    for (p, k) in [(2, 2), (2, 3), (3, 2)] {
        let f = field(p, k)?;
        let elems: Vec<GfElem> = GfElem::all(&f).collect();
        for len in 1..=3 {
            for c in (0..len).map(|_| elems.iter().cloned()).multi_cartesian_product() {
                t.instances += 1;
                let fast = is_fp_independent(&c)?;
                let naive = !oracle::fp_dependent_naive(&c);
                t.check(fast == naive, || format!("F_{}: {c:?} fast {fast} oracle {naive}", f.order()));
            }
        }
    }
    Ok(())
}

fn c2_iso(t: &mut Tally, rng: &mut ChaCha8Rng) -> Result<()> {
    for p in [2u64, 3] {
        for k in 1..=3usize {
            let f = field(p, k)?;
            let q = f.order();
            let elems: Vec<GfElem> = GfElem::all(&f).collect();
            for m in 0..=2usize {
                if m + 1 > k {
                    // no valid tuple exists; every tuple must be rejected
                    let nz: Vec<GfElem> = elems[1..].to_vec();
                    for a in (0..=m).map(|_| nz.iter().cloned()).multi_cartesian_product() {
                        t.instances += 1;
                        t.check(build_iso(&a).is_err(), || format!("F_{q}: accepted {a:?} with m + 1 > k"));
                    }
                    continue;
                }
                for _ in 0..50 {
                    let a = valid_gf_tuple(&f, m + 1, rng);
                    t.run(|| format!("F_{q} a = {a:?}"), |t| iso_instance(t, &a, &elems));
                }
            }
        }
    }
    Ok(())
}

fn iso_instance(t: &mut Tally, a: &[GfElem], elems: &[GfElem]) -> Result<()> {
    let iso = build_iso(a)?;
    let m = iso.m();
    let ctx = || format!("a = {a:?}");
    t.check(is_fp_independent(&iso.alpha)?, || format!("{}: alpha dependent", ctx()));
    t.check(!oracle::fp_dependent_naive(&iso.alpha), || format!("{}: alpha dependent (oracle)", ctx()));
    let points = oracle::ga_points_naive(a);
    t.check(points.len() == elems.len(), || format!("{}: |G_a| = {}", ctx(), points.len()));
    let mut images: Vec<u64> = Vec::with_capacity(points.len());
    for x in &points {
        let fx = f_apply(&iso, x)?;
        images.push(fx.raw());
        let back = f_inv_apply(&iso, &fx)?;
        t.check(back.coords() == x.as_slice(), || format!("{}: f^-1(f({x:?})) = {:?}", ctx(), back.coords()));
        for i in 0..=m {
            t.check(tfrob_check(&iso, x, i)?, || format!("{}: tfrob fails at {x:?}, i = {i}", ctx()));
        }
    }
    images.sort_unstable();
    images.dedup();
    t.check(images.len() == elems.len(), || format!("{}: f is not a bijection", ctx()));
    for s in elems {
        let x = f_inv_apply(&iso, s)?;
        t.check(f_apply(&iso, x.coords())? == *s, || format!("{}: f(f^-1({s})) differs", ctx()));
    }
    // additivity on every pair of points
    for (x, y) in points.iter().cartesian_product(&points) {
        let sum: Vec<GfElem> = x.iter().zip(y).map(|(u, v)| u.clone() + v.clone()).collect();
        let lhs = f_apply(&iso, &sum)?;
        t.check(lhs == f_apply(&iso, x)? + f_apply(&iso, y)?, || format!("{}: f not additive at {x:?}, {y:?}", ctx()));
    }
    Ok(())
}

/// Relative precision carried by random series for the valuation criteria.
fn alpha_precision(p: u64, m: usize, max_v: i64) -> i64 {
    let spread = (p as i64).pow(m as u32);
    max_v * spread.max(4) + 32
}

/// Runs `f` at increasing relative precision until it decides. Valuations
/// read off a series are exact whenever the leading term sits below the
/// precision, so a low-precision success is final.
fn ladder<T>(start: i64, rungs: u32, mut f: impl FnMut(i64) -> Result<T>) -> Result<T> {
    let mut rel = start;
    let mut last = None;
    for _ in 0..rungs {
        match f(rel) {
            Ok(v) => return Ok(v),
            Err(e) => last = Some(e),
        }
        rel *= 2;
    }
    Err(last.expect("at least one rung"))
}

fn c3_alpha(t: &mut Tally, rng: &mut ChaCha8Rng) -> Result<()> {
    for _ in 0..200 {
        let p = if rng.random_bool(0.5) { 2 } else { 3 };
        let m = rng.random_range(0..=3usize);
        let f = field(p, 1)?;
        let cap = m as u32 + 3;
        // exponents in (0, 64] with denominator at most p^2
        let vals: Vec<PExponent> = loop {
            let v: Vec<PExponent> = (0..=m)
                .map(|_| {
                    let e = rng.random_range(0..=2u32);
                    PExponent::new(rng.random_range(1..=64 * p.pow(e) as i64), e, p)
                })
                .collect();
            if v.iter().all_unique() {
                break v;
            }
        };
        let max_v = vals.iter().map(|v| v.ratio().ceil().to_integer()).max().unwrap();
        let perturb = rng.random_bool(0.3);
        let coeffs: Vec<(GfElem, GfElem)> = (0..=m).map(|_| (nonzero(&f, rng), nonzero(&f, rng))).collect();
        let build = |rel: i64| -> Result<Vec<TruncatedSeries>> {
            vals.iter()
                .zip(&coeffs)
                .map(|(&v, (c0, c1))| {
                    let mut terms = vec![(v, c0.clone())];
                    if perturb {
                        terms.push((v + int(1), c1.clone()));
                    }
                    Ok(TruncatedSeries::from_terms(&f, cap, &terms, v + int(rel))?)
                })
                .collect()
        };
        let ctx = format!("p = {p}, vals = {vals:?}, perturbed = {perturb}");
        t.run(
            || ctx.clone(),
            |t| {
                let (a, r) = ladder(max_v / 2 + 16, 5, |rel| {
                    let a = build(rel)?;
                    let r = verify_alpha_vals(&a)?;
                    Ok((a, r))
                })?;
                for c in r.checks.iter().filter(|c| !c.pass) {
                    t.failures.push(format!("{ctx}: {} expected {} got {}", c.claim, c.expected, c.computed));
                }
                // closed form on the sorted profile directly
                let mut sorted = vals.clone();
                sorted.sort();
                let cf = crate::valo::alpha_val_closed_form(&ValProfile::new(p, sorted)?, true)?;
                let want: Vec<PExponent> = r.profile.order().iter().map(|&i| r.direct[i]).collect();
                t.check(cf == want, || format!("{ctx}: sorted closed form {cf:?} vs {want:?}"));
                t.check(cf.windows(2).all(|w| w[0] < w[1]), || format!("{ctx}: not strictly increasing"));
                let mv = min_val_check(&a, r.profile.argmax())?;
                t.check(mv.holds, || format!("{ctx}: minimal valuation corollary fails"));
                Ok(())
            },
        );
    }
    Ok(())
}

fn c4_preimage(t: &mut Tally, rng: &mut ChaCha8Rng) -> Result<()> {
    let f2 = field(2, 1)?;
    t.run(
        || "a = (t, t^3), y = t^5".into(),
        |t| {
            let a = [t_pow(&f2, 4, 1, 40)?, t_pow(&f2, 4, 3, 40)?];
            let r = preimage_valuations(&a, &t_pow(&f2, 4, 5, 40)?)?;
            t.check(r.pass(), || format!("checks {:?}", r.checks));
            t.check(r.x_vals[1] == int(2), || format!("val(x_1) = {}", r.x_vals[1]));
            Ok(())
        },
    );
    let mut boundary = 0;
    for _ in 0..100 {
        let p = if rng.random_bool(0.5) { 2 } else { 3 };
        let m = rng.random_range(1..=2usize);
        let f = field(p, rng.random_range(1..=2))?;
        let cap = m as u32 + 2;
        let vals: Vec<PExponent> = loop {
            let v: Vec<PExponent> =
                (0..=m).map(|_| PExponent::new(rng.random_range(1..=8), rng.random_range(0..=1), p)).collect();
            if v.iter().all_unique() {
                break v;
            }
        };
        let top = *vals.iter().max().unwrap();
        let vy = top + PExponent::new(rng.random_range(1..=6), rng.random_range(0..=1), p);
        let max_v = vy.ratio().ceil().to_integer();
        let rel = alpha_precision(p, m, max_v);
        let perturb = rng.random_bool(0.3);
        let a: Vec<TruncatedSeries> =
            vals.iter().map(|&v| series(&f, cap, v, rel, perturb, rng)).collect::<Result<_>>()?;
        let y = series(&f, cap, vy, rel, rng.random_bool(0.5), rng)?;
        let ctx = format!("F_{} vals = {vals:?}, val(y) = {vy}", f.order());
        t.run(
            || ctx.clone(),
            |t| {
                let r = preimage_valuations(&a, &y)?;
                boundary += r.boundary_hits;
                let l = r.top;
                t.check(r.x_vals[l] == vy - vals[l], || format!("{ctx}: val(x_{l}) = {}", r.x_vals[l]));
                t.check(r.x_vals.iter().all(PExponent::is_positive), || format!("{ctx}: x_vals {:?}", r.x_vals));
                for c in r.checks.iter().filter(|c| !c.pass) {
                    t.failures.push(format!("{ctx}: {} expected {} got {}", c.claim, c.expected, c.computed));
                }
                Ok(())
            },
        );
    }
    t.notes.push(format!("preimage coordinates with val(x_j) = 0: {boundary}"));
    Ok(())
}

/// `f_{a'}(π(f_a^{-1}(α_m s)))`, evaluated directly.
fn rho_direct<F: Field>(fit: &crate::valo::RhoFit<F>, s: &F) -> Result<F> {
    let x = f_inv_apply(&fit.iso, &(fit.mu.clone() * s.clone()))?.into_coords();
    let m = x.len() - 1;
    f_apply(&fit.iso_prime, &x[..m])
}

fn c5_rho(t: &mut Tally, rng: &mut ChaCha8Rng) -> Result<()> {
    let f4 = field(2, 2)?;
    t.run(
        || "a = (1, g) over F_4".into(),
        |t| {
            let fit = rho_prime_fit(&[GfElem::one(&f4), GfElem::generator(&f4)])?;
            t.check(fit.c == GfElem::one(&f4), || format!("c = {}", fit.c));
            Ok(())
        },
    );
    let configs = [(2u64, 2usize, 1usize), (2, 3, 1), (2, 3, 2), (3, 2, 1), (2, 4, 3), (3, 3, 2)];
    for i in 0..25 {
        let (p, k, m) = configs[i % configs.len()];
        let f = field(p, k)?;
        let a = valid_gf_tuple(&f, m + 1, rng);
        t.run(
            || format!("F_{} a = {a:?}", f.order()),
            |t| {
                let fit = rho_prime_fit(&a)?;
                for s in GfElem::all(&f) {
                    let want = fit.c.clone() * s.wp();
                    let got = rho_direct(&fit, &s)?;
                    t.check(got == want, || format!("a = {a:?}: rho'({s}) = {got}, c wp = {want}"));
                    t.check(fit.eval(&s) == want, || format!("a = {a:?}: fitted polynomial differs at {s}"));
                }
                Ok(())
            },
        );
    }
    for _ in 0..25 {
        let p = if rng.random_bool(0.5) { 2 } else { 3 };
        let m = rng.random_range(1..=2usize);
        let f = field(p, 1)?;
        let cap = m as u32 + 2;
        let vals: Vec<i64> = loop {
            let v: Vec<i64> = (0..=m).map(|_| rng.random_range(1..=6)).collect();
            if v.iter().all_unique() {
                break v;
            }
        };
        let rel = alpha_precision(p, m, *vals.iter().max().unwrap());
        let a: Vec<TruncatedSeries> =
            vals.iter().map(|&v| series(&f, cap, int(v), rel, rng.random_bool(0.3), rng)).collect::<Result<_>>()?;
        let ctx = format!("p = {p}, vals = {vals:?}");
        t.run(
            || ctx.clone(),
            |t| {
                let fit = rho_prime_fit(&a)?;
                for e in 1..=3 {
                    let s = series(&f, cap, int(e), 20, true, rng)?;
                    let diff = rho_direct(&fit, &s)? - fit.c.clone() * s.wp();
                    t.check(diff.is_zero()?, || format!("{ctx}: rho' - c wp = {diff} at {s}"));
                }
                Ok(())
            },
        );
    }
    Ok(())
}

fn c6_pipeline(t: &mut Tally, rng: &mut ChaCha8Rng) -> Result<()> {
    let f2 = field(2, 1)?;
    t.run(
        || "a = (t, t^3), u = t^4".into(),
        |t| {
            let a = [t_pow(&f2, 4, 1, 40)?, t_pow(&f2, 4, 3, 40)?];
            let r = preimage_small_val(&a, &t_pow(&f2, 4, 4, 40)?)?;
            t.check(r.pass(), || format!("checks {:?}", r.checks));
            t.check(r.val_w == int(1), || format!("val(w) = {}", r.val_w));
            let ar = as_root_in_maximal_ideal(&a, &t_pow(&f2, 4, 4, 40)?)?;
            t.check(ar.pass(), || format!("pipeline checks {:?}", ar.checks));
            Ok(())
        },
    );
    for _ in 0..50 {
        let p = if rng.random_bool(0.5) { 2 } else { 3 };
        let m = rng.random_range(1..=2usize);
        let f = field(p, rng.random_range(1..=2))?;
        let cap = m as u32 + 3;
        let mut vals: Vec<i64> = loop {
            let v: Vec<i64> = (0..=m).map(|_| rng.random_range(1..=5)).collect();
            if v.iter().all_unique() {
                break v;
            }
        };
        vals.sort_unstable();
        let vu = vals[m] + rng.random_range(1..=4);
        let rel = alpha_precision(p, m, vu) * 2;
        let a: Vec<TruncatedSeries> =
            vals.iter().map(|&v| series(&f, cap, int(v), rel, rng.random_bool(0.3), rng)).collect::<Result<_>>()?;
        let u = series(&f, cap, int(vu), rel, rng.random_bool(0.5), rng)?;
        let ctx = format!("F_{} vals = {vals:?}, val(u) = {vu}", f.order());
        t.run(
            || ctx.clone(),
            |t| {
                let r = preimage_small_val(&a, &u)?;
                t.check(r.val_w.is_positive() && r.val_w < int(vu), || format!("{ctx}: val(w) = {}", r.val_w));
                t.check(r.pass(), || format!("{ctx}: {:?}", r.checks.iter().filter(|c| !c.pass).collect_vec()));
                let ar = as_root_in_maximal_ideal(&a, &u)?;
                t.check(ar.pass(), || format!("{ctx}: {:?}", ar.checks.iter().filter(|c| !c.pass).collect_vec()));
                Ok(())
            },
        );
    }
    Ok(())
}

fn c7_bgrid(t: &mut Tally) -> Result<()> {
    for p in [2u64, 3] {
        let f = field(p, 1)?;
        for n in 1..=3usize {
            for ell in 1..=3usize {
                for y_terms in [vec![1i64], vec![1, 2], vec![2, 5]] {
                    let gap = (1..=4u32).find(|&g| (n as u64) < p.pow(g)).unwrap();
                    let cap = (n * ell) as u32 * gap + 1;
                    let one = GfElem::one(&f);
                    let terms: Vec<(PExponent, GfElem)> = y_terms.iter().map(|&e| (int(e), one.clone())).collect();
                    let y = TruncatedSeries::from_terms(&f, cap, &terms, int(12))?;
                    let ctx = format!("p = {p}, n = {n}, l = {ell}, y = {y}");
                    t.run(
                        || ctx.clone(),
                        |t| {
                            let g = build_b_grid(n, ell, &y, gap)?;
                            let pairs = g.products.len() * (g.products.len().saturating_sub(1)) / 2;
                            t.check(g.pass() && g.pairs_checked == pairs, || format!("{ctx}: {:?}", g.checks));
                            Ok(())
                        },
                    );
                }
            }
        }
    }
    Ok(())
}

fn random_relation(rng: &mut ChaCha8Rng) -> Result<WitnessedRelation> {
    let n = rng.random_range(1..=3usize);
    let parts: Vec<usize> = (0..n).map(|_| rng.random_range(1..=4)).collect();
    let mut rel = WitnessedRelation::new(parts.clone())?;
    let cells = rel.cells();
    let count = rng.random_range(0..=40usize);
    for w in 0..count {
        let bits: Vec<bool> = (0..cells).map(|_| rng.random_bool(0.5)).collect();
        rel.push(format!("w{w}"), &bits)?;
    }
    // sometimes plant a shattered grid
    if rng.random_bool(0.5) {
        let grid: Vec<Vec<usize>> =
            parts.iter().map(|&s| (0..s).filter(|_| rng.random_bool(0.6)).collect()).collect();
        let g = Grid(grid);
        let gc = g.flat_cells(&rel);
        if gc.len() <= 9 {
            for s in 0u64..1 << gc.len() {
                let mut bits: Vec<bool> = (0..cells).map(|_| rng.random_bool(0.5)).collect();
                for (i, &c) in gc.iter().enumerate() {
                    bits[c] = s >> i & 1 == 1;
                }
                if rng.random_bool(0.97) {
                    rel.push(format!("s{s}"), &bits)?;
                }
            }
        }
    }
    Ok(rel)
}

fn random_grid(rel: &WitnessedRelation, rng: &mut ChaCha8Rng) -> Grid {
    loop {
        let g: Vec<Vec<usize>> =
            rel.parts().iter().map(|&s| (0..s).filter(|_| rng.random_bool(0.5)).collect()).collect();
        if g.iter().map(Vec::len).product::<usize>() <= 9 {
            return Grid(g);
        }
    }
}

/// Functions on F_5 for the composition instances.
fn f5_tables() -> Vec<(&'static str, Vec<usize>)> {
    let tab = |f: fn(usize, usize) -> usize| (0..25).map(|i| f(i / 5, i % 5) % 5).collect::<Vec<_>>();
    vec![
        ("x+y", tab(|x, y| x + y)),
        ("xy", tab(|x, y| x * y)),
        ("x-y", tab(|x, y| x + 5 - y)),
        ("x^2+y", tab(|x, y| x * x + y)),
    ]
}

fn c8_shatter(t: &mut Tally, rng: &mut ChaCha8Rng) -> Result<()> {
    let mut shattered = 0;
    for _ in 0..500 {
        let rel = random_relation(rng)?;
        let g = random_grid(&rel, rng);
        t.run(
            || format!("parts {:?}, grid {:?}", rel.parts(), g.0),
            |t| {
                let fast = shatters(&rel, &g)?;
                let naive = oracle::shatters_naive(&rel, &g);
                shattered += usize::from(fast);
                t.check(fast == naive, || format!("parts {:?}, grid {:?}: fast {fast}, naive {naive}", rel.parts(), g.0));
                if rel.cells() <= 16 {
                    let caps = vec![3; rel.n()];
                    let mg = max_shattered_grid(&rel, &caps)?;
                    let side = mg.grid.as_ref().map(|_| mg.side);
                    let naive_side = oracle::max_grid_naive(&rel, &caps);
                    t.check(side == naive_side, || format!("parts {:?}: max side {side:?} vs {naive_side:?}", rel.parts()));
                }
                Ok(())
            },
        );
    }
    // composed relations over F_5 with a stable base: equality, or the order, on the image coordinates
    let tables = f5_tables();
    let bases: Vec<(&str, Vec<bool>)> = vec![
        ("eq", (0..25).map(|i| i / 5 == i % 5).collect()),
        ("le", (0..25).map(|i| i / 5 <= i % 5).collect()),
    ];
    let coord_choices = [(1u8, 2u8), (1, 3), (2, 3)];
    for (bname, base) in &bases {
        for (c1, c2) in coord_choices.iter().cartesian_product(&coord_choices) {
            for ((n1, t1), (n2, t2)) in tables.iter().cartesian_product(&tables) {
                let rel = compose_relation(5, base, &[*c1, *c2], &[t1.clone(), t2.clone()])?;
                let ctx = format!("{bname}({n1}@{c1:?}, {n2}@{c2:?})");
                for _ in 0..2 {
                    let g = random_grid(&rel, rng);
                    t.run(
                        || ctx.clone(),
                        |t| {
                            let fast = shatters(&rel, &g)?;
                            let naive = oracle::shatters_naive(&rel, &g);
                            t.check(fast == naive, || format!("{ctx}, grid {:?}: fast {fast}, naive {naive}", g.0));
                            Ok(())
                        },
                    );
                }
            }
        }
    }
    t.check(shattered > 0, || "no random instance was shattered".into());
    Ok(())
}

fn c9_bilinear(t: &mut Tally, rng: &mut ChaCha8Rng) -> Result<()> {
    let mut spaces = Vec::new();
    for (p, k) in [(3u64, 1usize), (2, 2), (2, 4)] {
        let f = field(p, k)?;
        spaces.push(BilinearSpace::identity(&f, 3)?);
        spaces.push(BilinearSpace::identity(&f, 4)?);
        spaces.push(BilinearSpace::symplectic(&f, 2)?);
    }
    for i in 0..100 {
        let space = &spaces[i % spaces.len()];
        let f = space.field().clone();
        let d = rng.random_range(1..=3usize);
        let c = Matrix::from_fn(d, d, |_, _| any_elem(&f, rng));
        t.run(
            || format!("F_{} m = {}, C = {c:?}", f.order(), space.dim()),
            |t| {
                let enc = bilinear_encode(space, &c)?;
                for (i, j) in (0..d).cartesian_product(0..d) {
                    let v = space.form(&enc.a[i], &enc.b[j]);
                    t.check(v == *c.get(i, j), || format!("[a_{i}, b_{j}] = {v}, C = {}", c.get(i, j)));
                }
                Ok(())
            },
        );
    }
    let f16 = field(2, 4)?;
    for space in [BilinearSpace::identity(&f16, 3)?, BilinearSpace::symplectic(&f16, 2)?] {
        t.run(
            || format!("q = 16, d = 3, m = {}", space.dim()),
            |t| {
                let demo = bilinear_shatter_demo(&space, 3)?;
                t.check(demo.shattered && demo.distinct_values == 9, || format!("demo {demo:?}"));
                Ok(())
            },
        );
    }
    Ok(())
}

fn ramsey_case(t: &mut Tally, l: usize, m: usize, n: usize, want: u64) {
    t.run(
        || format!("R({l}, {m}, {n})"),
        |t| {
            let r = ramsey_partite(l, m, n, 1 << 24)?;
            t.check(r.r == want, || format!("R({l}, {m}, {n}) = {}, expected {want}", r.r));
            let below = r.r as usize - 1;
            // lower certificate: the coloring of (r-1)^n has no monochromatic box
            t.check(is_box_free(&r.bad_coloring, below, l, n), || format!("R({l}, {m}, {n}): certificate has a box"));
            t.check(!oracle::has_mono_box_naive(&r.bad_coloring, below, l, n), || {
                format!("R({l}, {m}, {n}): oracle finds a box in the certificate")
            });
            // upper certificate: brute force over every coloring at r
            let naive = oracle::ramsey_naive(l, m, n, r.r as usize);
            t.check(naive == Some(r.r as usize), || format!("R({l}, {m}, {n}): brute force gives {naive:?}"));
            Ok(())
        },
    );
}

fn c10_ramsey(t: &mut Tally) -> Result<()> {
    for m in 1..=3 {
        for n in 1..=3 {
            ramsey_case(t, 1, m, n, 1);
        }
    }
    for l in 1..=3 {
        for n in 1..=2 {
            ramsey_case(t, l, 1, n, l as u64);
        }
    }
    ramsey_case(t, 2, 2, 1, 3);
    Ok(())
}

fn c11_chain(t: &mut Tally, rng: &mut ChaCha8Rng) -> Result<()> {
    let wp = [Family::wp()];
    for k in 1..=4usize {
        let f = field(2, k)?;
        for n in 1..=2usize {
            let d = (1..).find(|d: &usize| d.pow(n as u32) > k).unwrap();
            let mut widths = vec![d];
            // one width past the minimum where the enumeration stays small
            if ((f.order() - 1) as usize).pow((n * d) as u32) <= 20_000 {
                widths.push(d + 1);
            }
            for w in widths {
                for fa in arrays_mod_scaling(&f, n, w, &wp) {
                    t.run(
                        || format!("k = {k}, n = {n}, d = {w}, params = {:?}", fa.params()),
                        |t| {
                            let nu = find_redundant(&fa)?;
                            let naive = oracle::redundant_naive(&fa)?;
                            t.check(nu.is_some(), || format!("k = {k}, n = {n}, d = {w}: no nu for {:?}", fa.params()));
                            t.check(nu == naive, || format!("nu {nu:?} vs oracle {naive:?}"));
                            if let Some(nu) = &nu {
                                t.check(verify_redundant(&fa, nu)?, || format!("nu {nu:?} fails the recheck"));
                            }
                            Ok(())
                        },
                    );
                }
            }
        }
    }
    // observed threshold for n = 1 against the dimension bound k + 1
    for (p, k) in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2)] {
        let f = field(p, k)?;
        let mut witness = None;
        for fa in arrays_mod_scaling(&f, 1, k, &wp) {
            if find_redundant(&fa)?.is_none() {
                witness = Some(format!("{:?}", fa.params()));
                break;
            }
        }
        t.notes.push(match witness {
            Some(w) => format!("p = {p}, k = {k}, n = 1: width {k} has no redundant index at {w}, threshold is k + 1"),
            None => format!("p = {p}, k = {k}, n = 1: every width-{k} array has a redundant index, threshold is below k + 1"),
        });
    }
    // two families at once: pairs of hyperplanes are codimension 2 in K x K
    let two = [Family::wp(), Family::WpProduct { power: 3 }];
    for k in 2..=4usize {
        let f = field(2, k)?;
        for n in 1..=2usize {
            let d = (1..).find(|d: &usize| d.pow(n as u32) > 2 * k).unwrap();
            for _ in 0..100 {
                let fa = random_array(&f, n, d, &two, rng)?;
                t.run(
                    || format!("two families, k = {k}, n = {n}, params = {:?}", fa.params()),
                    |t| {
                        let nu = find_redundant(&fa)?;
                        let naive = oracle::redundant_naive(&fa)?;
                        t.check(nu.is_some() && nu == naive, || format!("nu {nu:?} vs oracle {naive:?}"));
                        if let Some(nu) = &nu {
                            t.check(verify_redundant(&fa, nu)?, || format!("nu {nu:?} fails the recheck"));
                        }
                        Ok(())
                    },
                );
            }
        }
    }
    Ok(())
}

fn c12_opg(t: &mut Tally, rng: &mut ChaCha8Rng) -> Result<()> {
    let half = Ratio::new(1u64, 2);
    for i in 0..200 {
        let n = rng.random_range(1..=3usize);
        let csizes: Vec<usize> = (0..n).map(|_| rng.random_range(1..=2)).collect();
        let c = random_opg(&csizes, half, rng.random())?;
        let ea: Vec<usize> = (0..n).map(|_| rng.random_range(0..=2)).collect();
        let eb: Vec<usize> = (0..n).map(|_| rng.random_range(0..=2)).collect();
        let (a, into_a) = random_extension(&c, &ea, half, rng.random())?;
        let (b, into_b) = random_extension(&c, &eb, half, rng.random())?;
        let psizes: Vec<usize> = (0..n).map(|_| rng.random_range(1..=2)).collect();
        let pattern = random_opg(&psizes, half, rng.random())?;
        t.run(
            || format!("instance {i}"),
            |t| {
                let am = amalgamate(&a, &b, &c, &into_a, &into_b)?;
                t.check(is_induced_embedding(&a, &am.result, &am.from_a), || format!("instance {i}: A does not embed"));
                t.check(is_induced_embedding(&b, &am.result, &am.from_b), || format!("instance {i}: B does not embed"));
                let via_a: Vec<Vec<usize>> = (0..n).map(|p| into_a[p].iter().map(|&v| am.from_a[p][v]).collect()).collect();
                let via_b: Vec<Vec<usize>> = (0..n).map(|p| into_b[p].iter().map(|&v| am.from_b[p][v]).collect()).collect();
                t.check(via_a == via_b, || format!("instance {i}: square does not commute"));
                let host = &am.result;
                let boxes: Vec<(usize, usize)> = host
                    .parts()
                    .iter()
                    .map(|&s| {
                        let lo = rng.random_range(0..=s / 2);
                        (lo, rng.random_range(lo..=s))
                    })
                    .collect();
                let fast = find_induced_copy(host, &pattern, &boxes)?;
                let naive = oracle::induced_copy_naive(host, &pattern, &boxes);
                t.check(fast == naive, || format!("instance {i}: copy {fast:?} vs oracle {naive:?}"));
                Ok(())
            },
        );
    }
    for s in 0..3u64 {
        let h = random_opg(&[8, 8, 8], half, rng.random::<u64>() ^ s)?;
        t.run(
            || format!("(8,8,8) instance {s}"),
            |t| {
                let r = check_extension(&h, 1)?;
                let (demands, satisfied, between) = oracle::extension_naive(&h, 1);
                t.check(
                    (r.demands, r.satisfied, r.betweenness_failures) == (demands, satisfied, between),
                    || format!("report ({}, {}, {}) vs oracle ({demands}, {satisfied}, {between})", r.demands, r.satisfied, r.betweenness_failures),
                );
                Ok(())
            },
        );
    }
    Ok(())
}
