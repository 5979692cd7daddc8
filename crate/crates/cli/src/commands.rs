use std::fmt::Display;
use std::sync::Arc;

use ndep_core::algebra::parse::split_tuple;
use ndep_core::algebra::{Field, GaloisField, GfElem, Matrix, PExponent, TruncatedSeries};
use ndep_core::chaincond::{baldwin_saxl_threshold, find_redundant, verify_redundant, FamilyArray};
use ndep_core::moore::{
    artin_schreier_roots_gf, build_iso, f_apply, f_inv_apply, is_fp_independent, moore_det, moore_matrix, tfrob_check,
};
use ndep_core::opg::{amalgamate, check_extension, find_induced_copy, is_induced_embedding, random_opg, Embedding, Opg};
use ndep_core::oracle;
use ndep_core::report::{Check, RunReport};
use ndep_core::shatter::{
    bilinear_encode, bilinear_shatter_demo, binary_pattern, compose_relation, find_lowarity_blind_pair, is_box_free,
    max_shattered_grid, ramsey_partite, shatters, BilinearSpace, BinaryRelation,
};
use ndep_core::suite;
use ndep_core::valo::{
    as_root_in_maximal_ideal, build_b_grid_with, min_val_check, preimage_small_val, preimage_valuations, rho_prime_fit,
    verify_alpha_vals, RhoFit, Schedule,
};
use ndep_core::Error;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::args::{BaseArg, ChainCmd, Cmd, FieldArgs, FormArg, OpgCmd, ScheduleArg, SeriesArgs, ShatterCmd, ValoCmd};
use crate::input::{self, Res};
use crate::CliError;

/// Exhaustive checks over K^n only below this many points.
const EXHAUSTIVE: u64 = 1 << 16;

pub fn run(cmd: &Cmd, argv: &[String]) -> Res<RunReport> {
    let argv = argv.to_vec();
    match cmd {
        Cmd::Field { field, elems } => field_cmd(argv, field, elems.as_deref()),
        Cmd::Moore { field, series, c } => moore_cmd(argv, field, series, c),
        Cmd::Iso { field, series, a } => iso_cmd(argv, field, series, a),
        Cmd::Valo(v) => valo(argv, v),
        Cmd::Shatter(s) => shatter(argv, s),
        Cmd::Opg(o) => opg(argv, o),
        Cmd::Chaincond(c) => chaincond(argv, c),
        Cmd::Suite { seed, only, timings } => suite_cmd(argv, *seed, only, *timings),
    }
}

fn strings<T: Display>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn field_substrate(f: &GaloisField) -> Value {
    json!({ "p": f.p(), "k": f.degree(), "q": f.order(), "modulus": f.modulus() })
}

fn series_substrate(f: &GaloisField, sa: &SeriesArgs, cap: u32) -> Value {
    let mut v = field_substrate(f);
    v["cap"] = json!(cap);
    v["prec"] = json!(sa.prec);
    v
}

fn small_primes(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn field_cmd(argv: Vec<String>, fa: &FieldArgs, elems: Option<&str>) -> Res<RunReport> {
    let f = input::field(fa)?;
    let (q, k) = (f.order(), f.degree() as i64);
    let one = GfElem::one(&f);
    let g = GfElem::generator(&f);
    let modulus_at_g = f
        .modulus()
        .iter()
        .enumerate()
        .fold(GfElem::zero(&f), |acc, (i, &c)| acc + GfElem::new(&f, c) * g.pow(i as u64));
    let mut checks = vec![Check::eq("modulus vanishes at g", "0".to_string(), modulus_at_g.to_string())];
    let primes = small_primes(q - 1);
    let primitive = GfElem::all(&f).skip(1).find(|x| primes.iter().all(|r| x.pow((q - 1) / r) != one));
    let order_of_g = (g.raw() != 0).then(|| (1..q).filter(|d| (q - 1) % d == 0).find(|&d| g.pow(d) == one)).flatten();
    let shown: Vec<GfElem> = match elems {
        Some(s) => input::gf_tuple(&f, s)?,
        None if q <= 16 => GfElem::all(&f).collect(),
        None => Vec::new(),
    };
    let scan: Vec<GfElem> = if q <= EXHAUSTIVE { GfElem::all(&f).collect() } else { shown.clone() };
    let (mut frob_ok, mut roots_ok) = (true, true);
    for x in &scan {
        frob_ok &= x.frob(k) == *x;
        let roots = artin_schreier_roots_gf(x);
        let want = if x.trace() == 0 { f.p() as usize } else { 0 };
        roots_ok &= roots.len() == want && roots.iter().all(|r| r.wp() == *x);
    }
    checks.push(Check::holds("Frobenius^k is the identity", format!("on {} elements", scan.len()), frob_ok));
    checks.push(Check::holds(
        "x^p - x = a has p roots iff Tr(a) = 0, none otherwise",
        format!("on {} elements", scan.len()),
        roots_ok,
    ));
    let table: Vec<Value> = shown
        .iter()
        .map(|x| {
            json!({
                "x": x.to_string(),
                "frobenius": x.frob(1).to_string(),
                "trace": x.trace(),
                "wp": x.wp().to_string(),
                "inverse": x.try_inv().ok().map(|i| i.to_string()),
                "as_roots": strings(&artin_schreier_roots_gf(x)),
            })
        })
        .collect();
    let result = json!({
        "g": g.to_string(),
        "order_of_g": order_of_g,
        "primitive": primitive.map(|x| x.to_string()),
        "elements": table,
    });
    Ok(RunReport::new(argv, field_substrate(&f), checks, result))
}

fn frobenius_rows<F: Field>(c: &[F], m: &Matrix<F>) -> Res<bool> {
    for i in 0..c.len() {
        for (j, x) in c.iter().enumerate() {
            if !(m.get(i, j).clone() - x.frobenius(i as i64)?).is_zero()? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn moore_result<F: Field + Display>(c: &[F]) -> Res<(Vec<Check>, Value)> {
    let m = moore_matrix(c)?;
    let det = moore_det(c)?;
    let independent = is_fp_independent(c)?;
    let rows: Vec<Vec<String>> = (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect()).collect();
    let checks = vec![Check::holds("row i is the i-th Frobenius twist", "A_ij = c_j^(p^i)", frobenius_rows(c, &m)?)];
    Ok((checks, json!({ "matrix": rows, "delta": det.to_string(), "independent": independent })))
}

fn moore_cmd(argv: Vec<String>, fa: &FieldArgs, sa: &SeriesArgs, c: &str) -> Res<RunReport> {
    let f = input::field(fa)?;
    if input::is_series(c) {
        let cap = 4;
        let (checks, result) = input::with_series(&f, sa, cap, &[c], |t| moore_result(&t[0]))?;
        return Ok(RunReport::new(argv, series_substrate(&f, sa, sa.cap.unwrap_or(cap)), checks, result));
    }
    let c = input::gf_tuple(&f, c)?;
    let (mut checks, result) = moore_result(&c)?;
    if f.p().checked_pow(c.len() as u32).is_some_and(|n| n <= EXHAUSTIVE) {
        let naive = !oracle::fp_dependent_naive(&c);
        checks.push(Check::eq("independence agrees with F_p-combination search", naive, is_fp_independent(&c)?));
    }
    Ok(RunReport::new(argv, field_substrate(&f), checks, result))
}

fn iso_json<F: Field + Display>(iso: &ndep_core::moore::IsoData<F>) -> Value {
    let mat = |m: &Matrix<F>| -> Vec<Vec<String>> {
        (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect()).collect()
    };
    json!({
        "a": strings(&iso.a),
        "alpha": strings(&iso.alpha),
        "beta": mat(&iso.beta),
        "delta": iso.delta.to_string(),
        "moore": mat(&iso.moore),
    })
}

fn iso_gf_checks(a: &[GfElem]) -> Res<Vec<Check>> {
    let iso = build_iso(a)?;
    let f = a[0].field();
    let q = f.order();
    let m = iso.m();
    let mut checks = vec![Check::holds("alpha is F_p-independent", "Delta(alpha) != 0", is_fp_independent(&iso.alpha)?)];
    let (mut round, mut tfrob, mut member) = (true, true, true);
    let mut images = Vec::new();
    for s in GfElem::all(f) {
        let x = f_inv_apply(&iso, &s)?;
        round &= f_apply(&iso, x.coords())? == s;
        member &= a.iter().zip(x.coords()).all(|(ai, xi)| ai.clone() * xi.wp() == a[0].clone() * x.coords()[0].wp());
        for i in 0..=m {
            tfrob &= tfrob_check(&iso, x.coords(), i)?;
        }
        images.push(x.into_coords());
    }
    images.sort_by_key(|x| x.iter().map(GfElem::raw).collect::<Vec<_>>());
    images.dedup();
    checks.push(Check::eq("f(f^-1(s)) = s for all s in K", true, round));
    checks.push(Check::holds("f^-1 lands in G_a", "a_i wp(x_i) constant", member));
    checks.push(Check::eq("f^-1 is injective", q as usize, images.len()));
    checks.push(Check::holds("tfrob: f(x)^(p^i) = sum alpha_j^(p^i) x_j", "for all points and i", tfrob));
    if q.checked_pow(a.len() as u32).is_some_and(|n| n <= EXHAUSTIVE) {
        let points = oracle::ga_points_naive(a);
        checks.push(Check::eq("|G_a(K)| by exhaustive scan", q as usize, points.len()));
        let mut additive = true;
        for x in &points {
            for y in &points {
                let sum: Vec<GfElem> = x.iter().zip(y).map(|(u, v)| u.clone() + v.clone()).collect();
                additive &= f_apply(&iso, &sum)? == f_apply(&iso, x)? + f_apply(&iso, y)?;
            }
        }
        checks.push(Check::holds("f is additive", "on all pairs of points", additive));
    }
    Ok(checks)
}

fn iso_cmd(argv: Vec<String>, fa: &FieldArgs, sa: &SeriesArgs, a: &str) -> Res<RunReport> {
    let f = input::field(fa)?;
    if input::is_series(a) {
        let cap = split_tuple(a).len() as u32 + 3;
        let (checks, result) = input::with_series(&f, sa, cap, &[a], |t| {
            let iso = build_iso(&t[0])?;
            let r = verify_alpha_vals(&t[0])?;
            let mut checks =
                vec![Check::holds("alpha is F_p-independent", "Delta(alpha) != 0", is_fp_independent(&iso.alpha)?)];
            checks.extend(r.checks.iter().take(3).cloned());
            let mut result = iso_json(&iso);
            result["alpha_vals"] = json!(r.direct);
            result["alpha_vals_closed_form"] = json!(r.closed_form);
            Ok((checks, result))
        })?;
        return Ok(RunReport::new(argv, series_substrate(&f, sa, sa.cap.unwrap_or(cap)), checks, result));
    }
    let a = input::gf_tuple(&f, a)?;
    let iso = build_iso(&a)?;
    let checks = iso_gf_checks(&a)?;
    Ok(RunReport::new(argv, field_substrate(&f), checks, iso_json(&iso)))
}

fn one_series(t: &[TruncatedSeries], name: &str) -> Res<TruncatedSeries> {
    match t {
        [y] => Ok(y.clone()),
        _ => Err(CliError::usage(format!("--{name} takes a single series"))),
    }
}

/// `f_{a'}(π(f_a^{-1}(μ s)))`, evaluated without the fitted polynomial.
fn rho_direct<F: Field>(fit: &RhoFit<F>, s: &F) -> Res<F> {
    let x = f_inv_apply(&fit.iso, &(fit.mu.clone() * s.clone()))?.into_coords();
    let m = x.len() - 1;
    Ok(f_apply(&fit.iso_prime, &x[..m])?)
}

fn rho_json<F: Field + Display>(fit: &RhoFit<F>) -> Value {
    json!({
        "a": strings(&fit.a),
        "a_prime": strings(&fit.a_prime),
        "mu": fit.mu.to_string(),
        "c": fit.c.to_string(),
        "rho_prime": strings(&fit.rho_prime.coeffs),
    })
}

fn valo(argv: Vec<String>, cmd: &ValoCmd) -> Res<RunReport> {
    match cmd {
        ValoCmd::Alpha { field, series, a } => {
            let f = input::field(field)?;
            let cap = split_tuple(a).len() as u32 + 3;
            let (checks, result) = input::with_series(&f, series, cap, &[a], |t| {
                let r = verify_alpha_vals(&t[0])?;
                let mv = min_val_check(&t[0], r.profile.argmax())?;
                let mut checks = r.checks.clone();
                checks.extend(mv.checks);
                let result = json!({
                    "a": strings(&t[0]),
                    "val_a": r.profile.vals,
                    "direct": r.direct,
                    "closed_form": r.closed_form,
                    "permutations_checked": r.permutations_checked,
                });
                Ok((checks, result))
            })?;
            Ok(RunReport::new(argv, series_substrate(&f, series, series.cap.unwrap_or(cap)), checks, result))
        }
        ValoCmd::Preimage { field, series, a, y } => {
            let f = input::field(field)?;
            let cap = split_tuple(a).len() as u32 + 3;
            let (checks, result) = input::with_series(&f, series, cap, &[a, y], |t| {
                let y = one_series(&t[1], "y")?;
                let r = preimage_valuations(&t[0], &y)?;
                let result = json!({
                    "x": strings(&r.x),
                    "x_vals": r.x_vals,
                    "wp_vals": r.wp_vals,
                    "top": r.top,
                    "boundary_hits": r.boundary_hits,
                });
                Ok((r.checks, result))
            })?;
            Ok(RunReport::new(argv, series_substrate(&f, series, series.cap.unwrap_or(cap)), checks, result))
        }
        ValoCmd::Rho { field, series, a } => {
            let f = input::field(field)?;
            if input::is_series(a) {
                let cap = split_tuple(a).len() as u32 + 3;
                let (checks, result) = input::with_series(&f, series, cap, &[a], |t| {
                    let fit = rho_prime_fit(&t[0])?;
                    let prec = t[0][0].precision().unwrap_or(PExponent::int(32));
                    let p = PExponent::int;
                    let mut checks = Vec::new();
                    for (e1, e2) in [(1, 2), (2, 5), (3, 4)] {
                        let one = GfElem::one(&f);
                        let s = TruncatedSeries::from_terms(&f, cap, &[(p(e1), one.clone()), (p(e2), one)], prec)?;
                        let diff = rho_direct(&fit, &s)? - fit.c.clone() * s.wp();
                        checks.push(Check::holds(format!("rho'({s}) = c wp"), "difference zero to precision", diff.is_zero()?));
                    }
                    Ok((checks, rho_json(&fit)))
                })?;
                return Ok(RunReport::new(argv, series_substrate(&f, series, series.cap.unwrap_or(cap)), checks, result));
            }
            let a = input::gf_tuple(&f, a)?;
            let fit = rho_prime_fit(&a)?;
            let (mut direct, mut fitted) = (true, true);
            for s in GfElem::all(&f) {
                let want = fit.c.clone() * s.wp();
                direct &= rho_direct(&fit, &s)? == want;
                fitted &= fit.eval(&s) == want;
            }
            let checks = vec![
                Check::holds("composed map equals c(t^p - t)", "at every point of K", direct),
                Check::holds("fitted polynomial equals c(t^p - t)", "at every point of K", fitted),
            ];
            Ok(RunReport::new(argv, field_substrate(&f), checks, rho_json(&fit)))
        }
        ValoCmd::Pipeline { field, series, a, u } => {
            let f = input::field(field)?;
            let cap = split_tuple(a).len() as u32 + 3;
            let (checks, result) = input::with_series(&f, series, cap, &[a, u], |t| {
                let u = one_series(&t[1], "u")?;
                let r = preimage_small_val(&t[0], &u)?;
                let ar = as_root_in_maximal_ideal(&t[0], &u)?;
                let vu = u.val()?;
                let mut checks = vec![Check::holds(
                    "val(w) in (0, val(u))",
                    format!("0 < {} < {vu}", r.val_w),
                    r.val_w.is_positive() && r.val_w < vu,
                )];
                checks.extend(r.checks.iter().cloned());
                checks.extend(ar.checks.iter().cloned());
                let result = json!({
                    "w": r.w.to_string(),
                    "val_w": r.val_w,
                    "c": r.c.to_string(),
                    "w_prime": ar.w_prime.to_string(),
                    "val_w_prime": ar.val_w_prime,
                });
                Ok((checks, result))
            })?;
            Ok(RunReport::new(argv, series_substrate(&f, series, series.cap.unwrap_or(cap)), checks, result))
        }
        ValoCmd::Bgrid { field, series, n, ell, y, gap, schedule } => {
            let f = input::field(field)?;
            let p = f.p();
            let gap = match gap {
                Some(g) => *g,
                None => (1..=16u32).find(|&g| p.checked_pow(g).is_none_or(|x| (*n as u64) < x)).unwrap_or(16),
            };
            let order = match schedule {
                ScheduleArg::RowMajor => Schedule::RowMajor,
                ScheduleArg::Interleaved => Schedule::Interleaved,
            };
            let cap = (n * ell) as u32 * gap + 1;
            let (checks, result) = input::with_series(&f, series, cap, &[y], |t| {
                let y = one_series(&t[0], "y")?;
                let g = build_b_grid_with(*n, *ell, &y, gap, order)?;
                let b: Vec<Vec<String>> = g.b.iter().map(|row| strings(row)).collect();
                let result = json!({
                    "gap": g.gap,
                    "order": g.order,
                    "schedule": g.schedule,
                    "b": b,
                    "vals": g.vals()?,
                    "products": g.products,
                    "pairs_checked": g.pairs_checked,
                });
                Ok((g.checks, result))
            })?;
            Ok(RunReport::new(argv, series_substrate(&f, series, series.cap.unwrap_or(cap)), checks, result))
        }
    }
}

fn base_table(m: usize, base: BaseArg) -> Vec<bool> {
    (0..m * m)
        .map(|i| {
            let (x, y) = (i / m, i % m);
            match base {
                BaseArg::Eq => x == y,
                BaseArg::Ne => x != y,
                BaseArg::Le => x <= y,
                BaseArg::Lt => x < y,
            }
        })
        .collect()
}

fn inner_table(m: usize, name: &str) -> Res<Vec<usize>> {
    let f: fn(usize, usize, usize) -> usize = match name {
        "add" => |x, y, _| x + y,
        "sub" => |x, y, m| x + m - y,
        "mul" => |x, y, _| x * y,
        "sq_add" => |x, y, _| x * x + y,
        "first" => |x, _, _| x,
        "second" => |_, y, _| y,
        _ => return Err(CliError::usage(format!("unknown function {name:?}; use add, sub, mul, sq_add, first, second"))),
    };
    Ok((0..m * m).map(|i| f(i / m, i % m, m) % m).collect())
}

/// `add@1:2,mul@2:3`
fn funcs(m: usize, s: &str) -> Res<(Vec<(u8, u8)>, Vec<Vec<usize>>)> {
    let mut coords = Vec::new();
    let mut tables = Vec::new();
    for item in s.split(',') {
        let bad = || CliError::usage(format!("{item:?} is not name@s:t"));
        let (name, st) = item.trim().split_once('@').ok_or_else(bad)?;
        let (a, b) = st.split_once(':').ok_or_else(bad)?;
        coords.push((a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?));
        tables.push(inner_table(m, name)?);
    }
    Ok((coords, tables))
}

fn shatter(argv: Vec<String>, cmd: &ShatterCmd) -> Res<RunReport> {
    match cmd {
        ShatterCmd::Decide { input, grid } => {
            let rel = input::relation(input)?;
            let g = input::grid(grid)?;
            let fast = shatters(&rel, &g)?;
            let mut checks = Vec::new();
            if g.cells() <= 16 {
                checks.push(Check::eq("decision agrees with subset-by-subset enumeration", oracle::shatters_naive(&rel, &g), fast));
            }
            let result = json!({ "shattered": fast, "cells": g.cells() });
            Ok(RunReport::new(argv, json!({ "parts": rel.parts(), "witnesses": rel.witnesses().len() }), checks, result))
        }
        ShatterCmd::Max { input, caps } => {
            let rel = input::relation(input)?;
            let caps = input::usize_list(caps)?;
            let mg = max_shattered_grid(&rel, &caps)?;
            let mut checks = Vec::new();
            if rel.cells() <= 16 {
                let side = mg.grid.as_ref().map(|_| mg.side);
                checks.push(Check::eq("side agrees with exhaustive search", format!("{:?}", oracle::max_grid_naive(&rel, &caps)), format!("{side:?}")));
            }
            Ok(RunReport::new(argv, json!({ "parts": rel.parts(), "witnesses": rel.witnesses().len() }), checks, json!(mg)))
        }
        ShatterCmd::Compose { m, base, funcs: spec, cap } => {
            let (coords, tables) = funcs(*m, spec)?;
            if coords.len() != 2 {
                return Err(CliError::usage("the base relation is binary: give exactly two functions"));
            }
            let rel = compose_relation(*m, &base_table(*m, *base), &coords, &tables)?;
            let caps = vec![*cap; rel.n()];
            let mg = max_shattered_grid(&rel, &caps)?;
            let mut checks = Vec::new();
            if *cap <= 3 && rel.cells() <= 36 {
                let side = mg.grid.as_ref().map(|_| mg.side);
                checks.push(Check::eq("side agrees with exhaustive search", format!("{:?}", oracle::max_grid_naive(&rel, &caps)), format!("{side:?}")));
            }
            let result = json!({ "relation": rel.to_json(), "max_grid": mg });
            Ok(RunReport::new(argv, json!({ "m": m, "base": format!("{base:?}").to_lowercase(), "funcs": spec }), checks, result))
        }
        ShatterCmd::Bilinear { field, form, dim, d, seed, demo } => {
            let f = input::field(field)?;
            let space = match form {
                FormArg::Identity => BilinearSpace::identity(&f, *dim)?,
                FormArg::Symplectic => BilinearSpace::symplectic(&f, *dim)?,
            };
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let c = Matrix::from_fn(*d, *d, |_, _| GfElem::new(&f, rng.random_range(0..f.order())));
            let enc = bilinear_encode(&space, &c)?;
            let mut checks = Vec::new();
            for i in 0..*d {
                for j in 0..*d {
                    checks.push(Check::eq(format!("[a_{i}, b_{j}] = C_{i}{j}"), c.get(i, j).to_string(), space.form(&enc.a[i], &enc.b[j]).to_string()));
                }
            }
            let mut result = json!({
                "c": (0..*d).map(|i| (0..*d).map(|j| c.get(i, j).to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "a": enc.a.iter().map(|v| strings(v)).collect::<Vec<_>>(),
                "b": enc.b.iter().map(|v| strings(v)).collect::<Vec<_>>(),
            });
            if *demo {
                let dm = bilinear_shatter_demo(&space, *d)?;
                checks.push(Check::eq("demo entries distinct", d * d, dm.distinct_values));
                checks.push(Check::eq("demo grid shattered", true, dm.shattered));
                result["demo"] = json!({ "values": strings(&dm.values), "witnesses": dm.witnesses, "shattered": dm.shattered });
            }
            let mut sub = field_substrate(&f);
            sub["m"] = json!(space.dim());
            Ok(RunReport::new(argv, sub, checks, result).with_seed(*seed))
        }
        ShatterCmd::Ramsey { l, m, n, budget } => {
            let (l, m, n) = (*l, *m, *n);
            let r = ramsey_partite(l, m, n, *budget)?;
            let below = r.r as usize - 1;
            let mut checks = vec![
                Check::holds("certificate below R has no monochromatic box", format!("coloring of [{below}]^{n}"), is_box_free(&r.bad_coloring, below, l, n)),
                Check::holds("box oracle agrees on the certificate", "no box", !oracle::has_mono_box_naive(&r.bad_coloring, below, l, n)),
            ];
            let cells = (r.r as usize).pow(n as u32);
            if (m as f64).powi(cells as i32) <= (1u64 << 20) as f64 {
                checks.push(Check::eq("brute force over every coloring", format!("{:?}", Some(r.r as usize)), format!("{:?}", oracle::ramsey_naive(l, m, n, r.r as usize))));
            }
            let result = json!({ "r": r.r, "nodes": r.nodes, "bad_coloring": r.bad_coloring });
            Ok(RunReport::new(argv, json!({ "l": l, "m": m, "n": n, "budget": budget }), checks, result))
        }
        ShatterCmd::Blindpair { input, relations } => {
            let h = input::opg(input)?;
            let rels: Vec<BinaryRelation> = match relations {
                Some(path) => serde_json::from_value(input::read_json(path)?)
                    .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?,
                None => Vec::new(),
            };
            let pair = find_lowarity_blind_pair(&h, &rels)?;
            let mut checks = Vec::new();
            if let Some(bp) = &pair {
                let mats: Vec<Vec<Vec<bool>>> = rels
                    .iter()
                    .map(|r| {
                        let mut m = vec![vec![false; r.size]; r.size];
                        for &(a, b) in &r.pairs {
                            m[a][b] = true;
                        }
                        m
                    })
                    .collect();
                checks.push(Check::eq("first triple is an edge", true, h.has_edge(&bp.edge)));
                checks.push(Check::eq("second triple is not an edge", false, h.has_edge(&bp.non_edge)));
                checks.push(Check::eq(
                    "binary types agree",
                    true,
                    binary_pattern(&h, &mats, &bp.edge) == binary_pattern(&h, &mats, &bp.non_edge),
                ));
            }
            Ok(RunReport::new(argv, json!({ "parts": h.parts(), "relations": rels.len() }), checks, json!({ "pair": pair })))
        }
    }
}

fn opg(argv: Vec<String>, cmd: &OpgCmd) -> Res<RunReport> {
    match cmd {
        OpgCmd::Gen { sizes, density, seed } => {
            let sizes = input::usize_list(sizes)?;
            let h = random_opg(&sizes, input::ratio(density)?, *seed)?;
            let back = Opg::from_json(&h.to_json())?;
            let checks = vec![Check::eq("JSON round trip", true, back == h)];
            let sub = json!({ "sizes": sizes, "density": density });
            Ok(RunReport::new(argv, sub, checks, h.to_json()).with_seed(*seed))
        }
        OpgCmd::Check { input, k } => {
            let h = input::opg(input)?;
            let r = check_extension(&h, *k)?;
            let mut checks = Vec::new();
            if h.num_vertices() <= 30 && *k <= 2 {
                let (demands, satisfied, between) = oracle::extension_naive(&h, *k);
                checks.push(Check::eq(
                    "(demands, satisfied, betweenness) agree with direct count",
                    format!("{:?}", (demands, satisfied, between)),
                    format!("{:?}", (r.demands, r.satisfied, r.betweenness_failures)),
                ));
            }
            Ok(RunReport::new(argv, json!({ "parts": h.parts(), "k": k }), checks, json!(r)))
        }
        OpgCmd::Copy { host, pattern, boxes } => {
            let h = input::opg(host)?;
            let pat = input::opg(pattern)?;
            let boxes = match boxes {
                Some(b) => input::boxes(b)?,
                None => h.parts().iter().map(|&s| (0, s)).collect(),
            };
            let emb = find_induced_copy(&h, &pat, &boxes)?;
            let mut checks = Vec::new();
            if let Some(e) = &emb {
                checks.push(Check::eq("copy is induced", true, is_induced_embedding(&pat, &h, e)));
            }
            if h.num_vertices() <= 24 {
                checks.push(Check::eq("agrees with exhaustive search", format!("{:?}", oracle::induced_copy_naive(&h, &pat, &boxes)), format!("{emb:?}")));
            }
            Ok(RunReport::new(argv, json!({ "host": h.parts(), "pattern": pat.parts(), "boxes": boxes }), checks, json!({ "embedding": emb })))
        }
        OpgCmd::Amalgamate { input } => {
            let v = input::read_json(input)?;
            let get = |key: &str| -> Res<&Value> { v.get(key).ok_or_else(|| CliError::usage(format!("missing field {key:?}"))) };
            let load = |key: &str| -> Res<Opg> { Opg::from_json(get(key)?).map_err(input::bad_input) };
            let (a, b, c) = (load("a")?, load("b")?, load("c")?);
            let emb = |key: &str| -> Res<Embedding> {
                serde_json::from_value(get(key)?.clone()).map_err(|e| CliError::usage(format!("{key}: {e}")))
            };
            let (into_a, into_b) = (emb("into_a")?, emb("into_b")?);
            let am = amalgamate(&a, &b, &c, &into_a, &into_b)?;
            let n = c.n();
            let via = |into: &Embedding, from: &Embedding| -> Vec<Vec<usize>> {
                (0..n).map(|p| into[p].iter().map(|&x| from[p][x]).collect()).collect()
            };
            let checks = vec![
                Check::eq("A embeds induced", true, is_induced_embedding(&a, &am.result, &am.from_a)),
                Check::eq("B embeds induced", true, is_induced_embedding(&b, &am.result, &am.from_b)),
                Check::eq("square over C commutes", true, via(&into_a, &am.from_a) == via(&into_b, &am.from_b)),
            ];
            let result = json!({ "result": am.result.to_json(), "from_a": am.from_a, "from_b": am.from_b });
            Ok(RunReport::new(argv, json!({ "a": a.parts(), "b": b.parts(), "c": c.parts() }), checks, result))
        }
    }
}

fn families(f: &Arc<GaloisField>, specs: &[String]) -> Res<Vec<ndep_core::chaincond::Family>> {
    specs.iter().map(|s| input::family(f, s)).collect()
}

fn chaincond(argv: Vec<String>, cmd: &ChainCmd) -> Res<RunReport> {
    match cmd {
        ChainCmd::Redundant { field, params, families: specs } => {
            let f = input::field(field)?;
            let fams = families(&f, specs)?;
            let fa = FamilyArray::new(&f, input::params(&f, params)?, fams.clone())?;
            let nu = find_redundant(&fa)?;
            let verified = match &nu {
                Some(nu) => verify_redundant(&fa, nu)?,
                None => false,
            };
            let naive = oracle::redundant_naive(&fa)?;
            let mut checks = vec![Check::eq("nu agrees with the element-set search", format!("{naive:?}"), format!("{nu:?}"))];
            if nu.is_some() {
                checks.push(Check::eq("nu verified from scratch", true, verified));
            }
            if let [fam] = fams.as_slice() {
                if fa.d() >= fam.base_bound(f.degree(), fa.n()) {
                    checks.push(Check::eq("a redundant index exists past the dimension bound", true, nu.is_some()));
                }
            }
            let result = json!({ "d": fa.d(), "nu": nu, "verified": verified, "families": fams.len() });
            let mut sub = field_substrate(&f);
            sub["n"] = json!(fa.n());
            sub["families"] = json!(fams);
            Ok(RunReport::new(argv, sub, checks, result))
        }
        ChainCmd::Threshold { field, n, trials, seed, max_d, families: specs } => {
            let f = input::field(field)?;
            let fams = families(&f, specs)?;
            let th = baldwin_saxl_threshold(&f, *n, &fams, *trials, *seed, *max_d)?;
            let checks = vec![Check::holds(
                "sampled threshold at most the proof bound",
                format!("d <= {:?}", th.proof.value),
                th.within_proof_bound != Some(false),
            )];
            let result = json!({
                "d": th.d,
                "trials": th.trials,
                "dimension_bound": th.proof.base,
                "proof_bound": th.proof.value,
                "proof_detail": th.proof.detail,
                "failing_below": th.failing_below.as_ref().map(|fa| fa.params().iter().map(|r| strings(r)).collect::<Vec<_>>()),
            });
            let mut sub = field_substrate(&f);
            sub["n"] = json!(n);
            sub["families"] = json!(fams);
            Ok(RunReport::new(argv, sub, checks, result).with_seed(*seed))
        }
    }
}

fn suite_cmd(argv: Vec<String>, seed: u64, only: &[u8], timings: bool) -> Res<RunReport> {
    let ids: Vec<u8> = if only.is_empty() { suite::CRITERIA.iter().map(|c| c.0).collect() } else { only.to_vec() };
    let mut checks = Vec::new();
    let mut outcomes = Vec::new();
    for id in ids {
        let out = suite::run_criterion(id, seed).map_err(|e| match e {
            Error::Invalid(msg) => CliError::usage(msg),
            e => CliError::Core(e),
        })?;
        eprintln!("{}", out.line());
        checks.push(Check {
            claim: format!("criterion {}: {}", out.id, out.name),
            expected: format!("0 failures within {} s", out.limit_s),
            computed: format!("{} failures, within limit: {}", out.failures.len(), out.within_limit),
            pass: out.pass,
        });
        let mut v = json!(out);
        if !timings {
            v.as_object_mut().expect("outcome is an object").remove("elapsed_ms");
        }
        outcomes.push(v);
    }
    Ok(RunReport::new(argv, json!({ "criteria": outcomes.len() }), checks, json!(outcomes)).with_seed(seed))
}
