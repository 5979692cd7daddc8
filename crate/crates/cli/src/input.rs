use std::path::Path;
use std::sync::Arc;

use ndep_core::algebra::parse::{parse_gf, parse_series, split_tuple};
use ndep_core::algebra::{gf_make, GaloisField, GfElem, PExponent, TruncatedSeries};
use ndep_core::chaincond::{Family, SubspaceSubgroup};
use ndep_core::opg::Opg;
use ndep_core::shatter::{Grid, WitnessedRelation};
use num_rational::Ratio;
use serde_json::Value;

use crate::args::{FieldArgs, SeriesArgs};
use crate::CliError;

pub type Res<T> = Result<T, CliError>;

/// Absolute precisions tried when a literal carries no `O(t^e)` and no `--prec` is given.
const LADDER: [i64; 5] = [32, 64, 128, 256, 512];

pub fn field(f: &FieldArgs) -> Res<Arc<GaloisField>> {
    Ok(gf_make(f.p, f.k)?)
}

pub fn is_series(s: &str) -> bool {
    s.contains('t') || s.contains('O')
}

pub fn gf_tuple(f: &Arc<GaloisField>, s: &str) -> Res<Vec<GfElem>> {
    split_tuple(s).into_iter().map(|x| Ok(parse_gf(f, x)?)).collect()
}

fn series_at(f: &Arc<GaloisField>, cap: u32, s: &str, prec: i64) -> Res<Vec<TruncatedSeries>> {
    split_tuple(s)
        .into_iter()
        .map(|x| Ok(parse_series(f, cap, x, Some(PExponent::int(prec)))?))
        .collect()
}

/// Parses the series tuples `texts` and runs `f` on them, doubling the
/// default precision when the computation fails for lack of it.
pub fn with_series<T>(
    f: &Arc<GaloisField>,
    sa: &SeriesArgs,
    default_cap: u32,
    texts: &[&str],
    mut run: impl FnMut(&[Vec<TruncatedSeries>]) -> Res<T>,
) -> Res<T> {
    let cap = sa.cap.unwrap_or(default_cap);
    let rungs: Vec<i64> = match sa.prec {
        Some(p) => vec![p],
        None => LADDER.to_vec(),
    };
    let mut last = None;
    for prec in rungs {
        let parsed: Vec<Vec<TruncatedSeries>> = texts.iter().map(|s| series_at(f, cap, s, prec)).collect::<Res<_>>()?;
        match run(&parsed) {
            Ok(v) => return Ok(v),
            Err(e @ CliError::Usage(_)) => return Err(e),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one rung"))
}

pub fn read(path: &Path) -> Res<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))
}

pub fn read_json(path: &Path) -> Res<Value> {
    serde_json::from_str(&read(path)?).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

/// JSON tensor, or the plain-text grid format when the file is not JSON.
pub fn relation(path: &Path) -> Res<WitnessedRelation> {
    let text = read(path)?;
    let rel = match serde_json::from_str::<Value>(&text) {
        Ok(v) => WitnessedRelation::from_json(&v),
        Err(_) => WitnessedRelation::from_text(&text),
    };
    rel.map_err(bad_input)
}

/// Malformed input files are usage errors.
pub fn bad_input(e: ndep_core::Error) -> CliError {
    CliError::Usage(serde_json::json!(e))
}

pub fn opg(path: &Path) -> Res<Opg> {
    Opg::from_json(&read_json(path)?).map_err(bad_input)
}

pub fn usize_list(s: &str) -> Res<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse().map_err(|_| CliError::usage(format!("not a number: {x:?}"))))
        .collect()
}

/// `0,1;2,3` with one list per part.
pub fn grid(s: &str) -> Res<Grid> {
    Ok(Grid(s.split(';').map(usize_list).collect::<Res<_>>()?))
}

/// `lo-hi` ranges separated by commas.
pub fn boxes(s: &str) -> Res<Vec<(usize, usize)>> {
    s.split(',')
        .map(|r| {
            let (lo, hi) = r.trim().split_once('-').ok_or_else(|| CliError::usage(format!("range {r:?} is not lo-hi")))?;
            let n = |x: &str| x.trim().parse::<usize>().map_err(|_| CliError::usage(format!("not a number: {x:?}")));
            Ok((n(lo)?, n(hi)?))
        })
        .collect()
}

pub fn ratio(s: &str) -> Res<Ratio<u64>> {
    let bad = || CliError::usage(format!("{s:?} is not a fraction a/b"));
    let (a, b) = s.split_once('/').unwrap_or((s, "1"));
    let a: u64 = a.trim().parse().map_err(|_| bad())?;
    let b: u64 = b.trim().parse().map_err(|_| bad())?;
    if b == 0 || a > b {
        return Err(bad());
    }
    Ok(Ratio::new(a, b))
}

pub fn params(f: &Arc<GaloisField>, s: &str) -> Res<Vec<Vec<GfElem>>> {
    s.split(';').map(|row| gf_tuple(f, row)).collect()
}

pub fn family(f: &Arc<GaloisField>, s: &str) -> Res<Family> {
    let s = s.trim();
    if s == "wp" {
        return Ok(Family::wp());
    }
    if let Some(e) = s.strip_prefix("wp^") {
        let power = e.parse().map_err(|_| CliError::usage(format!("bad power in {s:?}")))?;
        return Ok(Family::WpProduct { power });
    }
    if let Some(gens) = s.strip_prefix("fixed:") {
        let gens: Vec<GfElem> = gens.split('|').map(|x| Ok(parse_gf(f, x.trim())?)).collect::<Res<_>>()?;
        return Ok(Family::Fixed { subgroup: SubspaceSubgroup::span(f, &gens) });
    }
    Err(CliError::usage(format!("unknown family {s:?}; use wp, wp^e or fixed:x|y")))
}
