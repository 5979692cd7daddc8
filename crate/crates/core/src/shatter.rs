//! Grid shattering by finite witness families, and the finite combinatorics
//! around it.

use std::collections::BTreeMap;
use std::sync::Arc;

use base64::engine::general_purpose::STANDARD as B64;
use base64::Engine;
use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::algebra::{GaloisField, GfElem, Matrix};
use crate::error::{Error, Result};
use crate::opg::Opg;

/// Largest grid, in cells, whose traces fit a `u64`.
pub const MAX_CELLS: usize = 63;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub id: String,
    bits: Vec<u64>,
}

impl Witness {
    pub fn get(&self, flat: usize) -> bool {
        self.bits[flat / 64] >> (flat % 64) & 1 == 1
    }
}

/// One bit tensor over `parts[0] × ... × parts[n-1]` per witness, flattened
/// row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessedRelation {
    parts: Vec<usize>,
    witnesses: Vec<Witness>,
}

fn words(cells: usize) -> usize {
    cells.div_ceil(64)
}

impl WitnessedRelation {
    pub fn new(parts: Vec<usize>) -> Result<WitnessedRelation> {
        if parts.is_empty() {
            return Err(Error::Invalid("relation needs at least one parameter part".into()));
        }
        Ok(WitnessedRelation { parts, witnesses: Vec::new() })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.len()
    }

    pub fn cells(&self) -> usize {
        self.parts.iter().product()
    }

    pub fn witnesses(&self) -> &[Witness] {
        &self.witnesses
    }

    pub fn flat(&self, idx: &[usize]) -> usize {
        idx.iter().zip(&self.parts).fold(0, |acc, (&i, &d)| acc * d + i)
    }

    pub fn push(&mut self, id: impl Into<String>, bits: &[bool]) -> Result<()> {
        if bits.len() != self.cells() {
            return Err(Error::Invalid(format!("tensor has {} bits, expected {}", bits.len(), self.cells())));
        }
        let mut w = vec![0u64; words(bits.len())];
        for (i, _) in bits.iter().enumerate().filter(|(_, b)| **b) {
            w[i / 64] |= 1 << (i % 64);
        }
        self.witnesses.push(Witness { id: id.into(), bits: w });
        Ok(())
    }

    /// Adds a witness whose bit at each index tuple is `f(tuple)`.
    pub fn push_fn(&mut self, id: impl Into<String>, mut f: impl FnMut(&[usize]) -> bool) -> Result<()> {
        let bits: Vec<bool> = self.parts.iter().map(|&d| 0..d).multi_cartesian_product().map(|t| f(&t)).collect();
        self.push(id, &bits)
    }

    pub fn holds(&self, w: usize, idx: &[usize]) -> bool {
        self.witnesses[w].get(self.flat(idx))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let cells = self.cells();
        let ws: Vec<serde_json::Value> = self
            .witnesses
            .iter()
            .map(|w| {
                let bytes: Vec<u8> = (0..cells.div_ceil(8))
                    .map(|b| (0..8).filter(|i| b * 8 + i < cells && w.get(b * 8 + i)).fold(0u8, |acc, i| acc | 1 << i))
                    .collect();
                serde_json::json!({"id": w.id, "bits": B64.encode(bytes)})
            })
            .collect();
        serde_json::json!({"parts": self.parts, "witnesses": ws})
    }

    pub fn from_json(v: &serde_json::Value) -> Result<WitnessedRelation> {
        #[derive(Deserialize)]
        struct RawW {
            id: serde_json::Value,
            bits: String,
        }
        #[derive(Deserialize)]
        struct Raw {
            parts: Vec<usize>,
            witnesses: Vec<RawW>,
        }
        let raw: Raw = serde_json::from_value(v.clone()).map_err(|e| Error::Invalid(e.to_string()))?;
        let mut rel = WitnessedRelation::new(raw.parts)?;
        let cells = rel.cells();
        for w in raw.witnesses {
            let bytes = B64.decode(w.bits.as_bytes()).map_err(|e| Error::Invalid(format!("base64: {e}")))?;
            if bytes.len() != cells.div_ceil(8) {
                return Err(Error::Invalid(format!("witness has {} bytes, expected {}", bytes.len(), cells.div_ceil(8))));
            }
            let bits: Vec<bool> = (0..cells).map(|i| bytes[i / 8] >> (i % 8) & 1 == 1).collect();
            let id = match w.id {
                serde_json::Value::String(s) => s,
                other => other.to_string(),
            };
            rel.push(id, &bits)?;
        }
        Ok(rel)
    }

    /// `parts d1 d2 ...` on the first line, then `id: 0101...` per witness.
    /// Blank lines and lines starting with `#` are skipped; whitespace inside
    /// the bit string is ignored.
    pub fn from_text(s: &str) -> Result<WitnessedRelation> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let head = lines.next().ok_or_else(|| Error::Invalid("empty input".into()))?;
        let mut words = head.split_whitespace();
        if words.next() != Some("parts") {
            return Err(Error::Invalid("first line must be `parts d1 d2 ...`".into()));
        }
        let parts = words
            .map(|w| w.parse::<usize>().map_err(|e| Error::Invalid(format!("part size {w}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        let mut rel = WitnessedRelation::new(parts)?;
        for line in lines {
            let (id, bits) = line.split_once(':').ok_or_else(|| Error::Invalid(format!("missing `:` in {line}")))?;
            let bits = bits
                .chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    other => Err(Error::Invalid(format!("bad bit {other:?}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            rel.push(id.trim(), &bits)?;
        }
        Ok(rel)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("parts {}\n", self.parts.iter().join(" "));
        for w in &self.witnesses {
            let bits: String = (0..self.cells()).map(|i| if w.get(i) { '1' } else { '0' }).collect();
            out.push_str(&format!("{}: {bits}\n", w.id));
        }
        out
    }
}

/// One chosen index set per part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid(pub Vec<Vec<usize>>);

impl Grid {
    pub fn cells(&self) -> usize {
        self.0.iter().map(Vec::len).product()
    }

    /// Flat indices of the grid cells, row-major in the listed order.
    pub fn flat_cells(&self, rel: &WitnessedRelation) -> Vec<usize> {
        self.0.iter().map(|s| s.iter().copied()).multi_cartesian_product().map(|t| rel.flat(&t)).collect()
    }

    pub fn validate(&self, rel: &WitnessedRelation) -> Result<()> {
        if self.0.len() != rel.n() {
            return Err(Error::Invalid(format!("grid has {} parts, relation {}", self.0.len(), rel.n())));
        }
        for (i, s) in self.0.iter().enumerate() {
            if let Some(&bad) = s.iter().find(|&&x| x >= rel.parts[i]) {
                return Err(Error::Invalid(format!("index {bad} outside part {i}")));
            }
            if !s.iter().all_unique() {
                return Err(Error::Invalid(format!("repeated index in part {i}")));
            }
        }
        Ok(())
    }
}

/// Bitmask trace of witness `w` on the given flat cells.
pub fn trace(w: &Witness, cells: &[usize]) -> u64 {
    cells.iter().enumerate().fold(0, |acc, (i, &c)| acc | (u64::from(w.get(c)) << i))
}

/// Every subset of the grid's cells is the trace of some witness.
/// An empty witness set shatters nothing, not even the empty grid.
pub fn shatters(rel: &WitnessedRelation, g: &Grid) -> Result<bool> {
    g.validate(rel)?;
    Ok(shatters_cells(rel, &g.flat_cells(rel)))
}

fn shatters_cells(rel: &WitnessedRelation, cells: &[usize]) -> bool {
    let c = cells.len();
    if rel.witnesses.is_empty() || c > MAX_CELLS {
        return false;
    }
    let need = 1u64 << c;
    if (rel.witnesses.len() as u64) < need {
        return false;
    }
    if c <= 20 {
        let mut seen = vec![false; need as usize];
        let mut count = 0;
        for w in &rel.witnesses {
            let t = trace(w, cells) as usize;
            if !seen[t] {
                seen[t] = true;
                count += 1;
                if count == need {
                    return true;
                }
            }
        }
        false
    } else {
        let mut traces: Vec<u64> = rel.witnesses.iter().map(|w| trace(w, cells)).collect();
        traces.sort_unstable();
        traces.dedup();
        traces.len() as u64 == need
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaxGrid {
    pub side: usize,
    /// Least shattered grid of that side; `None` when nothing is shattered.
    pub grid: Option<Grid>,
    pub grids_checked: u64,
}

/// Largest `d` with a shattered `d × ... × d` grid, `d ≤ caps[i]` for each
/// part. Sub-grids of shattered grids are shattered, so the search stops at
/// the first side with no shattered grid.
pub fn max_shattered_grid(rel: &WitnessedRelation, caps: &[usize]) -> Result<MaxGrid> {
    if caps.len() != rel.n() {
        return Err(Error::Invalid(format!("{} caps for {} parts", caps.len(), rel.n())));
    }
    let n = rel.n();
    let limit = caps.iter().zip(&rel.parts).map(|(&c, &d)| c.min(d)).min().unwrap_or(0);
    let empty = Grid(vec![Vec::new(); n]);
    let mut best = MaxGrid { side: 0, grid: shatters(rel, &empty)?.then_some(empty), grids_checked: 1 };
    if best.grid.is_none() {
        return Ok(best);
    }
    for d in 1..=limit {
        let cells = d.checked_pow(n as u32).unwrap_or(usize::MAX);
        if cells > MAX_CELLS || (rel.witnesses.len() as u128) < 1u128 << cells {
            break;
        }
        let mut found = None;
        for sets in rel.parts.iter().map(|&s| (0..s).combinations(d)).multi_cartesian_product() {
            best.grids_checked += 1;
            let g = Grid(sets);
            if shatters_cells(rel, &g.flat_cells(rel)) {
                found = Some(g);
                break;
            }
        }
        match found {
            Some(g) => {
                best.side = d;
                best.grid = Some(g);
            }
            None => break,
        }
    }
    Ok(best)
}

/// `ψ(y_1; y_2, y_3) = R(f_1(y_{s_1}, y_{t_1}), ..., f_d(y_{s_d}, y_{t_d}))`
/// over a domain of size `m`, with `y_1` as the witness. `base` is `R` on
/// `[m]^d` flattened row-major; `tables[i]` is `f_i` on `[m]^2`.
pub fn compose_relation(m: usize, base: &[bool], coords: &[(u8, u8)], tables: &[Vec<usize>]) -> Result<WitnessedRelation> {
    let d = coords.len();
    if tables.len() != d {
        return Err(Error::Invalid(format!("{d} coordinates but {} functions", tables.len())));
    }
    let expected = m.checked_pow(d as u32).ok_or_else(|| Error::Invalid("base relation too large".into()))?;
    if base.len() != expected {
        return Err(Error::Invalid(format!("base relation has {} entries, expected {m}^{d}", base.len())));
    }
    for &(s, t) in coords {
        if !matches!((s, t), (1, 2) | (1, 3) | (2, 3)) {
            return Err(Error::Invalid(format!("coordinate pair ({s},{t}) not among (1,2), (1,3), (2,3)")));
        }
    }
    for (i, tab) in tables.iter().enumerate() {
        if tab.len() != m * m || tab.iter().any(|&v| v >= m) {
            return Err(Error::Invalid(format!("function {} is not a total table on [{m}]^2", i + 1)));
        }
    }
    let mut rel = WitnessedRelation::new(vec![m, m])?;
    for y1 in 0..m {
        rel.push_fn(y1.to_string(), |yz| {
            let ys = [y1, yz[0], yz[1]];
            let idx = coords.iter().zip(tables).fold(0, |acc, (&(s, t), tab)| {
                acc * m + tab[ys[s as usize - 1] * m + ys[t as usize - 1]]
            });
            base[idx]
        })?;
    }
    Ok(rel)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormKind {
    Symmetric,
    Alternating,
}

/// `[x, y] = xᵀ G y` on `K^m`.
#[derive(Debug, Clone, Serialize)]
pub struct BilinearSpace {
    #[serde(skip)]
    field: Arc<GaloisField>,
    m: usize,
    kind: FormKind,
    gram: Matrix<GfElem>,
}

impl BilinearSpace {
    pub fn new(gram: Matrix<GfElem>, kind: FormKind) -> Result<BilinearSpace> {
        let m = gram.rows();
        if gram.cols() != m {
            return Err(Error::Invalid("Gram matrix is not square".into()));
        }
        let field = gram.get(0, 0).field().clone();
        let ok = match kind {
            FormKind::Symmetric => gram == gram.transpose(),
            FormKind::Alternating => {
                gram.transpose() == gram.map(|x| -x.clone()) && (0..m).all(|i| gram.get(i, i).raw() == 0)
            }
        };
        if !ok {
            return Err(Error::Invalid(format!("Gram matrix is not {kind:?}")));
        }
        if gram.det()?.raw() == 0 {
            return Err(Error::Invalid("degenerate Gram matrix".into()));
        }
        Ok(BilinearSpace { field, m, kind, gram })
    }

    pub fn identity(field: &Arc<GaloisField>, m: usize) -> Result<BilinearSpace> {
        BilinearSpace::new(Matrix::identity(m, &GfElem::one(field)), FormKind::Symmetric)
    }

    /// `[[0, I], [-I, 0]]` on `K^{2h}`.
    pub fn symplectic(field: &Arc<GaloisField>, h: usize) -> Result<BilinearSpace> {
        let one = GfElem::one(field);
        let gram = Matrix::from_fn(2 * h, 2 * h, |i, j| {
            if j == i + h {
                one.clone()
            } else if i == j + h {
                -one.clone()
            } else {
                GfElem::zero(field)
            }
        });
        BilinearSpace::new(gram, FormKind::Alternating)
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    pub fn form(&self, x: &[GfElem], y: &[GfElem]) -> GfElem {
        let gy = self.gram.mul_vec(y);
        x.iter().zip(&gy).fold(GfElem::zero(&self.field), |acc, (a, b)| acc + a.clone() * b.clone())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Encoding {
    pub a: Vec<Vec<GfElem>>,
    pub b: Vec<Vec<GfElem>>,
}

/// `a_i = e_i` and `b_j = G^{-1} (C_{0j}, ..., C_{d-1,j}, 0, ..., 0)`, so
/// that `[a_i, b_j] = C_{ij}`.
pub fn bilinear_encode(space: &BilinearSpace, c: &Matrix<GfElem>) -> Result<Encoding> {
    let d = c.rows();
    if c.cols() != d {
        return Err(Error::Invalid("C must be square".into()));
    }
    if d > space.m {
        return Err(Error::Precondition(format!("d = {d} exceeds m = {}", space.m)));
    }
    let zero = GfElem::zero(&space.field);
    let one = GfElem::one(&space.field);
    let ginv = space.gram.inverse()?.ok_or_else(|| Error::Invalid("degenerate Gram matrix".into()))?;
    let a: Vec<Vec<GfElem>> =
        (0..d).map(|i| (0..space.m).map(|k| if k == i { one.clone() } else { zero.clone() }).collect()).collect();
    let b: Vec<Vec<GfElem>> = (0..d)
        .map(|j| {
            let target: Vec<GfElem> = (0..space.m).map(|i| if i < d { c.get(i, j).clone() } else { zero.clone() }).collect();
            ginv.mul_vec(&target)
        })
        .collect();
    for i in 0..d {
        for j in 0..d {
            if space.form(&a[i], &b[j]) != *c.get(i, j) {
                return Err(Error::Postcondition(format!("[a_{i}, b_{j}] differs from C")));
            }
        }
    }
    Ok(Encoding { a, b })
}

#[derive(Debug, Clone, Serialize)]
pub struct BilinearDemo {
    pub d: usize,
    pub q: u64,
    pub values: Vec<GfElem>,
    pub distinct_values: usize,
    pub witnesses: usize,
    pub shattered: bool,
}

/// Encodes `C` with `d²` distinct entries and checks that the witnesses
/// `{(y, z) : [y, z] ∈ S}`, `S` ranging over subsets of the entry values,
/// shatter the `d × d` grid of encoded vectors. Other subsets of `K` cut the
/// grid the same way as their intersection with the entry values.
pub fn bilinear_shatter_demo(space: &BilinearSpace, d: usize) -> Result<BilinearDemo> {
    let q = space.field.order();
    if (d * d) as u64 > q {
        return Err(Error::Precondition(format!("{} entries need |K| >= {}, have {q}", d * d, d * d)));
    }
    if d > space.m {
        return Err(Error::Precondition(format!("d = {d} exceeds m = {}", space.m)));
    }
    if d * d > 20 {
        return Err(Error::Precondition(format!("d = {d} gives more than 2^20 witnesses")));
    }
    let c = Matrix::from_fn(d, d, |i, j| GfElem::new(&space.field, (i * d + j) as u64));
    let enc = bilinear_encode(space, &c)?;
    let values: Vec<GfElem> = (0..d * d).map(|k| space.form(&enc.a[k / d], &enc.b[k % d])).collect();
    let distinct_values = values.iter().unique().count();
    let mut rel = WitnessedRelation::new(vec![d, d])?;
    for s in 0u64..1 << (d * d) {
        let member = |v: &GfElem| values.iter().position(|x| x == v).is_some_and(|k| s >> k & 1 == 1);
        rel.push_fn(format!("{s:b}"), |ij| member(&space.form(&enc.a[ij[0]], &enc.b[ij[1]])))?;
    }
    let grid = Grid(vec![(0..d).collect(), (0..d).collect()]);
    let shattered = shatters(&rel, &grid)?;
    Ok(BilinearDemo { d, q, values, distinct_values, witnesses: rel.witnesses.len(), shattered })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RamseyResult {
    pub r: u64,
    /// Coloring of `(r-1)^n`, row-major, with no monochromatic `l`-box.
    pub bad_coloring: Vec<u8>,
    pub nodes: u64,
}

/// `f: R^n → m`, flattened row-major, has no `s_0 × ... × s_{n-1}` with
/// `|s_i| = l` on which it is constant.
pub fn is_box_free(coloring: &[u8], r: usize, l: usize, n: usize) -> bool {
    if l > r {
        return true;
    }
    if l == 0 {
        return false;
    }
    let subsets: Vec<Vec<usize>> = (0..r).combinations(l).collect();
    for choice in (0..n).map(|_| subsets.iter()).multi_cartesian_product() {
        let mut cells = choice.iter().map(|s| s.iter().copied()).multi_cartesian_product();
        let first = cells.next().map(|c| coloring[flat_r(&c, r)]);
        if cells.all(|c| Some(coloring[flat_r(&c, r)]) == first) {
            return false;
        }
    }
    true
}

fn flat_r(idx: &[usize], r: usize) -> usize {
    idx.iter().fold(0, |acc, &i| acc * r + i)
}

struct BoxSearch {
    r: usize,
    l: usize,
    n: usize,
    m: usize,
    cells: Vec<Vec<usize>>,
    coloring: Vec<u8>,
    counts: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl BoxSearch {
    // A box whose lexicographically largest cell is `x` has x_i = max s_i in
    // every coordinate; all its other cells are already colored.
    fn closes_box(&self, x: &[usize], color: u8) -> bool {
        let l = self.l;
        if l == 1 {
            return true;
        }
        let lower: Vec<Vec<Vec<usize>>> = x.iter().map(|&xi| (0..xi).combinations(l - 1).collect()).collect();
        if lower.iter().any(Vec::is_empty) {
            return false;
        }
        for choice in lower.iter().map(|c| c.iter()).multi_cartesian_product() {
            let sets: Vec<Vec<usize>> = choice.iter().zip(x).map(|(s, &xi)| {
                let mut s = (*s).clone();
                s.push(xi);
                s
            }).collect();
            let mono = sets
                .iter()
                .map(|s| s.iter().copied())
                .multi_cartesian_product()
                .filter(|c| c.as_slice() != x)
                .all(|c| self.coloring[flat_r(&c, self.r)] == color);
            if mono {
                return true;
            }
        }
        false
    }

    fn run(&mut self, pos: usize, used: u8) -> Result<bool> {
        if pos == self.cells.len() {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded { budget: self.budget, lower: 0, upper: None });
        }
        // in one dimension each color holds at most l - 1 cells
        if self.n == 1 {
            let room: usize = self.counts.iter().map(|&c| self.l - 1 - c.min(self.l - 1)).sum();
            if room < self.cells.len() - pos {
                return Ok(false);
            }
        }
        let x = self.cells[pos].clone();
        let top = (used as usize + 1).min(self.m);
        for color in 0..top as u8 {
            if self.closes_box(&x, color) {
                continue;
            }
            self.coloring[pos] = color;
            self.counts[color as usize] += 1;
            let next_used = used.max(color + 1);
            let found = self.run(pos + 1, next_used)?;
            self.counts[color as usize] -= 1;
            if found {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Searches for a coloring of `r^n` with `m` colors and no monochromatic
/// `l`-box. Colors are taken up to renaming: each cell uses at most one
/// color beyond those already used.
pub fn find_box_free_coloring(r: usize, l: usize, m: usize, n: usize, budget: u64) -> Result<(Option<Vec<u8>>, u64)> {
    let cells: Vec<Vec<usize>> = (0..n).map(|_| 0..r).multi_cartesian_product().collect();
    if l > r {
        return Ok((Some(vec![0; cells.len()]), 0));
    }
    let mut s = BoxSearch { r, l, n, m, coloring: vec![0; cells.len()], cells, counts: vec![0; m], nodes: 0, budget };
    let found = s.run(0, 0)?;
    Ok((found.then_some(s.coloring), s.nodes))
}

/// Least `R` such that every `f: R^n → m` is constant on some product of
/// `l`-sets, with a box-free coloring of `(R-1)^n` as certificate.
pub fn ramsey_partite(l: usize, m: usize, n: usize, budget: u64) -> Result<RamseyResult> {
    if l == 0 || m == 0 || n == 0 {
        return Err(Error::Precondition("l, m and n must be positive".into()));
    }
    let mut r = l;
    let mut bad = vec![0u8; (l - 1).pow(n as u32)];
    let mut nodes = 0u64;
    loop {
        let left = budget.saturating_sub(nodes);
        match find_box_free_coloring(r, l, m, n, left) {
            Ok((Some(c), used)) => {
                nodes += used;
                bad = c;
                r += 1;
            }
            Ok((None, used)) => {
                nodes += used;
                return Ok(RamseyResult { r: r as u64, bad_coloring: bad, nodes });
            }
            Err(Error::BudgetExceeded { .. }) => {
                let upper = (n == 1).then(|| (m * (l - 1) + 1) as u64);
                return Err(Error::BudgetExceeded { budget, lower: r as u64, upper });
            }
            Err(e) => return Err(e),
        }
    }
}

/// A binary relation on the global vertex order of a hypergraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryRelation {
    pub size: usize,
    pub pairs: Vec<(usize, usize)>,
}

impl BinaryRelation {
    pub fn complete(size: usize) -> BinaryRelation {
        BinaryRelation { size, pairs: (0..size).cartesian_product(0..size).collect() }
    }

    fn matrix(&self) -> Vec<Vec<bool>> {
        let mut m = vec![vec![false; self.size]; self.size];
        for &(a, b) in &self.pairs {
            m[a][b] = true;
        }
        m
    }
}

/// Atomic pattern of a triple over the binary relations. Part membership,
/// order and equality are the same for every triple with one vertex per
/// part, so only the relation bits vary.
pub fn binary_pattern(h: &Opg, rels: &[Vec<Vec<bool>>], t: &[usize]) -> Vec<bool> {
    let g: Vec<usize> = t.iter().enumerate().map(|(i, &v)| h.global(i, v)).collect();
    rels.iter().flat_map(|m| g.iter().cartesian_product(&g).map(move |(&x, &y)| m[x][y])).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlindPair {
    pub edge: Vec<usize>,
    pub non_edge: Vec<usize>,
}

/// Lexicographically least pair `(g, h)` of triples with equal binary
/// patterns where `g` is an edge and `h` is not.
pub fn find_lowarity_blind_pair(h: &Opg, relations: &[BinaryRelation]) -> Result<Option<BlindPair>> {
    if h.n() != 3 {
        return Err(Error::Precondition(format!("need a 3-partite hypergraph, got n = {}", h.n())));
    }
    let total = h.num_vertices();
    if let Some(r) = relations.iter().find(|r| r.size != total || r.pairs.iter().any(|&(a, b)| a >= total || b >= total)) {
        return Err(Error::Invalid(format!("relation on {} vertices, hypergraph has {total}", r.size)));
    }
    let mats: Vec<Vec<Vec<bool>>> = relations.iter().map(BinaryRelation::matrix).collect();
    let mut first: BTreeMap<Vec<bool>, (Option<Vec<usize>>, Option<Vec<usize>>)> = BTreeMap::new();
    for t in h.tuples() {
        let slot = first.entry(binary_pattern(h, &mats, &t)).or_default();
        let target = if h.has_edge(&t) { &mut slot.0 } else { &mut slot.1 };
        if target.is_none() {
            *target = Some(t);
        }
    }
    let best = first
        .into_values()
        .filter_map(|(e, ne)| Some((e?, ne?)))
        .min()
        .map(|(edge, non_edge)| BlindPair { edge, non_edge });
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gf_make;
    use crate::opg::random_opg;
    use num_rational::Ratio;

    fn equality(k: usize) -> WitnessedRelation {
        let mut rel = WitnessedRelation::new(vec![k]).unwrap();
        for x in 0..k {
            rel.push_fn(x.to_string(), |y| y[0] == x).unwrap();
        }
        rel
    }

    fn powerset(d: usize) -> WitnessedRelation {
        let mut rel = WitnessedRelation::new(vec![d, d]).unwrap();
        for s in 0u64..1 << (d * d) {
            rel.push_fn(s.to_string(), |ij| s >> (ij[0] * d + ij[1]) & 1 == 1).unwrap();
        }
        rel
    }

    #[test]
    fn shattering_examples() {
        let eq = equality(5);
        assert!(!shatters(&eq, &Grid(vec![vec![0, 1]])).unwrap());
        assert!(shatters(&eq, &Grid(vec![vec![3]])).unwrap());
        assert!(shatters(&eq, &Grid(vec![vec![]])).unwrap());
        let none = WitnessedRelation::new(vec![3]).unwrap();
        assert!(!shatters(&none, &Grid(vec![vec![]])).unwrap());
        assert!(shatters(&powerset(2), &Grid(vec![vec![0, 1], vec![0, 1]])).unwrap());
    }

    #[test]
    fn max_grid_examples() {
        assert_eq!(max_shattered_grid(&equality(5), &[5]).unwrap().side, 1);
        assert_eq!(max_shattered_grid(&powerset(3), &[3, 3]).unwrap().side, 3);
    }

    #[test]
    fn formats_round_trip() {
        let rel = powerset(2);
        assert_eq!(WitnessedRelation::from_json(&rel.to_json()).unwrap(), rel);
        assert_eq!(WitnessedRelation::from_text(&rel.to_text()).unwrap(), rel);
    }

    #[test]
    fn composition_examples() {
        let m = 4;
        let in_s = [true, false, true, false];
        let proj: Vec<usize> = (0..m * m).map(|k| k / m).collect();
        let rel = compose_relation(m, &in_s, &[(2, 3)], &[proj]).unwrap();
        assert_eq!(max_shattered_grid(&rel, &[m, m]).unwrap().side, 0);
        let zero = vec![0usize; m * m];
        let rel = compose_relation(m, &in_s, &[(1, 2)], &[zero.clone()]).unwrap();
        assert_eq!(max_shattered_grid(&rel, &[m, m]).unwrap().side, 0);
        assert!(compose_relation(m, &in_s, &[(1, 2)], &[zero.clone(), zero]).is_err());
    }

    #[test]
    fn bilinear_examples() {
        let f = gf_make(3, 1).unwrap();
        let space = BilinearSpace::identity(&f, 3).unwrap();
        let c = Matrix::from_fn(2, 2, |i, j| GfElem::new(&f, (i + 2 * j) as u64 % 3));
        let enc = bilinear_encode(&space, &c).unwrap();
        assert_eq!(enc.b[1][..2], c.column(1)[..]);
        let big = Matrix::from_fn(4, 4, |_, _| GfElem::one(&f));
        assert!(bilinear_encode(&space, &big).is_err());
        let f16 = gf_make(2, 4).unwrap();
        let demo = bilinear_shatter_demo(&BilinearSpace::identity(&f16, 3).unwrap(), 3).unwrap();
        assert!(demo.shattered);
        assert_eq!(demo.distinct_values, 9);
        let f4 = gf_make(2, 2).unwrap();
        assert!(bilinear_shatter_demo(&BilinearSpace::identity(&f4, 3).unwrap(), 3).is_err());
        assert!(bilinear_shatter_demo(&BilinearSpace::identity(&f4, 3).unwrap(), 1).unwrap().shattered);
    }

    #[test]
    fn ramsey_small() {
        assert_eq!(ramsey_partite(1, 3, 2, 1000).unwrap().r, 1);
        assert_eq!(ramsey_partite(3, 1, 2, 1000).unwrap().r, 3);
        let r = ramsey_partite(2, 2, 1, 1000).unwrap();
        assert_eq!(r.r, 3);
        assert!(is_box_free(&r.bad_coloring, 2, 2, 1));
    }

    #[test]
    fn blind_pairs() {
        let h = random_opg(&[3, 3, 3], Ratio::new(1, 2), 5).unwrap();
        let all = BinaryRelation::complete(h.num_vertices());
        let pair = find_lowarity_blind_pair(&h, &[all]).unwrap().unwrap();
        assert!(h.has_edge(&pair.edge) && !h.has_edge(&pair.non_edge));
        let full = Opg::complete(vec![2, 2, 2]).unwrap();
        assert_eq!(find_lowarity_blind_pair(&full, &[]).unwrap(), None);
    }
}
