//! Finite ordered n-partite hypergraphs.
//!
//! Vertices are addressed as `(part, index)`; the global order puts part
//! `i` before part `i + 1` and orders each part by index. An edge takes one
//! vertex per part and is stored as the tuple of local indices.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_rational::Ratio;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Opg {
    n: usize,
    parts: Vec<usize>,
    edges: BTreeSet<Vec<usize>>,
}

impl Opg {
    pub fn new(parts: Vec<usize>, edges: impl IntoIterator<Item = Vec<usize>>) -> Result<Opg> {
        if parts.is_empty() {
            return Err(Error::Invalid("hypergraph needs at least one part".into()));
        }
        let n = parts.len();
        let edges: BTreeSet<Vec<usize>> = edges.into_iter().collect();
        for e in &edges {
            if e.len() != n || e.iter().zip(&parts).any(|(&v, &s)| v >= s) {
                return Err(Error::Invalid(format!("edge {e:?} does not take one vertex from each of {parts:?}")));
            }
        }
        Ok(Opg { n, parts, edges })
    }

    pub fn empty(parts: Vec<usize>) -> Result<Opg> {
        Opg::new(parts, [])
    }

    pub fn complete(parts: Vec<usize>) -> Result<Opg> {
        let all: Vec<Vec<usize>> = parts.iter().map(|&s| 0..s).multi_cartesian_product().collect();
        Opg::new(parts, all)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn edges(&self) -> &BTreeSet<Vec<usize>> {
        &self.edges
    }

    pub fn has_edge(&self, t: &[usize]) -> bool {
        self.edges.contains(t)
    }

    pub fn num_vertices(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Position of `(part, index)` in the global order.
    pub fn global(&self, part: usize, index: usize) -> usize {
        self.parts[..part].iter().sum::<usize>() + index
    }

    /// All tuples with one vertex per part, in lexicographic order.
    pub fn tuples(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        self.parts.iter().map(|&s| 0..s).multi_cartesian_product()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("hypergraph json")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Opg> {
        #[derive(Deserialize)]
        struct Raw {
            n: Option<usize>,
            parts: Vec<usize>,
            edges: Vec<Vec<usize>>,
        }
        let raw: Raw = serde_json::from_value(v.clone()).map_err(|e| Error::Invalid(e.to_string()))?;
        if raw.n.is_some_and(|n| n != raw.parts.len()) {
            return Err(Error::Invalid("n disagrees with the number of parts".into()));
        }
        Opg::new(raw.parts, raw.edges)
    }
}

/// Each tuple becomes an edge independently with probability `density`,
/// drawing from ChaCha8 seeded with `seed`, tuples in lexicographic order.
pub fn random_opg(sizes: &[usize], density: Ratio<u64>, seed: u64) -> Result<Opg> {
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(Error::Precondition("part sizes must be positive".into()));
    }
    if density > Ratio::from_integer(1) {
        return Err(Error::Precondition(format!("density {density} exceeds 1")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (num, den) = (*density.numer(), *density.denom());
    let edges: Vec<Vec<usize>> = sizes
        .iter()
        .map(|&s| 0..s)
        .multi_cartesian_product()
        .filter(|_| rng.random_range(0..den) < num)
        .collect();
    Opg::new(sizes.to_vec(), edges)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FailureKind {
    /// No vertex strictly between `b0` and `b1`.
    Betweenness,
    /// Vertices in between exist, none with the demanded links.
    Linkage,
}

/// A cross-tuple lists one vertex for every part except `part`, in part order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtensionFailure {
    pub part: usize,
    pub a0: Vec<Vec<usize>>,
    pub a1: Vec<Vec<usize>>,
    pub b0: usize,
    pub b1: usize,
    pub kind: FailureKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtensionReport {
    pub k: usize,
    pub demands: usize,
    pub satisfied: usize,
    pub betweenness_failures: usize,
    pub linkage_failures: usize,
    pub failures: Vec<ExtensionFailure>,
}

pub(crate) fn insert_at(cross: &[usize], part: usize, b: usize) -> Vec<usize> {
    let mut t = cross.to_vec();
    t.insert(part, b);
    t
}

/// Every disjoint `(A_0, A_1)` with `|A_0| + |A_1| ≤ k`, in a fixed order:
/// by size, then by combination, then by the 0/1 assignment.
pub(crate) fn demands(cross: &[Vec<usize>], k: usize) -> Vec<(Vec<Vec<usize>>, Vec<Vec<usize>>)> {
    let mut out = Vec::new();
    for s in 0..=k.min(cross.len()) {
        for chosen in cross.iter().combinations(s) {
            for mask in 0u64..1 << s {
                let (mut a0, mut a1) = (Vec::new(), Vec::new());
                for (i, t) in chosen.iter().enumerate() {
                    if mask >> i & 1 == 0 { a0.push((*t).clone()) } else { a1.push((*t).clone()) }
                }
                out.push((a0, a1));
            }
        }
    }
    out
}

/// Graded check of the extension axioms up to `k` demanded links.
pub fn check_extension(h: &Opg, k: usize) -> Result<ExtensionReport> {
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    let mut report = ExtensionReport {
        k,
        demands: 0,
        satisfied: 0,
        betweenness_failures: 0,
        linkage_failures: 0,
        failures: Vec::new(),
    };
    for part in 0..h.n {
        let others: Vec<usize> = (0..h.n).filter(|&i| i != part).map(|i| h.parts[i]).collect();
        let cross: Vec<Vec<usize>> = others.iter().map(|&s| 0..s).multi_cartesian_product().collect();
        let size = h.parts[part];
        // linked[b] lists, per cross-tuple, whether (b, tuple) is an edge
        let linked: Vec<Vec<bool>> =
            (0..size).map(|b| cross.iter().map(|c| h.has_edge(&insert_at(c, part, b))).collect()).collect();
        let position = |c: &Vec<usize>| cross.binary_search(c).expect("cross-tuple");
        for (a0, a1) in demands(&cross, k) {
            let i0: Vec<usize> = a0.iter().map(position).collect();
            let i1: Vec<usize> = a1.iter().map(position).collect();
            for [b0, b1] in (0..size).array_combinations() {
                report.demands += 1;
                let kind = if b1 == b0 + 1 {
                    Some(FailureKind::Betweenness)
                } else if (b0 + 1..b1).any(|b| i0.iter().all(|&i| linked[b][i]) && i1.iter().all(|&i| !linked[b][i])) {
                    None
                } else {
                    Some(FailureKind::Linkage)
                };
                match kind {
                    None => report.satisfied += 1,
                    Some(kind) => {
                        match kind {
                            FailureKind::Betweenness => report.betweenness_failures += 1,
                            FailureKind::Linkage => report.linkage_failures += 1,
                        }
                        report.failures.push(ExtensionFailure { part, a0: a0.clone(), a1: a1.clone(), b0, b1, kind });
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Per part, the increasing map from pattern indices to host indices.
pub type Embedding = Vec<Vec<usize>>;

pub fn image(emb: &Embedding, t: &[usize]) -> Vec<usize> {
    t.iter().enumerate().map(|(i, &v)| emb[i][v]).collect()
}

/// Order- and part-preserving, injective, and edges agree both ways.
pub fn is_induced_embedding(src: &Opg, dst: &Opg, emb: &Embedding) -> bool {
    if src.n != dst.n || emb.len() != src.n {
        return false;
    }
    for i in 0..src.n {
        if emb[i].len() != src.parts[i] || emb[i].iter().any(|&v| v >= dst.parts[i]) {
            return false;
        }
        if !emb[i].windows(2).all(|w| w[0] < w[1]) {
            return false;
        }
    }
    src.tuples().all(|t| src.has_edge(&t) == dst.has_edge(&image(emb, &t)))
}

/// Least (lexicographically, part by part) induced copy of `pattern` whose
/// part `i` lies in the half-open interval `boxes[i]`.
pub fn find_induced_copy(h: &Opg, pattern: &Opg, boxes: &[(usize, usize)]) -> Result<Option<Embedding>> {
    let n = h.n;
    if pattern.n != n || boxes.len() != n {
        return Err(Error::Invalid("pattern, host and box disagree on the number of parts".into()));
    }
    for i in 0..n {
        let (lo, hi) = boxes[i];
        if lo > hi || hi > h.parts[i] {
            return Err(Error::Invalid(format!("box {:?} outside part {i} of size {}", boxes[i], h.parts[i])));
        }
        if pattern.parts[i] > hi - lo {
            return Ok(None);
        }
    }
    let mut emb: Embedding = vec![Vec::new(); n];
    Ok(search_copy(h, pattern, boxes, 0, &mut emb).then_some(emb))
}

// Fills parts 0..n-1 by combinations; the last part vertex by vertex,
// checking every tuple that the new vertex completes.
fn search_copy(h: &Opg, pattern: &Opg, boxes: &[(usize, usize)], part: usize, emb: &mut Embedding) -> bool {
    let n = h.n;
    let (lo, hi) = boxes[part];
    if part + 1 < n {
        for combo in (lo..hi).combinations(pattern.parts[part]) {
            emb[part] = combo;
            if search_copy(h, pattern, boxes, part + 1, emb) {
                return true;
            }
        }
        emb[part].clear();
        return false;
    }
    extend_last(h, pattern, boxes, emb)
}

fn extend_last(h: &Opg, pattern: &Opg, boxes: &[(usize, usize)], emb: &mut Embedding) -> bool {
    let last = h.n - 1;
    let q = emb[last].len();
    if q == pattern.parts[last] {
        return true;
    }
    let start = emb[last].last().map_or(boxes[last].0, |&v| v + 1);
    let room = pattern.parts[last] - q;
    let heads: Vec<Vec<usize>> = pattern.parts[..last].iter().map(|&s| 0..s).multi_cartesian_product().collect();
    for v in start..boxes[last].1 {
        if boxes[last].1 - v < room {
            break;
        }
        let ok = heads.iter().all(|hd| {
            let mut pt = hd.clone();
            pt.push(q);
            let mut ht: Vec<usize> = hd.iter().enumerate().map(|(i, &x)| emb[i][x]).collect();
            ht.push(v);
            pattern.has_edge(&pt) == h.has_edge(&ht)
        });
        if ok {
            emb[last].push(v);
            if extend_last(h, pattern, boxes, emb) {
                return true;
            }
            emb[last].pop();
        }
    }
    false
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Amalgam {
    pub result: Opg,
    pub from_a: Embedding,
    pub from_b: Embedding,
}

/// Free amalgam of `a` and `b` over `c`. In each part, between consecutive
/// images of `c`, the vertices of `a` come before those of `b`.
pub fn amalgamate(a: &Opg, b: &Opg, c: &Opg, into_a: &Embedding, into_b: &Embedding) -> Result<Amalgam> {
    if !is_induced_embedding(c, a, into_a) {
        return Err(Error::Invalid("the embedding of C into A is not an induced embedding".into()));
    }
    if !is_induced_embedding(c, b, into_b) {
        return Err(Error::Invalid("the embedding of C into B is not an induced embedding".into()));
    }
    let n = c.n;
    let mut sizes = Vec::with_capacity(n);
    let mut from_a: Embedding = Vec::with_capacity(n);
    let mut from_b: Embedding = Vec::with_capacity(n);
    for i in 0..n {
        let (ma, mb) = (&into_a[i], &into_b[i]);
        let mut fa = vec![usize::MAX; a.parts[i]];
        let mut fb = vec![usize::MAX; b.parts[i]];
        let mut next = 0;
        let (mut pa, mut pb) = (0, 0);
        for gap in 0..=c.parts[i] {
            let end_a = ma.get(gap).copied().unwrap_or(a.parts[i]);
            let end_b = mb.get(gap).copied().unwrap_or(b.parts[i]);
            for v in pa..end_a {
                fa[v] = next;
                next += 1;
            }
            for v in pb..end_b {
                fb[v] = next;
                next += 1;
            }
            if gap < c.parts[i] {
                fa[end_a] = next;
                fb[end_b] = next;
                next += 1;
            }
            pa = end_a + 1;
            pb = end_b + 1;
        }
        sizes.push(next);
        from_a.push(fa);
        from_b.push(fb);
    }
    let mut edges: BTreeSet<Vec<usize>> = a.edges.iter().map(|e| image(&from_a, e)).collect();
    edges.extend(b.edges.iter().map(|e| image(&from_b, e)));
    let result = Opg::new(sizes, edges)?;
    if !is_induced_embedding(a, &result, &from_a) || !is_induced_embedding(b, &result, &from_b) {
        return Err(Error::Postcondition("a factor does not embed into the amalgam".into()));
    }
    Ok(Amalgam { result, from_a, from_b })
}

/// Random hypergraph containing `c` as an induced copy, with `extra[i]`
/// new vertices in part `i`; returns the host and the embedding.
pub fn random_extension(c: &Opg, extra: &[usize], density: Ratio<u64>, seed: u64) -> Result<(Opg, Embedding)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = c.n;
    let mut emb: Embedding = Vec::with_capacity(n);
    let mut sizes = Vec::with_capacity(n);
    for i in 0..n {
        let total = c.parts[i] + extra[i];
        let mut slots: Vec<usize> = (0..total).collect();
        // choose which host positions carry C's vertices
        for j in 0..c.parts[i] {
            let r = rng.random_range(j..total);
            slots.swap(j, r);
        }
        let mut chosen = slots[..c.parts[i]].to_vec();
        chosen.sort_unstable();
        emb.push(chosen);
        sizes.push(total);
    }
    let mut inverse: Vec<Vec<Option<usize>>> = sizes.iter().map(|&s| vec![None; s]).collect();
    for i in 0..n {
        for (j, &v) in emb[i].iter().enumerate() {
            inverse[i][v] = Some(j);
        }
    }
    let (num, den) = (*density.numer(), *density.denom());
    let mut edges = Vec::new();
    for t in sizes.iter().map(|&s| 0..s).multi_cartesian_product() {
        let pre: Option<Vec<usize>> = t.iter().enumerate().map(|(i, &v)| inverse[i][v]).collect();
        let edge = match pre {
            Some(ct) => c.has_edge(&ct),
            None => rng.random_range(0..den) < num,
        };
        if edge {
            edges.push(t);
        }
    }
    Ok((Opg::new(sizes, edges)?, emb))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half() -> Ratio<u64> {
        Ratio::new(1, 2)
    }

    #[test]
    fn generator_extremes_and_determinism() {
        assert!(random_opg(&[3, 3], Ratio::from_integer(0), 1).unwrap().edges().is_empty());
        assert_eq!(random_opg(&[3, 2, 2], Ratio::from_integer(1), 1).unwrap().edges().len(), 12);
        let a = random_opg(&[4, 4, 4], half(), 7).unwrap();
        assert_eq!(a, random_opg(&[4, 4, 4], half(), 7).unwrap());
        assert!(Opg::new(vec![2, 2], [vec![0, 2]]).is_err());
    }

    #[test]
    fn extension_on_extremes() {
        let full = Opg::complete(vec![4, 4, 4]).unwrap();
        let r = check_extension(&full, 1).unwrap();
        for f in &r.failures {
            assert!(!f.a1.is_empty() || f.kind == FailureKind::Betweenness);
        }
        let empty = Opg::empty(vec![4, 4, 4]).unwrap();
        let r = check_extension(&empty, 1).unwrap();
        for f in &r.failures {
            assert!(!f.a0.is_empty() || f.kind == FailureKind::Betweenness);
        }
        assert_eq!(r.demands, r.satisfied + r.betweenness_failures + r.linkage_failures);
    }

    #[test]
    fn induced_copy_basics() {
        let h = random_opg(&[5, 5, 5], half(), 3).unwrap();
        let full_box: Vec<(usize, usize)> = h.parts().iter().map(|&s| (0, s)).collect();
        let id: Embedding = h.parts().iter().map(|&s| (0..s).collect()).collect();
        assert_eq!(find_induced_copy(&h, &h, &full_box).unwrap(), Some(id));
        let single = Opg::empty(vec![1, 1, 1]).unwrap();
        let found = find_induced_copy(&h, &single, &full_box).unwrap().unwrap();
        assert!(!h.has_edge(&image(&found, &[0, 0, 0])));
    }

    #[test]
    fn amalgam_extremes() {
        let a = random_opg(&[2, 3], half(), 1).unwrap();
        let b = random_opg(&[3, 1], half(), 2).unwrap();
        let c = Opg::empty(vec![0, 0]).unwrap();
        let none: Embedding = vec![vec![], vec![]];
        let am = amalgamate(&a, &b, &c, &none, &none).unwrap();
        assert_eq!(am.result.parts(), &[5, 4]);
        assert_eq!(am.from_a, vec![vec![0, 1], vec![0, 1, 2]]);
        let id: Embedding = a.parts().iter().map(|&s| (0..s).collect()).collect();
        let same = amalgamate(&a, &a, &a, &id, &id).unwrap();
        assert_eq!(same.result, a);
    }

    #[test]
    fn inconsistent_common_part() {
        let a = Opg::new(vec![1, 1], [vec![0, 0]]).unwrap();
        let c = Opg::empty(vec![1, 1]).unwrap();
        let emb: Embedding = vec![vec![0], vec![0]];
        assert!(amalgamate(&a, &a, &c, &emb, &emb).is_err());
    }
}
