//! The projective norm graph `P(p, t)` as an implicit graph.
//!
//! Vertices are pairs `(alpha, a)` with `alpha` in `GF(p^(t-1))` and
//! `a` in `F_p^*`; `(alpha, a) ~ (beta, b)` iff `N(alpha + beta) = a*b`.
//! Loops (`N(2 alpha) = a^2`) are discarded, so the graph is simple.
//!
//! Vertex ids are `index(alpha) * (p - 1) + (a - 1)`. For graphs with at most
//! [`BITSET_LIMIT`] vertices neighborhoods are materialized as bitsets on
//! first use; censuses then reduce to word-parallel intersections.

use std::io::Write;
use std::sync::OnceLock;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff_arith::{ExtElement, ExtField, FiniteField, PrimeField};
use crate::poly::Poly;

/// Neighbor bitsets are used when the graph has at most this many vertices.
pub const BITSET_LIMIT: u64 = 1 << 22;

/// All neighbor rows are cached when the graph has at most this many vertices.
pub const ROW_CACHE_LIMIT: u64 = 1 << 13;

/// Default cap on the number of subsets an exhaustive census may visit.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// Largest vertex set accepted by [`NormGraph::common_neighbors`].
pub const MAX_COMMON_SET: usize = 8;

const CENSUS_CHUNK: u128 = 1 << 15;
const SAMPLE_CHUNK: u64 = 1 << 12;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vertex {
    pub alpha: ExtElement,
    pub a: u64,
}

impl Vertex {
    pub fn new(alpha: ExtElement, a: u64) -> Self {
        Vertex { alpha, a }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bitset {
    words: Vec<u64>,
}

impl Bitset {
    pub fn new(len: usize) -> Self {
        Bitset {
            words: vec![0; len.div_ceil(64)],
        }
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn intersect_with(&mut self, other: &Bitset) {
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w &= o;
        }
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let tz = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(wi * 64 + tz)
            })
        })
    }
}

struct Tables {
    /// `norms[index(gamma)] = N(gamma)`.
    norms: Vec<u64>,
    /// Inverses of `1..p`; `inverses[0]` unused.
    inverses: Vec<u64>,
    rows: Option<Vec<Bitset>>,
}

/// `P(p, t)` over a fixed presentation of `GF(p^(t-1))`. No edges are stored.
pub struct NormGraph {
    t: usize,
    field: ExtField,
    tables: OnceLock<Tables>,
}

impl Clone for NormGraph {
    fn clone(&self) -> Self {
        NormGraph {
            t: self.t,
            field: self.field.clone(),
            tables: OnceLock::new(),
        }
    }
}

impl std::fmt::Debug for NormGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("NormGraph")
            .field("p", &self.p())
            .field("t", &self.t)
            .field("modulus", &self.field.modulus())
            .finish()
    }
}

/// Smallest monic irreducible of degree `k` over `F_p`, ordering the
/// non-leading coefficients lexicographically from the top.
pub fn smallest_irreducible(field: &PrimeField, k: usize) -> Poly<u64> {
    let p = field.p();
    let ring = crate::poly::PolyRing::new(field);
    let mut digits = vec![0u64; k];
    loop {
        let mut coeffs = digits.clone();
        coeffs.push(1);
        let h = Poly::new(coeffs);
        if ring.is_irreducible(&h).expect("degree >= 1") {
            return h;
        }
        // increment little-endian counter: the top digit is most significant
        let mut i = 0;
        loop {
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
            assert!(i < k, "an irreducible of every degree exists");
        }
    }
}

impl NormGraph {
    /// `P(p, t)`; `modulus` defaults to [`smallest_irreducible`] of degree `t - 1`.
    pub fn new(p: u64, t: usize, modulus: Option<&Poly<u64>>) -> Result<Self> {
        if t < 3 {
            return Err(Error::InvalidParameter(format!("t must be >= 3, got {t}")));
        }
        let base = PrimeField::new(p)?;
        let field = match modulus {
            Some(m) => {
                if m.degree() != Some(t - 1) {
                    return Err(Error::InvalidParameter(format!(
                        "modulus must have degree {}, got {:?}",
                        t - 1,
                        m.degree()
                    )));
                }
                ExtField::from_poly(base, m)?
            }
            None => ExtField::from_irreducible_unchecked(
                base,
                smallest_irreducible(&base, t - 1).coeffs().to_vec(),
            ),
        };
        Ok(NormGraph {
            t,
            field,
            tables: OnceLock::new(),
        })
    }

    pub fn from_field(t: usize, field: ExtField) -> Result<Self> {
        if t < 3 || field.degree() != t - 1 {
            return Err(Error::InvalidParameter(format!(
                "field degree {} does not match t = {t}",
                field.degree()
            )));
        }
        Ok(NormGraph {
            t,
            field,
            tables: OnceLock::new(),
        })
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    /// `p^(t-1) * (p - 1)`.
    pub fn vertex_count(&self) -> u128 {
        let p = self.p() as u128;
        (0..self.t - 1).fold(p - 1, |acc, _| acc.saturating_mul(p))
    }

    /// `(t - 1)!`, the common-neighborhood cap for `t` vertices.
    pub fn common_neighbor_bound(&self) -> u64 {
        (1..self.t as u64).product()
    }

    /// Validates and builds a vertex.
    pub fn vertex(&self, alpha: ExtElement, a: u64) -> Result<Vertex> {
        if !self.field.contains(&alpha) {
            return Err(Error::InvalidParameter(format!("{alpha} is not in the field")));
        }
        if a == 0 || a >= self.p() {
            return Err(Error::InvalidParameter(format!(
                "second coordinate {a} must be a nonzero residue mod {}",
                self.p()
            )));
        }
        Ok(Vertex { alpha, a })
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        self.field.contains(&v.alpha) && v.a != 0 && v.a < self.p()
    }

    pub fn vertex_id(&self, v: &Vertex) -> Result<u64> {
        Ok(self.field.index(&v.alpha)? * (self.p() - 1) + (v.a - 1))
    }

    pub fn vertex_from_id(&self, id: u64) -> Result<Vertex> {
        let pm1 = self.p() - 1;
        let alpha = self.field.from_index(id / pm1)?;
        Ok(Vertex {
            alpha,
            a: id % pm1 + 1,
        })
    }

    /// Adjacency of two distinct vertices; the norm is evaluated both ways.
    pub fn adjacent(&self, u: &Vertex, v: &Vertex) -> Result<bool> {
        if u == v {
            return Err(Error::InvalidParameter(
                "adjacency is defined on distinct vertices".into(),
            ));
        }
        let f = self.field.base();
        let sum = self.field.add(&u.alpha, &v.alpha);
        Ok(self.field.norm(&sum) == f.mul(&u.a, &v.a))
    }

    fn small_vertex_count(&self) -> Result<usize> {
        let n = self.vertex_count();
        if n > BITSET_LIMIT as u128 {
            return Err(Error::InvalidParameter(format!(
                "graph has {n} vertices, above the enumeration limit {BITSET_LIMIT}"
            )));
        }
        Ok(n as usize)
    }

    fn tables(&self) -> Result<&Tables> {
        let n = self.small_vertex_count()?;
        Ok(self.tables.get_or_init(|| {
            let q = self.field.size().expect("small graphs have indexable fields");
            let norms: Vec<u64> = (0..q)
                .into_par_iter()
                .map(|i| {
                    let x = self.field.from_index(i).expect("in range");
                    self.field.norm_conjugates(&x)
                })
                .collect();
            let f = self.field.base();
            let inverses = (0..self.p())
                .map(|a| if a == 0 { 0 } else { f.inv(&a).expect("nonzero") })
                .collect();
            let mut tables = Tables {
                norms,
                inverses,
                rows: None,
            };
            if n as u64 <= ROW_CACHE_LIMIT {
                let rows = (0..n as u64)
                    .into_par_iter()
                    .map(|id| self.row_from_tables(&tables, id))
                    .collect();
                tables.rows = Some(rows);
            }
            tables
        }))
    }

    /// Neighbor ids of `id`, ascending.
    fn neighbor_ids_from_tables(&self, tables: &Tables, id: u64) -> Vec<u64> {
        let p = self.p();
        let f = self.field.base();
        let k = self.field.degree();
        let alpha_idx = id / (p - 1);
        let a = id % (p - 1) + 1;
        let a_inv = tables.inverses[a as usize];
        let alpha: Vec<u64> = digits(alpha_idx, p, k);
        let q = tables.norms.len() as u64;
        let mut out = Vec::with_capacity(q as usize);
        let mut beta = vec![0u64; k];
        for beta_idx in 0..q {
            if beta_idx > 0 {
                increment(&mut beta, p);
            }
            // index of alpha + beta
            let mut gamma_idx = 0u64;
            for i in (0..k).rev() {
                gamma_idx = gamma_idx * p + f.add(&alpha[i], &beta[i]);
            }
            let nrm = tables.norms[gamma_idx as usize];
            if nrm == 0 {
                continue;
            }
            let b = f.mul(&nrm, &a_inv);
            let nid = beta_idx * (p - 1) + (b - 1);
            if nid != id {
                out.push(nid);
            }
        }
        out
    }

    fn row_from_tables(&self, tables: &Tables, id: u64) -> Bitset {
        let n = self.vertex_count() as usize;
        let mut row = Bitset::new(n);
        for nid in self.neighbor_ids_from_tables(tables, id) {
            row.insert(nid as usize);
        }
        row
    }

    fn row(&self, id: u64) -> Result<std::borrow::Cow<'_, Bitset>> {
        let tables = self.tables()?;
        Ok(match &tables.rows {
            Some(rows) => std::borrow::Cow::Borrowed(&rows[id as usize]),
            None => std::borrow::Cow::Owned(self.row_from_tables(tables, id)),
        })
    }

    /// Neighbor ids, ascending.
    pub fn neighbor_ids(&self, id: u64) -> Result<Vec<u64>> {
        let tables = self.tables()?;
        self.check_id(id)?;
        Ok(self.neighbor_ids_from_tables(tables, id))
    }

    fn check_id(&self, id: u64) -> Result<()> {
        if id as u128 >= self.vertex_count() {
            return Err(Error::InvalidParameter(format!("vertex id {id} out of range")));
        }
        Ok(())
    }

    /// Neighbors of `u` in ascending id order.
    pub fn neighbors(&self, u: &Vertex) -> Result<Vec<Vertex>> {
        let id = self.vertex_id(u)?;
        self.neighbor_ids(id)?
            .into_iter()
            .map(|nid| self.vertex_from_id(nid))
            .collect()
    }

    pub fn degree(&self, u: &Vertex) -> Result<usize> {
        Ok(self.neighbor_ids(self.vertex_id(u)?)?.len())
    }

    fn check_set(&self, set: &[Vertex]) -> Result<()> {
        if set.is_empty() || set.len() > MAX_COMMON_SET {
            return Err(Error::SubsetSize(set.len()));
        }
        for (i, v) in set.iter().enumerate() {
            if !self.contains(v) {
                return Err(Error::InvalidParameter(format!("{v:?} is not a vertex")));
            }
            if set[..i].contains(v) {
                return Err(Error::InvalidParameter(format!("duplicate vertex {v:?}")));
            }
        }
        Ok(())
    }

    /// Every vertex outside `set` adjacent to all of `set`.
    pub fn common_neighbors(&self, set: &[Vertex]) -> Result<Vec<Vertex>> {
        self.check_set(set)?;
        if self.vertex_count() <= BITSET_LIMIT as u128 {
            let ids = set
                .iter()
                .map(|v| self.vertex_id(v))
                .collect::<Result<Vec<_>>>()?;
            return self
                .common_neighbor_ids(&ids)?
                .into_iter()
                .map(|id| self.vertex_from_id(id))
                .collect();
        }
        self.common_neighbors_by_scan(set)
    }

    /// Candidate scan: each `beta` determines at most one neighbor of
    /// `set[0]`, which is then checked against the remaining equations.
    pub fn common_neighbors_by_scan(&self, set: &[Vertex]) -> Result<Vec<Vertex>> {
        self.check_set(set)?;
        let q = self.field.size().ok_or(Error::TooLargeToIndex {
            p: self.p(),
            k: self.field.degree(),
        })?;
        let f = self.field.base();
        let first = &set[0];
        let a_inv = f.inv(&first.a)?;
        let mut out = Vec::new();
        for idx in 0..q {
            let beta = self.field.from_index(idx)?;
            let nrm = self.field.norm_conjugates(&self.field.add(&first.alpha, &beta));
            if nrm == 0 {
                continue;
            }
            let w = Vertex {
                alpha: beta,
                a: f.mul(&nrm, &a_inv),
            };
            if set.contains(&w) {
                continue;
            }
            let all = set[1..].iter().all(|s| {
                self.field.norm_conjugates(&self.field.add(&s.alpha, &w.alpha)) == f.mul(&s.a, &w.a)
            });
            if all {
                out.push(w);
            }
        }
        Ok(out)
    }

    /// Common neighbors of a set of vertex ids by bitset intersection.
    pub fn common_neighbor_ids(&self, ids: &[u64]) -> Result<Vec<u64>> {
        if ids.is_empty() || ids.len() > MAX_COMMON_SET {
            return Err(Error::SubsetSize(ids.len()));
        }
        for &id in ids {
            self.check_id(id)?;
        }
        let mut acc = self.row(ids[0])?.into_owned();
        for &id in &ids[1..] {
            acc.intersect_with(&*self.row(id)?);
        }
        Ok(acc.iter().map(|i| i as u64).collect())
    }

    /// Checks that `left x right` is a complete bipartite subgraph.
    pub fn verify_biclique(&self, left: &[Vertex], right: &[Vertex]) -> BicliqueReport {
        let distinct = |s: &[Vertex]| {
            let mut sorted: Vec<&Vertex> = s.iter().collect();
            sorted.sort();
            sorted.windows(2).all(|w| w[0] != w[1])
        };
        let mut invalid = Vec::new();
        for (side, set) in [("L", left), ("R", right)] {
            for (i, v) in set.iter().enumerate() {
                if !self.contains(v) {
                    invalid.push(format!("{side}[{i}]"));
                }
            }
        }
        let mut failures = Vec::new();
        let mut passed = 0;
        if invalid.is_empty() {
            for (i, u) in left.iter().enumerate() {
                for (j, v) in right.iter().enumerate() {
                    match self.adjacent(u, v) {
                        Ok(true) => passed += 1,
                        _ => failures.push((i, j)),
                    }
                }
            }
        }
        let report = BicliqueReport {
            left_distinct: distinct(left),
            right_distinct: distinct(right),
            disjoint: left.iter().all(|u| !right.contains(u)),
            invalid_vertices: invalid,
            edge_checks: left.len() * right.len(),
            edges_passed: passed,
            failures,
            pass: false,
        };
        BicliqueReport {
            pass: report.left_distinct
                && report.right_distinct
                && report.disjoint
                && report.invalid_vertices.is_empty()
                && report.edges_passed == report.edge_checks,
            ..report
        }
    }

    /// Exhaustive maximum of `|common neighbors|` over all `k`-subsets.
    /// Ties resolve to the lexicographically first subset, independent of
    /// the worker count.
    pub fn census_max_common(&self, k: usize, budget: u128) -> Result<CensusResult> {
        if k == 0 || k > MAX_COMMON_SET {
            return Err(Error::SubsetSize(k));
        }
        let n = self.small_vertex_count()? as u64;
        let total = binomial(n, k as u64);
        if total > budget {
            return Err(Error::BudgetExceeded {
                needed: total,
                budget,
            });
        }
        self.tables()?;
        let chunks = total.div_ceil(CENSUS_CHUNK);
        let best = (0..chunks as u64)
            .into_par_iter()
            .map(|c| -> Result<Option<(usize, u128, Vec<u64>)>> {
                let start = c as u128 * CENSUS_CHUNK;
                let end = (start + CENSUS_CHUNK).min(total);
                let mut subset = unrank_combination(n, k, start);
                let mut best: Option<(usize, u128, Vec<u64>)> = None;
                for rank in start..end {
                    let count = self.common_count(&subset)?;
                    if best.as_ref().is_none_or(|b| count > b.0) {
                        best = Some((count, rank, subset.clone()));
                    }
                    if rank + 1 < end {
                        next_combination(&mut subset, n);
                    }
                }
                Ok(best)
            })
            .try_reduce(|| None, |a, b| Ok(pick_better(a, b)))?;
        let (max, _, argmax) = best.unwrap_or((0, 0, Vec::new()));
        Ok(CensusResult {
            max,
            argmax,
            examined: total,
        })
    }

    fn common_count(&self, ids: &[u64]) -> Result<usize> {
        let mut acc = self.row(ids[0])?.into_owned();
        for &id in &ids[1..] {
            acc.intersect_with(&*self.row(id)?);
        }
        Ok(acc.count())
    }

    /// Maximum `|common neighbors|` over `trials` seeded uniform `k`-subsets
    /// plus any `planted` subsets (given as vertex ids). Planted subsets
    /// precede sampled ones for tie-breaking.
    pub fn sample_max_common(
        &self,
        k: usize,
        trials: u64,
        seed: u64,
        planted: &[Vec<u64>],
    ) -> Result<CensusResult> {
        if k == 0 || k > MAX_COMMON_SET {
            return Err(Error::SubsetSize(k));
        }
        if trials == 0 && planted.is_empty() {
            return Err(Error::InvalidParameter("trials must be >= 1".into()));
        }
        let n = self.small_vertex_count()?;
        if k > n {
            return Err(Error::SubsetSize(k));
        }
        self.tables()?;
        let mut best: Option<(usize, u128, Vec<u64>)> = None;
        for (i, set) in planted.iter().enumerate() {
            if set.len() != k {
                return Err(Error::SubsetSize(set.len()));
            }
            let mut sorted = set.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != k {
                return Err(Error::InvalidParameter("planted subset has duplicates".into()));
            }
            for &id in &sorted {
                self.check_id(id)?;
            }
            let count = self.common_count(&sorted)?;
            best = pick_better(best, Some((count, i as u128, sorted)));
        }
        let offset = planted.len() as u128;
        let chunks = trials.div_ceil(SAMPLE_CHUNK);
        let sampled = (0..chunks)
            .into_par_iter()
            .map(|c| -> Result<Option<(usize, u128, Vec<u64>)>> {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(c);
                let start = c * SAMPLE_CHUNK;
                let end = (start + SAMPLE_CHUNK).min(trials);
                let mut best: Option<(usize, u128, Vec<u64>)> = None;
                for trial in start..end {
                    let mut subset: Vec<u64> =
                        sample(&mut rng, n, k).into_iter().map(|i| i as u64).collect();
                    subset.sort_unstable();
                    let count = self.common_count(&subset)?;
                    if best.as_ref().is_none_or(|b| count > b.0) {
                        best = Some((count, offset + trial as u128, subset));
                    }
                }
                Ok(best)
            })
            .try_reduce(|| None, |a, b| Ok(pick_better(a, b)))?;
        let (max, _, argmax) = pick_better(best, sampled).expect("at least one subset");
        Ok(CensusResult {
            max,
            argmax,
            examined: offset + trials as u128,
        })
    }

    /// Number of edges (loops excluded).
    pub fn edge_count(&self) -> Result<u64> {
        let n = self.small_vertex_count()? as u64;
        let tables = self.tables()?;
        let degree_sum: u64 = (0..n)
            .into_par_iter()
            .map(|id| self.neighbor_ids_from_tables(tables, id).len() as u64)
            .sum();
        Ok(degree_sum / 2)
    }

    /// Writes `"u v"` lines with `u < v`, ascending; returns the edge count.
    pub fn write_edge_list<W: Write>(&self, out: &mut W) -> Result<u64> {
        let n = self.small_vertex_count()? as u64;
        let tables = self.tables()?;
        let mut count = 0;
        for u in 0..n {
            for v in self.neighbor_ids_from_tables(tables, u) {
                if v > u {
                    writeln!(out, "{u} {v}")
                        .map_err(|e| Error::InvalidParameter(format!("write failed: {e}")))?;
                    count += 1;
                }
            }
        }
        Ok(count)
    }
}

fn pick_better(
    a: Option<(usize, u128, Vec<u64>)>,
    b: Option<(usize, u128, Vec<u64>)>,
) -> Option<(usize, u128, Vec<u64>)> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => {
            if y.0 > x.0 || (y.0 == x.0 && y.1 < x.1) {
                Some(y)
            } else {
                Some(x)
            }
        }
    }
}

fn digits(mut idx: u64, p: u64, k: usize) -> Vec<u64> {
    (0..k)
        .map(|_| {
            let d = idx % p;
            idx /= p;
            d
        })
        .collect()
}

fn increment(digits: &mut [u64], p: u64) {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < p {
            return;
        }
        *d = 0;
    }
}

/// Result of an exhaustive or sampled census.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusResult {
    pub max: usize,
    /// A maximizing subset as ascending vertex ids.
    pub argmax: Vec<u64>,
    /// Subsets evaluated.
    pub examined: u128,
}

/// Outcome of [`NormGraph::verify_biclique`]; failures are data, not errors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BicliqueReport {
    pub left_distinct: bool,
    pub right_distinct: bool,
    pub disjoint: bool,
    pub invalid_vertices: Vec<String>,
    pub edge_checks: usize,
    pub edges_passed: usize,
    /// `(i, j)` with `left[i]` not adjacent to `right[j]`.
    pub failures: Vec<(usize, usize)>,
    pub pass: bool,
}

/// Witness interchange format shared by all constructions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub p: u64,
    pub t: usize,
    pub modulus: Vec<u64>,
    #[serde(rename = "L")]
    pub left: Vec<Vertex>,
    #[serde(rename = "R")]
    pub right: Vec<Vertex>,
    pub verified: bool,
}

impl WitnessJson {
    pub fn graph(&self) -> Result<NormGraph> {
        if self.modulus.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidParameter("modulus coefficient out of range".into()));
        }
        NormGraph::new(self.p, self.t, Some(&Poly::new(self.modulus.clone())))
    }
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// The `rank`-th `k`-subset of `0..n` in lexicographic order.
pub fn unrank_combination(n: u64, k: usize, mut rank: u128) -> Vec<u64> {
    let mut out = Vec::with_capacity(k);
    let mut x = 0u64;
    for i in 0..k {
        loop {
            let c = binomial(n - x - 1, (k - i - 1) as u64);
            if rank < c {
                break;
            }
            rank -= c;
            x += 1;
        }
        out.push(x);
        x += 1;
    }
    out
}

/// Advances to the next `k`-subset of `0..n` in lexicographic order;
/// returns `false` after the last one.
pub fn next_combination(subset: &mut [u64], n: u64) -> bool {
    let k = subset.len();
    let Some(i) = (0..k).rev().find(|&i| subset[i] < n - (k - i) as u64) else {
        return false;
    };
    subset[i] += 1;
    for j in i + 1..k {
        subset[j] = subset[j - 1] + 1;
    }
    true
}
