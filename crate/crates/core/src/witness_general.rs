//! `K_{t-1,m}` witnesses in `P(p, t)` from the polynomials
//! `f_i(x) = x^{t-1} - x + theta_i`, where the `theta_i` are the roots of
//! `x^m - 2` in `F_p`.
//!
//! For a shift `r` making every `f_i - r` irreducible over `F_p`, each
//! `f_i - r` splits in `GF(p^{t-1})`. Taking `alpha_i` a root and `zeta` a
//! primitive `(t-2)`-th root of unity, `c^{t-1} - c = 0` for every
//! `c in {0} u {zeta^k}`, so `N(c - alpha_i) = (f_i - r)(c) = theta_i - r`
//! and
//!
//! ```text
//! A = {(zeta^k, 1) : 1 <= k <= t-2} u {(0, 1)},   B = {(-alpha_i, theta_i - r)}
//! ```
//!
//! span a complete bipartite subgraph.

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff_arith::{ExtElement, ExtField, FiniteField, PrimeField};
use crate::norm_graph::{BicliqueReport, NormGraph, Vertex};
use crate::poly::{find_root_in_ext, primitive_nth_root, roots_in_base, Poly, PolyRing};
use crate::primes::primes_up_to;

/// Primes examined per parallel batch in the parameter search.
const SEARCH_BATCH: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralParams {
    pub t: usize,
    pub m: usize,
    pub p: u64,
    pub r: u64,
    /// Roots of `x^m - 2` in `F_p`, ascending.
    pub thetas: Vec<u64>,
    pub zeta: u64,
}

impl GeneralParams {
    /// `f_i - r` over `F_p`, little-endian.
    pub fn shifted_poly(&self, i: usize) -> Poly<u64> {
        shifted(self.t, self.p, self.thetas[i], self.r)
    }

    /// The second coordinate `theta_i - r` of the `i`-th `B` vertex.
    pub fn target(&self, i: usize) -> u64 {
        (self.thetas[i] + self.p - self.r) % self.p
    }

    fn check(&self) -> Result<()> {
        if self.t < 4 || self.m == 0 {
            return Err(Error::InvalidParameter(format!(
                "need t >= 4 and m >= 1, got t = {}, m = {}",
                self.t, self.m
            )));
        }
        let field = PrimeField::new(self.p)?;
        if self.thetas.len() != self.m
            || self.thetas.windows(2).any(|w| w[0] >= w[1])
            || self.thetas.iter().any(|&th| th >= self.p || field.pow(&th, self.m as u64) != 2 % self.p)
        {
            return Err(Error::InvalidParameter(
                "thetas must be the distinct roots of x^m - 2, ascending".into(),
            ));
        }
        let n = (self.t - 2) as u64;
        let order_ok = self.zeta != 0
            && self.zeta < self.p
            && field.pow(&self.zeta, n) == 1
            && crate::primes::prime_factors(n)
                .iter()
                .all(|&l| field.pow(&self.zeta, n / l) != 1);
        if !order_ok {
            return Err(Error::InvalidParameter(format!(
                "zeta = {} is not a primitive {n}-th root of unity mod {}",
                self.zeta, self.p
            )));
        }
        if self.r >= self.p {
            return Err(Error::InvalidParameter("r out of range".into()));
        }
        Ok(())
    }
}

fn shifted(t: usize, p: u64, theta: u64, r: u64) -> Poly<u64> {
    let mut coeffs = vec![0u64; t];
    coeffs[0] = (theta + p - r) % p;
    coeffs[1] = p - 1;
    coeffs[t - 1] = 1;
    Poly::new(coeffs)
}

/// Roots of `x^m - 2` and the primitive `(t-2)`-th root of unity, when `p`
/// admits both with all `m` roots distinct.
fn prime_data(t: usize, m: usize, p: u64) -> Option<(Vec<u64>, u64)> {
    if p == 2 || (p - 1) % (t as u64 - 2) != 0 || (p - 1) % m as u64 != 0 {
        return None;
    }
    let field = PrimeField::new(p).ok()?;
    let zeta = primitive_nth_root(t as u64 - 2, p)?;
    let thetas: Vec<u64> = if m == 1 {
        vec![2 % p]
    } else {
        let mut h = vec![0u64; m + 1];
        h[0] = p - 2;
        h[m] = 1;
        roots_in_base(&Poly::new(h), &field)
            .ok()?
            .into_iter()
            .map(|r| r.value)
            .collect()
    };
    (thetas.len() == m).then_some((thetas, zeta))
}

/// Constant terms `c` for which `x^{t-1} - x + c` is irreducible over `F_p`.
fn irreducible_shifts(t: usize, p: u64) -> BTreeSet<u64> {
    let field = PrimeField::new(p).expect("prime");
    if t == 4 {
        // a cubic is irreducible iff it has no root
        let values: BTreeSet<u64> = field
            .elements()
            .map(|x| field.sub(&field.pow(&x, 3), &x))
            .collect();
        return (0..p).filter(|c| !values.contains(&field.neg(c))).collect();
    }
    let ring = PolyRing::new(&field);
    (0..p)
        .filter(|&c| ring.is_irreducible(&shifted(t, p, c, 0)).expect("degree >= 3"))
        .collect()
}

fn params_at(t: usize, m: usize, p: u64) -> Vec<GeneralParams> {
    let Some((thetas, zeta)) = prime_data(t, m, p) else {
        return Vec::new();
    };
    let good = irreducible_shifts(t, p);
    (0..p)
        .filter(|&r| thetas.iter().all(|&th| good.contains(&((th + p - r) % p))))
        .map(|r| GeneralParams {
            t,
            m,
            p,
            r,
            thetas: thetas.clone(),
            zeta,
        })
        .collect()
}

/// Every `(p, r)` with `p <= prime_limit` realizing the construction, in
/// ascending `(p, r)` order, truncated to `max_results`.
pub fn find_parameters(
    t: usize,
    m: usize,
    prime_limit: u64,
    max_results: usize,
) -> Result<Vec<GeneralParams>> {
    if t < 4 || m == 0 {
        return Err(Error::InvalidParameter(format!(
            "need t >= 4 and m >= 1, got t = {t}, m = {m}"
        )));
    }
    let primes = primes_up_to(prime_limit);
    let mut out = Vec::new();
    for batch in primes.chunks(SEARCH_BATCH) {
        if out.len() >= max_results {
            break;
        }
        let found: Vec<Vec<GeneralParams>> =
            batch.par_iter().map(|&p| params_at(t, m, p)).collect();
        out.extend(found.into_iter().flatten());
    }
    out.truncate(max_results);
    Ok(out)
}

/// Counts for the `(p, r)` search up to a limit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchStats {
    pub t: usize,
    pub m: usize,
    pub limit: u64,
    pub primes: usize,
    /// Primes admitting `zeta` and all `m` roots of `x^m - 2`.
    pub admissible_primes: usize,
    /// Admissible primes with at least one valid `r`.
    pub usable_primes: usize,
    pub pairs_examined: u64,
    pub pairs_found: u64,
}

pub fn search_stats(t: usize, m: usize, limit: u64) -> Result<SearchStats> {
    if t < 4 || m == 0 {
        return Err(Error::InvalidParameter(format!(
            "need t >= 4 and m >= 1, got t = {t}, m = {m}"
        )));
    }
    let primes = primes_up_to(limit);
    let per_prime: Vec<Option<(u64, u64)>> = primes
        .par_iter()
        .map(|&p| prime_data(t, m, p).map(|_| (p, params_at(t, m, p).len() as u64)))
        .collect();
    let admissible: Vec<(u64, u64)> = per_prime.into_iter().flatten().collect();
    Ok(SearchStats {
        t,
        m,
        limit,
        primes: primes.len(),
        admissible_primes: admissible.len(),
        usable_primes: admissible.iter().filter(|(_, n)| *n > 0).count(),
        pairs_examined: admissible.iter().map(|(p, _)| p).sum(),
        pairs_found: admissible.iter().map(|(_, n)| n).sum(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralWitness {
    pub params: GeneralParams,
    /// `F_p[x]/(f_1 - r)`.
    pub field: ExtField,
    pub alphas: Vec<ExtElement>,
    pub a: Vec<Vertex>,
    pub b: Vec<Vertex>,
}

/// The extension `F_p[x]/(f_1 - r)`.
pub fn witness_field(params: &GeneralParams) -> Result<ExtField> {
    params.check()?;
    ExtField::from_poly(PrimeField::new(params.p)?, &params.shifted_poly(0))
}

pub fn build_general_witness(params: &GeneralParams, seed: u64) -> Result<GeneralWitness> {
    let field = witness_field(params)?;
    let mut alphas = vec![field.generator()];
    for i in 1..params.m {
        alphas.push(find_root_in_ext(&params.shifted_poly(i), &field, seed)?);
    }
    let f = *field.base();
    let mut a: Vec<Vertex> = (1..=params.t as u64 - 2)
        .map(|k| Vertex::new(field.constant(f.pow(&params.zeta, k)), 1))
        .collect();
    a.push(Vertex::new(field.zero(), 1));
    let b: Vec<Vertex> = alphas
        .iter()
        .enumerate()
        .map(|(i, alpha)| Vertex::new(field.neg(alpha), params.target(i)))
        .collect();

    let distinct = |vs: &[Vertex]| vs.iter().collect::<BTreeSet<_>>().len() == vs.len();
    assert!(distinct(&a), "A vertices collide");
    assert!(distinct(&b), "alphas from coprime polynomials must differ");
    if let Some(i) = b.iter().position(|v| v.a == 0) {
        return Err(Error::Degenerate(format!("B[{i}] has second coordinate 0")));
    }
    Ok(GeneralWitness {
        params: params.clone(),
        field,
        alphas,
        a,
        b,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralReport {
    pub graph: BicliqueReport,
    pub identity_checks: usize,
    pub identities_passed: usize,
    /// `(b_index, a_index)` pairs whose norm identity failed.
    pub identity_failures: Vec<(usize, usize)>,
    pub pass: bool,
}

impl GeneralReport {
    pub fn checks(&self) -> usize {
        self.graph.edge_checks + self.identity_checks
    }

    pub fn passed(&self) -> usize {
        self.graph.edges_passed + self.identities_passed
    }
}

/// Verifies stored sets against the parameters: adjacency in `P(p, t)` over
/// `f_1 - r`, and `N(c - alpha_i) = (f_i - r)(c) = theta_i - r` for each
/// base point `c` of `A`.
pub fn verify_general_sets(
    params: &GeneralParams,
    a: &[Vertex],
    b: &[Vertex],
) -> Result<GeneralReport> {
    let field = witness_field(params)?;
    let graph = NormGraph::from_field(params.t, field)?;
    let report = graph.verify_biclique(a, b);
    let field = graph.field();
    let ring = PolyRing::new(field.base());

    let mut identity_failures = Vec::new();
    let mut passed = 0;
    for (j, v) in b.iter().enumerate() {
        let poly = (j < params.m).then(|| params.shifted_poly(j));
        for (i, u) in a.iter().enumerate() {
            let ok = match (&poly, u.alpha.as_base(), graph.contains(u) && graph.contains(v)) {
                (Some(poly), Some(c), true) => {
                    let alpha = field.neg(&v.alpha);
                    let norm = field.norm(&field.sub(&field.constant(c), &alpha));
                    norm == ring.eval(poly, &c) && norm == params.target(j) && v.a == norm
                }
                _ => false,
            };
            if ok {
                passed += 1;
            } else {
                identity_failures.push((j, i));
            }
        }
    }
    let identity_checks = a.len() * b.len();
    let pass = report.pass
        && passed == identity_checks
        && a.len() == params.t - 1
        && b.len() == params.m;
    Ok(GeneralReport {
        graph: report,
        identity_checks,
        identities_passed: passed,
        identity_failures,
        pass,
    })
}

pub fn verify_general_witness(w: &GeneralWitness) -> Result<GeneralReport> {
    verify_general_sets(&w.params, &w.a, &w.b)
}

/// Checks `N(c - alpha_i) = (f_i - r)(c)` at `samples` seeded random `c`.
pub fn random_norm_identity(w: &GeneralWitness, samples: usize, seed: u64) -> bool {
    let f = *w.field.base();
    let ring = PolyRing::new(&f);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).all(|_| {
        let c = f.random(&mut rng);
        w.alphas.iter().enumerate().all(|(i, alpha)| {
            w.field.norm(&w.field.sub(&w.field.constant(c), alpha))
                == ring.eval(&w.params.shifted_poly(i), &c)
        })
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralWitnessJson {
    pub t: usize,
    pub m: usize,
    pub p: u64,
    pub r: u64,
    pub thetas: Vec<u64>,
    pub zeta: u64,
    #[serde(rename = "A")]
    pub a: Vec<Vertex>,
    #[serde(rename = "B")]
    pub b: Vec<Vertex>,
    pub verified: bool,
}

impl GeneralWitnessJson {
    pub fn params(&self) -> GeneralParams {
        GeneralParams {
            t: self.t,
            m: self.m,
            p: self.p,
            r: self.r,
            thetas: self.thetas.clone(),
            zeta: self.zeta,
        }
    }

    pub fn verify(&self) -> Result<GeneralReport> {
        verify_general_sets(&self.params(), &self.a, &self.b)
    }
}

impl GeneralWitness {
    pub fn to_json(&self, verified: bool) -> GeneralWitnessJson {
        let p = &self.params;
        GeneralWitnessJson {
            t: p.t,
            m: p.m,
            p: p.p,
            r: p.r,
            thetas: p.thetas.clone(),
            zeta: p.zeta,
            a: self.a.clone(),
            b: self.b.clone(),
            verified,
        }
    }
}
