//! The explicit `K_{4,6}` in `P(p, 4)` and the primes that carry it.
//!
//! A prime qualifies when `F_p` contains a primitive cube root of unity,
//! `x^3 - 2` and `x^3 - 3` stay irreducible and `x^3 - 6` splits, and `p`
//! divides neither `disc((x^3-2)(x^3-3)) = 26244` nor
//! `disc(x^3 + 21x^2 + 3x + 7) = -248832`. Over such a prime the extension
//! `GF(p^3) = F_p[x]/(x^3 - 2)` with `theta` the class of `x` hosts
//!
//! ```text
//! A = {(0,3), (1,4), (2,5), (theta+1,6)}
//! B = {(zeta^k theta^2 - 1, 1) : k = 0,1,2}
//!   u {(-(1-eta)/4 theta^2 - (1+eta)/2 theta - 1, (1+3 eta^2)/4) : g(eta) = 0}
//! ```
//!
//! and every pair in `A x B` is an edge.

use std::fmt;
use std::sync::OnceLock;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Error;
use crate::ff_arith::{ExtElement, ExtField, FiniteField, PrimeField};
use crate::norm_graph::{BicliqueReport, NormGraph, Vertex, WitnessJson};
use crate::poly::{power_residue, primitive_nth_root, roots_in_base, IntPoly, Poly, PolyRing};
use crate::primes::{is_prime, primes_up_to};

/// `disc((x^3 - 2)(x^3 - 3))`.
pub const DISC_F: i128 = 26_244;
/// `disc(x^3 + 21x^2 + 3x + 7)`.
pub const DISC_G: i128 = -248_832;

/// Target density of qualifying primes.
pub const DENSITY: f64 = 1.0 / 9.0;

/// `g(x) = x^3 + 21x^2 + 3x + 7`, little-endian.
pub const G_COEFFS: [i64; 4] = [7, 3, 21, 1];

pub fn f_poly() -> IntPoly<i128> {
    IntPoly::from_i64(&[-2, 0, 0, 1]).mul(&IntPoly::from_i64(&[-3, 0, 0, 1]))
}

pub fn g_poly() -> IntPoly<i128> {
    IntPoly::from_i64(&G_COEFFS)
}

/// Discriminants of `f` and `g`, recomputed once and checked against the
/// published constants.
pub fn discriminants() -> (i128, i128) {
    static DISCS: OnceLock<(i128, i128)> = OnceLock::new();
    *DISCS.get_or_init(|| {
        let df = f_poly().discriminant().expect("degree 6");
        let dg = g_poly().discriminant().expect("degree 3");
        assert_eq!(df, DISC_F, "recomputed disc(f) differs from 26244");
        assert_eq!(dg, DISC_G, "recomputed disc(g) differs from -248832");
        (df, dg)
    })
}

/// First failed condition for a non-qualifying integer.
#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize, Deserialize)]
pub enum Rejection {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{p} divides disc(f) = 26244")]
    DividesDiscF { p: u64 },
    #[error("{p} divides disc(g) = -248832")]
    DividesDiscG { p: u64 },
    #[error("no primitive cube root of unity mod {p} (p is not 1 mod 3)")]
    NoCubeRootOfUnity { p: u64 },
    #[error("x^3 - 2 is reducible: 2 is a cube mod {p}")]
    TwoIsCube { p: u64 },
    #[error("x^3 - 3 is reducible: 3 is a cube mod {p}")]
    ThreeIsCube { p: u64 },
    #[error("6 is not a cube mod {p}")]
    SixNotCube { p: u64 },
}

impl Rejection {
    /// Short machine-readable tag used in CSV output.
    pub fn code(&self) -> &'static str {
        match self {
            Rejection::NotPrime(_) => "not_prime",
            Rejection::DividesDiscF { .. } => "divides_disc_f",
            Rejection::DividesDiscG { .. } => "divides_disc_g",
            Rejection::NoCubeRootOfUnity { .. } => "no_cube_root_of_unity",
            Rejection::TwoIsCube { .. } => "two_is_cube",
            Rejection::ThreeIsCube { .. } => "three_is_cube",
            Rejection::SixNotCube { .. } => "six_not_cube",
        }
    }
}

/// Verified splitting data at a qualifying prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QualifyingCertificate {
    pub p: u64,
    /// Smallest primitive cube root of unity.
    pub zeta: u64,
    /// The three roots of `g` mod `p`, ascending.
    pub g_roots: [u64; 3],
    pub two_cubic_irreducible: bool,
    pub three_cubic_irreducible: bool,
    pub six_cubic_splits: bool,
    pub coprime_to_disc_f: bool,
    pub coprime_to_disc_g: bool,
}

/// Verdict from the polynomial conditions (irreducibility and splitting).
pub fn polynomial_verdict(p: u64) -> Result<(), Rejection> {
    if !is_prime(p) || p > crate::ff_arith::MAX_PRIME {
        return Err(Rejection::NotPrime(p));
    }
    let (df, dg) = discriminants();
    if df % p as i128 == 0 {
        return Err(Rejection::DividesDiscF { p });
    }
    if dg % p as i128 == 0 {
        return Err(Rejection::DividesDiscG { p });
    }
    let field = PrimeField::new(p).expect("checked prime");
    let ring = PolyRing::new(&field);
    let cyclotomic = Poly::from_ints(&field, &[1, 1, 1]);
    if !ring.splits_into_distinct_linear(&cyclotomic) {
        return Err(Rejection::NoCubeRootOfUnity { p });
    }
    let cubic = |c: i64| Poly::from_ints(&field, &[-c, 0, 0, 1]);
    if !ring.is_irreducible(&cubic(2)).expect("cubic") {
        return Err(Rejection::TwoIsCube { p });
    }
    if !ring.is_irreducible(&cubic(3)).expect("cubic") {
        return Err(Rejection::ThreeIsCube { p });
    }
    if !ring.splits_into_distinct_linear(&cubic(6)) {
        return Err(Rejection::SixNotCube { p });
    }
    Ok(())
}

/// Verdict from cubic residue symbols: `p = 1 mod 3`, 2 not a cube, 6 a cube.
pub fn residue_verdict(p: u64) -> bool {
    if !is_prime(p) || p > crate::ff_arith::MAX_PRIME {
        return false;
    }
    let (df, dg) = discriminants();
    if df % p as i128 == 0 || dg % p as i128 == 0 {
        return false;
    }
    p % 3 == 1
        && !power_residue(2, 3, p).expect("p > 3")
        && power_residue(6, 3, p).expect("p > 3")
}

/// Both formulations; panics if they disagree.
pub fn qualifies(p: u64) -> Result<(), Rejection> {
    let verdict = polynomial_verdict(p);
    assert_eq!(
        verdict.is_ok(),
        residue_verdict(p),
        "polynomial and residue formulations disagree at {p}"
    );
    verdict
}

/// Full certificate for a qualifying prime.
pub fn is_qualifying_prime(p: u64) -> Result<QualifyingCertificate, Rejection> {
    qualifies(p)?;
    let field = PrimeField::new(p).expect("qualifying primes are valid");
    let zeta = primitive_nth_root(3, p).expect("p = 1 mod 3");
    let g = g_poly().reduce_mod(&field);
    let mut roots = base_roots(&g, &field);
    roots.sort_unstable();
    assert_eq!(roots.len(), 3, "g must split into distinct linear factors at {p}");
    Ok(QualifyingCertificate {
        p,
        zeta,
        g_roots: [roots[0], roots[1], roots[2]],
        two_cubic_irreducible: true,
        three_cubic_irreducible: true,
        six_cubic_splits: true,
        coprime_to_disc_f: true,
        coprime_to_disc_g: true,
    })
}

/// Distinct roots of a split polynomial: exhaustive scan for small `p`,
/// seeded equal-degree splitting above the scan limit.
fn base_roots(h: &Poly<u64>, field: &PrimeField) -> Vec<u64> {
    if let Ok(roots) = roots_in_base(h, field) {
        return roots.into_iter().map(|r| r.value).collect();
    }
    let ring = PolyRing::new(field);
    let mut rng = ChaCha8Rng::seed_from_u64(field.p());
    let mut rest = ring.monic(h);
    let mut out = Vec::new();
    while rest.degree().unwrap_or(0) > 0 {
        let r = ring
            .split_off_root(&rest, &mut rng)
            .expect("polynomial splits into distinct linear factors");
        out.push(r);
        rest = ring.divrem(&rest, &ring.linear(field.neg(&r))).expect("nonzero").0;
    }
    out
}

/// One row of the sieve table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SieveEntry {
    pub p: u64,
    pub qualifying: bool,
    pub reason: Option<Rejection>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SieveSummary {
    pub limit: u64,
    pub count: usize,
    pub pi: usize,
    pub ratio: f64,
    pub target: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SieveResult {
    /// Every prime up to the limit, ascending.
    pub entries: Vec<SieveEntry>,
    pub summary: SieveSummary,
}

impl SieveResult {
    pub fn qualifying(&self) -> Vec<u64> {
        self.entries
            .iter()
            .filter(|e| e.qualifying)
            .map(|e| e.p)
            .collect()
    }

    /// `p,qualifying,reason` rows with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("p,qualifying,reason\n");
        for e in &self.entries {
            let reason = e.reason.as_ref().map_or("", Rejection::code);
            out.push_str(&format!("{},{},{}\n", e.p, e.qualifying, reason));
        }
        out
    }
}

/// Every qualifying prime up to `limit` with density statistics. Both
/// formulations are evaluated for every prime.
pub fn sieve_qualifying(limit: u64) -> SieveResult {
    let primes = primes_up_to(limit);
    let entries: Vec<SieveEntry> = primes
        .par_iter()
        .map(|&p| {
            let verdict = qualifies(p);
            SieveEntry {
                p,
                qualifying: verdict.is_ok(),
                reason: verdict.err(),
            }
        })
        .collect();
    let count = entries.iter().filter(|e| e.qualifying).count();
    let pi = entries.len();
    SieveResult {
        summary: SieveSummary {
            limit,
            count,
            pi,
            ratio: if pi == 0 { 0.0 } else { count as f64 / pi as f64 },
            target: DENSITY,
        },
        entries,
    }
}

/// The explicit `K_{4,6}` over `F_p[x]/(x^3 - 2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessK46 {
    pub certificate: QualifyingCertificate,
    pub field: ExtField,
    pub a: Vec<Vertex>,
    pub b: Vec<Vertex>,
    /// `s` with the chosen cube root of 2 equal to `s * x`.
    pub theta_scale: u64,
}

/// `GF(p^3)` presented with modulus `x^3 - 2`.
pub fn cubic_field(p: u64) -> Result<ExtField, Error> {
    ExtField::from_ints(p, &[-2, 0, 0, 1])
}

/// Builds the witness using the certificate's `zeta` and `g_roots`.
pub fn build_witness(cert: &QualifyingCertificate) -> Result<WitnessK46, Error> {
    build_witness_labeled(cert, 0, false)
}

/// Variant under another choice of place: `theta_1` is sent to
/// `zeta^theta_shift * theta` and `zeta` may be replaced by `zeta^2`.
pub fn build_witness_labeled(
    cert: &QualifyingCertificate,
    theta_shift: u32,
    conjugate_zeta: bool,
) -> Result<WitnessK46, Error> {
    let field = cubic_field(cert.p)?;
    let f = *field.base();
    let zeta = if conjugate_zeta {
        f.mul(&cert.zeta, &cert.zeta)
    } else {
        cert.zeta
    };
    let theta_scale = f.pow(&zeta, theta_shift as u64);
    let theta = field.scale(&field.generator(), theta_scale);
    let theta2 = field.mul(&theta, &theta);
    let one = field.one();
    let c = |v: u64| field.constant(v);

    let a = vec![
        Vertex::new(c(0), 3 % cert.p),
        Vertex::new(c(1), 4 % cert.p),
        Vertex::new(c(2), 5 % cert.p),
        Vertex::new(field.add(&theta, &one), 6 % cert.p),
    ];

    let inv2 = f.inv(&2)?;
    let inv4 = f.inv(&4)?;
    let mut b: Vec<Vertex> = (0..3u64)
        .map(|k| {
            let zk = f.pow(&zeta, k);
            Vertex::new(field.sub(&field.scale(&theta2, zk), &one), 1)
        })
        .collect();
    for &eta in &cert.g_roots {
        let ca = f.neg(&f.mul(&f.sub(&1, &eta), &inv4));
        let cb = f.neg(&f.mul(&f.add(&1, &eta), &inv2));
        let alpha = field.sub(
            &field.add(&field.scale(&theta2, ca), &field.scale(&theta, cb)),
            &one,
        );
        let v = f.mul(&f.add(&1, &f.mul(&3, &f.mul(&eta, &eta))), &inv4);
        b.push(Vertex::new(alpha, v));
    }

    check_nondegenerate(&a, &b)?;
    Ok(WitnessK46 {
        certificate: cert.clone(),
        field,
        a,
        b,
        theta_scale,
    })
}

fn check_nondegenerate(a: &[Vertex], b: &[Vertex]) -> Result<(), Error> {
    let all: Vec<(&str, usize, &Vertex)> = a
        .iter()
        .enumerate()
        .map(|(i, v)| ("A", i, v))
        .chain(b.iter().enumerate().map(|(i, v)| ("B", i, v)))
        .collect();
    for (side, i, v) in &all {
        if v.a == 0 {
            return Err(Error::Degenerate(format!("{side}[{i}] has second coordinate 0")));
        }
    }
    for (x, (s1, i1, v1)) in all.iter().enumerate() {
        for (s2, i2, v2) in &all[x + 1..] {
            if v1 == v2 {
                return Err(Error::Degenerate(format!("{s1}[{i1}] and {s2}[{i2}] coincide")));
            }
        }
    }
    Ok(())
}

/// The four closed-form norm identities for one `B` vertex
/// `(a theta^2 + b theta - 1, v)`, against the `A` values 3, 4, 5, 6.
/// `theta_scale` is `s` with `theta = s * x`.
pub fn norm_identities(f: &PrimeField, alpha: &ExtElement, v: u64, theta_scale: u64) -> [bool; 4] {
    let cs = alpha.coeffs();
    if cs.len() != 3 || cs[0] != f.neg(&1) || theta_scale == 0 {
        return [false; 4];
    }
    let s_inv = f.inv(&theta_scale).expect("nonzero");
    let b = f.mul(&cs[1], &s_inv);
    let a = f.mul(&cs[2], &f.mul(&s_inv, &s_inv));
    let r = |x: i64| f.reduce(x);
    let cube = |x: u64| f.mul(&x, &f.mul(&x, &x));
    let core = f.add(&f.mul(&4, &cube(a)), &f.mul(&2, &cube(b)));
    let six_ab = f.mul(&6, &f.mul(&a, &b));
    let lhs = [
        f.sub(&f.add(&core, &six_ab), &1),
        core,
        f.add(&f.sub(&core, &six_ab), &1),
        f.add(
            &f.add(&core, &f.mul(&6, &f.mul(&b, &b))),
            &f.add(&f.mul(&6, &b), &2),
        ),
    ];
    let mut out = [false; 4];
    for (i, m) in [3i64, 4, 5, 6].into_iter().enumerate() {
        out[i] = lhs[i] == f.mul(&r(m), &v);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub graph: BicliqueReport,
    pub identity_checks: usize,
    pub identities_passed: usize,
    /// `(b_index, identity_index)` pairs that failed.
    pub identity_failures: Vec<(usize, usize)>,
    pub pass: bool,
}

impl WitnessReport {
    pub fn checks(&self) -> usize {
        self.graph.edge_checks + self.identity_checks
    }

    pub fn passed(&self) -> usize {
        self.graph.edges_passed + self.identities_passed
    }
}

impl fmt::Display for WitnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "adjacency {}/{}, identities {}/{}, {}",
            self.graph.edges_passed,
            self.graph.edge_checks,
            self.identities_passed,
            self.identity_checks,
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}

/// Graph-level and identity-level verification of `a x b` in `P(p, 4)`
/// over `x^3 - 2`.
pub fn verify_sets(
    p: u64,
    a: &[Vertex],
    b: &[Vertex],
    theta_scale: u64,
) -> Result<WitnessReport, Error> {
    let field = cubic_field(p)?;
    let graph = NormGraph::from_field(4, field)?;
    let report = graph.verify_biclique(a, b);
    let f = *graph.field().base();
    let mut identity_failures = Vec::new();
    let mut passed = 0;
    for (j, v) in b.iter().enumerate() {
        let checks = if graph.contains(v) {
            norm_identities(&f, &v.alpha, v.a, theta_scale)
        } else {
            [false; 4]
        };
        for (i, ok) in checks.into_iter().enumerate() {
            if ok {
                passed += 1;
            } else {
                identity_failures.push((j, i));
            }
        }
    }
    let identity_checks = 4 * b.len();
    let pass = report.pass && passed == identity_checks && a.len() == 4 && b.len() == 6;
    Ok(WitnessReport {
        graph: report,
        identity_checks,
        identities_passed: passed,
        identity_failures,
        pass,
    })
}

pub fn verify_witness(w: &WitnessK46) -> Result<WitnessReport, Error> {
    verify_sets(w.certificate.p, &w.a, &w.b, w.theta_scale)
}

impl WitnessK46 {
    pub fn to_json(&self, verified: bool) -> WitnessJson {
        WitnessJson {
            p: self.certificate.p,
            t: 4,
            modulus: self.field.modulus().to_vec(),
            left: self.a.clone(),
            right: self.b.clone(),
            verified,
        }
    }
}

/// `true` when `json` has the shape of a `K_{4,6}` witness over `x^3 - 2`.
pub fn is_k46_json(json: &WitnessJson) -> bool {
    json.t == 4
        && json.left.len() == 4
        && json.right.len() == 6
        && json.p > 2
        && json.modulus == [json.p - 2, 0, 0, 1]
}

/// Verifies the canonical witness under all six choices of
/// `(image of theta_1, zeta)`.
pub fn verify_all_labelings(cert: &QualifyingCertificate) -> Result<Vec<WitnessReport>, Error> {
    let mut out = Vec::new();
    for shift in 0..3 {
        for conj in [false, true] {
            out.push(verify_witness(&build_witness_labeled(cert, shift, conj)?)?);
        }
    }
    Ok(out)
}
