//! Projective norm graphs `P(p, t)` over prime fields.
//!
//! The graph has vertex set `GF(p^(t-1)) x F_p^*`, with `(alpha, a)` adjacent
//! to `(beta, b)` iff `N(alpha + beta) = a*b`, where `N` is the norm down to
//! `F_p`. The crate provides the field and polynomial arithmetic behind it,
//! an implicit graph with common-neighborhood censuses, the explicit
//! `K_{4,6}` construction in `P(p, 4)` together with the sieve for the primes
//! that admit it, and the `K_{t-1,m}` construction in `P(p, t)`.

pub mod cli;
pub mod error;
pub mod ff_arith;
pub mod norm_graph;
pub mod poly;
pub mod primes;
pub mod witness_general;
pub mod witness_k46;

pub use error::{Error, Result};
pub use ff_arith::{ExtElement, ExtField, FiniteField, PrimeField};
pub use norm_graph::{BicliqueReport, NormGraph, Vertex};
pub use poly::{IntPoly, Poly, PolyRing};

/// Polynomials over `F_p`.
pub type FpPoly = Poly<u64>;
/// Polynomials over an extension field.
pub type ExtPoly = Poly<ExtElement>;
/// Integer polynomials with machine-width exact coefficients.
pub type IntPoly128 = IntPoly<i128>;
/// Integer polynomials with arbitrary-precision coefficients.
pub type BigIntPoly = IntPoly<num_bigint::BigInt>;
