use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use normgraph::ff_arith::{ExtField, FiniteField, PrimeField};
use normgraph::norm_graph::NormGraph;
use normgraph::poly::roots_in_base;
use normgraph::witness_general::{
    build_general_witness, find_parameters, random_norm_identity, verify_general_witness,
};
use normgraph::witness_k46::{build_witness, is_qualifying_prime, sieve_qualifying};
use normgraph::{Poly, PolyRing};

fn field(p: u64, k: usize) -> ExtField {
    NormGraph::new(p, k + 1, None).unwrap().field().clone()
}

#[test]
fn frobenius_is_a_ring_homomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (p, k) in [(7, 3), (17, 3), (5, 4)] {
        let f = field(p, k);
        for _ in 0..500 {
            let x = f.random(&mut rng);
            let y = f.random(&mut rng);
            assert_eq!(f.frobenius(&f.add(&x, &y)), f.add(&f.frobenius(&x), &f.frobenius(&y)));
            assert_eq!(f.frobenius(&f.mul(&x, &y)), f.mul(&f.frobenius(&x), &f.frobenius(&y)));
        }
    }
}

#[test]
fn degrees_and_edge_counts() {
    for (p, t) in [(3u64, 3usize), (3, 4), (5, 3)] {
        let g = NormGraph::new(p, t, None).unwrap();
        let n = g.vertex_count() as u64;
        let q = p.pow(t as u32 - 1);
        let mut total = 0u64;
        for id in 0..n {
            let d = g.neighbor_ids(id).unwrap().len() as u64;
            assert!(d == q - 1 || d == q - 2, "degree {d} at ({p},{t})");
            total += d;
        }
        let edges = g.edge_count().unwrap();
        assert_eq!(2 * edges, total);
        assert!(2 * edges >= n * (q - 2));
    }
}

#[test]
fn census_never_exceeds_factorial_bound() {
    for (p, t) in [(2u64, 3usize), (2, 4), (3, 3), (3, 4), (5, 3), (2, 5)] {
        let g = NormGraph::new(p, t, None).unwrap();
        let bound: usize = (1..t).product();
        let c = g.census_max_common(t, 10_000_000).unwrap();
        assert!(c.max <= bound, "P({p},{t}) max {} > {bound}", c.max);
    }
}

#[test]
fn witness_is_maximal_at_small_qualifying_primes() {
    for p in [7u64, 37] {
        let w = build_witness(&is_qualifying_prime(p).unwrap()).unwrap();
        let g = NormGraph::from_field(4, w.field.clone()).unwrap();
        let common: BTreeSet<_> = g.common_neighbors(&w.a).unwrap().into_iter().collect();
        let b: BTreeSet<_> = w.b.iter().cloned().collect();
        assert_eq!(common, b, "p = {p}");
    }
}

#[test]
fn density_windows() {
    for (limit, tol) in [(10_000u64, 0.02), (100_000, 0.015)] {
        let s = sieve_qualifying(limit).summary;
        assert!((s.ratio - 1.0 / 9.0).abs() <= tol, "ratio {} at {limit}", s.ratio);
    }
    let s = sieve_qualifying(10_000).summary;
    assert_eq!((s.count, s.pi), (134, 1229));
}

#[test]
fn general_witnesses_up_to_one_hundred() {
    let found = find_parameters(4, 2, 100, usize::MAX).unwrap();
    assert!(!found.is_empty());
    assert_eq!(found, find_parameters(4, 2, 100, usize::MAX).unwrap());
    for params in &found {
        let f = PrimeField::new(params.p).unwrap();
        let ring = PolyRing::new(&f);
        for i in 0..params.m {
            for j in i + 1..params.m {
                let g = ring.gcd(&params.shifted_poly(i), &params.shifted_poly(j));
                assert!(g.degree() == Some(0), "{params:?}");
            }
        }
        let w = build_general_witness(params, 0).unwrap();
        assert!(verify_general_witness(&w).unwrap().pass, "{params:?}");
        assert!(random_norm_identity(&w, 100, params.p));
    }
}

fn ext_element(p: u64, k: usize) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0..p, k)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn norm_is_multiplicative(x in ext_element(37, 3), y in ext_element(37, 3)) {
        let f = field(37, 3);
        let (x, y) = (f.element(x).unwrap(), f.element(y).unwrap());
        prop_assert_eq!(f.norm(&f.mul(&x, &y)), f.base().mul(&f.norm(&x), &f.norm(&y)));
    }

    #[test]
    fn nonzero_elements_invert(x in ext_element(17, 3)) {
        let f = field(17, 3);
        let x = f.element(x).unwrap();
        prop_assume!(!x.is_zero());
        let inv = f.inv(&x).unwrap();
        prop_assert_eq!(f.mul(&x, &inv), f.one());
    }

    #[test]
    fn vertex_ids_round_trip(id in 0u64..2058) {
        let g = NormGraph::new(7, 4, None).unwrap();
        let v = g.vertex_from_id(id).unwrap();
        prop_assert_eq!(g.vertex_id(&v).unwrap(), id);
    }

    #[test]
    fn adjacency_is_symmetric(u in 0u64..2058, v in 0u64..2058) {
        prop_assume!(u != v);
        let g = NormGraph::new(7, 4, None).unwrap();
        let (u, v) = (g.vertex_from_id(u).unwrap(), g.vertex_from_id(v).unwrap());
        prop_assert_eq!(g.adjacent(&u, &v).unwrap(), g.adjacent(&v, &u).unwrap());
    }

    #[test]
    fn roots_are_roots(coeffs in prop::collection::vec(0u64..31, 2..7)) {
        let f = PrimeField::new(31).unwrap();
        let h = Poly::new(coeffs);
        prop_assume!(h.degree().unwrap_or(0) >= 1);
        let ring = PolyRing::new(&f);
        let roots = roots_in_base(&h, &f).unwrap();
        prop_assert!(roots.len() <= h.degree().unwrap());
        for r in roots {
            prop_assert!(r.value < 31);
            prop_assert_eq!(ring.eval(&h, &r.value), 0);
        }
    }
}
