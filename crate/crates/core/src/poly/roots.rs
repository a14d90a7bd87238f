//! Roots, residues and irreducibility for polynomials over `F_p`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Poly, PolyRing};
use crate::error::{Error, Result};
use crate::ff_arith::{fp_pow, ExtElement, ExtField, PrimeField};
use crate::primes::{gcd, prime_factors};

/// Upper bound on equal-degree splitting attempts before a non-splitting
/// input is reported.
pub const SPLIT_ATTEMPTS: usize = 64;

/// Exhaustive root scans are limited to `p < 2^22`.
pub const ROOT_SCAN_LIMIT: u64 = 1 << 22;

/// A root in `F_p`; `repeated` is set when it is also a root of `h'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BaseRoot {
    pub value: u64,
    pub repeated: bool,
}

/// Rabin irreducibility test over `F_p`.
pub fn is_irreducible(h: &Poly<u64>, field: &PrimeField) -> Result<bool> {
    PolyRing::new(field).is_irreducible(h)
}

/// Irreducibility by root existence; only valid for degree 2 and 3.
pub fn is_irreducible_by_roots(h: &Poly<u64>, field: &PrimeField) -> Result<bool> {
    match h.degree() {
        Some(1) => Ok(true),
        Some(2) | Some(3) => {
            let ring = PolyRing::new(field);
            Ok(field.elements().all(|x| ring.eval(h, &x) != 0))
        }
        other => Err(Error::InvalidParameter(format!(
            "root shortcut needs degree 1..=3, got {other:?}"
        ))),
    }
}

/// Every root of `h` in `F_p` by exhaustive scan, ascending.
pub fn roots_in_base(h: &Poly<u64>, field: &PrimeField) -> Result<Vec<BaseRoot>> {
    match h.degree() {
        Some(d) if d >= 1 => {}
        other => return Err(Error::DegreeTooSmall { min: 1, found: other }),
    }
    if field.p() >= ROOT_SCAN_LIMIT {
        return Err(Error::ScanGuard(field.p()));
    }
    let ring = PolyRing::new(field);
    let dh = ring.derivative(h);
    Ok(field
        .elements()
        .filter(|x| ring.eval(h, x) == 0)
        .map(|value| BaseRoot {
            value,
            repeated: ring.eval(&dh, &value) == 0,
        })
        .collect())
}

/// A root of `h` in `field`, for `h` over `F_p` whose irreducible factors
/// all have degree dividing `[field : F_p]`. Deterministic in `seed`.
pub fn find_root_in_ext(h: &Poly<u64>, field: &ExtField, seed: u64) -> Result<ExtElement> {
    if h.degree().unwrap_or(0) == 0 {
        return Err(Error::DegreeTooSmall { min: 1, found: h.degree() });
    }
    let base = field.base();
    let ring = PolyRing::new(base);
    // Strip repeated factors so the lifted polynomial has distinct roots.
    let squarefree = {
        let g = ring.gcd(h, &ring.derivative(h));
        if g.degree() == Some(0) {
            ring.monic(h)
        } else {
            ring.divrem(h, &g)?.0
        }
    };
    let lifted = squarefree.lift(field);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let root = PolyRing::new(field).split_off_root(&lifted, &mut rng)?;
    assert!(
        PolyRing::new(field).eval(&h.lift(field), &root).is_zero(),
        "extracted value is not a root"
    );
    Ok(root)
}

/// Whether nonzero `a` is an `m`-th power in `F_p^*`.
pub fn power_residue(a: u64, m: u64, p: u64) -> Result<bool> {
    if m == 0 {
        return Err(Error::InvalidParameter("power must be positive".into()));
    }
    if a % p == 0 {
        return Err(Error::InvalidParameter("zero has no power-residue class".into()));
    }
    let d = gcd(m, p - 1);
    Ok(fp_pow(a, (p - 1) / d, p) == 1)
}

/// Smallest element of exact multiplicative order `n` in `F_p^*`, if any.
pub fn primitive_nth_root(n: u64, p: u64) -> Option<u64> {
    if n == 0 || (p - 1) % n != 0 {
        return None;
    }
    if n == 1 {
        return Some(1);
    }
    let factors = prime_factors(n);
    let has_order_n = |w: u64| w != 0 && factors.iter().all(|&l| fp_pow(w, n / l, p) != 1);
    let w = (2..p)
        .map(|c| fp_pow(c, (p - 1) / n, p))
        .find(|&w| has_order_n(w))?;
    // the primitive n-th roots are exactly w^j with gcd(j, n) = 1
    (1..n)
        .filter(|&j| gcd(j, n) == 1)
        .map(|j| fp_pow(w, j, p))
        .min()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff_arith::FiniteField;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn irreducibility_examples() {
        let f = fp(7);
        let c2 = Poly::from_ints(&f, &[-2, 0, 0, 1]);
        let c6 = Poly::from_ints(&f, &[-6, 0, 0, 1]);
        assert!(is_irreducible(&c2, &f).unwrap());
        assert!(!is_irreducible(&c6, &f).unwrap());
        for p in [2, 7, 101] {
            let f = fp(p);
            assert!(is_irreducible(&Poly::from_ints(&f, &[-5, 1]), &f).unwrap());
        }
        assert!(is_irreducible(&Poly::from_ints(&f, &[3]), &f).is_err());
        assert!(is_irreducible(&Poly::zero(), &f).is_err());
    }

    #[test]
    fn rabin_handles_composite_degrees() {
        let f = fp(2);
        // x^4 + x + 1 irreducible, x^4 + x^2 + 1 = (x^2 + x + 1)^2 reducible
        assert!(is_irreducible(&Poly::new(vec![1, 1, 0, 0, 1]), &f).unwrap());
        assert!(!is_irreducible(&Poly::new(vec![1, 0, 1, 0, 1]), &f).unwrap());
        let f = fp(3);
        // (x^2+1)(x^2+x+2): no roots but reducible
        let ring = PolyRing::new(&f);
        let prod = ring.mul(&Poly::new(vec![1, 0, 1]), &Poly::new(vec![2, 1, 1]));
        assert!(!is_irreducible(&prod, &f).unwrap());
        assert!(field_elements_have_no_root(&prod, &f));
    }

    fn field_elements_have_no_root(h: &Poly<u64>, f: &PrimeField) -> bool {
        let ring = PolyRing::new(f);
        f.elements().all(|x| ring.eval(h, &x) != 0)
    }

    #[test]
    fn rabin_matches_root_shortcut_on_all_monic_cubics() {
        for p in [7u64, 13] {
            let f = fp(p);
            for c0 in 0..p {
                for c1 in 0..p {
                    for c2 in 0..p {
                        let h = Poly::new(vec![c0, c1, c2, 1]);
                        assert_eq!(
                            is_irreducible(&h, &f).unwrap(),
                            is_irreducible_by_roots(&h, &f).unwrap(),
                            "{h:?} mod {p}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn roots_examples() {
        let f = fp(7);
        let vals = |h: &Poly<u64>| -> Vec<u64> {
            roots_in_base(h, &f).unwrap().iter().map(|r| r.value).collect()
        };
        assert_eq!(vals(&Poly::from_ints(&f, &[7, 3, 21, 1])), vec![0, 2, 5]);
        assert_eq!(vals(&Poly::from_ints(&f, &[-6, 0, 0, 1])), vec![3, 5, 6]);
        assert!(vals(&Poly::from_ints(&f, &[1, 0, 1])).is_empty());
        let double = Poly::from_ints(&f, &[1, -2, 1]); // (x-1)^2
        assert_eq!(
            roots_in_base(&double, &f).unwrap(),
            vec![BaseRoot { value: 1, repeated: true }]
        );
        assert!(matches!(
            roots_in_base(&Poly::new(vec![0, 1]), &PrimeField::new(4_194_319).unwrap()),
            Err(Error::ScanGuard(_))
        ));
    }

    #[test]
    fn find_root_examples() {
        let field = ExtField::from_ints(7, &[-2, 0, 0, 1]).unwrap();
        let h = Poly::from_ints(field.base(), &[-2, 0, 0, 1]);
        for seed in 0..10 {
            let r = find_root_in_ext(&h, &field, seed).unwrap();
            assert_eq!(field.pow(&r, 3), field.constant(2));
            assert_eq!(r, find_root_in_ext(&h, &field, seed).unwrap());
        }
        let two_theta = field.scale(&field.generator(), 2);
        assert_eq!(field.pow(&two_theta, 3), field.constant(2));

        let f17 = ExtField::from_ints(17, &[2, -1, 0, 1]).unwrap(); // x^3 - x + 2
        let h = Poly::from_ints(f17.base(), &[14, -1, 0, 1]);
        let alpha = find_root_in_ext(&h, &f17, 5).unwrap();
        let ring = PolyRing::new(&f17);
        assert!(ring.eval(&h.lift(&f17), &alpha).is_zero());
    }

    #[test]
    fn find_root_rejects_non_splitting_input() {
        // degree-2 irreducible has no root in a cubic extension
        let field = ExtField::from_ints(7, &[-2, 0, 0, 1]).unwrap();
        let h = Poly::from_ints(field.base(), &[1, 0, 1]);
        assert_eq!(
            find_root_in_ext(&h, &field, 0),
            Err(Error::NoSplit { attempts: SPLIT_ATTEMPTS })
        );
    }

    #[test]
    fn power_residue_examples() {
        assert!(!power_residue(2, 3, 7).unwrap());
        assert!(power_residue(6, 3, 7).unwrap());
        assert!(power_residue(5, 1, 7).unwrap());
        assert!(power_residue(0, 3, 7).is_err());
    }

    #[test]
    fn power_residue_matches_exhaustive_powers() {
        for p in [7u64, 13, 17, 37] {
            for m in [2u64, 3, 4, 6] {
                let powers: std::collections::BTreeSet<u64> =
                    (1..p).map(|x| fp_pow(x, m, p)).collect();
                for a in 1..p {
                    assert_eq!(power_residue(a, m, p).unwrap(), powers.contains(&a));
                }
            }
        }
    }

    #[test]
    fn primitive_root_examples() {
        assert_eq!(primitive_nth_root(3, 7), Some(2));
        assert_eq!(primitive_nth_root(3, 5), None);
        assert_eq!(primitive_nth_root(2, 17), Some(16));
        assert_eq!(primitive_nth_root(1, 17), Some(1));
        // brute force: smallest element of exact order n
        for p in [7u64, 13, 31, 37, 61] {
            for n in 1..p {
                let brute = (1..p).find(|&x| {
                    fp_pow(x, n, p) == 1 && (1..n).all(|e| fp_pow(x, e, p) != 1)
                });
                assert_eq!(primitive_nth_root(n, p), brute, "n={n} p={p}");
            }
        }
    }
}
