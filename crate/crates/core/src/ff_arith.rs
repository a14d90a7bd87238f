//! Exact arithmetic in prime fields and in extensions `F_p[x]/(m(x))`.
//!
//! Residues are plain `u64` values in `[0, p)` whose modulus is carried by a
//! [`PrimeField`] context. Extension elements are little-endian coefficient
//! vectors against the power basis `1, x, ..., x^(k-1)`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Poly, PolyRing};
use crate::primes::is_prime;

/// Largest supported characteristic. Products of two residues fit in `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// Vertex enumeration is only offered for fields with at most `2^40` elements.
pub const MAX_INDEXABLE_BITS: u32 = 40;

/// `a^e mod p` by square-and-multiply. `0^0 = 1`.
pub fn fp_pow(a: u64, mut e: u64, p: u64) -> u64 {
    let p128 = p as u128;
    let mut base = (a % p) as u128;
    let mut acc = 1u128 % p128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p128;
        }
        base = base * base % p128;
        e >>= 1;
    }
    acc as u64
}

/// Inverse of `a` modulo `p` via the extended Euclidean algorithm.
pub fn fp_inv(a: u64, p: u64) -> Result<u64> {
    let a = a % p;
    if a == 0 {
        return Err(Error::ZeroInverse);
    }
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return Err(Error::NotPrime(p));
    }
    Ok(s0.rem_euclid(p as i128) as u64)
}

/// Minimal field interface shared by `F_p` and `GF(p^k)`, used by the
/// generic polynomial ring.
pub trait FiniteField {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn characteristic(&self) -> u64;
    fn order(&self) -> BigUint;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    /// Image of the integer `c` under `Z -> F_p -> F`.
    fn from_u64(&self, c: u64) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn inv(&self, x: &Self::Elem) -> Result<Self::Elem>;
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    fn pow(&self, x: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = x.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn pow_big(&self, x: &Self::Elem, e: &BigUint) -> Self::Elem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, x);
            }
        }
        acc
    }
}

/// The prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > MAX_PRIME {
            return Err(Error::InvalidParameter(format!(
                "prime {p} exceeds the supported bound 2^31"
            )));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    /// Canonical residue of a signed integer.
    #[inline]
    pub fn reduce(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    /// Every element of `F_p`, ascending.
    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.p
    }
}

impl FiniteField for PrimeField {
    type Elem = u64;

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn order(&self) -> BigUint {
        BigUint::from(self.p)
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn is_zero(&self, x: &u64) -> bool {
        *x == 0
    }

    fn from_u64(&self, c: u64) -> u64 {
        c % self.p
    }

    #[inline]
    fn add(&self, x: &u64, y: &u64) -> u64 {
        let s = x + y;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    fn sub(&self, x: &u64, y: &u64) -> u64 {
        if x >= y {
            x - y
        } else {
            x + self.p - y
        }
    }

    #[inline]
    fn neg(&self, x: &u64) -> u64 {
        if *x == 0 {
            0
        } else {
            self.p - x
        }
    }

    #[inline]
    fn mul(&self, x: &u64, y: &u64) -> u64 {
        x * y % self.p
    }

    fn inv(&self, x: &u64) -> Result<u64> {
        fp_inv(*x, self.p)
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }

    fn pow(&self, x: &u64, e: u64) -> u64 {
        fp_pow(*x, e, self.p)
    }
}

/// An element of `GF(p^k)`: `k` canonical residues, little-endian.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExtElement {
    coeffs: Vec<u64>,
}

impl ExtElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u64> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The constant coefficient if every other coefficient vanishes.
    pub fn as_base(&self) -> Option<u64> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }
}

impl fmt::Debug for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => f.write_str("x")?,
                (1, _) => write!(f, "{c}x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{c}x^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `GF(p^k)` presented as `F_p[x]/(modulus)` with a monic irreducible modulus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ExtFieldJson", into = "ExtFieldJson")]
pub struct ExtField {
    base: PrimeField,
    /// Monic, little-endian, length `k + 1`.
    modulus: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct ExtFieldJson {
    p: u64,
    k: usize,
    modulus: Vec<u64>,
}

impl TryFrom<ExtFieldJson> for ExtField {
    type Error = Error;

    fn try_from(json: ExtFieldJson) -> Result<Self> {
        if json.modulus.len() != json.k + 1 {
            return Err(Error::DimensionMismatch {
                expected: json.k + 1,
                found: json.modulus.len(),
            });
        }
        if json.modulus.iter().any(|&c| c >= json.p) {
            return Err(Error::InvalidParameter("modulus coefficient out of range".into()));
        }
        ExtField::new(json.p, &json.modulus)
    }
}

impl From<ExtField> for ExtFieldJson {
    fn from(field: ExtField) -> Self {
        ExtFieldJson {
            p: field.base.p,
            k: field.degree(),
            modulus: field.modulus,
        }
    }
}

impl ExtField {
    /// Builds `F_p[x]/(modulus)`; the modulus is given little-endian and
    /// reduced mod `p`. It must be monic and irreducible.
    pub fn new(p: u64, modulus: &[u64]) -> Result<Self> {
        let base = PrimeField::new(p)?;
        let poly = Poly::new(modulus.iter().map(|&c| c % p).collect());
        Self::from_poly(base, &poly)
    }

    /// Same as [`ExtField::new`] with signed coefficients, e.g. `[-2, 0, 0, 1]`.
    pub fn from_ints(p: u64, modulus: &[i64]) -> Result<Self> {
        let base = PrimeField::new(p)?;
        Self::from_poly(base, &Poly::from_ints(&base, modulus))
    }

    pub fn from_poly(base: PrimeField, modulus: &Poly<u64>) -> Result<Self> {
        match modulus.degree() {
            Some(d) if d >= 1 && modulus.lead() == Some(&1) => {}
            _ => return Err(Error::NotMonic),
        }
        if !PolyRing::new(&base).is_irreducible(modulus)? {
            return Err(Error::Reducible { p: base.p });
        }
        Ok(ExtField {
            base,
            modulus: modulus.coeffs().to_vec(),
        })
    }

    /// Trusted constructor for moduli already known to be irreducible.
    pub(crate) fn from_irreducible_unchecked(base: PrimeField, modulus: Vec<u64>) -> Self {
        debug_assert_eq!(modulus.last(), Some(&1));
        ExtField { base, modulus }
    }

    pub fn base(&self) -> &PrimeField {
        &self.base
    }

    pub fn p(&self) -> u64 {
        self.base.p
    }

    /// Extension degree `k`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn modulus_poly(&self) -> Poly<u64> {
        Poly::new(self.modulus.clone())
    }

    /// Number of elements `p^k` when it is at most `2^40`.
    pub fn size(&self) -> Option<u64> {
        let mut n: u64 = 1;
        for _ in 0..self.degree() {
            n = n.checked_mul(self.base.p)?;
        }
        (n <= 1 << MAX_INDEXABLE_BITS).then_some(n)
    }

    /// Validates length and residue range.
    pub fn element(&self, coeffs: Vec<u64>) -> Result<ExtElement> {
        if coeffs.len() != self.degree() {
            return Err(Error::DimensionMismatch {
                expected: self.degree(),
                found: coeffs.len(),
            });
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= self.base.p) {
            return Err(Error::InvalidParameter(format!(
                "coefficient {c} is not a residue mod {}",
                self.base.p
            )));
        }
        Ok(ExtElement { coeffs })
    }

    /// Element from signed little-endian coefficients; missing high
    /// coefficients are zero.
    pub fn element_from_ints(&self, coeffs: &[i64]) -> Result<ExtElement> {
        if coeffs.len() > self.degree() {
            return Err(Error::DimensionMismatch {
                expected: self.degree(),
                found: coeffs.len(),
            });
        }
        let mut out = vec![0; self.degree()];
        for (slot, &c) in out.iter_mut().zip(coeffs) {
            *slot = self.base.reduce(c);
        }
        Ok(ExtElement { coeffs: out })
    }

    /// Reduces an arbitrary `F_p` polynomial modulo the field modulus.
    pub fn element_from_poly(&self, poly: &Poly<u64>) -> ExtElement {
        let mut coeffs = poly.coeffs().to_vec();
        self.reduce_in_place(&mut coeffs);
        coeffs.resize(self.degree(), 0);
        ExtElement { coeffs }
    }

    pub fn constant(&self, c: u64) -> ExtElement {
        let mut coeffs = vec![0; self.degree()];
        coeffs[0] = c % self.base.p;
        ExtElement { coeffs }
    }

    /// The class of `x`, a root of the modulus.
    pub fn generator(&self) -> ExtElement {
        if self.degree() == 1 {
            return self.constant(self.base.neg(&self.modulus[0]));
        }
        let mut coeffs = vec![0; self.degree()];
        coeffs[1] = 1;
        ExtElement { coeffs }
    }

    pub fn contains(&self, x: &ExtElement) -> bool {
        x.coeffs.len() == self.degree() && x.coeffs.iter().all(|&c| c < self.base.p)
    }

    fn check(&self, x: &ExtElement) -> Result<()> {
        if x.coeffs.len() != self.degree() {
            return Err(Error::DimensionMismatch {
                expected: self.degree(),
                found: x.coeffs.len(),
            });
        }
        Ok(())
    }

    pub fn checked_mul(&self, x: &ExtElement, y: &ExtElement) -> Result<ExtElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    pub fn scale(&self, x: &ExtElement, c: u64) -> ExtElement {
        ExtElement {
            coeffs: x.coeffs.iter().map(|v| self.base.mul(v, &c)).collect(),
        }
    }

    fn reduce_in_place(&self, coeffs: &mut Vec<u64>) {
        let k = self.degree();
        let f = &self.base;
        while coeffs.len() > k {
            let top = coeffs.pop().unwrap();
            if top == 0 {
                continue;
            }
            let shift = coeffs.len() - k;
            for (i, &m) in self.modulus[..k].iter().enumerate() {
                let v = &mut coeffs[shift + i];
                *v = f.sub(v, &f.mul(&top, &m));
            }
        }
    }

    /// `x^p`.
    pub fn frobenius(&self, x: &ExtElement) -> ExtElement {
        self.pow(x, self.base.p)
    }

    /// Matrix of `y -> x*y` in the power basis; column `j` holds `x * x^j`.
    pub fn multiplication_matrix(&self, x: &ExtElement) -> Vec<Vec<u64>> {
        let k = self.degree();
        let mut columns = Vec::with_capacity(k);
        let mut col = x.clone();
        for _ in 0..k {
            columns.push(col.coeffs.clone());
            col = self.mul_by_x(&col);
        }
        (0..k).map(|i| (0..k).map(|j| columns[j][i]).collect()).collect()
    }

    fn mul_by_x(&self, x: &ExtElement) -> ExtElement {
        let mut coeffs = Vec::with_capacity(self.degree() + 1);
        coeffs.push(0);
        coeffs.extend_from_slice(&x.coeffs);
        self.reduce_in_place(&mut coeffs);
        ExtElement { coeffs }
    }

    /// Norm as the determinant of the multiplication matrix.
    pub fn norm_det(&self, x: &ExtElement) -> u64 {
        determinant_mod(self.multiplication_matrix(x), &self.base)
    }

    /// Norm as the product of the `k` Frobenius conjugates.
    pub fn norm_conjugates(&self, x: &ExtElement) -> u64 {
        let mut conj = x.clone();
        let mut acc = x.clone();
        for _ in 1..self.degree() {
            conj = self.frobenius(&conj);
            acc = self.mul(&acc, &conj);
        }
        acc.as_base()
            .expect("product of all Frobenius conjugates lies in the base field")
    }

    /// Norm as the single power `x^((p^k - 1)/(p - 1))`.
    pub fn norm_by_exponent(&self, x: &ExtElement) -> u64 {
        let e = (self.order() - 1u32) / (self.base.p - 1);
        self.pow_big(x, &e)
            .as_base()
            .expect("norm exponent lands in the base field")
    }

    /// Relative norm into `F_p`, computed by determinant and by conjugate
    /// product; the two must agree.
    pub fn norm(&self, x: &ExtElement) -> u64 {
        let det = self.norm_det(x);
        let conj = self.norm_conjugates(x);
        assert_eq!(det, conj, "determinant and conjugate-product norms disagree for {x}");
        conj
    }

    /// `sum c_i p^i`, a bijection onto `[0, p^k)`.
    pub fn index(&self, x: &ExtElement) -> Result<u64> {
        self.size().ok_or(Error::TooLargeToIndex {
            p: self.base.p,
            k: self.degree(),
        })?;
        Ok(x.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.base.p + c))
    }

    pub fn from_index(&self, mut idx: u64) -> Result<ExtElement> {
        let size = self.size().ok_or(Error::TooLargeToIndex {
            p: self.base.p,
            k: self.degree(),
        })?;
        if idx >= size {
            return Err(Error::InvalidParameter(format!("index {idx} >= field size {size}")));
        }
        let mut coeffs = Vec::with_capacity(self.degree());
        for _ in 0..self.degree() {
            coeffs.push(idx % self.base.p);
            idx /= self.base.p;
        }
        Ok(ExtElement { coeffs })
    }
}

impl FiniteField for ExtField {
    type Elem = ExtElement;

    fn characteristic(&self) -> u64 {
        self.base.p
    }

    fn order(&self) -> BigUint {
        num_traits::pow(BigUint::from(self.base.p), self.degree())
    }

    fn zero(&self) -> ExtElement {
        ExtElement {
            coeffs: vec![0; self.degree()],
        }
    }

    fn one(&self) -> ExtElement {
        self.constant(1)
    }

    fn is_zero(&self, x: &ExtElement) -> bool {
        x.is_zero()
    }

    fn from_u64(&self, c: u64) -> ExtElement {
        self.constant(c)
    }

    fn add(&self, x: &ExtElement, y: &ExtElement) -> ExtElement {
        ExtElement {
            coeffs: x
                .coeffs
                .iter()
                .zip(&y.coeffs)
                .map(|(a, b)| self.base.add(a, b))
                .collect(),
        }
    }

    fn sub(&self, x: &ExtElement, y: &ExtElement) -> ExtElement {
        ExtElement {
            coeffs: x
                .coeffs
                .iter()
                .zip(&y.coeffs)
                .map(|(a, b)| self.base.sub(a, b))
                .collect(),
        }
    }

    fn neg(&self, x: &ExtElement) -> ExtElement {
        ExtElement {
            coeffs: x.coeffs.iter().map(|a| self.base.neg(a)).collect(),
        }
    }

    fn mul(&self, x: &ExtElement, y: &ExtElement) -> ExtElement {
        assert_eq!(x.coeffs.len(), y.coeffs.len(), "operands from different fields");
        let k = self.degree();
        let f = &self.base;
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, a) in x.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in y.coeffs.iter().enumerate() {
                prod[i + j] = f.add(&prod[i + j], &f.mul(a, b));
            }
        }
        self.reduce_in_place(&mut prod);
        prod.resize(k, 0);
        ExtElement { coeffs: prod }
    }

    fn inv(&self, x: &ExtElement) -> Result<ExtElement> {
        if x.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let ring = PolyRing::new(&self.base);
        let (g, s, _) = ring.ext_gcd(&Poly::new(x.coeffs.clone()), &self.modulus_poly());
        // g is a unit since the modulus is irreducible; ext_gcd returns it monic.
        debug_assert!(g.is_one());
        Ok(self.element_from_poly(&s))
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> ExtElement {
        ExtElement {
            coeffs: (0..self.degree()).map(|_| rng.gen_range(0..self.base.p)).collect(),
        }
    }
}

/// Determinant of a square matrix over `F_p` by Gaussian elimination.
pub fn determinant_mod(mut m: Vec<Vec<u64>>, f: &PrimeField) -> u64 {
    let n = m.len();
    let mut det = 1u64;
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| m[r][col] != 0) else {
            return 0;
        };
        if pivot != col {
            m.swap(pivot, col);
            det = f.neg(&det);
        }
        det = f.mul(&det, &m[col][col]);
        let inv = f.inv(&m[col][col]).expect("pivot is nonzero");
        for r in col + 1..n {
            let factor = f.mul(&m[r][col], &inv);
            if factor == 0 {
                continue;
            }
            for c in col..n {
                let sub = f.mul(&factor, &m[col][c]);
                m[r][c] = f.sub(&m[r][c], &sub);
            }
        }
    }
    det
}

/// `(p^k - 1)/(p - 1)` as a machine integer when it fits.
pub fn norm_exponent(p: u64, k: usize) -> Option<u64> {
    let q = num_traits::pow(BigUint::from(p), k);
    ((q - BigUint::one()) / (p - 1)).to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf343() -> ExtField {
        ExtField::from_ints(7, &[-2, 0, 0, 1]).unwrap()
    }

    fn naive_pow(a: u64, e: u64, p: u64) -> u64 {
        (0..e).fold(1 % p, |acc, _| acc * a % p)
    }

    #[test]
    fn fp_pow_examples() {
        assert_eq!(fp_pow(6, 12, 37), 1);
        assert_eq!(naive_pow(6, 12, 37), 1);
        assert_eq!(fp_pow(2, 12, 37), 26);
        assert_eq!(naive_pow(2, 12, 37), 26);
        assert_eq!(fp_pow(5, 0, 7), 1);
        assert_eq!(fp_pow(0, 0, 7), 1);
        for a in 0..37 {
            for e in 0..50 {
                assert_eq!(fp_pow(a, e, 37), naive_pow(a, e, 37));
            }
        }
    }

    #[test]
    fn fp_inv_examples() {
        assert_eq!(fp_inv(4, 7), Ok(2));
        assert_eq!(fp_inv(1, 101), Ok(1));
        assert_eq!(fp_inv(2, 17), Ok(9));
        assert_eq!(fp_inv(0, 7), Err(Error::ZeroInverse));
        for a in 1..37 {
            assert_eq!(a * fp_inv(a, 37).unwrap() % 37, 1);
        }
    }

    #[test]
    fn construction_rejects_bad_moduli() {
        assert_eq!(ExtField::from_ints(7, &[-6, 0, 0, 1]), Err(Error::Reducible { p: 7 }));
        assert_eq!(ExtField::from_ints(7, &[-2, 0, 0, 2]), Err(Error::NotMonic));
        assert_eq!(ExtField::from_ints(9, &[-2, 0, 0, 1]), Err(Error::NotPrime(9)));
        assert_eq!(ExtField::from_ints(7, &[3]), Err(Error::NotMonic));
    }

    #[test]
    fn ext_mul_examples() {
        let f = gf343();
        let th = f.generator();
        let th2 = f.element_from_ints(&[0, 0, 1]).unwrap();
        assert_eq!(f.mul(&th, &th2), f.constant(2));
        let a = f.element_from_ints(&[1, 1]).unwrap();
        let b = f.element_from_ints(&[-1, 1]).unwrap();
        assert_eq!(f.mul(&a, &b), f.element_from_ints(&[-1, 0, 1]).unwrap());
        let c = f.element_from_ints(&[0, 1, 1]).unwrap();
        assert_eq!(f.mul(&c, &th), f.element_from_ints(&[2, 0, 1]).unwrap());
        let short = ExtElement { coeffs: vec![1, 2] };
        assert_eq!(
            f.checked_mul(&th, &short),
            Err(Error::DimensionMismatch { expected: 3, found: 2 })
        );
    }

    #[test]
    fn ext_inv_examples() {
        let f = gf343();
        assert_eq!(f.inv(&f.constant(3)).unwrap(), f.constant(fp_inv(3, 7).unwrap()));
        let inv_theta = f.inv(&f.generator()).unwrap();
        assert_eq!(inv_theta, f.element_from_ints(&[0, 0, 4]).unwrap());
        assert_eq!(f.inv(&f.zero()), Err(Error::ZeroInverse));
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut seen = 0;
        while seen < 100 {
            let x = f.random(&mut rng);
            if x.is_zero() {
                continue;
            }
            seen += 1;
            let y = f.inv(&x).unwrap();
            assert_eq!(f.mul(&x, &y), f.one());
            assert_eq!(f.inv(&y).unwrap(), x);
        }
    }

    #[test]
    fn frobenius_examples() {
        let f = gf343();
        let th = f.generator();
        // naive: multiply theta by itself seven times
        let naive = (0..7).fold(f.one(), |acc, _| f.mul(&acc, &th));
        assert_eq!(naive, f.element_from_ints(&[0, 4]).unwrap());
        assert_eq!(f.frobenius(&th), naive);
        for c in 0..7 {
            assert_eq!(f.frobenius(&f.constant(c)), f.constant(c));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let x = f.random(&mut rng);
            let y = f.frobenius(&f.frobenius(&f.frobenius(&x)));
            assert_eq!(x, y);
        }
    }

    #[test]
    fn frobenius_fixes_exactly_the_base_field() {
        let f = gf343();
        let fixed: Vec<u64> = (0..343)
            .map(|i| f.from_index(i).unwrap())
            .filter(|x| f.frobenius(x) == *x)
            .map(|x| f.index(&x).unwrap())
            .collect();
        assert_eq!(fixed, (0..7).collect::<Vec<_>>());
    }

    #[test]
    fn norm_examples() {
        let f = gf343();
        assert_eq!(f.norm(&f.generator()), 2);
        let x = f.element_from_ints(&[6, 3, 5]).unwrap();
        // closed form c^3 + 2b^3 + 4a^3 - 6abc with a=5, b=3, c=6
        let closed = (216 + 2 * 27 + 4 * 125 - 6 * 5 * 3 * 6i64).rem_euclid(7) as u64;
        assert_eq!(closed, 6);
        assert_eq!(f.norm(&x), 6);
        assert_eq!(f.norm_by_exponent(&x), 6);
        for c in 0..7 {
            assert_eq!(f.norm(&f.constant(c)), fp_pow(c, 3, 7));
        }
        assert_eq!(f.norm(&f.zero()), 0);
    }

    #[test]
    fn index_is_a_bijection() {
        let f = ExtField::from_ints(5, &[2, 0, 1]).unwrap(); // x^2 + 2, -2 = 3 non-residue mod 5
        for i in 0..25 {
            let x = f.from_index(i).unwrap();
            assert_eq!(f.index(&x).unwrap(), i);
        }
        assert!(f.from_index(25).is_err());
        assert_eq!(f.size(), Some(25));
    }

    #[test]
    fn degree_one_extension() {
        let f = ExtField::from_ints(7, &[-3, 1]).unwrap();
        assert_eq!(f.generator(), f.constant(3));
        assert_eq!(f.norm(&f.constant(5)), 5);
        assert_eq!(f.mul(&f.constant(3), &f.constant(5)), f.constant(1));
    }

    #[test]
    fn json_shape() {
        let f = gf343();
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"{"p":7,"k":3,"modulus":[5,0,0,1]}"#);
        let back: ExtField = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<ExtField>(r#"{"p":7,"k":3,"modulus":[1,0,0,1]}"#).is_err());
        let x = f.element_from_ints(&[6, 3, 5]).unwrap();
        assert_eq!(serde_json::to_string(&x).unwrap(), "[6,3,5]");
    }

    #[test]
    fn determinant_small() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(determinant_mod(vec![vec![1, 2], vec![3, 4]], &f), 5); // -2 mod 7
        assert_eq!(determinant_mod(vec![vec![0, 1], vec![1, 0]], &f), 6);
        assert_eq!(determinant_mod(vec![vec![1, 2], vec![2, 4]], &f), 0);
    }

    #[test]
    fn norm_exponent_values() {
        assert_eq!(norm_exponent(7, 3), Some(57));
        assert_eq!(norm_exponent(5, 4), Some(156));
    }
}
