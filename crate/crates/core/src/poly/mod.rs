//! Univariate polynomials over `F_p`, over extension fields, and over the
//! integers.

mod int;
mod roots;

pub use int::{ExactInteger, IntPoly};
pub use roots::{
    find_root_in_ext, is_irreducible, is_irreducible_by_roots, power_residue,
    primitive_nth_root, roots_in_base, BaseRoot, SPLIT_ATTEMPTS,
};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff_arith::{ExtElement, ExtField, FiniteField, PrimeField};

/// Coefficient types that know their own zero, so polynomials can be kept
/// trimmed without a field context.
pub trait Coefficient: Clone + PartialEq + std::fmt::Debug {
    fn is_zero_coeff(&self) -> bool;
}

impl Coefficient for u64 {
    fn is_zero_coeff(&self) -> bool {
        *self == 0
    }
}

impl Coefficient for ExtElement {
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
}

/// Little-endian coefficients with no trailing zeros; the zero polynomial is
/// the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E: Coefficient> Poly<E> {
    pub fn new(mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(Coefficient::is_zero_coeff) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&E> {
        self.coeffs.get(i)
    }
}

impl Poly<u64> {
    /// Reduces signed little-endian coefficients mod `p`.
    pub fn from_ints(field: &PrimeField, coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| field.reduce(c)).collect())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Embeds an `F_p` polynomial into `F[x]` for an extension `F`.
    pub fn lift(&self, field: &ExtField) -> Poly<ExtElement> {
        Poly::new(self.coeffs.iter().map(|&c| field.constant(c)).collect())
    }
}

/// Arithmetic on `F[x]` for a finite field `F`.
#[derive(Clone, Copy, Debug)]
pub struct PolyRing<'a, F> {
    field: &'a F,
}

impl<'a, F> PolyRing<'a, F>
where
    F: FiniteField,
    F::Elem: Coefficient,
{
    pub fn new(field: &'a F) -> Self {
        PolyRing { field }
    }

    pub fn field(&self) -> &'a F {
        self.field
    }

    pub fn constant(&self, c: F::Elem) -> Poly<F::Elem> {
        Poly::new(vec![c])
    }

    pub fn one(&self) -> Poly<F::Elem> {
        self.constant(self.field.one())
    }

    /// The polynomial `x`.
    pub fn x(&self) -> Poly<F::Elem> {
        Poly::new(vec![self.field.zero(), self.field.one()])
    }

    /// `x + c`.
    pub fn linear(&self, c: F::Elem) -> Poly<F::Elem> {
        Poly::new(vec![c, self.field.one()])
    }

    pub fn add(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let n = a.coeffs.len().max(b.coeffs.len());
        let zero = self.field.zero();
        Poly::new(
            (0..n)
                .map(|i| {
                    let x = a.coeffs.get(i).unwrap_or(&zero);
                    let y = b.coeffs.get(i).unwrap_or(&zero);
                    self.field.add(x, y)
                })
                .collect(),
        )
    }

    pub fn neg(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        Poly::new(a.coeffs.iter().map(|c| self.field.neg(c)).collect())
    }

    pub fn sub(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &Poly<F::Elem>, c: &F::Elem) -> Poly<F::Elem> {
        Poly::new(a.coeffs.iter().map(|x| self.field.mul(x, c)).collect())
    }

    pub fn mul(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![self.field.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero_coeff() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                out[i + j] = self.field.add(&out[i + j], &self.field.mul(x, y));
            }
        }
        Poly::new(out)
    }

    /// Quotient and remainder of `a` by `b`.
    pub fn divrem(
        &self,
        a: &Poly<F::Elem>,
        b: &Poly<F::Elem>,
    ) -> Result<(Poly<F::Elem>, Poly<F::Elem>)> {
        let db = b.degree().ok_or(Error::ZeroDivisor)?;
        let lead_inv = self.field.inv(b.lead().unwrap())?;
        let mut rem = a.coeffs.clone();
        if rem.len() <= db {
            return Ok((Poly::zero(), a.clone()));
        }
        let mut quot = vec![self.field.zero(); rem.len() - db];
        for i in (0..quot.len()).rev() {
            let c = self.field.mul(&rem[i + db], &lead_inv);
            if c.is_zero_coeff() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                rem[i + j] = self.field.sub(&rem[i + j], &self.field.mul(&c, bj));
            }
            quot[i] = c;
        }
        rem.truncate(db);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    pub fn rem(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
        Ok(self.divrem(a, b)?.1)
    }

    /// Scales to leading coefficient one; zero stays zero.
    pub fn monic(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        match a.lead() {
            None => Poly::zero(),
            Some(l) => {
                let inv = self.field.inv(l).expect("leading coefficient is nonzero");
                self.scale(a, &inv)
            }
        }
    }

    /// Monic gcd by Euclid; `gcd(h, 0) = monic(h)`.
    pub fn gcd(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        while !r1.is_zero() {
            let r = self.rem(&r0, &r1).expect("divisor is nonzero");
            r0 = r1;
            r1 = r;
        }
        self.monic(&r0)
    }

    /// Returns `(g, s, t)` with `g = s*a + t*b` and `g` the monic gcd.
    pub fn ext_gcd(
        &self,
        a: &Poly<F::Elem>,
        b: &Poly<F::Elem>,
    ) -> (Poly<F::Elem>, Poly<F::Elem>, Poly<F::Elem>) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), self.one());
        while !r1.is_zero() {
            let (q, r) = self.divrem(&r0, &r1).expect("divisor is nonzero");
            let s = self.sub(&s0, &self.mul(&q, &s1));
            let t = self.sub(&t0, &self.mul(&q, &t1));
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
            (t0, t1) = (t1, t);
        }
        match r0.lead() {
            None => (r0, s0, t0),
            Some(l) => {
                let inv = self.field.inv(l).expect("nonzero");
                (self.scale(&r0, &inv), self.scale(&s0, &inv), self.scale(&t0, &inv))
            }
        }
    }

    pub fn derivative(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        Poly::new(
            a.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| self.field.mul(c, &self.field.from_u64(i as u64)))
                .collect(),
        )
    }

    /// Horner evaluation.
    pub fn eval(&self, a: &Poly<F::Elem>, x: &F::Elem) -> F::Elem {
        a.coeffs.iter().rev().fold(self.field.zero(), |acc, c| {
            self.field.add(&self.field.mul(&acc, x), c)
        })
    }

    pub fn mulmod(
        &self,
        a: &Poly<F::Elem>,
        b: &Poly<F::Elem>,
        m: &Poly<F::Elem>,
    ) -> Poly<F::Elem> {
        self.rem(&self.mul(a, b), m).expect("modulus is nonzero")
    }

    pub fn powmod(&self, base: &Poly<F::Elem>, mut e: u64, m: &Poly<F::Elem>) -> Poly<F::Elem> {
        let mut acc = self.rem(&self.one(), m).expect("modulus is nonzero");
        let mut b = self.rem(base, m).expect("modulus is nonzero");
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulmod(&acc, &b, m);
            }
            b = self.mulmod(&b, &b, m);
            e >>= 1;
        }
        acc
    }

    pub fn powmod_big(
        &self,
        base: &Poly<F::Elem>,
        e: &BigUint,
        m: &Poly<F::Elem>,
    ) -> Poly<F::Elem> {
        if let Some(small) = e.to_u64() {
            return self.powmod(base, small, m);
        }
        let b = self.rem(base, m).expect("modulus is nonzero");
        let mut acc = self.rem(&self.one(), m).expect("modulus is nonzero");
        for i in (0..e.bits()).rev() {
            acc = self.mulmod(&acc, &acc, m);
            if e.bit(i) {
                acc = self.mulmod(&acc, &b, m);
            }
        }
        acc
    }

    /// `x^(q^j) mod h` where `q` is the field order.
    fn frobenius_x(&self, h: &Poly<F::Elem>, j: usize) -> Poly<F::Elem> {
        let q = self.field.order();
        let mut cur = self.rem(&self.x(), h).expect("modulus is nonzero");
        for _ in 0..j {
            cur = self.powmod_big(&cur, &q, h);
        }
        cur
    }

    /// Rabin's test: `h` of degree `d` is irreducible iff `x^(q^d) = x mod h`
    /// and `gcd(x^(q^(d/l)) - x, h) = 1` for each prime `l | d`.
    pub fn is_irreducible(&self, h: &Poly<F::Elem>) -> Result<bool> {
        let d = match h.degree() {
            Some(d) if d >= 1 => d,
            other => return Err(Error::DegreeTooSmall { min: 1, found: other }),
        };
        if d == 1 {
            return Ok(true);
        }
        let h = self.monic(h);
        let x = self.x();
        for l in crate::primes::prime_factors(d as u64) {
            let xq = self.frobenius_x(&h, d / l as usize);
            if !self.gcd(&self.sub(&xq, &x), &h).is_unit() {
                return Ok(false);
            }
        }
        let xq = self.frobenius_x(&h, d);
        Ok(self.sub(&xq, &self.rem(&x, &h)?).is_zero())
    }

    /// True iff `h` is a product of distinct linear factors over the field,
    /// i.e. `h | x^q - x`.
    pub fn splits_into_distinct_linear(&self, h: &Poly<F::Elem>) -> bool {
        match h.degree() {
            None => false,
            Some(0) => true,
            Some(_) => {
                let xq = self.frobenius_x(h, 1);
                let x = self.rem(&self.x(), h).expect("modulus is nonzero");
                self.sub(&xq, &x).is_zero()
            }
        }
    }

    /// One root of `h`, assuming `h` is a product of distinct linear
    /// factors; seeded equal-degree splitting with a fixed attempt bound.
    pub fn split_off_root<R: Rng + ?Sized>(
        &self,
        h: &Poly<F::Elem>,
        rng: &mut R,
    ) -> Result<F::Elem> {
        let deg = h.degree().unwrap_or(0);
        if deg == 0 {
            return Err(Error::DegreeTooSmall { min: 1, found: h.degree() });
        }
        if self.field.characteristic() == 2 {
            return Err(Error::EvenCharacteristic);
        }
        let half = (self.field.order() - BigUint::one()) >> 1u32;
        let one = self.one();
        let mut current = self.monic(h);
        for _ in 0..SPLIT_ATTEMPTS {
            if current.degree() == Some(1) {
                break;
            }
            let delta = self.field.random(rng);
            let w = self.powmod_big(&self.linear(delta), &half, &current);
            let d = self.gcd(&current, &self.sub(&w, &one));
            let dd = d.degree().unwrap_or(0);
            let dc = current.degree().unwrap();
            if dd == 0 || dd == dc {
                continue;
            }
            current = if 2 * dd <= dc {
                d
            } else {
                self.divrem(&current, &d)?.0
            };
        }
        if current.degree() != Some(1) {
            return Err(Error::NoSplit { attempts: SPLIT_ATTEMPTS });
        }
        let root = self.field.neg(&current.coeffs[0]);
        assert!(
            self.eval(h, &root).is_zero_coeff(),
            "split-off root does not annihilate the input"
        );
        Ok(root)
    }
}

impl<E: Coefficient> Poly<E> {
    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }
}

/// Interchange form: `{"domain": "fp"|"ext"|"int", ...}` with little-endian
/// coefficient arrays.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "domain", rename_all = "lowercase")]
pub enum PolyJson {
    Fp { p: u64, coeffs: Vec<u64> },
    Ext { field: ExtField, coeffs: Vec<ExtElement> },
    Int { coeffs: Vec<i64> },
}

impl PolyJson {
    pub fn from_fp(field: &PrimeField, h: &Poly<u64>) -> Self {
        PolyJson::Fp {
            p: field.p(),
            coeffs: h.coeffs().to_vec(),
        }
    }

    pub fn from_ext(field: &ExtField, h: &Poly<ExtElement>) -> Self {
        PolyJson::Ext {
            field: field.clone(),
            coeffs: h.coeffs().to_vec(),
        }
    }

    pub fn from_int<T: ExactInteger>(h: &IntPoly<T>) -> Result<Self> {
        let coeffs = h
            .coeffs()
            .iter()
            .map(|c| {
                c.to_i64()
                    .ok_or_else(|| Error::InvalidParameter("coefficient exceeds i64".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyJson::Int { coeffs })
    }

    /// Validates coefficients against the tagged domain.
    pub fn to_fp(&self) -> Result<(PrimeField, Poly<u64>)> {
        match self {
            PolyJson::Fp { p, coeffs } => {
                let field = PrimeField::new(*p)?;
                if coeffs.iter().any(|c| c >= p) {
                    return Err(Error::InvalidParameter("coefficient is not a residue".into()));
                }
                Ok((field, Poly::new(coeffs.clone())))
            }
            _ => Err(Error::InvalidParameter("expected an fp polynomial".into())),
        }
    }

    pub fn to_ext(&self) -> Result<(ExtField, Poly<ExtElement>)> {
        match self {
            PolyJson::Ext { field, coeffs } => {
                if let Some(bad) = coeffs.iter().find(|c| !field.contains(c)) {
                    return Err(Error::InvalidParameter(format!("{bad} is not in the field")));
                }
                Ok((field.clone(), Poly::new(coeffs.clone())))
            }
            _ => Err(Error::InvalidParameter("expected an ext polynomial".into())),
        }
    }

    pub fn to_int<T: ExactInteger>(&self) -> Result<IntPoly<T>> {
        match self {
            PolyJson::Int { coeffs } => Ok(IntPoly::from_i64(coeffs)),
            _ => Err(Error::InvalidParameter("expected an int polynomial".into())),
        }
    }
}
