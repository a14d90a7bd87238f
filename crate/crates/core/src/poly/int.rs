//! Polynomials with exact integer coefficients: resultants and
//! discriminants via the subresultant pseudo-remainder sequence.

use std::fmt::Debug;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

use super::Poly;
use crate::error::{Error, Result};
use crate::ff_arith::PrimeField;

/// Exact signed integer types usable as polynomial coefficients
/// (`i64`, `i128`, `BigInt`).
pub trait ExactInteger:
    Clone + Debug + PartialEq + Signed + Integer + FromPrimitive + ToPrimitive
{
}

impl<T> ExactInteger for T where
    T: Clone + Debug + PartialEq + Signed + Integer + FromPrimitive + ToPrimitive
{
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly<T> {
    coeffs: Vec<T>,
}

fn pow<T: ExactInteger>(base: &T, e: usize) -> T {
    (0..e).fold(T::one(), |acc, _| acc * base.clone())
}

impl<T: ExactInteger> IntPoly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(
            coeffs
                .iter()
                .map(|&c| T::from_i64(c).expect("i64 fits every exact integer type"))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPoly::new(Vec::new());
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        IntPoly::new(out)
    }

    fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_else(T::zero);
                    let b = other.coeffs.get(i).cloned().unwrap_or_else(T::zero);
                    a - b
                })
                .collect(),
        )
    }

    fn scale(&self, c: &T) -> Self {
        IntPoly::new(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    fn shift(&self, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly::new(coeffs)
    }

    /// Exact division of every coefficient.
    fn div_exact(&self, c: &T) -> Self {
        IntPoly::new(
            self.coeffs
                .iter()
                .map(|x| {
                    debug_assert!(x.is_multiple_of(c), "inexact division");
                    x.clone() / c.clone()
                })
                .collect(),
        )
    }

    pub fn derivative(&self) -> Self {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * T::from_usize(i).expect("small"))
                .collect(),
        )
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |g, c| g.gcd(c))
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a = q*b + r`.
    pub fn prem(&self, b: &Self) -> Result<Self> {
        let db = b.degree().ok_or(Error::ZeroDivisor)?;
        let da = match self.degree() {
            Some(d) if d >= db => d,
            _ => return Ok(self.clone()),
        };
        let lb = b.lead().unwrap().clone();
        let mut r = self.clone();
        let mut e = da - db + 1;
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.lead().unwrap().clone();
            r = r.scale(&lb).sub(&b.scale(&lr).shift(dr - db));
            e -= 1;
        }
        Ok(r.scale(&pow(&lb, e)))
    }

    /// Resultant by the subresultant algorithm.
    pub fn resultant(&self, other: &Self) -> T {
        let (Some(da), Some(db)) = (self.degree(), other.degree()) else {
            return T::zero();
        };
        if da == 0 {
            return pow(&self.coeffs[0], db);
        }
        if db == 0 {
            return pow(&other.coeffs[0], da);
        }
        let ca = self.content();
        let cb = other.content();
        let mut a = self.div_exact(&ca);
        let mut b = other.div_exact(&cb);
        let t = pow(&ca, db) * pow(&cb, da);
        let mut s = T::one();
        if da < db {
            std::mem::swap(&mut a, &mut b);
            if da % 2 == 1 && db % 2 == 1 {
                s = -s;
            }
        }
        let mut g = T::one();
        let mut h = T::one();
        loop {
            let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
            let delta = da - db;
            if da % 2 == 1 && db % 2 == 1 {
                s = -s;
            }
            let r = a.prem(&b).expect("b is nonzero");
            a = b;
            b = r.div_exact(&(g.clone() * pow(&h, delta)));
            g = a.lead().unwrap().clone();
            h = if delta == 0 {
                h
            } else {
                pow(&g, delta) / pow(&h, delta - 1)
            };
            match b.degree() {
                None => return T::zero(),
                Some(0) => break,
                Some(_) => {}
            }
        }
        let da = a.degree().unwrap();
        let lb = b.lead().unwrap().clone();
        let h = pow(&lb, da) / pow(&h, da - 1);
        s * t * h
    }

    /// `(-1)^(d(d-1)/2) Res(h, h') / lc(h)`.
    pub fn discriminant(&self) -> Result<T> {
        let d = match self.degree() {
            Some(d) if d >= 2 => d,
            other => return Err(Error::DegreeTooSmall { min: 2, found: other }),
        };
        let res = self.resultant(&self.derivative());
        let signed = if (d * (d - 1) / 2) % 2 == 1 { -res } else { res };
        Ok(signed / self.lead().unwrap().clone())
    }

    /// Coefficient-wise reduction into `F_p[x]`.
    pub fn reduce_mod(&self, field: &PrimeField) -> Poly<u64> {
        let p = T::from_u64(field.p()).expect("p fits");
        Poly::new(
            self.coeffs
                .iter()
                .map(|c| c.mod_floor(&p).to_u64().expect("residue fits u64"))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Sylvester-matrix determinant by fraction-free elimination; an
    /// independent route to the resultant.
    fn sylvester_resultant(a: &[i64], b: &[i64]) -> BigInt {
        let (m, n) = (a.len() - 1, b.len() - 1);
        let size = m + n;
        let mut mat = vec![vec![BigInt::from(0); size]; size];
        for row in 0..n {
            for (j, &c) in a.iter().rev().enumerate() {
                mat[row][row + j] = BigInt::from(c);
            }
        }
        for row in 0..m {
            for (j, &c) in b.iter().rev().enumerate() {
                mat[n + row][row + j] = BigInt::from(c);
            }
        }
        bareiss(mat)
    }

    fn bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
        let n = m.len();
        let mut sign = BigInt::from(1);
        let mut prev = BigInt::from(1);
        for k in 0..n {
            if m[k][k] == BigInt::from(0) {
                match (k + 1..n).find(|&r| m[r][k] != BigInt::from(0)) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::from(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        sign * &m[n - 1][n - 1]
    }

    #[test]
    fn discriminant_examples() {
        let g = IntPoly::<i128>::from_i64(&[7, 3, 21, 1]);
        assert_eq!(g.discriminant(), Ok(-248_832));
        let f = IntPoly::<i128>::from_i64(&[-2, 0, 0, 1]).mul(&IntPoly::from_i64(&[-3, 0, 0, 1]));
        assert_eq!(f.discriminant(), Ok(26_244));
        assert_eq!(IntPoly::<i64>::from_i64(&[-2, 0, 0, 1]).discriminant(), Ok(-108));
        assert_eq!(
            IntPoly::<BigInt>::from_i64(&[7, 3, 21, 1]).discriminant(),
            Ok(BigInt::from(-248_832))
        );
        assert!(IntPoly::<i64>::from_i64(&[1, 1]).discriminant().is_err());
        // quadratic: b^2 - 4ac
        assert_eq!(IntPoly::<i64>::from_i64(&[5, 3, 2]).discriminant(), Ok(9 - 40));
    }

    #[test]
    fn resultant_matches_sylvester_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..300 {
            let da = rng.gen_range(1..6);
            let db = rng.gen_range(1..6);
            let mut a: Vec<i64> = (0..=da).map(|_| rng.gen_range(-9..=9)).collect();
            let mut b: Vec<i64> = (0..=db).map(|_| rng.gen_range(-9..=9)).collect();
            if a[da] == 0 {
                a[da] = 1;
            }
            if b[db] == 0 {
                b[db] = -2;
            }
            let ours = IntPoly::<BigInt>::from_i64(&a).resultant(&IntPoly::from_i64(&b));
            assert_eq!(ours, sylvester_resultant(&a, &b), "{a:?} {b:?}");
        }
    }

    #[test]
    fn resultant_edge_cases() {
        let a = IntPoly::<i64>::from_i64(&[1, 1]);
        let c = IntPoly::<i64>::from_i64(&[3]);
        let cube = IntPoly::<i64>::from_i64(&[0, 0, 0, 1]);
        assert_eq!(cube.resultant(&c), 27);
        assert_eq!(c.resultant(&cube), 27);
        assert_eq!(a.resultant(&IntPoly::new(vec![])), 0);
        // common factor
        let p = IntPoly::<i64>::from_i64(&[-1, 0, 1]);
        assert_eq!(p.resultant(&a), 0);
    }

    #[test]
    fn discriminant_of_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..200 {
            let mut cubic = || -> Vec<i64> {
                let mut v: Vec<i64> = (0..4).map(|_| rng.gen_range(-9..=9)).collect();
                if v[3] == 0 {
                    v[3] = 1;
                }
                v
            };
            let h1 = IntPoly::<BigInt>::from_i64(&cubic());
            let h2 = IntPoly::<BigInt>::from_i64(&cubic());
            let res = h1.resultant(&h2);
            let lhs = h1.mul(&h2).discriminant().unwrap();
            let rhs = h1.discriminant().unwrap() * h2.discriminant().unwrap() * &res * &res;
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn reduction_mod_p() {
        let f = PrimeField::new(7).unwrap();
        let g = IntPoly::<i128>::from_i64(&[7, 3, 21, 1]);
        assert_eq!(g.reduce_mod(&f).coeffs(), &[0, 3, 0, 1]);
        let n = IntPoly::<i64>::from_i64(&[-2, 0, 0, 1]);
        assert_eq!(n.reduce_mod(&f).coeffs(), &[5, 0, 0, 1]);
    }

    #[test]
    fn prem_identity() {
        let a = IntPoly::<i64>::from_i64(&[1, 2, 3, 4, 5]);
        let b = IntPoly::<i64>::from_i64(&[-1, 0, 3]);
        let r = a.prem(&b).unwrap();
        assert!(r.degree() < b.degree());
        // 3^3 * a - r is a multiple of b
        let lhs = a.scale(&27).sub(&r);
        assert!(lhs.prem(&b).unwrap().is_zero());
    }
}
