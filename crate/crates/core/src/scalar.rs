//! Coefficient scalars: the rationals and prime fields.
//!
//! Polynomials and rational functions are generic over [`Scalar`]. Prime
//! field elements carry their modulus, so arithmetic never needs a context;
//! constants are produced through a [`CoeffField`] descriptor.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Element of a coefficient field.
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn inv(&self) -> Option<Self>;

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.clone() * i)
    }
}

/// A coefficient field: produces constants and knows its characteristic.
#[allow(clippy::wrong_self_convention)]
pub trait CoeffField: Clone + fmt::Debug + PartialEq + Eq + Send + Sync {
    type Elem: Scalar;

    fn characteristic(&self) -> u64;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    /// Image of a rational number; fails when the denominator is not invertible.
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem>;
    /// Short name used in field spec strings (`Q`, `F3`).
    fn name(&self) -> String;

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(n))
    }
}

impl Scalar for BigRational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_one(&self) -> bool {
        One::is_one(self)
    }

    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl CoeffField for Rationals {
    type Elem = BigRational;

    fn characteristic(&self) -> u64 {
        0
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }

    fn from_rational(&self, q: &BigRational) -> Result<BigRational> {
        Ok(q.clone())
    }

    fn name(&self) -> String {
        "Q".to_string()
    }
}

/// Element of the prime field F_p. The modulus travels with the value.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: i64, modulus: u64) -> Self {
        let m = modulus as i128;
        let v = (value as i128).rem_euclid(m) as u64;
        Fp { value: v, modulus }
    }

    pub fn from_bigint(n: &BigInt, modulus: u64) -> Self {
        let r = n.mod_floor(&BigInt::from(modulus));
        Fp { value: r.to_u64().expect("residue fits in u64"), modulus }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = Fp { value: 1 % self.modulus, modulus: self.modulus };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    fn check(&self, other: &Fp) {
        assert_eq!(self.modulus, other.modulus, "mixing elements of F_{} and F_{}", self.modulus, other.modulus);
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        self.check(&rhs);
        let s = (self.value as u128 + rhs.value as u128) % self.modulus as u128;
        Fp { value: s as u64, modulus: self.modulus }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self + (-rhs)
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        self.check(&rhs);
        let s = (self.value as u128 * rhs.value as u128) % self.modulus as u128;
        Fp { value: s as u64, modulus: self.modulus }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.value == 0 {
            self
        } else {
            Fp { value: self.modulus - self.value, modulus: self.modulus }
        }
    }
}

impl Scalar for Fp {
    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn is_one(&self) -> bool {
        self.value == 1
    }

    fn inv(&self) -> Option<Fp> {
        if self.value == 0 {
            return None;
        }
        let (g, x, _) = ext_gcd(self.value as i128, self.modulus as i128);
        debug_assert_eq!(g, 1);
        Some(Fp::new(x.rem_euclid(self.modulus as i128) as i64, self.modulus))
    }
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// The prime field F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) && p < (1 << 62) {
            Ok(PrimeField { p })
        } else {
            Err(Error::InvalidFieldSpec(format!("F{p}: {p} is not a supported prime")))
        }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }
}

impl CoeffField for PrimeField {
    type Elem = Fp;

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn zero(&self) -> Fp {
        Fp::new(0, self.p)
    }

    fn one(&self) -> Fp {
        Fp::new(1, self.p)
    }

    fn from_bigint(&self, n: &BigInt) -> Fp {
        Fp::from_bigint(n, self.p)
    }

    fn from_rational(&self, q: &BigRational) -> Result<Fp> {
        let num = Fp::from_bigint(q.numer(), self.p);
        let den = Fp::from_bigint(q.denom(), self.p);
        den.inv().map(|d| num * d).ok_or(Error::DivisionByZero)
    }

    fn name(&self) -> String {
        format!("F{}", self.p)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// p-adic valuation of a nonzero integer.
pub fn int_valuation(n: &BigInt, p: u64) -> i64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_field_axioms_small_prime() {
        let p = 7;
        for a in 0..7 {
            let x = Fp::new(a, p);
            if a != 0 {
                assert!((x * x.inv().unwrap()).is_one());
            }
            assert!((x + (-x)).is_zero());
            assert_eq!(x.pow(p), x);
        }
        assert_eq!(Fp::new(-1, 5).value(), 4);
    }

    #[test]
    fn prime_field_rejects_composites() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(2).is_ok());
    }

    #[test]
    fn rational_image_in_prime_field() {
        let f = PrimeField::new(5).unwrap();
        let q = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(f.from_rational(&q).unwrap(), Fp::new(3, 5));
        let bad = BigRational::new(BigInt::from(1), BigInt::from(5));
        assert_eq!(f.from_rational(&bad), Err(Error::DivisionByZero));
    }

    #[test]
    fn integer_valuations() {
        assert_eq!(int_valuation(&BigInt::from(12), 2), 2);
        assert_eq!(int_valuation(&BigInt::from(-432), 3), 3);
        assert_eq!(int_valuation(&BigInt::from(7), 5), 0);
    }
}
