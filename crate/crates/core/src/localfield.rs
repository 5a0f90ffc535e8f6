//! Discretely valued fields with exact elements.
//!
//! Two backends implement [`LocalField`]:
//!
//! * [`Padic`]: Q with the p-adic valuation. Elements are exact rationals;
//!   the uniformizer is `p` and the residue field is F_p.
//! * [`Laurent`]: k(t) with the t-adic valuation, over k = Q or k = F_p.
//!   Elements are rational functions in lowest terms; the uniformizer is `t`.
//!
//! Completeness is never needed: every algorithm here terminates after
//! finitely many exact steps on global representatives.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::expr::{self, Evaluator};
use crate::poly::Poly;
use crate::ratfunc::RatFunc;
use crate::scalar::{int_valuation, is_prime, CoeffField, Fp, PrimeField, Rationals, Scalar};

/// Valuation of a field element; zero has valuation `Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Valuation::Infinite
    }

    /// `self >= k`
    pub fn at_least(self, k: i64) -> bool {
        self >= Valuation::Finite(k)
    }
}

impl Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// Element of the residue field k = Q or F_p.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum ResidueElement {
    Rational(BigRational),
    Prime(Fp),
}

impl ResidueElement {
    pub fn is_zero(&self) -> bool {
        match self {
            ResidueElement::Rational(q) => Zero::is_zero(q),
            ResidueElement::Prime(x) => Scalar::is_zero(x),
        }
    }

    pub fn inv(&self) -> Option<ResidueElement> {
        match self {
            ResidueElement::Rational(q) => Scalar::inv(q).map(ResidueElement::Rational),
            ResidueElement::Prime(x) => x.inv().map(ResidueElement::Prime),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            ResidueElement::Rational(_) => 0,
            ResidueElement::Prime(x) => x.modulus(),
        }
    }

    fn zip(
        self,
        rhs: ResidueElement,
        fq: impl Fn(BigRational, BigRational) -> BigRational,
        fp: impl Fn(Fp, Fp) -> Fp,
    ) -> ResidueElement {
        match (self, rhs) {
            (ResidueElement::Rational(a), ResidueElement::Rational(b)) => ResidueElement::Rational(fq(a, b)),
            (ResidueElement::Prime(a), ResidueElement::Prime(b)) => ResidueElement::Prime(fp(a, b)),
            (a, b) => panic!("mixing residue fields: {a:?} and {b:?}"),
        }
    }
}

impl fmt::Display for ResidueElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResidueElement::Rational(q) => write!(f, "{q}"),
            ResidueElement::Prime(x) => write!(f, "{x}"),
        }
    }
}

impl Add for ResidueElement {
    type Output = ResidueElement;
    fn add(self, rhs: Self) -> Self {
        self.zip(rhs, |a, b| a + b, |a, b| a + b)
    }
}

impl Sub for ResidueElement {
    type Output = ResidueElement;
    fn sub(self, rhs: Self) -> Self {
        self.zip(rhs, |a, b| a - b, |a, b| a - b)
    }
}

impl Mul for ResidueElement {
    type Output = ResidueElement;
    fn mul(self, rhs: Self) -> Self {
        self.zip(rhs, |a, b| a * b, |a, b| a * b)
    }
}

impl Neg for ResidueElement {
    type Output = ResidueElement;
    fn neg(self) -> Self {
        match self {
            ResidueElement::Rational(q) => ResidueElement::Rational(-q),
            ResidueElement::Prime(x) => ResidueElement::Prime(-x),
        }
    }
}

/// Coefficient scalars that double as residue field elements.
pub trait ResidueScalar: Scalar {
    fn to_residue(&self) -> ResidueElement;
    fn from_residue(r: &ResidueElement) -> Option<Self>;
}

impl ResidueScalar for BigRational {
    fn to_residue(&self) -> ResidueElement {
        ResidueElement::Rational(self.clone())
    }

    fn from_residue(r: &ResidueElement) -> Option<Self> {
        match r {
            ResidueElement::Rational(q) => Some(q.clone()),
            ResidueElement::Prime(_) => None,
        }
    }
}

impl ResidueScalar for Fp {
    fn to_residue(&self) -> ResidueElement {
        ResidueElement::Prime(*self)
    }

    fn from_residue(r: &ResidueElement) -> Option<Self> {
        match r {
            ResidueElement::Prime(x) => Some(*x),
            ResidueElement::Rational(_) => None,
        }
    }
}

/// Residue field descriptor of a Laurent backend.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ResidueSpec {
    Rationals,
    PrimeField(u64),
}

/// Runtime description of a field, as written on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Padic(u64),
    Laurent(ResidueSpec),
}

impl FieldSpec {
    pub fn residue_characteristic(&self) -> u64 {
        match self {
            FieldSpec::Padic(p) => *p,
            FieldSpec::Laurent(ResidueSpec::Rationals) => 0,
            FieldSpec::Laurent(ResidueSpec::PrimeField(p)) => *p,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Padic(p) => write!(f, "padic:{p}"),
            FieldSpec::Laurent(ResidueSpec::Rationals) => write!(f, "laurent:Q"),
            FieldSpec::Laurent(ResidueSpec::PrimeField(p)) => write!(f, "laurent:F{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidFieldSpec(s.to_string());
        let s = s.trim();
        let (kind, arg) = s.split_once(':').ok_or_else(bad)?;
        match kind {
            "padic" => {
                let p: u64 = arg.parse().map_err(|_| bad())?;
                if !is_prime(p) {
                    return Err(bad());
                }
                Ok(FieldSpec::Padic(p))
            }
            "laurent" => {
                if arg == "Q" {
                    return Ok(FieldSpec::Laurent(ResidueSpec::Rationals));
                }
                let p: u64 = arg.strip_prefix('F').ok_or_else(bad)?.parse().map_err(|_| bad())?;
                if !is_prime(p) {
                    return Err(bad());
                }
                Ok(FieldSpec::Laurent(ResidueSpec::PrimeField(p)))
            }
            _ => Err(bad()),
        }
    }
}

/// A discretely valued field K with valuation ring R and residue field k.
///
/// Elements support ring arithmetic through the standard operators; `Div`
/// panics on zero divisors, use [`LocalField::checked_div`] when the divisor
/// is not known to be nonzero.
#[allow(clippy::wrong_self_convention)] // `from_*` build elements of this field
pub trait LocalField: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Elem: Clone
        + PartialEq
        + fmt::Debug
        + fmt::Display
        + Send
        + Sync
        + Add<Output = Self::Elem>
        + Sub<Output = Self::Elem>
        + Mul<Output = Self::Elem>
        + Neg<Output = Self::Elem>
        + Div<Output = Self::Elem>;

    fn spec(&self) -> FieldSpec;
    fn residue_characteristic(&self) -> u64;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem>;
    fn uniformizer(&self) -> Self::Elem;
    /// The transcendental `t`, when the backend has one.
    fn variable(&self) -> Option<Self::Elem>;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    fn valuation(&self, x: &Self::Elem) -> Valuation;
    /// Image in the residue field; fails for elements outside R.
    fn reduce(&self, x: &Self::Elem) -> Result<ResidueElement>;
    /// Constant lift of a residue class.
    fn lift(&self, r: &ResidueElement) -> Self::Elem;
    /// Substitution `t -> t^d`, realizing the degree-d tame extension.
    fn base_change(&self, x: &Self::Elem, d: u64) -> Result<Self::Elem>;

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(n))
    }

    fn checked_div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        if self.is_zero(b) {
            Err(Error::DivisionByZero)
        } else {
            Ok(a.clone() / b.clone())
        }
    }

    /// `lift(reduce(x))`
    fn reduce_lift(&self, x: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.lift(&self.reduce(x)?))
    }

    fn pi_power(&self, k: u32) -> Self::Elem {
        let pi = self.uniformizer();
        (0..k).fold(self.one(), |acc, _| acc * pi.clone())
    }

    /// The inverse of Frobenius on the residue field (p-th root).
    ///
    /// Prime fields are fixed pointwise by Frobenius, so this is the
    /// identity there; in characteristic zero there is no Frobenius.
    fn residue_frobenius_root(&self, r: &ResidueElement) -> Result<ResidueElement> {
        match r {
            ResidueElement::Prime(_) => Ok(r.clone()),
            ResidueElement::Rational(_) => {
                Err(Error::ResidueRootNeeded(format!("p-th root of {r} in characteristic 0")))
            }
        }
    }

    fn parse_element(&self, src: &str) -> Result<Self::Elem> {
        let e = expr::parse(src)?;
        ElementEvaluator { field: self }.eval(&e)
    }
}

struct ElementEvaluator<'a, F: LocalField> {
    field: &'a F,
}

impl<F: LocalField> Evaluator for ElementEvaluator<'_, F> {
    type Value = F::Elem;

    fn num(&self, n: &BigInt) -> Result<F::Elem> {
        Ok(self.field.from_bigint(n))
    }

    fn var(&self, name: &str) -> Result<F::Elem> {
        match (name, self.field.variable()) {
            ("t", Some(t)) => Ok(t),
            _ => Err(Error::parse(format!("unknown symbol {name:?} for field {}", self.field.spec()))),
        }
    }

    fn call(&self, name: &str, _arg: &BigInt) -> Result<F::Elem> {
        Err(Error::parse(format!("function {name:?} not allowed in element literals")))
    }

    fn add(&self, a: F::Elem, b: F::Elem) -> Result<F::Elem> {
        Ok(a + b)
    }

    fn sub(&self, a: F::Elem, b: F::Elem) -> Result<F::Elem> {
        Ok(a - b)
    }

    fn mul(&self, a: F::Elem, b: F::Elem) -> Result<F::Elem> {
        Ok(a * b)
    }

    fn neg(&self, a: F::Elem) -> Result<F::Elem> {
        Ok(-a)
    }

    fn div(&self, a: F::Elem, b: F::Elem) -> Result<F::Elem> {
        self.field.checked_div(&a, &b)
    }
}

/// Q with the p-adic valuation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Padic {
    p: u64,
}

impl Padic {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Padic { p })
        } else {
            Err(Error::InvalidFieldSpec(format!("padic:{p}")))
        }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }
}

impl LocalField for Padic {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Padic(self.p)
    }

    fn residue_characteristic(&self) -> u64 {
        self.p
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

    fn uniformizer(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.p))
    }

    fn variable(&self) -> Option<BigRational> {
        None
    }

    fn is_zero(&self, x: &BigRational) -> bool {
        Zero::is_zero(x)
    }

    fn valuation(&self, x: &BigRational) -> Valuation {
        if Zero::is_zero(x) {
            Valuation::Infinite
        } else {
            Valuation::Finite(int_valuation(x.numer(), self.p) - int_valuation(x.denom(), self.p))
        }
    }

    fn reduce(&self, x: &BigRational) -> Result<ResidueElement> {
        match self.valuation(x) {
            Valuation::Finite(v) if v < 0 => Err(Error::NegativeValuation(v)),
            Valuation::Finite(0) => {
                let f = PrimeField::new(self.p)?;
                Ok(ResidueElement::Prime(f.from_rational(x)?))
            }
            _ => Ok(ResidueElement::Prime(Fp::new(0, self.p))),
        }
    }

    fn lift(&self, r: &ResidueElement) -> BigRational {
        match r {
            ResidueElement::Prime(x) => BigRational::from_integer(BigInt::from(x.value())),
            ResidueElement::Rational(_) => panic!("residue of padic:{} must lie in F_{}", self.p, self.p),
        }
    }

    fn base_change(&self, _x: &BigRational, _d: u64) -> Result<BigRational> {
        Err(Error::UnsupportedBackend(format!("padic:{} (ramified base change needs p^(1/d))", self.p)))
    }
}

/// The field k(t) with the t-adic valuation, over k = Q or F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Laurent<K: CoeffField> {
    coeffs: K,
}

impl<K: CoeffField> Laurent<K> {
    pub fn new(coeffs: K) -> Self {
        Laurent { coeffs }
    }

    pub fn coefficient_field(&self) -> &K {
        &self.coeffs
    }

    pub fn constant(&self, c: K::Elem) -> RatFunc<K::Elem> {
        RatFunc::constant(c, self.coeffs.one())
    }

    /// `num / den` for polynomials given by coefficient lists, low degree first.
    pub fn ratio(&self, num: &[i64], den: &[i64]) -> Result<RatFunc<K::Elem>> {
        let p = |c: &[i64]| Poly::from_coeffs(c.iter().map(|&x| self.coeffs.from_i64(x)).collect());
        RatFunc::new(p(num), p(den)).ok_or(Error::DivisionByZero)
    }
}

impl<K: CoeffField> LocalField for Laurent<K>
where
    K::Elem: ResidueScalar,
{
    type Elem = RatFunc<K::Elem>;

    fn spec(&self) -> FieldSpec {
        match self.coeffs.characteristic() {
            0 => FieldSpec::Laurent(ResidueSpec::Rationals),
            p => FieldSpec::Laurent(ResidueSpec::PrimeField(p)),
        }
    }

    fn residue_characteristic(&self) -> u64 {
        self.coeffs.characteristic()
    }

    fn zero(&self) -> Self::Elem {
        self.constant(self.coeffs.zero())
    }

    fn one(&self) -> Self::Elem {
        self.constant(self.coeffs.one())
    }

    fn from_bigint(&self, n: &BigInt) -> Self::Elem {
        self.constant(self.coeffs.from_bigint(n))
    }

    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem> {
        Ok(self.constant(self.coeffs.from_rational(q)?))
    }

    fn uniformizer(&self) -> Self::Elem {
        RatFunc::from_poly(Poly::monomial(self.coeffs.one(), self.coeffs.zero(), 1), self.coeffs.one())
    }

    fn variable(&self) -> Option<Self::Elem> {
        Some(self.uniformizer())
    }

    fn is_zero(&self, x: &Self::Elem) -> bool {
        x.is_zero()
    }

    fn valuation(&self, x: &Self::Elem) -> Valuation {
        match x.valuation() {
            Some(v) => Valuation::Finite(v),
            None => Valuation::Infinite,
        }
    }

    fn reduce(&self, x: &Self::Elem) -> Result<ResidueElement> {
        match x.value_at_zero() {
            Some(c) => Ok(c.to_residue()),
            None => Err(Error::NegativeValuation(x.valuation().unwrap_or(0))),
        }
    }

    fn lift(&self, r: &ResidueElement) -> Self::Elem {
        let c = K::Elem::from_residue(r).expect("residue element belongs to the coefficient field");
        self.constant(c)
    }

    fn base_change(&self, x: &Self::Elem, d: u64) -> Result<Self::Elem> {
        if d == 0 {
            return Err(Error::InvalidArgument("base change degree must be >= 1".into()));
        }
        let d = d.to_usize().ok_or_else(|| Error::InvalidArgument("degree too large".into()))?;
        Ok(x.substitute_power(d))
    }
}

/// Replaces `t` by `t^d`; only meaningful for equicharacteristic backends.
pub fn base_change_substitute<F: LocalField>(field: &F, x: &F::Elem, d: u64) -> Result<F::Elem> {
    field.base_change(x, d)
}

pub type LaurentQ = Laurent<Rationals>;
pub type LaurentFp = Laurent<PrimeField>;
