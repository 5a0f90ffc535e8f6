//! A free commutative ring on generator symbols standing in for
//! `K_0(Var_k)`, with its Poincaré polynomial, Euler characteristic and
//! point-counting realizations.
//!
//! Scissor relations such as `[P^1] = L + 1` are not imposed on canonical
//! forms; they hold after realization.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::expr::{self, Evaluator};
use crate::tate::KodairaType;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    /// The affine line.
    Lefschetz,
    /// Projective space of dimension n ≥ 1.
    ProjSpace(u32),
    Gm,
    /// Smooth proper connected curve of genus g.
    Curve(u32),
    /// Abelian variety of dimension g.
    Abelian(u32),
}

impl Generator {
    pub fn poincare(self) -> PoincarePolynomial {
        let p = |c: Vec<i64>| PoincarePolynomial::from_i64(&c);
        match self {
            Generator::Lefschetz => p(vec![0, 0, 1]),
            Generator::ProjSpace(n) => {
                let mut c = vec![0; 2 * n as usize + 1];
                for k in 0..=n as usize {
                    c[2 * k] = 1;
                }
                p(c)
            }
            Generator::Gm => p(vec![-1, 0, 1]),
            Generator::Curve(g) => p(vec![1, -2 * g as i64, 1]),
            Generator::Abelian(g) => {
                // (1 - T)^{2g}
                let base = p(vec![1, -1]);
                (0..2 * g).fold(PoincarePolynomial::one(), |acc, _| acc * base.clone())
            }
        }
    }

    /// Number of points over F_q, where defined.
    pub fn point_count(self, q: &BigInt) -> Option<BigInt> {
        match self {
            Generator::Lefschetz => Some(q.clone()),
            Generator::ProjSpace(n) => Some((0..=n).fold(BigInt::zero(), |acc, k| acc + q.pow(k))),
            Generator::Gm => Some(q - 1),
            Generator::Curve(_) | Generator::Abelian(_) => None,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Lefschetz => write!(f, "L"),
            Generator::ProjSpace(n) => write!(f, "Pn({n})"),
            Generator::Gm => write!(f, "Gm"),
            Generator::Curve(g) => write!(f, "C({g})"),
            Generator::Abelian(g) => write!(f, "A({g})"),
        }
    }
}

/// Product of generators with positive exponents; the empty product is the point.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(BTreeMap<Generator, u32>);

impl Monomial {
    pub fn point() -> Self {
        Monomial::default()
    }

    pub fn generator(g: Generator) -> Self {
        Monomial(BTreeMap::from([(g, 1)]))
    }

    pub fn is_point(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> impl Iterator<Item = (Generator, u32)> + '_ {
        self.0.iter().map(|(&g, &e)| (g, e))
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.0.clone();
        for (&g, &e) in &other.0 {
            *out.entry(g).or_insert(0) += e;
        }
        Monomial(out)
    }

    pub fn poincare(&self) -> PoincarePolynomial {
        self.factors().fold(PoincarePolynomial::one(), |acc, (g, e)| acc * g.poincare().pow(e))
    }

    pub fn point_count(&self, q: &BigInt) -> Option<BigInt> {
        self.factors().try_fold(BigInt::one(), |acc, (g, e)| Some(acc * g.point_count(q)?.pow(e)))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            return write!(f, "pt");
        }
        let parts: Vec<String> =
            self.factors().map(|(g, e)| if e == 1 { g.to_string() } else { format!("{g}^{e}") }).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Integer combination of monomials in canonical form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GrothElement(BTreeMap<Monomial, BigInt>);

impl GrothElement {
    pub fn zero() -> Self {
        GrothElement::default()
    }

    pub fn one() -> Self {
        GrothElement::integer(1)
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        GrothElement::term(n.into(), Monomial::point())
    }

    pub fn generator(g: Generator) -> Self {
        GrothElement::term(BigInt::one(), Monomial::generator(g))
    }

    pub fn term(c: BigInt, m: Monomial) -> Self {
        let mut map = BTreeMap::new();
        if !c.is_zero() {
            map.insert(m, c);
        }
        GrothElement(map)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.0.iter()
    }

    /// The integer `n` if this element is `n·[pt]`.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self.0.len() {
            0 => Some(BigInt::zero()),
            1 => self.0.get(&Monomial::point()).cloned(),
            _ => None,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(GrothElement::one(), |acc, _| &acc * self)
    }

    pub fn poincare(&self) -> PoincarePolynomial {
        self.0.iter().fold(PoincarePolynomial::zero(), |acc, (m, c)| acc + m.poincare().scale(c))
    }

    /// `χ_top`, computed as `P(1)`.
    pub fn euler(&self) -> BigInt {
        self.poincare().eval_at_one()
    }

    /// Number of F_q-points; `None` if a curve or abelian variety occurs.
    pub fn point_count(&self, q: &BigInt) -> Option<BigInt> {
        self.0.iter().try_fold(BigInt::zero(), |acc, (m, c)| Some(acc + c * m.point_count(q)?))
    }

    pub fn parse(src: &str) -> Result<Self> {
        let e = expr::parse(src)?;
        GrothEvaluator.eval(&e)
    }

    fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.0.clone();
        for (m, c) in &other.0 {
            let entry = out.entry(m.clone()).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                out.remove(m);
            }
        }
        GrothElement(out)
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let mut out = GrothElement::zero();
        for (m1, c1) in &self.0 {
            for (m2, c2) in &other.0 {
                out = out.add_ref(&GrothElement::term(c1 * c2, m1.mul(m2)));
            }
        }
        out
    }
}

impl Add for GrothElement {
    type Output = GrothElement;
    fn add(self, rhs: Self) -> Self {
        self.add_ref(&rhs)
    }
}

impl Sub for GrothElement {
    type Output = GrothElement;
    fn sub(self, rhs: Self) -> Self {
        self.add_ref(&-rhs)
    }
}

impl Mul for GrothElement {
    type Output = GrothElement;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl Mul for &GrothElement {
    type Output = GrothElement;
    fn mul(self, rhs: Self) -> GrothElement {
        self.mul_ref(rhs)
    }
}

impl Neg for GrothElement {
    type Output = GrothElement;
    fn neg(self) -> Self {
        GrothElement(self.0.into_iter().map(|(m, c)| (m, -c)).collect())
    }
}

impl fmt::Display for GrothElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // non-constant monomials first, the point last
        let mut terms: Vec<(&Monomial, &BigInt)> = self.0.iter().filter(|(m, _)| !m.is_point()).collect();
        terms.extend(self.0.iter().filter(|(m, _)| m.is_point()));
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            match (i, sign) {
                (0, "-") => write!(f, "-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            let a = c.abs();
            if m.is_point() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

struct GrothEvaluator;

impl Evaluator for GrothEvaluator {
    type Value = GrothElement;

    fn num(&self, n: &BigInt) -> Result<GrothElement> {
        Ok(GrothElement::integer(n.clone()))
    }

    fn var(&self, name: &str) -> Result<GrothElement> {
        match name {
            "pt" => Ok(GrothElement::one()),
            "L" => Ok(GrothElement::generator(Generator::Lefschetz)),
            "Gm" => Ok(GrothElement::generator(Generator::Gm)),
            _ => Err(Error::parse(format!("unknown generator {name:?}"))),
        }
    }

    fn call(&self, name: &str, arg: &BigInt) -> Result<GrothElement> {
        let n = arg.to_u32().ok_or_else(|| Error::parse(format!("bad argument {arg} to {name}")))?;
        let g = match name {
            "Pn" | "P" if n >= 1 => Generator::ProjSpace(n),
            "C" => Generator::Curve(n),
            "A" => Generator::Abelian(n),
            "Pn" | "P" => return Err(Error::parse("Pn(n) needs n >= 1")),
            _ => return Err(Error::parse(format!("unknown generator {name}({arg})"))),
        };
        Ok(GrothElement::generator(g))
    }

    fn add(&self, a: GrothElement, b: GrothElement) -> Result<GrothElement> {
        Ok(a + b)
    }

    fn sub(&self, a: GrothElement, b: GrothElement) -> Result<GrothElement> {
        Ok(a - b)
    }

    fn mul(&self, a: GrothElement, b: GrothElement) -> Result<GrothElement> {
        Ok(a * b)
    }

    fn neg(&self, a: GrothElement) -> Result<GrothElement> {
        Ok(-a)
    }

    fn div(&self, _a: GrothElement, _b: GrothElement) -> Result<GrothElement> {
        Err(Error::parse("division is not defined in the Grothendieck ring"))
    }

    fn pow(&self, a: GrothElement, e: i64) -> Result<GrothElement> {
        let e = u32::try_from(e).map_err(|_| Error::parse("exponents must be nonnegative"))?;
        Ok(a.pow(e))
    }
}

/// Integer polynomial in `T`, low degree first, no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PoincarePolynomial(Vec<BigInt>);

impl PoincarePolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PoincarePolynomial(coeffs)
    }

    pub fn from_i64(c: &[i64]) -> Self {
        PoincarePolynomial::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        PoincarePolynomial(Vec::new())
    }

    pub fn one() -> Self {
        PoincarePolynomial::from_i64(&[1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.0.last()
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.0.iter().sum()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.0.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Remainder modulo `T^2 - 1`, as `(c0, c1)` for `c0 + c1 T`.
    pub fn mod_t2_minus_1(&self) -> (BigInt, BigInt) {
        let mut r = (BigInt::zero(), BigInt::zero());
        for (i, c) in self.0.iter().enumerate() {
            if i % 2 == 0 {
                r.0 += c;
            } else {
                r.1 += c;
            }
        }
        r
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        PoincarePolynomial::new(self.0.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(PoincarePolynomial::one(), |acc, _| acc * self.clone())
    }
}

impl Add for PoincarePolynomial {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let n = self.0.len().max(rhs.0.len());
        let get = |v: &Vec<BigInt>, i: usize| v.get(i).cloned().unwrap_or_default();
        PoincarePolynomial::new((0..n).map(|i| get(&self.0, i) + get(&rhs.0, i)).collect())
    }
}

impl Neg for PoincarePolynomial {
    type Output = Self;
    fn neg(self) -> Self {
        PoincarePolynomial(self.0.into_iter().map(|c| -c).collect())
    }
}

impl Sub for PoincarePolynomial {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + -rhs
    }
}

impl Mul for PoincarePolynomial {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return PoincarePolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PoincarePolynomial::new(out)
    }
}

impl fmt::Display for PoincarePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if i == 1 {
                        write!(f, "T")?;
                    } else {
                        write!(f, "T^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Outcome of comparing two classes in `K_0(Var_k)/(L - 1)` through `P mod (T^2 - 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuotientVerdict {
    /// The classes differ; the nonzero residue `c0 + c1 T` of `P(a) - P(b)` certifies it.
    Distinct { residue: (BigInt, BigInt) },
    /// The realization cannot tell the classes apart.
    Indistinguishable,
}

impl fmt::Display for QuotientVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotientVerdict::Distinct { residue: (c0, c1) } => {
                let r = PoincarePolynomial::new(vec![c0.clone(), c1.clone()]);
                write!(f, "distinct (residue {r})")
            }
            QuotientVerdict::Indistinguishable => write!(f, "indistinguishable"),
        }
    }
}

pub fn eq_mod_l_minus_1(a: &GrothElement, b: &GrothElement) -> QuotientVerdict {
    let diff = a.poincare() - b.poincare();
    let residue = diff.mod_t2_minus_1();
    if residue.0.is_zero() && residue.1.is_zero() {
        QuotientVerdict::Indistinguishable
    } else {
        QuotientVerdict::Distinct { residue }
    }
}

/// `χ_top` of the motivic Serre invariant of an elliptic curve of the given type.
pub fn serre_euler(kodaira: KodairaType) -> i64 {
    crate::kodairadb::serre_class(kodaira).euler().to_i64().expect("small table value")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GrothElement {
        GrothElement::parse(s).unwrap()
    }

    fn poly(c: &[i64]) -> PoincarePolynomial {
        PoincarePolynomial::from_i64(c)
    }

    #[test]
    fn generator_realizations() {
        assert_eq!(g("Gm").poincare(), poly(&[-1, 0, 1]));
        assert_eq!(g("C(1)").poincare(), poly(&[1, -2, 1]));
        assert_eq!(g("pt").poincare(), poly(&[1]));
        assert_eq!(g("L").poincare(), poly(&[0, 0, 1]));
        assert_eq!(g("A(1)").poincare(), poly(&[1, -2, 1]));
        assert_eq!(g("Pn(2)").poincare(), poly(&[1, 0, 1, 0, 1]));
    }

    #[test]
    fn ring_examples() {
        assert_eq!(g("Gm * pt"), g("Gm"));
        assert_eq!(g("Pn(1) - pt").poincare(), poly(&[0, 0, 1]));
        assert_eq!(g("Gm*Gm").poincare(), poly(&[-1, 0, 1]).pow(2));
        assert_eq!(g("Gm^2"), g("Gm*Gm"));
        assert_eq!(g("L + 1 - Pn(1)").poincare(), PoincarePolynomial::zero());
        assert!(g("L - L").is_zero());
        assert!(GrothElement::parse("L / Gm").is_err());
        assert!(GrothElement::parse("X").is_err());
        assert!(GrothElement::parse("Pn(0)").is_err());
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(g("C(1)").euler(), BigInt::from(0));
        assert_eq!(g("L").euler(), BigInt::from(1));
        assert_eq!(g("C(2)").euler(), BigInt::from(-2));
        assert_eq!(g("Pn(3)").euler(), BigInt::from(4));
    }

    #[test]
    fn quotient_comparison() {
        let two = |a: i64, b: i64| QuotientVerdict::Distinct { residue: (BigInt::from(a), BigInt::from(b)) };
        assert_eq!(eq_mod_l_minus_1(&g("C(1)"), &g("0")), two(2, -2));
        assert_eq!(eq_mod_l_minus_1(&g("L"), &g("pt")), QuotientVerdict::Indistinguishable);
        assert_eq!(eq_mod_l_minus_1(&g("C(1)"), &g("4")), two(-2, -2));
    }

    #[test]
    fn point_counts() {
        let q = BigInt::from(5);
        assert_eq!(g("Pn(2) - L^2 - L").point_count(&q), Some(BigInt::from(1)));
        assert_eq!(g("Gm + 1").point_count(&q), g("L").point_count(&q));
        assert_eq!(g("C(1)").point_count(&q), None);
    }

    #[test]
    fn display() {
        assert_eq!(g("3 - 2 L Gm^2 + C(1)").to_string(), "-2*L*Gm^2 + C(1) + 3");
        assert_eq!(poly(&[-1, 0, 1]).to_string(), "T^2 - 1");
        assert_eq!(poly(&[1, -2, 1]).to_string(), "T^2 - 2*T + 1");
    }
}
