//! Rational functions in `t`, kept in lowest terms with a monic denominator.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::poly::Poly;
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFunc<C: Scalar> {
    num: Poly<C>,
    den: Poly<C>,
}

impl<C: Scalar> RatFunc<C> {
    /// `num / den` in lowest terms; `None` if `den` is zero.
    pub fn new(num: Poly<C>, den: Poly<C>) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            let (m, _) = den.monic()?;
            let one = m.leading().unwrap().clone();
            return Some(RatFunc { num, den: Poly::constant(one) });
        }
        if den.degree() == Some(0) {
            let (d, lead) = den.monic()?;
            return Some(RatFunc { num: num.scale(&lead.inv()?), den: d });
        }
        let g = Poly::gcd(&num, &den);
        let (n, _) = num.div_rem(&g);
        let (d, _) = den.div_rem(&g);
        let (d, lead) = d.monic()?;
        let n = n.scale(&lead.inv()?);
        Some(RatFunc { num: n, den: d })
    }

    pub fn from_poly(p: Poly<C>, one: C) -> Self {
        RatFunc { num: p, den: Poly::constant(one) }
    }

    pub fn constant(c: C, one: C) -> Self {
        RatFunc::from_poly(Poly::constant(c), one)
    }

    pub fn numer(&self) -> &Poly<C> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<C> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn one_scalar(&self) -> C {
        self.den.leading().expect("denominator is monic").clone()
    }

    pub fn zero_scalar(&self) -> C {
        let one = self.one_scalar();
        one.clone() - one
    }

    /// t-adic valuation; `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        let n = self.num.ord_t()? as i64;
        let d = self.den.ord_t().expect("denominator is nonzero") as i64;
        Some(n - d)
    }

    /// Value at t = 0 of an element of valuation >= 0.
    pub fn value_at_zero(&self) -> Option<C> {
        match self.valuation() {
            None => Some(self.zero_scalar()),
            Some(v) if v > 0 => Some(self.zero_scalar()),
            Some(0) => {
                let kn = self.num.ord_t().unwrap();
                let kd = self.den.ord_t().unwrap();
                let n0 = self.num.coeff(kn).unwrap().clone();
                let d0 = self.den.coeff(kd).unwrap().clone();
                n0.div(&d0)
            }
            Some(_) => None,
        }
    }

    /// Substitutes `t -> t^d`.
    pub fn substitute_power(&self, d: usize) -> Self {
        RatFunc::new(self.num.substitute_power(d), self.den.substitute_power(d))
            .expect("substitution keeps the denominator nonzero")
    }

    /// Multiplies by `t^k` for any integer `k`.
    pub fn mul_t_power(&self, k: i64) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        if k > 0 {
            RatFunc::new(self.num.shift_up(k as usize), self.den.clone()).unwrap()
        } else {
            RatFunc::new(self.num.clone(), self.den.shift_up((-k) as usize)).unwrap()
        }
    }

    pub fn inv(&self) -> Option<Self> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    fn add_ref(&self, other: &Self) -> Self {
        if self.den == other.den {
            return RatFunc::new(self.num.add_ref(&other.num), self.den.clone()).unwrap();
        }
        let num = self.num.mul_ref(&other.den).add_ref(&other.num.mul_ref(&self.den));
        RatFunc::new(num, self.den.mul_ref(&other.den)).unwrap()
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        if other.is_zero() {
            return other.clone();
        }
        // cross-cancel first to keep the products small
        let g1 = Poly::gcd(&self.num, &other.den);
        let g2 = Poly::gcd(&other.num, &self.den);
        let (n1, _) = self.num.div_rem(&g1);
        let (d2, _) = other.den.div_rem(&g1);
        let (n2, _) = other.num.div_rem(&g2);
        let (d1, _) = self.den.div_rem(&g2);
        RatFunc::new(n1.mul_ref(&n2), d1.mul_ref(&d2)).unwrap()
    }
}

impl<C: Scalar> Add for RatFunc<C> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.add_ref(&rhs)
    }
}

impl<C: Scalar> Sub for RatFunc<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.add_ref(&-rhs)
    }
}

impl<C: Scalar> Mul for RatFunc<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl<C: Scalar> Div for RatFunc<C> {
    type Output = Self;
    /// Panics on division by zero.
    fn div(self, rhs: Self) -> Self {
        self.mul_ref(&rhs.inv().expect("division by zero rational function"))
    }
}

impl<C: Scalar> Neg for RatFunc<C> {
    type Output = Self;
    fn neg(self) -> Self {
        RatFunc { num: self.num.neg_ref(), den: self.den }
    }
}

impl<C: Scalar> fmt::Display for RatFunc<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            return write!(f, "{}", self.num);
        }
        let n = self.num.to_string();
        let n = if self.num.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 { format!("({n})") } else { n };
        write!(f, "{}/({})", n, self.den)
    }
}
