//! Dense univariate polynomials in `t` over a [`Scalar`] field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;

/// Polynomial stored low degree first, without trailing zero coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<C: Scalar> {
    coeffs: Vec<C>,
}

impl<C: Scalar> Poly<C> {
    pub fn from_coeffs(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: C) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `c * t^deg`
    pub fn monomial(c: C, zero: C, deg: usize) -> Self {
        let mut coeffs = vec![zero; deg];
        coeffs.push(c);
        Poly::from_coeffs(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&C> {
        self.coeffs.get(i)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn constant_term(&self) -> Option<&C> {
        self.coeffs.first()
    }

    /// Order of vanishing at t = 0; `None` for the zero polynomial.
    pub fn ord_t(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Multiplies by `t^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let zero = self.coeffs[0].clone() - self.coeffs[0].clone();
        let mut coeffs = vec![zero; k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Divides by `t^k`; the low `k` coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(k).all(|c| c.is_zero()));
        Poly { coeffs: self.coeffs.iter().skip(k).cloned().collect() }
    }

    /// Substitutes `t -> t^d`.
    pub fn substitute_power(&self, d: usize) -> Self {
        assert!(d >= 1);
        if self.is_zero() || d == 1 {
            return self.clone();
        }
        let zero = self.coeffs[0].clone() - self.coeffs[0].clone();
        let mut coeffs = vec![zero; (self.coeffs.len() - 1) * d + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * d] = c.clone();
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &C) -> Self {
        Poly::from_coeffs(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() { (self, other) } else { (other, self) };
        let mut coeffs = long.coeffs.clone();
        for (i, c) in short.coeffs.iter().enumerate() {
            coeffs[i] = coeffs[i].clone() + c.clone();
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn neg_ref(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        let mut out: Vec<Option<C>> = vec![None; n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let term = a.clone() * b.clone();
                out[i + j] = Some(match out[i + j].take() {
                    Some(acc) => acc + term,
                    None => term,
                });
            }
        }
        let zero = self.coeffs[0].clone() - self.coeffs[0].clone();
        Poly::from_coeffs(out.into_iter().map(|c| c.unwrap_or_else(|| zero.clone())).collect())
    }

    /// Euclidean division; panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dlead = divisor.leading().expect("division by the zero polynomial");
        let dinv = dlead.inv().expect("leading coefficient is invertible");
        let ddeg = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= ddeg {
            return (Poly::zero(), self.clone());
        }
        let zero = dlead.clone() - dlead.clone();
        let mut quot = vec![zero.clone(); rem.len() - ddeg];
        for k in (0..quot.len()).rev() {
            let c = rem[k + ddeg].clone() * dinv.clone();
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * d.clone();
            }
            quot[k] = c;
        }
        rem.truncate(ddeg);
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Returns the monic associate together with the leading coefficient removed.
    pub fn monic(&self) -> Option<(Self, C)> {
        let lead = self.leading()?.clone();
        let inv = lead.inv()?;
        Some((self.scale(&inv), lead))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        // a monomial c t^k divides only t^j, j <= k
        for (m, other) in [(a, b), (b, a)] {
            if let (Some(k), Some(lead)) = (m.ord_t(), m.leading()) {
                if k + 1 == m.coeffs.len() && !other.is_zero() {
                    let j = k.min(other.ord_t().expect("nonzero"));
                    let one = lead.inv().expect("nonzero leading coefficient") * lead.clone();
                    return Poly::monomial(one, lead.clone() - lead.clone(), j);
                }
            }
        }
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            if y.coeffs.len() == 1 {
                return y.monic().expect("nonzero constant").0;
            }
            let (_, r) = x.div_rem(&y);
            x = y;
            // monic remainders keep rational coefficients from swelling
            y = r.monic().map_or(r, |(m, _)| m);
        }
        match x.monic() {
            Some((m, _)) => m,
            None => x,
        }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let one = self.coeffs.last().unwrap().clone();
        let one = one.inv().unwrap() * one;
        let mut k = one.clone() - one.clone();
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for c in self.coeffs.iter().skip(1) {
            k = k + one.clone();
            out.push(c.clone() * k.clone());
        }
        Poly::from_coeffs(out)
    }

    pub fn eval(&self, x: &C) -> Option<C> {
        let mut it = self.coeffs.iter().rev();
        let mut acc = it.next()?.clone();
        for c in it {
            acc = acc * x.clone() + c.clone();
        }
        Some(acc)
    }
}

impl<C: Scalar> Add for Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: Self) -> Self {
        self.add_ref(&rhs)
    }
}

impl<C: Scalar> Sub for Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: Self) -> Self {
        self.sub_ref(&rhs)
    }
}

impl<C: Scalar> Mul for Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl<C: Scalar> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Self {
        self.neg_ref()
    }
}

impl<C: Scalar> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let needs_parens = body.contains('/');
            let body = if needs_parens && i > 0 { format!("({body})") } else { body };
            match i {
                0 => write!(f, "{body}")?,
                _ => {
                    if body != "1" {
                        write!(f, "{body}*")?;
                    }
                    if i == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
