//! Long Weierstrass models `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`
//! over the valuation ring of a [`LocalField`].

use std::fmt;

use crate::error::{Error, Result};
use crate::localfield::{LocalField, Valuation};

/// The five coefficients `[a1, a2, a3, a4, a6]`, with no invariants attached.
#[derive(Clone, Debug, PartialEq)]
pub struct Coefficients<E> {
    pub a1: E,
    pub a2: E,
    pub a3: E,
    pub a4: E,
    pub a6: E,
}

impl<E: Clone> Coefficients<E> {
    pub fn as_array(&self) -> [&E; 5] {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
    }
}

/// b2, b4, b6, b8, c4, c6, discriminant and j.
#[derive(Clone, Debug, PartialEq)]
pub struct StandardInvariants<E> {
    pub b2: E,
    pub b4: E,
    pub b6: E,
    pub b8: E,
    pub c4: E,
    pub c6: E,
    pub discriminant: E,
    /// `c4^3 / Δ`; `None` only for singular coefficient sets.
    pub j: Option<E>,
}

pub const COEFFICIENT_NAMES: [&str; 5] = ["a1", "a2", "a3", "a4", "a6"];

pub fn standard_invariants<F: LocalField>(field: &F, a: &Coefficients<F::Elem>) -> StandardInvariants<F::Elem> {
    let c = |n: i64| field.from_i64(n);
    let (a1, a2, a3, a4, a6) = (a.a1.clone(), a.a2.clone(), a.a3.clone(), a.a4.clone(), a.a6.clone());
    let b2 = a1.clone() * a1.clone() + c(4) * a2.clone();
    let b4 = c(2) * a4.clone() + a1.clone() * a3.clone();
    let b6 = a3.clone() * a3.clone() + c(4) * a6.clone();
    let b8 = a1.clone() * a1.clone() * a6.clone() + c(4) * a2.clone() * a6.clone()
        - a1.clone() * a3.clone() * a4.clone()
        + a2.clone() * a3.clone() * a3.clone()
        - a4.clone() * a4.clone();
    let c4 = b2.clone() * b2.clone() - c(24) * b4.clone();
    let c6 = -(b2.clone() * b2.clone() * b2.clone()) + c(36) * b2.clone() * b4.clone() - c(216) * b6.clone();
    let discriminant = -(b2.clone() * b2.clone() * b8.clone())
        - c(8) * b4.clone() * b4.clone() * b4.clone()
        - c(27) * b6.clone() * b6.clone()
        + c(9) * b2.clone() * b4.clone() * b6.clone();
    let j = if field.is_zero(&discriminant) {
        None
    } else {
        Some(c4.clone() * c4.clone() * c4.clone() / discriminant.clone())
    };
    StandardInvariants { b2, b4, b6, b8, c4, c6, discriminant, j }
}

/// Checks `4 b8 = b2 b6 - b4^2` and `1728 Δ = c4^3 - c6^2`.
pub fn check_identities<F: LocalField>(field: &F, inv: &StandardInvariants<F::Elem>) -> Result<()> {
    let c = |n: i64| field.from_i64(n);
    let lhs = c(4) * inv.b8.clone();
    let rhs = inv.b2.clone() * inv.b6.clone() - inv.b4.clone() * inv.b4.clone();
    if lhs != rhs {
        return Err(Error::Inconsistent("4 b8 != b2 b6 - b4^2".into()));
    }
    let lhs = c(1728) * inv.discriminant.clone();
    let rhs = inv.c4.clone() * inv.c4.clone() * inv.c4.clone() - inv.c6.clone() * inv.c6.clone();
    if lhs != rhs {
        return Err(Error::Inconsistent("1728 Δ != c4^3 - c6^2".into()));
    }
    Ok(())
}

/// Applies `x = u^2 x' + r`, `y = u^3 y' + s u^2 x' + t`.
pub fn apply_transform<F: LocalField>(
    field: &F,
    a: &Coefficients<F::Elem>,
    u: &F::Elem,
    r: &F::Elem,
    s: &F::Elem,
    t: &F::Elem,
) -> Result<Coefficients<F::Elem>> {
    if field.is_zero(u) {
        return Err(Error::ZeroScale);
    }
    let c = |n: i64| field.from_i64(n);
    let (a1, a2, a3, a4, a6) = (a.a1.clone(), a.a2.clone(), a.a3.clone(), a.a4.clone(), a.a6.clone());
    let (r, s, t) = (r.clone(), s.clone(), t.clone());
    let u1 = u.clone();
    let u2 = u1.clone() * u1.clone();
    let u3 = u2.clone() * u1.clone();
    let u4 = u2.clone() * u2.clone();
    let u6 = u3.clone() * u3.clone();
    let n1 = a1.clone() + c(2) * s.clone();
    let n2 = a2.clone() - s.clone() * a1.clone() + c(3) * r.clone() - s.clone() * s.clone();
    let n3 = a3.clone() + r.clone() * a1.clone() + c(2) * t.clone();
    let n4 = a4.clone() - s.clone() * a3.clone() + c(2) * r.clone() * a2.clone()
        - (t.clone() + r.clone() * s.clone()) * a1.clone()
        + c(3) * r.clone() * r.clone()
        - c(2) * s.clone() * t.clone();
    let n6 = a6 + r.clone() * a4 + r.clone() * r.clone() * a2 + r.clone() * r.clone() * r.clone()
        - t.clone() * a3
        - t.clone() * t.clone()
        - r * t * a1;
    Ok(Coefficients { a1: n1 / u1, a2: n2 / u2, a3: n3 / u3, a4: n4 / u4, a6: n6 / u6 })
}

/// An integral Weierstrass model with nonzero discriminant.
#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassModel<F: LocalField> {
    field: F,
    coeffs: Coefficients<F::Elem>,
}

impl<F: LocalField> WeierstrassModel<F> {
    pub fn new(field: F, coeffs: Coefficients<F::Elem>) -> Result<Self> {
        for (name, a) in COEFFICIENT_NAMES.iter().zip(coeffs.as_array()) {
            if field.valuation(a) < Valuation::Finite(0) {
                return Err(Error::NonIntegral(format!("{name} = {a}")));
            }
        }
        let inv = standard_invariants(&field, &coeffs);
        if field.is_zero(&inv.discriminant) {
            return Err(Error::SingularCurve);
        }
        check_identities(&field, &inv)?;
        Ok(WeierstrassModel { field, coeffs })
    }

    pub fn from_array(field: F, a: [F::Elem; 5]) -> Result<Self> {
        let [a1, a2, a3, a4, a6] = a;
        WeierstrassModel::new(field, Coefficients { a1, a2, a3, a4, a6 })
    }

    /// Parses five coefficient literals `a1, a2, a3, a4, a6`.
    pub fn parse(field: F, literals: [&str; 5]) -> Result<Self> {
        let mut parsed = Vec::with_capacity(5);
        for (name, lit) in COEFFICIENT_NAMES.iter().zip(literals) {
            let x = field.parse_element(lit).map_err(|e| Error::parse(format!("{name}: {e}")))?;
            parsed.push(x);
        }
        let a: [F::Elem; 5] = parsed.try_into().expect("five coefficients");
        WeierstrassModel::from_array(field, a)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coefficients(&self) -> &Coefficients<F::Elem> {
        &self.coeffs
    }

    pub fn invariants(&self) -> StandardInvariants<F::Elem> {
        standard_invariants(&self.field, &self.coeffs)
    }

    pub fn discriminant(&self) -> F::Elem {
        self.invariants().discriminant
    }

    pub fn discriminant_valuation(&self) -> i64 {
        self.field.valuation(&self.discriminant()).finite().expect("discriminant of a model is nonzero")
    }

    pub fn j_invariant(&self) -> F::Elem {
        self.invariants().j.expect("discriminant of a model is nonzero")
    }

    /// The model in coordinates `x = u^2 x' + r`, `y = u^3 y' + s u^2 x' + t`.
    ///
    /// Fails with [`Error::NonIntegral`] if the new coefficients leave R.
    pub fn transform(&self, u: &F::Elem, r: &F::Elem, s: &F::Elem, t: &F::Elem) -> Result<Self> {
        let coeffs = apply_transform(&self.field, &self.coeffs, u, r, s, t)?;
        WeierstrassModel::new(self.field.clone(), coeffs)
    }

    /// The model after `t -> t^d` (equicharacteristic backends only).
    pub fn base_change(&self, d: u64) -> Result<Self> {
        let f = &self.field;
        let c = &self.coeffs;
        let coeffs = Coefficients {
            a1: f.base_change(&c.a1, d)?,
            a2: f.base_change(&c.a2, d)?,
            a3: f.base_change(&c.a3, d)?,
            a4: f.base_change(&c.a4, d)?,
            a6: f.base_change(&c.a6, d)?,
        };
        WeierstrassModel::new(f.clone(), coeffs)
    }

    /// Coefficient literals, in the order a1, a2, a3, a4, a6.
    pub fn literals(&self) -> [String; 5] {
        self.coeffs.as_array().map(|a| a.to_string())
    }
}

impl<F: LocalField> fmt::Display for WeierstrassModel<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a1, a2, a3, a4, a6] = self.literals();
        write!(f, "[{a1}, {a2}, {a3}, {a4}, {a6}] over {}", self.field.spec())
    }
}
