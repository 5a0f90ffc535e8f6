//! Tate's algorithm: minimal model, Kodaira type and local invariants.
//!
//! The steps follow the usual long-form procedure, so residue
//! characteristics 2 and 3 need no short Weierstrass form. Translations only
//! ever move a repeated residue root to zero, and repeated roots are rational
//! in the coefficients, so no residue field extension is needed.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::localfield::{LocalField, Valuation};
use crate::weierstrass::{apply_transform, standard_invariants, Coefficients, WeierstrassModel};

/// Kodaira symbol of the special fiber of the minimal regular model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KodairaType {
    I0,
    /// `I_ν`, ν ≥ 1.
    I(u32),
    II,
    III,
    IV,
    I0Star,
    /// `I_ν^*`, ν ≥ 1.
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl KodairaType {
    /// One representative of every family, with `I_ν` and `I_ν^*` at ν = 1.
    pub const REPRESENTATIVES: [KodairaType; 10] = [
        KodairaType::I0,
        KodairaType::I(1),
        KodairaType::II,
        KodairaType::III,
        KodairaType::IV,
        KodairaType::I0Star,
        KodairaType::IStar(1),
        KodairaType::IVStar,
        KodairaType::IIIStar,
        KodairaType::IIStar,
    ];

    /// Order of the geometric component group of the Néron model.
    pub fn n_components(self) -> u32 {
        use KodairaType::*;
        match self {
            I0 | II | IIStar => 1,
            I(nu) => nu,
            III | IIIStar => 2,
            IV | IVStar => 3,
            I0Star | IStar(_) => 4,
        }
    }

    pub fn reduction_class(self) -> ReductionClass {
        match self {
            KodairaType::I0 => ReductionClass::Good,
            KodairaType::I(_) => ReductionClass::Multiplicative,
            _ => ReductionClass::Additive,
        }
    }

    /// v(Δ_min) when the residue characteristic is 0 or at least 5.
    pub fn tame_discriminant_valuation(self) -> i64 {
        use KodairaType::*;
        match self {
            I0 => 0,
            I(nu) => nu as i64,
            II => 2,
            III => 3,
            IV => 4,
            I0Star => 6,
            IStar(nu) => 6 + nu as i64,
            IVStar => 8,
            IIIStar => 9,
            IIStar => 10,
        }
    }

    fn check(self) -> Result<Self> {
        match self {
            KodairaType::I(0) | KodairaType::IStar(0) => {
                Err(Error::InvalidArgument(format!("{self:?}: ν must be at least 1")))
            }
            t => Ok(t),
        }
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use KodairaType::*;
        match self {
            I0 => write!(f, "I0"),
            I(nu) => write!(f, "I{nu}"),
            II => write!(f, "II"),
            III => write!(f, "III"),
            IV => write!(f, "IV"),
            I0Star => write!(f, "I0*"),
            IStar(nu) => write!(f, "I{nu}*"),
            IVStar => write!(f, "IV*"),
            IIIStar => write!(f, "III*"),
            IIStar => write!(f, "II*"),
        }
    }
}

impl FromStr for KodairaType {
    type Err = Error;

    /// Accepts `I0`, `I5`, `II`, `IV*`, `I3*`, and the spellings `I0star`, `Istar3`.
    fn from_str(s: &str) -> Result<Self> {
        use KodairaType::*;
        let bad = || Error::parse(format!("unknown Kodaira type {s:?}"));
        let norm = s.trim().replace("star", "*").replace(['_', '(', ')'], "");
        let (body, star) = match norm.strip_suffix('*') {
            Some(b) => (b.to_string(), true),
            None => match norm.strip_prefix("I*") {
                Some(n) => (format!("I{n}"), true),
                None => (norm.clone(), false),
            },
        };
        let t = match (body.as_str(), star) {
            ("II", false) => II,
            ("III", false) => III,
            ("IV", false) => IV,
            ("II", true) => IIStar,
            ("III", true) => IIIStar,
            ("IV", true) => IVStar,
            (b, _) => {
                let nu: u32 =
                    b.strip_prefix('I').filter(|n| !n.is_empty()).and_then(|n| n.parse().ok()).ok_or_else(bad)?;
                match (nu, star) {
                    (0, false) => I0,
                    (0, true) => I0Star,
                    (n, false) => I(n),
                    (n, true) => IStar(n),
                }
            }
        };
        t.check()
    }
}

impl Serialize for KodairaType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for KodairaType {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReductionClass {
    Good,
    Multiplicative,
    Additive,
}

impl fmt::Display for ReductionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ReductionClass::Good => "good",
            ReductionClass::Multiplicative => "multiplicative",
            ReductionClass::Additive => "additive",
        };
        f.write_str(s)
    }
}

/// Output of [`tate_algorithm`].
#[derive(Clone, Debug, PartialEq)]
pub struct LocalInvariants<F: LocalField> {
    pub kodaira: KodairaType,
    pub v_delta_min: i64,
    pub minimal_model: WeierstrassModel<F>,
    pub n_components: u32,
    pub reduction_class: ReductionClass,
    /// Residue characteristic.
    pub p: u64,
}

impl<F: LocalField> LocalInvariants<F> {
    pub fn is_cohomologically_tame(&self) -> bool {
        is_cohomologically_tame(self.kodaira, self.p)
    }

    pub fn error_term(&self) -> i64 {
        error_term(self.kodaira, self.p)
    }
}

/// Saito's criterion for elliptic curves, read per type.
pub fn is_cohomologically_tame(kodaira: KodairaType, p: u64) -> bool {
    use KodairaType::*;
    match p {
        2 => !matches!(kodaira, II | IIStar | III | IIIStar | I0Star | IStar(_)),
        3 => !matches!(kodaira, II | IIStar | IV | IVStar),
        _ => true,
    }
}

/// The error term e(X) of the trace formula.
pub fn error_term(kodaira: KodairaType, p: u64) -> i64 {
    use KodairaType::*;
    match (p, kodaira) {
        (2, II | IIStar) => 1,
        (2, I0Star | IStar(_)) => -2,
        (3, II | IIStar) => 1,
        (3, IV | IVStar) => -1,
        _ => 0,
    }
}

struct Step<'a, F: LocalField> {
    field: &'a F,
    p: u64,
    pi: F::Elem,
}

impl<F: LocalField> Step<'_, F> {
    fn v(&self, x: &F::Elem) -> Valuation {
        self.field.valuation(x)
    }

    fn divisible(&self, x: &F::Elem, k: i64) -> bool {
        self.v(x).at_least(k)
    }

    fn c(&self, n: i64) -> F::Elem {
        self.field.from_i64(n)
    }

    fn pi_pow(&self, k: u32) -> F::Elem {
        self.field.pi_power(k)
    }

    /// Constant lift of the residue class of `x`.
    fn red(&self, x: &F::Elem) -> Result<F::Elem> {
        self.field.reduce_lift(x)
    }

    /// Lift of the p-th root of the residue class of `x`.
    fn root(&self, x: &F::Elem) -> Result<F::Elem> {
        let r = self.field.reduce(x)?;
        Ok(self.field.lift(&self.field.residue_frobenius_root(&r)?))
    }

    fn div(&self, a: &F::Elem, b: &F::Elem) -> Result<F::Elem> {
        self.field.checked_div(a, b)
    }

    fn rst(&self, a: &Coefficients<F::Elem>, r: F::Elem, s: F::Elem, t: F::Elem) -> Result<Coefficients<F::Elem>> {
        apply_transform(self.field, a, &self.field.one(), &r, &s, &t)
    }

    fn vd(&self, a: &Coefficients<F::Elem>) -> Result<i64> {
        let d = standard_invariants(self.field, a).discriminant;
        self.v(&d).finite().ok_or(Error::SingularCurve)
    }
}

/// Runs Tate's algorithm on `model`.
pub fn tate_algorithm<F: LocalField>(model: &WeierstrassModel<F>) -> Result<LocalInvariants<F>> {
    let field = model.field();
    let st = Step { field, p: field.residue_characteristic(), pi: field.uniformizer() };
    let p = st.p;
    let mut a = model.coefficients().clone();
    loop {
        let inv = standard_invariants(field, &a);
        let vd = st.v(&inv.discriminant).finite().ok_or(Error::SingularCurve)?;
        let finish = |kodaira: KodairaType, a: Coefficients<F::Elem>, vd: i64| -> Result<LocalInvariants<F>> {
            Ok(LocalInvariants {
                kodaira,
                v_delta_min: vd,
                minimal_model: WeierstrassModel::new(field.clone(), a)?,
                n_components: kodaira.n_components(),
                reduction_class: kodaira.reduction_class(),
                p,
            })
        };
        if vd == 0 {
            return finish(KodairaType::I0, a, 0);
        }
        if st.v(&inv.c4) == Valuation::Finite(0) {
            return finish(KodairaType::I(vd as u32), a, vd);
        }

        // Move the singular point of the reduction to (0, 0).
        let (r, t) = match p {
            2 => {
                let r = st.root(&a.a4)?;
                let x = ((r.clone() + a.a2.clone()) * r.clone() + a.a4.clone()) * r.clone() + a.a6.clone();
                (r, st.root(&x)?)
            }
            3 => {
                let r = st.root(&-inv.b6.clone())?;
                let t = st.red(&(a.a1.clone() * r.clone() + a.a3.clone()))?;
                (r, t)
            }
            _ => {
                let r = st.red(&st.div(&-inv.b2.clone(), &st.c(12))?)?;
                let t = st.red(&st.div(&-(a.a1.clone() * r.clone() + a.a3.clone()), &st.c(2))?)?;
                (r, t)
            }
        };
        a = st.rst(&a, r, field.zero(), t)?;
        debug_assert!(st.divisible(&a.a3, 1) && st.divisible(&a.a4, 1) && st.divisible(&a.a6, 1));

        if !st.divisible(&a.a6, 2) {
            return finish(KodairaType::II, a, vd);
        }
        let b8 = standard_invariants(field, &a).b8;
        if !st.divisible(&b8, 3) {
            return finish(KodairaType::III, a, vd);
        }
        let b6 = standard_invariants(field, &a).b6;
        if !st.divisible(&b6, 3) {
            return finish(KodairaType::IV, a, vd);
        }

        // Arrange p | a1, a2; p^2 | a3, a4; p^3 | a6.
        let (s, t) = if p == 2 {
            let s = st.root(&a.a2)?;
            let t = st.pi.clone() * st.root(&st.div(&a.a6, &st.pi_pow(2))?)?;
            (s, t)
        } else {
            let two = st.c(2);
            (st.div(&-a.a1.clone(), &two)?, st.div(&-a.a3.clone(), &two)?)
        };
        a = st.rst(&a, field.zero(), s, t)?;

        // Residue cubic T^3 + bT^2 + cT + d.
        let b = st.div(&a.a2, &st.pi)?;
        let c = st.div(&a.a4, &st.pi_pow(2))?;
        let d = st.div(&a.a6, &st.pi_pow(3))?;
        let sq = |x: &F::Elem| x.clone() * x.clone();
        let w = st.c(27) * sq(&d) - sq(&b) * sq(&c) + st.c(4) * sq(&b) * b.clone() * d.clone()
            - st.c(18) * b.clone() * c.clone() * d.clone()
            + st.c(4) * sq(&c) * c.clone();
        let x = st.c(3) * c.clone() - sq(&b);
        let sw = if !st.divisible(&w, 1) {
            1
        } else if !st.divisible(&x, 1) {
            2
        } else {
            3
        };

        match sw {
            1 => return finish(KodairaType::I0Star, a, vd),
            2 => {
                // Double root: move it to 0, then run the I_m^* subprocedure.
                let r = match p {
                    2 => st.root(&c)?,
                    3 => st.red(&st.div(&c, &b)?)?,
                    _ => {
                        let num = b.clone() * c.clone() - st.c(9) * d.clone();
                        st.red(&st.div(&num, &(st.c(2) * x.clone()))?)?
                    }
                };
                a = st.rst(&a, st.pi.clone() * r, field.zero(), field.zero())?;
                let (mut ix, mut iy) = (3u32, 3u32);
                let mut mx = st.pi_pow(2);
                let mut my = mx.clone();
                loop {
                    let a3t = st.div(&a.a3, &my)?;
                    let a6t = st.div(&a.a6, &(mx.clone() * my.clone()))?;
                    if !st.divisible(&(sq(&a3t) + st.c(4) * a6t.clone()), 1) {
                        break;
                    }
                    let t = if p == 2 {
                        my.clone() * st.root(&a6t)?
                    } else {
                        my.clone() * st.red(&st.div(&-a3t, &st.c(2))?)?
                    };
                    a = st.rst(&a, field.zero(), field.zero(), t)?;
                    my = my * st.pi.clone();
                    iy += 1;
                    let a2t = st.div(&a.a2, &st.pi)?;
                    let a4t = st.div(&a.a4, &(st.pi.clone() * mx.clone()))?;
                    let a6t = st.div(&a.a6, &(mx.clone() * my.clone()))?;
                    if !st.divisible(&(sq(&a4t) - st.c(4) * a6t.clone() * a2t.clone()), 1) {
                        break;
                    }
                    let r = if p == 2 {
                        mx.clone() * st.root(&st.div(&a6t, &a2t)?)?
                    } else {
                        mx.clone() * st.red(&st.div(&-a4t, &(st.c(2) * a2t))?)?
                    };
                    a = st.rst(&a, r, field.zero(), field.zero())?;
                    mx = mx * st.pi.clone();
                    ix += 1;
                }
                let m = ix + iy - 5;
                return finish(KodairaType::IStar(m), a, vd);
            }
            _ => {
                // Triple root: move it to 0.
                let r = match p {
                    2 => st.red(&b)?,
                    3 => st.root(&-d.clone())?,
                    _ => st.red(&st.div(&-b.clone(), &st.c(3))?)?,
                };
                a = st.rst(&a, st.pi.clone() * r, field.zero(), field.zero())?;
                let a3t = st.div(&a.a3, &st.pi_pow(2))?;
                let a6t = st.div(&a.a6, &st.pi_pow(4))?;
                if !st.divisible(&(sq(&a3t) + st.c(4) * a6t.clone()), 1) {
                    return finish(KodairaType::IVStar, a, vd);
                }
                let t = if p == 2 {
                    -(st.pi_pow(2) * st.root(&a6t)?)
                } else {
                    st.pi_pow(2) * st.red(&st.div(&-a3t, &st.c(2))?)?
                };
                a = st.rst(&a, field.zero(), field.zero(), t)?;
                if !st.divisible(&a.a4, 4) {
                    return finish(KodairaType::IIIStar, a, vd);
                }
                if !st.divisible(&a.a6, 6) {
                    return finish(KodairaType::IIStar, a, vd);
                }
            }
        }

        // Not minimal: divide by π and start over.
        let next = apply_transform(field, &a, &st.pi, &field.zero(), &field.zero(), &field.zero())?;
        debug_assert_eq!(st.vd(&next)?, vd - 12);
        a = next;
    }
}
