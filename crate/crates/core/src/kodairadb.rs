//! Per-type tables: resolved SNC fiber, monodromy model and Serre class.

use std::fmt;

use serde::Serialize;

use crate::motivic::{Generator, GrothElement};
use crate::snc::{Component, SncConfiguration};
use crate::tate::KodairaType;

/// How the tame monodromy acts on `H^1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Monodromy {
    /// Finite order `e` (potentially good reduction).
    PotentiallyGood { order: u32 },
    /// Unipotent.
    Multiplicative,
    /// Unipotent up to the quadratic character.
    TwistedMultiplicative,
}

impl fmt::Display for Monodromy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Monodromy::PotentiallyGood { order } => write!(f, "potentially good, order {order}"),
            Monodromy::Multiplicative => write!(f, "multiplicative"),
            Monodromy::TwistedMultiplicative => write!(f, "twisted multiplicative"),
        }
    }
}

/// Descriptor of the motivic Serre invariant `S(X)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum SerreClass {
    Zero,
    Constant(u32),
    /// The class of the reduction, a genus one curve.
    GoodCurveClass,
}

impl SerreClass {
    pub fn to_groth(self) -> GrothElement {
        match self {
            SerreClass::Zero => GrothElement::zero(),
            SerreClass::Constant(n) => GrothElement::integer(n),
            SerreClass::GoodCurveClass => GrothElement::generator(Generator::Curve(1)),
        }
    }
}

impl fmt::Display for SerreClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SerreClass::Zero => write!(f, "0"),
            SerreClass::Constant(n) => write!(f, "{n}"),
            SerreClass::GoodCurveClass => write!(f, "C(1)"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeRecord {
    #[serde(rename = "type")]
    pub kodaira: KodairaType,
    pub phi_order: u32,
    pub monodromy: Monodromy,
    pub serre_class: SerreClass,
    pub snc: SncConfiguration,
}

pub fn record(kodaira: KodairaType) -> TypeRecord {
    TypeRecord {
        kodaira,
        phi_order: kodaira.n_components(),
        monodromy: monodromy(kodaira),
        serre_class: serre_descriptor(kodaira),
        snc: snc_configuration(kodaira),
    }
}

/// Records for the ten type families, `I_ν` and `I_ν^*` at ν = 1, 2.
pub fn atlas() -> Vec<TypeRecord> {
    let mut types = KodairaType::REPRESENTATIVES.to_vec();
    types.insert(2, KodairaType::I(2));
    types.insert(8, KodairaType::IStar(2));
    types.into_iter().map(record).collect()
}

/// The atlas as TOML, one `[[record]]` per type.
pub fn atlas_toml() -> String {
    #[derive(Serialize)]
    struct Atlas {
        record: Vec<TypeRecord>,
    }
    toml::to_string(&Atlas { record: atlas() }).expect("tables serialize")
}

pub fn monodromy(kodaira: KodairaType) -> Monodromy {
    use KodairaType::*;
    match kodaira {
        I0 => Monodromy::PotentiallyGood { order: 1 },
        I0Star => Monodromy::PotentiallyGood { order: 2 },
        IV | IVStar => Monodromy::PotentiallyGood { order: 3 },
        III | IIIStar => Monodromy::PotentiallyGood { order: 4 },
        II | IIStar => Monodromy::PotentiallyGood { order: 6 },
        I(_) => Monodromy::Multiplicative,
        IStar(_) => Monodromy::TwistedMultiplicative,
    }
}

/// `ζ_e^d + ζ_e^{-d}` for `e ∈ {1, 2, 3, 4, 6}`.
fn root_of_unity_trace(e: u32, d: u64) -> i64 {
    let r = d % e as u64;
    match (e, r) {
        (_, 0) => 2,
        (2, _) => -2,
        (3, _) => -1,
        (4, 2) => -2,
        (4, _) => 0,
        (6, 1 | 5) => 1,
        (6, 2 | 4) => -1,
        (6, 3) => -2,
        _ => unreachable!("monodromy order {e} does not occur"),
    }
}

/// Trace of `φ^d` on `H^0 ⊕ H^1 ⊕ H^2` with alternating signs: `2 - tr(φ^d | H^1)`.
pub fn monodromy_trace(kodaira: KodairaType, d: u64) -> i64 {
    assert!(d >= 1, "d must be positive");
    let t1 = match monodromy(kodaira) {
        Monodromy::PotentiallyGood { order } => root_of_unity_trace(order, d),
        Monodromy::Multiplicative => 2,
        Monodromy::TwistedMultiplicative => {
            if d.is_multiple_of(2) {
                2
            } else {
                -2
            }
        }
    };
    2 - t1
}

pub fn serre_descriptor(kodaira: KodairaType) -> SerreClass {
    match kodaira.reduction_class() {
        crate::tate::ReductionClass::Good => SerreClass::GoodCurveClass,
        crate::tate::ReductionClass::Multiplicative => SerreClass::Zero,
        crate::tate::ReductionClass::Additive => SerreClass::Constant(kodaira.n_components()),
    }
}

pub fn serre_class(kodaira: KodairaType) -> GrothElement {
    serre_descriptor(kodaira).to_groth()
}

struct Builder {
    comps: Vec<Component>,
    edges: Vec<(u32, u32)>,
}

impl Builder {
    fn new() -> Self {
        Builder { comps: Vec::new(), edges: Vec::new() }
    }

    fn add(&mut self, multiplicity: u64) -> u32 {
        let id = self.comps.len() as u32;
        self.comps.push(Component::new(id, multiplicity, 0));
        id
    }

    fn attach(&mut self, to: u32, multiplicity: u64) -> u32 {
        let id = self.add(multiplicity);
        self.edges.push((to, id));
        id
    }

    /// Chain of the given multiplicities hanging off `from` (or free if `None`); returns its ids.
    fn chain(&mut self, from: Option<u32>, mults: &[u64]) -> Vec<u32> {
        let mut prev = from;
        let mut ids = Vec::new();
        for &m in mults {
            let id = match prev {
                Some(p) => self.attach(p, m),
                None => self.add(m),
            };
            ids.push(id);
            prev = Some(id);
        }
        ids
    }

    fn build(self) -> SncConfiguration {
        SncConfiguration::new(self.comps, self.edges).expect("table graphs are well formed")
    }
}

/// Dual graph of the SNC fiber obtained from the minimal regular model by
/// blowing up until the crossings are strict. All components are rational
/// except the genus one fiber of `I0`.
pub fn snc_configuration(kodaira: KodairaType) -> SncConfiguration {
    use KodairaType::*;
    let mut b = Builder::new();
    match kodaira {
        I0 => {
            b.comps.push(Component::new(0, 1, 1));
        }
        I(1) => {
            // the nodal curve, with the node blown up
            let c = b.add(1);
            let e = b.add(2);
            b.edges.extend([(c, e), (c, e)]);
        }
        I(nu) => {
            let ids: Vec<u32> = (0..nu).map(|_| b.add(1)).collect();
            for i in 0..nu as usize {
                b.edges.push((ids[i], ids[(i + 1) % nu as usize]));
            }
        }
        II => {
            let c = b.add(6);
            for m in [1, 2, 3] {
                b.attach(c, m);
            }
        }
        III => {
            let c = b.add(4);
            for m in [1, 1, 2] {
                b.attach(c, m);
            }
        }
        IV => {
            let c = b.add(3);
            for _ in 0..3 {
                b.attach(c, 1);
            }
        }
        I0Star | IStar(_) => {
            let nu = if let IStar(n) = kodaira { n } else { 0 };
            let spine = b.chain(None, &vec![2; nu as usize + 1]);
            for end in [spine[0], *spine.last().unwrap()] {
                b.attach(end, 1);
                b.attach(end, 1);
            }
        }
        IVStar => {
            let c = b.add(3);
            for _ in 0..3 {
                b.chain(Some(c), &[2, 1]);
            }
        }
        IIIStar => {
            let ids = b.chain(None, &[1, 2, 3, 4, 3, 2, 1]);
            b.attach(ids[3], 2);
        }
        IIStar => {
            let ids = b.chain(None, &[1, 2, 3, 4, 5, 6, 4, 2]);
            b.attach(ids[5], 3);
        }
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use KodairaType::*;

    #[test]
    fn euler_numbers_of_tables() {
        assert_eq!(snc_configuration(I0Star).chi_fiber(), 6);
        assert_eq!(snc_configuration(II).chi_fiber(), 5);
        assert_eq!(snc_configuration(IIStar).chi_fiber(), 10);
        assert_eq!(snc_configuration(I(1)).chi_fiber(), 2);
        assert_eq!(snc_configuration(IStar(3)).chi_fiber(), 9);
    }

    #[test]
    fn monodromy_examples() {
        assert_eq!(monodromy_trace(IV, 1), 3);
        assert_eq!(monodromy_trace(II, 2), 3);
        assert_eq!(monodromy_trace(I0, 5), 0);
        for d in 1..=12 {
            assert_eq!(monodromy_trace(I(4), d), 0);
        }
        assert_eq!(monodromy_trace(IStar(2), 2), 0);
        assert_eq!(monodromy_trace(IStar(2), 3), 4);
    }

    #[test]
    fn serre_classes() {
        assert_eq!(serre_class(IV), GrothElement::integer(3));
        assert!(serre_class(I(5)).is_zero());
        let c = serre_class(I0);
        assert_eq!(c, GrothElement::generator(Generator::Curve(1)));
        assert_eq!(c.euler(), 0.into());
    }

    #[test]
    fn tables_are_valid_and_reduced() {
        for r in atlas() {
            let d = r.snc.validate();
            assert!(d.ok(), "{}: {d}", r.kodaira);
            assert_eq!(d.multiplicity_gcd, 1, "{}", r.kodaira);
        }
    }
}
