//! Weighted dual graphs of strict normal crossings special fibers
//! `Y_s = Σ N_i E_i`, and the Euler characteristics read off from them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Component {
    pub id: u32,
    pub multiplicity: u64,
    #[serde(default)]
    pub genus: u64,
}

impl Component {
    pub fn new(id: u32, multiplicity: u64, genus: u64) -> Self {
        Component { id, multiplicity, genus }
    }
}

/// Components with multiplicity and genus, and a multiset of intersection
/// points between distinct components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SncConfiguration {
    #[serde(default)]
    edges: Vec<(u32, u32)>,
    #[serde(rename = "component")]
    components: Vec<Component>,
}

/// Marked components lying over a closed point, each with the number of
/// points where it meets the unmarked part of the fiber.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalMarking {
    pub marked: Vec<MarkedComponent>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MarkedComponent {
    pub id: u32,
    #[serde(default)]
    pub external_degree: u64,
}

impl LocalMarking {
    pub fn new(marked: impl IntoIterator<Item = (u32, u64)>) -> Self {
        LocalMarking {
            marked: marked.into_iter().map(|(id, external_degree)| MarkedComponent { id, external_degree }).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LocalTrace {
    pub chi_serre: i64,
    pub trace: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    NotConnected,
    SelfEdge(u32),
    ZeroMultiplicity(u32),
    Empty,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::NotConnected => write!(f, "NotConnected"),
            Failure::SelfEdge(id) => write!(f, "SelfEdge({id})"),
            Failure::ZeroMultiplicity(id) => write!(f, "ZeroMultiplicity({id})"),
            Failure::Empty => write!(f, "Empty"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostics {
    pub failures: Vec<Failure>,
    /// gcd of the multiplicities; above 1 the fiber is non-reduced everywhere.
    pub multiplicity_gcd: u64,
    pub chi_fiber: i64,
}

impl Diagnostics {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            write!(f, "ok")?;
        } else {
            let fs: Vec<String> = self.failures.iter().map(|x| x.to_string()).collect();
            write!(f, "failures: {}", fs.join(", "))?;
        }
        write!(f, "; gcd = {}; chi_fiber = {}", self.multiplicity_gcd, self.chi_fiber)
    }
}

/// True when `n = p^e` with `e >= 1`.
pub fn is_wild_multiplicity(n: u64, p: u64) -> bool {
    if p < 2 || n < p {
        return false;
    }
    let mut n = n;
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

impl SncConfiguration {
    /// Fails on duplicate ids or edges that name a missing component.
    /// Self-edges, disconnected graphs and zero multiplicities are
    /// accepted here and reported by [`SncConfiguration::validate`].
    pub fn new(components: Vec<Component>, edges: Vec<(u32, u32)>) -> Result<Self> {
        let c = SncConfiguration { components, edges };
        c.check_references()?;
        Ok(c)
    }

    fn check_references(&self) -> Result<()> {
        let mut ids = BTreeSet::new();
        for c in &self.components {
            if !ids.insert(c.id) {
                return Err(Error::InvalidArgument(format!("duplicate component id {}", c.id)));
            }
        }
        for &(a, b) in &self.edges {
            for id in [a, b] {
                if !ids.contains(&id) {
                    return Err(Error::UnknownComponent(id));
                }
            }
        }
        Ok(())
    }

    /// Parses the TOML configuration format (`edges` and `[[component]]`).
    pub fn from_toml(src: &str) -> Result<(Self, Option<LocalMarking>)> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct File {
            #[serde(default)]
            edges: Vec<(u32, u32)>,
            #[serde(rename = "component", default)]
            components: Vec<Component>,
            #[serde(default)]
            marked: Option<Vec<MarkedComponent>>,
        }
        let f: File = toml::from_str(src).map_err(|e| Error::parse(e.to_string()))?;
        let config = SncConfiguration::new(f.components, f.edges)?;
        Ok((config, f.marked.map(|marked| LocalMarking { marked })))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("configurations serialize")
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn component(&self, id: u32) -> Result<&Component> {
        self.components.iter().find(|c| c.id == id).ok_or(Error::UnknownComponent(id))
    }

    /// Number of edge endpoints at `id`, counted with multiplicity.
    pub fn degree(&self, id: u32) -> Result<u64> {
        self.component(id)?;
        Ok(self.edges.iter().map(|&(a, b)| (a == id) as u64 + (b == id) as u64).sum())
    }

    /// `χ(E_i°) = 2 - 2g_i - deg(i)`.
    pub fn chi_open(&self, id: u32) -> Result<i64> {
        let c = self.component(id)?;
        Ok(2 - 2 * c.genus as i64 - self.degree(id)? as i64)
    }

    fn chi_open_sum(&self, keep: impl Fn(&Component) -> bool) -> i64 {
        self.components.iter().filter(|c| keep(c)).map(|c| self.chi_open(c.id).expect("component exists")).sum()
    }

    /// `Σ χ(E_i°) + #edges`.
    pub fn chi_fiber(&self) -> i64 {
        self.chi_open_sum(|_| true) + self.edges.len() as i64
    }

    /// Euler characteristic of the smooth locus: the multiplicity one strata.
    pub fn smooth_locus_chi(&self) -> i64 {
        self.chi_open_sum(|c| c.multiplicity == 1)
    }

    /// Euler characteristic of the wild locus: strata with `N_i` a positive power of `p`.
    pub fn wild_locus_chi(&self, p: u64) -> i64 {
        if p == 0 {
            return 0;
        }
        self.chi_open_sum(|c| is_wild_multiplicity(c.multiplicity, p))
    }

    /// `χ(Sm(Y_s)) + χ(W_Y)`, the trace of the monodromy on nearby cycles.
    pub fn tame_trace(&self, p: u64) -> i64 {
        self.smooth_locus_chi() + self.wild_locus_chi(p)
    }

    /// The same graph with every multiplicity multiplied by `m`.
    pub fn scale_multiplicities(&self, m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("multiplicity scale must be at least 1".into()));
        }
        let components =
            self.components.iter().map(|c| Component { multiplicity: c.multiplicity * m, ..c.clone() }).collect();
        Ok(SncConfiguration { components, edges: self.edges.clone() })
    }

    /// Both sides of the local trace formula over a marked point.
    pub fn local_trace(&self, marking: &LocalMarking, p: u64) -> Result<LocalTrace> {
        let mut marked: BTreeMap<u32, u64> = BTreeMap::new();
        for m in &marking.marked {
            self.component(m.id).map_err(|_| Error::InconsistentMarking(format!("unknown component {}", m.id)))?;
            if marked.insert(m.id, m.external_degree).is_some() {
                return Err(Error::InconsistentMarking(format!("component {} marked twice", m.id)));
            }
        }
        let mut internal: BTreeMap<u32, u64> = marked.keys().map(|&id| (id, 0)).collect();
        let mut crossing: BTreeMap<u32, u64> = internal.clone();
        for &(a, b) in &self.edges {
            for (x, y) in [(a, b), (b, a)] {
                if marked.contains_key(&x) {
                    let slot = if marked.contains_key(&y) { &mut internal } else { &mut crossing };
                    *slot.get_mut(&x).unwrap() += 1;
                }
            }
        }
        let (mut chi_serre, mut wild) = (0, 0);
        for (&id, &ext) in &marked {
            if ext < crossing[&id] {
                return Err(Error::InconsistentMarking(format!(
                    "component {id} meets {} unmarked components but has external degree {ext}",
                    crossing[&id]
                )));
            }
            let c = self.component(id)?;
            let chi = 2 - 2 * c.genus as i64 - internal[&id] as i64 - ext as i64;
            if c.multiplicity == 1 {
                chi_serre += chi;
            } else if is_wild_multiplicity(c.multiplicity, p) {
                wild += chi;
            }
        }
        Ok(LocalTrace { chi_serre, trace: chi_serre + wild })
    }

    pub fn multiplicity_gcd(&self) -> u64 {
        self.components.iter().fold(0, |g, c| g.gcd(&c.multiplicity))
    }

    pub fn is_connected(&self) -> bool {
        let Some(first) = self.components.first() else {
            return true;
        };
        let mut seen = BTreeSet::from([first.id]);
        let mut stack = vec![first.id];
        while let Some(x) = stack.pop() {
            for &(a, b) in &self.edges {
                let next = if a == x {
                    b
                } else if b == x {
                    a
                } else {
                    continue;
                };
                if seen.insert(next) {
                    stack.push(next);
                }
            }
        }
        seen.len() == self.components.len()
    }

    pub fn validate(&self) -> Diagnostics {
        let mut failures = Vec::new();
        if self.components.is_empty() {
            failures.push(Failure::Empty);
        }
        if !self.is_connected() {
            failures.push(Failure::NotConnected);
        }
        for &(a, b) in &self.edges {
            if a == b {
                failures.push(Failure::SelfEdge(a));
            }
        }
        for c in &self.components {
            if c.multiplicity == 0 {
                failures.push(Failure::ZeroMultiplicity(c.id));
            }
        }
        Diagnostics { failures, multiplicity_gcd: self.multiplicity_gcd(), chi_fiber: self.chi_fiber() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star(center: u64, tails: &[u64]) -> SncConfiguration {
        let mut comps = vec![Component::new(0, center, 0)];
        let mut edges = Vec::new();
        for (i, &m) in tails.iter().enumerate() {
            comps.push(Component::new(i as u32 + 1, m, 0));
            edges.push((0, i as u32 + 1));
        }
        SncConfiguration::new(comps, edges).unwrap()
    }

    #[test]
    fn open_strata() {
        let c = star(2, &[1, 1, 1, 1]);
        assert_eq!(c.chi_open(0).unwrap(), -2);
        assert_eq!(c.chi_open(1).unwrap(), 1);
        assert_eq!(c.chi_open(9), Err(Error::UnknownComponent(9)));
        let e = SncConfiguration::new(vec![Component::new(0, 1, 1)], vec![]).unwrap();
        assert_eq!(e.chi_open(0).unwrap(), 0);
        assert_eq!(e.chi_fiber(), 0);
    }

    #[test]
    fn cycle_of_three() {
        let comps = (0..3).map(|i| Component::new(i, 1, 0)).collect();
        let c = SncConfiguration::new(comps, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(c.chi_fiber(), 3);
        assert_eq!(c.smooth_locus_chi(), 0);
        assert_eq!(c.tame_trace(2), 0);
    }

    #[test]
    fn wild_multiplicities() {
        assert!(is_wild_multiplicity(4, 2));
        assert!(is_wild_multiplicity(3, 3));
        assert!(!is_wild_multiplicity(6, 2));
        assert!(!is_wild_multiplicity(1, 2));
        assert!(!is_wild_multiplicity(4, 0));
        let c = star(2, &[1, 1, 1, 1]);
        assert_eq!(c.wild_locus_chi(2), -2);
        assert_eq!(c.wild_locus_chi(3), 0);
        assert_eq!(c.wild_locus_chi(0), 0);
    }

    #[test]
    fn scaling() {
        let c = star(2, &[1, 1, 1, 1]);
        let s = c.scale_multiplicities(2).unwrap();
        assert_eq!(s.smooth_locus_chi(), 0);
        assert_eq!(s.chi_fiber(), c.chi_fiber());
        let d = s.validate();
        assert!(d.ok());
        assert_eq!(d.multiplicity_gcd, 2);
        assert_eq!(c.scale_multiplicities(1).unwrap(), c);
        assert!(c.scale_multiplicities(0).is_err());
    }

    #[test]
    fn validation_failures() {
        let c = SncConfiguration::new(vec![Component::new(0, 1, 0), Component::new(1, 1, 0)], vec![]).unwrap();
        assert_eq!(c.validate().failures, vec![Failure::NotConnected]);
        let c = SncConfiguration::new(vec![Component::new(0, 1, 0)], vec![(0, 0)]).unwrap();
        assert_eq!(c.validate().failures, vec![Failure::SelfEdge(0)]);
        assert_eq!(SncConfiguration::new(vec![Component::new(0, 1, 0)], vec![(0, 3)]), Err(Error::UnknownComponent(3)));
    }

    #[test]
    fn full_marking_matches_global_sides() {
        let c = star(3, &[1, 1, 1]);
        let all = LocalMarking::new(c.components().iter().map(|x| (x.id, 0)));
        let lt = c.local_trace(&all, 3).unwrap();
        assert_eq!(lt, LocalTrace { chi_serre: c.smooth_locus_chi(), trace: c.tame_trace(3) });
    }

    #[test]
    fn marking_errors() {
        let c = star(3, &[1, 1, 1]);
        let bad = LocalMarking::new([(0, 0)]);
        assert!(matches!(c.local_trace(&bad, 0), Err(Error::InconsistentMarking(_))));
        let dup = LocalMarking::new([(1, 1), (1, 1)]);
        assert!(matches!(c.local_trace(&dup, 0), Err(Error::InconsistentMarking(_))));
        let unknown = LocalMarking::new([(7, 0)]);
        assert!(matches!(c.local_trace(&unknown, 0), Err(Error::InconsistentMarking(_))));
    }

    #[test]
    fn toml_round_trip() {
        let src = r#"
edges = [[0, 1], [0, 2]]

[[component]]
id = 0
multiplicity = 2

[[component]]
id = 1
multiplicity = 1

[[component]]
id = 2
multiplicity = 1
genus = 1

[[marked]]
id = 1
external_degree = 0
"#;
        let (c, m) = SncConfiguration::from_toml(src).unwrap();
        assert_eq!(c.components().len(), 3);
        assert_eq!(c.component(2).unwrap().genus, 1);
        assert_eq!(m.unwrap().marked.len(), 1);
        let (back, none) = SncConfiguration::from_toml(&c.to_toml()).unwrap();
        assert_eq!(back, c);
        assert!(none.is_none());
        assert!(SncConfiguration::from_toml("[[component]]\nid = 0\n").is_err());
    }
}
