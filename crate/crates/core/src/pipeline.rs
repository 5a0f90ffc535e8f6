//! Full analyses: curve reports, tame base change, torsors and corpus runs.
//!
//! A report carries the trace of the monodromy computed three ways: from the
//! per-type tables (`χ(S) + e`), from the SNC fiber (`χ(Sm) + χ(W)`), and
//! from the eigenvalue model of the monodromy operator.

use std::collections::BTreeMap;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kodairadb::{monodromy_trace, serre_descriptor, snc_configuration};
use crate::localfield::{FieldSpec, Laurent, LaurentFp, LaurentQ, LocalField, Padic, ResidueSpec};
use crate::motivic::serre_euler;
use crate::scalar::{PrimeField, Rationals};
use crate::snc::is_wild_multiplicity;
use crate::tate::{error_term, is_cohomologically_tame, tate_algorithm, KodairaType, LocalInvariants, ReductionClass};
use crate::weierstrass::WeierstrassModel;

/// Flat analysis report; serializes to TOML with stable key names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub field: String,
    pub a1: String,
    pub a2: String,
    pub a3: String,
    pub a4: String,
    pub a6: String,
    #[serde(rename = "type")]
    pub kodaira: KodairaType,
    pub p: u64,
    pub v_delta_min: i64,
    pub n_components: u32,
    pub reduction: ReductionClass,
    #[serde(default)]
    pub minimal_model: Vec<String>,
    pub serre_class: String,
    pub serre_euler: i64,
    pub tame: bool,
    pub error_term: i64,
    pub trace_table: i64,
    pub trace_snc: i64,
    pub trace_monodromy: i64,
    pub holds: bool,
    pub consistent: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torsor_order: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl Report {
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("reports serialize")
    }

    pub fn from_toml(src: &str) -> Result<Self> {
        toml::from_str(src).map_err(|e| Error::parse(e.to_string()))
    }

    pub fn semistable(&self) -> bool {
        self.reduction != ReductionClass::Additive
    }

    fn from_invariants<F: LocalField>(model: &WeierstrassModel<F>, inv: &LocalInvariants<F>) -> Result<Self> {
        let [a1, a2, a3, a4, a6] = model.literals();
        let kodaira = inv.kodaira;
        let p = inv.p;
        let chi_s = serre_euler(kodaira);
        let e = error_term(kodaira, p);
        let tame = is_cohomologically_tame(kodaira, p);
        let trace_table = chi_s + e;
        let trace_snc = snc_configuration(kodaira).tame_trace(p);
        let trace_monodromy = monodromy_trace(kodaira, 1);
        if trace_table != trace_snc {
            return Err(Error::Inconsistent(format!(
                "type {kodaira} at p = {p}: table trace {trace_table} differs from SNC trace {trace_snc}"
            )));
        }
        Ok(Report {
            field: model.field().spec().to_string(),
            a1,
            a2,
            a3,
            a4,
            a6,
            kodaira,
            p,
            v_delta_min: inv.v_delta_min,
            n_components: inv.n_components,
            reduction: inv.reduction_class,
            minimal_model: inv.minimal_model.literals().to_vec(),
            serre_class: serre_descriptor(kodaira).to_string(),
            serre_euler: chi_s,
            tame,
            error_term: e,
            trace_table,
            trace_snc,
            trace_monodromy,
            holds: e == 0,
            consistent: !tame || trace_monodromy == trace_table,
            torsor_order: None,
            warnings: Vec::new(),
        })
    }
}

/// A Weierstrass model over one of the supported backends.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyCurve {
    Padic(WeierstrassModel<Padic>),
    LaurentQ(WeierstrassModel<LaurentQ>),
    LaurentFp(WeierstrassModel<LaurentFp>),
}

macro_rules! dispatch {
    ($curve:expr, $w:ident => $body:expr) => {
        match $curve {
            AnyCurve::Padic($w) => $body,
            AnyCurve::LaurentQ($w) => $body,
            AnyCurve::LaurentFp($w) => $body,
        }
    };
}

impl AnyCurve {
    pub fn new(spec: FieldSpec, literals: [&str; 5]) -> Result<Self> {
        Ok(match spec {
            FieldSpec::Padic(p) => AnyCurve::Padic(WeierstrassModel::parse(Padic::new(p)?, literals)?),
            FieldSpec::Laurent(ResidueSpec::Rationals) => {
                AnyCurve::LaurentQ(WeierstrassModel::parse(Laurent::new(Rationals), literals)?)
            }
            FieldSpec::Laurent(ResidueSpec::PrimeField(p)) => {
                AnyCurve::LaurentFp(WeierstrassModel::parse(Laurent::new(PrimeField::new(p)?), literals)?)
            }
        })
    }

    pub fn parse(spec: &str, literals: [&str; 5]) -> Result<Self> {
        AnyCurve::new(spec.parse()?, literals)
    }

    pub fn spec(&self) -> FieldSpec {
        dispatch!(self, w => w.field().spec())
    }

    pub fn residue_characteristic(&self) -> u64 {
        self.spec().residue_characteristic()
    }

    pub fn kodaira_type(&self) -> Result<KodairaType> {
        dispatch!(self, w => Ok(tate_algorithm(w)?.kodaira))
    }

    pub fn analyze(&self) -> Result<Report> {
        dispatch!(self, w => Report::from_invariants(w, &tate_algorithm(w)?))
    }

    /// The curve after `t -> t^d`.
    pub fn base_change(&self, d: u64) -> Result<AnyCurve> {
        Ok(match self {
            AnyCurve::Padic(_) => return Err(Error::UnsupportedBackend("padic".into())),
            AnyCurve::LaurentQ(w) => AnyCurve::LaurentQ(w.base_change(d)?),
            AnyCurve::LaurentFp(w) => AnyCurve::LaurentFp(w.base_change(d)?),
        })
    }
}

pub fn analyze(curve: &AnyCurve) -> Result<Report> {
    curve.analyze()
}

/// Comparison of `χ(S(X × K(d)))` with `Trace(φ^d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BaseChangeReport {
    pub d: u64,
    pub original_type: KodairaType,
    pub substituted_type: KodairaType,
    pub serre_euler_substituted: i64,
    pub monodromy_trace: i64,
    pub tame: bool,
    pub agrees: bool,
    /// False only when a tame curve disagrees.
    pub consistent: bool,
    pub original: Report,
    pub substituted: Report,
}

impl BaseChangeReport {
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("reports serialize")
    }
}

pub fn base_change_check(curve: &AnyCurve, d: u64) -> Result<BaseChangeReport> {
    if d == 0 {
        return Err(Error::InvalidArgument("d must be at least 1".into()));
    }
    if let AnyCurve::Padic(_) = curve {
        return Err(Error::UnsupportedBackend("padic".into()));
    }
    let p = curve.residue_characteristic();
    if p > 0 && d.gcd(&p) != 1 {
        return Err(Error::NotCoprime { d, p });
    }
    let original = curve.analyze()?;
    let substituted = curve.base_change(d)?.analyze()?;
    let trace = monodromy_trace(original.kodaira, d);
    let agrees = substituted.serre_euler == trace;
    Ok(BaseChangeReport {
        d,
        original_type: original.kodaira,
        substituted_type: substituted.kodaira,
        serre_euler_substituted: substituted.serre_euler,
        monodromy_trace: trace,
        tame: original.tame,
        agrees,
        consistent: agrees || !original.tame,
        original,
        substituted,
    })
}

/// True when `m` is a power of `p` (including `p^0 = 1`).
fn is_power_of(m: u64, p: u64) -> bool {
    m == 1 || is_wild_multiplicity(m, p)
}

/// Report for a genus one curve without rational point, given its
/// Jacobian's report and its order `m` in `H^1(K, Jac)`.
pub fn torsor_analyze(jacobian: &Report, m: u64) -> Result<Report> {
    if m == 0 {
        return Err(Error::InvalidArgument("torsor order must be at least 1".into()));
    }
    if m == 1 {
        return Ok(jacobian.clone());
    }
    let kodaira = jacobian.kodaira;
    let p = jacobian.p;
    let jac_chi_s = serre_euler(kodaira);
    let jac_e = error_term(kodaira, p);
    let e = jac_chi_s + jac_e;
    let scaled = snc_configuration(kodaira).scale_multiplicities(m)?;
    let trace_snc = scaled.tame_trace(p);
    let trace_monodromy = monodromy_trace(kodaira, 1);
    let tame = is_cohomologically_tame(kodaira, p);
    let semistable = kodaira.reduction_class() != ReductionClass::Additive;

    let mut warnings = Vec::new();
    let vacuous = !semistable && !(p > 0 && is_power_of(m, p));
    if vacuous {
        let why = if p == 0 {
            "H^1(K, E) vanishes for additive E when the residue characteristic is 0".to_string()
        } else {
            format!("H^1(K, E) is a {p}-group for additive E, and {m} is not a power of {p}")
        };
        warnings.push(format!("no torsor of order {m} exists: {why}; values are formal"));
    }
    let smooth_ok = scaled.smooth_locus_chi() == 0;
    let consistent = smooth_ok && (vacuous || trace_snc == e) && (!tame || trace_monodromy == e);

    Ok(Report {
        serre_class: "0".into(),
        serre_euler: 0,
        tame,
        error_term: e,
        trace_table: e,
        trace_snc,
        trace_monodromy,
        holds: p == 0 || semistable,
        consistent,
        torsor_order: Some(m),
        warnings,
        ..jacobian.clone()
    })
}

/// Expected classification attached to a corpus line as `# TYPE VDELTA NCOMP`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expected {
    #[serde(rename = "type")]
    pub kodaira: KodairaType,
    pub v_delta_min: Option<i64>,
    pub n_components: Option<u32>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorpusEntry {
    pub line: usize,
    pub curve: AnyCurve,
    pub expected: Option<Expected>,
}

fn parse_expected(comment: &str) -> Result<Option<Expected>> {
    let mut words = comment.split_whitespace();
    let Some(first) = words.next() else {
        return Ok(None);
    };
    let Ok(kodaira) = first.parse::<KodairaType>() else {
        return Ok(None);
    };
    let mut num = |what: &str| -> Result<Option<i64>> {
        match words.next() {
            None => Ok(None),
            Some(w) => w.parse().map(Some).map_err(|_| Error::parse(format!("bad expected {what} {w:?}"))),
        }
    };
    let v_delta_min = num("v_delta_min")?;
    let n_components = num("n_components")?.map(|n| n as u32);
    Ok(Some(Expected { kodaira, v_delta_min, n_components }))
}

/// Parses `<fieldspec>;a1;a2;a3;a4;a6 [# TYPE VDELTA NCOMP]` lines.
pub fn parse_corpus(src: &str) -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let line = i + 1;
        let (body, comment) = match raw.split_once('#') {
            Some((b, c)) => (b.trim(), Some(c)),
            None => (raw.trim(), None),
        };
        if body.is_empty() {
            continue;
        }
        let parse_line = || -> Result<CorpusEntry> {
            let fields: Vec<&str> = body.split(';').map(str::trim).collect();
            if fields.len() != 6 {
                return Err(Error::parse(format!("expected 6 ';'-separated fields, found {}", fields.len())));
            }
            let curve = AnyCurve::parse(fields[0], [fields[1], fields[2], fields[3], fields[4], fields[5]])?;
            let expected = match comment {
                Some(c) => parse_expected(c)?,
                None => None,
            };
            Ok(CorpusEntry { line, curve, expected })
        };
        out.push(parse_line().map_err(|e| e.at_line(line))?);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusRecord {
    pub line: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
    pub matches_expected: bool,
    #[serde(flatten)]
    pub report: Report,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CorpusSummary {
    pub curves: usize,
    pub holds: usize,
    pub fails: usize,
    pub consistency_failures: usize,
    pub expectation_mismatches: usize,
    pub types: BTreeMap<String, usize>,
    #[serde(rename = "report")]
    pub records: Vec<CorpusRecord>,
}

impl CorpusSummary {
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("summaries serialize")
    }
}

fn matches(expected: &Option<Expected>, r: &Report) -> bool {
    match expected {
        None => true,
        Some(x) => {
            x.kodaira == r.kodaira
                && x.v_delta_min.is_none_or(|v| v == r.v_delta_min)
                && x.n_components.is_none_or(|n| n == r.n_components)
        }
    }
}

/// Analyzes every curve of a corpus in parallel; records keep input order.
pub fn corpus_run(src: &str) -> Result<CorpusSummary> {
    let entries = parse_corpus(src)?;
    let records: Vec<CorpusRecord> = entries
        .par_iter()
        .map(|e| {
            let report = e.curve.analyze().map_err(|err| err.at_line(e.line))?;
            Ok(CorpusRecord {
                line: e.line,
                matches_expected: matches(&e.expected, &report),
                expected: e.expected.clone(),
                report,
            })
        })
        .collect::<Result<_>>()?;
    let mut s = CorpusSummary { curves: records.len(), ..Default::default() };
    for r in &records {
        if r.report.holds {
            s.holds += 1;
        } else {
            s.fails += 1;
        }
        if !r.report.consistent {
            s.consistency_failures += 1;
        }
        if !r.matches_expected {
            s.expectation_mismatches += 1;
        }
        *s.types.entry(r.report.kodaira.to_string()).or_default() += 1;
    }
    s.records = records;
    Ok(s)
}
