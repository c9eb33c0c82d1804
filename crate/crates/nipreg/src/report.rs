//! JSON and CSV encodings of decomposition reports.

use nipreg_core::covering::CoverCount;
use nipreg_core::decompose::{BoundCheck, Decomposition, PDescriptor};
use nipreg_core::subset::TuplingParams;
use nipreg_core::{Rational, VcDim};
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;
/// Bumped whenever CSV columns change.
pub const CSV_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Ratio {
    pub num: i64,
    pub den: i64,
}

impl From<Rational> for Ratio {
    fn from(r: Rational) -> Self {
        Ratio { num: *r.numer(), den: *r.denom() }
    }
}

impl std::fmt::Display for Ratio {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// An exact count, or a lower bound when a search cap was hit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Count {
    Exact(usize),
    AtLeast { at_least: usize },
}

impl Count {
    fn csv(self) -> String {
        match self {
            Count::Exact(n) => n.to_string(),
            Count::AtLeast { at_least } => format!(">={at_least}"),
        }
    }
}

impl From<VcDim> for Count {
    fn from(d: VcDim) -> Self {
        match d {
            VcDim::Exact(n) => Count::Exact(n),
            VcDim::AtLeast(n) => Count::AtLeast { at_least: n },
        }
    }
}

impl From<CoverCount> for Count {
    fn from(c: CoverCount) -> Self {
        match c {
            CoverCount::Exact(n) => Count::Exact(n),
            CoverCount::AtLeast(n) => Count::AtLeast { at_least: n },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Tupling {
    pub sigma: Ratio,
    pub tau: Ratio,
    pub delta: Ratio,
    pub alpha: Ratio,
}

impl From<TuplingParams> for Tupling {
    fn from(t: TuplingParams) -> Self {
        Tupling { sigma: t.sigma.into(), tau: t.tau.into(), delta: t.delta.into(), alpha: t.alpha.into() }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PReport {
    Subgroup { elements: Vec<usize> },
    Bohr { gamma: Vec<Vec<usize>>, delta: Ratio, elements: Vec<usize> },
    Progression { subgroup: Vec<usize>, generators: Vec<usize>, bounds: Vec<usize>, proper: bool, elements: Vec<usize> },
    None,
}

impl PReport {
    pub fn kind(&self) -> &'static str {
        match self {
            PReport::Subgroup { .. } => "subgroup",
            PReport::Bohr { .. } => "bohr",
            PReport::Progression { .. } => "progression",
            PReport::None => "none",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub lhs: Ratio,
    pub rhs: Ratio,
    pub ok: &'static str,
}

impl From<&BoundCheck> for CheckReport {
    fn from(c: &BoundCheck) -> Self {
        CheckReport { name: c.name.to_string(), lhs: c.lhs.into(), rhs: c.rhs.into(), ok: c.status.name() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Timings {
    pub decompose_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub schema_version: u32,
    pub group_spec: String,
    pub set_spec: String,
    pub group_order: usize,
    pub a_size: usize,
    pub eps: Ratio,
    pub mode: &'static str,
    pub d_left: Count,
    pub d_right: Count,
    pub alpha: Ratio,
    pub tupling: Tupling,
    pub x_size: usize,
    pub nu: Ratio,
    pub s_size: usize,
    pub a_prime_size: usize,
    pub r_size: usize,
    #[serde(rename = "P_descriptor")]
    pub p_descriptor: PReport,
    #[serde(rename = "F")]
    pub f: Vec<usize>,
    pub structure_err: Ratio,
    pub regularity_err: Ratio,
    #[serde(rename = "cov_A_P")]
    pub cov_a_p: Option<Count>,
    #[serde(rename = "cov_G_P")]
    pub cov_g_p: Option<Count>,
    pub bound_checks: Vec<CheckReport>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

impl DecompositionReport {
    pub fn new(group_spec: &str, set_spec: &str, a_size: usize, d: &Decomposition<'_>, timings: Option<Timings>) -> Self {
        let p_elems = || d.p.as_ref().map(|p| p.elements()).unwrap_or_default();
        let p_descriptor = match &d.p_descriptor {
            PDescriptor::Subgroup { elements } => PReport::Subgroup { elements: elements.clone() },
            PDescriptor::Bohr { gamma, delta } => PReport::Bohr { gamma: gamma.clone(), delta: (*delta).into(), elements: p_elems() },
            PDescriptor::Progression { subgroup, generators, bounds, proper } => PReport::Progression {
                subgroup: subgroup.clone(),
                generators: generators.clone(),
                bounds: bounds.clone(),
                proper: *proper,
                elements: p_elems(),
            },
            PDescriptor::None => PReport::None,
        };
        DecompositionReport {
            schema_version: SCHEMA_VERSION,
            group_spec: group_spec.to_string(),
            set_spec: set_spec.to_string(),
            group_order: d.s.group().order(),
            a_size,
            eps: d.eps.into(),
            mode: d.mode.name(),
            d_left: d.d_left.into(),
            d_right: d.d_right.into(),
            alpha: d.alpha.into(),
            tupling: d.tupling.into(),
            x_size: d.x_size,
            nu: d.nu.into(),
            s_size: d.s.size(),
            a_prime_size: d.a_prime.size(),
            r_size: d.r.size(),
            p_descriptor,
            f: d.f.clone(),
            structure_err: d.structure_err.into(),
            regularity_err: d.regularity_err.into(),
            cov_a_p: d.cov_a_p.map(Into::into),
            cov_g_p: d.cov_g_p.map(Into::into),
            bound_checks: d.bound_checks.iter().map(Into::into).collect(),
            notes: d.notes.clone(),
            timings,
        }
    }

    pub fn failed_checks(&self) -> usize {
        self.bound_checks.iter().filter(|c| c.ok == "fail").count()
    }
}

pub const CSV_HEADER: &[&str] = &[
    "csv_version", "group_spec", "set_spec", "eps", "mode", "error", "group_order", "a_size", "d_left", "d_right",
    "alpha", "sigma", "tau", "delta", "alpha_t", "nu", "s_size", "a_prime_size", "p_kind", "p_size", "f_size",
    "structure_err", "regularity_err", "cov_A_P", "cov_G_P", "checks_pass", "checks_fail", "checks_na",
];

/// One CSV row; `Err` rows keep the grid coordinates and the message.
pub fn csv_row(group_spec: &str, set_spec: &str, eps: &str, mode: &str, r: Result<&DecompositionReport, &str>) -> Vec<String> {
    let mut row = vec![CSV_VERSION.to_string(), group_spec.into(), set_spec.into(), eps.into(), mode.into()];
    match r {
        Err(msg) => {
            row.push(msg.to_string());
            row.resize(CSV_HEADER.len(), String::new());
        }
        Ok(r) => {
            let count = |s: &str| r.bound_checks.iter().filter(|c| c.ok == s).count().to_string();
            let p_size = match &r.p_descriptor {
                PReport::Subgroup { elements } => elements.len(),
                PReport::Bohr { elements, .. } | PReport::Progression { elements, .. } => elements.len(),
                PReport::None => 0,
            };
            let opt = |c: Option<Count>| c.map(Count::csv).unwrap_or_default();
            row.extend([
                String::new(),
                r.group_order.to_string(),
                r.a_size.to_string(),
                r.d_left.csv(),
                r.d_right.csv(),
                r.alpha.to_string(),
                r.tupling.sigma.to_string(),
                r.tupling.tau.to_string(),
                r.tupling.delta.to_string(),
                r.tupling.alpha.to_string(),
                r.nu.to_string(),
                r.s_size.to_string(),
                r.a_prime_size.to_string(),
                r.p_descriptor.kind().to_string(),
                p_size.to_string(),
                r.f.len().to_string(),
                r.structure_err.to_string(),
                r.regularity_err.to_string(),
                opt(r.cov_a_p),
                opt(r.cov_g_p),
                count("pass"),
                count("fail"),
                count("not-applicable"),
            ]);
        }
    }
    row
}

pub fn write_csv<W: std::io::Write>(out: W, rows: &[Vec<String>]) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()?;
    Ok(())
}
