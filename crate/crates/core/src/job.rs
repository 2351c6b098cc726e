//! Self-contained job descriptions and batch tables.
//!
//! A job is a JSON document such as
//!
//! ```json
//! {
//!   "link": "L4a1",
//!   "quandle": "swap3",
//!   "group": "Z3",
//!   "cocycles": [[0,1,0,1,0,0], [0,0,1,0,0,0], [0,0,0,0,0,1]],
//!   "endos": [[2,2,1]],
//!   "outputs": ["counting", "polynomials"]
//! }
//! ```
//!
//! `link` is a catalog name or `{"format": "pd" | "gauss", "code": ...}`.
//! `quandle` is a builtin name (see [`parse_biquandle`]) or an inline table
//! `{"n", "under", "over"}`. `cocycles` is a list of value vectors or
//! `"h2-generators"`; `endos` is a list of 1-based image vectors, `"all"` or
//! `"identity"`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    alexander_cyclic, constant_action_biquandle_z2, conjugation, core_cyclic, endomorphisms, symmetric_group_table,
    trivial, Biquandle, EndoMap, Quandle, TableFile,
};
use crate::catalog::{parse_diagram, Catalog, CodeFormat};
use crate::cohomology::{cocycle_invariant, cocycle_invariant_root_form, second_cohomology, CoeffGroup, Cocycle};
use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};
use crate::homset::counting_invariant;
use crate::polynomials::{four_polynomials, FourPolynomials, DEFAULT_PATH_LIMIT};
use crate::quiver::{build_representation, DataVector, RepQuiver};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LinkRef {
    Named(String),
    Inline { format: CodeFormat, code: String },
}

impl LinkRef {
    pub fn label(&self) -> String {
        match self {
            LinkRef::Named(n) => n.clone(),
            LinkRef::Inline { code, .. } => code.clone(),
        }
    }

    pub fn resolve(&self, catalog: &Catalog) -> Result<LinkDiagram> {
        match self {
            LinkRef::Named(n) => catalog.diagram(n),
            LinkRef::Inline { format, code } => parse_diagram(*format, code),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum QuandleSpec {
    Builtin(String),
    Table(TableFile),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CocycleSpec {
    Keyword(String),
    Explicit(Vec<Vec<i64>>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EndoSpec {
    Keyword(String),
    Explicit(Vec<Vec<usize>>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Output {
    Counting,
    CocycleInvariant,
    #[serde(alias = "quiver-json")]
    Quiver,
    #[serde(alias = "four-polynomials")]
    Polynomials,
}

fn default_outputs() -> Vec<Output> {
    vec![Output::Counting, Output::Polynomials]
}

fn default_cocycles() -> CocycleSpec {
    CocycleSpec::Keyword("h2-generators".into())
}

fn default_endos() -> EndoSpec {
    EndoSpec::Keyword("all".into())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub link: Option<LinkRef>,
    /// Links for a batch run; a single job uses `link`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub links: Vec<LinkRef>,
    pub quandle: QuandleSpec,
    pub group: CoeffGroup,
    #[serde(default = "default_cocycles")]
    pub cocycles: CocycleSpec,
    #[serde(default = "default_endos")]
    pub endos: EndoSpec,
    #[serde(default = "default_outputs")]
    pub outputs: Vec<Output>,
    /// Take the mirror image of the diagram first.
    #[serde(default)]
    pub mirror: bool,
    /// Reverse these components (indices into the component list).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub reverse: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path_limit: Option<usize>,
    /// When false, explicit cocycles are accepted without checking the
    /// cocycle condition.
    #[serde(default = "yes")]
    pub check_cocycles: bool,
}

fn yes() -> bool {
    true
}

impl JobConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        JobConfig::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn biquandle(&self) -> Result<Biquandle> {
        match &self.quandle {
            QuandleSpec::Builtin(s) => parse_biquandle(s),
            QuandleSpec::Table(t) => Biquandle::from_file(t),
        }
    }

    pub fn data_vector(&self) -> Result<DataVector> {
        let x = self.biquandle()?;
        let axioms = x.check_axioms();
        if let Some(v) = axioms.first() {
            return Err(Error::InvalidTable(v.to_string()));
        }
        let cocycles = match &self.cocycles {
            CocycleSpec::Keyword(k) if k == "h2-generators" => second_cohomology(&x, self.group).generators,
            CocycleSpec::Keyword(k) if k == "none" => Vec::new(),
            CocycleSpec::Keyword(k) => return Err(Error::Config(format!("unknown cocycle keyword '{k}'"))),
            CocycleSpec::Explicit(vs) => vs.iter().map(|v| Cocycle::new(self.group, v.clone())).collect(),
        };
        let endos = match &self.endos {
            EndoSpec::Keyword(k) if k == "all" || k == "all-endomorphisms" => endomorphisms(&x),
            EndoSpec::Keyword(k) if k == "identity" => vec![EndoMap::identity(x.order())],
            EndoSpec::Keyword(k) => return Err(Error::Config(format!("unknown endomorphism keyword '{k}'"))),
            EndoSpec::Explicit(vs) => vs.iter().map(|v| EndoMap::from_one_based(v)).collect::<Result<_>>()?,
        };
        for e in &endos {
            if e.images().len() != x.order() {
                return Err(Error::NotEndomorphism(e.to_string()));
            }
        }
        if self.check_cocycles {
            DataVector::new(x, self.group, cocycles, endos)
        } else {
            DataVector::new_unchecked(x, self.group, cocycles, endos)
        }
    }

    fn prepare(&self, d: LinkDiagram) -> Result<LinkDiagram> {
        let d = if self.mirror { d.mirror() } else { d };
        if self.reverse.is_empty() {
            Ok(d)
        } else {
            d.reverse_components(&self.reverse)
        }
    }
}

/// Builtin biquandles: `core:M`, `alexander:M:T`, `trivial:N`, `z2bq`,
/// `swap3` (the three-element quandle with rows `1 1 2 / 2 2 1 / 3 3 3`),
/// `s3` (conjugation quandle of the symmetric group on three letters), or a
/// path to a JSON table file.
pub fn parse_biquandle(spec: &str) -> Result<Biquandle> {
    let parts: Vec<&str> = spec.trim().split(':').collect();
    let num = |s: &str| -> Result<i64> { s.parse().map_err(|_| Error::Config(format!("bad number '{s}' in '{spec}'"))) };
    let q: Quandle = match parts.as_slice() {
        ["core", m] => core_cyclic(num(m)? as usize)?,
        ["alexander", m, t] => alexander_cyclic(num(m)? as usize, num(t)?)?,
        ["trivial", n] => trivial(num(n)? as usize)?,
        ["z2bq"] => return Ok(constant_action_biquandle_z2()),
        ["swap3"] => Quandle::from_table(&[vec![1, 1, 2], vec![2, 2, 1], vec![3, 3, 3]])?,
        ["s3"] => conjugation(&symmetric_group_table(3))?,
        _ if spec.ends_with(".json") => {
            let text = std::fs::read_to_string(spec)?;
            let file: TableFile = serde_json::from_str(&text)?;
            return Biquandle::from_file(&file);
        }
        _ => return Err(Error::Config(format!("unknown quandle '{spec}'"))),
    };
    Ok(q.into_biquandle())
}

#[derive(Debug, Clone, Serialize)]
pub struct CocycleInvariantReport {
    pub cocycle: Cocycle,
    pub polynomial: String,
    pub root_form: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct JobReport {
    pub link: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counting: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub cocycle_invariants: Vec<CocycleInvariantReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polynomials: Option<FourPolynomials>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub maximal_paths: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quiver: Option<RepQuiver>,
}

impl JobReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "link: {}", self.link);
        if let Some(c) = self.counting {
            let _ = writeln!(s, "counting invariant: {c}");
        }
        for r in &self.cocycle_invariants {
            let _ = writeln!(s, "cocycle {}: {}  [{}]", r.cocycle, r.polynomial, r.root_form);
        }
        if let Some(p) = &self.polynomials {
            let _ = writeln!(s, "edge characteristic: {}", p.edge_char);
            let _ = writeln!(s, "edge matrix:         {}", p.edge_matrix);
            let _ = writeln!(s, "path characteristic: {}", p.path_char);
            let _ = writeln!(s, "path matrix:         {}", p.path_matrix);
        }
        if let Some(n) = self.maximal_paths {
            let _ = writeln!(s, "maximal paths: {n}");
        }
        if let Some(q) = &self.quiver {
            let _ = writeln!(s, "quiver: {} vertices, {} edges", q.vertices.len(), q.edges.len());
        }
        s
    }
}

pub fn run_on_diagram(label: &str, d: &LinkDiagram, cfg: &JobConfig, dv: &DataVector) -> Result<JobReport> {
    let d = cfg.prepare(d.clone())?;
    let mut report = JobReport {
        link: label.to_string(),
        counting: None,
        cocycle_invariants: Vec::new(),
        polynomials: None,
        maximal_paths: None,
        quiver: None,
    };
    let x = dv.biquandle();
    if cfg.outputs.contains(&Output::Counting) {
        report.counting = Some(counting_invariant(&d, x));
    }
    if cfg.outputs.contains(&Output::CocycleInvariant) {
        for phi in dv.cocycles() {
            report.cocycle_invariants.push(CocycleInvariantReport {
                cocycle: phi.clone(),
                polynomial: cocycle_invariant(&d, x, phi)?.to_string(),
                root_form: cocycle_invariant_root_form(&d, x, phi)?.to_string(),
            });
        }
    }
    let wants_quiver = cfg.outputs.contains(&Output::Quiver);
    if wants_quiver || cfg.outputs.contains(&Output::Polynomials) {
        let rep = build_representation(&d, dv)?;
        if cfg.outputs.contains(&Output::Polynomials) {
            let (four, paths) = four_polynomials(&rep, cfg.path_limit.unwrap_or(DEFAULT_PATH_LIMIT))?;
            report.polynomials = Some(four);
            report.maximal_paths = Some(paths.len());
        }
        if wants_quiver {
            report.quiver = Some(rep);
        }
    }
    Ok(report)
}

pub fn run_job(cfg: &JobConfig, catalog: &Catalog) -> Result<JobReport> {
    let link = cfg.link.as_ref().ok_or_else(|| Error::Config("job has no link".into()))?;
    let d = link.resolve(catalog)?;
    let dv = cfg.data_vector()?;
    run_on_diagram(&link.label(), &d, cfg, &dv)
}

#[derive(Debug, Clone, Serialize)]
pub struct BatchRow {
    pub link: String,
    #[serde(flatten)]
    pub outcome: BatchOutcome,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BatchOutcome {
    Ok(FourPolynomials),
    Error(String),
}

#[derive(Debug, Clone, Serialize)]
pub struct BatchReport {
    pub rows: Vec<BatchRow>,
}

impl BatchReport {
    /// Links grouped by equal path matrix polynomial, groups ordered by
    /// polynomial text.
    pub fn classes(&self) -> BTreeMap<String, Vec<String>> {
        let mut out: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for r in &self.rows {
            if let BatchOutcome::Ok(p) = &r.outcome {
                out.entry(p.path_matrix.to_string()).or_default().push(r.link.clone());
            }
        }
        out
    }

    pub fn has_errors(&self) -> bool {
        self.rows.iter().any(|r| matches!(r.outcome, BatchOutcome::Error(_)))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{:<8} | {:<40} | edge matrix", "L", "edge characteristic");
        for r in &self.rows {
            match &r.outcome {
                BatchOutcome::Ok(p) => {
                    let _ = writeln!(s, "{:<8} | {:<40} | {}", r.link, p.edge_char.to_string(), p.edge_matrix);
                }
                BatchOutcome::Error(e) => {
                    let _ = writeln!(s, "{:<8} | error: {e}", r.link);
                }
            }
        }
        let _ = writeln!(s);
        let _ = writeln!(s, "{:<8} | {:<50} | path matrix", "L", "path characteristic");
        for r in &self.rows {
            if let BatchOutcome::Ok(p) = &r.outcome {
                let _ = writeln!(s, "{:<8} | {:<50} | {}", r.link, p.path_char.to_string(), p.path_matrix);
            }
        }
        s
    }
}

/// Computes the four polynomials for every link, in parallel; failures are
/// reported per row.
pub fn run_batch(links: &[LinkRef], template: &JobConfig, catalog: &Catalog) -> Result<BatchReport> {
    let dv = template.data_vector()?;
    let limit = template.path_limit.unwrap_or(DEFAULT_PATH_LIMIT);
    let rows = links
        .par_iter()
        .map(|link| {
            let outcome = link
                .resolve(catalog)
                .and_then(|d| template.prepare(d))
                .and_then(|d| build_representation(&d, &dv))
                .and_then(|rep| four_polynomials(&rep, limit))
                .map_or_else(|e| BatchOutcome::Error(e.to_string()), |(p, _)| BatchOutcome::Ok(p));
            BatchRow { link: link.label(), outcome }
        })
        .collect();
    Ok(BatchReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_config() {
        let cfg = JobConfig::from_json(
            r#"{"link": "L4a1", "quandle": "core:4", "group": "Z3",
                "cocycles": [[1,0,1,0,0,0,0,0,0,0,0,0]], "endos": "identity",
                "outputs": ["counting", "cocycle-invariant"]}"#,
        )
        .unwrap();
        assert_eq!(cfg.group, CoeffGroup::Cyclic(3));
        let report = run_job(&cfg, &Catalog::builtin()).unwrap();
        assert_eq!(report.counting, Some(16));
        assert_eq!(report.cocycle_invariants.len(), 1);
    }

    #[test]
    fn unknown_link() {
        let cfg = JobConfig::from_json(r#"{"link": "unknown-link", "quandle": "core:3", "group": "Z3"}"#).unwrap();
        let err = run_job(&cfg, &Catalog::builtin()).unwrap_err();
        assert!(err.to_string().contains("not in catalog"));
    }

    #[test]
    fn builtin_quandles() {
        for s in ["core:4", "alexander:5:2", "trivial:3", "z2bq", "swap3", "s3"] {
            assert!(parse_biquandle(s).unwrap().check_axioms().is_empty(), "{s}");
        }
        assert!(parse_biquandle("core:x").is_err());
        assert!(parse_biquandle("nope").is_err());
    }

    #[test]
    fn empty_batch() {
        let cfg = JobConfig::from_json(r#"{"quandle": "core:3", "group": "Z3"}"#).unwrap();
        let r = run_batch(&[], &cfg, &Catalog::builtin()).unwrap();
        assert!(r.rows.is_empty());
        assert!(r.classes().is_empty());
    }
}
