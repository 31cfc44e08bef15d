//! Grid sweeps.
//!
//! A sweep description is a small `key = value` file:
//!
//! ```text
//! q_list = [5, 7, 8, 9, 11, 13]
//! k_range = [3, 4]          # inclusive
//! m_policy = "all-valid"    # or an explicit list such as [5, 6]
//! ceiling = 100000000       # largest q^k to enumerate
//! output = "sweep.csv"
//! format = "csv"            # json | csv
//! jobs = "auto"             # or a worker count
//! ```
//!
//! Every key is optional; missing keys take the values shown (no output path
//! means stdout). Command-line flags override the file.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sympair_core::spectrum::{family_census, EnumConfig};
use sympair_core::{prime_power, CodeSpec, Field, PointSet, DEFAULT_ENUMERATION_CEILING};

use crate::commands::{spectrum_report, with_pool};
use crate::output::Output;
use crate::{CliError, Format, SweepArgs};

pub const DEFAULT_Q_LIST: [u64; 6] = [5, 7, 8, 9, 11, 13];

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum MPolicy {
    Named(String),
    List(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum Jobs {
    Named(String),
    Count(usize),
}

/// The file as written.
#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepFile {
    pub q_list: Option<Vec<u64>>,
    pub k_range: Option<Vec<usize>>,
    pub m_policy: Option<MPolicy>,
    pub ceiling: Option<u64>,
    pub output: Option<PathBuf>,
    pub format: Option<String>,
    pub jobs: Option<Jobs>,
}

impl SweepFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Usage(format!("sweep config: {}", e.message())))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text)
    }
}

/// A validated sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub q_list: Vec<u64>,
    pub k_range: RangeInclusive<usize>,
    /// `None` takes every valid `m`.
    pub m_list: Option<Vec<usize>>,
    pub ceiling: u64,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub jobs: Option<usize>,
}

impl SweepConfig {
    pub fn from_file(file: SweepFile) -> Result<Self, CliError> {
        let usage = |msg: String| Err(CliError::Usage(format!("sweep config: {msg}")));
        let q_list = file.q_list.unwrap_or_else(|| DEFAULT_Q_LIST.to_vec());
        for &q in &q_list {
            if prime_power(q).is_none() {
                return usage(format!("{q} is not a prime power"));
            }
        }
        let k_range = match file.k_range.as_deref() {
            None => 3..=4,
            Some(&[lo, hi]) if lo <= hi => lo..=hi,
            Some(other) => return usage(format!("k_range must be [low, high], got {other:?}")),
        };
        let m_list = match file.m_policy {
            None => None,
            Some(MPolicy::Named(s)) if s == "all-valid" => None,
            Some(MPolicy::Named(s)) => return usage(format!("unknown m_policy {s:?}")),
            Some(MPolicy::List(l)) => Some(l),
        };
        let format = match file.format.as_deref() {
            None | Some("json") => Format::Json,
            Some("csv") => Format::Csv,
            Some(other) => return usage(format!("unknown format {other:?}")),
        };
        let jobs = match file.jobs {
            None => None,
            Some(Jobs::Named(s)) if s == "auto" => None,
            Some(Jobs::Named(s)) => return usage(format!("unknown jobs value {s:?}")),
            Some(Jobs::Count(0)) => return usage("jobs must be at least 1".into()),
            Some(Jobs::Count(n)) => Some(n),
        };
        Ok(SweepConfig {
            q_list,
            k_range,
            m_list,
            ceiling: file.ceiling.unwrap_or(DEFAULT_ENUMERATION_CEILING),
            output: file.output,
            format,
            jobs,
        })
    }

    /// Every `(q, k, m)` with `3 <= k < m <= q - 2` allowed by the policy.
    pub fn expand(&self) -> Vec<(u64, usize, usize)> {
        let mut out = Vec::new();
        for &q in &self.q_list {
            for k in self.k_range.clone().filter(|&k| k >= 3) {
                for m in k + 1..=(q as usize).saturating_sub(2) {
                    if self.m_list.as_ref().is_none_or(|l| l.contains(&m)) {
                        out.push((q, k, m));
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseRow {
    /// "pass", "fail" or "skipped" when q^4 exceeds the ceiling.
    pub census: String,
    /// "match", "mismatch" or "none" when no closed form exists.
    pub closed_form: String,
    pub dp: usize,
    pub k: usize,
    pub m: usize,
    pub mds: bool,
    pub n: usize,
    pub passes: bool,
    pub q: u64,
    pub sanity: bool,
    pub theoretical_dp: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusSummary {
    pub m: usize,
    pub mismatched_classes: Vec<String>,
    pub parity: String,
    pub passes: bool,
    pub q: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub cases: Vec<CaseRow>,
    pub census: Vec<CensusSummary>,
    pub failures: Vec<String>,
    pub passes: bool,
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepReport, CliError> {
    let cases = cfg.expand();
    if cases.is_empty() {
        return Err(CliError::Usage("sweep grid is empty".into()));
    }
    let enum_cfg = EnumConfig { ceiling: cfg.ceiling, jobs: None };
    for &(q, k, _) in &cases {
        enum_cfg.check(q as u32, k)?;
    }

    let mut census = BTreeMap::new();
    for &(q, _, m) in &cases {
        if census.contains_key(&(q, m)) || enum_cfg.check(q as u32, 4).is_err() {
            continue;
        }
        eprintln!("census q={q} m={m}");
        let field = Field::from_order(q)?;
        let table = family_census(&PointSet::default_for(&field, m)?, &enum_cfg)?;
        census.insert(
            (q, m),
            CensusSummary {
                m,
                mismatched_classes: table.rows.iter().filter(|r| r.delta != 0).map(|r| r.class.clone()).collect(),
                parity: table.parity.clone(),
                passes: table.passes(),
                q,
            },
        );
    }

    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for (i, &(q, k, m)) in cases.iter().enumerate() {
        eprintln!("[{}/{}] q={q} k={k} m={m}", i + 1, cases.len());
        let spec = CodeSpec::with_defaults(&Field::from_order(q)?, k, m)?;
        let report = spectrum_report(&spec, &enum_cfg)?;
        let dp = report.enumerated.min_positive_weight().expect("nonzero codewords");
        let mds = dp == report.theoretical_dp && dp == spec.n() - k + 2;
        let closed_form = match &report.diff {
            None => "none",
            Some(d) if d.is_empty() => "match",
            Some(_) => "mismatch",
        };
        let census_status = match census.get(&(q, m)) {
            None => "skipped",
            Some(c) if c.passes => "pass",
            Some(_) => "fail",
        };
        let passes = mds && report.passes && census_status != "fail";

        let tag = format!("q={q} k={k} m={m}");
        if !mds {
            failures.push(format!("{tag}: minimum pair distance {dp}, expected {}", report.theoretical_dp));
        }
        if !report.sanity {
            failures.push(format!("{tag}: distribution sanity check failed"));
        }
        if let Some(d) = report.diff.as_ref().filter(|d| !d.is_empty()) {
            let mut msg = format!(
                "{tag}: closed form differs at weights {:?}",
                d.deltas.iter().map(|(w, delta)| format!("{w}:{delta:+}")).collect::<Vec<_>>()
            );
            if let Some(w) = &report.witness {
                msg += &format!(
                    "; witness {} (index {}) has weight {}, class {} assigned {}",
                    w.message,
                    w.message_index,
                    w.weight,
                    w.class,
                    w.predicted_weight.map_or("none".to_string(), |p| p.to_string())
                );
            }
            failures.push(msg);
        }
        if census_status == "fail" {
            failures.push(format!("{tag}: census mismatch"));
        }
        rows.push(CaseRow {
            census: census_status.into(),
            closed_form: closed_form.into(),
            dp,
            k,
            m,
            mds,
            n: spec.n(),
            passes,
            q,
            sanity: report.sanity,
            theoretical_dp: report.theoretical_dp,
        });
    }

    Ok(SweepReport { passes: failures.is_empty(), cases: rows, census: census.into_values().collect(), failures })
}

pub fn write_report(report: &SweepReport, out: &Output) -> Result<(), CliError> {
    match out.format {
        Format::Json => out.json(report),
        Format::Csv => out.csv(
            &["q", "k", "m", "n", "dp", "theoretical_dp", "mds", "sanity", "closed_form", "census", "pass"],
            report.cases.iter().map(|c| {
                vec![
                    c.q.to_string(),
                    c.k.to_string(),
                    c.m.to_string(),
                    c.n.to_string(),
                    c.dp.to_string(),
                    c.theoretical_dp.to_string(),
                    c.mds.to_string(),
                    c.sanity.to_string(),
                    c.closed_form.clone(),
                    c.census.clone(),
                    c.passes.to_string(),
                ]
            }),
        ),
    }
}

pub(crate) fn cmd_sweep(a: &SweepArgs) -> Result<bool, CliError> {
    let file = match &a.config {
        Some(path) => SweepFile::load(path)?,
        None => SweepFile::default(),
    };
    let mut cfg = SweepConfig::from_file(file)?;
    if let Some(c) = a.run.ceiling {
        cfg.ceiling = c;
    }
    if let Some(f) = a.run.format {
        cfg.format = f;
    }
    if let Some(o) = &a.run.out {
        cfg.output = Some(o.clone());
    }
    match a.run.jobs {
        Some(0) => return Err(CliError::Usage("--jobs must be at least 1".into())),
        Some(j) => cfg.jobs = Some(j),
        None => {}
    }
    let report = with_pool(cfg.jobs, || run_sweep(&cfg))?;
    write_report(&report, &Output { format: cfg.format, out: cfg.output.clone() })?;
    for f in &report.failures {
        eprintln!("FAIL {f}");
    }
    eprintln!("{} of {} cases pass", report.cases.iter().filter(|c| c.passes).count(), report.cases.len());
    Ok(report.passes)
}
