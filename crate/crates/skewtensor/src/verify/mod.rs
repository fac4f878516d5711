//! Check registry and report.
//!
//! Every check produces a [`CheckRecord`] with a stable id such as
//! `chow.x4.h_numbers`. Records are sorted by id, so the document does not
//! depend on scheduling.

mod checks;
mod props;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::is_prime;
use crate::models::tensor_file::read_theta;
use crate::models::{ozeki_theta, s5_theta};
use crate::multilinear::ThetaTensor;

pub use props::{bott_serre_duality, field_axioms, pencil_gl_invariance, thread_determinism, whitney_sums};

pub const REPORT_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    PaperDiscrepancy,
    Skipped,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::PaperDiscrepancy => "paper_discrepancy",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// printed value
    Paper,
    Trivial,
    /// computed independently here
    Derived,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Expected {
    pub value: String,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub id: String,
    /// topic label used to group the summary
    pub locus: String,
    pub status: Status,
    pub expected: Expected,
    pub computed: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<serde_json::Value>,
    /// wall time of the producing task; left out of the document so reruns compare byte for byte
    #[serde(skip)]
    pub runtime: Duration,
}

impl CheckRecord {
    pub fn new(id: &str, locus: &str, status: Status, expected: impl ToString, provenance: Provenance, computed: impl ToString) -> Self {
        CheckRecord {
            id: id.into(),
            locus: locus.into(),
            status,
            expected: Expected { value: expected.to_string(), provenance },
            computed: computed.to_string(),
            detail: None,
            runtime: Duration::ZERO,
        }
    }

    /// Pass when expected and computed agree as strings, else `on_mismatch`.
    pub fn compare(id: &str, locus: &str, expected: impl ToString, provenance: Provenance, computed: impl ToString, on_mismatch: Status) -> Self {
        let (e, c) = (expected.to_string(), computed.to_string());
        let status = if e == c { Status::Pass } else { on_mismatch };
        Self::new(id, locus, status, e, provenance, c)
    }

    pub fn flag(id: &str, locus: &str, expected: impl ToString, provenance: Provenance, ok: bool, computed: impl ToString) -> Self {
        Self::new(id, locus, if ok { Status::Pass } else { Status::Fail }, expected, provenance, computed)
    }

    pub fn with_detail(mut self, d: impl Serialize) -> Self {
        self.detail = serde_json::to_value(d).ok();
        self
    }

    pub fn error(id: &str, locus: &str, e: &Error) -> Self {
        Self::new(id, locus, Status::Fail, "no error", Provenance::Derived, format!("error: {e}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThetaSource {
    Ozeki,
    S5,
    File(PathBuf),
}

impl std::str::FromStr for ThetaSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ozeki" => Ok(ThetaSource::Ozeki),
            "s5" => Ok(ThetaSource::S5),
            _ => match s.strip_prefix("file:") {
                Some(p) if !p.is_empty() => Ok(ThetaSource::File(p.into())),
                _ => Err(Error::Parse(format!("theta source {s:?}; expected ozeki, s5 or file:PATH"))),
            },
        }
    }
}

impl std::fmt::Display for ThetaSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ThetaSource::Ozeki => write!(f, "ozeki"),
            ThetaSource::S5 => write!(f, "s5"),
            ThetaSource::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub theta: ThetaSource,
    pub primes: Vec<u64>,
    /// extra primes used only for the Betti polynomial fit of X4
    pub fit_primes: Vec<u64>,
    /// id globs; empty selects everything
    pub only: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<PathBuf>,
    pub threads: usize,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { theta: ThetaSource::S5, primes: vec![7, 11, 13], fit_primes: vec![17, 19], only: Vec::new(), report: None, threads: 0, seed: 20_240_517 }
    }
}

impl RunConfig {
    /// Primes must be >= 7 and prime; globs must parse.
    pub fn validate(&self) -> Result<()> {
        for &p in self.primes.iter().chain(&self.fit_primes) {
            if p < 7 || !is_prime(p) {
                return Err(Error::BadPrime(p, "primes must be at least 7 and prime".into()));
            }
        }
        for g in &self.only {
            glob::Pattern::new(g).map_err(|e| Error::Parse(format!("glob {g:?}: {e}")))?;
        }
        Ok(())
    }

    pub fn selects(&self, id: &str) -> bool {
        self.only.is_empty() || self.only.iter().any(|g| glob::Pattern::new(g).map(|p| p.matches(id)).unwrap_or(false))
    }

    /// Whether any id under this prefix can be selected.
    pub fn selects_prefix(&self, prefix: &str) -> bool {
        self.only.is_empty()
            || self.only.iter().any(|g| {
                let head: String = g.chars().take_while(|c| !matches!(c, '*' | '?' | '[')).collect();
                head.starts_with(prefix) || prefix.starts_with(&head)
            })
    }

    pub fn load_theta(&self) -> Result<ThetaTensor> {
        match &self.theta {
            ThetaSource::Ozeki => Ok(ozeki_theta()),
            ThetaSource::S5 => s5_theta(),
            ThetaSource::File(p) => {
                let s = std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
                read_theta(&s)
            }
        }
    }
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub paper_discrepancy: usize,
    pub skipped: usize,
}

impl Tally {
    fn add(&mut self, s: Status) {
        match s {
            Status::Pass => self.pass += 1,
            Status::Fail => self.fail += 1,
            Status::PaperDiscrepancy => self.paper_discrepancy += 1,
            Status::Skipped => self.skipped += 1,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub version: String,
    pub theta: String,
    pub primes: Vec<u64>,
    pub fit_primes: Vec<u64>,
    pub seed: u64,
    pub only: Vec<String>,
    pub total: Tally,
    /// by locus
    pub summary: BTreeMap<String, Tally>,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn new(config: &RunConfig, mut records: Vec<CheckRecord>) -> Self {
        records.sort_by(|a, b| a.id.cmp(&b.id));
        let mut total = Tally::default();
        let mut summary: BTreeMap<String, Tally> = BTreeMap::new();
        for r in &records {
            total.add(r.status);
            summary.entry(r.locus.clone()).or_default().add(r.status);
        }
        Report {
            version: REPORT_VERSION.into(),
            theta: config.theta.to_string(),
            primes: config.primes.clone(),
            fit_primes: config.fit_primes.clone(),
            seed: config.seed,
            only: config.only.clone(),
            total,
            summary,
            checks: records,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn get(&self, id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|r| r.id == id)
    }

    /// 0 iff nothing failed.
    pub fn exit_code(&self) -> i32 {
        exit_code(self.checks.iter().map(|r| r.status))
    }

    pub fn summary_table(&self) -> String {
        let mut s = format!("{:<16} {:>5} {:>5} {:>12} {:>8}\n", "locus", "pass", "fail", "discrepancy", "skipped");
        for (k, t) in &self.summary {
            s += &format!("{:<16} {:>5} {:>5} {:>12} {:>8}\n", k, t.pass, t.fail, t.paper_discrepancy, t.skipped);
        }
        let t = &self.total;
        s += &format!("{:<16} {:>5} {:>5} {:>12} {:>8}\n", "total", t.pass, t.fail, t.paper_discrepancy, t.skipped);
        s
    }
}

/// Exit status as a function of the status multiset.
pub fn exit_code(statuses: impl IntoIterator<Item = Status>) -> i32 {
    i32::from(statuses.into_iter().any(|s| s == Status::Fail))
}

/// A group of checks sharing one computation.
pub(crate) struct Task {
    pub prefix: String,
    pub run: Box<dyn Fn(&Ctx) -> Vec<CheckRecord> + Send + Sync>,
}

pub(crate) struct Ctx {
    pub config: RunConfig,
    pub theta: ThetaTensor,
}

/// Run the selected checks. Configuration errors (bad primes, unreadable
/// tensor file) are returned before any check runs.
pub fn run(config: &RunConfig) -> Result<Report> {
    config.validate()?;
    let theta = config.load_theta()?;
    let ctx = Ctx { config: config.clone(), theta };
    let tasks = checks::tasks(&ctx.config);
    let selected: Vec<&Task> = tasks.iter().filter(|t| config.selects_prefix(&t.prefix)).collect();
    let work = || -> Vec<CheckRecord> {
        selected
            .par_iter()
            .flat_map_iter(|t| {
                let start = Instant::now();
                let mut recs = (t.run)(&ctx);
                let took = start.elapsed();
                for r in &mut recs {
                    r.runtime = took;
                }
                recs
            })
            .filter(|r| config.selects(&r.id))
            .collect()
    };
    let records = if config.threads == 0 {
        work()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(config.threads)
            .build()
            .map_err(|e| Error::Parse(format!("thread pool: {e}")))?
            .install(work)
    };
    Ok(Report::new(config, records))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report() {
        let r = Report::new(&RunConfig::default(), Vec::new());
        assert_eq!(r.exit_code(), 0);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["checks"].as_array().unwrap().len(), 0);
        assert_eq!(v["version"], REPORT_VERSION);
    }

    #[test]
    fn exit_policy() {
        assert_eq!(exit_code([Status::Pass, Status::PaperDiscrepancy, Status::Skipped]), 0);
        assert_eq!(exit_code([Status::Pass, Status::Fail]), 1);
    }

    #[test]
    fn bad_primes() {
        for p in [5, 9, 15] {
            let c = RunConfig { primes: vec![p], ..RunConfig::default() };
            assert!(matches!(run(&c), Err(Error::BadPrime(..))));
        }
    }

    #[test]
    fn selection() {
        let c = RunConfig { only: vec!["config.*".into()], ..RunConfig::default() };
        assert!(c.selects("config.pentads.count"));
        assert!(!c.selects("chow.x4.h_numbers"));
        assert!(c.selects_prefix("config"));
        assert!(!c.selects_prefix("count"));
        let r = run(&c).unwrap();
        assert!(!r.checks.is_empty());
        assert!(r.checks.iter().all(|x| x.id.starts_with("config.")));
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn theta_source_parse() {
        assert_eq!("ozeki".parse::<ThetaSource>().unwrap(), ThetaSource::Ozeki);
        assert_eq!("file:a.json".parse::<ThetaSource>().unwrap(), ThetaSource::File("a.json".into()));
        assert!("file:".parse::<ThetaSource>().is_err());
    }
}
