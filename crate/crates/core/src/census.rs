//! Per-ASM analysis and census tables over `ASM(n)`.
//!
//! The stream is cut into shards of a fixed size, independent of the worker
//! count, so the table does not depend on how many jobs run. Each finished
//! shard can be stored as JSON lines in a cache directory named by a hash of
//! the configuration; a warm cache is read back instead of recomputed.

use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::asm::Asm;
use crate::cm::{cm_verdict, init_complex, Backend, CmOptions};
use crate::complex::KmDecider;
use crate::enumerate::all_asms;
use crate::error::{Error, Result};
use crate::homology::Field;
use crate::pipe_dream::perm_set_via_primes;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Codim,
    Equidim,
    Cm,
    KmVd,
}

impl Check {
    pub fn name(&self) -> &'static str {
        match self {
            Check::Codim => "codim",
            Check::Equidim => "equidim",
            Check::Cm => "cm",
            Check::KmVd => "km_vd",
        }
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Check> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "codim" => Ok(Check::Codim),
            "equidim" => Ok(Check::Equidim),
            "cm" => Ok(Check::Cm),
            "km_vd" | "kmvd" | "km" => Ok(Check::KmVd),
            other => Err(Error::Parse(format!("unknown check `{other}`"))),
        }
    }
}

/// Parses a comma-separated list of checks. `km_vd` brings in `cm`, since
/// its failures are counted among Cohen–Macaulay ASMs.
pub fn parse_checks(s: &str) -> Result<BTreeSet<Check>> {
    let mut set = s
        .split(',')
        .filter(|p| !p.trim().is_empty())
        .map(str::parse)
        .collect::<Result<BTreeSet<Check>>>()?;
    if set.contains(&Check::KmVd) {
        set.insert(Check::Cm);
    }
    Ok(set)
}

/// Keeps the ASMs with a prescribed entry, e.g. `a11=1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EntryFilter {
    pub row: usize,
    pub col: usize,
    pub value: i8,
}

impl EntryFilter {
    pub fn matches(&self, a: &Asm) -> bool {
        self.row <= a.n() && self.col <= a.n() && a.get(self.row, self.col) == self.value
    }
}

impl fmt::Display for EntryFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.row < 10 && self.col < 10 {
            write!(f, "a{}{}={}", self.row, self.col, self.value)
        } else {
            write!(f, "a_{}_{}={}", self.row, self.col, self.value)
        }
    }
}

impl FromStr for EntryFilter {
    type Err = Error;

    /// Accepts `aIJ=v` with single-digit indices or `a_I_J=v`.
    fn from_str(s: &str) -> Result<EntryFilter> {
        let bad = || Error::Parse(format!("bad filter `{s}`, expected e.g. a11=1"));
        let (lhs, rhs) = s.trim().split_once('=').ok_or_else(bad)?;
        let idx = lhs.strip_prefix('a').ok_or_else(bad)?;
        let (row, col) = match idx.strip_prefix('_') {
            Some(rest) => {
                let (i, j) = rest.split_once('_').ok_or_else(bad)?;
                (i.parse().map_err(|_| bad())?, j.parse().map_err(|_| bad())?)
            }
            None if idx.len() == 2 && idx.bytes().all(|b| b.is_ascii_digit()) => {
                let b = idx.as_bytes();
                ((b[0] - b'0') as usize, (b[1] - b'0') as usize)
            }
            None => return Err(bad()),
        };
        let value: i8 = rhs.trim().parse().map_err(|_| bad())?;
        if row == 0 || col == 0 || !(-1..=1).contains(&value) {
            return Err(bad());
        }
        Ok(EntryFilter { row, col, value })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub ideal_s: f64,
    pub cm_s: f64,
    pub km_vd_s: f64,
}

impl Timings {
    pub fn total(&self) -> f64 {
        self.ideal_s + self.cm_s + self.km_vd_s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub asm: Asm,
    pub codim: usize,
    pub perm_count: usize,
    pub equidimensional: bool,
    pub cm: Option<bool>,
    pub km_vd: Option<bool>,
    pub a11_is_one: bool,
    pub timings: Timings,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalyzeOptions {
    pub cm: bool,
    pub km_vd: bool,
    pub cm_options: CmOptions,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            cm: true,
            km_vd: true,
            cm_options: CmOptions::default(),
        }
    }
}

pub fn analyze(a: &Asm, opts: &AnalyzeOptions) -> Result<AnalysisReport> {
    let start = Instant::now();
    let perms = perm_set_via_primes(a)?;
    let ideal_s = start.elapsed().as_secs_f64();

    let start = Instant::now();
    let cm = if opts.cm || opts.km_vd {
        Some(cm_verdict(a, &opts.cm_options)?.cm)
    } else {
        None
    };
    let cm_s = start.elapsed().as_secs_f64();

    let start = Instant::now();
    let km_vd = opts
        .km_vd
        .then(|| KmDecider::new(a.n()).trace(&init_complex(a)).result);
    let km_vd_s = start.elapsed().as_secs_f64();

    Ok(AnalysisReport {
        asm: a.clone(),
        codim: perms.codim,
        perm_count: perms.perms.len(),
        equidimensional: perms.equidimensional,
        cm,
        km_vd,
        a11_is_one: a.get(1, 1) == 1,
        timings: Timings {
            ideal_s,
            cm_s,
            km_vd_s,
        },
    })
}

/// Default number of ASMs per shard.
pub const DEFAULT_SHARD_SIZE: usize = 256;

#[derive(Debug, Clone, PartialEq)]
pub struct CensusConfig {
    pub n: usize,
    pub checks: BTreeSet<Check>,
    pub filter: Option<EntryFilter>,
    pub jobs: usize,
    pub field: Field,
    pub backend: Backend,
    pub cache_dir: Option<PathBuf>,
    pub shard_size: usize,
}

impl CensusConfig {
    pub fn new(n: usize) -> Self {
        CensusConfig {
            n,
            checks: BTreeSet::new(),
            filter: None,
            jobs: 1,
            field: Field::Rational,
            backend: Backend::Reisner,
            cache_dir: None,
            shard_size: DEFAULT_SHARD_SIZE,
        }
    }

    fn wants(&self, c: Check) -> bool {
        self.checks.contains(&c)
    }

    fn analyze_options(&self) -> AnalyzeOptions {
        AnalyzeOptions {
            cm: self.wants(Check::Cm) || self.wants(Check::KmVd),
            km_vd: self.wants(Check::KmVd),
            cm_options: CmOptions {
                field: self.field,
                backend: self.backend,
                ..CmOptions::default()
            },
        }
    }

    /// Everything that affects the cached records. The job count does not.
    pub fn cache_key(&self) -> String {
        let opts = self.analyze_options();
        let descr = format!(
            "asmlab-census-v1|n={}|cm={}|km_vd={}|filter={}|field={}|backend={}|shard={}",
            self.n,
            opts.cm,
            opts.km_vd,
            self.filter.map(|f| f.to_string()).unwrap_or_default(),
            self.field,
            self.backend,
            self.shard_size,
        );
        hex::encode(Sha256::digest(descr.as_bytes()))
    }

    fn shard_path(&self, dir: &Path, k: usize) -> PathBuf {
        dir.join(self.cache_key())
            .join(format!("n{}_shard{}.jsonl", self.n, k))
    }
}

/// One census line.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CensusRow {
    pub n: usize,
    pub total: usize,
    pub cm: Option<usize>,
    pub not_cm: Option<usize>,
    /// Cohen–Macaulay ASMs that are not vertex decomposable in the fixed order.
    pub km_vd_fail: Option<usize>,
    pub km_vd_fail_a11: Option<usize>,
    pub equidim: Option<usize>,
    /// Sum of the per-ASM analysis times.
    pub runtime_s: f64,
}

pub const CSV_HEADER: &str = "n,total,cm,not_cm,km_vd_fail,km_vd_fail_a11,equidim,runtime_s";

fn cell(v: Option<usize>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

impl CensusRow {
    pub fn to_csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{:.3}",
            self.n,
            self.total,
            cell(self.cm),
            cell(self.not_cm),
            cell(self.km_vd_fail),
            cell(self.km_vd_fail_a11),
            cell(self.equidim),
            self.runtime_s
        )
    }

    fn from_reports(cfg: &CensusConfig, reports: &[AnalysisReport]) -> CensusRow {
        let count = |f: &dyn Fn(&AnalysisReport) -> bool| reports.iter().filter(|r| f(r)).count();
        let wants_cm = cfg.wants(Check::Cm);
        let wants_km = cfg.wants(Check::KmVd);
        let km_fail = |r: &AnalysisReport| r.cm == Some(true) && r.km_vd == Some(false);
        CensusRow {
            n: cfg.n,
            total: reports.len(),
            cm: wants_cm.then(|| count(&|r| r.cm == Some(true))),
            not_cm: wants_cm.then(|| count(&|r| r.cm == Some(false))),
            km_vd_fail: wants_km.then(|| count(&km_fail)),
            km_vd_fail_a11: wants_km.then(|| count(&|r| km_fail(r) && r.a11_is_one)),
            equidim: cfg
                .wants(Check::Equidim)
                .then(|| count(&|r| r.equidimensional)),
            runtime_s: reports.iter().map(|r| r.timings.total()).sum(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CensusOutcome {
    pub row: CensusRow,
    pub shards_computed: usize,
    pub shards_cached: usize,
    /// Per-ASM records in stream order.
    #[serde(skip)]
    pub reports: Vec<AnalysisReport>,
}

fn read_shard(path: &Path, expected: &[Asm]) -> Option<Vec<AnalysisReport>> {
    let text = fs::read_to_string(path).ok()?;
    let reports: Vec<AnalysisReport> = text
        .lines()
        .map(serde_json::from_str)
        .collect::<std::result::Result<_, _>>()
        .ok()?;
    let matches =
        reports.len() == expected.len() && reports.iter().zip(expected).all(|(r, a)| &r.asm == a);
    matches.then_some(reports)
}

fn write_shard(path: &Path, reports: &[AnalysisReport]) -> Result<()> {
    let io = |e: std::io::Error| Error::Cache(format!("{}: {e}", path.display()));
    let dir = path.parent().expect("shard paths have a parent");
    fs::create_dir_all(dir).map_err(io)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    for r in reports {
        let line = serde_json::to_string(r).map_err(|e| Error::Cache(e.to_string()))?;
        writeln!(tmp, "{line}").map_err(io)?;
    }
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

/// Census of `ASM(n)` for the configured checks.
pub fn tabulate(cfg: &CensusConfig) -> Result<CensusOutcome> {
    if cfg.shard_size == 0 {
        return Err(Error::Parse("shard size must be positive".into()));
    }
    let opts = cfg.analyze_options();
    if opts.cm && cfg.n > opts.cm_options.max_n {
        return Err(Error::SizeBoundExceeded {
            got: cfg.n,
            max: opts.cm_options.max_n,
        });
    }
    let asms: Vec<Asm> = all_asms(cfg.n)?
        .into_iter()
        .filter(|a| cfg.filter.is_none_or(|f| f.matches(a)))
        .collect();
    let shards: Vec<&[Asm]> = asms.chunks(cfg.shard_size).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.max(1))
        .build()
        .map_err(|e| Error::Parse(e.to_string()))?;
    let results: Vec<(Vec<AnalysisReport>, bool)> = pool.install(|| {
        shards
            .par_iter()
            .enumerate()
            .map(|(k, shard)| {
                let path = cfg.cache_dir.as_deref().map(|d| cfg.shard_path(d, k));
                if let Some(cached) = path.as_deref().and_then(|p| read_shard(p, shard)) {
                    return Ok((cached, true));
                }
                let reports = shard
                    .iter()
                    .map(|a| analyze(a, &opts))
                    .collect::<Result<Vec<_>>>()?;
                if let Some(p) = &path {
                    write_shard(p, &reports)?;
                }
                Ok((reports, false))
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let shards_cached = results.iter().filter(|r| r.1).count();
    let reports: Vec<AnalysisReport> = results.into_iter().flat_map(|r| r.0).collect();
    Ok(CensusOutcome {
        row: CensusRow::from_reports(cfg, &reports),
        shards_computed: shards.len() - shards_cached,
        shards_cached,
        reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsing() {
        let f: EntryFilter = "a11=1".parse().unwrap();
        assert_eq!(
            f,
            EntryFilter {
                row: 1,
                col: 1,
                value: 1
            }
        );
        assert_eq!(
            "a_10_2=-1".parse::<EntryFilter>().unwrap().to_string(),
            "a_10_2=-1"
        );
        assert!("b11=1".parse::<EntryFilter>().is_err());
        let checks = parse_checks("km_vd").unwrap();
        assert!(checks.contains(&Check::Cm));
        assert!(parse_checks("cm,foo").is_err());
    }

    #[test]
    fn census_four() {
        let mut cfg = CensusConfig::new(4);
        cfg.checks = parse_checks("cm,km_vd,equidim").unwrap();
        let out = tabulate(&cfg).unwrap();
        let r = &out.row;
        assert_eq!((r.total, r.cm, r.not_cm), (42, Some(39), Some(3)));
        assert_eq!((r.km_vd_fail, r.km_vd_fail_a11), (Some(1), Some(0)));
        assert!(out.row.to_csv_line().starts_with("4,42,39,3,1,0,"));
    }

    #[test]
    fn unrequested_columns_are_blank() {
        let out = tabulate(&CensusConfig::new(3)).unwrap();
        assert!(out.row.to_csv_line().starts_with("3,7,,,,,,"));
    }
}
