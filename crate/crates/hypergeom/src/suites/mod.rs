//! Batch verification suites: named parameter sweeps over the checks of
//! every backend, run in parallel over (check, prime) instances, with
//! JSON-lines reports.

mod items;

use crate::cache::ExpansionCache;
use crate::error::{Error, Result};
use crate::report::{Summary, VerificationRecord};
use std::path::PathBuf;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteId {
    Galois,
    Supercongruence,
    Classical,
    Appendix,
    CharsumIdentities,
    PadicProperties,
    QmodularProperties,
}

impl SuiteId {
    pub fn name(&self) -> &'static str {
        match self {
            SuiteId::Galois => "galois",
            SuiteId::Supercongruence => "supercongruence",
            SuiteId::Classical => "classical",
            SuiteId::Appendix => "appendix",
            SuiteId::CharsumIdentities => "charsum-identities",
            SuiteId::PadicProperties => "padic-properties",
            SuiteId::QmodularProperties => "qmodular-properties",
        }
    }

    pub fn all() -> [SuiteId; 7] {
        [
            SuiteId::Galois,
            SuiteId::Supercongruence,
            SuiteId::Classical,
            SuiteId::Appendix,
            SuiteId::CharsumIdentities,
            SuiteId::PadicProperties,
            SuiteId::QmodularProperties,
        ]
    }
}

impl FromStr for SuiteId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SuiteId::all()
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown suite `{s}`")))
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub suite: SuiteId,
    pub j_min: i64,
    pub j_max: i64,
    pub pmax: u64,
    /// decimal digits for the complex checks
    pub precision: u32,
    pub threads: usize,
    pub cache_dir: Option<PathBuf>,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

impl SuiteConfig {
    pub fn new(suite: SuiteId) -> Self {
        SuiteConfig {
            suite,
            j_min: 1,
            j_max: 11,
            pmax: 200,
            precision: 60,
            threads: 0, // rayon default
            cache_dir: None,
            seed: 1,
            out: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(1..=11).contains(&self.j_min) || !(1..=11).contains(&self.j_max) || self.j_min > self.j_max {
            return Err(Error::Parameter(format!(
                "invalid j range {}..{}",
                self.j_min, self.j_max
            )));
        }
        if self.pmax < 5 {
            return Err(Error::Parameter("pmax must be at least 5".into()));
        }
        if !(20..=200).contains(&self.precision) {
            return Err(Error::Parameter("precision must lie in [20, 200] digits".into()));
        }
        Ok(())
    }
}

/// One unit of parallel work, producing one or more records.
pub(crate) struct WorkItem {
    pub id: String,
    pub run: Box<dyn Fn() -> Result<Vec<VerificationRecord>> + Send + Sync>,
}

impl WorkItem {
    pub fn new(
        id: impl Into<String>,
        run: impl Fn() -> Result<Vec<VerificationRecord>> + Send + Sync + 'static,
    ) -> Self {
        WorkItem { id: id.into(), run: Box::new(run) }
    }
}

/// Execute a suite: build its work items, run them in parallel, sort the
/// records canonically, optionally write the report file.
pub fn run_suite(config: &SuiteConfig) -> Result<(Vec<VerificationRecord>, Summary)> {
    config.validate()?;
    let cache = match &config.cache_dir {
        Some(dir) => Some(ExpansionCache::new(dir)?),
        None => None,
    };
    let items = match config.suite {
        SuiteId::Galois => items::galois_items(config, cache)?,
        SuiteId::Supercongruence => items::supercongruence_items(config, cache)?,
        SuiteId::Classical => items::classical_items(config)?,
        SuiteId::Appendix => items::appendix_items(config)?,
        SuiteId::CharsumIdentities => items::charsum_identity_items(config)?,
        SuiteId::PadicProperties => items::padic_property_items(config)?,
        SuiteId::QmodularProperties => items::qmodular_property_items(config, cache)?,
    };
    let records = execute(items, config.threads)?;
    let summary = Summary::of(config.suite.name(), &records);
    if let Some(path) = &config.out {
        crate::report::write_report(path, config.suite.name(), &records)?;
    }
    Ok((records, summary))
}

fn execute(items: Vec<WorkItem>, threads: usize) -> Result<Vec<VerificationRecord>> {
    use rayon::prelude::*;
    let body = |items: Vec<WorkItem>| -> Vec<VerificationRecord> {
        items
            .par_iter()
            .flat_map(|item| match (item.run)() {
                Ok(records) => records,
                Err(e) => vec![VerificationRecord::new(item.id.clone()).errored(e.to_string())],
            })
            .collect()
    };
    let mut records = if threads == 0 {
        body(items)
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::Parameter(format!("thread pool: {e}")))?;
        pool.install(|| body(items))
    };
    records.sort_by_key(|r| r.sort_key());
    Ok(records)
}

/// Primes p = 1 (mod m) with 5 <= p <= pmax.
pub fn primes_one_mod(m: u64, pmax: u64) -> Vec<u64> {
    (5..=pmax).filter(|p| p % m == 1 && crate::charsum::is_prime(*p)).collect()
}

/// The `count` smallest primes p = 1 (mod m), p >= 5.
pub fn smallest_primes_one_mod(m: u64, count: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 5u64;
    while out.len() < count {
        if p % m == 1 && crate::charsum::is_prime(p) {
            out.push(p);
        }
        p += 2;
        if p > 1_000_000 {
            break;
        }
    }
    out
}
