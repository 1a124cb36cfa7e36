//! The verification runner: every library check over the bundled corpus,
//! seeded, filtered by id, and collected into one report.

mod checks;

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Result;
use crate::fixtures::Corpus;
use crate::format::SCHEMA_VERSION;
use crate::linalg::Field;
use crate::report::AxiomReport;

pub use checks::plan;

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// At most this many witnesses are copied from a failing report.
const WITNESS_LIMIT: usize = 5;

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    pub filter: Option<String>,
    pub field: Field,
    pub threads: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        let threads = std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1);
        VerifyOptions {
            seed: DEFAULT_SEED,
            filter: None,
            field: Field::Rational,
            threads,
        }
    }
}

/// Verdict and supporting data of one check.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub verdict: bool,
    pub witness: Value,
}

impl Outcome {
    pub fn new(verdict: bool, witness: Value) -> Outcome {
        Outcome { verdict, witness }
    }

    pub fn from_report(report: &AxiomReport) -> Outcome {
        Outcome::new(report.passed(), report_witness(report))
    }
}

pub(crate) fn report_witness(report: &AxiomReport) -> Value {
    let shown: Vec<_> = report.witnesses.iter().take(WITNESS_LIMIT).collect();
    json!({
        "identity": report.identity,
        "witness_count": report.witnesses.len(),
        "witnesses": shown,
    })
}

type Runner = Box<dyn Fn(&mut ChaCha8Rng) -> Result<Outcome> + Send + Sync>;

/// A named, anchored check over one fixture.
pub struct Check {
    pub id: String,
    pub anchor: &'static str,
    pub fixture: String,
    run: Runner,
}

impl Check {
    pub fn new(
        id: impl Into<String>,
        anchor: &'static str,
        fixture: impl Into<String>,
        run: impl Fn(&mut ChaCha8Rng) -> Result<Outcome> + Send + Sync + 'static,
    ) -> Check {
        Check {
            id: id.into(),
            anchor,
            fixture: fixture.into(),
            run: Box::new(run),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub id: String,
    pub anchor: String,
    pub fixture: String,
    pub verdict: bool,
    pub witness: Value,
    pub wall_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub seed: u64,
    pub field: String,
    pub filter: Option<String>,
    pub overall: bool,
    pub total_wall_ms: f64,
    pub entries: Vec<Entry>,
}

impl VerificationReport {
    /// The report with every timing zeroed; two runs with the same seed
    /// agree on this exactly.
    pub fn without_timing(&self) -> VerificationReport {
        let mut out = self.clone();
        out.total_wall_ms = 0.0;
        for e in &mut out.entries {
            e.wall_ms = 0.0;
        }
        out
    }

    pub fn failures(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| !e.verdict)
    }

    pub fn entry(&self, id: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&format!(
                "{} {}  [{}]  ({:.0} ms)\n",
                if e.verdict { "PASS" } else { "FAIL" },
                e.id,
                e.anchor,
                e.wall_ms
            ));
            if !e.verdict {
                out.push_str(&format!("     {}\n", e.witness));
            }
        }
        let failed = self.failures().count();
        out.push_str(&format!(
            "{} of {} checks passed over {} with seed {} in {:.1} s: {}\n",
            self.entries.len() - failed,
            self.entries.len(),
            self.field,
            self.seed,
            self.total_wall_ms / 1000.0,
            if self.overall {
                "overall PASS"
            } else {
                "overall FAIL"
            }
        ));
        out
    }
}

/// Per-check seed, so results do not depend on filtering or scheduling.
fn check_seed(seed: u64, id: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in id.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    seed ^ h
}

pub fn verify_paper(options: &VerifyOptions) -> Result<VerificationReport> {
    let corpus = Corpus::bundled(options.field)?;
    run_with_corpus(&corpus, options)
}

/// Runs every planned check whose id contains the filter, on a small pool
/// of worker threads; entries come back sorted by id.
pub fn run_with_corpus(corpus: &Corpus, options: &VerifyOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    let checks: Vec<Check> = plan(corpus)?
        .into_iter()
        .filter(|c| options.filter.as_deref().is_none_or(|f| c.id.contains(f)))
        .collect();
    let next = AtomicUsize::new(0);
    let results = Mutex::new(Vec::with_capacity(checks.len()));
    std::thread::scope(|scope| {
        for _ in 0..options.threads.max(1).min(checks.len().max(1)) {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                let Some(check) = checks.get(k) else { break };
                let mut rng = ChaCha8Rng::seed_from_u64(check_seed(options.seed, &check.id));
                let t = Instant::now();
                let outcome = (check.run)(&mut rng)
                    .unwrap_or_else(|e| Outcome::new(false, json!({ "error": e.to_string() })));
                let entry = Entry {
                    id: check.id.clone(),
                    anchor: check.anchor.into(),
                    fixture: check.fixture.clone(),
                    verdict: outcome.verdict,
                    witness: outcome.witness,
                    wall_ms: t.elapsed().as_secs_f64() * 1000.0,
                };
                results
                    .lock()
                    .expect("no worker panics while holding the lock")
                    .push(entry);
            });
        }
    });
    let mut entries = results.into_inner().expect("workers finished");
    entries.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(VerificationReport {
        schema_version: SCHEMA_VERSION,
        seed: options.seed,
        field: options.field.name(),
        filter: options.filter.clone(),
        overall: entries.iter().all(|e| e.verdict),
        total_wall_ms: start.elapsed().as_secs_f64() * 1000.0,
        entries,
    })
}
