use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use super::{verify, Instance, Rule, Stopwatch, TheoremVerdict, Verdict};
use crate::connectivity::CutOptions;
use crate::error::{Error, Result};

/// A named, checked-in list of instances to verify.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub name: String,
    #[serde(default)]
    pub budget: CutOptions,
    pub instances: Vec<ManifestEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifestEntry {
    pub id: String,
    pub theorem: Rule,
    pub expr: String,
    #[serde(default)]
    pub n: Option<usize>,
}

impl Manifest {
    pub fn from_json(text: &str) -> Result<Manifest> {
        serde_json::from_str(text).map_err(|e| Error::Schema {
            field: "manifest".into(),
            message: e.to_string(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum SuiteOutcome {
    Verdict(Box<TheoremVerdict>),
    Error { message: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteEntry {
    pub id: String,
    pub theorem: Rule,
    pub outcome: SuiteOutcome,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub confirmed: usize,
    pub refuted: usize,
    pub hypotheses_not_met: usize,
    pub indeterminate: usize,
    pub errors: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub entries: Vec<SuiteEntry>,
    pub summary: SuiteSummary,
    pub runtime_ms: u64,
}

/// Applies `f` to every item on up to `jobs` threads. Results come back in
/// input order regardless of scheduling.
pub fn par_map<T, R, F>(items: &[T], jobs: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    let jobs = jobs.clamp(1, items.len().max(1));
    if jobs == 1 {
        return items.iter().map(f).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<R>>> = Mutex::new((0..items.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..jobs {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let r = f(&items[i]);
                slots.lock().expect("no worker panicked")[i] = Some(r);
            });
        }
    });
    slots
        .into_inner()
        .expect("no worker panicked")
        .into_iter()
        .map(|r| r.expect("every slot filled"))
        .collect()
}

pub fn run_suite(manifest: &Manifest, jobs: usize) -> SuiteReport {
    let start = Stopwatch::start();
    let entries = par_map(&manifest.instances, jobs, |e| {
        let outcome = Instance::from_expr(&e.expr, e.n)
            .and_then(|inst| verify(e.theorem, &inst, &manifest.budget))
            .map_or_else(
                |err| SuiteOutcome::Error {
                    message: err.to_string(),
                },
                |v| SuiteOutcome::Verdict(Box::new(v)),
            );
        SuiteEntry {
            id: e.id.clone(),
            theorem: e.theorem,
            outcome,
        }
    });
    let mut summary = SuiteSummary::default();
    for e in &entries {
        match &e.outcome {
            SuiteOutcome::Error { .. } => summary.errors += 1,
            SuiteOutcome::Verdict(v) => match v.verdict {
                Verdict::Confirmed => summary.confirmed += 1,
                Verdict::Refuted => summary.refuted += 1,
                Verdict::HypothesesNotMet => summary.hypotheses_not_met += 1,
                Verdict::Indeterminate => summary.indeterminate += 1,
            },
        }
    }
    SuiteReport {
        name: manifest.name.clone(),
        entries,
        summary,
        runtime_ms: start.ms(),
    }
}
