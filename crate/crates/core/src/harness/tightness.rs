use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{
    clauses_for, measure, predict, ClauseKind, Facts, Instance, Observation, Rule, Verdict, Witness,
};
use crate::connectivity::CutOptions;
use crate::constructors::RNG_ALGORITHM;
use crate::error::{Error, Result};
use crate::expr::ProductSpec;
use crate::io::write_graph6;

/// Search parameters. Candidates are complete bipartite graphs or odd
/// cycles with parts up to `max_part_size`, plus `samples` seeded random
/// graphs of the same size range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TightnessConfig {
    pub target: Rule,
    pub max_part_size: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub seed: u64,
    pub samples: usize,
    #[serde(default)]
    pub cut_options: CutOptions,
}

/// An instance meeting every hypothesis except one boundary condition
/// (the two part-size clauses count as one condition).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryInstance {
    /// Expression that rebuilds the base graph.
    pub expr: String,
    pub n: usize,
    pub failed_clause: String,
    pub actual: Observation,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
}

impl BoundaryInstance {
    /// Rebuilds the instance from its expression and re-derives the failing
    /// clause, the measurement and the witness.
    pub fn replays(&self, target: Rule, opts: &CutOptions) -> Result<bool> {
        let inst = Instance::from_expr(&self.expr, Some(self.n))?;
        Ok(evaluate(target, &inst, opts)?.as_ref() == Some(self))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TightnessReport {
    pub target: Rule,
    pub rng: String,
    pub seed: u64,
    pub examined: usize,
    /// Boundary instances where the conclusion fails.
    pub witnesses: Vec<BoundaryInstance>,
    /// Boundary instances where the conclusion still holds.
    pub non_witnesses: Vec<BoundaryInstance>,
    pub indeterminate: Vec<BoundaryInstance>,
    /// False when some boundary instance could not be decided.
    pub complete: bool,
}

fn evaluate(target: Rule, inst: &Instance, opts: &CutOptions) -> Result<Option<BoundaryInstance>> {
    let facts = Facts::compute(&inst.graph, target.uses_double_cover())?;
    let clauses = clauses_for(target, inst, &facts);
    if clauses
        .iter()
        .any(|c| c.kind == ClauseKind::Structural && !c.holds)
    {
        return Ok(None);
    }
    let failed: Vec<&str> = clauses
        .iter()
        .filter(|c| !c.holds)
        .map(|c| c.text.as_str())
        .collect();
    // The two part-size clauses relax together (e.g. K_{m,m} fails both).
    let part_sizes = |t: &str| t.starts_with("|X|") || t.starts_with("|Y|");
    let one_family =
        failed.len() == 1 || (!failed.is_empty() && failed.iter().all(|t| part_sizes(t)));
    if !one_family {
        return Ok(None);
    }
    let prediction = predict(target, inst, &facts);
    let mut notes = Vec::new();
    let (actual, verdict, witness) = measure(target, inst, &facts, &prediction, opts, &mut notes)?;
    Ok(Some(BoundaryInstance {
        expr: inst.descriptor.clone(),
        n: inst.n.expect("boundary instances carry n"),
        failed_clause: failed.join("; "),
        actual,
        verdict,
        witness,
    }))
}

const PROBABILITIES: [f64; 5] = [0.3, 0.4, 0.5, 0.6, 0.8];

fn candidates(cfg: &TightnessConfig, bipartite: bool) -> Vec<ProductSpec> {
    let m = cfg.max_part_size;
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    if bipartite {
        for a in 1..=m {
            for b in a..=m {
                out.push(ProductSpec::CompleteBipartite(a, b));
            }
        }
        for i in 0..cfg.samples {
            out.push(ProductSpec::RandomBipartite {
                m: rng.gen_range(1..=m),
                n: rng.gen_range(1..=m),
                p: PROBABILITIES[rng.gen_range(0..PROBABILITIES.len())],
                seed: rng.gen(),
                // δ ≥ 2 admits graphs with κ < δ, where the strict κ clause can fail.
                min_delta: 1 + i % 2,
            });
        }
    } else {
        for k in (3..=2 * m).step_by(2) {
            out.push(ProductSpec::Cycle(k));
        }
        for k in 3..=m {
            out.push(ProductSpec::Complete(k));
        }
        for _ in 0..cfg.samples {
            out.push(ProductSpec::RandomNonbipartite {
                n: rng.gen_range(3..=2 * m.max(2)),
                p: PROBABILITIES[rng.gen_range(0..PROBABILITIES.len())],
                seed: rng.gen(),
                min_delta: 2,
            });
        }
    }
    out
}

/// Looks for instances that fail exactly one boundary condition of `target`
/// and records whether the conclusion still holds there.
pub fn tightness_search(cfg: &TightnessConfig) -> Result<TightnessReport> {
    let bipartite = match cfg.target {
        Rule::LayeredSuper | Rule::BipartiteOddSuper | Rule::BipartiteEvenSuper => true,
        Rule::NonbipartiteEvenSuper | Rule::NonbipartiteOddSuper => false,
        other => {
            return Err(Error::input(format!(
                "tightness search applies to the super-kappa rules with quantitative hypotheses, not {other}"
            )))
        }
    };
    if cfg.max_part_size == 0 || cfg.n_min > cfg.n_max {
        return Err(Error::input("empty search range"));
    }
    let mut report = TightnessReport {
        target: cfg.target,
        rng: RNG_ALGORITHM.to_owned(),
        seed: cfg.seed,
        examined: 0,
        witnesses: Vec::new(),
        non_witnesses: Vec::new(),
        indeterminate: Vec::new(),
        complete: true,
    };
    let mut seen = HashSet::new();
    for spec in candidates(cfg, bipartite) {
        let graph = match spec.build() {
            Ok(g) => g,
            Err(Error::GenerationFailed { .. }) => continue,
            Err(e) => return Err(e),
        };
        if !seen.insert(write_graph6(&graph)) {
            continue;
        }
        let mut inst = Instance::from_spec(&spec, None)?;
        for n in cfg.n_min..=cfg.n_max {
            inst.n = Some(n);
            report.examined += 1;
            let Some(b) = evaluate(cfg.target, &inst, &cfg.cut_options)? else {
                continue;
            };
            match b.verdict {
                Verdict::Refuted => report.witnesses.push(b),
                Verdict::Confirmed => report.non_witnesses.push(b),
                _ => {
                    report.complete = false;
                    report.indeterminate.push(b);
                }
            }
        }
    }
    Ok(report)
}
