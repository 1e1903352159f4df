//! Regenerates the checked-in instance manifests.
//!
//!     cargo run -p superkappa --example make_manifests -- crates/core/manifests
//!
//! Every instance is an expression with an explicit seed, so the manifests
//! rebuild the same graphs on any platform. Super-κ instances are kept only
//! when all hypotheses hold and the construction has at most 48 vertices.

use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use superkappa::harness::{
    check_hypotheses, Instance, Manifest, ManifestEntry, Rule, TightnessConfig,
};
use superkappa::{CutOptions, ProductSpec};

const PS: [f64; 4] = [0.4, 0.5, 0.6, 0.7];

fn bip(rng: &mut ChaCha8Rng, max_part: usize) -> ProductSpec {
    ProductSpec::RandomBipartite {
        m: rng.gen_range(2..=max_part),
        n: rng.gen_range(2..=max_part),
        p: PS[rng.gen_range(0..PS.len())],
        seed: rng.gen_range(0..1_000_000),
        min_delta: 1,
    }
}

fn gnp(rng: &mut ChaCha8Rng, max_order: usize, min_delta: usize) -> ProductSpec {
    ProductSpec::RandomNonbipartite {
        n: rng.gen_range(4..=max_order),
        p: PS[rng.gen_range(0..PS.len())],
        seed: rng.gen_range(0..1_000_000),
        min_delta,
    }
}

/// Draws specs until `count` of them build and pass every hypothesis.
fn collect(
    out: &mut Vec<ManifestEntry>,
    rule: Rule,
    count: usize,
    ns: &[usize],
    max_product: usize,
    mut draw: impl FnMut() -> ProductSpec,
) {
    let mut found = 0;
    let mut tries = 0;
    while found < count {
        tries += 1;
        assert!(tries < 100_000, "{rule}: could not find {count} instances");
        let spec = draw();
        let n = ns[found % ns.len()];
        let Ok(inst) = Instance::from_spec(&spec, Some(n)) else {
            continue;
        };
        // Both the layered graph and G x C_n have |V(G)| * n vertices.
        if inst.graph.order() * n > max_product
            || !check_hypotheses(rule, &inst)
                .unwrap()
                .iter()
                .all(|c| c.holds)
        {
            continue;
        }
        if out
            .iter()
            .any(|e| e.theorem == rule && e.expr == inst.descriptor && e.n == Some(n))
        {
            continue;
        }
        found += 1;
        out.push(ManifestEntry {
            id: format!("{}-{found:02}", rule.id().to_lowercase()),
            theorem: rule,
            expr: inst.descriptor,
            n: Some(n),
        });
    }
}

fn write(dir: &PathBuf, file: &str, value: &impl serde::Serialize) {
    let text = serde_json::to_string_pretty(value).unwrap() + "\n";
    std::fs::write(dir.join(file), text).unwrap();
}

fn main() {
    let dir = PathBuf::from(
        std::env::args()
            .nth(1)
            .unwrap_or_else(|| "crates/core/manifests".into()),
    );
    std::fs::create_dir_all(&dir).unwrap();

    // Connectivity formulas: up to 10-vertex bases, n <= 7.
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut conn = Vec::new();
    let mut bases = Vec::new();
    while bases.len() < 30 {
        let spec = bip(&mut rng, 5);
        if spec.build().is_ok() && !bases.contains(&spec) {
            bases.push(spec);
        }
    }
    for (i, spec) in bases.iter().enumerate() {
        for n in [2, 3, 4] {
            conn.push(ManifestEntry {
                id: format!("t2.1-{:02}-n{n}", i + 1),
                theorem: Rule::LayeredConnectivity,
                expr: spec.to_string(),
                n: Some(n),
            });
        }
    }
    collect(
        &mut conn,
        Rule::BipartiteOddConnectivity,
        20,
        &[3, 5, 7],
        70,
        || bip(&mut rng, 5),
    );
    collect(
        &mut conn,
        Rule::BipartiteEvenConnectivity,
        20,
        &[4, 6],
        70,
        || bip(&mut rng, 5),
    );
    collect(
        &mut conn,
        Rule::NonbipartiteEvenConnectivity,
        20,
        &[4, 6],
        70,
        || gnp(&mut rng, 10, 1),
    );
    let mut bounds = Vec::new();
    while bounds.len() < 10 {
        let spec = gnp(&mut rng, 8, 1);
        if spec.build().is_ok() && !bounds.contains(&spec) {
            bounds.push(spec);
        }
    }
    for (i, spec) in bounds.iter().enumerate() {
        for n in [5, 7] {
            conn.push(ManifestEntry {
                id: format!("t3.4-{:02}-n{n}", i + 1),
                theorem: Rule::NonbipartiteOddBounds,
                expr: spec.to_string(),
                n: Some(n),
            });
        }
    }
    write(
        &dir,
        "connectivity.json",
        &Manifest {
            name: "connectivity formulas".into(),
            budget: CutOptions::default(),
            instances: conn,
        },
    );

    // Super-κ: factors up to 8 vertices, constructions up to 48 vertices.
    let mut rng = ChaCha8Rng::seed_from_u64(4096);
    let mut sup = Vec::new();
    collect(&mut sup, Rule::LayeredSuper, 8, &[3, 4, 5], 48, || {
        bip(&mut rng, 4)
    });
    collect(&mut sup, Rule::BipartiteOddSuper, 8, &[3, 5], 48, || {
        bip(&mut rng, 4)
    });
    collect(&mut sup, Rule::BipartiteEvenSuper, 6, &[6], 48, || {
        bip(&mut rng, 4)
    });
    collect(&mut sup, Rule::NonbipartiteEvenSuper, 6, &[6], 48, || {
        gnp(&mut rng, 8, 2)
    });
    collect(&mut sup, Rule::NonbipartiteOddSuper, 6, &[7], 48, || {
        gnp(&mut rng, 6, 2)
    });
    for (id, rule, expr, n) in [
        ("c3.10-c3-n6", Rule::OddCycleProductEvenSuper, "cycle(3)", 6),
        ("c3.11-c3-n7", Rule::OddCycleProductOddSuper, "cycle(3)", 7),
        ("t3.9-c3", Rule::OddCycleDoubleCover, "cycle(3)", 0),
        (
            "t3.9-c3-c5",
            Rule::OddCycleDoubleCover,
            "cycle(3) x cycle(5)",
            0,
        ),
    ] {
        sup.push(ManifestEntry {
            id: id.into(),
            theorem: rule,
            expr: expr.into(),
            n: (n > 0).then_some(n),
        });
    }
    write(
        &dir,
        "super.json",
        &Manifest {
            name: "super-connectedness".into(),
            budget: CutOptions::default(),
            instances: sup,
        },
    );

    // Boundary probes. Below n = 6 (even) or n = 7 (odd) the strict κ
    // clause fails as well, so those n never yield single-clause instances.
    let probes: Vec<TightnessConfig> = [
        (Rule::LayeredSuper, 4, 3, 4),
        (Rule::BipartiteOddSuper, 4, 3, 5),
        (Rule::BipartiteEvenSuper, 4, 6, 8),
        (Rule::NonbipartiteEvenSuper, 4, 6, 8),
        (Rule::NonbipartiteOddSuper, 4, 7, 9),
    ]
    .into_iter()
    .map(|(target, max_part_size, n_min, n_max)| TightnessConfig {
        target,
        max_part_size,
        n_min,
        n_max,
        seed: 99,
        samples: 40,
        cut_options: CutOptions::default(),
    })
    .collect();
    write(&dir, "tightness.json", &probes);
}
