use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{Instance, InstanceDescriptor, Stopwatch, Verdict};
use crate::constructors::{
    cycle, direct_product, double_cover, layer_decomposition, odd_cycle_to_tilde_map, tilde,
    ParityCase,
};
use crate::error::{Error, Result};
use crate::iso::{self, IsoOutcome, DEFAULT_ISO_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockCheck {
    pub name: String,
    pub component: usize,
    pub edges: usize,
    pub isomorphism: IsoOutcome,
}

/// Result of relabelling `G × C_n` into layers and blocks and checking
/// every structural claim about that relabelling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub case: ParityCase,
    pub instance: InstanceDescriptor,
    /// `"G"` for bipartite `G`, `"G x K_2"` otherwise.
    pub block_target: String,
    pub blocks: Vec<BlockCheck>,
    pub layers_partition: bool,
    pub blocks_respect_sides: bool,
    /// The multiset of block edges equals the edge set of `G × C_n`.
    pub reassembly_exact: bool,
    /// Block component ids agree with the components of `G × C_n`.
    pub components_match: bool,
    /// Bipartite odd case only: the relabelling maps `G × C_n` onto the
    /// layered graph edge for edge.
    pub matches_layered_graph: Option<bool>,
    pub verdict: Verdict,
    pub runtime_ms: u64,
}

pub fn verify_decomposition(inst: &Instance) -> Result<DecompositionReport> {
    let start = Stopwatch::start();
    let g = &inst.graph;
    let n = inst
        .n
        .ok_or_else(|| Error::input("decomposition check needs a cycle length n"))?;
    let bip = g.bipartition();
    let case = ParityCase::classify(bip.is_some(), n);
    let dec = layer_decomposition(g, n, case)?;
    let product = direct_product(g, &cycle(n)?)?;

    let (target, block_target) = match &bip {
        Some(_) => (g.clone().without_labels(), "G"),
        None => (double_cover(g)?.without_labels(), "G x K_2"),
    };
    let blocks: Vec<BlockCheck> = dec
        .blocks
        .iter()
        .map(|b| BlockCheck {
            name: b.name(),
            component: b.component,
            edges: b.edges.len(),
            isomorphism: iso::compare(&dec.block_graph(b), &target, DEFAULT_ISO_CAP, None),
        })
        .collect();

    let mut product_edges: Vec<(usize, usize)> = product.edges().collect();
    product_edges.sort_unstable();
    let reassembly_exact = dec.reassembled_edges() == product_edges;

    let components_match = {
        let mut by_block: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); dec.component_count()];
        for b in &dec.blocks {
            for &(u, v) in &b.edges {
                by_block[b.component].extend([u, v]);
            }
        }
        let mut ours: Vec<Vec<usize>> = by_block
            .into_iter()
            .map(|s| s.into_iter().collect())
            .collect();
        ours.sort();
        let mut theirs = product.components();
        theirs.sort();
        ours == theirs
    };

    let matches_layered_graph = match (&bip, case) {
        (Some(b), ParityCase::BipartiteOdd) => {
            let layered = tilde(g, b, n)?.graph;
            let map = odd_cycle_to_tilde_map(g, b, n);
            let mut mapped: Vec<(usize, usize)> = product
                .edges()
                .map(|(u, v)| (map[u].min(map[v]), map[u].max(map[v])))
                .collect();
            mapped.sort_unstable();
            let mut expected: Vec<(usize, usize)> = layered.edges().collect();
            expected.sort_unstable();
            Some(mapped == expected)
        }
        _ => None,
    };

    let structural = dec.layers_partition(product.order())
        && dec.blocks_respect_sides()
        && reassembly_exact
        && components_match
        && matches_layered_graph != Some(false);
    let verdict = if !structural || blocks.iter().any(|b| !b.isomorphism.is_match()) {
        Verdict::Refuted
    } else if blocks
        .iter()
        .all(|b| b.isomorphism == IsoOutcome::Isomorphic)
    {
        Verdict::Confirmed
    } else {
        Verdict::Indeterminate
    };
    Ok(DecompositionReport {
        case,
        instance: inst.describe(),
        block_target: block_target.to_owned(),
        blocks,
        layers_partition: dec.layers_partition(product.order()),
        blocks_respect_sides: dec.blocks_respect_sides(),
        reassembly_exact,
        components_match,
        matches_layered_graph,
        verdict,
        runtime_ms: start.ms(),
    })
}
