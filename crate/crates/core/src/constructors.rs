//! Graph families, the direct product, the cyclic layered graph built from
//! copies of a bipartite graph, and seeded random instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Bipartition, Graph, GraphBuilder};

/// Generator used by every random constructor, recorded in reports.
pub const RNG_ALGORITHM: &str = "ChaCha8Rng::seed_from_u64 (rand_chacha 0.3)";

/// Resampling budget of the random constructors.
pub const GENERATION_ATTEMPTS: usize = 10_000;

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::input(format!(
            "cycle needs at least 3 vertices, got {n}"
        )));
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn path(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::input("path needs at least 1 vertex"));
    }
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
}

pub fn complete(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::input("complete graph needs at least 1 vertex"));
    }
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// `K_{m,n}` with `X = 0..m` and `Y = m..m+n`.
pub fn complete_bipartite(m: usize, n: usize) -> Result<Graph> {
    if m < 1 || n < 1 {
        return Err(Error::input(format!(
            "complete bipartite graph needs both parts non-empty, got {m},{n}"
        )));
    }
    Graph::from_edges(m + n, (0..m).flat_map(|u| (m..m + n).map(move |v| (u, v))))
}

pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    Graph::from_edges(10, outer.chain(spokes).chain(inner)).expect("petersen graph is simple")
}

/// Vertices of `h` are shifted past those of `g`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Graph {
    let off = g.order();
    Graph::from_edges(
        off + h.order(),
        g.edges().chain(h.edges().map(|(u, v)| (u + off, v + off))),
    )
    .expect("union of simple graphs is simple")
}

/// Direct (tensor) product. Vertex `(u, v)` is flattened to
/// `u * |V(H)| + v` and labelled `"(u,v)"` from the factor labels.
pub fn direct_product(g: &Graph, h: &Graph) -> Result<Graph> {
    if g.is_empty() || h.is_empty() {
        return Err(Error::input("direct product of an empty graph"));
    }
    let nh = h.order();
    let hedges: Vec<(usize, usize)> = h.edges().collect();
    let mut b = GraphBuilder::new(g.order() * nh);
    for (u1, u2) in g.edges() {
        for &(v1, v2) in &hedges {
            b.add_edge(u1 * nh + v1, u2 * nh + v2)?;
            b.add_edge(u1 * nh + v2, u2 * nh + v1)?;
        }
    }
    let labels = (0..g.order())
        .flat_map(|u| (0..nh).map(move |v| (u, v)))
        .map(|(u, v)| format!("({},{})", g.label(u), h.label(v)))
        .collect();
    b.build().with_labels(labels)
}

/// Left-associated product of all factors.
pub fn product_of(factors: &[Graph]) -> Result<Graph> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| Error::input("product of no factors"))?;
    rest.iter()
        .try_fold(first.clone(), |acc, f| direct_product(&acc, f))
}

/// `G × K_2`.
pub fn double_cover(g: &Graph) -> Result<Graph> {
    direct_product(g, &complete(2)?)
}

/// Whether a block is one of the `H_i` copies or one of the `H_i'` copies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum BlockKind {
    #[serde(rename = "H")]
    H,
    #[serde(rename = "H'")]
    HPrime,
}

/// A named vertex layer such as `X_3`, `Y_1` or `V_2`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Layer {
    pub name: String,
    pub vertices: Vec<usize>,
}

/// One bipartite block: the edges running between two layers.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Block {
    pub kind: BlockKind,
    /// 1-based block index.
    pub index: usize,
    /// Indices into [`LayeredDecomposition::layers`].
    pub sides: [usize; 2],
    pub edges: Vec<(usize, usize)>,
    /// Which connected piece of the host graph this block belongs to.
    pub component: usize,
}

impl Block {
    pub fn name(&self) -> String {
        match self.kind {
            BlockKind::H => format!("H_{}", self.index),
            BlockKind::HPrime => format!("H'_{}", self.index),
        }
    }
}

/// Which of the four bipartite/parity cases of `G × C_n` a decomposition
/// follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParityCase {
    BipartiteOdd,
    BipartiteEven,
    NonbipartiteEven,
    NonbipartiteOdd,
}

impl ParityCase {
    /// Case implied by the bipartiteness of `G` and the parity of `n`.
    pub fn classify(bipartite: bool, n: usize) -> Self {
        match (bipartite, n % 2 == 1) {
            (true, true) => ParityCase::BipartiteOdd,
            (true, false) => ParityCase::BipartiteEven,
            (false, false) => ParityCase::NonbipartiteEven,
            (false, true) => ParityCase::NonbipartiteOdd,
        }
    }

    fn min_n(self) -> usize {
        match self {
            ParityCase::BipartiteOdd => 3,
            ParityCase::BipartiteEven | ParityCase::NonbipartiteEven => 4,
            ParityCase::NonbipartiteOdd => 5,
        }
    }
}

impl std::str::FromStr for ParityCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bipartite-odd" => Ok(ParityCase::BipartiteOdd),
            "bipartite-even" => Ok(ParityCase::BipartiteEven),
            "nonbipartite-even" => Ok(ParityCase::NonbipartiteEven),
            "nonbipartite-odd" => Ok(ParityCase::NonbipartiteOdd),
            other => Err(Error::input(format!("unknown parity case `{other}`"))),
        }
    }
}

/// Layer structure of the cyclic layered graph, or a relabelling of
/// `G × C_n` into layers and bipartite blocks.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct LayeredDecomposition {
    /// `None` for the layered graph itself.
    pub case: Option<ParityCase>,
    pub n: usize,
    pub layers: Vec<Layer>,
    pub blocks: Vec<Block>,
}

impl LayeredDecomposition {
    /// The block as a standalone graph on its two layers, first side first.
    pub fn block_graph(&self, block: &Block) -> Graph {
        let [a, b] = block.sides;
        let mut verts = self.layers[a].vertices.clone();
        verts.extend_from_slice(&self.layers[b].vertices);
        let index = |v: usize| {
            verts
                .iter()
                .position(|&w| w == v)
                .expect("edge endpoint in block")
        };
        let edges: Vec<(usize, usize)> = block
            .edges
            .iter()
            .map(|&(u, v)| (index(u), index(v)))
            .collect();
        Graph::from_edges(verts.len(), edges).expect("block edges are simple")
    }

    /// Checks that the layers are pairwise disjoint and cover `0..order`.
    pub fn layers_partition(&self, order: usize) -> bool {
        let mut seen = vec![false; order];
        for layer in &self.layers {
            for &v in &layer.vertices {
                if v >= order || std::mem::replace(&mut seen[v], true) {
                    return false;
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Every block edge joins its two sides.
    pub fn blocks_respect_sides(&self) -> bool {
        let mut side_of = std::collections::HashMap::new();
        for (i, layer) in self.layers.iter().enumerate() {
            for &v in &layer.vertices {
                side_of.insert(v, i);
            }
        }
        self.blocks.iter().all(|b| {
            let [a, c] = b.sides;
            b.edges.iter().all(|&(u, v)| {
                let (su, sv) = (side_of.get(&u), side_of.get(&v));
                (su == Some(&a) && sv == Some(&c)) || (su == Some(&c) && sv == Some(&a))
            })
        })
    }

    /// All block edges, normalised with `u < v` and sorted; duplicates
    /// across blocks are kept so overlap is observable.
    pub fn reassembled_edges(&self) -> Vec<(usize, usize)> {
        let mut all: Vec<(usize, usize)> = self
            .blocks
            .iter()
            .flat_map(|b| b.edges.iter().map(|&(u, v)| (u.min(v), u.max(v))))
            .collect();
        all.sort_unstable();
        all
    }

    /// Number of distinct component ids among the blocks.
    pub fn component_count(&self) -> usize {
        let mut c: Vec<usize> = self.blocks.iter().map(|b| b.component).collect();
        c.sort_unstable();
        c.dedup();
        c.len()
    }
}

/// The cyclic layered graph together with its decomposition.
#[derive(Debug, Clone)]
pub struct Tilde {
    pub graph: Graph,
    pub decomposition: LayeredDecomposition,
    /// Edges produced twice and merged (only possible for `n = 2`).
    pub collapsed_edges: usize,
}

/// Vertex `(v, i)` of the layered graph, `i` in `0..n` (layer `i + 1`).
pub fn tilde_vertex(v: usize, layer: usize, n: usize) -> usize {
    v * n + layer
}

/// Builds `2n` copies of a connected bipartite `g` arranged in a ring:
/// `H_i` joins `X_i` to `Y_i` and `H_i'` joins `X_{i+1}` to `Y_i`, with
/// layer indices taken modulo `n`.
pub fn tilde(g: &Graph, bip: &Bipartition, n: usize) -> Result<Tilde> {
    if n < 2 {
        return Err(Error::input(format!("layered graph needs n >= 2, got {n}")));
    }
    if !g.is_connected() {
        return Err(Error::input("layered graph needs a connected base graph"));
    }
    if g.bipartition().is_none() || Bipartition::new(g, bip.x()).as_ref() != Ok(bip) {
        return Err(Error::input(
            "layered graph needs a valid bipartition of the base graph",
        ));
    }
    let order = g.order() * n;
    let mut b = GraphBuilder::new(order);
    let mut blocks = Vec::with_capacity(2 * n);
    // edges as (x, y) with x in X
    let base: Vec<(usize, usize)> = g
        .edges()
        .map(|(u, v)| if bip.in_x(u) { (u, v) } else { (v, u) })
        .collect();
    for i in 0..n {
        let next = (i + 1) % n;
        let h: Vec<(usize, usize)> = base
            .iter()
            .map(|&(x, y)| (tilde_vertex(x, i, n), tilde_vertex(y, i, n)))
            .collect();
        let hp: Vec<(usize, usize)> = base
            .iter()
            .map(|&(x, y)| (tilde_vertex(x, next, n), tilde_vertex(y, i, n)))
            .collect();
        for &(u, v) in h.iter().chain(&hp) {
            b.add_edge(u, v)?;
        }
        blocks.push(Block {
            kind: BlockKind::H,
            index: i + 1,
            sides: [i, n + i],
            edges: h,
            component: 0,
        });
        blocks.push(Block {
            kind: BlockKind::HPrime,
            index: i + 1,
            sides: [next, n + i],
            edges: hp,
            component: 0,
        });
    }
    let collapsed_edges = b.collapsed();
    let labels = (0..g.order())
        .flat_map(|v| (0..n).map(move |i| (v, i)))
        .map(|(v, i)| format!("({},{})", g.label(v), i + 1))
        .collect();
    let graph = b.build().with_labels(labels)?;

    let mut layers = Vec::with_capacity(2 * n);
    for (prefix, side) in [("X", bip.x()), ("Y", bip.y())] {
        for i in 0..n {
            layers.push(Layer {
                name: format!("{prefix}_{}", i + 1),
                vertices: side.iter().map(|&v| tilde_vertex(v, i, n)).collect(),
            });
        }
    }
    Ok(Tilde {
        graph,
        decomposition: LayeredDecomposition {
            case: None,
            n,
            layers,
            blocks,
        },
        collapsed_edges,
    })
}

/// 1-based `X` and `Y` layer indices assigned to cycle vertex `i`
/// (1-based) by the odd-cycle relabelling of a bipartite `G × C_n`.
fn bipartite_odd_indices(i: usize, n: usize) -> (usize, usize) {
    if i % 2 == 1 {
        (i.div_ceil(2), (n + i) / 2)
    } else {
        ((n + i).div_ceil(2), i / 2)
    }
}

/// Same for the even-cycle relabelling; both components use indices
/// `1..=n/2` and `n/2+1..=n` respectively.
fn bipartite_even_indices(i: usize, n: usize) -> (usize, usize) {
    if i % 2 == 1 {
        (i.div_ceil(2), (n + i).div_ceil(2))
    } else {
        ((n + i) / 2, i / 2)
    }
}

/// Map from `G × C_n` vertices (`v * n + j`) to layered-graph vertices
/// (`v * n + k`) under the odd-cycle relabelling.
pub fn odd_cycle_to_tilde_map(g: &Graph, bip: &Bipartition, n: usize) -> Vec<usize> {
    let mut map = vec![0; g.order() * n];
    for v in 0..g.order() {
        for j in 0..n {
            let (xi, yi) = bipartite_odd_indices(j + 1, n);
            let k = if bip.in_x(v) { xi } else { yi };
            map[v * n + j] = tilde_vertex(v, k - 1, n);
        }
    }
    map
}

/// Relabels `G × C_n` into layers and bipartite blocks, following the
/// explicit index assignment for the requested parity case.
pub fn layer_decomposition(g: &Graph, n: usize, case: ParityCase) -> Result<LayeredDecomposition> {
    if !g.is_connected() || g.order() < 2 {
        return Err(Error::input(
            "layer decomposition needs a connected nontrivial graph",
        ));
    }
    let bip = g.bipartition();
    if ParityCase::classify(bip.is_some(), n) != case || n < case.min_n() {
        return Err(Error::input(format!(
            "G (bipartite: {}) with n = {n} does not fall in case {case:?}",
            bip.is_some()
        )));
    }
    let product = direct_product(g, &cycle(n)?)?;
    let vertex = |v: usize, layer: usize| v * n + (layer - 1);
    let mut layers = Vec::new();

    let mut specs: Vec<(BlockKind, usize, [usize; 2], usize)> = Vec::new();

    match case {
        ParityCase::BipartiteOdd | ParityCase::BipartiteEven => {
            let bip = bip.expect("case checked");
            let indices = if case == ParityCase::BipartiteOdd {
                bipartite_odd_indices
            } else {
                bipartite_even_indices
            };
            // layer slots: X_k at k-1, Y_k at n+k-1
            let mut slots: Vec<Vec<usize>> = vec![Vec::new(); 2 * n];
            for i in 1..=n {
                let (xi, yi) = indices(i, n);
                slots[xi - 1].extend(bip.x().iter().map(|&x| vertex(x, i)));
                slots[n + yi - 1].extend(bip.y().iter().map(|&y| vertex(y, i)));
            }
            for (s, verts) in slots.into_iter().enumerate() {
                let name = if s < n {
                    format!("X_{}", s + 1)
                } else {
                    format!("Y_{}", s - n + 1)
                };
                let mut vertices = verts;
                vertices.sort_unstable();
                layers.push(Layer { name, vertices });
            }
            let x = |k: usize| k - 1;
            let y = |k: usize| n + k - 1;
            if case == ParityCase::BipartiteOdd {
                for k in 1..=n {
                    specs.push((BlockKind::H, k, [x(k), y(k)], 0));
                    specs.push((BlockKind::HPrime, k, [x(k % n + 1), y(k)], 0));
                }
            } else {
                let half = n / 2;
                for k in 1..=half {
                    specs.push((BlockKind::H, k, [x(k), y(k)], 0));
                    specs.push((BlockKind::HPrime, k, [x(k % half + 1), y(k)], 0));
                }
                // In the second component the Y index runs one step behind
                // the layer it pairs with, so H'_k joins X_k to Y_{k+1}.
                for k in half + 1..=n {
                    let next = if k == n { half + 1 } else { k + 1 };
                    specs.push((BlockKind::H, k, [x(k), y(k)], 1));
                    specs.push((BlockKind::HPrime, k, [x(k), y(next)], 1));
                }
            }
        }
        ParityCase::NonbipartiteEven | ParityCase::NonbipartiteOdd => {
            for i in 1..=n {
                layers.push(Layer {
                    name: format!("V_{i}"),
                    vertices: (0..g.order()).map(|v| vertex(v, i)).collect(),
                });
            }
            let v = |i: usize| (i - 1) % n;
            let h_count = n.div_ceil(2);
            let hp_count = n / 2;
            for k in 1..=h_count {
                specs.push((BlockKind::H, k, [v(2 * k - 1), v(2 * k)], 0));
            }
            for k in 1..=hp_count {
                specs.push((BlockKind::HPrime, k, [v(2 * k), v(2 * k + 1)], 0));
            }
        }
    }
    let blocks = specs
        .into_iter()
        .map(|(kind, index, sides, component)| {
            let a = &layers[sides[0]].vertices;
            let b = &layers[sides[1]].vertices;
            let edges = a
                .iter()
                .flat_map(|&u| b.iter().map(move |&w| (u, w)))
                .filter(|&(u, w)| product.has_edge(u, w))
                .collect();
            Block {
                kind,
                index,
                sides,
                edges,
                component,
            }
        })
        .collect();
    Ok(LayeredDecomposition {
        case: Some(case),
        n,
        layers,
        blocks,
    })
}

fn check_probability(p: f64) -> Result<()> {
    if p > 0.0 && p <= 1.0 {
        Ok(())
    } else {
        Err(Error::input(format!(
            "edge probability must lie in (0, 1], got {p}"
        )))
    }
}

/// Random bipartite graph on parts `0..m` and `m..m+n`, each cross pair
/// present independently with probability `p`, resampled until connected
/// with minimum degree at least `min_delta`.
pub fn random_connected_bipartite(
    m: usize,
    n: usize,
    p: f64,
    seed: u64,
    min_delta: usize,
) -> Result<(Graph, Bipartition)> {
    if m < 1 || n < 1 {
        return Err(Error::input("both parts must be non-empty"));
    }
    check_probability(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x: Vec<usize> = (0..m).collect();
    for _ in 0..GENERATION_ATTEMPTS {
        let edges: Vec<(usize, usize)> = (0..m)
            .flat_map(|u| (m..m + n).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(p))
            .collect();
        let g = Graph::from_edges(m + n, edges)?;
        if g.is_connected() && g.min_degree()? >= min_delta {
            let bip = Bipartition::new(&g, &x)?;
            return Ok((g, bip));
        }
    }
    Err(Error::GenerationFailed {
        params: format!("bipartite m={m} n={n} p={p} seed={seed} min_delta={min_delta}"),
        attempts: GENERATION_ATTEMPTS,
    })
}

/// Random graph on `n` vertices, resampled until connected, non-bipartite
/// and with minimum degree at least `min_delta`.
pub fn random_connected_nonbipartite(
    n: usize,
    p: f64,
    seed: u64,
    min_delta: usize,
) -> Result<Graph> {
    if n < 1 {
        return Err(Error::input("graph needs at least one vertex"));
    }
    check_probability(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..GENERATION_ATTEMPTS {
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(p))
            .collect();
        let g = Graph::from_edges(n, edges)?;
        if g.is_connected() && !g.is_bipartite() && g.min_degree()? >= min_delta {
            return Ok(g);
        }
    }
    Err(Error::GenerationFailed {
        params: format!("nonbipartite n={n} p={p} seed={seed} min_delta={min_delta}"),
        attempts: GENERATION_ATTEMPTS,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::is_isomorphic_small;

    #[test]
    fn base_families() {
        let c3 = cycle(3).unwrap();
        assert_eq!((c3.order(), c3.size()), (3, 3));
        assert_eq!(c3.degree_sequence(), vec![2, 2, 2]);
        assert_eq!(complete(4).unwrap().size(), 6);
        let k23 = complete_bipartite(2, 3).unwrap();
        assert_eq!((k23.size(), k23.min_degree().unwrap()), (6, 2));
        assert!(cycle(2).is_err());
        assert!(complete(0).is_err());
        assert!(complete_bipartite(0, 3).is_err());
        let p = petersen();
        assert_eq!((p.order(), p.size(), p.min_degree().unwrap()), (10, 15, 3));
    }

    #[test]
    fn small_products() {
        let k2 = complete(2).unwrap();
        let p = direct_product(&k2, &k2).unwrap();
        assert_eq!(p.edges().collect::<Vec<_>>(), vec![(0, 3), (1, 2)]);
        assert_eq!(p.label(3), "(1,1)");

        let c3k2 = direct_product(&cycle(3).unwrap(), &k2).unwrap();
        assert!(is_isomorphic_small(&c3k2, &cycle(6).unwrap()).unwrap());

        let k3k3 = direct_product(&complete(3).unwrap(), &complete(3).unwrap()).unwrap();
        assert_eq!((k3k3.order(), k3k3.size()), (9, 18));
        assert!(direct_product(&Graph::empty(0), &k2).is_err());
    }

    #[test]
    fn double_covers() {
        let dc5 = double_cover(&cycle(5).unwrap()).unwrap();
        assert!(is_isomorphic_small(&dc5, &cycle(10).unwrap()).unwrap());

        let dc6 = double_cover(&cycle(6).unwrap()).unwrap();
        let comps = dc6.components();
        assert_eq!(comps.len(), 2);
        for c in comps {
            let part = dc6.induced_subgraph(&c).unwrap();
            assert!(is_isomorphic_small(&part, &cycle(6).unwrap()).unwrap());
        }
        assert_eq!(double_cover(&petersen()).unwrap().min_degree().unwrap(), 3);
    }

    #[test]
    fn layered_graph_of_an_edge_is_a_hexagon() {
        let k11 = complete_bipartite(1, 1).unwrap();
        let bip = k11.bipartition().unwrap();
        let t = tilde(&k11, &bip, 3).unwrap();
        assert!(is_isomorphic_small(&t.graph, &cycle(6).unwrap()).unwrap());
    }

    #[test]
    fn layered_graph_counts() {
        let k23 = complete_bipartite(2, 3).unwrap();
        let bip = k23.bipartition().unwrap();
        let t = tilde(&k23, &bip, 3).unwrap();
        assert_eq!((t.graph.order(), t.graph.size()), (15, 36));
        assert_eq!(t.graph.min_degree().unwrap(), 4);
        assert_eq!(t.collapsed_edges, 0);
        assert!(t.decomposition.layers_partition(15));
        assert!(t.decomposition.blocks_respect_sides());
        for b in &t.decomposition.blocks {
            let bg = t.decomposition.block_graph(b);
            assert!(is_isomorphic_small(&bg, &k23).unwrap(), "{}", b.name());
        }
    }

    #[test]
    fn layered_graph_with_two_layers_has_no_repeated_edges() {
        let k23 = complete_bipartite(2, 3).unwrap();
        let bip = k23.bipartition().unwrap();
        let t = tilde(&k23, &bip, 2).unwrap();
        assert_eq!(t.collapsed_edges, 0);
        assert_eq!((t.graph.order(), t.graph.size()), (10, 24));
    }

    #[test]
    fn layered_graph_rejects_bad_input() {
        let c5 = cycle(5).unwrap();
        let k23 = complete_bipartite(2, 3).unwrap();
        let bip = k23.bipartition().unwrap();
        assert!(tilde(&k23, &bip, 1).is_err());
        assert!(tilde(&c5, &bip, 3).is_err());
        let two = disjoint_union(&k23, &k23);
        let bip2 = two.bipartition().unwrap();
        assert!(tilde(&two, &bip2, 3).is_err());
    }

    #[test]
    fn decomposition_cases_are_checked() {
        let c5 = cycle(5).unwrap();
        assert!(layer_decomposition(&c5, 6, ParityCase::BipartiteEven).is_err());
        assert!(layer_decomposition(&c5, 3, ParityCase::NonbipartiteOdd).is_err());
        let d = layer_decomposition(&c5, 6, ParityCase::NonbipartiteEven).unwrap();
        assert_eq!(d.blocks.len(), 6);
        let d = layer_decomposition(&c5, 7, ParityCase::NonbipartiteOdd).unwrap();
        let h = d.blocks.iter().filter(|b| b.kind == BlockKind::H).count();
        assert_eq!((h, d.blocks.len() - h), (4, 3));
    }

    #[test]
    fn random_generators_are_deterministic() {
        let (g, _) = random_connected_bipartite(4, 4, 1.0, 99, 0).unwrap();
        assert_eq!(g, complete_bipartite(4, 4).unwrap());

        let (a, ba) = random_connected_bipartite(3, 3, 0.7, 42, 2).unwrap();
        let (b, _) = random_connected_bipartite(3, 3, 0.7, 42, 2).unwrap();
        assert_eq!(a, b);
        assert!(a.is_connected() && a.min_degree().unwrap() >= 2);
        assert_eq!(ba.x(), &[0, 1, 2]);

        assert!(matches!(
            random_connected_bipartite(1, 1, 0.1, 1, 2),
            Err(Error::GenerationFailed { .. })
        ));

        assert_eq!(
            random_connected_nonbipartite(5, 1.0, 3, 0).unwrap(),
            complete(5).unwrap()
        );
        assert_eq!(
            random_connected_nonbipartite(3, 1.0, 3, 0).unwrap(),
            cycle(3).unwrap()
        );
        let a = random_connected_nonbipartite(8, 0.5, 7, 3).unwrap();
        let b = random_connected_nonbipartite(8, 0.5, 7, 3).unwrap();
        assert_eq!(a, b);
        assert!(!a.is_bipartite() && a.min_degree().unwrap() >= 3);
        assert!(random_connected_nonbipartite(4, 0.0, 3, 0).is_err());
    }
}
