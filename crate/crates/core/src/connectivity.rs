//! Vertex and edge connectivity, minimum vertex cuts, and the
//! maximally-connected / super-connected predicates.
//!
//! Local vertex connectivity is computed as a unit-capacity max flow on the
//! vertex-split digraph: vertex `v` becomes `v_in -> v_out` with capacity 1
//! and each edge `uv` becomes `u_out -> v_in` and `v_out -> u_in` with
//! unbounded capacity. Minimum cuts are listed either by scanning all
//! `κ`-subsets or by enumerating minimum separators pair by pair.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default cap on `κ`-subsets scanned by exhaustive enumeration.
pub const DEFAULT_MAX_SUBSETS: u64 = 1_000_000;
/// Default cap on distinct cuts listed by separator enumeration.
pub const DEFAULT_MAX_CUTS: usize = 100_000;

const INF: u64 = u64::MAX / 4;

/// A vertex set whose removal disconnects the graph, with the flags the
/// super-connectedness test reads.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexCut {
    pub vertices: Vec<usize>,
    pub size: usize,
    /// Some component of `G - S` is a single vertex.
    pub isolates_vertex: bool,
    /// `S = N(v)` for some `v` with `d(v) = δ(G)`.
    pub is_neighborhood_of_min_degree_vertex: bool,
}

impl VertexCut {
    /// Classifies `vertices` as a cut of `g`; fails if removing them leaves
    /// the graph connected (or with fewer than two vertices).
    pub fn classify(g: &Graph, vertices: &[usize]) -> Result<VertexCut> {
        let mut s = vertices.to_vec();
        s.sort_unstable();
        s.dedup();
        let rest = g.remove_vertices(&s)?;
        let comps = rest.components();
        if comps.len() < 2 {
            return Err(Error::input(format!("{s:?} is not a vertex cut")));
        }
        let isolates_vertex = comps.iter().any(|c| c.len() == 1);
        let delta = g.min_degree()?;
        let is_nbhd =
            (0..g.order()).any(|v| g.neighbors(v).len() == delta && g.neighbors(v) == s.as_slice());
        Ok(VertexCut {
            size: s.len(),
            vertices: s,
            isolates_vertex,
            is_neighborhood_of_min_degree_vertex: is_nbhd,
        })
    }

    /// The vertex isolated by this cut whose neighbourhood is the cut, if any.
    pub fn isolated_vertex(&self, g: &Graph) -> Option<usize> {
        (0..g.order()).find(|&v| g.neighbors(v) == self.vertices.as_slice())
    }
}

/// How minimum cuts are listed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CutMethod {
    /// Exhaustive when `C(n, κ)` fits the subset budget, separators otherwise.
    #[default]
    Auto,
    Exhaustive,
    Separators,
}

/// The method that actually produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Flow,
    Exhaustive,
    SeparatorEnumeration,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct CutOptions {
    pub method: CutMethod,
    pub max_subsets: u64,
    pub max_cuts: usize,
}

impl Default for CutOptions {
    fn default() -> Self {
        CutOptions {
            method: CutMethod::Auto,
            max_subsets: DEFAULT_MAX_SUBSETS,
            max_cuts: DEFAULT_MAX_CUTS,
        }
    }
}

impl CutOptions {
    pub fn with_method(method: CutMethod) -> Self {
        CutOptions {
            method,
            ..Self::default()
        }
    }
}

/// Minimum cuts found, sorted, plus whether the listing is known complete.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutEnumeration {
    pub kappa: usize,
    pub cuts: Vec<VertexCut>,
    pub method: Method,
    pub complete: bool,
    /// Subsets scanned (exhaustive) or flow problems solved (separators).
    pub work: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuperStatus {
    True,
    False,
    Indeterminate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuperKappa {
    pub status: SuperStatus,
    pub kappa: usize,
    pub delta: usize,
    /// A minimum cut that is not the neighbourhood of a minimum-degree vertex.
    pub witness: Option<VertexCut>,
    pub method: Method,
    pub complete: bool,
    pub cuts_found: usize,
    /// True for complete graphs, where there is no cut to quantify over.
    pub vacuous: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectivityReport {
    pub order: usize,
    pub size: usize,
    pub kappa: usize,
    pub kappa_edge: usize,
    pub delta: usize,
    pub is_max_kappa: bool,
    pub is_super_kappa: Option<bool>,
    pub witness_cut: Option<VertexCut>,
    pub method: Method,
    pub enumeration_complete: bool,
    pub vacuous: bool,
}

/// Residual network with paired arcs (`a ^ 1` is the reverse of `a`).
struct FlowNetwork {
    head: Vec<usize>,
    cap: Vec<u64>,
    base: Vec<u64>,
    out: Vec<Vec<usize>>,
}

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        FlowNetwork {
            head: Vec::new(),
            cap: Vec::new(),
            base: Vec::new(),
            out: vec![Vec::new(); nodes],
        }
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: u64, back: u64) -> usize {
        let id = self.head.len();
        self.head.extend([to, from]);
        self.base.extend([cap, back]);
        self.out[from].push(id);
        self.out[to].push(id + 1);
        id
    }

    fn reset(&mut self) {
        self.cap.clone_from(&self.base);
    }

    /// Augments one unit-bottleneck path at a time until `limit` is reached
    /// or no augmenting path remains.
    fn max_flow(&mut self, src: usize, sink: usize, limit: u64) -> u64 {
        let nodes = self.out.len();
        let mut flow = 0;
        let mut parent = vec![usize::MAX; nodes];
        let mut queue = VecDeque::new();
        while flow < limit {
            parent.iter_mut().for_each(|p| *p = usize::MAX);
            parent[src] = usize::MAX - 1;
            queue.clear();
            queue.push_back(src);
            'bfs: while let Some(u) = queue.pop_front() {
                for &a in &self.out[u] {
                    let w = self.head[a];
                    if self.cap[a] > 0 && parent[w] == usize::MAX {
                        parent[w] = a;
                        if w == sink {
                            break 'bfs;
                        }
                        queue.push_back(w);
                    }
                }
            }
            if parent[sink] == usize::MAX {
                break;
            }
            let mut bottleneck = limit - flow;
            let mut v = sink;
            while v != src {
                let a = parent[v];
                bottleneck = bottleneck.min(self.cap[a]);
                v = self.head[a ^ 1];
            }
            let mut v = sink;
            while v != src {
                let a = parent[v];
                self.cap[a] -= bottleneck;
                self.cap[a ^ 1] += bottleneck;
                v = self.head[a ^ 1];
            }
            flow += bottleneck;
        }
        flow
    }

    fn reachable(&self, src: usize) -> Vec<bool> {
        let mut seen = vec![false; self.out.len()];
        seen[src] = true;
        let mut stack = vec![src];
        while let Some(u) = stack.pop() {
            for &a in &self.out[u] {
                let w = self.head[a];
                if self.cap[a] > 0 && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }
}

/// Vertex-split network of a graph: `v_in = 2v`, `v_out = 2v + 1`.
struct SplitNetwork {
    net: FlowNetwork,
    split: Vec<usize>,
}

impl SplitNetwork {
    fn new(g: &Graph) -> Self {
        let n = g.order();
        let mut net = FlowNetwork::new(2 * n);
        let split = (0..n)
            .map(|v| net.add_arc(2 * v, 2 * v + 1, 1, 0))
            .collect();
        for (u, v) in g.edges() {
            net.add_arc(2 * u + 1, 2 * v, INF, 0);
            net.add_arc(2 * v + 1, 2 * u, INF, 0);
        }
        SplitNetwork { net, split }
    }

    /// Max number of internally disjoint `s`-`t` paths avoiding `removed`
    /// and never cutting `forbidden`, capped at `limit`.
    fn flow(
        &mut self,
        s: usize,
        t: usize,
        removed: &[usize],
        forbidden: &[usize],
        limit: u64,
    ) -> u64 {
        self.net.reset();
        for &v in removed {
            self.net.set_cap(self.split[v], 0);
        }
        for &v in forbidden.iter().chain([&s, &t]) {
            self.net.set_cap(self.split[v], INF);
        }
        self.net.max_flow(2 * s + 1, 2 * t, limit)
    }

    /// Cut closest to `s` after a maximum flow: vertices whose split arc
    /// crosses from the residual-reachable side.
    fn source_side_cut(&self, s: usize, removed: &[usize]) -> Vec<usize> {
        let seen = self.net.reachable(2 * s + 1);
        (0..self.split.len())
            .filter(|&v| seen[2 * v] && !seen[2 * v + 1] && !removed.contains(&v))
            .collect()
    }
}

impl FlowNetwork {
    fn set_cap(&mut self, arc: usize, cap: u64) {
        self.cap[arc] = cap;
        self.cap[arc ^ 1] = 0;
    }
}

fn check_pair(g: &Graph, s: usize, t: usize) -> Result<()> {
    for v in [s, t] {
        g.neighborhood(v)?;
    }
    if s == t || g.has_edge(s, t) {
        return Err(Error::input(format!(
            "vertices {s} and {t} must be distinct and non-adjacent"
        )));
    }
    Ok(())
}

/// Maximum number of internally vertex-disjoint `s`-`t` paths.
pub fn local_vertex_connectivity(g: &Graph, s: usize, t: usize) -> Result<usize> {
    check_pair(g, s, t)?;
    let mut net = SplitNetwork::new(g);
    Ok(net.flow(s, t, &[], &[], INF) as usize)
}

/// A minimum `s`-`t` vertex separator (the one closest to `s`).
pub fn minimum_separator(g: &Graph, s: usize, t: usize) -> Result<Vec<usize>> {
    check_pair(g, s, t)?;
    let mut net = SplitNetwork::new(g);
    net.flow(s, t, &[], &[], INF);
    Ok(net.source_side_cut(s, &[]))
}

/// Pairs whose local connectivities determine `κ`: a minimum-degree vertex
/// `s` against each non-neighbour, then non-adjacent pairs inside `N(s)`.
fn candidate_pairs(g: &Graph) -> Result<Vec<(usize, usize)>> {
    let s = g.min_degree_vertex()?;
    let mut pairs: Vec<(usize, usize)> = (0..g.order())
        .filter(|&t| t != s && !g.has_edge(s, t))
        .map(|t| (s, t))
        .collect();
    let ns = g.neighbors(s);
    for (i, &x) in ns.iter().enumerate() {
        for &y in &ns[i + 1..] {
            if !g.has_edge(x, y) {
                pairs.push((x, y));
            }
        }
    }
    Ok(pairs)
}

/// `κ` and the first pair in scan order attaining it, for connected
/// non-complete graphs.
fn scan_connectivity(g: &Graph) -> Result<(usize, Option<(usize, usize)>)> {
    let mut best = g.min_degree()? as u64;
    let mut best_pair = None;
    let mut net = SplitNetwork::new(g);
    for (s, t) in candidate_pairs(g)? {
        let f = net.flow(s, t, &[], &[], best + 1);
        if f < best || (f == best && best_pair.is_none()) {
            best = f;
            best_pair = Some((s, t));
        }
    }
    Ok((best as usize, best_pair))
}

/// `κ(G)`: `|V| - 1` for complete graphs, 0 for disconnected graphs.
pub fn vertex_connectivity(g: &Graph) -> Result<usize> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if !g.is_connected() {
        return Ok(0);
    }
    if g.is_complete() {
        return Ok(g.order() - 1);
    }
    Ok(scan_connectivity(g)?.0)
}

/// `κ'(G)` by unit-capacity flow from vertex 0 to every other vertex.
pub fn edge_connectivity(g: &Graph) -> Result<usize> {
    if g.order() < 2 {
        return Err(Error::input(
            "edge connectivity needs at least two vertices",
        ));
    }
    if !g.is_connected() {
        return Ok(0);
    }
    let mut net = FlowNetwork::new(g.order());
    for (u, v) in g.edges() {
        net.add_arc(u, v, 1, 1);
    }
    let mut best = g.min_degree()? as u64;
    for t in 1..g.order() {
        net.reset();
        best = best.min(net.max_flow(0, t, best));
    }
    Ok(best as usize)
}

/// One minimum vertex cut, taken from the first optimal pair in scan order.
pub fn minimum_vertex_cut(g: &Graph) -> Result<VertexCut> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if g.is_complete() {
        return Err(Error::NoCut);
    }
    if !g.is_connected() {
        return Err(Error::input("minimum vertex cut of a disconnected graph"));
    }
    let (kappa, pair) = scan_connectivity(g)?;
    let (s, t) = pair.expect("non-complete graphs have a non-adjacent pair");
    let mut net = SplitNetwork::new(g);
    net.flow(s, t, &[], &[], INF);
    let cut = net.source_side_cut(s, &[]);
    debug_assert_eq!(cut.len(), kappa);
    VertexCut::classify(g, &cut)
}

/// Adjacency rows as bitsets, for fast repeated connectivity checks.
pub(crate) struct BitAdjacency {
    words: usize,
    order: usize,
    rows: Vec<u64>,
    all: Vec<u64>,
}

impl BitAdjacency {
    pub(crate) fn new(g: &Graph) -> Self {
        let order = g.order();
        let words = order.div_ceil(64).max(1);
        let mut rows = vec![0u64; words * order];
        for (u, v) in g.edges() {
            rows[u * words + v / 64] |= 1 << (v % 64);
            rows[v * words + u / 64] |= 1 << (u % 64);
        }
        let mut all = vec![0u64; words];
        for v in 0..order {
            all[v / 64] |= 1 << (v % 64);
        }
        BitAdjacency {
            words,
            order,
            rows,
            all,
        }
    }

    /// Whether deleting the vertices in `removed` leaves at least two
    /// vertices in more than one component.
    pub(crate) fn disconnects(&self, removed: &[usize]) -> bool {
        let w = self.words;
        let mut rest = self.all.clone();
        for &v in removed {
            rest[v / 64] &= !(1 << (v % 64));
        }
        let remaining: u32 = rest.iter().map(|x| x.count_ones()).sum();
        if remaining < 2 {
            return false;
        }
        let first = rest
            .iter()
            .enumerate()
            .find(|(_, x)| **x != 0)
            .map(|(i, x)| i * 64 + x.trailing_zeros() as usize)
            .unwrap();
        let mut seen = vec![0u64; w];
        seen[first / 64] |= 1 << (first % 64);
        let mut frontier = seen.clone();
        let mut count = 1u32;
        loop {
            let mut next = vec![0u64; w];
            for (wi, &word) in frontier.iter().enumerate() {
                let mut bits = word;
                while bits != 0 {
                    let v = wi * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    let row = &self.rows[v * w..(v + 1) * w];
                    for i in 0..w {
                        next[i] |= row[i];
                    }
                }
            }
            let mut grew = false;
            for i in 0..w {
                next[i] &= rest[i] & !seen[i];
                if next[i] != 0 {
                    grew = true;
                    count += next[i].count_ones();
                    seen[i] |= next[i];
                }
            }
            if !grew {
                break;
            }
            frontier = next;
        }
        debug_assert!(self.order >= remaining as usize);
        count < remaining
    }
}

/// `C(n, k)`, saturating at `u64::MAX`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Advances `idx` to the next `k`-combination of `0..n` in lexicographic
/// order; returns `false` after the last one.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn exhaustive_cuts(g: &Graph, kappa: usize, max_subsets: u64) -> (BTreeSet<Vec<usize>>, bool, u64) {
    let n = g.order();
    let bits = BitAdjacency::new(g);
    let mut found = BTreeSet::new();
    let mut idx: Vec<usize> = (0..kappa).collect();
    let mut scanned = 0u64;
    loop {
        if scanned >= max_subsets {
            return (found, false, scanned);
        }
        scanned += 1;
        if bits.disconnects(&idx) {
            found.insert(idx.clone());
        }
        if !next_combination(&mut idx, n) {
            return (found, true, scanned);
        }
    }
}

/// Lists every minimum separator of every relevant pair. Any `κ`-cut
/// misses one of the first `κ + 1` vertices, say `x`, and then is a
/// minimum `x`-`y` separator for some `y` it cuts off from `x`. Separators
/// of one pair are enumerated by branching on the vertices of each found
/// separator: the `j`-th branch keeps the first `j - 1` of them in the cut
/// and forbids the `j`-th.
fn separator_cuts(g: &Graph, kappa: usize, max_cuts: usize) -> (BTreeSet<Vec<usize>>, bool, u64) {
    let n = g.order();
    let mut net = SplitNetwork::new(g);
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut flows = 0u64;
    let roots = kappa + 1;
    for x in 0..roots {
        for y in 0..n {
            if y == x || g.has_edge(x, y) || (y < x && y < roots) {
                continue;
            }
            let mut stack: Vec<(Vec<usize>, Vec<usize>)> = vec![(Vec::new(), Vec::new())];
            while let Some((forced, forbidden)) = stack.pop() {
                let need = (kappa - forced.len()) as u64;
                flows += 1;
                if net.flow(x, y, &forced, &forbidden, need + 1) != need {
                    continue;
                }
                let free = net.source_side_cut(x, &forced);
                let mut cut: Vec<usize> = free.iter().chain(&forced).copied().collect();
                cut.sort_unstable();
                found.insert(cut);
                if found.len() > max_cuts {
                    return (found, false, flows);
                }
                for (j, &v) in free.iter().enumerate() {
                    let mut f = forced.clone();
                    f.extend_from_slice(&free[..j]);
                    let mut b = forbidden.clone();
                    b.push(v);
                    stack.push((f, b));
                }
            }
        }
    }
    (found, true, flows)
}

/// Every minimum vertex cut of a connected non-complete graph.
pub fn all_minimum_vertex_cuts(g: &Graph, opts: &CutOptions) -> Result<CutEnumeration> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if g.is_complete() {
        return Err(Error::NoCut);
    }
    if !g.is_connected() {
        return Err(Error::input("cut enumeration needs a connected graph"));
    }
    let kappa = vertex_connectivity(g)?;
    let method = match opts.method {
        CutMethod::Exhaustive => Method::Exhaustive,
        CutMethod::Separators => Method::SeparatorEnumeration,
        CutMethod::Auto if binomial(g.order(), kappa) <= opts.max_subsets => Method::Exhaustive,
        CutMethod::Auto => Method::SeparatorEnumeration,
    };
    let (sets, complete, work) = match method {
        Method::Exhaustive => exhaustive_cuts(g, kappa, opts.max_subsets),
        _ => separator_cuts(g, kappa, opts.max_cuts),
    };
    let cuts = sets
        .iter()
        .map(|s| VertexCut::classify(g, s))
        .collect::<Result<Vec<_>>>()?;
    Ok(CutEnumeration {
        kappa,
        cuts,
        method,
        complete,
        work,
    })
}

/// Whether every minimum vertex cut is the neighbourhood of a
/// minimum-degree vertex. A violating cut found in a partial enumeration
/// still settles the answer; a clean partial enumeration does not.
pub fn is_super_kappa(g: &Graph, opts: &CutOptions) -> Result<SuperKappa> {
    if !g.is_connected() {
        return Err(Error::input(
            "super connectedness is defined for connected graphs only",
        ));
    }
    let delta = g.min_degree()?;
    if g.is_complete() {
        return Ok(SuperKappa {
            status: SuperStatus::True,
            kappa: g.order() - 1,
            delta,
            witness: None,
            method: Method::Flow,
            complete: true,
            cuts_found: 0,
            vacuous: true,
        });
    }
    let kappa = vertex_connectivity(g)?;
    if kappa < delta {
        return Ok(SuperKappa {
            status: SuperStatus::False,
            kappa,
            delta,
            witness: Some(minimum_vertex_cut(g)?),
            method: Method::Flow,
            complete: true,
            cuts_found: 1,
            vacuous: false,
        });
    }
    let listing = all_minimum_vertex_cuts(g, opts)?;
    let witness = listing
        .cuts
        .iter()
        .find(|c| !c.is_neighborhood_of_min_degree_vertex)
        .cloned();
    let status = match (&witness, listing.complete) {
        (Some(_), _) => SuperStatus::False,
        (None, true) => SuperStatus::True,
        (None, false) => SuperStatus::Indeterminate,
    };
    Ok(SuperKappa {
        status,
        kappa,
        delta,
        witness,
        method: listing.method,
        complete: listing.complete,
        cuts_found: listing.cuts.len(),
        vacuous: false,
    })
}

/// `κ(G) = δ(G)`.
pub fn is_max_kappa(g: &Graph) -> Result<bool> {
    if !g.is_connected() {
        return Err(Error::input(
            "maximal connectedness is defined for connected graphs only",
        ));
    }
    Ok(vertex_connectivity(g)? == g.min_degree()?)
}

pub fn connectivity_report(g: &Graph, opts: &CutOptions) -> Result<ConnectivityReport> {
    let delta = g.min_degree()?;
    let kappa = vertex_connectivity(g)?;
    let kappa_edge = if g.order() < 2 {
        0
    } else {
        edge_connectivity(g)?
    };
    let base = ConnectivityReport {
        order: g.order(),
        size: g.size(),
        kappa,
        kappa_edge,
        delta,
        is_max_kappa: g.is_connected() && kappa == delta,
        is_super_kappa: None,
        witness_cut: None,
        method: Method::Flow,
        enumeration_complete: false,
        vacuous: false,
    };
    if !g.is_connected() {
        return Ok(base);
    }
    let sk = is_super_kappa(g, opts)?;
    Ok(ConnectivityReport {
        is_super_kappa: match sk.status {
            SuperStatus::True => Some(true),
            SuperStatus::False => Some(false),
            SuperStatus::Indeterminate => None,
        },
        witness_cut: sk.witness,
        method: sk.method,
        enumeration_complete: sk.complete,
        vacuous: sk.vacuous,
        ..base
    })
}
