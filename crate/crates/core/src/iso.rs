//! Backtracking isomorphism test for small graphs.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default vertex cap for [`is_isomorphic_small`].
pub const DEFAULT_ISO_CAP: usize = 64;

/// Outcome of comparing two graphs that may be too large for a search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IsoOutcome {
    Isomorphic,
    NotIsomorphic,
    /// Above the search cap; order, size, degree multiset and κ agree.
    InvariantEqual,
    /// Above the search cap and some invariant differs.
    InvariantDifferent,
}

impl IsoOutcome {
    pub fn is_match(self) -> bool {
        matches!(self, IsoOutcome::Isomorphic | IsoOutcome::InvariantEqual)
    }
}

pub fn is_isomorphic_small(g: &Graph, h: &Graph) -> Result<bool> {
    is_isomorphic_capped(g, h, DEFAULT_ISO_CAP)
}

/// Searches for an edge-preserving bijection. Candidate images are
/// restricted by stable colour-refinement classes computed jointly over
/// both graphs.
pub fn is_isomorphic_capped(g: &Graph, h: &Graph, cap: usize) -> Result<bool> {
    for x in [g, h] {
        if x.order() > cap {
            return Err(Error::Capacity {
                operation: "isomorphism search",
                order: x.order(),
                cap,
            });
        }
    }
    Ok(find_isomorphism(g, h).is_some())
}

/// Compares graphs by search when both fit under `cap`, otherwise by
/// invariants (order, size, degree multiset and the supplied κ values).
pub fn compare(g: &Graph, h: &Graph, cap: usize, kappas: Option<(usize, usize)>) -> IsoOutcome {
    if g.order() <= cap && h.order() <= cap {
        return if find_isomorphism(g, h).is_some() {
            IsoOutcome::Isomorphic
        } else {
            IsoOutcome::NotIsomorphic
        };
    }
    let same = g.order() == h.order()
        && g.size() == h.size()
        && g.degree_sequence() == h.degree_sequence()
        && kappas.is_none_or(|(a, b)| a == b);
    if same {
        IsoOutcome::InvariantEqual
    } else {
        IsoOutcome::InvariantDifferent
    }
}

/// Returns `map` with `map[v]` the image in `h` of vertex `v` of `g`.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    let n = g.order();
    if n != h.order() || g.size() != h.size() || g.degree_sequence() != h.degree_sequence() {
        return None;
    }
    let mut gc: Vec<usize> = g.components().iter().map(Vec::len).collect();
    let mut hc: Vec<usize> = h.components().iter().map(Vec::len).collect();
    gc.sort_unstable();
    hc.sort_unstable();
    if gc != hc {
        return None;
    }
    if n == 0 {
        return Some(Vec::new());
    }

    let (cg, ch) = refine_colours(g, h);
    let mut hist_g: HashMap<usize, usize> = HashMap::new();
    let mut hist_h: HashMap<usize, usize> = HashMap::new();
    for &c in &cg {
        *hist_g.entry(c).or_default() += 1;
    }
    for &c in &ch {
        *hist_h.entry(c).or_default() += 1;
    }
    if hist_g != hist_h {
        return None;
    }

    let order = search_order(g, &cg, &hist_g);
    let mut search = Search {
        g,
        h,
        cg: &cg,
        ch: &ch,
        order: &order,
        map: vec![usize::MAX; n],
        used: vec![false; n],
    };
    if search.extend(0) {
        Some(search.map)
    } else {
        None
    }
}

/// Iterated degree refinement on the disjoint union of `g` and `h`, so
/// that colour ids are comparable between the two graphs.
fn refine_colours(g: &Graph, h: &Graph) -> (Vec<usize>, Vec<usize>) {
    let n = g.order();
    let graphs = [g, h];
    let mut colour: Vec<usize> = graphs
        .iter()
        .flat_map(|x| (0..n).map(move |v| x.neighbors(v).len()))
        .collect();
    let mut classes = distinct(&colour);
    loop {
        let mut sigs: Vec<(usize, Vec<usize>)> = Vec::with_capacity(2 * n);
        for (gi, x) in graphs.iter().enumerate() {
            for v in 0..n {
                let mut ns: Vec<usize> =
                    x.neighbors(v).iter().map(|&w| colour[gi * n + w]).collect();
                ns.sort_unstable();
                sigs.push((colour[gi * n + v], ns));
            }
        }
        let mut ids: HashMap<&(usize, Vec<usize>), usize> = HashMap::new();
        let mut sorted: Vec<&(usize, Vec<usize>)> = sigs.iter().collect();
        sorted.sort();
        for s in sorted {
            let next = ids.len();
            ids.entry(s).or_insert(next);
        }
        let next: Vec<usize> = sigs.iter().map(|s| ids[s]).collect();
        let next_classes = distinct(&next);
        colour = next;
        if next_classes == classes {
            break;
        }
        classes = next_classes;
    }
    let ch = colour.split_off(n);
    (colour, ch)
}

fn distinct(c: &[usize]) -> usize {
    let mut v = c.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

/// Rarest colour first, then grow along edges so each new vertex has
/// already-mapped neighbours constraining it.
fn search_order(g: &Graph, colour: &[usize], hist: &HashMap<usize, usize>) -> Vec<usize> {
    let n = g.order();
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .min_by_key(|&v| (std::cmp::Reverse(links[v]), hist[&colour[v]], v))
            .unwrap();
        placed[next] = true;
        order.push(next);
        for &w in g.neighbors(next) {
            links[w] += 1;
        }
    }
    order
}

struct Search<'a> {
    g: &'a Graph,
    h: &'a Graph,
    cg: &'a [usize],
    ch: &'a [usize],
    order: &'a [usize],
    map: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        for cand in 0..self.h.order() {
            if self.used[cand] || self.ch[cand] != self.cg[v] || !self.consistent(v, cand, depth) {
                continue;
            }
            self.map[v] = cand;
            self.used[cand] = true;
            if self.extend(depth + 1) {
                return true;
            }
            self.used[cand] = false;
            self.map[v] = usize::MAX;
        }
        false
    }

    fn consistent(&self, v: usize, cand: usize, depth: usize) -> bool {
        self.order[..depth].iter().all(|&u| {
            let image = self.map[u];
            self.g.has_edge(u, v) == self.h.has_edge(image, cand)
        })
    }
}
