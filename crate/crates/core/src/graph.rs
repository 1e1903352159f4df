//! Immutable simple undirected graphs over dense vertex indices.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// A simple undirected graph on vertices `0..order`.
///
/// Adjacency lists are kept sorted, so neighbourhoods can be compared and
/// searched directly. Labels are display-only and never affect identity
/// of a vertex.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Graph with `order` vertices and no edges.
    pub fn empty(order: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); order],
            edge_count: 0,
            labels: None,
        }
    }

    /// Builds a graph from an edge list, rejecting self-loops, repeated
    /// pairs and out-of-range endpoints.
    pub fn from_edges<I>(order: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut builder = GraphBuilder::new(order);
        for (u, v) in edges {
            if !builder.add_edge(u, v)? {
                let (a, b) = if u < v { (u, v) } else { (v, u) };
                return Err(Error::DuplicateEdge(a, b));
            }
        }
        Ok(builder.build())
    }

    /// Attaches display labels, one per vertex.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.order() {
            return Err(Error::input(format!(
                "expected {} labels, got {}",
                self.order(),
                labels.len()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Label of `v`, falling back to its index.
    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    fn check(&self, v: usize) -> Result<()> {
        if v < self.order() {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                vertex: v,
                order: self.order(),
            })
        }
    }

    /// Sorted neighbours of `v`. Panics on an invalid vertex; see
    /// [`Graph::neighborhood`] for the checked variant.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn neighborhood(&self, v: usize) -> Result<&[usize]> {
        self.check(v)?;
        Ok(&self.adj[v])
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check(v)?;
        Ok(self.adj[v].len())
    }

    pub fn min_degree(&self) -> Result<usize> {
        self.adj.iter().map(Vec::len).min().ok_or(Error::EmptyGraph)
    }

    pub fn max_degree(&self) -> Result<usize> {
        self.adj.iter().map(Vec::len).max().ok_or(Error::EmptyGraph)
    }

    /// Lowest-index vertex of minimum degree.
    pub fn min_degree_vertex(&self) -> Result<usize> {
        let delta = self.min_degree()?;
        Ok(self.adj.iter().position(|n| n.len() == delta).unwrap())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, ns)| {
            ns.iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        d.sort_unstable();
        d
    }

    pub fn is_complete(&self) -> bool {
        let n = self.order();
        self.adj.iter().all(|ns| ns.len() + 1 == n)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.order() >= 1 && self.components().len() == 1
    }

    /// Two-colouring if the graph has no odd cycle. Within each component
    /// the lowest-index vertex is placed in `X`.
    pub fn bipartition(&self) -> Option<Bipartition> {
        let n = self.order();
        let mut colour: Vec<Option<bool>> = vec![None; n];
        let mut queue = VecDeque::new();
        for start in 0..n {
            if colour[start].is_some() {
                continue;
            }
            colour[start] = Some(true);
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                let cu = colour[u].unwrap();
                for &w in &self.adj[u] {
                    match colour[w] {
                        None => {
                            colour[w] = Some(!cu);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let in_x = colour.into_iter().map(Option::unwrap).collect();
        Some(Bipartition::from_sides(in_x))
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// `G - S`, with the surviving vertices relabelled `0..k` in
    /// increasing order of their original index.
    pub fn remove_vertices(&self, removed: &[usize]) -> Result<Graph> {
        let mut keep = vec![true; self.order()];
        for &v in removed {
            self.check(v)?;
            keep[v] = false;
        }
        let kept: Vec<usize> = (0..self.order()).filter(|&v| keep[v]).collect();
        Ok(self.induced_subgraph_with_map(&kept)?.0)
    }

    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        Ok(self.induced_subgraph_with_map(vertices)?.0)
    }

    /// Induced subgraph plus the map from new indices to original ones.
    /// The new vertex `i` is `vertices[i]` after sorting and deduplication;
    /// its label is the original label (or original index).
    pub fn induced_subgraph_with_map(&self, vertices: &[usize]) -> Result<(Graph, Vec<usize>)> {
        let mut kept = vertices.to_vec();
        kept.sort_unstable();
        kept.dedup();
        let mut index = vec![usize::MAX; self.order()];
        for (i, &v) in kept.iter().enumerate() {
            self.check(v)?;
            index[v] = i;
        }
        let mut adj = vec![Vec::new(); kept.len()];
        let mut edge_count = 0;
        for (i, &v) in kept.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = index[w];
                if j != usize::MAX {
                    adj[i].push(j);
                    if i < j {
                        edge_count += 1;
                    }
                }
            }
        }
        let labels = kept.iter().map(|&v| self.label(v)).collect();
        let g = Graph {
            adj,
            edge_count,
            labels: Some(labels),
        };
        Ok((g, kept))
    }

    /// Applies a vertex permutation: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.order() {
            return Err(Error::input("permutation length differs from graph order"));
        }
        let mut seen = vec![false; perm.len()];
        for &p in perm {
            self.check(p)?;
            if std::mem::replace(&mut seen[p], true) {
                return Err(Error::input("relabelling is not a permutation"));
            }
        }
        Graph::from_edges(self.order(), self.edges().map(|(u, v)| (perm[u], perm[v])))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("order", &self.order())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Accumulates edges, silently collapsing repeats.
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
    collapsed: usize,
}

impl GraphBuilder {
    pub fn new(order: usize) -> Self {
        GraphBuilder {
            adj: vec![Vec::new(); order],
            edge_count: 0,
            collapsed: 0,
        }
    }

    /// Adds `uv`; returns `false` when the edge was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        let order = self.adj.len();
        for x in [u, v] {
            if x >= order {
                return Err(Error::InvalidVertex { vertex: x, order });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.adj[u].contains(&v) {
            self.collapsed += 1;
            return Ok(false);
        }
        self.adj[u].push(v);
        self.adj[v].push(u);
        self.edge_count += 1;
        Ok(true)
    }

    /// Number of repeated edges that were collapsed.
    pub fn collapsed(&self) -> usize {
        self.collapsed
    }

    pub fn build(mut self) -> Graph {
        for ns in &mut self.adj {
            ns.sort_unstable();
        }
        Graph {
            adj: self.adj,
            edge_count: self.edge_count,
            labels: None,
        }
    }
}

/// Two-colouring `(X, Y)` of a bipartite graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    x: Vec<usize>,
    y: Vec<usize>,
    in_x: Vec<bool>,
}

impl Bipartition {
    fn from_sides(in_x: Vec<bool>) -> Self {
        let x = (0..in_x.len()).filter(|&v| in_x[v]).collect();
        let y = (0..in_x.len()).filter(|&v| !in_x[v]).collect();
        Bipartition { x, y, in_x }
    }

    /// Checks that `x` together with its complement is a proper
    /// two-colouring of `g`.
    pub fn new(g: &Graph, x: &[usize]) -> Result<Self> {
        let mut in_x = vec![false; g.order()];
        for &v in x {
            g.check(v)?;
            in_x[v] = true;
        }
        if let Some((u, v)) = g.edges().find(|&(u, v)| in_x[u] == in_x[v]) {
            return Err(Error::input(format!(
                "edge {u}-{v} lies inside one side of the bipartition"
            )));
        }
        Ok(Self::from_sides(in_x))
    }

    pub fn x(&self) -> &[usize] {
        &self.x
    }

    pub fn y(&self) -> &[usize] {
        &self.y
    }

    pub fn in_x(&self, v: usize) -> bool {
        self.in_x[v]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{complete, complete_bipartite, cycle, direct_product};

    #[test]
    fn neighbourhoods_of_small_families() {
        assert_eq!(cycle(5).unwrap().neighborhood(0).unwrap(), &[1, 4]);
        assert_eq!(complete(4).unwrap().neighborhood(2).unwrap(), &[0, 1, 3]);
        assert_eq!(
            complete_bipartite(2, 3).unwrap().neighborhood(0).unwrap(),
            &[2, 3, 4]
        );
        assert_eq!(
            cycle(5).unwrap().neighborhood(5),
            Err(Error::InvalidVertex {
                vertex: 5,
                order: 5
            })
        );
    }

    #[test]
    fn minimum_degrees() {
        for n in 3..10 {
            assert_eq!(cycle(n).unwrap().min_degree().unwrap(), 2);
        }
        assert_eq!(complete_bipartite(2, 3).unwrap().min_degree().unwrap(), 2);
        let p = direct_product(&complete_bipartite(2, 3).unwrap(), &cycle(4).unwrap()).unwrap();
        assert_eq!(p.min_degree().unwrap(), 4);
        assert_eq!(Graph::empty(0).min_degree(), Err(Error::EmptyGraph));
    }

    #[test]
    fn components_and_connectedness() {
        assert_eq!(cycle(6).unwrap().components().len(), 1);
        let k2 = complete(2).unwrap();
        let p = direct_product(&k2, &k2).unwrap();
        assert_eq!(p.components(), vec![vec![0, 3], vec![1, 2]]);
        let c4c6 = direct_product(&cycle(4).unwrap(), &cycle(6).unwrap()).unwrap();
        assert_eq!(c4c6.components().len(), 2);
        assert!(!Graph::empty(0).is_connected());
        assert!(Graph::empty(1).is_connected());
    }

    #[test]
    fn bipartitions() {
        let b = cycle(6).unwrap().bipartition().unwrap();
        assert_eq!(b.x(), &[0, 2, 4]);
        assert_eq!(b.y(), &[1, 3, 5]);
        assert!(cycle(5).unwrap().bipartition().is_none());
        let b = complete_bipartite(2, 3).unwrap().bipartition().unwrap();
        assert_eq!(b.x(), &[0, 1]);
        assert_eq!(b.y(), &[2, 3, 4]);
        assert!(Bipartition::new(&cycle(4).unwrap(), &[0, 1]).is_err());
    }

    #[test]
    fn vertex_removal_and_induced_subgraphs() {
        let g = cycle(5).unwrap().remove_vertices(&[1, 3]).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.size(), 1);
        assert_eq!(g.labels().unwrap(), &["0", "2", "4"]);
        assert_eq!(g.degree(1).unwrap(), 0);

        let k3 = complete(4).unwrap().remove_vertices(&[0]).unwrap();
        assert!(k3.is_complete());
        assert_eq!(k3.order(), 3);

        let p = complete_bipartite(2, 3)
            .unwrap()
            .induced_subgraph(&[0, 1, 2])
            .unwrap();
        assert_eq!(p.size(), 2);
        assert_eq!(p.degree_sequence(), vec![1, 1, 2]);

        assert!(cycle(5).unwrap().remove_vertices(&[7]).is_err());
    }

    #[test]
    fn rejects_malformed_edge_lists() {
        assert_eq!(Graph::from_edges(2, [(0, 0)]), Err(Error::SelfLoop(0)));
        assert_eq!(
            Graph::from_edges(3, [(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        );
        assert!(Graph::from_edges(2, [(0, 2)]).is_err());
    }
}
