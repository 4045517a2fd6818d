//! Integer-weighted graphs, demand pair sets, I/O and generators.
//!
//! A [`Graph`] is immutable after construction. Undirected graphs store each
//! edge once with `u < v`; adjacency lists expose both orientations.

mod closure;
mod generate;
mod io;

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use closure::{transitive_closure, WeightedClosure};
pub use generate::{generate_graph, GeneratorKind, GeneratorSpec};
pub use io::{load_graph, parse_graph, write_edge_list, GraphFormat};

pub type Vertex = usize;
pub type EdgeId = usize;
pub type Weight = u64;
/// Path lengths; sums of up to `n` weights never overflow.
pub type Length = u128;

/// Distance sentinel for unreachable pairs.
pub const INF: Length = Length::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
    pub w: Weight,
}

#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    directed: bool,
    edges: Vec<Edge>,
    w_max: Weight,
    adj: Vec<Vec<(Vertex, EdgeId)>>,
    index: HashMap<(Vertex, Vertex), EdgeId>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.directed == other.directed && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph, collapsing parallel edges to their minimum weight and
    /// dropping self-loops.
    pub fn new(
        n: usize,
        directed: bool,
        edges: impl IntoIterator<Item = (Vertex, Vertex, Weight)>,
    ) -> Result<Self> {
        let mut best: HashMap<(Vertex, Vertex), Weight> = HashMap::new();
        for (u, v, w) in edges {
            if u >= n || v >= n {
                return Err(Error::domain(format!(
                    "edge ({u},{v}) out of range for n={n}"
                )));
            }
            if u == v {
                continue;
            }
            let key = canonical(directed, u, v);
            best.entry(key)
                .and_modify(|cur| *cur = (*cur).min(w))
                .or_insert(w);
        }
        let mut list: Vec<Edge> = best
            .into_iter()
            .map(|((u, v), w)| Edge { u, v, w })
            .collect();
        list.sort_unstable();
        Ok(Self::from_sorted(n, directed, list))
    }

    fn from_sorted(n: usize, directed: bool, edges: Vec<Edge>) -> Self {
        let mut adj = vec![Vec::new(); n];
        let mut index = HashMap::with_capacity(edges.len());
        for (id, e) in edges.iter().enumerate() {
            adj[e.u].push((e.v, id));
            if !directed {
                adj[e.v].push((e.u, id));
            }
            index.insert((e.u, e.v), id);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let w_max = edges.iter().map(|e| e.w).max().unwrap_or(0);
        Graph {
            n,
            directed,
            edges,
            w_max,
            adj,
            index,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn w_max(&self) -> Weight {
        self.w_max
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Edge {
        self.edges[id]
    }

    /// Outgoing `(neighbor, edge id)` pairs; both orientations when undirected.
    pub fn neighbors(&self, u: Vertex) -> &[(Vertex, EdgeId)] {
        &self.adj[u]
    }

    /// The edge joining `u` to `v`, honoring direction.
    pub fn edge_between(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        self.index.get(&canonical(self.directed, u, v)).copied()
    }

    pub fn is_unit_weighted(&self) -> bool {
        self.edges.iter().all(|e| e.w == 1)
    }

    /// The subgraph on the same vertex set keeping only `ids`.
    pub fn subgraph<'a>(&self, ids: impl IntoIterator<Item = &'a EdgeId>) -> Graph {
        let keep: BTreeSet<EdgeId> = ids.into_iter().copied().collect();
        let edges = keep.into_iter().map(|id| self.edges[id]).collect();
        Self::from_sorted(self.n, self.directed, edges)
    }

    /// A standalone graph with the given edges plus extra weighted pairs,
    /// used for emulators and for `G ∪ H` distance queries.
    pub fn with_extra<'a>(
        &self,
        ids: impl IntoIterator<Item = &'a EdgeId>,
        extra: impl IntoIterator<Item = Edge>,
    ) -> Graph {
        let base = ids.into_iter().map(|&id| {
            let e = self.edges[id];
            (e.u, e.v, e.w)
        });
        let extra = extra.into_iter().map(|e| (e.u, e.v, e.w));
        Graph::new(self.n, self.directed, base.chain(extra).collect::<Vec<_>>())
            .expect("vertices already validated")
    }

    /// Sum of edge weights along a vertex sequence, or `None` if some step is
    /// not an edge of this graph.
    /// Vertices reachable from `s` (including `s`).
    pub fn reachable_from(&self, s: Vertex) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &(v, _) in self.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }

    pub fn walk_length(&self, vertices: &[Vertex]) -> Option<Length> {
        let mut total: Length = 0;
        for pair in vertices.windows(2) {
            let id = self.edge_between(pair[0], pair[1])?;
            total += self.edges[id].w as Length;
        }
        Some(total)
    }
}

pub(crate) fn canonical(directed: bool, u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if directed || u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Ordered demand pairs; duplicates removed, order of first appearance kept.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairSet {
    pairs: Vec<(Vertex, Vertex)>,
}

impl PairSet {
    pub fn new(n: usize, pairs: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (u, v) in pairs {
            if u >= n || v >= n {
                return Err(Error::domain(format!("pair ({u},{v}) out of range for n={n}")));
            }
            if seen.insert((u, v)) {
                out.push((u, v));
            }
        }
        Ok(PairSet { pairs: out })
    }

    /// `count` distinct pairs `u != v` drawn uniformly with a fixed seed.
    /// Every prefix of the sequence is itself a valid draw.
    pub fn random(n: usize, count: usize, seed: u64) -> Result<Self> {
        use rand::{Rng, SeedableRng};
        if n < 2 && count > 0 {
            return Err(Error::domain("need at least two vertices to draw pairs"));
        }
        let total = n * (n - 1);
        if count > total {
            return Err(Error::domain(format!("cannot draw {count} distinct pairs from n={n}")));
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut seen = BTreeSet::new();
        let mut pairs = Vec::with_capacity(count);
        while pairs.len() < count {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u != v && seen.insert((u, v)) {
                pairs.push((u, v));
            }
        }
        Ok(PairSet { pairs })
    }

    /// Like [`PairSet::random`] but only pairs `(u, v)` with `v` reachable
    /// from `u` in `g`; prefixes are again valid draws.
    pub fn random_reachable(g: &Graph, count: usize, seed: u64) -> Result<Self> {
        use rand::{Rng, SeedableRng};
        let n = g.n();
        let reach: Vec<Vec<bool>> = (0..n).map(|s| g.reachable_from(s)).collect();
        let total: usize = reach.iter().map(|r| r.iter().filter(|&&x| x).count() - 1).sum();
        if count > total {
            return Err(Error::domain(format!("graph has only {total} reachable pairs, {count} requested")));
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut seen = BTreeSet::new();
        let mut pairs = Vec::with_capacity(count);
        while pairs.len() < count {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u != v && reach[u][v] && seen.insert((u, v)) {
                pairs.push((u, v));
            }
        }
        Ok(PairSet { pairs })
    }

    pub fn pairs(&self) -> &[(Vertex, Vertex)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.pairs.iter().copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reachable_pairs_are_reachable() {
        let g = Graph::new(4, true, [(0, 1, 1), (1, 2, 1)]).unwrap();
        let ps = PairSet::random_reachable(&g, 3, 5).unwrap();
        let mut got: Vec<_> = ps.iter().collect();
        got.sort_unstable();
        assert_eq!(got, vec![(0, 1), (0, 2), (1, 2)]);
        assert!(PairSet::random_reachable(&g, 4, 5).is_err());
        let prefix = PairSet::random_reachable(&g, 2, 5).unwrap();
        assert_eq!(prefix.pairs(), &ps.pairs()[..2]);
    }

    #[test]
    fn parallel_edges_keep_minimum() {
        let g = Graph::new(3, true, [(0, 1, 7), (0, 1, 2), (1, 2, 4)]).unwrap();
        assert_eq!(g.m(), 2);
        assert_eq!(g.edge(g.edge_between(0, 1).unwrap()).w, 2);
        assert_eq!(g.w_max(), 4);
    }

    #[test]
    fn undirected_edges_stored_once() {
        let g = Graph::new(3, false, [(1, 0, 3), (0, 1, 5), (2, 1, 1)]).unwrap();
        assert_eq!(g.m(), 2);
        assert_eq!(g.edges()[0], Edge { u: 0, v: 1, w: 3 });
        assert_eq!(g.edge_between(1, 0), g.edge_between(0, 1));
        assert_eq!(g.neighbors(1).len(), 2);
    }

    #[test]
    fn self_loops_dropped_and_range_checked() {
        let g = Graph::new(2, true, [(0, 0, 1), (0, 1, 1)]).unwrap();
        assert_eq!(g.m(), 1);
        assert!(Graph::new(2, true, [(0, 2, 1)]).is_err());
    }

    #[test]
    fn edgeless_graph_has_zero_wmax() {
        let g = Graph::new(4, false, []).unwrap();
        assert_eq!(g.w_max(), 0);
    }

    #[test]
    fn pair_set_dedups() {
        let p = PairSet::new(4, [(0, 1), (0, 1), (2, 3)]).unwrap();
        assert_eq!(p.len(), 2);
        assert!(PairSet::new(4, [(0, 9)]).is_err());
    }

    #[test]
    fn random_pairs_are_prefix_stable() {
        let a = PairSet::random(50, 10, 3).unwrap();
        let b = PairSet::random(50, 30, 3).unwrap();
        assert_eq!(a.pairs(), &b.pairs()[..10]);
    }
}
