use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rayon::prelude::*;

use crate::graph::{EdgeId, Graph, Length, Vertex, INF};

/// Shortest paths from a source set, minimizing `(length, hops)`
/// lexicographically; equal keys prefer the lower predecessor id.
#[derive(Clone, Debug)]
pub struct ShortestPathTree {
    pub dist: Vec<Length>,
    /// Fewest hops over all shortest paths (`u32::MAX` when unreachable).
    pub hops: Vec<u32>,
    pub parent: Vec<Option<(Vertex, EdgeId)>>,
}

impl ShortestPathTree {
    /// Vertex sequence from the tree root down to `v`.
    pub fn path_to(&self, v: Vertex) -> Option<Vec<Vertex>> {
        if self.dist[v] == INF {
            return None;
        }
        let mut out = vec![v];
        let mut cur = v;
        while let Some((p, _)) = self.parent[cur] {
            out.push(p);
            cur = p;
        }
        out.reverse();
        Some(out)
    }

    pub fn edges_to(&self, v: Vertex) -> Option<Vec<EdgeId>> {
        if self.dist[v] == INF {
            return None;
        }
        let mut out = Vec::new();
        let mut cur = v;
        while let Some((p, e)) = self.parent[cur] {
            out.push(e);
            cur = p;
        }
        out.reverse();
        Some(out)
    }

    /// Tree edges, i.e. the union of all root paths.
    pub fn tree_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.parent.iter().filter_map(|p| p.map(|(_, e)| e))
    }
}

pub fn shortest_path_tree(g: &Graph, sources: &[Vertex]) -> ShortestPathTree {
    let n = g.n();
    let mut dist = vec![INF; n];
    let mut hops = vec![u32::MAX; n];
    let mut parent: Vec<Option<(Vertex, EdgeId)>> = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    for &s in sources {
        dist[s] = 0;
        hops[s] = 0;
        heap.push(Reverse((0, 0u32, s)));
    }
    while let Some(Reverse((d, h, u))) = heap.pop() {
        if done[u] || (d, h) != (dist[u], hops[u]) {
            continue;
        }
        done[u] = true;
        for &(v, e) in g.neighbors(u) {
            let nd = d + g.edge(e).w as Length;
            let nh = h + 1;
            let better = (nd, nh) < (dist[v], hops[v]);
            let tie = (nd, nh) == (dist[v], hops[v])
                && parent[v].is_some_and(|(p, _)| u < p);
            if better {
                dist[v] = nd;
                hops[v] = nh;
                parent[v] = Some((u, e));
                heap.push(Reverse((nd, nh, v)));
            } else if tie {
                parent[v] = Some((u, e));
            }
        }
    }
    ShortestPathTree { dist, hops, parent }
}

/// Dense `n × n` distance table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<Length>,
}

impl DistanceMatrix {
    pub fn get(&self, u: Vertex, v: Vertex) -> Length {
        self.data[u * self.n + v]
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn row(&self, u: Vertex) -> &[Length] {
        &self.data[u * self.n..(u + 1) * self.n]
    }
}

/// Exact all-pairs distances by one Dijkstra run per source.
pub fn apsp_exact(g: &Graph) -> DistanceMatrix {
    let rows: Vec<Vec<Length>> = (0..g.n())
        .into_par_iter()
        .map(|s| shortest_path_tree(g, &[s]).dist)
        .collect();
    DistanceMatrix {
        n: g.n(),
        data: rows.concat(),
    }
}
