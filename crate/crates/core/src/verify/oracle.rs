//! Brute-force reference computations. Deliberately simple and separate from
//! the construction-side search code.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, VecDeque};

use crate::graph::{Edge, EdgeId, Graph, Length, Vertex, INF};

/// Directed arc list of `G ∪ extra` (both orientations when undirected).
pub(crate) fn arcs(g: &Graph, extra: &[Edge]) -> Vec<(Vertex, Vertex, Length)> {
    let mut out = Vec::with_capacity(2 * (g.m() + extra.len()));
    for e in g.edges().iter().chain(extra) {
        out.push((e.u, e.v, e.w as Length));
        if !g.is_directed() {
            out.push((e.v, e.u, e.w as Length));
        }
    }
    out
}

/// `dist^{(budget)}` from `s`: the full hop-layer table, one layer at a time.
pub(crate) fn hop_layer_dist(n: usize, arcs: &[(Vertex, Vertex, Length)], s: Vertex, budget: usize) -> Vec<Length> {
    let mut cur = vec![INF; n];
    cur[s] = 0;
    for _ in 0..budget {
        let mut next = cur.clone();
        for &(u, v, w) in arcs {
            if cur[u] != INF && cur[u] + w < next[v] {
                next[v] = cur[u] + w;
            }
        }
        if next == cur {
            break;
        }
        cur = next;
    }
    cur
}

/// Unweighted hop distances by BFS over an arc list.
pub(crate) fn bfs_hops(n: usize, arcs: &[(Vertex, Vertex, Length)], s: Vertex) -> Vec<usize> {
    let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for &(u, v, _) in arcs {
        adj[u].push(v);
    }
    let mut hops = vec![usize::MAX; n];
    hops[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if hops[v] == usize::MAX {
                hops[v] = hops[u] + 1;
                queue.push_back(v);
            }
        }
    }
    hops
}

/// Shortest length from `s` to each vertex over paths that use at most
/// `budget` edges outside `kept`: Dijkstra on `(vertex, edges missed)` states.
pub(crate) fn budgeted_missing_dist(
    g: &Graph,
    kept: &BTreeSet<EdgeId>,
    s: Vertex,
    budget: usize,
) -> Vec<Length> {
    let n = g.n();
    let layers = budget.min(n) + 1;
    let mut dist = vec![INF; n * layers];
    let mut heap = BinaryHeap::new();
    dist[s] = 0;
    heap.push(Reverse((0, 0usize, s)));
    while let Some(Reverse((d, j, u))) = heap.pop() {
        if d > dist[j * n + u] {
            continue;
        }
        for &(v, e) in g.neighbors(u) {
            let nj = if kept.contains(&e) { j } else { j + 1 };
            if nj >= layers {
                continue;
            }
            let nd = d + g.edge(e).w as Length;
            if nd < dist[nj * n + v] {
                dist[nj * n + v] = nd;
                heap.push(Reverse((nd, nj, v)));
            }
        }
    }
    (0..n)
        .map(|v| (0..layers).map(|j| dist[j * n + v]).min().unwrap_or(INF))
        .collect()
}

/// Length of the shortest cycle counted in edges, `None` if acyclic.
pub fn girth(g: &Graph) -> Option<usize> {
    let n = g.n();
    let mut best = usize::MAX;
    for s in 0..n {
        let mut depth = vec![usize::MAX; n];
        let mut via: Vec<Option<EdgeId>> = vec![None; n];
        depth[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &(v, e) in g.neighbors(u) {
                if via[u] == Some(e) {
                    continue;
                }
                if depth[v] == usize::MAX {
                    depth[v] = depth[u] + 1;
                    via[v] = Some(e);
                    queue.push_back(v);
                } else {
                    best = best.min(depth[u] + depth[v] + 1);
                }
            }
        }
    }
    (best != usize::MAX).then_some(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hop_layers_on_path() {
        let g = Graph::new(4, false, [(0, 1, 1), (1, 2, 1), (2, 3, 1)]).unwrap();
        let a = arcs(&g, &[]);
        assert_eq!(hop_layer_dist(4, &a, 0, 2)[3], INF);
        assert_eq!(hop_layer_dist(4, &a, 0, 3)[3], 3);
        assert_eq!(hop_layer_dist(4, &arcs(&g, &[Edge { u: 0, v: 3, w: 3 }]), 0, 1)[3], 3);
    }

    #[test]
    fn girth_examples() {
        let tri = Graph::new(3, false, [(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap();
        assert_eq!(girth(&tri), Some(3));
        let c5 = Graph::new(5, false, (0..5).map(|i| (i, (i + 1) % 5, 1))).unwrap();
        assert_eq!(girth(&c5), Some(5));
        let tree = Graph::new(4, false, [(0, 1, 1), (1, 2, 1), (1, 3, 1)]).unwrap();
        assert_eq!(girth(&tree), None);
    }

    #[test]
    fn missing_budget_dist() {
        let g = Graph::new(3, false, [(0, 1, 1), (1, 2, 1), (0, 2, 5)]).unwrap();
        let kept: BTreeSet<EdgeId> = [g.edge_between(0, 2).unwrap()].into_iter().collect();
        assert_eq!(budgeted_missing_dist(&g, &kept, 0, 0)[2], 5);
        assert_eq!(budgeted_missing_dist(&g, &kept, 0, 1)[2], 5);
        assert_eq!(budgeted_missing_dist(&g, &kept, 0, 2)[2], 2);
    }
}
