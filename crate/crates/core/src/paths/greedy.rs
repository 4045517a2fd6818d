use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Length, Vertex, Weight, INF};

/// Greedy `(2k-1)`-spanner: scan edges by `(w, u, v)` and keep an edge unless
/// the spanner built so far already joins its ends within `(2k-1)·w`.
pub fn greedy_spanner(g: &Graph, k: usize) -> Result<BTreeSet<EdgeId>> {
    if g.is_directed() {
        return Err(Error::domain("greedy spanner needs an undirected graph"));
    }
    if k == 0 {
        return Err(Error::domain("greedy spanner needs k >= 1"));
    }
    let stretch = (2 * k - 1) as Length;
    let mut order: Vec<EdgeId> = (0..g.m()).collect();
    order.sort_by_key(|&id| {
        let e = g.edge(id);
        (e.w, e.u, e.v)
    });
    let mut adj: Vec<Vec<(Vertex, Weight)>> = vec![Vec::new(); g.n()];
    let mut kept = BTreeSet::new();
    let mut dist = vec![INF; g.n()];
    let mut seen: Vec<Vertex> = Vec::new();
    for id in order {
        let e = g.edge(id);
        let limit = stretch * e.w as Length;
        if bounded_dist(&adj, e.u, e.v, limit, &mut dist, &mut seen) > limit {
            adj[e.u].push((e.v, e.w));
            adj[e.v].push((e.u, e.w));
            kept.insert(id);
        }
    }
    Ok(kept)
}

// Dijkstra from `s` that gives up once every frontier value exceeds `limit`.
fn bounded_dist(
    adj: &[Vec<(Vertex, Weight)>],
    s: Vertex,
    t: Vertex,
    limit: Length,
    dist: &mut [Length],
    seen: &mut Vec<Vertex>,
) -> Length {
    let mut heap = BinaryHeap::new();
    dist[s] = 0;
    seen.push(s);
    heap.push(Reverse((0, s)));
    let mut found = INF;
    while let Some(Reverse((d, u))) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        if d > limit {
            break;
        }
        if u == t {
            found = d;
            break;
        }
        for &(v, w) in &adj[u] {
            let nd = d + w as Length;
            if nd < dist[v] && nd <= limit {
                if dist[v] == INF {
                    seen.push(v);
                }
                dist[v] = nd;
                heap.push(Reverse((nd, v)));
            }
        }
    }
    for v in seen.drain(..) {
        dist[v] = INF;
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_k1_keeps_everything() {
        let g = Graph::new(3, false, [(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap();
        assert_eq!(greedy_spanner(&g, 1).unwrap().len(), 3);
    }

    #[test]
    fn four_cycle_k2_drops_last_edge() {
        let g = Graph::new(4, false, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, 1)]).unwrap();
        let s = greedy_spanner(&g, 2).unwrap();
        assert_eq!(s.len(), 3);
        // (2,3) is scanned last and closes the cycle
        assert!(!s.contains(&g.edge_between(2, 3).unwrap()));
    }

    #[test]
    fn directed_rejected() {
        let g = Graph::new(2, true, [(0, 1, 1)]).unwrap();
        assert!(greedy_spanner(&g, 2).is_err());
    }
}
