//! Hop-bounded shortest paths in `G ∪ extra` by layered relaxation.
//!
//! Round `h` relaxes only the arcs leaving vertices whose distance changed in
//! round `h - 1`, so the work stops as soon as distances stabilize. Every
//! improvement is recorded with its round, which is enough to rebuild a path
//! of at most `R` arcs for any target without keeping a full `R × n` table.

use rayon::prelude::*;

use crate::graph::{Edge, EdgeId, Graph, Length, Vertex, Weight, INF};

/// Where an arc of `G ∪ extra` comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ArcOrigin {
    Graph(EdgeId),
    /// Index into the `extra` slice passed to the search.
    Extra(usize),
}

impl ArcOrigin {
    // extra arcs win ties: they expand into already-stored paths
    fn rank(self) -> u8 {
        match self {
            ArcOrigin::Extra(_) => 0,
            ArcOrigin::Graph(_) => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PathArc {
    pub from: Vertex,
    pub to: Vertex,
    pub weight: Weight,
    pub origin: ArcOrigin,
}

#[derive(Clone, Copy, Debug)]
struct ArcRec {
    to: Vertex,
    weight: Weight,
    origin: ArcOrigin,
}

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug)]
struct Update {
    round: u32,
    dist: Length,
    pred: Vertex,
    weight: Weight,
    origin: ArcOrigin,
    prev: u32,
}

/// Hop-bounded distances and witness paths from one source.
#[derive(Clone, Debug)]
pub struct HopBoundedTree {
    source: Vertex,
    budget: usize,
    last: Vec<u32>,
    updates: Vec<Update>,
}

impl HopBoundedTree {
    pub fn source(&self) -> Vertex {
        self.source
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    /// `dist^{(R)}(source, v)`, or `INF`.
    pub fn dist(&self, v: Vertex) -> Length {
        match self.last[v] {
            NONE => INF,
            i => self.updates[i as usize].dist,
        }
    }

    /// Arc count of the stored path to `v`: the fewest hops among minimum-length
    /// paths within the budget.
    pub fn hops(&self, v: Vertex) -> Option<usize> {
        match self.last[v] {
            NONE => None,
            i => Some(self.updates[i as usize].round as usize),
        }
    }

    /// A path to `v` with at most `budget` arcs and length `dist(v)`.
    pub fn path(&self, v: Vertex) -> Option<Vec<PathArc>> {
        let mut idx = self.last[v];
        if idx == NONE {
            return None;
        }
        let mut out = Vec::new();
        let mut cur = v;
        loop {
            let up = self.updates[idx as usize];
            if up.round == 0 {
                break;
            }
            out.push(PathArc {
                from: up.pred,
                to: cur,
                weight: up.weight,
                origin: up.origin,
            });
            cur = up.pred;
            let bound = up.round - 1;
            idx = self.last[cur];
            while self.updates[idx as usize].round > bound {
                idx = self.updates[idx as usize].prev;
            }
        }
        out.reverse();
        Some(out)
    }
}

/// Hop-bounded tables for a set of sources.
#[derive(Clone, Debug)]
pub struct HopBoundedPaths {
    budget: usize,
    slot: Vec<Option<usize>>,
    trees: Vec<HopBoundedTree>,
}

impl HopBoundedPaths {
    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn tree(&self, u: Vertex) -> Option<&HopBoundedTree> {
        self.slot.get(u).copied().flatten().map(|i| &self.trees[i])
    }

    pub fn sources(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.trees.iter().map(|t| t.source)
    }

    /// # Panics
    /// If `u` was not among the requested sources.
    pub fn dist(&self, u: Vertex, v: Vertex) -> Length {
        self.expect_tree(u).dist(v)
    }

    pub fn path(&self, u: Vertex, v: Vertex) -> Option<Vec<PathArc>> {
        self.expect_tree(u).path(v)
    }

    fn expect_tree(&self, u: Vertex) -> &HopBoundedTree {
        self.tree(u)
            .unwrap_or_else(|| panic!("vertex {u} was not a requested source"))
    }
}

fn augmented_adjacency(g: &Graph, extra: &[Edge]) -> Vec<Vec<ArcRec>> {
    let mut adj: Vec<Vec<ArcRec>> = vec![Vec::new(); g.n()];
    for u in 0..g.n() {
        for &(v, e) in g.neighbors(u) {
            adj[u].push(ArcRec {
                to: v,
                weight: g.edge(e).w,
                origin: ArcOrigin::Graph(e),
            });
        }
    }
    for (i, e) in extra.iter().enumerate() {
        adj[e.u].push(ArcRec {
            to: e.v,
            weight: e.w,
            origin: ArcOrigin::Extra(i),
        });
        if !g.is_directed() {
            adj[e.v].push(ArcRec {
                to: e.u,
                weight: e.w,
                origin: ArcOrigin::Extra(i),
            });
        }
    }
    adj
}

/// `APSP^{≤R}` on `G ∪ extra` for the given sources (all vertices if `None`).
///
/// Ties: at equal length fewer hops win, then the lower predecessor id, then
/// extra arcs over graph arcs.
pub fn apsp_hop_bounded(
    g: &Graph,
    extra: &[Edge],
    budget: usize,
    sources: Option<&[Vertex]>,
) -> HopBoundedPaths {
    let adj = augmented_adjacency(g, extra);
    let mut list: Vec<Vertex> = match sources {
        Some(s) => s.to_vec(),
        None => (0..g.n()).collect(),
    };
    list.sort_unstable();
    list.dedup();
    let trees: Vec<HopBoundedTree> = list
        .par_iter()
        .map(|&s| relax_from(&adj, s, budget))
        .collect();
    let mut slot = vec![None; g.n()];
    for (i, t) in trees.iter().enumerate() {
        slot[t.source] = Some(i);
    }
    HopBoundedPaths {
        budget,
        slot,
        trees,
    }
}

/// Single-source variant of [`apsp_hop_bounded`].
pub fn hop_bounded_tree(g: &Graph, extra: &[Edge], budget: usize, source: Vertex) -> HopBoundedTree {
    relax_from(&augmented_adjacency(g, extra), source, budget)
}

fn relax_from(adj: &[Vec<ArcRec>], source: Vertex, budget: usize) -> HopBoundedTree {
    let n = adj.len();
    let mut dist = vec![INF; n];
    let mut last = vec![NONE; n];
    let mut updates = vec![Update {
        round: 0,
        dist: 0,
        pred: source,
        weight: 0,
        origin: ArcOrigin::Extra(usize::MAX),
        prev: NONE,
    }];
    dist[source] = 0;
    last[source] = 0;

    // proposal key per vertex: (length, pred, origin rank)
    let mut best: Vec<Option<(Length, Vertex, u8, Weight, ArcOrigin)>> = vec![None; n];
    let mut touched: Vec<Vertex> = Vec::new();
    let mut frontier = vec![source];
    let mut round = 0usize;
    while !frontier.is_empty() && round < budget {
        round += 1;
        for &u in &frontier {
            let du = dist[u];
            for arc in &adj[u] {
                let nd = du + arc.weight as Length;
                if nd >= dist[arc.to] {
                    continue;
                }
                let key = (nd, u, arc.origin.rank());
                match best[arc.to] {
                    Some((d, p, r, _, _)) if (d, p, r) <= key => {}
                    Some(_) => best[arc.to] = Some((nd, u, key.2, arc.weight, arc.origin)),
                    None => {
                        best[arc.to] = Some((nd, u, key.2, arc.weight, arc.origin));
                        touched.push(arc.to);
                    }
                }
            }
        }
        touched.sort_unstable();
        frontier.clear();
        for &v in &touched {
            let (nd, pred, _, weight, origin) = best[v].take().expect("touched has a proposal");
            dist[v] = nd;
            updates.push(Update {
                round: round as u32,
                dist: nd,
                pred,
                weight,
                origin,
                prev: last[v],
            });
            last[v] = (updates.len() - 1) as u32;
            frontier.push(v);
        }
        touched.clear();
    }
    HopBoundedTree {
        source,
        budget,
        last,
        updates,
    }
}

/// `h(u,v)`: the fewest hops over all shortest `u`-`v` paths.
pub fn min_hops(g: &Graph, u: Vertex, v: Vertex) -> Option<usize> {
    hop_bounded_tree(g, &[], g.n().max(1), u).hops(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_path() -> Graph {
        Graph::new(4, false, [(0, 1, 1), (1, 2, 1), (2, 3, 1)]).unwrap()
    }

    #[test]
    fn budget_two_cannot_cross_path() {
        let t = hop_bounded_tree(&unit_path(), &[], 2, 0);
        assert_eq!(t.dist(3), INF);
        assert!(t.path(3).is_none());
    }

    #[test]
    fn budget_three_finds_path() {
        let t = hop_bounded_tree(&unit_path(), &[], 3, 0);
        assert_eq!(t.dist(3), 3);
        let verts: Vec<_> = std::iter::once(0)
            .chain(t.path(3).unwrap().iter().map(|a| a.to))
            .collect();
        assert_eq!(verts, vec![0, 1, 2, 3]);
    }

    #[test]
    fn extra_edge_shortens_hops() {
        let extra = [Edge { u: 0, v: 2, w: 2 }];
        let t = hop_bounded_tree(&unit_path(), &extra, 2, 0);
        assert_eq!(t.dist(3), 3);
        let p = t.path(3).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p[0].origin, ArcOrigin::Extra(0));
        assert_eq!((p[1].from, p[1].to), (2, 3));
    }

    #[test]
    fn later_cheaper_path_replaces_earlier() {
        // direct 0->3 costs 10, three hops cost 3
        let g = Graph::new(4, true, [(0, 3, 10), (0, 1, 1), (1, 2, 1), (2, 3, 1)]).unwrap();
        let t1 = hop_bounded_tree(&g, &[], 1, 0);
        assert_eq!(t1.dist(3), 10);
        let t3 = hop_bounded_tree(&g, &[], 3, 0);
        assert_eq!(t3.dist(3), 3);
        assert_eq!(t3.path(3).unwrap().len(), 3);
        // earlier-round values are still reachable through the history
        let t2 = hop_bounded_tree(&g, &[], 2, 0);
        assert_eq!(t2.dist(3), 10);
        assert_eq!(t2.path(3).unwrap().len(), 1);
    }

    #[test]
    fn min_hops_examples() {
        let tri = Graph::new(3, false, [(0, 1, 1), (1, 2, 1), (0, 2, 2)]).unwrap();
        assert_eq!(min_hops(&tri, 0, 2), Some(1));
        let path = Graph::new(6, false, (0..5).map(|i| (i, i + 1, 1))).unwrap();
        assert_eq!(min_hops(&path, 0, 5), Some(5));
        let split = Graph::new(3, true, [(0, 1, 1)]).unwrap();
        assert_eq!(min_hops(&split, 0, 2), None);
    }

    #[test]
    fn lower_predecessor_wins_ties() {
        // 0 -> {1,2} -> 3, both routes length 2
        let g = Graph::new(4, true, [(0, 1, 1), (0, 2, 1), (1, 3, 1), (2, 3, 1)]).unwrap();
        let p = hop_bounded_tree(&g, &[], 4, 0).path(3).unwrap();
        assert_eq!(p[1].from, 1);
    }
}
