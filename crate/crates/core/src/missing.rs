//! Bounded-missing spanners built from a hopset hierarchy.
//!
//! Level `i` routes every new edge of `H_i` along a shortest path with at
//! most `β_{i-1}` hops in `G ∪ H_{i-1}` and keeps that path's `G`-edges. A
//! witness for an arbitrary pair is the top-level `β_ℓ`-hop path in
//! `G ∪ H_ℓ` with every hopset arc expanded through the stored paths, so only
//! the top-level `G`-edges can fall outside `G'`.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{canonical, Edge, EdgeId, Graph, Length, Vertex, INF};
use crate::hopset::{BetaSchedule, Hopset};
use crate::paths::{apsp_hop_bounded, hop_bounded_tree, ArcOrigin, HopBoundedTree, PathArc};
use crate::rational::Rational;

/// Route of one hopset edge at the level where it first appeared.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StoredPath {
    pub level: usize,
    pub vertices: Vec<Vertex>,
    /// `Some(id)` for a `G`-edge step, `None` for a lower-level hopset edge.
    pub steps: Vec<Option<EdgeId>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessPath {
    pub vertices: Vec<Vertex>,
    /// `G`-edges in walk order.
    pub edges: Vec<EdgeId>,
    pub length: Length,
    /// `G`-edges of the top-level path before expansion.
    pub top_level_graph_edges: Vec<EdgeId>,
    /// Edges of the walk outside `G'`.
    pub missing: Vec<EdgeId>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "Repr", try_from = "Repr")]
pub struct MissingSpanner {
    pub n: usize,
    pub directed: bool,
    pub g_prime: BTreeSet<EdgeId>,
    /// Missing budget `β_ℓ`.
    pub r: usize,
    /// Stretch `Π (1 + ε_i)`; 1 for reachability hierarchies.
    pub t: Rational,
    pub reachability: bool,
    pub schedule: BetaSchedule,
    pub hierarchy: Vec<Hopset>,
    paths: BTreeMap<(Vertex, Vertex), StoredPath>,
}

#[derive(Serialize, Deserialize)]
struct Repr {
    n: usize,
    directed: bool,
    g_prime: BTreeSet<EdgeId>,
    r: usize,
    t: Rational,
    reachability: bool,
    schedule: BetaSchedule,
    hierarchy: Vec<Hopset>,
    paths: Vec<(Vertex, Vertex, StoredPath)>,
}

impl From<MissingSpanner> for Repr {
    fn from(m: MissingSpanner) -> Self {
        Repr {
            n: m.n,
            directed: m.directed,
            g_prime: m.g_prime,
            r: m.r,
            t: m.t,
            reachability: m.reachability,
            schedule: m.schedule,
            hierarchy: m.hierarchy,
            paths: m.paths.into_iter().map(|((u, v), p)| (u, v, p)).collect(),
        }
    }
}

impl TryFrom<Repr> for MissingSpanner {
    type Error = String;
    fn try_from(r: Repr) -> std::result::Result<Self, String> {
        if r.hierarchy.len() != r.schedule.len() {
            return Err("hierarchy and schedule lengths differ".into());
        }
        Ok(MissingSpanner {
            n: r.n,
            directed: r.directed,
            g_prime: r.g_prime,
            r: r.r,
            t: r.t,
            reachability: r.reachability,
            schedule: r.schedule,
            hierarchy: r.hierarchy,
            paths: r.paths.into_iter().map(|(u, v, p)| ((u, v), p)).collect(),
        })
    }
}

/// Builds `G'` from hopsets `H_1..H_ℓ`; `hierarchy[i-1]` must claim a
/// hopbound of at most `schedule.beta(i)`.
pub fn hopsets_to_missing_spanner(
    g: &Graph,
    hierarchy: &[Hopset],
    schedule: &BetaSchedule,
) -> Result<MissingSpanner> {
    if hierarchy.len() != schedule.len() {
        return Err(Error::domain(format!(
            "hierarchy has {} hopsets but schedule has {} levels",
            hierarchy.len(),
            schedule.len()
        )));
    }
    if schedule.n != g.n() {
        return Err(Error::domain(format!("schedule is for n={}, graph has n={}", schedule.n, g.n())));
    }
    for (i, h) in hierarchy.iter().enumerate() {
        if h.beta > schedule.beta(i + 1) {
            return Err(Error::domain(format!(
                "level {} hopset claims hopbound {} above beta_{} = {}",
                i + 1,
                h.beta,
                i + 1,
                schedule.beta(i + 1)
            )));
        }
    }
    let reachability = hierarchy.iter().any(|h| h.mode.is_reachability());
    let directed = g.is_directed();
    let mut paths: BTreeMap<(Vertex, Vertex), StoredPath> = BTreeMap::new();
    let mut g_prime = BTreeSet::new();
    let mut size_bound: usize = 0;
    let empty: Vec<Edge> = Vec::new();

    for level in 1..=hierarchy.len() {
        let budget = schedule.beta(level - 1);
        let stretch = &Rational::one() + &schedule.eps(level - 1);
        let below = if level == 1 { &empty } else { &hierarchy[level - 2].edges };
        let mut seen = HashSet::new();
        let fresh: Vec<Edge> = hierarchy[level - 1]
            .edges
            .iter()
            .map(|e| {
                let (u, v) = canonical(directed, e.u, e.v);
                Edge { u, v, w: e.w }
            })
            .filter(|e| !paths.contains_key(&(e.u, e.v)) && seen.insert((e.u, e.v)))
            .collect();
        size_bound += hierarchy[level - 1].edges.len() * budget;
        if fresh.is_empty() {
            continue;
        }
        let mut sources: Vec<Vertex> = fresh.iter().map(|e| e.u).collect();
        sources.sort_unstable();
        sources.dedup();
        let table = apsp_hop_bounded(g, below, budget, Some(&sources));
        let routed: Vec<(Edge, Vec<PathArc>)> = fresh
            .par_iter()
            .map(|e| {
                let arcs = table.path(e.u, e.v).ok_or_else(|| {
                    Error::construction(format!(
                        "level {level} hopset edge ({},{}) has no path of at most {budget} hops in G ∪ H_{}",
                        e.u,
                        e.v,
                        level - 1
                    ))
                })?;
                let len: Length = arcs.iter().map(|a| a.weight as Length).sum();
                if !reachability && !stretch.bounds(len, e.w as Length, 0) {
                    return Err(Error::construction(format!(
                        "level {level} hopset edge ({},{}) of weight {} has best {budget}-hop path of length {len}, above factor {stretch}",
                        e.u, e.v, e.w
                    )));
                }
                Ok((*e, arcs))
            })
            .collect::<Result<_>>()?;
        for (e, arcs) in routed {
            let mut vertices = vec![e.u];
            let mut steps = Vec::with_capacity(arcs.len());
            for a in &arcs {
                vertices.push(a.to);
                match a.origin {
                    ArcOrigin::Graph(id) => {
                        g_prime.insert(id);
                        steps.push(Some(id));
                    }
                    ArcOrigin::Extra(_) => steps.push(None),
                }
            }
            paths.insert((e.u, e.v), StoredPath { level, vertices, steps });
        }
    }
    if g_prime.len() > size_bound {
        return Err(Error::construction(format!(
            "|G'| = {} exceeds the size bound {size_bound}",
            g_prime.len()
        )));
    }
    Ok(MissingSpanner {
        n: g.n(),
        directed,
        g_prime,
        r: schedule.final_beta(),
        t: if reachability { Rational::one() } else { schedule.stretch() },
        reachability,
        schedule: schedule.clone(),
        hierarchy: hierarchy.to_vec(),
        paths,
    })
}

/// Top-level search from one source, reusable for many targets.
pub struct WitnessSource<'a> {
    ms: &'a MissingSpanner,
    g: &'a Graph,
    tree: HopBoundedTree,
}

impl WitnessSource<'_> {
    pub fn witness(&self, v: Vertex) -> Result<WitnessPath> {
        let s = self.tree.source();
        let arcs = match self.tree.path(v) {
            Some(a) => a,
            None => {
                let reachable = crate::paths::shortest_path_tree(self.g, &[s]).dist[v] != INF;
                return Err(if reachable {
                    Error::construction(format!(
                        "({s},{v}) is reachable but has no {}-hop path in G ∪ H_ℓ",
                        self.ms.r
                    ))
                } else {
                    Error::domain(format!("{v} is not reachable from {s}"))
                });
            }
        };
        let mut vertices = vec![s];
        let mut edges = Vec::new();
        let mut top = Vec::new();
        for a in &arcs {
            match a.origin {
                ArcOrigin::Graph(id) => {
                    vertices.push(a.to);
                    edges.push(id);
                    top.push(id);
                }
                ArcOrigin::Extra(_) => self.ms.expand(a.from, a.to, &mut vertices, &mut edges)?,
            }
        }
        let length = edges.iter().map(|&id| self.g.edge(id).w as Length).sum();
        let missing = edges
            .iter()
            .copied()
            .filter(|id| !self.ms.g_prime.contains(id))
            .collect();
        Ok(WitnessPath {
            vertices,
            edges,
            length,
            top_level_graph_edges: top,
            missing,
        })
    }
}

impl MissingSpanner {
    pub fn len(&self) -> usize {
        self.g_prime.len()
    }

    pub fn is_empty(&self) -> bool {
        self.g_prime.is_empty()
    }

    /// `Σ |H_i| · β_{i-1}`.
    pub fn size_bound(&self) -> usize {
        self.hierarchy
            .iter()
            .enumerate()
            .map(|(i, h)| h.edges.len() * self.schedule.beta(i))
            .sum()
    }

    pub fn stored_path(&self, u: Vertex, v: Vertex) -> Option<&StoredPath> {
        self.paths.get(&canonical(self.directed, u, v))
    }

    pub fn stored_paths(&self) -> impl Iterator<Item = ((Vertex, Vertex), &StoredPath)> {
        self.paths.iter().map(|(&k, p)| (k, p))
    }

    /// Drops an edge from `G'` (used to test that verification notices).
    pub fn remove_edge(&mut self, id: EdgeId) -> bool {
        self.g_prime.remove(&id)
    }

    pub fn subgraph(&self, g: &Graph) -> Graph {
        g.subgraph(&self.g_prime)
    }

    pub fn witnesses_from<'a>(&'a self, g: &'a Graph, s: Vertex) -> WitnessSource<'a> {
        let top: &[Edge] = self.hierarchy.last().map(|h| h.edges.as_slice()).unwrap_or(&[]);
        WitnessSource {
            ms: self,
            g,
            tree: hop_bounded_tree(g, top, self.r.max(1), s),
        }
    }

    pub fn witness_path(&self, g: &Graph, u: Vertex, v: Vertex) -> Result<WitnessPath> {
        if u >= g.n() || v >= g.n() {
            return Err(Error::domain(format!("pair ({u},{v}) out of range")));
        }
        self.witnesses_from(g, u).witness(v)
    }

    // Appends the expansion of hopset edge `a -> b`, excluding `a` itself.
    fn expand(&self, a: Vertex, b: Vertex, vertices: &mut Vec<Vertex>, edges: &mut Vec<EdgeId>) -> Result<()> {
        let key = canonical(self.directed, a, b);
        let stored = self.paths.get(&key).ok_or_else(|| {
            Error::construction(format!("no stored path for hopset edge ({a},{b})"))
        })?;
        let hops = stored.steps.len();
        let forward = key == (a, b);
        for j in 0..hops {
            let (idx, x, y) = if forward {
                (j, stored.vertices[j], stored.vertices[j + 1])
            } else {
                let k = hops - 1 - j;
                (k, stored.vertices[k + 1], stored.vertices[k])
            };
            match stored.steps[idx] {
                Some(id) => {
                    vertices.push(y);
                    edges.push(id);
                }
                None => self.expand(x, y, vertices, edges)?,
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopset::{base_tcw, folklore_exact_hopset, ApproxMode, ScheduleLevel};

    fn path4() -> Graph {
        Graph::new(4, false, [(0, 1, 1), (1, 2, 1), (2, 3, 1)]).unwrap()
    }

    fn level(beta: usize) -> ScheduleLevel {
        ScheduleLevel { beta, eps: Rational::zero() }
    }

    #[test]
    fn single_exact_level_on_path() {
        let g = path4();
        let sched = BetaSchedule::custom(4, vec![level(1)]).unwrap();
        let ms = hopsets_to_missing_spanner(&g, &[base_tcw(&g)], &sched).unwrap();
        assert_eq!(ms.g_prime.len(), 3);
        assert_eq!(ms.r, 1);
        assert_eq!(ms.t, Rational::one());
        let w = ms.witness_path(&g, 0, 3).unwrap();
        assert_eq!(w.vertices, vec![0, 1, 2, 3]);
        assert!(w.missing.is_empty());
        let back = ms.witness_path(&g, 3, 0).unwrap();
        assert_eq!(back.vertices, vec![3, 2, 1, 0]);
    }

    #[test]
    fn empty_hierarchy_is_vacuous() {
        let g = path4();
        let sched = BetaSchedule::custom(4, vec![]).unwrap();
        let ms = hopsets_to_missing_spanner(&g, &[], &sched).unwrap();
        assert!(ms.g_prime.is_empty());
        assert_eq!(ms.r, 4);
        let w = ms.witness_path(&g, 0, 3).unwrap();
        assert_eq!(w.missing.len(), 3);
    }

    #[test]
    fn length_mismatch_rejected() {
        let g = path4();
        let sched = BetaSchedule::custom(4, vec![level(2), level(1)]).unwrap();
        assert!(matches!(
            hopsets_to_missing_spanner(&g, &[base_tcw(&g)], &sched),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn false_hopbound_claim_is_caught() {
        // level 2 has budget beta_1 = 1 through an empty H_1, so (0,3) cannot be routed
        let g = path4();
        let sched = BetaSchedule::custom(4, vec![level(1), level(1)]).unwrap();
        let h1 = Hopset::empty(1, ApproxMode::Exact);
        let h2 = base_tcw(&g);
        let err = hopsets_to_missing_spanner(&g, &[h1, h2], &sched).unwrap_err();
        assert!(matches!(err, Error::Construction(ref m) if m.contains("no path")), "{err}");
    }

    #[test]
    fn unreachable_pair_is_domain_error() {
        let g = Graph::new(3, true, [(0, 1, 1)]).unwrap();
        let sched = BetaSchedule::custom(3, vec![level(1)]).unwrap();
        let ms = hopsets_to_missing_spanner(&g, &[base_tcw(&g)], &sched).unwrap();
        assert!(matches!(ms.witness_path(&g, 1, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn two_levels_expand_to_graph_walks() {
        use crate::graph::{generate_graph, GeneratorSpec};
        let g = generate_graph(&GeneratorSpec::random_dag(60, 0.08).weights(7).seed(4)).unwrap();
        let h1 = folklore_exact_hopset(&g, 4, 1).unwrap();
        let h2 = base_tcw(&g);
        let sched = BetaSchedule::custom(60, vec![level(h1.beta), level(1)]).unwrap();
        let ms = hopsets_to_missing_spanner(&g, &[h1, h2], &sched).unwrap();
        assert!(ms.len() <= ms.size_bound());
        let dist = crate::paths::apsp_exact(&g);
        for u in 0..60 {
            let src = ms.witnesses_from(&g, u);
            for v in 0..60 {
                if u == v || dist.get(u, v) == INF {
                    continue;
                }
                let w = src.witness(v).unwrap();
                assert_eq!(g.walk_length(&w.vertices), Some(w.length));
                assert_eq!(w.length, dist.get(u, v));
                assert!(w.missing.len() <= 1);
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let g = path4();
        let sched = BetaSchedule::custom(4, vec![level(1)]).unwrap();
        let ms = hopsets_to_missing_spanner(&g, &[base_tcw(&g)], &sched).unwrap();
        let back = MissingSpanner::from_json(&ms.to_json().unwrap()).unwrap();
        assert_eq!(back, ms);
    }
}
