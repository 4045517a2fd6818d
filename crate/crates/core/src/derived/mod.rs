//! Preservers, emulators and spanners derived from missing spanners.

mod pipeline;
mod slack;
mod sourcewise;
mod spanners;

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeId, Graph, Length, PairSet, Vertex, INF};
use crate::hopset::BetaSchedule;
use crate::missing::{MissingSpanner, WitnessPath};
use crate::paths::shortest_path_tree;
use crate::rational::Rational;

pub use pipeline::{
    directed_level_hopset, directed_preserver_pipeline, reachability_preserver_pipeline,
    undirected_hierarchy, undirected_preserver_pipeline, undirected_schedule_for,
};
pub use slack::{density_net, slack_spanner, slack_spanner_with, DensityNet};
pub use sourcewise::{partition_sources, sourcewise_spanner, sourcewise_spanner_partitioned};
pub use spanners::{
    emulator_from_hopset, spanner_from_emulator, weighted_near_additive_pipeline,
    weighted_near_additive_spanner, WEIGHTED_SLACK_CONST,
};

/// Retries allowed after a failed randomized construction.
pub const MAX_RETRIES: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubgraphKind {
    Preserver,
    ReachabilityPreserver,
    NearAdditiveSpanner,
    Emulator,
    Sourcewise,
    Slack,
}

/// The pairs a stretch claim ranges over.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StretchScope {
    AllPairs,
    Pairs(Vec<(Vertex, Vertex)>),
    Sourcewise(Vec<Vertex>),
    /// Each vertex against all but its `⌊εn⌋` nearest.
    Slack(Rational),
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub seed: u64,
    /// Seeds actually used, one per attempt.
    pub attempts: Vec<u64>,
    pub schedule: Option<BetaSchedule>,
    /// `|G'|` and `r` of the underlying missing spanner, if any.
    pub missing_size: Option<usize>,
    pub r: Option<usize>,
    pub pair_count: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubgraphResult {
    pub kind: SubgraphKind,
    pub n: usize,
    pub directed: bool,
    /// Edges of `G` kept.
    pub edges: BTreeSet<EdgeId>,
    /// Weighted non-`G` edges; only emulators have any.
    pub extra: Vec<Edge>,
    /// Claimed `dist <= alpha · dist_G + beta_add` over `scope`.
    pub alpha: Rational,
    pub beta_add: Length,
    pub scope: StretchScope,
    /// Demand pairs with no path in `G`.
    pub skipped: Vec<(Vertex, Vertex)>,
    pub provenance: Provenance,
}

#[derive(Serialize, Deserialize)]
struct ClaimHeader {
    kind: SubgraphKind,
    n: usize,
    directed: bool,
    alpha: Rational,
    beta_add: Length,
    scope: StretchScope,
    skipped: Vec<(Vertex, Vertex)>,
    provenance: Provenance,
}

impl SubgraphResult {
    pub fn size(&self) -> usize {
        self.edges.len() + self.extra.len()
    }

    /// The result as a standalone graph (emulator edges included).
    pub fn to_graph(&self, g: &Graph) -> Graph {
        g.with_extra(&self.edges, self.extra.iter().copied())
    }

    /// `# {json claim header}` followed by `u v w` lines; extra edges carry a
    /// trailing `x`.
    pub fn to_text(&self, g: &Graph) -> Result<String> {
        let header = ClaimHeader {
            kind: self.kind,
            n: self.n,
            directed: self.directed,
            alpha: self.alpha.clone(),
            beta_add: self.beta_add,
            scope: self.scope.clone(),
            skipped: self.skipped.clone(),
            provenance: self.provenance.clone(),
        };
        let mut out = format!("# {}\n", serde_json::to_string(&header)?);
        for &id in &self.edges {
            let e = g.edge(id);
            let _ = writeln!(out, "{} {} {}", e.u, e.v, e.w);
        }
        for e in &self.extra {
            let _ = writeln!(out, "{} {} {} x", e.u, e.v, e.w);
        }
        Ok(out)
    }

    pub fn from_text(g: &Graph, text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let header: ClaimHeader = match lines.next() {
            Some((_, l)) => match l.strip_prefix("# ") {
                Some(json) => serde_json::from_str(json)?,
                None => return Err(Error::Parse { line: 1, message: "missing claim header".into() }),
            },
            None => return Err(Error::Parse { line: 0, message: "empty result file".into() }),
        };
        let mut edges = BTreeSet::new();
        let mut extra = Vec::new();
        for (idx, raw) in lines {
            let f: Vec<&str> = raw.split_whitespace().collect();
            if f.is_empty() || f[0].starts_with('#') {
                continue;
            }
            let bad = || Error::Parse { line: idx + 1, message: format!("malformed edge '{raw}'") };
            if f.len() < 3 {
                return Err(bad());
            }
            let u: Vertex = f[0].parse().map_err(|_| bad())?;
            let v: Vertex = f[1].parse().map_err(|_| bad())?;
            let w: u64 = f[2].parse().map_err(|_| bad())?;
            if f.get(3) == Some(&"x") {
                extra.push(Edge { u, v, w });
                continue;
            }
            match g.edge_between(u, v) {
                Some(id) if g.edge(id).w == w => {
                    edges.insert(id);
                }
                _ => {
                    return Err(Error::Parse {
                        line: idx + 1,
                        message: format!("({u},{v},{w}) is not an edge of the graph"),
                    })
                }
            }
        }
        Ok(SubgraphResult {
            kind: header.kind,
            n: header.n,
            directed: header.directed,
            edges,
            extra,
            alpha: header.alpha,
            beta_add: header.beta_add,
            scope: header.scope,
            skipped: header.skipped,
            provenance: header.provenance,
        })
    }
}

/// Mixes `(seed, a, b)` into a fresh seed.
pub fn derive_seed(seed: u64, a: u64, b: u64) -> u64 {
    let mut z = seed ^ a.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ b.wrapping_mul(0xc2b2_ae3d_27d4_eb4f);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Runs `attempt` with a fresh seed until it stops failing with a
/// construction error, at most `1 + MAX_RETRIES` times.
pub fn with_retries<T>(seed: u64, mut attempt: impl FnMut(u64) -> Result<T>) -> Result<(T, Vec<u64>)> {
    let mut used = Vec::new();
    let mut last = None;
    for i in 0..=MAX_RETRIES {
        let s = if i == 0 { seed } else { derive_seed(seed, i as u64, 0) };
        used.push(s);
        match attempt(s) {
            Ok(v) => return Ok((v, used)),
            Err(e @ Error::Construction(_)) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

/// `G' ∪` the witness paths of every demand pair. Unreachable pairs are
/// skipped; a witness longer than `t·dist_G` is a construction error (the
/// randomized hopsets below it failed).
pub fn preserver_from_missing(g: &Graph, ms: &MissingSpanner, pairs: &PairSet) -> Result<SubgraphResult> {
    let mut by_source: Vec<(Vertex, Vec<Vertex>)> = Vec::new();
    let mut sorted: Vec<(Vertex, Vertex)> = pairs.iter().collect();
    sorted.sort_unstable();
    for (u, v) in sorted {
        match by_source.last_mut() {
            Some((s, ts)) if *s == u => ts.push(v),
            _ => by_source.push((u, vec![v])),
        }
    }
    let per_source: Vec<(Vec<WitnessPath>, Vec<(Vertex, Vertex)>)> = by_source
        .par_iter()
        .map(|(s, targets)| {
            let dist = shortest_path_tree(g, &[*s]).dist;
            let source = ms.witnesses_from(g, *s);
            let mut found = Vec::new();
            let mut skipped = Vec::new();
            for &t in targets {
                if dist[t] == INF {
                    skipped.push((*s, t));
                    continue;
                }
                let w = source.witness(t)?;
                if !ms.reachability && !ms.t.bounds(w.length, dist[t], 0) {
                    return Err(Error::construction(format!(
                        "witness for ({s},{t}) has length {} above {} · {}",
                        w.length, ms.t, dist[t]
                    )));
                }
                if w.missing.len() > ms.r {
                    return Err(Error::construction(format!(
                        "witness for ({s},{t}) misses {} edges, budget {}",
                        w.missing.len(),
                        ms.r
                    )));
                }
                found.push(w);
            }
            Ok((found, skipped))
        })
        .collect::<Result<_>>()?;

    let mut edges = ms.g_prime.clone();
    let mut skipped = Vec::new();
    for (found, sk) in per_source {
        for w in found {
            edges.extend(w.missing);
        }
        skipped.extend(sk);
    }
    let bound = ms.g_prime.len() + pairs.len() * ms.r;
    if edges.len() > bound {
        return Err(Error::construction(format!(
            "preserver has {} edges, above |G'| + p·r = {bound}",
            edges.len()
        )));
    }
    Ok(SubgraphResult {
        kind: if ms.reachability {
            SubgraphKind::ReachabilityPreserver
        } else {
            SubgraphKind::Preserver
        },
        n: g.n(),
        directed: g.is_directed(),
        edges,
        extra: Vec::new(),
        alpha: ms.t.clone(),
        beta_add: 0,
        scope: StretchScope::Pairs(pairs.pairs().to_vec()),
        skipped,
        provenance: Provenance {
            schedule: Some(ms.schedule.clone()),
            missing_size: Some(ms.g_prime.len()),
            r: Some(ms.r),
            pair_count: Some(pairs.len()),
            ..Provenance::default()
        },
    })
}

/// Pairwise distances of `g` restricted to `vertices`, as an undirected
/// clique on indices `0..vertices.len()` (unreachable pairs omitted).
pub(crate) fn distance_clique(g: &Graph, vertices: &[Vertex]) -> Result<Graph> {
    let rows: Vec<Vec<Length>> = vertices
        .par_iter()
        .map(|&s| shortest_path_tree(g, &[s]).dist)
        .collect();
    let mut edges = Vec::new();
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            let d = rows[i][vertices[j]];
            if d != INF {
                let w = u64::try_from(d)
                    .map_err(|_| Error::domain("distance exceeds the weight range"))?;
                edges.push((i, j, w));
            }
        }
    }
    Graph::new(vertices.len(), false, edges)
}
