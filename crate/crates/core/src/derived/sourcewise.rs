//! Sourcewise spanners: stretch guaranteed on `S × V`.

use super::pipeline::undirected_preserver_pipeline;
use super::{distance_clique, StretchScope, SubgraphKind, SubgraphResult};
use crate::error::{Error, Result};
use crate::graph::{Graph, PairSet, Vertex};
use crate::paths::{greedy_spanner, shortest_path_tree};
use crate::rational::Rational;

fn sorted_sources(g: &Graph, sources: &[Vertex]) -> Result<Vec<Vertex>> {
    if sources.is_empty() {
        return Err(Error::domain("source set is empty"));
    }
    if let Some(&s) = sources.iter().find(|&&s| s >= g.n()) {
        return Err(Error::domain(format!("source {s} out of range")));
    }
    let mut s = sources.to_vec();
    s.sort_unstable();
    s.dedup();
    Ok(s)
}

/// Greedy `(2k-1)`-spanner of the source distance clique, each of its edges
/// preserved within `1+eps`, plus a shortest path forest rooted at `S`.
/// Claimed stretch on `S × V` is `(4k-1)·t` with `t` the preserver's.
pub fn sourcewise_spanner(
    g: &Graph,
    sources: &[Vertex],
    k: usize,
    eps: &Rational,
    seed: u64,
) -> Result<SubgraphResult> {
    if g.is_directed() {
        return Err(Error::domain("sourcewise spanner needs an undirected graph"));
    }
    let sources = sorted_sources(g, sources)?;
    let clique = distance_clique(g, &sources)?;
    let spanner = greedy_spanner(&clique, k)?;
    let pairs = PairSet::new(
        g.n(),
        spanner.iter().map(|&id| {
            let e = clique.edge(id);
            (sources[e.u], sources[e.v])
        }),
    )?;
    let mut res = undirected_preserver_pipeline(g, &pairs, 1, eps, seed)?;
    let t = res.alpha.clone();
    res.edges.extend(shortest_path_tree(g, &sources).tree_edges());
    res.kind = SubgraphKind::Sourcewise;
    res.alpha = &Rational::from(4 * k as u64 - 1) * &t;
    res.scope = StretchScope::Sourcewise(sources);
    res.skipped.clear();
    Ok(res)
}

/// Splits sorted `S` into consecutive parts of at most `⌊n^{(k-1)/k}⌋`
/// sources (at least one).
pub fn partition_sources(n: usize, sources: &[Vertex], k: usize) -> Vec<Vec<Vertex>> {
    let cap = ((n as f64).powf((k as f64 - 1.0) / k as f64) + 1e-9).floor().max(1.0) as usize;
    let mut s = sources.to_vec();
    s.sort_unstable();
    s.dedup();
    s.chunks(cap).map(<[Vertex]>::to_vec).collect()
}

/// Union of [`sourcewise_spanner`] at `k-1` over a partition of `S`;
/// stretch `(4k-5)·t`.
pub fn sourcewise_spanner_partitioned(
    g: &Graph,
    sources: &[Vertex],
    k: usize,
    eps: &Rational,
    seed: u64,
) -> Result<SubgraphResult> {
    if k < 2 {
        return Err(Error::domain("partitioned sourcewise spanner needs k >= 2"));
    }
    let all = sorted_sources(g, sources)?;
    let parts = partition_sources(g.n(), &all, k);
    let mut out: Option<SubgraphResult> = None;
    for (i, part) in parts.iter().enumerate() {
        let res = sourcewise_spanner(g, part, k - 1, eps, super::derive_seed(seed, 5, i as u64))?;
        out = Some(match out {
            None => res,
            Some(mut acc) => {
                acc.edges.extend(res.edges);
                if res.alpha > acc.alpha {
                    acc.alpha = res.alpha;
                }
                acc.provenance.attempts.extend(res.provenance.attempts);
                acc
            }
        });
    }
    let mut res = out.expect("nonempty partition");
    res.scope = StretchScope::Sourcewise(all);
    res.provenance.seed = seed;
    Ok(res)
}
