//! Emulators and near-additive spanners from hopsets.

use std::collections::BTreeSet;

use super::{derive_seed, with_retries, Provenance, StretchScope, SubgraphKind, SubgraphResult};
use super::pipeline::{undirected_hierarchy, undirected_schedule_for};
use crate::error::{Error, Result};
use crate::graph::{Graph, Length};
use crate::hopset::{BetaSchedule, Hopset, TcwBase};
use crate::missing::hopsets_to_missing_spanner;
use crate::paths::{greedy_spanner, shortest_path_tree};
use crate::rational::Rational;

/// Additive constant of the weighted near-additive spanner:
/// `dist <= t·d + 4·β_ℓ·2^k·W_max`.
pub const WEIGHTED_SLACK_CONST: u128 = 4;

fn require_unweighted_undirected(g: &Graph) -> Result<()> {
    if g.is_directed() {
        return Err(Error::domain("needs an undirected graph"));
    }
    if !g.is_unit_weighted() {
        return Err(Error::domain("needs an unweighted graph"));
    }
    Ok(())
}

/// `H ∪` a greedy `(2k-1)`-spanner: a `(1+ε, (2k-1)β)` emulator.
pub fn emulator_from_hopset(g: &Graph, h: &Hopset, k: usize) -> Result<SubgraphResult> {
    require_unweighted_undirected(g)?;
    if h.mode.is_reachability() {
        return Err(Error::domain("emulator needs a distance hopset"));
    }
    let spanner = greedy_spanner(g, k)?;
    Ok(SubgraphResult {
        kind: SubgraphKind::Emulator,
        n: g.n(),
        directed: false,
        edges: spanner,
        extra: h.edges.clone(),
        alpha: h.mode.stretch(),
        beta_add: (2 * k as Length - 1) * h.beta as Length,
        scope: StretchScope::AllPairs,
        skipped: Vec::new(),
        provenance: Provenance {
            seed: h.seed,
            ..Provenance::default()
        },
    })
}

/// Subgraph `(1+2ε, (2k-1)β)` spanner: the emulator with every hopset edge
/// of weight at most `10kβ/ε` replaced by a shortest path of `G`.
pub fn spanner_from_emulator(g: &Graph, h: &Hopset, k: usize, eps: &Rational) -> Result<SubgraphResult> {
    require_unweighted_undirected(g)?;
    if !eps.is_positive() || *eps >= Rational::one() {
        return Err(Error::domain(format!("epsilon {eps} outside (0,1)")));
    }
    if h.mode.epsilon() > *eps {
        return Err(Error::domain(format!(
            "hopset epsilon {} exceeds the spanner epsilon {eps}",
            h.mode.epsilon()
        )));
    }
    let emulator = emulator_from_hopset(g, h, k)?;
    let limit = &Rational::integer(10 * k as u128 * h.beta as u128) / eps;
    let mut edges: BTreeSet<_> = emulator.edges;
    let mut by_source: Vec<(usize, Vec<usize>)> = Vec::new();
    for e in h.edges.iter().filter(|e| Rational::from(e.w) <= limit) {
        match by_source.last_mut() {
            Some((s, ts)) if *s == e.u => ts.push(e.v),
            _ => by_source.push((e.u, vec![e.v])),
        }
    }
    for (s, targets) in by_source {
        let tree = shortest_path_tree(g, &[s]);
        for t in targets {
            if let Some(path) = tree.edges_to(t) {
                edges.extend(path);
            }
        }
    }
    Ok(SubgraphResult {
        kind: SubgraphKind::NearAdditiveSpanner,
        n: g.n(),
        directed: false,
        edges,
        extra: Vec::new(),
        alpha: &Rational::one() + &(&Rational::from(2) * eps),
        beta_add: emulator.beta_add,
        scope: StretchScope::AllPairs,
        skipped: Vec::new(),
        provenance: emulator.provenance,
    })
}

/// `G' ∪` a greedy `(2^{k+2}-3)`-spanner for weighted undirected `g`; every
/// missing witness edge is bridged by the spanner.
pub fn weighted_near_additive_spanner(
    g: &Graph,
    schedule: &BetaSchedule,
    hopsets: &[Hopset],
    k: usize,
) -> Result<SubgraphResult> {
    if g.is_directed() {
        return Err(Error::domain("weighted near-additive spanner needs an undirected graph"));
    }
    if k == 0 || k > 30 {
        return Err(Error::domain(format!("k={k} outside [1, 30]")));
    }
    let ms = hopsets_to_missing_spanner(g, hopsets, schedule)?;
    let spanner = greedy_spanner(g, (1usize << (k + 1)) - 1)?;
    let mut edges = ms.g_prime.clone();
    edges.extend(spanner);
    Ok(SubgraphResult {
        kind: SubgraphKind::NearAdditiveSpanner,
        n: g.n(),
        directed: false,
        edges,
        extra: Vec::new(),
        alpha: ms.t.clone(),
        beta_add: WEIGHTED_SLACK_CONST * ms.r as Length * (1u128 << k) * g.w_max() as Length,
        scope: StretchScope::AllPairs,
        skipped: Vec::new(),
        provenance: Provenance {
            seed: hopsets.first().map_or(0, |h| h.seed),
            schedule: Some(schedule.clone()),
            missing_size: Some(ms.g_prime.len()),
            r: Some(ms.r),
            ..Provenance::default()
        },
    })
}

/// Builds the undirected schedule and hierarchy, then
/// [`weighted_near_additive_spanner`].
pub fn weighted_near_additive_pipeline(g: &Graph, k: usize, eps: &Rational, seed: u64) -> Result<SubgraphResult> {
    if g.is_directed() {
        return Err(Error::domain("weighted near-additive spanner needs an undirected graph"));
    }
    let schedule = undirected_schedule_for(g.n(), k, eps)?;
    let (mut res, attempts) = with_retries(seed, |s| {
        let hopsets = undirected_hierarchy(g, &TcwBase, &schedule, derive_seed(s, 4, 0))?;
        weighted_near_additive_spanner(g, &schedule, &hopsets, k)
    })?;
    res.provenance.seed = seed;
    res.provenance.attempts = attempts;
    Ok(res)
}
