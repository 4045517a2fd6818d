//! End-to-end preserver pipelines: schedule, hopset hierarchy, missing
//! spanner, witness completion.

use super::{derive_seed, preserver_from_missing, with_retries, SubgraphResult};
use crate::error::{Error, Result};
use crate::graph::{Graph, PairSet};
use crate::hopset::{
    base_tcw, schedule_directed, schedule_undirected, shortcut_folklore, sublinear_from_superlinear,
    undirected_sublinear_hopset, ApproxMode, BaseAlgorithm, BetaSchedule, Hopset, TcwBase, Tradeoff,
    HOPBOUND_SLACK,
};
use crate::missing::hopsets_to_missing_spanner;
use crate::rational::Rational;

const WEIGHT_SAMPLE: usize = 100;

// Every simple path has at most n-1 hops, so such budgets need no hopset.
fn trivially_covered(g: &Graph, beta: usize) -> bool {
    beta + 1 >= g.n()
}

fn build_direct(g: &Graph, base: &dyn BaseAlgorithm, beta: usize, mode: &ApproxMode, seed: u64) -> Result<Hopset> {
    let h = base.build(g, beta, mode, seed)?;
    if h.beta > beta {
        return Err(Error::domain(format!(
            "base algorithm '{}' claims hopbound {} above the requested {beta}",
            base.name(),
            h.beta
        )));
    }
    Ok(h)
}

/// A hopset for one directed level whose claimed hopbound is at most `beta`.
///
/// Budgets within the base's native range call it directly; larger ones go
/// through [`sublinear_from_superlinear`] with the target scaled down until
/// the claim (which carries a factor 3 and the net hopbound) fits.
pub fn directed_level_hopset(
    g: &Graph,
    base: &dyn BaseAlgorithm,
    beta: usize,
    mode: &ApproxMode,
    seed: u64,
) -> Result<Hopset> {
    if trivially_covered(g, beta) {
        let mut h = Hopset::empty(beta, mode.clone());
        h.seed = seed;
        return Ok(h);
    }
    let native = (g.n() as f64).powf(base.tradeoff().b);
    let mut target = beta / HOPBOUND_SLACK;
    for _ in 0..16 {
        if (target as f64) <= native {
            return build_direct(g, base, beta, mode, seed);
        }
        let h = sublinear_from_superlinear(g, base, target, mode, seed)?;
        if h.beta <= beta {
            return Ok(h);
        }
        let scaled = (target as u128 * beta as u128 / h.beta as u128) as usize;
        target = scaled.min(target - 1);
    }
    build_direct(g, base, beta, mode, seed)
}

fn validated(g: &Graph, h: Hopset) -> Result<Hopset> {
    h.validate_weights(g, WEIGHT_SAMPLE)?;
    Ok(h)
}

/// Directed preserver for `pairs` with stretch at most `1 + eps` (exact when
/// `eps = 0`). Failed randomized constructions are retried with new seeds.
pub fn directed_preserver_pipeline(
    g: &Graph,
    pairs: &PairSet,
    base: &dyn BaseAlgorithm,
    eps: &Rational,
    seed: u64,
) -> Result<SubgraphResult> {
    let schedule = if g.n() < 2 {
        BetaSchedule::custom(g.n(), Vec::new())?
    } else {
        schedule_directed(g.n(), pairs.len().max(1), base.tradeoff(), eps)?
    };
    let (mut res, attempts) = with_retries(seed, |s| {
        let mut hierarchy = Vec::with_capacity(schedule.len());
        for i in 1..=schedule.len() {
            let mode = ApproxMode::from_epsilon(&schedule.eps(i))?;
            let h = directed_level_hopset(g, base, schedule.beta(i), &mode, derive_seed(s, 1, i as u64))?;
            hierarchy.push(validated(g, h)?);
        }
        let ms = hopsets_to_missing_spanner(g, &hierarchy, &schedule)?;
        preserver_from_missing(g, &ms, pairs)
    })?;
    res.provenance.seed = seed;
    res.provenance.attempts = attempts;
    Ok(res)
}

/// Reachability preserver: the directed pipeline over shortcut sets, with
/// length checks switched off.
pub fn reachability_preserver_pipeline(g: &Graph, pairs: &PairSet, seed: u64) -> Result<SubgraphResult> {
    if !g.is_directed() {
        return Err(Error::domain("reachability preserver needs a directed graph"));
    }
    let schedule = if g.n() < 2 {
        BetaSchedule::custom(g.n(), Vec::new())?
    } else {
        schedule_directed(g.n(), pairs.len().max(1), Tradeoff { a: 2.0, b: 0.0 }, &Rational::zero())?
    };
    let (mut res, attempts) = with_retries(seed, |s| {
        let mut hierarchy = Vec::with_capacity(schedule.len());
        for i in 1..=schedule.len() {
            let beta = schedule.beta(i);
            let level_seed = derive_seed(s, 2, i as u64);
            let d = beta / HOPBOUND_SLACK;
            let h = if trivially_covered(g, beta) {
                Hopset::empty(beta, ApproxMode::Reachability)
            } else if d >= 1 {
                shortcut_folklore(g, d, level_seed)?
            } else {
                let mut h = base_tcw(g);
                h.mode = ApproxMode::Reachability;
                h
            };
            hierarchy.push(h);
        }
        let ms = hopsets_to_missing_spanner(g, &hierarchy, &schedule)?;
        preserver_from_missing(g, &ms, pairs)
    })?;
    res.provenance.seed = seed;
    res.provenance.attempts = attempts;
    Ok(res)
}

/// Undirected schedule whose total stretch stays within `1 + eps`: the
/// smallest `L` such that per-level `eps/(2L)` needs at most `L` levels.
pub fn undirected_schedule_for(n: usize, k: usize, eps: &Rational) -> Result<BetaSchedule> {
    if !eps.is_positive() || *eps >= Rational::one() {
        return Err(Error::domain(format!("epsilon {eps} outside (0,1)")));
    }
    if n < 2 {
        return BetaSchedule::custom(n, Vec::new());
    }
    let mut last = None;
    for budget in 1..=256u64 {
        let per_level = eps / &Rational::from(2 * budget);
        let s = schedule_undirected(n, k, &per_level)?;
        if s.len() as u64 <= budget {
            return Ok(s);
        }
        last = Some(s);
    }
    last.ok_or_else(|| Error::domain("no undirected schedule found"))
}

/// Level hopsets for an undirected schedule: hop radius `D_i` chosen so the
/// claim `3·β'·D_i` stays within `β_i`.
pub fn undirected_hierarchy(
    g: &Graph,
    base: &dyn BaseAlgorithm,
    schedule: &BetaSchedule,
    seed: u64,
) -> Result<Vec<Hopset>> {
    let net_bound = base.tradeoff().native_hopbound(g.n());
    let mut out = Vec::with_capacity(schedule.len());
    for i in 1..=schedule.len() {
        let beta = schedule.beta(i);
        let mode = ApproxMode::from_epsilon(&schedule.eps(i))?;
        let level_seed = derive_seed(seed, 3, i as u64);
        let radius = beta / (HOPBOUND_SLACK * net_bound);
        let h = if trivially_covered(g, beta) {
            Hopset::empty(beta, mode)
        } else if radius >= 1 {
            undirected_sublinear_hopset(g, base, radius, &mode, level_seed)?
        } else {
            build_direct(g, base, beta, &mode, level_seed)?
        };
        out.push(validated(g, h)?);
    }
    Ok(out)
}

/// Undirected `(1 + eps)`-preserver through the undirected schedule with
/// parameter `k` and the closure base.
pub fn undirected_preserver_pipeline(
    g: &Graph,
    pairs: &PairSet,
    k: usize,
    eps: &Rational,
    seed: u64,
) -> Result<SubgraphResult> {
    if g.is_directed() {
        return Err(Error::domain("undirected preserver needs an undirected graph"));
    }
    let schedule = undirected_schedule_for(g.n(), k, eps)?;
    let (mut res, attempts) = with_retries(seed, |s| {
        let hierarchy = undirected_hierarchy(g, &TcwBase, &schedule, s)?;
        let ms = hopsets_to_missing_spanner(g, &hierarchy, &schedule)?;
        preserver_from_missing(g, &ms, pairs)
    })?;
    res.provenance.seed = seed;
    res.provenance.attempts = attempts;
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_graph, GeneratorSpec, INF};
    use crate::paths::{apsp_exact, shortest_path_tree};

    #[test]
    fn single_pair_on_path() {
        let g = Graph::new(5, false, (0..4).map(|i| (i, i + 1, 2))).unwrap();
        let pairs = PairSet::new(5, [(0, 4)]).unwrap();
        let res = undirected_preserver_pipeline(&g, &pairs, 1, &Rational::new(1, 2), 1).unwrap();
        assert_eq!(res.edges.len(), 4);
    }

    #[test]
    fn directed_exact_pipeline_preserves_pairs() {
        let g = generate_graph(&GeneratorSpec::random_dag(80, 0.08).weights(6).seed(12)).unwrap();
        let pairs = PairSet::random(80, 12, 3).unwrap();
        let res = directed_preserver_pipeline(&g, &pairs, &TcwBase, &Rational::zero(), 9).unwrap();
        let h = res.to_graph(&g);
        let dg = apsp_exact(&g);
        let dh = apsp_exact(&h);
        for (u, v) in pairs.iter() {
            assert_eq!(dg.get(u, v), dh.get(u, v));
        }
        assert_eq!(res.alpha, Rational::one());
        let bound = res.provenance.missing_size.unwrap() + 12 * res.provenance.r.unwrap();
        assert!(res.size() <= bound);
    }

    #[test]
    fn one_pair_gives_shortest_path() {
        let g = generate_graph(&GeneratorSpec::random_dag(40, 0.1).weights(4).seed(2)).unwrap();
        let pairs = PairSet::new(40, [(0, 39)]).unwrap();
        let res = directed_preserver_pipeline(&g, &pairs, &TcwBase, &Rational::zero(), 1).unwrap();
        let d = shortest_path_tree(&g, &[0]).dist[39];
        assert_eq!(shortest_path_tree(&res.to_graph(&g), &[0]).dist[39], d);
    }

    #[test]
    fn reachability_pipeline_keeps_reachability() {
        let g = generate_graph(&GeneratorSpec::random_dag(100, 0.03).seed(5)).unwrap();
        let pairs = PairSet::random(100, 20, 8).unwrap();
        let res = reachability_preserver_pipeline(&g, &pairs, 4).unwrap();
        let h = res.to_graph(&g);
        for (u, v) in pairs.iter() {
            let before = shortest_path_tree(&g, &[u]).dist[v] != INF;
            let after = shortest_path_tree(&h, &[u]).dist[v] != INF;
            assert_eq!(before, after);
        }
        let undirected = Graph::new(3, false, [(0, 1, 1)]).unwrap();
        assert!(reachability_preserver_pipeline(&undirected, &PairSet::default(), 0).is_err());
    }

    #[test]
    fn undirected_schedule_budget_fits() {
        let eps = Rational::new(1, 2);
        let s = undirected_schedule_for(1 << 12, 2, &eps).unwrap();
        assert!(s.stretch() <= &Rational::one() + &eps);
    }

    #[test]
    fn level_hopset_claim_fits_budget() {
        let g = generate_graph(&GeneratorSpec::random_dag(200, 0.02).seed(1)).unwrap();
        for beta in [2usize, 5, 9, 40, 150, 199] {
            let h = directed_level_hopset(&g, &TcwBase, beta, &ApproxMode::Exact, 3).unwrap();
            assert!(h.beta <= beta, "beta={beta} claim={}", h.beta);
        }
    }
}
