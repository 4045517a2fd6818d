//! Density nets and slack spanners.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use serde::{Deserialize, Serialize};

use super::pipeline::undirected_preserver_pipeline;
use super::{distance_clique, StretchScope, SubgraphKind, SubgraphResult};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Length, PairSet, Vertex, INF};
use crate::paths::{apsp_exact, greedy_spanner, DistanceMatrix};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityNet {
    pub net: Vec<Vertex>,
    /// `R(x, ε)`: distance from `x` to its `⌈εn⌉`-th nearest vertex, `x` included.
    pub radius: Vec<Length>,
}

fn density_net_from(dist: &DistanceMatrix, eps: &Rational) -> Result<DensityNet> {
    if !eps.is_positive() || *eps > Rational::one() {
        return Err(Error::domain(format!("epsilon {eps} outside (0,1]")));
    }
    let n = dist.n();
    let rank = (&Rational::from(n as u64) * eps).ceil_u128().max(1) as usize;
    let radius: Vec<Length> = (0..n)
        .map(|x| {
            let mut row = dist.row(x).to_vec();
            row.sort_unstable();
            row[rank - 1]
        })
        .collect();
    let mut order: Vec<Vertex> = (0..n).collect();
    order.sort_by_key(|&x| (radius[x], x));
    let mut net: Vec<Vertex> = Vec::new();
    for x in order {
        // an infinite radius is covered by anything, matching `∞ <= ∞`
        let covered = net.iter().any(|&y| {
            radius[x] == INF || dist.get(x, y) <= radius[x].saturating_mul(2)
        });
        if !covered {
            net.push(x);
        }
    }
    Ok(DensityNet { net, radius })
}

/// Greedy density net: vertices by nondecreasing `R(x, ε)` (ties by id),
/// each joining unless some net vertex lies within `2R(x, ε)`.
pub fn density_net(g: &Graph, eps: &Rational) -> Result<DensityNet> {
    if g.is_directed() {
        return Err(Error::domain("density net needs an undirected graph"));
    }
    density_net_from(&apsp_exact(g), eps)
}

// Shortest paths from every vertex to its nearest net vertex, ties to the
// lowest net id; returns the union of those paths.
fn nearest_net_forest(g: &Graph, net: &[Vertex]) -> BTreeSet<EdgeId> {
    let n = g.n();
    let mut key: Vec<(Length, Vertex)> = vec![(INF, usize::MAX); n];
    let mut parent: Vec<Option<EdgeId>> = vec![None; n];
    let mut heap = BinaryHeap::new();
    for &s in net {
        key[s] = (0, s);
        heap.push(Reverse((0, s, s)));
    }
    while let Some(Reverse((d, root, u))) = heap.pop() {
        if (d, root) != key[u] {
            continue;
        }
        for &(v, e) in g.neighbors(u) {
            let cand = (d + g.edge(e).w as Length, root);
            if cand < key[v] {
                key[v] = cand;
                parent[v] = Some(e);
                heap.push(Reverse((cand.0, root, v)));
            }
        }
    }
    parent.into_iter().flatten().collect()
}

/// [`slack_spanner_with`] using preserver epsilon `1/4`.
pub fn slack_spanner(g: &Graph, eps: &Rational, k: usize, seed: u64) -> Result<SubgraphResult> {
    slack_spanner_with(g, eps, k, &Rational::new(1, 4), seed)
}

/// ε-slack spanner: nearest-net paths plus a `(1+eps_pres)`-preserver over the
/// edges of a greedy `(2k-1)`-spanner of the net distance clique. Claimed
/// stretch `5 + 6(2k-1)·t` against all but each vertex's `⌊εn⌋` nearest.
pub fn slack_spanner_with(
    g: &Graph,
    eps: &Rational,
    k: usize,
    eps_pres: &Rational,
    seed: u64,
) -> Result<SubgraphResult> {
    if g.is_directed() {
        return Err(Error::domain("slack spanner needs an undirected graph"));
    }
    if !eps.is_positive() || *eps >= Rational::one() {
        return Err(Error::domain(format!("epsilon {eps} outside (0,1)")));
    }
    let dist = apsp_exact(g);
    let dn = density_net_from(&dist, eps)?;
    let clique = distance_clique(g, &dn.net)?;
    let spanner = greedy_spanner(&clique, k)?;
    let pairs = PairSet::new(
        g.n(),
        spanner.iter().map(|&id| {
            let e = clique.edge(id);
            (dn.net[e.u], dn.net[e.v])
        }),
    )?;
    let mut res = undirected_preserver_pipeline(g, &pairs, 1, eps_pres, seed)?;
    let t = res.alpha.clone();
    res.edges.extend(nearest_net_forest(g, &dn.net));
    res.kind = SubgraphKind::Slack;
    res.alpha = &Rational::from(5) + &(&Rational::from(6 * (2 * k as u64 - 1)) * &t);
    res.scope = StretchScope::Slack(eps.clone());
    res.skipped.clear();
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_graph, GeneratorSpec};

    fn assert_net(g: &Graph, eps: &Rational, dn: &DensityNet) {
        let d = apsp_exact(g);
        let cap = (&Rational::one() / eps).ceil_u128() as usize;
        assert!(dn.net.len() <= cap, "{} > {cap}", dn.net.len());
        for x in 0..g.n() {
            assert!(dn.net.iter().any(|&y| d.get(x, y) <= dn.radius[x].saturating_mul(2)));
        }
        for (i, &x) in dn.net.iter().enumerate() {
            for &y in &dn.net[i + 1..] {
                assert!(d.get(x, y) > dn.radius[x] + dn.radius[y]);
            }
        }
    }

    #[test]
    fn eps_one_gives_single_center() {
        let g = generate_graph(&GeneratorSpec::gnp(30, 0.2).weights(3).seed(1)).unwrap();
        let dn = density_net(&g, &Rational::one()).unwrap();
        assert_eq!(dn.net.len(), 1);
        assert_net(&g, &Rational::one(), &dn);
    }

    #[test]
    fn clique_has_one_net_point() {
        let n = 10;
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v, 1)));
        let g = Graph::new(n, false, edges.collect::<Vec<_>>()).unwrap();
        let dn = density_net(&g, &Rational::new(1, 5)).unwrap();
        assert!(dn.radius.iter().all(|&r| r == 1));
        assert_eq!(dn.net, vec![0]);
    }

    #[test]
    fn gnp_net_invariants() {
        let g = generate_graph(&GeneratorSpec::gnp(64, 0.08).weights(5).seed(6)).unwrap();
        let eps = Rational::new(1, 8);
        assert_net(&g, &eps, &density_net(&g, &eps).unwrap());
        assert!(density_net(&g, &Rational::zero()).is_err());
        assert!(density_net(&g, &Rational::new(3, 2)).is_err());
    }

    #[test]
    fn nearest_net_ties_go_to_lowest_id() {
        // 1 is equidistant from net points 0 and 2
        let g = Graph::new(3, false, [(0, 1, 1), (1, 2, 1)]).unwrap();
        let forest = nearest_net_forest(&g, &[2, 0]);
        assert_eq!(forest.into_iter().collect::<Vec<_>>(), vec![g.edge_between(0, 1).unwrap()]);
    }

    #[test]
    fn slack_claim_k1() {
        let g = generate_graph(&GeneratorSpec::gnp(48, 0.1).weights(4).seed(2)).unwrap();
        let res = slack_spanner(&g, &Rational::new(1, 8), 1, 0).unwrap();
        assert!(res.alpha <= &Rational::from(5) + &(&Rational::from(6) * &Rational::new(5, 4)));
    }
}
