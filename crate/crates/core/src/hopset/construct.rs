//! Landmark-based hopset and shortcut constructions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{ApproxMode, BaseAlgorithm, Hopset, Tradeoff, HOPBOUND_SLACK, SAMPLE_CONST};
use crate::error::{Error, Result};
use crate::graph::{transitive_closure, Edge, Graph, Length, Vertex, INF};
use crate::paths::{shortest_path_tree, ShortestPathTree};

/// The weighted transitive closure as a base algorithm: `β = 1`, `Õ(n²)`
/// edges, so `(a, b) = (2, 0)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct TcwBase;

impl BaseAlgorithm for TcwBase {
    fn name(&self) -> &str {
        "tcw"
    }

    fn tradeoff(&self) -> Tradeoff {
        Tradeoff { a: 2.0, b: 0.0 }
    }

    fn build(&self, g: &Graph, _beta: usize, mode: &ApproxMode, seed: u64) -> Result<Hopset> {
        let mut h = base_tcw(g);
        h.seed = seed;
        if mode.is_reachability() {
            h.mode = ApproxMode::Reachability;
        }
        Ok(h)
    }
}

/// `TC_W(G)` minus the edges already in `G` at their shortest length.
pub fn base_tcw(g: &Graph) -> Hopset {
    let tc = transitive_closure(g);
    let pairs = tc
        .entries
        .iter()
        .filter(|&&(u, v, _)| g.is_directed() || u < v)
        .map(|&(u, v, d)| Edge { u, v, w: d as u64 });
    Hopset::from_pairs(g, pairs, 1, ApproxMode::Exact, 0)
}

fn ln_n(n: usize) -> f64 {
    (n.max(2) as f64).ln()
}

fn sample_landmarks(n: usize, prob: f64, seed: u64) -> Vec<Vertex> {
    if prob >= 1.0 {
        return (0..n).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).filter(|_| rng.gen::<f64>() < prob).collect()
}

fn landmark_trees(g: &Graph, landmarks: &[Vertex]) -> Vec<ShortestPathTree> {
    landmarks
        .par_iter()
        .map(|&x| shortest_path_tree(g, &[x]))
        .collect()
}

/// `TC_W` restricted to `L × L`, read off per-landmark shortest path trees.
fn closure_on(g: &Graph, landmarks: &[Vertex], trees: &[ShortestPathTree]) -> Vec<Edge> {
    let mut out = Vec::new();
    for (i, &x) in landmarks.iter().enumerate() {
        for &y in landmarks {
            let d = trees[i].dist[y];
            if x != y && d != INF && (g.is_directed() || x < y) {
                out.push(Edge { u: x, v: y, w: d as u64 });
            }
        }
    }
    out
}

/// Hopset for `G` with hopbound `2β + 1` from exact landmark shortcuts: every
/// vertex joins `L` with probability `min(1, 4·ln n/β)` and `H = TC_W` on `L × L`.
pub fn folklore_exact_hopset(g: &Graph, beta: usize, seed: u64) -> Result<Hopset> {
    let n = g.n();
    if beta == 0 || beta > n.max(1) {
        return Err(Error::domain(format!("beta={beta} outside [1, n={n}]")));
    }
    let prob = (SAMPLE_CONST * ln_n(n) / beta as f64).min(1.0);
    let landmarks = sample_landmarks(n, prob, seed);
    let trees = landmark_trees(g, &landmarks);
    let pairs = closure_on(g, &landmarks, &trees);
    Ok(Hopset::from_pairs(g, pairs, 2 * beta + 1, ApproxMode::Exact, seed))
}

/// Shortcut set (reachability hopset) with claimed diameter `3d`: landmarks
/// sampled at rate `min(1, 4·ln n/d)`, all reachable landmark pairs joined.
pub fn shortcut_folklore(g: &Graph, d: usize, seed: u64) -> Result<Hopset> {
    let n = g.n();
    if d == 0 || d > n.max(1) {
        return Err(Error::domain(format!("d={d} outside [1, n={n}]")));
    }
    let prob = (SAMPLE_CONST * ln_n(n) / d as f64).min(1.0);
    let landmarks = sample_landmarks(n, prob, seed);
    let trees = landmark_trees(g, &landmarks);
    let pairs = closure_on(g, &landmarks, &trees);
    Ok(Hopset::from_pairs(
        g,
        pairs,
        HOPBOUND_SLACK * d,
        ApproxMode::Reachability,
        seed,
    ))
}

/// Runs `base` on the net over sampled landmarks: landmarks `x, y` are joined
/// with weight `dist_G(x,y)` when a shortest `x`-`y` path has at most
/// `radius` hops. Returns the lifted hopset edges and the net hopbound `β'`.
fn landmark_net_hopset(
    g: &Graph,
    base: &dyn BaseAlgorithm,
    prob: f64,
    radius: usize,
    mode: &ApproxMode,
    seed: u64,
) -> Result<(Vec<Edge>, usize)> {
    let landmarks = sample_landmarks(g.n(), prob, seed);
    let beta_net = base.tradeoff().native_hopbound(landmarks.len());
    if landmarks.len() < 2 {
        return Ok((Vec::new(), beta_net));
    }
    let trees = landmark_trees(g, &landmarks);
    let mut net_edges = Vec::new();
    for (i, tree) in trees.iter().enumerate() {
        for (j, &y) in landmarks.iter().enumerate() {
            if i == j || (!g.is_directed() && i > j) {
                continue;
            }
            let d = tree.dist[y];
            if d != INF && (tree.hops[y] as usize) <= radius {
                net_edges.push((i, j, d as u64));
            }
        }
    }
    let net = Graph::new(landmarks.len(), g.is_directed(), net_edges)?;
    let h_net = base.build(&net, beta_net, mode, seed.wrapping_add(1))?;
    let lifted = h_net
        .edges
        .iter()
        .filter_map(|e| {
            let d: Length = trees[e.u].dist[landmarks[e.v]];
            (d != INF).then(|| Edge {
                u: landmarks[e.u],
                v: landmarks[e.v],
                w: d as u64,
            })
        })
        .collect();
    Ok((lifted, beta_net))
}

/// Converts a base algorithm with tradeoff `(a, b)` into one that works for
/// `β > n^b`. Sampling rate is `min(1, 4·q·ln n)` with
/// `q = (β / (n·ln n)^b)^{1/(b-1)}`; the claimed hopbound is `3·β'·⌊1/q⌋`.
pub fn sublinear_from_superlinear(
    g: &Graph,
    base: &dyn BaseAlgorithm,
    beta: usize,
    mode: &ApproxMode,
    seed: u64,
) -> Result<Hopset> {
    let t = base.tradeoff();
    t.validate()?;
    let n = g.n();
    if (beta as f64) <= (n.max(1) as f64).powf(t.b) {
        return Err(Error::domain(format!(
            "beta={beta} must exceed n^b = {:.3}; call the base algorithm directly",
            (n as f64).powf(t.b)
        )));
    }
    let l = ln_n(n);
    let q = (beta as f64 / (n as f64 * l).powf(t.b)).powf(1.0 / (t.b - 1.0));
    let radius = ((1.0 / q) + 1e-9).floor().max(1.0) as usize;
    let prob = (SAMPLE_CONST * q * l).min(1.0);
    let (edges, beta_net) = landmark_net_hopset(g, base, prob, radius, mode, seed)?;
    Ok(Hopset::from_pairs(
        g,
        edges,
        HOPBOUND_SLACK * beta_net * radius,
        mode.clone(),
        seed,
    ))
}

/// Undirected variant with hop radius `D`: landmarks at rate
/// `min(1, 4·ln n/D)`, claimed hopbound `3·β'·D`.
pub fn undirected_sublinear_hopset(
    g: &Graph,
    base: &dyn BaseAlgorithm,
    radius: usize,
    mode: &ApproxMode,
    seed: u64,
) -> Result<Hopset> {
    if g.is_directed() {
        return Err(Error::domain("undirected_sublinear_hopset needs an undirected graph"));
    }
    if radius == 0 {
        return Err(Error::domain("hop radius must be at least 1"));
    }
    base.tradeoff().validate()?;
    let prob = (SAMPLE_CONST * ln_n(g.n()) / radius as f64).min(1.0);
    let (edges, beta_net) = landmark_net_hopset(g, base, prob, radius, mode, seed)?;
    Ok(Hopset::from_pairs(
        g,
        edges,
        HOPBOUND_SLACK * beta_net * radius,
        mode.clone(),
        seed,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_graph, GeneratorSpec};
    use crate::paths::{apsp_exact, apsp_hop_bounded};

    // every pair reachable in G must be matched within the claimed hopbound
    fn assert_hopset(g: &Graph, h: &Hopset) {
        let exact = apsp_exact(g);
        let bounded = apsp_hop_bounded(g, &h.edges, h.beta, None);
        for u in 0..g.n() {
            for v in 0..g.n() {
                let d = exact.get(u, v);
                let b = bounded.dist(u, v);
                match h.mode {
                    ApproxMode::Reachability => assert_eq!(d == INF, b == INF, "({u},{v})"),
                    _ => assert!(h.mode.stretch().bounds(b, d, 0), "({u},{v}): {b} vs {d}"),
                }
            }
        }
    }

    #[test]
    fn tcw_on_path_has_all_nonadjacent_pairs() {
        let g = Graph::new(4, false, [(0, 1, 1), (1, 2, 1), (2, 3, 1)]).unwrap();
        let h = base_tcw(&g);
        assert_eq!(h.len(), 3);
        assert_eq!(h.beta, 1);
        assert_hopset(&g, &h);
    }

    #[test]
    fn folklore_beta_one_is_full_closure() {
        let g = generate_graph(&GeneratorSpec::random_dag(30, 0.1).seed(3)).unwrap();
        let h = folklore_exact_hopset(&g, 1, 9).unwrap();
        assert_eq!(h.edges, base_tcw(&g).edges);
        assert_eq!(h.beta, 3);
    }

    #[test]
    fn folklore_meets_claim() {
        let g = generate_graph(&GeneratorSpec::random_dag(80, 0.05).weights(9).seed(5)).unwrap();
        for beta in [2, 8, 20] {
            assert_hopset(&g, &folklore_exact_hopset(&g, beta, 11).unwrap());
        }
        assert!(folklore_exact_hopset(&g, 0, 1).is_err());
        assert!(folklore_exact_hopset(&g, 81, 1).is_err());
    }

    #[test]
    fn shortcut_meets_claim() {
        let g = generate_graph(&GeneratorSpec::random_dag(100, 0.03).seed(8)).unwrap();
        let h = shortcut_folklore(&g, 10, 4).unwrap();
        assert_eq!(h.beta, 30);
        assert_hopset(&g, &h);
    }

    #[test]
    fn sublinear_with_tcw_meets_claim() {
        let g = generate_graph(&GeneratorSpec::random_dag(120, 0.04).weights(5).seed(2)).unwrap();
        let h = sublinear_from_superlinear(&g, &TcwBase, 12, &ApproxMode::Exact, 7).unwrap();
        assert_eq!(h.beta, 36);
        assert_hopset(&g, &h);
        // b = 0 needs beta > 1
        assert!(sublinear_from_superlinear(&g, &TcwBase, 1, &ApproxMode::Exact, 7).is_err());
    }

    #[test]
    fn undirected_sublinear_meets_claim() {
        let g = generate_graph(&GeneratorSpec::gnp(100, 0.04).seed(6)).unwrap();
        let h = undirected_sublinear_hopset(&g, &TcwBase, 6, &ApproxMode::Exact, 3).unwrap();
        assert_hopset(&g, &h);
        let full = undirected_sublinear_hopset(&g, &TcwBase, 100, &ApproxMode::Exact, 3).unwrap();
        assert_eq!(full.beta, 300);
        assert_hopset(&g, &full);
    }

    #[test]
    fn hopset_weights_are_distances() {
        let g = generate_graph(&GeneratorSpec::gnp(60, 0.08).weights(20).seed(1)).unwrap();
        let h = undirected_sublinear_hopset(&g, &TcwBase, 4, &ApproxMode::Exact, 3).unwrap();
        h.validate_weights(&g, usize::MAX).unwrap();
    }
}
