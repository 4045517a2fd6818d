//! Property checkers backed by brute-force oracles.
//!
//! Every check runs exhaustively over ordered pairs for `n <= 256`; larger
//! graphs are checked on 10,000 seeded random pairs and the report says so.

mod oracle;

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::derived::{StretchScope, SubgraphKind, SubgraphResult};
use crate::graph::{Graph, Length, PairSet, Vertex, INF};
use crate::hopset::{ApproxMode, Hopset};
use crate::missing::MissingSpanner;
use crate::paths::shortest_path_tree;
use crate::rational::Rational;

pub use oracle::girth;

/// Largest `n` checked over all pairs.
pub const EXHAUSTIVE_CAP: usize = 256;
/// Pairs drawn when `n` exceeds the cap.
pub const SAMPLE_PAIRS: usize = 10_000;
const SAMPLE_SEED: u64 = 0x5eed;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub u: Vertex,
    pub v: Vertex,
    pub observed: String,
    pub bound: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub property: String,
    pub pass: bool,
    pub pairs_checked: usize,
    /// Set when pairs were sampled instead of enumerated.
    pub sampled: Option<usize>,
    pub worst_stretch: Option<Rational>,
    pub worst_hops: Option<usize>,
    pub worst_missing: Option<usize>,
    pub counterexample: Option<Counterexample>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    fn new(property: impl Into<String>) -> Self {
        VerificationReport {
            property: property.into(),
            pass: true,
            pairs_checked: 0,
            sampled: None,
            worst_stretch: None,
            worst_hops: None,
            worst_missing: None,
            counterexample: None,
            notes: Vec::new(),
        }
    }

    fn fail(&mut self, u: Vertex, v: Vertex, observed: impl fmt::Display, bound: impl fmt::Display) {
        self.pass = false;
        if self.counterexample.is_none() {
            self.counterexample = Some(Counterexample {
                u,
                v,
                observed: observed.to_string(),
                bound: bound.to_string(),
            });
        }
    }

    fn fail_global(&mut self, note: String) {
        self.pass = false;
        self.notes.push(note);
    }

    fn see_stretch(&mut self, observed: Length, reference: Length) {
        if let Some(r) = Rational::ratio(observed, reference) {
            if self.worst_stretch.as_ref().map_or(true, |w| r > *w) {
                self.worst_stretch = Some(r);
            }
        }
    }

    fn see_hops(&mut self, hops: usize) {
        self.worst_hops = Some(self.worst_hops.map_or(hops, |h| h.max(hops)));
    }

    fn see_missing(&mut self, missing: usize) {
        self.worst_missing = Some(self.worst_missing.map_or(missing, |m| m.max(missing)));
    }

    /// Associative merge of reports for the same property.
    pub fn merge(mut self, other: VerificationReport) -> Self {
        self.pass &= other.pass;
        self.pairs_checked += other.pairs_checked;
        self.sampled = match (self.sampled, other.sampled) {
            (Some(a), Some(b)) => Some(a + b),
            (a, b) => a.or(b),
        };
        if let Some(w) = other.worst_stretch {
            if self.worst_stretch.as_ref().map_or(true, |s| w > *s) {
                self.worst_stretch = Some(w);
            }
        }
        if let Some(h) = other.worst_hops {
            self.see_hops(h);
        }
        if let Some(m) = other.worst_missing {
            self.see_missing(m);
        }
        if self.counterexample.is_none() {
            self.counterexample = other.counterexample;
        }
        self.notes.extend(other.notes);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} ({} pairs",
            self.property,
            if self.pass { "PASS" } else { "FAIL" },
            self.pairs_checked
        )?;
        if let Some(s) = self.sampled {
            write!(f, ", sampled {s}")?;
        }
        write!(f, ")")?;
        if let Some(w) = &self.worst_stretch {
            write!(f, " worst stretch {w} (~{:.4})", w.to_f64())?;
        }
        if let Some(h) = self.worst_hops {
            write!(f, " worst hops {h}")?;
        }
        if let Some(m) = self.worst_missing {
            write!(f, " worst missing {m}")?;
        }
        if let Some(c) = &self.counterexample {
            write!(f, "\n  counterexample ({},{}): observed {} > bound {}", c.u, c.v, c.observed, c.bound)?;
        }
        for note in &self.notes {
            write!(f, "\n  {note}")?;
        }
        Ok(())
    }
}

fn show(d: Length) -> String {
    if d == INF {
        "inf".into()
    } else {
        d.to_string()
    }
}

/// Sources with their targets: all ordered pairs for small `n`, else a
/// seeded sample.
fn pair_plan(n: usize) -> (Vec<(Vertex, Vec<Vertex>)>, Option<usize>) {
    if n <= EXHAUSTIVE_CAP {
        let plan = (0..n).map(|u| (u, (0..n).filter(|&v| v != u).collect())).collect();
        return (plan, None);
    }
    let count = SAMPLE_PAIRS.min(n * (n - 1));
    let pairs = PairSet::random(n, count, SAMPLE_SEED).expect("n >= 2");
    (group(pairs.iter()), Some(count))
}

fn group(pairs: impl Iterator<Item = (Vertex, Vertex)>) -> Vec<(Vertex, Vec<Vertex>)> {
    let mut sorted: Vec<(Vertex, Vertex)> = pairs.collect();
    sorted.sort_unstable();
    let mut out: Vec<(Vertex, Vec<Vertex>)> = Vec::new();
    for (u, v) in sorted {
        match out.last_mut() {
            Some((s, ts)) if *s == u => ts.push(v),
            _ => out.push((u, vec![v])),
        }
    }
    out
}

fn run_plan(
    property: &str,
    plan: &[(Vertex, Vec<Vertex>)],
    sampled: Option<usize>,
    check: impl Fn(Vertex, &[Vertex], &mut VerificationReport) + Sync,
) -> VerificationReport {
    let mut report = plan
        .par_iter()
        .map(|(s, targets)| {
            let mut r = VerificationReport::new(property);
            check(*s, targets, &mut r);
            r
        })
        .reduce(|| VerificationReport::new(property), VerificationReport::merge);
    report.sampled = sampled;
    if report.sampled.is_some() {
        report.notes.push(format!(
            "n exceeds {EXHAUSTIVE_CAP}: checked {} seeded random pairs",
            sampled.unwrap_or(0)
        ));
    }
    report
}

/// `dist_G <= dist^{(β)}_{G∪H} <= (1+ε)·dist_G` for every reachable pair
/// (finiteness only in reachability mode).
pub fn check_hopset(g: &Graph, h: &Hopset, beta_claim: usize, mode: &ApproxMode) -> VerificationReport {
    let n = g.n();
    let aug = oracle::arcs(g, &h.edges);
    let stretch = mode.stretch();
    let (plan, sampled) = pair_plan(n);
    let property = format!("hopset(beta={beta_claim}, mode={mode})");
    run_plan(&property, &plan, sampled, |s, targets, r| {
        let exact = shortest_path_tree(g, &[s]).dist;
        let bounded = oracle::hop_layer_dist(n, &aug, s, beta_claim);
        for &t in targets {
            let (d, b) = (exact[t], bounded[t]);
            if d == INF {
                continue;
            }
            r.pairs_checked += 1;
            if mode.is_reachability() {
                if b == INF {
                    r.fail(s, t, "unreachable", format!("{beta_claim} hops"));
                }
                continue;
            }
            if b < d {
                r.fail(s, t, show(b), format!(">= dist_G = {d}"));
            } else if !stretch.bounds(b, d, 0) {
                r.fail(s, t, show(b), format!("{stretch} * {d}"));
            }
            r.see_stretch(b, d);
        }
    })
}

/// Every pair of `TC(G)` is joined in `G ∪ H` by a path of at most `d_claim`
/// edges (BFS hop counts).
pub fn check_shortcut(g: &Graph, h: &Hopset, d_claim: usize) -> VerificationReport {
    let n = g.n();
    let base = oracle::arcs(g, &[]);
    let aug = oracle::arcs(g, &h.edges);
    let (plan, sampled) = pair_plan(n);
    run_plan(&format!("shortcut(d={d_claim})"), &plan, sampled, |s, targets, r| {
        let reach = oracle::bfs_hops(n, &base, s);
        let hops = oracle::bfs_hops(n, &aug, s);
        for &t in targets {
            if reach[t] == usize::MAX {
                continue;
            }
            r.pairs_checked += 1;
            r.see_hops(hops[t]);
            if hops[t] > d_claim {
                r.fail(s, t, hops[t], d_claim);
            }
        }
    })
}

/// Both conditions of an `r`-missing `t`-spanner for every reachable pair:
/// an independent search for a path with at most `r` edges outside `G'` and
/// length within `t·dist`, plus an edge-by-edge audit of the reconstructed
/// witness (a walk in `G`, correct length, at most `r` missing edges, all of
/// them top-level). Also checks `G' ⊆ E(G)` and the size bound.
pub fn check_missing_spanner(g: &Graph, ms: &MissingSpanner) -> VerificationReport {
    let n = g.n();
    let (plan, sampled) = pair_plan(n);
    let property = format!("missing-spanner(r={}, t={})", ms.r, ms.t);
    let mut report = run_plan(&property, &plan, sampled, |s, targets, r| {
        let exact = shortest_path_tree(g, &[s]).dist;
        let budgeted = oracle::budgeted_missing_dist(g, &ms.g_prime, s, ms.r);
        let witnesses = ms.witnesses_from(g, s);
        for &t in targets {
            let d = exact[t];
            if d == INF {
                continue;
            }
            r.pairs_checked += 1;
            let best = budgeted[t];
            let ok = if ms.reachability { best != INF } else { ms.t.bounds(best, d, 0) };
            if !ok {
                r.fail(s, t, format!("best {}-missing path {}", ms.r, show(best)), format!("{} * {d}", ms.t));
                continue;
            }
            let w = match witnesses.witness(t) {
                Ok(w) => w,
                Err(e) => {
                    r.fail(s, t, format!("no witness: {e}"), "a witness path");
                    continue;
                }
            };
            let walk_ok = w.vertices.first() == Some(&s)
                && w.vertices.last() == Some(&t)
                && w.edges.len() + 1 == w.vertices.len()
                && w.edges.iter().zip(w.vertices.windows(2)).all(|(&id, pair)| {
                    let e = g.edge(id);
                    (e.u, e.v) == (pair[0], pair[1]) || (!g.is_directed() && (e.v, e.u) == (pair[0], pair[1]))
                });
            if !walk_ok {
                r.fail(s, t, "witness is not a walk in G", "a u-v walk");
                continue;
            }
            let length: Length = w.edges.iter().map(|&id| g.edge(id).w as Length).sum();
            let missing: Vec<_> = w.edges.iter().filter(|id| !ms.g_prime.contains(id)).collect();
            r.see_missing(missing.len());
            r.see_stretch(length, d);
            if length != w.length {
                r.fail(s, t, format!("recomputed length {length}"), format!("reported {}", w.length));
            } else if !ms.reachability && !ms.t.bounds(length, d, 0) {
                r.fail(s, t, format!("witness length {length}"), format!("{} * {d}", ms.t));
            } else if missing.len() > ms.r {
                r.fail(s, t, format!("{} missing edges", missing.len()), ms.r);
            } else if let Some(id) = missing.iter().find(|id| !w.top_level_graph_edges.contains(id)) {
                let e = g.edge(**id);
                r.fail(s, t, format!("missing edge ({},{}) inside an expanded hopset edge", e.u, e.v), "only top-level edges missing");
            }
        }
    });
    if let Some(&id) = ms.g_prime.iter().find(|&&id| id >= g.m()) {
        report.fail_global(format!("G' contains edge id {id} not in G"));
    }
    let bound: usize = ms
        .hierarchy
        .iter()
        .enumerate()
        .map(|(i, h)| h.edges.len() * ms.schedule.beta(i))
        .sum();
    if ms.g_prime.len() > bound {
        report.fail_global(format!("|G'| = {} exceeds sum |H_i|·beta_(i-1) = {bound}", ms.g_prime.len()));
    } else {
        report.notes.push(format!("|G'| = {} <= {bound}", ms.g_prime.len()));
    }
    report
}

/// `dist_result <= alpha·dist_G + beta_add` over the pairs in `scope`.
pub fn check_stretch(
    g: &Graph,
    result: &SubgraphResult,
    scope: &StretchScope,
    alpha: &Rational,
    beta_add: Length,
) -> VerificationReport {
    let n = g.n();
    let h = result.to_graph(g);
    let property = format!("stretch(alpha={alpha}, beta={beta_add})");
    if let Some(e) = result.extra.iter().find(|e| e.u >= n || e.v >= n) {
        let mut r = VerificationReport::new(property);
        r.fail_global(format!("edge ({},{}) out of range", e.u, e.v));
        return r;
    }
    let (plan, sampled) = match scope {
        StretchScope::AllPairs => pair_plan(n),
        StretchScope::Pairs(p) => (group(p.iter().copied()), None),
        StretchScope::Sourcewise(s) => {
            let mut s = s.clone();
            s.sort_unstable();
            s.dedup();
            (s.into_iter().map(|u| (u, (0..n).collect())).collect(), None)
        }
        StretchScope::Slack(_) => {
            let sources: Vec<Vertex> = if n <= EXHAUSTIVE_CAP {
                (0..n).collect()
            } else {
                let mut pick: Vec<Vertex> = PairSet::random(n, SAMPLE_PAIRS.div_ceil(n).min(n * (n - 1)), SAMPLE_SEED)
                    .expect("n >= 2")
                    .iter()
                    .map(|(u, _)| u)
                    .collect();
                pick.sort_unstable();
                pick.dedup();
                pick
            };
            let sampled = (n > EXHAUSTIVE_CAP).then_some(sources.len() * n);
            (sources.into_iter().map(|u| (u, Vec::new())).collect(), sampled)
        }
    };
    let skip = match scope {
        StretchScope::Slack(eps) => (&Rational::from(n as u64) * eps).to_f64().floor() as usize,
        _ => 0,
    };
    run_plan(&property, &plan, sampled, |s, targets, r| {
        let dg = shortest_path_tree(g, &[s]).dist;
        let dh = shortest_path_tree(&h, &[s]).dist;
        let slack_targets;
        let targets: &[Vertex] = if let StretchScope::Slack(_) = scope {
            let mut order: Vec<Vertex> = (0..n).collect();
            order.sort_by_key(|&v| (dg[v], v));
            slack_targets = order.split_off(skip.min(n));
            &slack_targets
        } else {
            targets
        };
        for &t in targets {
            if dg[t] == INF {
                continue;
            }
            r.pairs_checked += 1;
            r.see_stretch(dh[t], dg[t]);
            if !alpha.bounds(dh[t], dg[t], beta_add) {
                r.fail(s, t, show(dh[t]), format!("{alpha} * {} + {beta_add}", dg[t]));
            }
        }
    })
}

/// Reachability of every demand pair that is reachable in `G`.
pub fn check_reachability(g: &Graph, result: &SubgraphResult, pairs: &[(Vertex, Vertex)]) -> VerificationReport {
    let n = g.n();
    let base = oracle::arcs(g, &[]);
    let kept = oracle::arcs(&result.to_graph(g), &[]);
    let plan = group(pairs.iter().copied());
    run_plan("reachability", &plan, None, |s, targets, r| {
        let before = oracle::bfs_hops(n, &base, s);
        let after = oracle::bfs_hops(n, &kept, s);
        for &t in targets {
            if before[t] == usize::MAX {
                continue;
            }
            r.pairs_checked += 1;
            if after[t] == usize::MAX {
                r.fail(s, t, "unreachable", "reachable");
            }
        }
    })
}

/// Checks a result against its own claim and scope. Preservers also get the
/// `|result| <= |G'| + p·r` size identity.
pub fn verify_result(g: &Graph, result: &SubgraphResult) -> VerificationReport {
    let mut report = match (&result.kind, &result.scope) {
        (SubgraphKind::ReachabilityPreserver, StretchScope::Pairs(p)) => check_reachability(g, result, p),
        (_, scope) => check_stretch(g, result, scope, &result.alpha, result.beta_add),
    };
    if let (Some(size), Some(r), Some(p)) = (
        result.provenance.missing_size,
        result.provenance.r,
        result.provenance.pair_count,
    ) {
        if matches!(result.kind, SubgraphKind::Preserver | SubgraphKind::ReachabilityPreserver) {
            let bound = size + p * r;
            if result.size() > bound {
                report.fail_global(format!("size {} exceeds |G'| + p·r = {bound}", result.size()));
            } else {
                report.notes.push(format!("size {} <= |G'| + p·r = {bound}", result.size()));
            }
        }
    }
    report
}
