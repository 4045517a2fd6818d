//! Hopsets, shortcut sets, base constructions and β-schedules.
//!
//! A hopset `H` for `G` is a set of weighted pairs such that `β`-hop paths in
//! `G ∪ H` approximate `dist_G` (exactly, within `1+ε`, or only up to
//! reachability for shortcut sets).

mod construct;
mod schedule;

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{canonical, Edge, Graph, Length, Vertex};
use crate::paths::shortest_path_tree;
use crate::rational::Rational;

pub use construct::{
    base_tcw, folklore_exact_hopset, shortcut_folklore, sublinear_from_superlinear,
    undirected_sublinear_hopset, TcwBase,
};
pub use schedule::{schedule_directed, schedule_undirected, BetaSchedule, Regime, ScheduleLevel};

/// Landmark sampling constant: per-vertex probability `min(1, 4·ln n / scale)`.
pub const SAMPLE_CONST: f64 = 4.0;
/// Claimed hopbounds carry a factor 3 over the nominal scale.
pub const HOPBOUND_SLACK: usize = 3;
/// Floor constant of the undirected schedule: `β_ℓ = ⌈4·(k/ε)^k⌉`.
pub const FLOOR_CONST: u64 = 4;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ApproxMode {
    Exact,
    /// `dist^{(β)}_{G∪H} <= (1+ε)·dist_G` with `ε` in `(0,1)`.
    Multiplicative(Rational),
    /// Only finiteness of `dist^{(β)}` matters; weights are ignored.
    Reachability,
}

impl ApproxMode {
    pub fn multiplicative(eps: Rational) -> Result<Self> {
        if !eps.is_positive() || eps >= Rational::one() {
            return Err(Error::domain(format!("epsilon {eps} outside (0,1)")));
        }
        Ok(ApproxMode::Multiplicative(eps))
    }

    /// Mode for a per-level epsilon, with zero meaning exact.
    pub fn from_epsilon(eps: &Rational) -> Result<Self> {
        if eps.is_zero() {
            Ok(ApproxMode::Exact)
        } else {
            Self::multiplicative(eps.clone())
        }
    }

    pub fn epsilon(&self) -> Rational {
        match self {
            ApproxMode::Multiplicative(e) => e.clone(),
            _ => Rational::zero(),
        }
    }

    pub fn is_reachability(&self) -> bool {
        matches!(self, ApproxMode::Reachability)
    }

    /// Stretch factor `1+ε` (1 for exact and reachability).
    pub fn stretch(&self) -> Rational {
        &Rational::one() + &self.epsilon()
    }
}

impl fmt::Display for ApproxMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ApproxMode::Exact => f.write_str("exact"),
            ApproxMode::Multiplicative(e) => write!(f, "mult:{e}"),
            ApproxMode::Reachability => f.write_str("reach"),
        }
    }
}

impl FromStr for ApproxMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(ApproxMode::Exact),
            "reach" | "reachability" => Ok(ApproxMode::Reachability),
            other => match other.strip_prefix("mult:") {
                Some(eps) => ApproxMode::multiplicative(eps.parse()?),
                None => Err(Error::domain(format!("unknown mode '{other}'"))),
            },
        }
    }
}

impl Serialize for ApproxMode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ApproxMode {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hopset {
    /// Sorted; undirected hopsets store `u < v`.
    pub edges: Vec<Edge>,
    /// Claimed hopbound.
    pub beta: usize,
    pub mode: ApproxMode,
    pub seed: u64,
}

impl Hopset {
    pub fn empty(beta: usize, mode: ApproxMode) -> Self {
        Hopset {
            edges: Vec::new(),
            beta,
            mode,
            seed: 0,
        }
    }

    /// Normalizes orientation, sorts, and drops pairs that duplicate an
    /// equally short or shorter edge of `g`.
    pub fn from_pairs(
        g: &Graph,
        pairs: impl IntoIterator<Item = Edge>,
        beta: usize,
        mode: ApproxMode,
        seed: u64,
    ) -> Self {
        let mut edges: Vec<Edge> = pairs
            .into_iter()
            .filter(|e| e.u != e.v)
            .map(|e| {
                let (u, v) = canonical(g.is_directed(), e.u, e.v);
                Edge { u, v, w: e.w }
            })
            .filter(|e| match g.edge_between(e.u, e.v) {
                Some(id) => g.edge(id).w > e.w,
                None => true,
            })
            .collect();
        edges.sort_unstable();
        edges.dedup_by(|a, b| (a.u, a.v) == (b.u, b.v));
        Hopset {
            edges,
            beta,
            mode,
            seed,
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Checks that up to `sample` edges carry weight exactly `dist_G`.
    /// Skipped for reachability hopsets.
    pub fn validate_weights(&self, g: &Graph, sample: usize) -> Result<()> {
        if self.mode.is_reachability() {
            return Ok(());
        }
        let mut picked: Vec<&Edge> = self.edges.iter().collect();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(self.seed ^ 0x5eed);
        picked.shuffle(&mut rng);
        picked.truncate(sample);
        for e in picked {
            let d = shortest_path_tree(g, &[e.u]).dist[e.v];
            if d != e.w as Length {
                return Err(Error::construction(format!(
                    "hopset edge ({},{}) has weight {} but dist_G = {}",
                    e.u,
                    e.v,
                    e.w,
                    if d == crate::graph::INF { "inf".to_string() } else { d.to_string() }
                )));
            }
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "# hopset beta={} mode={} seed={}\n",
            self.beta, self.mode, self.seed
        );
        for e in &self.edges {
            let _ = writeln!(out, "{} {} {}", e.u, e.v, e.w);
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let header = loop {
            match lines.next() {
                Some((_, l)) if l.trim().is_empty() => continue,
                Some((_, l)) => break l.trim(),
                None => return Err(Error::Parse { line: 0, message: "empty hopset file".into() }),
            }
        };
        let fields = header
            .strip_prefix("# hopset")
            .ok_or_else(|| Error::Parse { line: 1, message: "missing '# hopset' header".into() })?;
        let mut beta = None;
        let mut mode = None;
        let mut seed = 0;
        for kv in fields.split_whitespace() {
            match kv.split_once('=') {
                Some(("beta", v)) => beta = v.parse().ok(),
                Some(("mode", v)) => mode = Some(v.parse()?),
                Some(("seed", v)) => seed = v.parse().unwrap_or(0),
                _ => {}
            }
        }
        let beta = beta.ok_or_else(|| Error::Parse { line: 1, message: "header lacks beta".into() })?;
        let mode = mode.ok_or_else(|| Error::Parse { line: 1, message: "header lacks mode".into() })?;
        let mut edges = Vec::new();
        for (idx, raw) in lines {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let f: Vec<&str> = line.split_whitespace().collect();
            let parse = |s: &str| -> Result<u64> {
                s.parse().map_err(|_| Error::Parse {
                    line: idx + 1,
                    message: format!("invalid field '{s}'"),
                })
            };
            if f.len() != 3 {
                return Err(Error::Parse { line: idx + 1, message: "expected 'u v w'".into() });
            }
            edges.push(Edge {
                u: parse(f[0])? as Vertex,
                v: parse(f[1])? as Vertex,
                w: parse(f[2])?,
            });
        }
        Ok(Hopset { edges, beta, mode, seed })
    }
}

/// Declared size/hopbound tradeoff: `Õ(n²/β^a)` edges for every `β <= n^b`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tradeoff {
    pub a: f64,
    pub b: f64,
}

impl Tradeoff {
    pub fn validate(&self) -> Result<()> {
        let cap = if self.a > 1.0 { (1.0f64).min(1.0 / (self.a - 1.0)) } else { 0.0 };
        if !(self.a > 1.0 && self.b >= 0.0 && self.b < cap) {
            return Err(Error::domain(format!(
                "tradeoff needs a > 1 and 0 <= b < min(1, 1/(a-1)); got a={}, b={}",
                self.a, self.b
            )));
        }
        Ok(())
    }

    /// Exponent of the sublinear regime, `(2 - a·b) / (1 - b)`.
    pub fn sublinear_exponent(&self) -> f64 {
        (2.0 - self.a * self.b) / (1.0 - self.b)
    }

    /// Native hopbound `⌈n^b⌉` on an `n`-vertex graph.
    pub fn native_hopbound(&self, n: usize) -> usize {
        ((n.max(1) as f64).powf(self.b) - 1e-9).ceil().max(1.0) as usize
    }
}

/// A pluggable hopset construction with a declared tradeoff.
pub trait BaseAlgorithm: Send + Sync {
    fn name(&self) -> &str;
    fn tradeoff(&self) -> Tradeoff;
    /// Builds a hopset for `g` with hopbound at most `beta` (callers pass
    /// `beta <= ⌈n^b⌉`).
    fn build(&self, g: &Graph, beta: usize, mode: &ApproxMode, seed: u64) -> Result<Hopset>;
}
