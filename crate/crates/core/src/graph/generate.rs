use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Graph, Vertex, Weight};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GeneratorKind {
    /// Each admissible pair independently with probability `p`.
    Gnp { n: usize, p: f64 },
    /// Forward edges `u < v` with probability `p`; topological order is `0..n`.
    RandomDag { n: usize, p: f64 },
    Path { n: usize },
    Cycle { n: usize },
    Grid { rows: usize, cols: usize },
    /// `layers` layers of `width` vertices; edges only between consecutive layers.
    Layered { layers: usize, width: usize, p: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    #[serde(flatten)]
    pub kind: GeneratorKind,
    #[serde(default)]
    pub directed: bool,
    /// Weights are drawn uniformly from `[1, max_weight]`.
    #[serde(default = "one")]
    pub max_weight: Weight,
    #[serde(default)]
    pub seed: u64,
}

fn one() -> Weight {
    1
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind) -> Self {
        GeneratorSpec {
            kind,
            directed: false,
            max_weight: 1,
            seed: 0,
        }
    }

    pub fn directed(mut self, directed: bool) -> Self {
        self.directed = directed;
        self
    }

    pub fn weights(mut self, max_weight: Weight) -> Self {
        self.max_weight = max_weight;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn gnp(n: usize, p: f64) -> Self {
        Self::new(GeneratorKind::Gnp { n, p })
    }

    pub fn random_dag(n: usize, p: f64) -> Self {
        Self::new(GeneratorKind::RandomDag { n, p }).directed(true)
    }

    pub fn path(n: usize) -> Self {
        Self::new(GeneratorKind::Path { n })
    }

    pub fn vertex_count(&self) -> usize {
        match self.kind {
            GeneratorKind::Gnp { n, .. }
            | GeneratorKind::RandomDag { n, .. }
            | GeneratorKind::Path { n }
            | GeneratorKind::Cycle { n } => n,
            GeneratorKind::Grid { rows, cols } => rows * cols,
            GeneratorKind::Layered { layers, width, .. } => layers * width,
        }
    }
}

pub fn generate_graph(spec: &GeneratorSpec) -> Result<Graph> {
    let n = spec.vertex_count();
    if n == 0 {
        return Err(Error::domain("generator needs at least one vertex"));
    }
    if spec.max_weight == 0 {
        return Err(Error::domain("max_weight must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    match spec.kind {
        GeneratorKind::Gnp { n, p } => {
            check_prob(p)?;
            for u in 0..n {
                let start = if spec.directed { 0 } else { u + 1 };
                for v in start..n {
                    if u != v && rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
        }
        GeneratorKind::RandomDag { n, p } => {
            check_prob(p)?;
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
        }
        GeneratorKind::Path { n } => edges.extend((1..n).map(|v| (v - 1, v))),
        GeneratorKind::Cycle { n } => {
            edges.extend((1..n).map(|v| (v - 1, v)));
            if n > 2 {
                edges.push((n - 1, 0));
            }
        }
        GeneratorKind::Grid { rows, cols } => {
            for r in 0..rows {
                for c in 0..cols {
                    let id = r * cols + c;
                    if c + 1 < cols {
                        edges.push((id, id + 1));
                    }
                    if r + 1 < rows {
                        edges.push((id, id + cols));
                    }
                }
            }
        }
        GeneratorKind::Layered { layers, width, p } => {
            check_prob(p)?;
            for layer in 1..layers {
                for a in 0..width {
                    for b in 0..width {
                        if rng.gen_bool(p) {
                            edges.push(((layer - 1) * width + a, layer * width + b));
                        }
                    }
                }
            }
        }
    }
    let weighted: Vec<(Vertex, Vertex, Weight)> = edges
        .into_iter()
        .map(|(u, v)| (u, v, rng.gen_range(1..=spec.max_weight)))
        .collect();
    Graph::new(n, spec.directed, weighted)
}

fn check_prob(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::domain(format!("edge probability {p} outside [0,1]")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::write_edge_list;

    #[test]
    fn path_unit_weights() {
        let g = generate_graph(&GeneratorSpec::path(4)).unwrap();
        let pairs: Vec<_> = g.edges().iter().map(|e| (e.u, e.v, e.w)).collect();
        assert_eq!(pairs, vec![(0, 1, 1), (1, 2, 1), (2, 3, 1)]);
    }

    #[test]
    fn gnp_is_deterministic() {
        let spec = GeneratorSpec::gnp(64, 0.1).weights(8).seed(1);
        let a = generate_graph(&spec).unwrap();
        let b = generate_graph(&spec).unwrap();
        assert_eq!(write_edge_list(&a), write_edge_list(&b));
        let c = generate_graph(&spec.clone().seed(2)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn random_dag_edges_go_forward() {
        let g = generate_graph(&GeneratorSpec::random_dag(16, 0.3).seed(7)).unwrap();
        assert!(g.m() > 0);
        assert!(g.edges().iter().all(|e| e.u < e.v));
        assert!(g.is_directed());
    }

    #[test]
    fn zero_vertices_rejected() {
        assert!(generate_graph(&GeneratorSpec::path(0)).is_err());
    }

    #[test]
    fn grid_and_layered_shapes() {
        let g = generate_graph(&GeneratorSpec::new(GeneratorKind::Grid { rows: 3, cols: 4 })).unwrap();
        assert_eq!((g.n(), g.m()), (12, 17));
        let l = generate_graph(
            &GeneratorSpec::new(GeneratorKind::Layered { layers: 4, width: 3, p: 1.0 }).directed(true),
        )
        .unwrap();
        assert_eq!(l.m(), 27);
    }

    #[test]
    fn spec_json_round_trip() {
        let spec = GeneratorSpec::gnp(10, 0.5).weights(3).seed(9);
        let json = serde_json::to_string(&spec).unwrap();
        let back: GeneratorSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, spec);
    }
}
