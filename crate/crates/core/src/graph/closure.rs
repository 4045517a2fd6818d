use rayon::prelude::*;

use super::{Graph, Length, Vertex, INF};
use crate::paths::shortest_path_tree;

/// `TC_W(G)`: every ordered reachable pair `u != v` with its distance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedClosure {
    pub entries: Vec<(Vertex, Vertex, Length)>,
}

impl WeightedClosure {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, u: Vertex, v: Vertex) -> Option<Length> {
        self.entries
            .binary_search_by(|&(a, b, _)| (a, b).cmp(&(u, v)))
            .ok()
            .map(|i| self.entries[i].2)
    }
}

pub fn transitive_closure(g: &Graph) -> WeightedClosure {
    let rows: Vec<Vec<(Vertex, Vertex, Length)>> = (0..g.n())
        .into_par_iter()
        .map(|s| {
            let tree = shortest_path_tree(g, &[s]);
            tree.dist
                .iter()
                .enumerate()
                .filter(|&(v, &d)| v != s && d != INF)
                .map(|(v, &d)| (s, v, d))
                .collect()
        })
        .collect();
    WeightedClosure {
        entries: rows.into_iter().flatten().collect(),
    }
}
