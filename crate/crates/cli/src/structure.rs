//! Built structures, uniformly sized, serialized and verified.

use hopspan::verify::{check_hopset, check_missing_spanner, check_shortcut, verify_result};
use hopspan::{Graph, Hopset, MissingSpanner, SubgraphResult, VerificationReport};

use crate::CliError;

pub enum Structure {
    Hopset(Hopset),
    Missing(MissingSpanner),
    Subgraph(SubgraphResult),
}

impl Structure {
    pub fn size(&self) -> usize {
        match self {
            Structure::Hopset(h) => h.len(),
            Structure::Missing(ms) => ms.len(),
            Structure::Subgraph(r) => r.size(),
        }
    }

    /// Stretch claim as `alpha`, `alpha+beta`, or with the realized hopbound
    /// or missing budget after a `;`.
    pub fn claim(&self) -> String {
        match self {
            Structure::Hopset(h) if h.mode.is_reachability() => format!("reach;hop={}", h.beta),
            Structure::Hopset(h) => format!("{};hop={}", h.mode.stretch(), h.beta),
            Structure::Missing(ms) => format!("{};r={}", ms.t, ms.r),
            Structure::Subgraph(r) if r.beta_add == 0 => r.alpha.to_string(),
            Structure::Subgraph(r) => format!("{}+{}", r.alpha, r.beta_add),
        }
    }

    pub fn to_text(&self, g: &Graph) -> Result<String, CliError> {
        Ok(match self {
            Structure::Hopset(h) => h.to_text(),
            Structure::Missing(ms) => ms.to_json()? + "\n",
            Structure::Subgraph(r) => r.to_text(g)?,
        })
    }

    /// Detects the format from the first line: hopset header, JSON object, or
    /// subgraph header.
    pub fn parse(g: &Graph, text: &str) -> Result<Self, CliError> {
        let head = text.trim_start();
        if head.starts_with("# hopset") {
            Ok(Structure::Hopset(Hopset::from_text(text)?))
        } else if head.starts_with('{') {
            Ok(Structure::Missing(MissingSpanner::from_json(text)?))
        } else {
            Ok(Structure::Subgraph(SubgraphResult::from_text(g, text)?))
        }
    }

    pub fn verify(&self, g: &Graph) -> VerificationReport {
        match self {
            Structure::Hopset(h) if h.mode.is_reachability() => check_shortcut(g, h, h.beta),
            Structure::Hopset(h) => check_hopset(g, h, h.beta, &h.mode),
            Structure::Missing(ms) => check_missing_spanner(g, ms),
            Structure::Subgraph(r) => verify_result(g, r),
        }
    }

    pub fn describe(&self) -> String {
        let what = match self {
            Structure::Hopset(h) if h.mode.is_reachability() => "shortcut set".to_string(),
            Structure::Hopset(_) => "hopset".to_string(),
            Structure::Missing(_) => "missing spanner".to_string(),
            Structure::Subgraph(r) => serde_json::to_value(r.kind).map_or_else(|_| "subgraph".into(), |v| v.as_str().unwrap_or("subgraph").to_string()),
        };
        format!("{what}: {} edges, claim {}", self.size(), self.claim())
    }
}
