//! Hopsets, missing spanners, and the distance preservers and spanners
//! derived from them, with independent verification.

pub mod derived;
pub mod error;
pub mod graph;
pub mod hopset;
pub mod missing;
pub mod paths;
pub mod rational;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Edge, EdgeId, Graph, Length, PairSet, Vertex, Weight, INF};
pub use hopset::{ApproxMode, BaseAlgorithm, BetaSchedule, Hopset, TcwBase, Tradeoff};
pub use rational::Rational;
pub use missing::{hopsets_to_missing_spanner, MissingSpanner, WitnessPath};
pub use derived::{StretchScope, SubgraphKind, SubgraphResult};
pub use verify::VerificationReport;
