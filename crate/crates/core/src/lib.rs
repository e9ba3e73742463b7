//! Coalition formation by merge/split rules under pluggable comparison
//! relations: exact partition algebra, preference orders on value multisets
//! and payoff vectors, game models that induce relations, and exhaustive
//! stability/outcome checkers.

pub mod axioms;
pub mod engine;
pub mod games;
pub mod orders;
pub mod par;
pub mod partition;
pub mod rational;

pub use engine::{EngineError, Method, Move, MoveGraph, MoveTrace, Schedule, StabilityVerdict};
pub use games::{GameError, GameInstance, TuGame};
pub use orders::{ComparisonRelation, Multiset, OrderKind, PayoffVector};
pub use partition::{Coalition, Collection, Partition, Player};
pub use rational::Rat;
