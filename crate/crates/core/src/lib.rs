//! Reductions from two-counter machines to robot games, with a game engine,
//! proof strategies and exhaustive solvers for checking them on small inputs.

pub mod corpus;
pub mod engine;
pub mod error;
pub mod format;
pub mod models;
pub mod reductions;
pub mod solver;
pub mod strategies;

pub use error::{EngineError, FormatError, ModelError, ReductionError};
pub use models::*;
pub use reductions::Pipeline;
