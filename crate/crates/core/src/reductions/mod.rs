//! The compiler passes from counter machines down to matrix games.

pub mod count;
pub mod flags;
pub mod matrix;
pub mod normalize;
pub mod pipeline;
pub mod rg;
pub mod rgs;
pub mod update;

pub use count::{count_moves, eve_bound, MoveCount, StageCount};
pub use flags::{add_flags, FlaggedMachine, FlaggedTransition};
pub use matrix::{matrix_from_rg, rg_from_matrix};
pub use normalize::normalize_zero_zero;
pub use pipeline::Pipeline;
pub use rg::{rg_from_rgs, RgEveMove, RgMoveKind, RgReduction};
pub use rgs::rgs_from_2cm;
pub use update::{StateNumbering, UpdateVector};
