//! Text formats: machine files and JSON game files.

mod json;
mod machine_text;

pub use json::{check_bits, emit_game, int_cap_from_env, load_game, max_bits, AnyGame};
pub use machine_text::{emit_machine, parse_machine};
