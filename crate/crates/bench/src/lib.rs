//! Fixture machines shared by the benchmarks.

use robotgames::{corpus, MinskyMachine, Pipeline};

/// Corpus machines in increasing size.
pub const SIZES: [&str; 4] = ["one-step", "zero-at-2", "zero-at-8", "doubler"];

pub fn machine(name: &str) -> MinskyMachine {
    corpus::machine(name).expect("bench fixtures are corpus machines")
}

pub fn pipeline(name: &str) -> Pipeline {
    Pipeline::build(&machine(name)).expect("corpus machines reduce")
}
