//! Simple policies used as opponents and as continuations after a deviation.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::engine::{apply_unchecked, Move, Position, Strategy, Turn};
use crate::error::EngineError;
use crate::models::Vec2;

fn none_legal(name: &str, pos: &Position) -> EngineError {
    EngineError::Strategy { name: name.to_string(), reason: format!("no legal move at {pos}") }
}

/// Always plays the same vector.
#[derive(Clone, Debug)]
pub struct Constant {
    name: String,
    vector: Vec2,
}

impl Constant {
    pub fn new(vector: Vec2) -> Self {
        Constant { name: format!("constant{vector}"), vector }
    }
}

impl Strategy for Constant {
    fn name(&self) -> &str {
        &self.name
    }
    fn reset(&mut self, _: &Position) {}
    fn observe(&mut self, _: Turn, _: &Move, _: &Position) {}
    fn propose(&mut self, pos: &Position, legal: &[Move]) -> Result<Move, EngineError> {
        legal.iter().find(|m| m.vector == self.vector).cloned().ok_or_else(|| none_legal(&self.name, pos))
    }
}

/// Plays a fixed list of moves, then defers to `then`.
pub struct Scripted {
    name: String,
    script: Vec<Move>,
    played: usize,
    then: Box<dyn Strategy>,
}

impl Scripted {
    pub fn new(script: Vec<Move>, then: Box<dyn Strategy>) -> Self {
        Scripted { name: format!("scripted({})", then.name()), script, played: 0, then }
    }
}

impl Strategy for Scripted {
    fn name(&self) -> &str {
        &self.name
    }
    fn reset(&mut self, initial: &Position) {
        self.played = 0;
        self.then.reset(initial);
    }
    fn observe(&mut self, player: Turn, mv: &Move, after: &Position) {
        self.then.observe(player, mv, after);
    }
    fn propose(&mut self, pos: &Position, legal: &[Move]) -> Result<Move, EngineError> {
        if let Some(mv) = self.script.get(self.played) {
            self.played += 1;
            return Ok(mv.clone());
        }
        self.then.propose(pos, legal)
    }
}

/// Uniform choice from the legal moves with a seeded generator.
pub struct Random {
    name: String,
    seed: u64,
    rng: ChaCha8Rng,
}

impl Random {
    pub fn new(seed: u64) -> Self {
        Random { name: format!("random{seed}"), seed, rng: ChaCha8Rng::seed_from_u64(seed) }
    }
}

impl Strategy for Random {
    fn name(&self) -> &str {
        &self.name
    }
    fn reset(&mut self, _: &Position) {
        self.rng = ChaCha8Rng::seed_from_u64(self.seed);
    }
    fn observe(&mut self, _: Turn, _: &Move, _: &Position) {}
    fn propose(&mut self, pos: &Position, legal: &[Move]) -> Result<Move, EngineError> {
        legal.choose(&mut self.rng).cloned().ok_or_else(|| none_legal(&self.name, pos))
    }
}

/// Picks the move leaving the smallest `|x| + |y|`, first in legal order on ties.
#[derive(Clone, Debug, Default)]
pub struct Greedy;

impl Strategy for Greedy {
    fn name(&self) -> &str {
        "greedy"
    }
    fn reset(&mut self, _: &Position) {}
    fn observe(&mut self, _: Turn, _: &Move, _: &Position) {}
    fn propose(&mut self, pos: &Position, legal: &[Move]) -> Result<Move, EngineError> {
        let size = |m: &Move| -> BigInt {
            let v = apply_unchecked(pos, m).vector;
            num_traits::Signed::abs(&v.x) + num_traits::Signed::abs(&v.y)
        };
        legal.iter().min_by_key(|m| size(m)).cloned().ok_or_else(|| none_legal("greedy", pos))
    }
}
