//! Turn-based play: Adam moves first each round, then Eve. Eve wins when the
//! vector is zero right after her move.

use std::fmt;

use crate::error::EngineError;
use crate::models::{embed, EveState, MatrixGame, RgsGame, RobotGame, Vec2, Vec3};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Turn {
    Adam,
    Eve,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Position {
    pub turn: Turn,
    /// Present only in games with states.
    pub eve_state: Option<EveState>,
    pub vector: Vec2,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let who = match self.turn {
            Turn::Adam => "Adam",
            Turn::Eve => "Eve",
        };
        match &self.eve_state {
            Some(s) => write!(f, "{who} to move at ({s}, {})", self.vector),
            None => write!(f, "{who} to move at {}", self.vector),
        }
    }
}

/// A move as played: the vector and, for Eve in a game with states, the target state.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Move {
    pub vector: Vec2,
    pub target: Option<EveState>,
}

impl Move {
    pub fn vector(v: Vec2) -> Self {
        Move { vector: v, target: None }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.target {
            Some(t) => write!(f, "{} -> {t}", self.vector),
            None => write!(f, "{}", self.vector),
        }
    }
}

pub trait Game {
    fn initial_position(&self) -> Position;
    fn legal_moves(&self, pos: &Position) -> Vec<Move>;
}

impl Game for RobotGame {
    fn initial_position(&self) -> Position {
        Position { turn: Turn::Adam, eve_state: None, vector: self.initial.clone() }
    }

    fn legal_moves(&self, pos: &Position) -> Vec<Move> {
        let set = match pos.turn {
            Turn::Adam => &self.adam_moves,
            Turn::Eve => &self.eve_moves,
        };
        set.iter().cloned().map(Move::vector).collect()
    }
}

impl Game for RgsGame {
    fn initial_position(&self) -> Position {
        Position { turn: Turn::Adam, eve_state: Some(self.initial.0.clone()), vector: self.initial.1.clone() }
    }

    fn legal_moves(&self, pos: &Position) -> Vec<Move> {
        match (pos.turn, &pos.eve_state) {
            (Turn::Adam, _) => self.adam_moves.iter().cloned().map(Move::vector).collect(),
            (Turn::Eve, Some(s)) => self
                .moves_from(s)
                .map(|m| Move { vector: m.vector.clone(), target: Some(m.target.clone()) })
                .collect(),
            (Turn::Eve, None) => Vec::new(),
        }
    }
}

/// Applies `mv` without checking legality.
pub fn apply_unchecked(pos: &Position, mv: &Move) -> Position {
    let (turn, eve_state) = match pos.turn {
        Turn::Adam => (Turn::Eve, pos.eve_state.clone()),
        Turn::Eve => (Turn::Adam, mv.target.clone().or_else(|| pos.eve_state.clone())),
    };
    Position { turn, eve_state, vector: &pos.vector + &mv.vector }
}

pub fn apply<G: Game + ?Sized>(game: &G, pos: &Position, mv: &Move) -> Result<Position, EngineError> {
    if !game.legal_moves(pos).contains(mv) {
        return Err(EngineError::IllegalMove(format!("{mv} at {pos}")));
    }
    Ok(apply_unchecked(pos, mv))
}

pub fn is_eve_win(pos: &Position) -> bool {
    pos.turn == Turn::Adam && pos.vector.is_zero()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    EveWinsAt(usize),
    Ongoing,
    EveStuck,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlayTrace {
    pub positions: Vec<Position>,
    pub moves: Vec<Move>,
    pub verdict: Verdict,
}

impl PlayTrace {
    pub fn last(&self) -> &Position {
        self.positions.last().expect("a trace holds the initial position")
    }

    /// Positions at which Eve is to move.
    pub fn eve_turns(&self) -> impl Iterator<Item = &Position> {
        self.positions.iter().filter(|p| p.turn == Turn::Eve)
    }
}

/// A history-observing move proposer.
pub trait Strategy {
    fn name(&self) -> &str;
    fn reset(&mut self, initial: &Position);
    /// Called after every move by either player with the resulting position.
    fn observe(&mut self, player: Turn, mv: &Move, after: &Position);
    fn propose(&mut self, pos: &Position, legal: &[Move]) -> Result<Move, EngineError>;
}

fn ask(s: &mut dyn Strategy, pos: &Position, legal: &[Move]) -> Result<Move, EngineError> {
    let mv = s.propose(pos, legal)?;
    if !legal.contains(&mv) {
        return Err(EngineError::Strategy { name: s.name().to_string(), reason: format!("proposed illegal {mv} at {pos}") });
    }
    Ok(mv)
}

/// Plays up to `max_rounds` rounds from the initial position.
pub fn play<G: Game + ?Sized>(
    game: &G,
    adam: &mut dyn Strategy,
    eve: &mut dyn Strategy,
    max_rounds: usize,
) -> Result<PlayTrace, EngineError> {
    let start = game.initial_position();
    adam.reset(&start);
    eve.reset(&start);
    continue_play(game, adam, eve, start, max_rounds)
}

/// Plays from `start` (Adam to move) with strategies already positioned there.
pub fn continue_play<G: Game + ?Sized>(
    game: &G,
    adam: &mut dyn Strategy,
    eve: &mut dyn Strategy,
    start: Position,
    max_rounds: usize,
) -> Result<PlayTrace, EngineError> {
    let mut positions = vec![start];
    let mut moves = Vec::new();
    for round in 1..=max_rounds {
        for player in [Turn::Adam, Turn::Eve] {
            let pos = positions.last().expect("non-empty").clone();
            let legal = game.legal_moves(&pos);
            if legal.is_empty() {
                let verdict = if player == Turn::Eve { Verdict::EveStuck } else { Verdict::Ongoing };
                return Ok(PlayTrace { positions, moves, verdict });
            }
            let mover: &mut dyn Strategy = if player == Turn::Adam { &mut *adam } else { &mut *eve };
            let mv = ask(mover, &pos, &legal)?;
            let next = apply_unchecked(&pos, &mv);
            adam.observe(player, &mv, &next);
            eve.observe(player, &mv, &next);
            positions.push(next);
            moves.push(mv);
        }
        if is_eve_win(positions.last().expect("non-empty")) {
            return Ok(PlayTrace { positions, moves, verdict: Verdict::EveWinsAt(round) });
        }
    }
    Ok(PlayTrace { positions, moves, verdict: Verdict::Ongoing })
}

/// Re-applies `moves` from `start`, checking legality at each step.
pub fn replay<G: Game + ?Sized>(game: &G, start: &Position, moves: &[Move]) -> Result<Vec<Position>, EngineError> {
    let mut out = vec![start.clone()];
    for mv in moves {
        let next = apply(game, out.last().expect("non-empty"), mv)?;
        out.push(next);
    }
    Ok(out)
}

/// Runs a stateless play through the matrix game: each vector move is replaced
/// by its matrix and applied to the embedded vector.
pub fn matrix_replay(game: &MatrixGame, moves: &[Move]) -> Result<Vec<Vec3>, EngineError> {
    let mut cur = game.initial.clone();
    let mut out = vec![cur.clone()];
    for (i, mv) in moves.iter().enumerate() {
        let mats = if i % 2 == 0 { &game.adam_mats } else { &game.eve_mats };
        let m = mats
            .iter()
            .find(|m| m.as_move().as_ref() == Some(&mv.vector))
            .ok_or_else(|| EngineError::IllegalMove(format!("no matrix for {mv}")))?;
        cur = m.apply(&cur);
        out.push(cur.clone());
    }
    Ok(out)
}

pub fn embed_position(pos: &Position) -> Vec3 {
    embed(&pos.vector)
}
