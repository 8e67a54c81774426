//! Exhaustive oracles: forward minimax, backward levels and the box attractor.

mod arena;
mod harness;
mod minimax;
mod retrograde;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Signed;

pub use arena::{Arena, Bounds, Point, Scalar};
pub use harness::{verify_lemma, LemmaReport, Scenario, ScenarioFailure, Settings, Verifier, STATELESS_DRAIN_SLACK};
pub use minimax::Search;
pub use retrograde::Levels;

use crate::engine::{Move, Position, Turn};
use crate::models::{RgsGame, RobotGame, Vec2};

#[derive(Clone, Copy, Debug)]
pub enum GameRef<'a> {
    Rg(&'a RobotGame),
    Rgs(&'a RgsGame),
}

impl<'a> From<&'a RobotGame> for GameRef<'a> {
    fn from(g: &'a RobotGame) -> Self {
        GameRef::Rg(g)
    }
}

impl<'a> From<&'a RgsGame> for GameRef<'a> {
    fn from(g: &'a RgsGame) -> Self {
        GameRef::Rgs(g)
    }
}

impl GameRef<'_> {
    fn arena<C: Scalar>(&self) -> Option<Arena<C>> {
        match self {
            GameRef::Rg(g) => Arena::from_rg(g),
            GameRef::Rgs(g) => Arena::from_rgs(g),
        }
    }
}

/// Box `[−x, x] × [−y, y]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxBound {
    pub x: BigInt,
    pub y: BigInt,
}

impl BoxBound {
    pub fn square(b: impl Into<BigInt>) -> Self {
        let b = b.into();
        BoxBound { x: b.clone(), y: b }
    }

    pub fn contains(&self, v: &Vec2) -> bool {
        v.x.abs() <= self.x && v.y.abs() <= self.y
    }

    fn to<C: Scalar>(&self) -> Option<Bounds<C>> {
        Some(Bounds { bx: C::from_big(&self.x)?, by: C::from_big(&self.y)? })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveVerdict {
    EveWinsWithin(usize),
    NoEveWinWithin(usize),
}

impl SolveVerdict {
    pub fn eve_wins(&self) -> bool {
        matches!(self, SolveVerdict::EveWinsWithin(_))
    }
}

/// Eve's winning strategy unfolded from a position: one child at Eve's
/// positions, one per Adam move at Adam's.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub position: Position,
    pub children: Vec<(Move, Witness)>,
}

impl Witness {
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(|(_, c)| c.size()).sum::<usize>()
    }

    pub fn positions(&self) -> Vec<&Position> {
        let mut out = vec![&self.position];
        for (_, c) in &self.children {
            out.extend(c.positions());
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub verdict: SolveVerdict,
    pub witness: Option<Witness>,
}

/// Above this many nodes the witness is dropped.
pub const WITNESS_BUDGET: usize = 20_000;

const HEADROOM_BITS: u64 = 120;

/// Whether every coordinate reachable in `rounds` rounds from `start` (and all box
/// corners) stays far inside `i128`.
fn fits_small(game: GameRef<'_>, start: &Vec2, rounds: usize, bound: Option<&BoxBound>) -> bool {
    let Some(arena) = game.arena::<BigInt>() else { return false };
    let (sx, sy) = arena.max_step();
    let step = sx.max(sy) * 2u32;
    let need = match bound {
        Some(b) => b.x.clone().max(b.y.clone()) + step * 2u32,
        None => start.max_abs() + step * (rounds as u64 + 2),
    };
    need.bits() < HEADROOM_BITS
}

fn witness<C: Scalar>(search: &mut Search<'_, C>, arena: &Arena<C>, turn: Turn, s: usize, p: &Point<C>, d: usize, budget: &mut usize) -> Option<Witness> {
    let position = arena.position(turn, s, p);
    *budget = budget.checked_sub(1)?;
    let mut children = Vec::new();
    match turn {
        Turn::Adam if arena::is_origin(p) => {}
        Turn::Adam => {
            for a in &arena.adam {
                let q = arena::add(p, a);
                let mv = Move::vector(Vec2 { x: a.0.to_big(), y: a.1.to_big() });
                children.push((mv, witness(search, arena, Turn::Eve, s, &q, d, budget)?));
            }
        }
        Turn::Eve => {
            let (e, t) = arena.eve[s]
                .iter()
                .find(|(e, t)| {
                    let q = arena::add(p, e);
                    arena::is_origin(&q) || search.wins(Turn::Adam, *t, &q, d - 1)
                })?
                .clone();
            let q = arena::add(p, &e);
            let mv = Move { vector: Vec2 { x: e.0.to_big(), y: e.1.to_big() }, target: arena.states[t].clone() };
            children.push((mv, witness(search, arena, Turn::Adam, t, &q, d - 1, budget)?));
        }
    }
    Some(Witness { position, children })
}

fn minimax_in<C: Scalar>(game: GameRef<'_>, pos: &Position, horizon: usize, bound: Option<&BoxBound>) -> Option<SolveResult> {
    let arena = game.arena::<C>()?;
    let bounds = match bound {
        Some(b) => Some(b.to::<C>()?),
        None => None,
    };
    let Some((turn, s, p)) = arena.key(pos) else {
        return Some(SolveResult { verdict: SolveVerdict::NoEveWinWithin(horizon), witness: None });
    };
    let mut search = Search::new(&arena, bounds);
    Some(match search.least_win(turn, s, &p, horizon) {
        Some(k) => {
            let mut budget = WITNESS_BUDGET;
            let w = witness(&mut search, &arena, turn, s, &p, k, &mut budget);
            SolveResult { verdict: SolveVerdict::EveWinsWithin(k), witness: w }
        }
        None => SolveResult { verdict: SolveVerdict::NoEveWinWithin(horizon), witness: None },
    })
}

/// Forward minimax: whether Eve forces the origin within `horizon` rounds from
/// `pos` against every Adam strategy. With a box, leaving it loses for Eve.
pub fn minimax_winner<'a>(game: impl Into<GameRef<'a>>, pos: &Position, horizon: usize, bound: Option<&BoxBound>) -> SolveResult {
    let game = game.into();
    if fits_small(game, &pos.vector, horizon, bound) {
        if let Some(r) = minimax_in::<i128>(game, pos, horizon, bound) {
            return r;
        }
    }
    minimax_in::<BigInt>(game, pos, horizon, bound).expect("big integers always fit")
}

/// Positions inside a box from which Eve forces the origin without leaving it,
/// with the number of rounds she needs.
#[derive(Clone, Debug)]
pub struct Region {
    pub bound: BoxBound,
    pub ranks: HashMap<Position, usize>,
}

impl Region {
    pub fn contains(&self, pos: &Position) -> bool {
        (pos.turn == Turn::Adam && pos.vector.is_zero()) || self.ranks.contains_key(pos)
    }

    pub fn rank(&self, pos: &Position) -> Option<usize> {
        if pos.turn == Turn::Adam && pos.vector.is_zero() {
            return Some(0);
        }
        self.ranks.get(pos).copied()
    }
}

fn attractor_in<C: Scalar>(game: GameRef<'_>, bound: &BoxBound) -> Option<Region> {
    let arena = game.arena::<C>()?;
    let mut levels = Levels::new(&arena, Some(bound.to::<C>()?));
    levels.saturate(&arena);
    let mut ranks = HashMap::new();
    for ((s, p), r) in &levels.adam {
        ranks.insert(arena.position(Turn::Adam, *s, p), *r);
    }
    for ((s, p), r) in &levels.eve {
        ranks.insert(arena.position(Turn::Eve, *s, p), *r);
    }
    Some(Region { bound: bound.clone(), ranks })
}

/// Least fixpoint of the controlled predecessor restricted to the box.
pub fn attractor<'a>(game: impl Into<GameRef<'a>>, bound: &BoxBound) -> Region {
    let game = game.into();
    if fits_small(game, &Vec2::zero(), 0, Some(bound)) {
        if let Some(r) = attractor_in::<i128>(game, bound) {
            return r;
        }
    }
    attractor_in::<BigInt>(game, bound).expect("big integers always fit")
}

/// Backward levels kept for many queries against the same game.
pub enum Oracle {
    Small(Arena<i128>, Levels<i128>),
    Big(Arena<BigInt>, Levels<BigInt>),
}

impl Oracle {
    pub fn new<'a>(game: impl Into<GameRef<'a>>, horizon: usize, bound: Option<&BoxBound>) -> Oracle {
        let game = game.into();
        if fits_small(game, &Vec2::zero(), horizon, bound) {
            if let (Some(arena), bounds) = (game.arena::<i128>(), bound.map(|b| b.to::<i128>())) {
                if bounds.as_ref().is_none_or(|b| b.is_some()) {
                    let mut levels = Levels::new(&arena, bounds.flatten());
                    levels.extend_to(&arena, horizon);
                    return Oracle::Small(arena, levels);
                }
            }
        }
        let arena = game.arena::<BigInt>().expect("big integers always fit");
        let mut levels = Levels::new(&arena, bound.map(|b| b.to::<BigInt>().expect("fits")));
        levels.extend_to(&arena, horizon);
        Oracle::Big(arena, levels)
    }

    /// Rounds Eve needs from `pos`, if within the computed horizon.
    pub fn rank(&self, pos: &Position) -> Option<usize> {
        fn go<C: Scalar>(arena: &Arena<C>, levels: &Levels<C>, pos: &Position) -> Option<usize> {
            let (turn, s, p) = arena.key(pos)?;
            match turn {
                Turn::Adam => levels.adam_rank(s, &p),
                Turn::Eve => levels.eve_rank(s, &p),
            }
        }
        match self {
            Oracle::Small(a, l) => go(a, l, pos),
            Oracle::Big(a, l) => go(a, l, pos),
        }
    }

    pub fn horizon(&self) -> usize {
        match self {
            Oracle::Small(_, l) => l.done,
            Oracle::Big(_, l) => l.done,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Oracle::Small(_, l) => l.len(),
            Oracle::Big(_, l) => l.len(),
        }
    }

    pub fn verdict(&self, pos: &Position) -> SolveVerdict {
        match self.rank(pos) {
            Some(k) => SolveVerdict::EveWinsWithin(k),
            None => SolveVerdict::NoEveWinWithin(self.horizon()),
        }
    }
}
