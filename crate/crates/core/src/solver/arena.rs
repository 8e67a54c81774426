//! Games with states indexed by integers and coordinates in a chosen scalar type.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::engine::{Position, Turn};
use crate::models::{EveState, RgsGame, RobotGame, Vec2};

/// Coordinate arithmetic the solvers need.
pub trait Scalar: Clone + Eq + Hash + Ord + Debug + Send + Sync {
    fn from_big(v: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn zero() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn abs_le(&self, bound: &Self) -> bool;
}

impl Scalar for i128 {
    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i128()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn zero() -> Self {
        0
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn abs_le(&self, bound: &Self) -> bool {
        self.abs() <= *bound
    }
}

impl Scalar for BigInt {
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn zero() -> Self {
        Zero::zero()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn abs_le(&self, bound: &Self) -> bool {
        self.abs() <= *bound
    }
}

pub type Point<C> = (C, C);

pub fn add<C: Scalar>(a: &Point<C>, b: &Point<C>) -> Point<C> {
    (a.0.add(&b.0), a.1.add(&b.1))
}

pub fn sub<C: Scalar>(a: &Point<C>, b: &Point<C>) -> Point<C> {
    (a.0.sub(&b.0), a.1.sub(&b.1))
}

pub fn is_origin<C: Scalar>(p: &Point<C>) -> bool {
    p.0 == C::zero() && p.1 == C::zero()
}

/// Box `[−bx, bx] × [−by, by]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounds<C> {
    pub bx: C,
    pub by: C,
}

impl<C: Scalar> Bounds<C> {
    pub fn contains(&self, p: &Point<C>) -> bool {
        p.0.abs_le(&self.bx) && p.1.abs_le(&self.by)
    }
}

/// Eve's moves grouped by source state; Adam is stateless.
#[derive(Clone, Debug)]
pub struct Arena<C> {
    pub states: Vec<Option<EveState>>,
    pub adam: Vec<Point<C>>,
    /// `eve[s]` = moves `(vector, target)` leaving state `s`.
    pub eve: Vec<Vec<(Point<C>, usize)>>,
    /// `into[t]` = moves `(source, vector)` entering state `t`.
    pub into: Vec<Vec<(usize, Point<C>)>>,
    pub initial: (usize, Point<C>),
}

fn point<C: Scalar>(v: &Vec2) -> Option<Point<C>> {
    Some((C::from_big(&v.x)?, C::from_big(&v.y)?))
}

impl<C: Scalar> Arena<C> {
    fn build(states: Vec<Option<EveState>>, adam: Vec<Point<C>>, eve: Vec<Vec<(Point<C>, usize)>>, initial: (usize, Point<C>)) -> Self {
        let mut into = vec![Vec::new(); states.len()];
        for (s, moves) in eve.iter().enumerate() {
            for (v, t) in moves {
                into[*t].push((s, v.clone()));
            }
        }
        Arena { states, adam, eve, into, initial }
    }

    /// `None` if some entry does not fit `C`.
    pub fn from_rg(g: &RobotGame) -> Option<Self> {
        let adam = g.adam_moves.iter().map(point).collect::<Option<_>>()?;
        let eve = g.eve_moves.iter().map(|v| Some((point(v)?, 0))).collect::<Option<_>>()?;
        Some(Self::build(vec![None], adam, vec![eve], (0, point(&g.initial)?)))
    }

    pub fn from_rgs(g: &RgsGame) -> Option<Self> {
        let states: Vec<EveState> = g.eve_states.clone();
        let idx = |s: &EveState| states.iter().position(|x| x == s);
        let adam = g.adam_moves.iter().map(point).collect::<Option<_>>()?;
        let mut eve = vec![Vec::new(); states.len()];
        for m in &g.eve_moves {
            eve[idx(&m.source)?].push((point(&m.vector)?, idx(&m.target)?));
        }
        let initial = (idx(&g.initial.0)?, point(&g.initial.1)?);
        Some(Self::build(states.into_iter().map(Some).collect(), adam, eve, initial))
    }

    pub fn state_index(&self, s: &Option<EveState>) -> Option<usize> {
        if self.states.len() == 1 && s.is_none() {
            return Some(0);
        }
        self.states.iter().position(|x| x == s)
    }

    /// Solver key of an engine position.
    pub fn key(&self, pos: &Position) -> Option<(Turn, usize, Point<C>)> {
        Some((pos.turn, self.state_index(&pos.eve_state)?, point(&pos.vector)?))
    }

    pub fn position(&self, turn: Turn, s: usize, p: &Point<C>) -> Position {
        Position { turn, eve_state: self.states[s].clone(), vector: Vec2 { x: p.0.to_big(), y: p.1.to_big() } }
    }

    /// Largest absolute coordinate over all moves.
    pub fn max_step(&self) -> (BigInt, BigInt) {
        let all = self.adam.iter().chain(self.eve.iter().flatten().map(|(v, _)| v));
        let mut m = (<BigInt as Zero>::zero(), <BigInt as Zero>::zero());
        for v in all {
            m.0 = m.0.max(v.0.to_big().abs());
            m.1 = m.1.max(v.1.to_big().abs());
        }
        m
    }
}
