//! Depth-bounded AND-OR search from a single position, memoized on
//! `(turn, state, vector)`.

use std::collections::HashMap;

use super::arena::{add, is_origin, Arena, Bounds, Point, Scalar};
use crate::engine::Turn;

#[derive(Clone, Copy, Debug, Default)]
struct Known {
    /// Eve cannot win within this many rounds.
    lose_upto: Option<usize>,
    /// Eve wins within this many rounds.
    win_at: Option<usize>,
}

pub struct Search<'a, C> {
    arena: &'a Arena<C>,
    bounds: Option<Bounds<C>>,
    memo: HashMap<(Turn, usize, Point<C>), Known>,
    pub visited: usize,
}

impl<'a, C: Scalar> Search<'a, C> {
    pub fn new(arena: &'a Arena<C>, bounds: Option<Bounds<C>>) -> Self {
        Search { arena, bounds, memo: HashMap::new(), visited: 0 }
    }

    fn inside(&self, p: &Point<C>) -> bool {
        self.bounds.as_ref().is_none_or(|b| b.contains(p))
    }

    /// Whether Eve forces the origin within `d` rounds; `d` counts the round
    /// in progress when Eve is to move.
    pub fn wins(&mut self, turn: Turn, s: usize, p: &Point<C>, d: usize) -> bool {
        if turn == Turn::Adam && is_origin(p) {
            return true;
        }
        if d == 0 || !self.inside(p) {
            return false;
        }
        let key = (turn, s, p.clone());
        let known = self.memo.get(&key).copied().unwrap_or_default();
        if known.win_at.is_some_and(|w| w <= d) {
            return true;
        }
        if known.lose_upto.is_some_and(|l| l >= d) {
            return false;
        }
        self.visited += 1;
        let result = match turn {
            Turn::Adam => {
                let arena = self.arena;
                !arena.adam.is_empty() && arena.adam.iter().all(|a| self.wins(Turn::Eve, s, &add(p, a), d))
            }
            Turn::Eve => {
                let arena = self.arena;
                arena.eve[s].iter().any(|(e, t)| {
                    let q = add(p, e);
                    is_origin(&q) || self.wins(Turn::Adam, *t, &q, d - 1)
                })
            }
        };
        let entry = self.memo.entry(key).or_default();
        if result {
            entry.win_at = Some(entry.win_at.map_or(d, |w| w.min(d)));
        } else {
            entry.lose_upto = Some(entry.lose_upto.map_or(d, |l| l.max(d)));
        }
        result
    }

    /// Least `k ≤ horizon` with a forced win, if any.
    pub fn least_win(&mut self, turn: Turn, s: usize, p: &Point<C>, horizon: usize) -> Option<usize> {
        if !self.wins(turn, s, p, horizon) {
            return None;
        }
        (0..=horizon).find(|&k| self.wins(turn, s, p, k))
    }
}
