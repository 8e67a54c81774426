//! Backward induction over rounds: the positions from which Eve forces the
//! origin within `k` rounds, for increasing `k`, optionally restricted to a box.

use rustc_hash::FxHashMap as HashMap;

use super::arena::{add, is_origin, sub, Arena, Bounds, Point};
use super::arena::Scalar;

pub type Key<C> = (usize, Point<C>);

#[derive(Clone, Debug)]
pub struct Levels<C> {
    /// Adam to move: least number of rounds within which Eve forces a win.
    pub adam: HashMap<Key<C>, usize>,
    /// Eve to move: rounds including the current one.
    pub eve: HashMap<Key<C>, usize>,
    pub bounds: Option<Bounds<C>>,
    /// Highest level computed.
    pub done: usize,
    /// No new positions appeared at the last level, so later levels add none.
    pub fixpoint: bool,
    frontier: Vec<Key<C>>,
}

impl<C: Scalar> Levels<C> {
    pub fn new(arena: &Arena<C>, bounds: Option<Bounds<C>>) -> Self {
        let origin: Point<C> = (C::zero(), C::zero());
        let frontier: Vec<Key<C>> = (0..arena.states.len()).map(|s| (s, origin.clone())).collect();
        let adam = frontier.iter().cloned().map(|k| (k, 0)).collect();
        Levels { adam, eve: HashMap::default(), bounds, done: 0, fixpoint: false, frontier }
    }

    fn inside(&self, p: &Point<C>) -> bool {
        self.bounds.as_ref().is_none_or(|b| b.contains(p))
    }

    /// Computes levels up to `horizon` (or until the fixpoint).
    pub fn extend_to(&mut self, arena: &Arena<C>, horizon: usize) {
        while self.done < horizon && !self.fixpoint {
            self.step(arena);
        }
    }

    /// Computes levels until nothing new appears.
    pub fn saturate(&mut self, arena: &Arena<C>) {
        while !self.fixpoint {
            self.step(arena);
        }
    }

    fn step(&mut self, arena: &Arena<C>) {
        let k = self.done + 1;
        let mut new_eve = Vec::new();
        for (t, u) in std::mem::take(&mut self.frontier) {
            for (s, e) in &arena.into[t] {
                let p = sub(&u, e);
                if self.inside(&p) && !self.eve.contains_key(&(*s, p.clone())) {
                    self.eve.insert((*s, p.clone()), k);
                    new_eve.push((*s, p));
                }
            }
        }
        let mut new_adam = Vec::new();
        if !arena.adam.is_empty() {
            for (s, p) in &new_eve {
                for a in &arena.adam {
                    let c = sub(p, a);
                    let key = (*s, c);
                    if self.adam.contains_key(&key) || !self.inside(&key.1) {
                        continue;
                    }
                    if arena.adam.iter().all(|a2| self.eve.contains_key(&(*s, add(&key.1, a2)))) {
                        self.adam.insert(key.clone(), k);
                        new_adam.push(key);
                    }
                }
            }
        }
        self.fixpoint = new_eve.is_empty() && new_adam.is_empty();
        self.frontier = new_adam;
        self.done = k;
    }

    pub fn adam_rank(&self, s: usize, p: &Point<C>) -> Option<usize> {
        if is_origin(p) {
            return Some(0);
        }
        self.adam.get(&(s, p.clone())).copied()
    }

    pub fn eve_rank(&self, s: usize, p: &Point<C>) -> Option<usize> {
        self.eve.get(&(s, p.clone())).copied()
    }

    /// Eve's move from `(s, p)` that lowers the rank, if she has one.
    pub fn eve_choice(&self, arena: &Arena<C>, s: usize, p: &Point<C>) -> Option<(Point<C>, usize)> {
        let r = self.eve_rank(s, p)?;
        arena.eve[s]
            .iter()
            .find(|(e, t)| self.adam_rank(*t, &add(p, e)).is_some_and(|q| q < r))
            .cloned()
    }

    pub fn len(&self) -> usize {
        self.adam.len() + self.eve.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
