//! Robot game with states to a stateless two-dimensional robot game.
//!
//! States live in the base-8 digits of the second coordinate below `8ⁿ`, the
//! second counter is scaled by `4·8ⁿ`, and Adam gains six state-checks.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::rgs::adam_rgs_moves;
use super::update::{StateNumbering, UpdateVector};
use crate::error::ReductionError;
use crate::models::{EveState, Flags, RgsGame, RgsMove, RobotGame, Vec2};

/// Where one of Eve's stateless moves came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RgMoveKind {
    /// Image of a simulating move or of a connector into the emptying block.
    Regular(RgsMove),
    /// `Move(s₀₀, ⊤₀₀) − α`
    Finish { state: usize },
    /// `Move(s, k) − Check(i)` out of a simulation state.
    Defence { state: usize, to: usize, check: usize },
    /// Emptying-table row answering a regular Adam move.
    EmptyRegular,
    /// Emptying-table row answering a state-check.
    EmptyCheck { check: usize },
}

/// Symbolic decomposition of an Eve move:
/// `Add(1,add1) + Add(2,add2) + Σ Move(j,k) − Check(i)? − α?`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RgEveMove {
    pub kind: RgMoveKind,
    pub add1: BigInt,
    pub add2: BigInt,
    pub moves: Vec<(usize, usize)>,
    pub cancels_check: Option<usize>,
    pub minus_alpha: Option<Vec2>,
}

impl RgEveMove {
    pub fn vector(&self, num: &StateNumbering) -> Vec2 {
        let mut forms = vec![UpdateVector::Add1(self.add1.clone()), UpdateVector::Add2(self.add2.clone())];
        forms.extend(self.moves.iter().map(|&(j, k)| UpdateVector::Move(j, k)));
        let mut v = num.apply_sequence(&Vec2::zero(), &forms).expect("indices come from the numbering");
        if let Some(i) = self.cancels_check {
            v = v - num.eval(&UpdateVector::Check(i)).expect("top-block index");
        }
        if let Some(a) = &self.minus_alpha {
            v = v - a.clone();
        }
        v
    }

    /// Net change of each state coefficient.
    pub fn coefficient_deltas(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.moves.iter().flat_map(|&(j, k)| [(j, -1), (k, 1)])
    }

    pub fn has_check_cancel(&self) -> bool {
        self.cancels_check.is_some()
    }
}

/// Output of the stateless reduction.
#[derive(Clone, Debug)]
pub struct RgReduction {
    pub game: RobotGame,
    pub numbering: StateNumbering,
    /// First symbolic origin of each distinct Eve vector.
    pub catalogue: HashMap<Vec2, RgEveMove>,
    pub adam_checks: Vec<(usize, Vec2)>,
}

impl RgReduction {
    pub fn describe(&self, eve_vector: &Vec2) -> Option<&RgEveMove> {
        self.catalogue.get(eve_vector)
    }

    pub fn check_vector(&self, i: usize) -> Vec2 {
        self.numbering.eval(&UpdateVector::Check(i)).expect("top-block index")
    }

    /// Which check, if any, an Adam vector is.
    pub fn check_index(&self, adam: &Vec2) -> Option<usize> {
        self.adam_checks.iter().find(|(_, v)| v == adam).map(|(i, _)| *i)
    }
}

struct Builder<'a> {
    num: &'a StateNumbering,
    catalogue: HashMap<Vec2, RgEveMove>,
    order: Vec<Vec2>,
}

impl Builder<'_> {
    fn push(&mut self, mv: RgEveMove) {
        let v = mv.vector(self.num);
        if !self.catalogue.contains_key(&v) {
            self.order.push(v.clone());
            self.catalogue.insert(v, mv);
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn row(
        &mut self,
        kind: RgMoveKind,
        add1: i64,
        add2: i64,
        moves: Vec<(usize, usize)>,
        cancels_check: Option<usize>,
        minus_alpha: Option<Vec2>,
    ) {
        self.push(RgEveMove { kind, add1: add1.into(), add2: add2.into(), moves, cancels_check, minus_alpha });
    }
}

fn rgs_shape_ok(g: &RgsGame) -> Result<(), ReductionError> {
    let mut adam = g.adam_moves.clone();
    adam.sort();
    let mut want = adam_rgs_moves();
    want.sort();
    if adam != want {
        return Err(ReductionError::WrongShape("Adam's moves must be exactly {(0,0),(1,0)}".into()));
    }
    if g.initial.0.as_sim().is_none() {
        return Err(ReductionError::WrongShape("initial state must be a simulation state".into()));
    }
    for s in &g.eve_states {
        if let EveState::Top { primed: true, .. } = s {
            return Err(ReductionError::WrongShape(format!("unexpected primed state {s}")));
        }
    }
    Ok(())
}

pub fn rg_from_rgs(g: &RgsGame) -> Result<RgReduction, ReductionError> {
    rgs_shape_ok(g)?;
    let sims: Vec<_> = g.eve_states.iter().filter_map(|s| s.as_sim().cloned()).collect();
    let num = StateNumbering::new(sims);
    let idx = |s: &EveState| -> Result<usize, ReductionError> {
        num.index(s).ok_or_else(|| ReductionError::WrongShape(format!("state {s} is not declared")))
    };
    let alphas = adam_rgs_moves();
    let mut b = Builder { num: &num, catalogue: HashMap::new(), order: Vec::new() };

    // regular moves: simulating moves and connectors into the emptying block
    for mv in &g.eve_moves {
        match (&mv.source, &mv.target) {
            (EveState::Sim(_), EveState::Sim(_)) => {}
            (EveState::Sim(s), EveState::Top { flags, primed: false })
                if *flags == s.flags && mv.vector == Vec2::new(-1, 0) => {}
            // the self-looping emptying gadget is replaced by the tables below
            (EveState::Top { .. }, EveState::Top { .. }) => continue,
            _ => return Err(ReductionError::WrongShape(format!("unexpected Eve move {mv}"))),
        }
        let (s, t) = (idx(&mv.source)?, idx(&mv.target)?);
        b.push(RgEveMove {
            kind: RgMoveKind::Regular(mv.clone()),
            add1: mv.vector.x.clone(),
            add2: mv.vector.y.clone(),
            moves: vec![(s, t)],
            cancels_check: None,
            minus_alpha: None,
        });
    }

    let top = num.top_block();
    let pp = [num.top_index(Flags::PP, false), num.top_index(Flags::PP, true)];
    let pz = [num.top_index(Flags::PZ, false), num.top_index(Flags::PZ, true)];
    let zp = [num.top_index(Flags::ZP, false), num.top_index(Flags::ZP, true)];
    let sink = 0usize;

    // finishing moves and state-defence moves out of simulation states
    for s_idx in 1..=num.m() {
        let state = num.state(s_idx).expect("in range");
        let flags = state.flags();
        if flags == Flags::ZZ {
            for a in &alphas {
                b.row(RgMoveKind::Finish { state: s_idx }, 0, 0, vec![(s_idx, sink)], None, Some(a.clone()));
            }
            for &i in &top {
                b.row(RgMoveKind::Defence { state: s_idx, to: sink, check: i }, 0, 0, vec![(s_idx, sink)], Some(i), None);
            }
        } else {
            for k in [num.top_index(flags, false), num.top_index(flags, true)] {
                for &i in top.iter().filter(|&&i| i != k) {
                    b.row(RgMoveKind::Defence { state: s_idx, to: k, check: i }, 0, 0, vec![(s_idx, k)], Some(i), None);
                }
            }
        }
    }

    // emptying table, rows answering a regular move α
    for a in &alphas {
        let alpha = || Some(a.clone());
        for (pair, d1, d2) in [(pp, -4, -1), (pz, -4, 0), (zp, 0, -1)] {
            for &j in &pair {
                for &k in pair.iter().filter(|&&k| k != j) {
                    // written −Move(j,k), i.e. a move from k to j
                    b.row(RgMoveKind::EmptyRegular, d1, d2, vec![(k, j)], None, alpha());
                }
            }
        }
        for &j in &pp {
            for &k in top.iter().filter(|&&k| k != j) {
                b.row(RgMoveKind::EmptyRegular, -4, -1, vec![(j, k)], None, alpha());
            }
        }
        for (pair, d1, d2) in [(pp, -4, -1), (pz, -4, 0), (zp, 0, -1)] {
            for &j in &pair {
                b.row(RgMoveKind::EmptyRegular, d1, d2, vec![(j, sink)], None, alpha());
            }
        }
    }

    // emptying table, rows answering Check(i)
    for &i in &top {
        let kind = || RgMoveKind::EmptyCheck { check: i };
        for e1 in 0..=1 {
            for e2 in 0..=1 {
                b.row(kind(), -4 * e1, -e2, vec![], Some(i), None);
            }
        }
        for &j in &pp {
            for &k in top.iter().filter(|&&k| k != j && k != i) {
                b.row(kind(), -4, 1, vec![(j, k)], Some(i), None);
            }
        }
        for (pair, d1, d2) in [(pp, -4, -1), (pz, -4, 0), (zp, 0, -1)] {
            for &j in &pair {
                b.row(kind(), d1, d2, vec![(j, sink)], Some(i), None);
            }
        }
    }

    let adam_checks: Vec<(usize, Vec2)> = top.iter().map(|&i| (i, num.eval(&UpdateVector::Check(i)).expect("top"))).collect();
    let mut adam = alphas.clone();
    adam.extend(adam_checks.iter().map(|(_, v)| v.clone()));

    let (s0, v0) = &g.initial;
    let initial = num.apply_sequence(
        &Vec2::zero(),
        &[UpdateVector::Add1(v0.x.clone()), UpdateVector::Add2(v0.y.clone()), UpdateVector::Move(sink, idx(s0)?)],
    )?;

    let (order, catalogue) = (b.order, b.catalogue);
    let game = RobotGame::new(adam, order, initial);
    debug_assert!(game.adam_moves.iter().filter(|a| !a.y.is_zero()).count() == 6);
    Ok(RgReduction { game, numbering: num, catalogue, adam_checks })
}
