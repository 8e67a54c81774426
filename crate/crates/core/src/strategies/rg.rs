//! Proof strategies for the stateless robot game. Both sides keep a ledger of
//! the symbolic moves played instead of decoding the base-8 integers.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rgs::{fail, first_config, pick, punish_mod4};
use crate::engine::{Move, Position, Strategy, Turn};
use crate::error::EngineError;
use crate::models::{EveState, Flags, MachineConfig, SimState, StepResult, Vec2};
use crate::reductions::rgs::simulating_vector;
use crate::reductions::{Pipeline, RgReduction, StateNumbering, UpdateVector};

/// What both RG strategies need from the pipeline.
#[derive(Clone, Debug)]
pub struct RgContext {
    pub pipeline: Arc<Pipeline>,
}

impl RgContext {
    pub fn new(p: &Pipeline) -> Self {
        RgContext { pipeline: Arc::new(p.clone()) }
    }

    pub fn rg(&self) -> &RgReduction {
        &self.pipeline.rg
    }

    pub fn num(&self) -> &StateNumbering {
        &self.pipeline.rg.numbering
    }

    /// `Add(1,a1) + Add(2,a2) + Move(j,k)? − minus`
    pub fn combine(&self, a1: impl Into<BigInt>, a2: impl Into<BigInt>, mv: Option<(usize, usize)>, minus: &Vec2) -> Vec2 {
        let mut forms = vec![UpdateVector::Add1(a1.into()), UpdateVector::Add2(a2.into())];
        forms.extend(mv.map(|(j, k)| UpdateVector::Move(j, k)));
        self.num().apply_sequence(&Vec2::zero(), &forms).expect("indices from the numbering") - minus.clone()
    }

    pub fn sim_index(&self, s: &SimState) -> usize {
        self.num().index(&EveState::Sim(s.clone())).expect("declared simulation state")
    }

    pub fn top(&self, flags: Flags, primed: bool) -> usize {
        self.num().top_index(flags, primed)
    }

    pub fn check_vector(&self, i: usize) -> Vec2 {
        self.rg().check_vector(i)
    }

    /// The honest next move from `(s, cfg)` after Adam's regular `alpha`, with
    /// the simulation state and configuration it leads to.
    fn honest_step(&self, s: &SimState, cfg: &MachineConfig, alpha: &Vec2) -> HonestStep {
        let idx = self.sim_index(s);
        let machine = &self.pipeline.machine;
        if s.flags == Flags::ZZ && cfg.both_zero() {
            return HonestStep::Finish(self.combine(0, 0, Some((idx, 0)), alpha));
        }
        if alpha.x.is_one() {
            let k = self.top(s.flags, false);
            return HonestStep::Connector(self.combine(-1, 0, Some((idx, k)), &Vec2::zero()), k);
        }
        match machine.step(cfg) {
            Ok(StepResult::Next { config, transition }) => {
                let instr = machine.transitions[transition].instruction;
                let Some(t) = self.pipeline.flagged.sign_matching_step(s, &config, instr) else {
                    return HonestStep::Stuck;
                };
                let v = simulating_vector(instr);
                let vector = self.combine(v.x, v.y, Some((idx, self.sim_index(&t.target))), &Vec2::zero());
                HonestStep::Simulate(vector, t.target.clone(), config)
            }
            Ok(StepResult::AtSink) => {
                let k = self.top(s.flags, false);
                HonestStep::Connector(self.combine(-1, 0, Some((idx, k)), &Vec2::zero()), k)
            }
            Err(_) => HonestStep::Stuck,
        }
    }
}

enum HonestStep {
    Simulate(Vec2, SimState, MachineConfig),
    Connector(Vec2, usize),
    Finish(Vec2),
    Stuck,
}

#[derive(Clone, Debug)]
enum EveMode {
    Simulate(SimState, MachineConfig),
    /// Emptying state index and counters in units.
    Drain(usize, BigUint, BigUint),
}

/// Eve mirrors the simulation through regular moves, finishes at `s₀₀`, and
/// answers the first state-check with a state-defence move before draining.
pub struct EveSimRg {
    ctx: RgContext,
    start: Option<(SimState, MachineConfig)>,
    mode: Option<EveMode>,
    last_adam: Vec2,
}

impl EveSimRg {
    pub const NAME: &'static str = "eve-sim-rg";

    pub fn new(p: &Pipeline) -> Self {
        let ctx = RgContext::new(p);
        let start = p.rgs.initial.0.as_sim().cloned().zip(first_config(&p.machine));
        EveSimRg { ctx, mode: start.clone().map(|(s, c)| EveMode::Simulate(s, c)), start, last_adam: Vec2::zero() }
    }

    fn defence(&self, s: &SimState, i: usize) -> (Vec2, usize) {
        let idx = self.ctx.sim_index(s);
        let k = if s.flags == Flags::ZZ {
            0
        } else if self.ctx.top(s.flags, false) != i {
            self.ctx.top(s.flags, false)
        } else {
            self.ctx.top(s.flags, true)
        };
        (self.ctx.combine(0, 0, Some((idx, k)), &self.ctx.check_vector(i)), k)
    }

    /// One emptying round from state `idx`; returns the vector and the new mode.
    fn drain(&self, idx: usize, c1: &BigUint, c2: &BigUint, check: Option<usize>) -> Result<(Vec2, EveMode), EngineError> {
        let num = self.ctx.num();
        let flags = num.state(idx).map(|s| s.flags()).unwrap_or(Flags::ZZ);
        let one = BigUint::one();
        let (big1, big2) = (c1 > &one, c2 > &one);
        let dec = |c: &BigUint, by: bool| if by { c - 1u32 } else { c.clone() };
        let (a1, a2, target) = match check {
            None => {
                let partner = num.partner(idx);
                let (d1, d2, to) = match flags {
                    Flags::PP => match (big1, big2) {
                        (true, true) => (true, true, partner),
                        (true, false) => (true, true, Some(self.ctx.top(Flags::PZ, false))),
                        (false, true) => (true, true, Some(self.ctx.top(Flags::ZP, false))),
                        (false, false) => (true, true, Some(0)),
                    },
                    Flags::PZ => (true, false, if big1 { partner } else { Some(0) }),
                    Flags::ZP => (false, true, if big2 { partner } else { Some(0) }),
                    _ => return Err(fail(Self::NAME, "no emptying row from the sink state")),
                };
                (d1, d2, to)
            }
            Some(_) => {
                let finish = match flags {
                    Flags::PP => !big1 && !big2,
                    Flags::PZ => !big1,
                    Flags::ZP => !big2,
                    _ => false,
                };
                if finish {
                    (flags.0.is_plus(), flags.1.is_plus(), Some(0))
                } else {
                    (flags.0.is_plus() && big1, flags.1.is_plus() && big2, None)
                }
            }
        };
        let minus = match check {
            Some(i) => self.ctx.check_vector(i),
            None => self.last_adam.clone(),
        };
        let to = target.unwrap_or(idx);
        let mv = target.map(|k| (idx, k));
        let v = self.ctx.combine(if a1 { -4 } else { 0 }, if a2 { -1 } else { 0 }, mv, &minus);
        Ok((v, EveMode::Drain(to, dec(c1, a1), dec(c2, a2))))
    }
}

impl Strategy for EveSimRg {
    fn name(&self) -> &str {
        Self::NAME
    }

    fn reset(&mut self, _: &Position) {
        self.mode = self.start.clone().map(|(s, c)| EveMode::Simulate(s, c));
        self.last_adam = Vec2::zero();
    }

    fn observe(&mut self, player: Turn, mv: &Move, _: &Position) {
        if player == Turn::Adam {
            self.last_adam = mv.vector.clone();
        }
    }

    fn propose(&mut self, _: &Position, legal: &[Move]) -> Result<Move, EngineError> {
        let mode = self.mode.clone().ok_or_else(|| fail(Self::NAME, "machine has no first step"))?;
        let check = self.ctx.rg().check_index(&self.last_adam);
        let (v, next) = match mode {
            EveMode::Simulate(s, cfg) => match check {
                Some(i) => {
                    let (v, k) = self.defence(&s, i);
                    (v, EveMode::Drain(k, cfg.c1, cfg.c2))
                }
                None => match self.ctx.honest_step(&s, &cfg, &self.last_adam) {
                    HonestStep::Simulate(v, t, c) => (v, EveMode::Simulate(t, c)),
                    HonestStep::Connector(v, k) => (v, EveMode::Drain(k, cfg.c1, cfg.c2)),
                    HonestStep::Finish(v) => (v, EveMode::Drain(0, BigUint::zero(), BigUint::zero())),
                    HonestStep::Stuck => return Err(fail(Self::NAME, format!("no honest move from {}", s.render()))),
                },
            },
            EveMode::Drain(idx, c1, c2) => self.drain(idx, &c1, &c2, check)?,
        };
        let mv = pick(Self::NAME, legal, &v, None)?;
        self.mode = Some(next);
        Ok(mv)
    }
}

/// Symbolic account of the second coordinate: state coefficients and, per
/// checkable index, Adam's checks minus Eve's cancellations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ledger {
    pub coef: Vec<i64>,
    pub checks: HashMap<usize, i64>,
}

impl Ledger {
    fn new(n: usize, initial_state: usize) -> Self {
        let mut coef = vec![0; n];
        coef[0] -= 1;
        coef[initial_state] += 1;
        Ledger { coef, checks: HashMap::new() }
    }

    /// A state coefficient went negative, the `8⁰` token was cleared, or a
    /// check is unbalanced.
    pub fn is_broken(&self) -> bool {
        self.coef[0] != -1 || self.coef[1..].iter().any(|&c| c < 0) || self.checks.values().any(|&d| d != 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum AdamMode {
    Honest(SimState, MachineConfig),
    Mod4,
    Checks,
}

/// Adam plays the 0-move while Eve's ledger matches the simulation. A flag
/// error is punished through the first counter as in the game with states; a
/// broken ledger is punished with state-checks that keep the second counter
/// outside `[0, 8ⁿ)` modulo `4·8ⁿ`.
pub struct AdamRefRg {
    ctx: RgContext,
    start: Option<(SimState, MachineConfig)>,
    mode: AdamMode,
    ledger: Ledger,
    /// The ledger broke on Eve's last move and Adam has not answered yet.
    fresh: bool,
}

impl AdamRefRg {
    pub const NAME: &'static str = "adam-ref-rg";

    pub fn new(p: &Pipeline) -> Self {
        let ctx = RgContext::new(p);
        let start = p.rgs.initial.0.as_sim().cloned().zip(first_config(&p.machine));
        let (mode, ledger) = Self::initial(&ctx, &start);
        AdamRefRg { ctx, start, mode, ledger, fresh: false }
    }

    fn initial(ctx: &RgContext, start: &Option<(SimState, MachineConfig)>) -> (AdamMode, Ledger) {
        match start {
            Some((s, c)) => (AdamMode::Honest(s.clone(), c.clone()), Ledger::new(ctx.num().n(), ctx.sim_index(s))),
            None => (AdamMode::Mod4, Ledger::new(ctx.num().n(), 0)),
        }
    }

    pub fn ledger(&self) -> &Ledger {
        &self.ledger
    }

    /// Checks are active: the second-counter invariant is in force.
    pub fn is_checking(&self) -> bool {
        self.mode == AdamMode::Checks
    }

    /// First-counter punishment is active.
    pub fn is_mod4(&self) -> bool {
        self.mode == AdamMode::Mod4
    }

    pub fn is_punishing(&self) -> bool {
        !matches!(self.mode, AdamMode::Honest(..))
    }

    fn record_eve(&mut self, v: &Vec2) {
        let Some(desc) = self.ctx.rg().describe(v) else { return };
        for (j, d) in desc.coefficient_deltas() {
            self.ledger.coef[j] += d;
        }
        if let Some(i) = desc.cancels_check {
            *self.ledger.checks.entry(i).or_default() -= 1;
        }
    }

    /// Preferred check index: a negative checkable coefficient, else a positive
    /// one, else an unanswered check. A check Eve has already cancelled ahead
    /// of time is never repeated, since playing it would undo her cancellation.
    fn target_check(&self) -> usize {
        let top = self.ctx.num().top_block();
        let open: Vec<usize> = top.iter().copied().filter(|i| self.ledger.checks.get(i).copied().unwrap_or(0) >= 0).collect();
        open.iter()
            .copied()
            .find(|&i| self.ledger.coef[i] < 0)
            .or_else(|| open.iter().copied().find(|&i| self.ledger.coef[i] > 0))
            .or_else(|| open.iter().copied().find(|&i| self.ledger.checks.get(&i).copied().unwrap_or(0) > 0))
            .or_else(|| open.last().copied())
            .unwrap_or(top[5])
    }

    fn needs_block(&self) -> bool {
        let top = self.ctx.num().top_block();
        top.iter().any(|&i| self.ledger.coef[i] != 0) || self.ledger.checks.values().any(|&d| d != 0)
    }

    /// The first answer to a broken ledger is a check; later ones follow the
    /// interval rule.
    fn check_move(&self, y: &BigInt) -> Vec2 {
        let num = self.ctx.num();
        let unit = num.pow8(num.n());
        let block = unit * 4;
        let in_low = |v: &BigInt| v.mod_floor(&block) < *unit;
        let r = y.mod_floor(&block);
        let i = self.target_check();
        let check = self.ctx.check_vector(i);
        if r < *unit || (self.fresh && !in_low(&(y + &check.y))) {
            return check;
        }
        if r >= unit * 3 {
            return Vec2::zero();
        }
        if self.needs_block() && !in_low(&(y + &check.y)) {
            check
        } else {
            Vec2::zero()
        }
    }
}

impl Strategy for AdamRefRg {
    fn name(&self) -> &str {
        Self::NAME
    }

    fn reset(&mut self, _: &Position) {
        let (mode, ledger) = Self::initial(&self.ctx, &self.start);
        self.mode = mode;
        self.ledger = ledger;
        self.fresh = false;
    }

    fn observe(&mut self, player: Turn, mv: &Move, _: &Position) {
        if player == Turn::Adam {
            if let Some(i) = self.ctx.rg().check_index(&mv.vector) {
                *self.ledger.checks.entry(i).or_default() += 1;
            }
            return;
        }
        self.record_eve(&mv.vector);
        let next = match &self.mode {
            AdamMode::Honest(s, cfg) => match self.ctx.honest_step(s, cfg, &Vec2::zero()) {
                HonestStep::Simulate(v, t, c) if v == mv.vector => AdamMode::Honest(t, c),
                _ => AdamMode::Mod4,
            },
            other => other.clone(),
        };
        if next != AdamMode::Checks && self.ledger.is_broken() {
            self.fresh = true;
            self.mode = AdamMode::Checks;
        } else {
            self.mode = next;
        }
    }

    fn propose(&mut self, pos: &Position, legal: &[Move]) -> Result<Move, EngineError> {
        let v = match &self.mode {
            AdamMode::Honest(..) => Vec2::zero(),
            AdamMode::Mod4 => punish_mod4(&pos.vector.x),
            AdamMode::Checks => self.check_move(&pos.vector.y),
        };
        self.fresh = false;
        pick(Self::NAME, legal, &v, None)
    }
}
