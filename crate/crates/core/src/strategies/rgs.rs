//! Proof strategies for the robot game with states.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::engine::{Move, Position, Strategy, Turn};
use crate::error::EngineError;
use crate::models::{EveState, Flags, MachineConfig, MinskyMachine, StepResult, Vec2};
use crate::reductions::rgs::simulating_vector;
use crate::reductions::{FlaggedMachine, Pipeline};

pub(crate) fn fail(name: &str, reason: impl Into<String>) -> EngineError {
    EngineError::Strategy { name: name.to_string(), reason: reason.into() }
}

pub(crate) fn pick(name: &str, legal: &[Move], vector: &Vec2, target: Option<&EveState>) -> Result<Move, EngineError> {
    legal
        .iter()
        .find(|m| &m.vector == vector && (target.is_none() || m.target.as_ref() == target))
        .cloned()
        .ok_or_else(|| {
            let t = target.map(|t| format!(" -> {t}")).unwrap_or_default();
            fail(name, format!("no applicable move {vector}{t}"))
        })
}

/// The machine configuration the games start from: one step after `(init, (0,0))`.
pub fn first_config(m: &MinskyMachine) -> Option<MachineConfig> {
    match m.step(&m.initial_config()).ok()? {
        StepResult::Next { config, .. } => Some(config),
        StepResult::AtSink => None,
    }
}

pub(crate) fn to_counter(v: &BigInt) -> Option<BigUint> {
    v.to_biguint()
}

/// Gadget vector for draining from `⊤_{flags}` after Adam added `e` to the first counter.
pub fn gadget_vector(flags: Flags, e: &BigInt) -> Vec2 {
    let (d1, d2) = match flags {
        Flags::PP => (-4, -1),
        Flags::PZ => (-4, 0),
        Flags::ZP => (0, -1),
        _ => (0, 0),
    };
    Vec2 { x: BigInt::from(d1) - e, y: BigInt::from(d2) }
}

/// Eve simulates the machine with sign-matching flags; after Adam's first
/// positivity check she enters the emptying block and drains.
pub struct EveSimRgs {
    machine: MinskyMachine,
    flagged: FlaggedMachine,
    last_adam: Vec2,
}

impl EveSimRgs {
    pub const NAME: &'static str = "eve-sim-rgs";

    pub fn new(p: &Pipeline) -> Self {
        EveSimRgs { machine: p.machine.clone(), flagged: p.flagged.clone(), last_adam: Vec2::zero() }
    }

    fn simulate(&self, pos: &Position, legal: &[Move], state: &EveState) -> Result<Move, EngineError> {
        let sim = state.as_sim().expect("caller matched a simulation state");
        let connector = || pick(Self::NAME, legal, &Vec2::new(-1, 0), Some(&EveState::top(sim.flags)));
        if self.last_adam.x.is_one() {
            return connector();
        }
        let (q, r) = pos.vector.x.div_mod_floor(&BigInt::from(4));
        let (c1, c2) = match (to_counter(&q), to_counter(&pos.vector.y)) {
            (Some(c1), Some(c2)) if r.is_zero() => (c1, c2),
            _ => return Err(fail(Self::NAME, format!("{} is not a counter image", pos.vector))),
        };
        let cfg = MachineConfig { state: sim.base.clone(), c1, c2 };
        match self.machine.step(&cfg).map_err(|e| fail(Self::NAME, e.to_string()))? {
            StepResult::AtSink => connector(),
            StepResult::Next { config, transition } => {
                let instr = self.machine.transitions[transition].instruction;
                let t = self
                    .flagged
                    .sign_matching_step(sim, &config, instr)
                    .ok_or_else(|| fail(Self::NAME, format!("no flagged transition from {state}")))?;
                pick(Self::NAME, legal, &simulating_vector(instr), Some(&EveState::Sim(t.target.clone())))
            }
        }
    }

    fn drain(&self, pos: &Position, legal: &[Move], flags: Flags) -> Result<Move, EngineError> {
        let v = gadget_vector(flags, &self.last_adam.x);
        let after = &pos.vector + &v;
        let target = EveState::top(Flags::of_signs(after.x.is_positive(), after.y.is_positive()));
        pick(Self::NAME, legal, &v, Some(&target))
    }
}

impl Strategy for EveSimRgs {
    fn name(&self) -> &str {
        Self::NAME
    }

    fn reset(&mut self, _: &Position) {
        self.last_adam = Vec2::zero();
    }

    fn observe(&mut self, player: Turn, mv: &Move, _: &Position) {
        if player == Turn::Adam {
            self.last_adam = mv.vector.clone();
        }
    }

    fn propose(&mut self, pos: &Position, legal: &[Move]) -> Result<Move, EngineError> {
        let state = pos.eve_state.as_ref().ok_or_else(|| fail(Self::NAME, "position has no Eve state"))?;
        match state {
            EveState::Sim(_) => self.simulate(pos, legal, state),
            EveState::Top { flags, .. } => self.drain(pos, legal, *flags),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum RefereeMode {
    Honest(MachineConfig),
    Punish,
}

/// Adam plays the 0-move while Eve simulates correctly. After any other Eve
/// move he keeps the first counter away from 0 (mod 4) at Eve's turns.
pub struct AdamRefRgs {
    machine: MinskyMachine,
    start: Option<MachineConfig>,
    mode: RefereeMode,
}

impl AdamRefRgs {
    pub const NAME: &'static str = "adam-ref-rgs";

    pub fn new(p: &Pipeline) -> Self {
        let start = first_config(&p.machine);
        let mode = start.clone().map_or(RefereeMode::Punish, RefereeMode::Honest);
        AdamRefRgs { machine: p.machine.clone(), start, mode }
    }

    pub fn is_punishing(&self) -> bool {
        self.mode == RefereeMode::Punish
    }

    /// The machine configuration Eve is expected to be simulating.
    pub fn expected(&self) -> Option<&MachineConfig> {
        match &self.mode {
            RefereeMode::Honest(cfg) => Some(cfg),
            RefereeMode::Punish => None,
        }
    }

    fn check_eve(&self, cfg: &MachineConfig, mv: &Move) -> Option<MachineConfig> {
        let StepResult::Next { config, transition } = self.machine.step(cfg).ok()? else {
            return None;
        };
        let instr = self.machine.transitions[transition].instruction;
        let want = EveState::sim(config.state.clone(), Flags::of_signs(!config.c1.is_zero(), !config.c2.is_zero()));
        (mv.target.as_ref() == Some(&want) && mv.vector == simulating_vector(instr)).then_some(config)
    }
}

pub fn punish_mod4(x: &BigInt) -> Vec2 {
    if x.mod_floor(&BigInt::from(4)) == BigInt::from(3) {
        Vec2::zero()
    } else {
        Vec2::new(1, 0)
    }
}

impl Strategy for AdamRefRgs {
    fn name(&self) -> &str {
        Self::NAME
    }

    fn reset(&mut self, _: &Position) {
        self.mode = self.start.clone().map_or(RefereeMode::Punish, RefereeMode::Honest);
    }

    fn observe(&mut self, player: Turn, mv: &Move, _: &Position) {
        if player != Turn::Eve {
            return;
        }
        if let RefereeMode::Honest(cfg) = &self.mode {
            self.mode = self.check_eve(cfg, mv).map_or(RefereeMode::Punish, RefereeMode::Honest);
        }
    }

    fn propose(&mut self, pos: &Position, legal: &[Move]) -> Result<Move, EngineError> {
        let v = match self.mode {
            RefereeMode::Honest(_) => Vec2::zero(),
            RefereeMode::Punish => punish_mod4(&pos.vector.x),
        };
        pick(Self::NAME, legal, &v, None)
    }
}
