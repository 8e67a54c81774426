//! Flagged machine to a two-dimensional robot game with states.

use num_bigint::BigInt;

use super::flags::{FlaggedMachine, FlaggedTransition};
use crate::error::ReductionError;
use crate::models::{CounterIndex, EveState, Flags, InstrKind, Instruction, RgsGame, RgsMove, StepResult, Vec2};

/// Adam's two moves: the 0-move and the positivity check.
pub fn adam_rgs_moves() -> Vec<Vec2> {
    vec![Vec2::new(0, 0), Vec2::new(1, 0)]
}

/// Simulating-move vector; the first counter is scaled by four.
pub fn simulating_vector(instruction: Instruction) -> Vec2 {
    match (instruction.kind, instruction.counter) {
        (InstrKind::Inc, CounterIndex::C1) => Vec2::new(4, 0),
        (InstrKind::Dec, CounterIndex::C1) => Vec2::new(-4, 0),
        (InstrKind::Inc, CounterIndex::C2) => Vec2::new(0, 1),
        (InstrKind::Dec, CounterIndex::C2) => Vec2::new(0, -1),
        (InstrKind::ZeroTest, _) => Vec2::new(0, 0),
    }
}

pub fn simulating_move(t: &FlaggedTransition) -> RgsMove {
    RgsMove::new(
        EveState::Sim(t.source.clone()),
        simulating_vector(t.instruction),
        EveState::Sim(t.target.clone()),
    )
}

/// Emptying states in the order they are declared.
pub fn emptying_states() -> [EveState; 4] {
    [EveState::top(Flags::ZZ), EveState::top(Flags::PZ), EveState::top(Flags::ZP), EveState::top(Flags::PP)]
}

/// Emptying gadget: cancel Adam's last first-coordinate move `e` while
/// draining; targets never raise a flag.
pub fn emptying_moves() -> Vec<RgsMove> {
    let top = EveState::top;
    let mut out = Vec::new();
    for e in 0..=1i64 {
        for t in [Flags::PP, Flags::PZ, Flags::ZP, Flags::ZZ] {
            out.push(RgsMove::new(top(Flags::PP), Vec2::new(-4 - e, -1), top(t)));
        }
        for t in [Flags::PZ, Flags::ZZ] {
            out.push(RgsMove::new(top(Flags::PZ), Vec2::new(-4 - e, 0), top(t)));
        }
        for t in [Flags::ZP, Flags::ZZ] {
            out.push(RgsMove::new(top(Flags::ZP), Vec2::new(-e, -1), top(t)));
        }
        out.push(RgsMove::new(top(Flags::ZZ), Vec2::new(-e, 0), top(Flags::ZZ)));
    }
    out
}

pub fn connector_move(state: &EveState) -> Option<RgsMove> {
    let sim = state.as_sim()?;
    Some(RgsMove::new(state.clone(), Vec2::new(-1, 0), EveState::top(sim.flags)))
}

/// Builds the game. The initial configuration is the image of the machine
/// after its first step, which must be an increment.
pub fn rgs_from_2cm(mf: &FlaggedMachine) -> Result<RgsGame, ReductionError> {
    let m = &mf.base;
    m.ensure_valid()?;
    let first = m.step(&m.initial_config())?;
    let after = match first {
        StepResult::Next { config, transition } => {
            let instr = m.transitions[transition].instruction;
            if instr.kind != InstrKind::Inc {
                return Err(ReductionError::NotIncrementFirst(instr.label()));
            }
            config
        }
        StepResult::AtSink => return Err(ReductionError::NotIncrementFirst("initial state is the sink".into())),
    };
    let y_is_one = after.c1 == 1u32.into();
    let flags = if y_is_one { Flags::PZ } else { Flags::ZP };
    let initial_vec = Vec2 { x: BigInt::from(after.c1.clone()) * 4, y: BigInt::from(after.c2.clone()) };
    let initial = (EveState::sim(after.state.clone(), flags), initial_vec);

    let mut eve_states: Vec<EveState> = mf.states.iter().cloned().map(EveState::Sim).collect();
    eve_states.extend(emptying_states());

    let mut eve_moves: Vec<RgsMove> = mf.transitions.iter().map(simulating_move).collect();
    eve_moves.extend(emptying_moves());
    eve_moves.extend(mf.states.iter().filter_map(|s| connector_move(&EveState::Sim(s.clone()))));
    eve_moves.sort();
    eve_moves.dedup();

    Ok(RgsGame { eve_states, adam_moves: adam_rgs_moves(), eve_moves, initial })
}
