//! Flag annotation: each state `s` becomes four states `s_{ab}` whose flags
//! claim the signs of the two counters.

use crate::error::ModelError;
use crate::models::{CounterIndex, Flag, Flags, InstrKind, Instruction, MachineConfig, MinskyMachine, SimState};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FlaggedTransition {
    pub source: SimState,
    pub instruction: Instruction,
    pub target: SimState,
}

/// The flag-annotated, deliberately nondeterministic machine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlaggedMachine {
    pub base: MinskyMachine,
    /// Base states in declaration order, flags in [`Flags::ALL`] order.
    pub states: Vec<SimState>,
    pub transitions: Vec<FlaggedTransition>,
}

impl FlaggedMachine {
    pub fn initial(&self) -> SimState {
        SimState::new(self.base.initial.clone(), Flags::ZZ)
    }

    pub fn outgoing<'a>(&'a self, state: &'a SimState) -> impl Iterator<Item = &'a FlaggedTransition> + 'a {
        self.transitions.iter().filter(move |t| &t.source == state)
    }

    /// The flagged transition mirroring one machine step, with the target flags
    /// matching the post-step counter signs.
    pub fn sign_matching_step<'a>(
        &'a self,
        from: &'a SimState,
        after: &MachineConfig,
        instruction: Instruction,
    ) -> Option<&'a FlaggedTransition> {
        let want = Flags::of_signs(after.c1 > 0u32.into(), after.c2 > 0u32.into());
        self.outgoing(from)
            .find(|t| t.instruction == instruction && t.target.base == after.state && t.target.flags == want)
    }
}

fn set(flags: Flags, counter: CounterIndex, f: Flag) -> Flags {
    match counter {
        CounterIndex::C1 => Flags(f, flags.1),
        CounterIndex::C2 => Flags(flags.0, f),
    }
}

fn get(flags: Flags, counter: CounterIndex) -> Flag {
    match counter {
        CounterIndex::C1 => flags.0,
        CounterIndex::C2 => flags.1,
    }
}

pub fn add_flags(m: &MinskyMachine) -> Result<FlaggedMachine, ModelError> {
    m.ensure_valid()?;
    let states = m
        .states
        .iter()
        .flat_map(|s| Flags::ALL.into_iter().map(move |f| SimState::new(s.clone(), f)))
        .collect();

    let mut transitions = Vec::new();
    for t in &m.transitions {
        let c = t.instruction.counter;
        for src in Flags::ALL {
            let targets: Vec<Flags> = match t.instruction.kind {
                InstrKind::Inc => vec![set(src, c, Flag::Plus)],
                // the decremented counter's new flag is Eve's guess; the other is kept
                InstrKind::Dec if get(src, c) == Flag::Plus => {
                    vec![set(src, c, Flag::Zero), set(src, c, Flag::Plus)]
                }
                InstrKind::ZeroTest if get(src, c) == Flag::Zero => vec![src],
                _ => vec![],
            };
            for dst in targets {
                transitions.push(FlaggedTransition {
                    source: SimState::new(t.source.clone(), src),
                    instruction: t.instruction,
                    target: SimState::new(t.target.clone(), dst),
                });
            }
        }
    }
    Ok(FlaggedMachine { base: m.clone(), states, transitions })
}
