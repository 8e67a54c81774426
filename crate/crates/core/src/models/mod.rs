//! Core data model: counter machines, lattice vectors and the game formalisms.

mod games;
mod machine;
mod vector;

pub use games::{embed, EveState, Flag, Flags, Mat3, MatrixGame, RgsGame, RgsMove, RobotGame, SimState, Vec3};
pub use machine::{
    CounterIndex, InstrKind, Instruction, MachineConfig, MinskyMachine, Run, RunOutcome, StepResult, Transition,
    ValidationReport, Violation,
};
pub use vector::{dedup_sorted, Vec2};
