use super::flags::{add_flags, FlaggedMachine};
use super::matrix::matrix_from_rg;
use super::rg::{rg_from_rgs, RgReduction};
use super::rgs::rgs_from_2cm;
use crate::error::ReductionError;
use crate::models::{MatrixGame, MinskyMachine, RgsGame};

/// Every stage produced from one machine.
#[derive(Clone, Debug)]
pub struct Pipeline {
    pub machine: MinskyMachine,
    pub flagged: FlaggedMachine,
    pub rgs: RgsGame,
    pub rg: RgReduction,
    pub matrix: MatrixGame,
}

impl Pipeline {
    /// Runs the passes on `m` as given. Zero-zero normalization is a separate
    /// pass; apply it first when the machine encodes halting through its sink.
    pub fn build(m: &MinskyMachine) -> Result<Pipeline, ReductionError> {
        let flagged = add_flags(m)?;
        let rgs = rgs_from_2cm(&flagged)?;
        let rg = rg_from_rgs(&rgs)?;
        let matrix = matrix_from_rg(&rg.game);
        Ok(Pipeline { machine: m.clone(), flagged, rgs, rg, matrix })
    }
}
