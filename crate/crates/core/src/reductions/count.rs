//! Move counting against the `58m + 227` bound.

use super::normalize::normalize_zero_zero;
use super::pipeline::Pipeline;
use crate::error::ReductionError;
use crate::models::MinskyMachine;

pub fn eve_bound(m: usize) -> usize {
    58 * m + 227
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageCount {
    /// State count of the machine the bound is evaluated on.
    pub m: usize,
    pub adam: usize,
    pub eve: usize,
}

impl StageCount {
    pub fn bound(&self) -> usize {
        eve_bound(self.m)
    }

    pub fn within_bound(&self) -> bool {
        self.eve <= self.bound()
    }

    pub fn adam_ok(&self) -> bool {
        self.adam == 8
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveCount {
    pub direct: StageCount,
    /// Counts for the game built from the zero-zero normalized machine, with `m`
    /// the normalized state count.
    pub normalized: Option<StageCount>,
}

impl MoveCount {
    pub fn ok(&self) -> bool {
        self.direct.within_bound() && self.direct.adam_ok()
    }
}

pub fn count_game(p: &Pipeline) -> StageCount {
    StageCount {
        m: p.machine.states.len(),
        adam: p.rg.game.adam_moves.len(),
        eve: p.rg.game.eve_moves.len(),
    }
}

pub fn count_moves(m: &MinskyMachine) -> Result<MoveCount, ReductionError> {
    let direct = count_game(&Pipeline::build(m)?);
    let normalized = Pipeline::build(&normalize_zero_zero(m)?).ok().map(|p| count_game(&p));
    Ok(MoveCount { direct, normalized })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_for_thirty_two_states() {
        assert_eq!(eve_bound(32), 2083);
    }
}

#[cfg(test)]
mod corpus_tests {
    use super::*;

    #[test]
    fn corpus_counts_within_bound() {
        for (name, m) in crate::corpus::all() {
            let c = count_moves(&m).unwrap();
            assert!(c.ok(), "{name}: {c:?}");
        }
    }
}
