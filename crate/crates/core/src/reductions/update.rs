//! Base-8 state numbering and the named update vectors of the stateless game.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Pow;

use crate::error::ReductionError;
use crate::models::{EveState, Flags, SimState, Vec2};

/// Assigns each state an exponent in `0..n`: `⊤₀₀ = 0`, simulation states
/// `1..=m` in declaration order, and the six remaining emptying states at
/// the top of the range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateNumbering {
    n: usize,
    sim: Vec<SimState>,
    sim_index: HashMap<SimState, usize>,
    pow8: Vec<BigInt>,
}

/// Top-block offsets from `n`: `⊤′₀₊ = n−6, ⊤₀₊ = n−5, ⊤′₊₀ = n−4, ⊤₊₀ = n−3, ⊤′₊₊ = n−2, ⊤₊₊ = n−1`.
const TOP_ORDER: [(Flags, bool); 6] = [
    (Flags::ZP, true),
    (Flags::ZP, false),
    (Flags::PZ, true),
    (Flags::PZ, false),
    (Flags::PP, true),
    (Flags::PP, false),
];

impl StateNumbering {
    pub fn new(sim: Vec<SimState>) -> Self {
        let n = sim.len() + 7;
        let sim_index = sim.iter().enumerate().map(|(i, s)| (s.clone(), i + 1)).collect();
        let eight = BigInt::from(8);
        let pow8 = (0..=n).map(|k| Pow::pow(&eight, k)).collect();
        StateNumbering { n, sim, sim_index, pow8 }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of flagged simulation states.
    pub fn m(&self) -> usize {
        self.sim.len()
    }

    pub fn pow8(&self, k: usize) -> &BigInt {
        &self.pow8[k]
    }

    pub fn index(&self, state: &EveState) -> Option<usize> {
        match state {
            EveState::Sim(s) => self.sim_index.get(s).copied(),
            EveState::Top { flags, primed } => {
                if *flags == Flags::ZZ {
                    return if *primed { None } else { Some(0) };
                }
                TOP_ORDER.iter().position(|(f, p)| f == flags && p == primed).map(|off| self.n - 6 + off)
            }
        }
    }

    pub fn state(&self, index: usize) -> Option<EveState> {
        if index == 0 {
            return Some(EveState::top(Flags::ZZ));
        }
        if index <= self.sim.len() {
            return Some(EveState::Sim(self.sim[index - 1].clone()));
        }
        if index >= self.n - 6 && index < self.n {
            let (flags, primed) = TOP_ORDER[index - (self.n - 6)];
            return Some(EveState::Top { flags, primed });
        }
        None
    }

    /// Exponents of the six checkable emptying states, ascending.
    pub fn top_block(&self) -> [usize; 6] {
        let b = self.n - 6;
        [b, b + 1, b + 2, b + 3, b + 4, b + 5]
    }

    pub fn is_top_block(&self, index: usize) -> bool {
        index >= self.n - 6 && index < self.n
    }

    pub fn top_index(&self, flags: Flags, primed: bool) -> usize {
        self.index(&EveState::Top { flags, primed }).expect("⊤′₀₀ has no index")
    }

    /// The other member of the primed/unprimed pair.
    pub fn partner(&self, index: usize) -> Option<usize> {
        match self.state(index)? {
            EveState::Top { flags, primed } if flags != Flags::ZZ => Some(self.top_index(flags, !primed)),
            _ => None,
        }
    }

    pub fn eval(&self, form: &UpdateVector) -> Result<Vec2, ReductionError> {
        let check = |i: usize| -> Result<(), ReductionError> {
            if i >= self.n {
                Err(ReductionError::IndexOutOfRange { index: i, n: self.n })
            } else {
                Ok(())
            }
        };
        Ok(match form {
            UpdateVector::Add1(x) => Vec2 { x: x.clone(), y: BigInt::from(0) },
            UpdateVector::Add2(x) => Vec2 { x: BigInt::from(0), y: x * 4 * &self.pow8[self.n] },
            UpdateVector::Move(j, k) => {
                check(*j)?;
                check(*k)?;
                Vec2 { x: BigInt::from(0), y: &self.pow8[*k] - &self.pow8[*j] }
            }
            UpdateVector::Check(i) => {
                if *i + 6 < self.n || *i >= self.n {
                    return Err(ReductionError::IndexOutOfRange { index: *i, n: self.n });
                }
                Vec2 { x: BigInt::from(0), y: -(&self.pow8[*i] * BigInt::from(5)) - &self.pow8[self.n] }
            }
        })
    }

    /// Folds vector addition over `forms` starting from `initial`.
    pub fn apply_sequence(&self, initial: &Vec2, forms: &[UpdateVector]) -> Result<Vec2, ReductionError> {
        forms.iter().try_fold(initial.clone(), |acc, f| Ok(acc + self.eval(f)?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum UpdateVector {
    /// `(x, 0)`
    Add1(BigInt),
    /// `(0, 4x·8ⁿ)`
    Add2(BigInt),
    /// `(0, −8ʲ + 8ᵏ)`
    Move(usize, usize),
    /// `(0, −5·8ⁱ − 8ⁿ)`, only for `n−6 ≤ i ≤ n−1`
    Check(usize),
}

impl fmt::Display for UpdateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UpdateVector::Add1(x) => write!(f, "Add(1,{x})"),
            UpdateVector::Add2(x) => write!(f, "Add(2,{x})"),
            UpdateVector::Move(j, k) => write!(f, "Move({j},{k})"),
            UpdateVector::Check(i) => write!(f, "Check({i})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_state_numbering() -> StateNumbering {
        StateNumbering::new(vec![SimState::new("s", Flags::ZZ), SimState::new("t", Flags::ZZ)])
    }

    #[test]
    fn numbering_layout() {
        let num = two_state_numbering();
        assert_eq!(num.n(), 9);
        assert_eq!(num.index(&EveState::top(Flags::ZZ)), Some(0));
        assert_eq!(num.index(&EveState::top_primed(Flags::ZP)), Some(3));
        assert_eq!(num.index(&EveState::top(Flags::ZP)), Some(4));
        assert_eq!(num.index(&EveState::top_primed(Flags::PZ)), Some(5));
        assert_eq!(num.index(&EveState::top(Flags::PZ)), Some(6));
        assert_eq!(num.index(&EveState::top_primed(Flags::PP)), Some(7));
        assert_eq!(num.index(&EveState::top(Flags::PP)), Some(8));
        assert_eq!(num.index(&EveState::top_primed(Flags::ZZ)), None);
        for i in 0..num.n() {
            assert_eq!(num.index(&num.state(i).unwrap()), Some(i));
        }
        assert_eq!(num.partner(8), Some(7));
        assert_eq!(num.partner(3), Some(4));
        assert_eq!(num.partner(1), None);
    }

    #[test]
    fn check_index_range_enforced() {
        let num = two_state_numbering();
        assert!(num.eval(&UpdateVector::Check(2)).is_err());
        assert!(num.eval(&UpdateVector::Check(9)).is_err());
        assert!(num.eval(&UpdateVector::Check(3)).is_ok());
        assert!(num.eval(&UpdateVector::Move(0, 9)).is_err());
    }
}
