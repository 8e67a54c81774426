//! Game formalisms: robot games with states (stateless Adam), stateless robot
//! games, and 3×3 matrix games.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::vector::Vec2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flag {
    Zero,
    Plus,
}

impl Flag {
    pub fn of(positive: bool) -> Flag {
        if positive {
            Flag::Plus
        } else {
            Flag::Zero
        }
    }
    pub fn is_plus(self) -> bool {
        self == Flag::Plus
    }
    fn symbol(self) -> char {
        match self {
            Flag::Zero => '0',
            Flag::Plus => '+',
        }
    }
    fn from_symbol(c: char) -> Option<Flag> {
        match c {
            '0' => Some(Flag::Zero),
            '+' => Some(Flag::Plus),
            _ => None,
        }
    }
}

/// Sign claims for (c1, c2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flags(pub Flag, pub Flag);

impl Flags {
    /// Declaration order used everywhere: 00, 0+, +0, ++.
    pub const ALL: [Flags; 4] = [
        Flags(Flag::Zero, Flag::Zero),
        Flags(Flag::Zero, Flag::Plus),
        Flags(Flag::Plus, Flag::Zero),
        Flags(Flag::Plus, Flag::Plus),
    ];
    pub const ZZ: Flags = Flags(Flag::Zero, Flag::Zero);
    pub const ZP: Flags = Flags(Flag::Zero, Flag::Plus);
    pub const PZ: Flags = Flags(Flag::Plus, Flag::Zero);
    pub const PP: Flags = Flags(Flag::Plus, Flag::Plus);

    pub fn of_signs(c1_positive: bool, c2_positive: bool) -> Flags {
        Flags(Flag::of(c1_positive), Flag::of(c2_positive))
    }

    pub fn render(self) -> String {
        format!("{}{}", self.0.symbol(), self.1.symbol())
    }

    pub fn parse(s: &str) -> Option<Flags> {
        let mut it = s.chars();
        let a = Flag::from_symbol(it.next()?)?;
        let b = Flag::from_symbol(it.next()?)?;
        if it.next().is_some() {
            return None;
        }
        Some(Flags(a, b))
    }
}

/// A control state of the flag-annotated machine, `s_{ab}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimState {
    pub base: String,
    pub flags: Flags,
}

impl SimState {
    pub fn new(base: impl Into<String>, flags: Flags) -> Self {
        SimState { base: base.into(), flags }
    }

    /// `base[ab]`
    pub fn render(&self) -> String {
        format!("{}[{}]", self.base, self.flags.render())
    }
}

/// Eve's control states: flagged simulation states and emptying states
/// `⊤_{ab}` / `⊤′_{ab}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EveState {
    Sim(SimState),
    Top { flags: Flags, primed: bool },
}

impl EveState {
    pub fn sim(base: impl Into<String>, flags: Flags) -> Self {
        EveState::Sim(SimState::new(base, flags))
    }
    pub fn top(flags: Flags) -> Self {
        EveState::Top { flags, primed: false }
    }
    pub fn top_primed(flags: Flags) -> Self {
        EveState::Top { flags, primed: true }
    }

    pub fn flags(&self) -> Flags {
        match self {
            EveState::Sim(s) => s.flags,
            EveState::Top { flags, .. } => *flags,
        }
    }

    pub fn as_sim(&self) -> Option<&SimState> {
        match self {
            EveState::Sim(s) => Some(s),
            EveState::Top { .. } => None,
        }
    }

    /// Injective textual form: `base[ab]`, `⊤[ab]`, `⊤'[ab]`.
    pub fn render(&self) -> String {
        match self {
            EveState::Sim(s) => format!("{}[{}]", s.base, s.flags.render()),
            EveState::Top { flags, primed: false } => format!("⊤[{}]", flags.render()),
            EveState::Top { flags, primed: true } => format!("⊤'[{}]", flags.render()),
        }
    }

    pub fn parse(s: &str) -> Option<EveState> {
        let body = s.strip_suffix(']')?;
        let open = body.rfind('[')?;
        let (head, flags) = (&body[..open], &body[open + 1..]);
        let flags = Flags::parse(flags)?;
        match head {
            "⊤" => Some(EveState::top(flags)),
            "⊤'" => {
                if flags == Flags::ZZ {
                    None
                } else {
                    Some(EveState::top_primed(flags))
                }
            }
            "" => None,
            base if base.starts_with('⊤') || base.contains('[') || base.contains(']') => None,
            base => Some(EveState::sim(base, flags)),
        }
    }
}

impl fmt::Display for EveState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RgsMove {
    pub source: EveState,
    pub vector: Vec2,
    pub target: EveState,
}

impl RgsMove {
    pub fn new(source: EveState, vector: Vec2, target: EveState) -> Self {
        RgsMove { source, vector, target }
    }
}

impl fmt::Display for RgsMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.source, self.vector, self.target)
    }
}

/// Robot game with states where only Eve has control states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RgsGame {
    pub eve_states: Vec<EveState>,
    pub adam_moves: Vec<Vec2>,
    pub eve_moves: Vec<RgsMove>,
    pub initial: (EveState, Vec2),
}

impl RgsGame {
    pub fn moves_from<'a>(&'a self, state: &'a EveState) -> impl Iterator<Item = &'a RgsMove> + 'a {
        self.eve_moves.iter().filter(move |m| &m.source == state)
    }

    /// Adam never touches the second counter.
    pub fn adam_preserves_second_counter(&self) -> bool {
        self.adam_moves.iter().all(|a| a.y.is_zero())
    }
}

/// Stateless two-dimensional robot game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RobotGame {
    pub adam_moves: Vec<Vec2>,
    pub eve_moves: Vec<Vec2>,
    pub initial: Vec2,
}

impl RobotGame {
    /// Builds a game with set semantics on both move lists.
    pub fn new(adam_moves: Vec<Vec2>, eve_moves: Vec<Vec2>, initial: Vec2) -> Self {
        RobotGame {
            adam_moves: super::vector::dedup_sorted(adam_moves),
            eve_moves: super::vector::dedup_sorted(eve_moves),
            initial,
        }
    }
}

pub type Vec3 = [BigInt; 3];

/// Row-major 3×3 integer matrix acting on row vectors from the right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat3(pub [[BigInt; 3]; 3]);

impl Mat3 {
    pub fn identity() -> Self {
        let z = BigInt::zero;
        let o = BigInt::one;
        Mat3([[o(), z(), z()], [z(), o(), z()], [z(), z(), o()]])
    }

    /// The embedding of a robot-game move (x, y): rows (1,0,0), (x,1,y), (0,0,1).
    pub fn from_move(v: &Vec2) -> Self {
        let mut m = Mat3::identity();
        m.0[1][0] = v.x.clone();
        m.0[1][2] = v.y.clone();
        m
    }

    /// Reads back (x, y) if the matrix has the embedding shape.
    pub fn as_move(&self) -> Option<Vec2> {
        let id = Mat3::identity();
        for r in 0..3 {
            for c in 0..3 {
                if r == 1 && (c == 0 || c == 2) {
                    continue;
                }
                if self.0[r][c] != id.0[r][c] {
                    return None;
                }
            }
        }
        Some(Vec2 { x: self.0[1][0].clone(), y: self.0[1][2].clone() })
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &Vec3) -> Vec3 {
        let mut out: Vec3 = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
        for (c, slot) in out.iter_mut().enumerate() {
            for (r, vr) in v.iter().enumerate() {
                *slot += vr * &self.0[r][c];
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixGame {
    pub adam_mats: Vec<Mat3>,
    pub eve_mats: Vec<Mat3>,
    pub initial: Vec3,
    pub target: Vec3,
}

/// (u, 1, v)
pub fn embed(v: &Vec2) -> Vec3 {
    [v.x.clone(), BigInt::one(), v.y.clone()]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_is_injective_and_parses_back() {
        let mut all = Vec::new();
        for f in Flags::ALL {
            all.push(EveState::sim("s", f));
            all.push(EveState::sim("T", f));
            all.push(EveState::top(f));
            if f != Flags::ZZ {
                all.push(EveState::top_primed(f));
            }
        }
        let mut rendered: Vec<String> = all.iter().map(|s| s.render()).collect();
        for (s, r) in all.iter().zip(&rendered) {
            assert_eq!(EveState::parse(r).as_ref(), Some(s));
        }
        rendered.sort();
        rendered.dedup();
        assert_eq!(rendered.len(), all.len());
    }

    #[test]
    fn primed_zero_zero_does_not_parse() {
        assert_eq!(EveState::parse("⊤'[00]"), None);
    }

    #[test]
    fn matrix_embedding_examples() {
        let m = Mat3::from_move(&Vec2::new(-2, 4));
        let out = m.apply(&[3.into(), 1.into(), 5.into()]);
        assert_eq!(out, [BigInt::from(1), BigInt::from(1), BigInt::from(9)]);
        assert_eq!(Mat3::from_move(&Vec2::zero()), Mat3::identity());
        assert_eq!(m.as_move(), Some(Vec2::new(-2, 4)));
    }
}
