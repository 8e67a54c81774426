use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// A point or move on the integer lattice Z².
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Vec2 {
    pub x: BigInt,
    pub y: BigInt,
}

impl Vec2 {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        Vec2 { x: x.into(), y: y.into() }
    }

    pub fn zero() -> Self {
        Vec2::default()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Chebyshev norm, used for box membership.
    pub fn max_abs(&self) -> BigInt {
        let ax = self.x.abs();
        let ay = self.y.abs();
        if ax > ay {
            ax
        } else {
            ay
        }
    }

    /// Bits needed for the larger coordinate.
    pub fn bits(&self) -> u64 {
        self.x.bits().max(self.y.bits())
    }
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl Add for &Vec2 {
    type Output = Vec2;
    fn add(self, rhs: &Vec2) -> Vec2 {
        Vec2 { x: &self.x + &rhs.x, y: &self.y + &rhs.y }
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2 { x: self.x + rhs.x, y: self.y + rhs.y }
    }
}

impl Sub for &Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: &Vec2) -> Vec2 {
        Vec2 { x: &self.x - &rhs.x, y: &self.y - &rhs.y }
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2 { x: self.x - rhs.x, y: self.y - rhs.y }
    }
}

impl Neg for &Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2 { x: -&self.x, y: -&self.y }
    }
}

/// Sorts and removes duplicates; move sets have set semantics.
pub fn dedup_sorted(mut moves: Vec<Vec2>) -> Vec<Vec2> {
    moves.sort();
    moves.dedup();
    moves
}
