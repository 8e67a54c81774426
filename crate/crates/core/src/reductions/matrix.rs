//! Stateless robot game to a three-dimensional matrix game.

use num_bigint::BigInt;

use crate::models::{embed, Mat3, MatrixGame, RobotGame, Vec2};

/// Each move becomes its embedding matrix; the play runs on `(u, 1, v)` and
/// the target is `(0, 1, 0)`.
pub fn matrix_from_rg(g: &RobotGame) -> MatrixGame {
    MatrixGame {
        adam_mats: g.adam_moves.iter().map(Mat3::from_move).collect(),
        eve_mats: g.eve_moves.iter().map(Mat3::from_move).collect(),
        initial: embed(&g.initial),
        target: embed(&Vec2::zero()),
    }
}

/// Inverse of [`matrix_from_rg`] for matrices of the embedding shape.
pub fn rg_from_matrix(g: &MatrixGame) -> Option<RobotGame> {
    let back = |ms: &[Mat3]| ms.iter().map(Mat3::as_move).collect::<Option<Vec<_>>>();
    if g.initial[1] != BigInt::from(1) || g.target != embed(&Vec2::zero()) {
        return None;
    }
    Some(RobotGame::new(
        back(&g.adam_mats)?,
        back(&g.eve_mats)?,
        Vec2 { x: g.initial[0].clone(), y: g.initial[2].clone() },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_through_matrices() {
        let g = RobotGame::new(vec![Vec2::new(0, 0), Vec2::new(1, 0)], vec![Vec2::new(-1, 3)], Vec2::new(2, -7));
        let mg = matrix_from_rg(&g);
        assert_eq!(mg.target, [0.into(), 1.into(), 0.into()]);
        assert_eq!(mg.initial, [2.into(), 1.into(), (-7).into()]);
        assert_eq!(rg_from_matrix(&mg), Some(g));
    }
}
