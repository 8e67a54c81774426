use num_bigint::BigInt;
use proptest::prelude::*;

use robotgames::corpus;
use robotgames::engine::{play, replay, Game};
use robotgames::format::{emit_game, load_game, AnyGame};
use robotgames::reductions::{StateNumbering, UpdateVector};
use robotgames::strategies::Random;
use robotgames::{embed, Flags, Mat3, Pipeline, RobotGame, SimState, Vec2};

fn big() -> impl Strategy<Value = BigInt> {
    prop_oneof![
        (-50i64..50).prop_map(BigInt::from),
        any::<i128>().prop_map(BigInt::from),
        (any::<i128>(), any::<i128>()).prop_map(|(a, b)| BigInt::from(a) * BigInt::from(b)),
    ]
}

fn vec2() -> impl Strategy<Value = Vec2> {
    (big(), big()).prop_map(|(x, y)| Vec2 { x, y })
}

fn small_vec() -> impl Strategy<Value = Vec2> {
    (-3i64..=3, -3i64..=3).prop_map(|(x, y)| Vec2::new(x, y))
}

fn game() -> impl Strategy<Value = RobotGame> {
    (prop::collection::vec(small_vec(), 1..4), prop::collection::vec(small_vec(), 1..6), small_vec())
        .prop_map(|(a, e, x)| RobotGame::new(a, e, x))
}

proptest! {
    #[test]
    fn matrix_step_is_vector_addition(u in vec2(), m in vec2()) {
        let after = Mat3::from_move(&m).apply(&embed(&u));
        prop_assert_eq!(after, embed(&(&u + &m)));
        prop_assert_eq!(Mat3::from_move(&m).as_move(), Some(m));
    }

    #[test]
    fn numbering_is_a_bijection(m in 0usize..24) {
        let sims = (0..m).map(|i| SimState::new(format!("q{i}"), Flags::ALL[i % 4])).collect();
        let num = StateNumbering::new(sims);
        prop_assert_eq!(num.n(), m + 7);
        for i in 0..num.n() {
            let s = num.state(i);
            // the gap between simulation states and the six checkable ones has no state
            prop_assert_eq!(s.is_some(), i <= m || num.is_top_block(i));
            if let Some(s) = s {
                prop_assert_eq!(num.index(&s), Some(i));
            }
        }
    }

    #[test]
    fn moves_are_sums_of_their_forms(j in 0usize..9, k in 0usize..9, a in -5i64..5, b in -5i64..5) {
        let num = StateNumbering::new(vec![SimState::new("s", Flags::ZZ), SimState::new("t", Flags::PP)]);
        let forms = [UpdateVector::Add1(a.into()), UpdateVector::Add2(b.into()), UpdateVector::Move(j, k)];
        let v = num.apply_sequence(&Vec2::zero(), &forms).unwrap();
        let p = |e: usize| BigInt::from(8).pow(e as u32);
        prop_assert_eq!(v, Vec2 { x: a.into(), y: BigInt::from(4 * b) * p(9) + p(k) - p(j) });
    }

    #[test]
    fn json_round_trip_is_byte_stable(g in game()) {
        let text = emit_game(&AnyGame::Rg(g));
        let back = load_game(&text, None).unwrap();
        prop_assert_eq!(emit_game(&back), text);
    }

    #[test]
    fn play_replays_to_the_same_positions(g in game(), seed in any::<u64>()) {
        let t = play(&g, &mut Random::new(seed), &mut Random::new(seed ^ 1), 12).unwrap();
        let again = replay(&g, &g.initial_position(), &t.moves).unwrap();
        prop_assert_eq!(&again, &t.positions);
        let twice = play(&g, &mut Random::new(seed), &mut Random::new(seed ^ 1), 12).unwrap();
        prop_assert_eq!(twice, t);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pipeline_plays_replay_in_the_matrix_game(idx in 0usize..10, seed in any::<u64>()) {
        let (_, src) = corpus::MACHINES[idx % corpus::MACHINES.len()];
        let p = Pipeline::build(&robotgames::format::parse_machine(src).unwrap()).unwrap();
        let t = play(&p.rg.game, &mut Random::new(seed), &mut Random::new(seed + 1), 10).unwrap();
        let mats = robotgames::engine::matrix_replay(&p.matrix, &t.moves).unwrap();
        for (m, pos) in mats.iter().zip(&t.positions) {
            prop_assert_eq!(m, &embed(&pos.vector));
        }
    }
}
