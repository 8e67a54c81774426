use num_bigint::BigInt;

use robotgames::format::parse_machine;
use robotgames::reductions::{add_flags, matrix_from_rg, normalize_zero_zero, rg_from_rgs, rgs_from_2cm};
use robotgames::{
    embed, CounterIndex, EveState, Flag, Flags, InstrKind, Instruction, Mat3, MinskyMachine, RgsGame, RgsMove, RobotGame,
    RunOutcome, SimState, Vec2,
};

fn machine(src: &str) -> MinskyMachine {
    parse_machine(src).unwrap()
}

const BRANCH: &str = "states: s t h
init: s
sink: h
trans: s c1-- t
trans: s c1==0 h
trans: t c1++ s
";

#[test]
fn increment_gets_four_copies_with_the_flag_raised() {
    let f = add_flags(&machine(BRANCH)).unwrap();
    let inc: Vec<_> = f.transitions.iter().filter(|t| t.instruction == Instruction::inc(CounterIndex::C1)).collect();
    assert_eq!(inc.len(), 4);
    for t in inc {
        assert_eq!(t.target.base, "s");
        assert_eq!(t.target.flags.0, Flag::Plus);
        assert_eq!(t.target.flags.1, t.source.flags.1);
    }
}

#[test]
fn zero_test_only_leaves_zero_flags() {
    let f = add_flags(&machine(BRANCH)).unwrap();
    let zt: Vec<_> = f.transitions.iter().filter(|t| t.instruction.kind == InstrKind::ZeroTest).collect();
    assert_eq!(zt.len(), 2);
    assert!(zt.iter().all(|t| t.source.flags.0 == Flag::Zero && t.source == SimState::new("s", t.source.flags)));
    assert!(zt.iter().all(|t| t.target.flags == t.source.flags));
}

#[test]
fn decrement_guesses_the_new_flag() {
    let f = add_flags(&machine(BRANCH)).unwrap();
    let dec: Vec<_> = f.transitions.iter().filter(|t| t.instruction == Instruction::dec(CounterIndex::C1)).collect();
    assert_eq!(dec.len(), 4);
    for t in &dec {
        assert_eq!(t.source.flags.0, Flag::Plus);
        assert_eq!(t.target.flags.1, t.source.flags.1);
    }
    let targets: std::collections::HashSet<_> = dec.iter().map(|t| t.target.flags).collect();
    assert_eq!(targets.len(), 4);
}

#[test]
fn rgs_initial_is_the_configuration_after_step_one() {
    let m = machine("states: s0 q h\ninit: s0\nsink: h\ntrans: s0 c2++ q\ntrans: q c2++ s0\n");
    let g = rgs_from_2cm(&add_flags(&m).unwrap()).unwrap();
    assert_eq!(g.initial, (EveState::sim("q", Flags::ZP), Vec2::new(0, 1)));
}

#[test]
fn rgs_decrement_row_scales_the_first_counter() {
    let g = rgs_from_2cm(&add_flags(&machine("states: a s t h\ninit: a\nsink: h\ntrans: a c1++ s\ntrans: s c1-- t\ntrans: s c1==0 h\ntrans: t c1++ s\n")).unwrap()).unwrap();
    let want = RgsMove::new(EveState::sim("s", Flags::PZ), Vec2::new(-4, 0), EveState::sim("t", Flags::ZZ));
    assert!(g.eve_moves.contains(&want));
    let mut adam = g.adam_moves.clone();
    adam.sort();
    assert_eq!(adam, vec![Vec2::new(0, 0), Vec2::new(1, 0)]);
}

#[test]
fn stateless_initial_vector_for_two_states() {
    let (s, t) = (EveState::sim("s", Flags::ZZ), EveState::sim("t", Flags::ZZ));
    let mut states = vec![s.clone(), t.clone()];
    states.extend([Flags::ZZ, Flags::PZ, Flags::ZP, Flags::PP].map(EveState::top));
    let g = RgsGame {
        eve_states: states,
        adam_moves: vec![Vec2::new(0, 0), Vec2::new(1, 0)],
        eve_moves: vec![RgsMove::new(s.clone(), Vec2::new(0, 1), t)],
        initial: (s, Vec2::new(1, 0)),
    };
    let r = rg_from_rgs(&g).unwrap();
    assert_eq!(r.numbering.n(), 9);
    assert_eq!(r.game.initial, Vec2::new(1, 7));
    assert_eq!(r.game.adam_moves.len(), 8);
}

#[test]
fn matrix_of_a_move_acts_on_the_embedding() {
    let m = Mat3::from_move(&Vec2::new(-2, 4));
    let v = [3, 1, 5].map(BigInt::from);
    assert_eq!(m.apply(&v), [1, 1, 9].map(BigInt::from));
    assert_eq!(Mat3::from_move(&Vec2::zero()), Mat3::identity());
    let g = RobotGame::new(vec![Vec2::zero()], vec![Vec2::new(-1, 0)], Vec2::new(1, 0));
    let mg = matrix_from_rg(&g);
    assert_eq!(mg.initial, embed(&Vec2::new(1, 0)));
    assert_eq!(mg.target, [0, 1, 0].map(BigInt::from));
}

#[test]
fn normalization_turns_halting_into_zero_zero() {
    let m = machine("states: s0 s1 s2 h\ninit: s0\nsink: h\ntrans: s0 c1++ s1\ntrans: s1 c2++ s2\ntrans: s2 c1-- s2\ntrans: s2 c1==0 h\n");
    assert!(matches!(m.run(100).unwrap().outcome, RunOutcome::SinkAt(_)));
    let n = normalize_zero_zero(&m).unwrap();
    assert!(matches!(n.run(1000).unwrap().outcome, RunOutcome::ZeroZeroAt(_)));
}

#[test]
fn normalized_incrementer_never_hits_zero_zero() {
    let m = machine("states: a b h\ninit: a\nsink: h\ntrans: a c1++ b\ntrans: b c1++ a\n");
    let n = normalize_zero_zero(&m).unwrap();
    let run = n.run(10_000).unwrap();
    assert_eq!(run.outcome, RunOutcome::Exhausted);
    assert!(run.trace.iter().skip(1).all(|c| !c.both_zero()));
}
