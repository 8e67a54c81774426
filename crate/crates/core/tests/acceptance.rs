//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the test fails if any criterion does.

use std::collections::HashSet;
use std::io::Write;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use robotgames::corpus;
use robotgames::engine::{is_eve_win, play, Game, Position, Turn, Verdict};
use robotgames::reductions::{StateNumbering, UpdateVector};
use robotgames::solver::{attractor, minimax_winner, BoxBound, LemmaReport, Scenario, Settings, SolveVerdict, Verifier};
use robotgames::strategies::{AdamRefRg, AdamRefRgs, EveSimRg, EveSimRgs, Random};
use robotgames::{embed, Flags, MinskyMachine, Pipeline, RobotGame, RunOutcome, SimState, Vec2};

const DEPTH: usize = 4;

/// Machines small enough for the stateless oracle at horizon 12.
const ORACLE_MACHINES: [&str; 4] = ["zero-at-2", "c2-bounce", "incrementer", "zero-at-4"];

type Outcome = Result<String, String>;

struct Line {
    id: usize,
    budget: Duration,
    took: Duration,
    outcome: Outcome,
}

impl Line {
    fn passed(&self) -> bool {
        self.outcome.is_ok() && self.took <= self.budget
    }

    fn print(&self) {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let detail = match &self.outcome {
            Ok(s) | Err(s) => s,
        };
        let slow = if self.took > self.budget { format!(" over budget {:?}", self.budget) } else { String::new() };
        // written to the raw handle so the line shows even when output is captured
        let mut out = std::io::stdout().lock();
        let _ = writeln!(out, "criterion {}: {verdict} [{:.2?}{slow}] {detail}", self.id, self.took);
    }
}

fn timed(id: usize, budget_secs: u64, f: impl FnOnce() -> Outcome) -> Line {
    let t = Instant::now();
    let outcome = f();
    Line { id, budget: Duration::from_secs(budget_secs), took: t.elapsed(), outcome }
}

fn pipeline(name: &str) -> Pipeline {
    Pipeline::build(&corpus::machine(name).expect("corpus name")).expect("corpus machines reduce")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn move_counts() -> Outcome {
    let all = corpus::all();
    ensure(all.len() >= 10, || format!("corpus has {} machines", all.len()))?;
    let mut worst = 0.0f64;
    for (name, m) in &all {
        let states = m.states.len();
        ensure((2..=12).contains(&states), || format!("{name} has {states} states"))?;
        let p = Pipeline::build(m).map_err(|e| format!("{name}: {e}"))?;
        let g = &p.rg.game;
        let adam: HashSet<&Vec2> = g.adam_moves.iter().collect();
        let eve: HashSet<&Vec2> = g.eve_moves.iter().collect();
        ensure(adam.len() == 8 && g.adam_moves.len() == 8, || format!("{name}: {} Adam moves", g.adam_moves.len()))?;
        ensure(eve.len() == g.eve_moves.len(), || format!("{name}: duplicate Eve moves"))?;
        let bound = 58 * states + 227;
        ensure(eve.len() <= bound, || format!("{name}: {} Eve moves > {bound}", eve.len()))?;
        worst = worst.max(eve.len() as f64 / bound as f64);
    }
    let b32 = robotgames::reductions::eve_bound(32);
    ensure(b32 == 2083, || format!("bound(32) = {b32}"))?;
    Ok(format!("{} machines, 8 Adam moves each, Eve moves at most {:.0}% of 58m+227, bound(32) = {b32}", all.len(), worst * 100.0))
}

fn worked_example() -> Outcome {
    let num = StateNumbering::new(vec![SimState::new("s", Flags::ZZ), SimState::new("t", Flags::ZZ)]);
    ensure(num.n() == 9, || format!("n = {}", num.n()))?;
    let p8 = |k: u32| BigInt::from(8).pow(k);
    // the base-8 expansions of each configuration
    let expected = [
        p8(1) - 1,
        p8(1) - 1,
        4 * p8(9) + p8(1) - 1,
        4 * p8(9) + p8(2) - 1,
        3 * p8(9) - 5 * p8(8) + p8(2) - 1,
    ];
    let forms =
        [UpdateVector::Add1((-1).into()), UpdateVector::Add2(1.into()), UpdateVector::Move(1, 2), UpdateVector::Check(8)];
    let mut cur = Vec2::new(1, 7);
    let mut seen = vec![cur.y.clone()];
    for f in &forms {
        cur = num.apply_sequence(&cur, std::slice::from_ref(f)).map_err(|e| e.to_string())?;
        seen.push(cur.y.clone());
    }
    ensure(seen == expected, || format!("second coordinates {seen:?}"))?;
    let literal: Vec<BigInt> = [7i64, 536870919, 536870975, 318767167].map(BigInt::from).into();
    ensure(seen[1..] == literal[..], || format!("second coordinates {seen:?}"))?;
    ensure(cur.x == BigInt::from(0), || format!("first coordinate {}", cur.x))?;
    Ok("7, 536870919, 536870975, 318767167".into())
}

fn honest_lines() -> Outcome {
    let mut seen = Vec::new();
    for (name, m) in corpus::all() {
        let RunOutcome::ZeroZeroAt(k) = m.run(200).map_err(|e| e.to_string())?.outcome else { continue };
        if k > 8 {
            continue;
        }
        let p = Pipeline::build(&m).map_err(|e| e.to_string())?;
        let rgs = play(&p.rgs, &mut AdamRefRgs::new(&p), &mut EveSimRgs::new(&p), 30).map_err(|e| e.to_string())?;
        // the game with states starts from the configuration after step 1
        ensure(rgs.verdict == Verdict::EveWinsAt(k - 1), || format!("{name}: RGS {:?}, machine hits (0,0) at step {k}", rgs.verdict))?;
        let rg = play(&p.rg.game, &mut AdamRefRg::new(&p), &mut EveSimRg::new(&p), 30).map_err(|e| e.to_string())?;
        let Verdict::EveWinsAt(r) = rg.verdict else { return Err(format!("{name}: RG {:?}", rg.verdict)) };
        ensure(r <= k + 1, || format!("{name}: RG wins at {r} > {}", k + 1))?;
        let v = Verifier::new(p, Settings::default());
        for sc in [Scenario::L1, Scenario::L5] {
            v.verify(sc, 8).map_err(|f| format!("{name}: {f}"))?;
        }
        seen.push(format!("{name} k={k} RG@{r}"));
    }
    ensure(seen.len() >= 3, || format!("only {} machines reach (0,0) within 8 steps", seen.len()))?;
    let p = pipeline("incrementer");
    let rgs = play(&p.rgs, &mut AdamRefRgs::new(&p), &mut EveSimRgs::new(&p), 20).map_err(|e| e.to_string())?;
    let rg = play(&p.rg.game, &mut AdamRefRg::new(&p), &mut EveSimRg::new(&p), 20).map_err(|e| e.to_string())?;
    ensure(rgs.verdict == Verdict::Ongoing && rg.verdict == Verdict::Ongoing, || {
        format!("incrementer: RGS {:?}, RG {:?}", rgs.verdict, rg.verdict)
    })?;
    Ok(format!("{}; incrementer no win in 20 rounds", seen.join(", ")))
}

fn drains() -> Outcome {
    let mut slowest = 0;
    let mut cases = 0;
    for (name, m) in corpus::all() {
        let v = Verifier::new(Pipeline::build(&m).map_err(|e| e.to_string())?, Settings::default());
        for sc in [Scenario::L3, Scenario::L7] {
            let r = v.verify(sc, DEPTH).map_err(|f| format!("{name}: {f}"))?;
            cases += r.cases;
            slowest = slowest.max(r.slowest_win.unwrap_or(0));
        }
    }
    Ok(format!("{cases} injections over the corpus, slowest drain {slowest} rounds"))
}

struct Tally {
    took: Duration,
    notes: Vec<String>,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { took: Duration::ZERO, notes: Vec::new(), failures: Vec::new() }
    }

    fn run(&mut self, v: &Verifier, name: &str, sc: Scenario) {
        let t = Instant::now();
        match v.verify(sc, DEPTH) {
            Ok(r) => self.notes.push(summary(name, sc, &r)),
            Err(f) => self.failures.push(format!("{name} {sc}: {}", f.reason)),
        }
        self.took += t.elapsed();
    }

    fn line(self, id: usize, budget_secs: u64) -> Line {
        let outcome = if self.failures.is_empty() { Ok(self.notes.join("; ")) } else { Err(format!("{}; passed: {}", self.failures.join("; "), self.notes.join("; "))) };
        Line { id, budget: Duration::from_secs(budget_secs), took: self.took, outcome }
    }
}

fn summary(name: &str, sc: Scenario, r: &LemmaReport) -> String {
    let lost = if r.referee_losses.is_empty() { String::new() } else { format!(", {} sampled losses", r.referee_losses.len()) };
    format!("{name} {sc} {} cases ({} in box){lost}", r.cases, r.in_box)
}

/// Deviations (criterion 4) and premature drains (criterion 6) share one
/// verifier per machine so each oracle is built once.
fn punishment() -> (Line, Line) {
    let mut cheats = Tally::new();
    let mut premature = Tally::new();
    for name in ORACLE_MACHINES {
        let v = Verifier::new(pipeline(name), Settings::default());
        cheats.run(&v, name, Scenario::L2);
        cheats.run(&v, name, Scenario::L6);
        premature.run(&v, name, Scenario::L4);
        premature.run(&v, name, Scenario::L8);
    }
    (cheats.line(4, 60), premature.line(6, 30))
}

fn random_vec(rng: &mut ChaCha8Rng, r: i64) -> Vec2 {
    Vec2::new(rng.gen_range(-r..=r), rng.gen_range(-r..=r))
}

fn random_game(rng: &mut ChaCha8Rng) -> RobotGame {
    let adam = (0..rng.gen_range(1..=2)).map(|_| random_vec(rng, 2)).collect();
    let eve = (0..rng.gen_range(3..=8)).map(|_| random_vec(rng, 2)).collect();
    RobotGame::new(adam, eve, random_vec(rng, 3))
}

fn oracle_agreement() -> Outcome {
    let (horizon, bound) = (8, BoxBound::square(6));
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut members, mut wins) = (0, 0);
    for i in 0..50 {
        let g = random_game(&mut rng);
        let region = attractor(&g, &bound);
        let start = g.initial_position();
        let member = region.contains(&start);
        let mm = minimax_winner(&g, &start, horizon, Some(&bound)).verdict;
        if member {
            members += 1;
            ensure(mm.eve_wins(), || format!("game {i}: in the attractor at rank {:?} but {mm:?}", region.rank(&start)))?;
        }
        if let SolveVerdict::EveWinsWithin(k) = mm {
            wins += 1;
            ensure(member, || format!("game {i}: minimax wins in {k} but outside the attractor"))?;
            ensure(region.rank(&start) == Some(k), || format!("game {i}: rank {:?} vs minimax {k}", region.rank(&start)))?;
        }
    }
    Ok(format!("50 games, {members} starts in the attractor, {wins} minimax wins"))
}

/// Replays a stateless trace through the matrices; returns whether the target fired.
fn matrix_agrees(p: &Pipeline, t: &robotgames::engine::PlayTrace) -> Result<bool, String> {
    let (g, mg) = (&p.rg.game, &p.matrix);
    let mut cur = mg.initial.clone();
    ensure(cur == embed(&t.positions[0].vector), || "initial embedding".into())?;
    let mut fired = false;
    for (i, mv) in t.moves.iter().enumerate() {
        let (moves, mats) = if i % 2 == 0 { (&g.adam_moves, &mg.adam_mats) } else { (&g.eve_moves, &mg.eve_mats) };
        let idx = moves.iter().position(|v| v == &mv.vector).ok_or("unknown move")?;
        cur = mats[idx].apply(&cur);
        let pos: &Position = &t.positions[i + 1];
        let want = [pos.vector.x.clone(), BigInt::from(1), pos.vector.y.clone()];
        ensure(cur == want, || format!("step {i}: matrix {cur:?} vs vector {}", pos.vector))?;
        let win = pos.turn == Turn::Adam && cur == mg.target;
        ensure(win == is_eve_win(pos), || format!("win mismatch at step {i}"))?;
        fired |= win;
    }
    Ok(fired)
}

fn matrix_embedding() -> Outcome {
    let names: Vec<&str> = corpus::MACHINES.iter().map(|(n, _)| *n).collect();
    let pipelines: Vec<Pipeline> = names.iter().map(|n| pipeline(n)).collect();
    let mut wins = 0;
    for seed in 0..100u64 {
        let p = &pipelines[seed as usize % pipelines.len()];
        let t = play(&p.rg.game, &mut Random::new(seed), &mut Random::new(seed + 1000), 30).map_err(|e| e.to_string())?;
        wins += usize::from(matrix_agrees(p, &t).map_err(|e| format!("seed {seed}: {e}"))?);
    }
    // random plays rarely reach the origin, so the honest lines cover the win
    let mut honest = 0;
    for (name, p) in names.iter().zip(&pipelines) {
        let t = play(&p.rg.game, &mut AdamRefRg::new(p), &mut EveSimRg::new(p), 30).map_err(|e| e.to_string())?;
        let fired = matrix_agrees(p, &t).map_err(|e| format!("{name}: {e}"))?;
        ensure(fired == matches!(t.verdict, Verdict::EveWinsAt(_)), || format!("{name}: target fired {fired}"))?;
        honest += usize::from(fired);
    }
    ensure(honest > 0, || "no play reached the target".into())?;
    Ok(format!("100 random plays over {} machines agree ({wins} wins); {honest} honest wins fire the target", names.len()))
}

fn flag_soundness() -> Outcome {
    let mut steps = 0;
    for (name, m) in corpus::all() {
        let run = m.run(200).map_err(|e| e.to_string())?;
        let p = Pipeline::build(&m).map_err(|e| e.to_string())?;
        let mut state = p.flagged.initial();
        for (i, w) in run.trace.windows(2).enumerate() {
            let (cur, next) = (&w[0], &w[1]);
            let instr = instruction_between(&m, cur, next).ok_or_else(|| format!("{name}: no step {i}"))?;
            let t = p.flagged.sign_matching_step(&state, next, instr).ok_or_else(|| format!("{name}: step {i} has no flagged match"))?;
            ensure(t.target.base == next.state, || format!("{name}: step {i} projects to {}", t.target.base))?;
            let signs = Flags::of_signs(next.c1 > 0u32.into(), next.c2 > 0u32.into());
            ensure(t.target.flags == signs, || format!("{name}: step {i} flags {:?}", t.target.flags))?;
            state = t.target.clone();
            steps += 1;
        }
    }
    Ok(format!("{steps} steps over the corpus"))
}

/// The instruction the machine actually used, recovered from its step function.
fn instruction_between(m: &MinskyMachine, cur: &robotgames::MachineConfig, next: &robotgames::MachineConfig) -> Option<robotgames::Instruction> {
    match m.step(cur).ok()? {
        robotgames::StepResult::Next { config, transition } if &config == next => Some(m.transitions[transition].instruction),
        _ => None,
    }
}

#[test]
fn acceptance() {
    let mut lines = vec![
        timed(1, 1, move_counts),
        timed(2, 1, worked_example),
        timed(3, 10, honest_lines),
    ];
    let (cheats, premature) = punishment();
    lines.push(cheats);
    lines.push(timed(5, 10, drains));
    lines.push(premature);
    lines.push(timed(7, 30, oracle_agreement));
    lines.push(timed(8, 5, matrix_embedding));
    lines.push(timed(9, 5, flag_soundness));
    for l in &lines {
        l.print();
    }
    let failed: Vec<usize> = lines.iter().filter(|l| !l.passed()).map(|l| l.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
