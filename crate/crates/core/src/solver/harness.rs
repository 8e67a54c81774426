//! Replays the proof scenarios against the strategies and the oracles.
//!
//! L1–L4 run on the game with states, L5–L8 on the stateless game: honest
//! play, single Eve deviations punished by the referee, Adam's check answered
//! by Eve's drain, and premature drain moves punished by the referee.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{BoxBound, Oracle, SolveVerdict};
use crate::engine::{is_eve_win, play, Game, Move, PlayTrace, Position, Strategy, Turn, Verdict};
use crate::models::{EveState, MachineConfig, MinskyMachine, RunOutcome, Vec2};
use crate::reductions::{Pipeline, RgMoveKind};
use crate::strategies::{AdamRefRg, AdamRefRgs, Constant, EveSimRg, EveSimRgs, Greedy, Random, Scripted};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scenario {
    L1,
    L2,
    L3,
    L4,
    L5,
    L6,
    L7,
    L8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Honest,
    Cheat,
    Check,
    Premature,
}

impl Scenario {
    pub const ALL: [Scenario; 8] =
        [Scenario::L1, Scenario::L2, Scenario::L3, Scenario::L4, Scenario::L5, Scenario::L6, Scenario::L7, Scenario::L8];

    /// Runs on the stateless game rather than the game with states.
    pub fn stateless(self) -> bool {
        self >= Scenario::L5
    }

    fn kind(self) -> Kind {
        match self {
            Scenario::L1 | Scenario::L5 => Kind::Honest,
            Scenario::L2 | Scenario::L6 => Kind::Cheat,
            Scenario::L3 | Scenario::L7 => Kind::Check,
            Scenario::L4 | Scenario::L8 => Kind::Premature,
        }
    }

    pub fn describe(self) -> &'static str {
        match self.kind() {
            Kind::Honest => "honest play follows the machine",
            Kind::Cheat => "Eve's deviations are punished",
            Kind::Check => "Adam's check is answered by a drain",
            Kind::Premature => "premature drain moves are punished",
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Scenario {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scenario::ALL
            .into_iter()
            .find(|sc| sc.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown scenario {s:?}, expected L1..L8"))
    }
}

/// Search limits for the deviation checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Settings {
    /// Minimax horizon from each post-deviation position.
    pub horizon: usize,
    /// Rounds per replayed trace, prefix included.
    pub trace_rounds: usize,
    /// Box for the game with states; the stateless box scales the second side by `4·8ⁿ`.
    pub box_size: u32,
    /// Seeds of the random continuations played after a deviation.
    pub seeds: Vec<u64>,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { horizon: 12, trace_rounds: 24, box_size: 4, seeds: vec![0, 1, 2] }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LemmaReport {
    pub scenario: Option<Scenario>,
    pub depth: usize,
    /// Deviations, injections or honest runs examined.
    pub cases: usize,
    pub traces: usize,
    /// Oracle queries, and how many of them were inside the box.
    pub queries: usize,
    pub in_box: usize,
    /// Slowest win seen, in rounds after the injection.
    pub slowest_win: Option<usize>,
    /// Traces where Eve reached the origin against the referee although its
    /// invariant held throughout; the claimed invariant alone does not rule this out.
    pub referee_losses: Vec<String>,
    pub notes: Vec<String>,
}

impl fmt::Display for LemmaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.scenario.map(|s| s.to_string()).unwrap_or_default();
        write!(f, "{name} depth {}: {} cases, {} traces", self.depth, self.cases, self.traces)?;
        if self.queries > 0 {
            write!(f, ", {} minimax queries ({} in box)", self.queries, self.in_box)?;
        }
        if let Some(r) = self.slowest_win {
            write!(f, ", slowest drain {r} rounds")?;
        }
        if !self.referee_losses.is_empty() {
            write!(f, ", referee lost {} traces", self.referee_losses.len())?;
            if let Some(first) = self.referee_losses.first() {
                write!(f, "\n  first loss: {first}")?;
            }
        }
        for n in &self.notes {
            write!(f, "\n  {n}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScenarioFailure {
    pub scenario: Scenario,
    pub reason: String,
    pub trace: Option<PlayTrace>,
}

impl fmt::Display for ScenarioFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} failed: {}", self.scenario, self.reason)?;
        if let Some(t) = &self.trace {
            for (i, p) in t.positions.iter().enumerate() {
                write!(f, "\n  {i:>3}  {p}")?;
                if let Some(m) = t.moves.get(i) {
                    write!(f, "  plays {m}")?;
                }
            }
            write!(f, "\n  verdict {:?}", t.verdict)?;
        }
        Ok(())
    }
}

impl std::error::Error for ScenarioFailure {}

/// What the referee promises at the start of Eve's turn.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Guard {
    /// Still accepting Eve's play as honest.
    Watching,
    /// First counter `≢ 0 (mod 4)`.
    Mod4,
    /// Second counter outside `[0, 8ⁿ)` modulo `4·8ⁿ`.
    Interval,
}

trait Referee: Strategy {
    fn guard(&self) -> Guard;
}

impl Referee for AdamRefRgs {
    fn guard(&self) -> Guard {
        if self.is_punishing() {
            Guard::Mod4
        } else {
            Guard::Watching
        }
    }
}

impl Referee for AdamRefRg {
    fn guard(&self) -> Guard {
        if self.is_checking() {
            Guard::Interval
        } else if self.is_mod4() {
            Guard::Mod4
        } else {
            Guard::Watching
        }
    }
}

/// Wraps a referee and notes its guard each time it is asked to move.
struct Recording<R> {
    inner: R,
    guards: Vec<Guard>,
}

impl<R: Referee> Strategy for Recording<R> {
    fn name(&self) -> &str {
        self.inner.name()
    }
    fn reset(&mut self, initial: &Position) {
        self.guards.clear();
        self.inner.reset(initial);
    }
    fn observe(&mut self, player: Turn, mv: &Move, after: &Position) {
        self.inner.observe(player, mv, after);
    }
    fn propose(&mut self, pos: &Position, legal: &[Move]) -> Result<Move, crate::error::EngineError> {
        self.guards.push(self.inner.guard());
        self.inner.propose(pos, legal)
    }
}

/// Runs the scenarios for one machine, building each oracle at most once.
pub struct Verifier {
    pipeline: Pipeline,
    settings: Settings,
    rgs_oracle: OnceLock<Oracle>,
    rg_oracle: OnceLock<Oracle>,
}

impl Verifier {
    pub fn new(pipeline: Pipeline, settings: Settings) -> Self {
        Verifier { pipeline, settings, rgs_oracle: OnceLock::new(), rg_oracle: OnceLock::new() }
    }

    pub fn pipeline(&self) -> &Pipeline {
        &self.pipeline
    }

    pub fn settings(&self) -> &Settings {
        &self.settings
    }

    fn unit(&self) -> BigInt {
        let num = &self.pipeline.rg.numbering;
        num.pow8(num.n()).clone()
    }

    pub fn rgs_box(&self) -> BoxBound {
        BoxBound::square(self.settings.box_size)
    }

    pub fn rg_box(&self) -> BoxBound {
        let b = BigInt::from(self.settings.box_size);
        BoxBound { x: b.clone(), y: b * 4 * self.unit() }
    }

    fn bound(&self, stateless: bool) -> BoxBound {
        if stateless {
            self.rg_box()
        } else {
            self.rgs_box()
        }
    }

    fn oracle(&self, stateless: bool) -> &Oracle {
        let h = self.settings.horizon;
        if stateless {
            self.rg_oracle.get_or_init(|| Oracle::new(&self.pipeline.rg.game, h, Some(&self.rg_box())))
        } else {
            self.rgs_oracle.get_or_init(|| Oracle::new(&self.pipeline.rgs, h, Some(&self.rgs_box())))
        }
    }

    fn game(&self, stateless: bool) -> &dyn Game {
        if stateless {
            &self.pipeline.rg.game
        } else {
            &self.pipeline.rgs
        }
    }

    fn honest_eve(&self, stateless: bool) -> Box<dyn Strategy> {
        if stateless {
            Box::new(EveSimRg::new(&self.pipeline))
        } else {
            Box::new(EveSimRgs::new(&self.pipeline))
        }
    }

    /// Plays `eve` against a fresh recording referee.
    fn refereed(&self, stateless: bool, eve: &mut dyn Strategy, rounds: usize) -> Result<(PlayTrace, Vec<Guard>), String> {
        let game = self.game(stateless);
        let out = if stateless {
            let mut adam = Recording { inner: AdamRefRg::new(&self.pipeline), guards: Vec::new() };
            play(game, &mut adam, eve, rounds).map(|t| (t, adam.guards))
        } else {
            let mut adam = Recording { inner: AdamRefRgs::new(&self.pipeline), guards: Vec::new() };
            play(game, &mut adam, eve, rounds).map(|t| (t, adam.guards))
        };
        out.map_err(|e| e.to_string())
    }

    fn holds(&self, guard: Guard, v: &Vec2) -> bool {
        match guard {
            Guard::Watching => false,
            Guard::Mod4 => !v.x.mod_floor(&BigInt::from(4)).is_zero(),
            Guard::Interval => {
                let unit = self.unit();
                v.y.mod_floor(&(&unit * 4)) >= unit
            }
        }
    }
}

fn failure(scenario: Scenario, reason: impl Into<String>, trace: Option<PlayTrace>) -> ScenarioFailure {
    ScenarioFailure { scenario, reason: reason.into(), trace }
}

impl Verifier {
    pub fn verify(&self, scenario: Scenario, depth: usize) -> Result<LemmaReport, ScenarioFailure> {
        let mut report = LemmaReport { scenario: Some(scenario), depth, ..LemmaReport::default() };
        match scenario.kind() {
            Kind::Honest => self.honest(scenario, &mut report)?,
            Kind::Cheat | Kind::Premature => self.deviations(scenario, depth, &mut report)?,
            Kind::Check => self.checks(scenario, depth, &mut report)?,
        }
        Ok(report)
    }

    /// Honest play against the referee, `rounds` rounds.
    fn honest_trace(&self, scenario: Scenario, rounds: usize) -> Result<(PlayTrace, Vec<Guard>), ScenarioFailure> {
        let stateless = scenario.stateless();
        let mut eve = self.honest_eve(stateless);
        self.refereed(stateless, eve.as_mut(), rounds)
            .map_err(|e| failure(scenario, format!("honest play failed: {e}"), None))
    }

    /// Rounds of honest play that simulate the machine, at most `depth`. Once
    /// the sink is reached there is no correct move left to deviate from.
    fn correct_rounds(&self, depth: usize) -> usize {
        match self.pipeline.machine.run(depth + 2).map(|r| r.outcome) {
            Ok(RunOutcome::SinkAt(k)) => k.min(depth),
            _ => depth,
        }
    }

    /// Where the honest play should stand after the machine reaches `cfg`.
    fn image(&self, stateless: bool, cfg: &MachineConfig) -> (Option<EveState>, Vec2) {
        let flags = crate::models::Flags::of_signs(!cfg.c1.is_zero(), !cfg.c2.is_zero());
        let state = EveState::sim(cfg.state.clone(), flags);
        let c1 = BigInt::from(cfg.c1.clone()) * 4;
        let c2 = BigInt::from(cfg.c2.clone());
        if !stateless {
            return (Some(state), Vec2 { x: c1, y: c2 });
        }
        let num = &self.pipeline.rg.numbering;
        let idx = num.index(&state).expect("flagged state is numbered");
        let y = c2 * 4 * self.unit() + num.pow8(idx) - 1;
        (None, Vec2 { x: c1, y })
    }

    fn honest(&self, scenario: Scenario, report: &mut LemmaReport) -> Result<(), ScenarioFailure> {
        let stateless = scenario.stateless();
        let cap = self.settings.trace_rounds.max(20);
        let run = self.pipeline.machine.run(cap + 2).map_err(|e| failure(scenario, e.to_string(), None))?;
        let (rounds, expect) = match run.outcome {
            // the games start one machine step in
            RunOutcome::ZeroZeroAt(k) => (k + 1, Verdict::EveWinsAt(if stateless { k } else { k - 1 })),
            RunOutcome::SinkAt(k) => (k.saturating_sub(1), Verdict::Ongoing),
            RunOutcome::Exhausted => (cap, Verdict::Ongoing),
        };
        let (trace, guards) = self.honest_trace(scenario, rounds)?;
        report.cases = 1;
        report.traces = 1;
        if trace.verdict != expect {
            let why = format!("machine outcome {:?} but honest play gave {:?}, expected {expect:?}", run.outcome, trace.verdict);
            return Err(failure(scenario, why, Some(trace)));
        }
        if let Some(j) = guards.iter().position(|g| *g != Guard::Watching) {
            return Err(failure(scenario, format!("referee punished honest play in round {}", j + 1), Some(trace)));
        }
        let played = trace.moves.len() / 2;
        for j in 1..=played.min(run.trace.len().saturating_sub(2)) {
            let (state, vector) = self.image(stateless, &run.trace[j + 1]);
            let pos = &trace.positions[2 * j];
            if pos.vector != vector || (!stateless && pos.eve_state != state) {
                let why = format!("round {j} is at {pos}, expected the image of machine step {}", j + 1);
                return Err(failure(scenario, why, Some(trace)));
            }
        }
        report.notes.push(format!("machine {:?}, honest play {:?}", run.outcome, trace.verdict));
        Ok(())
    }
}

impl Verifier {
    fn continuations(&self) -> Vec<Box<dyn Strategy>> {
        let mut out: Vec<Box<dyn Strategy>> = self.settings.seeds.iter().map(|&s| Box::new(Random::new(s)) as Box<dyn Strategy>).collect();
        out.push(Box::new(Greedy));
        out
    }

    /// Simulation-state index the honest stateless move leaves from.
    fn honest_source(&self, honest: &Move) -> Option<usize> {
        let rg = &self.pipeline.rg;
        match &rg.describe(&honest.vector)?.kind {
            RgMoveKind::Regular(m) => rg.numbering.index(&m.source),
            RgMoveKind::Finish { state } => Some(*state),
            _ => None,
        }
    }

    /// The move brings the simulated counters to zero, which wins the game
    /// with states whatever the target flags.
    fn lands(&self, stateless: bool, at: &Position, mv: &Move) -> bool {
        let after = crate::engine::apply_unchecked(at, mv);
        if !stateless || is_eve_win(&after) {
            return is_eve_win(&after);
        }
        let rg = &self.pipeline.rg;
        match rg.describe(&mv.vector).map(|d| &d.kind) {
            Some(RgMoveKind::Regular(m)) => match rg.numbering.index(&m.target) {
                Some(t) if m.target.as_sim().is_some() => {
                    after.vector.x.is_zero() && after.vector.y == rg.numbering.pow8(t) - 1
                }
                _ => false,
            },
            _ => false,
        }
    }

    /// A drain move played while Eve should still be simulating.
    fn is_premature(&self, stateless: bool, at: &Position, honest: &Move, mv: &Move) -> bool {
        if !stateless {
            let from_sim = at.eve_state.as_ref().is_some_and(|s| s.as_sim().is_some());
            return from_sim && matches!(mv.target, Some(EveState::Top { .. }));
        }
        match self.pipeline.rg.describe(&mv.vector).map(|d| &d.kind) {
            Some(RgMoveKind::Defence { state, .. }) => Some(*state) == self.honest_source(honest),
            _ => false,
        }
    }

    fn deviations(&self, scenario: Scenario, depth: usize, report: &mut LemmaReport) -> Result<(), ScenarioFailure> {
        let stateless = scenario.stateless();
        let premature = scenario.kind() == Kind::Premature;
        let (honest, _) = self.honest_trace(scenario, self.correct_rounds(depth))?;
        let eve_moves: Vec<Move> = honest.moves.iter().skip(1).step_by(2).cloned().collect();
        let bound = self.bound(stateless);
        let game = self.game(stateless);
        let mut also_winning = 0;
        let mut forced: Vec<(String, PlayTrace)> = Vec::new();
        for r in 1..=eve_moves.len() {
            let at = &honest.positions[2 * r - 1];
            let honest_mv = &eve_moves[r - 1];
            let honest_wins = self.lands(stateless, at, honest_mv);
            for mv in game.legal_moves(at) {
                if &mv == honest_mv || self.is_premature(stateless, at, honest_mv, &mv) != premature {
                    continue;
                }
                let after = crate::engine::apply_unchecked(at, &mv);
                if honest_wins && self.lands(stateless, at, &mv) {
                    // only the target flags differ from the honest move
                    also_winning += 1;
                    continue;
                }
                if is_eve_win(&after) {
                    return Err(failure(scenario, format!("{mv} in round {r} reaches the origin"), None));
                }
                report.cases += 1;
                report.queries += 1;
                report.in_box += usize::from(bound.contains(&after.vector));
                if let SolveVerdict::EveWinsWithin(k) = self.oracle(stateless).verdict(&after) {
                    let mut positions = honest.positions[..2 * r].to_vec();
                    positions.push(after);
                    let mut moves = honest.moves[..2 * r - 1].to_vec();
                    moves.push(mv.clone());
                    let t = PlayTrace { positions, moves, verdict: Verdict::Ongoing };
                    forced.push((format!("Eve forces the origin within {k} rounds after {mv} in round {r}"), t));
                    continue;
                }
                let mut script = eve_moves[..r - 1].to_vec();
                script.push(mv.clone());
                for cont in self.continuations() {
                    let mut eve = Scripted::new(script.clone(), cont);
                    let (t, guards) = self
                        .refereed(stateless, &mut eve, self.settings.trace_rounds)
                        .map_err(|e| failure(scenario, format!("play after {mv} in round {r} failed: {e}"), None))?;
                    report.traces += 1;
                    if let Some(w) = self.check_punished(scenario, r, &t, &guards)? {
                        let moves: Vec<String> = t.moves.iter().skip(2 * r - 1).map(|m| m.to_string()).collect();
                        report.referee_losses.push(format!("after {mv} in round {r}, Eve won in round {w}: {}", moves.join(", ")));
                    }
                }
            }
        }
        if also_winning > 0 {
            report.notes.push(format!("{also_winning} moves skipped: they reach the origin in the round the honest move does"));
        }
        if report.cases == 0 {
            report.notes.push("no such Eve move within the depth".into());
        }
        if let Some((first, t)) = forced.first() {
            let why = format!("{} of {} deviations are Eve wins within {} rounds; first: {first}", forced.len(), report.cases, self.settings.horizon);
            return Err(failure(scenario, why, Some(t.clone())));
        }
        Ok(())
    }

    /// Checks the invariant at every Eve turn after the deviation and returns
    /// the round Eve won in, if she did.
    fn check_punished(&self, scenario: Scenario, r: usize, t: &PlayTrace, guards: &[Guard]) -> Result<Option<usize>, ScenarioFailure> {
        for (j, g) in guards.iter().enumerate().skip(r) {
            let Some(turn) = t.positions.get(2 * j + 1) else { break };
            if !self.holds(*g, &turn.vector) {
                let why = format!("referee invariant {g:?} fails at Eve's turn in round {} after a deviation in round {r}", j + 1);
                return Err(failure(scenario, why, Some(t.clone())));
            }
        }
        Ok(match t.verdict {
            Verdict::EveWinsAt(w) => Some(w),
            _ => None,
        })
    }
}

/// Extra rounds the stateless drain may need over the bound of the game with states.
pub const STATELESS_DRAIN_SLACK: usize = 0;

impl Verifier {
    /// `c1/4 + c2 + 2` rounds from the injection round on, counters read off
    /// the position where Adam injects.
    pub fn drain_bound(&self, stateless: bool, at: &Vec2) -> usize {
        let c1 = at.x.div_floor(&BigInt::from(4));
        let c2 = if stateless { at.y.div_floor(&(self.unit() * 4)) } else { at.y.clone() };
        let base = (c1 + c2).max(BigInt::zero()).to_usize().unwrap_or(usize::MAX - 8) + 2;
        base + if stateless { STATELESS_DRAIN_SLACK } else { 0 }
    }

    fn injections(&self, stateless: bool) -> Vec<Vec2> {
        if stateless {
            self.pipeline.rg.adam_checks.iter().map(|(_, v)| v.clone()).collect()
        } else {
            vec![Vec2::new(1, 0)]
        }
    }

    fn adam_continuations(&self, injected: &Vec2) -> Vec<Box<dyn Strategy>> {
        let mut out: Vec<Box<dyn Strategy>> = vec![Box::new(Constant::new(Vec2::zero())), Box::new(Constant::new(Vec2::new(1, 0)))];
        if injected.y.is_negative() {
            out.push(Box::new(Constant::new(injected.clone())));
        }
        out.extend(self.settings.seeds.iter().map(|&s| Box::new(Random::new(s)) as Box<dyn Strategy>));
        out
    }

    fn checks(&self, scenario: Scenario, depth: usize, report: &mut LemmaReport) -> Result<(), ScenarioFailure> {
        let stateless = scenario.stateless();
        let (honest, _) = self.honest_trace(scenario, self.correct_rounds(depth))?;
        let rounds = honest.moves.len().div_ceil(2);
        for r in 1..=rounds.min(depth) {
            let at = &honest.positions[2 * r - 2];
            let limit = self.drain_bound(stateless, &at.vector);
            for inj in self.injections(stateless) {
                report.cases += 1;
                for cont in self.adam_continuations(&inj) {
                    let mut script = vec![Move::vector(Vec2::zero()); r - 1];
                    script.push(Move::vector(inj.clone()));
                    let mut adam = Scripted::new(script, cont);
                    let mut eve = self.honest_eve(stateless);
                    let t = play(self.game(stateless), &mut adam, eve.as_mut(), r - 1 + limit)
                        .map_err(|e| failure(scenario, format!("drain after {inj} in round {r} failed: {e}"), None))?;
                    report.traces += 1;
                    match t.verdict {
                        Verdict::EveWinsAt(w) if w >= r => {
                            let took = w - r + 1;
                            report.slowest_win = Some(report.slowest_win.map_or(took, |s| s.max(took)));
                        }
                        v => {
                            let why = format!("Adam's {inj} in round {r}: expected an Eve win within {limit} rounds, got {v:?}");
                            return Err(failure(scenario, why, Some(t)));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Builds the pipeline for `machine` and checks one scenario with default settings.
pub fn verify_lemma(machine: &MinskyMachine, scenario: Scenario, depth: usize) -> Result<LemmaReport, ScenarioFailure> {
    let p = Pipeline::build(machine).map_err(|e| failure(scenario, format!("reduction failed: {e}"), None))?;
    Verifier::new(p, Settings::default()).verify(scenario, depth)
}
