//! Command-line front end: validate and run machines, build the reductions,
//! solve and play games, and replay the proof scenarios.

use std::fs;
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use robotgames::corpus;
use robotgames::engine::{apply, is_eve_win, Game, Strategy, Turn};
use robotgames::format::{emit_game, emit_machine, int_cap_from_env, load_game, parse_machine, AnyGame};
use robotgames::reductions::{count_moves, normalize_zero_zero, rg_from_matrix, Pipeline};
use robotgames::solver::{minimax_winner, BoxBound, Scenario, Settings, Verifier};
use robotgames::strategies::{by_name, Constant, Greedy, Random, PROOF_STRATEGIES};
use robotgames::{FormatError, MinskyMachine, Vec2};

mod exit;

use exit::{domain, usage, CliError};

#[derive(Parser)]
#[command(name = "robotgames", version, about = "Counter machines to robot games: reductions, play and solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Stage {
    Normalized,
    Flags,
    Rgs,
    Rg,
    Matrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Side {
    Adam,
    Eve,
}

#[derive(Subcommand)]
enum Command {
    /// Check a machine file against the determinism rules.
    Validate { machine: String },
    /// Run a machine from (init, (0,0)).
    Run {
        machine: String,
        #[arg(long, default_value_t = 1000)]
        max_steps: usize,
        /// Print every configuration.
        #[arg(long)]
        trace: bool,
    },
    /// Build one stage of the reduction pipeline.
    Reduce {
        machine: String,
        #[arg(long, value_enum)]
        to: Stage,
        /// Output file; standard output if absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Bounded minimax from the initial position of a game file.
    Solve {
        game: PathBuf,
        #[arg(long, default_value_t = 8)]
        horizon: usize,
        /// Box half-width; Eve loses when she leaves it.
        #[arg(long = "box")]
        bound: Option<u64>,
    },
    /// Interactive play: choose moves by index on standard input.
    Play {
        game: PathBuf,
        #[arg(long = "as", value_enum)]
        side: Side,
        /// random:<seed>, greedy, zero, or a proof strategy (needs --machine).
        #[arg(long, default_value = "random:0")]
        opponent: String,
        /// Machine the game was built from, for the proof strategies.
        #[arg(long)]
        machine: Option<String>,
        #[arg(long, default_value_t = 100)]
        max_rounds: usize,
    },
    /// Replay a proof scenario against the oracles.
    Verify {
        machine: String,
        #[arg(long, default_value = "all")]
        scenario: String,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Count the moves of the stateless game against 58m+227.
    Count { machine: String },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn dispatch(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Validate { machine } => validate(&machine),
        Command::Run { machine, max_steps, trace } => run(&machine, max_steps, trace),
        Command::Reduce { machine, to, output } => reduce(&machine, to, output.as_deref()),
        Command::Solve { game, horizon, bound } => solve(&game, horizon, bound),
        Command::Play { game, side, opponent, machine, max_rounds } => {
            play(&game, side, &opponent, machine.as_deref(), max_rounds)
        }
        Command::Verify { machine, scenario, depth } => verify(&machine, &scenario, depth),
        Command::Count { machine } => count(&machine),
    }
}

/// A machine file, or `corpus:<name>` for a built-in machine.
fn load_machine(arg: &str) -> Result<MinskyMachine, CliError> {
    if let Some(name) = arg.strip_prefix("corpus:") {
        return corpus::machine(name).ok_or_else(|| {
            let names: Vec<&str> = corpus::MACHINES.iter().map(|(n, _)| *n).collect();
            usage(format!("no corpus machine {name:?}; known: {}", names.join(", ")))
        });
    }
    let text = fs::read_to_string(arg).map_err(|e| usage(format!("{arg}: {e}")))?;
    parse_machine(&text).map_err(|e| match e {
        FormatError::Validation(_) => domain(format!("{arg}: {e}")),
        _ => usage(format!("{arg}: {e}")),
    })
}

fn load_any(path: &Path) -> Result<AnyGame, CliError> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    load_game(&text, int_cap_from_env()).map_err(|e| match e {
        FormatError::IntTooLarge { .. } => domain(format!("{}: {e}", path.display())),
        _ => usage(format!("{}: {e}", path.display())),
    })
}

fn build(m: &MinskyMachine) -> Result<Pipeline, CliError> {
    Pipeline::build(m).map_err(domain)
}

fn validate(arg: &str) -> Result<(), CliError> {
    let m = load_machine(arg)?;
    println!("ok: {} states, {} transitions", m.states.len(), m.transitions.len());
    Ok(())
}

fn run(arg: &str, max_steps: usize, trace: bool) -> Result<(), CliError> {
    let r = load_machine(arg)?.run(max_steps).map_err(domain)?;
    if trace {
        for (i, c) in r.trace.iter().enumerate() {
            println!("{i:>5}  {} ({}, {})", c.state, c.c1, c.c2);
        }
    }
    let last = r.trace.last().expect("a run holds the initial configuration");
    println!("{:?} at ({}, ({}, {}))", r.outcome, last.state, last.c1, last.c2);
    Ok(())
}

fn reduce(arg: &str, to: Stage, output: Option<&Path>) -> Result<(), CliError> {
    let m = load_machine(arg)?;
    let text = match to {
        Stage::Normalized => emit_machine(&normalize_zero_zero(&m).map_err(domain)?),
        stage => {
            let p = build(&m)?;
            emit_game(&match stage {
                Stage::Flags => AnyGame::Flagged(p.flagged),
                Stage::Rgs => AnyGame::Rgs(p.rgs),
                Stage::Rg => AnyGame::Rg(p.rg.game),
                _ => AnyGame::Matrix(p.matrix),
            })
        }
    };
    match output {
        Some(path) => fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

enum Playable {
    Rg(robotgames::RobotGame),
    Rgs(robotgames::RgsGame),
}

impl Playable {
    fn from_any(g: AnyGame) -> Result<Playable, CliError> {
        Ok(match g {
            AnyGame::Rg(g) => Playable::Rg(g),
            AnyGame::Rgs(g) => Playable::Rgs(g),
            AnyGame::Matrix(m) => {
                Playable::Rg(rg_from_matrix(&m).ok_or_else(|| domain("matrices are not of the robot-game shape"))?)
            }
            AnyGame::Flagged(_) => return Err(domain("a flagged machine is not a game")),
        })
    }

    fn game(&self) -> &dyn Game {
        match self {
            Playable::Rg(g) => g,
            Playable::Rgs(g) => g,
        }
    }
}

fn solve(path: &Path, horizon: usize, bound: Option<u64>) -> Result<(), CliError> {
    let g = Playable::from_any(load_any(path)?)?;
    let bound = bound.map(BoxBound::square);
    let start = g.game().initial_position();
    let r = match &g {
        Playable::Rg(g) => minimax_winner(g, &start, horizon, bound.as_ref()),
        Playable::Rgs(g) => minimax_winner(g, &start, horizon, bound.as_ref()),
    };
    println!("{:?}", r.verdict);
    if let Some(w) = &r.witness {
        println!("witness: {} positions", w.size());
    }
    Ok(())
}

fn opponent(name: &str, machine: Option<&str>) -> Result<Box<dyn Strategy>, CliError> {
    if PROOF_STRATEGIES.contains(&name) {
        let m = machine.ok_or_else(|| usage(format!("{name} needs --machine")))?;
        let p = build(&load_machine(m)?)?;
        return Ok(by_name(name, &p).expect("proof strategies are known by name"));
    }
    let seed = name.strip_prefix("random:").map(|s| s.parse::<u64>());
    Ok(match (name, seed) {
        ("greedy", _) => Box::new(Greedy),
        ("zero", _) => Box::new(Constant::new(Vec2::zero())),
        (_, Some(Ok(seed))) => Box::new(Random::new(seed)),
        _ => return Err(usage(format!("unknown opponent {name:?}"))),
    })
}

fn read_choice(lines: &mut impl Iterator<Item = io::Result<String>>, n: usize) -> Result<Option<usize>, CliError> {
    loop {
        print!("move index (q to quit)> ");
        io::stdout().flush().map_err(usage)?;
        let Some(line) = lines.next() else { return Ok(None) };
        let line = line.map_err(usage)?;
        let line = line.trim();
        if line == "q" {
            return Ok(None);
        }
        match line.parse::<usize>() {
            Ok(i) if i < n => return Ok(Some(i)),
            _ => println!("enter a number from 0 to {}", n - 1),
        }
    }
}

fn play(path: &Path, side: Side, opp: &str, machine: Option<&str>, max_rounds: usize) -> Result<(), CliError> {
    let g = Playable::from_any(load_any(path)?)?;
    let game = g.game();
    let mut bot = opponent(opp, machine)?;
    let mut pos = game.initial_position();
    bot.reset(&pos);
    let human = if side == Side::Adam { Turn::Adam } else { Turn::Eve };
    let stdin = io::stdin();
    let mut lines = stdin.lock().lines();
    for round in 1..=max_rounds {
        for player in [Turn::Adam, Turn::Eve] {
            println!("round {round}: {pos}");
            let legal = game.legal_moves(&pos);
            if legal.is_empty() {
                println!("no legal moves; play ends");
                return Ok(());
            }
            let mv = if player == human {
                for (i, m) in legal.iter().enumerate() {
                    println!("  [{i}] {m}");
                }
                match read_choice(&mut lines, legal.len())? {
                    Some(i) => legal[i].clone(),
                    None => return Ok(()),
                }
            } else {
                let mv = bot.propose(&pos, &legal).map_err(domain)?;
                println!("  {} plays {mv}", bot.name());
                mv
            };
            pos = apply(game, &pos, &mv).map_err(domain)?;
            bot.observe(player, &mv, &pos);
        }
        if is_eve_win(&pos) {
            println!("Eve wins in round {round}");
            return Ok(());
        }
    }
    println!("no win within {max_rounds} rounds");
    Ok(())
}

fn verify(arg: &str, scenario: &str, depth: usize) -> Result<(), CliError> {
    let scenarios: Vec<Scenario> = if scenario.eq_ignore_ascii_case("all") {
        Scenario::ALL.to_vec()
    } else {
        vec![scenario.parse().map_err(usage)?]
    };
    let v = Verifier::new(build(&load_machine(arg)?)?, Settings::default());
    let mut failed = 0;
    for sc in scenarios {
        match v.verify(sc, depth) {
            Ok(r) => println!("ok {r}"),
            Err(f) => {
                failed += 1;
                println!("FAILED {f}");
            }
        }
    }
    if failed > 0 {
        return Err(domain(format!("{failed} scenario(s) failed")));
    }
    Ok(())
}

fn count(arg: &str) -> Result<(), CliError> {
    let c = count_moves(&load_machine(arg)?).map_err(domain)?;
    let d = &c.direct;
    println!("m = {}: Adam {} moves, Eve {} moves, bound 58m+227 = {}", d.m, d.adam, d.eve, d.bound());
    if let Some(n) = &c.normalized {
        println!("normalized m = {}: Adam {} moves, Eve {} moves, bound {}", n.m, n.adam, n.eve, n.bound());
    }
    if !c.ok() {
        return Err(domain("move count exceeds the bound"));
    }
    Ok(())
}
