//! JSON encoding of games. Integers are decimal strings and move sets are
//! sorted by their decimal renderings, so equal games give equal bytes.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::machine_text::{emit_machine, parse_machine};
use crate::error::FormatError;
use crate::models::{dedup_sorted, EveState, Mat3, MatrixGame, RgsGame, RgsMove, RobotGame, SimState, Vec2, Vec3};
use crate::reductions::{FlaggedMachine, FlaggedTransition};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyGame {
    Flagged(FlaggedMachine),
    Rgs(RgsGame),
    Rg(RobotGame),
    Matrix(MatrixGame),
}

#[derive(Serialize, Deserialize)]
struct VecJson {
    x: String,
    y: String,
}

#[derive(Serialize, Deserialize)]
struct RgsMoveJson {
    src: String,
    x: String,
    y: String,
    dst: String,
}

#[derive(Serialize, Deserialize)]
struct RgsInitialJson {
    state: String,
    x: String,
    y: String,
}

#[derive(Serialize, Deserialize)]
struct FlaggedTransitionJson {
    src: String,
    label: String,
    dst: String,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum GameJson {
    Flagged { base: String, states: Vec<String>, transitions: Vec<FlaggedTransitionJson> },
    Rgs { states: Vec<String>, adam: Vec<VecJson>, eve: Vec<RgsMoveJson>, initial: RgsInitialJson },
    Rg { adam: Vec<VecJson>, eve: Vec<VecJson>, initial: VecJson },
    Matrix { adam: Vec<[[String; 3]; 3]>, eve: Vec<[[String; 3]; 3]>, initial: [String; 3], target: [String; 3] },
}

fn vec_json(v: &Vec2) -> VecJson {
    VecJson { x: v.x.to_string(), y: v.y.to_string() }
}

fn sorted_vecs(vs: &[Vec2]) -> Vec<VecJson> {
    let mut out: Vec<VecJson> = vs.iter().map(vec_json).collect();
    out.sort_by(|a, b| (&a.x, &a.y).cmp(&(&b.x, &b.y)));
    out
}

fn mat_json(m: &Mat3) -> [[String; 3]; 3] {
    m.0.clone().map(|row| row.map(|e| e.to_string()))
}

fn sorted_mats(ms: &[Mat3]) -> Vec<[[String; 3]; 3]> {
    let mut out: Vec<_> = ms.iter().map(mat_json).collect();
    out.sort();
    out
}

pub fn emit_game(game: &AnyGame) -> String {
    let json = match game {
        AnyGame::Flagged(f) => {
            let mut transitions: Vec<FlaggedTransitionJson> = f
                .transitions
                .iter()
                .map(|t| FlaggedTransitionJson {
                    src: t.source.render(),
                    label: t.instruction.label(),
                    dst: t.target.render(),
                })
                .collect();
            transitions.sort_by(|a, b| (&a.src, &a.label, &a.dst).cmp(&(&b.src, &b.label, &b.dst)));
            GameJson::Flagged {
                base: emit_machine(&f.base),
                states: f.states.iter().map(SimState::render).collect(),
                transitions,
            }
        }
        AnyGame::Rgs(g) => {
            let mut eve: Vec<RgsMoveJson> = g
                .eve_moves
                .iter()
                .map(|m| RgsMoveJson {
                    src: m.source.render(),
                    x: m.vector.x.to_string(),
                    y: m.vector.y.to_string(),
                    dst: m.target.render(),
                })
                .collect();
            eve.sort_by(|a, b| (&a.src, &a.x, &a.y, &a.dst).cmp(&(&b.src, &b.x, &b.y, &b.dst)));
            GameJson::Rgs {
                states: g.eve_states.iter().map(EveState::render).collect(),
                adam: sorted_vecs(&g.adam_moves),
                eve,
                initial: RgsInitialJson {
                    state: g.initial.0.render(),
                    x: g.initial.1.x.to_string(),
                    y: g.initial.1.y.to_string(),
                },
            }
        }
        AnyGame::Rg(g) => GameJson::Rg {
            adam: sorted_vecs(&g.adam_moves),
            eve: sorted_vecs(&g.eve_moves),
            initial: vec_json(&g.initial),
        },
        AnyGame::Matrix(g) => GameJson::Matrix {
            adam: sorted_mats(&g.adam_mats),
            eve: sorted_mats(&g.eve_mats),
            initial: g.initial.clone().map(|e| e.to_string()),
            target: g.target.clone().map(|e| e.to_string()),
        },
    };
    let mut out = serde_json::to_string_pretty(&json).expect("plain data serializes");
    out.push('\n');
    out
}

/// Reads `ROBOTGAMES_MAX_INT_BITS`; unset or empty means no cap.
pub fn int_cap_from_env() -> Option<u64> {
    std::env::var("ROBOTGAMES_MAX_INT_BITS").ok().and_then(|v| v.trim().parse().ok())
}

pub fn check_bits(bits: u64, cap: Option<u64>) -> Result<(), FormatError> {
    match cap {
        Some(cap) if bits > cap => Err(FormatError::IntTooLarge { bits, cap }),
        _ => Ok(()),
    }
}

/// Largest bit length of any integer in the game.
pub fn max_bits(game: &AnyGame) -> u64 {
    let vbits = |vs: &mut dyn Iterator<Item = &Vec2>| vs.map(Vec2::bits).max().unwrap_or(0);
    match game {
        AnyGame::Flagged(_) => 0,
        AnyGame::Rgs(g) => vbits(&mut g.adam_moves.iter().chain(g.eve_moves.iter().map(|m| &m.vector)).chain([&g.initial.1])),
        AnyGame::Rg(g) => vbits(&mut g.adam_moves.iter().chain(&g.eve_moves).chain([&g.initial])),
        AnyGame::Matrix(g) => g
            .adam_mats
            .iter()
            .chain(&g.eve_mats)
            .flat_map(|m| m.0.iter().flatten())
            .chain(g.initial.iter())
            .chain(g.target.iter())
            .map(|e| e.bits())
            .max()
            .unwrap_or(0),
    }
}

struct Reader {
    cap: Option<u64>,
}

impl Reader {
    fn int(&self, s: &str) -> Result<BigInt, FormatError> {
        let v = BigInt::from_str(s).map_err(|_| FormatError::parse(0, format!("malformed integer {s:?}")))?;
        check_bits(v.bits(), self.cap)?;
        Ok(v)
    }

    fn vec2(&self, x: &str, y: &str) -> Result<Vec2, FormatError> {
        Ok(Vec2 { x: self.int(x)?, y: self.int(y)? })
    }

    fn vecs(&self, vs: &[VecJson]) -> Result<Vec<Vec2>, FormatError> {
        vs.iter().map(|v| self.vec2(&v.x, &v.y)).collect()
    }

    fn vec3(&self, v: &[String; 3]) -> Result<Vec3, FormatError> {
        Ok([self.int(&v[0])?, self.int(&v[1])?, self.int(&v[2])?])
    }

    fn mats(&self, ms: &[[[String; 3]; 3]]) -> Result<Vec<Mat3>, FormatError> {
        let mut out = ms
            .iter()
            .map(|m| Ok(Mat3([self.vec3(&m[0])?, self.vec3(&m[1])?, self.vec3(&m[2])?])))
            .collect::<Result<Vec<_>, FormatError>>()?;
        out.sort();
        out.dedup();
        Ok(out)
    }
}

fn state(s: &str) -> Result<EveState, FormatError> {
    EveState::parse(s).ok_or_else(|| FormatError::parse(0, format!("malformed state {s:?}")))
}

fn sim_state(s: &str) -> Result<SimState, FormatError> {
    state(s)?.as_sim().cloned().ok_or_else(|| FormatError::parse(0, format!("{s:?} is not a simulation state")))
}

pub fn load_game(text: &str, cap: Option<u64>) -> Result<AnyGame, FormatError> {
    let json: GameJson =
        serde_json::from_str(text).map_err(|e| FormatError::parse(e.line(), e.to_string()))?;
    let r = Reader { cap };
    Ok(match json {
        GameJson::Flagged { base, states, transitions } => {
            let base = parse_machine(&base)?;
            let states = states.iter().map(|s| sim_state(s)).collect::<Result<_, _>>()?;
            let mut transitions = transitions
                .iter()
                .map(|t| {
                    Ok(FlaggedTransition {
                        source: sim_state(&t.src)?,
                        instruction: crate::models::Instruction::parse_label(&t.label)
                            .ok_or_else(|| FormatError::parse(0, format!("unknown label {:?}", t.label)))?,
                        target: sim_state(&t.dst)?,
                    })
                })
                .collect::<Result<Vec<_>, FormatError>>()?;
            canonical_flagged(&base, &mut transitions);
            AnyGame::Flagged(FlaggedMachine { base, states, transitions })
        }
        GameJson::Rgs { states, adam, eve, initial } => {
            let mut eve_moves = eve
                .iter()
                .map(|m| Ok(RgsMove::new(state(&m.src)?, r.vec2(&m.x, &m.y)?, state(&m.dst)?)))
                .collect::<Result<Vec<_>, FormatError>>()?;
            eve_moves.sort();
            eve_moves.dedup();
            AnyGame::Rgs(RgsGame {
                eve_states: states.iter().map(|s| state(s)).collect::<Result<_, _>>()?,
                adam_moves: dedup_sorted(r.vecs(&adam)?),
                eve_moves,
                initial: (state(&initial.state)?, r.vec2(&initial.x, &initial.y)?),
            })
        }
        GameJson::Rg { adam, eve, initial } => {
            AnyGame::Rg(RobotGame::new(r.vecs(&adam)?, r.vecs(&eve)?, r.vec2(&initial.x, &initial.y)?))
        }
        GameJson::Matrix { adam, eve, initial, target } => AnyGame::Matrix(MatrixGame {
            adam_mats: r.mats(&adam)?,
            eve_mats: r.mats(&eve)?,
            initial: r.vec3(&initial)?,
            target: r.vec3(&target)?,
        }),
    })
}

/// Flagged transitions in the order [`crate::reductions::add_flags`] emits them.
fn canonical_flagged(base: &crate::models::MinskyMachine, ts: &mut [FlaggedTransition]) {
    let rank = |t: &FlaggedTransition| {
        let base_rank = base
            .transitions
            .iter()
            .position(|b| b.source == t.source.base && b.instruction == t.instruction && b.target == t.target.base);
        (base_rank, t.source.flags, t.target.flags)
    };
    ts.sort_by_key(rank);
}
