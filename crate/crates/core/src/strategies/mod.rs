//! Move proposers: the proof strategies and simple opponents.

mod basic;
mod rg;
mod rgs;

pub use basic::{Constant, Greedy, Random, Scripted};
pub use rg::{AdamRefRg, EveSimRg, Ledger, RgContext};
pub use rgs::{first_config, gadget_vector, punish_mod4, AdamRefRgs, EveSimRgs};

use crate::engine::Strategy;
use crate::reductions::Pipeline;

pub const PROOF_STRATEGIES: [&str; 4] = [EveSimRgs::NAME, AdamRefRgs::NAME, EveSimRg::NAME, AdamRefRg::NAME];

/// Builds a strategy by name: the proof strategies, `random:<seed>`, `greedy`
/// and `zero` (always the 0-move).
pub fn by_name(name: &str, p: &Pipeline) -> Option<Box<dyn Strategy>> {
    Some(match name {
        EveSimRgs::NAME => Box::new(EveSimRgs::new(p)),
        AdamRefRgs::NAME => Box::new(AdamRefRgs::new(p)),
        EveSimRg::NAME => Box::new(EveSimRg::new(p)),
        AdamRefRg::NAME => Box::new(AdamRefRg::new(p)),
        "greedy" => Box::new(Greedy),
        "zero" => Box::new(Constant::new(crate::models::Vec2::zero())),
        _ => Box::new(Random::new(name.strip_prefix("random:")?.parse().ok()?)),
    })
}
