//! Halting to zero-zero reachability.
//!
//! Both counters carry a +1 shift token, so neither is ever zero while the
//! other is being tested. Every decrement/zero-test pair of the source machine
//! is replaced by decrement, test, re-increment on the shifted value, and every
//! transition into the old sink drains c1 and then c2, so the first both-zero
//! configuration occurs exactly when the source machine halts.

use std::collections::HashSet;

use crate::error::ModelError;
use crate::models::{CounterIndex, InstrKind, Instruction, MinskyMachine, Transition};

struct Namer {
    taken: HashSet<String>,
}

impl Namer {
    fn fresh(&mut self, wanted: String) -> String {
        let mut name = wanted;
        while self.taken.contains(&name) {
            name.push('~');
        }
        self.taken.insert(name.clone());
        name
    }
}

pub fn normalize_zero_zero(m: &MinskyMachine) -> Result<MinskyMachine, ModelError> {
    m.ensure_valid()?;
    let mut namer = Namer { taken: m.states.iter().cloned().collect() };
    let start = namer.fresh("~start".into());
    let start2 = namer.fresh("~start2".into());
    let drain1 = namer.fresh("~drain1".into());
    let drain2 = namer.fresh("~drain2".into());
    let halt = namer.fresh("~halt".into());

    let redirect = |t: &str| -> String {
        if t == m.sink {
            drain1.clone()
        } else {
            t.to_string()
        }
    };

    let mut states = vec![start.clone(), start2.clone()];
    let mut transitions = vec![
        Transition::new(&start, Instruction::inc(CounterIndex::C1), &start2),
        Transition::new(&start2, Instruction::inc(CounterIndex::C2), redirect(&m.initial)),
    ];

    for s in &m.states {
        if *s == m.sink {
            continue;
        }
        states.push(s.clone());
        let out: Vec<&Transition> = m.outgoing(s).map(|(_, t)| t).collect();
        if let [t] = out.as_slice() {
            transitions.push(Transition::new(s, t.instruction, redirect(&t.target)));
            continue;
        }
        let dec = out.iter().find(|t| t.instruction.kind == InstrKind::Dec).expect("validated pair");
        let zero = out.iter().find(|t| t.instruction.kind == InstrKind::ZeroTest).expect("validated pair");
        let c = dec.instruction.counter;
        let lowered = namer.fresh(format!("{s}~a"));
        let positive = namer.fresh(format!("{s}~d"));
        let was_zero = namer.fresh(format!("{s}~z"));
        states.extend([lowered.clone(), positive.clone(), was_zero.clone()]);
        transitions.extend([
            // shifted value is never zero here; the zero-test sibling is unreachable
            Transition::new(s, Instruction::dec(c), &lowered),
            Transition::new(s, Instruction::zero_test(c), &halt),
            Transition::new(&lowered, Instruction::dec(c), &positive),
            Transition::new(&lowered, Instruction::zero_test(c), &was_zero),
            Transition::new(&positive, Instruction::inc(c), redirect(&dec.target)),
            Transition::new(&was_zero, Instruction::inc(c), redirect(&zero.target)),
        ]);
    }

    states.extend([drain1.clone(), drain2.clone(), halt.clone()]);
    transitions.extend([
        Transition::new(&drain1, Instruction::dec(CounterIndex::C1), &drain1),
        Transition::new(&drain1, Instruction::zero_test(CounterIndex::C1), &drain2),
        Transition::new(&drain2, Instruction::dec(CounterIndex::C2), &drain2),
        Transition::new(&drain2, Instruction::zero_test(CounterIndex::C2), &halt),
    ]);

    let out = MinskyMachine::new(states, start, halt, transitions);
    debug_assert!(out.validate().is_ok(), "{}", out.validate());
    Ok(out)
}
