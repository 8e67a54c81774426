//! Deterministic two-counter Minsky machines and their unique run.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::ModelError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CounterIndex {
    C1,
    C2,
}

impl CounterIndex {
    pub const ALL: [CounterIndex; 2] = [CounterIndex::C1, CounterIndex::C2];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InstrKind {
    Inc,
    Dec,
    ZeroTest,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Instruction {
    pub kind: InstrKind,
    pub counter: CounterIndex,
}

impl Instruction {
    pub const fn new(kind: InstrKind, counter: CounterIndex) -> Self {
        Instruction { kind, counter }
    }
    pub const fn inc(counter: CounterIndex) -> Self {
        Instruction::new(InstrKind::Inc, counter)
    }
    pub const fn dec(counter: CounterIndex) -> Self {
        Instruction::new(InstrKind::Dec, counter)
    }
    pub const fn zero_test(counter: CounterIndex) -> Self {
        Instruction::new(InstrKind::ZeroTest, counter)
    }

    /// Text label as used in machine files, e.g. `c1++`.
    pub fn label(&self) -> String {
        let c = match self.counter {
            CounterIndex::C1 => "c1",
            CounterIndex::C2 => "c2",
        };
        let op = match self.kind {
            InstrKind::Inc => "++",
            InstrKind::Dec => "--",
            InstrKind::ZeroTest => "==0",
        };
        format!("{c}{op}")
    }

    pub fn parse_label(label: &str) -> Option<Instruction> {
        let (counter, rest) = match label.get(..2)? {
            "c1" => (CounterIndex::C1, &label[2..]),
            "c2" => (CounterIndex::C2, &label[2..]),
            _ => return None,
        };
        let kind = match rest {
            "++" => InstrKind::Inc,
            "--" => InstrKind::Dec,
            "==0" => InstrKind::ZeroTest,
            _ => return None,
        };
        Some(Instruction { kind, counter })
    }
}

impl fmt::Display for Instruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Transition {
    pub source: String,
    pub instruction: Instruction,
    pub target: String,
}

impl Transition {
    pub fn new(source: impl Into<String>, instruction: Instruction, target: impl Into<String>) -> Self {
        Transition { source: source.into(), instruction, target: target.into() }
    }
}

/// A machine as declared. Construction does not validate; see [`MinskyMachine::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinskyMachine {
    /// Declaration order matters: it fixes the state numbering of the stateless game.
    pub states: Vec<String>,
    pub initial: String,
    pub sink: String,
    pub transitions: Vec<Transition>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub state: String,
    pub reason: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.state, self.reason)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return f.write_str("ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MachineConfig {
    pub state: String,
    pub c1: BigUint,
    pub c2: BigUint,
}

impl MachineConfig {
    pub fn new(state: impl Into<String>, c1: u64, c2: u64) -> Self {
        MachineConfig { state: state.into(), c1: c1.into(), c2: c2.into() }
    }

    pub fn counter(&self, c: CounterIndex) -> &BigUint {
        match c {
            CounterIndex::C1 => &self.c1,
            CounterIndex::C2 => &self.c2,
        }
    }

    fn counter_mut(&mut self, c: CounterIndex) -> &mut BigUint {
        match c {
            CounterIndex::C1 => &mut self.c1,
            CounterIndex::C2 => &mut self.c2,
        }
    }

    pub fn both_zero(&self) -> bool {
        self.c1.is_zero() && self.c2.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepResult {
    Next { config: MachineConfig, transition: usize },
    AtSink,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RunOutcome {
    ZeroZeroAt(usize),
    SinkAt(usize),
    Exhausted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Run {
    pub outcome: RunOutcome,
    /// Configurations at steps 0..=k, where k is the last step executed.
    pub trace: Vec<MachineConfig>,
}

impl MinskyMachine {
    pub fn new(
        states: Vec<String>,
        initial: impl Into<String>,
        sink: impl Into<String>,
        transitions: Vec<Transition>,
    ) -> Self {
        MinskyMachine { states, initial: initial.into(), sink: sink.into(), transitions }
    }

    pub fn outgoing<'a>(&'a self, state: &'a str) -> impl Iterator<Item = (usize, &'a Transition)> + 'a {
        self.transitions.iter().enumerate().filter(move |(_, t)| t.source == state)
    }

    pub fn state_index(&self, state: &str) -> Option<usize> {
        self.states.iter().position(|s| s == state)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let mut push = |state: &str, reason: String| {
            violations.push(Violation { state: state.to_string(), reason })
        };

        let mut seen: HashMap<&str, usize> = HashMap::new();
        for s in &self.states {
            if seen.insert(s.as_str(), 0).is_some() {
                push(s, "declared more than once".into());
            }
        }
        if !seen.contains_key(self.initial.as_str()) {
            push(&self.initial, "initial state is not declared".into());
        }
        if !seen.contains_key(self.sink.as_str()) {
            push(&self.sink, "sink state is not declared".into());
        }
        for t in &self.transitions {
            for end in [&t.source, &t.target] {
                if !seen.contains_key(end.as_str()) {
                    push(end, format!("undeclared state in transition {} {} {}", t.source, t.instruction, t.target));
                }
            }
        }

        for s in &self.states {
            let out: Vec<&Transition> = self.outgoing(s).map(|(_, t)| t).collect();
            if *s == self.sink {
                if !out.is_empty() {
                    push(s, "sink has outgoing transitions".into());
                }
                continue;
            }
            let ok = match out.as_slice() {
                [t] => t.instruction.kind == InstrKind::Inc,
                [a, b] => {
                    let (d, z) = if a.instruction.kind == InstrKind::Dec { (a, b) } else { (b, a) };
                    d.instruction.kind == InstrKind::Dec
                        && z.instruction.kind == InstrKind::ZeroTest
                        && d.instruction.counter == z.instruction.counter
                }
                _ => false,
            };
            if !ok {
                let labels: Vec<String> = out.iter().map(|t| t.instruction.label()).collect();
                push(
                    s,
                    format!(
                        "needs one increment or a decrement/zero-test pair on one counter, found [{}]",
                        labels.join(", ")
                    ),
                );
            }
        }
        ValidationReport { violations }
    }

    pub fn ensure_valid(&self) -> Result<(), ModelError> {
        let report = self.validate();
        if report.is_ok() {
            Ok(())
        } else {
            Err(ModelError::InvalidMachine(report))
        }
    }

    pub fn initial_config(&self) -> MachineConfig {
        MachineConfig::new(self.initial.clone(), 0, 0)
    }

    /// Applies the unique enabled transition.
    pub fn step(&self, cfg: &MachineConfig) -> Result<StepResult, ModelError> {
        if cfg.state == self.sink {
            return Ok(StepResult::AtSink);
        }
        for (idx, t) in self.outgoing(&cfg.state) {
            let c = t.instruction.counter;
            let enabled = match t.instruction.kind {
                InstrKind::Inc => true,
                InstrKind::Dec => !cfg.counter(c).is_zero(),
                InstrKind::ZeroTest => cfg.counter(c).is_zero(),
            };
            if !enabled {
                continue;
            }
            let mut next = cfg.clone();
            next.state = t.target.clone();
            match t.instruction.kind {
                InstrKind::Inc => *next.counter_mut(c) += BigUint::one(),
                InstrKind::Dec => *next.counter_mut(c) -= BigUint::one(),
                InstrKind::ZeroTest => {}
            }
            return Ok(StepResult::Next { config: next, transition: idx });
        }
        Err(ModelError::IllegalConfig(format!(
            "no enabled transition from {} with counters ({}, {})",
            cfg.state, cfg.c1, cfg.c2
        )))
    }

    /// Runs from `(initial, (0,0))` for at most `max_steps` steps. Step 0 is
    /// never reported as a zero-zero hit.
    pub fn run(&self, max_steps: usize) -> Result<Run, ModelError> {
        self.ensure_valid()?;
        let mut trace = vec![self.initial_config()];
        for k in 1..=max_steps {
            let cur = trace.last().expect("trace is never empty");
            match self.step(cur)? {
                StepResult::AtSink => {
                    return Ok(Run { outcome: RunOutcome::SinkAt(k - 1), trace });
                }
                StepResult::Next { config, .. } => {
                    let hit = config.both_zero();
                    trace.push(config);
                    if hit {
                        return Ok(Run { outcome: RunOutcome::ZeroZeroAt(k), trace });
                    }
                }
            }
        }
        // the last configuration may itself be the sink
        if trace.last().map(|c| c.state == self.sink).unwrap_or(false) {
            return Ok(Run { outcome: RunOutcome::SinkAt(trace.len() - 1), trace });
        }
        Ok(Run { outcome: RunOutcome::Exhausted, trace })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use CounterIndex::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    pub(crate) fn zero_zero_at_two() -> MinskyMachine {
        MinskyMachine::new(
            names(&["s0", "s1", "s2", "halt"]),
            "s0",
            "halt",
            vec![
                Transition::new("s0", Instruction::inc(C1), "s1"),
                Transition::new("s1", Instruction::dec(C1), "s2"),
                Transition::new("s1", Instruction::zero_test(C1), "halt"),
                Transition::new("s2", Instruction::inc(C2), "s0"),
            ],
        )
    }

    #[test]
    fn valid_machine_passes() {
        assert!(zero_zero_at_two().validate().is_ok());
    }

    #[test]
    fn double_increment_is_a_violation() {
        let mut m = zero_zero_at_two();
        m.transitions.retain(|t| t.source != "s1");
        m.transitions.push(Transition::new("s1", Instruction::inc(C1), "s2"));
        m.transitions.push(Transition::new("s1", Instruction::inc(C1), "s0"));
        let r = m.validate();
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].state, "s1");
    }

    #[test]
    fn sink_with_outgoing_transition_is_a_violation() {
        let mut m = zero_zero_at_two();
        m.transitions.push(Transition::new("halt", Instruction::inc(C1), "s0"));
        let r = m.validate();
        assert!(r.violations.iter().any(|v| v.state == "halt"));
    }

    #[test]
    fn mismatched_pair_counters_rejected() {
        let mut m = zero_zero_at_two();
        m.transitions.retain(|t| t.source != "s1");
        m.transitions.push(Transition::new("s1", Instruction::dec(C1), "s2"));
        m.transitions.push(Transition::new("s1", Instruction::zero_test(C2), "halt"));
        assert!(!m.validate().is_ok());
    }

    #[test]
    fn step_examples() {
        let m = zero_zero_at_two();
        let r = m.step(&MachineConfig::new("s0", 0, 0)).unwrap();
        assert!(matches!(r, StepResult::Next { ref config, .. } if *config == MachineConfig::new("s1", 1, 0)));
        let r = m.step(&MachineConfig::new("s1", 1, 0)).unwrap();
        assert!(matches!(r, StepResult::Next { ref config, .. } if *config == MachineConfig::new("s2", 0, 0)));
        let r = m.step(&MachineConfig::new("s1", 0, 5)).unwrap();
        assert!(matches!(r, StepResult::Next { ref config, .. } if *config == MachineConfig::new("halt", 0, 5)));
        assert_eq!(m.step(&MachineConfig::new("halt", 3, 3)).unwrap(), StepResult::AtSink);
    }

    #[test]
    fn run_hits_zero_zero_at_step_two() {
        let run = zero_zero_at_two().run(100).unwrap();
        assert_eq!(run.outcome, RunOutcome::ZeroZeroAt(2));
        assert_eq!(run.trace.len(), 3);
    }

    #[test]
    fn incrementer_exhausts() {
        let m = MinskyMachine::new(
            names(&["s0", "s1", "halt"]),
            "s0",
            "halt",
            vec![
                Transition::new("s0", Instruction::inc(C1), "s1"),
                Transition::new("s1", Instruction::inc(C1), "s0"),
            ],
        );
        for bound in [0, 1, 7, 50] {
            let run = m.run(bound).unwrap();
            assert_eq!(run.outcome, RunOutcome::Exhausted);
            assert_eq!(run.trace.len(), bound + 1);
        }
    }

    #[test]
    fn run_reports_sink() {
        let m = MinskyMachine::new(
            names(&["s0", "halt"]),
            "s0",
            "halt",
            vec![Transition::new("s0", Instruction::inc(C2), "halt")],
        );
        assert_eq!(m.run(10).unwrap().outcome, RunOutcome::SinkAt(1));
    }

    #[test]
    fn run_rejects_invalid() {
        let mut m = zero_zero_at_two();
        m.transitions.pop();
        assert!(matches!(m.run(3), Err(ModelError::InvalidMachine(_))));
    }
}
