//! Small machines used by tests, benchmarks and the acceptance suite.

use crate::format::parse_machine;
use crate::models::MinskyMachine;

/// `(name, source)` pairs; every entry parses and validates.
pub const MACHINES: &[(&str, &str)] = &[
    (
        "zero-at-2",
        "states: s0 s1 s2 halt
init: s0
sink: halt
trans: s0 c1++ s1
trans: s1 c1-- s2
trans: s1 c1==0 halt
trans: s2 c2++ s0
",
    ),
    (
        "incrementer",
        "states: a b halt
init: a
sink: halt
trans: a c1++ b
trans: b c1++ a
",
    ),
    (
        "zero-at-4",
        "states: s0 s1 s2 s3 halt
init: s0
sink: halt
trans: s0 c1++ s1
trans: s1 c1++ s2
trans: s2 c1-- s3
trans: s2 c1==0 halt
trans: s3 c1-- s0
trans: s3 c1==0 halt
",
    ),
    (
        "c2-bounce",
        "states: s0 s1 halt
init: s0
sink: halt
trans: s0 c2++ s1
trans: s1 c2-- s0
trans: s1 c2==0 halt
",
    ),
    (
        "zero-at-8",
        "states: s0 s1 s2 s3 s4 s5 s6 s7 halt
init: s0
sink: halt
trans: s0 c1++ s1
trans: s1 c2++ s2
trans: s2 c1-- s3
trans: s2 c1==0 halt
trans: s3 c1++ s4
trans: s4 c1++ s5
trans: s5 c1-- s6
trans: s5 c1==0 halt
trans: s6 c1-- s7
trans: s6 c1==0 halt
trans: s7 c2-- s0
trans: s7 c2==0 halt
",
    ),
    (
        "transfer",
        "states: s0 s1 s2 s3 s4 halt
init: s0
sink: halt
trans: s0 c1++ s1
trans: s1 c1++ s2
trans: s2 c1-- s3
trans: s2 c1==0 s4
trans: s3 c2++ s2
trans: s4 c2-- s4
trans: s4 c2==0 halt
",
    ),
    (
        "halts-at-2",
        "states: s0 s1 s2 halt
init: s0
sink: halt
trans: s0 c1++ s1
trans: s1 c2-- s2
trans: s1 c2==0 halt
trans: s2 c1++ s1
",
    ),
    (
        "one-step",
        "states: s0 halt
init: s0
sink: halt
trans: s0 c1++ halt
",
    ),
    (
        "branching-loop",
        "states: s0 s1 s2 s3 s4 halt
init: s0
sink: halt
trans: s0 c1++ s1
trans: s1 c2-- s2
trans: s1 c2==0 s3
trans: s2 c1++ s1
trans: s3 c2++ s4
trans: s4 c1++ s1
",
    ),
    (
        "doubler",
        "states: s0 s1 s2 s3 s4 s5 s6 s7 s8 s9 s10 halt
init: s0
sink: halt
trans: s0 c1++ s1
trans: s1 c1++ s2
trans: s2 c1++ s3
trans: s3 c1-- s4
trans: s3 c1==0 s6
trans: s4 c2++ s5
trans: s5 c2++ s3
trans: s6 c2-- s7
trans: s6 c2==0 s8
trans: s7 c1++ s6
trans: s8 c1-- s9
trans: s8 c1==0 halt
trans: s9 c1-- s10
trans: s9 c1==0 halt
trans: s10 c2++ s8
",
    ),
];

pub fn machine(name: &str) -> Option<MinskyMachine> {
    MACHINES.iter().find(|(n, _)| *n == name).map(|(_, src)| parse_machine(src).expect("corpus machines are valid"))
}

pub fn all() -> Vec<(&'static str, MinskyMachine)> {
    MACHINES.iter().map(|(n, src)| (*n, parse_machine(src).expect("corpus machines are valid"))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::RunOutcome;

    #[test]
    fn corpus_outcomes() {
        let outcome = |n: &str| machine(n).unwrap().run(500).unwrap().outcome;
        assert_eq!(outcome("zero-at-2"), RunOutcome::ZeroZeroAt(2));
        assert_eq!(outcome("zero-at-4"), RunOutcome::ZeroZeroAt(4));
        assert_eq!(outcome("zero-at-8"), RunOutcome::ZeroZeroAt(8));
        assert_eq!(outcome("c2-bounce"), RunOutcome::ZeroZeroAt(2));
        assert_eq!(outcome("transfer"), RunOutcome::ZeroZeroAt(9));
        assert_eq!(outcome("halts-at-2"), RunOutcome::SinkAt(2));
        assert_eq!(outcome("one-step"), RunOutcome::SinkAt(1));
        assert_eq!(outcome("incrementer"), RunOutcome::Exhausted);
        assert_eq!(outcome("branching-loop"), RunOutcome::Exhausted);
        for (_, m) in all() {
            assert!((2..=12).contains(&m.states.len()));
        }
    }
}
