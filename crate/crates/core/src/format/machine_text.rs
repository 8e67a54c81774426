//! Line-oriented machine files.
//!
//! ```text
//! # comment
//! states: s0 s1 s2 halt
//! init: s0
//! sink: halt
//! trans: s0 c1++ s1
//! ```

use crate::error::FormatError;
use crate::models::{Instruction, MinskyMachine, Transition};

fn check_id(line: usize, id: &str) -> Result<(), FormatError> {
    if id.contains(['[', ']']) || id.starts_with('⊤') {
        return Err(FormatError::parse(line, format!("state id {id:?} may not contain brackets or start with ⊤")));
    }
    Ok(())
}

pub fn parse_machine(text: &str) -> Result<MinskyMachine, FormatError> {
    let mut states: Option<Vec<String>> = None;
    let mut initial = None;
    let mut sink = None;
    let mut transitions = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (directive, rest) = content
            .split_once(':')
            .ok_or_else(|| FormatError::parse(line, "expected `directive: arguments`"))?;
        let args: Vec<&str> = rest.split_whitespace().collect();
        for a in &args {
            check_id(line, a)?;
        }
        match directive.trim() {
            "states" => {
                if states.is_some() {
                    return Err(FormatError::parse(line, "duplicate `states:`"));
                }
                if args.is_empty() {
                    return Err(FormatError::parse(line, "`states:` needs at least one id"));
                }
                let mut seen = std::collections::HashSet::new();
                for a in &args {
                    if !seen.insert(*a) {
                        return Err(FormatError::parse(line, format!("state {a} declared twice")));
                    }
                }
                states = Some(args.iter().map(|s| s.to_string()).collect());
            }
            "init" | "sink" => {
                let [id] = args.as_slice() else {
                    return Err(FormatError::parse(line, format!("`{}:` takes exactly one id", directive.trim())));
                };
                let slot = if directive.trim() == "init" { &mut initial } else { &mut sink };
                if slot.replace(id.to_string()).is_some() {
                    return Err(FormatError::parse(line, format!("duplicate `{}:`", directive.trim())));
                }
            }
            "trans" => {
                let [src, label, dst] = args.as_slice() else {
                    return Err(FormatError::parse(line, "`trans:` takes `source label target`"));
                };
                let instr = Instruction::parse_label(label)
                    .ok_or_else(|| FormatError::parse(line, format!("unknown label {label:?}")))?;
                transitions.push(Transition::new(*src, instr, *dst));
            }
            other => return Err(FormatError::parse(line, format!("unknown directive {other:?}"))),
        }
    }

    let last = text.lines().count().max(1);
    let states = states.ok_or_else(|| FormatError::parse(last, "missing `states:`"))?;
    let initial = initial.ok_or_else(|| FormatError::parse(last, "missing `init:`"))?;
    let sink = sink.ok_or_else(|| FormatError::parse(last, "missing `sink:`"))?;
    let m = MinskyMachine::new(states, initial, sink, transitions);
    let report = m.validate();
    if !report.is_ok() {
        return Err(FormatError::Validation(report));
    }
    Ok(m)
}

pub fn emit_machine(m: &MinskyMachine) -> String {
    let mut out = format!("states: {}\ninit: {}\nsink: {}\n", m.states.join(" "), m.initial, m.sink);
    for t in &m.transitions {
        out.push_str(&format!("trans: {} {} {}\n", t.source, t.instruction.label(), t.target));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::CounterIndex;

    const HEADER: &str = "states: s0 s1 s2\ninit: s0\nsink: s2\n";

    #[test]
    fn parses_transition_line() {
        let m = parse_machine(&format!("{HEADER}trans: s0 c1++ s1 # go\ntrans: s1 c2++ s2\n")).unwrap();
        assert_eq!(m.transitions[0], Transition::new("s0", Instruction::inc(CounterIndex::C1), "s1"));
        assert_eq!(parse_machine(&emit_machine(&m)).unwrap(), m);
    }

    #[test]
    fn unknown_counter_is_a_parse_error() {
        let err = parse_machine(&format!("{HEADER}trans: s1 c3++ s2\n")).unwrap_err();
        assert!(matches!(err, FormatError::Parse { line: 4, .. }), "{err:?}");
    }

    #[test]
    fn lone_decrement_fails_validation() {
        let err = parse_machine(&format!("{HEADER}trans: s0 c1++ s1\ntrans: s1 c1-- s2\n")).unwrap_err();
        assert!(matches!(err, FormatError::Validation(_)), "{err:?}");
    }

    #[test]
    fn rejects_unknown_directive_and_bad_ids() {
        assert!(matches!(parse_machine("stats: a\n"), Err(FormatError::Parse { line: 1, .. })));
        assert!(parse_machine("states: a[0] b\ninit: a[0]\nsink: b\n").is_err());
    }
}
