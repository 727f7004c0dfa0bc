//! The on-disk DFA format.
//!
//! ```json
//! {
//!   "alphabet": ["a", "b"],
//!   "states": 3,
//!   "initial": 0,
//!   "finals": [2],
//!   "delta": [
//!     [1, 1],
//!     [2, 0],
//!     [0, 2]
//!   ]
//! }
//! ```
//!
//! `delta[q][a]` is the target of state `q` under letter `a`. The loader
//! validates completeness and ranges; the writer always emits this exact
//! shape (fixed field order, sorted finals, one transition row per line), so
//! equal automata serialize to identical bytes.

use std::path::Path;

use serde::Deserialize;

use crate::dfa::Dfa;
use crate::error::{Error, Result};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DfaFile {
    alphabet: Vec<String>,
    states: usize,
    initial: usize,
    finals: Vec<usize>,
    delta: Vec<Vec<usize>>,
}

/// Parses and validates a DFA from its JSON form.
pub fn from_json(text: &str) -> Result<Dfa> {
    let file: DfaFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid DFA JSON: {e}")))?;
    if file.states != file.delta.len() {
        return Err(Error::InvalidDfa(format!(
            "\"states\" is {} but delta has {} rows",
            file.states,
            file.delta.len()
        )));
    }
    Dfa::new(file.alphabet, file.initial, file.finals, file.delta)
}

/// Serializes a DFA byte-stably.
pub fn to_json(d: &Dfa) -> String {
    let mut out = String::new();
    let quoted: Vec<String> = d
        .alphabet()
        .iter()
        .map(|name| serde_json::to_string(name).expect("string serialization"))
        .collect();
    out.push_str("{\n");
    out.push_str(&format!("  \"alphabet\": [{}],\n", quoted.join(", ")));
    out.push_str(&format!("  \"states\": {},\n", d.state_count()));
    out.push_str(&format!("  \"initial\": {},\n", d.initial()));
    let finals: Vec<String> = d.finals().iter().map(|q| q.to_string()).collect();
    out.push_str(&format!("  \"finals\": [{}],\n", finals.join(", ")));
    out.push_str("  \"delta\": [\n");
    for q in 0..d.state_count() {
        let row: Vec<String> = (0..d.alphabet_size())
            .map(|a| d.next(q, a).to_string())
            .collect();
        let sep = if q + 1 < d.state_count() { "," } else { "" };
        out.push_str(&format!("    [{}]{}\n", row.join(", "), sep));
    }
    out.push_str("  ]\n}\n");
    out
}

pub fn read_file(path: &Path) -> Result<Dfa> {
    let text = std::fs::read_to_string(path)?;
    from_json(&text)
}

pub fn write_file(d: &Dfa, path: &Path) -> Result<()> {
    std::fs::write(path, to_json(d))?;
    Ok(())
}
