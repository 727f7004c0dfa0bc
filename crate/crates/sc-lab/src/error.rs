use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid automaton: {0}")]
    InvalidDfa(String),
    #[error("state {state} out of range (automaton has {count} states)")]
    BadState { state: usize, count: usize },
    #[error("letter {letter} out of range (alphabet has {count} letters)")]
    BadLetter { letter: usize, count: usize },
    #[error("operands use different alphabets: [{left}] vs [{right}]")]
    AlphabetMismatch { left: String, right: String },
    #[error("word does not induce a permutation")]
    NotPermutation,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid role assignment: {0}")]
    BadRoles(String),
    #[error("witness parameters must be at least 3, got ({m},{n},{p})")]
    BadWitnessSize { m: usize, n: usize, p: usize },
    #[error("invalid bound query: {0}")]
    BadQuery(String),
    #[error("final-state count {k} exceeds state count {m}")]
    BadFinalCount { k: u64, m: u64 },
    #[error("construction exceeds the cap of {cap} states; raise --max-states to allow it")]
    StateCap { cap: usize },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
