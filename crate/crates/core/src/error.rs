//! Error and witness types shared across the crate.

use std::fmt;

use thiserror::Error;

use crate::netlist::Violation;

/// Maximum supported width, in bits, for words, tables and domains.
///
/// Every check in this crate enumerates all 2^n input values, so widths
/// above this bound are rejected at construction time.
pub const MAX_WIDTH: u32 = 20;

/// Witness that two inputs map to the same output word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Collision {
    pub input_a: u32,
    pub input_b: u32,
    pub output: u32,
}

impl fmt::Display for Collision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "inputs {} and {} both map to output {}",
            self.input_a, self.input_b, self.output
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("width {width} outside supported range 0..={MAX_WIDTH}")]
    WidthOutOfRange { width: u32 },

    #[error("value {value} does not fit in {width} bit(s)")]
    ValueTooWide { value: u32, width: u32 },

    #[error("width mismatch: expected {expected}, got {actual}")]
    WidthMismatch { expected: u32, actual: u32 },

    #[error("input width {in_width} differs from output width {out_width}")]
    NotSquare { in_width: u32, out_width: u32 },

    #[error("expected {expected} rows, got {actual}")]
    RowCount { expected: usize, actual: usize },

    #[error("invalid bit character {0:?} (expected '0' or '1')")]
    BadBit(char),

    #[error("domain has no members")]
    EmptyDomain,

    #[error("not bijective: {witness}")]
    NotBijective { witness: Collision },

    #[error("not injective on domain: {}", first_collision(.collisions))]
    NotInjective { collisions: Vec<Collision> },

    #[error("input {input} assigned more than once")]
    DuplicateAssignment { input: u32 },

    #[error("unknown gate '{0}'")]
    UnknownGate(String),

    #[error("gate '{0}' is already registered")]
    DuplicateGate(String),

    #[error("wire '{0}' already exists")]
    DuplicateWire(String),

    #[error("gate {gate}: expected {expected} {role} pin(s), got {actual}")]
    PinCount {
        gate: String,
        role: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("unit delay {delay} exceeds gate count {gates}")]
    DelayExceedsGates { delay: usize, gates: usize },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid netlist: {}", violation_list(.0))]
    InvalidNetlist(Vec<Violation>),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn first_collision(collisions: &[Collision]) -> String {
    match collisions.first() {
        Some(c) => format!("{} colliding pair(s), first: {c}", collisions.len()),
        None => "no collisions recorded".to_string(),
    }
}

fn violation_list(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
