//! CCS front end: parser, component-set semantics and state-space exploration.

mod ast;
mod explore;
mod parser;
mod sos;

use thiserror::Error;

pub use ast::{CcsAction, Definitions, Proc, Process, MAIN};
pub use explore::{explore_ccs, CcsLtsc};
pub use parser::{parse_ccs, parse_process, CcsSpec};
pub use sos::{sos_step, CcsStep};

pub const DEFAULT_MAX_STATES: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CcsError {
    #[error("syntax error at {line}:{col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("unguarded choice at {line}:{col}: every summand of '+' must start with an action")]
    UnguardedChoice { line: usize, col: usize },
    #[error("undefined identifier {0}")]
    UndefinedIdentifier(String),
    #[error("unguarded recursion through {0}")]
    UnguardedRecursion(String),
    #[error("identifier {0} defined twice")]
    DuplicateDefinition(String),
    #[error("no process to check: define `main` or name one")]
    NoMain,
    #[error("state space exceeds {0} states")]
    StateSpaceExceeded(usize),
}
