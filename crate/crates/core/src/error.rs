use std::path::PathBuf;

use thiserror::Error;

/// Errors produced while reading DIMACS input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: missing `p cnf` header before clause data")]
    MissingHeader { line: usize },
    #[error("line {line}: duplicate `p cnf` header")]
    DuplicateHeader { line: usize },
    #[error("line {line}: malformed header `{text}`")]
    BadHeader { line: usize, text: String },
    #[error("line {line}: invalid token `{token}`")]
    BadToken { line: usize, token: String },
    #[error("line {line}: variable {var} out of range 1..={num_vars}")]
    VarOutOfRange { line: usize, var: u64, num_vars: usize },
    #[error("line {line}: empty clause, formula is trivially unsatisfiable")]
    EmptyClause { line: usize },
    #[error("line {line}: tautological clause contains both {var} and -{var}")]
    Tautology { line: usize, var: u32 },
    #[error("header declares {declared} clauses but {found} were parsed")]
    ClauseCountMismatch { declared: usize, found: usize },
    #[error("last clause is not terminated by 0")]
    UnterminatedClause,
}

/// Errors produced by formula construction, search and benchmarking.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("variable {var} out of range 1..={num_vars}")]
    VarOutOfRange { var: u32, num_vars: usize },
    #[error("clause {clause} is tautological on variable {var}")]
    Tautology { clause: usize, var: u32 },
    #[error("clause width {k} exceeds variable count {n}")]
    WidthExceedsVars { k: usize, n: usize },
    #[error("invalid generator parameters: {0}")]
    BadGeneratorParams(String),
    #[error("assignment covers {got} variables, formula has {expected}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("clause {0} is satisfied; picking requires an unsatisfied clause")]
    ClauseSatisfied(usize),
    #[error("clause {0} is empty")]
    EmptyClause(usize),
    #[error("no unsatisfied clause to pick from")]
    NoUnsatClause,
    #[error("noise {0} outside [0, 1]")]
    BadNoise(f64),
    #[error("invalid configuration: {0}")]
    BadConfig(String),
    #[error("unknown strategy `{0}` (expected separated, noncaching or caching)")]
    UnknownStrategy(String),
    #[error("cannot summarize an empty record set")]
    NoRecords,
    #[error("{}: {source}", path.display())]
    Instance {
        path: PathBuf,
        #[source]
        source: Box<Error>,
    },
    #[error("malformed model: {0}")]
    BadModel(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
