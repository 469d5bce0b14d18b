//! CNF formulas: literals, the clause store, occurrence lists, DIMACS I/O and
//! the uniform random k-SAT generator.

use std::fmt::{self, Write as _};
use std::path::Path;

use crate::error::{Error, ParseError, Result};
use crate::rng::SolverRng;

/// A 1-based propositional variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(u32);

impl Var {
    /// Panics on 0; variables are numbered from 1 as in DIMACS.
    pub fn new(index: u32) -> Var {
        assert!(index > 0, "variables are 1-based");
        Var(index)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// A variable with a polarity, packed as `2 * var + negative`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit(u32);

impl Lit {
    #[inline]
    pub fn new(var: Var, positive: bool) -> Lit {
        Lit(var.0 << 1 | (!positive) as u32)
    }

    pub fn positive(var: u32) -> Lit {
        Lit::new(Var::new(var), true)
    }

    pub fn negative(var: u32) -> Lit {
        Lit::new(Var::new(var), false)
    }

    /// `None` for 0 or magnitudes beyond `u32` range.
    pub fn from_dimacs(value: i64) -> Option<Lit> {
        let magnitude = u32::try_from(value.unsigned_abs()).ok()?;
        if magnitude == 0 || magnitude > u32::MAX >> 1 {
            return None;
        }
        Some(Lit::new(Var(magnitude), value > 0))
    }

    pub fn to_dimacs(self) -> i64 {
        let v = self.var().0 as i64;
        if self.is_positive() {
            v
        } else {
            -v
        }
    }

    #[inline]
    pub fn var(self) -> Var {
        Var(self.0 >> 1)
    }

    #[inline]
    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    #[inline]
    pub fn negate(self) -> Lit {
        Lit(self.0 ^ 1)
    }

    /// Dense index usable for per-literal tables.
    #[inline]
    pub fn code(self) -> usize {
        self.0 as usize
    }

    /// Whether the literal is true when its variable has `value`.
    #[inline]
    pub fn is_true_under(self, value: bool) -> bool {
        value == self.is_positive()
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// Immutable CNF formula.
///
/// Clause literals live in one flat array indexed through `clause_start`.
/// Occurrence lists are stored the same way, one list per literal code, each
/// holding the ascending indices of the clauses that contain the literal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Formula {
    num_vars: usize,
    lits: Vec<Lit>,
    clause_start: Vec<u32>,
    occ: Vec<u32>,
    occ_start: Vec<u32>,
}

impl Formula {
    /// Builds a formula from raw clauses. Duplicate literals inside a clause
    /// are dropped (first occurrence kept); clauses containing both polarities
    /// of a variable are rejected. Empty clauses are accepted here.
    pub fn new<C: AsRef<[Lit]>>(num_vars: usize, clauses: &[C]) -> Result<Formula> {
        let mut lits = Vec::with_capacity(clauses.iter().map(|c| c.as_ref().len()).sum());
        let mut clause_start = Vec::with_capacity(clauses.len() + 1);
        clause_start.push(0u32);
        for (ci, clause) in clauses.iter().enumerate() {
            let begin = lits.len();
            for &lit in clause.as_ref() {
                let var = lit.var();
                if var.index() > num_vars {
                    return Err(Error::VarOutOfRange { var: var.get(), num_vars });
                }
                let existing = &lits[begin..];
                if existing.contains(&lit) {
                    continue;
                }
                if existing.contains(&lit.negate()) {
                    return Err(Error::Tautology { clause: ci, var: var.get() });
                }
                lits.push(lit);
            }
            clause_start.push(lits.len() as u32);
        }
        Ok(Formula::from_parts(num_vars, lits, clause_start))
    }

    fn from_parts(num_vars: usize, lits: Vec<Lit>, clause_start: Vec<u32>) -> Formula {
        let num_codes = 2 * (num_vars + 1);
        let mut counts = vec![0u32; num_codes + 1];
        for lit in &lits {
            counts[lit.code() + 1] += 1;
        }
        for i in 1..counts.len() {
            counts[i] += counts[i - 1];
        }
        let occ_start = counts;
        let mut fill = occ_start.clone();
        let mut occ = vec![0u32; lits.len()];
        for c in 0..clause_start.len() - 1 {
            let (b, e) = (clause_start[c] as usize, clause_start[c + 1] as usize);
            for lit in &lits[b..e] {
                let slot = &mut fill[lit.code()];
                occ[*slot as usize] = c as u32;
                *slot += 1;
            }
        }
        Formula { num_vars, lits, clause_start, occ, occ_start }
    }

    #[inline]
    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    #[inline]
    pub fn num_clauses(&self) -> usize {
        self.clause_start.len() - 1
    }

    /// Total number of literal slots across all clauses.
    pub fn num_literals(&self) -> usize {
        self.lits.len()
    }

    /// Clauses per variable; 0 for a formula without variables.
    pub fn ratio(&self) -> f64 {
        if self.num_vars == 0 {
            0.0
        } else {
            self.num_clauses() as f64 / self.num_vars as f64
        }
    }

    #[inline]
    pub fn clause(&self, c: usize) -> &[Lit] {
        &self.lits[self.clause_start[c] as usize..self.clause_start[c + 1] as usize]
    }

    pub fn clauses(&self) -> impl ExactSizeIterator<Item = &[Lit]> + '_ {
        (0..self.num_clauses()).map(move |c| self.clause(c))
    }

    /// Ascending indices of clauses containing `lit`.
    #[inline]
    pub fn occurrences(&self, lit: Lit) -> &[u32] {
        let code = lit.code();
        &self.occ[self.occ_start[code] as usize..self.occ_start[code + 1] as usize]
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> {
        (1..=self.num_vars as u32).map(Var)
    }

    pub fn max_clause_len(&self) -> usize {
        self.clauses().map(<[Lit]>::len).max().unwrap_or(0)
    }

    pub fn first_empty_clause(&self) -> Option<usize> {
        self.clauses().position(<[Lit]>::is_empty)
    }
}

/// Parses DIMACS CNF text.
///
/// Accepts `c` comment lines anywhere, a single `p cnf <vars> <clauses>`
/// header, and clauses terminated by `0` that may span lines. A line starting
/// with `%` ends the input (SATLIB-style trailer).
pub fn parse_dimacs(text: &str) -> Result<Formula, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut lits: Vec<Lit> = Vec::new();
    let mut clause_start: Vec<u32> = vec![0];
    let mut clause_begin = 0usize;

    for (lineno, line) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('%') {
            break;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(ParseError::DuplicateHeader { line: line_no });
            }
            header = Some(parse_header(trimmed, line_no)?);
            let (_, m) = header.unwrap();
            clause_start.reserve(m);
            continue;
        }
        let Some((num_vars, _)) = header else {
            return Err(ParseError::MissingHeader { line: line_no });
        };
        for token in trimmed.split_whitespace() {
            let value: i64 =
                token.parse().map_err(|_| ParseError::BadToken { line: line_no, token: token.to_owned() })?;
            if value == 0 {
                if lits.len() == clause_begin {
                    return Err(ParseError::EmptyClause { line: line_no });
                }
                clause_start.push(lits.len() as u32);
                clause_begin = lits.len();
                continue;
            }
            let var = value.unsigned_abs();
            if var > num_vars as u64 {
                return Err(ParseError::VarOutOfRange { line: line_no, var, num_vars });
            }
            let lit = Lit::from_dimacs(value)
                .ok_or_else(|| ParseError::BadToken { line: line_no, token: token.to_owned() })?;
            let open = &lits[clause_begin..];
            if open.contains(&lit) {
                continue;
            }
            if open.contains(&lit.negate()) {
                return Err(ParseError::Tautology { line: line_no, var: lit.var().get() });
            }
            lits.push(lit);
        }
    }

    let Some((num_vars, declared)) = header else {
        return Err(ParseError::MissingHeader { line: text.lines().count() + 1 });
    };
    if lits.len() != clause_begin {
        return Err(ParseError::UnterminatedClause);
    }
    let found = clause_start.len() - 1;
    if found != declared {
        return Err(ParseError::ClauseCountMismatch { declared, found });
    }
    Ok(Formula::from_parts(num_vars, lits, clause_start))
}

fn parse_header(line: &str, line_no: usize) -> Result<(usize, usize), ParseError> {
    let bad = || ParseError::BadHeader { line: line_no, text: line.to_owned() };
    let mut parts = line.split_whitespace();
    if parts.next() != Some("p") || parts.next() != Some("cnf") {
        return Err(bad());
    }
    let n = parts.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
    let m = parts.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
    if parts.next().is_some() {
        return Err(bad());
    }
    Ok((n, m))
}

pub fn read_dimacs_file(path: &Path) -> Result<Formula> {
    let text = std::fs::read_to_string(path)?;
    parse_dimacs(&text).map_err(|e| Error::Instance { path: path.to_owned(), source: Box::new(e.into()) })
}

/// Canonical DIMACS text: header line, then one clause per line.
pub fn emit_dimacs(f: &Formula) -> String {
    let mut out = String::with_capacity(16 + f.num_literals() * 7 + f.num_clauses() * 2);
    writeln!(out, "p cnf {} {}", f.num_vars(), f.num_clauses()).unwrap();
    for clause in f.clauses() {
        for lit in clause {
            write!(out, "{lit} ").unwrap();
        }
        out.push_str("0\n");
    }
    out
}

/// Clause count for a target clause/variable ratio: `round(ratio * n)`.
pub fn clauses_for_ratio(n: usize, ratio: f64) -> usize {
    (ratio * n as f64).round() as usize
}

/// Uniform random k-SAT.
///
/// For each clause, variables are drawn with `uniform_below(n) + 1`,
/// rejecting repeats, and each accepted variable is immediately followed by a
/// fair coin for its polarity (heads = positive). The generator stream is
/// `SolverRng::new(seed)`.
pub fn generate_uniform_ksat(n: usize, k: usize, m: usize, seed: u64) -> Result<Formula> {
    if k == 0 || m == 0 {
        return Err(Error::BadGeneratorParams(format!("need k >= 1 and m >= 1, got k={k} m={m}")));
    }
    if k > n {
        return Err(Error::WidthExceedsVars { k, n });
    }
    if n > (u32::MAX >> 1) as usize {
        return Err(Error::BadGeneratorParams(format!("too many variables: {n}")));
    }
    let mut rng = SolverRng::new(seed);
    let mut lits = Vec::with_capacity(k * m);
    let mut clause_start = Vec::with_capacity(m + 1);
    clause_start.push(0u32);
    for _ in 0..m {
        let begin = lits.len();
        while lits.len() - begin < k {
            let var = Var(rng.uniform_below(n) as u32 + 1);
            if lits[begin..].iter().any(|l: &Lit| l.var() == var) {
                continue;
            }
            lits.push(Lit::new(var, rng.coin()));
        }
        clause_start.push(lits.len() as u32);
    }
    Ok(Formula::from_parts(n, lits, clause_start))
}
