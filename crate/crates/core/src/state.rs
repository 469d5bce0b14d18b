//! Mutable search state: the assignment, per-clause true-literal counts and
//! the set of unsatisfied clauses.
//!
//! Flipping a variable touches only the clauses in its two occurrence lists.
//! No break or make values are kept here; pickers derive them on demand from
//! the true-literal counts, or maintain them through a [`FlipObserver`].

use crate::cnf::{Formula, Lit, Var};
use crate::error::{Error, Result};
use crate::rng::SolverRng;

/// A complete truth assignment for variables `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment {
    // slot 0 is padding so that a variable's index is its slot
    values: Vec<bool>,
}

impl Assignment {
    /// Values for `x1, x2, ...` in order.
    pub fn from_values(values: impl IntoIterator<Item = bool>) -> Assignment {
        let mut v = vec![false];
        v.extend(values);
        Assignment { values: v }
    }

    pub fn all(num_vars: usize, value: bool) -> Assignment {
        Assignment { values: vec![value; num_vars + 1] }
    }

    /// Builds from DIMACS literals: `v` true for `v`, false for `-v`.
    /// Variables not mentioned are `None` in the returned vector's slot.
    pub fn from_dimacs_lits(num_vars: usize, lits: &[i64]) -> Result<Assignment> {
        let mut slots: Vec<Option<bool>> = vec![None; num_vars + 1];
        for &l in lits {
            let v = l.unsigned_abs() as usize;
            if l == 0 || v > num_vars {
                return Err(Error::BadModel(format!("literal {l} outside 1..={num_vars}")));
            }
            let value = l > 0;
            match slots[v] {
                Some(prev) if prev != value => {
                    return Err(Error::BadModel(format!("variable {v} assigned both polarities")))
                }
                _ => slots[v] = Some(value),
            }
        }
        let missing = slots[1..].iter().filter(|s| s.is_none()).count();
        if missing > 0 {
            return Err(Error::ArityMismatch { expected: num_vars, got: num_vars - missing });
        }
        Ok(Assignment::from_values(slots[1..].iter().map(|s| s.unwrap())))
    }

    #[inline]
    pub fn num_vars(&self) -> usize {
        self.values.len() - 1
    }

    #[inline]
    pub fn get(&self, var: Var) -> bool {
        self.values[var.index()]
    }

    pub fn set(&mut self, var: Var, value: bool) {
        self.values[var.index()] = value;
    }

    #[inline]
    pub fn flip(&mut self, var: Var) {
        let slot = &mut self.values[var.index()];
        *slot = !*slot;
    }

    #[inline]
    pub fn is_true(&self, lit: Lit) -> bool {
        lit.is_true_under(self.values[lit.var().index()])
    }

    /// Values of `x1..=xn`.
    pub fn values(&self) -> &[bool] {
        &self.values[1..]
    }

    /// The assignment as signed DIMACS literals, one per variable.
    pub fn to_dimacs(&self) -> Vec<i64> {
        self.values()
            .iter()
            .enumerate()
            .map(|(i, &b)| if b { i as i64 + 1 } else { -(i as i64 + 1) })
            .collect()
    }
}

/// Callbacks invoked for every clause whose true-literal count changes during
/// a flip. The assignment passed in already has the variable flipped.
pub trait FlipObserver {
    /// `clause` gained `var`'s literal as a true literal; its count is now `nt`.
    #[inline]
    fn on_gain(&mut self, _f: &Formula, _a: &Assignment, _clause: usize, _nt: u32, _var: Var) {}

    /// `clause` lost `var`'s literal as a true literal; its count is now `nt`.
    #[inline]
    fn on_loss(&mut self, _f: &Formula, _a: &Assignment, _clause: usize, _nt: u32, _var: Var) {}
}

impl FlipObserver for () {}

const NOT_IN_SET: u32 = u32::MAX;

#[derive(Debug, Clone)]
pub struct SolverState<'f> {
    formula: &'f Formula,
    assignment: Assignment,
    nt: Vec<u32>,
    unsat: Vec<u32>,
    unsat_pos: Vec<u32>,
    flips: u64,
}

impl<'f> SolverState<'f> {
    pub fn new(formula: &'f Formula, assignment: Assignment) -> Result<SolverState<'f>> {
        if assignment.num_vars() != formula.num_vars() {
            return Err(Error::ArityMismatch { expected: formula.num_vars(), got: assignment.num_vars() });
        }
        let nt = count_true_literals(formula, &assignment);
        let mut unsat = Vec::new();
        let mut unsat_pos = vec![NOT_IN_SET; nt.len()];
        for (c, &count) in nt.iter().enumerate() {
            if count == 0 {
                unsat_pos[c] = unsat.len() as u32;
                unsat.push(c as u32);
            }
        }
        Ok(SolverState { formula, assignment, nt, unsat, unsat_pos, flips: 0 })
    }

    #[inline]
    pub fn formula(&self) -> &'f Formula {
        self.formula
    }

    #[inline]
    pub fn assignment(&self) -> &Assignment {
        &self.assignment
    }

    #[inline]
    pub fn value(&self, var: Var) -> bool {
        self.assignment.get(var)
    }

    /// Number of true literals in `clause`.
    #[inline]
    pub fn nt(&self, clause: usize) -> u32 {
        self.nt[clause]
    }

    pub fn true_counts(&self) -> &[u32] {
        &self.nt
    }

    /// Unsatisfied clause indices in internal (arbitrary) order.
    pub fn unsat_clauses(&self) -> &[u32] {
        &self.unsat
    }

    #[inline]
    pub fn num_unsat(&self) -> usize {
        self.unsat.len()
    }

    #[inline]
    pub fn is_satisfied(&self) -> bool {
        self.unsat.is_empty()
    }

    #[inline]
    pub fn flips(&self) -> u64 {
        self.flips
    }

    /// Clauses in which `var`'s current literal is true.
    #[inline]
    pub fn tlc(&self, var: Var) -> &'f [u32] {
        self.formula.occurrences(Lit::new(var, self.assignment.get(var)))
    }

    /// Uniform draw from the unsatisfied set (one `uniform_below` draw).
    #[inline]
    pub fn pick_random_unsat(&self, rng: &mut SolverRng) -> Result<usize> {
        if self.unsat.is_empty() {
            return Err(Error::NoUnsatClause);
        }
        Ok(self.unsat[rng.uniform_below(self.unsat.len())] as usize)
    }

    #[inline]
    pub fn flip(&mut self, var: Var) {
        self.flip_observed(var, &mut ());
    }

    pub fn flip_observed<O: FlipObserver>(&mut self, var: Var, observer: &mut O) {
        let formula = self.formula;
        let was_true = Lit::new(var, self.assignment.get(var));
        let now_true = was_true.negate();
        self.assignment.flip(var);

        for &c in formula.occurrences(now_true) {
            let c = c as usize;
            self.nt[c] += 1;
            let nt = self.nt[c];
            if nt == 1 {
                self.unsat_remove(c);
            }
            observer.on_gain(formula, &self.assignment, c, nt, var);
        }
        for &c in formula.occurrences(was_true) {
            let c = c as usize;
            self.nt[c] -= 1;
            let nt = self.nt[c];
            if nt == 0 {
                self.unsat_insert(c);
            }
            observer.on_loss(formula, &self.assignment, c, nt, var);
        }
        self.flips += 1;
    }

    #[inline]
    fn unsat_insert(&mut self, c: usize) {
        debug_assert_eq!(self.unsat_pos[c], NOT_IN_SET);
        self.unsat_pos[c] = self.unsat.len() as u32;
        self.unsat.push(c as u32);
    }

    #[inline]
    fn unsat_remove(&mut self, c: usize) {
        let pos = self.unsat_pos[c] as usize;
        debug_assert_ne!(pos as u32, NOT_IN_SET);
        let last = self.unsat.pop().unwrap();
        if last as usize != c {
            self.unsat[pos] = last;
            self.unsat_pos[last as usize] = pos as u32;
        }
        self.unsat_pos[c] = NOT_IN_SET;
    }

    /// Recomputes counts and the unsat set from scratch and compares them with
    /// the incrementally maintained ones.
    pub fn is_consistent(&self) -> bool {
        let fresh = count_true_literals(self.formula, &self.assignment);
        if fresh != self.nt {
            return false;
        }
        let mut expected: Vec<u32> = (0..fresh.len() as u32).filter(|&c| fresh[c as usize] == 0).collect();
        let mut actual = self.unsat.clone();
        actual.sort_unstable();
        expected.sort_unstable();
        if actual != expected {
            return false;
        }
        self.unsat.iter().enumerate().all(|(i, &c)| self.unsat_pos[c as usize] as usize == i)
            && self.unsat_pos.iter().filter(|&&p| p != NOT_IN_SET).count() == self.unsat.len()
    }

    /// Break value by brute force: flip a copy of the assignment, recount all
    /// clauses, and count those going from satisfied to unsatisfied.
    pub fn break_oracle(&self, var: Var) -> usize {
        let (before, after) = self.recount_around(var);
        before.iter().zip(&after).filter(|(&b, &a)| b > 0 && a == 0).count()
    }

    /// Make value by brute force, as for [`Self::break_oracle`].
    pub fn make_oracle(&self, var: Var) -> usize {
        let (before, after) = self.recount_around(var);
        before.iter().zip(&after).filter(|(&b, &a)| b == 0 && a > 0).count()
    }

    fn recount_around(&self, var: Var) -> (Vec<u32>, Vec<u32>) {
        let before = count_true_literals(self.formula, &self.assignment);
        let mut flipped = self.assignment.clone();
        flipped.flip(var);
        let after = count_true_literals(self.formula, &flipped);
        (before, after)
    }
}

/// True-literal count of every clause, literal by literal.
pub fn count_true_literals(formula: &Formula, assignment: &Assignment) -> Vec<u32> {
    formula.clauses().map(|clause| clause.iter().filter(|&&l| assignment.is_true(l)).count() as u32).collect()
}
