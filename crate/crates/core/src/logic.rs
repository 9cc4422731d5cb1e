//! Literals, clauses, terms, DNF lines, CNF formulas and partial assignments.
//!
//! Literals follow the DIMACS convention: a nonzero signed integer whose
//! magnitude is the (1-based) variable index. Clauses and terms are stored as
//! sorted, duplicate-free literal vectors ordered by `(variable, polarity)`
//! with the negative literal first.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Variable index, 1-based.
pub type Var = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i32", into = "i32")]
pub struct Literal(i32);

impl Literal {
    /// Panics on zero; use [`Literal::try_from`] for untrusted input.
    pub fn new(value: i32) -> Self {
        assert!(value != 0, "literal 0 is not a literal");
        Literal(value)
    }

    pub fn positive(var: Var) -> Self {
        Literal::new(var as i32)
    }

    pub fn negative(var: Var) -> Self {
        Literal::new(-(var as i32))
    }

    pub fn from_var(var: Var, polarity: bool) -> Self {
        if polarity {
            Literal::positive(var)
        } else {
            Literal::negative(var)
        }
    }

    pub fn var(self) -> Var {
        self.0.unsigned_abs()
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn value(self) -> i32 {
        self.0
    }

    pub fn negate(self) -> Self {
        Literal(-self.0)
    }

    /// Truth value under `rho`, `None` if the variable is unassigned.
    pub fn eval(self, rho: &Assignment) -> Option<bool> {
        rho.get(self.var()).map(|v| v == self.is_positive())
    }
}

impl std::ops::Neg for Literal {
    type Output = Literal;
    fn neg(self) -> Literal {
        self.negate()
    }
}

impl Ord for Literal {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.var(), self.is_positive()).cmp(&(other.var(), other.is_positive()))
    }
}

impl PartialOrd for Literal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("0 is not a valid literal")]
pub struct ZeroLiteral;

impl TryFrom<i32> for Literal {
    type Error = ZeroLiteral;
    fn try_from(value: i32) -> Result<Self, ZeroLiteral> {
        if value == 0 {
            Err(ZeroLiteral)
        } else {
            Ok(Literal(value))
        }
    }
}

impl From<Literal> for i32 {
    fn from(lit: Literal) -> i32 {
        lit.0
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn canonical(mut lits: Vec<Literal>) -> (Vec<Literal>, bool) {
    let before = lits.len();
    lits.sort_unstable();
    lits.dedup();
    let had_duplicates = lits.len() != before;
    (lits, had_duplicates)
}

fn has_both_polarities(sorted: &[Literal]) -> bool {
    sorted.windows(2).any(|w| w[0].var() == w[1].var())
}

fn write_lits(f: &mut fmt::Formatter<'_>, lits: &[Literal], sep: &str) -> fmt::Result {
    for (i, lit) in lits.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        write!(f, "{lit}")?;
    }
    Ok(())
}

macro_rules! literal_set {
    ($name:ident) => {
        impl $name {
            pub fn new(lits: impl IntoIterator<Item = Literal>) -> Self {
                $name(canonical(lits.into_iter().collect()).0)
            }

            /// Builds the set and reports whether the input repeated a literal.
            pub fn with_duplicates(lits: impl IntoIterator<Item = Literal>) -> (Self, bool) {
                let (lits, dup) = canonical(lits.into_iter().collect());
                ($name(lits), dup)
            }

            pub fn from_ints(values: &[i32]) -> Self {
                $name::new(values.iter().map(|&v| Literal::new(v)))
            }

            pub fn empty() -> Self {
                $name(Vec::new())
            }

            pub fn literals(&self) -> &[Literal] {
                &self.0
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            pub fn contains(&self, lit: Literal) -> bool {
                self.0.binary_search(&lit).is_ok()
            }

            pub fn is_subset(&self, other: &Self) -> bool {
                self.0.iter().all(|&l| other.contains(l))
            }

            pub fn iter(&self) -> impl Iterator<Item = Literal> + '_ {
                self.0.iter().copied()
            }

            pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
                self.0.iter().map(|l| l.var())
            }

            pub fn max_var(&self) -> Var {
                self.0.iter().map(|l| l.var()).max().unwrap_or(0)
            }

            pub fn without(&self, lit: Literal) -> Self {
                $name(self.0.iter().copied().filter(|&l| l != lit).collect())
            }

            pub fn union(&self, other: &Self) -> Self {
                $name::new(self.0.iter().chain(other.0.iter()).copied())
            }

            pub fn difference(&self, other: &Self) -> Self {
                $name(self.0.iter().copied().filter(|&l| !other.contains(l)).collect())
            }
        }

        impl FromIterator<Literal> for $name {
            fn from_iter<I: IntoIterator<Item = Literal>>(iter: I) -> Self {
                $name::new(iter)
            }
        }
    };
}

/// A disjunction of literals. May be tautological; the empty clause is □.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Clause(Vec<Literal>);

literal_set!(Clause);

impl Clause {
    pub fn is_tautology(&self) -> bool {
        has_both_polarities(&self.0)
    }

    pub fn negate(&self) -> Term {
        Term(self.0.iter().map(|l| l.negate()).collect::<Vec<_>>()).recanonical()
    }

    pub fn eval_total(&self, value: impl Fn(Var) -> bool) -> bool {
        self.0.iter().any(|l| value(l.var()) == l.is_positive())
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("□");
        }
        f.write_str("(")?;
        write_lits(f, &self.0, " ∨ ")?;
        f.write_str(")")
    }
}

/// A conjunction of literals. The empty term is the constant true.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Term(Vec<Literal>);

literal_set!(Term);

impl Term {
    pub fn is_contradictory(&self) -> bool {
        has_both_polarities(&self.0)
    }

    pub fn negate(&self) -> Clause {
        Clause(self.0.iter().map(|l| l.negate()).collect::<Vec<_>>()).recanonical()
    }

    pub fn singleton(lit: Literal) -> Self {
        Term(vec![lit])
    }

    pub fn eval_total(&self, value: impl Fn(Var) -> bool) -> bool {
        self.0.iter().all(|l| value(l.var()) == l.is_positive())
    }

    fn recanonical(self) -> Self {
        // negation flips polarity, which swaps the order within a variable
        Term::new(self.0)
    }
}

impl Clause {
    fn recanonical(self) -> Self {
        Clause::new(self.0)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("⊤");
        }
        write_lits(f, &self.0, "∧")
    }
}

/// A disjunction of terms. The empty line is the refuted (false) DNF.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct DnfLine(BTreeSet<Term>);

impl DnfLine {
    pub fn new(terms: impl IntoIterator<Item = Term>) -> Self {
        DnfLine(terms.into_iter().collect())
    }

    pub fn empty() -> Self {
        DnfLine(BTreeSet::new())
    }

    /// The clause read as a DNF of singleton terms.
    pub fn from_clause(clause: &Clause) -> Self {
        DnfLine(clause.iter().map(Term::singleton).collect())
    }

    /// Line introduced by the axiom rule on `term`: the term itself together
    /// with the singleton negation of each of its literals.
    pub fn axiom(term: &Term) -> Self {
        let mut terms = BTreeSet::new();
        terms.insert(term.clone());
        terms.extend(term.iter().map(|l| Term::singleton(l.negate())));
        DnfLine(terms)
    }

    pub fn terms(&self) -> impl Iterator<Item = &Term> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, term: &Term) -> bool {
        self.0.contains(term)
    }

    pub fn contains_singleton(&self, lit: Literal) -> bool {
        self.0.contains(&Term::singleton(lit))
    }

    pub fn insert(&mut self, term: Term) -> bool {
        self.0.insert(term)
    }

    pub fn remove(&mut self, term: &Term) -> bool {
        self.0.remove(term)
    }

    pub fn union_with(&mut self, other: &DnfLine) {
        self.0.extend(other.0.iter().cloned());
    }

    pub fn is_subset(&self, other: &DnfLine) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn max_term_width(&self) -> usize {
        self.0.iter().map(Term::len).max().unwrap_or(0)
    }

    pub fn eval_total(&self, value: impl Fn(Var) -> bool + Copy) -> bool {
        self.0.iter().any(|t| t.eval_total(value))
    }
}

impl FromIterator<Term> for DnfLine {
    fn from_iter<I: IntoIterator<Item = Term>>(iter: I) -> Self {
        DnfLine::new(iter)
    }
}

impl fmt::Display for DnfLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("⊥");
        }
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ∨ ")?;
            }
            write!(f, "{{{t}}}")?;
        }
        Ok(())
    }
}

/// Partial map from variables to truth values.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Assignment(BTreeMap<Var, bool>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("variable {0} is already assigned the opposite value")]
pub struct ConflictingAssignment(pub Var);

impl Assignment {
    pub fn new() -> Self {
        Assignment(BTreeMap::new())
    }

    /// The assignment that makes every literal in `lits` true.
    pub fn satisfying(lits: impl IntoIterator<Item = Literal>) -> Result<Self, ConflictingAssignment> {
        let mut rho = Assignment::new();
        for lit in lits {
            rho.assign(lit.var(), lit.is_positive())?;
        }
        Ok(rho)
    }

    /// The assignment that makes every literal in `lits` false.
    pub fn falsifying(lits: impl IntoIterator<Item = Literal>) -> Result<Self, ConflictingAssignment> {
        Assignment::satisfying(lits.into_iter().map(Literal::negate))
    }

    pub fn assign(&mut self, var: Var, value: bool) -> Result<(), ConflictingAssignment> {
        match self.0.insert(var, value) {
            Some(old) if old != value => {
                self.0.insert(var, old);
                Err(ConflictingAssignment(var))
            }
            _ => Ok(()),
        }
    }

    pub fn get(&self, var: Var) -> Option<bool> {
        self.0.get(&var).copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, bool)> + '_ {
        self.0.iter().map(|(&v, &b)| (v, b))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClauseRestriction {
    Satisfied,
    Remaining(Clause),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TermRestriction {
    Falsified,
    Remaining(Term),
}

pub fn restrict_clause(clause: &Clause, rho: &Assignment) -> ClauseRestriction {
    let mut kept = Vec::with_capacity(clause.len());
    for lit in clause.iter() {
        match lit.eval(rho) {
            Some(true) => return ClauseRestriction::Satisfied,
            Some(false) => {}
            None => kept.push(lit),
        }
    }
    ClauseRestriction::Remaining(Clause(kept))
}

pub fn restrict_term(term: &Term, rho: &Assignment) -> TermRestriction {
    let mut kept = Vec::with_capacity(term.len());
    for lit in term.iter() {
        match lit.eval(rho) {
            Some(false) => return TermRestriction::Falsified,
            Some(true) => {}
            None => kept.push(lit),
        }
    }
    TermRestriction::Remaining(Term(kept))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ResolveError {
    #[error("pivot variable {0} does not occur with opposite polarities in the premises")]
    PivotAbsent(Var),
    #[error("pivot variable {0} occurs with both polarities inside one premise")]
    PivotBothPolarities(Var),
}

/// Resolution on `pivot`. Either premise may hold the positive literal.
pub fn resolve(a: &Clause, b: &Clause, pivot: Var) -> Result<Clause, ResolveError> {
    let pos = Literal::positive(pivot);
    let neg = Literal::negative(pivot);
    for premise in [a, b] {
        if premise.contains(pos) && premise.contains(neg) {
            return Err(ResolveError::PivotBothPolarities(pivot));
        }
    }
    let (p, n) = if a.contains(pos) && b.contains(neg) {
        (a, b)
    } else if b.contains(pos) && a.contains(neg) {
        (b, a)
    } else {
        return Err(ResolveError::PivotAbsent(pivot));
    };
    Ok(Clause::new(p.iter().filter(|&l| l != pos).chain(n.iter().filter(|&l| l != neg))))
}

/// A CNF formula. The width is always recomputed from the clauses.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Cnf {
    num_vars: Var,
    clauses: Vec<Clause>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("clause {clause} mentions variable {var} but the formula has only {num_vars} variables")]
pub struct VariableOutOfRange {
    pub clause: usize,
    pub var: Var,
    pub num_vars: Var,
}

impl Cnf {
    pub fn new(num_vars: Var, clauses: Vec<Clause>) -> Result<Self, VariableOutOfRange> {
        for (i, c) in clauses.iter().enumerate() {
            if c.max_var() > num_vars {
                return Err(VariableOutOfRange { clause: i + 1, var: c.max_var(), num_vars });
            }
        }
        Ok(Cnf { num_vars, clauses })
    }

    /// Uses the largest variable mentioned as the variable count.
    pub fn from_clauses(clauses: Vec<Clause>) -> Self {
        let num_vars = clauses.iter().map(Clause::max_var).max().unwrap_or(0);
        Cnf { num_vars, clauses }
    }

    pub fn num_vars(&self) -> Var {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    /// Clause by 1-based index.
    pub fn clause(&self, index: usize) -> Option<&Clause> {
        index.checked_sub(1).and_then(|i| self.clauses.get(i))
    }

    pub fn width(&self) -> usize {
        self.clauses.iter().map(Clause::len).max().unwrap_or(0)
    }

    /// 1-based index of the first clause equal to `clause`.
    pub fn position(&self, clause: &Clause) -> Option<usize> {
        self.clauses.iter().position(|c| c == clause).map(|i| i + 1)
    }

    pub fn contains_empty_clause(&self) -> bool {
        self.clauses.iter().any(Clause::is_empty)
    }

    /// Appends a clause and returns its 1-based index.
    pub fn push(&mut self, clause: Clause) -> usize {
        self.num_vars = self.num_vars.max(clause.max_var());
        self.clauses.push(clause);
        self.clauses.len()
    }

    pub fn is_satisfied_by(&self, value: impl Fn(Var) -> bool + Copy) -> bool {
        self.clauses.iter().all(|c| c.eval_total(value))
    }

    /// Total assignments satisfying the formula, as bit masks where bit
    /// `v-1` is the value of variable `v`. Exponential in `num_vars`.
    pub fn models(&self) -> impl Iterator<Item = u64> + '_ {
        assert!(self.num_vars < 32, "truth tables are limited to 31 variables");
        (0..1u64 << self.num_vars).filter(move |&m| self.is_satisfied_by(|v| m >> (v - 1) & 1 == 1))
    }

    pub fn is_unsatisfiable_by_truth_table(&self) -> bool {
        self.models().next().is_none()
    }

    pub fn restrict(&self, rho: &Assignment) -> RestrictedCnf {
        let mut clauses = Vec::new();
        let mut origin = Vec::new();
        let mut target = vec![None; self.clauses.len()];
        for (i, c) in self.clauses.iter().enumerate() {
            if let ClauseRestriction::Remaining(r) = restrict_clause(c, rho) {
                target[i] = Some(clauses.len() + 1);
                origin.push(i + 1);
                clauses.push(r);
            }
        }
        RestrictedCnf { cnf: Cnf { num_vars: self.num_vars, clauses }, origin, target }
    }
}

/// Result of [`restrict_cnf`]: the residual formula plus the index
/// correspondence between surviving clauses and the original ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictedCnf {
    pub cnf: Cnf,
    origin: Vec<usize>,
    target: Vec<Option<usize>>,
}

impl RestrictedCnf {
    /// Original 1-based index of restricted clause `index`.
    pub fn original_index(&self, index: usize) -> Option<usize> {
        index.checked_sub(1).and_then(|i| self.origin.get(i)).copied()
    }

    /// Restricted 1-based index of original clause `index`, `None` if satisfied.
    pub fn restricted_index(&self, index: usize) -> Option<usize> {
        index.checked_sub(1).and_then(|i| self.target.get(i)).copied().flatten()
    }
}

pub fn restrict_cnf(f: &Cnf, rho: &Assignment) -> RestrictedCnf {
    f.restrict(rho)
}

pub fn negate_clause(c: &Clause) -> Term {
    c.negate()
}

pub fn negate_term(t: &Term) -> Clause {
    t.negate()
}
