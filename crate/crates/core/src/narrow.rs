//! Short tree-like Res(l) → narrow Resolution.
//!
//! A tree-like refutation ends with a cut between a proof of a single term
//! `l_1∧…∧l_s` (the term side, `L_C` leaves) and a proof of the clause
//! `¬l_1 ∨ … ∨ ¬l_s` (the clause side, `L_D` leaves). One side has at most
//! half of the leaves, which is what bounds the width:
//!
//! * term side small: refute `F|l_i=0` for each `i` from the restricted term
//!   side, which yields the units `l_i`; resolve them into `F` to obtain
//!   `F|l_1=1,…,l_s=1` and refute that from the restricted clause side.
//! * clause side small (`s > 1`): refute `F|l_1=1,…,l_s=1` from the restricted
//!   clause side, which yields `¬l_1 ∨ … ∨ ¬l_s`; substitute that clause for
//!   the axioms introducing the term on the term side and refute the result.
//!
//! Sub-refutations are composed in a single dag-like proof. Every subproblem
//! formula clause is anchored to an already derived line equal to the clause
//! plus literals falsified by the restrictions on the path to it, so nothing
//! needs to be re-derived or explicitly weakened.

use std::collections::HashMap;

use thiserror::Error;

use crate::checker::{check_res, check_tree_lines, TreeRules, ViolationKind};
use crate::logic::{
    resolve, restrict_term, Assignment, Clause, Cnf, DnfLine, Literal, RestrictedCnf, Term, TermRestriction,
};
use crate::proof::{LineId, NodeKind, ResLine, ResProof, ResRule, TreeDnfProof};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NarrowError {
    #[error("input proof is invalid: {0}")]
    InvalidInput(String),
    #[error("the root line became true under the restriction")]
    RootBecameTrue,
    #[error("root line is {found}, expected the single term {expected}")]
    RootTermMismatch { expected: Term, found: DnfLine },
    #[error("initial clause {clause} of line {line} has no counterpart in the original formula")]
    ProvenanceMiss { line: LineId, clause: Clause },
    #[error("output width {width} exceeds the bound {bound}")]
    BudgetExceeded { width: usize, bound: usize },
    #[error("internal error: {0}")]
    Internal(String),
}

/// Width budget `l·⌈log₂ L⌉ + max(k, l)` of a subproblem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NarrowBudget {
    pub term_bound: usize,
    pub formula_width: usize,
    pub leaves: usize,
}

impl NarrowBudget {
    pub fn width(&self) -> usize {
        self.term_bound * ceil_log2(self.leaves) + self.formula_width.max(self.term_bound)
    }
}

pub fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

fn invalid(report: &crate::checker::CheckReport) -> NarrowError {
    let v = &report.violations[0];
    NarrowError::InvalidInput(format!("node {}: {:?}: {}", v.id, v.kind, v.detail))
}

/// Whether the axiom on `t` introduces the term `term`. The axiom on a single
/// literal `x` is the line `{x} ∨ {¬x}`, so it also introduces `¬x`.
fn introduces(t: &Term, term: &Term) -> bool {
    t == term || (t.len() == 1 && term.len() == 1 && t.literals()[0] == term.literals()[0].negate())
}

/// Per-node outcome of a rewrite: the line became true, or it is derived by
/// a new node (position in the output) whose line is a sub-DNF of the
/// rewritten original line.
type Outcome = Option<usize>;

struct Rewrite<'a> {
    target: &'a Cnf,
    rho: &'a Assignment,
    /// Original clause index → clause index in `target`, `None` if satisfied.
    leaf: &'a dyn Fn(usize) -> Option<usize>,
    /// Axioms introducing this term become leaves of the given clause.
    replace_axiom: Option<(&'a Term, usize)>,
}

impl Rewrite<'_> {
    /// The shared sub-DNF propagation pass behind restriction and axiom
    /// substitution. A cut whose premise no longer carries the cut term (or
    /// any of the clause-side literals) is skipped and that premise is
    /// passed up; a clause side that lost some of its literals gives a
    /// subset cut.
    fn run(&self, p: &TreeDnfProof) -> Result<TreeDnfProof, NarrowError> {
        let old = p.positional_kinds();
        let mut nodes: Vec<NodeKind> = Vec::with_capacity(old.len());
        let mut lines: Vec<DnfLine> = Vec::with_capacity(old.len());
        let mut outcome: Vec<Outcome> = Vec::with_capacity(old.len());
        let push = |nodes: &mut Vec<NodeKind>, lines: &mut Vec<DnfLine>, kind, line| {
            nodes.push(kind);
            lines.push(line);
            Some(nodes.len() - 1)
        };

        for kind in &old {
            let out = match kind {
                NodeKind::Leaf(c) => match (self.leaf)(*c) {
                    None => None,
                    Some(c2) => {
                        let line =
                            DnfLine::from_clause(self.target.clause(c2).expect("mapped clause exists"));
                        push(&mut nodes, &mut lines, NodeKind::Leaf(c2), line)
                    }
                },
                NodeKind::Axiom(t) => match self.replace_axiom {
                    Some((term, c)) if introduces(t, term) => {
                        let line =
                            DnfLine::from_clause(self.target.clause(c).expect("substituted clause exists"));
                        push(&mut nodes, &mut lines, NodeKind::Leaf(c), line)
                    }
                    _ => match restrict_term(t, self.rho) {
                        TermRestriction::Falsified => None,
                        TermRestriction::Remaining(t2) if t2.is_empty() => None,
                        TermRestriction::Remaining(t2) => {
                            let line = DnfLine::axiom(&t2);
                            push(&mut nodes, &mut lines, NodeKind::Axiom(t2), line)
                        }
                    },
                },
                NodeKind::Cut { a, b, term } | NodeKind::SubCut { a, b, term, .. } => {
                    let kept = match kind {
                        NodeKind::SubCut { kept, .. } => kept,
                        _ => term,
                    };
                    let (ra, rb) = (outcome[*a as usize], outcome[*b as usize]);
                    match restrict_term(term, self.rho) {
                        TermRestriction::Falsified => ra,
                        TermRestriction::Remaining(t2) if t2.is_empty() => rb,
                        TermRestriction::Remaining(t2) => match (ra, rb) {
                            (Some(ia), Some(ib)) => {
                                if !lines[ia].contains(&t2) {
                                    Some(ia)
                                } else {
                                    let surviving: Term = kept
                                        .iter()
                                        .filter(|l| l.eval(self.rho).is_none())
                                        .filter(|l| lines[ib].contains_singleton(l.negate()))
                                        .collect();
                                    if surviving.is_empty() {
                                        Some(ib)
                                    } else {
                                        let mut line = lines[ia].clone();
                                        line.remove(&t2);
                                        let mut rest = lines[ib].clone();
                                        for l in surviving.iter() {
                                            rest.remove(&Term::singleton(l.negate()));
                                        }
                                        line.union_with(&rest);
                                        let (a, b) = (ia as LineId, ib as LineId);
                                        let kind = if surviving == t2 {
                                            NodeKind::Cut { a, b, term: t2 }
                                        } else {
                                            NodeKind::SubCut { a, b, term: t2, kept: surviving }
                                        };
                                        push(&mut nodes, &mut lines, kind, line)
                                    }
                                }
                            }
                            _ => None,
                        },
                    }
                }
            };
            outcome.push(out);
        }

        match outcome.last().copied().flatten() {
            None => Err(NarrowError::RootBecameTrue),
            Some(root) => Ok(TreeDnfProof::compact(p.term_bound, &nodes, root)),
        }
    }
}

/// Restricts a tree proof over `f` by `rho`. The result proves, over the
/// restricted formula, a sub-DNF of the restricted root line and never has
/// more leaves than `p`. It may contain subset cuts.
pub fn restrict_tree_proof(
    f: &Cnf,
    p: &TreeDnfProof,
    rho: &Assignment,
) -> Result<(TreeDnfProof, RestrictedCnf), NarrowError> {
    let restricted = f.restrict(rho);
    let leaf = |c: usize| restricted.restricted_index(c);
    let proof = Rewrite { target: &restricted.cnf, rho, leaf: &leaf, replace_axiom: None }.run(p)?;
    Ok((proof, restricted))
}

/// Given a proof of the single term `term`, replaces every axiom introducing
/// that term by a leaf of the new initial clause `¬term` (appended to the
/// formula). The result refutes the extended formula.
pub fn substitute_axiom(f: &Cnf, p: &TreeDnfProof, term: &Term) -> Result<(TreeDnfProof, Cnf), NarrowError> {
    let (report, lines) = check_tree_lines(f, p, TreeRules::AllowSubsetCut);
    let root_line = lines.last().cloned().unwrap_or_default();
    let expected = DnfLine::new([term.clone()]);
    if root_line != expected {
        return Err(NarrowError::RootTermMismatch { expected: term.clone(), found: root_line });
    }
    if let Some(v) = report.violations.iter().find(|v| v.kind != ViolationKind::RootNotEmpty) {
        return Err(NarrowError::InvalidInput(format!("node {}: {:?}: {}", v.id, v.kind, v.detail)));
    }
    let mut extended = f.clone();
    let index = extended.push(term.negate());
    let proof = substitute_with_leaf(&extended, p, term, index)?;
    Ok((proof, extended))
}

fn substitute_with_leaf(
    f: &Cnf,
    p: &TreeDnfProof,
    term: &Term,
    index: usize,
) -> Result<TreeDnfProof, NarrowError> {
    let rho = Assignment::new();
    let leaf = |c: usize| Some(c);
    Rewrite { target: f, rho: &rho, leaf: &leaf, replace_axiom: Some((term, index)) }.run(p)
}

/// Turns a refutation `q` of `f|lit=0` into a derivation of the unit `{lit}`
/// from `f`: initial clauses are taken from `f` and weakened by `lit` where
/// the restriction removed it, and every other line gains `lit`.
pub fn lift_refutation(
    f: &Cnf,
    restricted: &RestrictedCnf,
    q: &ResProof,
    lit: Literal,
) -> Result<ResProof, NarrowError> {
    let report = check_res(&restricted.cnf, q, None);
    if !report.valid {
        let v = &report.violations[0];
        return Err(NarrowError::InvalidInput(format!("line {}: {:?}: {}", v.id, v.kind, v.detail)));
    }
    let unit = Clause::new([lit]);
    let mut lines: Vec<ResLine> = Vec::new();
    let mut lifted: HashMap<LineId, LineId> = HashMap::new();
    let emit = |lines: &mut Vec<ResLine>, rule, clause| {
        let id = lines.len() as LineId + 1;
        lines.push(ResLine { id, rule, clause });
        id
    };
    for line in &q.lines {
        let target = line.clause.union(&unit);
        let id = match line.rule {
            ResRule::Initial => {
                let original = restricted
                    .cnf
                    .position(&line.clause)
                    .and_then(|j| restricted.original_index(j))
                    .and_then(|o| f.clause(o))
                    .filter(|c| c.is_subset(&target))
                    .ok_or_else(|| NarrowError::ProvenanceMiss {
                        line: line.id,
                        clause: line.clause.clone(),
                    })?;
                let id = emit(&mut lines, ResRule::Initial, original.clone());
                if *original == target {
                    id
                } else {
                    emit(&mut lines, ResRule::Weaken { a: id }, target)
                }
            }
            ResRule::Resolve { a, b, pivot } => {
                if pivot == lit.var() {
                    return Err(NarrowError::Internal(format!(
                        "line {} resolves on the lifted variable",
                        line.id
                    )));
                }
                emit(&mut lines, ResRule::Resolve { a: lifted[&a], b: lifted[&b], pivot }, target)
            }
            ResRule::Weaken { a } => emit(&mut lines, ResRule::Weaken { a: lifted[&a] }, target),
        };
        lifted.insert(line.id, id);
    }
    Ok(ResProof::new(lines))
}

/// Dag-like output under construction; identical clauses share one line.
#[derive(Debug, Default)]
struct Builder {
    lines: Vec<(ResRule, Clause)>,
    index: HashMap<Clause, usize>,
}

impl Builder {
    fn initial(&mut self, clause: &Clause) -> usize {
        if let Some(&i) = self.index.get(clause) {
            return i;
        }
        self.push(ResRule::Initial, clause.clone())
    }

    fn resolve(&mut self, a: usize, b: usize, pivot: crate::logic::Var) -> Result<usize, NarrowError> {
        let clause = resolve(&self.lines[a].1, &self.lines[b].1, pivot)
            .map_err(|e| NarrowError::Internal(format!("composition step failed: {e}")))?;
        if let Some(&i) = self.index.get(&clause) {
            return Ok(i);
        }
        Ok(self.push(ResRule::Resolve { a: a as LineId, b: b as LineId, pivot }, clause))
    }

    fn push(&mut self, rule: ResRule, clause: Clause) -> usize {
        self.index.insert(clause.clone(), self.lines.len());
        self.lines.push((rule, clause));
        self.lines.len() - 1
    }

    fn clause(&self, i: usize) -> &Clause {
        &self.lines[i].1
    }

    /// The cone of line `goal`, renumbered from 1.
    fn extract(&self, goal: usize) -> ResProof {
        let mut keep = vec![false; goal + 1];
        keep[goal] = true;
        for i in (0..=goal).rev() {
            if let (true, ResRule::Resolve { a, b, .. }) = (keep[i], self.lines[i].0) {
                keep[a as usize] = true;
                keep[b as usize] = true;
            }
        }
        let mut id = vec![0 as LineId; goal + 1];
        let mut out = Vec::new();
        for i in (0..=goal).filter(|&i| keep[i]) {
            id[i] = out.len() as LineId + 1;
            let rule = match self.lines[i].0 {
                ResRule::Resolve { a, b, pivot } => {
                    ResRule::Resolve { a: id[a as usize], b: id[b as usize], pivot }
                }
                r => r,
            };
            out.push(ResLine { id: id[i], rule, clause: self.lines[i].1.clone() });
        }
        ResProof::new(out)
    }
}

/// A formula, a tree refutation of it, and for each clause the output line
/// that derives it (possibly with extra literals falsified further up).
#[derive(Debug, Clone)]
struct Subproblem {
    cnf: Cnf,
    anchors: Vec<usize>,
    proof: TreeDnfProof,
}

impl Subproblem {
    fn restricted(&self, proof: &TreeDnfProof, rho: &Assignment) -> Result<Subproblem, NarrowError> {
        let (proof, restricted) = restrict_tree_proof(&self.cnf, proof, rho)?;
        let anchors = (1..=restricted.cnf.num_clauses())
            .map(|j| self.anchors[restricted.original_index(j).expect("surviving clause") - 1])
            .collect();
        Ok(Subproblem { cnf: restricted.cnf, anchors, proof })
    }
}

enum Frame {
    Solve(Subproblem),
    /// Waiting for the units `lits[units.len()]`.
    Units {
        sub: Subproblem,
        term_side: TreeDnfProof,
        clause_side: TreeDnfProof,
        lits: Vec<Literal>,
        units: Vec<usize>,
    },
    /// Waiting for the clause `¬kept` from the clause side.
    ClauseSide {
        sub: Subproblem,
        term_side: TreeDnfProof,
        term: Term,
        kept: Term,
    },
}

enum Split {
    Done(usize),
    Continue(Vec<Frame>),
}

fn ensure_fewer_leaves(child: &TreeDnfProof, bound: usize) -> Result<(), NarrowError> {
    if child.leaves() > bound {
        return Err(NarrowError::Internal(format!(
            "subproof has {} leaves, expected at most {bound}",
            child.leaves()
        )));
    }
    Ok(())
}

struct Narrower {
    out: Builder,
}

impl Narrower {
    fn split(&mut self, sub: Subproblem) -> Result<Split, NarrowError> {
        if let Some(i) = sub.cnf.clauses().iter().position(Clause::is_empty) {
            return Ok(Split::Done(sub.anchors[i]));
        }
        let kinds = sub.proof.positional_kinds();
        let root = kinds.len() - 1;
        let (a, b, term, kept) = match &kinds[root] {
            NodeKind::Cut { a, b, term } => (*a as usize, *b as usize, term.clone(), term.clone()),
            NodeKind::SubCut { a, b, term, kept } => (*a as usize, *b as usize, term.clone(), kept.clone()),
            NodeKind::Leaf(c) => {
                return Err(NarrowError::Internal(format!("root leaf {c} is not the empty clause")));
            }
            NodeKind::Axiom(_) => return Err(NarrowError::Internal("root is an axiom".into())),
        };
        let l = sub.proof.term_bound;
        let term_side = TreeDnfProof::compact(l, &kinds, a);
        let clause_side = TreeDnfProof::compact(l, &kinds, b);
        let total = sub.proof.leaves();
        let (lc, ld) = (term_side.leaves(), clause_side.leaves());

        if 2 * lc <= total {
            let lits = kept.literals().to_vec();
            self.start_units(sub, term_side, clause_side, lits)
        } else if term.len() == 1 {
            // both sides are single literals; recurse on the smaller clause side
            let lits = vec![term.literals()[0].negate()];
            self.start_units(sub, clause_side, term_side, lits)
        } else {
            let rho =
                Assignment::satisfying(kept.iter()).map_err(|e| NarrowError::Internal(e.to_string()))?;
            let child = sub.restricted(&clause_side, &rho)?;
            ensure_fewer_leaves(&child.proof, ld)?;
            Ok(Split::Continue(vec![Frame::ClauseSide { sub, term_side, term, kept }, Frame::Solve(child)]))
        }
    }

    fn start_units(
        &mut self,
        sub: Subproblem,
        term_side: TreeDnfProof,
        clause_side: TreeDnfProof,
        lits: Vec<Literal>,
    ) -> Result<Split, NarrowError> {
        let rho = Assignment::falsifying([lits[0]]).expect("single literal");
        let child = sub.restricted(&term_side, &rho)?;
        ensure_fewer_leaves(&child.proof, term_side.leaves())?;
        Ok(Split::Continue(vec![
            Frame::Units { sub, term_side, clause_side, lits, units: Vec::new() },
            Frame::Solve(child),
        ]))
    }

    /// Resumes a units frame with the line just derived for `lits[units.len()]`.
    fn resume_units(
        &mut self,
        sub: Subproblem,
        term_side: TreeDnfProof,
        clause_side: TreeDnfProof,
        lits: Vec<Literal>,
        mut units: Vec<usize>,
        derived: usize,
    ) -> Result<Split, NarrowError> {
        let lit = lits[units.len()];
        if !self.out.clause(derived).contains(lit) {
            // the sub-refutation never needed the restriction
            return Ok(Split::Done(derived));
        }
        units.push(derived);
        if units.len() < lits.len() {
            let rho = Assignment::falsifying([lits[units.len()]]).expect("single literal");
            let child = sub.restricted(&term_side, &rho)?;
            ensure_fewer_leaves(&child.proof, term_side.leaves())?;
            return Ok(Split::Continue(vec![
                Frame::Units { sub, term_side, clause_side, lits, units },
                Frame::Solve(child),
            ]));
        }

        let rho =
            Assignment::satisfying(lits.iter().copied()).map_err(|e| NarrowError::Internal(e.to_string()))?;
        let (proof, restricted) = restrict_tree_proof(&sub.cnf, &clause_side, &rho)?;
        ensure_fewer_leaves(&proof, clause_side.leaves())?;
        let mut anchors = Vec::with_capacity(restricted.cnf.num_clauses());
        for j in 1..=restricted.cnf.num_clauses() {
            let o = restricted.original_index(j).expect("surviving clause");
            let original = &sub.cnf.clauses()[o - 1];
            let mut line = sub.anchors[o - 1];
            for (lit, &unit) in lits.iter().zip(&units) {
                if original.contains(lit.negate()) {
                    line = self.out.resolve(line, unit, lit.var())?;
                }
            }
            anchors.push(line);
        }
        Ok(Split::Continue(vec![Frame::Solve(Subproblem { cnf: restricted.cnf, anchors, proof })]))
    }

    fn resume_clause_side(
        &mut self,
        sub: Subproblem,
        term_side: TreeDnfProof,
        term: Term,
        kept: Term,
        derived: usize,
    ) -> Result<Split, NarrowError> {
        let negated = kept.negate();
        let clause: Clause = self.out.clause(derived).iter().filter(|&l| negated.contains(l)).collect();
        if clause.is_empty() {
            return Ok(Split::Done(derived));
        }
        let mut cnf = sub.cnf.clone();
        let index = cnf.push(clause);
        let mut anchors = sub.anchors.clone();
        anchors.push(derived);
        let proof = substitute_with_leaf(&cnf, &term_side, &term, index)?;
        ensure_fewer_leaves(&proof, term_side.leaves())?;
        Ok(Split::Continue(vec![Frame::Solve(Subproblem { cnf, anchors, proof })]))
    }

    fn run(&mut self, top: Subproblem) -> Result<usize, NarrowError> {
        let mut stack = vec![Frame::Solve(top)];
        let mut ret: Option<usize> = None;
        while let Some(frame) = stack.pop() {
            let step = match frame {
                Frame::Solve(sub) => self.split(sub)?,
                Frame::Units { sub, term_side, clause_side, lits, units } => {
                    let derived = ret.take().ok_or_else(|| NarrowError::Internal("missing unit".into()))?;
                    self.resume_units(sub, term_side, clause_side, lits, units, derived)?
                }
                Frame::ClauseSide { sub, term_side, term, kept } => {
                    let derived = ret.take().ok_or_else(|| NarrowError::Internal("missing clause".into()))?;
                    self.resume_clause_side(sub, term_side, term, kept, derived)?
                }
            };
            match step {
                Split::Done(line) => ret = Some(line),
                Split::Continue(frames) => stack.extend(frames),
            }
        }
        ret.ok_or_else(|| NarrowError::Internal("no result".into()))
    }
}

/// Transforms a tree-like Res(l) refutation of `f` with `L` leaves into a
/// Resolution refutation of width at most `l·⌈log₂ L⌉ + max(k, l)`.
pub fn narrow(f: &Cnf, p: &TreeDnfProof) -> Result<ResProof, NarrowError> {
    let (report, _) = check_tree_lines(f, p, TreeRules::AllowSubsetCut);
    if !report.valid {
        return Err(invalid(&report));
    }
    let budget = NarrowBudget { term_bound: p.term_bound, formula_width: f.width(), leaves: p.leaves() };
    let mut narrower = Narrower { out: Builder::default() };
    let anchors = f.clauses().iter().map(|c| narrower.out.initial(c)).collect();
    let top = Subproblem { cnf: f.clone(), anchors, proof: p.clone() };
    let result = narrower.run(top)?;
    if !narrower.out.clause(result).is_empty() {
        return Err(NarrowError::Internal(format!("derived {} instead of □", narrower.out.clause(result))));
    }
    let proof = narrower.out.extract(result);
    if proof.width() > budget.width() {
        return Err(NarrowError::BudgetExceeded { width: proof.width(), bound: budget.width() });
    }
    Ok(proof)
}
