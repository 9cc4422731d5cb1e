//! Narrow Resolution → short tree-like Res(w).
//!
//! Given a refutation `D_1 … D_S` of width `w`, the construction walks the
//! proof backwards maintaining a DNF line `E_t` whose terms are negations of
//! proof lines `¬D_i` with `i ≤ t`. Each step removes `¬D_t` from the line:
//!
//! * for an initial clause, by cutting against a leaf of that clause;
//! * for a resolvent `A ∨ B` of `A ∨ x` and `B ∨ ¬x`, by building
//!   `(¬A∧¬x) ∨ (¬B∧x) ∨ A ∨ B` from two axioms and a cut on `x`, and cutting
//!   it against the line on the term `¬A∧¬B`.
//!
//! The line only ever grows by `¬D_a` and `¬D_b`, so the final line is empty.

use std::collections::HashMap;

use thiserror::Error;

use crate::checker::check_res;
use crate::logic::{Clause, Cnf, DnfLine, Literal, Term};
use crate::proof::{LineId, NodeKind, ResLine, ResProof, ResRule, TreeDnfProof, TreeNode};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpandError {
    #[error("input proof is invalid: {0}")]
    InvalidInput(String),
    #[error("input proof uses weakening; run eliminate_weakening first")]
    HasWeakening,
    #[error("line {0} on the path to the empty clause is tautological")]
    TautologyInCone(LineId),
    #[error("internal bound violated: {0}")]
    InternalBoundViolated(String),
}

fn ensure_valid(f: &Cnf, p: &ResProof) -> Result<(), ExpandError> {
    let report = check_res(f, p, None);
    if report.valid {
        Ok(())
    } else {
        let v = &report.violations[0];
        Err(ExpandError::InvalidInput(format!("line {}: {:?}: {}", v.id, v.kind, v.detail)))
    }
}

/// Removes weakening steps. Every line is replaced by a sub-clause derivable
/// without weakening; a resolution step whose replaced premise already lacks
/// the pivot passes that premise through. Width and length never grow.
pub fn eliminate_weakening(f: &Cnf, p: &ResProof) -> Result<ResProof, ExpandError> {
    ensure_valid(f, p)?;
    if !p.has_weakening() {
        return Ok(p.clone());
    }
    let mut out: Vec<(ResRule, Clause)> = Vec::new();
    let mut repl: Vec<usize> = Vec::with_capacity(p.len());
    for line in &p.lines {
        let r = match line.rule {
            ResRule::Initial => {
                out.push((ResRule::Initial, line.clause.clone()));
                out.len() - 1
            }
            ResRule::Weaken { a } => repl[p.index_of(a).expect("checked")],
            ResRule::Resolve { a, b, pivot } => {
                let ia = p.index_of(a).expect("checked");
                let ib = p.index_of(b).expect("checked");
                let (ra, rb) = (repl[ia], repl[ib]);
                let lit_a = if p.lines[ia].clause.contains(Literal::positive(pivot)) {
                    Literal::positive(pivot)
                } else {
                    Literal::negative(pivot)
                };
                let (ca, cb) = (&out[ra].1, &out[rb].1);
                if ca.contains(lit_a) && cb.contains(lit_a.negate()) {
                    let resolvent = ca.without(lit_a).union(&cb.without(lit_a.negate()));
                    // ids are fixed up after pruning; store positions for now
                    out.push((ResRule::Resolve { a: ra as LineId, b: rb as LineId, pivot }, resolvent));
                    out.len() - 1
                } else if !ca.contains(lit_a) {
                    ra
                } else {
                    rb
                }
            }
        };
        repl.push(r);
    }

    let last = *repl.last().expect("valid proofs are nonempty");
    let mut keep = vec![false; out.len()];
    keep[last] = true;
    for i in (0..=last).rev() {
        if keep[i] {
            if let ResRule::Resolve { a, b, .. } = out[i].0 {
                keep[a as usize] = true;
                keep[b as usize] = true;
            }
        }
    }
    let mut new_id = vec![0 as LineId; out.len()];
    let mut lines = Vec::new();
    for (i, (rule, clause)) in out.into_iter().enumerate().take(last + 1) {
        if !keep[i] {
            continue;
        }
        let id = lines.len() as LineId + 1;
        new_id[i] = id;
        let rule = match rule {
            ResRule::Resolve { a, b, pivot } => {
                ResRule::Resolve { a: new_id[a as usize], b: new_id[b as usize], pivot }
            }
            r => r,
        };
        lines.push(ResLine { id, rule, clause });
    }
    Ok(ResProof::new(lines))
}

/// Bookkeeping for the backward pass: the current line `E_t`, the node that
/// derives it, and the nodes emitted so far.
#[derive(Debug)]
struct ExpandState<'a> {
    /// Cone of the first empty clause, in proof order.
    seq: Vec<&'a ResLine>,
    /// Smallest sequence position (1-based) holding each clause.
    first_index: HashMap<&'a Clause, usize>,
    position: HashMap<LineId, usize>,
    line: DnfLine,
    current: LineId,
    nodes: Vec<TreeNode>,
}

impl<'a> ExpandState<'a> {
    fn emit(&mut self, kind: NodeKind) -> LineId {
        let id = self.nodes.len() as LineId + 1;
        self.nodes.push(TreeNode { id, kind });
        id
    }

    fn clause_of(&self, id: LineId) -> &'a Clause {
        &self.seq[self.position[&id] - 1].clause
    }

    /// Every term must be `¬D_i` for some `i ≤ t`, owned by its first copy.
    fn check_subset_invariant(&self, t: usize) -> Result<(), ExpandError> {
        for term in self.line.terms() {
            let clause = term.negate();
            match self.first_index.get(&clause) {
                Some(&i) if i <= t => {}
                _ => {
                    return Err(ExpandError::InternalBoundViolated(format!(
                        "term {term} of E_{t} is not the negation of a line D_i with i ≤ {t}"
                    )))
                }
            }
        }
        Ok(())
    }

    fn step(&mut self, f: &Cnf, t: usize) -> Result<(), ExpandError> {
        let line = self.seq[t - 1];
        if self.first_index[&line.clause] != t {
            return Ok(());
        }
        let term = line.clause.negate();
        if !self.line.contains(&term) {
            return Ok(());
        }
        match line.rule {
            ResRule::Initial => {
                let index = f.position(&line.clause).expect("initial lines are formula clauses");
                let leaf = self.emit(NodeKind::Leaf(index));
                self.current = self.emit(NodeKind::Cut { a: self.current, b: leaf, term: term.clone() });
                self.line.remove(&term);
            }
            ResRule::Resolve { a, b, pivot } => {
                let x = Literal::positive(pivot);
                let (pa, pb) = if self.clause_of(a).contains(x) { (a, b) } else { (b, a) };
                let neg_a = self.clause_of(pa).negate();
                let neg_b = self.clause_of(pb).negate();
                let ax1 = self.emit(NodeKind::Axiom(neg_a.clone()));
                let ax2 = self.emit(NodeKind::Axiom(neg_b.clone()));
                let side = self.emit(NodeKind::Cut { a: ax1, b: ax2, term: Term::singleton(x) });
                self.current = self.emit(NodeKind::Cut { a: self.current, b: side, term: term.clone() });
                self.line.remove(&term);
                self.line.insert(neg_a);
                self.line.insert(neg_b);
            }
            ResRule::Weaken { .. } => return Err(ExpandError::HasWeakening),
        }
        self.check_subset_invariant(t - 1)
    }
}

/// Transforms a weakening-free Resolution refutation of `f` into a tree-like
/// Res(max(w, 1)) refutation with at most `4S + 2m + 1` nodes.
pub fn expand(f: &Cnf, p: &ResProof) -> Result<TreeDnfProof, ExpandError> {
    ensure_valid(f, p)?;
    if p.has_weakening() {
        return Err(ExpandError::HasWeakening);
    }
    let term_bound = p.width().max(1);
    let first_empty = p.lines.iter().position(|l| l.clause.is_empty()).expect("valid refutations end in □");
    let empty = &p.lines[first_empty];
    if empty.rule == ResRule::Initial {
        let index = f.position(&empty.clause).expect("initial lines are formula clauses");
        return Ok(TreeDnfProof::new(term_bound, vec![TreeNode { id: 1, kind: NodeKind::Leaf(index) }]));
    }

    let cone = p.cone(first_empty);
    let seq: Vec<&ResLine> = p.lines.iter().zip(&cone).filter(|(_, &k)| k).map(|(l, _)| l).collect();
    if let Some(taut) = seq.iter().find(|l| l.clause.is_tautology()) {
        return Err(ExpandError::TautologyInCone(taut.id));
    }
    let mut first_index = HashMap::new();
    let mut position = HashMap::new();
    for (i, l) in seq.iter().enumerate() {
        first_index.entry(&l.clause).or_insert(i + 1);
        position.insert(l.id, i + 1);
    }
    let s = seq.len();

    let ResRule::Resolve { pivot, .. } = empty.rule else {
        return Err(ExpandError::HasWeakening);
    };
    let base = Term::singleton(Literal::positive(pivot));
    let mut state = ExpandState {
        seq,
        first_index,
        position,
        line: DnfLine::axiom(&base),
        current: 0,
        nodes: Vec::new(),
    };
    state.current = state.emit(NodeKind::Axiom(base));
    state.check_subset_invariant(s - 1)?;

    for t in (1..s).rev() {
        state.step(f, t)?;
    }
    if !state.line.is_empty() {
        return Err(ExpandError::InternalBoundViolated(format!("final line {} is not empty", state.line)));
    }
    let budget = 4 * p.len() + 2 * f.num_clauses() + 1;
    if state.nodes.len() > budget {
        return Err(ExpandError::InternalBoundViolated(format!(
            "{} nodes exceed the budget 4S+2m+1 = {budget}",
            state.nodes.len()
        )));
    }
    Ok(TreeDnfProof::new(term_bound, state.nodes))
}
