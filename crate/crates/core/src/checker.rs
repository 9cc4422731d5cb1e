//! Proof checking for Resolution and tree-like Res(l) proofs.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::logic::{resolve, Clause, Cnf, DnfLine, ResolveError, Term};
use crate::proof::{LineId, NodeKind, ProofStats, ResProof, ResRule, TreeDnfProof};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ViolationKind {
    NonMonotoneId,
    BadPremise,
    NotAnInitialClause,
    ResolventMismatch,
    PivotAbsent,
    PivotBothPolarities,
    WeakeningShrinks,
    LastLineNotEmpty,
    WrongConclusion,
    WidthExceeded,
    BadTermBound,
    BadClauseIndex,
    EmptyTerm,
    ContradictoryTerm,
    TermWidthExceeded,
    CutTermAbsent,
    CutClausePartAbsent,
    NonRigidCut,
    BadSubsetCut,
    PremiseReused,
    UnusedNode,
    RootNotEmpty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum WarningKind {
    EarlyEmpty,
    DuplicateLiteral,
    UnusedLine,
    Tautology,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub id: LineId,
    pub kind: ViolationKind,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Warning {
    pub id: LineId,
    pub kind: WarningKind,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ProofKind {
    Res,
    TreeDnf,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub valid: bool,
    pub kind: ProofKind,
    pub stats: ProofStats,
    pub violations: Vec<Violation>,
    pub warnings: Vec<Warning>,
}

impl CheckReport {
    fn finish(
        kind: ProofKind,
        stats: ProofStats,
        violations: Vec<Violation>,
        warnings: Vec<Warning>,
    ) -> Self {
        CheckReport { valid: violations.is_empty(), kind, stats, violations, warnings }
    }

    pub fn has_violation(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width_name = match self.kind {
            ProofKind::Res => "width",
            ProofKind::TreeDnf => "term-width",
        };
        if self.valid {
            write!(f, "valid")?;
        } else {
            write!(
                f,
                "invalid ({} violation{})",
                self.violations.len(),
                if self.violations.len() == 1 { "" } else { "s" }
            )?;
        }
        writeln!(
            f,
            ", {width_name}={}, lines={}, leaves={}, depth={}",
            self.stats.width, self.stats.lines, self.stats.leaves, self.stats.depth
        )?;
        for v in &self.violations {
            writeln!(f, "  error {} {:?}: {}", v.id, v.kind, v.detail)?;
        }
        for w in &self.warnings {
            writeln!(f, "  warning {} {:?}: {}", w.id, w.kind, w.detail)?;
        }
        Ok(())
    }
}

/// Checks a Resolution refutation of `f`. `max_width` bounds the derived
/// (non-initial) lines; initial clauses belong to the formula.
pub fn check_res(f: &Cnf, p: &ResProof, max_width: Option<usize>) -> CheckReport {
    check_res_derivation(f, p, &Clause::empty(), max_width)
}

/// Like [`check_res`] but the last line must equal `goal` instead of □.
pub fn check_res_derivation(f: &Cnf, p: &ResProof, goal: &Clause, max_width: Option<usize>) -> CheckReport {
    let initial: HashSet<&Clause> = f.clauses().iter().collect();
    let mut violations = Vec::new();
    let mut warnings = Vec::new();
    let mut v = |id, kind, detail: String| violations.push(Violation { id, kind, detail });

    for (i, line) in p.lines.iter().enumerate() {
        let id = line.id;
        if i > 0 && id <= p.lines[i - 1].id {
            v(id, ViolationKind::NonMonotoneId, format!("id {id} follows {}", p.lines[i - 1].id));
            continue;
        }
        let premise = |pid: LineId| p.index_of(pid).filter(|&j| j < i).map(|j| &p.lines[j].clause);
        match line.rule {
            ResRule::Initial => {
                if !initial.contains(&line.clause) {
                    v(
                        id,
                        ViolationKind::NotAnInitialClause,
                        format!("{} is not a clause of the formula", line.clause),
                    );
                }
            }
            ResRule::Resolve { a, b, pivot } => match (premise(a), premise(b)) {
                (Some(ca), Some(cb)) => match resolve(ca, cb, pivot) {
                    Ok(r) if r == line.clause => {}
                    Ok(r) => v(
                        id,
                        ViolationKind::ResolventMismatch,
                        format!("resolvent is {r}, line claims {}", line.clause),
                    ),
                    Err(ResolveError::PivotAbsent(x)) => v(
                        id,
                        ViolationKind::PivotAbsent,
                        format!("pivot {x} does not clash between {a} and {b}"),
                    ),
                    Err(ResolveError::PivotBothPolarities(x)) => v(
                        id,
                        ViolationKind::PivotBothPolarities,
                        format!("pivot {x} occurs with both signs in a premise"),
                    ),
                },
                _ => v(id, ViolationKind::BadPremise, format!("premises {a}, {b} must be earlier lines")),
            },
            ResRule::Weaken { a } => match premise(a) {
                Some(ca) if ca.is_subset(&line.clause) => {}
                Some(ca) => v(
                    id,
                    ViolationKind::WeakeningShrinks,
                    format!("{} is not contained in {}", ca, line.clause),
                ),
                None => v(id, ViolationKind::BadPremise, format!("premise {a} must be an earlier line")),
            },
        }
        if let Some(w) = max_width {
            if line.rule != ResRule::Initial && line.clause.len() > w {
                v(id, ViolationKind::WidthExceeded, format!("width {} exceeds {w}", line.clause.len()));
            }
        }
        if line.clause.is_tautology() {
            warnings.push(Warning {
                id,
                kind: WarningKind::Tautology,
                detail: format!("{} is tautological", line.clause),
            });
        }
        if line.clause.is_empty() && i + 1 < p.lines.len() {
            warnings.push(Warning {
                id,
                kind: WarningKind::EarlyEmpty,
                detail: "empty clause before the last line".into(),
            });
        }
    }

    match p.last() {
        None => v(0, ViolationKind::LastLineNotEmpty, "proof has no lines".into()),
        Some(last) if last.clause != *goal => {
            if goal.is_empty() {
                v(last.id, ViolationKind::LastLineNotEmpty, format!("last line is {}", last.clause));
            } else {
                v(
                    last.id,
                    ViolationKind::WrongConclusion,
                    format!("last line is {}, expected {goal}", last.clause),
                );
            }
        }
        Some(_) => {
            let cone = p.cone(p.len() - 1);
            for (line, used) in p.lines.iter().zip(cone) {
                if !used {
                    warnings.push(Warning {
                        id: line.id,
                        kind: WarningKind::UnusedLine,
                        detail: "line does not contribute to the conclusion".into(),
                    });
                }
            }
        }
    }

    CheckReport::finish(ProofKind::Res, p.stats(), violations, warnings)
}

/// Which cut rule a tree proof may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TreeRules {
    /// Only the rigid cut: the clause side carries every negated literal.
    #[default]
    Strict,
    /// Additionally admits subset cuts (`S` nodes).
    AllowSubsetCut,
}

/// Checks a tree-like Res(l) refutation of `f` under the rigid rule set.
pub fn check_tree_dnf(f: &Cnf, p: &TreeDnfProof) -> CheckReport {
    check_tree_dnf_with(f, p, TreeRules::Strict)
}

pub fn check_tree_dnf_with(f: &Cnf, p: &TreeDnfProof, rules: TreeRules) -> CheckReport {
    let (report, _) = check_tree_lines(f, p, rules);
    report
}

/// Checks the proof and also returns every recomputed line.
pub fn check_tree_lines(f: &Cnf, p: &TreeDnfProof, rules: TreeRules) -> (CheckReport, Vec<DnfLine>) {
    let l = p.term_bound;
    let mut violations = Vec::new();
    let mut v = |id, kind, detail: String| violations.push(Violation { id, kind, detail });
    if l == 0 {
        v(0, ViolationKind::BadTermBound, "term bound must be at least 1".into());
    }
    let mut uses = vec![0usize; p.nodes.len()];
    let mut lines: Vec<DnfLine> = Vec::with_capacity(p.nodes.len());

    let check_term = |id: LineId, t: &Term, v: &mut dyn FnMut(LineId, ViolationKind, String)| {
        if t.is_empty() {
            v(id, ViolationKind::EmptyTerm, "term has no literals".into());
        }
        if t.len() > l {
            v(
                id,
                ViolationKind::TermWidthExceeded,
                format!("term {t} has {} literals, bound is {l}", t.len()),
            );
        }
        if t.is_contradictory() {
            v(
                id,
                ViolationKind::ContradictoryTerm,
                format!("term {t} contains both polarities of a variable"),
            );
        }
    };

    for (i, node) in p.nodes.iter().enumerate() {
        let id = node.id;
        if i > 0 && id <= p.nodes[i - 1].id {
            v(id, ViolationKind::NonMonotoneId, format!("id {id} follows {}", p.nodes[i - 1].id));
            lines.push(DnfLine::empty());
            continue;
        }
        let line = match &node.kind {
            NodeKind::Leaf(c) => match f.clause(*c) {
                Some(clause) => DnfLine::from_clause(clause),
                None => {
                    v(
                        id,
                        ViolationKind::BadClauseIndex,
                        format!("clause {c} does not exist (formula has {})", f.num_clauses()),
                    );
                    DnfLine::empty()
                }
            },
            NodeKind::Axiom(t) => {
                check_term(id, t, &mut v);
                DnfLine::axiom(t)
            }
            NodeKind::Cut { a, b, term } | NodeKind::SubCut { a, b, term, .. } => {
                check_term(id, term, &mut v);
                let kept = match &node.kind {
                    NodeKind::SubCut { kept, .. } => {
                        if rules == TreeRules::Strict {
                            v(
                                id,
                                ViolationKind::NonRigidCut,
                                "subset cut is not a rule of the rigid system".into(),
                            );
                        }
                        if kept.is_empty() || !kept.is_subset(term) {
                            v(
                                id,
                                ViolationKind::BadSubsetCut,
                                format!("kept part {kept} must be a nonempty subset of {term}"),
                            );
                        }
                        kept
                    }
                    _ => term,
                };
                let pa = p.index_of(*a).filter(|&j| j < i);
                let pb = p.index_of(*b).filter(|&j| j < i);
                match (pa, pb) {
                    (Some(ja), Some(jb)) => {
                        uses[ja] += 1;
                        uses[jb] += 1;
                        if !lines[ja].contains(term) {
                            v(
                                id,
                                ViolationKind::CutTermAbsent,
                                format!("node {a} does not contain the term {term}"),
                            );
                        }
                        let missing: Vec<_> =
                            kept.iter().filter(|l| !lines[jb].contains_singleton(l.negate())).collect();
                        if !missing.is_empty() {
                            let shown: Vec<String> = missing.iter().map(|l| l.negate().to_string()).collect();
                            v(
                                id,
                                ViolationKind::CutClausePartAbsent,
                                format!("node {b} lacks literal(s) {}", shown.join(" ")),
                            );
                        }
                        let mut out = lines[ja].clone();
                        out.remove(term);
                        let mut rest = lines[jb].clone();
                        for lit in kept.iter() {
                            rest.remove(&Term::singleton(lit.negate()));
                        }
                        out.union_with(&rest);
                        out
                    }
                    _ => {
                        v(id, ViolationKind::BadPremise, format!("premises {a}, {b} must be earlier nodes"));
                        DnfLine::empty()
                    }
                }
            }
        };
        if line.max_term_width() > l.max(1) {
            v(
                id,
                ViolationKind::TermWidthExceeded,
                format!("line has a term of width {}", line.max_term_width()),
            );
        }
        lines.push(line);
    }

    let last = p.nodes.len().saturating_sub(1);
    for (i, node) in p.nodes.iter().enumerate() {
        if uses[i] > 1 {
            v(node.id, ViolationKind::PremiseReused, format!("used as a premise {} times", uses[i]));
        } else if uses[i] == 0 && i != last {
            v(node.id, ViolationKind::UnusedNode, "node is not reachable from the root".into());
        } else if uses[i] > 0 && i == last {
            v(node.id, ViolationKind::PremiseReused, "the root is used as a premise".into());
        }
    }
    match (p.root(), lines.last()) {
        (Some(root), Some(line)) if !line.is_empty() => {
            v(root.id, ViolationKind::RootNotEmpty, format!("root line is {line}"))
        }
        (None, _) => v(0, ViolationKind::RootNotEmpty, "proof has no nodes".into()),
        _ => {}
    }

    let mut stats = p.stats(None);
    stats.width = lines.iter().map(DnfLine::max_term_width).max().unwrap_or(0);
    stats.term_occurrences = Some(lines.iter().map(DnfLine::len).sum());
    (CheckReport::finish(ProofKind::TreeDnf, stats, violations, Vec::new()), lines)
}
