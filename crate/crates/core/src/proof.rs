//! Proof objects: dag-like Resolution proofs and tree-like DNF proofs.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::logic::{Clause, Cnf, DnfLine, Term, Var};

pub type LineId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ResRule {
    Initial,
    Resolve { a: LineId, b: LineId, pivot: Var },
    Weaken { a: LineId },
}

impl ResRule {
    pub fn premises(&self) -> impl Iterator<Item = LineId> {
        let (x, y) = match *self {
            ResRule::Initial => (None, None),
            ResRule::Resolve { a, b, .. } => (Some(a), Some(b)),
            ResRule::Weaken { a } => (Some(a), None),
        };
        x.into_iter().chain(y)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResLine {
    pub id: LineId,
    pub rule: ResRule,
    pub clause: Clause,
}

/// A dag-like Resolution derivation. Ids are strictly increasing and every
/// premise refers to an earlier line; the parser enforces both, the checker
/// re-verifies them for proofs built in memory.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ResProof {
    pub lines: Vec<ResLine>,
}

impl ResProof {
    pub fn new(lines: Vec<ResLine>) -> Self {
        ResProof { lines }
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// Position of line `id` in `lines`.
    pub fn index_of(&self, id: LineId) -> Option<usize> {
        self.lines.binary_search_by_key(&id, |l| l.id).ok()
    }

    pub fn line(&self, id: LineId) -> Option<&ResLine> {
        self.index_of(id).map(|i| &self.lines[i])
    }

    pub fn last(&self) -> Option<&ResLine> {
        self.lines.last()
    }

    pub fn width(&self) -> usize {
        self.lines.iter().map(|l| l.clause.len()).max().unwrap_or(0)
    }

    pub fn has_weakening(&self) -> bool {
        self.lines.iter().any(|l| matches!(l.rule, ResRule::Weaken { .. }))
    }

    /// Ids of the lines the line at `index` depends on, itself included.
    pub fn cone(&self, index: usize) -> Vec<bool> {
        let mut keep = vec![false; self.lines.len()];
        keep[index] = true;
        for i in (0..=index).rev() {
            if !keep[i] {
                continue;
            }
            for p in self.lines[i].rule.premises() {
                if let Some(j) = self.index_of(p) {
                    if j < i {
                        keep[j] = true;
                    }
                }
            }
        }
        keep
    }

    pub fn stats(&self) -> ProofStats {
        let mut depth = vec![0usize; self.lines.len()];
        for (i, line) in self.lines.iter().enumerate() {
            depth[i] = line
                .rule
                .premises()
                .filter_map(|p| self.index_of(p).filter(|&j| j < i))
                .map(|j| depth[j] + 1)
                .max()
                .unwrap_or(0);
        }
        ProofStats {
            lines: self.lines.len(),
            leaves: self.lines.iter().filter(|l| l.rule == ResRule::Initial).count(),
            width: self.width(),
            depth: depth.last().copied().unwrap_or(0),
            term_occurrences: Some(self.lines.iter().map(|l| l.clause.len()).sum()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NodeKind {
    /// Initial clause, by 1-based index into the formula.
    Leaf(usize),
    /// Axiom introduction on the given term.
    Axiom(Term),
    /// Cut: `a` holds `term`, `b` holds the negation of every literal of it.
    Cut { a: LineId, b: LineId, term: Term },
    /// Cut whose clause side only carries the negations of `kept ⊆ term`.
    /// Sound, but outside the rigid rule set; it appears only in proofs
    /// produced by restriction and axiom substitution.
    SubCut { a: LineId, b: LineId, term: Term, kept: Term },
}

impl NodeKind {
    pub fn premises(&self) -> Option<(LineId, LineId)> {
        match *self {
            NodeKind::Cut { a, b, .. } | NodeKind::SubCut { a, b, .. } => Some((a, b)),
            _ => None,
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, NodeKind::Leaf(_) | NodeKind::Axiom(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeNode {
    pub id: LineId,
    pub kind: NodeKind,
}

/// A tree-like Res(l) proof. The root is the node with the highest id.
/// Line contents are not stored; they are recomputed from the formula.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDnfProof {
    pub term_bound: usize,
    pub nodes: Vec<TreeNode>,
}

impl TreeDnfProof {
    pub fn new(term_bound: usize, nodes: Vec<TreeNode>) -> Self {
        TreeDnfProof { term_bound, nodes }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root(&self) -> Option<&TreeNode> {
        self.nodes.last()
    }

    pub fn index_of(&self, id: LineId) -> Option<usize> {
        self.nodes.binary_search_by_key(&id, |n| n.id).ok()
    }

    pub fn node(&self, id: LineId) -> Option<&TreeNode> {
        self.index_of(id).map(|i| &self.nodes[i])
    }

    pub fn leaves(&self) -> usize {
        self.nodes.iter().filter(|n| n.kind.is_leaf()).count()
    }

    pub fn has_subset_cuts(&self) -> bool {
        self.nodes.iter().any(|n| matches!(n.kind, NodeKind::SubCut { .. }))
    }

    /// Leaf counts of every node's subtree, indexed like `nodes`.
    pub fn subtree_leaves(&self) -> Vec<usize> {
        let mut count = vec![0usize; self.nodes.len()];
        for (i, node) in self.nodes.iter().enumerate() {
            count[i] = match node.kind.premises() {
                None => 1,
                Some((a, b)) => {
                    [a, b].iter().filter_map(|&p| self.index_of(p).filter(|&j| j < i)).map(|j| count[j]).sum()
                }
            };
        }
        count
    }

    /// Recomputes every line leniently (missing terms are ignored, bad clause
    /// indices yield empty lines). Use the checker to validate.
    pub fn lines_lenient(&self, f: &Cnf) -> Vec<DnfLine> {
        let mut lines: Vec<DnfLine> = Vec::with_capacity(self.nodes.len());
        for (i, node) in self.nodes.iter().enumerate() {
            let line = match &node.kind {
                NodeKind::Leaf(c) => f.clause(*c).map(DnfLine::from_clause).unwrap_or_default(),
                NodeKind::Axiom(t) => DnfLine::axiom(t),
                NodeKind::Cut { a, b, term } | NodeKind::SubCut { a, b, term, .. } => {
                    let kept = match &node.kind {
                        NodeKind::SubCut { kept, .. } => kept,
                        _ => term,
                    };
                    let get = |p: LineId| self.index_of(p).filter(|&j| j < i).map(|j| &lines[j]);
                    let mut out = get(*a).cloned().unwrap_or_default();
                    out.remove(term);
                    if let Some(lb) = get(*b) {
                        let mut rest = lb.clone();
                        for l in kept.iter() {
                            rest.remove(&Term::singleton(l.negate()));
                        }
                        out.union_with(&rest);
                    }
                    out
                }
            };
            lines.push(line);
        }
        lines
    }

    /// Structural statistics; `term_occurrences` and an exact term width need
    /// the formula and are only filled in when `f` is given.
    pub fn stats(&self, f: Option<&Cnf>) -> ProofStats {
        let mut depth = vec![0usize; self.nodes.len()];
        for (i, node) in self.nodes.iter().enumerate() {
            if let Some((a, b)) = node.kind.premises() {
                depth[i] = [a, b]
                    .iter()
                    .filter_map(|&p| self.index_of(p).filter(|&j| j < i))
                    .map(|j| depth[j] + 1)
                    .max()
                    .unwrap_or(0);
            }
        }
        let (width, term_occurrences) = match f {
            Some(f) => {
                let lines = self.lines_lenient(f);
                (
                    lines.iter().map(DnfLine::max_term_width).max().unwrap_or(0),
                    Some(lines.iter().map(DnfLine::len).sum()),
                )
            }
            None => {
                let width = self
                    .nodes
                    .iter()
                    .map(|n| match &n.kind {
                        NodeKind::Leaf(_) => 1,
                        NodeKind::Axiom(t)
                        | NodeKind::Cut { term: t, .. }
                        | NodeKind::SubCut { term: t, .. } => t.len(),
                    })
                    .max()
                    .unwrap_or(0);
                (width, None)
            }
        };
        ProofStats {
            lines: self.nodes.len(),
            leaves: self.leaves(),
            width,
            depth: depth.last().copied().unwrap_or(0),
            term_occurrences,
        }
    }

    /// The subtree rooted at node `id`, renumbered from 1.
    pub fn subproof(&self, id: LineId) -> Option<TreeDnfProof> {
        let root = self.index_of(id)?;
        Some(TreeDnfProof::compact(self.term_bound, &self.positional_kinds(), root))
    }

    /// Node kinds with premises rewritten to positions in `nodes`.
    pub(crate) fn positional_kinds(&self) -> Vec<NodeKind> {
        let pos = |id: LineId| self.index_of(id).expect("premises exist") as LineId;
        self.nodes
            .iter()
            .map(|n| match &n.kind {
                NodeKind::Cut { a, b, term } => NodeKind::Cut { a: pos(*a), b: pos(*b), term: term.clone() },
                NodeKind::SubCut { a, b, term, kept } => {
                    NodeKind::SubCut { a: pos(*a), b: pos(*b), term: term.clone(), kept: kept.clone() }
                }
                other => other.clone(),
            })
            .collect()
    }

    /// Keeps only the subtree under `root_index` and renumbers ids from 1.
    pub(crate) fn compact(term_bound: usize, nodes: &[NodeKind], root_index: usize) -> TreeDnfProof {
        let mut keep = vec![false; nodes.len()];
        keep[root_index] = true;
        for i in (0..=root_index).rev() {
            if keep[i] {
                if let Some((a, b)) = nodes[i].premises() {
                    keep[a as usize] = true;
                    keep[b as usize] = true;
                }
            }
        }
        let mut new_id: HashMap<usize, LineId> = HashMap::new();
        let mut out = Vec::new();
        for (i, kind) in nodes.iter().enumerate().take(root_index + 1) {
            if !keep[i] {
                continue;
            }
            let id = out.len() as LineId + 1;
            new_id.insert(i, id);
            let kind = match kind {
                NodeKind::Cut { a, b, term } => {
                    NodeKind::Cut { a: new_id[&(*a as usize)], b: new_id[&(*b as usize)], term: term.clone() }
                }
                NodeKind::SubCut { a, b, term, kept } => NodeKind::SubCut {
                    a: new_id[&(*a as usize)],
                    b: new_id[&(*b as usize)],
                    term: term.clone(),
                    kept: kept.clone(),
                },
                other => other.clone(),
            };
            out.push(TreeNode { id, kind });
        }
        TreeDnfProof::new(term_bound, out)
    }
}

/// Size measures shared by both proof kinds. `width` is the clause width for
/// Resolution proofs and the term width for tree proofs; `term_occurrences`
/// counts literal occurrences (Resolution) or terms summed over all lines
/// (tree proofs).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofStats {
    pub lines: usize,
    pub leaves: usize,
    pub width: usize,
    pub depth: usize,
    pub term_occurrences: Option<usize>,
}
