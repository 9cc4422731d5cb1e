//! Text formats: DIMACS CNF, the `RES` Resolution proof format and the
//! `DNFT` tree-like DNF proof format.
//!
//! ```text
//! RES   <id> i <lit>* 0 | <id> r <a> <b> <pivot> <lit>* 0 | <id> w <a> <lit>* 0
//! DNFT  p dnft <l>
//!       <id> L <clause> | <id> A <lit>* 0 | <id> C <a> <b> <lit>* 0
//!       <id> S <a> <b> <lit>* 0 <lit>* 0      (subset cut: term, then kept part)
//! ```
//!
//! Lines starting with `c` are comments. Serialization is canonical: sorted
//! literals, single spaces, one node per line, trailing newline.

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::logic::{Clause, Cnf, Literal, Term, Var};
use crate::proof::{LineId, NodeKind, ResLine, ResProof, ResRule, TreeDnfProof, TreeNode};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing header line")]
    MissingHeader,
    #[error("malformed header")]
    BadHeader,
    #[error("header mismatch: {0}")]
    HeaderMismatch(String),
    #[error("unexpected token `{0}`")]
    BadToken(String),
    #[error("line is not terminated by 0")]
    ZeroMissing,
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("premise {0} does not precede its use")]
    ForwardReference(LineId),
    #[error("premise {0} does not exist")]
    UnknownPremise(LineId),
    #[error("id {0} is not greater than the previous id")]
    NonMonotoneId(LineId),
    #[error("node {0} is used as a premise more than once")]
    ReusedPremise(LineId),
    #[error("proof has no nodes")]
    MissingRoot,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    /// 1-based line number in the input text; 0 for whole-file errors.
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ParseWarning {
    /// A clause listed the same literal twice; the copies were merged.
    DuplicateLiteral { clause: usize, line: usize },
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines { inner: text.lines().enumerate() }
    }
}

impl<'a> Iterator for Lines<'a> {
    type Item = (usize, Vec<&'a str>);

    /// Next non-blank, non-comment line as `(line number, tokens)`.
    fn next(&mut self) -> Option<Self::Item> {
        for (i, raw) in self.inner.by_ref() {
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('c') || trimmed.starts_with('%') {
                continue;
            }
            return Some((i + 1, trimmed.split_whitespace().collect()));
        }
        None
    }
}

fn parse_num<T: std::str::FromStr>(line: usize, tok: &str) -> Result<T, ParseError> {
    tok.parse().map_err(|_| err(line, ParseErrorKind::BadToken(tok.to_string())))
}

fn parse_id(line: usize, tok: &str) -> Result<LineId, ParseError> {
    let id: LineId = parse_num(line, tok)?;
    if id == 0 {
        return Err(err(line, ParseErrorKind::BadToken(tok.to_string())));
    }
    Ok(id)
}

/// Reads literals up to a terminating 0; returns them and the rest.
fn take_lits<'t>(line: usize, toks: &'t [&'t str]) -> Result<(Vec<Literal>, &'t [&'t str]), ParseError> {
    let mut lits = Vec::new();
    for (i, tok) in toks.iter().enumerate() {
        let v: i32 = parse_num(line, tok)?;
        if v == 0 {
            return Ok((lits, &toks[i + 1..]));
        }
        lits.push(Literal::new(v));
    }
    Err(err(line, ParseErrorKind::ZeroMissing))
}

fn lits_only(line: usize, toks: &[&str]) -> Result<Vec<Literal>, ParseError> {
    let (lits, rest) = take_lits(line, toks)?;
    if let Some(tok) = rest.first() {
        return Err(err(line, ParseErrorKind::BadToken(tok.to_string())));
    }
    Ok(lits)
}

pub fn parse_dimacs(text: &str) -> Result<Cnf, ParseError> {
    parse_dimacs_with_warnings(text).map(|(cnf, _)| cnf)
}

pub fn parse_dimacs_with_warnings(text: &str) -> Result<(Cnf, Vec<ParseWarning>), ParseError> {
    let mut lines = Lines::new(text);
    let (hline, header) = lines.next().ok_or(err(0, ParseErrorKind::MissingHeader))?;
    if header.len() != 4 || header[0] != "p" || header[1] != "cnf" {
        return Err(err(hline, ParseErrorKind::BadHeader));
    }
    let num_vars: Var = parse_num(hline, header[2])?;
    let num_clauses: usize = parse_num(hline, header[3])?;

    let mut clauses = Vec::new();
    let mut warnings = Vec::new();
    let mut pending: Vec<Literal> = Vec::new();
    let mut last_line = hline;
    for (lno, toks) in lines {
        last_line = lno;
        for tok in toks {
            let v: i32 = parse_num(lno, tok)?;
            if v == 0 {
                let (clause, dup) = Clause::with_duplicates(pending.drain(..));
                if dup {
                    warnings.push(ParseWarning::DuplicateLiteral { clause: clauses.len() + 1, line: lno });
                }
                if clause.max_var() > num_vars {
                    return Err(err(
                        lno,
                        ParseErrorKind::HeaderMismatch(format!(
                            "variable {} exceeds declared {num_vars}",
                            clause.max_var()
                        )),
                    ));
                }
                clauses.push(clause);
            } else {
                pending.push(Literal::new(v));
            }
        }
    }
    if !pending.is_empty() {
        return Err(err(last_line, ParseErrorKind::ZeroMissing));
    }
    if clauses.len() != num_clauses {
        return Err(err(
            hline,
            ParseErrorKind::HeaderMismatch(format!(
                "declared {num_clauses} clauses, found {}",
                clauses.len()
            )),
        ));
    }
    let cnf = Cnf::new(num_vars, clauses).expect("variable range checked while parsing");
    Ok((cnf, warnings))
}

fn push_lits<'a>(out: &mut String, lits: impl IntoIterator<Item = &'a Literal>) {
    for lit in lits {
        let _ = write!(out, " {lit}");
    }
}

pub fn serialize_dimacs(f: &Cnf) -> String {
    let mut out = format!("p cnf {} {}\n", f.num_vars(), f.num_clauses());
    for c in f.clauses() {
        let mut line = String::new();
        push_lits(&mut line, c.literals());
        out.push_str(line.trim_start());
        out.push_str(if c.is_empty() { "0\n" } else { " 0\n" });
    }
    out
}

pub fn parse_res_proof(text: &str) -> Result<ResProof, ParseError> {
    let mut lines: Vec<ResLine> = Vec::new();
    let mut ids = HashSet::new();
    for (lno, toks) in Lines::new(text) {
        if toks.len() < 2 {
            return Err(err(lno, ParseErrorKind::ZeroMissing));
        }
        let id = parse_id(lno, toks[0])?;
        if let Some(prev) = lines.last() {
            if id <= prev.id {
                return Err(err(lno, ParseErrorKind::NonMonotoneId(id)));
            }
        }
        let premise = |tok: &str| -> Result<LineId, ParseError> {
            let p = parse_id(lno, tok)?;
            if p >= id {
                Err(err(lno, ParseErrorKind::ForwardReference(p)))
            } else if !ids.contains(&p) {
                Err(err(lno, ParseErrorKind::UnknownPremise(p)))
            } else {
                Ok(p)
            }
        };
        let need = |n: usize| -> Result<(), ParseError> {
            if toks.len() < n {
                Err(err(lno, ParseErrorKind::ZeroMissing))
            } else {
                Ok(())
            }
        };
        let (rule, lits) = match toks[1] {
            "i" => (ResRule::Initial, lits_only(lno, &toks[2..])?),
            "r" => {
                need(6)?;
                let a = premise(toks[2])?;
                let b = premise(toks[3])?;
                let pivot: Var = parse_num(lno, toks[4])?;
                if pivot == 0 {
                    return Err(err(lno, ParseErrorKind::BadToken(toks[4].to_string())));
                }
                (ResRule::Resolve { a, b, pivot }, lits_only(lno, &toks[5..])?)
            }
            "w" => {
                need(4)?;
                let a = premise(toks[2])?;
                (ResRule::Weaken { a }, lits_only(lno, &toks[3..])?)
            }
            other => return Err(err(lno, ParseErrorKind::UnknownRule(other.to_string()))),
        };
        ids.insert(id);
        lines.push(ResLine { id, rule, clause: Clause::new(lits) });
    }
    Ok(ResProof::new(lines))
}

pub fn serialize_res_proof(p: &ResProof) -> String {
    let mut out = String::new();
    for line in &p.lines {
        let _ = match line.rule {
            ResRule::Initial => write!(out, "{} i", line.id),
            ResRule::Resolve { a, b, pivot } => write!(out, "{} r {a} {b} {pivot}", line.id),
            ResRule::Weaken { a } => write!(out, "{} w {a}", line.id),
        };
        push_lits(&mut out, line.clause.literals());
        out.push_str(" 0\n");
    }
    out
}

pub fn parse_dnf_proof(text: &str) -> Result<TreeDnfProof, ParseError> {
    let mut lines = Lines::new(text);
    let (hline, header) = lines.next().ok_or(err(0, ParseErrorKind::MissingHeader))?;
    if header.len() != 3 || header[0] != "p" || header[1] != "dnft" {
        return Err(err(hline, ParseErrorKind::BadHeader));
    }
    let term_bound: usize = parse_num(hline, header[2])?;

    let mut nodes: Vec<TreeNode> = Vec::new();
    let mut ids = HashSet::new();
    let mut used = HashSet::new();
    for (lno, toks) in lines {
        if toks.len() < 2 {
            return Err(err(lno, ParseErrorKind::ZeroMissing));
        }
        let id = parse_id(lno, toks[0])?;
        if let Some(prev) = nodes.last() {
            if id <= prev.id {
                return Err(err(lno, ParseErrorKind::NonMonotoneId(id)));
            }
        }
        let mut premise = |tok: &str| -> Result<LineId, ParseError> {
            let p = parse_id(lno, tok)?;
            if p >= id {
                return Err(err(lno, ParseErrorKind::ForwardReference(p)));
            }
            if !ids.contains(&p) {
                return Err(err(lno, ParseErrorKind::UnknownPremise(p)));
            }
            if !used.insert(p) {
                return Err(err(lno, ParseErrorKind::ReusedPremise(p)));
            }
            Ok(p)
        };
        let kind = match toks[1] {
            "L" => {
                if toks.len() != 3 {
                    return Err(err(lno, ParseErrorKind::BadToken(toks.get(3).unwrap_or(&"").to_string())));
                }
                let idx: usize = parse_num(lno, toks[2])?;
                NodeKind::Leaf(idx)
            }
            "A" => NodeKind::Axiom(Term::new(lits_only(lno, &toks[2..])?)),
            "C" | "S" => {
                if toks.len() < 5 {
                    return Err(err(lno, ParseErrorKind::ZeroMissing));
                }
                let a = premise(toks[2])?;
                let b = premise(toks[3])?;
                if toks[1] == "C" {
                    NodeKind::Cut { a, b, term: Term::new(lits_only(lno, &toks[4..])?) }
                } else {
                    let (term, rest) = take_lits(lno, &toks[4..])?;
                    let kept = lits_only(lno, rest)?;
                    NodeKind::SubCut { a, b, term: Term::new(term), kept: Term::new(kept) }
                }
            }
            other => return Err(err(lno, ParseErrorKind::UnknownRule(other.to_string()))),
        };
        ids.insert(id);
        nodes.push(TreeNode { id, kind });
    }
    if nodes.is_empty() {
        return Err(err(0, ParseErrorKind::MissingRoot));
    }
    Ok(TreeDnfProof::new(term_bound, nodes))
}

pub fn serialize_dnf_proof(p: &TreeDnfProof) -> String {
    let mut out = format!("p dnft {}\n", p.term_bound);
    for node in &p.nodes {
        let _ = match &node.kind {
            NodeKind::Leaf(c) => writeln!(out, "{} L {c}", node.id),
            NodeKind::Axiom(t) => {
                let _ = write!(out, "{} A", node.id);
                push_lits(&mut out, t.literals());
                writeln!(out, " 0")
            }
            NodeKind::Cut { a, b, term } => {
                let _ = write!(out, "{} C {a} {b}", node.id);
                push_lits(&mut out, term.literals());
                writeln!(out, " 0")
            }
            NodeKind::SubCut { a, b, term, kept } => {
                let _ = write!(out, "{} S {a} {b}", node.id);
                push_lits(&mut out, term.literals());
                out.push_str(" 0");
                push_lits(&mut out, kept.literals());
                writeln!(out, " 0")
            }
        };
    }
    out
}
