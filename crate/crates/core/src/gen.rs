//! Formula families and a width-bounded saturation prover.

use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::logic::{Clause, Cnf, Literal, Var};
use crate::proof::{LineId, ResLine, ResProof, ResRule};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("parameter `{0}` must be positive")]
    ZeroParameter(&'static str),
    #[error("clause width {width} exceeds the number of variables {vars}")]
    WidthExceedsVars { width: usize, vars: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilySpec {
    Php { pigeons: u32, holes: u32 },
    Chain { length: u32 },
    RandK { vars: u32, clauses: usize, width: usize, seed: u64 },
}

impl FamilySpec {
    pub fn generate(&self) -> Result<Cnf, GenError> {
        match *self {
            FamilySpec::Php { pigeons, holes } => gen_php(pigeons, holes),
            FamilySpec::Chain { length } => gen_chain(length),
            FamilySpec::RandK { vars, clauses, width, seed } => gen_randk(vars, clauses, width, seed),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Php { pigeons, holes } => write!(f, "php({pigeons},{holes})"),
            FamilySpec::Chain { length } => write!(f, "chain({length})"),
            FamilySpec::RandK { vars, clauses, width, seed } => {
                write!(f, "randk({vars},{clauses},{width},seed={seed})")
            }
        }
    }
}

/// Pigeonhole principle: `pigeons` pigeons into `holes` holes. Variable
/// `x_{i,j}` (pigeon i sits in hole j) is numbered `(i-1)·holes + j`.
pub fn gen_php(pigeons: u32, holes: u32) -> Result<Cnf, GenError> {
    if pigeons == 0 {
        return Err(GenError::ZeroParameter("pigeons"));
    }
    if holes == 0 {
        return Err(GenError::ZeroParameter("holes"));
    }
    let var = |i: u32, j: u32| Literal::positive((i - 1) * holes + j);
    let mut clauses = Vec::new();
    for i in 1..=pigeons {
        clauses.push(Clause::new((1..=holes).map(|j| var(i, j))));
    }
    for j in 1..=holes {
        for i in 1..=pigeons {
            for i2 in i + 1..=pigeons {
                clauses.push(Clause::new([var(i, j).negate(), var(i2, j).negate()]));
            }
        }
    }
    Ok(Cnf::new(pigeons * holes, clauses).expect("variables are in range"))
}

/// `(x1) ∧ (¬x1 ∨ x2) ∧ … ∧ (¬x_{q-1} ∨ x_q) ∧ (¬x_q)`.
pub fn gen_chain(length: u32) -> Result<Cnf, GenError> {
    if length == 0 {
        return Err(GenError::ZeroParameter("length"));
    }
    let mut clauses = vec![Clause::new([Literal::positive(1)])];
    for i in 1..length {
        clauses.push(Clause::new([Literal::negative(i), Literal::positive(i + 1)]));
    }
    clauses.push(Clause::new([Literal::negative(length)]));
    Ok(Cnf::new(length, clauses).expect("variables are in range"))
}

/// `clauses` random clauses of exactly `width` distinct variables each, with
/// uniformly random polarities, drawn from a ChaCha8 stream seeded by `seed`.
pub fn gen_randk(vars: u32, clauses: usize, width: usize, seed: u64) -> Result<Cnf, GenError> {
    if vars == 0 {
        return Err(GenError::ZeroParameter("vars"));
    }
    if width == 0 {
        return Err(GenError::ZeroParameter("width"));
    }
    if width > vars as usize {
        return Err(GenError::WidthExceedsVars { width, vars });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool: Vec<Var> = (1..=vars).collect();
    let mut out = Vec::with_capacity(clauses);
    for _ in 0..clauses {
        // partial Fisher-Yates over a fresh identity permutation
        for (k, v) in pool.iter_mut().enumerate() {
            *v = k as Var + 1;
        }
        let mut lits = Vec::with_capacity(width);
        for k in 0..width {
            let pick = rng.gen_range(k..pool.len());
            pool.swap(k, pick);
            lits.push(Literal::from_var(pool[k], rng.gen::<bool>()));
        }
        out.push(Clause::new(lits));
    }
    Ok(Cnf::new(vars, out).expect("variables are in range"))
}

/// The reference corpus: `chain(1..=8)`, `php(n+1, n)` for `n = 1..=3`, and
/// the first ten `randk(4, 30, 3, seed)` instances, scanning seeds from 1,
/// that the truth table confirms unsatisfiable.
pub fn standard_corpus() -> Vec<FamilySpec> {
    let mut out: Vec<FamilySpec> = (1..=8).map(|length| FamilySpec::Chain { length }).collect();
    out.extend((1..=3).map(|n| FamilySpec::Php { pigeons: n + 1, holes: n }));
    let mut found = 0;
    for seed in 1.. {
        let spec = FamilySpec::RandK { vars: 4, clauses: 30, width: 3, seed };
        if spec.generate().expect("valid parameters").is_unsatisfiable_by_truth_table() {
            out.push(spec);
            found += 1;
            if found == 10 {
                break;
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("no refutation with derived clauses of width at most {0}")]
pub struct NoRefutationWithinWidth(pub usize);

#[derive(Debug, Clone, Copy)]
enum Origin {
    Initial,
    Resolved { a: usize, b: usize, pivot: Var },
}

#[derive(Debug)]
struct Database {
    clauses: Vec<(Clause, Origin)>,
    index: HashMap<Clause, usize>,
    occurrences: HashMap<Literal, Vec<usize>>,
}

impl Database {
    fn insert(&mut self, clause: Clause, origin: Origin) -> usize {
        let i = self.clauses.len();
        for lit in clause.iter() {
            self.occurrences.entry(lit).or_default().push(i);
        }
        self.index.insert(clause.clone(), i);
        self.clauses.push((clause, origin));
        i
    }

    fn extract(&self, goal: usize) -> ResProof {
        let mut keep = vec![false; self.clauses.len()];
        keep[goal] = true;
        for i in (0..=goal).rev() {
            if let (true, Origin::Resolved { a, b, .. }) = (keep[i], self.clauses[i].1) {
                keep[a] = true;
                keep[b] = true;
            }
        }
        let order: Vec<usize> = (0..=goal)
            .filter(|&i| keep[i] && matches!(self.clauses[i].1, Origin::Initial))
            .chain((0..=goal).filter(|&i| keep[i] && matches!(self.clauses[i].1, Origin::Resolved { .. })))
            .collect();
        let mut id_of = HashMap::new();
        let mut lines = Vec::with_capacity(order.len());
        for i in order {
            let id = lines.len() as LineId + 1;
            id_of.insert(i, id);
            let rule = match self.clauses[i].1 {
                Origin::Initial => ResRule::Initial,
                Origin::Resolved { a, b, pivot } => ResRule::Resolve { a: id_of[&a], b: id_of[&b], pivot },
            };
            lines.push(ResLine { id, rule, clause: self.clauses[i].0.clone() });
        }
        ResProof::new(lines)
    }
}

/// Saturates `f` under resolution, keeping derived clauses of width at most
/// `max_width` (initial clauses are admitted at any width, tautologies are
/// dropped). Each round adds every new resolvent in canonical clause order,
/// so the output is reproducible. Returns the cone of the empty clause with
/// initial lines first.
pub fn prove_bounded(f: &Cnf, max_width: usize) -> Result<ResProof, NoRefutationWithinWidth> {
    let mut db = Database { clauses: Vec::new(), index: HashMap::new(), occurrences: HashMap::new() };
    let mut frontier = Vec::new();
    for c in f.clauses() {
        if c.is_tautology() || db.index.contains_key(c) {
            continue;
        }
        let i = db.insert(c.clone(), Origin::Initial);
        if c.is_empty() {
            return Ok(db.extract(i));
        }
        frontier.push(i);
    }

    loop {
        let mut candidates: Vec<(Clause, usize, usize, Var)> = Vec::new();
        for &i in &frontier {
            let ci = &db.clauses[i].0;
            for lit in ci.iter() {
                let Some(partners) = db.occurrences.get(&lit.negate()) else {
                    continue;
                };
                for &j in partners {
                    let cj = &db.clauses[j].0;
                    let resolvent = ci.without(lit).union(&cj.without(lit.negate()));
                    if resolvent.len() > max_width
                        || resolvent.is_tautology()
                        || db.index.contains_key(&resolvent)
                    {
                        continue;
                    }
                    candidates.push((resolvent, i.min(j), i.max(j), lit.var()));
                }
            }
        }
        if candidates.is_empty() {
            return Err(NoRefutationWithinWidth(max_width));
        }
        candidates.sort();
        candidates.dedup_by(|x, y| x.0 == y.0);
        frontier.clear();
        for (clause, a, b, pivot) in candidates {
            let empty = clause.is_empty();
            let i = db.insert(clause, Origin::Resolved { a, b, pivot });
            if empty {
                return Ok(db.extract(i));
            }
            frontier.push(i);
        }
    }
}

/// Runs [`prove_bounded`] with budgets `0, 1, …, limit` and returns the first
/// success together with the budget that produced it.
pub fn prove_min_width(f: &Cnf, limit: usize) -> Option<(usize, ResProof)> {
    (0..=limit).find_map(|w| prove_bounded(f, w).ok().map(|p| (w, p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checker::check_res;
    use crate::formats::serialize_dimacs;

    #[test]
    fn php_counts() {
        let f = gen_php(2, 1).unwrap();
        assert_eq!((f.num_vars(), f.num_clauses()), (2, 3));
        assert_eq!(f.clauses()[2], Clause::from_ints(&[-1, -2]));
        let f = gen_php(3, 2).unwrap();
        assert_eq!((f.num_vars(), f.num_clauses(), f.width()), (6, 9, 2));
        assert!(gen_php(0, 1).is_err());
    }

    #[test]
    fn chain_shape() {
        let f = gen_chain(1).unwrap();
        assert_eq!(f.clauses(), &[Clause::from_ints(&[1]), Clause::from_ints(&[-1])]);
        let f = gen_chain(3).unwrap();
        assert_eq!((f.num_vars(), f.num_clauses(), f.width()), (3, 4, 2));
    }

    #[test]
    fn randk_is_reproducible() {
        let a = serialize_dimacs(&gen_randk(4, 20, 3, 1).unwrap());
        let b = serialize_dimacs(&gen_randk(4, 20, 3, 1).unwrap());
        assert_eq!(a, b);
        assert_ne!(a, serialize_dimacs(&gen_randk(4, 20, 3, 2).unwrap()));
        let f = gen_randk(4, 20, 3, 1).unwrap();
        assert!(f.clauses().iter().all(|c| c.len() == 3));
        assert_eq!(gen_randk(2, 1, 3, 1), Err(GenError::WidthExceedsVars { width: 3, vars: 2 }));
    }

    #[test]
    fn corpus_members_are_unsatisfiable() {
        let corpus = standard_corpus();
        assert_eq!(corpus.len(), 21);
        for spec in &corpus {
            assert!(spec.generate().unwrap().is_unsatisfiable_by_truth_table(), "{spec}");
        }
        assert!(!gen_php(2, 2).unwrap().is_unsatisfiable_by_truth_table());
        assert!(gen_php(3, 2).unwrap().is_unsatisfiable_by_truth_table());
    }

    #[test]
    fn prover_examples() {
        let f = gen_chain(3).unwrap();
        let p = prove_bounded(&f, 2).unwrap();
        assert!(check_res(&f, &p, Some(2)).valid);
        assert!(p.width() <= 2);

        let f = gen_chain(1).unwrap();
        let p = prove_bounded(&f, 0).unwrap();
        assert_eq!(crate::formats::serialize_res_proof(&p), "1 i 1 0\n2 i -1 0\n3 r 1 2 1 0\n");

        let f = Cnf::from_clauses(vec![Clause::from_ints(&[1, 2])]);
        assert_eq!(prove_bounded(&f, 5), Err(NoRefutationWithinWidth(5)));
    }

    #[test]
    fn wide_initial_clauses_are_admitted() {
        let f = gen_php(3, 2).unwrap();
        let (w, p) = prove_min_width(&f, 6).unwrap();
        assert!(check_res(&f, &p, Some(w)).valid);
        assert!(prove_bounded(&f, w + 1).is_ok());
    }
}
