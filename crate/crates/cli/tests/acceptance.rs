//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use reswidth_core::checker::check_tree_lines;
use reswidth_core::gen::standard_corpus;
use reswidth_core::*;

struct Item {
    spec: FamilySpec,
    f: Cnf,
    min_width: usize,
    p: ResProof,
    tree: TreeDnfProof,
}

type Verdict = Result<String, String>;

fn narrow_bound(f: &Cnf, p: &TreeDnfProof) -> usize {
    NarrowBudget { term_bound: p.term_bound, formula_width: f.width(), leaves: p.leaves() }.width()
}

fn expand_bounds(f: &Cnf, p: &ResProof, tree: &TreeDnfProof) -> Result<(), String> {
    let report = check_tree_dnf(f, tree);
    if !report.valid {
        return Err(format!("invalid tree proof: {report}"));
    }
    let (s, m, w) = (p.len(), f.num_clauses(), p.width());
    if report.stats.width > w.max(1) {
        return Err(format!("term width {} > max({w},1)", report.stats.width));
    }
    if tree.len() > 4 * s + 2 * m + 1 {
        return Err(format!("{} nodes > 4S+2m+1 = {}", tree.len(), 4 * s + 2 * m + 1));
    }
    let terms = report.stats.term_occurrences.unwrap_or(usize::MAX);
    if terms > s * (s + 2 * w + 2) {
        return Err(format!("{terms} term occurrences > S(S+2w+2) = {}", s * (s + 2 * w + 2)));
    }
    Ok(())
}

fn criterion_1(corpus: &mut Vec<Item>) -> Verdict {
    let start = Instant::now();
    for spec in standard_corpus() {
        let f = spec.generate().map_err(|e| e.to_string())?;
        let (min_width, p) = prove_min_width(&f, 8).ok_or(format!("{spec}: prover failed"))?;
        let tree = expand(&f, &p).map_err(|e| format!("{spec}: {e}"))?;
        expand_bounds(&f, &p, &tree).map_err(|e| format!("{spec}: {e}"))?;
        corpus.push(Item { spec, f, min_width, p, tree });
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(10) {
        return Err(format!("runtime {elapsed:.2?} >= 10s"));
    }
    let nodes: usize = corpus.iter().map(|i| i.tree.len()).sum();
    Ok(format!("{} refutations, {nodes} tree nodes in total, {elapsed:.2?}", corpus.len()))
}

fn criterion_2(corpus: &[Item]) -> Verdict {
    let start = Instant::now();
    let mut growth = Vec::new();
    for item in corpus {
        let q = narrow(&item.f, &item.tree).map_err(|e| format!("{}: {e}", item.spec))?;
        let report = check_res(&item.f, &q, None);
        if !report.valid {
            return Err(format!("{}: {report}", item.spec));
        }
        let bound = narrow_bound(&item.f, &item.tree);
        if q.width() > bound {
            return Err(format!("{}: width {} > {bound}", item.spec, q.width()));
        }
        growth.push(format!("L={}→{}", item.tree.leaves(), q.len()));
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(60) {
        return Err(format!("runtime {elapsed:.2?} >= 60s"));
    }
    let largest = corpus.iter().max_by_key(|i| i.tree.leaves()).map(|i| i.spec.to_string());
    Ok(format!(
        "{} refutations within bound, {elapsed:.2?}; leaves→lines {} (largest {})",
        corpus.len(),
        growth.join(" "),
        largest.unwrap_or_default()
    ))
}

fn criterion_3(corpus: &[Item]) -> Verdict {
    for item in corpus {
        let q = narrow(&item.f, &item.tree).map_err(|e| format!("{}: {e}", item.spec))?;
        if !check_res(&item.f, &q, None).valid {
            return Err(format!("{}: narrow∘expand is invalid", item.spec));
        }
        let again = expand(&item.f, &q).map_err(|e| format!("{}: {e}", item.spec))?;
        expand_bounds(&item.f, &q, &again).map_err(|e| format!("{}: second expand: {e}", item.spec))?;
    }
    Ok(format!("{} round trips", corpus.len()))
}

// ---------------------------------------------------------------------------
// independent reference rules, used to recognise mutants that are still proofs

type Set = BTreeSet<i32>;

fn set(c: &Clause) -> Set {
    c.iter().map(|l| l.value()).collect()
}

fn tset(t: &Term) -> Set {
    t.iter().map(|l| l.value()).collect()
}

fn reference_res(f: &Cnf, p: &ResProof) -> bool {
    let initial: HashSet<Set> = f.clauses().iter().map(set).collect();
    let mut seen: HashMap<LineId, Set> = HashMap::new();
    let mut last = 0;
    for line in &p.lines {
        if line.id <= last {
            return false;
        }
        last = line.id;
        let c = set(&line.clause);
        let ok = match line.rule {
            ResRule::Initial => initial.contains(&c),
            ResRule::Weaken { a } => seen.get(&a).is_some_and(|ca| ca.is_subset(&c)),
            ResRule::Resolve { a, b, pivot } => match (seen.get(&a), seen.get(&b)) {
                (Some(ca), Some(cb)) => {
                    let x = pivot as i32;
                    let both = |s: &Set| s.contains(&x) && s.contains(&-x);
                    let (pos, neg) = if ca.contains(&x) && cb.contains(&-x) {
                        (ca, cb)
                    } else if ca.contains(&-x) && cb.contains(&x) {
                        (cb, ca)
                    } else {
                        return false;
                    };
                    let r: Set = pos
                        .iter()
                        .filter(|&&l| l != x)
                        .chain(neg.iter().filter(|&&l| l != -x))
                        .copied()
                        .collect();
                    !both(ca) && !both(cb) && r == c
                }
                _ => false,
            },
        };
        if !ok {
            return false;
        }
        seen.insert(line.id, c);
    }
    p.lines.last().is_some_and(|l| l.clause.is_empty())
}

fn reference_tree(f: &Cnf, p: &TreeDnfProof) -> bool {
    let l = p.term_bound;
    let term_ok = |t: &Set| !t.is_empty() && t.len() <= l && t.iter().all(|x| !t.contains(&-x));
    let mut lines: HashMap<LineId, BTreeSet<Set>> = HashMap::new();
    let mut used: HashSet<LineId> = HashSet::new();
    let mut last = 0;
    for node in &p.nodes {
        if node.id <= last {
            return false;
        }
        last = node.id;
        let line: BTreeSet<Set> = match &node.kind {
            NodeKind::Leaf(c) => match f.clause(*c) {
                Some(c) => c.iter().map(|x| Set::from([x.value()])).collect(),
                None => return false,
            },
            NodeKind::Axiom(t) => {
                let t = tset(t);
                if !term_ok(&t) {
                    return false;
                }
                let mut line: BTreeSet<Set> = t.iter().map(|&x| Set::from([-x])).collect();
                line.insert(t);
                line
            }
            NodeKind::Cut { a, b, term } => {
                let t = tset(term);
                if a == b || !term_ok(&t) || used.contains(a) || used.contains(b) {
                    return false;
                }
                let (Some(la), Some(lb)) = (lines.get(a), lines.get(b)) else {
                    return false;
                };
                let singles: BTreeSet<Set> = t.iter().map(|&x| Set::from([-x])).collect();
                if !la.contains(&t) || !singles.is_subset(lb) {
                    return false;
                }
                used.insert(*a);
                used.insert(*b);
                la.iter().filter(|s| **s != t).chain(lb.difference(&singles)).cloned().collect()
            }
            NodeKind::SubCut { .. } => return false,
        };
        lines.insert(node.id, line);
    }
    let Some(root) = p.nodes.last() else {
        return false;
    };
    lines[&root.id].is_empty() && used.len() + 1 == p.nodes.len()
}

// ---------------------------------------------------------------------------
// single-point mutations

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Mutation {
    LiteralFlip,
    PremiseSwap,
    PivotChange,
    CutLiteralDeletion,
}

fn flip(lits: &[Literal], j: usize) -> Vec<Literal> {
    let mut out = lits.to_vec();
    out[j] = out[j].negate();
    out
}

/// Up to three other earlier ids: the first, the one just before, and the middle one.
fn alternatives(ids: &[LineId], i: usize, current: LineId) -> Vec<LineId> {
    let mut alts: Vec<LineId> = [0, i / 2, i.saturating_sub(1)]
        .into_iter()
        .filter(|&k| k < i)
        .map(|k| ids[k])
        .filter(|&id| id != current)
        .collect();
    alts.sort();
    alts.dedup();
    alts
}

fn mutate_res(p: &ResProof) -> Vec<(Mutation, ResProof)> {
    let ids: Vec<LineId> = p.lines.iter().map(|l| l.id).collect();
    let mut out = Vec::new();
    let with = |i: usize, line: ResLine| {
        let mut q = p.clone();
        q.lines[i] = line;
        q
    };
    for (i, line) in p.lines.iter().enumerate() {
        for j in 0..line.clause.len() {
            let clause = Clause::new(flip(line.clause.literals(), j));
            out.push((Mutation::LiteralFlip, with(i, ResLine { clause, ..line.clone() })));
        }
        if let ResRule::Resolve { a, b, pivot } = line.rule {
            for alt in alternatives(&ids, i, a) {
                let rule = ResRule::Resolve { a: alt, b, pivot };
                out.push((Mutation::PremiseSwap, with(i, ResLine { rule, ..line.clone() })));
            }
            for alt in alternatives(&ids, i, b) {
                let rule = ResRule::Resolve { a, b: alt, pivot };
                out.push((Mutation::PremiseSwap, with(i, ResLine { rule, ..line.clone() })));
            }
            let mut pivots: BTreeSet<Var> = line.clause.vars().collect();
            pivots.insert(pivot + 1);
            pivots.remove(&pivot);
            for alt in pivots.into_iter().take(3) {
                let rule = ResRule::Resolve { a, b, pivot: alt };
                out.push((Mutation::PivotChange, with(i, ResLine { rule, ..line.clone() })));
            }
        }
    }
    out
}

fn mutate_tree(p: &TreeDnfProof) -> Vec<(Mutation, TreeDnfProof)> {
    let ids: Vec<LineId> = p.nodes.iter().map(|n| n.id).collect();
    let mut out = Vec::new();
    let with = |i: usize, kind: NodeKind| {
        let mut q = p.clone();
        q.nodes[i].kind = kind;
        q
    };
    for (i, node) in p.nodes.iter().enumerate() {
        match &node.kind {
            NodeKind::Leaf(_) => {}
            NodeKind::Axiom(t) => {
                for j in 0..t.len() {
                    out.push((
                        Mutation::LiteralFlip,
                        with(i, NodeKind::Axiom(Term::new(flip(t.literals(), j)))),
                    ));
                }
            }
            NodeKind::Cut { a, b, term } => {
                let (a, b) = (*a, *b);
                for j in 0..term.len() {
                    let term2 = Term::new(flip(term.literals(), j));
                    out.push((Mutation::LiteralFlip, with(i, NodeKind::Cut { a, b, term: term2 })));
                    let shorter = term.without(term.literals()[j]);
                    out.push((Mutation::CutLiteralDeletion, with(i, NodeKind::Cut { a, b, term: shorter })));
                }
                for alt in alternatives(&ids, i, a) {
                    out.push((
                        Mutation::PremiseSwap,
                        with(i, NodeKind::Cut { a: alt, b, term: term.clone() }),
                    ));
                }
                for alt in alternatives(&ids, i, b) {
                    out.push((
                        Mutation::PremiseSwap,
                        with(i, NodeKind::Cut { a, b: alt, term: term.clone() }),
                    ));
                }
            }
            NodeKind::SubCut { .. } => {}
        }
    }
    out
}

// ---------------------------------------------------------------------------
// truth-table entailment

fn res_entailed(f: &Cnf, p: &ResProof) -> bool {
    let models: Vec<u64> = f.models().collect();
    p.lines.iter().all(|line| models.iter().all(|&m| line.clause.eval_total(|v| m >> (v - 1) & 1 == 1)))
}

fn tree_entailed(f: &Cnf, p: &TreeDnfProof) -> bool {
    let (_, lines) = check_tree_lines(f, p, TreeRules::AllowSubsetCut);
    let models: Vec<u64> = f.models().collect();
    lines.iter().all(|line| models.iter().all(|&m| line.eval_total(|v| m >> (v - 1) & 1 == 1)))
}

/// All unsatisfiable sets of at most six clauses over three variables, one
/// per orbit of variable permutations and sign flips.
fn small_unsat_cnfs() -> Vec<Cnf> {
    // clause code: base-3 digit per variable, 0 absent, 1 positive, 2 negative
    let digits = |c: usize| [c % 3, c / 3 % 3, c / 9 % 3];
    let falsified: Vec<u8> = (0..27)
        .map(|c| {
            let d = digits(c);
            (0..8u8)
                .filter(|&a| {
                    (0..3).all(|v| match d[v] {
                        0 => true,
                        1 => a >> v & 1 == 0,
                        _ => a >> v & 1 == 1,
                    })
                })
                .fold(0u8, |acc, a| acc | 1 << a)
        })
        .collect();
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut maps: Vec<[u8; 27]> = Vec::new();
    for perm in perms {
        for flips in 0..8 {
            let mut map = [0u8; 27];
            for (c, slot) in map.iter_mut().enumerate() {
                let d = digits(c);
                let mut e = [0usize; 3];
                for v in 0..3 {
                    e[perm[v]] = if flips >> v & 1 == 1 && d[v] != 0 { 3 - d[v] } else { d[v] };
                }
                *slot = (e[0] + 3 * e[1] + 9 * e[2]) as u8;
            }
            maps.push(map);
        }
    }

    let mut classes: BTreeSet<Vec<u8>> = BTreeSet::new();
    let mut stack: Vec<(Vec<u8>, u8)> = vec![(Vec::new(), 0)];
    while let Some((set, mask)) = stack.pop() {
        if mask == 0xFF {
            let canonical = maps
                .iter()
                .map(|map| {
                    let mut image: Vec<u8> = set.iter().map(|&c| map[c as usize]).collect();
                    image.sort();
                    image
                })
                .min()
                .unwrap();
            classes.insert(canonical);
        }
        if set.len() < 6 {
            let next = set.last().map_or(0, |&c| c + 1);
            for c in next..27 {
                let mut bigger = set.clone();
                bigger.push(c);
                stack.push((bigger, mask | falsified[c as usize]));
            }
        }
    }
    classes
        .into_iter()
        .map(|set| {
            let clauses = set
                .iter()
                .map(|&c| {
                    let d = digits(c as usize);
                    Clause::new(
                        (0..3).filter(|&v| d[v] != 0).map(|v| Literal::from_var(v as Var + 1, d[v] == 1)),
                    )
                })
                .collect();
            Cnf::new(3, clauses).unwrap()
        })
        .collect()
}

fn criterion_4(corpus: &[Item]) -> Verdict {
    let small = small_unsat_cnfs();
    let mut accepted = 0usize;
    let mut false_accepts = Vec::new();
    let mut audit_res = |f: &Cnf, p: &ResProof, what: &str| {
        if check_res(f, p, None).valid {
            accepted += 1;
            if !res_entailed(f, p) {
                false_accepts.push(what.to_string());
            }
        }
    };
    let mut trees = Vec::new();
    for (k, f) in small.iter().enumerate() {
        let (_, p) = prove_min_width(f, 3).ok_or(format!("no refutation for small formula {k}"))?;
        audit_res(f, &p, "prover output");
        for (_, m) in mutate_res(&p) {
            audit_res(f, &m, "res mutant");
        }
        let tree = expand(f, &p).map_err(|e| e.to_string())?;
        audit_res(f, &narrow(f, &tree).map_err(|e| e.to_string())?, "narrow output");
        trees.push((f, tree));
    }
    for item in corpus {
        audit_res(&item.f, &item.p, "corpus prover output");
        audit_res(&item.f, &narrow(&item.f, &item.tree).map_err(|e| e.to_string())?, "corpus narrow output");
    }
    let mut audit_tree = |f: &Cnf, p: &TreeDnfProof, what: &str| {
        if check_tree_dnf(f, p).valid {
            accepted += 1;
            if !tree_entailed(f, p) {
                false_accepts.push(what.to_string());
            }
        }
    };
    for (f, tree) in &trees {
        audit_tree(f, tree, "expand output");
        for (_, m) in mutate_tree(tree) {
            audit_tree(f, &m, "tree mutant");
        }
    }
    for item in corpus {
        audit_tree(&item.f, &item.tree, "corpus expand output");
    }
    if false_accepts.is_empty() {
        Ok(format!(
            "{} unsatisfiable formula classes on ≤3 variables plus {} corpus formulas; {accepted} accepted proofs, 0 false accepts",
            small.len(),
            corpus.len()
        ))
    } else {
        Err(format!("{} false accepts, first: {}", false_accepts.len(), false_accepts[0]))
    }
}

fn criterion_5(corpus: &[Item]) -> Verdict {
    let mut total: HashMap<Mutation, usize> = HashMap::new();
    let mut equivalent = 0usize;
    let mut missed = Vec::new();
    for item in corpus {
        let q = narrow(&item.f, &item.tree).map_err(|e| e.to_string())?;
        for p in [&item.p, &q] {
            for (kind, m) in mutate_res(p) {
                if reference_res(&item.f, &m) {
                    equivalent += 1;
                    continue;
                }
                *total.entry(kind).or_default() += 1;
                if check_res(&item.f, &m, None).valid {
                    missed.push(format!("{} {kind:?}", item.spec));
                }
            }
        }
        for (kind, m) in mutate_tree(&item.tree) {
            if reference_tree(&item.f, &m) {
                equivalent += 1;
                continue;
            }
            *total.entry(kind).or_default() += 1;
            if check_tree_dnf(&item.f, &m).valid {
                missed.push(format!("{} {kind:?}", item.spec));
            }
        }
    }
    let count: usize = total.values().sum();
    let mut kinds: Vec<_> = total.into_iter().collect();
    kinds.sort();
    let breakdown: Vec<String> = kinds.iter().map(|(k, n)| format!("{k:?}={n}")).collect();
    let per_kind_ok = kinds.len() == 4 && kinds.iter().all(|(_, n)| *n > 0);
    if missed.is_empty() && count >= 200 && per_kind_ok {
        Ok(format!(
            "{count} mutants rejected ({}); {equivalent} equivalent mutants set aside",
            breakdown.join(", ")
        ))
    } else {
        Err(format!(
            "{} of {count} mutants accepted ({}); first: {:?}",
            missed.len(),
            breakdown.join(", "),
            missed.first()
        ))
    }
}

fn criterion_6() -> Verdict {
    let f = Cnf::from_clauses(vec![Clause::from_ints(&[1]), Clause::empty()]);
    let p = parse_dnf_proof("p dnft 1\n1 L 2\n").map_err(|e| e.to_string())?;
    let q = narrow(&f, &p).map_err(|e| e.to_string())?;
    if serialize_res_proof(&q) != "1 i 0\n" {
        return Err(format!("empty-clause case gave {:?}", serialize_res_proof(&q)));
    }

    let f = Cnf::from_clauses(vec![Clause::from_ints(&[1]), Clause::from_ints(&[-1])]);
    let p = parse_res_proof("1 i 1 0\n2 i -1 0\n3 r 1 2 1 0\n").map_err(|e| e.to_string())?;
    let tree = expand(&f, &p).map_err(|e| e.to_string())?;
    let text = serialize_dnf_proof(&tree);
    let expected = "p dnft 1\n1 A 1 0\n2 L 2\n3 C 1 2 1 0\n4 L 1\n5 C 3 4 -1 0\n";
    if text != expected {
        return Err(format!("expansion of (x)∧(¬x) is {text:?}"));
    }
    let q = narrow(&f, &tree).map_err(|e| e.to_string())?;
    if !check_res(&f, &q, None).valid || q.width() > 3 {
        return Err(format!("narrowing has width {}", q.width()));
    }
    Ok(format!(
        "□ base case is \"1 i 0\"; (x)∧(¬x) expands to the 5-node proof and narrows to width {}",
        q.width()
    ))
}

fn run_cli(dir: &Path, args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_reswidth"))
        .current_dir(dir)
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!(
            "reswidth {} exited with {}: {}",
            args.join(" "),
            out.status,
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    Ok(out.stdout)
}

fn cli_pipeline(dir: &Path, item: &Item, tag: &str) -> Result<Vec<(String, Vec<u8>)>, String> {
    let gen_args: Vec<String> = match item.spec {
        FamilySpec::Php { pigeons, holes } => {
            vec!["php".into(), "--pigeons".into(), pigeons.to_string(), "--holes".into(), holes.to_string()]
        }
        FamilySpec::Chain { length } => vec!["chain".into(), "--length".into(), length.to_string()],
        FamilySpec::RandK { vars, clauses, width, seed } => vec![
            "randk".into(),
            "--vars".into(),
            vars.to_string(),
            "--clauses".into(),
            clauses.to_string(),
            "--width".into(),
            width.to_string(),
            "--seed".into(),
            seed.to_string(),
        ],
    };
    let name = |ext: &str| format!("{tag}.{ext}");
    let (cnf, res, dnft, narrow, dnft2) =
        (name("cnf"), name("res"), name("dnft"), name("narrow.res"), name("2.dnft"));
    let width = item.min_width.to_string();
    let mut stdout = Vec::new();
    let mut args: Vec<&str> = vec!["gen"];
    args.extend(gen_args.iter().map(String::as_str));
    args.extend(["-o", &cnf]);
    stdout.push(run_cli(dir, &args)?);
    stdout.push(run_cli(dir, &["prove", "--cnf", &cnf, "--max-width", &width, "-o", &res])?);
    stdout.push(run_cli(dir, &["expand", "--cnf", &cnf, "--proof", &res, "-o", &dnft])?);
    stdout.push(run_cli(dir, &["narrow", "--cnf", &cnf, "--proof", &dnft, "-o", &narrow])?);
    stdout.push(run_cli(dir, &["expand", "--cnf", &cnf, "--proof", &narrow, "-o", &dnft2])?);
    stdout.push(run_cli(dir, &["check", "--cnf", &cnf, "--proof", &dnft2, "--kind", "dnft"])?);
    let mut files = Vec::new();
    for file in [&cnf, &res, &dnft, &narrow, &dnft2] {
        let bytes = std::fs::read(dir.join(file)).map_err(|e| e.to_string())?;
        files.push((file.clone(), bytes));
    }
    files.push((format!("{tag} stdout"), stdout.concat()));
    Ok(files)
}

fn criterion_7(corpus: &[Item]) -> Verdict {
    let dirs =
        [tempfile::tempdir().map_err(|e| e.to_string())?, tempfile::tempdir().map_err(|e| e.to_string())?];
    let mut compared = 0;
    for (k, item) in corpus.iter().enumerate() {
        let tag = format!("item{k}");
        let first = cli_pipeline(dirs[0].path(), item, &tag)?;
        let second = cli_pipeline(dirs[1].path(), item, &tag)?;
        for ((name, a), (_, b)) in first.iter().zip(&second) {
            if a != b {
                return Err(format!("{}: {name} differs between runs", item.spec));
            }
            compared += 1;
        }
        // the files must also match the library outputs
        if first[1].1 != serialize_res_proof(&item.p).into_bytes()
            || first[2].1 != serialize_dnf_proof(&item.tree).into_bytes()
        {
            return Err(format!("{}: CLI artifacts differ from the library", item.spec));
        }
    }
    Ok(format!("{compared} artifacts byte-identical across two runs of gen/prove/expand/narrow/expand/check"))
}

fn timed(f: impl FnOnce() -> Verdict) -> (Verdict, Duration) {
    let start = Instant::now();
    let verdict = f();
    (verdict, start.elapsed())
}

fn main() {
    let mut corpus = Vec::new();
    let mut results: Vec<(&str, (Verdict, Duration))> = Vec::new();
    results.push(("1 expand bounds on the corpus", timed(|| criterion_1(&mut corpus))));
    results.push(("2 narrow width bound on the corpus", timed(|| criterion_2(&corpus))));
    results.push(("3 round trips", timed(|| criterion_3(&corpus))));
    results.push(("4 checker soundness oracle", timed(|| criterion_4(&corpus))));
    results.push(("5 mutation suite", timed(|| criterion_5(&corpus))));
    results.push(("6 degenerate cases", timed(criterion_6)));
    results.push(("7 CLI determinism", timed(|| criterion_7(&corpus))));

    let mut failed = 0;
    for (name, (verdict, took)) in &results {
        match verdict {
            Ok(detail) => println!("PASS criterion {name}: {detail} [{took:.2?}]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail} [{took:.2?}]");
            }
        }
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
