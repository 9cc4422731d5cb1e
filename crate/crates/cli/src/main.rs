use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use reswidth_core::gen::{prove_bounded, FamilySpec};
use reswidth_core::narrow::{narrow, NarrowBudget};
use reswidth_core::{
    check_res, check_tree_dnf, check_tree_dnf_with, eliminate_weakening, expand, parse_dimacs_with_warnings,
    parse_dnf_proof, parse_res_proof, serialize_dimacs, serialize_dnf_proof, serialize_res_proof, Cnf,
    ParseWarning, ResProof, TreeDnfProof, TreeRules,
};

#[derive(Parser, Debug)]
#[command(name = "reswidth", version, about = "Check and transform Resolution and tree-like Res(l) proofs")]
struct Cli {
    /// Print a JSON object instead of the text report.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Res,
    Dnft,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a proof against a CNF.
    Check {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        proof: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
        /// Bound on derived clause width (res) or term width (dnft).
        #[arg(long)]
        max_width: Option<usize>,
        /// Accept `S` subset-cut nodes in tree proofs.
        #[arg(long)]
        allow_subset_cuts: bool,
    },
    /// Turn a Resolution refutation into a tree-like Res(w) refutation.
    Expand {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        proof: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Turn a tree-like Res(l) refutation into a narrow Resolution refutation.
    Narrow {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        proof: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Search for a refutation whose derived clauses have width at most W.
    Prove {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        max_width: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generate a CNF from a formula family.
    Gen {
        #[command(subcommand)]
        family: Family,
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Print size measures of a proof.
    Stats {
        #[arg(long)]
        proof: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
        /// Needed for term occurrences of tree proofs with leaves.
        #[arg(long)]
        cnf: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum Family {
    /// Pigeonhole principle.
    Php {
        #[arg(long)]
        pigeons: u32,
        #[arg(long)]
        holes: u32,
    },
    /// Implication chain x1, x1→x2, …, ¬xq.
    Chain {
        #[arg(long)]
        length: u32,
    },
    /// Uniform random k-CNF.
    Randk {
        #[arg(long)]
        vars: u32,
        #[arg(long)]
        clauses: usize,
        #[arg(long)]
        width: usize,
        #[arg(long)]
        seed: u64,
    },
}

enum Failure {
    Invalid,
    Usage(String),
    NoRefutation(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invalid => 1,
            Failure::Usage(_) => 2,
            Failure::NoRefutation(_) => 3,
        }
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_cnf(path: &Path) -> Result<Cnf, Failure> {
    let (f, warnings) = parse_dimacs_with_warnings(&read(path)?)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    for ParseWarning::DuplicateLiteral { clause, line } in warnings {
        eprintln!("warning: {}: line {line}: duplicate literal in clause {clause}", path.display());
    }
    Ok(f)
}

fn load_res(path: &Path) -> Result<ResProof, Failure> {
    parse_res_proof(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_dnft(path: &Path) -> Result<TreeDnfProof, Failure> {
    parse_dnf_proof(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// Writes the artifact to `output`, or to stdout when absent.
fn emit(output: Option<&Path>, text: &str) -> Outcome {
    match output {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Reports go to stdout, unless stdout carries the artifact.
struct Reporter {
    json: bool,
    to_stderr: bool,
}

impl Reporter {
    fn text(&self, text: &str) {
        if self.json {
            return;
        }
        if self.to_stderr {
            eprint!("{text}");
        } else {
            print!("{text}");
        }
    }

    fn json(&self, value: serde_json::Value) {
        if !self.json {
            return;
        }
        if self.to_stderr {
            eprintln!("{value}");
        } else {
            println!("{value}");
        }
    }
}

fn cmd_check(
    cli: &Cli,
    cnf: &Path,
    proof: &Path,
    kind: Kind,
    max_width: Option<usize>,
    subset: bool,
) -> Outcome {
    let f = load_cnf(cnf)?;
    let report = match kind {
        Kind::Res => check_res(&f, &load_res(proof)?, max_width),
        Kind::Dnft => {
            let p = load_dnft(proof)?;
            let rules = if subset { TreeRules::AllowSubsetCut } else { TreeRules::Strict };
            check_tree_dnf_with(&f, &p, rules)
        }
    };
    // for tree proofs the width limit is on terms, reported by the checker stats
    let within = match (kind, max_width) {
        (Kind::Dnft, Some(w)) => report.stats.width <= w,
        _ => true,
    };
    let out = Reporter { json: cli.json, to_stderr: false };
    out.text(&report.to_string());
    if !within {
        out.text(&format!(
            "term width {} exceeds --max-width {}\n",
            report.stats.width,
            max_width.unwrap_or(0)
        ));
    }
    out.json(json!({ "report": report, "within_max_width": within }));
    if report.valid && within {
        Ok(())
    } else {
        Err(Failure::Invalid)
    }
}

fn cmd_expand(cli: &Cli, cnf: &Path, proof: &Path, output: Option<&Path>) -> Outcome {
    let f = load_cnf(cnf)?;
    let mut p = load_res(proof)?;
    let out = Reporter { json: cli.json, to_stderr: output.is_none() };
    let input = check_res(&f, &p, None);
    if !input.valid {
        out.text(&format!("input proof is {input}"));
        out.json(json!({ "input": input }));
        return Err(Failure::Invalid);
    }
    let mut notes = Vec::new();
    if p.has_weakening() {
        let before = p.len();
        p = eliminate_weakening(&f, &p).map_err(|e| {
            eprintln!("error: {e}");
            Failure::Invalid
        })?;
        notes.push(format!("note: weakening eliminated ({before} lines -> {} lines)", p.len()));
    }
    let tree = expand(&f, &p).map_err(|e| {
        eprintln!("error: {e}");
        Failure::Invalid
    })?;
    let report = check_tree_dnf(&f, &tree);
    let (s, m, w) = (p.len(), f.num_clauses(), p.width());
    let node_bound = 4 * s + 2 * m + 1;
    let term_bound = w.max(1);
    let terms = report.stats.term_occurrences.unwrap_or(0);
    let term_occurrence_bound = s * (s + 2 * w + 2);
    let ok = report.valid
        && report.stats.lines <= node_bound
        && report.stats.width <= term_bound
        && terms <= term_occurrence_bound;

    let mut text = String::new();
    for n in &notes {
        writeln!(text, "{n}").unwrap();
    }
    writeln!(
        text,
        "term-width={} lines={} (bound 4S+2m+1={node_bound})",
        report.stats.width, report.stats.lines
    )
    .unwrap();
    writeln!(
        text,
        "leaves={} term-occurrences={terms} (bound S(S+2w+2)={term_occurrence_bound})",
        report.stats.leaves
    )
    .unwrap();
    if !report.valid {
        write!(text, "self-check failed: {report}").unwrap();
    }
    out.text(&text);
    out.json(json!({
        "notes": notes,
        "input": { "lines": s, "width": w, "clauses": m },
        "output": report,
        "bounds": { "nodes": node_bound, "term_width": term_bound, "term_occurrences": term_occurrence_bound },
        "ok": ok,
    }));
    if !ok {
        return Err(Failure::Invalid);
    }
    emit(output, &serialize_dnf_proof(&tree))
}

fn cmd_narrow(cli: &Cli, cnf: &Path, proof: &Path, output: Option<&Path>) -> Outcome {
    let f = load_cnf(cnf)?;
    let p = load_dnft(proof)?;
    let out = Reporter { json: cli.json, to_stderr: output.is_none() };
    let input = check_tree_dnf_with(&f, &p, TreeRules::AllowSubsetCut);
    if !input.valid {
        out.text(&format!("input proof is {input}"));
        out.json(json!({ "input": input }));
        return Err(Failure::Invalid);
    }
    let budget = NarrowBudget { term_bound: p.term_bound, formula_width: f.width(), leaves: p.leaves() };
    let q = match narrow(&f, &p) {
        Ok(q) => q,
        Err(e) => {
            eprintln!("error: {e}");
            return Err(Failure::Invalid);
        }
    };
    let report = check_res(&f, &q, None);
    let ok = report.valid && report.stats.width <= budget.width();
    let mut text = format!("width={} (bound l⌈log L⌉+max{{k,l}}={})\n", report.stats.width, budget.width());
    writeln!(
        text,
        "lines={} (l={} k={} L={})",
        report.stats.lines, budget.term_bound, budget.formula_width, budget.leaves
    )
    .unwrap();
    if !report.valid {
        write!(text, "self-check failed: {report}").unwrap();
    }
    out.text(&text);
    out.json(json!({
        "input": { "term_bound": budget.term_bound, "formula_width": budget.formula_width, "leaves": budget.leaves },
        "output": report,
        "bound": budget.width(),
        "ok": ok,
    }));
    if !ok {
        return Err(Failure::Invalid);
    }
    emit(output, &serialize_res_proof(&q))
}

fn cmd_prove(cli: &Cli, cnf: &Path, max_width: usize, output: Option<&Path>) -> Outcome {
    let f = load_cnf(cnf)?;
    let p = prove_bounded(&f, max_width).map_err(|e| Failure::NoRefutation(e.to_string()))?;
    let report = check_res(&f, &p, Some(max_width));
    let out = Reporter { json: cli.json, to_stderr: output.is_none() };
    out.text(&report.to_string());
    out.json(json!({ "report": report }));
    if !report.valid {
        return Err(Failure::Invalid);
    }
    emit(output, &serialize_res_proof(&p))
}

fn cmd_gen(cli: &Cli, family: &Family, output: Option<&Path>) -> Outcome {
    let spec = match *family {
        Family::Php { pigeons, holes } => FamilySpec::Php { pigeons, holes },
        Family::Chain { length } => FamilySpec::Chain { length },
        Family::Randk { vars, clauses, width, seed } => FamilySpec::RandK { vars, clauses, width, seed },
    };
    let f = spec.generate().map_err(|e| Failure::Usage(e.to_string()))?;
    let out = Reporter { json: cli.json, to_stderr: output.is_none() };
    out.text(&format!(
        "{spec}: {} variables, {} clauses, width {}\n",
        f.num_vars(),
        f.num_clauses(),
        f.width()
    ));
    out.json(
        json!({ "family": spec, "variables": f.num_vars(), "clauses": f.num_clauses(), "width": f.width() }),
    );
    emit(output, &serialize_dimacs(&f))
}

fn cmd_stats(cli: &Cli, proof: &Path, kind: Kind, cnf: Option<&Path>) -> Outcome {
    let f = cnf.map(load_cnf).transpose()?;
    let stats = match kind {
        Kind::Res => load_res(proof)?.stats(),
        Kind::Dnft => load_dnft(proof)?.stats(f.as_ref()),
    };
    let out = Reporter { json: cli.json, to_stderr: false };
    let mut text =
        format!("lines={} leaves={} width={} depth={}", stats.lines, stats.leaves, stats.width, stats.depth);
    if let Some(t) = stats.term_occurrences {
        write!(text, " term-occurrences={t}").unwrap();
    }
    out.text(&format!("{text}\n"));
    out.json(json!({ "stats": stats }));
    Ok(())
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Check { cnf, proof, kind, max_width, allow_subset_cuts } => {
            cmd_check(cli, cnf, proof, *kind, *max_width, *allow_subset_cuts)
        }
        Command::Expand { cnf, proof, output } => cmd_expand(cli, cnf, proof, output.as_deref()),
        Command::Narrow { cnf, proof, output } => cmd_narrow(cli, cnf, proof, output.as_deref()),
        Command::Prove { cnf, max_width, output } => cmd_prove(cli, cnf, *max_width, output.as_deref()),
        Command::Gen { family, output } => cmd_gen(cli, family, output.as_deref()),
        Command::Stats { proof, kind, cnf } => cmd_stats(cli, proof, *kind, cnf.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Usage(msg) => eprintln!("error: {msg}"),
                Failure::NoRefutation(msg) => eprintln!("{msg}"),
                Failure::Invalid => {}
            }
            ExitCode::from(failure.code())
        }
    }
}
