//! Shared fixtures for the benchmarks.

use reswidth_core::{expand, prove_min_width, Cnf, FamilySpec, ResProof, TreeDnfProof};

pub struct Fixture {
    pub name: String,
    pub f: Cnf,
    pub width: usize,
    pub proof: ResProof,
    pub tree: TreeDnfProof,
}

impl Fixture {
    pub fn new(spec: FamilySpec) -> Fixture {
        let f = spec.generate().expect("valid family parameters");
        let (width, proof) = prove_min_width(&f, 8).expect("family is refutable");
        let tree = expand(&f, &proof).expect("prover output expands");
        Fixture { name: spec.to_string(), f, width, proof, tree }
    }
}

/// Representative inputs, smallest first.
pub fn fixtures() -> Vec<Fixture> {
    [
        FamilySpec::Chain { length: 8 },
        FamilySpec::Php { pigeons: 3, holes: 2 },
        FamilySpec::RandK { vars: 4, clauses: 30, width: 3, seed: 3 },
        FamilySpec::Php { pigeons: 4, holes: 3 },
    ]
    .into_iter()
    .map(Fixture::new)
    .collect()
}
