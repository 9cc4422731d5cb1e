//! Transformations between narrow Resolution refutations and short tree-like
//! Res(l) refutations, together with checkers, text formats, formula
//! generators and a width-bounded saturation prover.
//!
//! * [`expand`] turns a width-`w` Resolution refutation with `S` lines into a
//!   tree-like Res(w) refutation with at most `4S + 2m + 1` nodes.
//! * [`narrow`] turns a tree-like Res(l) refutation with `L` leaves of a
//!   `k`-CNF into a Resolution refutation of width at most
//!   `l·⌈log₂ L⌉ + max(k, l)`.

pub mod checker;
pub mod expand;
pub mod formats;
pub mod gen;
pub mod logic;
pub mod narrow;
pub mod proof;

pub use checker::{
    check_res, check_res_derivation, check_tree_dnf, check_tree_dnf_with, CheckReport, TreeRules,
};
pub use expand::{eliminate_weakening, expand, ExpandError};
pub use formats::{
    parse_dimacs, parse_dimacs_with_warnings, parse_dnf_proof, parse_res_proof, serialize_dimacs,
    serialize_dnf_proof, serialize_res_proof, ParseError, ParseWarning,
};
pub use gen::{prove_bounded, prove_min_width, FamilySpec};
pub use logic::{Assignment, Clause, Cnf, DnfLine, Literal, Term, Var};
pub use narrow::{narrow, NarrowBudget, NarrowError};
pub use proof::{LineId, NodeKind, ProofStats, ResLine, ResProof, ResRule, TreeDnfProof, TreeNode};
