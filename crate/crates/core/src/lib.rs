//! Generalized Turán numbers `ex(n, H, F)` for graphs on at most four
//! vertices: exact subgraph counting, the extremal constructions, an oracle
//! table, isomorph-free exhaustive search and Zykov symmetrization.

pub mod canon;
pub mod constructions;
pub mod counting;
mod embed;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod harness;
pub mod oracle;
pub mod pattern;
pub mod search;
pub mod subgraph;
pub mod symmetrize;

pub use canon::{canonical_form, is_isomorphic, CanonicalForm};
pub use constructions::{build, defining_property_check, FamilySpec};
pub use counting::{automorphism_order, count_copies, count_copies_fast, count_induced, CopyCount};
pub use error::{Error, Result};
pub use graph::Graph;
pub use harness::{emit_report, render_report, verify_table, ReportFormat, VerificationReport};
pub use oracle::{evaluate, lookup, OracleEntry, OracleValue};
pub use pattern::PatternId;
pub use search::{brute_force_labeled, enumerate_f_free, max_copies, SearchResult};
pub use subgraph::{blowup_contains, chromatic_number, color_critical_edges, contains_subgraph};
pub use symmetrize::{
    run_preserving_independent_set, run_to_multipartite, symmetrize_step, SymmetrizationTrace,
};
