//! Graceful and alpha labelings of small trees.
//!
//! The crate builds trees from edge lists, classifies labelings (edge
//! weights, gracefulness, bipartite separation), and searches exhaustively
//! for labelings under constraints, emitting reproducible certificates. A
//! free-tree enumerator and a set of probes turn single-tree searches into
//! family-wide counterexample hunts. Every search has an independent slow
//! route, a permutation filter built only on the labeling predicates, that
//! small results are cross-checked against.

pub mod dot;
pub mod families;
pub mod fixtures;
pub mod labeling;
mod par;
pub mod probes;
pub mod search;
pub mod tree;

pub use dot::export_dot;
pub use families::{
    filter_family, generate_trees, matches_filter, FamilyError, FamilyFilter, Parity,
};
pub use labeling::{
    bipartite_critical, edge_weights, is_alpha, is_graceful, AlphaResult, Labeling, LabelingError,
};
pub use probes::{
    hunt, probe_q1, probe_q2, probe_q3, relaxed_s_check, run_probe, zero_centered, HuntReport,
    ProbeId, ProbeReport, RelaxedSReport,
};
pub use search::{
    brute_force_oracle, exists_alpha_with, oracle_agrees, search_graceful, search_with_threads,
    ConstraintSet, Mode, SearchCertificate, SearchError, Status,
};
pub use tree::{Tree, TreeError, TreeProfile};
