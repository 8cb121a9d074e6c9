//! Generic rigidity of graphs, decided two ways.
//!
//! * [`rigidity`] computes the rank of the rigidity matrix at random
//!   placements over a large prime field (or exact rationals).
//! * [`theorem`] runs the path-augmentation test: for every ordered path on
//!   `d` vertices, add `d − i` copies of the `i`-th path edge and ask
//!   [`treedecomp`] for `d` edge-disjoint spanning trees.
//! * [`search`] enumerates corpora and scans them for graphs where the two
//!   answers differ; the double banana is the standard example in 3-space.
//! * [`pinning`] replays the support-and-eliminate argument behind the test
//!   on concrete frameworks and reports where it holds or breaks.

pub mod field;
pub mod formats;
pub mod graph;
pub mod matrix;
pub mod pinning;
pub mod rigidity;
pub mod search;
pub mod theorem;
pub mod treedecomp;

pub use field::{Field, Fp};
pub use formats::{parse_edge_list, parse_graph6, to_graph6};
pub use graph::{augment, canonical_form, enumerate_paths, Augmentation, GraphError, Multigraph, OrderedPath};
pub use rigidity::{
    build_rigidity_matrix, find_self_stress, find_stress_circuit, generic_rank, generic_rank_exact,
    random_generic_placement, random_rational_placement, rigidity_verdict, Framework, RigidityVerdict,
    StressVector, Verdict, DEFAULT_TRIALS,
};
pub use search::{double_banana, enumerate_graphs, laman_check, scan_corpus, ScanOptions, ScanReport};
pub use theorem::{
    baranyai_test, compare_with_rank, path_budget_check, Claim, ComparisonKind, ComparisonRecord,
    TheoremOptions, TheoremReport,
};
pub use treedecomp::{decompose_into_spanning_trees, verify_decomposition, DecompositionOutcome, TreeDecomposition};
