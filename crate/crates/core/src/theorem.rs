//! The path-augmentation spanning-tree test and its comparison with the
//! rank criterion.
//!
//! For every ordered path on `d` distinct vertices, the test adds `d − i`
//! copies of the path's `i`-th edge and asks whether the result splits
//! into `d` edge-disjoint spanning trees. The graph is claimed minimally
//! rigid when the edge count is `d·n − C(d+1, 2)` and every augmentation
//! splits. In the plane this agrees with Laman's condition; in 3-space the
//! double banana satisfies the test while being flexible.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{augment, enumerate_paths, Multigraph, OrderedPath};
use crate::rigidity::{find_stress_circuit, rigidity_verdict, target_rank, RigidityVerdict, Verdict};
use crate::treedecomp::{decompose_into_spanning_trees, DecompositionOutcome};

pub const DEFAULT_MAX_DIMENSION: usize = 6;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TheoremError {
    #[error("dimension {0} is below 2")]
    DimensionTooSmall(usize),
    #[error("dimension {d} exceeds the configured cap {cap}")]
    DimensionTooLarge { d: usize, cap: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TheoremOptions {
    /// Stop at the first path whose augmentation does not split.
    pub fast: bool,
    pub max_dimension: usize,
}

impl Default for TheoremOptions {
    fn default() -> Self {
        TheoremOptions {
            fast: false,
            max_dimension: DEFAULT_MAX_DIMENSION,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathResult {
    pub path: OrderedPath,
    pub decomposable: bool,
    pub outcome: DecompositionOutcome,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    ClaimsMinimallyRigid,
    ClaimsNotRigid,
    NotApplicable,
}

impl Claim {
    pub fn as_str(self) -> &'static str {
        match self {
            Claim::ClaimsMinimallyRigid => "claims-minimally-rigid",
            Claim::ClaimsNotRigid => "claims-not-rigid",
            Claim::NotApplicable => "not-applicable",
        }
    }
}

/// Why the claim came out the way it did.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ClaimBasis {
    TooFewVertices { n: usize, d: usize },
    EdgeCount { m: usize, target: i64 },
    /// No path on `d` distinct vertices exists; the universal quantifier is
    /// vacuous and the graph is not claimed rigid.
    NoPaths,
    PathFailed { first_failure: OrderedPath },
    AllPathsDecompose,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub graph: Multigraph,
    pub d: usize,
    pub edge_count_ok: bool,
    pub claim: Claim,
    pub basis: ClaimBasis,
    pub paths_checked: usize,
    pub path_results: Vec<PathResult>,
}

/// Path table without decompositions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremSummary {
    pub graph: Multigraph,
    pub d: usize,
    pub edge_count_ok: bool,
    pub claim: Claim,
    pub basis: ClaimBasis,
    pub paths_checked: usize,
    pub paths_decomposable: usize,
    pub failing_paths: Vec<Vec<usize>>,
}

impl TheoremReport {
    pub fn summary(&self) -> TheoremSummary {
        TheoremSummary {
            graph: self.graph.clone(),
            d: self.d,
            edge_count_ok: self.edge_count_ok,
            claim: self.claim,
            basis: self.basis.clone(),
            paths_checked: self.paths_checked,
            paths_decomposable: self.path_results.iter().filter(|r| r.decomposable).count(),
            failing_paths: self
                .path_results
                .iter()
                .filter(|r| !r.decomposable)
                .map(|r| r.path.vertices().to_vec())
                .collect(),
        }
    }
}

fn evaluate_path(g: &Multigraph, path: &OrderedPath, d: usize) -> PathResult {
    let aug = augment(g, path, d).expect("enumerated paths are valid");
    let outcome = decompose_into_spanning_trees(&aug.result, d).expect("d >= 2");
    PathResult {
        path: path.clone(),
        decomposable: outcome.is_decomposed(),
        outcome,
    }
}

/// Run the path-augmentation test on `g` in dimension `d`.
pub fn baranyai_test(
    g: &Multigraph,
    d: usize,
    options: TheoremOptions,
) -> Result<TheoremReport, TheoremError> {
    if d < 2 {
        return Err(TheoremError::DimensionTooSmall(d));
    }
    if d > options.max_dimension {
        return Err(TheoremError::DimensionTooLarge {
            d,
            cap: options.max_dimension,
        });
    }
    let target = target_rank(g.n(), d);
    let edge_count_ok = g.m() as i64 == target;
    let report = |claim, basis, path_results: Vec<PathResult>| TheoremReport {
        graph: g.clone(),
        d,
        edge_count_ok,
        claim,
        basis,
        paths_checked: path_results.len(),
        path_results,
    };

    if g.n() < d + 1 {
        let basis = ClaimBasis::TooFewVertices { n: g.n(), d };
        return Ok(report(Claim::NotApplicable, basis, Vec::new()));
    }
    if !edge_count_ok {
        let basis = ClaimBasis::EdgeCount { m: g.m(), target };
        return Ok(report(Claim::ClaimsNotRigid, basis, Vec::new()));
    }

    let paths = enumerate_paths(g, d);
    if paths.is_empty() {
        return Ok(report(Claim::ClaimsNotRigid, ClaimBasis::NoPaths, Vec::new()));
    }

    let results: Vec<PathResult> = if options.fast {
        let mut out = Vec::new();
        for p in &paths {
            let r = evaluate_path(g, p, d);
            let failed = !r.decomposable;
            out.push(r);
            if failed {
                break;
            }
        }
        out
    } else {
        paths.par_iter().map(|p| evaluate_path(g, p, d)).collect()
    };

    match results.iter().find(|r| !r.decomposable) {
        Some(fail) => {
            let basis = ClaimBasis::PathFailed {
                first_failure: fail.path.clone(),
            };
            Ok(report(Claim::ClaimsNotRigid, basis, results))
        }
        None => Ok(report(Claim::ClaimsMinimallyRigid, ClaimBasis::AllPathsDecompose, results)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComparisonKind {
    Agreement,
    Discrepancy,
    NotApplicable,
}

/// Both verdicts on one graph. On a discrepancy, `stress_circuit` holds a
/// minimal dependent edge set when the rank side found dependence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonRecord {
    pub kind: ComparisonKind,
    pub theorem: TheoremReport,
    pub rigidity: RigidityVerdict,
    pub stress_circuit: Option<Vec<usize>>,
}

pub type DiscrepancyRecord = ComparisonRecord;

/// A discrepancy is one method claiming minimal rigidity while the other
/// denies it.
pub fn compare_with_rank(
    g: &Multigraph,
    d: usize,
    trials: usize,
    seed: u64,
    options: TheoremOptions,
) -> Result<ComparisonRecord, TheoremError> {
    let theorem = baranyai_test(g, d, options)?;
    let rigidity = rigidity_verdict(g, d, trials, seed);
    let kind = if theorem.claim == Claim::NotApplicable || rigidity.verdict == Verdict::NotApplicable {
        ComparisonKind::NotApplicable
    } else if (theorem.claim == Claim::ClaimsMinimallyRigid)
        == (rigidity.verdict == Verdict::MinimallyRigid)
    {
        ComparisonKind::Agreement
    } else {
        ComparisonKind::Discrepancy
    };
    let stress_circuit = match kind {
        ComparisonKind::Discrepancy => find_stress_circuit(g, d, seed),
        _ => None,
    };
    Ok(ComparisonRecord {
        kind,
        theorem,
        rigidity,
        stress_circuit,
    })
}

/// Count of ordered 2-edge paths against the `m(m − 1)` budget in 3-space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathBudget {
    pub paths: usize,
    pub bound: usize,
    /// `paths < bound`
    pub within: bool,
}

pub fn path_budget_check(g: &Multigraph) -> PathBudget {
    let paths = enumerate_paths(g, 3).len();
    let m = g.m();
    let bound = m * m.saturating_sub(1);
    PathBudget {
        paths,
        bound,
        within: paths < bound,
    }
}
