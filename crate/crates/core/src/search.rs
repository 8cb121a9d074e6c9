//! Corpora, fixtures and the discrepancy scan.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{canonical_form, CanonicalForm, Multigraph};
use crate::rigidity::target_rank;
use crate::theorem::{compare_with_rank, ComparisonKind, ComparisonRecord, TheoremError, TheoremOptions};

pub const MAX_ENUMERATION_VERTICES: usize = 8;
pub const MAX_LAMAN_VERTICES: usize = 10;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{n} vertices exceeds the limit of {max} for {what}")]
    TooManyVertices { n: usize, max: usize, what: &'static str },
    #[error("laman_check needs a simple graph")]
    NotSimple,
    #[error(transparent)]
    Theorem(#[from] TheoremError),
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

fn check_n(n: usize, max: usize, what: &'static str) -> Result<(), HarnessError> {
    if n > max {
        Err(HarnessError::TooManyVertices { n, max, what })
    } else {
        Ok(())
    }
}

/// Connected graphs on `n` vertices with `m` edges, one per isomorphism
/// class, grown one edge at a time and deduplicated by canonical form.
fn grow(n: usize, m: usize, simple: bool) -> Vec<Multigraph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    if simple && m > pairs.len() {
        return Vec::new();
    }
    let canon = |g: &Multigraph| canonical_form(g).expect("n checked by caller");
    let mut level: Vec<CanonicalForm> = vec![canon(&Multigraph::empty(n))];
    for added in 1..=m {
        let remaining = m - added;
        let next: BTreeSet<CanonicalForm> = level
            .par_iter()
            .flat_map_iter(|form| {
                let g = form.to_graph();
                pairs
                    .iter()
                    .filter(|&&(i, j)| !simple || g.multiplicity(i, j) == 0)
                    .filter_map(|&(i, j)| {
                        let mut h = g.clone();
                        h.add_edge(i, j).expect("valid pair");
                        // Each further edge merges at most two components.
                        (h.components().len() <= remaining + 1).then(|| canon(&h))
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        level = next.into_iter().collect();
    }
    level
        .into_iter()
        .map(|f| f.to_graph())
        .filter(Multigraph::is_connected)
        .collect()
}

/// All connected simple graphs with `n` vertices and `m` edges, one per
/// isomorphism class, in canonical order.
pub fn enumerate_graphs(n: usize, m: usize) -> Result<Vec<Multigraph>, HarnessError> {
    check_n(n, MAX_ENUMERATION_VERTICES, "graph enumeration")?;
    Ok(grow(n, m, true))
}

/// All connected multigraphs (parallel edges allowed) with `n` vertices and
/// `m` edges, one per isomorphism class.
pub fn enumerate_multigraphs(n: usize, m: usize) -> Result<Vec<Multigraph>, HarnessError> {
    check_n(n, MAX_ENUMERATION_VERTICES, "multigraph enumeration")?;
    Ok(grow(n, m, false))
}

/// Connected simple graphs with exactly `d·n − C(d+1, 2)` edges for every
/// `n` in the range.
pub fn rigidity_corpus(
    d: usize,
    ns: std::ops::RangeInclusive<usize>,
) -> Result<Vec<Multigraph>, HarnessError> {
    let mut out = Vec::new();
    for n in ns {
        let target = target_rank(n, d);
        if target >= 0 {
            out.extend(enumerate_graphs(n, target as usize)?);
        }
    }
    Ok(out)
}

/// Laman's count: `m = 2n − 3` and every vertex subset of size `k ≥ 2`
/// spans at most `2k − 3` edges. Exhaustive over subsets.
pub fn laman_check(g: &Multigraph) -> Result<bool, HarnessError> {
    check_n(g.n(), MAX_LAMAN_VERTICES, "laman_check")?;
    if !g.is_simple() {
        return Err(HarnessError::NotSimple);
    }
    let n = g.n();
    if n < 2 || g.m() as i64 != 2 * n as i64 - 3 {
        return Ok(false);
    }
    let masks: Vec<u32> = g.edges().map(|e| (1 << e.u) | (1 << e.v)).collect();
    for subset in 0u32..(1 << n) {
        let k = subset.count_ones() as i64;
        if k < 2 {
            continue;
        }
        let induced = masks.iter().filter(|&&e| e & subset == e).count() as i64;
        if induced > 2 * k - 3 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Two copies of K5 minus an edge glued along the endpoints `{0, 1}` of
/// the missing edge.
pub fn double_banana() -> Multigraph {
    let mut edges = Vec::with_capacity(18);
    for block in [[0, 1, 2, 3, 4], [0, 1, 5, 6, 7]] {
        for i in 0..5 {
            for j in i + 1..5 {
                let (a, b) = (block[i], block[j]);
                if (a, b) != (0, 1) {
                    edges.push((a, b));
                }
            }
        }
    }
    Multigraph::new(8, edges).expect("fixture is well-formed")
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ScanOptions {
    pub theorem: TheoremOptions,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanStats {
    pub paths_checked: usize,
    pub augmentations_refused: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub corpus: String,
    pub corpus_size: usize,
    pub d: usize,
    pub trials: usize,
    pub seed: u64,
    pub agreements: usize,
    pub not_applicable: usize,
    pub discrepancies: Vec<ComparisonRecord>,
    pub stats: ScanStats,
}

/// Compare both methods on every graph. The report is a pure function of
/// its inputs; wall-clock time is returned separately.
pub fn scan_corpus(
    graphs: &[Multigraph],
    corpus: &str,
    d: usize,
    trials: usize,
    seed: u64,
    options: ScanOptions,
) -> Result<(ScanReport, Duration), HarnessError> {
    let start = Instant::now();
    let run = || -> Result<Vec<ComparisonRecord>, TheoremError> {
        graphs
            .par_iter()
            .map(|g| compare_with_rank(g, d, trials, seed, options.theorem))
            .collect()
    };
    let records = match options.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| HarnessError::ThreadPool(e.to_string()))?
            .install(run)?,
        None => run()?,
    };

    let mut report = ScanReport {
        corpus: corpus.to_string(),
        corpus_size: graphs.len(),
        d,
        trials,
        seed,
        agreements: 0,
        not_applicable: 0,
        discrepancies: Vec::new(),
        stats: ScanStats::default(),
    };
    for r in records {
        report.stats.paths_checked += r.theorem.paths_checked;
        report.stats.augmentations_refused +=
            r.theorem.path_results.iter().filter(|p| !p.decomposable).count();
        match r.kind {
            ComparisonKind::Agreement => report.agreements += 1,
            ComparisonKind::NotApplicable => report.not_applicable += 1,
            ComparisonKind::Discrepancy => report.discrepancies.push(r),
        }
    }
    Ok((report, start.elapsed()))
}
