//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::process::{Command, ExitCode, Stdio};
use std::time::{Duration, Instant};

use rigidity_core::pinning::*;
use rigidity_core::search::{enumerate_multigraphs, rigidity_corpus};
use rigidity_core::*;
use rigidity_oracles::{exhaustive_tree_partition, rigidity_rank_exact};

type Check = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn planar_corpus() -> Vec<Multigraph> {
    rigidity_corpus(2, 3..=6).expect("n ≤ 6 is enumerable")
}

fn criterion_1() -> Outcome {
    let corpus = planar_corpus();
    let mut mismatches = Vec::new();
    let mut rigid = 0;
    for g in &corpus {
        let laman = laman_check(g).unwrap();
        let rank = rigidity_verdict(g, 2, DEFAULT_TRIALS, 1).verdict == Verdict::MinimallyRigid;
        let claim = baranyai_test(g, 2, TheoremOptions::default()).unwrap().claim == Claim::ClaimsMinimallyRigid;
        rigid += laman as usize;
        if !(laman == rank && rank == claim) {
            mismatches.push(g.to_edge_list_json());
        }
    }
    outcome(
        mismatches.is_empty(),
        format!(
            "{} graphs (n=3..6, m=2n-3), {} Laman, {} three-way mismatches {:?}",
            corpus.len(),
            rigid,
            mismatches.len(),
            mismatches
        ),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let db = double_banana();
    let oracle = rigidity_rank_exact(db.n(), db.endpoints(), 3, 2024);
    if oracle != 17 {
        return outcome(false, format!("exact oracle rank {oracle}, expected 17"));
    }
    let zp = generic_rank(&db, 3, DEFAULT_TRIALS, 1);
    let v = rigidity_verdict(&db, 3, DEFAULT_TRIALS, 1);
    let t = baranyai_test(&db, 3, TheoremOptions::default()).unwrap();
    let all_split = t.path_results.iter().all(|p| p.decomposable);

    let cli = Command::new(env!("CARGO_BIN_EXE_rigidity"))
        .args(["--dim", "3", "compare"])
        .stdin(Stdio::piped())
        .stdout(Stdio::null())
        .stderr(Stdio::null())
        .spawn()
        .and_then(|mut child| {
            use std::io::Write;
            child.stdin.take().unwrap().write_all(db.to_edge_list_json().as_bytes())?;
            child.wait()
        })
        .map(|s| s.code());
    let elapsed = start.elapsed();

    let pass = zp == 17
        && v.verdict == Verdict::Flexible
        && v.target == 18
        && v.flex_dim == 1
        && t.claim == Claim::ClaimsMinimallyRigid
        && all_split
        && matches!(cli, Ok(Some(3)))
        && elapsed < Duration::from_secs(120);
    outcome(
        pass,
        format!(
            "exact rank {oracle}, Z_p rank {zp}, target {}, verdict {}, flex-dim {}, claim {} over {} paths (all split: {all_split}), compare exit {:?}, {:.2}s",
            v.target,
            v.verdict.as_str(),
            v.flex_dim,
            t.claim.as_str(),
            t.paths_checked,
            cli.ok().flatten(),
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_3() -> Outcome {
    let mut details = Vec::new();
    let mut pass = true;
    for d in 2..=4 {
        let g = Multigraph::complete(d + 1);
        let r = compare_with_rank(&g, d, DEFAULT_TRIALS, 1, TheoremOptions::default()).unwrap();
        let c = d * (d + 1) / 2;
        let ok = r.kind == ComparisonKind::Agreement
            && r.rigidity.verdict == Verdict::MinimallyRigid
            && r.theorem.claim == Claim::ClaimsMinimallyRigid
            && r.rigidity.rank == c
            && g.m() == c;
        pass &= ok;
        details.push(format!("K{} d={d}: rank {} m {} {}", d + 1, r.rigidity.rank, g.m(), if ok { "ok" } else { "BAD" }));
    }
    outcome(pass, details.join("; "))
}

fn criterion_4() -> Outcome {
    let mut checked = 0;
    let mut decomposed = 0;
    let mut mismatches = Vec::new();
    let mut unverified = 0;
    for k in [2, 3] {
        for n in 2..=5 {
            let m = k * (n - 1);
            if m > 12 {
                continue;
            }
            for g in enumerate_multigraphs(n, m).unwrap() {
                checked += 1;
                let out = decompose_into_spanning_trees(&g, k).unwrap();
                let oracle = exhaustive_tree_partition(n, g.endpoints(), k).is_some();
                if out.is_decomposed() != oracle {
                    mismatches.push(format!("k={k} {}", g.to_edge_list_json()));
                }
                if let Some(d) = out.decomposition() {
                    decomposed += 1;
                    unverified += !verify_decomposition(d) as usize;
                }
            }
        }
    }
    outcome(
        mismatches.is_empty() && unverified == 0,
        format!(
            "{checked} multigraphs, {decomposed} decomposed, {} mismatches {mismatches:?}, {unverified} failed verification",
            mismatches.len()
        ),
    )
}

fn criterion_5() -> Outcome {
    let mut pairs = 0;
    let mut iff_violations = Vec::new();
    let mut findings: BTreeMap<&'static str, usize> = BTreeMap::new();
    let mut examples = Vec::new();
    for g in planar_corpus() {
        let rigid = rigidity_verdict(&g, 2, DEFAULT_TRIALS, 1).verdict == Verdict::MinimallyRigid;
        let f = random_rational_placement(&g, 2, 1);
        for path in enumerate_paths(&g, 2) {
            pairs += 1;
            let p = build_pinned_system(&f, &path).unwrap();
            let inv = pinned_invertible(&p);
            if inv != rigid {
                iff_violations.push(format!("{} path {:?}", g.to_edge_list_json(), path.vertices()));
            }
            if inv {
                let part = extract_tree_partition(&p, PivotRule::default()).unwrap();
                if let TreeExtraction::Failed { failures } = &part.extraction {
                    for fail in failures {
                        let kind = match fail {
                            TreeFailure::WrongSize { .. } => "wrong-size",
                            TreeFailure::NotIncidence { .. } => "not-incidence",
                            TreeFailure::EdgeMismatch { .. } => "edge-mismatch",
                            TreeFailure::Cycle { .. } => "cycle",
                        };
                        *findings.entry(kind).or_default() += 1;
                    }
                    if examples.len() < 3 {
                        examples.push(format!("{} path {:?}: {:?}", g.to_edge_list_json(), path.vertices(), failures));
                    }
                }
            }
        }
    }

    let mut named = Vec::new();
    for (n, verts) in [(3usize, vec![0, 1]), (4, vec![0, 1, 2])] {
        let g = Multigraph::complete(n);
        let d = n - 1;
        let path = OrderedPath::new(&g, verts.clone()).unwrap();
        let p = build_pinned_system(&random_rational_placement(&g, d, 1), &path).unwrap();
        let ok = extract_tree_partition(&p, PivotRule::default())
            .ok()
            .and_then(|part| part.trees().map(<[_]>::to_vec))
            .is_some_and(|trees| {
                trees.len() == d
                    && verify_decomposition(&TreeDecomposition {
                        k: d,
                        trees,
                        graph: p.augmentation.result.clone(),
                    })
            });
        named.push((format!("K{n} {verts:?}"), ok));
    }

    for e in &examples {
        println!("    finding: {e}");
    }
    outcome(
        iff_violations.is_empty() && named.iter().all(|(_, ok)| *ok),
        format!(
            "{pairs} (graph, path) pairs, {} invertibility mismatches {iff_violations:?}; named cases {named:?}; extraction findings on rigid inputs {findings:?}",
            iff_violations.len()
        ),
    )
}

fn criterion_6() -> Outcome {
    let mut graphs: Vec<Multigraph> = Vec::new();
    for n in 2..=6 {
        for m in 4..=n * (n - 1) / 2 {
            graphs.extend(enumerate_graphs(n, m).unwrap());
        }
    }
    graphs.push(double_banana());

    let mut over = Vec::new();
    let mut stars = 0;
    let mut tightest = (0usize, 1usize);
    let mut evaluated_over = 0;
    for g in &graphs {
        let b = path_budget_check(g);
        if b.within {
            if b.paths * tightest.1 > tightest.0 * b.bound {
                tightest = (b.paths, b.bound);
            }
        } else {
            stars += (g.degree_sequence()[0] == g.m()) as usize;
            over.push(format!("{} ({} paths, bound {})", g.to_edge_list_json(), b.paths, b.bound));
        }
        let evaluated = baranyai_test(g, 3, TheoremOptions::default()).unwrap().paths_checked;
        evaluated_over += (evaluated >= b.bound) as usize;
    }
    let k3 = path_budget_check(&Multigraph::complete(3));
    outcome(
        over.is_empty(),
        format!(
            "{} connected simple graphs with m >= 4 (n <= 6, plus the double banana); {} with enumerated paths >= m(m-1), {stars} of them stars K1,m {over:?}; \
             tightest within bound {}/{}; paths evaluated after the edge-count precheck exceed the bound on {evaluated_over}; \
             K3 boundary: {} paths vs m(m-1) = {} (reported only)",
            graphs.len(),
            over.len(),
            tightest.0,
            tightest.1,
            k3.paths,
            k3.bound
        ),
    )
}

fn criterion_7() -> Outcome {
    let seeds = [3u64, 1_000_003, 0xDEAD_BEEF, 42, u64::MAX - 7];
    let mut cases: Vec<(Multigraph, usize)> = planar_corpus().into_iter().map(|g| (g, 2)).collect();
    cases.push((double_banana(), 3));
    let mut unstable = Vec::new();
    for (g, d) in &cases {
        let ranks: Vec<usize> = seeds.iter().map(|&s| generic_rank(g, *d, 1, s)).collect();
        if ranks.windows(2).any(|w| w[0] != w[1]) {
            unstable.push(format!("{} {ranks:?}", g.to_edge_list_json()));
        }
    }
    outcome(
        unstable.is_empty(),
        format!("{} graphs x {} seeds, trials=1; {} unstable {unstable:?}", cases.len(), seeds.len(), unstable.len()),
    )
}

fn main() -> ExitCode {
    let criteria: [Check; 7] = [
        ("planar three-way agreement", criterion_1),
        ("double banana discrepancy", criterion_2),
        ("simplex agreement", criterion_3),
        ("tree decomposition vs exhaustive search", criterion_4),
        ("pinned system", criterion_5),
        ("path budget, d=3", criterion_6),
        ("rank stability across seeds", criterion_7),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = check();
        failed += !o.pass as usize;
        println!(
            "criterion {}: {} - {name} [{:.2}s] {}",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            o.detail
        );
    }
    println!("acceptance: {}/{} passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
