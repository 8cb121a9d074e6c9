use rigidity_core::field::Field;
use rigidity_core::pinning::*;
use rigidity_core::search::rigidity_corpus;
use rigidity_core::*;

fn systems(d: usize, ns: std::ops::RangeInclusive<usize>) -> Vec<(Multigraph, PinnedSystem)> {
    let mut out = Vec::new();
    for g in rigidity_corpus(d, ns).unwrap() {
        let f = random_rational_placement(&g, d, 21);
        for path in enumerate_paths(&g, d) {
            out.push((g.clone(), build_pinned_system(&f, &path).unwrap()));
        }
    }
    out
}

#[test]
fn invertible_iff_minimally_rigid_planar() {
    for (g, p) in systems(2, 3..=5) {
        let rigid = rigidity_verdict(&g, 2, DEFAULT_TRIALS, 21).verdict == Verdict::MinimallyRigid;
        assert_eq!(pinned_invertible(&p), rigid, "{g:?} {:?}", p.path);
    }
}

#[test]
fn invertible_iff_minimally_rigid_spatial() {
    for (g, p) in systems(3, 4..=5) {
        let rigid = rigidity_verdict(&g, 3, DEFAULT_TRIALS, 21).verdict == Verdict::MinimallyRigid;
        assert_eq!(pinned_invertible(&p), rigid, "{g:?} {:?}", p.path);
    }
}

#[test]
fn stage_c_columns_balance_per_axis() {
    for (_, p) in systems(2, 3..=4) {
        for sums in stage_c_axis_sums(&p) {
            assert!(sums.iter().all(Field::is_zero));
        }
    }
}

#[test]
fn partitions_cover_columns_and_trees_verify() {
    for (g, p) in systems(2, 3..=5).into_iter().chain(systems(3, 4..=4)) {
        if !pinned_invertible(&p) {
            assert!(matches!(
                extract_tree_partition(&p, PivotRule::AxisMajor),
                Err(PinningError::Singular { .. })
            ));
            continue;
        }
        for rule in [PivotRule::AxisMajor, PivotRule::VertexMajor] {
            let part = extract_tree_partition(&p, rule).unwrap();
            let mut cols: Vec<usize> = part.s.iter().flatten().copied().collect();
            cols.sort_unstable();
            assert_eq!(cols, (0..p.stage_d.rows()).collect::<Vec<_>>());
            assert_eq!(part.pivot_trace.len(), cols.len());
            match &part.extraction {
                TreeExtraction::Trees { trees, verified } => {
                    assert!(*verified, "{g:?} {:?}", p.path);
                    assert_eq!(trees.len(), p.d());
                }
                TreeExtraction::Failed { failures } => assert!(!failures.is_empty()),
            }
        }
    }
}

#[test]
fn extraction_is_deterministic_and_placement_free() {
    let g = Multigraph::complete(4);
    let path = OrderedPath::new(&g, vec![0, 1, 2]).unwrap();
    let run = |seed| {
        let p = build_pinned_system(&random_rational_placement(&g, 3, seed), &path).unwrap();
        let part = extract_tree_partition(&p, PivotRule::AxisMajor).unwrap();
        (part.s, part.extraction)
    };
    let first = run(1);
    assert_eq!(first, run(1));
    assert_eq!(first, run(2));
    assert!(matches!(first.1, TreeExtraction::Trees { verified: true, .. }));
}

#[test]
fn named_cases_extract_trees() {
    for (n, verts) in [(3, vec![0, 1]), (4, vec![0, 1, 2])] {
        let g = Multigraph::complete(n);
        let d = n - 1;
        let path = OrderedPath::new(&g, verts).unwrap();
        let p = build_pinned_system(&random_rational_placement(&g, d, 8), &path).unwrap();
        let part = extract_tree_partition(&p, PivotRule::default()).unwrap();
        let trees = part.trees().expect("trees extracted");
        let aug = &p.augmentation.result;
        assert!(verify_decomposition(&TreeDecomposition {
            k: d,
            trees: trees.to_vec(),
            graph: aug.clone(),
        }));
    }
}
