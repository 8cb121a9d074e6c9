use proptest::prelude::*;
use rigidity_core::rigidity::{build_rigidity_matrix, target_rank};
use rigidity_core::search::rigidity_corpus;
use rigidity_core::*;
use rigidity_oracles::rigidity_rank_exact;

fn pairs(g: &Multigraph) -> Vec<(usize, usize)> {
    g.endpoints().to_vec()
}

#[test]
fn triangle_rank_matches_bareiss() {
    let k3 = Multigraph::complete(3);
    assert_eq!(rigidity_rank_exact(3, &pairs(&k3), 2, 42), 3);
    assert_eq!(generic_rank(&k3, 2, 1, 0), 3);
    assert_eq!(generic_rank_exact(&k3, 2, 0), 3);
}

#[test]
fn double_banana_rank_is_17() {
    let db = double_banana();
    let oracle = rigidity_rank_exact(8, &pairs(&db), 3, 2024);
    assert_eq!(oracle, 17);
    assert_eq!(generic_rank_exact(&db, 3, 5), oracle);
    assert_eq!(generic_rank(&db, 3, DEFAULT_TRIALS, 5), oracle);
    let v = rigidity_verdict(&db, 3, DEFAULT_TRIALS, 5);
    assert_eq!((v.verdict, v.flex_dim, v.target), (Verdict::Flexible, 1, 18));
}

#[test]
fn k4_in_the_plane_matches_bareiss() {
    let k4 = Multigraph::complete(4);
    assert_eq!(rigidity_rank_exact(4, &pairs(&k4), 2, 1), 5);
    let v = rigidity_verdict(&k4, 2, DEFAULT_TRIALS, 0);
    assert_eq!((v.rank, v.verdict), (5, Verdict::RigidWithRedundancy));
}

#[test]
fn zp_rank_matches_rational_oracle_on_planar_corpus() {
    for g in rigidity_corpus(2, 3..=6).unwrap() {
        let oracle = rigidity_rank_exact(g.n(), &pairs(&g), 2, 7);
        assert_eq!(generic_rank(&g, 2, DEFAULT_TRIALS, 7), oracle, "{g:?}");
    }
}

#[test]
fn rank_stable_across_seeds() {
    let mut corpus = rigidity_corpus(2, 3..=6).unwrap();
    corpus.push(double_banana());
    for g in &corpus {
        let d = if g.n() == 8 { 3 } else { 2 };
        let ranks: Vec<usize> = [11, 22, 33, 44, 55].iter().map(|&s| generic_rank(g, d, 1, s)).collect();
        assert!(ranks.windows(2).all(|w| w[0] == w[1]), "{g:?}: {ranks:?}");
    }
}

fn arb_graph() -> impl Strategy<Value = Multigraph> {
    (3usize..=6).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..=12).prop_map(move |p| {
            Multigraph::new(n, p.into_iter().filter(|(u, v)| u != v)).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn stress_is_an_equilibrium(g in arb_graph(), d in 2usize..=3, seed in any::<u64>()) {
        let f = random_generic_placement(&g, d, seed);
        let r = build_rigidity_matrix(&f);
        match find_self_stress(&f) {
            Some(s) => {
                prop_assert!(s.is_equilibrium(&r));
                let lead = s.support()[0];
                prop_assert_eq!(s.coefficients[lead], Fp::new(1));
                prop_assert!(r.rank() < g.m());
            }
            None => prop_assert_eq!(r.rank(), g.m()),
        }
    }

    #[test]
    fn rank_bounded_and_monotone(g in arb_graph(), d in 2usize..=3, u in 0usize..6, v in 0usize..6) {
        let rank = generic_rank(&g, d, DEFAULT_TRIALS, 9);
        prop_assert!(rank <= g.m().min(d * g.n()));
        let (u, v) = (u % g.n(), v % g.n());
        prop_assume!(u != v);
        let mut h = g.clone();
        h.add_edge(u, v).unwrap();
        prop_assert!(generic_rank(&h, d, DEFAULT_TRIALS, 9) >= rank);
    }

    #[test]
    fn flex_dim_nonnegative_for_connected(g in arb_graph(), d in 2usize..=3) {
        prop_assume!(g.is_connected() && g.n() > d);
        let v = rigidity_verdict(&g, d, DEFAULT_TRIALS, 3);
        prop_assert!(v.flex_dim >= 0);
        prop_assert_eq!(v.target, target_rank(g.n(), d));
        prop_assert_eq!(
            v.verdict == Verdict::MinimallyRigid,
            v.edge_count_ok && v.rank as i64 == v.target
        );
    }

    #[test]
    fn circuits_are_minimal(g in arb_graph(), d in 2usize..=3) {
        if let Some(c) = find_stress_circuit(&g, d, 17) {
            let r = build_rigidity_matrix(&random_generic_placement(&g, d, 17));
            prop_assert!(r.rows_for(&c).rank() < c.len());
            for skip in 0..c.len() {
                let rest: Vec<usize> = c.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &e)| e).collect();
                prop_assert_eq!(r.rows_for(&rest).rank(), rest.len());
            }
        }
    }
}
