//! Generic placements, the rigidity matrix, rank verdicts and self-stresses.
//!
//! The working domain is Z_p with p = 2^61 − 1: a random placement over a
//! field this large is generic with overwhelming probability, and every
//! rank computed from it is a lower bound on the generic rank. The exact
//! rational path exists for cross-checks and for the pinning diagnostics.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::field::{Field, Fp, MODULUS};
use crate::graph::Multigraph;
use crate::matrix::Matrix;

pub const DEFAULT_TRIALS: usize = 3;

/// Integer coordinates for rational placements are drawn from
/// `[-RATIONAL_RANGE, RATIONAL_RANGE]`.
pub const RATIONAL_RANGE: i64 = 1 << 40;

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `d·n − C(d+1, 2)`, the rank of a rigid framework with the full
/// trivial-motion space.
pub fn target_rank(n: usize, d: usize) -> i64 {
    (d * n) as i64 - binomial(d + 1, 2) as i64
}

/// Seed of the `t`-th independent trial derived from a base seed; trial 0
/// uses the base seed unchanged.
pub fn trial_seed(seed: u64, t: usize) -> u64 {
    seed ^ (t as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// A multigraph with one `d`-vector per vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct Framework<F> {
    graph: Multigraph,
    d: usize,
    placement: Vec<F>, // vertex-major, d coordinates each
    seed: u64,
}

impl<F: Field> Framework<F> {
    /// Build from explicit coordinates, `placement[v]` being vertex `v`'s point.
    pub fn new(graph: Multigraph, d: usize, placement: Vec<Vec<F>>, seed: u64) -> Self {
        assert_eq!(placement.len(), graph.n(), "one point per vertex");
        assert!(placement.iter().all(|p| p.len() == d), "points must be {d}-dimensional");
        Framework {
            graph,
            d,
            placement: placement.into_iter().flatten().collect(),
            seed,
        }
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn point(&self, v: usize) -> &[F] {
        &self.placement[v * self.d..(v + 1) * self.d]
    }

    pub fn coordinates(&self) -> &[F] {
        &self.placement
    }

    fn has_coincident_points(&self) -> bool {
        let n = self.graph.n();
        (0..n).any(|a| (a + 1..n).any(|b| self.point(a) == self.point(b)))
    }

    /// Same placement, different edge set on the same vertices.
    pub fn with_graph(&self, graph: Multigraph) -> Self {
        assert_eq!(graph.n(), self.graph.n());
        Framework {
            graph,
            d: self.d,
            placement: self.placement.clone(),
            seed: self.seed,
        }
    }
}

fn sample_until_distinct<F: Field>(
    g: &Multigraph,
    d: usize,
    seed: u64,
    mut draw: impl FnMut(&mut ChaCha8Rng) -> F,
) -> Framework<F> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let placement = (0..g.n() * d).map(|_| draw(&mut rng)).collect();
        let f = Framework {
            graph: g.clone(),
            d,
            placement,
            seed,
        };
        if !f.has_coincident_points() {
            return f;
        }
    }
}

/// Coordinates uniform in Z_p, deterministic in `seed`.
pub fn random_generic_placement(g: &Multigraph, d: usize, seed: u64) -> Framework<Fp> {
    sample_until_distinct(g, d, seed, |rng| Fp::new(rng.gen_range(0..MODULUS)))
}

/// Integer coordinates in `[-RATIONAL_RANGE, RATIONAL_RANGE]` as exact rationals.
pub fn random_rational_placement(g: &Multigraph, d: usize, seed: u64) -> Framework<BigRational> {
    sample_until_distinct(g, d, seed, |rng| {
        BigRational::from_integer(BigInt::from(rng.gen_range(-RATIONAL_RANGE..=RATIONAL_RANGE)))
    })
}

/// The `m × dn` rigidity matrix of a framework.
#[derive(Clone, Debug, PartialEq)]
pub struct RigidityMatrix<F> {
    pub matrix: Matrix<F>,
    pub d: usize,
    pub n: usize,
}

impl<F: Field> RigidityMatrix<F> {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// Column of coordinate `axis` of vertex `v`.
    pub fn column(&self, v: usize, axis: usize) -> usize {
        v * self.d + axis
    }

    pub fn rows_for(&self, edge_ids: &[usize]) -> Matrix<F> {
        self.matrix.select_rows(edge_ids)
    }
}

/// Row of edge `{u, v}`: `p_u − p_v` in u's block, `p_v − p_u` in v's.
pub fn build_rigidity_matrix<F: Field>(f: &Framework<F>) -> RigidityMatrix<F> {
    let (n, d) = (f.graph.n(), f.d);
    let mut matrix = Matrix::zeros(f.graph.m(), n * d);
    for e in f.graph.edges() {
        for k in 0..d {
            let diff = f.point(e.u)[k].clone() - f.point(e.v)[k].clone();
            matrix[(e.id, e.v * d + k)] = -diff.clone();
            matrix[(e.id, e.u * d + k)] = diff;
        }
    }
    RigidityMatrix { matrix, d, n }
}

/// Maximum rank of the rigidity matrix over `trials` independent Z_p
/// placements.
pub fn generic_rank(g: &Multigraph, d: usize, trials: usize, seed: u64) -> usize {
    assert!(trials >= 1, "at least one trial");
    (0..trials)
        .map(|t| build_rigidity_matrix(&random_generic_placement(g, d, trial_seed(seed, t))).rank())
        .max()
        .expect("trials >= 1")
}

/// Rank at a single random rational placement.
pub fn generic_rank_exact(g: &Multigraph, d: usize, seed: u64) -> usize {
    build_rigidity_matrix(&random_rational_placement(g, d, seed)).rank()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    MinimallyRigid,
    RigidWithRedundancy,
    Flexible,
    NotApplicable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::MinimallyRigid => "minimally-rigid",
            Verdict::RigidWithRedundancy => "rigid-with-redundancy",
            Verdict::Flexible => "flexible",
            Verdict::NotApplicable => "not-applicable",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RigidityVerdict {
    pub graph: Multigraph,
    pub d: usize,
    pub rank: usize,
    pub target: i64,
    pub m: usize,
    pub edge_count_ok: bool,
    pub verdict: Verdict,
    pub flex_dim: i64,
    pub seed: u64,
    pub trials: usize,
}

/// Verdict from the rank criterion; graphs with fewer than `d + 1`
/// vertices are outside its hypothesis and come back not-applicable.
pub fn rigidity_verdict(g: &Multigraph, d: usize, trials: usize, seed: u64) -> RigidityVerdict {
    let rank = generic_rank(g, d, trials, seed);
    let target = target_rank(g.n(), d);
    let m = g.m();
    let edge_count_ok = m as i64 == target;
    let verdict = if g.n() < d + 1 {
        Verdict::NotApplicable
    } else if rank as i64 == target {
        if edge_count_ok {
            Verdict::MinimallyRigid
        } else {
            Verdict::RigidWithRedundancy
        }
    } else {
        Verdict::Flexible
    };
    RigidityVerdict {
        graph: g.clone(),
        d,
        rank,
        target,
        m,
        edge_count_ok,
        verdict,
        flex_dim: target - rank as i64,
        seed,
        trials,
    }
}

/// Edge coefficients `ω` with `ωᵀR = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct StressVector<F> {
    pub coefficients: Vec<F>,
}

impl<F: Field> StressVector<F> {
    pub fn support(&self) -> Vec<usize> {
        self.coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_equilibrium(&self, r: &RigidityMatrix<F>) -> bool {
        r.matrix
            .left_mul(&self.coefficients)
            .iter()
            .all(Field::is_zero)
    }
}

/// A nonzero self-stress when the rows are dependent, scaled so that its
/// lowest-id nonzero entry is 1.
pub fn find_self_stress<F: Field>(f: &Framework<F>) -> Option<StressVector<F>> {
    let r = build_rigidity_matrix(f);
    let mut omega = r.matrix.transpose().kernel().into_iter().next()?;
    let lead = omega.iter().find(|c| !c.is_zero())?.inv();
    for c in omega.iter_mut() {
        if !c.is_zero() {
            *c = c.clone() * lead.clone();
        }
    }
    Some(StressVector {
        coefficients: omega,
    })
}

/// Inclusion-minimal dependent edge set of the generic rigidity matroid,
/// by greedy deletion in ascending edge-id order.
pub fn find_stress_circuit(g: &Multigraph, d: usize, seed: u64) -> Option<Vec<usize>> {
    let r = build_rigidity_matrix(&random_generic_placement(g, d, seed));
    let dependent = |ids: &[usize]| r.rows_for(ids).rank() < ids.len();
    let mut kept: Vec<usize> = (0..g.m()).collect();
    if !dependent(&kept) {
        return None;
    }
    for e in 0..g.m() {
        let without: Vec<usize> = kept.iter().copied().filter(|&x| x != e).collect();
        if dependent(&without) {
            kept = without;
        }
    }
    Some(kept)
}
