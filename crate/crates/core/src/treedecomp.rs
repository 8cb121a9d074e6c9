//! Partitioning a multigraph's edges into `k` edge-disjoint spanning trees.
//!
//! Constructive matroid union over `k` copies of the graphic matroid. Edges
//! are inserted in ascending id order; each insertion searches the exchange
//! graph breadth-first for a shortest augmenting path. When an insertion
//! fails, the set of edges reached by the search spans the same vertex
//! classes in every forest, and the components of that set form a vertex
//! partition with too few crossing edges: a Tutte–Nash-Williams witness.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Multigraph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecompError {
    #[error("tree count must be at least 1")]
    ZeroTrees,
}

/// `k` disjoint edge-id sets, each a spanning tree of `graph`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDecomposition {
    pub k: usize,
    pub trees: Vec<Vec<usize>>,
    #[serde(skip)]
    pub graph: Multigraph,
}

/// A vertex partition `P` together with its crossing-edge count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionWitness {
    pub blocks: Vec<Vec<usize>>,
    pub cross_edges: usize,
    /// `k(|P| − 1)`; a valid witness has `cross_edges < required`.
    pub required: usize,
}

impl PartitionWitness {
    pub fn from_blocks(g: &Multigraph, k: usize, blocks: Vec<Vec<usize>>) -> Self {
        let mut block_of = vec![usize::MAX; g.n()];
        for (b, block) in blocks.iter().enumerate() {
            for &v in block {
                block_of[v] = b;
            }
        }
        let cross_edges = g
            .edges()
            .filter(|e| block_of[e.u] != block_of[e.v])
            .count();
        PartitionWitness {
            required: k * blocks.len().saturating_sub(1),
            blocks,
            cross_edges,
        }
    }

    /// Recount against `g` and check the violation.
    pub fn certifies(&self, g: &Multigraph, k: usize) -> bool {
        let mut seen = vec![false; g.n()];
        for &v in self.blocks.iter().flatten() {
            if v >= g.n() || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        if !seen.iter().all(|&s| s) {
            return false;
        }
        let fresh = PartitionWitness::from_blocks(g, k, self.blocks.clone());
        fresh == *self && fresh.cross_edges < fresh.required
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum Refusal {
    EdgeCount { expected: usize, actual: usize },
    Disconnected { witness: PartitionWitness },
    Infeasible { witness: PartitionWitness },
}

impl Refusal {
    pub fn witness(&self) -> Option<&PartitionWitness> {
        match self {
            Refusal::EdgeCount { .. } => None,
            Refusal::Disconnected { witness } | Refusal::Infeasible { witness } => Some(witness),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum DecompositionOutcome {
    Decomposed(TreeDecomposition),
    Refused(Refusal),
}

impl DecompositionOutcome {
    pub fn is_decomposed(&self) -> bool {
        matches!(self, DecompositionOutcome::Decomposed(_))
    }

    pub fn decomposition(&self) -> Option<&TreeDecomposition> {
        match self {
            DecompositionOutcome::Decomposed(d) => Some(d),
            DecompositionOutcome::Refused(_) => None,
        }
    }

    pub fn refusal(&self) -> Option<&Refusal> {
        match self {
            DecompositionOutcome::Decomposed(_) => None,
            DecompositionOutcome::Refused(r) => Some(r),
        }
    }
}

/// Rooted view of one forest supporting path queries.
struct ForestIndex {
    root: Vec<usize>,
    depth: Vec<usize>,
    up: Vec<Option<(usize, usize)>>, // (parent vertex, edge id)
}

impl ForestIndex {
    fn build(g: &Multigraph, owner: &[Option<usize>], forest: usize) -> Self {
        let n = g.n();
        let mut adj = vec![Vec::new(); n];
        for e in g.edges() {
            if owner[e.id] == Some(forest) {
                adj[e.u].push((e.v, e.id));
                adj[e.v].push((e.u, e.id));
            }
        }
        let mut root = vec![usize::MAX; n];
        let mut depth = vec![0; n];
        let mut up = vec![None; n];
        for s in 0..n {
            if root[s] != usize::MAX {
                continue;
            }
            root[s] = s;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &(y, id) in &adj[x] {
                    if root[y] == usize::MAX {
                        root[y] = s;
                        depth[y] = depth[x] + 1;
                        up[y] = Some((x, id));
                        queue.push_back(y);
                    }
                }
            }
        }
        ForestIndex { root, depth, up }
    }

    /// Edge ids of the forest path between `a` and `b`, or `None` when they
    /// lie in different trees.
    fn path(&self, mut a: usize, mut b: usize) -> Option<Vec<usize>> {
        if self.root[a] != self.root[b] {
            return None;
        }
        let mut ids = Vec::new();
        while self.depth[a] > self.depth[b] {
            let (p, id) = self.up[a].expect("non-root");
            ids.push(id);
            a = p;
        }
        while self.depth[b] > self.depth[a] {
            let (p, id) = self.up[b].expect("non-root");
            ids.push(id);
            b = p;
        }
        while a != b {
            let (pa, ia) = self.up[a].expect("non-root");
            let (pb, ib) = self.up[b].expect("non-root");
            ids.push(ia);
            ids.push(ib);
            a = pa;
            b = pb;
        }
        ids.sort_unstable();
        Some(ids)
    }
}

/// Components of the spanning subgraph on the given edge ids.
fn components_of(g: &Multigraph, ids: impl IntoIterator<Item = usize>) -> Vec<Vec<usize>> {
    let sub = g.edge_subgraph(&ids.into_iter().collect::<Vec<_>>());
    sub.components()
}

/// Insert edge `e` by a shortest augmenting path; on failure return the
/// edges reached by the search.
fn insert_edge(g: &Multigraph, k: usize, owner: &mut [Option<usize>], e: usize) -> Result<(), Vec<usize>> {
    let forests: Vec<ForestIndex> = (0..k).map(|i| ForestIndex::build(g, owner, i)).collect();
    let mut prev: Vec<Option<usize>> = vec![None; g.m()];
    let mut visited = vec![false; g.m()];
    visited[e] = true;
    let mut queue = VecDeque::from([e]);
    let mut reached = vec![e];

    while let Some(x) = queue.pop_front() {
        let edge = g.edge(x);
        for (i, forest) in forests.iter().enumerate() {
            if owner[x] == Some(i) {
                continue;
            }
            match forest.path(edge.u, edge.v) {
                None => {
                    // x enters forest i; every predecessor takes the slot
                    // vacated by its successor.
                    let mut cur = x;
                    let mut target = i;
                    loop {
                        let vacated = owner[cur];
                        owner[cur] = Some(target);
                        match prev[cur] {
                            Some(p) => {
                                target = vacated.expect("interior path edges are owned");
                                cur = p;
                            }
                            None => break,
                        }
                    }
                    return Ok(());
                }
                Some(cycle) => {
                    for y in cycle {
                        if !visited[y] {
                            visited[y] = true;
                            prev[y] = Some(x);
                            queue.push_back(y);
                            reached.push(y);
                        }
                    }
                }
            }
        }
    }
    reached.sort_unstable();
    Err(reached)
}

/// Partition every edge of `g` into `k` spanning trees, or refuse with a
/// reason and, where one exists, a partition witness.
pub fn decompose_into_spanning_trees(
    g: &Multigraph,
    k: usize,
) -> Result<DecompositionOutcome, DecompError> {
    if k == 0 {
        return Err(DecompError::ZeroTrees);
    }
    let expected = k * g.n().saturating_sub(1);
    if g.m() != expected {
        return Ok(DecompositionOutcome::Refused(Refusal::EdgeCount {
            expected,
            actual: g.m(),
        }));
    }
    let comps = g.components();
    if comps.len() > 1 {
        return Ok(DecompositionOutcome::Refused(Refusal::Disconnected {
            witness: PartitionWitness::from_blocks(g, k, comps),
        }));
    }

    let mut owner: Vec<Option<usize>> = vec![None; g.m()];
    for e in 0..g.m() {
        if let Err(reached) = insert_edge(g, k, &mut owner, e) {
            let witness = PartitionWitness::from_blocks(g, k, components_of(g, reached));
            debug_assert!(witness.cross_edges < witness.required);
            return Ok(DecompositionOutcome::Refused(Refusal::Infeasible { witness }));
        }
    }

    let mut trees = vec![Vec::new(); k];
    for (id, o) in owner.iter().enumerate() {
        trees[o.expect("all edges placed")].push(id);
    }
    let d = TreeDecomposition {
        k,
        trees,
        graph: g.clone(),
    };
    debug_assert!(verify_decomposition(&d));
    Ok(DecompositionOutcome::Decomposed(d))
}

/// Check every decomposition invariant from scratch.
pub fn verify_decomposition(d: &TreeDecomposition) -> bool {
    let g = &d.graph;
    let n = g.n();
    if d.trees.len() != d.k {
        return false;
    }
    let mut used = vec![false; g.m()];
    for tree in &d.trees {
        if tree.len() != n.saturating_sub(1) {
            return false;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &id in tree {
            if id >= g.m() || used[id] {
                return false;
            }
            used[id] = true;
            let e = g.edge(id);
            let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
            if a == b {
                return false;
            }
            parent[a] = b;
        }
        // n − 1 acyclic edges on n vertices connect everything.
    }
    used.iter().all(|&u| u)
}
