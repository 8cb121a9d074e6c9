//! Multigraphs with stable edge identities, ordered paths and the
//! path-driven edge augmentation.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Canonical forms are computed by trying every vertex permutation.
pub const MAX_CANONICAL_VERTICES: usize = 9;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("edge {index}: self-loop at vertex {vertex}")]
    SelfLoop { index: usize, vertex: usize },
    #[error("edge {index}: endpoint {vertex} out of range for {n} vertices")]
    VertexOutOfRange { index: usize, vertex: usize, n: usize },
    #[error("edge {index}: negative vertex index {value}")]
    NegativeVertex { index: usize, value: i64 },
    #[error("negative vertex count {0}")]
    NegativeVertexCount(i64),
    #[error("graph6 parse error at byte {offset}: {message}")]
    Graph6 { offset: usize, message: String },
    #[error("graph6 cannot encode parallel edges")]
    NotSimple,
    #[error("invalid edge-list JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("{n} vertices exceeds the limit of {max} for {what}")]
    TooLarge { n: usize, max: usize, what: &'static str },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub id: usize,
    pub u: usize,
    pub v: usize,
}

impl Edge {
    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }

    /// Endpoints as `(min, max)`.
    pub fn pair(&self) -> (usize, usize) {
        (self.u.min(self.v), self.u.max(self.v))
    }
}

/// Undirected multigraph on vertices `0..n`. Edge `i` has id `i`; ids are
/// dense and never reused.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "EdgeListDoc", into = "EdgeListDoc")]
pub struct Multigraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

/// Wire form: `{"n": int, "edges": [[u, v], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EdgeListDoc {
    pub n: i64,
    pub edges: Vec<[i64; 2]>,
}

impl TryFrom<EdgeListDoc> for Multigraph {
    type Error = GraphError;

    fn try_from(doc: EdgeListDoc) -> Result<Self, GraphError> {
        if doc.n < 0 {
            return Err(GraphError::NegativeVertexCount(doc.n));
        }
        let mut edges = Vec::with_capacity(doc.edges.len());
        for (index, [u, v]) in doc.edges.into_iter().enumerate() {
            for value in [u, v] {
                if value < 0 {
                    return Err(GraphError::NegativeVertex { index, value });
                }
            }
            edges.push((u as usize, v as usize));
        }
        Multigraph::new(doc.n as usize, edges)
    }
}

impl From<Multigraph> for EdgeListDoc {
    fn from(g: Multigraph) -> Self {
        EdgeListDoc {
            n: g.n as i64,
            edges: g.edges.iter().map(|&(u, v)| [u as i64, v as i64]).collect(),
        }
    }
}

impl Multigraph {
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut g = Multigraph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn empty(n: usize) -> Self {
        Multigraph {
            n,
            edges: Vec::new(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        Multigraph {
            n,
            edges: edges.collect(),
        }
    }

    /// The path `0 – 1 – … – (n−1)`.
    pub fn path(n: usize) -> Self {
        Multigraph {
            n,
            edges: (1..n).map(|i| (i - 1, i)).collect(),
        }
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a simple cycle needs three vertices");
        Multigraph {
            n,
            edges: (0..n).map(|i| (i, (i + 1) % n)).collect(),
        }
    }

    /// Appends an edge and returns its id.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<usize, GraphError> {
        let index = self.edges.len();
        if u == v {
            return Err(GraphError::SelfLoop { index, vertex: u });
        }
        for vertex in [u, v] {
            if vertex >= self.n {
                return Err(GraphError::VertexOutOfRange {
                    index,
                    vertex,
                    n: self.n,
                });
            }
        }
        self.edges.push((u, v));
        Ok(index)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, id: usize) -> Edge {
        let (u, v) = self.edges[id];
        Edge { id, u, v }
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = Edge> + '_ {
        self.edges
            .iter()
            .enumerate()
            .map(|(id, &(u, v))| Edge { id, u, v })
    }

    pub fn endpoints(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn multiplicity(&self, a: usize, b: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(u, v)| (u, v) == (a, b) || (u, v) == (b, a))
            .count()
    }

    /// Lowest edge id joining `a` and `b`.
    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        self.edges
            .iter()
            .position(|&(u, v)| (u, v) == (a, b) || (u, v) == (b, a))
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges
            .iter()
            .all(|&(u, v)| seen.insert((u.min(v), u.max(v))))
    }

    pub fn degree(&self, x: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(u, v)| u == x || v == x)
            .count()
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// Distinct neighbors of every vertex, ascending.
    pub fn neighbor_sets(&self) -> Vec<Vec<usize>> {
        let mut sets = vec![BTreeSet::new(); self.n];
        for &(u, v) in &self.edges {
            sets[u].insert(v);
            sets[v].insert(u);
        }
        sets.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.neighbor_sets();
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        queue.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Same vertex set, edges relabeled through `perm` (old vertex → new vertex).
    pub fn relabel(&self, perm: &[usize]) -> Multigraph {
        assert_eq!(perm.len(), self.n);
        Multigraph {
            n: self.n,
            edges: self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect(),
        }
    }

    /// Subgraph on the same vertices keeping the listed edge ids (renumbered
    /// densely in the listed order).
    pub fn edge_subgraph(&self, ids: &[usize]) -> Multigraph {
        Multigraph {
            n: self.n,
            edges: ids.iter().map(|&i| self.edges[i]).collect(),
        }
    }

    pub fn to_edge_list_json(&self) -> String {
        serde_json::to_string(self).expect("edge list serialization is infallible")
    }
}

/// A directed simple path on distinct vertices, carrying the representative
/// (lowest-id) edge of each consecutive pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrderedPath {
    vertices: Vec<usize>,
    edge_ids: Vec<usize>,
}

impl OrderedPath {
    pub fn new(g: &Multigraph, vertices: Vec<usize>) -> Result<Self, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::InvalidPath("empty vertex sequence".into()));
        }
        for (i, &v) in vertices.iter().enumerate() {
            if v >= g.n() {
                return Err(GraphError::InvalidPath(format!(
                    "vertex {v} out of range for {} vertices",
                    g.n()
                )));
            }
            if vertices[..i].contains(&v) {
                return Err(GraphError::InvalidPath(format!("vertex {v} repeated")));
            }
        }
        let edge_ids = vertices
            .windows(2)
            .map(|w| {
                g.edge_between(w[0], w[1]).ok_or_else(|| {
                    GraphError::InvalidPath(format!("{} and {} are not adjacent", w[0], w[1]))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(OrderedPath { vertices, edge_ids })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edge_ids(&self) -> &[usize] {
        &self.edge_ids
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.edge_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edge_ids.is_empty()
    }

    pub fn reversed(&self) -> OrderedPath {
        OrderedPath {
            vertices: self.vertices.iter().rev().copied().collect(),
            edge_ids: self.edge_ids.iter().rev().copied().collect(),
        }
    }
}

/// All directed simple paths on exactly `d` distinct vertices of `g`, in
/// lexicographic order of their vertex sequences. Parallel edges do not
/// produce duplicate paths.
pub fn enumerate_paths(g: &Multigraph, d: usize) -> Vec<OrderedPath> {
    if d == 0 {
        return Vec::new();
    }
    let adj = g.neighbor_sets();
    let mut out = Vec::new();
    let mut stack = Vec::with_capacity(d);
    let mut on_path = vec![false; g.n()];

    fn extend(
        g: &Multigraph,
        adj: &[Vec<usize>],
        d: usize,
        stack: &mut Vec<usize>,
        on_path: &mut [bool],
        out: &mut Vec<OrderedPath>,
    ) {
        if stack.len() == d {
            let edge_ids = stack
                .windows(2)
                .map(|w| g.edge_between(w[0], w[1]).expect("adjacent by construction"))
                .collect();
            out.push(OrderedPath {
                vertices: stack.clone(),
                edge_ids,
            });
            return;
        }
        let last = *stack.last().expect("non-empty");
        for &next in &adj[last] {
            if !on_path[next] {
                on_path[next] = true;
                stack.push(next);
                extend(g, adj, d, stack, on_path, out);
                stack.pop();
                on_path[next] = false;
            }
        }
    }

    for start in 0..g.n() {
        on_path[start] = true;
        stack.push(start);
        extend(g, &adj, d, &mut stack, &mut on_path, &mut out);
        stack.pop();
        on_path[start] = false;
    }
    out
}

/// A base graph together with its path augmentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Augmentation {
    pub base: Multigraph,
    pub path: OrderedPath,
    pub result: Multigraph,
    pub added_count: usize,
}

impl Augmentation {
    /// Ids in `result` of the copies added for path edge `i` (1-indexed).
    pub fn added_copies(&self, i: usize) -> std::ops::Range<usize> {
        let d = self.path.vertices.len();
        assert!(i >= 1 && i < d);
        let before: usize = (1..i).map(|j| d - j).sum();
        let start = self.base.m() + before;
        start..start + (d - i)
    }
}

/// Add `d − i` copies of the `i`-th path edge (1-indexed) for `i = 1..d−1`.
/// New ids follow the existing ones, grouped by path edge.
pub fn augment(g: &Multigraph, path: &OrderedPath, d: usize) -> Result<Augmentation, GraphError> {
    if path.vertices.len() != d {
        return Err(GraphError::InvalidPath(format!(
            "path has {} vertices, dimension {d} needs {d}",
            path.vertices.len()
        )));
    }
    // Re-validate against this graph; the path may come from elsewhere.
    let checked = OrderedPath::new(g, path.vertices.clone())?;
    let mut result = g.clone();
    for (i, w) in checked.vertices.windows(2).enumerate() {
        for _ in 0..d - (i + 1) {
            result.add_edge(w[0], w[1])?;
        }
    }
    Ok(Augmentation {
        base: g.clone(),
        path: checked,
        added_count: result.m() - g.m(),
        result,
    })
}

/// Isomorphism-invariant byte string: the lexicographically least sorted
/// edge encoding over all vertex permutations. Parallel edges are kept, so
/// multiplicity is part of the form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// Decode back into the representative graph the form describes.
    pub fn to_graph(&self) -> Multigraph {
        let n = self.0[0] as usize;
        Multigraph {
            n,
            edges: self.0[1..]
                .iter()
                .map(|&b| ((b >> 4) as usize, (b & 0xF) as usize))
                .collect(),
        }
    }
}

pub fn canonical_form(g: &Multigraph) -> Result<CanonicalForm, GraphError> {
    let n = g.n();
    if n > MAX_CANONICAL_VERTICES {
        return Err(GraphError::TooLarge {
            n,
            max: MAX_CANONICAL_VERTICES,
            what: "canonical form",
        });
    }
    let encode = |perm: &[usize], buf: &mut Vec<u8>| {
        buf.clear();
        buf.extend(g.edges.iter().map(|&(u, v)| {
            let (a, b) = (perm[u], perm[v]);
            let (a, b) = (a.min(b), a.max(b));
            ((a << 4) | b) as u8
        }));
        buf.sort_unstable();
    };

    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = Vec::with_capacity(g.m());
    encode(&perm, &mut best);
    let mut buf = Vec::with_capacity(g.m());

    // Heap's algorithm, iterative form.
    let mut c = vec![0usize; n];
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            encode(&perm, &mut buf);
            if buf < best {
                std::mem::swap(&mut best, &mut buf);
            }
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    let mut bytes = Vec::with_capacity(best.len() + 1);
    bytes.push(n as u8);
    bytes.extend(best);
    Ok(CanonicalForm(bytes))
}
