//! Brute-force reference checkers.
//!
//! Everything here is written against first principles and shares no code
//! with `rigidity-core`; tests use these functions to freeze expected values
//! and to cross-check the fast paths.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Decode a graph6 line into `(n, edges)` with edges as `(i, j)`, `i < j`,
/// sorted lexicographically. Returns `None` on any malformation.
pub fn graph6_decode(line: &str) -> Option<(usize, Vec<(usize, usize)>)> {
    let bytes = line.trim_end().as_bytes();
    if bytes.is_empty() || bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return None;
    }
    let (n, body) = if bytes[0] != 126 {
        ((bytes[0] - 63) as usize, &bytes[1..])
    } else if bytes.len() >= 4 && bytes[1] != 126 {
        let mut n = 0usize;
        for &b in &bytes[1..4] {
            n = (n << 6) | (b - 63) as usize;
        }
        (n, &bytes[4..])
    } else {
        return None;
    };
    let mut bits = Vec::new();
    for &b in body {
        let v = b - 63;
        for shift in (0..6).rev() {
            bits.push((v >> shift) & 1 == 1);
        }
    }
    let needed = n * n.saturating_sub(1) / 2;
    if bits.len() < needed || bits.len() >= needed + 6 {
        return None;
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bits[k] {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    edges.sort();
    Some((n, edges))
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
pub fn bareiss_rank(mut rows: Vec<Vec<BigInt>>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        for r in rank + 1..rows.len() {
            for cc in c + 1..cols {
                let v = &rows[rank][c] * &rows[r][cc] - &rows[r][c] * &rows[rank][cc];
                rows[r][cc] = v / &prev;
            }
            rows[r][c] = BigInt::zero();
        }
        prev = rows[rank][c].clone();
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Deterministic pseudo-random integer coordinates in `[-range, range]`
/// (splitmix64 stream), one `d`-vector per vertex.
pub fn integer_placement(n: usize, d: usize, seed: u64, range: i64) -> Vec<Vec<i64>> {
    let mut state = seed;
    let mut next = move || {
        state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    };
    let span = (2 * range + 1) as u64;
    (0..n)
        .map(|_| (0..d).map(|_| (next() % span) as i64 - range).collect())
        .collect()
}

/// Rigidity matrix rows over the integers for the given coordinates.
pub fn rigidity_rows(
    n: usize,
    edges: &[(usize, usize)],
    d: usize,
    coords: &[Vec<i64>],
) -> Vec<Vec<BigInt>> {
    edges
        .iter()
        .map(|&(u, v)| {
            let mut row = vec![BigInt::zero(); n * d];
            for k in 0..d {
                let diff = coords[u][k] - coords[v][k];
                row[u * d + k] = BigInt::from(diff);
                row[v * d + k] = BigInt::from(-diff);
            }
            row
        })
        .collect()
}

/// Rank of the rigidity matrix at a pseudo-random integer placement.
pub fn rigidity_rank_exact(n: usize, edges: &[(usize, usize)], d: usize, seed: u64) -> usize {
    let coords = integer_placement(n, d, seed, 1_000_000);
    bareiss_rank(rigidity_rows(n, edges, d, &coords))
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    r
}

/// Exhaustive search for a partition of `edges` into `k` spanning trees.
/// Returns the color of each edge on success.
pub fn exhaustive_tree_partition(
    n: usize,
    edges: &[(usize, usize)],
    k: usize,
) -> Option<Vec<usize>> {
    if k == 0 || edges.len() != k * n.saturating_sub(1) {
        return None;
    }
    // Backtracking over colorings; a color class is rejected as soon as it
    // closes a cycle. With exactly k(n-1) edges, k acyclic classes of size
    // n-1 are spanning trees.
    fn go(
        i: usize,
        n: usize,
        edges: &[(usize, usize)],
        k: usize,
        colors: &mut Vec<usize>,
        forests: &mut Vec<Vec<usize>>,
        sizes: &mut Vec<usize>,
    ) -> bool {
        if i == edges.len() {
            return true;
        }
        let (u, v) = edges[i];
        // Colors are interchangeable: never open more than one fresh color.
        let used = colors.iter().copied().max().map_or(0, |c| c + 1);
        for c in 0..k.min(used + 1) {
            if sizes[c] == n - 1 {
                continue;
            }
            let ru = find(&mut forests[c], u);
            let rv = find(&mut forests[c], v);
            if ru == rv {
                continue;
            }
            let saved = forests[c].clone();
            forests[c][ru] = rv;
            sizes[c] += 1;
            colors.push(c);
            if go(i + 1, n, edges, k, colors, forests, sizes) {
                return true;
            }
            colors.pop();
            sizes[c] -= 1;
            forests[c] = saved;
        }
        false
    }
    let mut colors = Vec::with_capacity(edges.len());
    let mut forests = vec![(0..n).collect::<Vec<_>>(); k];
    let mut sizes = vec![0; k];
    go(0, n, edges, k, &mut colors, &mut forests, &mut sizes).then_some(colors)
}

/// Whether the edge set connects all `n` vertices.
pub fn is_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    if n == 0 {
        return true;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    let mut comps = n;
    for &(u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            comps -= 1;
        }
    }
    comps == 1
}

/// Number of labeled connected simple graphs on `n` vertices with `m` edges,
/// by enumerating all edge subsets.
pub fn count_labeled_connected(n: usize, m: usize) -> u64 {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    assert!(pairs.len() < 32);
    let mut count = 0;
    for mask in 0u32..(1u32 << pairs.len()) {
        if mask.count_ones() as usize != m {
            continue;
        }
        let edges: Vec<_> = (0..pairs.len())
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| pairs[b])
            .collect();
        if is_connected(n, &edges) {
            count += 1;
        }
    }
    count
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Size of the automorphism group of a simple graph.
pub fn automorphism_count(n: usize, edges: &[(usize, usize)]) -> u64 {
    let norm = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
    let mut base: Vec<_> = edges.iter().map(|&(a, b)| norm(a, b)).collect();
    base.sort();
    permutations(n)
        .into_iter()
        .filter(|p| {
            let mut img: Vec<_> = edges.iter().map(|&(a, b)| norm(p[a], p[b])).collect();
            img.sort();
            img == base
        })
        .count() as u64
}

/// Whether two multigraphs are isomorphic, by trying every bijection.
pub fn isomorphic(n: usize, a: &[(usize, usize)], b: &[(usize, usize)]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let norm = |x: usize, y: usize| if x < y { (x, y) } else { (y, x) };
    let mut target: Vec<_> = b.iter().map(|&(x, y)| norm(x, y)).collect();
    target.sort();
    permutations(n).into_iter().any(|p| {
        let mut img: Vec<_> = a.iter().map(|&(x, y)| norm(p[x], p[y])).collect();
        img.sort();
        img == target
    })
}

/// Count of ordered sequences of `d` distinct vertices whose consecutive
/// pairs are adjacent, by scanning every `d`-tuple.
pub fn count_ordered_paths(n: usize, edges: &[(usize, usize)], d: usize) -> usize {
    let adjacent = |a: usize, b: usize| edges.iter().any(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a));
    let total = n.pow(d as u32);
    (0..total)
        .filter(|&code| {
            let mut c = code;
            let seq: Vec<usize> = (0..d)
                .map(|_| {
                    let v = c % n;
                    c /= n;
                    v
                })
                .collect();
            let distinct = (0..d).all(|i| (i + 1..d).all(|j| seq[i] != seq[j]));
            distinct && seq.windows(2).all(|w| adjacent(w[0], w[1]))
        })
        .count()
}
