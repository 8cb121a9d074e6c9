//! Pinned frameworks and the elimination-based tree extraction.
//!
//! Supports are placed along an ordered path `v_0 … v_{d−1}`: joint `v_j`
//! is held in directions `j..d`, which uses exactly `C(d+1, 2)` unit rows.
//! The pipeline then
//!
//! * **A** stacks the rigidity matrix and the support rows;
//! * **B** subtracts from each support row of `v_j` the matching support row
//!   of `v_{j−1}` (taken from A), turning it into a `+1/−1` pair;
//! * **C** drops the support rows of `v_0`;
//! * **D** drops the columns of `v_0`.
//!
//! The surviving support rows behave like extra edges: the row for `v_j`
//! in direction `t` is a copy of path edge `j` restricted to axis `t`, and
//! there are `d − j` of them, matching the augmentation rule.
//!
//! Extraction eliminates `Dᵀ` column by column and files each column under
//! the direction of the equilibrium row that receives its pivot. Each
//! direction's block is then read back as a (scaled) reduced incidence
//! matrix and checked for being a spanning tree.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::Field;
use crate::graph::{augment, Augmentation, GraphError, OrderedPath};
use crate::matrix::Matrix;
use crate::rigidity::{binomial, build_rigidity_matrix, Framework};
use crate::treedecomp::{verify_decomposition, TreeDecomposition};

#[derive(Debug, Error)]
pub enum PinningError {
    #[error(transparent)]
    Path(#[from] GraphError),
    #[error("pinned matrix D is {rows}×{cols} and not invertible")]
    Singular { rows: usize, cols: usize },
}

/// Identity of a row of the pinned system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RowLabel {
    Bar { edge: usize },
    /// Support at path position `position` (vertex `vertex`) along `axis`.
    Support { position: usize, vertex: usize, axis: usize },
}

/// One coordinate slot: an equilibrium equation of `Dᵀ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Slot {
    pub vertex: usize,
    pub axis: usize,
}

#[derive(Clone, Debug)]
pub struct PinnedSystem {
    pub framework: Framework<BigRational>,
    pub path: OrderedPath,
    pub augmentation: Augmentation,
    pub stage_a: Matrix<BigRational>,
    pub stage_b: Matrix<BigRational>,
    pub stage_c: Matrix<BigRational>,
    pub stage_d: Matrix<BigRational>,
    /// Labels of the rows of A and B.
    pub row_labels: Vec<RowLabel>,
    /// Labels of the rows of C and D: bars, then the retained supports.
    pub retained_rows: Vec<RowLabel>,
    /// Column slots of D (every vertex except `v_0`).
    pub columns: Vec<Slot>,
    /// Retained support rows, in the order they appear in C and D.
    pub y: Vec<RowLabel>,
}

impl PinnedSystem {
    pub fn d(&self) -> usize {
        self.framework.dim()
    }

    /// Column index in A/B/C for `(vertex, axis)`.
    fn full_column(&self, vertex: usize, axis: usize) -> usize {
        vertex * self.d() + axis
    }

    /// Edge id in the augmented graph for column `j` of `Dᵀ`.
    pub fn augmented_edge(&self, j: usize) -> usize {
        // Bars keep their ids; the retained supports appear in the same
        // order as the copies `augment` appends.
        j
    }
}

/// Materialize the four stages for `path`.
pub fn build_pinned_system(
    f: &Framework<BigRational>,
    path: &OrderedPath,
) -> Result<PinnedSystem, PinningError> {
    let d = f.dim();
    let g = f.graph();
    let n = g.n();
    let augmentation = augment(g, path, d)?;
    let verts = augmentation.path.vertices().to_vec();

    let r = build_rigidity_matrix(f);
    let m = g.m();
    let supports = binomial(d + 1, 2);

    let mut row_labels: Vec<RowLabel> = (0..m).map(|edge| RowLabel::Bar { edge }).collect();
    for (position, &vertex) in verts.iter().enumerate() {
        for axis in position..d {
            row_labels.push(RowLabel::Support {
                position,
                vertex,
                axis,
            });
        }
    }
    debug_assert_eq!(row_labels.len(), m + supports);

    let mut stage_a = Matrix::zeros(m + supports, n * d);
    for i in 0..m {
        stage_a.row_mut(i).clone_from_slice(r.matrix.row(i));
    }
    for (i, label) in row_labels.iter().enumerate().skip(m) {
        if let RowLabel::Support { vertex, axis, .. } = *label {
            stage_a[(i, vertex * d + axis)] = BigRational::one();
        }
    }

    let row_of = |position: usize, axis: usize| {
        row_labels
            .iter()
            .position(|l| matches!(*l, RowLabel::Support { position: p, axis: a, .. } if p == position && a == axis))
            .expect("support row exists")
    };
    let mut stage_b = stage_a.clone();
    for position in 1..d {
        for axis in position..d {
            let target = row_of(position, axis);
            let source = row_of(position - 1, axis);
            for c in 0..n * d {
                let v = stage_b[(target, c)].clone() - stage_a[(source, c)].clone();
                stage_b[(target, c)] = v;
            }
        }
    }

    let kept_rows: Vec<usize> = (0..row_labels.len())
        .filter(|&i| !matches!(row_labels[i], RowLabel::Support { position: 0, .. }))
        .collect();
    let retained_rows: Vec<RowLabel> = kept_rows.iter().map(|&i| row_labels[i]).collect();
    let y = retained_rows[m..].to_vec();
    let stage_c = stage_b.select_rows(&kept_rows);

    let v0 = verts[0];
    let columns: Vec<Slot> = (0..n)
        .filter(|&v| v != v0)
        .flat_map(|vertex| (0..d).map(move |axis| Slot { vertex, axis }))
        .collect();
    let col_idx: Vec<usize> = columns.iter().map(|s| s.vertex * d + s.axis).collect();
    let stage_d = stage_c.select_cols(&col_idx);

    Ok(PinnedSystem {
        framework: f.clone(),
        path: augmentation.path.clone(),
        augmentation,
        stage_a,
        stage_b,
        stage_c,
        stage_d,
        row_labels,
        retained_rows,
        columns,
        y,
    })
}

/// Whether D is square and nonsingular.
pub fn pinned_invertible(p: &PinnedSystem) -> bool {
    p.stage_d.is_square() && p.stage_d.rank() == p.stage_d.rows()
}

/// For each axis, the sum over vertices of the stage-C columns on that
/// axis; all zero for a well-formed system.
pub fn stage_c_axis_sums(p: &PinnedSystem) -> Vec<Vec<BigRational>> {
    let (d, n) = (p.d(), p.framework.graph().n());
    (0..d)
        .map(|axis| {
            (0..p.stage_c.rows())
                .map(|r| {
                    (0..n).fold(BigRational::zero(), |acc, v| {
                        acc + p.stage_c[(r, p.full_column(v, axis))].clone()
                    })
                })
                .collect()
        })
        .collect()
}

/// Row order used when eliminating `Dᵀ`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PivotRule {
    /// Rows sorted by axis, then vertex; first nonzero pivot.
    #[default]
    AxisMajor,
    /// Rows sorted by vertex, then axis; first nonzero pivot.
    VertexMajor,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PivotStep {
    pub column: usize,
    pub row: Slot,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TreeFailure {
    /// `T_axis` has `columns` columns but a spanning tree needs `expected`.
    WrongSize { axis: usize, columns: usize, expected: usize },
    /// A column of `T_axis` is not a scaled incidence column.
    NotIncidence { axis: usize, column: usize, nonzeros: usize },
    /// The read-back edge does not match the augmented graph.
    EdgeMismatch { axis: usize, column: usize },
    /// The edges of `T_axis` contain a cycle, so they are not a tree.
    Cycle { axis: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum TreeExtraction {
    /// One edge-id set of the augmented graph per axis.
    Trees { trees: Vec<Vec<usize>>, verified: bool },
    Failed { failures: Vec<TreeFailure> },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EliminationPartition {
    pub rule: PivotRule,
    /// Column indices of `Dᵀ` filed under each axis.
    pub s: Vec<Vec<usize>>,
    #[serde(skip)]
    pub t: Vec<Matrix<BigRational>>,
    pub pivot_trace: Vec<PivotStep>,
    pub extraction: TreeExtraction,
}

impl EliminationPartition {
    pub fn trees(&self) -> Option<&[Vec<usize>]> {
        match &self.extraction {
            TreeExtraction::Trees { trees, .. } => Some(trees),
            TreeExtraction::Failed { .. } => None,
        }
    }
}

/// Eliminate `Dᵀ`, partition its columns by the axis of their pivot rows,
/// and read each axis block back as a tree.
pub fn extract_tree_partition(
    p: &PinnedSystem,
    rule: PivotRule,
) -> Result<EliminationPartition, PinningError> {
    if !pinned_invertible(p) {
        return Err(PinningError::Singular {
            rows: p.stage_d.rows(),
            cols: p.stage_d.cols(),
        });
    }
    let d = p.d();
    let dt = p.stage_d.transpose();
    let size = dt.rows();

    let mut order: Vec<usize> = (0..size).collect();
    match rule {
        PivotRule::AxisMajor => order.sort_by_key(|&r| (p.columns[r].axis, p.columns[r].vertex)),
        PivotRule::VertexMajor => order.sort_by_key(|&r| (p.columns[r].vertex, p.columns[r].axis)),
    }
    let mut work = dt.select_rows(&order);
    let labels: Vec<Slot> = order.iter().map(|&r| p.columns[r]).collect();

    let mut used = vec![false; size];
    let mut s = vec![Vec::new(); d];
    let mut pivot_trace = Vec::with_capacity(size);
    for col in 0..size {
        let pivot = (0..size)
            .find(|&r| !used[r] && !work[(r, col)].is_zero())
            .expect("invertible matrix has a pivot in every column");
        used[pivot] = true;
        s[labels[pivot].axis].push(col);
        pivot_trace.push(PivotStep {
            column: col,
            row: labels[pivot],
        });
        let inv = work[(pivot, col)].inv();
        for r in 0..size {
            if !used[r] && !work[(r, col)].is_zero() {
                let factor = work[(r, col)].clone() * inv.clone();
                work.sub_row_multiple(r, pivot, &factor);
            }
        }
    }

    // T_axis: rows of Dᵀ on that axis (ascending vertex), columns S_axis,
    // original entries.
    let t: Vec<Matrix<BigRational>> = (0..d)
        .map(|axis| {
            let rows: Vec<usize> = (0..size).filter(|&r| p.columns[r].axis == axis).collect();
            dt.select_rows(&rows).select_cols(&s[axis])
        })
        .collect();

    let extraction = read_trees(p, &s, &t);
    Ok(EliminationPartition {
        rule,
        s,
        t,
        pivot_trace,
        extraction,
    })
}

fn read_trees(p: &PinnedSystem, s: &[Vec<usize>], t: &[Matrix<BigRational>]) -> TreeExtraction {
    let g = &p.augmentation.result;
    let n = g.n();
    let v0 = p.path.vertices()[0];
    let others: Vec<usize> = (0..n).filter(|&v| v != v0).collect();
    let mut failures = Vec::new();
    let mut trees = Vec::new();

    for (axis, cols) in s.iter().enumerate() {
        if cols.len() != n - 1 {
            failures.push(TreeFailure::WrongSize {
                axis,
                columns: cols.len(),
                expected: n - 1,
            });
            continue;
        }
        let block = &t[axis];
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut tree = Vec::with_capacity(cols.len());
        let mut ok = true;
        for (j, &col) in cols.iter().enumerate() {
            let nz: Vec<usize> = (0..block.rows()).filter(|&r| !block[(r, j)].is_zero()).collect();
            // Undo the column scaling: a single entry is an edge to v_0, a
            // pair must be equal and opposite.
            let ends = match nz.as_slice() {
                [a] => (others[*a], v0),
                [a, b] if (block[(*a, j)].clone() + block[(*b, j)].clone()).is_zero() => {
                    (others[*a], others[*b])
                }
                _ => {
                    failures.push(TreeFailure::NotIncidence {
                        axis,
                        column: col,
                        nonzeros: nz.len(),
                    });
                    ok = false;
                    continue;
                }
            };
            let id = p.augmented_edge(col);
            let e = g.edge(id);
            if e.pair() != (ends.0.min(ends.1), ends.0.max(ends.1)) {
                failures.push(TreeFailure::EdgeMismatch { axis, column: col });
                ok = false;
                continue;
            }
            let (a, b) = (find(&mut parent, ends.0), find(&mut parent, ends.1));
            if a == b {
                failures.push(TreeFailure::Cycle { axis });
                ok = false;
                break;
            }
            parent[a] = b;
            tree.push(id);
        }
        if ok {
            tree.sort_unstable();
            trees.push(tree);
        }
    }

    if failures.is_empty() {
        let verified = verify_decomposition(&TreeDecomposition {
            k: s.len(),
            trees: trees.clone(),
            graph: g.clone(),
        });
        TreeExtraction::Trees { trees, verified }
    } else {
        TreeExtraction::Failed { failures }
    }
}
