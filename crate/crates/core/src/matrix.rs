//! Dense matrices over an exact field and the elimination routines built on them.

use std::ops::{Index, IndexMut};

use crate::field::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>, // row-major
}

/// Reduced row echelon form plus the pivot column of each nonzero row.
#[derive(Clone, Debug)]
pub struct Rref<F> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged row");
            data.extend(row);
        }
        Matrix {
            rows: r,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [F] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    /// Submatrix keeping the listed rows, in the listed order.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut out = Matrix::zeros(rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            out.row_mut(i).clone_from_slice(self.row(r));
        }
        out
    }

    /// Submatrix keeping the listed columns, in the listed order.
    pub fn select_cols(&self, cols: &[usize]) -> Self {
        let mut out = Matrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out[(r, j)] = self[(r, c)].clone();
            }
        }
        out
    }

    pub fn nonzeros_in_row(&self, r: usize) -> usize {
        self.row(r).iter().filter(|x| !x.is_zero()).count()
    }

    /// `row[target] -= factor * row[source]`
    pub fn sub_row_multiple(&mut self, target: usize, source: usize, factor: &F) {
        if factor.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let s = self[(source, c)].clone();
            if s.is_zero() {
                continue;
            }
            let t = self[(target, c)].clone();
            self[(target, c)] = t - factor.clone() * s;
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rref(&self) -> Rref<F> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv();
            for x in m.row_mut(r) {
                if !x.is_zero() {
                    *x = x.clone() * inv.clone();
                }
            }
            for i in 0..m.rows {
                if i != r {
                    let f = m[(i, c)].clone();
                    m.sub_row_multiple(i, r, &f);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        // Forward elimination only; cheaper than a full rref.
        let mut m = self.clone();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv();
            for i in r + 1..m.rows {
                if !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone() * inv.clone();
                    m.sub_row_multiple(i, r, &f);
                }
            }
            r += 1;
        }
        r
    }

    /// Basis of `{x : self · x = 0}`, one vector per free column in
    /// ascending order; each basis vector has a 1 at its free column.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let Rref { matrix, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![F::zero(); self.cols];
                v[free] = F::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -matrix[(row, free)].clone();
                }
                v
            })
            .collect()
    }

    /// `vᵀ · self`
    pub fn left_mul(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![F::zero(); self.cols];
        for (r, coef) in v.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            for c in 0..self.cols {
                let x = &self[(r, c)];
                if !x.is_zero() {
                    out[c] = out[c].clone() + coef.clone() * x.clone();
                }
            }
        }
        out
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (r, c): (usize, usize)) -> &F {
        assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F {
        assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn q(rows: Vec<Vec<i64>>) -> Matrix<BigRational> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(BigRational::from_i64).collect())
                .collect(),
            cols,
        )
    }

    #[test]
    fn rank_and_kernel_small() {
        let m = q(vec![vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let ker = m.kernel();
        assert_eq!(ker.len(), 1);
        let prod = m.transpose().left_mul(&ker[0]);
        assert!(prod.iter().all(Field::is_zero));
    }

    #[test]
    fn empty_matrix_rank_zero() {
        let m: Matrix<Fp> = Matrix::zeros(0, 4);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.kernel().len(), 4);
    }

    proptest! {
        #[test]
        fn rank_agrees_with_bareiss(entries in prop::collection::vec(-3i64..=3, 20)) {
            let rows: Vec<Vec<i64>> = entries.chunks(5).map(|c| c.to_vec()).collect();
            let oracle = rigidity_oracles::bareiss_rank(
                rows.iter()
                    .map(|r| r.iter().map(|&x| num_bigint::BigInt::from(x)).collect())
                    .collect(),
            );
            prop_assert_eq!(q(rows.clone()).rank(), oracle);
            prop_assert_eq!(q(rows.clone()).rref().pivots.len(), oracle);
            prop_assert_eq!(q(rows).transpose().rank(), oracle);
        }
    }
}
