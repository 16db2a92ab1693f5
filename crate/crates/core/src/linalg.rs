//! Dense matrices over GF(q²) with row reduction.

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![FieldElement::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = FieldElement::ONE;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch {
                expected: c,
                got: bad.len(),
            });
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    /// Entrywise Frobenius, `A^(q)`.
    pub fn conjugate(&self, ctx: &FieldCtx) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| ctx.frob(x)).collect(),
        }
    }

    pub fn mul(&self, ctx: &FieldCtx, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: rhs.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = ctx.add(out[(i, j)], ctx.mul(a, rhs[(k, j)]));
                    out[(i, j)] = v;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, ctx: &FieldCtx, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(FieldElement::ZERO, |acc, (&a, &b)| ctx.add(acc, ctx.mul(a, b)))
            })
            .collect())
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn row_reduce(&mut self, ctx: &FieldCtx) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = ctx.inv(self[(r, c)]).expect("pivot is nonzero");
            for j in c..self.cols {
                self[(r, j)] = ctx.mul(self[(r, j)], inv);
            }
            for i in 0..self.rows {
                let f = self[(i, c)];
                if i == r || f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let v = ctx.sub(self[(i, j)], ctx.mul(f, self[(r, j)]));
                    self[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, ctx: &FieldCtx) -> usize {
        self.clone().row_reduce(ctx).len()
    }

    /// A basis of the right kernel `{v : A v = 0}`.
    pub fn kernel(&self, ctx: &FieldCtx) -> Vec<Vec<FieldElement>> {
        let mut m = self.clone();
        let pivots = m.row_reduce(ctx);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![FieldElement::ZERO; self.cols];
                v[f] = FieldElement::ONE;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = ctx.neg(m[(r, f)]);
                }
                v
            })
            .collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = FieldElement;
    fn index(&self, (i, j): (usize, usize)) -> &FieldElement {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut FieldElement {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn el(c: u32) -> FieldElement {
        make_field(2, 1).unwrap().element(c).unwrap()
    }

    #[test]
    fn rank_and_kernel() {
        let f = make_field(2, 1).unwrap();
        let m = Matrix::from_rows(vec![
            vec![el(1), el(2), el(3)],
            vec![el(2), el(3), el(1)],
            vec![el(0), el(0), el(0)],
        ])
        .unwrap();
        // second row is ω times the first
        assert_eq!(m.rank(&f), 1);
        let ker = m.kernel(&f);
        assert_eq!(ker.len(), 2);
        for v in ker {
            assert!(m.mul_vec(&f, &v).unwrap().iter().all(|x| x.is_zero()));
        }
        assert_eq!(Matrix::identity(4).rank(&f), 4);
        assert_eq!(Matrix::zeros(2, 3).rank(&f), 0);
    }

    #[test]
    fn duplicated_rows_keep_rank() {
        let f = make_field(3, 1).unwrap();
        let a: Vec<FieldElement> = (0..5).map(|c| f.element(c).unwrap()).collect();
        let b: Vec<FieldElement> = (3..8).map(|c| f.element(c).unwrap()).collect();
        let m1 = Matrix::from_rows(vec![a.clone(), b.clone()]).unwrap();
        let m2 = Matrix::from_rows(vec![a.clone(), b.clone(), a, b]).unwrap();
        assert_eq!(m1.rank(&f), m2.rank(&f));
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(Matrix::from_rows(vec![vec![el(1)], vec![el(1), el(2)]]).is_err());
    }
}
