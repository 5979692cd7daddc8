//! Dense matrices over any [`Field`], exact Gaussian elimination.

use serde::{Serialize, Serializer};

use super::{AlgebraError, Field, PExponent};

struct Elim<F> {
    m: Matrix<F>,
    pivots: Vec<usize>,
    odd: bool,
    colperm: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn from_rows(rows: Vec<Vec<F>>) -> Matrix<F> {
        let r = rows.len();
        assert!(r > 0, "empty matrix");
        let c = rows[0].len();
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Matrix<F> {
        let data = (0..rows).flat_map(|i| (0..cols).map(move |j| (i, j))).map(|(i, j)| f(i, j)).collect();
        Matrix { rows, cols, data }
    }

    pub fn identity(n: usize, proto: &F) -> Matrix<F> {
        Matrix::from_fn(n, n, |i, j| if i == j { proto.one_like() } else { proto.zero_like() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix<F> {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, o: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        Matrix::from_fn(self.rows, o.cols, |i, j| {
            (1..self.cols).fold(self.get(i, 0).clone() * o.get(0, j).clone(), |acc, k| {
                acc + self.get(i, k).clone() * o.get(k, j).clone()
            })
        })
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                (1..self.cols).fold(self.get(i, 0).clone() * v[0].clone(), |acc, k| {
                    acc + self.get(i, k).clone() * v[k].clone()
                })
            })
            .collect()
    }

    pub fn map<G>(&self, f: impl FnMut(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<G>(&self, f: impl FnMut(&F) -> Result<G, AlgebraError>) -> Result<Matrix<G>, AlgebraError> {
        Ok(Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect::<Result<_, _>>()? })
    }

    // Forward elimination over the first `upto` columns. Returns the echelon
    // form, pivot columns, parity of the swaps and the column order used.
    // Substrates with a pivot cost get full pivoting inside that block, so
    // every elimination factor has nonnegative valuation.
    fn eliminate(&self, upto: usize) -> Result<Elim<F>, AlgebraError> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut odd = false;
        let mut colperm: Vec<usize> = (0..upto).collect();
        let full = self.data.iter().any(|x| x.pivot_cost().is_some());
        let mut r = 0;
        let mut c = 0;
        while r < m.rows && c < upto {
            let found = if full { m.best_pivot(r, c, upto)? } else { m.first_pivot(r, c)?.map(|i| (i, c)) };
            let Some((pr, pc)) = found else {
                if full {
                    break;
                }
                c += 1;
                continue;
            };
            if pc != c {
                for i in 0..m.rows {
                    m.data.swap(i * m.cols + pc, i * m.cols + c);
                }
                colperm.swap(pc, c);
                odd = !odd;
            }
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
                odd = !odd;
            }
            let inv = m.get(r, c).try_inv()?;
            for i in r + 1..m.rows {
                if m.get(i, c).is_zero()? {
                    continue;
                }
                let factor = m.get(i, c).clone() * inv.clone();
                for j in c..m.cols {
                    let v = m.get(i, j).clone() - factor.clone() * m.get(r, j).clone();
                    m.set(i, j, v);
                }
                m.set(i, c, factor.zero_like());
            }
            pivots.push(c);
            r += 1;
            c += 1;
        }
        Ok(Elim { m, pivots, odd, colperm })
    }

    fn first_pivot(&self, r: usize, c: usize) -> Result<Option<usize>, AlgebraError> {
        for i in r..self.rows {
            if !self.get(i, c).is_zero()? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    fn best_pivot(&self, r: usize, c: usize, upto: usize) -> Result<Option<(usize, usize)>, AlgebraError> {
        let mut best: Option<((usize, usize), PExponent)> = None;
        for j in c..upto {
            for i in r..self.rows {
                let e = self.get(i, j);
                if e.is_zero()? {
                    continue;
                }
                let Some(cost) = e.pivot_cost() else { continue };
                if best.as_ref().map_or(true, |(_, b)| cost < *b) {
                    best = Some(((i, j), cost));
                }
            }
        }
        Ok(best.map(|(ij, _)| ij))
    }

    pub fn det(&self) -> Result<F, AlgebraError> {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let Elim { m, pivots, odd, .. } = self.eliminate(self.cols)?;
        if pivots.len() < self.rows {
            return Ok(self.get(0, 0).zero_like());
        }
        let d = (1..self.rows).fold(m.get(0, 0).clone(), |acc, i| acc * m.get(i, i).clone());
        Ok(if odd { -d } else { d })
    }

    pub fn rank(&self) -> Result<usize, AlgebraError> {
        Ok(self.eliminate(self.cols)?.pivots.len())
    }

    /// Gauss–Jordan inverse; `None` for singular matrices.
    pub fn inverse(&self) -> Result<Option<Matrix<F>>, AlgebraError> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let proto = self.get(0, 0);
        let aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                proto.one_like()
            } else {
                proto.zero_like()
            }
        });
        let Elim { mut m, pivots, colperm, .. } = aug.eliminate(n)?;
        if pivots.len() < n {
            return Ok(None);
        }
        for r in (0..n).rev() {
            let inv = m.get(r, r).try_inv()?;
            for j in 0..2 * n {
                let v = m.get(r, j).clone() * inv.clone();
                m.set(r, j, v);
            }
            for i in 0..r {
                if m.get(i, r).is_zero()? {
                    continue;
                }
                let factor = m.get(i, r).clone();
                for j in r..2 * n {
                    let v = m.get(i, j).clone() - factor.clone() * m.get(r, j).clone();
                    m.set(i, j, v);
                }
            }
        }
        // the left block was A P, so row k of the result is row colperm[k] of A^{-1}
        let mut rows = vec![Vec::new(); n];
        for (k, &orig) in colperm.iter().enumerate() {
            rows[orig] = (0..n).map(|j| m.get(k, j + n).clone()).collect();
        }
        Ok(Some(Matrix::from_rows(rows)))
    }

    /// Solves `M x = b` for square nonsingular `M`.
    pub fn solve(&self, b: &[F]) -> Result<Option<Vec<F>>, AlgebraError> {
        Ok(self.inverse()?.map(|inv| inv.mul_vec(b)))
    }

    /// Entrywise test against the identity, to precision on series.
    pub fn is_identity(&self) -> Result<bool, AlgebraError> {
        if self.rows != self.cols {
            return Ok(false);
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(i, j);
                let target = if i == j { e.one_like() } else { e.zero_like() };
                if !(e.clone() - target).is_zero()? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

impl<F: Serialize> Serialize for Matrix<F> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<&[F]> = self.data.chunks(self.cols).collect();
        rows.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{gf_make, GfElem};

    #[test]
    fn inverse_and_det_over_f4() {
        let f = gf_make(2, 2).unwrap();
        let g = GfElem::generator(&f);
        let one = GfElem::one(&f);
        let a = Matrix::from_rows(vec![vec![one.clone(), g.clone()], vec![one.clone(), g.clone() + one.clone()]]);
        assert_eq!(a.det().unwrap(), one);
        let inv = a.inverse().unwrap().unwrap();
        assert!(a.mul(&inv).is_identity().unwrap());
        assert!(inv.mul(&a).is_identity().unwrap());
        let sing = Matrix::from_rows(vec![vec![one.clone(), g.clone()], vec![one.clone(), g.clone()]]);
        assert!(sing.inverse().unwrap().is_none());
        assert_eq!(sing.rank().unwrap(), 1);
    }

    #[test]
    fn determinant_sign_with_swap() {
        let f = gf_make(5, 1).unwrap();
        let e = |n| GfElem::new(&f, n);
        let m = Matrix::from_rows(vec![vec![e(0), e(1)], vec![e(1), e(0)]]);
        assert_eq!(m.det().unwrap(), e(4));
    }
}
