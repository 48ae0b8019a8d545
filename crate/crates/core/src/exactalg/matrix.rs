//! Dense matrices over a [`Field`].

use super::field::Field;
use super::unipoly::UniPoly;

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: F) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.rows == other.rows && self.cols == other.cols);
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn mul_vec(&self, x: &[F]) -> Vec<F> {
        assert_eq!(self.cols, x.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(F::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect()
    }

    pub fn trace(&self) -> F {
        assert!(self.is_square());
        (0..self.rows).fold(F::zero(), |acc, i| acc.add(self.get(i, i)))
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Row-reduce in place; returns the pivot columns and whether an odd
    /// number of row swaps occurred.
    fn eliminate(&mut self) -> (Vec<usize>, bool) {
        let mut pivots = Vec::new();
        let mut odd = false;
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
                odd = !odd;
            }
            let inv = self.get(r, c).inv();
            for i in r + 1..self.rows {
                let f = self.get(i, c).mul(&inv);
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let x = self.get(i, j).sub(&f.mul(self.get(r, j)));
                    self.set(i, j, x);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (pivots, odd)
    }

    pub fn rank(&self) -> usize {
        self.clone().eliminate().0.len()
    }

    pub fn determinant(&self) -> F {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let mut m = self.clone();
        let (pivots, odd) = m.eliminate();
        if pivots.len() < self.rows {
            return F::zero();
        }
        let d = (0..self.rows).fold(F::one(), |acc, i| acc.mul(m.get(i, i)));
        if odd {
            d.neg()
        } else {
            d
        }
    }

    /// Solve `self * x = b` for a square invertible matrix.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert!(self.is_square() && b.len() == self.rows);
        let n = self.rows;
        let mut aug = Self::zeros(n, n + 1);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n, b[i].clone());
        }
        let (pivots, _) = aug.eliminate();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut x = vec![F::zero(); n];
        for i in (0..n).rev() {
            let mut s = aug.get(i, n).clone();
            for j in i + 1..n {
                s = s.sub(&aug.get(i, j).mul(&x[j]));
            }
            x[i] = s.div(aug.get(i, i));
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, F::one());
        }
        let (pivots, _) = aug.eliminate();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        for i in (0..n).rev() {
            let inv = aug.get(i, i).inv();
            for j in i..2 * n {
                let x = aug.get(i, j).mul(&inv);
                aug.set(i, j, x);
            }
            for k in 0..i {
                let f = aug.get(k, i).clone();
                if f.is_zero() {
                    continue;
                }
                for j in i..2 * n {
                    let x = aug.get(k, j).sub(&f.mul(aug.get(i, j)));
                    aug.set(k, j, x);
                }
            }
        }
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Some(out)
    }

    /// Characteristic polynomial `det(t·I − A)` by the Faddeev–LeVerrier
    /// recursion (valid in characteristic zero).
    pub fn charpoly(&self) -> UniPoly<F> {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![F::zero(); n + 1];
        coeffs[n] = F::one();
        let mut m = Self::zeros(n, n);
        for k in 1..=n {
            // M_k = A·M_{k-1} + c_{n-k+1}·I
            let mut next = self.mul(&m);
            for i in 0..n {
                let x = next.get(i, i).add(&coeffs[n - k + 1]);
                next.set(i, i, x);
            }
            m = next;
            let c = self.mul(&m).trace().neg().div(&F::from_i64(k as i64));
            coeffs[n - k] = c;
        }
        UniPoly::new(coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::{int, Rational};

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    #[test]
    fn determinant_and_inverse() {
        let a = m(&[&[0, 2, 1], &[1, 1, 0], &[3, 0, 1]]);
        assert_eq!(a.determinant(), int(-5));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(3));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn solve_matches_inverse() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let x = a.solve(&[int(1), int(2)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![int(1), int(2)]);
    }

    #[test]
    fn charpoly_of_companion() {
        // companion of t^2 + 3t + 2
        let a = m(&[&[0, -2], &[1, -3]]);
        assert_eq!(a.charpoly(), UniPoly::new(vec![int(2), int(3), int(1)]));
        let d = m(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 2]]);
        // (t-1)(t-2)^2 = t^3 - 5t^2 + 8t - 4
        assert_eq!(d.charpoly(), UniPoly::new(vec![int(-4), int(8), int(-5), int(1)]));
    }
}
