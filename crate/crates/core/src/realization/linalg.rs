//! Dense exact matrices over Q(sqrt 3).

use std::fmt;

use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Scalar>>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![vec![Scalar::zero(); cols]; rows] }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<Scalar>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix { rows: rows.len(), cols, data: rows }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Scalar::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i]
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        self.data[i][j] = value;
    }

    pub fn add_to(&mut self, i: usize, j: usize, value: &Scalar) {
        self.data[i][j] += value;
    }

    pub fn push_row(&mut self, row: Vec<Scalar>) {
        assert_eq!(row.len(), self.cols);
        self.data.push(row);
        self.rows += 1;
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.data[i].iter().all(Scalar::is_zero)
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.cols);
        self.data
            .iter()
            .map(|row| row.iter().zip(x).fold(Scalar::zero(), |acc, (a, b)| acc + a * b))
            .collect()
    }

    /// Rank by fraction-free (Bareiss) elimination; pivot-free columns are skipped.
    pub fn rank(&self) -> usize {
        let mut a = self.data.clone();
        let mut previous = Scalar::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let inv = previous.inverse().expect("pivots are nonzero");
            for i in r + 1..self.rows {
                for j in c + 1..self.cols {
                    let value = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) * &inv;
                    a[i][j] = value;
                }
                a[i][c] = Scalar::zero();
            }
            previous = a[r][c].clone();
            r += 1;
        }
        r
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut a = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let inv = a[r][c].inverse().expect("nonzero pivot");
            for j in c..self.cols {
                a[r][j] = &a[r][j] * &inv;
            }
            for i in 0..self.rows {
                if i == r || a[i][c].is_zero() {
                    continue;
                }
                let factor = a[i][c].clone();
                for j in c..self.cols {
                    let value = &a[i][j] - &factor * &a[r][j];
                    a[i][j] = value;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (Matrix { rows: self.rows, cols: self.cols, data: a }, pivots)
    }

    /// Basis of the right kernel, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (reduced, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|free| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[free] = Scalar::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -reduced.get(row, free);
                }
                v
            })
            .collect()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for row in &self.data {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int_rows(rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect())
    }

    #[test]
    fn identity_has_full_rank() {
        let id = Matrix::identity(2);
        assert_eq!(id.rank(), 2);
        assert!(id.kernel().is_empty());
    }

    #[test]
    fn doubled_row_has_rank_one() {
        let m = int_rows(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(m.rank(), 1);
        let kernel = m.kernel();
        assert_eq!(kernel.len(), 2);
        for v in &kernel {
            assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn radical_entries() {
        // [[1, sqrt3], [sqrt3, 3]] is singular
        let s = Scalar::sqrt3_ratio(1, 1);
        let m = Matrix::from_rows(2, vec![vec![Scalar::one(), s.clone()], vec![s.clone(), Scalar::from_int(3)]]);
        assert_eq!(m.rank(), 1);
        let m = Matrix::from_rows(2, vec![vec![Scalar::one(), s.clone()], vec![s, Scalar::from_int(2)]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn empty_shapes() {
        let m = Matrix::zeros(0, 5);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.kernel().len(), 5);
    }

    proptest! {
        #[test]
        fn rank_nullity(rows in 0usize..6, cols in 1usize..7, entries in prop::collection::vec(-3i64..=3, 36), radical in prop::collection::vec(-1i64..=1, 36)) {
            let data: Vec<Vec<Scalar>> = (0..rows)
                .map(|i| (0..cols).map(|j| {
                    let idx = i * 6 + j;
                    Scalar::from_int(entries[idx]) + Scalar::sqrt3_ratio(radical[idx], 2)
                }).collect())
                .collect();
            let m = Matrix::from_rows(cols, data);
            let (_, pivots) = m.rref();
            prop_assert_eq!(m.rank(), pivots.len());
            let kernel = m.kernel();
            prop_assert_eq!(kernel.len() + m.rank(), cols);
            for v in &kernel {
                prop_assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
            }
        }
    }
}
