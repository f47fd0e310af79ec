use std::ops::{Index, IndexMut};

use super::field::Field;
use crate::par::{self, Exec};

/// Row-major dense matrix over the element type of some [`Field`].
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> DenseMatrix<E> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows * cols");
        DenseMatrix { rows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn zeros<F: Field<Elem = E>>(field: &F, rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, field.zero())
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    /// Builds a matrix from rows of equal length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<E>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length must equal cols");
            data.extend(r);
        }
        DenseMatrix {
            rows: n,
            cols,
            data,
        }
    }

    /// Builds the matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<E>], zero: E) -> Self {
        let cols = columns.len();
        let mut m = Self::filled(rows, cols, zero);
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length must equal rows");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn from_i64<F: Field<Elem = E>>(field: &F, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [E] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        DenseMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "column counts must agree");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        DenseMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        DenseMatrix {
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.rows);
        for i in 0..self.rows {
            let r = self.row(i);
            data.extend(idx.iter().map(|&j| r[j].clone()));
        }
        DenseMatrix {
            rows: self.rows,
            cols: idx.len(),
            data,
        }
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.data.iter().all(|x| field.is_zero(x))
    }

    pub fn mul_vec<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Vec<E> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| field.dot(self.row(i), v)).collect()
    }

    /// Row vector times matrix: `v^T * self`.
    pub fn vec_mul<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Vec<E> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![field.zero(); self.cols];
        for (i, c) in v.iter().enumerate() {
            if !field.is_zero(c) {
                let neg = field.neg(c);
                field.sub_scaled(&mut out, &neg, self.row(i));
            }
        }
        out
    }

    pub fn matmul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let rows = (0..self.rows)
            .map(|i| other.vec_mul(field, self.row(i)))
            .collect();
        Self::from_rows(other.cols, rows)
    }
}

impl<E> Index<(usize, usize)> for DenseMatrix<E> {
    type Output = E;

    fn index(&self, (i, j): (usize, usize)) -> &E {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl<E> IndexMut<(usize, usize)> for DenseMatrix<E> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut E {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

/// Reduced row echelon form together with the pivot columns.
///
/// Zero rows are kept at the bottom so the shape is unchanged.
pub fn rref<F: Field>(field: &F, m: &DenseMatrix<F::Elem>) -> (DenseMatrix<F::Elem>, Vec<usize>) {
    rref_with(field, m, Exec::default())
}

pub fn rref_with<F: Field>(
    field: &F,
    m: &DenseMatrix<F::Elem>,
    exec: Exec,
) -> (DenseMatrix<F::Elem>, Vec<usize>) {
    let mut a = m.clone();
    let pivots = rref_in_place(field, &mut a, exec);
    (a, pivots)
}

/// Gauss-Jordan elimination in place; returns pivot columns.
pub(crate) fn rref_in_place<F: Field>(
    field: &F,
    a: &mut DenseMatrix<F::Elem>,
    exec: Exec,
) -> Vec<usize> {
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !field.is_zero(&a[(i, c)])) else {
            continue;
        };
        if p != r {
            for j in c..cols {
                a.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = field.inv(&a[(r, c)]).expect("pivot is nonzero");
        field.scale(&mut a.row_mut(r)[c..], &inv);
        // entries left of c in the pivot row are zero
        let pivot_row: Vec<F::Elem> = a.row(r)[c..].to_vec();
        par::for_each_row_mut(exec, &mut a.data, cols, |i, row| {
            if i == r || field.is_zero(&row[c]) {
                return;
            }
            let factor = row[c].clone();
            field.sub_scaled(&mut row[c..], &factor, &pivot_row);
        });
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(field: &F, m: &DenseMatrix<F::Elem>) -> usize {
    rref(field, m).1.len()
}

/// Determinant of a square matrix by elimination.
pub fn determinant<F: Field>(field: &F, m: &DenseMatrix<F::Elem>) -> F::Elem {
    assert_eq!(m.rows(), m.cols(), "determinant needs a square matrix");
    let n = m.rows();
    let mut a = m.clone();
    let mut det = field.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !field.is_zero(&a[(i, c)])) else {
            return field.zero();
        };
        if p != c {
            for j in 0..n {
                a.data.swap(p * n + j, c * n + j);
            }
            det = field.neg(&det);
        }
        let pivot = a[(c, c)].clone();
        det = field.mul(&det, &pivot);
        let inv = field.inv(&pivot).expect("pivot is nonzero");
        let pivot_row: Vec<F::Elem> = a.row(c).to_vec();
        for i in c + 1..n {
            if field.is_zero(&a[(i, c)]) {
                continue;
            }
            let factor = field.mul(&a[(i, c)], &inv);
            field.sub_scaled(a.row_mut(i), &factor, &pivot_row);
        }
    }
    det
}

/// Inverse of a square matrix, if it exists.
pub fn inverse<F: Field>(field: &F, m: &DenseMatrix<F::Elem>) -> Option<DenseMatrix<F::Elem>> {
    let n = m.rows();
    assert_eq!(n, m.cols(), "inverse needs a square matrix");
    let mut aug = DenseMatrix::zeros(field, n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, n + i)] = field.one();
    }
    let pivots = rref_in_place(field, &mut aug, Exec::Sequential);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    let cols: Vec<usize> = (n..2 * n).collect();
    Some(aug.select_columns(&cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::field::{PrimeField, Rationals};

    #[test]
    fn rref_identity_and_zero() {
        let q = Rationals;
        let id = DenseMatrix::identity(&q, 3);
        let (r, p) = rref(&q, &id);
        assert_eq!(r, id);
        assert_eq!(p, vec![0, 1, 2]);

        let z = DenseMatrix::zeros(&q, 2, 4);
        let (r, p) = rref(&q, &z);
        assert_eq!(r, z);
        assert!(p.is_empty());
    }

    #[test]
    fn rref_hand_example() {
        let q = Rationals;
        let m = DenseMatrix::from_i64(&q, &[&[2, 4], &[1, 2]]);
        let (r, p) = rref(&q, &m);
        assert_eq!(r, DenseMatrix::from_i64(&q, &[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn determinant_and_inverse() {
        let f = PrimeField::new(1_000_000_007).unwrap();
        let m = DenseMatrix::from_i64(&f, &[&[0, 2, 1], &[1, 1, 0], &[3, 0, 1]]);
        // expansion along the first row: -2*(1-0) + 1*(0-3) = -5
        assert_eq!(determinant(&f, &m), f.from_i64(-5));
        let inv = inverse(&f, &m).unwrap();
        assert_eq!(m.matmul(&f, &inv), DenseMatrix::identity(&f, 3));
        let singular = DenseMatrix::from_i64(&f, &[&[1, 2], &[2, 4]]);
        assert!(inverse(&f, &singular).is_none());
        assert_eq!(determinant(&f, &singular), 0);
    }

    #[test]
    fn sequential_and_parallel_agree() {
        use rand::SeedableRng;
        let f = PrimeField::new(2_147_483_647).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let data = (0..150 * 140).map(|_| f.random(&mut rng)).collect();
        let m = DenseMatrix::from_vec(150, 140, data);
        assert_eq!(
            rref_with(&f, &m, Exec::Sequential),
            rref_with(&f, &m, Exec::Parallel)
        );
    }
}
