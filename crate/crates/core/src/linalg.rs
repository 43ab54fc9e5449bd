//! Dense Gaussian elimination over an exact [`Field`].

use crate::field::Field;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn zeros(rows: usize, cols: usize, zero: E) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![zero; rows * cols],
        }
    }

    /// Builds a matrix from rows of equal length `cols`.
    pub fn from_rows(cols: usize, rows: &[Vec<E>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend_from_slice(r);
        }
        Matrix {
            rows: rows.len(),
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

    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

/// Reduces `m` to reduced row echelon form in place; returns the pivot
/// columns in order. Pivots are chosen by ascending column, then first
/// nonzero row, so the result is deterministic.
pub fn rref<F: Field>(field: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !field.is_zero(m.get(i, c))) else {
            continue;
        };
        m.swap_rows(r, p);
        let inv = field.inv(m.get(r, c)).expect("nonzero pivot");
        for j in c..m.cols {
            let v = field.mul(m.get(r, j), &inv);
            m.set(r, j, v);
        }
        let pivot_row: Vec<F::Elem> = m.row(r).to_vec();
        for i in 0..m.rows {
            if i == r || field.is_zero(m.get(i, c)) {
                continue;
            }
            let s = field.neg(m.get(i, c));
            for j in c..m.cols {
                let v = field.add(m.get(i, j), &field.mul(&s, &pivot_row[j]));
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    let mut work = m.clone();
    rref(field, &mut work).len()
}

/// Rank of a list of vectors of common length `cols`.
pub fn rank_of_rows<F: Field>(field: &F, cols: usize, rows: &[Vec<F::Elem>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    rank(field, &Matrix::from_rows(cols, rows))
}

/// Basis of the right kernel `{x : m x = 0}`, one vector per free column.
pub fn kernel<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let mut work = m.clone();
    let pivots = rref(field, &mut work);
    let mut is_pivot = vec![None; m.cols];
    for (row, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(row);
    }
    let mut basis = Vec::new();
    for free in 0..m.cols {
        if is_pivot[free].is_some() {
            continue;
        }
        let mut v = vec![field.zero(); m.cols];
        v[free] = field.one();
        for (row, &c) in pivots.iter().enumerate() {
            v[c] = field.neg(work.get(row, free));
        }
        basis.push(v);
    }
    basis
}

/// Determinant of a square matrix given by rows.
pub fn determinant<F: Field>(field: &F, rows: &[Vec<F::Elem>]) -> F::Elem {
    let n = rows.len();
    let mut m = rows.to_vec();
    let mut det = field.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !field.is_zero(&m[i][c])) else {
            return field.zero();
        };
        if p != c {
            m.swap(p, c);
            det = field.neg(&det);
        }
        det = field.mul(&det, &m[c][c]);
        let inv = field.inv(&m[c][c]).expect("nonzero pivot");
        for i in c + 1..n {
            if field.is_zero(&m[i][c]) {
                continue;
            }
            let s = field.neg(&field.mul(&m[i][c], &inv));
            let pivot = m[c].clone();
            field.axpy(&mut m[i], &s, &pivot);
        }
    }
    det
}

pub fn mat_vec<F: Field>(field: &F, m: &Matrix<F::Elem>, x: &[F::Elem]) -> Vec<F::Elem> {
    (0..m.rows).map(|r| field.dot(m.row(r), x)).collect()
}

/// Whether `v` lies in the span of `rows`.
pub fn in_span<F: Field>(field: &F, cols: usize, rows: &[Vec<F::Elem>], v: &[F::Elem]) -> bool {
    let base = rank_of_rows(field, cols, rows);
    let mut with = rows.to_vec();
    with.push(v.to_vec());
    rank_of_rows(field, cols, &with) == base
}
