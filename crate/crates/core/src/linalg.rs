//! Dense matrices over any coefficient ring, with the elimination routines
//! the solvers are built on.

use crate::error::{Error, Result};
use crate::scalar::Ring;

#[derive(Clone, PartialEq, Debug)]
pub struct Mat<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Mat<R> {
    pub fn zeros(rows: usize, cols: usize) -> Mat<R> {
        Mat {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Mat<R> {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = R::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Mat<R> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Mat<R> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
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

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Mat<R> {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<T: Ring>(&self, f: impl Fn(&R) -> T) -> Mat<T> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn add(&self, o: &Mat<R>) -> Mat<R> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        Mat::from_fn(self.rows, self.cols, |i, j| self[(i, j)].add(&o[(i, j)]))
    }

    pub fn sub(&self, o: &Mat<R>) -> Mat<R> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        Mat::from_fn(self.rows, self.cols, |i, j| self[(i, j)].sub(&o[(i, j)]))
    }

    pub fn matmul(&self, o: &Mat<R>) -> Mat<R> {
        assert_eq!(self.cols, o.rows, "inner dimension mismatch");
        Mat::from_fn(self.rows, o.cols, |i, j| {
            let mut acc = R::zero();
            for k in 0..self.cols {
                acc = acc.add(&self[(i, k)].mul(&o[(k, j)]));
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[R]) -> Vec<R> {
        assert_eq!(self.cols, v.len(), "length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = R::zero();
                for k in 0..self.cols {
                    acc = acc.add(&self[(i, k)].mul(&v[k]));
                }
                acc
            })
            .collect()
    }

    pub fn scale(&self, c: &R) -> Mat<R> {
        self.map(|v| v.mul(c))
    }

    /// Top-left `rows x cols` submatrix.
    pub fn submatrix(&self, rows: usize, cols: usize) -> Mat<R> {
        assert!(rows <= self.rows && cols <= self.cols);
        Mat::from_fn(rows, cols, |i, j| self[(i, j)].clone())
    }

    /// Determinant by fraction-producing elimination; requires invertible
    /// pivots along the way, which a field provides.
    pub fn det(&self) -> Result<R> {
        if !self.is_square() {
            return Err(Error::NonSquare);
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = R::one();
        for col in 0..n {
            let pivot = (col..n)
                .filter(|&r| !m[(r, col)].is_zero())
                .max_by(|&a, &b| {
                    m[(a, col)]
                        .pivot_weight()
                        .partial_cmp(&m[(b, col)].pivot_weight())
                        .unwrap_or(std::cmp::Ordering::Equal)
                });
            let Some(p) = pivot else {
                return Ok(R::zero());
            };
            if p != col {
                for j in 0..n {
                    let a = m[(col, j)].clone();
                    let b = m[(p, j)].clone();
                    m[(col, j)] = b;
                    m[(p, j)] = a;
                }
                det = det.neg();
            }
            let pv = m[(col, col)].clone();
            det = det.mul(&pv);
            let inv = pv.inv().ok_or(Error::NotInvertible)?;
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].mul(&inv);
                for j in col..n {
                    let t = factor.mul(&m[(col, j)]);
                    m[(r, j)] = m[(r, j)].sub(&t);
                }
            }
        }
        Ok(det)
    }
}

impl<R> std::ops::Index<(usize, usize)> for Mat<R> {
    type Output = R;
    fn index(&self, (i, j): (usize, usize)) -> &R {
        &self.data[i * self.cols + j]
    }
}

impl<R> std::ops::IndexMut<(usize, usize)> for Mat<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut R {
        &mut self.data[i * self.cols + j]
    }
}

/// Result of reducing `[A | B]` to row-echelon form: pivot column list and
/// the reduced augmented matrix.
pub struct Echelon<R> {
    pub mat: Mat<R>,
    pub pivots: Vec<usize>,
}

/// Row-reduce the first `lead_cols` columns, scanning them left to right so
/// that pivot choice is deterministic; within a column the row with the
/// largest pivot weight wins.
pub fn row_reduce<R: Ring>(mut m: Mat<R>, lead_cols: usize) -> Result<Echelon<R>> {
    let rows = m.rows();
    let cols = m.cols();
    let mut pivots = Vec::new();
    let mut next_row = 0;
    for col in 0..lead_cols.min(cols) {
        let pivot = (next_row..rows)
            .filter(|&r| !m[(r, col)].is_zero() && m[(r, col)].inv().is_some())
            .max_by(|&a, &b| {
                m[(a, col)]
                    .pivot_weight()
                    .partial_cmp(&m[(b, col)].pivot_weight())
                    .unwrap_or(std::cmp::Ordering::Equal)
            });
        let Some(p) = pivot else {
            if (next_row..rows).any(|r| !m[(r, col)].is_zero()) {
                // nonzero but uninvertible entries only: outside the
                // supported shapes for this elimination
                return Err(Error::UnsupportedSystem);
            }
            continue;
        };
        if p != next_row {
            for j in 0..cols {
                let a = m[(next_row, j)].clone();
                let b = m[(p, j)].clone();
                m[(next_row, j)] = b;
                m[(p, j)] = a;
            }
        }
        let inv = m[(next_row, col)].inv().expect("checked invertible");
        for j in 0..cols {
            m[(next_row, j)] = m[(next_row, j)].mul(&inv);
        }
        for r in 0..rows {
            if r == next_row || m[(r, col)].is_zero() {
                continue;
            }
            let factor = m[(r, col)].clone();
            for j in 0..cols {
                let t = factor.mul(&m[(next_row, j)]);
                m[(r, j)] = m[(r, j)].sub(&t);
            }
        }
        pivots.push(col);
        next_row += 1;
        if next_row == rows {
            break;
        }
    }
    Ok(Echelon { mat: m, pivots })
}

pub fn rank<R: Ring>(m: &Mat<R>) -> Result<usize> {
    let cols = m.cols();
    Ok(row_reduce(m.clone(), cols)?.pivots.len())
}

/// Solve `A x = b`; `None` when inconsistent or underdetermined is fine for
/// callers that expect a unique solution — they get the pivot solution with
/// free variables set to zero only if `allow_free`.
pub fn solve<R: Ring>(a: &Mat<R>, b: &[R], allow_free: bool) -> Result<Option<Vec<R>>> {
    assert_eq!(a.rows(), b.len(), "rhs length mismatch");
    let cols = a.cols();
    let mut aug = Mat::zeros(a.rows(), cols + 1);
    for i in 0..a.rows() {
        for j in 0..cols {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, cols)] = b[i].clone();
    }
    let ech = row_reduce(aug, cols)?;
    // inconsistent if a row is (0 ... 0 | nonzero)
    for i in 0..ech.mat.rows() {
        let lead_zero = (0..cols).all(|j| ech.mat[(i, j)].is_zero());
        if lead_zero && !ech.mat[(i, cols)].is_zero() {
            return Ok(None);
        }
    }
    if !allow_free && ech.pivots.len() < cols {
        return Ok(None);
    }
    let mut x = vec![R::zero(); cols];
    for (row, &col) in ech.pivots.iter().enumerate() {
        x[col] = ech.mat[(row, cols)].clone();
    }
    Ok(Some(x))
}

/// Basis of the nullspace of `A`, one vector per free column.
pub fn nullspace<R: Ring>(a: &Mat<R>) -> Result<Vec<Vec<R>>> {
    let cols = a.cols();
    let ech = row_reduce(a.clone(), cols)?;
    let mut out = Vec::new();
    for free in 0..cols {
        if ech.pivots.contains(&free) {
            continue;
        }
        let mut v = vec![R::zero(); cols];
        v[free] = R::one();
        for (row, &p) in ech.pivots.iter().enumerate() {
            v[p] = ech.mat[(row, free)].neg();
        }
        out.push(v);
    }
    Ok(out)
}

/// Incremental row-space tracker used by rank filters (`findbasis`) and
/// minimal-polynomial search.
pub struct RankTracker<R> {
    width: usize,
    rows: Vec<Vec<R>>,
    pivots: Vec<usize>,
}

impl<R: Ring> RankTracker<R> {
    pub fn new(width: usize) -> RankTracker<R> {
        RankTracker {
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the stored rows; returns the remainder.
    pub fn reduce(&self, mut v: Vec<R>) -> Vec<R> {
        assert_eq!(v.len(), self.width);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let factor = v[p].clone();
            for j in 0..self.width {
                let t = factor.mul(&row[j]);
                v[j] = v[j].sub(&t);
            }
        }
        v
    }

    /// Try to add `v` to the row space. Returns true when it increased the
    /// rank (i.e. `v` was independent).
    pub fn insert(&mut self, v: Vec<R>) -> bool {
        let mut rem = self.reduce(v);
        if rem.iter().all(|x| x.is_zero()) {
            return false;
        }
        let p = (0..self.width)
            .find(|&j| !rem[j].is_zero() && rem[j].inv().is_some())
            .expect("no invertible pivot in an independent row");
        let inv = rem[p].inv().unwrap();
        for x in rem.iter_mut() {
            *x = x.mul(&inv);
        }
        // back-substitute into existing rows
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let factor = row[p].clone();
            for j in 0..self.width {
                let t = factor.mul(&rem[j]);
                row[j] = row[j].sub(&t);
            }
        }
        self.rows.push(rem);
        self.pivots.push(p);
        true
    }

    /// Express `v` as a combination of the inserted rows, if possible.
    /// The tracker does not keep provenance, so this solves against the
    /// original generators supplied here.
    pub fn coordinates_in(generators: &[Vec<R>], v: &[R]) -> Result<Option<Vec<R>>> {
        let width = v.len();
        let a = Mat::from_fn(width, generators.len(), |i, j| generators[j][i].clone());
        solve(&a, v, true)
    }
}
