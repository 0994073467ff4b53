//! Exact linear algebra over the rationals.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::matrix::RatMatrix;
use crate::arith::Rat;

/// Gauss-Jordan reduction of `rows` (each of equal length) in place.
/// Returns the pivot columns; the first `pivots.len()` rows are the reduced
/// nonzero rows with unit pivots, the rest are zero.
fn gauss_jordan(rows: &mut Vec<Vec<Rat>>, ncols: usize, stop_col: usize) -> Vec<usize> {
    let nrows = rows.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols.min(stop_col) {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rat::one() / &rows[r][c];
        if !inv.is_one() {
            for x in rows[r].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let support: Vec<usize> = (c..ncols).filter(|&j| !rows[r][j].is_zero()).collect();
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &support {
                let delta = &f * &pivot_row[j];
                row[j] -= delta;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn to_rows(m: &RatMatrix) -> Vec<Vec<Rat>> {
    (0..m.rows()).map(|r| m.row(r).to_vec()).collect()
}

/// Reduced row echelon form and pivot columns.
pub fn rref(m: &RatMatrix) -> (RatMatrix, Vec<usize>) {
    let mut rows = to_rows(m);
    let pivots = gauss_jordan(&mut rows, m.cols(), m.cols());
    (RatMatrix::from_rows(m.rows(), m.cols(), rows), pivots)
}

pub fn rank(m: &RatMatrix) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    let mut rows = to_rows(m);
    gauss_jordan(&mut rows, m.cols(), m.cols()).len()
}

pub fn rank_of_vectors(n: usize, vs: &[Vec<Rat>]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    let mut rows = vs.to_vec();
    gauss_jordan(&mut rows, n, n).len()
}

/// Basis of `{x : m x = 0}`.
pub fn nullspace(m: &RatMatrix) -> Vec<Vec<Rat>> {
    let n = m.cols();
    let mut rows = to_rows(m);
    let pivots = gauss_jordan(&mut rows, n, n);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); n];
            v[f] = Rat::one();
            for (i, &p) in pivots.iter().enumerate() {
                if !rows[i][f].is_zero() {
                    v[p] = -rows[i][f].clone();
                }
            }
            v
        })
        .collect()
}

/// Some solution of `a x = b`, or `None` when inconsistent.
pub fn solve(a: &RatMatrix, b: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(a.rows(), b.len());
    let n = a.cols();
    let mut rows: Vec<Vec<Rat>> = (0..a.rows())
        .map(|r| {
            let mut row = a.row(r).to_vec();
            row.push(b[r].clone());
            row
        })
        .collect();
    let pivots = gauss_jordan(&mut rows, n + 1, n);
    if rows.iter().skip(pivots.len()).any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = rows[i][n].clone();
    }
    Some(x)
}

/// Solves `a X = B` column by column, sharing one elimination.
pub fn solve_many(a: &RatMatrix, bs: &[Vec<Rat>]) -> Vec<Option<Vec<Rat>>> {
    let n = a.cols();
    let k = bs.len();
    let mut rows: Vec<Vec<Rat>> = (0..a.rows())
        .map(|r| {
            let mut row = a.row(r).to_vec();
            row.extend(bs.iter().map(|b| b[r].clone()));
            row
        })
        .collect();
    let pivots = gauss_jordan(&mut rows, n + k, n);
    (0..k)
        .map(|j| {
            if rows.iter().skip(pivots.len()).any(|row| !row[n + j].is_zero()) {
                return None;
            }
            let mut x = vec![Rat::zero(); n];
            for (i, &p) in pivots.iter().enumerate() {
                x[p] = rows[i][n + j].clone();
            }
            Some(x)
        })
        .collect()
}

pub fn inverse(a: &RatMatrix) -> Option<RatMatrix> {
    let n = a.rows();
    if n != a.cols() {
        return None;
    }
    let id: Vec<Vec<Rat>> = RatMatrix::identity(n).columns();
    let cols = solve_many(a, &id);
    let cols: Option<Vec<Vec<Rat>>> = cols.into_iter().collect();
    let cols = cols?;
    if rank(a) < n {
        return None;
    }
    Some(RatMatrix::from_columns(n, &cols))
}

/// Indices of a maximal independent subset of the columns (leftmost first).
pub fn independent_columns(m: &RatMatrix) -> Vec<usize> {
    let mut rows = to_rows(m);
    gauss_jordan(&mut rows, m.cols(), m.cols())
}

/// Moore-Penrose pseudoinverse through a full-rank factorization `A = C F`.
pub fn pseudoinverse(a: &RatMatrix) -> RatMatrix {
    let (r, pivots) = rref(a);
    let k = pivots.len();
    if k == 0 {
        return RatMatrix::zeros(a.cols(), a.rows());
    }
    let c = a.select_columns(&pivots);
    let f = r.select_rows(&(0..k).collect::<Vec<_>>());
    let ct = c.transpose();
    let ft = f.transpose();
    let ctc_inv = inverse(&ct.mul_mat(&c)).expect("column factor has full rank");
    let fft_inv = inverse(&f.mul_mat(&ft)).expect("row factor has full rank");
    ft.mul_mat(&fft_inv).mul_mat(&ctc_inv).mul_mat(&ct)
}

/// A rational subspace of `Q^n` held in reduced row echelon form, which makes
/// it canonical: equal subspaces have identical representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    n: usize,
    basis: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Subspace { n, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        Self::span(n, &RatMatrix::identity(n).columns())
    }

    pub fn span(n: usize, vectors: &[Vec<Rat>]) -> Self {
        let mut rows: Vec<Vec<Rat>> = vectors.to_vec();
        for v in &rows {
            assert_eq!(v.len(), n, "vector length mismatch");
        }
        let pivots = gauss_jordan(&mut rows, n, n);
        rows.truncate(pivots.len());
        Subspace { n, basis: rows, pivots }
    }

    pub fn column_space(m: &RatMatrix) -> Self {
        Self::span(m.rows(), &m.columns())
    }

    pub fn kernel(m: &RatMatrix) -> Self {
        Self::span(m.cols(), &nullspace(m))
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Subtracts the unique element of the subspace that makes every pivot
    /// coordinate of `v` vanish.
    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        let mut x = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if x[p].is_zero() {
                continue;
            }
            let f = x[p].clone();
            for (xi, ri) in x.iter_mut().zip(row) {
                if !ri.is_zero() {
                    *xi -= &f * ri;
                }
            }
        }
        x
    }

    /// Coordinates of `v` in the basis, when `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Free (non-pivot) coordinates: a basis of the complement used by [`Self::project`].
    pub fn free_coordinates(&self) -> Vec<usize> {
        (0..self.n).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Linear map `Q^n -> Q^(n - dim)` whose kernel is exactly this subspace.
    pub fn project(&self, v: &[Rat]) -> Vec<Rat> {
        let r = self.reduce(v);
        self.free_coordinates().into_iter().map(|c| r[c].clone()).collect()
    }

    pub fn projection_matrix(&self) -> RatMatrix {
        let cols: Vec<Vec<Rat>> = RatMatrix::identity(self.n).columns().iter().map(|e| self.project(e)).collect();
        RatMatrix::from_columns(self.n - self.dim(), &cols)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(self.n, &vs)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // x = B1 y with P2 B1 y = 0
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(self.n);
        }
        let p = other.projection_matrix();
        let b1 = RatMatrix::from_columns(self.n, &self.basis);
        let ker = nullspace(&p.mul_mat(&b1));
        let vs: Vec<Vec<Rat>> = ker.iter().map(|y| b1.mul_vec(y)).collect();
        Subspace::span(self.n, &vs)
    }

    pub fn basis_matrix(&self) -> RatMatrix {
        RatMatrix::from_columns(self.n, &self.basis)
    }
}
