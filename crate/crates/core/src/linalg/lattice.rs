//! Lattices (finitely generated subgroups) of `Q^n` in Hermite normal form.

use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use super::snf::smith_normal_form;
use crate::arith::{common_denominator, rat_int, Int, Rat};

/// Row Hermite normal form of integer row vectors: echelon, positive pivots,
/// entries above each pivot reduced into `[0, pivot)`. Zero rows are dropped.
pub fn hermite_rows(mut rows: Vec<Vec<Int>>, n: usize) -> Vec<Vec<Int>> {
    let mut r = 0;
    for c in 0..n {
        loop {
            let mut best: Option<usize> = None;
            for i in r..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                match best {
                    Some(b) if rows[b][c].abs() <= rows[i][c].abs() => {}
                    _ => best = Some(i),
                }
            }
            let Some(b) = best else { break };
            rows.swap(r, b);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &q * y;
                    }
                }
                if !rows[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r == rows.len() || rows[r][c].is_zero() {
            continue;
        }
        if rows[r][c].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -core::mem::take(x);
            }
        }
        let pivot_row = rows[r].clone();
        for row in rows.iter_mut().take(r) {
            let q = row[c].div_floor(&pivot_row[c]);
            if q.is_zero() {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &q * y;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    rows
}

/// Canonical basis of the subgroup of `Q^n` generated by `gens`.
pub fn lattice_basis(n: usize, gens: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    if gens.is_empty() {
        return Vec::new();
    }
    let l = common_denominator(gens.iter().flatten());
    let lr = rat_int(&l);
    let rows: Vec<Vec<Int>> = gens.iter().map(|g| g.iter().map(|x| (x * &lr).to_integer()).collect()).collect();
    hermite_rows(rows, n).into_iter().map(|row| row.iter().map(|x| rat_int(x) / &lr).collect()).collect()
}

fn pivot_of(row: &[Rat]) -> usize {
    row.iter().position(|x| !x.is_zero()).expect("basis rows are nonzero")
}

/// Integer coordinates of `x` in an echelon `basis`, if `x` lies in the lattice.
pub fn lattice_coords(basis: &[Vec<Rat>], x: &[Rat]) -> Option<Vec<Int>> {
    let mut r = x.to_vec();
    let mut coords = Vec::with_capacity(basis.len());
    for b in basis {
        let p = pivot_of(b);
        let q = &r[p] / &b[p];
        if !q.is_integer() {
            return None;
        }
        if !q.is_zero() {
            for (ri, bi) in r.iter_mut().zip(b) {
                if !bi.is_zero() {
                    *ri -= &q * bi;
                }
            }
        }
        coords.push(q.to_integer());
    }
    if r.iter().all(Zero::is_zero) {
        Some(coords)
    } else {
        None
    }
}

/// Basis of `{t in Z^m : M t = 0}` for a rational matrix `M`.
pub fn integer_kernel(m: &super::matrix::RatMatrix) -> Vec<Vec<Int>> {
    let rows: Vec<Vec<Int>> = (0..m.rows())
        .map(|r| {
            let l = rat_int(&common_denominator(m.row(r).iter()));
            m.row(r).iter().map(|x| (x * &l).to_integer()).collect()
        })
        .collect();
    let a = IntMatrix::from_rows(m.rows(), m.cols(), rows);
    let snf = smith_normal_form(&a);
    (snf.rank()..m.cols()).map(|j| snf.v.column(j)).collect()
}

/// Integer points of the column space of `m` (a saturated lattice).
pub fn integer_points_of_span(n: usize, span: &super::rational::Subspace) -> Vec<Vec<Int>> {
    if span.dim() == 0 {
        return Vec::new();
    }
    if span.dim() == n {
        return (0..n)
            .map(|i| (0..n).map(|j| if i == j { Int::one() } else { Int::zero() }).collect())
            .collect();
    }
    integer_kernel(&span.projection_matrix())
}

/// The quotient `L1 / L2` of lattices with explicit generators.
///
/// `L1` is given by a basis and `L2` by generators; generators of the quotient
/// are chosen through a Smith decomposition of the coordinates of `L2`, and for
/// each torsion generator `g` of order `t` a combination of the `L2`
/// generators equal to `t g` is kept as a witness.
#[derive(Clone, Debug)]
pub struct LatticeQuotient {
    basis: Vec<Vec<Rat>>,
    pub generators: Vec<Vec<Rat>>,
    /// `None` for a generator of infinite order.
    pub orders: Vec<Option<Int>>,
    pub witnesses: Vec<Option<Vec<Int>>>,
    coordinate_rows: Vec<Vec<Int>>,
}

impl LatticeQuotient {
    /// Returns `None` when some generator of `L2` is not in `L1`.
    pub fn new(basis: Vec<Vec<Rat>>, sub_gens: &[Vec<Rat>]) -> Option<Self> {
        let r = basis.len();
        let n = basis.first().map_or(0, Vec::len);
        let bmat = super::matrix::RatMatrix::from_columns(n, &basis);
        let mut coords = Vec::with_capacity(sub_gens.len());
        let sols = super::rational::solve_many(&bmat, sub_gens);
        for s in sols {
            let s = s?;
            if !s.iter().all(|x| x.is_integer()) {
                return None;
            }
            coords.push(s.iter().map(|x| x.to_integer()).collect::<Vec<Int>>());
        }
        let cmat = IntMatrix::from_columns(r, &coords);
        let snf = smith_normal_form(&cmat);
        let u_inv = super::rational::inverse(&snf.u.to_rat()).expect("unimodular").to_int().expect("unimodular");
        let mut generators = Vec::new();
        let mut orders = Vec::new();
        let mut witnesses = Vec::new();
        let mut coordinate_rows = Vec::new();
        for i in 0..r {
            let order = snf.diagonal.get(i).cloned();
            if order.as_ref().is_some_and(|d| d.is_one()) {
                continue;
            }
            let col = u_inv.column(i);
            let mut g = alloc::vec![Rat::zero(); n];
            for (c, b) in col.iter().zip(&basis) {
                if c.is_zero() {
                    continue;
                }
                for (gi, bi) in g.iter_mut().zip(b) {
                    *gi += rat_int(c) * bi;
                }
            }
            generators.push(g);
            witnesses.push(order.as_ref().map(|_| snf.v.column(i)));
            orders.push(order);
            coordinate_rows.push(snf.u.row(i).to_vec());
        }
        Some(LatticeQuotient { basis, generators, orders, witnesses, coordinate_rows })
    }

    pub fn invariants(&self) -> super::snf::AbelianGroupInvariants {
        super::snf::AbelianGroupInvariants {
            free_rank: self.orders.iter().filter(|o| o.is_none()).count(),
            torsion: self.orders.iter().flatten().cloned().collect(),
        }
    }

    /// Coordinates of the class of `x` on the generators (torsion entries reduced
    /// into `[0, order)`), or `None` when `x` is not in `L1`.
    pub fn classify(&self, x: &[Rat]) -> Option<Vec<Int>> {
        let n = x.len();
        let c: Vec<Int> = if self.basis.is_empty() {
            if x.iter().any(|v| !v.is_zero()) {
                return None;
            }
            Vec::new()
        } else {
            let bmat = super::matrix::RatMatrix::from_columns(n, &self.basis);
            let s = super::rational::solve(&bmat, x)?;
            if !s.iter().all(|v| v.is_integer()) {
                return None;
            }
            s.iter().map(|v| v.to_integer()).collect()
        };
        Some(
            self.coordinate_rows
                .iter()
                .zip(&self.orders)
                .map(|(row, o)| {
                    let y: Int = row.iter().zip(&c).map(|(a, b)| a * b).sum();
                    match o {
                        Some(t) => y.mod_floor(t),
                        None => y,
                    }
                })
                .collect(),
        )
    }

    /// Whether `x` (in `L1`) is zero in the quotient.
    pub fn is_trivial(&self, x: &[Rat]) -> Option<bool> {
        Some(self.classify(x)?.iter().all(Zero::is_zero))
    }
}
