//! Smith normal form and integer solving.

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use crate::arith::{rat, rat_int, Int, Rat};

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal with
/// `d_1 | d_2 | ... | d_rank`, all positive.
#[derive(Clone, Debug)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
    /// Nonzero diagonal entries in order.
    pub diagonal: Vec<Int>,
}

impl SnfDecomposition {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

fn add_row(m: &mut [Vec<Int>], dst: usize, src: usize, f: &Int) {
    if f.is_zero() {
        return;
    }
    let (a, b) = if dst < src {
        let (lo, hi) = m.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in a.iter_mut().zip(b.iter()) {
        if !y.is_zero() {
            *x += f * y;
        }
    }
}

fn add_col(m: &mut [Vec<Int>], dst: usize, src: usize, f: &Int) {
    if f.is_zero() {
        return;
    }
    for row in m.iter_mut() {
        if !row[src].is_zero() {
            let t = f * &row[src];
            row[dst] += t;
        }
    }
}

fn swap_cols(m: &mut [Vec<Int>], a: usize, b: usize) {
    if a != b {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    }
}

fn negate_row(m: &mut [Vec<Int>], r: usize) {
    for x in m[r].iter_mut() {
        *x = -core::mem::take(x);
    }
}

fn to_rows(a: &IntMatrix) -> Vec<Vec<Int>> {
    (0..a.rows()).map(|r| a.row(r).to_vec()).collect()
}

fn from_rows(rows: usize, cols: usize, m: Vec<Vec<Int>>) -> IntMatrix {
    IntMatrix::from_rows(rows, cols, m)
}

/// Deterministic Smith normal form. Pivots are chosen as the entry of smallest
/// absolute value, ties broken by (row, column) order.
pub fn smith_normal_form(a: &IntMatrix) -> SnfDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut w = to_rows(a);
    let mut u = to_rows(&IntMatrix::identity(m));
    let mut v = to_rows(&IntMatrix::identity(n));
    let mut diagonal = Vec::new();

    for t in 0..m.min(n) {
        // smallest nonzero entry of the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if w[i][j].is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if w[bi][bj].abs() <= w[i][j].abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        w.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut w, t, pj);
        swap_cols(&mut v, t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..m {
                if w[i][t].is_zero() {
                    continue;
                }
                let q = -w[i][t].div_floor(&w[t][t]);
                add_row(&mut w, i, t, &q);
                add_row(&mut u, i, t, &q);
                if !w[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if w[t][j].is_zero() {
                    continue;
                }
                let q = -w[t][j].div_floor(&w[t][t]);
                add_col(&mut w, j, t, &q);
                add_col(&mut v, j, t, &q);
                if !w[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // move the smallest entry of row t / column t to the pivot
                let mut bi = t;
                let mut bj = t;
                for i in t + 1..m {
                    if !w[i][t].is_zero() && w[i][t].abs() < w[bi][bj].abs() {
                        bi = i;
                        bj = t;
                    }
                }
                for j in t + 1..n {
                    if !w[t][j].is_zero() && w[t][j].abs() < w[bi][bj].abs() {
                        bi = t;
                        bj = j;
                    }
                }
                w.swap(t, bi);
                u.swap(t, bi);
                swap_cols(&mut w, t, bj);
                swap_cols(&mut v, t, bj);
                continue;
            }
            let p = w[t][t].clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !w[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let one = Int::one();
                    add_row(&mut w, t, i, &one);
                    add_row(&mut u, t, i, &one);
                }
                None => break,
            }
        }
        if w[t][t].is_negative() {
            negate_row(&mut w, t);
            negate_row(&mut u, t);
        }
        diagonal.push(w[t][t].clone());
    }

    SnfDecomposition { u: from_rows(m, m, u), v: from_rows(n, n, v), d: from_rows(m, n, w), diagonal }
}

/// Outcome of solving `A x = b` over the integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntegerSolution {
    /// A particular integral solution together with a basis of the integer kernel.
    Solvable { x: Vec<Int>, kernel: Vec<Vec<Int>> },
    /// A rational row vector `w` with `w A` integral but `w b` not an integer.
    Infeasible { certificate: Vec<Rat> },
}

impl IntegerSolution {
    pub fn solution(&self) -> Option<&[Int]> {
        match self {
            IntegerSolution::Solvable { x, .. } => Some(x),
            IntegerSolution::Infeasible { .. } => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, IntegerSolution::Solvable { .. })
    }
}

/// Integer solution of `A x = b` for rational `b`, via the Smith form.
pub fn hermite_solve(a: &IntMatrix, b: &[Rat]) -> IntegerSolution {
    let snf = smith_normal_form(a);
    solve_with_snf(a, &snf, b)
}

pub fn solve_with_snf(a: &IntMatrix, snf: &SnfDecomposition, b: &[Rat]) -> IntegerSolution {
    assert_eq!(a.rows(), b.len(), "right-hand side has wrong length");
    let (m, n) = (a.rows(), a.cols());
    let r = snf.rank();
    let c: Vec<Rat> = (0..m)
        .map(|i| {
            snf.u.row(i).iter().zip(b).filter(|(x, _)| !x.is_zero()).fold(Rat::zero(), |acc, (x, y)| acc + rat_int(x) * y)
        })
        .collect();
    let u_row = |i: usize, s: &Rat| -> Vec<Rat> { snf.u.row(i).iter().map(|x| rat_int(x) * s).collect() };
    let mut y = vec![Int::zero(); n];
    for i in 0..r {
        let q = &c[i] / rat_int(&snf.diagonal[i]);
        if !q.is_integer() {
            return IntegerSolution::Infeasible { certificate: u_row(i, &(Rat::one() / rat_int(&snf.diagonal[i]))) };
        }
        y[i] = q.to_integer();
    }
    for (i, ci) in c.iter().enumerate().skip(r) {
        if !ci.is_zero() {
            return IntegerSolution::Infeasible { certificate: u_row(i, &(rat(1, 2) / ci)) };
        }
    }
    let x = snf.v.mul_vec(&y);
    let kernel = (r..n).map(|j| snf.v.column(j)).collect();
    IntegerSolution::Solvable { x, kernel }
}

/// Finitely generated abelian group `Z^free_rank + (+) Z/t_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AbelianGroupInvariants {
    pub free_rank: usize,
    pub torsion: Vec<Int>,
}

impl AbelianGroupInvariants {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Invariants of `Z^n / (column span of A)`.
    pub fn cokernel(a: &IntMatrix) -> Self {
        let snf = smith_normal_form(a);
        let torsion = snf.diagonal.iter().filter(|d| !d.is_one()).cloned().collect();
        AbelianGroupInvariants { free_rank: a.rows() - snf.rank(), torsion }
    }
}

impl core::fmt::Display for AbelianGroupInvariants {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let mut parts: Vec<alloc::string::String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(alloc::format!("Z^{}", self.free_rank));
        }
        for t in &self.torsion {
            parts.push(alloc::format!("Z/{}", t));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Determinant by fraction-free elimination (Bareiss).
pub fn determinant(a: &IntMatrix) -> Int {
    let n = a.rows();
    assert_eq!(n, a.cols(), "determinant of a non-square matrix");
    if n == 0 {
        return Int::one();
    }
    let mut m = to_rows(a);
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else { return Int::zero() };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = t / &prev;
            }
            m[i][k] = Int::zero();
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn check(a: &IntMatrix) -> SnfDecomposition {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul_mat(a).mul_mat(&s.v), s.d);
        assert_eq!(determinant(&s.u).abs(), Int::one());
        assert_eq!(determinant(&s.v).abs(), Int::one());
        for w in s.diagonal.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        s
    }

    #[test]
    fn small_example() {
        let s = check(&IntMatrix::from_i64(2, 2, &[2, 4, 6, 8]));
        assert_eq!(s.diagonal, vec![int(2), int(4)]);
    }

    #[test]
    fn identity_and_zero() {
        let s = check(&IntMatrix::identity(3));
        assert_eq!(s.diagonal, vec![int(1); 3]);
        let z = check(&IntMatrix::zeros(2, 3));
        assert!(z.diagonal.is_empty());
        assert!(z.d.is_zero());
    }

    #[test]
    fn needs_divisibility_fix() {
        let s = check(&IntMatrix::from_i64(2, 2, &[2, 0, 0, 3]));
        assert_eq!(s.diagonal, vec![int(1), int(6)]);
    }

    #[test]
    fn solves() {
        let a = IntMatrix::from_i64(1, 1, &[2]);
        assert_eq!(hermite_solve(&a, &[rat(4, 1)]).solution(), Some(&[int(2)][..]));
        match hermite_solve(&a, &[rat(3, 1)]) {
            IntegerSolution::Infeasible { certificate } => {
                assert!(!(&certificate[0] * rat(3, 1)).is_integer());
                assert!((&certificate[0] * rat(2, 1)).is_integer());
            }
            _ => panic!("expected infeasible"),
        }
        let a = IntMatrix::from_i64(1, 2, &[2, 3]);
        let x = hermite_solve(&a, &[rat(1, 1)]).solution().unwrap().to_vec();
        assert_eq!(&x[0] * 2 + &x[1] * 3, int(1));
    }

    #[test]
    fn rational_rhs_is_infeasible() {
        let a = IntMatrix::from_i64(1, 1, &[1]);
        assert!(!hermite_solve(&a, &[rat(1, 2)]).is_feasible());
    }

    #[test]
    fn determinant_matches() {
        assert_eq!(determinant(&IntMatrix::from_i64(3, 3, &[2, 0, 1, 1, 3, 2, 1, 1, 1])), int(0));
        assert_eq!(determinant(&IntMatrix::from_i64(3, 3, &[2, 1, 0, 1, 1, 0, 0, 5, 1])), int(1));
        assert_eq!(determinant(&IntMatrix::from_i64(2, 2, &[0, 1, 1, 0])), int(-1));
    }
}
