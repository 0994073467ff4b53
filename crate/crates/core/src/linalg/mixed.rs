//! Subgroups of `Q^n` of the form `V + L` with `V` a subspace and `L` a lattice.
//!
//! Groups of cochains such as `B + Z_I` (exact forms plus integral cocycles) are
//! of this shape, and so are all the groups assembled from them by sums,
//! images, preimages and intersections.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use super::lattice::{integer_kernel, lattice_basis, lattice_coords};
use super::matrix::{IntMatrix, RatMatrix};
use super::rational::{nullspace, rank_of_vectors, solve_many, Subspace};
use super::snf::{hermite_solve, AbelianGroupInvariants};
use crate::arith::{common_denominator, rat_int, to_rat_vec, Int, Rat};

/// Structure of a quotient `M / N` of mixed groups:
/// `Q^vector_dim x (Q/Z)^torus_dim x Z^free_rank x (+) Z/t_i`.
/// Read over the reals, the second factor is a torus of that dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GroupInvariants {
    pub vector_dim: usize,
    pub torus_dim: usize,
    pub free_rank: usize,
    pub torsion: Vec<Int>,
}

impl GroupInvariants {
    pub fn is_trivial(&self) -> bool {
        self.vector_dim == 0 && self.torus_dim == 0 && self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn discrete(&self) -> AbelianGroupInvariants {
        AbelianGroupInvariants { free_rank: self.free_rank, torsion: self.torsion.clone() }
    }
}

impl fmt::Display for GroupInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<alloc::string::String> = Vec::new();
        if self.vector_dim > 0 {
            parts.push(alloc::format!("R^{}", self.vector_dim));
        }
        if self.torus_dim > 0 {
            parts.push(alloc::format!("T^{}", self.torus_dim));
        }
        if self.free_rank > 0 {
            parts.push(alloc::format!("Z^{}", self.free_rank));
        }
        for t in &self.torsion {
            parts.push(alloc::format!("Z/{}", t));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

/// Solutions `(s, t)` with `s` rational, `t` integral, of `G_s s + G_t t = 0`
/// where `G = [G_s | G_t]` and `G_s` has `a` columns. Returned as generators
/// of a rational part and of a lattice part, in `Q^(cols G)`.
pub fn mixed_kernel(g: &RatMatrix, a: usize) -> (Vec<Vec<Rat>>, Vec<Vec<Rat>>) {
    let n = g.rows();
    let total = g.cols();
    let s_idx: Vec<usize> = (0..a).collect();
    let t_idx: Vec<usize> = (a..total).collect();
    let gs = g.select_columns(&s_idx);
    let gt = g.select_columns(&t_idx);

    let mut rational = Vec::new();
    for k in nullspace(&gs) {
        let mut v = k;
        v.resize(total, Rat::zero());
        rational.push(v);
    }
    if t_idx.is_empty() {
        return (rational, Vec::new());
    }
    let vs = Subspace::column_space(&gs);
    let reduced = if vs.dim() == 0 { gt.clone() } else { vs.projection_matrix().mul_mat(&gt) };
    let tk = if reduced.rows() == 0 {
        (0..t_idx.len())
            .map(|i| (0..t_idx.len()).map(|j| if i == j { Int::one() } else { Int::zero() }).collect())
            .collect()
    } else {
        integer_kernel(&reduced)
    };
    let rhs: Vec<Vec<Rat>> = tk.iter().map(|t| gt.mul_vec(&to_rat_vec(t)).into_iter().map(|x| -x).collect()).collect();
    let sols = if a == 0 { vec![Some(Vec::new()); tk.len()] } else { solve_many(&gs, &rhs) };
    let _ = n;
    let lattice = tk
        .iter()
        .zip(sols)
        .map(|(t, s)| {
            let mut v = s.expect("projection guarantees solvability");
            v.extend(to_rat_vec(t));
            v
        })
        .collect();
    (rational, lattice)
}

/// Finds rational `s` and integral `t` with `G_s s + G_t t = x`.
pub fn mixed_solve(gs: &RatMatrix, gt: &RatMatrix, x: &[Rat]) -> Option<(Vec<Rat>, Vec<Int>)> {
    let n = x.len();
    let vs = Subspace::column_space(gs);
    let (m, rhs) = if vs.dim() == 0 {
        (gt.clone(), x.to_vec())
    } else {
        let p = vs.projection_matrix();
        (p.mul_mat(gt), p.mul_vec(x))
    };
    let t = if gt.cols() == 0 {
        if rhs.iter().any(|v| !v.is_zero()) {
            return None;
        }
        Vec::new()
    } else {
        // clear denominators row by row so the system is integral on the left
        let mut rows = Vec::with_capacity(m.rows());
        let mut b = Vec::with_capacity(m.rows());
        for r in 0..m.rows() {
            let l = rat_int(&common_denominator(m.row(r).iter()));
            rows.push(m.row(r).iter().map(|v| (v * &l).to_integer()).collect());
            b.push(&rhs[r] * &l);
        }
        let a = IntMatrix::from_rows(m.rows(), m.cols(), rows);
        hermite_solve(&a, &b).solution()?.to_vec()
    };
    let rest: Vec<Rat> = {
        let gt_t = if t.is_empty() { vec![Rat::zero(); n] } else { gt.mul_vec(&to_rat_vec(&t)) };
        x.iter().zip(gt_t).map(|(a, b)| a - b).collect()
    };
    if gs.cols() == 0 {
        return if rest.iter().all(Zero::is_zero) { Some((Vec::new(), t)) } else { None };
    }
    let s = super::rational::solve(gs, &rest)?;
    Some((s, t))
}

/// A subgroup `V + L` of `Q^n`, stored canonically: `V` in reduced echelon form
/// and `L` reduced modulo `V` and put in Hermite normal form. Two values are
/// equal exactly when the subgroups are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedSubgroup {
    space: Subspace,
    lattice: Vec<Vec<Rat>>,
}

impl MixedSubgroup {
    pub fn new(n: usize, space_gens: &[Vec<Rat>], lattice_gens: &[Vec<Rat>]) -> Self {
        Self::with_space(Subspace::span(n, space_gens), lattice_gens)
    }

    pub fn with_space(space: Subspace, lattice_gens: &[Vec<Rat>]) -> Self {
        let n = space.ambient();
        let reduced: Vec<Vec<Rat>> = lattice_gens.iter().map(|g| space.reduce(g)).collect();
        let lattice = lattice_basis(n, &reduced);
        MixedSubgroup { space, lattice }
    }

    pub fn zero(n: usize) -> Self {
        MixedSubgroup { space: Subspace::zero(n), lattice: Vec::new() }
    }

    pub fn from_subspace(space: Subspace) -> Self {
        MixedSubgroup { space, lattice: Vec::new() }
    }

    pub fn from_lattice(n: usize, gens: &[Vec<Rat>]) -> Self {
        Self::new(n, &[], gens)
    }

    /// The standard lattice `Z^n`.
    pub fn integer_lattice(n: usize) -> Self {
        Self::from_lattice(n, &RatMatrix::identity(n).columns())
    }

    pub fn full_space(n: usize) -> Self {
        Self::from_subspace(Subspace::full(n))
    }

    pub fn ambient(&self) -> usize {
        self.space.ambient()
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    /// Lattice part, reduced modulo the space.
    pub fn lattice(&self) -> &[Vec<Rat>] {
        &self.lattice
    }

    pub fn is_zero(&self) -> bool {
        self.space.dim() == 0 && self.lattice.is_empty()
    }

    /// Dimension of the rational span of the group.
    pub fn rational_dim(&self) -> usize {
        self.space.dim() + self.lattice.len()
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        lattice_coords(&self.lattice, &self.space.reduce(x)).is_some()
    }

    /// Writes `x = v + sum c_i l_i` with `v` in the space and `l_i` the lattice basis.
    pub fn decompose(&self, x: &[Rat]) -> Option<(Vec<Rat>, Vec<Int>)> {
        let r = self.space.reduce(x);
        let c = lattice_coords(&self.lattice, &r)?;
        let v = x.iter().zip(&r).map(|(a, b)| a - b).collect();
        Some((v, c))
    }

    pub fn is_subgroup_of(&self, other: &MixedSubgroup) -> bool {
        other.space.contains_subspace(&self.space) && self.lattice.iter().all(|l| other.contains(l))
    }

    pub fn sum(&self, other: &MixedSubgroup) -> MixedSubgroup {
        let space = self.space.sum(&other.space);
        let mut gens = self.lattice.clone();
        gens.extend(other.lattice.iter().cloned());
        Self::with_space(space, &gens)
    }

    pub fn add_space(&self, vs: &[Vec<Rat>]) -> MixedSubgroup {
        self.sum(&MixedSubgroup::new(self.ambient(), vs, &[]))
    }

    pub fn add_lattice(&self, ls: &[Vec<Rat>]) -> MixedSubgroup {
        self.sum(&MixedSubgroup::from_lattice(self.ambient(), ls))
    }

    /// Image under the linear map `a` (`m x n`).
    pub fn image(&self, a: &RatMatrix) -> MixedSubgroup {
        assert_eq!(a.cols(), self.ambient(), "map has wrong source dimension");
        let vs: Vec<Vec<Rat>> = self.space.basis().iter().map(|v| a.mul_vec(v)).collect();
        let ls: Vec<Vec<Rat>> = self.lattice.iter().map(|v| a.mul_vec(v)).collect();
        MixedSubgroup::new(a.rows(), &vs, &ls)
    }

    /// `{x : a x in self}` for `a` of shape `m x n`, `m` the ambient dimension.
    pub fn preimage(&self, a: &RatMatrix) -> MixedSubgroup {
        assert_eq!(a.rows(), self.ambient(), "map has wrong target dimension");
        let n = a.cols();
        let neg_v = RatMatrix::from_columns(self.ambient(), self.space.basis()).neg();
        let neg_l = RatMatrix::from_columns(self.ambient(), &self.lattice).neg();
        let g = a.hstack(&neg_v).hstack(&neg_l);
        let (rat_part, lat_part) = mixed_kernel(&g, n + self.space.dim());
        let trunc = |v: Vec<Rat>| -> Vec<Rat> { v[..n].to_vec() };
        let vs: Vec<Vec<Rat>> = rat_part.into_iter().map(trunc).collect();
        let ls: Vec<Vec<Rat>> = lat_part.into_iter().map(trunc).collect();
        MixedSubgroup::new(n, &vs, &ls)
    }

    pub fn intersection(&self, other: &MixedSubgroup) -> MixedSubgroup {
        let n = self.ambient();
        assert_eq!(n, other.ambient());
        if self.is_subgroup_of(other) {
            return self.clone();
        }
        if other.is_subgroup_of(self) {
            return other.clone();
        }
        let v1 = RatMatrix::from_columns(n, self.space.basis());
        let v2 = RatMatrix::from_columns(n, other.space.basis()).neg();
        let l1 = RatMatrix::from_columns(n, &self.lattice);
        let l2 = RatMatrix::from_columns(n, &other.lattice).neg();
        let g = v1.hstack(&v2).hstack(&l1).hstack(&l2);
        let (d1, d2, e1) = (self.space.dim(), other.space.dim(), self.lattice.len());
        let (rat_part, lat_part) = mixed_kernel(&g, d1 + d2);
        let to_point = |k: &Vec<Rat>| -> Vec<Rat> {
            let mut x = v1.mul_vec(&k[..d1]);
            let y = l1.mul_vec(&k[d1 + d2..d1 + d2 + e1]);
            for (xi, yi) in x.iter_mut().zip(y) {
                *xi += yi;
            }
            x
        };
        let vs: Vec<Vec<Rat>> = rat_part.iter().map(to_point).collect();
        let ls: Vec<Vec<Rat>> = lat_part.iter().map(to_point).collect();
        MixedSubgroup::new(n, &vs, &ls)
    }

    /// Structure of `self / sub`; `None` when `sub` is not contained in `self`.
    pub fn quotient(&self, sub: &MixedSubgroup) -> Option<GroupInvariants> {
        if !sub.is_subgroup_of(self) {
            return None;
        }
        // work modulo the space of `sub`
        let p2 = &sub.space;
        let w_gens: Vec<Vec<Rat>> = self.space.basis().iter().map(|v| p2.project(v)).collect();
        let l1: Vec<Vec<Rat>> = self.lattice.iter().map(|v| p2.project(v)).collect();
        let l2: Vec<Vec<Rat>> = sub.lattice.iter().map(|v| p2.project(v)).collect();
        let k = self.ambient() - p2.dim();
        let w = Subspace::span(k, &w_gens);
        let rank_l2 = rank_of_vectors(k, &l2);
        let rl1: Vec<Vec<Rat>> = l1.iter().map(|v| w.project(v)).collect();
        let rl2: Vec<Vec<Rat>> = l2.iter().map(|v| w.project(v)).collect();
        let kk = k - w.dim();
        let rank_rl2 = rank_of_vectors(kk, &rl2);
        let torus = rank_l2 - rank_rl2;
        let basis1 = lattice_basis(kk, &rl1);
        let coords: Vec<Vec<Rat>> = rl2
            .iter()
            .map(|v| to_rat_vec(&lattice_coords(&basis1, v).expect("sub lattice lies in the ambient lattice")))
            .collect();
        let discrete = if basis1.is_empty() {
            AbelianGroupInvariants::default()
        } else {
            let c = RatMatrix::from_columns(basis1.len(), &coords).to_int().expect("integral coordinates");
            AbelianGroupInvariants::cokernel(&c)
        };
        Some(GroupInvariants {
            vector_dim: w.dim() - torus,
            torus_dim: torus,
            free_rank: discrete.free_rank,
            torsion: discrete.torsion,
        })
    }
}

/// Invariants of `Q^n / (span S + Z L)`; `s` and `l` hold generators as columns.
pub fn quotient_invariants(n: usize, s: &RatMatrix, l: &IntMatrix) -> Result<GroupInvariants, crate::Error> {
    if (s.cols() > 0 && s.rows() != n) || (l.cols() > 0 && l.rows() != n) {
        return Err(crate::Error::DimensionMismatch { expected: n, found: if s.rows() != n { s.rows() } else { l.rows() } });
    }
    let sub = MixedSubgroup::new(n, &s.columns(), &l.to_rat().columns());
    Ok(MixedSubgroup::full_space(n).quotient(&sub).expect("everything lies in the full space"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat(x, 1)).collect()
    }

    #[test]
    fn circle_quotients() {
        let q = quotient_invariants(1, &RatMatrix::zeros(1, 0), &IntMatrix::from_i64(1, 1, &[1])).unwrap();
        assert_eq!(q, GroupInvariants { torus_dim: 1, ..Default::default() });
        let q = quotient_invariants(1, &RatMatrix::zeros(1, 0), &IntMatrix::from_i64(1, 1, &[2])).unwrap();
        assert_eq!(q.torus_dim, 1);
        let q = quotient_invariants(2, &RatMatrix::from_i64(2, 1, &[1, 0]), &IntMatrix::from_i64(2, 1, &[0, 1])).unwrap();
        assert_eq!(q, GroupInvariants { torus_dim: 1, ..Default::default() });
        let q = quotient_invariants(2, &RatMatrix::zeros(2, 0), &IntMatrix::zeros(2, 0)).unwrap();
        assert_eq!(q.vector_dim, 2);
    }

    #[test]
    fn discrete_quotient() {
        let z2 = MixedSubgroup::integer_lattice(2);
        let sub = MixedSubgroup::from_lattice(2, &[v(&[2, 0])]);
        let q = z2.quotient(&sub).unwrap();
        assert_eq!(q, GroupInvariants { free_rank: 1, torsion: vec![int(2)], ..Default::default() });
    }

    #[test]
    fn intersection_and_preimage() {
        // span{(1,1)} meets Z^2 in Z(1,1)
        let line = MixedSubgroup::new(2, &[v(&[1, 1])], &[]);
        let z2 = MixedSubgroup::integer_lattice(2);
        let i = line.intersection(&z2);
        assert_eq!(i, MixedSubgroup::from_lattice(2, &[v(&[1, 1])]));
        // preimage of Z under x -> 2x is (1/2)Z
        let a = RatMatrix::from_i64(1, 1, &[2]);
        let p = MixedSubgroup::integer_lattice(1).preimage(&a);
        assert_eq!(p, MixedSubgroup::from_lattice(1, &[vec![rat(1, 2)]]));
    }

    #[test]
    fn mixed_solver() {
        let gs = RatMatrix::from_i64(2, 1, &[1, 0]);
        let gt = RatMatrix::from_i64(2, 1, &[1, 2]);
        let (s, t) = mixed_solve(&gs, &gt, &[rat(1, 3), rat(4, 1)]).unwrap();
        assert_eq!(t, vec![int(2)]);
        assert_eq!(s, vec![rat(1, 3) - rat(2, 1)]);
        assert!(mixed_solve(&gs, &gt, &[rat(0, 1), rat(3, 1)]).is_none());
    }
}
