//! Whitney forms of a base complex and their exact integrals over the
//! simplices of iterated barycentric subdivisions.
//!
//! For a base simplex `σ = [v_0..v_q]` the Whitney form is
//! `W_σ = q! Σ_i (-1)^i λ_i dλ_0 ∧ .. ∧ ^dλ_i ∧ .. ∧ dλ_q`. Over a fine simplex
//! `τ = [p_0..p_q]` lying in one base simplex the `λ` are affine, every `dλ`
//! is constant, and the integral is
//! `Σ_i (-1)^i mean_j λ_i(p_j) det(λ_l(p_j) - λ_l(p_0))_{l≠i, j≥1}`.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::arith::{rat, Int, Rat};
use crate::cochain::simplicial_cochains;
use crate::error::{Error, Result};
use crate::linalg::{rank, MixedSubgroup, RatMatrix, Subspace};
use crate::simplicial::{SimplicialComplex, Subdivision};

/// A Whitney form: one rational coefficient per base `q`-simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhitneyForm {
    pub degree: usize,
    pub coeffs: Vec<Rat>,
}

impl WhitneyForm {
    pub fn new(degree: usize, coeffs: Vec<Rat>) -> Self {
        WhitneyForm { degree, coeffs }
    }

    pub fn basis(k: &SimplicialComplex, degree: usize, index: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); k.count(degree)];
        coeffs[index] = rat(1, 1);
        WhitneyForm { degree, coeffs }
    }

    /// The Whitney form of the coboundary cochain.
    pub fn d(&self, k: &SimplicialComplex) -> WhitneyForm {
        WhitneyForm { degree: self.degree + 1, coeffs: simplicial_cochains(k).apply(self.degree, &self.coeffs) }
    }
}

fn det(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    let mut d = rat(1, 1);
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else { return Rat::zero() };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= &m[c][c];
        let pivot = m[c].clone();
        for row in m.iter_mut().skip(c + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] / &pivot[c];
            for j in c..n {
                let t = &f * &pivot[j];
                row[j] -= t;
            }
        }
    }
    d
}

/// Integral of `W_σ` (base vertices `sigma`) over the fine simplex with
/// vertex coordinates `points`.
pub fn integrate_basis(sigma: &[usize], points: &[&[Rat]]) -> Rat {
    let q = sigma.len() - 1;
    assert_eq!(points.len(), q + 1, "degree mismatch");
    if q == 0 {
        return points[0][sigma[0]].clone();
    }
    let count = rat(1, (q + 1) as i64);
    let mut total = Rat::zero();
    for i in 0..=q {
        let others: Vec<usize> = (0..=q).filter(|&l| l != i).map(|l| sigma[l]).collect();
        let m: Vec<Vec<Rat>> =
            others.iter().map(|&v| (1..=q).map(|j| &points[j][v] - &points[0][v]).collect()).collect();
        let dm = det(m);
        if dm.is_zero() {
            continue;
        }
        let mean: Rat = points.iter().map(|p| p[sigma[i]].clone()).sum::<Rat>() * &count;
        let term = mean * dm;
        if i % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// `∫_τ w` for the fine `q`-simplex `τ` of the subdivision.
pub fn whitney_integrate(sub: &Subdivision, w: &WhitneyForm, tau: usize) -> Result<Rat> {
    if w.coeffs.len() != sub.base.count(w.degree) {
        return Err(Error::DimensionMismatch { expected: sub.base.count(w.degree), found: w.coeffs.len() });
    }
    if tau >= sub.complex.count(w.degree) {
        return Err(Error::InvalidInput("simplex index out of range".into()));
    }
    let row = whitney_row(sub, w.degree, tau);
    Ok(row.iter().map(|(s, x)| x * &w.coeffs[*s]).sum())
}

/// Nonzero entries `(base simplex, ∫_τ W_σ)` for the fine simplex `τ`.
fn whitney_row(sub: &Subdivision, q: usize, tau: usize) -> Vec<(usize, Rat)> {
    let base = &sub.base;
    let (cd, ci) = sub.carrier[q][tau];
    let carrier = base.simplex(cd, ci);
    let points: Vec<&[Rat]> = sub.complex.simplex(q, tau).iter().map(|&v| sub.coords[v].as_slice()).collect();
    let mut out = Vec::new();
    let k = carrier.len();
    for mask in 1u64..(1u64 << k) {
        if mask.count_ones() as usize != q + 1 {
            continue;
        }
        let sigma: Vec<usize> = (0..k).filter(|b| mask & (1 << b) != 0).map(|b| carrier[b]).collect();
        let val = integrate_basis(&sigma, &points);
        if !val.is_zero() {
            out.push((base.index_of(&sigma).expect("face of carrier"), val));
        }
    }
    out
}

/// Matrix of `refine : C^q(K) -> C^q(Sd^m K)`.
pub fn whitney_matrix(sub: &Subdivision, q: usize) -> RatMatrix {
    let mut m = RatMatrix::zeros(sub.complex.count(q), sub.base.count(q));
    for tau in 0..sub.complex.count(q) {
        for (s, v) in whitney_row(sub, q, tau) {
            m.set(tau, s, v);
        }
    }
    m
}

/// The depth-`m` cochain of integrals of `w`.
pub fn refine(sub: &Subdivision, w: &WhitneyForm) -> Vec<Rat> {
    whitney_matrix(sub, w.degree).mul_vec(&w.coeffs)
}

/// Result of the literal integrality test for Whitney forms.
#[derive(Clone, Debug)]
pub struct AxiomBReport {
    pub degree: usize,
    pub max_depth: usize,
    /// `true` when only the zero form has integral integrals at every depth.
    pub passes: bool,
    /// Basis of the lattice of coefficient vectors whose integrals are integral at all depths `<= max_depth`.
    pub lattice: Vec<Vec<Rat>>,
    /// Index of that lattice inside the depth-0 lattice, for depth `0..=max_depth`.
    pub index_by_depth: Vec<Option<Int>>,
    /// A nonzero element of the lattice when the check fails.
    pub witness: Option<WhitneyForm>,
}

/// Finds every Whitney `q`-form whose integrals over all simplices of
/// `Sd^m K`, `m <= max_depth`, are integers.
pub fn axiom_b_check(k: &SimplicialComplex, q: usize, max_depth: usize) -> AxiomBReport {
    let n = k.count(q);
    let mut lattice = MixedSubgroup::integer_lattice(n);
    let mut index_by_depth = Vec::with_capacity(max_depth + 1);
    let z = MixedSubgroup::integer_lattice(n);
    for m in 0..=max_depth {
        let sub = Subdivision::new(k, m);
        let w = whitney_matrix(&sub, q);
        let pre = MixedSubgroup::integer_lattice(w.rows()).preimage(&w);
        lattice = lattice.intersection(&pre);
        let inv = z.quotient(&lattice);
        index_by_depth.push(inv.and_then(|g| {
            if g.free_rank == 0 && g.vector_dim == 0 && g.torus_dim == 0 {
                Some(g.torsion.iter().product())
            } else {
                None
            }
        }));
    }
    let basis = lattice.lattice().to_vec();
    let passes = lattice.is_zero();
    let witness = basis.first().map(|b| WhitneyForm::new(q, b.clone()));
    AxiomBReport { degree: q, max_depth, passes, lattice: basis, index_by_depth, witness }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeRhamReport {
    pub whitney_betti: Vec<usize>,
    pub cochain_betti: Vec<usize>,
    pub commutes_with_d: bool,
}

impl DeRhamReport {
    pub fn passes(&self) -> bool {
        self.commutes_with_d && self.whitney_betti == self.cochain_betti
    }
}

/// Compares the cohomology ranks of the Whitney subcomplex inside the
/// depth-`m` cochains with those of the depth-`m` cochains themselves.
pub fn de_rham_check(k: &SimplicialComplex, m: usize) -> DeRhamReport {
    let sub = Subdivision::new(k, m);
    let fine = simplicial_cochains(&sub.complex);
    let base = simplicial_cochains(k);
    let n = k.dim();
    let ws: Vec<RatMatrix> = (0..=n).map(|q| whitney_matrix(&sub, q)).collect();
    let commutes = (0..n).all(|q| fine.differential(q).mul_mat(&ws[q]) == ws[q + 1].mul_mat(&base.differential(q)));
    let mut whitney_betti = Vec::with_capacity(n + 1);
    let mut cochain_betti = Vec::with_capacity(n + 1);
    for q in 0..=n {
        let e = Subspace::column_space(&ws[q]);
        let cocycles = e.intersection(&fine.cocycle_space(q));
        let exact = if q == 0 { 0 } else { rank(&fine.differential(q - 1).mul_mat(&ws[q - 1])) };
        whitney_betti.push(cocycles.dim() - exact);
        let z = fine.cocycle_space(q).dim();
        let b = if q == 0 { 0 } else { rank(&fine.differential(q - 1)) };
        cochain_betti.push(z - b);
    }
    DeRhamReport { whitney_betti, cochain_betti, commutes_with_d: commutes }
}
