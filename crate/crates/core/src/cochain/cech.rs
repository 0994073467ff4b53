use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{CochainComplex, CohomologyGroup, Ring};
use crate::arith::{int, Rat};
use crate::linalg::RatMatrix;
use crate::simplicial::StarCover;

/// The Čech double complex `⊕ C^p(U, C^q)` of a star cover with simplicial
/// cochains on the fine subdivision as coefficients, totalized with
/// `D = (-1)^q δ + d`, that is
/// `(Dx)^{p,q} = d x^{p,q-1} + (-1)^q δ x^{p-1,q}` and
/// `(δx)_τ = Σ_i (-1)^i x_{τ∖i}|`.
#[derive(Clone, Debug)]
pub struct CechTotalComplex {
    pub cover: StarCover,
    pub ring: Ring,
    /// `block_offset[k][p]`: start of the `(p, k-p)` block inside degree `k`.
    block_offset: Vec<Vec<usize>>,
    /// `sigma_offset[p][q][σ]`: start of `σ` inside the `(p, q)` block.
    sigma_offset: Vec<Vec<Vec<usize>>>,
    complex: CochainComplex,
}

impl CechTotalComplex {
    pub fn new(cover: StarCover, ring: Ring) -> Self {
        let base = cover.base().clone();
        let fine_dim = cover.fine().dim();
        let n = base.dim();
        let sigma_offset: Vec<Vec<Vec<usize>>> = (0..=n)
            .map(|p| {
                (0..=fine_dim)
                    .map(|q| {
                        let mut acc = 0;
                        let mut offs = Vec::with_capacity(base.count(p) + 1);
                        for s in 0..base.count(p) {
                            offs.push(acc);
                            acc += cover.members(p, s, q).len();
                        }
                        offs.push(acc);
                        offs
                    })
                    .collect()
            })
            .collect();
        let block_size = |p: usize, q: usize| -> usize {
            if p > n || q > fine_dim {
                0
            } else {
                *sigma_offset[p][q].last().unwrap()
            }
        };
        let top = n + fine_dim;
        let mut block_offset = Vec::with_capacity(top + 1);
        let mut dims = Vec::with_capacity(top + 1);
        for k in 0..=top {
            let mut acc = 0;
            let mut offs = Vec::with_capacity(k + 2);
            for p in 0..=k {
                offs.push(acc);
                acc += block_size(p, k - p);
            }
            offs.push(acc);
            block_offset.push(offs);
            dims.push(acc);
        }
        let mut t = CechTotalComplex {
            cover,
            ring,
            block_offset,
            sigma_offset,
            complex: CochainComplex { dims: dims.clone(), d: Vec::new() },
        };
        let d: Vec<RatMatrix> = (0..=top).map(|k| t.build_differential(k)).collect();
        t.complex = CochainComplex::new(dims, d).expect("total complex shape");
        t
    }

    fn build_differential(&self, k: usize) -> RatMatrix {
        let base = self.cover.base();
        let fine = self.cover.fine();
        let n = base.dim();
        let fine_dim = fine.dim();
        let rows = self.complex.dims.get(k + 1).copied().unwrap_or(0);
        let mut m = RatMatrix::zeros(rows, self.complex.dims[k]);
        for p in 0..=k.min(n) {
            let q = k - p;
            if q > fine_dim {
                continue;
            }
            for sigma in 0..base.count(p) {
                for &s in self.cover.members(p, sigma, q) {
                    let col = self.index(p, q, sigma, s).unwrap();
                    if q < fine_dim {
                        for &t in fine.cofaces(q, s) {
                            if let Some(row) = self.index(p, q + 1, sigma, t) {
                                let j = fine.faces(q + 1, t).iter().position(|&f| f == s).unwrap();
                                let v = if j % 2 == 0 { 1 } else { -1 };
                                *m.get_mut(row, col) += Rat::from_integer(int(v));
                            }
                        }
                    }
                    if p < n {
                        for &tau in base.cofaces(p, sigma) {
                            if let Some(row) = self.index(p + 1, q, tau, s) {
                                let i = base.faces(p + 1, tau).iter().position(|&f| f == sigma).unwrap();
                                let sign = if (q + i) % 2 == 0 { 1 } else { -1 };
                                *m.get_mut(row, col) += Rat::from_integer(int(sign));
                            }
                        }
                    }
                }
            }
        }
        m
    }

    pub fn complex(&self) -> &CochainComplex {
        &self.complex
    }

    pub fn dim(&self, k: usize) -> usize {
        self.complex.dim(k)
    }

    pub fn top_degree(&self) -> usize {
        self.complex.top_degree()
    }

    /// Position of the value on fine simplex `s` of component `σ` in bidegree `(p, q)`.
    pub fn index(&self, p: usize, q: usize, sigma: usize, s: usize) -> Option<usize> {
        let local = self.cover.local_index(p, sigma, q, s)?;
        Some(self.block_offset[p + q][p] + self.sigma_offset[p][q][sigma] + local)
    }

    /// Range of the `(p, q)` block inside degree `p + q`.
    pub fn block_range(&self, p: usize, q: usize) -> core::ops::Range<usize> {
        let k = p + q;
        if k >= self.block_offset.len() || p + 1 >= self.block_offset[k].len() {
            return 0..0;
        }
        self.block_offset[k][p]..self.block_offset[k][p + 1]
    }

    /// Values of component `σ` of bidegree `(p, q)`, indexed like `cover.members(p, σ, q)`.
    pub fn component<'a>(&self, x: &'a [Rat], p: usize, q: usize, sigma: usize) -> &'a [Rat] {
        let start = self.block_offset[p + q][p] + self.sigma_offset[p][q][sigma];
        let end = self.block_offset[p + q][p] + self.sigma_offset[p][q][sigma + 1];
        &x[start..end]
    }

    /// `C^q(Sd^m K) -> Tot^q`: restriction of a global cochain to every vertex
    /// element. Its image is the kernel of `δ` on the `p = 0` column.
    pub fn restriction_matrix(&self, q: usize) -> RatMatrix {
        let fine = self.cover.fine();
        let mut m = RatMatrix::zeros(self.dim(q), fine.count(q));
        for v in 0..self.cover.base().vertex_count() {
            for &s in self.cover.members(0, v, q) {
                m.set(self.index(0, q, v, s).unwrap(), s, Rat::one());
            }
        }
        m
    }

    /// `C^p(K) -> Tot^p`: a Čech cochain of the nerve as locally constant
    /// functions. Its image is the kernel of `d` on the `q = 0` row.
    pub fn constants_matrix(&self, p: usize) -> RatMatrix {
        let base = self.cover.base();
        let mut m = RatMatrix::zeros(self.dim(p), base.count(p));
        for sigma in 0..base.count(p) {
            for &s in self.cover.members(p, sigma, 0) {
                m.set(self.index(p, 0, sigma, s).unwrap(), sigma, Rat::one());
            }
        }
        m
    }

    /// Apply `D` in degree `k`.
    pub fn apply(&self, k: usize, x: &[Rat]) -> Vec<Rat> {
        self.complex.apply(k, x)
    }

    pub fn zero(&self, k: usize) -> Vec<Rat> {
        vec![Rat::zero(); self.dim(k)]
    }
}

pub fn build_cech_total(cover: StarCover, ring: Ring) -> CechTotalComplex {
    CechTotalComplex::new(cover, ring)
}

pub fn total_cohomology(t: &CechTotalComplex, k: usize) -> CohomologyGroup {
    match t.ring {
        Ring::Integers => t.complex.integer_cohomology(k),
        Ring::Rationals => t.complex.rational_cohomology(k),
    }
}
