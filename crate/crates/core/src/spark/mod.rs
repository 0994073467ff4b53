//! Spark complexes `E ⊂ F ⊃ I`: axiom verification, the spark equation,
//! equivalence of sparks, curvature and divisor class, the 3x3 grid, and
//! transfer of classes between compatible complexes.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::arith::{rat_int, Int, Rat};
use crate::cochain::{CochainComplex, CohomologyGroup};
use crate::error::{Error, Result};
use crate::linalg::{lattice_coords, mixed_solve, MixedSubgroup, RatMatrix, Subspace};

mod grid;
mod transfer;

pub use grid::{compute_grid, GridCheck, GridNode, GridReport};
pub use transfer::{lemma_solve, SubsparkEmbedding, TransferWitness};

/// A spark complex presented by finite-dimensional pieces: the complex `F`,
/// a subcomplex `E` given by a basis (columns) in each degree, and a lattice
/// subcomplex `I` given by generators in each degree.
#[derive(Clone, Debug)]
pub struct SparkComplex {
    pub name: String,
    f: CochainComplex,
    e: Vec<Subspace>,
    i: Vec<MixedSubgroup>,
    /// `d` restricted to `I`, in the coordinates of the lattice bases.
    i_complex: CochainComplex,
    i_cohomology: Vec<CohomologyGroup>,
}

/// A solution of the spark equation `da = φ - r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spark {
    pub degree: usize,
    pub a: Vec<Rat>,
    pub phi: Vec<Rat>,
    pub r: Vec<Rat>,
}

/// `a - a' = d b + s` with `s` in the lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceWitness {
    pub b: Vec<Rat>,
    pub s: Vec<Rat>,
}

#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    pub d_squared: bool,
    pub e_subcomplex: bool,
    pub i_subcomplex: bool,
    /// Per degree: whether `H^k(E) -> H^k(F)` is an isomorphism.
    pub axiom_a: Vec<bool>,
    /// A cocycle witnessing failure of (A) in some degree.
    pub axiom_a_witness: Option<(usize, Vec<Rat>)>,
    /// Per degree `k >= 1`: whether `E^k ∩ I^k = 0` (entry 0 is unused and true).
    pub axiom_b: Vec<bool>,
    pub axiom_b_witness: Option<(usize, Vec<Rat>)>,
    /// `E^0 ∩ I^0` equals the closed lattice elements of degree 0.
    pub consequence_c: bool,
}

impl AxiomReport {
    pub fn passes(&self) -> bool {
        self.d_squared
            && self.e_subcomplex
            && self.i_subcomplex
            && self.axiom_a.iter().all(|&x| x)
            && self.axiom_b.iter().all(|&x| x)
            && self.consequence_c
    }
}

impl SparkComplex {
    /// `e[k]` holds spanning vectors of `E^k`, `i[k]` generators of `I^k`.
    pub fn new(name: &str, f: CochainComplex, e: &[Vec<Vec<Rat>>], i: &[Vec<Vec<Rat>>]) -> Result<Self> {
        let top = f.top_degree();
        if e.len() != top + 1 || i.len() != top + 1 {
            return Err(Error::DimensionMismatch { expected: top + 1, found: e.len().min(i.len()) });
        }
        let e: Vec<Subspace> = (0..=top).map(|k| Subspace::span(f.dim(k), &e[k])).collect();
        let i: Vec<MixedSubgroup> = (0..=top).map(|k| MixedSubgroup::from_lattice(f.dim(k), &i[k])).collect();
        let mut d_i = Vec::with_capacity(top + 1);
        for k in 0..=top {
            let target = i.get(k + 1).map_or(&[][..], |l| l.lattice());
            let mut m = RatMatrix::zeros(target.len(), i[k].lattice().len());
            for (j, g) in i[k].lattice().iter().enumerate() {
                let dg = f.apply(k, g);
                let coords = if target.is_empty() {
                    if dg.iter().all(Zero::is_zero) {
                        Some(Vec::new())
                    } else {
                        None
                    }
                } else {
                    lattice_coords(target, &dg)
                };
                let coords = coords.ok_or_else(|| Error::AxiomFailure(format!("d does not preserve I in degree {}", k)))?;
                for (r, c) in coords.iter().enumerate() {
                    m.set(r, j, rat_int(c));
                }
            }
            d_i.push(m);
        }
        let i_dims: Vec<usize> = i.iter().map(|l| l.lattice().len()).collect();
        let i_complex = CochainComplex::new(i_dims, d_i)?;
        let i_cohomology = (0..=top).map(|k| i_complex.integer_cohomology(k)).collect();
        Ok(SparkComplex { name: name.into(), f, e, i, i_complex, i_cohomology })
    }

    pub fn f(&self) -> &CochainComplex {
        &self.f
    }

    pub fn top_degree(&self) -> usize {
        self.f.top_degree()
    }

    pub fn dim(&self, k: usize) -> usize {
        self.f.dim(k)
    }

    pub fn e(&self, k: usize) -> Subspace {
        self.e.get(k).cloned().unwrap_or_else(|| Subspace::zero(self.dim(k)))
    }

    pub fn i(&self, k: usize) -> MixedSubgroup {
        self.i.get(k).cloned().unwrap_or_else(|| MixedSubgroup::zero(self.dim(k)))
    }

    pub fn i_basis(&self, k: usize) -> &[Vec<Rat>] {
        self.i.get(k).map_or(&[], |l| l.lattice())
    }

    pub fn i_complex(&self) -> &CochainComplex {
        &self.i_complex
    }

    /// `H^k(I)` with integer representatives in lattice coordinates.
    pub fn i_cohomology(&self, k: usize) -> Option<&CohomologyGroup> {
        self.i_cohomology.get(k)
    }

    /// Coordinates of a lattice element on the lattice basis.
    pub fn i_coords(&self, k: usize, x: &[Rat]) -> Option<Vec<Int>> {
        let basis = self.i_basis(k);
        if basis.is_empty() {
            return if x.iter().all(Zero::is_zero) { Some(Vec::new()) } else { None };
        }
        lattice_coords(basis, x)
    }

    /// Element of `F^k` from lattice coordinates.
    pub fn i_element(&self, k: usize, coords: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim(k)];
        for (c, g) in coords.iter().zip(self.i_basis(k)) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(g) {
                *o += c * x;
            }
        }
        out
    }

    pub fn d(&self, k: usize, x: &[Rat]) -> Vec<Rat> {
        self.f.apply(k, x)
    }

    /// Checks (A), (B), (C) and the subcomplex conditions, with witnesses.
    pub fn verify_axioms(&self) -> AxiomReport {
        let top = self.top_degree();
        let mut rep = AxiomReport { d_squared: self.f.d_squared_is_zero(), i_subcomplex: true, ..Default::default() };
        rep.e_subcomplex = (0..top).all(|k| {
            let de = self.f.differential(k);
            self.e[k].basis().iter().all(|v| self.e[k + 1].contains(&de.mul_vec(v)))
        });
        for k in 0..=top {
            // (A): H(E) -> H(F) injective and surjective
            let z_f = self.f.cocycle_space(k);
            let b_f = self.f.coboundary_space(k);
            let z_e = self.e[k].intersection(&z_f);
            let b_e = if k == 0 {
                Subspace::zero(self.dim(k))
            } else {
                let de = self.f.differential(k - 1);
                Subspace::span(self.dim(k), &self.e[k - 1].basis().iter().map(|v| de.mul_vec(v)).collect::<Vec<_>>())
            };
            let injective = z_e.intersection(&b_f).dim() == b_e.dim();
            let covered = z_e.sum(&b_f);
            let surjective = covered.dim() == z_f.dim();
            rep.axiom_a.push(injective && surjective);
            if rep.axiom_a_witness.is_none() {
                if !surjective {
                    let w = z_f.basis().iter().find(|v| !covered.contains(v)).cloned().unwrap();
                    rep.axiom_a_witness = Some((k, w));
                } else if !injective {
                    let w = z_e.intersection(&b_f).basis().iter().find(|v| !b_e.contains(v)).cloned().unwrap();
                    rep.axiom_a_witness = Some((k, w));
                }
            }
            // (B) and (C)
            let meet = MixedSubgroup::from_subspace(self.e[k].clone()).intersection(&self.i[k]);
            if k == 0 {
                rep.axiom_b.push(true);
                let closed = self.i[0].intersection(&MixedSubgroup::from_subspace(z_f));
                rep.consequence_c = meet == closed;
            } else {
                rep.axiom_b.push(meet.is_zero());
                if !meet.is_zero() && rep.axiom_b_witness.is_none() {
                    let w = meet.lattice().first().cloned().or_else(|| meet.space().basis().first().cloned());
                    rep.axiom_b_witness = w.map(|w| (k, w));
                }
            }
        }
        rep
    }

    /// Solves the spark equation for `a`, or reports that `a` is not a spark.
    pub fn decompose_spark(&self, k: usize, a: &[Rat]) -> Result<Spark> {
        if a.len() != self.dim(k) {
            return Err(Error::DimensionMismatch { expected: self.dim(k), found: a.len() });
        }
        let da = self.d(k, a);
        let n = self.dim(k + 1);
        let gs = RatMatrix::from_columns(n, self.e(k + 1).basis());
        let gt = RatMatrix::from_columns(n, self.i_basis(k + 1));
        let (s, t) = mixed_solve(&gs, &gt, &da).ok_or_else(|| Error::NotASpark("d a is not in E + I".into()))?;
        let phi = if gs.cols() == 0 { vec![Rat::zero(); n] } else { gs.mul_vec(&s) };
        let r: Vec<Rat> = if gt.cols() == 0 {
            vec![Rat::zero(); n]
        } else {
            gt.mul_vec(&t.iter().map(rat_int).collect::<Vec<_>>()).into_iter().map(|x| -x).collect()
        };
        Ok(Spark { degree: k, a: a.to_vec(), phi, r })
    }

    pub fn is_spark(&self, k: usize, a: &[Rat]) -> bool {
        self.decompose_spark(k, a).is_ok()
    }

    /// Decides whether `a - a2 = d b + s` with `s ∈ I^k`; returns a witness when it is.
    pub fn equivalent(&self, k: usize, a: &[Rat], a2: &[Rat]) -> Result<Option<EquivalenceWitness>> {
        if a.len() != self.dim(k) || a2.len() != self.dim(k) {
            return Err(Error::DimensionMismatch { expected: self.dim(k), found: a.len().min(a2.len()) });
        }
        let x: Vec<Rat> = a.iter().zip(a2).map(|(p, q)| p - q).collect();
        Ok(self.split_exact_plus_lattice(k, &x))
    }

    /// Writes `x = d b + s` with `s` in the lattice, when possible.
    pub fn split_exact_plus_lattice(&self, k: usize, x: &[Rat]) -> Option<EquivalenceWitness> {
        let n = self.dim(k);
        let gs = if k == 0 { RatMatrix::zeros(n, 0) } else { self.f.differential(k - 1) };
        let gt = RatMatrix::from_columns(n, self.i_basis(k));
        let (b, t) = mixed_solve(&gs, &gt, x)?;
        let s = if gt.cols() == 0 { vec![Rat::zero(); n] } else { gt.mul_vec(&t.iter().map(rat_int).collect::<Vec<_>>()) };
        let b = if k == 0 { Vec::new() } else { b };
        Some(EquivalenceWitness { b, s })
    }

    /// Curvature of the class of `a`.
    pub fn delta1(&self, k: usize, a: &[Rat]) -> Result<Vec<Rat>> {
        Ok(self.decompose_spark(k, a)?.phi)
    }

    /// Divisor class of `a`: coordinates of `[r]` in `H^{k+1}(I)`.
    pub fn delta2(&self, k: usize, a: &[Rat]) -> Result<Vec<Int>> {
        let s = self.decompose_spark(k, a)?;
        self.lattice_class(k + 1, &s.r)
    }

    /// Class in `H^k(I)` of a closed lattice element.
    pub fn lattice_class(&self, k: usize, r: &[Rat]) -> Result<Vec<Int>> {
        let coords = self.i_coords(k, r).ok_or_else(|| Error::Inconsistent("element is not in the lattice".into()))?;
        let coords: Vec<Rat> = coords.iter().map(rat_int).collect();
        match self.i_cohomology(k) {
            Some(g) => g.classify(&coords).ok_or_else(|| Error::NotACocycle("lattice element is not closed".into())),
            None => Ok(Vec::new()),
        }
    }

    /// Whether two sparks have equal curvature and divisor class.
    pub fn same_invariants(&self, k: usize, a: &[Rat], b: &[Rat]) -> Result<bool> {
        Ok(self.delta1(k, a)? == self.delta1(k, b)? && self.delta2(k, a)? == self.delta2(k, b)?)
    }

    /// A spark of degree `k` with no divisor, from an element of `E^k`.
    pub fn e_spark(&self, k: usize, e: &[Rat]) -> Result<Spark> {
        if !self.e(k).contains(e) {
            return Err(Error::InvalidInput("element is not in E".into()));
        }
        self.decompose_spark(k, e)
    }

    /// Applies a map of presentations (a chain map preserving `E` and `I`).
    pub fn map_spark(&self, target: &SparkComplex, k: usize, map: &RatMatrix, a: &[Rat]) -> Result<Spark> {
        let b = map.mul_vec(a);
        target.decompose_spark(k, &b)
    }
}
