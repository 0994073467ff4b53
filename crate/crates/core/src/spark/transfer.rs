//! Comparison of two spark complexes along a chain map `ι : F -> F̄` with
//! `ι(E) = Ē`, `ι(I) ⊂ Ī` and `H(I) ≅ H(Ī)`: every spark of `F̄` is
//! equivalent to the image of a spark of `F`, and equivalence in `F̄` of
//! images descends to `F`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::{EquivalenceWitness, SparkComplex};
use crate::arith::{rat_int, Rat};
use crate::error::{Error, Result};
use crate::linalg::{mixed_solve, solve, AbelianGroupInvariants, IntMatrix, RatMatrix, Subspace};

/// Given `ι_p : F^p -> F̄^p`, the ambient differential `d̄_{p-1}` and `α ∈ F̄^p`
/// with `d̄α ∈ ι(F^{p+1})`, finds `γ` and `f` with `ι f = α + d̄γ`.
pub fn lemma_solve(iota: &RatMatrix, dbar_prev: Option<&RatMatrix>, alpha: &[Rat]) -> Option<(Vec<Rat>, Vec<Rat>)> {
    let n = iota.cols();
    let g = match dbar_prev {
        Some(d) => iota.hstack(&d.neg()),
        None => iota.clone(),
    };
    let x = solve(&g, alpha)?;
    let f = x[..n].to_vec();
    let gamma = x[n..].to_vec();
    Some((gamma, f))
}

/// `ā - ι(a) = s̄ - d̄γ̄` with `s̄ ∈ Ī`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferWitness {
    pub s_bar: Vec<Rat>,
    pub gamma_bar: Vec<Rat>,
}

#[derive(Clone, Debug, Default)]
pub struct EmbeddingReport {
    pub chain_map: bool,
    pub injective: bool,
    pub e_matches: bool,
    pub i_contained: bool,
    /// Per degree: whether `H^k(I) -> H^k(Ī)` is an isomorphism.
    pub lattice_cohomology_iso: Vec<bool>,
    pub failure: Option<String>,
}

impl EmbeddingReport {
    /// `relaxed` drops the injectivity requirement.
    pub fn passes(&self, relaxed: bool) -> bool {
        self.chain_map
            && (relaxed || self.injective)
            && self.e_matches
            && self.i_contained
            && self.lattice_cohomology_iso.iter().all(|&x| x)
    }
}

/// A chain map between two spark complexes, given degreewise.
#[derive(Clone, Debug)]
pub struct SubsparkEmbedding<'a> {
    pub sub: &'a SparkComplex,
    pub ambient: &'a SparkComplex,
    pub maps: Vec<RatMatrix>,
    /// Allow a non-injective chain map.
    pub relaxed: bool,
}

impl<'a> SubsparkEmbedding<'a> {
    pub fn new(sub: &'a SparkComplex, ambient: &'a SparkComplex, maps: Vec<RatMatrix>, relaxed: bool) -> Result<Self> {
        let top = sub.top_degree().min(ambient.top_degree());
        if maps.len() != top + 1 {
            return Err(Error::DimensionMismatch { expected: top + 1, found: maps.len() });
        }
        for (k, m) in maps.iter().enumerate() {
            if m.rows() != ambient.dim(k) || m.cols() != sub.dim(k) {
                return Err(Error::InvalidInput(format!("map in degree {} has the wrong shape", k)));
            }
        }
        Ok(SubsparkEmbedding { sub, ambient, maps, relaxed })
    }

    fn top(&self) -> usize {
        self.maps.len() - 1
    }

    pub fn include(&self, k: usize, a: &[Rat]) -> Vec<Rat> {
        self.maps[k].mul_vec(a)
    }

    /// Matrix of `ι` on lattice coordinates in degree `k`.
    fn lattice_map(&self, k: usize) -> Option<IntMatrix> {
        let rows = self.ambient.i_basis(k).len();
        let gens = self.sub.i_basis(k);
        let mut m = IntMatrix::zeros(rows, gens.len());
        for (j, g) in gens.iter().enumerate() {
            let c = self.ambient.i_coords(k, &self.include(k, g))?;
            for (i, x) in c.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        Some(m)
    }

    fn lattice_iso(&self, k: usize, m: &IntMatrix) -> core::result::Result<(), String> {
        let (Some(h), Some(hb)) = (self.sub.i_cohomology(k), self.ambient.i_cohomology(k)) else {
            return Ok(());
        };
        if h.invariants != hb.invariants {
            return Err(format!("H^{}(I) is {} but the ambient group is {}", k, h.invariants, hb.invariants));
        }
        let mut images: Vec<Vec<Rat>> = Vec::new();
        let reps = h.free_reps.iter().chain(h.torsion_reps.iter().map(|t| &t.cocycle));
        for rep in reps {
            let img = m.to_rat().mul_vec(rep);
            let c = hb.classify(&img).ok_or_else(|| format!("image of a class in degree {} is not closed", k))?;
            images.push(c.iter().map(rat_int).collect());
        }
        let rows = hb.invariants.free_rank + hb.invariants.torsion.len();
        if rows == 0 {
            return Ok(());
        }
        for (i, t) in hb.invariants.torsion.iter().enumerate() {
            let mut rel = vec![Rat::zero(); rows];
            rel[hb.invariants.free_rank + i] = rat_int(t);
            images.push(rel);
        }
        let c = RatMatrix::from_columns(rows, &images).to_int().expect("integer coordinates");
        if AbelianGroupInvariants::cokernel(&c).is_trivial() {
            Ok(())
        } else {
            Err(format!("H^{}(I) -> H^{}(Ī) is not surjective", k, k))
        }
    }

    pub fn verify(&self) -> EmbeddingReport {
        let mut rep = EmbeddingReport { chain_map: true, injective: true, e_matches: true, i_contained: true, ..Default::default() };
        let fail = |rep: &mut EmbeddingReport, msg: String| {
            if rep.failure.is_none() {
                rep.failure = Some(msg);
            }
        };
        for k in 0..=self.top() {
            let m = &self.maps[k];
            if k < self.top() {
                let lhs = self.ambient.f().differential(k).mul_mat(m);
                let rhs = self.maps[k + 1].mul_mat(&self.sub.f().differential(k));
                if lhs != rhs {
                    rep.chain_map = false;
                    fail(&mut rep, format!("not a chain map in degree {}", k));
                }
            }
            if crate::linalg::rank(m) != m.cols() {
                rep.injective = false;
                if !self.relaxed {
                    fail(&mut rep, format!("not injective in degree {}", k));
                }
            }
            let image_e: Vec<Vec<Rat>> = self.sub.e(k).basis().iter().map(|v| m.mul_vec(v)).collect();
            if Subspace::span(m.rows(), &image_e) != self.ambient.e(k) {
                rep.e_matches = false;
                fail(&mut rep, format!("E is not carried onto Ē in degree {}", k));
            }
            match self.lattice_map(k) {
                None => {
                    rep.i_contained = false;
                    fail(&mut rep, format!("I is not carried into Ī in degree {}", k));
                    rep.lattice_cohomology_iso.push(false);
                }
                Some(lm) => match self.lattice_iso(k, &lm) {
                    Ok(()) => rep.lattice_cohomology_iso.push(true),
                    Err(msg) => {
                        rep.lattice_cohomology_iso.push(false);
                        fail(&mut rep, msg);
                    }
                },
            }
        }
        rep
    }

    /// A spark `a` of `F` whose image is equivalent to `ā`.
    pub fn transfer_class(&self, k: usize, a_bar: &[Rat]) -> Result<(Vec<Rat>, TransferWitness)> {
        if k > self.top() {
            return Err(Error::DegreeOutOfRange { degree: k, dim: self.top() });
        }
        let amb = self.ambient;
        let spark = amb.decompose_spark(k, a_bar)?;
        let n = amb.dim(k);
        // r̄ = ι(r) - d̄ s̄ with r ∈ I^{k+1}, s̄ ∈ Ī^k
        let mut s_bar = vec![Rat::zero(); n];
        if k < self.top() && !spark.r.iter().all(Zero::is_zero) {
            let n1 = amb.dim(k + 1);
            let img: Vec<Vec<Rat>> = self.sub.i_basis(k + 1).iter().map(|g| self.include(k + 1, g)).collect();
            let dbar = amb.f().differential(k);
            let mut cols = img;
            cols.extend(amb.i_basis(k).iter().map(|g| dbar.mul_vec(g).into_iter().map(|x| -x).collect()));
            let gt = RatMatrix::from_columns(n1, &cols);
            let (_, t) = mixed_solve(&RatMatrix::zeros(n1, 0), &gt, &spark.r)
                .ok_or_else(|| Error::Inconsistent("divisor does not come from the smaller lattice".into()))?;
            let m = self.sub.i_basis(k + 1).len();
            for (c, g) in t[m..].iter().zip(amb.i_basis(k)) {
                for (s, x) in s_bar.iter_mut().zip(g) {
                    *s += rat_int(c) * x;
                }
            }
        }
        let alpha: Vec<Rat> = a_bar.iter().zip(&s_bar).map(|(a, s)| a - s).collect();
        let dprev = if k == 0 { None } else { Some(amb.f().differential(k - 1)) };
        let (gamma_bar, a) = lemma_solve(&self.maps[k], dprev.as_ref(), &alpha)
            .ok_or_else(|| Error::Inconsistent("spark cannot be moved into the smaller complex".into()))?;
        self.sub.decompose_spark(k, &a)?;
        Ok((a, TransferWitness { s_bar, gamma_bar }))
    }

    /// Given `ι(a) = d̄ b̄ + s̄` in the ambient complex, writes `a = d b + s` in `F`.
    pub fn descend_null(&self, k: usize, a: &[Rat], s_bar: &[Rat]) -> Result<EquivalenceWitness> {
        let amb = self.ambient;
        let n = amb.dim(k);
        // s = ι^{-1}(s̄ + d̄ t̄) with t̄ ∈ Ī^{k-1}
        let img: Vec<Vec<Rat>> = self.sub.i_basis(k).iter().map(|g| self.include(k, g)).collect();
        let mut cols = img;
        if k > 0 {
            let dbar = amb.f().differential(k - 1);
            cols.extend(amb.i_basis(k - 1).iter().map(|g| dbar.mul_vec(g).into_iter().map(|x| -x).collect()));
        }
        let gt = RatMatrix::from_columns(n, &cols);
        let (_, t) = mixed_solve(&RatMatrix::zeros(n, 0), &gt, s_bar)
            .ok_or_else(|| Error::Inconsistent("lattice part does not descend".into()))?;
        let m = self.sub.i_basis(k).len();
        let coeffs: Vec<Rat> = t[..m].iter().map(rat_int).collect();
        let s = self.sub.i_element(k, &coeffs);
        let rest: Vec<Rat> = a.iter().zip(&s).map(|(x, y)| x - y).collect();
        let b = if k == 0 {
            if rest.iter().all(Zero::is_zero) {
                Vec::new()
            } else {
                return Err(Error::Inconsistent("difference is not exact".into()));
            }
        } else {
            solve(&self.sub.f().differential(k - 1), &rest).ok_or_else(|| Error::Inconsistent("difference is not exact".into()))?
        };
        Ok(EquivalenceWitness { b, s })
    }

    /// Whether two sparks of `F` are equivalent, decided in the ambient
    /// complex and descended to `F` with a witness.
    pub fn equivalent_via_ambient(&self, k: usize, a: &[Rat], a2: &[Rat]) -> Result<Option<EquivalenceWitness>> {
        let diff: Vec<Rat> = a.iter().zip(a2).map(|(x, y)| x - y).collect();
        let img = self.include(k, &diff);
        match self.ambient.split_exact_plus_lattice(k, &img) {
            None => Ok(None),
            Some(w) => self.descend_null(k, &diff, &w.s).map(Some),
        }
    }
}
