//! Cochains, cohomology with representatives, Bockstein maps and the Čech
//! total complex of a star cover.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::arith::{int, rat_int, Int, Rat};
use crate::error::{Error, Result};
use crate::linalg::lattice::LatticeQuotient;
use crate::linalg::{integer_kernel, AbelianGroupInvariants, IntMatrix, MixedSubgroup, RatMatrix, Subspace};
use crate::simplicial::{Chain, SimplicialComplex};

mod cech;

pub use cech::{build_cech_total, total_cohomology, CechTotalComplex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Integers,
    Rationals,
}

/// A cochain of a fixed degree. Integer cochains hold integral rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub ring: Ring,
    pub values: Vec<Rat>,
}

impl Cochain {
    pub fn new(degree: usize, ring: Ring, values: Vec<Rat>) -> Result<Self> {
        if ring == Ring::Integers && !values.iter().all(|x| x.is_integer()) {
            return Err(Error::InvalidInput("integer cochain with fractional value".into()));
        }
        Ok(Cochain { degree, ring, values })
    }

    pub fn zero(degree: usize, ring: Ring, len: usize) -> Self {
        Cochain { degree, ring, values: vec![Rat::zero(); len] }
    }

    pub fn indicator(degree: usize, len: usize, index: usize) -> Self {
        let mut c = Self::zero(degree, Ring::Integers, len);
        c.values[index] = Rat::one();
        c
    }

    pub fn is_integral(&self) -> bool {
        self.values.iter().all(|x| x.is_integer())
    }
}

/// Pairing of a cochain with a chain.
pub fn evaluate(values: &[Rat], chain: &Chain) -> Rat {
    chain.terms().fold(Rat::zero(), |acc, (i, x)| acc + &values[i] * rat_int(x))
}

/// A finite cochain complex of rational vector spaces with integral
/// differentials, `d[k] : C^k -> C^{k+1}`.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    dims: Vec<usize>,
    d: Vec<RatMatrix>,
}

impl CochainComplex {
    /// `d` must hold one matrix per degree, `d[k]` of shape `dims[k+1] x dims[k]`
    /// (the last one maps to the zero space).
    pub fn new(dims: Vec<usize>, d: Vec<RatMatrix>) -> Result<Self> {
        if d.len() != dims.len() {
            return Err(Error::DimensionMismatch { expected: dims.len(), found: d.len() });
        }
        for (k, m) in d.iter().enumerate() {
            let target = dims.get(k + 1).copied().unwrap_or(0);
            if m.cols() != dims[k] || m.rows() != target {
                return Err(Error::DimensionMismatch { expected: dims[k], found: m.cols() });
            }
        }
        Ok(CochainComplex { dims, d })
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dim(&self, k: usize) -> usize {
        self.dims.get(k).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `d : C^k -> C^{k+1}`; the zero map outside the stored range.
    pub fn differential(&self, k: usize) -> RatMatrix {
        match self.d.get(k) {
            Some(m) => m.clone(),
            None => RatMatrix::zeros(self.dim(k + 1), self.dim(k)),
        }
    }

    pub fn differential_ref(&self, k: usize) -> Option<&RatMatrix> {
        self.d.get(k)
    }

    pub fn apply(&self, k: usize, x: &[Rat]) -> Vec<Rat> {
        match self.d.get(k) {
            Some(m) => m.mul_vec(x),
            None => vec![Rat::zero(); self.dim(k + 1)],
        }
    }

    pub fn d_squared_is_zero(&self) -> bool {
        (1..self.d.len()).all(|k| self.d[k].mul_mat(&self.d[k - 1]).is_zero())
    }

    /// Image of `d : C^{k-1} -> C^k` as generators (empty for `k = 0`).
    pub fn boundary_generators(&self, k: usize) -> Vec<Vec<Rat>> {
        if k == 0 {
            return Vec::new();
        }
        self.differential(k - 1).columns()
    }

    pub fn cocycle_space(&self, k: usize) -> Subspace {
        Subspace::kernel(&self.differential(k))
    }

    pub fn coboundary_space(&self, k: usize) -> Subspace {
        Subspace::span(self.dim(k), &self.boundary_generators(k))
    }

    pub fn is_cocycle(&self, k: usize, x: &[Rat]) -> bool {
        self.apply(k, x).iter().all(Zero::is_zero)
    }

    fn integral_differential(&self, k: usize) -> Result<IntMatrix> {
        self.differential(k).to_int().ok_or_else(|| Error::Inconsistent(format!("differential in degree {} is not integral", k)))
    }

    /// `H^k` with integer coefficients, with representative cocycles.
    pub fn integer_cohomology(&self, k: usize) -> CohomologyGroup {
        self.integral_differential(k).expect("integral complex");
        let kernel: Vec<Vec<Rat>> = integer_kernel(&self.differential(k))
            .iter()
            .map(|v| v.iter().map(rat_int).collect())
            .collect();
        let quotient = LatticeQuotient::new(kernel, &self.boundary_generators(k)).expect("coboundaries are cocycles");
        CohomologyGroup::from_quotient(k, quotient)
    }

    /// `H^k` with rational coefficients: a basis of cocycles complementary to the coboundaries.
    pub fn rational_cohomology(&self, k: usize) -> CohomologyGroup {
        let z = self.cocycle_space(k);
        let b = self.coboundary_space(k);
        let mut acc = b.clone();
        let mut reps = Vec::new();
        for v in z.basis() {
            if !acc.contains(v) {
                acc = acc.sum(&Subspace::span(self.dim(k), core::slice::from_ref(v)));
                reps.push(v.clone());
            }
        }
        CohomologyGroup {
            degree: k,
            ring: Ring::Rationals,
            invariants: AbelianGroupInvariants { free_rank: reps.len(), torsion: Vec::new() },
            free_reps: reps,
            torsion_reps: Vec::new(),
            coboundaries: b,
            quotient: None,
        }
    }

    /// `H^k(-; Z/n)` presented on integer lifts.
    pub fn mod_n_cohomology(&self, k: usize, n: &Int) -> ModNCohomology {
        let dk = self.differential(k);
        let nk = self.dim(k);
        let target = MixedSubgroup::from_lattice(
            self.dim(k + 1),
            &(0..self.dim(k + 1))
                .map(|i| (0..self.dim(k + 1)).map(|j| if i == j { rat_int(n) } else { Rat::zero() }).collect())
                .collect::<Vec<Vec<Rat>>>(),
        );
        let lifts = target.preimage(&dk).intersection(&MixedSubgroup::integer_lattice(nk));
        let mut sub: Vec<Vec<Rat>> = (0..nk)
            .map(|i| (0..nk).map(|j| if i == j { rat_int(n) } else { Rat::zero() }).collect())
            .collect();
        sub.extend(self.boundary_generators(k));
        let quotient = LatticeQuotient::new(lifts.lattice().to_vec(), &sub).expect("n C + dC lies in the lifts");
        ModNCohomology { degree: k, n: n.clone(), quotient }
    }

    /// Bockstein of a mod-`n` cocycle given by an integer lift `u`:
    /// the class of `d u / n` in `H^{k+1}(Z)`.
    pub fn bockstein(&self, k: usize, u: &[Rat], n: &Int) -> Result<Bockstein> {
        if !u.iter().all(|x| x.is_integer()) {
            return Err(Error::InvalidInput("lift must be integral".into()));
        }
        let nr = rat_int(n);
        let du = self.apply(k, u);
        let cocycle: Vec<Rat> = du.iter().map(|x| x / &nr).collect();
        if !cocycle.iter().all(|x| x.is_integer()) {
            return Err(Error::NotACocycle(format!("not a cocycle mod {}", n)));
        }
        let group = self.integer_cohomology(k + 1);
        let class = group.classify(&cocycle).expect("d u / n is an integral cocycle");
        Ok(Bockstein { cocycle, class, group })
    }
}

#[derive(Clone, Debug)]
pub struct TorsionRepresentative {
    pub cocycle: Vec<Rat>,
    pub order: Int,
    /// Integer cochain `w` with `d w = order * cocycle`.
    pub witness: Vec<Rat>,
}

#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    pub degree: usize,
    pub ring: Ring,
    pub invariants: AbelianGroupInvariants,
    pub free_reps: Vec<Vec<Rat>>,
    pub torsion_reps: Vec<TorsionRepresentative>,
    coboundaries: Subspace,
    quotient: Option<LatticeQuotient>,
}

impl CohomologyGroup {
    fn from_quotient(k: usize, quotient: LatticeQuotient) -> Self {
        let mut free_reps = Vec::new();
        let mut torsion_reps = Vec::new();
        for ((g, o), w) in quotient.generators.iter().zip(&quotient.orders).zip(&quotient.witnesses) {
            match o {
                None => free_reps.push(g.clone()),
                Some(order) => torsion_reps.push(TorsionRepresentative {
                    cocycle: g.clone(),
                    order: order.clone(),
                    witness: w.as_ref().expect("torsion witness").iter().map(rat_int).collect(),
                }),
            }
        }
        let n = quotient.generators.first().map_or(0, Vec::len);
        CohomologyGroup {
            degree: k,
            ring: Ring::Integers,
            invariants: quotient.invariants(),
            free_reps,
            torsion_reps,
            coboundaries: Subspace::zero(n),
            quotient: Some(quotient),
        }
    }

    /// Coordinates of the class of a cocycle: free coordinates followed by
    /// torsion coordinates (reduced), in the order of the representatives.
    pub fn classify(&self, x: &[Rat]) -> Option<Vec<Int>> {
        match &self.quotient {
            Some(q) => {
                let c = q.classify(x)?;
                let mut free = Vec::new();
                let mut tors = Vec::new();
                for (ci, o) in c.into_iter().zip(&q.orders) {
                    if o.is_some() {
                        tors.push(ci);
                    } else {
                        free.push(ci);
                    }
                }
                free.extend(tors);
                Some(free)
            }
            None => {
                let coords = self.rational_coordinates(x)?;
                if coords.iter().all(|c| c.is_integer()) {
                    Some(coords.iter().map(|c| c.to_integer()).collect())
                } else {
                    None
                }
            }
        }
    }

    /// Rational coordinates of a rational cocycle on `free_reps` (rational groups only).
    pub fn rational_coordinates(&self, x: &[Rat]) -> Option<Vec<Rat>> {
        let n = x.len();
        let mut cols = self.free_reps.clone();
        cols.extend(self.coboundaries.basis().iter().cloned());
        if cols.is_empty() {
            return if x.iter().all(Zero::is_zero) { Some(Vec::new()) } else { None };
        }
        let m = RatMatrix::from_columns(n, &cols);
        let s = crate::linalg::solve(&m, x)?;
        Some(s[..self.free_reps.len()].to_vec())
    }

    pub fn is_zero_class(&self, x: &[Rat]) -> Option<bool> {
        Some(self.classify(x)?.iter().all(Zero::is_zero))
    }
}

#[derive(Clone, Debug)]
pub struct ModNCohomology {
    pub degree: usize,
    pub n: Int,
    pub quotient: LatticeQuotient,
}

impl ModNCohomology {
    pub fn invariants(&self) -> AbelianGroupInvariants {
        self.quotient.invariants()
    }

    /// Integer lifts of generators.
    pub fn generators(&self) -> &[Vec<Rat>] {
        &self.quotient.generators
    }

    pub fn classify(&self, u: &[Rat]) -> Option<Vec<Int>> {
        self.quotient.classify(u)
    }
}

#[derive(Clone, Debug)]
pub struct Bockstein {
    pub cocycle: Vec<Rat>,
    pub class: Vec<Int>,
    pub group: CohomologyGroup,
}

impl Bockstein {
    pub fn is_zero(&self) -> bool {
        self.class.iter().all(Zero::is_zero)
    }
}

/// The simplicial cochain complex of `K`; `d_k` is the transpose of `∂_{k+1}`.
pub fn simplicial_cochains(k: &SimplicialComplex) -> CochainComplex {
    let n = k.dim();
    let dims: Vec<usize> = (0..=n).map(|d| k.count(d)).collect();
    let d: Vec<RatMatrix> = (0..=n)
        .map(|d| if d < n { k.boundary_matrix(d + 1).transpose().to_rat() } else { RatMatrix::zeros(0, k.count(n)) })
        .collect();
    CochainComplex::new(dims, d).expect("simplicial cochains")
}

/// `(dc)(σ) = c(∂σ)`.
pub fn coboundary(k: &SimplicialComplex, c: &Cochain) -> Cochain {
    let deg = c.degree;
    let mut out = vec![Rat::zero(); k.count(deg + 1)];
    for (i, slot) in out.iter_mut().enumerate() {
        for (j, &f) in k.faces(deg + 1, i).iter().enumerate() {
            if j % 2 == 0 {
                *slot += &c.values[f];
            } else {
                *slot -= &c.values[f];
            }
        }
    }
    Cochain { degree: deg + 1, ring: c.ring, values: out }
}

pub fn cohomology(k: &SimplicialComplex, degree: usize, ring: Ring) -> CohomologyGroup {
    let cx = simplicial_cochains(k);
    match ring {
        Ring::Integers => cx.integer_cohomology(degree),
        Ring::Rationals => cx.rational_cohomology(degree),
    }
}

pub fn bockstein(k: &SimplicialComplex, degree: usize, u: &[Rat], n: &Int) -> Result<Bockstein> {
    simplicial_cochains(k).bockstein(degree, u, n)
}

/// Checks that `vmap` sends simplices of `source` to simplices of `target`.
pub fn check_simplicial_map(source: &SimplicialComplex, target: &SimplicialComplex, vmap: &[usize]) -> Result<()> {
    if vmap.len() != source.vertex_count() {
        return Err(Error::DimensionMismatch { expected: source.vertex_count(), found: vmap.len() });
    }
    for f in source.facets() {
        let mut img: Vec<usize> = f.iter().map(|&v| vmap[v]).collect();
        img.sort_unstable();
        img.dedup();
        if img.iter().any(|&v| v >= target.vertex_count()) || target.index_of(&img).is_none() {
            return Err(Error::NotSimplicial(format!("facet {:?} maps to {:?}", f, img)));
        }
    }
    Ok(())
}

/// Matrix of `f^* : C^k(target) -> C^k(source)` for a simplicial vertex map.
pub fn pullback_matrix(source: &SimplicialComplex, target: &SimplicialComplex, vmap: &[usize], k: usize) -> RatMatrix {
    let mut m = RatMatrix::zeros(source.count(k), target.count(k));
    for i in 0..source.count(k) {
        let img: Vec<usize> = source.simplex(k, i).iter().map(|&v| vmap[v]).collect();
        if let Some((j, s)) = target.oriented_index(&img) {
            m.set(i, j, Rat::from_integer(int(s as i64)));
        }
    }
    m
}

/// Chain-level push forward `f_* : C_k(source) -> C_k(target)`.
pub fn push_chain(source: &SimplicialComplex, target: &SimplicialComplex, vmap: &[usize], c: &Chain) -> Chain {
    let mut out = Chain::zero(c.degree);
    for (i, x) in c.terms() {
        let img: Vec<usize> = source.simplex(c.degree, i).iter().map(|&v| vmap[v]).collect();
        if let Some((j, s)) = target.oriented_index(&img) {
            out.add_term(j, &(x * int(s as i64)));
        }
    }
    out
}

/// Cycles representing a basis of `H_k(K; Z)`: free generators first, then
/// torsion generators with their orders.
pub fn homology_basis(k: &SimplicialComplex, degree: usize) -> (Vec<Chain>, Vec<(Chain, Int)>) {
    let dk = if degree == 0 { RatMatrix::zeros(0, k.count(0)) } else { k.boundary_matrix(degree).to_rat() };
    let kernel: Vec<Vec<Rat>> = integer_kernel(&dk).iter().map(|v| v.iter().map(rat_int).collect()).collect();
    let images = if degree < k.dim() { k.boundary_matrix(degree + 1).to_rat().columns() } else { Vec::new() };
    let q = LatticeQuotient::new(kernel, &images).expect("boundaries are cycles");
    let to_chain = |g: &Vec<Rat>| Chain::from_terms(degree, g.iter().enumerate().map(|(i, x)| (i, x.to_integer())));
    let mut free = Vec::new();
    let mut tors = Vec::new();
    for (g, o) in q.generators.iter().zip(&q.orders) {
        match o {
            None => free.push(to_chain(g)),
            Some(t) => tors.push((to_chain(g), t.clone())),
        }
    }
    (free, tors)
}

/// Whether a chain is null-homologous over the integers.
pub fn is_boundary(k: &SimplicialComplex, c: &Chain) -> bool {
    if c.degree >= k.dim() {
        return c.is_zero();
    }
    let a = k.boundary_matrix(c.degree + 1);
    let b: Vec<Rat> = c.to_dense(k.count(c.degree)).iter().map(rat_int).collect();
    crate::linalg::hermite_solve(&a, &b).is_feasible()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::fixtures::*;

    #[test]
    fn vertex_indicator_coboundary() {
        let k = circle(3);
        let c = Cochain::indicator(0, 3, 0);
        let d = coboundary(&k, &c);
        // edges [0,1] and [0,2] start at 0
        assert_eq!(d.values, vec![Rat::from_integer(int(-1)), Rat::from_integer(int(-1)), Rat::zero()]);
        let one = Cochain::new(0, Ring::Integers, vec![Rat::one(); 3]).unwrap();
        assert!(coboundary(&k, &one).values.iter().all(Zero::is_zero));
    }

    #[test]
    fn torsion_witness() {
        let g = cohomology(&rp2(), 2, Ring::Integers);
        assert_eq!(g.invariants.torsion, vec![int(2)]);
        let t = &g.torsion_reps[0];
        let cx = simplicial_cochains(&rp2());
        let dw = cx.apply(1, &t.witness);
        let two: Vec<Rat> = t.cocycle.iter().map(|x| x * Rat::from_integer(int(2))).collect();
        assert_eq!(dw, two);
    }
}
