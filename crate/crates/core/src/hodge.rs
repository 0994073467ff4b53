//! Discrete Hodge theory on simplicial cochains, Hodge sparks, the
//! Abel–Jacobi map, flat characters, Poincaré duality and torsion classes.
//!
//! "Harmonic" means harmonic cochain for the chosen inner product. The
//! Hodge spark of a closed integer cochain `R` is `σ(R) = -d* G R`, which
//! satisfies `dσ = H(R) - R`; it is a spark of the cylinder model whose
//! smooth part is the harmonic cochains themselves.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::arith::{frac, rat_int, Int, Rat};
use crate::cochain::{evaluate, homology_basis, simplicial_cochains, CochainComplex};
use crate::error::{Error, Result};
use crate::linalg::rational::inverse;
use crate::linalg::{solve, AbelianGroupInvariants, GroupInvariants, MixedSubgroup, RatMatrix, Subspace};
use crate::models::{cylinder_presentation, SparkModel};
use crate::simplicial::{Chain, SimplicialComplex};
use crate::spark::SparkComplex;

/// Symmetric positive definite mass matrices, one per degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerProduct {
    pub mass: Vec<RatMatrix>,
}

impl InnerProduct {
    /// The combinatorial inner product: simplices are orthonormal.
    pub fn identity(k: &SimplicialComplex) -> Self {
        InnerProduct { mass: (0..=k.dim()).map(|q| RatMatrix::identity(k.count(q))).collect() }
    }

    /// Diagonal weights per degree.
    pub fn diagonal(weights: Vec<Vec<Rat>>) -> Result<Self> {
        let mut mass = Vec::new();
        for w in weights {
            if w.iter().any(|x| *x <= Rat::zero()) {
                return Err(Error::InvalidInput("weights must be positive".into()));
            }
            let mut m = RatMatrix::zeros(w.len(), w.len());
            for (i, x) in w.into_iter().enumerate() {
                m.set(i, i, x);
            }
            mass.push(m);
        }
        Ok(InnerProduct { mass })
    }

    /// Symmetry and positive leading minors.
    pub fn is_valid(&self) -> bool {
        self.mass.iter().all(|m| {
            m.rows() == m.cols()
                && m.transpose() == *m
                && (1..=m.rows()).all(|j| {
                    let idx: Vec<usize> = (0..j).collect();
                    determinant(&m.select_rows(&idx).select_columns(&idx)) > Rat::zero()
                })
        })
    }

    fn check(&self, k: &SimplicialComplex) -> Result<()> {
        if self.mass.len() != k.dim() + 1 || (0..=k.dim()).any(|q| self.mass[q].rows() != k.count(q)) {
            return Err(Error::InvalidInput("inner product does not match the complex".into()));
        }
        if !self.is_valid() {
            return Err(Error::InvalidInput("mass matrices must be symmetric positive definite".into()));
        }
        Ok(())
    }
}

fn determinant(m: &RatMatrix) -> Rat {
    let n = m.rows();
    let mut a: Vec<Vec<Rat>> = (0..n).map(|i| (0..n).map(|j| m.get(i, j).clone()).collect()).collect();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else { return Rat::zero() };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        for r in c + 1..n {
            let f = &a[r][c] / &a[c][c];
            for j in c..n {
                let t = &f * &a[c][j];
                a[r][j] -= t;
            }
        }
    }
    det
}

/// Per degree: harmonic basis, Green's operator, adjoint differential and
/// harmonic projection.
#[derive(Clone, Debug)]
pub struct HodgeDecomposition {
    pub degree: usize,
    pub harmonic: Vec<Vec<Rat>>,
    pub laplacian: RatMatrix,
    pub green: RatMatrix,
    pub projection: RatMatrix,
    /// `d*_{k-1} : C^k -> C^{k-1}`.
    pub adjoint_down: RatMatrix,
    /// `d*_k : C^{k+1} -> C^k`.
    pub adjoint_up: RatMatrix,
}

impl HodgeDecomposition {
    /// `ΔG = GΔ = I - H`, `H² = H` and `GH = 0`.
    pub fn verify(&self) -> bool {
        let n = self.laplacian.rows();
        let ih = RatMatrix::identity(n).sub_mat(&self.projection);
        self.laplacian.mul_mat(&self.green) == ih
            && self.green.mul_mat(&self.laplacian) == ih
            && self.projection.mul_mat(&self.projection) == self.projection
            && self.green.mul_mat(&self.projection).is_zero()
    }

    pub fn project(&self, x: &[Rat]) -> Vec<Rat> {
        self.projection.mul_vec(x)
    }
}

/// `d*_k = M_k^{-1} d_kᵀ M_{k+1}`.
fn adjoint(c: &CochainComplex, ip: &InnerProduct, k: usize) -> RatMatrix {
    let d = c.differential(k);
    let lower = inverse(&ip.mass[k]).expect("positive definite");
    let upper = ip.mass.get(k + 1).cloned().unwrap_or_else(|| RatMatrix::identity(d.rows()));
    lower.mul_mat(&d.transpose()).mul_mat(&upper)
}

pub fn hodge_decompose(k: &SimplicialComplex, ip: &InnerProduct, degree: usize) -> Result<HodgeDecomposition> {
    ip.check(k)?;
    if degree > k.dim() {
        return Err(Error::DegreeOutOfRange { degree, dim: k.dim() });
    }
    let c = simplicial_cochains(k);
    let n = k.count(degree);
    let adjoint_up = adjoint(&c, ip, degree);
    let adjoint_down = if degree == 0 { RatMatrix::zeros(0, n) } else { adjoint(&c, ip, degree - 1) };
    let d_up = c.differential(degree);
    let d_down = if degree == 0 { RatMatrix::zeros(n, 0) } else { c.differential(degree - 1) };
    let laplacian = d_down.mul_mat(&adjoint_down).add_mat(&adjoint_up.mul_mat(&d_up));
    let harmonic = Subspace::kernel(&laplacian).basis().to_vec();
    // Δ is invertible on im d ⊕ im d*, the orthogonal complement of the harmonics
    let mut rest: Vec<Vec<Rat>> = d_down.columns();
    rest.extend(adjoint_up.columns());
    let rest = Subspace::span(n, &rest).basis().to_vec();
    let mut cols = harmonic.clone();
    cols.extend(rest.iter().cloned());
    if cols.len() != n {
        return Err(Error::Inconsistent("harmonic and non-harmonic parts do not span".into()));
    }
    let q = RatMatrix::from_columns(n, &cols);
    let q_inv = inverse(&q).ok_or_else(|| Error::Inconsistent("degenerate Hodge basis".into()))?;
    let h = harmonic.len();
    // Δ preserves the complement, so conjugating by the basis makes it block diagonal
    let blocks = q_inv.mul_mat(&laplacian).mul_mat(&q);
    let idx: Vec<usize> = (h..n).collect();
    let sub = blocks.select_rows(&idx).select_columns(&idx);
    let sub_inv = inverse(&sub).ok_or_else(|| Error::Inconsistent("Laplacian is singular off the harmonics".into()))?;
    let mut g_block = RatMatrix::zeros(n, n);
    let mut p_block = RatMatrix::zeros(n, n);
    for i in 0..h {
        p_block.set(i, i, Rat::one());
    }
    for i in 0..n - h {
        for j in 0..n - h {
            g_block.set(h + i, h + j, sub_inv.get(i, j).clone());
        }
    }
    let green = q.mul_mat(&g_block).mul_mat(&q_inv);
    let projection = q.mul_mat(&p_block).mul_mat(&q_inv);
    Ok(HodgeDecomposition { degree, harmonic, laplacian, green, projection, adjoint_down, adjoint_up })
}

/// All degrees at once.
#[derive(Clone, Debug)]
pub struct Hodge {
    pub complex: SimplicialComplex,
    pub ip: InnerProduct,
    pub degrees: Vec<HodgeDecomposition>,
}

impl Hodge {
    pub fn new(k: &SimplicialComplex, ip: InnerProduct) -> Result<Self> {
        let degrees = (0..=k.dim()).map(|q| hodge_decompose(k, &ip, q)).collect::<Result<Vec<_>>>()?;
        Ok(Hodge { complex: k.clone(), ip, degrees })
    }

    pub fn identity(k: &SimplicialComplex) -> Result<Self> {
        Self::new(k, InnerProduct::identity(k))
    }

    pub fn degree(&self, q: usize) -> Result<&HodgeDecomposition> {
        self.degrees.get(q).ok_or(Error::DegreeOutOfRange { degree: q, dim: self.complex.dim() })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeSpark {
    pub degree: usize,
    pub sigma: Vec<Rat>,
    /// `H(R)`.
    pub harmonic: Vec<Rat>,
    /// Coordinates of `H(R)` on the harmonic basis.
    pub curvature: Vec<Rat>,
}

/// `σ(R) = -d* G R` for a closed integer cochain `R` of degree `k + 1`.
pub fn hodge_spark(hodge: &Hodge, k: usize, r: &[Rat]) -> Result<HodgeSpark> {
    let c = simplicial_cochains(&hodge.complex);
    if k + 1 > hodge.complex.dim() || r.len() != hodge.complex.count(k + 1) {
        return Err(Error::InvalidInput("R has the wrong degree".into()));
    }
    if !r.iter().all(|x| x.is_integer()) {
        return Err(Error::InvalidInput("R must be an integer cochain".into()));
    }
    if !c.apply(k + 1, r).iter().all(Zero::is_zero) {
        return Err(Error::NotACocycle("R is not closed".into()));
    }
    let up = hodge.degree(k + 1)?;
    let gr = up.green.mul_vec(r);
    let sigma: Vec<Rat> = hodge.degree(k)?.adjoint_up.mul_vec(&gr).into_iter().map(|x| -x).collect();
    let harmonic = up.project(r);
    let basis = RatMatrix::from_columns(r.len(), &up.harmonic);
    let curvature = if up.harmonic.is_empty() { Vec::new() } else { solve(&basis, &harmonic).expect("harmonic") };
    let out = HodgeSpark { degree: k, sigma, harmonic, curvature };
    if !verify_spark_equation(&c, &out, r) {
        return Err(Error::Inconsistent("dσ ≠ H(R) - R".into()));
    }
    Ok(out)
}

/// `dσ = H(R) - R`.
pub fn verify_spark_equation(c: &CochainComplex, s: &HodgeSpark, r: &[Rat]) -> bool {
    let ds = c.apply(s.degree, &s.sigma);
    ds.iter().zip(&s.harmonic).zip(r).all(|((a, h), x)| *a == h - x)
}

/// The cylinder model whose smooth part is the harmonic cochains (zero
/// differential) and whose integral part is the integer cochains.
pub fn hodge_model(hodge: &Hodge) -> Result<SparkComplex> {
    let n = hodge.complex.dim();
    let dims: Vec<usize> = (0..=n).map(|q| hodge.degrees[q].harmonic.len()).collect();
    let w = CochainComplex::new(dims.clone(), (0..=n).map(|q| RatMatrix::zeros(if q < n { dims[q + 1] } else { 0 }, dims[q])).collect())?;
    let c = simplicial_cochains(&hodge.complex);
    let rho: Vec<RatMatrix> = (0..=n).map(|q| RatMatrix::from_columns(hodge.complex.count(q), &hodge.degrees[q].harmonic)).collect();
    let lattice: Vec<Vec<Vec<Rat>>> = (0..=n).map(|q| RatMatrix::identity(hodge.complex.count(q)).columns()).collect();
    cylinder_presentation("hodge", &w, &c, &rho, &lattice)
}

/// The Hodge spark as an element of the Hodge model: `(H(R), 0, σ)`.
pub fn hodge_model_spark(model: &SparkComplex, hodge: &Hodge, s: &HodgeSpark) -> Result<Vec<Rat>> {
    let k = s.degree;
    let mut x = s.curvature.clone();
    if k > 0 {
        x.extend(vec![Rat::zero(); hodge.degrees[k].harmonic.len()]);
    }
    x.extend(s.sigma.iter().cloned());
    if x.len() != model.dim(k) {
        return Err(Error::DimensionMismatch { expected: model.dim(k), found: x.len() });
    }
    model.decompose_spark(k, &x)?;
    Ok(x)
}

/// Whether `H(R)` is the Whitney restriction of a base form, i.e. whether
/// `σ(R)` is a spark of the CS model on the same subdivision.
pub fn curvature_in_whitney_image(model: &SparkModel, s: &HodgeSpark) -> Option<Vec<Rat>> {
    let rho = model.rho(s.degree + 1);
    if rho.rows() != s.harmonic.len() {
        return None;
    }
    solve(&rho, &s.harmonic)
}

/// A point of `Har^k / Har^k_0`, in period coordinates on the free homology basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobianElement {
    pub degree: usize,
    pub harmonic: Vec<Rat>,
    /// Periods mod 1 on the free homology generators.
    pub periods: Vec<Rat>,
}

impl JacobianElement {
    pub fn is_zero(&self) -> bool {
        self.periods.iter().all(Zero::is_zero)
    }
}

fn free_cycles(k: &SimplicialComplex, q: usize) -> Vec<Chain> {
    homology_basis(k, q).0
}

/// `R = dΓ ↦ [H(Γ)]`.
pub fn abel_jacobi(hodge: &Hodge, degree: usize, gamma: &[Rat]) -> Result<JacobianElement> {
    let dec = hodge.degree(degree)?;
    if gamma.len() != hodge.complex.count(degree) {
        return Err(Error::DimensionMismatch { expected: hodge.complex.count(degree), found: gamma.len() });
    }
    let harmonic = dec.project(gamma);
    let periods = free_cycles(&hodge.complex, degree).iter().map(|z| frac(&evaluate(&harmonic, z))).collect();
    Ok(JacobianElement { degree, harmonic, periods })
}

/// `R = dΓ` is linearly equivalent to zero iff `⟨Γ, θ⟩ ∈ Z` for every
/// harmonic `θ` in the lattice dual to the integral-period harmonics. With
/// the given inner product that lattice is spanned by the harmonic parts of
/// the free homology generators, read as cochains through the mass matrix.
pub fn linear_equivalence_zero(hodge: &Hodge, degree: usize, r: &[Rat], gamma: &[Rat]) -> Result<bool> {
    let c = simplicial_cochains(&hodge.complex);
    if c.apply(degree, gamma) != r {
        return Err(Error::InvalidInput("R is not dΓ".into()));
    }
    let dec = hodge.degree(degree)?;
    let m = &hodge.ip.mass[degree];
    let n = hodge.complex.count(degree);
    let m_inv = inverse(m).expect("positive definite");
    for z in free_cycles(&hodge.complex, degree) {
        let zc: Vec<Rat> = z.to_dense(n).iter().map(rat_int).collect();
        // the cochain representing evaluation on z
        let theta = dec.project(&m_inv.mul_vec(&zc));
        let pairing: Rat = m.mul_vec(&theta).iter().zip(gamma).map(|(a, b)| a * b).sum();
        if !pairing.is_integer() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A flat class with its holonomy on the homology basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatElement {
    /// A cochain `h` with `dh` integral.
    pub cochain: Vec<Rat>,
    /// Free generators first, then torsion generators.
    pub holonomy: Vec<Rat>,
}

#[derive(Clone, Debug)]
pub struct FlatGroup {
    pub degree: usize,
    /// `{h : dh ∈ Z} / (dC + Z)`.
    pub invariants: GroupInvariants,
    pub free_cycles: Vec<Chain>,
    pub torsion_cycles: Vec<(Chain, Int)>,
    /// Duals of the free generators (holonomy `e_j`).
    pub torus_generators: Vec<FlatElement>,
    /// `-w/n` for each torsion class `r` of `H^{k+1}` with `n r = dw`.
    pub torsion_generators: Vec<FlatElement>,
}

impl FlatGroup {
    pub fn holonomy(&self, h: &[Rat]) -> Vec<Rat> {
        self.free_cycles.iter().chain(self.torsion_cycles.iter().map(|(z, _)| z)).map(|z| frac(&evaluate(h, z))).collect()
    }

    /// The element with the given holonomy on the free generators.
    pub fn torus_element(&self, coords: &[Rat]) -> Result<FlatElement> {
        if coords.len() != self.torus_generators.len() {
            return Err(Error::DimensionMismatch { expected: self.torus_generators.len(), found: coords.len() });
        }
        let n = self.torus_generators.first().map_or(0, |g| g.cochain.len());
        let mut h = vec![Rat::zero(); n];
        for (c, g) in coords.iter().zip(&self.torus_generators) {
            for (x, y) in h.iter_mut().zip(&g.cochain) {
                *x += c * y;
            }
        }
        Ok(FlatElement { holonomy: self.holonomy(&h), cochain: h })
    }
}

pub fn flat_group(k: &SimplicialComplex, degree: usize) -> Result<FlatGroup> {
    if degree > k.dim() {
        return Err(Error::DegreeOutOfRange { degree, dim: k.dim() });
    }
    let c = simplicial_cochains(k);
    let n = k.count(degree);
    let d = c.differential(degree);
    let top = MixedSubgroup::integer_lattice(d.rows()).preimage(&d);
    let bottom = MixedSubgroup::from_subspace(c.coboundary_space(degree)).sum(&MixedSubgroup::integer_lattice(n));
    let invariants = top.quotient(&bottom).ok_or_else(|| Error::Inconsistent("flat group relations".into()))?;
    let (free, tors) = homology_basis(k, degree);
    let mut group = FlatGroup { degree, invariants, free_cycles: free, torsion_cycles: tors, torus_generators: Vec::new(), torsion_generators: Vec::new() };

    let reps = c.rational_cohomology(degree).free_reps;
    let nf = group.free_cycles.len();
    if nf > 0 {
        let cols: Vec<Vec<Rat>> = reps.iter().map(|r| group.free_cycles.iter().map(|z| evaluate(r, z)).collect()).collect();
        let m = RatMatrix::from_columns(nf, &cols);
        for j in 0..nf {
            let mut e = vec![Rat::zero(); nf];
            e[j] = Rat::one();
            let coeffs = solve(&m, &e).ok_or_else(|| Error::Inconsistent("periods are degenerate".into()))?;
            let mut h = vec![Rat::zero(); n];
            for (a, r) in coeffs.iter().zip(&reps) {
                for (x, y) in h.iter_mut().zip(r) {
                    *x += a * y;
                }
            }
            group.torus_generators.push(FlatElement { holonomy: group.holonomy(&h), cochain: h });
        }
    }
    if degree < k.dim() {
        for t in c.integer_cohomology(degree + 1).torsion_reps {
            let nr = rat_int(&t.order);
            let h: Vec<Rat> = t.witness.iter().map(|w| -w / &nr).collect();
            group.torsion_generators.push(FlatElement { holonomy: group.holonomy(&h), cochain: h });
        }
    }
    Ok(group)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityVerdict {
    pub degree: usize,
    pub flat: GroupInvariants,
    pub dual: AbelianGroupInvariants,
    pub holds: bool,
}

/// `H^k(X; S¹) ≅ Hom(H^{n-k}(X; Z), S¹)`: compares torus dimension with the
/// free rank and the torsion of both sides.
pub fn poincare_duality_check(k: &SimplicialComplex, degree: usize) -> Result<DualityVerdict> {
    if !k.is_closed_pseudomanifold() || !k.is_orientable() {
        return Err(Error::InvalidComplex("not a closed orientable manifold".into()));
    }
    let n = k.dim();
    if degree > n {
        return Err(Error::DegreeOutOfRange { degree, dim: n });
    }
    let flat = flat_group(k, degree)?.invariants;
    let dual = simplicial_cochains(k).integer_cohomology(n - degree).invariants;
    let holds = flat.torus_dim == dual.free_rank && flat.free_rank == 0 && flat.torsion == dual.torsion;
    Ok(DualityVerdict { degree, flat, dual, holds })
}

/// Curvature, divisor class and (when flat) holonomy on the homology basis
/// of the fine complex, for a spark of the CS model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterInvariants {
    pub curvature: Vec<Rat>,
    pub divisor_class: Vec<Int>,
    pub flat: bool,
    pub holonomy: Option<Vec<Rat>>,
}

fn reduced_class(group: &crate::cochain::CohomologyGroup, x: &[Rat]) -> Result<Vec<Int>> {
    let mut c = group.classify(x).ok_or_else(|| Error::NotACocycle("divisor is not closed".into()))?;
    let f = group.invariants.free_rank;
    for (i, t) in group.invariants.torsion.iter().enumerate() {
        c[f + i] = ((&c[f + i] % t) + t) % t;
    }
    Ok(c)
}

pub fn character_invariants(model: &SparkModel, k: usize, x: &[Rat]) -> Result<CharacterInvariants> {
    let curvature = model.curvature(k, x)?;
    let r = model.divisor(k, x)?;
    let c = model.cochains();
    let divisor_class = reduced_class(&c.integer_cohomology(k + 1), &r)?;
    let flat = curvature.iter().all(Zero::is_zero);
    let holonomy = if flat && model.kind == crate::models::ModelKind::CheegerSimons {
        let (_, h) = model.normal_form(k, x)?;
        let (free, tors) = homology_basis(model.fine(), k);
        Some(free.iter().chain(tors.iter().map(|(z, _)| z)).map(|z| frac(&evaluate(&h, z))).collect())
    } else {
        None
    };
    Ok(CharacterInvariants { curvature, divisor_class, flat, holonomy })
}

#[derive(Clone, Debug)]
pub struct TorsionAnalysis {
    pub n: Int,
    /// Integer lift of `u ∈ H^k(X; Z_n)` whose image under `1/n` is the class.
    pub u: Vec<Rat>,
    pub u_class: Vec<Int>,
    pub bockstein: Vec<Int>,
    pub divisor: Vec<Int>,
    /// `β(u) = -δ2(c)` in `H^{k+1}(X; Z)`, the sign coming from `da = φ - r`.
    pub holds: bool,
}

/// For a class `c` of the CS model with `n c = 0`: writes `n h = s + db`,
/// sets `u = s mod n` and compares `β(u)` with the divisor class.
pub fn torsion_analysis(model: &SparkModel, k: usize, x: &[Rat], n: &Int) -> Result<TorsionAnalysis> {
    if model.kind != crate::models::ModelKind::CheegerSimons {
        return Err(Error::InvalidInput("torsion analysis runs on the CS model".into()));
    }
    if *n <= Int::zero() {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    let nr = rat_int(n);
    let p = &model.presentation;
    let nx: Vec<Rat> = x.iter().map(|v| v * &nr).collect();
    let zero = vec![Rat::zero(); x.len()];
    if p.equivalent(k, &nx, &zero)?.is_none() {
        return Err(Error::InvalidInput(format!("class is not {}-torsion", n)));
    }
    if !model.curvature(k, x)?.iter().all(Zero::is_zero) {
        return Err(Error::Inconsistent("torsion class with nonzero curvature".into()));
    }
    let (_, h) = model.normal_form(k, x)?;
    let c = model.cochains();
    let nh: Vec<Rat> = h.iter().map(|v| v * &nr).collect();
    // n h = s + d b with s integral
    let s = split_integral(c, k, &nh)?;
    let u: Vec<Rat> = s.iter().map(|v| rat_int(&(((v.to_integer() % n) + n) % n))).collect();
    let beta = c.bockstein(k, &u, n)?;
    let group = &beta.group;
    let bockstein = reduced_class(group, &beta.cocycle)?;
    let divisor = reduced_class(group, &model.divisor(k, x)?)?;
    let neg_div = reduced_class(group, &model.divisor(k, x)?.iter().map(|v| -v).collect::<Vec<_>>())?;
    let u_class = c.mod_n_cohomology(k, n).classify(&u).ok_or_else(|| Error::Inconsistent("u is not a mod-n cocycle".into()))?;
    Ok(TorsionAnalysis { n: n.clone(), u, u_class, holds: bockstein == neg_div, bockstein, divisor })
}

fn split_integral(c: &CochainComplex, k: usize, v: &[Rat]) -> Result<Vec<Rat>> {
    let n = v.len();
    let space = if k == 0 { Subspace::zero(n) } else { c.coboundary_space(k) };
    let g = MixedSubgroup::with_space(space, &RatMatrix::identity(n).columns());
    let (_, t) = g.decompose(v).ok_or_else(|| Error::Inconsistent("n h is not integral modulo coboundaries".into()))?;
    let mut s = vec![Rat::zero(); n];
    for (c, l) in t.iter().zip(g.lattice()) {
        for (x, y) in s.iter_mut().zip(l) {
            *x += rat_int(c) * y;
        }
    }
    Ok(s)
}
