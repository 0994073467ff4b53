//! Concrete spark complexes over a simplicial complex `K`.
//!
//! Each model is the mapping cylinder of a chain map `ρ : W -> C` from the
//! Whitney forms of `K` (one coefficient per base simplex) into a cochain
//! model `C` of `K`:
//!
//! `F^k = W^{k+1} ⊕ W^k ⊕ C^k`, `D(t, a, b) = (-dt, t + da, -ρt + db)`,
//!
//! with `E` the middle slot and `I` a lattice in the `C` slot. In degree 0
//! the cylinder is divided by the image of `W^0` placed in degree `-1`,
//! which leaves `F^0 = W^1 ⊕ C^0` and `E^0 = {(da, ρa)}`. A spark
//! `(t, a, b)` is equivalent to `(φ, 0, b + ρa)` where `φ` is its curvature,
//! so a class is a pair `(φ, h)` with `dh = ρφ - r`, `r` integral.
//!
//! * Cheeger–Simons: `C` = cochains on `Sd^m K`, `I` = integer cochains.
//! * Smooth hyperspark: `C` = Čech total complex of the star cover with
//!   rational coefficients, `I` = integer constants `C^p(U, Z)` in the `q = 0` row.
//! * Cochain hyperspark: same `C`, `I` = all integer Čech cochains.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::arith::Rat;
use crate::cochain::{check_simplicial_map, pullback_matrix, simplicial_cochains, CechTotalComplex, CochainComplex, Ring};
use crate::error::{Error, Result};
use crate::linalg::{RatMatrix, Subspace};
use crate::simplicial::{SimplicialComplex, StarCover, Subdivision};
use crate::spark::{AxiomReport, Spark, SparkComplex, SubsparkEmbedding, TransferWitness};
use crate::whitney::whitney_matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    CheegerSimons,
    SmoothHyperspark,
    CochainHyperspark,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::CheegerSimons => "cs",
            ModelKind::SmoothHyperspark => "smooth-hyperspark",
            ModelKind::CochainHyperspark => "cochain-hyperspark",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "cs" => Some(ModelKind::CheegerSimons),
            "smooth-hyperspark" | "smooth" => Some(ModelKind::SmoothHyperspark),
            "cochain-hyperspark" | "cochain" => Some(ModelKind::CochainHyperspark),
            _ => None,
        }
    }
}

/// A certified spark complex together with the cylinder data it was built from.
#[derive(Clone, Debug)]
pub struct SparkModel {
    pub kind: ModelKind,
    pub base: SimplicialComplex,
    pub depth: usize,
    pub subdivision: Subdivision,
    /// Present for the two hyperspark models.
    pub cech: Option<CechTotalComplex>,
    pub presentation: SparkComplex,
    pub axioms: AxiomReport,
    w: CochainComplex,
    c: CochainComplex,
    rho: Vec<RatMatrix>,
}

/// Components of an element of `F^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylinderParts {
    pub t: Vec<Rat>,
    pub a: Vec<Rat>,
    pub b: Vec<Rat>,
}

fn place(m: &mut RatMatrix, r0: usize, c0: usize, block: &RatMatrix, sign: i64) {
    let s = Rat::from_integer(sign.into());
    for i in 0..block.rows() {
        for j in 0..block.cols() {
            let v = block.get(i, j);
            if !v.is_zero() {
                m.set(r0 + i, c0 + j, v * &s);
            }
        }
    }
}

/// The cylinder complex of `ρ : W -> C` with `E` in the middle slot and the
/// given lattice generators (vectors in `C^k`) in the last slot.
pub fn cylinder_presentation(name: &str, w: &CochainComplex, c: &CochainComplex, rho: &[RatMatrix], lattice: &[Vec<Vec<Rat>>]) -> Result<SparkComplex> {
    let top = w.top_degree().max(c.top_degree());
    for (q, r) in rho.iter().enumerate() {
        if r.rows() != c.dim(q) || r.cols() != w.dim(q) {
            return Err(Error::DimensionMismatch { expected: c.dim(q), found: r.rows() });
        }
    }
    let rho_at = |q: usize| rho.get(q).cloned().unwrap_or_else(|| RatMatrix::zeros(c.dim(q), w.dim(q)));
    let aw = |k: usize| if k == 0 { 0 } else { w.dim(k) };
    let dim = |k: usize| w.dim(k + 1) + aw(k) + c.dim(k);
    let dims: Vec<usize> = (0..=top).map(dim).collect();
    let mut d = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let rows = if k < top { dim(k + 1) } else { 0 };
        let mut m = RatMatrix::zeros(rows, dims[k]);
        if k < top {
            let (t0, a0, b0) = (0, w.dim(k + 1), w.dim(k + 1) + aw(k));
            let (t1, a1, b1) = (0, w.dim(k + 2), w.dim(k + 2) + aw(k + 1));
            place(&mut m, t1, t0, &w.differential(k + 1), -1);
            place(&mut m, a1, t0, &RatMatrix::identity(w.dim(k + 1)), 1);
            if k > 0 {
                place(&mut m, a1, a0, &w.differential(k), 1);
            }
            place(&mut m, b1, t0, &rho_at(k + 1), -1);
            place(&mut m, b1, b0, &c.differential(k), 1);
        }
        d.push(m);
    }
    let f = CochainComplex::new(dims.clone(), d)?;
    let (d0, rho0) = (w.differential(0), rho_at(0));
    let e: Vec<Vec<Vec<Rat>>> = (0..=top)
        .map(|k| {
            (0..w.dim(k))
                .map(|j| {
                    let mut v = vec![Rat::zero(); dims[k]];
                    if k == 0 {
                        for (i, x) in d0.column(j).into_iter().enumerate() {
                            v[i] = x;
                        }
                        for (i, x) in rho0.column(j).into_iter().enumerate() {
                            v[w.dim(1) + i] = x;
                        }
                    } else {
                        v[w.dim(k + 1) + j] = Rat::one();
                    }
                    v
                })
                .collect()
        })
        .collect();
    let i: Vec<Vec<Vec<Rat>>> = (0..=top)
        .map(|k| {
            let off = w.dim(k + 1) + aw(k);
            lattice
                .get(k)
                .map(|gens| {
                    gens.iter()
                        .map(|g| {
                            let mut v = vec![Rat::zero(); dims[k]];
                            v[off..].clone_from_slice(g);
                            v
                        })
                        .collect()
                })
                .unwrap_or_default()
        })
        .collect();
    SparkComplex::new(name, f, &e, &i)
}

fn unit_lattice(n: usize) -> Vec<Vec<Rat>> {
    RatMatrix::identity(n).columns()
}

fn certify(mut model: SparkModel) -> Result<SparkModel> {
    model.axioms = model.presentation.verify_axioms();
    if !model.axioms.passes() {
        let detail = match (&model.axioms.axiom_a_witness, &model.axioms.axiom_b_witness) {
            (Some((k, _)), _) => format!("axiom (A) fails in degree {}", k),
            (_, Some((k, _))) => format!("axiom (B) fails in degree {}", k),
            _ => String::from("subcomplex or degree-0 condition fails"),
        };
        return Err(Error::AxiomFailure(format!("{}: {}", model.kind.name(), detail)));
    }
    Ok(model)
}

/// Cochains on `Sd^m K` with `E` the Whitney image and `I` the integer
/// cochains, without the cylinder. This presentation fails (B); it is kept
/// to exhibit the failure.
pub fn literal_cs_presentation(k: &SimplicialComplex, m: usize) -> Result<SparkComplex> {
    let sub = Subdivision::new(k, m);
    let c = simplicial_cochains(&sub.complex);
    let top = c.top_degree();
    let e: Vec<Vec<Vec<Rat>>> = (0..=top).map(|q| Subspace::column_space(&whitney_matrix(&sub, q)).basis().to_vec()).collect();
    let i: Vec<Vec<Vec<Rat>>> = (0..=top).map(|q| unit_lattice(c.dim(q))).collect();
    SparkComplex::new("literal-cs", c, &e, &i)
}

/// The first failure of (B) for the literal presentation at depth `m`.
pub fn literal_axiom_b_witness(k: &SimplicialComplex, m: usize) -> Result<Option<(usize, Vec<Rat>)>> {
    Ok(literal_cs_presentation(k, m)?.verify_axioms().axiom_b_witness)
}

fn whitney_data(k: &SimplicialComplex, sub: &Subdivision) -> (CochainComplex, Vec<RatMatrix>) {
    let w = simplicial_cochains(k);
    let rho = (0..=k.dim()).map(|q| whitney_matrix(sub, q)).collect();
    (w, rho)
}

/// The Cheeger–Simons model at depth `m >= 1`.
pub fn build_cs_model(k: &SimplicialComplex, m: usize) -> Result<SparkModel> {
    if m == 0 {
        let witness = literal_axiom_b_witness(k, 0)?;
        return Err(Error::AxiomFailure(match witness {
            Some((q, v)) => format!("depth 0: a nonzero integer cochain of degree {} lies in the Whitney image: [{}]", q, v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")),
            None => String::from("depth 0 is not supported"),
        }));
    }
    let sub = Subdivision::new(k, m);
    let (w, rho) = whitney_data(k, &sub);
    let c = simplicial_cochains(&sub.complex);
    let lattice: Vec<Vec<Vec<Rat>>> = (0..=c.top_degree()).map(|q| unit_lattice(c.dim(q))).collect();
    let presentation = cylinder_presentation("cs", &w, &c, &rho, &lattice)?;
    certify(SparkModel {
        kind: ModelKind::CheegerSimons,
        base: k.clone(),
        depth: m,
        subdivision: sub,
        cech: None,
        presentation,
        axioms: AxiomReport::default(),
        w,
        c,
        rho,
    })
}

fn build_hyperspark(k: &SimplicialComplex, m: usize, kind: ModelKind) -> Result<SparkModel> {
    let cover = StarCover::new(k, m)?;
    let sub = cover.subdivision.clone();
    let ring = if kind == ModelKind::CochainHyperspark { Ring::Integers } else { Ring::Rationals };
    let tot = CechTotalComplex::new(cover, ring);
    let (w, refine) = whitney_data(k, &sub);
    let rho: Vec<RatMatrix> = refine.iter().enumerate().map(|(q, r)| tot.restriction_matrix(q).mul_mat(r)).collect();
    let c = tot.complex().clone();
    let lattice: Vec<Vec<Vec<Rat>>> = (0..=c.top_degree())
        .map(|q| match kind {
            ModelKind::CochainHyperspark => unit_lattice(c.dim(q)),
            _ if q <= k.dim() => tot.constants_matrix(q).columns(),
            _ => Vec::new(),
        })
        .collect();
    let presentation = cylinder_presentation(kind.name(), &w, &c, &rho, &lattice)?;
    certify(SparkModel { kind, base: k.clone(), depth: m, subdivision: sub, cech: Some(tot), presentation, axioms: AxiomReport::default(), w, c, rho })
}

pub fn build_smooth_hyperspark_model(k: &SimplicialComplex, m: usize) -> Result<SparkModel> {
    build_hyperspark(k, m, ModelKind::SmoothHyperspark)
}

pub fn build_cochain_hyperspark_model(k: &SimplicialComplex, m: usize) -> Result<SparkModel> {
    build_hyperspark(k, m, ModelKind::CochainHyperspark)
}

pub fn build_model(kind: ModelKind, k: &SimplicialComplex, m: usize) -> Result<SparkModel> {
    match kind {
        ModelKind::CheegerSimons => build_cs_model(k, m),
        ModelKind::SmoothHyperspark => build_smooth_hyperspark_model(k, m),
        ModelKind::CochainHyperspark => build_cochain_hyperspark_model(k, m),
    }
}

impl SparkModel {
    pub fn name(&self) -> &'static str {
        self.kind.name()
    }

    pub fn whitney(&self) -> &CochainComplex {
        &self.w
    }

    /// The cochain model `C` in the last slot.
    pub fn cochains(&self) -> &CochainComplex {
        &self.c
    }

    pub fn rho(&self, q: usize) -> RatMatrix {
        self.rho.get(q).cloned().unwrap_or_else(|| RatMatrix::zeros(self.c.dim(q), self.w.dim(q)))
    }

    pub fn fine(&self) -> &SimplicialComplex {
        &self.subdivision.complex
    }

    /// Size of the middle slot (empty in degree 0).
    fn middle(&self, k: usize) -> usize {
        if k == 0 {
            0
        } else {
            self.w.dim(k)
        }
    }

    pub fn split(&self, k: usize, x: &[Rat]) -> CylinderParts {
        let (nt, na) = (self.w.dim(k + 1), self.middle(k));
        CylinderParts { t: x[..nt].to_vec(), a: x[nt..nt + na].to_vec(), b: x[nt + na..].to_vec() }
    }

    pub fn join(&self, k: usize, parts: &CylinderParts) -> Result<Vec<Rat>> {
        if parts.t.len() != self.w.dim(k + 1) || parts.a.len() != self.middle(k) || parts.b.len() != self.c.dim(k) {
            return Err(Error::DimensionMismatch { expected: self.presentation.dim(k), found: parts.t.len() + parts.a.len() + parts.b.len() });
        }
        let mut v = parts.t.clone();
        v.extend(parts.a.iter().cloned());
        v.extend(parts.b.iter().cloned());
        Ok(v)
    }

    /// The spark `(φ, 0, h)`; requires `dh = ρφ - r` with `r` in the lattice.
    pub fn spark_from_pair(&self, k: usize, phi: &[Rat], h: &[Rat]) -> Result<Spark> {
        let x = self.join(k, &CylinderParts { t: phi.to_vec(), a: vec![Rat::zero(); self.middle(k)], b: h.to_vec() })?;
        self.presentation.decompose_spark(k, &x)
    }

    /// The element of `E^k` given by a Whitney form, as a spark.
    pub fn spark_from_form(&self, k: usize, e: &[Rat]) -> Result<Spark> {
        let parts = if k == 0 {
            CylinderParts { t: self.w.apply(0, e), a: Vec::new(), b: self.rho(0).mul_vec(e) }
        } else {
            CylinderParts { t: vec![Rat::zero(); self.w.dim(k + 1)], a: e.to_vec(), b: vec![Rat::zero(); self.c.dim(k)] }
        };
        let x = self.join(k, &parts)?;
        self.presentation.decompose_spark(k, &x)
    }

    /// The equivalent pair `(φ, h)` with `h = b + ρa`.
    pub fn normal_form(&self, k: usize, x: &[Rat]) -> Result<(Vec<Rat>, Vec<Rat>)> {
        let s = self.presentation.decompose_spark(k, x)?;
        let p = self.split(k, x);
        let phi = self.split(k + 1, &s.phi).a;
        let h = if k == 0 {
            p.b
        } else {
            let rho_a = self.rho(k).mul_vec(&p.a);
            p.b.iter().zip(&rho_a).map(|(x, y)| x + y).collect()
        };
        Ok((phi, h))
    }

    /// Curvature as a Whitney form of degree `k + 1`.
    pub fn curvature(&self, k: usize, x: &[Rat]) -> Result<Vec<Rat>> {
        let s = self.presentation.decompose_spark(k, x)?;
        Ok(self.split(k + 1, &s.phi).a)
    }

    /// Divisor as an integral element of `C^{k+1}`.
    pub fn divisor(&self, k: usize, x: &[Rat]) -> Result<Vec<Rat>> {
        let s = self.presentation.decompose_spark(k, x)?;
        Ok(self.split(k + 1, &s.r).b)
    }

    /// Block-diagonal map `(t, a, b) -> (t, a, g b)` for a chain map `g` on the last slot.
    fn slot_map(&self, target: &SparkModel, k: usize, g: &RatMatrix) -> RatMatrix {
        let mut m = RatMatrix::zeros(target.presentation.dim(k), self.presentation.dim(k));
        let (nt, na) = (self.w.dim(k + 1), self.middle(k));
        place(&mut m, 0, 0, &RatMatrix::identity(nt + na), 1);
        place(&mut m, nt + na, nt + na, g, 1);
        m
    }
}

impl SparkModel {
    /// A spark whose divisor is the closed lattice element `r ∈ C^{k+1}`:
    /// solves `ρφ - dh = r` for a Whitney form `φ` and a cochain `h`.
    pub fn spark_with_divisor(&self, k: usize, r: &[Rat]) -> Result<Spark> {
        let g = self.rho(k + 1).hstack(&self.c.differential(k).neg());
        let x = crate::linalg::solve(&g, r).ok_or_else(|| Error::NotACocycle("divisor is not closed".into()))?;
        let n = self.w.dim(k + 1);
        self.spark_from_pair(k, &x[..n], &x[n..])
    }

    /// A flat spark `(0, h)` from a closed cochain `h ∈ C^k`.
    pub fn flat_spark(&self, k: usize, h: &[Rat]) -> Result<Spark> {
        self.spark_from_pair(k, &vec![Rat::zero(); self.w.dim(k + 1)], h)
    }

    /// Sparks whose classes generate the degree-`k` class group: Whitney
    /// forms, flat classes from rational multiples of free cocycles, and a
    /// spark for each generator of `H^{k+1}(I)`.
    pub fn class_generators(&self, k: usize, fractions: &[Rat]) -> Result<Vec<Vec<Rat>>> {
        let mut out = Vec::new();
        for j in 0..self.w.dim(k) {
            let mut e = vec![Rat::zero(); self.w.dim(k)];
            e[j] = Rat::one();
            out.push(self.spark_from_form(k, &e)?.a);
        }
        let hk = self.c.rational_cohomology(k);
        for rep in &hk.free_reps {
            for f in fractions {
                let h: Vec<Rat> = rep.iter().map(|x| x * f).collect();
                out.push(self.flat_spark(k, &h)?.a);
            }
        }
        if let Some(h) = self.presentation.i_cohomology(k + 1) {
            let reps = h.free_reps.iter().chain(h.torsion_reps.iter().map(|t| &t.cocycle));
            for rep in reps {
                let r = self.split(k + 1, &self.presentation.i_element(k + 1, rep)).b;
                out.push(self.spark_with_divisor(k, &r)?.a);
            }
        }
        Ok(out)
    }
}

/// The inclusion of the CS model (or smooth hyperspark model) into the
/// cochain hyperspark model built on the same complex and depth.
pub fn embedding_maps(sub: &SparkModel, ambient: &SparkModel) -> Result<Vec<RatMatrix>> {
    if ambient.kind != ModelKind::CochainHyperspark || sub.depth != ambient.depth || sub.base.facets() != ambient.base.facets() {
        return Err(Error::InvalidInput("the ambient must be the cochain hyperspark model of the same complex and depth".into()));
    }
    let tot = ambient.cech.as_ref().expect("hyperspark model carries its Čech complex");
    let top = sub.presentation.top_degree().min(ambient.presentation.top_degree());
    Ok((0..=top)
        .map(|k| {
            let g = match sub.kind {
                ModelKind::CheegerSimons => tot.restriction_matrix(k),
                _ => RatMatrix::identity(sub.c.dim(k)),
            };
            sub.slot_map(ambient, k, &g)
        })
        .collect())
}

pub fn embedding<'a>(sub: &'a SparkModel, ambient: &'a SparkModel) -> Result<SubsparkEmbedding<'a>> {
    SubsparkEmbedding::new(&sub.presentation, &ambient.presentation, embedding_maps(sub, ambient)?, false)
}

/// The three models on one complex, with both embeddings verified.
#[derive(Clone, Debug)]
pub struct ModelFamily {
    pub cs: SparkModel,
    pub smooth: SparkModel,
    pub cochain: SparkModel,
}

impl ModelFamily {
    pub fn build(k: &SimplicialComplex, m: usize) -> Result<Self> {
        let fam = ModelFamily { cs: build_cs_model(k, m)?, smooth: build_smooth_hyperspark_model(k, m)?, cochain: build_cochain_hyperspark_model(k, m)? };
        for sub in [&fam.cs, &fam.smooth] {
            let emb = embedding(sub, &fam.cochain)?;
            let rep = emb.verify();
            if !rep.passes(false) {
                return Err(Error::AxiomFailure(format!("{} embedding: {}", sub.name(), rep.failure.unwrap_or_default())));
            }
        }
        Ok(fam)
    }

    pub fn model(&self, kind: ModelKind) -> &SparkModel {
        match kind {
            ModelKind::CheegerSimons => &self.cs,
            ModelKind::SmoothHyperspark => &self.smooth,
            ModelKind::CochainHyperspark => &self.cochain,
        }
    }

    /// Moves a class from one model to another through the ambient model.
    pub fn convert(&self, from: ModelKind, to: ModelKind, k: usize, x: &[Rat]) -> Result<Vec<Rat>> {
        let ambient = match from {
            ModelKind::CochainHyperspark => x.to_vec(),
            _ => embedding(self.model(from), &self.cochain)?.include(k, x),
        };
        match to {
            ModelKind::CochainHyperspark => Ok(ambient),
            _ => Ok(embedding(self.model(to), &self.cochain)?.transfer_class(k, &ambient)?.0),
        }
    }
}

/// Graded pieces `A^{p, k-p}` of an element of the Čech total complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypersparkElement {
    pub degree: usize,
    /// `blocks[p]` holds `A^{p, k-p}`.
    pub blocks: Vec<Vec<Rat>>,
}

impl SparkModel {
    /// The Čech cochain `b + ρa` of a hyperspark-model spark.
    pub fn hyperspark(&self, k: usize, x: &[Rat]) -> Result<HypersparkElement> {
        let tot = self.cech.as_ref().ok_or_else(|| Error::InvalidInput("not a hyperspark model".into()))?;
        let (_, h) = self.normal_form(k, x)?;
        let blocks = (0..=k).map(|p| h[tot.block_range(p, k - p)].to_vec()).collect();
        Ok(HypersparkElement { degree: k, blocks })
    }

    /// Residuals of `DA = ρφ - R` block by block; all zero for a spark.
    pub fn ladder_residuals(&self, k: usize, x: &[Rat]) -> Result<Vec<Vec<Rat>>> {
        let tot = self.cech.as_ref().ok_or_else(|| Error::InvalidInput("not a hyperspark model".into()))?;
        let (phi, h) = self.normal_form(k, x)?;
        let r = self.divisor(k, x)?;
        let dh = tot.apply(k, &h);
        let rphi = self.rho(k + 1).mul_vec(&phi);
        let res: Vec<Rat> = dh.iter().zip(&rphi).zip(&r).map(|((a, b), c)| a - b + c).collect();
        Ok((0..=k + 1).map(|p| res[tot.block_range(p, k + 1 - p)].to_vec()).collect())
    }
}

/// Result of moving a smooth hyperspark into the CS model: `Da = A - h + S`
/// in the cochain hyperspark model.
#[derive(Clone, Debug)]
pub struct Collation {
    pub h: Vec<Rat>,
    pub a: Vec<Rat>,
    pub s: Vec<Rat>,
}

/// Contracts the Čech direction of a smooth hyperspark `A`, producing a
/// CS-model spark `h` and the witness of `Da = A - h + S`.
pub fn collate(fam: &ModelFamily, k: usize, x: &[Rat]) -> Result<Collation> {
    fam.smooth.presentation.decompose_spark(k, x)?;
    let amb = embedding(&fam.smooth, &fam.cochain)?.include(k, x);
    let cs_emb = embedding(&fam.cs, &fam.cochain)?;
    let (h, TransferWitness { s_bar, gamma_bar }) = cs_emb.transfer_class(k, &amb)?;
    let a: Vec<Rat> = gamma_bar.iter().map(|g| -g).collect();
    let s: Vec<Rat> = s_bar.iter().map(|g| -g).collect();
    // check Da = A - ι(h) + S
    let ih = cs_emb.include(k, &h);
    let lhs = if k == 0 { vec![Rat::zero(); amb.len()] } else { fam.cochain.presentation.d(k - 1, &a) };
    let ok = lhs.iter().zip(&amb).zip(&ih).zip(&s).all(|(((l, x), y), z)| *l == x - y + z);
    if !ok {
        return Err(Error::Inconsistent("collation witness does not check".into()));
    }
    Ok(Collation { h, a, s })
}

/// Vertex map `Sd^m X -> Sd^m Y` induced by a simplicial map `X -> Y` that is
/// affine on simplices; `None` when a barycenter does not land on a vertex.
fn subdivided_vertex_map(x: &Subdivision, y: &Subdivision, vmap: &[usize]) -> Option<Vec<usize>> {
    let mut index: alloc::collections::BTreeMap<&[Rat], usize> = alloc::collections::BTreeMap::new();
    for (v, c) in y.coords.iter().enumerate() {
        index.insert(c.as_slice(), v);
    }
    let ny = y.base.vertex_count();
    x.coords
        .iter()
        .map(|c| {
            let mut img = vec![Rat::zero(); ny];
            for (w, t) in c.iter().enumerate() {
                img[vmap[w]] += t;
            }
            index.get(img.as_slice()).copied()
        })
        .collect()
}

/// Matrices of `f^* : F_Y -> F_X` for a simplicial map `f : X -> Y` between
/// CS models of equal depth.
pub fn pullback_maps(x: &SparkModel, y: &SparkModel, vmap: &[usize]) -> Result<Vec<RatMatrix>> {
    if x.kind != ModelKind::CheegerSimons || y.kind != ModelKind::CheegerSimons || x.depth != y.depth {
        return Err(Error::InvalidInput("pullback needs CS models of equal depth".into()));
    }
    check_simplicial_map(&x.base, &y.base, vmap)?;
    let fine_map = subdivided_vertex_map(&x.subdivision, &y.subdivision, vmap)
        .ok_or_else(|| Error::NotSimplicial("the map does not carry the subdivision to the subdivision".into()))?;
    check_simplicial_map(x.fine(), y.fine(), &fine_map)?;
    let top = x.presentation.top_degree().min(y.presentation.top_degree());
    let mut maps = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let mut m = RatMatrix::zeros(x.presentation.dim(k), y.presentation.dim(k));
        let (xt, xa) = (x.w.dim(k + 1), x.middle(k));
        let (yt, ya) = (y.w.dim(k + 1), y.middle(k));
        if k < x.base.dim() && k < y.base.dim() {
            place(&mut m, 0, 0, &pullback_matrix(&x.base, &y.base, vmap, k + 1), 1);
        }
        if k >= 1 && k <= x.base.dim() && k <= y.base.dim() {
            place(&mut m, xt, yt, &pullback_matrix(&x.base, &y.base, vmap, k), 1);
        }
        if k <= x.fine().dim() && k <= y.fine().dim() {
            place(&mut m, xt + xa, yt + ya, &pullback_matrix(x.fine(), y.fine(), &fine_map, k), 1);
        }
        maps.push(m);
    }
    for k in 0..top {
        let lhs = x.presentation.f().differential(k).mul_mat(&maps[k]);
        let rhs = maps[k + 1].mul_mat(&y.presentation.f().differential(k));
        if lhs != rhs {
            return Err(Error::NotSimplicial(format!("pullback is not a chain map in degree {}", k)));
        }
    }
    Ok(maps)
}

/// `f^*` applied to a spark of degree `k` of the CS model on `Y`.
pub fn pullback(x: &SparkModel, y: &SparkModel, vmap: &[usize], k: usize, a: &[Rat]) -> Result<Spark> {
    let maps = pullback_maps(x, y, vmap)?;
    let m = maps.get(k).ok_or(Error::DegreeOutOfRange { degree: k, dim: maps.len() - 1 })?;
    y.presentation.decompose_spark(k, a)?;
    x.presentation.decompose_spark(k, &m.mul_vec(a))
}
