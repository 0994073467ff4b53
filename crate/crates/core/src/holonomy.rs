//! Grundles, gauge equivalence and holonomy.
//!
//! A grundle of degree `k` on the star cover is stored as an element of the
//! Čech total complex `Tot^k`: the blocks `A^{p,k-p}` for `p < k` are
//! rational cochains and the block `(k, 0)` holds the angles `g` in `[0, 1)`.
//! The discrete `(1/2πi) dg/g` of an angle function is its edge difference
//! taken in `(-1/2, 1/2]`.
//!
//! Holonomy pairs a grundle with a labeled cycle: an integral element `e` of
//! the dual of `Tot^k` with `Dᵀe = 0` whose `(0, k)` part sums to the
//! underlying simplicial cycle. It is built from a cycle and a label (a cover
//! element containing each fine simplex) by the contraction
//! `(K r)_{λ(s)σ}(s) = r_σ(s)`.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::arith::{centered_frac, frac, rat_int, Int, Rat};
use crate::cochain::CechTotalComplex;
use crate::error::{Error, Result};
use crate::linalg::{mixed_solve, solve, RatMatrix};
use crate::models::{ModelKind, SparkModel};
use crate::simplicial::{boundary, dual_cells, Chain, Subdivision};
use crate::spark::SubsparkEmbedding;
use crate::whitney::{whitney_matrix, WhitneyForm};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grundle {
    pub degree: usize,
    /// Element of `Tot^k`; the `(k, 0)` block holds angles in `[0, 1)`.
    pub values: Vec<Rat>,
}

/// `A - Ā = DB + S` with `h = B^{k-1,0} mod 1`, so that `g ḡ^{-1} = δh`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeWitness {
    pub b: Vec<Rat>,
    pub h: Vec<Rat>,
    pub s: Vec<Rat>,
}

#[derive(Clone, Debug)]
pub struct GrundleCheck {
    /// `δg` is integral.
    pub cocycle: bool,
    /// The ladder holds with the discrete logarithmic derivative, ending in a Whitney curvature.
    pub ladder: bool,
    pub curvature: Option<Vec<Rat>>,
}

fn cech(model: &SparkModel) -> Result<&CechTotalComplex> {
    if model.kind != ModelKind::SmoothHyperspark {
        return Err(Error::InvalidInput("grundles live on the smooth hyperspark model".into()));
    }
    Ok(model.cech.as_ref().expect("hyperspark model"))
}

fn reduce_last_block(tot: &CechTotalComplex, k: usize, v: &mut [Rat]) {
    for i in tot.block_range(k, 0) {
        v[i] = frac(&v[i]);
    }
}

/// Exponentiates the last component of a smooth hyperspark.
pub fn grundle_from_hyperspark(model: &SparkModel, k: usize, x: &[Rat]) -> Result<Grundle> {
    let tot = cech(model)?;
    let (_, mut a) = model.normal_form(k, x)?;
    reduce_last_block(tot, k, &mut a);
    Ok(Grundle { degree: k, values: a })
}

/// The `(k, 1)` block of `D` applied to lifted angles, and whether the
/// angles are consistent with the connection.
///
/// For `k >= 1` the rest of the ladder fixes each lifted edge difference
/// exactly; the angles only have to agree with it mod 1. In degree 0 nothing
/// else constrains the jumps, so each is taken in `(-1/2, 1/2]`.
fn dlog(tot: &CechTotalComplex, k: usize, values: &[Rat]) -> (Vec<Rat>, bool) {
    let mut only_g = vec![Rat::zero(); tot.dim(k)];
    for i in tot.block_range(k, 0) {
        only_g[i] = values[i].clone();
    }
    let mut dg = tot.apply(k, &only_g);
    let mut consistent = true;
    if k == 0 {
        for i in tot.block_range(k, 1) {
            dg[i] = centered_frac(&dg[i]);
        }
    } else {
        let mut rest = values.to_vec();
        for i in tot.block_range(k, 0) {
            rest[i] = Rat::zero();
        }
        let y = tot.apply(k, &rest);
        for i in tot.block_range(k, 1) {
            consistent &= (&y[i] + &dg[i]).is_integer();
            dg[i] = -&y[i];
        }
    }
    for i in tot.block_range(k + 1, 0) {
        dg[i] = Rat::zero();
    }
    (dg, consistent)
}

impl Grundle {
    pub fn trivial(model: &SparkModel, k: usize) -> Result<Self> {
        let tot = cech(model)?;
        Ok(Grundle { degree: k, values: vec![Rat::zero(); tot.dim(k)] })
    }

    /// Angles of the component `σ` of the last block, indexed like the cover members.
    pub fn angles<'a>(&'a self, model: &SparkModel, sigma: usize) -> Result<&'a [Rat]> {
        Ok(cech(model)?.component(&self.values, self.degree, 0, sigma))
    }

    pub fn check(&self, model: &SparkModel) -> Result<GrundleCheck> {
        let tot = cech(model)?;
        let k = self.degree;
        let mut without_g = self.values.clone();
        for i in tot.block_range(k, 0) {
            without_g[i] = Rat::zero();
        }
        let mut y = tot.apply(k, &without_g);
        let full = tot.apply(k, &self.values);
        let (dl, consistent) = dlog(tot, k, &self.values);
        for (i, v) in y.iter_mut().enumerate() {
            *v += &dl[i];
        }
        let top = tot.block_range(k + 1, 0);
        let cocycle = top.clone().all(|i| full[i].is_integer());
        let middle_zero = (1..=k).all(|p| tot.block_range(p, k + 1 - p).all(|i| y[i].is_zero()));
        let first: Vec<Rat> = {
            let mut v = vec![Rat::zero(); tot.dim(k + 1)];
            for i in tot.block_range(0, k + 1) {
                v[i] = y[i].clone();
            }
            v
        };
        let rho = model.rho(k + 1);
        let curvature = if rho.cols() == 0 {
            if first.iter().all(Zero::is_zero) {
                Some(Vec::new())
            } else {
                None
            }
        } else {
            solve(&rho, &first)
        };
        Ok(GrundleCheck { cocycle, ladder: consistent && middle_zero && curvature.is_some(), curvature })
    }
}

/// Lifts the angles of every component along its star, starting from the
/// first member vertex with value in `[0, 1)` plus the given integer shift.
/// Returns the hyperspark (as a spark of the smooth model) and `R`.
pub fn hyperspark_from_grundle(model: &SparkModel, g: &Grundle, shifts: Option<&[Int]>) -> Result<(Vec<Rat>, Vec<Rat>)> {
    let tot = cech(model)?;
    let k = g.degree;
    let cover = &tot.cover;
    let fine = cover.fine();
    let (dl, consistent) = dlog(tot, k, &g.values);
    if !consistent {
        return Err(Error::InvalidInput("the angles disagree with the connection mod 1".into()));
    }
    // D of the fine vertex numbers gives the sign of each edge term
    let mut probe = vec![Rat::zero(); tot.dim(k)];
    for sigma in 0..cover.base().count(k) {
        for &v in cover.members(k, sigma, 0) {
            probe[tot.index(k, 0, sigma, v).expect("member vertex")] = Rat::from_integer(Int::from(v));
        }
    }
    let probe = tot.apply(k, &probe);
    let mut a = g.values.clone();
    for sigma in 0..cover.base().count(k) {
        let verts = cover.members(k, sigma, 0);
        if verts.is_empty() {
            continue;
        }
        let local = |v: usize| tot.index(k, 0, sigma, v).expect("member vertex");
        // lift(s1) - lift(s0) along the fine edge e = [s0, s1]
        let jump = |e: usize| {
            let s = fine.simplex(1, e);
            let i = tot.index(k, 1, sigma, e).expect("member edge");
            &dl[i] * Rat::from_integer(Int::from(s[1]) - Int::from(s[0])) / &probe[i]
        };
        let mut lift: Vec<Option<Rat>> = vec![None; verts.len()];
        let pos = |v: usize| verts.binary_search(&v).ok();
        let shift = shifts.and_then(|s| s.get(sigma)).map(rat_int).unwrap_or_else(Rat::zero);
        lift[0] = Some(&g.values[local(verts[0])] + shift);
        let mut queue = VecDeque::from([verts[0]]);
        let edges = cover.members(k, sigma, 1);
        while let Some(u) = queue.pop_front() {
            let lu = lift[pos(u).unwrap()].clone().unwrap();
            for &e in fine.cofaces(0, u) {
                if edges.binary_search(&e).is_err() {
                    continue;
                }
                let s = fine.simplex(1, e);
                let w = if s[0] == u { s[1] } else { s[0] };
                let Some(pw) = pos(w) else { continue };
                if lift[pw].is_none() {
                    let j = jump(e);
                    lift[pw] = Some(if s[1] == w { &lu + j } else { &lu - j });
                    queue.push_back(w);
                }
            }
        }
        for (i, &v) in verts.iter().enumerate() {
            let l = lift[i].clone().ok_or_else(|| Error::InvalidInput(format!("component {} is not connected", sigma)))?;
            a[local(v)] = l;
        }
        for &e in edges {
            let s = fine.simplex(1, e);
            let (p0, p1) = (pos(s[0]).unwrap(), pos(s[1]).unwrap());
            let diff = lift[p1].as_ref().unwrap() - lift[p0].as_ref().unwrap();
            if diff != jump(e) {
                return Err(Error::InvalidInput(format!("lifted angles on component {} do not close up around a loop", sigma)));
            }
        }
    }
    let y = tot.apply(k, &a);
    let r: Vec<Rat> = (0..y.len()).map(|i| if tot.block_range(k + 1, 0).contains(&i) { -&y[i] } else { Rat::zero() }).collect();
    if r.iter().any(|x| !x.is_integer()) {
        return Err(Error::InvalidInput("δg is not integral".into()));
    }
    let rest: Vec<Rat> = y.iter().zip(&r).map(|(x, z)| x + z).collect();
    let rho = model.rho(k + 1);
    let phi = if rho.cols() == 0 {
        Vec::new()
    } else {
        solve(&rho, &rest).ok_or_else(|| Error::InvalidInput("the grundle ladder does not end in a Whitney curvature".into()))?
    };
    let spark = model.spark_from_pair(k, &phi, &a)?;
    Ok((spark.a, r))
}

/// Applies `A -> A + DB + S` and reduces the angles.
pub fn apply_gauge(model: &SparkModel, g: &Grundle, b: &[Rat], s: &[Rat]) -> Result<Grundle> {
    let tot = cech(model)?;
    let k = g.degree;
    if k == 0 || b.len() != tot.dim(k - 1) || s.len() != tot.dim(k) {
        return Err(Error::InvalidInput("gauge data has the wrong shape".into()));
    }
    let db = tot.apply(k - 1, b);
    let mut v: Vec<Rat> = g.values.iter().zip(&db).zip(s).map(|((x, y), z)| x + y + z).collect();
    reduce_last_block(tot, k, &mut v);
    Ok(Grundle { degree: k, values: v })
}

/// Decides gauge equivalence through the smooth hyperspark model and returns
/// a checked witness.
pub fn gauge_equivalent(model: &SparkModel, g1: &Grundle, g2: &Grundle) -> Result<Option<GaugeWitness>> {
    let tot = cech(model)?;
    if g1.degree != g2.degree || g1.values.len() != g2.values.len() {
        return Err(Error::CoverMismatch("grundles of different degree or cover".into()));
    }
    let k = g1.degree;
    let (x1, _) = hyperspark_from_grundle(model, g1, None)?;
    let (x2, _) = hyperspark_from_grundle(model, g2, None)?;
    let Some(w) = model.presentation.equivalent(k, &x1, &x2)? else { return Ok(None) };
    let (_, a1) = model.normal_form(k, &x1)?;
    let (_, a2) = model.normal_form(k, &x2)?;
    let b = if k == 0 {
        Vec::new()
    } else {
        let parts = model.split(k - 1, &w.b);
        let mut v = parts.b;
        if k >= 2 {
            let ra = model.rho(k - 1).mul_vec(&parts.a);
            v.iter_mut().zip(ra).for_each(|(x, y)| *x += y);
        }
        v
    };
    let s = model.split(k, &w.s).b;
    let db = if k == 0 { vec![Rat::zero(); a1.len()] } else { tot.apply(k - 1, &b) };
    let ok = a1.iter().zip(&a2).zip(&db).zip(&s).all(|(((x, y), z), t)| x - y == z + t);
    if !ok {
        return Err(Error::Inconsistent("gauge witness does not check".into()));
    }
    let mut h = vec![Rat::zero(); if k == 0 { 0 } else { tot.dim(k - 1) }];
    if k > 0 {
        for i in tot.block_range(k - 1, 0) {
            h[i] = frac(&b[i]);
        }
        // g ḡ^{-1} = δh on the angles
        let dh = tot.apply(k - 1, &h);
        if tot.block_range(k, 0).any(|i| !(&g1.values[i] - &g2.values[i] - &dh[i]).is_integer()) {
            return Err(Error::Inconsistent("angles of the gauge witness do not check".into()));
        }
    }
    Ok(Some(GaugeWitness { b, h, s }))
}

/// An integral cycle of the dual total complex built from a simplicial cycle.
#[derive(Clone, Debug)]
pub struct LabeledCycle {
    pub degree: usize,
    pub cycle: Chain,
    /// `labels[q][s]`: cover element (base vertex) assigned to the fine `q`-simplex `s`.
    pub labels: Vec<Vec<usize>>,
    /// Coefficients on the basis of `Tot^k`.
    pub chain: Vec<Rat>,
}

/// The default labels: the first vertex of the lowest base simplex of each fine simplex.
pub fn auto_labels(tot: &CechTotalComplex, k: usize) -> Vec<Vec<usize>> {
    let cover = &tot.cover;
    (0..=k.min(cover.fine().dim()))
        .map(|q| {
            (0..cover.fine().count(q))
                .map(|s| {
                    let (d, i) = cover.lowest(q, s);
                    cover.base().simplex(d, i)[0]
                })
                .collect()
        })
        .collect()
}

/// Every cover element containing the fine `q`-simplex `s`.
pub fn admissible_labels(tot: &CechTotalComplex, q: usize, s: usize) -> Vec<usize> {
    let (d, i) = tot.cover.lowest(q, s);
    tot.cover.base().simplex(d, i).to_vec()
}

impl LabeledCycle {
    pub fn new(tot: &CechTotalComplex, cycle: &Chain, labels: Vec<Vec<usize>>) -> Result<Self> {
        let k = cycle.degree;
        let cover = &tot.cover;
        let fine = cover.fine();
        if k > 0 && !boundary(fine, cycle).is_zero() {
            return Err(Error::InvalidInput("not a cycle".into()));
        }
        for q in 0..=k {
            let row = labels.get(q).ok_or_else(|| Error::InvalidInput(format!("no labels for {}-simplices", q)))?;
            if row.len() != fine.count(q) {
                return Err(Error::DimensionMismatch { expected: fine.count(q), found: row.len() });
            }
            for (s, &a) in row.iter().enumerate() {
                if a >= cover.base().vertex_count() || !cover.contains(0, a, q, s) {
                    return Err(Error::InvalidInput(format!("{}-simplex {} is not inside cover element {}", q, s, a)));
                }
            }
        }
        let mut e = vec![Rat::zero(); tot.dim(k)];
        for (s, c) in cycle.terms() {
            e[tot.index(0, k, labels[k][s], s).unwrap()] += rat_int(c);
        }
        if k > 0 {
            let dt = tot.complex().differential(k - 1).transpose();
            let base = cover.base();
            for p in 0..k {
                let q = k - 1 - p;
                let r = dt.mul_vec(&e);
                let sign = if q % 2 == 0 { -1 } else { 1 };
                for sigma in 0..base.count(p) {
                    let verts = base.simplex(p, sigma);
                    for &s in cover.members(p, sigma, q) {
                        let v = &r[tot.index(p, q, sigma, s).unwrap()];
                        if v.is_zero() {
                            continue;
                        }
                        let l = labels[q][s];
                        if verts.contains(&l) {
                            continue;
                        }
                        let mut tau = verts.to_vec();
                        tau.push(l);
                        tau.sort_unstable();
                        let pos = tau.iter().position(|&x| x == l).unwrap();
                        let t = base.index_of(&tau).ok_or_else(|| Error::Inconsistent("label outside the nerve".into()))?;
                        let idx = tot.index(p + 1, q, t, s).ok_or_else(|| Error::Inconsistent("simplex outside an intersection".into()))?;
                        let sgn = if (pos % 2 == 0) == (sign > 0) { 1 } else { -1 };
                        e[idx] += v * Rat::from_integer(sgn.into());
                    }
                }
            }
            if !dt.mul_vec(&e).iter().all(Zero::is_zero) {
                return Err(Error::Inconsistent("labeled chain is not closed".into()));
            }
        }
        Ok(LabeledCycle { degree: k, cycle: cycle.clone(), labels, chain: e })
    }

    pub fn auto(tot: &CechTotalComplex, cycle: &Chain) -> Result<Self> {
        Self::new(tot, cycle, auto_labels(tot, cycle.degree))
    }
}

/// `⟨A, e⟩ mod 1` for an element of `Tot^k` (grundle or hyperspark).
pub fn holonomy_general(values: &[Rat], cycle: &LabeledCycle) -> Result<Rat> {
    if values.len() != cycle.chain.len() {
        return Err(Error::DimensionMismatch { expected: cycle.chain.len(), found: values.len() });
    }
    let sum: Rat = values.iter().zip(&cycle.chain).filter(|(_, c)| !c.is_zero()).map(|(v, c)| v * c).sum();
    Ok(frac(&sum))
}

pub fn grundle_holonomy(g: &Grundle, cycle: &LabeledCycle) -> Result<Rat> {
    if g.degree != cycle.degree {
        return Err(Error::InvalidInput("degree mismatch".into()));
    }
    holonomy_general(&g.values, cycle)
}

fn pair_component(tot: &CechTotalComplex, values: &[Rat], p: usize, sigma: usize, c: &Chain) -> Result<Rat> {
    let mut total = Rat::zero();
    for (s, x) in c.terms() {
        let i = tot
            .index(p, c.degree, sigma, s)
            .ok_or_else(|| Error::InvalidInput(format!("cell simplex {} is not inside its labeled element", s)))?;
        total += &values[i] * rat_int(x);
    }
    Ok(total)
}

fn path_ends(fine: &crate::simplicial::SimplicialComplex, arc: &Chain) -> Result<Option<(usize, usize)>> {
    let b = boundary(fine, arc);
    if b.is_zero() {
        return Ok(None);
    }
    let terms: Vec<(usize, Int)> = b.terms().map(|(i, c)| (i, c.clone())).collect();
    if terms.len() != 2 {
        return Err(Error::InvalidInput("arc is not a path".into()));
    }
    let (start, end) = if terms[0].1 < Int::zero() { (terms[0].0, terms[1].0) } else { (terms[1].0, terms[0].0) };
    Ok(Some((start, end)))
}

/// Loop holonomy from arcs `γ_j ⊂ U_{α_j}` traversed in order: the local
/// integrals plus the transition function at each interface vertex.
pub fn holonomy_degree1(model: &SparkModel, values: &[Rat], arcs: &[(usize, Chain)]) -> Result<Rat> {
    let tot = cech(model)?;
    let fine = tot.cover.fine();
    let base = tot.cover.base();
    let mut total = Rat::zero();
    let n = arcs.len();
    let mut ends = Vec::with_capacity(n);
    for (alpha, arc) in arcs {
        if arc.degree != 1 {
            return Err(Error::InvalidInput("arcs are 1-chains".into()));
        }
        total += pair_component(tot, values, 0, *alpha, arc)?;
        ends.push(path_ends(fine, arc)?);
    }
    if n == 1 && ends[0].is_none() {
        return Ok(frac(&total));
    }
    for j in 0..n {
        let (a, b) = (arcs[j].0, arcs[(j + 1) % n].0);
        let end = ends[j].ok_or_else(|| Error::InvalidInput("closed arc inside a longer loop".into()))?.1;
        let start = ends[(j + 1) % n].ok_or_else(|| Error::InvalidInput("closed arc inside a longer loop".into()))?.0;
        if end != start {
            return Err(Error::InvalidInput(format!("arc {} does not end where the next begins", j)));
        }
        if a == b {
            continue;
        }
        let (lo, hi, sign) = if a < b { (a, b, 1) } else { (b, a, -1) };
        let edge = base.index_of(&[lo, hi]).ok_or_else(|| Error::InvalidInput("consecutive arcs in disjoint elements".into()))?;
        let i = tot.index(1, 0, edge, end).ok_or_else(|| Error::InvalidInput("interface vertex outside the intersection".into()))?;
        total += &values[i] * Rat::from_integer(sign.into());
    }
    Ok(frac(&total))
}

/// Holonomy over the fundamental cycle of a closed oriented surface, using
/// the cells dual to the base triangulation: faces `P_α ⊂ U_α`, edges
/// `E_{αβ}`, vertices `V_{αβγ}`.
pub fn holonomy_degree2(model: &SparkModel, values: &[Rat]) -> Result<Rat> {
    let tot = cech(model)?;
    let base = tot.cover.base();
    if base.dim() != 2 || tot.cover.depth() != 1 {
        return Err(Error::InvalidInput("needs a surface and a depth-1 cover".into()));
    }
    let dual = dual_cells(base)?;
    let mut total = Rat::zero();
    for v in 0..base.count(0) {
        total += pair_component(tot, values, 0, v, dual.cell(0, v))?;
    }
    for e in 0..base.count(1) {
        total -= pair_component(tot, values, 1, e, dual.cell(1, e))?;
    }
    for t in 0..base.count(2) {
        total += pair_component(tot, values, 2, t, dual.cell(2, t))?;
    }
    Ok(frac(&total))
}

/// The fundamental cycle of the base on the fine complex of a model.
pub fn fine_fundamental_cycle(model: &SparkModel) -> Result<Chain> {
    let f = model.base.fundamental_chain().ok_or_else(|| Error::InvalidComplex("base is not oriented".into()))?;
    Ok(model.subdivision.subdivide_chain(&f))
}

/// `h(z) mod 1` for a spark of the CS model and a cycle of its fine complex.
pub fn holonomy_via_character(model: &SparkModel, k: usize, x: &[Rat], z: &Chain) -> Result<Rat> {
    if model.kind != ModelKind::CheegerSimons {
        return Err(Error::InvalidInput("evaluation needs the CS model".into()));
    }
    if z.degree != k || (k > 0 && !boundary(model.fine(), z).is_zero()) {
        return Err(Error::InvalidInput("not a cycle of the right degree".into()));
    }
    let (_, h) = model.normal_form(k, x)?;
    Ok(frac(&crate::cochain::evaluate(&h, z)))
}

/// Raw `h(c)` for any chain (no reduction); the defining congruence compares it with `φ(c)`.
pub fn character_value(model: &SparkModel, k: usize, x: &[Rat], c: &Chain) -> Result<Rat> {
    let (_, h) = model.normal_form(k, x)?;
    Ok(crate::cochain::evaluate(&h, c))
}

/// `∫_z w` for a Whitney form and a chain on `Sd^m K`.
pub fn whitney_pairing(sub: &Subdivision, w: &WhitneyForm, z: &Chain) -> Result<Rat> {
    if z.degree != w.degree {
        return Err(Error::InvalidInput("degree mismatch".into()));
    }
    let vals = whitney_matrix(sub, w.degree).mul_vec(&w.coeffs);
    Ok(crate::cochain::evaluate(&vals, z))
}

/// `∫_M a mod 1` for a Whitney representative.
pub fn holonomy_smooth_representative(sub: &Subdivision, w: &WhitneyForm, z: &Chain) -> Result<Rat> {
    if z.degree > 0 && !boundary(&sub.complex, z).is_zero() {
        return Err(Error::InvalidInput("not a cycle".into()));
    }
    Ok(frac(&whitney_pairing(sub, w, z)?))
}

/// `∫_Γ φ mod 1` where `∂Γ = Σ`, valid when flat classes of degree
/// `deg φ - 1` are trivial (`flat_trivial`).
pub fn curvature_driven_holonomy(sub: &Subdivision, phi: &WhitneyForm, sigma: &Chain, gamma: &Chain, flat_trivial: bool) -> Result<Rat> {
    if !flat_trivial {
        return Err(Error::InvalidInput("flat classes are nontrivial; holonomy is not determined by curvature".into()));
    }
    if boundary(&sub.complex, gamma) != *sigma {
        return Err(Error::InvalidInput("Γ does not bound Σ".into()));
    }
    Ok(frac(&whitney_pairing(sub, phi, gamma)?))
}

/// Dual of the subdivision chain map `C_*(Sd^m K) -> C_*(Sd^{m+1} K)`.
pub fn refinement_maps(coarse: &SparkModel, fine: &SparkModel) -> Result<Vec<RatMatrix>> {
    if coarse.kind != ModelKind::CheegerSimons || fine.kind != ModelKind::CheegerSimons || fine.depth != coarse.depth + 1 {
        return Err(Error::InvalidInput("refinement needs CS models of consecutive depths".into()));
    }
    let level = &fine.subdivision.levels()[coarse.depth];
    let top = coarse.presentation.top_degree().min(fine.presentation.top_degree());
    let mut maps = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let mut m = RatMatrix::zeros(coarse.presentation.dim(k), fine.presentation.dim(k));
        let w = coarse.whitney();
        let head = w.dim(k + 1) + if k == 0 { 0 } else { w.dim(k) };
        for i in 0..head {
            m.set(i, i, Rat::from_integer(1.into()));
        }
        if k <= coarse.fine().dim() {
            for s in 0..coarse.fine().count(k) {
                for (t, c) in level.image(k, s).terms() {
                    m.set(head + s, head + t, rat_int(c));
                }
            }
        }
        maps.push(m);
    }
    Ok(maps)
}

#[derive(Clone, Debug)]
pub struct DescentReport {
    pub coarse: Rat,
    pub refined: Rat,
}

impl DescentReport {
    pub fn passes(&self) -> bool {
        self.coarse == self.refined
    }
}

/// Holonomy of a class on `z` at depth `m`, against the holonomy of the same
/// class carried to depth `m + 1` on the subdivided cycle.
pub fn descent_check(coarse: &SparkModel, fine: &SparkModel, k: usize, x: &[Rat], z: &Chain) -> Result<DescentReport> {
    let maps = refinement_maps(coarse, fine)?;
    let emb = SubsparkEmbedding::new(&fine.presentation, &coarse.presentation, maps, true)?;
    let (y, _) = emb.transfer_class(k, x)?;
    let level = &fine.subdivision.levels()[coarse.depth];
    let zz = level.apply(z);
    Ok(DescentReport { coarse: holonomy_via_character(coarse, k, x, z)?, refined: holonomy_via_character(fine, k, &y, &zz)? })
}

/// A Whitney form `a` on the base with `da = φ` whose restriction agrees
/// with `h` up to integer cochains and coboundaries, for a CS spark with
/// normal form `(φ, h)`. Exists exactly when the class is `[a]`
/// (topologically trivial), and then holonomy is `∫ a mod 1`.
pub fn smooth_representative(model: &SparkModel, k: usize, x: &[Rat]) -> Result<Option<WhitneyForm>> {
    if model.kind != ModelKind::CheegerSimons {
        return Err(Error::InvalidInput("smooth representatives are read off the CS model".into()));
    }
    let (phi, h) = model.normal_form(k, x)?;
    let w = model.whitney();
    let c = model.cochains();
    let (nw, nc) = (w.dim(k), c.dim(k));
    let nprev = if k == 0 { 0 } else { c.dim(k - 1) };
    let rows = nc + w.dim(k + 1);
    let mut gs = RatMatrix::zeros(rows, nw + nprev);
    let rho = model.rho(k);
    let dw = w.differential(k);
    for i in 0..nc {
        for j in 0..nw {
            gs.set(i, j, rho.get(i, j).clone());
        }
    }
    if k > 0 {
        let dc = c.differential(k - 1);
        for i in 0..nc {
            for j in 0..nprev {
                gs.set(i, nw + j, dc.get(i, j).clone());
            }
        }
    }
    for i in 0..w.dim(k + 1) {
        for j in 0..nw {
            gs.set(nc + i, j, dw.get(i, j).clone());
        }
    }
    let mut gt = RatMatrix::zeros(rows, nc);
    for i in 0..nc {
        gt.set(i, i, Rat::from_integer(1.into()));
    }
    let mut rhs = h;
    rhs.extend(phi);
    Ok(mixed_solve(&gs, &gt, &rhs).map(|(s, _)| WhitneyForm::new(k, s[..nw].to_vec())))
}

/// Splits a connected 1-cycle with unit multiplicities into single-edge arcs
/// traversed as one closed walk, each arc labeled by its auto label.
pub fn loop_arcs(model: &SparkModel, z: &Chain) -> Result<Vec<(usize, Chain)>> {
    let tot = cech(model)?;
    let fine = tot.cover.fine();
    if z.degree != 1 || z.is_zero() {
        return Err(Error::InvalidInput("need a nonzero 1-cycle".into()));
    }
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    for (e, c) in z.terms() {
        let s = fine.simplex(1, e);
        let times: usize = num_traits::ToPrimitive::to_usize(&num_traits::Signed::abs(c)).ok_or_else(|| Error::InvalidInput("coefficient too large".into()))?;
        let dir = if c.sign() == num_bigint::Sign::Minus { (s[1], s[0], e) } else { (s[0], s[1], e) };
        edges.extend(core::iter::repeat(dir).take(times));
    }
    // Hierholzer
    let mut used = vec![false; edges.len()];
    let mut stack = vec![(edges[0].0, usize::MAX)];
    let mut walk = Vec::with_capacity(edges.len());
    while let Some(&(v, via)) = stack.last() {
        match (0..edges.len()).find(|&i| !used[i] && edges[i].0 == v) {
            Some(i) => {
                used[i] = true;
                stack.push((edges[i].1, i));
            }
            None => {
                stack.pop();
                if via != usize::MAX {
                    walk.push(edges[via]);
                }
            }
        }
    }
    if walk.len() != edges.len() {
        return Err(Error::InvalidInput("cycle is not a single closed walk".into()));
    }
    walk.reverse();
    let labels = auto_labels(tot, 1);
    Ok(walk
        .into_iter()
        .map(|(a, b, e)| {
            let sign: i64 = if a < b { 1 } else { -1 };
            (labels[1][e], Chain::from_terms(1, [(e, Int::from(sign))]))
        })
        .collect())
}
