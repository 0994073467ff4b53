//! The 3x3 grid of groups around a spark complex, each group presented as a
//! quotient `top / bottom` of subgroups of `F^k` or `F^{k+1}`, with the row
//! and column maps induced by linear maps on representatives.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::SparkComplex;
use crate::arith::Rat;
use crate::error::{Error, Result};
use crate::linalg::rational::inverse;
use crate::linalg::{GroupInvariants, MixedSubgroup, RatMatrix, Subspace};

#[derive(Clone, Debug)]
pub struct GridNode {
    pub name: String,
    pub top: MixedSubgroup,
    pub bottom: MixedSubgroup,
    pub invariants: GroupInvariants,
}

#[derive(Clone, Debug)]
pub struct GridCheck {
    pub name: String,
    pub holds: bool,
    /// A representative on which the check fails.
    pub witness: Option<Vec<Rat>>,
}

#[derive(Clone, Debug)]
pub struct GridReport {
    pub degree: usize,
    /// Row-major: `H(F)/H_I`, `Ĥ_E`, `dE`, `H(F/I)`, `Ĥ`, `Z_I`, `H(F,I)`, `H(I)`, `H_I(F)`.
    pub nodes: Vec<GridNode>,
    pub checks: Vec<GridCheck>,
}

impl GridReport {
    /// All rows and columns are short exact and all squares commute.
    pub fn exact(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn node(&self, name: &str) -> Option<&GridNode> {
        self.nodes.iter().find(|n| n.name == name)
    }
}

fn node(name: &str, top: MixedSubgroup, bottom: MixedSubgroup) -> Result<GridNode> {
    let invariants = top
        .quotient(&bottom)
        .ok_or_else(|| Error::Inconsistent(format!("{}: denominator not contained in numerator", name)))?;
    Ok(GridNode { name: name.into(), top, bottom, invariants })
}

fn first_outside(g: &MixedSubgroup, h: &MixedSubgroup) -> Option<Vec<Rat>> {
    g.space().basis().iter().chain(g.lattice()).find(|v| !h.contains(v)).cloned()
}

fn inclusion(name: String, g: &MixedSubgroup, h: &MixedSubgroup) -> GridCheck {
    let witness = first_outside(g, h);
    GridCheck { name, holds: witness.is_none(), witness }
}

fn equality(name: String, g: &MixedSubgroup, h: &MixedSubgroup) -> GridCheck {
    let witness = first_outside(g, h).or_else(|| first_outside(h, g));
    GridCheck { name, holds: witness.is_none(), witness }
}

/// Checks that `0 -> a -f-> b -g-> c -> 0` is a well-defined short exact sequence.
fn short_exact(label: &str, a: &GridNode, f: &RatMatrix, b: &GridNode, g: &RatMatrix, c: &GridNode) -> Vec<GridCheck> {
    let mut out = Vec::new();
    out.push(inclusion(format!("{}: first map well defined", label), &a.top.image(f), &b.top));
    out.push(inclusion(format!("{}: first map respects relations", label), &a.bottom.image(f), &b.bottom));
    out.push(inclusion(format!("{}: second map well defined", label), &b.top.image(g), &c.top));
    out.push(inclusion(format!("{}: second map respects relations", label), &b.bottom.image(g), &c.bottom));
    let kernel_f = b.bottom.preimage(f).intersection(&a.top);
    out.push(inclusion(format!("{}: injective", label), &kernel_f, &a.bottom));
    let kernel_g = c.bottom.preimage(g).intersection(&b.top);
    let image_f = a.top.image(f).sum(&b.bottom);
    out.push(equality(format!("{}: exact in the middle", label), &kernel_g, &image_f));
    let image_g = b.top.image(g).sum(&c.bottom);
    out.push(inclusion(format!("{}: surjective", label), &c.top, &image_g));
    out
}

/// Checks `g2 f1 = f2 g1` on the representatives of `a`, modulo the relations of the target.
fn commutes(label: &str, a: &GridNode, path1: &RatMatrix, path2: &RatMatrix, target: &GridNode) -> GridCheck {
    let diff = path1.sub_mat(path2);
    inclusion(format!("{}: square commutes", label), &a.top.image(&diff), &target.bottom)
}

/// Projections of `F^n` onto `E` and onto the span of `I` along the other
/// and along a coordinate complement.
fn projections(n: usize, e: &Subspace, i: &Subspace) -> Result<(RatMatrix, RatMatrix)> {
    if e.intersection(i).dim() != 0 {
        return Err(Error::InvalidInput("the grid needs E and the span of I to be independent".into()));
    }
    let mut cols: Vec<Vec<Rat>> = e.basis().to_vec();
    cols.extend(i.basis().iter().cloned());
    let mut span = e.sum(i);
    for j in 0..n {
        if span.dim() == n {
            break;
        }
        let mut u = alloc::vec![Rat::zero(); n];
        u[j] = Rat::one();
        if !span.contains(&u) {
            span = span.sum(&Subspace::span(n, core::slice::from_ref(&u)));
            cols.push(u);
        }
    }
    let q = RatMatrix::from_columns(n, &cols);
    let q_inv = inverse(&q).expect("basis of the ambient space");
    let mut pe = RatMatrix::zeros(n, n);
    let mut pi = RatMatrix::zeros(n, n);
    for j in 0..e.dim() {
        pe.set(j, j, Rat::one());
    }
    for j in e.dim()..e.dim() + i.dim() {
        pi.set(j, j, Rat::one());
    }
    Ok((q.mul_mat(&pe).mul_mat(&q_inv), q.mul_mat(&pi).mul_mat(&q_inv)))
}

/// Computes the nine groups in degree `k` and checks every row and column.
/// In degree 0 the checks are still computed but carry no guarantee.
pub fn compute_grid(p: &SparkComplex, k: usize) -> Result<GridReport> {
    if k > p.top_degree() {
        return Err(Error::DegreeOutOfRange { degree: k, dim: p.top_degree() });
    }
    let f = p.f();
    let n0 = p.dim(k);
    let n1 = p.dim(k + 1);
    let d = f.differential(k);
    let sub = |s: Subspace| MixedSubgroup::from_subspace(s);
    let z0 = sub(f.cocycle_space(k));
    let b0 = sub(f.coboundary_space(k));
    let b1 = sub(f.coboundary_space(k + 1));
    let z1 = sub(f.cocycle_space(k + 1));
    let e0 = sub(p.e(k));
    let e1 = sub(p.e(k + 1));
    let i0 = p.i(k);
    let i1 = p.i(k + 1);
    let zi0 = i0.intersection(&z0);
    let zi1 = i1.intersection(&z1);
    let di0 = i0.image(&d);
    let be1 = e0.image(&d);

    let (pe, pi) = projections(n1, &p.e(k + 1), &Subspace::span(n1, i1.lattice()))?;
    let phi = pe.mul_mat(&d);
    let r = pi.mul_mat(&d).neg();
    let id0 = RatMatrix::identity(n0);
    let id1 = RatMatrix::identity(n1);

    let rel0 = b0.sum(&i0);
    let tl = node("H(F)/H_I(F)", z0.clone(), b0.sum(&zi0))?;
    let tm = node("Ĥ_E", e0.sum(&rel0), rel0.clone())?;
    let tr = node("dE", be1.clone(), MixedSubgroup::zero(n1))?;
    let ml = node("H(F/I)", i1.preimage(&d), rel0.clone())?;
    let mm = node("Ĥ", e1.sum(&i1).preimage(&d), rel0.clone())?;
    let mr = node("Z_I", e1.intersection(&b1.sum(&i1)), MixedSubgroup::zero(n1))?;
    let bl = node("H(F,I)", zi1.intersection(&b1), di0.clone())?;
    let bm = node("H(I)", zi1.clone(), di0)?;
    let br = node("H_I(F)", zi1.sum(&b1), b1)?;

    let mut checks = Vec::new();
    checks.extend(short_exact("top row", &tl, &id0, &tm, &phi, &tr));
    checks.extend(short_exact("middle row", &ml, &id0, &mm, &phi, &mr));
    checks.extend(short_exact("bottom row", &bl, &id1, &bm, &id1, &br));
    checks.extend(short_exact("left column", &tl, &id0, &ml, &r, &bl));
    checks.extend(short_exact("middle column", &tm, &id0, &mm, &r, &bm));
    checks.extend(short_exact("right column", &tr, &id1, &mr, &id1, &br));
    checks.push(commutes("upper left", &tl, &id0, &id0, &mm));
    checks.push(commutes("upper right", &tm, &phi, &phi, &mr));
    checks.push(commutes("lower left", &ml, &r, &r, &bm));
    checks.push(commutes("lower right", &mm, &phi, &r, &br));

    Ok(GridReport { degree: k, nodes: alloc::vec![tl, tm, tr, ml, mm, mr, bl, bm, br], checks })
}
