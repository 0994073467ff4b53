use alloc::vec::Vec;

use super::chain::boundary;
use super::{Chain, SimplicialComplex, Subdivision};
use crate::error::{Error, Result};

/// Cells dual to a triangulated oriented closed manifold, as chains on its
/// first barycentric subdivision.
///
/// The top cell `e_α` dual to a vertex is the star of `α` in the subdivision,
/// oriented like the manifold. For a simplex `[α_0 .. α_l]` (ascending), the
/// cell `e_{α_0..α_l}` is the part of `∂ e_{α_0..α_{l-1}}` made of flags
/// starting at that simplex, so it is oriented as part of that boundary.
#[derive(Clone, Debug)]
pub struct DualCellComplex {
    pub subdivision: Subdivision,
    /// `cells[l][σ]` is an `(n - l)`-chain on the subdivision.
    cells: Vec<Vec<Chain>>,
}

impl DualCellComplex {
    pub fn base(&self) -> &SimplicialComplex {
        &self.subdivision.base
    }

    pub fn cell(&self, l: usize, sigma: usize) -> &Chain {
        &self.cells[l][sigma]
    }

    /// Base simplices `(dim, index)` whose barycenters are vertices of the cell.
    pub fn cell_vertices(&self, l: usize, sigma: usize) -> Vec<(usize, usize)> {
        let fine = &self.subdivision.complex;
        let map = &self.subdivision.levels()[0];
        let c = &self.cells[l][sigma];
        let mut vs: Vec<(usize, usize)> = c
            .terms()
            .flat_map(|(i, _)| fine.simplex(c.degree, i).iter().map(|&v| map.source_of_vertex(v)))
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Top cells (vertices of the base) whose closure contains the cell of `(l, σ)`.
    pub fn incident_top_cells(&self, l: usize, sigma: usize) -> Vec<usize> {
        let verts = self.cell_vertices(l, sigma);
        (0..self.base().vertex_count())
            .filter(|&a| {
                let tops = self.cell_vertices(0, a);
                verts.iter().all(|v| tops.binary_search(v).is_ok())
            })
            .collect()
    }
}

pub fn dual_cells(k: &SimplicialComplex) -> Result<DualCellComplex> {
    if !k.is_oriented() {
        return Err(Error::InvalidComplex("dual cells need an oriented closed manifold".into()));
    }
    let n = k.dim();
    let subdivision = Subdivision::new(k, 1);
    let fine = subdivision.complex.clone();
    let map = subdivision.levels()[0].clone();
    let fund = subdivision.subdivide_chain(&k.fundamental_chain().expect("oriented"));
    let starts_at = |deg: usize, i: usize, b: usize| fine.simplex(deg, i)[0] == b;
    let mut cells: Vec<Vec<Chain>> = Vec::with_capacity(n + 1);
    let top: Vec<Chain> = (0..k.vertex_count())
        .map(|a| {
            let b = map.barycenter(0, a);
            fund.restrict(|i| starts_at(n, i, b))
        })
        .collect();
    cells.push(top);
    for l in 1..=n {
        let mut level = Vec::with_capacity(k.count(l));
        for s in 0..k.count(l) {
            let verts = k.simplex(l, s);
            let parent = k.index_of(&verts[..l]).expect("face");
            let b = map.barycenter(l, s);
            let bd = boundary(&fine, &cells[l - 1][parent]);
            let cell = bd.restrict(|i| starts_at(n - l, i, b));
            if cell.is_zero() {
                return Err(Error::InvalidComplex("degenerate dual cell".into()));
            }
            level.push(cell);
        }
        cells.push(level);
    }
    Ok(DualCellComplex { subdivision, cells })
}
