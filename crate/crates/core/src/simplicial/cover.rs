use alloc::vec;
use alloc::vec::Vec;

use super::{SimplicialComplex, Subdivision};
use crate::error::{Error, Result};

/// The vertex-star cover of `K`, realized on `Sd^m K` for `m >= 1`.
///
/// At depth 1 the element `U_σ` attached to a simplex `σ` of `K` is the
/// subcomplex of flags `τ_0 ⊂ ... ⊂ τ_k` with `σ ⊆ τ_0`; it is a cone on the
/// barycenter of `σ`, hence contractible. At depth `m` it is the subdivision
/// of the depth-1 element. Vertex elements `U_v` cover, and
/// `U_{v_0} ∩ ... ∩ U_{v_p} = U_{[v_0..v_p]}`, so the nerve is `K` itself.
#[derive(Clone, Debug)]
pub struct StarCover {
    pub subdivision: Subdivision,
    /// For each simplex of `Sd^m K`, the smallest flag element of its first
    /// carrier: the simplex of `K` whose elements cover it are exactly its vertices.
    lowest: Vec<Vec<(usize, usize)>>,
    /// `members[p][σ][q]`: ascending indices of the `q`-simplices of `U_σ`.
    members: Vec<Vec<Vec<Vec<usize>>>>,
}

impl StarCover {
    pub fn new(base: &SimplicialComplex, depth: usize) -> Result<Self> {
        if depth == 0 {
            return Err(Error::InvalidInput("the star cover needs at least one subdivision".into()));
        }
        let subdivision = Subdivision::new(base, depth);
        let first = &subdivision.levels()[0];
        let fine = &subdivision.complex;
        let sd1 = &first.target;
        let lowest: Vec<Vec<(usize, usize)>> = (0..=fine.dim())
            .map(|q| {
                (0..fine.count(q))
                    .map(|i| {
                        let (d, j) = subdivision.first_carrier[q][i];
                        let v0 = sd1.simplex(d, j)[0];
                        first.source_of_vertex(v0)
                    })
                    .collect()
            })
            .collect();
        let mut members: Vec<Vec<Vec<Vec<usize>>>> = (0..=base.dim())
            .map(|p| vec![vec![Vec::new(); fine.dim() + 1]; base.count(p)])
            .collect();
        for q in 0..=fine.dim() {
            for i in 0..fine.count(q) {
                let (d, j) = lowest[q][i];
                let t = base.simplex(d, j);
                for mask in 1u64..(1u64 << t.len()) {
                    let face: Vec<usize> = (0..t.len()).filter(|b| mask & (1 << b) != 0).map(|b| t[b]).collect();
                    let p = face.len() - 1;
                    let f = base.index_of(&face).expect("face of a simplex");
                    members[p][f][q].push(i);
                }
            }
        }
        Ok(StarCover { subdivision, lowest, members })
    }

    pub fn base(&self) -> &SimplicialComplex {
        &self.subdivision.base
    }

    pub fn fine(&self) -> &SimplicialComplex {
        &self.subdivision.complex
    }

    pub fn depth(&self) -> usize {
        self.subdivision.depth
    }

    /// Ascending `q`-simplex indices of the intersection labelled by `(p, σ)`.
    pub fn members(&self, p: usize, sigma: usize, q: usize) -> &[usize] {
        self.members[p][sigma].get(q).map_or(&[], |v| v.as_slice())
    }

    pub fn contains(&self, p: usize, sigma: usize, q: usize, s: usize) -> bool {
        self.members(p, sigma, q).binary_search(&s).is_ok()
    }

    /// Position of `s` within `members(p, σ, q)`.
    pub fn local_index(&self, p: usize, sigma: usize, q: usize, s: usize) -> Option<usize> {
        self.members(p, sigma, q).binary_search(&s).ok()
    }

    /// The simplex of `K` (as `(dim, index)`) whose faces label exactly the
    /// cover elements containing the fine simplex `(q, s)`.
    pub fn lowest(&self, q: usize, s: usize) -> (usize, usize) {
        self.lowest[q][s]
    }

    /// Intersection as a standalone complex (reindexed), for audits.
    pub fn intersection_complex(&self, p: usize, sigma: usize) -> Option<SimplicialComplex> {
        let fine = self.fine();
        let top: Vec<Vec<usize>> = (0..=fine.dim())
            .flat_map(|q| self.members(p, sigma, q).iter().map(move |&s| fine.simplex(q, s).to_vec()))
            .collect();
        if top.is_empty() {
            return None;
        }
        let mut verts: Vec<usize> = self.members(p, sigma, 0).iter().map(|&s| fine.simplex(0, s)[0]).collect();
        verts.sort_unstable();
        let relabel = |v: usize| verts.binary_search(&v).expect("vertex of subcomplex");
        let facets: Vec<Vec<usize>> = top.iter().map(|s| s.iter().map(|&v| relabel(v)).collect()).collect();
        // closure of all simplices; duplicates are impossible since each appears once
        SimplicialComplex::new(&maximal(facets)).ok()
    }
}

fn maximal(mut sets: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    sets.sort_by_key(|s| core::cmp::Reverse(s.len()));
    let mut out: Vec<Vec<usize>> = Vec::new();
    for s in sets {
        if !out.iter().any(|t| s.iter().all(|v| t.contains(v))) {
            out.push(s);
        }
    }
    out
}

/// Builds the star cover at the given depth.
pub fn star_cover(k: &SimplicialComplex, depth: usize) -> Result<StarCover> {
    StarCover::new(k, depth)
}
