use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::{Chain, SimplicialComplex};
use crate::arith::{rat, Rat};
use crate::Int;

/// Offsets turning `(dim, index)` of a simplex of `k` into the index of its
/// barycenter in the subdivision. Barycenters are numbered by dimension
/// first, so the ascending vertex order of a flag is the flag order.
fn barycenter_offsets(k: &SimplicialComplex) -> Vec<usize> {
    let mut off = Vec::with_capacity(k.dim() + 2);
    let mut acc = 0;
    for d in 0..=k.dim() {
        off.push(acc);
        acc += k.count(d);
    }
    off.push(acc);
    off
}

/// Which simplex of the source a subdivision vertex is the barycenter of.
pub fn barycenter_source(offsets: &[usize], v: usize) -> (usize, usize) {
    let d = offsets.iter().rposition(|&o| o <= v).expect("offset table");
    (d, v - offsets[d])
}

/// The subdivision chain map from a complex to its barycentric subdivision.
#[derive(Clone, Debug)]
pub struct SubdivisionMap {
    pub source: SimplicialComplex,
    pub target: SimplicialComplex,
    images: Vec<Vec<Chain>>,
    offsets: Vec<usize>,
}

impl SubdivisionMap {
    /// Image of the `(k, i)` simplex.
    pub fn image(&self, k: usize, i: usize) -> &Chain {
        &self.images[k][i]
    }

    pub fn apply(&self, c: &Chain) -> Chain {
        let mut out = Chain::zero(c.degree);
        for (i, x) in c.terms() {
            for (j, y) in self.images[c.degree][i].terms() {
                out.add_term(j, &(x * y));
            }
        }
        out
    }

    /// Subdivision vertex sitting at the barycenter of `(dim, index)`.
    pub fn barycenter(&self, dim: usize, index: usize) -> usize {
        self.offsets[dim] + index
    }

    /// The source simplex whose barycenter is vertex `v`.
    pub fn source_of_vertex(&self, v: usize) -> (usize, usize) {
        barycenter_source(&self.offsets, v)
    }

    /// Simplicial approximation of the identity `Sd K -> K`: a barycenter goes to
    /// the smallest vertex of its simplex.
    pub fn approximation_vertex(&self, v: usize) -> usize {
        let (d, i) = self.source_of_vertex(v);
        self.source.simplex(d, i)[0]
    }
}

/// Barycentric subdivision together with its subdivision chain map.
pub fn barycentric_subdivide(k: &SimplicialComplex) -> (SimplicialComplex, SubdivisionMap) {
    let offsets = barycenter_offsets(k);
    let mut flags = Vec::new();
    for f in k.facets() {
        let mut perm: Vec<usize> = f.clone();
        permutations(&mut perm, 0, &mut |p| {
            let mut flag = Vec::with_capacity(p.len());
            let mut prefix: Vec<usize> = Vec::with_capacity(p.len());
            for &v in p {
                prefix.push(v);
                let mut s = prefix.clone();
                s.sort_unstable();
                let d = s.len() - 1;
                flag.push(offsets[d] + k.index_of(&s).expect("face of facet"));
            }
            flags.push(flag);
        });
    }
    let target = SimplicialComplex::new(&flags).expect("subdivision of a valid complex is valid");
    let mut images: Vec<Vec<Chain>> = Vec::with_capacity(k.dim() + 1);
    images.push((0..k.count(0)).map(|v| Chain::simplex(0, target.index_of(&[offsets[0] + v]).unwrap())).collect());
    for d in 1..=k.dim() {
        let mut level = Vec::with_capacity(k.count(d));
        for i in 0..k.count(d) {
            let b = offsets[d] + i;
            let mut bd = Chain::zero(d - 1);
            for (j, &f) in k.faces(d, i).iter().enumerate() {
                let sign = Int::from(if j % 2 == 0 { 1 } else { -1 });
                for (t, x) in images[d - 1][f].terms() {
                    bd.add_term(t, &(x * &sign));
                }
            }
            let mut img = Chain::zero(d);
            for (t, x) in bd.terms() {
                let mut verts = vec![b];
                verts.extend_from_slice(target.simplex(d - 1, t));
                let (idx, s) = target.oriented_index(&verts).expect("cone simplex exists");
                img.add_term(idx, &(x * Int::from(s)));
            }
            level.push(img);
        }
        images.push(level);
    }
    let map = SubdivisionMap { source: k.clone(), target: target.clone(), images, offsets };
    (target, map)
}

fn permutations<F: FnMut(&[usize])>(v: &mut Vec<usize>, start: usize, f: &mut F) {
    if start == v.len() {
        f(v);
        return;
    }
    for i in start..v.len() {
        v.swap(start, i);
        permutations(v, start + 1, f);
        v.swap(start, i);
    }
}

/// Iterated barycentric subdivision `Sd^m K` with the geometric bookkeeping
/// the rest of the crate needs: barycentric coordinates of every vertex in
/// `K`, carriers, and the composed subdivision and approximation maps.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub base: SimplicialComplex,
    pub depth: usize,
    pub complex: SimplicialComplex,
    /// Barycentric coordinates of each vertex with respect to the base vertices.
    pub coords: Vec<Vec<Rat>>,
    /// For each simplex, the smallest base simplex containing it, as `(dim, index)`.
    pub carrier: Vec<Vec<(usize, usize)>>,
    /// Same, but with respect to the first subdivision (equal to `carrier` at depth 0).
    pub first_carrier: Vec<Vec<(usize, usize)>>,
    maps: Vec<SubdivisionMap>,
}

fn propagate_carriers(map: &SubdivisionMap, old: &[Vec<(usize, usize)>]) -> Vec<Vec<(usize, usize)>> {
    let t = &map.target;
    (0..=t.dim())
        .map(|d| {
            (0..t.count(d))
                .map(|i| {
                    let top = *t.simplex(d, i).last().unwrap();
                    let (sd, si) = map.source_of_vertex(top);
                    old[sd][si]
                })
                .collect()
        })
        .collect()
}

fn identity_carriers(k: &SimplicialComplex) -> Vec<Vec<(usize, usize)>> {
    (0..=k.dim()).map(|d| (0..k.count(d)).map(|i| (d, i)).collect()).collect()
}

impl Subdivision {
    pub fn new(base: &SimplicialComplex, depth: usize) -> Self {
        let n = base.vertex_count();
        let mut complex = base.clone();
        let mut coords: Vec<Vec<Rat>> =
            (0..n).map(|v| (0..n).map(|w| if v == w { rat(1, 1) } else { Rat::zero() }).collect()).collect();
        let mut carrier = identity_carriers(base);
        let mut first_carrier = carrier.clone();
        let mut maps = Vec::with_capacity(depth);
        for level in 0..depth {
            let (next, map) = barycentric_subdivide(&complex);
            let new_coords: Vec<Vec<Rat>> = (0..next.vertex_count())
                .map(|v| {
                    let (d, i) = map.source_of_vertex(v);
                    let verts = complex.simplex(d, i);
                    let mut c = vec![Rat::zero(); n];
                    for &w in verts {
                        for (a, b) in c.iter_mut().zip(&coords[w]) {
                            *a += b;
                        }
                    }
                    let s = rat(1, verts.len() as i64);
                    c.iter_mut().for_each(|a| *a *= &s);
                    c
                })
                .collect();
            carrier = propagate_carriers(&map, &carrier);
            first_carrier = if level == 0 { identity_carriers(&next) } else { propagate_carriers(&map, &first_carrier) };
            coords = new_coords;
            complex = next;
            maps.push(map);
        }
        // orientation data carries over when the base is oriented
        if base.is_oriented() && depth > 0 {
            if let Ok(oriented) = SimplicialComplex::new_oriented(complex.facets()) {
                complex = oriented;
            }
            let fund = maps.iter().fold(base.fundamental_chain().unwrap(), |c, m| m.apply(&c));
            let agrees = fund.terms().next().map(|(i, x)| {
                complex.orientation().map(|o| Int::from(o[i]) == *x).unwrap_or(true)
            });
            if agrees == Some(false) {
                complex = complex.with_flipped_orientation();
            }
        }
        Subdivision { base: base.clone(), depth, complex, coords, carrier, first_carrier, maps }
    }

    /// Composed subdivision map `C_*(K) -> C_*(Sd^m K)`.
    pub fn subdivide_chain(&self, c: &Chain) -> Chain {
        self.maps.iter().fold(c.clone(), |acc, m| m.apply(&acc))
    }

    /// Composed simplicial approximation `Sd^m K -> K` on vertices.
    pub fn approximation_vertex(&self, v: usize) -> usize {
        self.maps.iter().rev().fold(v, |w, m| m.approximation_vertex(w))
    }

    pub fn levels(&self) -> &[SubdivisionMap] {
        &self.maps
    }
}

impl SimplicialComplex {
    /// The same complex with the opposite orientation.
    pub fn with_flipped_orientation(mut self) -> Self {
        if let Some(o) = self.orientation_mut() {
            o.iter_mut().for_each(|s| *s = -*s);
        }
        self
    }
}
