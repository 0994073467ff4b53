use alloc::vec::Vec;

use num_traits::One;

use super::SimplicialComplex;
use crate::linalg::{smith_normal_form, AbelianGroupInvariants};

/// Integral simplicial homology `H_0 .. H_dim`.
pub fn integral_homology(k: &SimplicialComplex) -> Vec<AbelianGroupInvariants> {
    let n = k.dim();
    let snfs: Vec<_> = (0..=n + 1).map(|d| smith_normal_form(&k.boundary_matrix(d))).collect();
    (0..=n)
        .map(|d| {
            let rank_out = if d == 0 { 0 } else { snfs[d].rank() };
            let into = &snfs[d + 1];
            AbelianGroupInvariants {
                free_rank: k.count(d) - rank_out - into.rank(),
                torsion: into.diagonal.iter().filter(|x| !x.is_one()).cloned().collect(),
            }
        })
        .collect()
}

/// Betti numbers over the rationals.
pub fn betti_numbers(k: &SimplicialComplex) -> Vec<usize> {
    integral_homology(k).iter().map(|h| h.free_rank).collect()
}
