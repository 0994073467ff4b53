//! Finite simplicial complexes, chains, subdivision, star covers and dual cells.

mod chain;
mod complex;
mod cover;
mod dual;
pub mod fixtures;
mod homology;
mod subdivision;

pub use chain::{boundary, oriented_simplex, Chain};
pub use complex::{sort_sign, SimplicialComplex};
pub use cover::{star_cover, StarCover};
pub use dual::{dual_cells, DualCellComplex};
pub use homology::{betti_numbers, integral_homology};
pub use subdivision::{barycentric_subdivide, barycenter_source, Subdivision, SubdivisionMap};

/// Builds a complex from facets, orienting it when `oriented` is set.
pub fn build_complex(facets: &[alloc::vec::Vec<usize>], oriented: bool) -> crate::error::Result<SimplicialComplex> {
    if oriented {
        SimplicialComplex::new_oriented(facets)
    } else {
        SimplicialComplex::new(facets)
    }
}
