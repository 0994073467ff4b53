//! Exact integer and rational linear algebra.

pub mod lattice;
pub mod matrix;
pub mod mixed;
pub mod rational;
pub mod snf;

pub use lattice::{integer_kernel, lattice_basis, lattice_coords};
pub use matrix::{IntMatrix, Matrix, RatMatrix};
pub use mixed::{mixed_kernel, mixed_solve, quotient_invariants, GroupInvariants, MixedSubgroup};
pub use rational::{nullspace, pseudoinverse, rank, rref, solve, Subspace};
pub use snf::{hermite_solve, smith_normal_form, AbelianGroupInvariants, IntegerSolution, SnfDecomposition};

/// Moore-Penrose pseudoinverse; alias kept for callers thinking of Green operators.
pub fn rational_pseudoinverse(a: &RatMatrix) -> RatMatrix {
    pseudoinverse(a)
}
