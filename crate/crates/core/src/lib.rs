//! Exact finite models of spark complexes, differential characters and
//! grundle holonomy on triangulated spaces.
//!
//! All arithmetic is exact: integers are arbitrary precision and rationals
//! stand in for the reals. Quotients such as `R/Z` are represented by a
//! rational number modulo 1.

#![no_std]

extern crate alloc;

pub mod arith;
pub mod error;
pub mod linalg;
pub mod hodge;
pub mod holonomy;
pub mod models;
pub mod simplicial;
pub mod spark;
pub mod cochain;
pub mod whitney;

pub use arith::{Int, Rat};
pub use error::Error;
