//! Computational companion for graph products of groups and q-Gaussian
//! algebras.
//!
//! - [`graphs`]: finite simple graphs, links, stars, rigidity and a small
//!   exhaustive isomorphism search.
//! - [`coxeter`]: right-angled Coxeter groups, reduced words and ShortLex
//!   normal forms.
//! - [`graph_product`]: graph products of free, cyclic and infinite cyclic
//!   vertex groups, and the finite-index construction that replaces one vertex
//!   group by a subgroup of index `k` and duplicates the vertices outside its
//!   star.
//! - [`correlation`]: label-level invariants of graph products over rigid
//!   graphs.
//! - [`qfock`]: truncated q-deformed Fock spaces with dense per-level
//!   matrices.

pub mod budget;
pub mod correlation;
pub mod coxeter;
pub mod free_group;
pub mod graph_product;
pub mod graphs;
pub mod qfock;

pub use budget::Budget;
pub use graphs::{SimpleGraph, VertexSet};
