//! Graph permanents of duplicated signed incidence matrices.
//!
//! For a connected graph with m = k(n-1) edges, drop one vertex's row
//! from the signed incidence matrix, stack the block k times and take
//! the permanent modulo k+1.  Folding the residue by r -> min(r, k+1-r)
//! gives a graph invariant; this crate computes it, machine-checks the
//! identities it satisfies (special-vertex and decompletion independence,
//! planar duality, the twist, cut-product factorizations, signed
//! orientation counts, orientation certificates a la Alon-Tarsi), and
//! reproduces a census of 4-regular graphs through 10 vertices.

pub mod canon;
pub mod census;
pub mod cli;
pub mod embedding;
pub mod error;
pub mod flows;
pub mod graphs;
pub mod identities;
pub mod invariant;
pub mod io;
pub mod permanent;

pub use error::{Error, Result};
pub use graphs::{Multigraph, Orientation};
pub use invariant::{graph_permanent, graph_permanent_with, GraphPermanent};
