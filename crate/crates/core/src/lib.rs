//! Poset colorings of walks in directed graphs.
//!
//! A coloring of the k-walks of a digraph by a poset `P` is valid when, for
//! every walk of k + 1 vertices, the color of its first k vertices is not
//! below or equal to the color of its last k. This crate provides finite
//! posets with the antichain-lattice operator `A(P)`, the transforms that
//! trade walk length against poset size, exact colorability and
//! directed-chromatic-index solvers, and a simulator of deterministic coin
//! tossing on paths.

pub mod cli;
pub mod coloring;
pub mod digraph;
pub mod error;
pub mod generate;
pub mod io;
pub mod poset;
pub mod symmetry;

pub use coloring::{verify_coloring, Verdict, WalkColoring};
pub use digraph::{Digraph, Walk, WalkLength};
pub use error::{Error, Result};
pub use poset::{Antichain, OrderIdeal, Poset};
