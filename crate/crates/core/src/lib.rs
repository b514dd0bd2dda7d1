//! Freeness and supersolvability of ψ-graphical hyperplane arrangements.
//!
//! A vertex-weighted graph `(G, ψ)` defines the arrangement of hyperplanes
//! `z = 0`, `x_i = x_j` for every edge and `x_i = a z` for every `a ∈ ψ(i)`.
//! The crate decides freeness combinatorially (weighted elimination
//! orderings) and certifies every verdict: free instances come with an
//! explicit basis of logarithmic derivations checked by Saito's criterion,
//! non-free ones with a forbidden induced subgraph.

pub mod error;
pub mod arrangement;
pub mod exact;
pub mod io;
pub mod logderiv;
pub mod multiarr;
pub mod random;
pub mod sweep;
pub mod wgraph;

pub use error::{Error, Result};
