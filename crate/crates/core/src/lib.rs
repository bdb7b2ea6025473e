//! Graph-encoded manifolds.
//!
//! A `(d+1)`-regular properly edge-colored graph encodes a `d`-dimensional
//! simplicial cell complex. This crate validates such graphs, traces their
//! regular embeddings on surfaces, enumerates the semi-equivelar face types
//! a surface of given Euler characteristic admits, checks manifold criteria,
//! computes integer homology and searches exhaustively for small graphs of a
//! prescribed type.

pub mod complex;
pub mod embedding;
pub mod fixtures;
pub mod gemfile;
pub mod graph;
pub mod search;
pub mod snf;
pub mod types;

pub use graph::{ColorSet, ColoredGraph};
