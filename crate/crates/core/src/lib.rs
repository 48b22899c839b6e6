//! Internal-graph invariants for graph products of hyperfinite II₁ factors.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only pure
//! computation:
//!
//! * [`graph`]: finite simple graphs, links, stars, components, radius.
//! * [`internal`]: internal sets, internal vertices, the internal graph and
//!   H-rigidity, each with a polynomial fast path and a brute-force oracle.
//! * [`iso`]: exact graph isomorphism by backtracking.
//! * [`factor`]: symbolic factor expressions (`R`, `L(F_s)`, tensor and
//!   free products) with a replayable rewrite system.
//! * [`distinguish`]: verdicts on whether two graphs give isomorphic
//!   factors, with checkable evidence.
//! * [`families`] and [`catalog`]: named graph families and the exhaustive
//!   small-graph catalog.
//!
//! Text formats, JSON and the command line live in the `gfr` crate.

#![no_std]

extern crate alloc;

pub mod bitset;
pub mod catalog;
pub mod distinguish;
pub mod ext;
pub mod factor;
pub mod families;
pub mod graph;
pub mod internal;
pub mod iso;
pub mod label;

pub use bitset::BitSet;
pub use ext::ExtNat;
pub use graph::{Graph, GraphError};
pub use label::{Label, VertexSet};
