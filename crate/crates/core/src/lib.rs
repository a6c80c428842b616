//! Computational toolkit for spectral Turán problems on small graphs.
//!
//! Graphs have at most 62 vertices and one `u64` adjacency row per vertex.
//! The modules build on one another: [`graph`] and [`constructions`] at the
//! bottom, then [`decomposition`], [`spectral`], [`census`] and
//! [`criticality`].

pub mod census;
pub mod constructions;
pub mod criticality;
pub mod decomposition;
pub mod error;
pub mod float17;
pub mod graph;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::{CanonicalLabel, Graph};
