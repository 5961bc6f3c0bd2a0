//! Weighted and anchored crossing numbers: exact solvers, gadget generators
//! and the anchored to almost-planar transformation.

pub mod drawing;
pub mod error;
pub mod fixtures;
pub mod frame;
pub mod geometry;
pub mod graph;
pub mod io;
pub mod planarity;
pub mod poly;
pub mod qgrid;
pub mod render;
pub mod sat;
pub mod transform;
pub mod pp;
pub mod solver;

pub use error::{Error, Result};
pub use graph::{expand_weights, AnchoredInstance, Color, CnfFormula, Edge, PPInstance, WeightedMultigraph};
pub use poly::OmegaPoly;
