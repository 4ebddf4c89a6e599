//! Deterministic minimum-cut and local low-conductance-cut toolkit.
//!
//! Flow quantities are integral; conductance and bound values are ratios
//! handled through [`scalar::Scalar`].

pub mod multigraph;
pub mod oracles;
pub mod scalar;
pub mod supply;
pub mod unit_flow;
pub mod excess_scaling;
pub mod inner_procedure;
pub mod kt_framework;
pub mod mincut_pipeline;
pub mod io;
pub mod generate;
pub mod report;
pub mod audit;

pub use multigraph::{CutResult, GraphError, MultiGraph, VertexId, VertexInfo, VertexKind};

/// Conductance as a float, for bound checks involving logarithms.
pub type Conductance = f64;
/// Conductance as an exact rational.
pub type ExactConductance = num_rational::Ratio<i64>;
