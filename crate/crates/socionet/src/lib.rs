//! Daily friendship dynamics on a synthetic population, and tools for
//! quantifying how the resulting social graphs differ.
//!
//! The crate has three layers:
//!
//! * **Simulation** — [`popgen`] builds a synthetic population (households,
//!   workplaces, schools, venues); [`sim`] runs the daily interaction /
//!   friendship-decay loop and emits one binarized social graph per day.
//! * **Descriptors** — [`graph`] holds the static-graph representation and
//!   the interpretable descriptors (counts, components, clustering, degree
//!   and shortest-path distributions, network portrait).
//! * **Comparison** — [`compare`] measures distances between graphs
//!   (Wasserstein-1, portrait divergence) and between whole runs;
//!   [`heat`] provides heat-content curves on graph domains, both exactly
//!   (dense eigendecomposition) and via lazy-random-walk matrix powers, and
//!   the heat-content-asymptotics pseudometric built on them.
//!
//! Numerical code in [`heat`] and [`compare`] is generic over the scalar
//! type through the [`Real`] trait (`f32` or `f64`); the simulation layer is
//! concrete in `f64`. Aliases for the common `f64` instantiations live at
//! the crate root.

pub mod compare;
pub mod csvout;
pub mod error;
pub mod graph;
pub mod heat;
pub mod metrics;
pub mod popgen;
pub mod real;
pub mod sim;

pub use error::{Error, Result};
pub use real::Real;

/// `f64` heat-content curve, the instantiation used by the pipeline.
pub type HeatCurve = heat::HeatCurveSamples<f64>;
/// `f64` HCA coefficient vector.
pub type HcaCoefficients = heat::HcaCoefficients<f64>;
/// `f64` HCA comparison settings.
pub type HcaSettings = compare::HcaSettings<f64>;
/// `f64` all-pairs run distance matrix.
pub type DistanceMatrix = compare::DistanceMatrix<f64>;
