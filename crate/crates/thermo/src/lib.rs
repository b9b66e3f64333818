//! Thermodynamic quantities at finite depth: partition sums, pressure tables
//! with one-sided bounds, cylinder ratio tables, periodic orbit measures and
//! the hyperbolicity comparison.

pub mod bounds;
pub mod gibbs;
pub mod hyperbolic;
pub mod periodic;
pub mod pressure;

pub use bounds::{binomial, binomial_bound_violation, entropy_function};
pub use gibbs::{cylinder_count_table, CylinderRow, CylinderTable};
pub use hyperbolic::{hyperbolicity_diagnostic, sup_table, HyperbolicityReport};
pub use periodic::{periodic_orbit_measure, periodic_points, Atom, PeriodicMeasure, PeriodicPoints};
pub use pressure::{
    margin_rule, partition_sum, partition_table, pressure_estimate, slope_estimate, GapFlags, MarginVerdict,
    PressureReport, PressureRow, DEFAULT_DELTA,
};
