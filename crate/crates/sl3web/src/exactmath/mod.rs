//! Exact values of the lattice Green's functions and the hitting
//! probabilities built from them.

mod face;
mod green;
mod lattice;
mod numeric;
mod value;

pub use face::{face_type_probability, FaceProbability, Factor};
pub use green::{boundary_source, green_infinity, green_table, green_wedge, h_extended, h_point, integral_i, laplacian};
pub use lattice::{pt, LatticePointEZ};
pub use numeric::{g_value, g_value_tol, green_infinity_f64, green_wedge_f64, h_point_f64, GMode, GValue, G_MAX_TERMS, G_TOLERANCE, QUADRATURE_TOLERANCE};
pub use value::{rat, ExactValue, IntegralValue, Rational};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExactError {
    #[error("{0} lies outside the wedge x, y >= 0")]
    OutsideWedge(LatticePointEZ),
    #[error("the corner (0,0) is not a valid target")]
    Corner,
    #[error("{0} is not on either wedge ray")]
    NotBoundary(LatticePointEZ),
    #[error("{0} cannot be reached from the interior in one step")]
    Unreachable(LatticePointEZ),
    #[error("{0} is not an interior point")]
    NotInterior(LatticePointEZ),
    #[error("invalid face type: {0}")]
    InvalidType(String),
    #[error("tolerance {tolerance:e} not met after {terms} terms (estimate {estimate}, error {error:e})")]
    Tolerance { tolerance: f64, terms: usize, estimate: f64, error: f64 },
}
