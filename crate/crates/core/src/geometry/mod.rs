//! Covariant calculus over a four-dimensional coordinate box: connections
//! from frames or metrics, curvature, compatibility residuals and
//! commutation coefficients.
//!
//! Fields are evaluation callbacks sampled on demand by finite differences.

mod covariant;
mod curvature;
mod frame;
mod metric;
mod poly;

pub use covariant::{
    compatibility_residuals, covariant_derivative, mirrored_symmetric, second_order_residual,
    GeometryFields, SecondOrderResidual, Variance,
};
pub(crate) use covariant::covariant_from_parts;
pub use curvature::{
    curvature, curvature_from_parts, ricci_ansatz_check, symmetric_part_defect, CurvatureTensors,
};
pub use frame::{
    connection_from_frame, frame_compatibility, frame_connection, to_frame, FrameConnection, FrameField,
};
pub use metric::{christoffel_from_metric, commutation_coefficients, CommutationSplit};
pub use poly::{Monomial, Polynomial, PolynomialMatrix};
