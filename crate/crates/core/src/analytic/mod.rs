//! Analytic calculus on contours: the proper and adjoint derivatives, naive
//! and corrected path integrals, residues and steepest-descent conditions.
//!
//! The complex-variable sanity cases use [`MixtureTensor::complex_plane`]
//! with `z = x e₀ + y e₁`; the vector path integrals use
//! [`MixtureTensor::anticommuting_plane`] with `r = x e₁ + y e₂`.
//!
//! [`MixtureTensor::complex_plane`]: crate::algebra::MixtureTensor::complex_plane
//! [`MixtureTensor::anticommuting_plane`]: crate::algebra::MixtureTensor::anticommuting_plane

mod contour;
mod derivative;
mod descent;
mod integral;
mod quadrature;

pub use contour::{default_scheme, AnalyticField, Contour};
pub use derivative::{analyticity_residual, flat, proper_derivative};
pub use descent::{descent_conditions, Descent};
pub use integral::{corrected_path_integral, path_integral, residue_pair, ResiduePair, MIN_RADIUS};
pub use quadrature::{Integrand, Quadrature, QuadratureResult};
