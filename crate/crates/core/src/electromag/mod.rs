//! Electromagnetism and gauge fields in the natural geometry.
//!
//! Coordinates are `(t, x, y, z)` with `c = 1`. The four-potential
//! `h = φ e₀ + Aⁱ eᵢ` has derivative `(∂_t + ∂_x) h = α − E + iB`, where
//! `α = ∂_tφ + ∇·A`, `E = −(∇φ + ∂_t A)` and `B = ∇×A`. The adjoint derivative
//! of that field gives the Maxwell equations.

mod maxwell;
mod simple;
mod tensors;
mod yangmills;

pub use maxwell::{em_derivative, maxwell_residuals, EMFieldSample, FourPotential, MaxwellResiduals};
pub use simple::{simple_field_curvature, SimpleFieldCurvature};
pub use tensors::{
    faraday_from_fields, faraday_relations, perfect_fluid_contraction, poynting, poynting_direct,
    stress_energy, FaradayRelations, Poynting,
};
pub use yangmills::{
    gauge_covariance_check, yang_mills_field_tensor, CouplingForm, FieldTensor, MatrixPotentialSet,
};
