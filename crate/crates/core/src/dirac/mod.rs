//! Dirac sets: four constant matrices `η^{γβ}_α` (β = 0..3) and the pair
//! `H`, `Ĥ` for which the adjoint derivative of the mixture calculus factors
//! the Klein–Gordon operator.
//!
//! Natural units ħ = c = 1. A plane wave `a e^{−i(ωt − k·x)}` turns `∂₀`
//! into `−iω` and `∂_j` into `+ik_j`; the adjoint direction flips the sign of
//! the spatial derivatives.
//!
//! The matrices are used as matrices. Reading them back as a basis product
//! table gives a non-associative algebra.

mod set;
mod wave;

pub use set::{dirac_set_from_pauli, pauli, verify_dirac_conditions, DiracSet};
pub use wave::{
    adjoint_symbol, dirac_residual, em_coupled_residual, factorization_check, forward_symbol,
    kernel_amplitude, klein_gordon_residual, phase_shift_residual, PlaneWave,
};
