//! Mixture algebra on the complex quaternions ℂ^{1+3}.
//!
//! A product of two elements is defined by a rank-3 complex tensor, the
//! *mixture* η, so that `e_α e_β = η^γ_{αβ} e_γ`. On top of that algebra the
//! crate builds a covariant calculus (connections, curvature, compatibility
//! residuals), an analytic calculus on contours, and residual checks for the
//! Dirac, Klein–Gordon, Maxwell and Yang–Mills equations and for weak-field
//! geodesic motion.
//!
//! Every verification routine returns a [`SuiteReport`] that records the
//! residual and tolerance of each check.
//!
//! ```
//! use cqmix::{MixtureTensor, MultiVector};
//!
//! let eta = MixtureTensor::natural();
//! let p = eta.mul(&MultiVector::basis(1), &MultiVector::basis(2));
//! assert_eq!(p, MultiVector::basis(3).scale(num_complex::Complex64::i()));
//! ```

pub mod algebra;
pub mod analytic;
pub mod dirac;
pub mod electromag;
pub mod error;
pub mod fd;
pub mod geometry;
pub mod linalg;
pub mod report;
pub mod sampling;
pub mod weakfield;

pub use algebra::{
    exp_split, involute, is_null, magnitude_sq, metric_from_mixture, mv_exp, mv_mul, rotate,
    ExpSplit, InvolutionKind, MetricPair, MirrorTensor, MixtureTensor, MultiVector, RotationMode,
};
pub use error::{Error, Result};
pub use fd::{Domain, FdOrder, FiniteDifferenceScheme, Point};
pub use linalg::{Mat4, Tensor3, Tensor4, C64};
pub use report::{Check, SuiteReport};
