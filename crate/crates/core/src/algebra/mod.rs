//! The mixture algebra: multivectors over ℂ^{1+3}, products defined by a
//! rank-3 tensor, the mirror/conjugate/adjoint involutions, the metric read
//! off the mixture, and exponentials.

mod exp;
mod identities;
mod metric;
mod mirror;
mod mixture;
mod multivector;
pub(crate) mod table;

pub use exp::{bilinear_square, exp_split, mv_exp, mv_exp_with, rotate, rotor, ExpSplit, RotationMode, DEFAULT_EXP_TERMS};
pub use identities::{identity_suite, product_law_suite};
pub use metric::{is_null, is_null_with, magnitude_sq, metric_from_mixture, MetricPair};
pub use mirror::{involute, involute_with, InvolutionKind, MirrorTensor};
pub use mixture::{mv_mul, MixtureTensor};
pub use multivector::MultiVector;

/// `MixtureTensor::natural()`, under the name used elsewhere in the API.
pub fn natural_mixture() -> MixtureTensor {
    MixtureTensor::natural()
}
