use super::{MirrorTensor, MixtureTensor, MultiVector};
use crate::error::{Error, Result};
use crate::linalg::{self, Mat4, C64, ZERO};

/// Relative size of a vector remainder tolerated in a scalar-valued product.
pub const SCALAR_TOLERANCE: f64 = 1e-12;

/// Lower and upper metric tensors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetricPair {
    pub lower: Mat4,
    pub upper: Mat4,
}

impl MetricPair {
    pub fn minkowski() -> Self {
        let g = linalg::diag([1.0, -1.0, -1.0, -1.0].map(|x| C64::new(x, 0.0)));
        MetricPair { lower: g, upper: g }
    }

    /// Pairs a lower metric with its numerical inverse.
    pub fn from_lower(lower: Mat4) -> Result<Self> {
        let (upper, condition) = linalg::invert(&lower).ok_or(Error::SingularMetric {
            condition: f64::INFINITY,
        })?;
        if condition > linalg::CONDITION_LIMIT {
            return Err(Error::SingularMetric { condition });
        }
        Ok(MetricPair { lower, upper })
    }

    /// `z_α = g_{αβ} z^β`.
    pub fn lower_index(&self, z: &[C64; 4]) -> [C64; 4] {
        linalg::mat_vec(&self.lower, z)
    }

    /// `z^α = g^{αβ} z_β`.
    pub fn raise_index(&self, z: &[C64; 4]) -> [C64; 4] {
        linalg::mat_vec(&self.upper, z)
    }

    /// `‖g_{αβ} g^{βγ} − 1‖`.
    pub fn inverse_defect(&self) -> f64 {
        linalg::max_abs_diff_mat(&linalg::mat_mul(&self.lower, &self.upper), &linalg::identity())
    }

    /// `z^α z^β g_{αβ}`.
    pub fn quadratic(&self, z: &[C64; 4]) -> C64 {
        let zl = self.lower_index(z);
        (0..4).map(|a| z[a] * zl[a]).sum()
    }
}

/// `|a|² = a·ā`, the e₀ coefficient of the product with the mirror.
pub fn magnitude_sq(a: &MultiVector, eta: &MixtureTensor) -> Result<C64> {
    let p = eta.mul(a, &eta.mirror.apply(a));
    let remainder = p.c[1..].iter().map(|z| z.norm()).fold(0.0, f64::max);
    let scale = a.norm().powi(2).max(1.0);
    if remainder > SCALAR_TOLERANCE * scale {
        return Err(Error::NonScalar { remainder });
    }
    Ok(p.c[0])
}

/// Whether `|a|²` vanishes within `tol` in the natural geometry.
pub fn is_null(a: &MultiVector, tol: f64) -> bool {
    is_null_with(a, &MixtureTensor::natural(), tol)
}

pub fn is_null_with(a: &MultiVector, eta: &MixtureTensor, tol: f64) -> bool {
    match magnitude_sq(a, eta) {
        Ok(m) => m.norm() <= tol,
        Err(_) => false,
    }
}

/// Reads the metric off the e₀ channel of the symmetrized mirrored products
/// `½(e_α ē_β + e_β ē_α)`, and the upper metric off the e⁰ channel of the
/// same construction over the dual basis.
pub fn metric_from_mixture(eta: &MixtureTensor, mirror: &MirrorTensor) -> Result<MetricPair> {
    let n = eta.dim;
    let mut lower = linalg::identity();
    let mut upper = linalg::identity();
    let mut remainder: f64 = 0.0;
    for a in 0..n {
        for b in 0..n {
            let ea = MultiVector::basis(a);
            let eb = MultiVector::basis(b);
            let s = eta.mul(&ea, &mirror.apply(&eb)) + eta.mul(&eb, &mirror.apply(&ea));
            let s = s.scale_real(0.5);
            lower[a][b] = s.c[0];

            let da = MultiVector::basis(a).c;
            let db = MultiVector::basis(b).c;
            let x = eta.mul_upper(&da, &mirror.apply_components(&db));
            let y = eta.mul_upper(&db, &mirror.apply_components(&da));
            let u: Vec<C64> = (0..4).map(|g| 0.5 * (x[g] + y[g])).collect();
            upper[a][b] = u[0];

            for g in 1..4 {
                remainder = remainder.max(s.c[g].norm()).max(u[g].norm());
            }
        }
    }
    if remainder > SCALAR_TOLERANCE {
        return Err(Error::NonScalarMetric { remainder });
    }
    for a in n..4 {
        for b in 0..4 {
            if a != b {
                lower[a][b] = ZERO;
                lower[b][a] = ZERO;
                upper[a][b] = ZERO;
                upper[b][a] = ZERO;
            }
        }
    }
    Ok(MetricPair { lower, upper })
}
