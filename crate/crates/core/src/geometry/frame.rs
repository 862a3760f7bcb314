use super::{compatibility_residuals, GeometryFields};
use crate::algebra::{metric_from_mixture, MixtureTensor, MultiVector};
use crate::report::SuiteReport;
use crate::error::{Error, Result};
use crate::fd::{Domain, FiniteDifferenceScheme, Point};
use crate::linalg::{self, Mat4, Tensor3, C64, ZERO};
use std::sync::Arc;

/// A field of bases over a coordinate box. Row `a` of `eval(z)` holds the
/// components of `e_a(z)` over the constant bases, i.e. `eval(z)[a][p] = Λ^p_a`.
#[derive(Clone)]
pub struct FrameField {
    eval: Arc<dyn Fn(&Point) -> Mat4 + Send + Sync>,
    pub domain: Domain,
}

impl std::fmt::Debug for FrameField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FrameField")
            .field("domain", &self.domain)
            .finish_non_exhaustive()
    }
}

impl FrameField {
    pub fn new(eval: impl Fn(&Point) -> Mat4 + Send + Sync + 'static, domain: Domain) -> Self {
        FrameField {
            eval: Arc::new(eval),
            domain,
        }
    }

    pub fn constant(m: Mat4, domain: Domain) -> Self {
        Self::new(move |_| m, domain)
    }

    pub fn raw(&self, z: &Point) -> Mat4 {
        (self.eval)(z)
    }

    /// The frame and its inverse at `z`.
    pub fn at(&self, z: &Point) -> Result<(Mat4, Mat4)> {
        let f = (self.eval)(z);
        if !f.iter().flatten().all(|c| c.re.is_finite() && c.im.is_finite()) {
            return Err(Error::NonFinite("frame"));
        }
        let (inv, condition) = linalg::invert(&f).ok_or(Error::SingularFrame {
            condition: f64::INFINITY,
        })?;
        if condition > linalg::CONDITION_LIMIT {
            return Err(Error::SingularFrame { condition });
        }
        Ok((f, inv))
    }

    /// `e_a(z)` as a multivector over the constant bases.
    pub fn basis(&self, z: &Point, a: usize) -> MultiVector {
        MultiVector { c: (self.eval)(z)[a] }
    }

    /// Metric induced from the constant algebra: `g_{ab} = Λ^p_a Λ^q_b g'_{pq}`.
    pub fn metric(&self, base_metric: &Mat4, z: &Point) -> Mat4 {
        let f = (self.eval)(z);
        linalg::mat_mul(&linalg::mat_mul(&f, base_metric), &linalg::transpose(&f))
    }

    /// Mixture induced on the frame: `e_a e_b = η^γ_{ab}(z) e_γ`.
    pub fn mixture(&self, base: &MixtureTensor, z: &Point) -> Result<Tensor3> {
        let (f, inv) = self.at(z)?;
        let mut t = linalg::zero_tensor3();
        for a in 0..4 {
            for b in 0..4 {
                let p = base.mul(&MultiVector { c: f[a] }, &MultiVector { c: f[b] });
                let in_frame = to_frame(&p.c, &inv);
                for g in 0..4 {
                    t[g][a][b] = in_frame[g];
                }
            }
        }
        Ok(t)
    }

    /// Mirror on the frame in row form: `ē_b = m[b][ν] e_ν`.
    pub fn mirror_rows(&self, base: &MixtureTensor, z: &Point) -> Result<Mat4> {
        let (f, inv) = self.at(z)?;
        let mt = linalg::transpose(&base.mirror.m);
        Ok(linalg::mat_mul(&linalg::mat_mul(&f, &mt), &inv))
    }

    /// Components of the unit `1 = E₀` over the frame.
    pub fn identity_components(&self, z: &Point) -> Result<[C64; 4]> {
        let (_, inv) = self.at(z)?;
        Ok(inv[0])
    }

    /// A frame that agrees with `self` but is scaled by `1 + s·x^axis`, useful
    /// as a deliberately mismatched geometry.
    pub fn distorted(&self, axis: usize, s: f64) -> FrameField {
        let inner = self.eval.clone();
        FrameField::new(
            move |z| linalg::mat_scale(&inner(z), C64::new(1.0 + s * z[axis], 0.0)),
            self.domain,
        )
    }
}

/// Re-expresses constant-basis components `v_p E_p` over the frame, using
/// `E_p = inv[p][γ] e_γ`.
pub fn to_frame(v: &[C64; 4], inv: &Mat4) -> [C64; 4] {
    let mut out = [ZERO; 4];
    for p in 0..4 {
        for g in 0..4 {
            out[g] += v[p] * inv[p][g];
        }
    }
    out
}

/// `Γ^γ_{αβ}` from `e_{α,β} = Γ^γ_{αβ} e_γ`, i.e. `Γ^·_{αβ} = (∂_β Λ)_α Λ⁻¹`.
pub fn connection_from_frame(
    frame: &FrameField,
    z: &Point,
    fd: &FiniteDifferenceScheme,
) -> Result<Tensor3> {
    let (_, inv) = frame.at(z)?;
    let f = |p: &Point| frame.raw(p);
    let grad = fd.gradient(&f, z);
    let mut gamma = linalg::zero_tensor3();
    for (b, d) in grad.iter().enumerate() {
        for a in 0..4 {
            let row = to_frame(&d[a], &inv);
            for g in 0..4 {
                gamma[g][a][b] = row[g];
            }
        }
    }
    Ok(gamma)
}

/// The connection of a frame together with the basis divergences
/// `e^β e_{α,β} = W_α^δ e_δ` and `e^β e^α_{,β} = M^α_δ e^δ`.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameConnection {
    pub gamma: Tensor3,
    /// `w[α][δ] = W_α^δ`.
    pub w: Mat4,
    /// `m[α][δ] = M^α_δ`.
    pub m: Mat4,
}

pub fn frame_connection(
    frame: &FrameField,
    base: &MixtureTensor,
    z: &Point,
    fd: &FiniteDifferenceScheme,
) -> Result<FrameConnection> {
    let gamma = connection_from_frame(frame, z, fd)?;
    let (_, inv) = frame.at(z)?;
    let duals_at = |p: &Point| -> [MultiVector; 4] {
        let rows = frame.raw(p);
        let mut out = [MultiVector::zero(); 4];
        for a in 0..4 {
            out[a] = base
                .inverse(&MultiVector { c: rows[a] })
                .unwrap_or(MultiVector {
                    c: [C64::new(f64::NAN, 0.0); 4],
                });
        }
        out
    };
    let duals = duals_at(z);
    if duals.iter().any(|d| !d.is_finite()) {
        return Err(Error::SingularFrame {
            condition: f64::INFINITY,
        });
    }
    let basis_fn = |p: &Point| frame.raw(p);
    let basis_grad = fd.gradient(&basis_fn, z);
    let dual_fn = |p: &Point| duals_at(p).map(|d| d.c);
    let dual_grad = fd.gradient(&dual_fn, z);

    // Dual-basis components of a constant-basis vector: solve v = x_δ e^δ.
    let mut dual_rows = linalg::zero_mat();
    for d in 0..4 {
        dual_rows[d] = duals[d].c;
    }
    let dual_inv = linalg::invert(&dual_rows)
        .ok_or(Error::SingularFrame {
            condition: f64::INFINITY,
        })?
        .0;

    let mut w = linalg::zero_mat();
    let mut m = linalg::zero_mat();
    for a in 0..4 {
        let mut sw = MultiVector::zero();
        let mut sm = MultiVector::zero();
        for (b, dual) in duals.iter().enumerate() {
            sw += base.mul(dual, &MultiVector { c: basis_grad[b][a] });
            sm += base.mul(dual, &MultiVector { c: dual_grad[b][a] });
        }
        w[a] = to_frame(&sw.c, &inv);
        m[a] = to_frame(&sm.c, &dual_inv);
    }
    Ok(FrameConnection { gamma, w, m })
}

fn nan_tensor() -> Tensor3 {
    [[[C64::new(f64::NAN, 0.0); 4]; 4]; 4]
}

fn nan_mat() -> Mat4 {
    [[C64::new(f64::NAN, 0.0); 4]; 4]
}

/// Compatibility residuals of the metric, mixture and mirror induced by
/// `frame`, against the connection of `connection_frame` (normally the same
/// frame). Points where either frame is singular yield NaN residuals, which
/// fail their checks.
pub fn frame_compatibility(
    frame: &FrameField,
    connection_frame: &FrameField,
    base: &MixtureTensor,
    points: &[Point],
    fd: &FiniteDifferenceScheme,
    tol: f64,
) -> SuiteReport {
    let base_metric = match metric_from_mixture(base, &base.mirror) {
        Ok(g) => g.lower,
        Err(_) => nan_mat(),
    };
    let metric = |p: &Point| frame.metric(&base_metric, p);
    let mixture = |p: &Point| frame.mixture(base, p).unwrap_or_else(|_| nan_tensor());
    let connection =
        |p: &Point| connection_from_frame(connection_frame, p, fd).unwrap_or_else(|_| nan_tensor());
    let mirror = |p: &Point| frame.mirror_rows(base, p).unwrap_or_else(|_| nan_mat());
    let identity = |p: &Point| {
        frame
            .identity_components(p)
            .unwrap_or([C64::new(f64::NAN, 0.0); 4])
    };
    let fields = GeometryFields {
        metric: &metric,
        mixture: &mixture,
        connection: &connection,
        mirror: &mirror,
        identity: &identity,
    };
    compatibility_residuals(&fields, points, fd, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::PolynomialMatrix;
    use crate::sampling::Sampler;

    fn unit_box() -> Domain {
        Domain::new([-1.0; 4], [1.0; 4])
    }

    #[test]
    fn constant_frame_has_no_connection() {
        let f = FrameField::constant(linalg::identity(), unit_box());
        let g = connection_from_frame(&f, &[0.1, 0.2, 0.3, 0.4], &FiniteDifferenceScheme::new(1e-3)).unwrap();
        assert_eq!(linalg::max_abs_t3(&g), 0.0);
    }

    #[test]
    fn exponential_scaling_gives_trace_connection() {
        let h = [0.3, -0.2, 0.5, 0.1];
        let f = FrameField::new(
            move |z| {
                let s: f64 = (0..4).map(|b| h[b] * z[b]).sum();
                linalg::mat_scale(&linalg::identity(), C64::new(s.exp(), 0.0))
            },
            unit_box(),
        );
        let fd = FiniteDifferenceScheme::new(1e-4);
        let g = connection_from_frame(&f, &[0.1, 0.0, -0.2, 0.3], &fd).unwrap();
        for m in 0..4 {
            for a in 0..4 {
                for b in 0..4 {
                    let expect = if m == a { h[b] } else { 0.0 };
                    assert!((g[m][a][b] - C64::new(expect, 0.0)).norm() < 1e-7);
                }
            }
        }
    }

    fn analytic_connection(p: &PolynomialMatrix, z: &Point) -> Tensor3 {
        let inv = linalg::invert(&p.eval(z)).unwrap().0;
        let mut g = linalg::zero_tensor3();
        for b in 0..4 {
            let d = p.derivative(b).eval(z);
            for a in 0..4 {
                let row = to_frame(&d[a], &inv);
                for c in 0..4 {
                    g[c][a][b] = row[c];
                }
            }
        }
        g
    }

    #[test]
    fn polynomial_frame_converges_at_second_order() {
        let mut s = Sampler::new(8);
        let p = PolynomialMatrix::near_identity(&mut s, 3, 0.2);
        let q = p.clone();
        let frame = FrameField::new(move |z| q.eval(z), unit_box());
        let z = [0.2, -0.1, 0.3, 0.05];
        let exact = analytic_connection(&p, &z);
        let err = |h: f64| {
            let g = connection_from_frame(&frame, &z, &FiniteDifferenceScheme::new(h)).unwrap();
            linalg::max_abs_diff_t3(&g, &exact)
        };
        let ratio = err(0.02) / err(0.01);
        assert!((3.2..4.8).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn singular_frame_is_rejected() {
        let f = FrameField::constant(linalg::zero_mat(), unit_box());
        assert!(matches!(f.at(&[0.0; 4]), Err(Error::SingularFrame { .. })));
    }

    #[test]
    fn divergences_vanish_for_constant_frames() {
        let base = MixtureTensor::natural();
        let f = FrameField::constant(linalg::identity(), unit_box());
        let c = frame_connection(&f, &base, &[0.0; 4], &FiniteDifferenceScheme::new(1e-3)).unwrap();
        assert_eq!(linalg::max_abs_mat(&c.w), 0.0);
        assert_eq!(linalg::max_abs_mat(&c.m), 0.0);
    }

    #[test]
    fn divergence_of_scaled_frame() {
        // e_a = s(x) E_a gives e^β e_{a,β} = Σ_β (∂_β s / s) E_β E_a, and E_β = e_β / s.
        let base = MixtureTensor::natural();
        let k = 0.4;
        let f = FrameField::new(
            move |z| linalg::mat_scale(&linalg::identity(), C64::new((k * z[1]).exp(), 0.0)),
            unit_box(),
        );
        let z = [0.0, 0.2, 0.0, 0.0];
        let c = frame_connection(&f, &base, &z, &FiniteDifferenceScheme::new(1e-4)).unwrap();
        let scale = (k * z[1]).exp();
        let expect = base.mul(&MultiVector::basis(1), &MultiVector::basis(0)).scale_real(k / scale);
        for d in 0..4 {
            assert!((c.w[0][d] - expect.c[d]).norm() < 1e-7);
        }
    }
}
