use super::contour::{default_scheme, AnalyticField, Contour};
use super::quadrature::QuadratureResult;
use crate::algebra::{MixtureTensor, MultiVector};
use crate::error::{Error, Result};
use crate::linalg::C64;

/// `∫ dz g(z)`, with the differential multiplied from the left.
pub fn path_integral(
    g: &AnalyticField,
    c: &Contour,
    eta: &MixtureTensor,
) -> Result<QuadratureResult<MultiVector>> {
    let integrand = |s: f64| eta.mul(&c.tangent(s), &g.eval(&c.point(s)));
    c.quadrature.integrate(&integrand, c.breaks())
}

/// `∫ (dz ∂/∂z + ∂/∂z dz) f` with `∂/∂z = e^α ∂_α`, the derivative acting
/// on `f` only.
///
/// The integrand is a total derivative along the path, so the result depends
/// on the endpoints alone. In the anticommuting plane it equals
/// `2(f(end) − f(start))`.
pub fn corrected_path_integral(
    f: &AnalyticField,
    c: &Contour,
    eta: &MixtureTensor,
) -> Result<QuadratureResult<MultiVector>> {
    let dual = eta.dual_basis()?;
    let fd = default_scheme();
    let integrand = |s: f64| {
        let dz = c.tangent(s);
        let grad = f.gradient(&c.point(s), &fd);
        let mut acc = MultiVector::zero();
        for a in 0..eta.dim {
            let op = eta.mul(&dz, &dual[a]) + eta.mul(&dual[a], &dz);
            acc += eta.mul(&op, &grad[a]);
        }
        acc
    };
    c.quadrature.integrate(&integrand, c.breaks())
}

/// `∮ dz/z` and `∮ dz*/z*` in the complex restriction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ResiduePair {
    pub i_z: C64,
    pub i_conj: C64,
    pub sum: C64,
    pub error: f64,
}

/// Closest approach to the origin tolerated by [`residue_pair`].
pub const MIN_RADIUS: f64 = 1e-8;

pub fn residue_pair(c: &Contour) -> Result<ResiduePair> {
    let w = |s: f64| {
        let z = c.point(s);
        C64::new(z[0], z[1])
    };
    let dw = |s: f64| {
        let t = c.tangent(s).re();
        C64::new(t[0], t[1])
    };
    let closest = std::cell::Cell::new(f64::INFINITY);
    let integrand = |s: f64| {
        let z = w(s);
        closest.set(closest.get().min(z.norm()));
        let d = dw(s);
        [d / z, d.conj() / z.conj()]
    };
    let r = c.quadrature.integrate(&integrand, c.breaks())?;
    if closest.get() < MIN_RADIUS {
        return Err(Error::QuadratureFailure { intervals: r.intervals, error: f64::INFINITY });
    }
    let [i_z, i_conj] = r.value;
    Ok(ResiduePair { i_z, i_conj, sum: i_z + i_conj, error: r.error })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fd::Point;
    use std::f64::consts::PI;

    fn plane_vec(x: f64, y: f64) -> MultiVector {
        MultiVector::from_real([0.0, x, y, 0.0])
    }

    fn r_squared() -> AnalyticField {
        AnalyticField::new(|p: &Point| MultiVector::from_real([p[1] * p[1] + p[2] * p[2], 0.0, 0.0, 0.0]))
    }

    #[test]
    fn zero_integrand_gives_zero() {
        let eta = MixtureTensor::anticommuting_plane();
        let c = Contour::circle(1.0).unwrap();
        let r = path_integral(&AnalyticField::new(|_| MultiVector::zero()), &c, &eta).unwrap();
        assert_eq!(r.value, MultiVector::zero());
    }

    #[test]
    fn naive_rectangle_value() {
        let eta = MixtureTensor::anticommuting_plane();
        let c = Contour::polyline(&[plane_vec(0.0, -1.0), plane_vec(1.5, -1.0), plane_vec(1.5, 1.0), plane_vec(0.0, 1.0)]).unwrap();
        let r = path_integral(&r_squared(), &c, &eta).unwrap();
        let expect = plane_vec(0.0, 2.0 * (2.25 + 1.0 / 3.0));
        assert!(r.value.dist(&expect) < 1e-12, "{}", r.value);
    }

    #[test]
    fn closed_loop_correction_vanishes() {
        let eta = MixtureTensor::anticommuting_plane();
        let f = AnalyticField::new(|p: &Point| MultiVector::from_real([p[1] * p[2], p[2].sin(), p[1].exp(), 0.0]));
        let c = Contour::arc(plane_vec(0.2, 0.1), 0.7, 0.0, 2.0 * PI, (1, 2)).unwrap();
        let r = corrected_path_integral(&f, &c, &eta).unwrap();
        assert!(r.value.max_abs() < 1e-9);
    }

    #[test]
    fn residue_orientation() {
        let ccw = residue_pair(&Contour::circle(1.0).unwrap()).unwrap();
        assert!((ccw.i_z - C64::new(0.0, 2.0 * PI)).norm() < 1e-10);
        let cw = residue_pair(&Contour::circle(1.0).unwrap().reversed()).unwrap();
        assert!((cw.i_z + C64::new(0.0, 2.0 * PI)).norm() < 1e-10);
        assert!((cw.i_conj - C64::new(0.0, 2.0 * PI)).norm() < 1e-10);
    }

    #[test]
    fn contour_through_origin_fails() {
        let c = Contour::polyline(&[MultiVector::from_real([-1.0, 0.0, 0.0, 0.0]), MultiVector::from_real([1.0, 0.0, 0.0, 0.0])]).unwrap();
        assert!(matches!(residue_pair(&c), Err(Error::QuadratureFailure { .. })));
    }
}
