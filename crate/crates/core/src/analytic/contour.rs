use super::quadrature::Quadrature;
use crate::algebra::MultiVector;
use crate::error::{Error, Result};
use crate::fd::{FiniteDifferenceScheme, FdOrder, FdValue, Point};
use crate::linalg::C64;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

type PathFn = Arc<dyn Fn(f64) -> MultiVector + Send + Sync>;
type FieldFn = Arc<dyn Fn(&Point) -> MultiVector + Send + Sync>;
type JacobianFn = Arc<dyn Fn(&Point) -> [MultiVector; 4] + Send + Sync>;

/// A parameterized path `s ↦ z(s)`, `s ∈ [s₀, s₁]`.
///
/// Coordinates of a point on the path are the real parts of the components
/// of `z(s)`. Kinks (polyline corners) are listed in `breaks` so quadrature
/// never straddles them.
#[derive(Clone)]
pub struct Contour {
    z: PathFn,
    dz: Option<PathFn>,
    breaks: Vec<f64>,
    pub quadrature: Quadrature,
}

impl fmt::Debug for Contour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Contour")
            .field("breaks", &self.breaks)
            .field("analytic_tangent", &self.dz.is_some())
            .field("quadrature", &self.quadrature)
            .finish()
    }
}

impl Contour {
    pub fn new(
        z: impl Fn(f64) -> MultiVector + Send + Sync + 'static,
        s0: f64,
        s1: f64,
    ) -> Result<Self> {
        if !(s0.is_finite() && s1.is_finite() && s0 < s1) {
            return Err(Error::InvalidArgument(format!("empty parameter range [{s0}, {s1}]")));
        }
        Ok(Contour { z: Arc::new(z), dz: None, breaks: vec![s0, s1], quadrature: Quadrature::default() })
    }

    pub fn with_tangent(mut self, dz: impl Fn(f64) -> MultiVector + Send + Sync + 'static) -> Self {
        self.dz = Some(Arc::new(dz));
        self
    }

    pub fn with_quadrature(mut self, quadrature: Quadrature) -> Self {
        self.quadrature = quadrature;
        self
    }

    /// Straight segments through `vertices`, one unit of `s` per segment.
    pub fn polyline(vertices: &[MultiVector]) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::InvalidArgument("polyline needs at least two vertices".into()));
        }
        let v: Vec<MultiVector> = vertices.to_vec();
        let w = v.clone();
        let last = (v.len() - 1) as f64;
        let seg = move |s: f64, n: usize| -> usize { (s.floor().max(0.0) as usize).min(n - 2) };
        let n = v.len();
        let mut c = Contour::new(
            move |s| {
                let i = seg(s, n);
                let t = s - i as f64;
                v[i].scale_real(1.0 - t) + v[i + 1].scale_real(t)
            },
            0.0,
            last,
        )?
        .with_tangent(move |s| {
            let i = seg(s, n);
            w[i + 1] - w[i]
        });
        c.breaks = (0..n).map(|i| i as f64).collect();
        Ok(c)
    }

    /// `center + r(cos θ e_a + sin θ e_b)` for `θ ∈ [θ₀, θ₁]`; a decreasing
    /// range runs clockwise.
    pub fn arc(center: MultiVector, radius: f64, theta0: f64, theta1: f64, axes: (usize, usize)) -> Result<Self> {
        let (a, b) = axes;
        if a >= 4 || b >= 4 || a == b {
            return Err(Error::InvalidArgument(format!("arc axes ({a}, {b}) must be distinct in 0..4")));
        }
        if !(radius > 0.0) || theta0 == theta1 {
            return Err(Error::InvalidArgument("arc needs positive radius and nonzero sweep".into()));
        }
        let sweep = theta1 - theta0;
        let (ea, eb) = (MultiVector::basis(a), MultiVector::basis(b));
        Contour::new(
            move |s| {
                let t = theta0 + sweep * s;
                center + ea.scale_real(radius * t.cos()) + eb.scale_real(radius * t.sin())
            },
            0.0,
            1.0,
        )
        .map(|c| {
            c.with_tangent(move |s| {
                let t = theta0 + sweep * s;
                ea.scale_real(-radius * sweep * t.sin()) + eb.scale_real(radius * sweep * t.cos())
            })
        })
    }

    /// Counterclockwise circle in the `(e₀, e₁)` plane, i.e. `|z| = r` in
    /// the complex restriction.
    pub fn circle(radius: f64) -> Result<Self> {
        Contour::arc(MultiVector::zero(), radius, 0.0, 2.0 * PI, (0, 1))
    }

    /// `z(s) = Σ_k a_k s^k` on `[0, 1]`.
    pub fn polynomial(coefficients: Vec<MultiVector>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::InvalidArgument("polynomial contour needs coefficients".into()));
        }
        let d = coefficients.clone();
        Ok(Contour::new(
            move |s| {
                coefficients.iter().rev().fold(MultiVector::zero(), |acc, a| acc.scale_real(s) + *a)
            },
            0.0,
            1.0,
        )?
        .with_tangent(move |s| {
            d.iter()
                .enumerate()
                .skip(1)
                .rev()
                .fold(MultiVector::zero(), |acc, (k, a)| acc.scale_real(s) + a.scale_real(k as f64))
        }))
    }

    /// The same path traversed backwards over the same parameter range.
    pub fn reversed(&self) -> Self {
        let (s0, s1) = self.range();
        let z = self.z.clone();
        let mut c = Contour::new(move |s| z(s0 + s1 - s), s0, s1).expect("range already validated");
        if let Some(dz) = self.dz.clone() {
            c = c.with_tangent(move |s| -dz(s0 + s1 - s));
        }
        c.breaks = self.breaks.iter().rev().map(|b| s0 + s1 - b).collect();
        c.quadrature = self.quadrature;
        c
    }

    pub fn range(&self) -> (f64, f64) {
        (self.breaks[0], *self.breaks.last().unwrap())
    }

    pub fn breaks(&self) -> &[f64] {
        &self.breaks
    }

    pub fn z(&self, s: f64) -> MultiVector {
        (self.z)(s)
    }

    pub fn point(&self, s: f64) -> Point {
        self.z(s).re()
    }

    /// `dz/ds`, analytic when supplied, otherwise a fourth-order central
    /// difference.
    pub fn tangent(&self, s: f64) -> MultiVector {
        if let Some(dz) = &self.dz {
            return dz(s);
        }
        let (s0, s1) = self.range();
        let h = 1e-3 * (s1 - s0);
        let mut d = self.z(s - 2.0 * h).scaled(1.0 / 12.0);
        d.add_scaled(&self.z(s - h), -8.0 / 12.0);
        d.add_scaled(&self.z(s + h), 8.0 / 12.0);
        d.add_scaled(&self.z(s + 2.0 * h), -1.0 / 12.0);
        d.scale_real(1.0 / h)
    }

    pub fn start(&self) -> MultiVector {
        self.z(self.range().0)
    }

    pub fn end(&self) -> MultiVector {
        self.z(self.range().1)
    }

    pub fn is_closed(&self, tol: f64) -> bool {
        self.start().dist(&self.end()) <= tol
    }
}

/// A function of the coordinates with values in the algebra.
#[derive(Clone)]
pub struct AnalyticField {
    f: FieldFn,
    jacobian: Option<JacobianFn>,
}

impl fmt::Debug for AnalyticField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AnalyticField").field("analytic_jacobian", &self.jacobian.is_some()).finish()
    }
}

impl AnalyticField {
    pub fn new(f: impl Fn(&Point) -> MultiVector + Send + Sync + 'static) -> Self {
        AnalyticField { f: Arc::new(f), jacobian: None }
    }

    /// Supplies `∂_a f` for `a = 0..3`.
    pub fn with_jacobian(mut self, j: impl Fn(&Point) -> [MultiVector; 4] + Send + Sync + 'static) -> Self {
        self.jacobian = Some(Arc::new(j));
        self
    }

    /// A function of the complex variable `z = x + iy` in the `(e₀, e₁)`
    /// restriction.
    pub fn complex(g: impl Fn(C64) -> C64 + Send + Sync + 'static) -> Self {
        AnalyticField::new(move |p| {
            let w = g(C64::new(p[0], p[1]));
            MultiVector::from_real([w.re, w.im, 0.0, 0.0])
        })
    }

    pub fn eval(&self, z: &Point) -> MultiVector {
        (self.f)(z)
    }

    pub fn components(&self, z: &Point) -> [C64; 4] {
        self.eval(z).c
    }

    /// `∂_a f`, from the analytic Jacobian when present.
    pub fn gradient(&self, z: &Point, fd: &FiniteDifferenceScheme) -> [MultiVector; 4] {
        match &self.jacobian {
            Some(j) => j(z),
            None => fd.gradient(&|p: &Point| self.eval(p), z),
        }
    }
}

/// Scheme used where an operation takes no explicit finite-difference
/// parameters.
pub fn default_scheme() -> FiniteDifferenceScheme {
    FiniteDifferenceScheme::new(1e-3).with_order(FdOrder::Four)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polyline_tangent_matches_difference() {
        let v = [
            MultiVector::from_real([0.0, 0.0, -1.0, 0.0]),
            MultiVector::from_real([0.0, 2.0, -1.0, 0.0]),
            MultiVector::from_real([0.0, 2.0, 1.0, 0.0]),
        ];
        let c = Contour::polyline(&v).unwrap();
        assert_eq!(c.breaks(), &[0.0, 1.0, 2.0]);
        assert!(c.z(1.5).dist(&MultiVector::from_real([0.0, 2.0, 0.0, 0.0])) < 1e-15);
        assert!(c.tangent(0.5).dist(&MultiVector::from_real([0.0, 2.0, 0.0, 0.0])) < 1e-15);
        assert!(c.end().dist(&v[2]) < 1e-15);
    }

    #[test]
    fn numeric_tangent_agrees_with_analytic() {
        let arc = Contour::arc(MultiVector::zero(), 2.0, 0.3, 2.0, (1, 2)).unwrap();
        let z = arc.clone();
        let plain = Contour::new(move |s| z.z(s), 0.0, 1.0).unwrap();
        for s in [0.1, 0.5, 0.9] {
            assert!(arc.tangent(s).dist(&plain.tangent(s)) < 1e-9);
        }
    }

    #[test]
    fn reversed_swaps_endpoints() {
        let c = Contour::arc(MultiVector::zero(), 1.0, 0.0, 1.0, (0, 1)).unwrap();
        let r = c.reversed();
        assert!(r.start().dist(&c.end()) < 1e-15);
        assert!(r.tangent(0.2).dist(&c.tangent(0.8).scale_real(-1.0)) < 1e-15);
    }

    #[test]
    fn polynomial_contour_derivative() {
        let a = MultiVector::from_real([1.0, 0.0, 0.0, 0.0]);
        let b = MultiVector::from_real([0.0, 2.0, 0.0, 0.0]);
        let c = Contour::polynomial(vec![a, b, a]).unwrap();
        // z = 1 + s² + 2s e₁, z' = 2s + 2e₁
        assert!(c.z(0.5).dist(&MultiVector::from_real([1.25, 1.0, 0.0, 0.0])) < 1e-15);
        assert!(c.tangent(0.5).dist(&MultiVector::from_real([1.0, 2.0, 0.0, 0.0])) < 1e-15);
    }

    #[test]
    fn rejects_empty_range() {
        assert!(Contour::new(|_| MultiVector::zero(), 1.0, 1.0).is_err());
        assert!(Contour::polyline(&[MultiVector::zero()]).is_err());
    }
}
