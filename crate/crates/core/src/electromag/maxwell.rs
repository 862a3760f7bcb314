use crate::algebra::{MixtureTensor, MultiVector};
use crate::analytic::{analyticity_residual, flat, AnalyticField};
use crate::error::Result;
use crate::fd::{FiniteDifferenceScheme, Point};
use crate::linalg::C64;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

type ScalarFn = Arc<dyn Fn(&Point) -> f64 + Send + Sync>;
type VectorFn = Arc<dyn Fn(&Point) -> [f64; 3] + Send + Sync>;

#[derive(Clone)]
pub struct FourPotential {
    pub phi: ScalarFn,
    pub a: VectorFn,
}

impl std::fmt::Debug for FourPotential {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("FourPotential { .. }")
    }
}

impl FourPotential {
    pub fn new(
        phi: impl Fn(&Point) -> f64 + Send + Sync + 'static,
        a: impl Fn(&Point) -> [f64; 3] + Send + Sync + 'static,
    ) -> Self {
        FourPotential { phi: Arc::new(phi), a: Arc::new(a) }
    }

    /// `φ₀ cos θ`, `A₀ cos θ` with `θ = ωt − k·x + θ₀` and `ω = |k|`, a
    /// vacuum solution of the wave equation.
    pub fn plane_wave(phi0: f64, a0: [f64; 3], k: [f64; 3], theta0: f64) -> Self {
        let omega = k.iter().map(|x| x * x).sum::<f64>().sqrt();
        let theta = move |p: &Point| omega * p[0] - k[0] * p[1] - k[1] * p[2] - k[2] * p[3] + theta0;
        FourPotential::new(move |p| phi0 * theta(p).cos(), move |p| a0.map(|x| x * theta(p).cos()))
    }

    /// `[φ, A₁, A₂, A₃]`.
    pub fn components(&self, z: &Point) -> [f64; 4] {
        let a = (self.a)(z);
        [(self.phi)(z), a[0], a[1], a[2]]
    }

    pub fn as_multivector(&self, z: &Point) -> MultiVector {
        MultiVector::from_real(self.components(z))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EMFieldSample {
    pub alpha: f64,
    pub e: [f64; 3],
    pub b: [f64; 3],
}

impl EMFieldSample {
    /// `α − E + iB`.
    pub fn to_multivector(&self) -> MultiVector {
        MultiVector::from_components([
            C64::new(self.alpha, 0.0),
            C64::new(-self.e[0], self.b[0]),
            C64::new(-self.e[1], self.b[1]),
            C64::new(-self.e[2], self.b[2]),
        ])
    }
}

pub fn em_derivative(h: &FourPotential, z: &Point, fd: &FiniteDifferenceScheme) -> EMFieldSample {
    let f = |p: &Point| h.components(p);
    // g[β][c] = ∂_β h^c
    let g = fd.gradient(&f, z);
    EMFieldSample {
        alpha: g[0][0] + g[1][1] + g[2][2] + g[3][3],
        e: [-(g[1][0] + g[0][1]), -(g[2][0] + g[0][2]), -(g[3][0] + g[0][3])],
        b: [g[2][3] - g[3][2], g[3][1] - g[1][3], g[1][2] - g[2][1]],
    }
}

/// The four groups of field equations; each vanishes for a potential obeying
/// the wave equation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaxwellResiduals {
    /// `∇·E + ∂_tα`
    pub gauss_e: f64,
    /// `∂_tE − ∇×B + ∇α`
    pub ampere: [f64; 3],
    /// `∇·B`
    pub gauss_b: f64,
    /// `−∇×E − ∂_tB`
    pub faraday: [f64; 3],
}

impl MaxwellResiduals {
    pub fn max_abs(&self) -> f64 {
        self.ampere
            .iter()
            .chain(self.faraday.iter())
            .chain([self.gauss_e, self.gauss_b].iter())
            .map(|x| x.abs())
            .fold(0.0, f64::max)
    }

    /// `[gauss_e, ampere, gauss_b, faraday]` as group maxima.
    pub fn groups(&self) -> [f64; 4] {
        let m = |v: &[f64; 3]| v.iter().map(|x| x.abs()).fold(0.0, f64::max);
        [self.gauss_e.abs(), m(&self.ampere), self.gauss_b.abs(), m(&self.faraday)]
    }
}

/// Adjoint derivative `(∂_t − ∂_x)(α − E + iB)` in the natural geometry,
/// split into its real and imaginary scalar and vector parts.
pub fn maxwell_residuals(h: &FourPotential, z: &Point, fd: &FiniteDifferenceScheme) -> Result<MaxwellResiduals> {
    let h = h.clone();
    let inner = *fd;
    let field = AnalyticField::new(move |p| em_derivative(&h, p, &inner).to_multivector());
    let r = analyticity_residual(&field, &flat, &MixtureTensor::natural(), z, fd)?;
    Ok(MaxwellResiduals {
        gauss_e: r[0].re,
        ampere: [-r[1].re, -r[2].re, -r[3].re],
        gauss_b: -r[0].im,
        faraday: [-r[1].im, -r[2].im, -r[3].im],
    })
}
