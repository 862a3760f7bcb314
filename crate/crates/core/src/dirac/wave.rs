use super::DiracSet;
use crate::error::{Error, Result};
use crate::fd::{FiniteDifferenceScheme, Point};
use crate::linalg::{self, Mat4, C64, ZERO};
use crate::report::SuiteReport;
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

/// `a e^{−i(ωt − k·x)}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlaneWave {
    pub amplitude: [C64; 4],
    pub omega: f64,
    pub k: [f64; 3],
}

impl PlaneWave {
    pub fn new(amplitude: [C64; 4], omega: f64, k: [f64; 3]) -> Result<Self> {
        if amplitude.iter().all(|a| *a == ZERO) {
            return Err(Error::InvalidArgument("plane-wave amplitude must be nonzero".into()));
        }
        if !(omega.is_finite() && k.iter().all(|x| x.is_finite()) && amplitude.iter().all(|a| a.is_finite())) {
            return Err(Error::NonFinite("plane wave"));
        }
        Ok(PlaneWave { amplitude, omega, k })
    }

    /// Positive-energy mode `ω = √(k² + M²)` with its kernel amplitude.
    pub fn on_shell(d: &DiracSet, k: [f64; 3], mass: f64) -> Result<Self> {
        let omega = (k.iter().map(|x| x * x).sum::<f64>() + mass * mass).sqrt();
        let a = kernel_amplitude(d, omega, k, mass)?;
        PlaneWave::new(a, omega, k)
    }

    pub fn k_squared(&self) -> f64 {
        self.k.iter().map(|x| x * x).sum()
    }
}

fn symbol(d: &DiracSet, omega: f64, k: [f64; 3], mass: f64, spatial_sign: f64, h: &Mat4) -> Mat4 {
    let mut s = linalg::mat_scale(&d.eta[0], C64::new(0.0, -omega));
    for j in 0..3 {
        s = linalg::mat_add(&s, &linalg::mat_scale(&d.eta[j + 1], C64::new(0.0, spatial_sign * k[j])));
    }
    linalg::mat_add(&s, &linalg::mat_scale(h, d.n * mass))
}

/// Symbol of `η^{β†}∂_{β†} + NĤ`, the adjoint-direction operator.
pub fn adjoint_symbol(d: &DiracSet, omega: f64, k: [f64; 3], mass: f64) -> Mat4 {
    symbol(d, omega, k, mass, -1.0, &d.hhat)
}

/// Symbol of `η^β ∂_β + NH`.
pub fn forward_symbol(d: &DiracSet, omega: f64, k: [f64; 3], mass: f64) -> Mat4 {
    symbol(d, omega, k, mass, 1.0, &d.h)
}

pub fn dirac_residual(d: &DiracSet, w: &PlaneWave, mass: f64) -> [C64; 4] {
    linalg::mat_vec(&adjoint_symbol(d, w.omega, w.k, mass), &w.amplitude)
}

/// `−ω² + k² + M²`.
pub fn klein_gordon_residual(w: &PlaneWave, mass: f64) -> C64 {
    C64::new(-w.omega * w.omega + w.k_squared() + mass * mass, 0.0)
}

/// Compares the product of the adjoint and forward symbols with the
/// Klein–Gordon symbol times the identity, and the symbol determinant with
/// `(ω² − k² − M²)²`.
pub fn factorization_check(d: &DiracSet, w: &PlaneWave, mass: f64, tol: f64) -> SuiteReport {
    let adj = adjoint_symbol(d, w.omega, w.k, mass);
    let fwd = forward_symbol(d, w.omega, w.k, mass);
    let kg = klein_gordon_residual(w, mass);
    let prod = linalg::mat_mul(&adj, &fwd);
    let target = linalg::mat_scale(&linalg::identity(), kg);
    let scale = 1.0 + w.omega * w.omega + w.k_squared() + mass * mass;
    let mut r = SuiteReport::new("dirac-factorization");
    r.check(
        "kg-identity",
        "adjoint symbol × forward symbol = Klein–Gordon symbol × 1",
        linalg::max_abs_diff_mat(&prod, &target) / scale,
        tol,
    );
    let det = linalg::to_nalgebra(&adj).determinant();
    let expect = kg * kg;
    r.check(
        "symbol-determinant",
        "det of the Dirac symbol = (ω² − k² − M²)²",
        (det - expect).norm() / (scale * scale),
        tol,
    );
    r
}

/// Unit right-singular vector of the adjoint symbol for its smallest
/// singular value; fails off shell.
pub fn kernel_amplitude(d: &DiracSet, omega: f64, k: [f64; 3], mass: f64) -> Result<[C64; 4]> {
    let s = adjoint_symbol(d, omega, k, mass);
    let m = DMatrix::from_fn(4, 4, |i, j| s[i][j]);
    let svd = m.svd(false, true);
    let v_t = svd.v_t.ok_or(Error::NonConvergence { terms: 0, tail: f64::NAN })?;
    let (idx, smin) = svd
        .singular_values
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (i, &x)| if x < acc.1 { (i, x) } else { acc });
    let smax = svd.singular_values.max();
    if smin > 1e-10 * smax.max(1.0) {
        return Err(Error::InvalidArgument(format!(
            "mode is off shell (smallest singular value {smin:e})"
        )));
    }
    Ok(std::array::from_fn(|j| v_t[(idx, j)].conj()))
}

/// Dirac residual with the minimally coupled energy `ω − eφ` and momentum
/// `k − eA` for constant potentials.
pub fn em_coupled_residual(
    d: &DiracSet,
    w: &PlaneWave,
    mass: f64,
    charge: f64,
    phi: f64,
    a: [f64; 3],
) -> [C64; 4] {
    let k = std::array::from_fn(|j| w.k[j] - charge * a[j]);
    let s = adjoint_symbol(d, w.omega - charge * phi, k, mass);
    linalg::mat_vec(&s, &w.amplitude)
}

/// Largest deviation between `∂_α(f̃ e^{−iφ})` by finite differences and
/// `e^{−iφ}(∂_α − i ∂_αφ) f̃` from the supplied gradients.
pub fn phase_shift_residual(
    ftilde: &dyn Fn(&Point) -> [C64; 4],
    dftilde: &dyn Fn(&Point) -> [[C64; 4]; 4],
    phase: &dyn Fn(&Point) -> f64,
    dphase: &dyn Fn(&Point) -> [f64; 4],
    z: &Point,
    fd: &FiniteDifferenceScheme,
) -> f64 {
    let shifted = |p: &Point| {
        let e = C64::new(0.0, -phase(p)).exp();
        ftilde(p).map(|x| x * e)
    };
    let lhs = fd.gradient(&shifted, z);
    let e = C64::new(0.0, -phase(z)).exp();
    let (f, df, dp) = (ftilde(z), dftilde(z), dphase(z));
    let mut worst = 0.0f64;
    for a in 0..4 {
        for c in 0..4 {
            let rhs = e * (df[a][c] - C64::new(0.0, dp[a]) * f[c]);
            worst = worst.max((lhs[a][c] - rhs).norm());
        }
    }
    worst
}
