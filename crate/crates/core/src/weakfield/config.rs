use crate::error::{Error, Result};
use crate::fd::{FdOrder, FiniteDifferenceScheme, Point};
use std::sync::Arc;

type ScalarFn = Arc<dyn Fn(&Point) -> f64 + Send + Sync>;
type VectorFn = Arc<dyn Fn(&Point) -> [f64; 3] + Send + Sync>;

/// Default bound on `|μ_g ψ| + |μ_e φ| + |μ_e| ‖A‖`.
pub const DEFAULT_GUARD: f64 = 1e-3;

/// Potentials and coupling constants of the perturbed Minkowski metric.
///
/// The coordinate is `x⁰ = ct`. `ρ` is derived from `ρ μ_e = 1/c²`.
#[derive(Clone)]
pub struct WeakFieldConfig {
    pub psi: ScalarFn,
    pub phi: ScalarFn,
    pub a: VectorFn,
    pub mu_g: f64,
    pub mu_e: f64,
    pub rho: f64,
    pub c: f64,
    pub guard: f64,
    pub fd: FiniteDifferenceScheme,
}

impl std::fmt::Debug for WeakFieldConfig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("WeakFieldConfig")
            .field("mu_g", &self.mu_g)
            .field("mu_e", &self.mu_e)
            .field("rho", &self.rho)
            .field("c", &self.c)
            .field("guard", &self.guard)
            .finish_non_exhaustive()
    }
}

/// Field strengths at a point: `G = ∇ψ`, `E = ∇φ + ∂₀A`, `B = −∇×A`, and the
/// time derivatives of the scalar potentials.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FieldSample {
    pub g: [f64; 3],
    pub e: [f64; 3],
    pub b: [f64; 3],
    pub psi_t: f64,
    pub phi_t: f64,
}

impl WeakFieldConfig {
    /// Vanishing potentials with `c = 1`, `μ_g = 2` and `ρ = 1/μ_e`.
    pub fn new(mu_e: f64) -> Result<Self> {
        let cfg = WeakFieldConfig {
            psi: Arc::new(|_| 0.0),
            phi: Arc::new(|_| 0.0),
            a: Arc::new(|_| [0.0; 3]),
            mu_g: 2.0,
            mu_e,
            rho: 1.0 / mu_e,
            c: 1.0,
            guard: DEFAULT_GUARD,
            fd: FiniteDifferenceScheme::new(1e-4).with_order(FdOrder::Four),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_psi(mut self, psi: impl Fn(&Point) -> f64 + Send + Sync + 'static) -> Self {
        self.psi = Arc::new(psi);
        self
    }

    pub fn with_phi(mut self, phi: impl Fn(&Point) -> f64 + Send + Sync + 'static) -> Self {
        self.phi = Arc::new(phi);
        self
    }

    pub fn with_vector_potential(
        mut self,
        a: impl Fn(&Point) -> [f64; 3] + Send + Sync + 'static,
    ) -> Self {
        self.a = Arc::new(a);
        self
    }

    /// Sets `c` and rederives `μ_g = 2/c²` and `ρ = 1/(c² μ_e)`.
    pub fn with_speed_of_light(mut self, c: f64) -> Result<Self> {
        self.c = c;
        self.mu_g = 2.0 / (c * c);
        self.rho = 1.0 / (c * c * self.mu_e);
        self.validate()?;
        Ok(self)
    }

    pub fn with_guard(mut self, guard: f64) -> Self {
        self.guard = guard;
        self
    }

    pub fn with_scheme(mut self, fd: FiniteDifferenceScheme) -> Self {
        self.fd = fd;
        self
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("mu_g", self.mu_g), ("mu_e", self.mu_e), ("rho", self.rho), ("c", self.c)] {
            if !v.is_finite() {
                return Err(Error::NonFinite(name));
            }
        }
        if self.c <= 0.0 || self.mu_e == 0.0 {
            return Err(Error::InvalidArgument("c must be positive and mu_e non-zero".into()));
        }
        if !(self.guard > 0.0) {
            return Err(Error::InvalidArgument("guard must be positive".into()));
        }
        let target = 1.0 / (self.c * self.c);
        if ((self.rho * self.mu_e - target) / target).abs() > 1e-12 {
            return Err(Error::InvalidArgument(format!(
                "rho * mu_e = {:e}, expected 1/c^2 = {target:e}",
                self.rho * self.mu_e
            )));
        }
        self.fd.validate()
    }

    /// `|μ_g ψ| + |μ_e φ| + |μ_e| ‖A‖` at `z`.
    pub fn perturbation(&self, z: &Point) -> f64 {
        let a = (self.a)(z);
        let norm = (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt();
        (self.mu_g * (self.psi)(z)).abs() + (self.mu_e * (self.phi)(z)).abs() + self.mu_e.abs() * norm
    }

    pub fn check_guard(&self, z: &Point) -> Result<()> {
        let size = self.perturbation(z);
        if !size.is_finite() {
            return Err(Error::NonFinite("weak-field potentials"));
        }
        if size > self.guard {
            return Err(Error::WeakFieldViolation { size, limit: self.guard });
        }
        Ok(())
    }

    pub fn fields(&self, z: &Point) -> FieldSample {
        let dpsi = self.fd.gradient(&*self.psi, z);
        let dphi = self.fd.gradient(&*self.phi, z);
        let da = self.fd.gradient(&*self.a, z);
        let curl = [
            da[2][2] - da[3][1],
            da[3][0] - da[1][2],
            da[1][1] - da[2][0],
        ];
        FieldSample {
            g: [dpsi[1], dpsi[2], dpsi[3]],
            e: std::array::from_fn(|i| dphi[i + 1] + da[0][i]),
            b: curl.map(|x| -x),
            psi_t: dpsi[0],
            phi_t: dphi[0],
        }
    }
}
