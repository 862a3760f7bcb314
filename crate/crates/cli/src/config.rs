use crate::error::{CliError, Result};
use cqmix::fd::{FdOrder, FiniteDifferenceScheme, Point};
use cqmix::weakfield::{TestParticle, WeakFieldConfig};
use serde::Deserialize;
use std::path::Path;

/// Scenario file. Every section is optional; `seed` is required so that
/// sampled suites are reproducible from the file alone.
#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub seed: u64,
    #[serde(default)]
    pub algebra: AlgebraConfig,
    #[serde(default)]
    pub geometry: GeometryConfig,
    #[serde(default)]
    pub analytic: AnalyticConfig,
    #[serde(default)]
    pub dirac: DiracConfig,
    #[serde(default)]
    pub maxwell: MaxwellConfig,
    #[serde(default)]
    pub yangmills: YangMillsConfig,
    #[serde(default)]
    pub weakfield: WeakFieldSection,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            seed: 2024,
            algebra: AlgebraConfig::default(),
            geometry: GeometryConfig::default(),
            analytic: AnalyticConfig::default(),
            dirac: DiracConfig::default(),
            maxwell: MaxwellConfig::default(),
            yangmills: YangMillsConfig::default(),
            weakfield: WeakFieldSection::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Order {
    Two,
    Four,
}

impl From<Order> for FdOrder {
    fn from(o: Order) -> Self {
        match o {
            Order::Two => FdOrder::Two,
            Order::Four => FdOrder::Four,
        }
    }
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct AlgebraConfig {
    pub samples: usize,
    pub tolerance: f64,
}

impl Default for AlgebraConfig {
    fn default() -> Self {
        AlgebraConfig { samples: 1000, tolerance: 1e-12 }
    }
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct GeometryConfig {
    /// Coarse step; the suite also runs at half of it.
    pub h: f64,
    pub lattice: usize,
    pub margin: f64,
    pub tolerance: f64,
    /// Strength of the deliberately mismatched connection.
    pub distortion: f64,
}

impl Default for GeometryConfig {
    fn default() -> Self {
        GeometryConfig { h: 2e-3, lattice: 2, margin: 0.4, tolerance: 1e-4, distortion: 0.3 }
    }
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct AnalyticConfig {
    pub rectangles: Vec<f64>,
    pub radii: Vec<f64>,
    pub tolerance: f64,
    pub residue_tolerance: f64,
}

impl Default for AnalyticConfig {
    fn default() -> Self {
        AnalyticConfig { rectangles: vec![0.5, 1.0, 2.0], radii: vec![1.0, 5.0], tolerance: 1e-6, residue_tolerance: 1e-8 }
    }
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct DiracConfig {
    pub modes: usize,
    pub max_momentum: f64,
    pub max_mass: f64,
    pub tolerance: f64,
}

impl Default for DiracConfig {
    fn default() -> Self {
        DiracConfig { modes: 100, max_momentum: 2.0, max_mass: 2.0, tolerance: 1e-12 }
    }
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PlaneWaveSpec {
    pub phi0: f64,
    pub a0: [f64; 3],
    pub k: [f64; 3],
    #[serde(default)]
    pub phase: f64,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct MaxwellConfig {
    pub h: f64,
    pub point: [f64; 4],
    pub waves: Vec<PlaneWaveSpec>,
    /// Constant `C` in the bound `residual ≤ C h²`.
    pub constant: f64,
}

impl Default for MaxwellConfig {
    fn default() -> Self {
        MaxwellConfig {
            h: 0.02,
            point: [0.3, -0.2, 0.4, 0.1],
            waves: vec![
                PlaneWaveSpec { phi0: 0.7, a0: [0.2, -0.4, 0.1], k: [1.0, 0.5, -0.3], phase: 0.2 },
                PlaneWaveSpec { phi0: -0.3, a0: [0.5, 0.3, 0.0], k: [-0.4, 0.9, 0.6], phase: 1.1 },
            ],
            constant: 10.0,
        }
    }
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct YangMillsConfig {
    pub h: f64,
    pub epsilon: f64,
    pub point: [f64; 4],
    pub constant: f64,
    pub exact_tolerance: f64,
}

impl Default for YangMillsConfig {
    fn default() -> Self {
        YangMillsConfig { h: 0.02, epsilon: 0.8, point: [0.2, -0.1, 0.3, 0.4], constant: 10.0, exact_tolerance: 1e-10 }
    }
}

/// `c + l·x + Σ q_i x_i²` in the spatial coordinates.
#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct ScalarPolynomial {
    pub constant: f64,
    pub linear: [f64; 3],
    pub quadratic: [f64; 3],
}

impl ScalarPolynomial {
    pub fn eval(&self, p: &Point) -> f64 {
        let mut v = self.constant;
        for i in 0..3 {
            v += self.linear[i] * p[i + 1] + self.quadratic[i] * p[i + 1] * p[i + 1];
        }
        v
    }
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ParticleSpec {
    pub m: f64,
    pub e: f64,
    #[serde(default)]
    pub x: [f64; 4],
    pub v: [f64; 3],
}

impl ParticleSpec {
    pub fn build(&self) -> std::result::Result<TestParticle, cqmix::Error> {
        TestParticle::new(self.m, self.e, self.x, self.v)
    }
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct WeakFieldSection {
    pub mu_e: f64,
    pub c: f64,
    /// Defaults to `1/(c² μ_e)`; any other value is rejected.
    pub rho: Option<f64>,
    pub guard: f64,
    pub psi: ScalarPolynomial,
    pub phi: ScalarPolynomial,
    /// Uniform magnetic field in the symmetric gauge.
    pub b: [f64; 3],
    pub particle: Option<ParticleSpec>,
    pub dt: Option<f64>,
    pub steps: usize,
    pub tolerance: f64,
}

impl Default for WeakFieldSection {
    fn default() -> Self {
        WeakFieldSection {
            mu_e: 1e-4,
            c: 1.0,
            rho: None,
            guard: cqmix::weakfield::DEFAULT_GUARD,
            psi: ScalarPolynomial::default(),
            phi: ScalarPolynomial::default(),
            b: [0.0; 3],
            particle: None,
            dt: None,
            steps: 1000,
            tolerance: 0.01,
        }
    }
}

impl WeakFieldSection {
    pub fn build(&self) -> std::result::Result<WeakFieldConfig, cqmix::Error> {
        let (psi, phi, b) = (self.psi.clone(), self.phi.clone(), self.b);
        let mut cfg = WeakFieldConfig::new(self.mu_e)?
            .with_speed_of_light(self.c)?
            .with_guard(self.guard)
            .with_psi(move |p| psi.eval(p))
            .with_phi(move |p| phi.eval(p))
            .with_vector_potential(move |p| {
                let r = [p[1], p[2], p[3]];
                [
                    -0.5 * (b[1] * r[2] - b[2] * r[1]),
                    -0.5 * (b[2] * r[0] - b[0] * r[2]),
                    -0.5 * (b[0] * r[1] - b[1] * r[0]),
                ]
            });
        if let Some(rho) = self.rho {
            cfg.rho = rho;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn step(h: f64) -> FiniteDifferenceScheme {
    FiniteDifferenceScheme::new(h)
}

impl ScenarioConfig {
    pub fn parse(text: &str, file: &str) -> Result<Self> {
        let cfg: ScenarioConfig = toml::from_str(text).map_err(|e| {
            let location = match e.span() {
                Some(span) => {
                    let before = &text[..span.start.min(text.len())];
                    let line = before.matches('\n').count() + 1;
                    let col = span.start - before.rfind('\n').map_or(0, |i| i + 1) + 1;
                    format!("line {line}, column {col}")
                }
                None => "top level".to_string(),
            };
            CliError::Config { file: file.to_string(), location, message: e.message().trim().to_string() }
        })?;
        cfg.check(file)?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text, &path.display().to_string())
    }

    /// Semantic checks that serde cannot express.
    pub fn check(&self, file: &str) -> Result<()> {
        let bad = |key: &str, message: String| CliError::Config {
            file: file.to_string(),
            location: format!("key `{key}`"),
            message,
        };
        let positive = [
            ("algebra.tolerance", self.algebra.tolerance),
            ("geometry.h", self.geometry.h),
            ("geometry.tolerance", self.geometry.tolerance),
            ("analytic.tolerance", self.analytic.tolerance),
            ("analytic.residue_tolerance", self.analytic.residue_tolerance),
            ("dirac.tolerance", self.dirac.tolerance),
            ("maxwell.h", self.maxwell.h),
            ("yangmills.h", self.yangmills.h),
            ("weakfield.c", self.weakfield.c),
            ("weakfield.guard", self.weakfield.guard),
            ("weakfield.tolerance", self.weakfield.tolerance),
        ];
        for (key, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(bad(key, format!("must be positive and finite, got {v}")));
            }
        }
        if self.algebra.samples == 0 {
            return Err(bad("algebra.samples", "must be at least 1".into()));
        }
        if self.analytic.radii.iter().any(|r| *r < cqmix::analytic::MIN_RADIUS) {
            return Err(bad("analytic.radii", format!("radii must be at least {:e}", cqmix::analytic::MIN_RADIUS)));
        }
        if self.maxwell.waves.is_empty() {
            return Err(bad("maxwell.waves", "at least one plane wave is required".into()));
        }
        if self.maxwell.waves.iter().any(|w| w.k.iter().all(|x| *x == 0.0)) {
            return Err(bad("maxwell.waves.k", "wave vectors must be non-zero".into()));
        }
        let wf = &self.weakfield;
        if wf.mu_e == 0.0 || !wf.mu_e.is_finite() {
            return Err(bad("weakfield.mu_e", "must be finite and non-zero".into()));
        }
        if let Some(rho) = wf.rho {
            let target = 1.0 / (wf.c * wf.c);
            if ((rho * wf.mu_e - target) / target).abs() > 1e-12 {
                return Err(bad(
                    "weakfield.rho",
                    format!(
                        "rho * mu_e = {:e} but the Lorentz limit requires rho * mu_e = 1/c^2 = {target:e}",
                        rho * wf.mu_e
                    ),
                ));
            }
        }
        if let Some(p) = &wf.particle {
            if let Err(e) = p.build() {
                return Err(bad("weakfield.particle", e.to_string()));
            }
        }
        if let Some(dt) = wf.dt {
            if !(dt > 0.0 && dt.is_finite()) {
                return Err(bad("weakfield.dt", format!("must be positive, got {dt}")));
            }
        }
        if let Err(e) = wf.build() {
            return Err(bad("weakfield", e.to_string()));
        }
        step(self.geometry.h).validate().map_err(|e| bad("geometry.h", e.to_string()))?;
        Ok(())
    }
}
