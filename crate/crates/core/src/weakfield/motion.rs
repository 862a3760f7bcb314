use super::config::WeakFieldConfig;
use super::connection::assembled;
use crate::error::{Error, Result};
use crate::fd::Point;
use serde::{Deserialize, Serialize};

/// Point particle with real mass and charge. `v` is in units of `c` and
/// `x[0]` is the time coordinate `ct`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TestParticle {
    pub m: f64,
    pub e: f64,
    pub x: [f64; 4],
    pub v: [f64; 3],
}

impl TestParticle {
    pub fn new(m: f64, e: f64, x: [f64; 4], v: [f64; 3]) -> Result<Self> {
        let p = TestParticle { m, e, x, v };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.m.is_finite() && self.e.is_finite())
            || self.x.iter().chain(self.v.iter()).any(|c| !c.is_finite())
        {
            return Err(Error::NonFinite("test particle"));
        }
        if self.m <= 0.0 {
            return Err(Error::InvalidArgument("mass must be positive".into()));
        }
        if self.speed() >= 1.0 {
            return Err(Error::InvalidArgument(format!("speed {} is not below c", self.speed())));
        }
        Ok(())
    }

    pub fn speed(&self) -> f64 {
        self.v.iter().map(|c| c * c).sum::<f64>().sqrt()
    }
}

/// Acceleration `dv/dx⁰` split into the Newtonian term, the Lorentz term and
/// the rest, with the imaginary part of the transport equation alongside.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ForceDecomposition {
    pub grav: [f64; 3],
    pub lorentz: [f64; 3],
    pub residual: [f64; 3],
    pub imaginary: [f64; 3],
}

impl ForceDecomposition {
    pub fn total(&self) -> [f64; 3] {
        std::array::from_fn(|i| self.grav[i] + self.lorentz[i] + self.residual[i])
    }
}

/// Decomposes the real part of `−u^λ u^β Γ^i_{λβ} / m²` at `z` for a particle
/// moving with `p.v`.
pub fn force_decomposition(cfg: &WeakFieldConfig, p: &TestParticle, z: &Point) -> Result<ForceDecomposition> {
    let (_, _, g) = assembled(cfg, z)?;
    let q = p.e * cfg.rho / p.m;
    let mut out = ForceDecomposition { grav: [0.0; 3], lorentz: [0.0; 3], residual: [0.0; 3], imaginary: [0.0; 3] };
    for i in 0..3 {
        let g00 = g[i + 1][0];
        let (mut vre, mut vim) = (0.0, 0.0);
        for j in 0..3 {
            vre += p.v[j] * g[i + 1][j + 1].re;
            vim += p.v[j] * g[i + 1][j + 1].im;
        }
        out.grav[i] = -g00.re;
        out.lorentz[i] = 2.0 * q * (g00.im + vim);
        out.residual[i] = q * q * g00.re - 2.0 * vre;
        out.imaginary[i] = -((1.0 - q * q) * g00.im + 2.0 * q * g00.re + 2.0 * vim + 2.0 * q * vre);
    }
    Ok(out)
}

fn rate(cfg: &WeakFieldConfig, p: &TestParticle, x: [f64; 4], v: [f64; 3]) -> Result<([f64; 3], [f64; 3])> {
    let probe = TestParticle { x, v, ..*p };
    Ok((v, force_decomposition(cfg, &probe, &x)?.total()))
}

/// Advances the particle by `dt` in `x⁰` with the classical fourth-order
/// Runge-Kutta scheme, integrating only the real part of the transport equation.
pub fn geodesic_step(cfg: &WeakFieldConfig, p: &TestParticle, dt: f64) -> Result<TestParticle> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidArgument("dt must be positive".into()));
    }
    let at = |x0: f64, dx: [f64; 3], s: f64| -> [f64; 4] {
        [x0, p.x[1] + s * dx[0], p.x[2] + s * dx[1], p.x[3] + s * dx[2]]
    };
    let add = |v: [f64; 3], dv: [f64; 3], s: f64| -> [f64; 3] { std::array::from_fn(|i| v[i] + s * dv[i]) };
    let (k1x, k1v) = rate(cfg, p, p.x, p.v)?;
    let (k2x, k2v) = rate(cfg, p, at(p.x[0] + 0.5 * dt, k1x, 0.5 * dt), add(p.v, k1v, 0.5 * dt))?;
    let (k3x, k3v) = rate(cfg, p, at(p.x[0] + 0.5 * dt, k2x, 0.5 * dt), add(p.v, k2v, 0.5 * dt))?;
    let (k4x, k4v) = rate(cfg, p, at(p.x[0] + dt, k3x, dt), add(p.v, k3v, dt))?;
    let comb = |a: [f64; 3], b: [f64; 3], c: [f64; 3], d: [f64; 3]| -> [f64; 3] {
        std::array::from_fn(|i| (a[i] + 2.0 * b[i] + 2.0 * c[i] + d[i]) * dt / 6.0)
    };
    let dx = comb(k1x, k2x, k3x, k4x);
    let dv = comb(k1v, k2v, k3v, k4v);
    let next = TestParticle {
        x: [p.x[0] + dt, p.x[1] + dx[0], p.x[2] + dx[1], p.x[3] + dx[2]],
        v: add(p.v, dv, 1.0),
        ..*p
    };
    cfg.check_guard(&next.x)?;
    next.validate()?;
    Ok(next)
}

/// One row of an integrated trajectory.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrajectorySample {
    pub t: f64,
    pub x: [f64; 3],
    pub v: [f64; 3],
    pub forces: ForceDecomposition,
}

fn sample(cfg: &WeakFieldConfig, p: &TestParticle) -> Result<TrajectorySample> {
    Ok(TrajectorySample {
        t: p.x[0] / cfg.c,
        x: [p.x[1], p.x[2], p.x[3]],
        v: p.v,
        forces: force_decomposition(cfg, p, &p.x)?,
    })
}

/// Integrates `steps` steps of size `dt`, returning `steps + 1` samples that
/// start with the initial state.
pub fn trajectory(cfg: &WeakFieldConfig, p: &TestParticle, dt: f64, steps: usize) -> Result<Vec<TrajectorySample>> {
    cfg.validate()?;
    p.validate()?;
    let mut out = Vec::with_capacity(steps + 1);
    let mut cur = *p;
    out.push(sample(cfg, &cur)?);
    for _ in 0..steps {
        cur = geodesic_step(cfg, &cur, dt)?;
        out.push(sample(cfg, &cur)?);
    }
    Ok(out)
}

/// Gyration period in `x⁰` for a uniform field of magnitude `b`.
pub fn cyclotron_period(cfg: &WeakFieldConfig, p: &TestParticle, b: f64) -> f64 {
    2.0 * std::f64::consts::PI * p.m / (p.e * cfg.rho * cfg.mu_e * b).abs()
}
