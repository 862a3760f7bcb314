use super::config::WeakFieldConfig;
use crate::algebra::MetricPair;
use crate::error::Result;
use crate::fd::{FiniteDifferenceScheme, Point};
use crate::geometry::christoffel_from_metric;
use crate::linalg::{Mat4, C64};

const ZERO: C64 = C64::new(0.0, 0.0);

/// Time column of the weak-field connection, `gamma[ω][γ] = Γ^ω_{γ0}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConnectionSlice {
    /// Gravitational matrix with `G` in the first row and column.
    pub j: [[f64; 4]; 4],
    /// `F^{ωλ} 1_{λγ}`: `±E` in the first row and column, `−ε_{ijk} B_k` in the spatial block.
    pub fdual: [[f64; 4]; 4],
    /// `½μ_g J − ½iμ_e F` plus `½∂₀(μ_g ψ + iμ_e φ)` on the diagonal.
    pub gamma: [[C64; 4]; 4],
    /// The same column from the Christoffel formula on the perturbed metric.
    pub metric: [[C64; 4]; 4],
}

impl ConnectionSlice {
    /// Largest `|Γ − Γ†|` entry of the assembled column.
    pub fn hermitian_defect(&self) -> f64 {
        let mut d = 0.0f64;
        for r in 0..4 {
            for c in 0..4 {
                d = d.max((self.gamma[r][c] - self.gamma[c][r].conj()).norm());
            }
        }
        d
    }

    /// Largest entry of `gamma − metric` over the rows and columns selected.
    pub fn metric_residual(&self, select: impl Fn(usize, usize) -> bool) -> f64 {
        let mut d = 0.0f64;
        for r in 0..4 {
            for c in 0..4 {
                if select(r, c) {
                    d = d.max((self.gamma[r][c] - self.metric[r][c]).norm());
                }
            }
        }
        d
    }
}

fn lower_metric(cfg: &WeakFieldConfig, z: &Point) -> Mat4 {
    let a = C64::new(cfg.mu_g * (cfg.psi)(z), cfg.mu_e * (cfg.phi)(z));
    let pot = (cfg.a)(z);
    let mut g = [[ZERO; 4]; 4];
    g[0][0] = -1.0 - a;
    for j in 1..4 {
        g[j][j] = 1.0 + a;
        let off = C64::new(0.0, 0.5 * cfg.mu_e * pot[j - 1]);
        g[0][j] = off;
        g[j][0] = off;
    }
    g
}

/// Perturbed metric of signature (−,+,+,+); the upper metric is the exact inverse.
pub fn perturbed_metric(cfg: &WeakFieldConfig, z: &Point) -> Result<MetricPair> {
    cfg.check_guard(z)?;
    MetricPair::from_lower(lower_metric(cfg, z))
}

pub(crate) fn assembled(cfg: &WeakFieldConfig, z: &Point) -> Result<([[f64; 4]; 4], [[f64; 4]; 4], [[C64; 4]; 4])> {
    cfg.check_guard(z)?;
    let f = cfg.fields(z);
    let mut j = [[0.0; 4]; 4];
    let mut fd = [[0.0; 4]; 4];
    for i in 1..4 {
        j[0][i] = f.g[i - 1];
        j[i][0] = f.g[i - 1];
        fd[0][i] = f.e[i - 1];
        fd[i][0] = -f.e[i - 1];
    }
    let b = f.b;
    fd[1][2] = -b[2];
    fd[2][1] = b[2];
    fd[1][3] = b[1];
    fd[3][1] = -b[1];
    fd[2][3] = -b[0];
    fd[3][2] = b[0];
    let diag = C64::new(0.5 * cfg.mu_g * f.psi_t, 0.5 * cfg.mu_e * f.phi_t);
    let mut gamma = [[ZERO; 4]; 4];
    for r in 0..4 {
        for c in 0..4 {
            gamma[r][c] = C64::new(0.5 * cfg.mu_g * j[r][c], -0.5 * cfg.mu_e * fd[r][c]);
        }
        gamma[r][r] += diag;
    }
    Ok((j, fd, gamma))
}

/// Assembles the time column of the connection and, for comparison, evaluates
/// it from the perturbed metric with `fd`.
pub fn weakfield_connection(
    cfg: &WeakFieldConfig,
    z: &Point,
    fd: &FiniteDifferenceScheme,
) -> Result<ConnectionSlice> {
    let (j, fdual, gamma) = assembled(cfg, z)?;
    let full = christoffel_from_metric(&|p: &Point| lower_metric(cfg, p), z, fd)?;
    let metric = std::array::from_fn(|w| std::array::from_fn(|g| full[w][g][0]));
    Ok(ConnectionSlice { j, fdual, gamma, metric })
}
