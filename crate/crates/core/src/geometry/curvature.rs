use crate::algebra::{MetricPair, MixtureTensor};
use crate::error::{Error, Result};
use crate::fd::{FiniteDifferenceScheme, Point};
use crate::linalg::{self, Mat4, Tensor3, Tensor4, C64, ZERO};
use crate::report::{Check, SuiteReport};

/// Second connection, Riemann tensor and its traces at a point.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureTensors {
    /// `p[α][β][ν][μ] = P^α_{βνμ} = Γ^α_{σν}Γ^σ_{βμ} + Γ^α_{βμ,ν}`.
    pub p: Tensor4,
    /// `r[α][β][ν][μ] = R^α_{βνμ} = P^α_{β[νμ]}`.
    pub r: Tensor4,
    /// `ricci[γ][μ] = R^α_{γαμ}`.
    pub ricci: Mat4,
    /// `g^{γμ} R_{γμ}`, present when a metric was supplied.
    pub scalar: Option<C64>,
}

pub fn curvature(
    gamma: &dyn Fn(&Point) -> Tensor3,
    z: &Point,
    fd: &FiniteDifferenceScheme,
    metric: Option<&MetricPair>,
) -> Result<CurvatureTensors> {
    let g0 = gamma(z);
    let dg = fd.gradient(gamma, z);
    let finite = |t: &Tensor3| t.iter().flatten().flatten().all(|c| c.re.is_finite() && c.im.is_finite());
    if !finite(&g0) || !dg.iter().all(finite) {
        return Err(Error::NonFinite("connection"));
    }
    Ok(curvature_from_parts(&g0, &dg, metric))
}

/// Curvature from a connection value and its four partial derivatives
/// `dgamma[ν] = ∂_ν Γ`.
pub fn curvature_from_parts(
    gamma: &Tensor3,
    dgamma: &[Tensor3; 4],
    metric: Option<&MetricPair>,
) -> CurvatureTensors {
    let mut p = linalg::zero_tensor4();
    for a in 0..4 {
        for b in 0..4 {
            for n in 0..4 {
                for m in 0..4 {
                    let mut v = dgamma[n][a][b][m];
                    for s in 0..4 {
                        v += gamma[a][s][n] * gamma[s][b][m];
                    }
                    p[a][b][n][m] = v;
                }
            }
        }
    }
    let mut r = linalg::zero_tensor4();
    for a in 0..4 {
        for b in 0..4 {
            for n in 0..4 {
                for m in 0..4 {
                    r[a][b][n][m] = 0.5 * (p[a][b][n][m] - p[a][b][m][n]);
                }
            }
        }
    }
    let ricci = ricci_trace(&r);
    let scalar = metric.map(|g| scalar_trace(&ricci, g));
    CurvatureTensors {
        p,
        r,
        ricci,
        scalar,
    }
}

fn ricci_trace(r: &Tensor4) -> Mat4 {
    let mut ricci = linalg::zero_mat();
    for g in 0..4 {
        for m in 0..4 {
            for a in 0..4 {
                ricci[g][m] += r[a][g][a][m];
            }
        }
    }
    ricci
}

fn scalar_trace(ricci: &Mat4, g: &MetricPair) -> C64 {
    let mut s = ZERO;
    for a in 0..4 {
        for b in 0..4 {
            s += g.upper[a][b] * ricci[a][b];
        }
    }
    s
}

/// `max |R^α_{β(νμ)}|`.
pub fn symmetric_part_defect(r: &Tensor4) -> f64 {
    let mut worst: f64 = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            for n in 0..4 {
                for m in 0..4 {
                    worst = worst.max((r[a][b][n][m] + r[a][b][m][n]).norm());
                }
            }
        }
    }
    worst
}

/// Checks the Riemann ansatz `R^α_{γνμ} = K_{γβ} η_λ^{αβ} η^λ_{μν}`: its
/// trace must be `4K`, its scalar `4 g^{γμ}K_{γμ}`. The symmetric remainder
/// `K_{γβ} η_λ^{αβ} η^λ_{(μν)}` is reported without gating.
pub fn ricci_ansatz_check(k: &Mat4, eta: &MixtureTensor, metric: &MetricPair, tol: f64) -> SuiteReport {
    let l = &eta.lower;
    let u = &eta.upper;
    let mut r = linalg::zero_tensor4();
    let mut sym: f64 = 0.0;
    for a in 0..4 {
        for g in 0..4 {
            for n in 0..4 {
                for m in 0..4 {
                    let mut v = ZERO;
                    let mut s = ZERO;
                    for b in 0..4 {
                        for lam in 0..4 {
                            let kb = k[g][b] * u[lam][a][b];
                            v += kb * l[lam][m][n];
                            s += kb * 0.5 * (l[lam][m][n] + l[lam][n][m]);
                        }
                    }
                    r[a][g][n][m] = v;
                    sym = sym.max(s.norm());
                }
            }
        }
    }
    let ricci = ricci_trace(&r);
    let trace_residual = linalg::max_abs_diff_mat(&ricci, &linalg::mat_scale(k, C64::new(4.0, 0.0)));
    let scalar = scalar_trace(&ricci, metric);
    let k_trace = scalar_trace(k, metric);
    let scale = linalg::max_abs_mat(k).max(1.0);
    let mut rep = SuiteReport::new("ricci-ansatz");
    rep.check(
        "ricci-trace",
        "trace of the ansatz Riemann tensor equals 4K",
        trace_residual / scale,
        tol,
    );
    rep.check(
        "ricci-scalar",
        "curvature scalar equals 4 g^{γμ}K_{γμ}",
        (scalar - 4.0 * k_trace).norm() / scale,
        tol,
    );
    rep.push(Check::informational(
        "ansatz-symmetric-remainder",
        "K_{γβ} η_λ^{αβ} η^λ_{(μν)}, recorded as computed",
        sym,
        tol,
    ));
    rep
}
