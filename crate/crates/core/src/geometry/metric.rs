use crate::algebra::MetricPair;
use crate::error::{Error, Result};
use crate::fd::{FiniteDifferenceScheme, Point};
use crate::linalg::{self, Mat4, Tensor3, ZERO};

fn invert_metric(g: &Mat4) -> Result<Mat4> {
    let (inv, condition) = linalg::invert(g).ok_or(Error::SingularMetric {
        condition: f64::INFINITY,
    })?;
    if condition > linalg::CONDITION_LIMIT {
        return Err(Error::SingularMetric { condition });
    }
    Ok(inv)
}

/// `Γ^σ_{(αμ)} = ½ g^{βσ}(g_{αβ,μ} + g_{βμ,α} − g_{μα,β})`, exactly symmetric
/// in the lower pair.
pub fn christoffel_from_metric(
    g: &dyn Fn(&Point) -> Mat4,
    z: &Point,
    fd: &FiniteDifferenceScheme,
) -> Result<Tensor3> {
    let upper = invert_metric(&g(z))?;
    let dg = fd.gradient(g, z);
    let mut out = linalg::zero_tensor3();
    for s in 0..4 {
        for a in 0..4 {
            for m in a..4 {
                let mut v = ZERO;
                for b in 0..4 {
                    v += upper[b][s] * (dg[m][a][b] + dg[a][b][m] - dg[b][m][a]);
                }
                out[s][a][m] = 0.5 * v;
                out[s][m][a] = 0.5 * v;
            }
        }
    }
    Ok(out)
}

/// Cartan's commutation coefficients and the split of a connection into its
/// metric and commutation parts.
#[derive(Clone, Debug, PartialEq)]
pub struct CommutationSplit {
    /// `c[δ][β][α] = C^δ_{βα} = 2Γ^δ_{[αβ]}`.
    pub c: Tensor3,
    /// `c_lower[β][α][μ] = C_{βαμ} = −2 g_{λμ} Γ^λ_{[βα]}`.
    pub c_lower: Tensor3,
    /// `Γ^σ_{(αμ)}`.
    pub symmetric: Tensor3,
    /// `Γ^σ_{[αμ]}`.
    pub antisymmetric: Tensor3,
    /// `½ g^{βσ}(C_{βαμ} + C_{βμα} − C_{αμβ})`, the part of Γ carried by the
    /// commutation coefficients.
    pub contorsion: Tensor3,
    /// `Γ` minus its commutation part: the metric (Christoffel) connection.
    pub metric_part: Tensor3,
}

pub fn commutation_coefficients(gamma: &Tensor3, g: &MetricPair) -> CommutationSplit {
    let mut c = linalg::zero_tensor3();
    let mut symmetric = linalg::zero_tensor3();
    let mut antisymmetric = linalg::zero_tensor3();
    for d in 0..4 {
        for a in 0..4 {
            for b in 0..4 {
                c[d][b][a] = gamma[d][a][b] - gamma[d][b][a];
                symmetric[d][a][b] = 0.5 * (gamma[d][a][b] + gamma[d][b][a]);
                antisymmetric[d][a][b] = 0.5 * (gamma[d][a][b] - gamma[d][b][a]);
            }
        }
    }
    let mut c_lower = linalg::zero_tensor3();
    for b in 0..4 {
        for a in 0..4 {
            for m in 0..4 {
                let mut v = ZERO;
                for l in 0..4 {
                    v += g.lower[l][m] * antisymmetric[l][b][a];
                }
                c_lower[b][a][m] = -2.0 * v;
            }
        }
    }
    let mut contorsion = linalg::zero_tensor3();
    let mut metric_part = linalg::zero_tensor3();
    for s in 0..4 {
        for a in 0..4 {
            for m in 0..4 {
                let mut v = ZERO;
                for b in 0..4 {
                    v += g.upper[b][s] * (c_lower[b][a][m] + c_lower[b][m][a] - c_lower[a][m][b]);
                }
                contorsion[s][a][m] = 0.5 * v;
                metric_part[s][a][m] = gamma[s][a][m] - 0.5 * v;
            }
        }
    }
    CommutationSplit {
        c,
        c_lower,
        symmetric,
        antisymmetric,
        contorsion,
        metric_part,
    }
}
