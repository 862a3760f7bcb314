use super::CurvatureTensors;
use crate::algebra::{MirrorTensor, MixtureTensor};
use crate::fd::{FiniteDifferenceScheme, Point};
use crate::linalg::{self, Mat4, Tensor3, C64, ZERO};
use crate::report::SuiteReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variance {
    /// Components `f^α`.
    Vector,
    /// Components `f_α`.
    Dual,
}

/// `d[α][β]` = `f^α_{;β} = f^α_{,β} + f^γ Γ^α_{γβ}` or
/// `f_{α;β} = f_{α,β} − f_γ Γ^γ_{αβ}`.
pub fn covariant_derivative(
    f: &dyn Fn(&Point) -> [C64; 4],
    gamma: &dyn Fn(&Point) -> Tensor3,
    z: &Point,
    variance: Variance,
    fd: &FiniteDifferenceScheme,
) -> Mat4 {
    let fz = f(z);
    let df = fd.gradient(f, z);
    covariant_from_parts(&fz, &df, &gamma(z), variance)
}

pub(crate) fn covariant_from_parts(
    fz: &[C64; 4],
    df: &[[C64; 4]; 4],
    g: &Tensor3,
    variance: Variance,
) -> Mat4 {
    let mut out = linalg::zero_mat();
    for a in 0..4 {
        for b in 0..4 {
            let mut v = df[b][a];
            for c in 0..4 {
                v += match variance {
                    Variance::Vector => fz[c] * g[a][c][b],
                    Variance::Dual => -fz[c] * g[c][a][b],
                };
            }
            out[a][b] = v;
        }
    }
    out
}

/// Pointwise fields needed by [`compatibility_residuals`].
pub struct GeometryFields<'a> {
    pub metric: &'a dyn Fn(&Point) -> Mat4,
    pub mixture: &'a dyn Fn(&Point) -> Tensor3,
    pub connection: &'a dyn Fn(&Point) -> Tensor3,
    /// Row-form mirror `ē_β = m[β][ν] e_ν` on the same bases.
    pub mirror: &'a dyn Fn(&Point) -> Mat4,
    /// Components of the unit element over the bases.
    pub identity: &'a dyn Fn(&Point) -> [C64; 4],
}

/// Maximum residuals of the metric and mixture compatibility conditions over
/// the given points:
///
/// * `g_{αβ;μ} = g_{αβ,μ} − g_{λβ}Γ^λ_{αμ} − g_{αλ}Γ^λ_{βμ}`
/// * `η^γ_{αβ;μ} = η^γ_{αβ,μ} + η^λ_{αβ}Γ^γ_{λμ} − η^γ_{λβ}Γ^λ_{αμ} − η^γ_{αλ}Γ^λ_{βμ}`
/// * the split of `(g_{αβ} 1)_{,μ} = (η^γ_{(αβ̄)} e_γ)_{,μ}` into its unit
///   channel and the remaining channels.
pub fn compatibility_residuals(
    fields: &GeometryFields<'_>,
    points: &[Point],
    fd: &FiniteDifferenceScheme,
    tol: f64,
) -> SuiteReport {
    let mut metric_res: f64 = 0.0;
    let mut mixture_res: f64 = 0.0;
    let mut split_scalar: f64 = 0.0;
    let mut split_vector: f64 = 0.0;
    let sym = |p: &Point| mirrored_symmetric(&(fields.mixture)(p), &(fields.mirror)(p));
    for z in points {
        let g = (fields.metric)(z);
        let dg = fd.gradient(fields.metric, z);
        let eta = (fields.mixture)(z);
        let deta = fd.gradient(fields.mixture, z);
        let gam = (fields.connection)(z);
        let s = sym(z);
        let ds = fd.gradient(&sym, z);
        let one = (fields.identity)(z);
        for m in 0..4 {
            for a in 0..4 {
                for b in 0..4 {
                    let mut v = dg[m][a][b];
                    for l in 0..4 {
                        v -= g[l][b] * gam[l][a][m] + g[a][l] * gam[l][b][m];
                    }
                    metric_res = metric_res.max(v.norm());

                    for c in 0..4 {
                        let mut w = deta[m][c][a][b];
                        let mut x = dg[m][a][b] * one[c] - ds[m][c][a][b];
                        for l in 0..4 {
                            w += eta[l][a][b] * gam[c][l][m]
                                - eta[c][l][b] * gam[l][a][m]
                                - eta[c][a][l] * gam[l][b][m];
                            x -= s[l][a][b] * gam[c][l][m];
                        }
                        mixture_res = mixture_res.max(w.norm());
                        if c == 0 {
                            split_scalar = split_scalar.max(x.norm());
                        } else {
                            split_vector = split_vector.max(x.norm());
                        }
                    }
                }
            }
        }
    }
    let mut r = SuiteReport::new("geometry-compatibility");
    r.check("metric-compatibility", "covariant derivative of the metric vanishes", metric_res, tol);
    r.check("mixture-compatibility", "covariant derivative of the mixture vanishes", mixture_res, tol);
    r.check(
        "mixture-metric-split-unit",
        "unit channel of the differentiated symmetrized mirrored mixture reproduces g_{αβ,μ}",
        split_scalar,
        tol,
    );
    r.check(
        "mixture-metric-split-rest",
        "remaining channels of the differentiated symmetrized mirrored mixture cancel",
        split_vector,
        tol,
    );
    r
}

/// `η^γ_{(αβ̄)} = ½(η^γ_{αν} m[β][ν] + η^γ_{βν} m[α][ν])`.
pub fn mirrored_symmetric(eta: &Tensor3, mirror_rows: &Mat4) -> Tensor3 {
    let mut out = linalg::zero_tensor3();
    for g in 0..4 {
        for a in 0..4 {
            for b in 0..4 {
                let mut v = ZERO;
                for n in 0..4 {
                    v += eta[g][a][n] * mirror_rows[b][n] + eta[g][b][n] * mirror_rows[a][n];
                }
                out[g][a][b] = 0.5 * v;
            }
        }
    }
    out
}

/// The second-order relation between a field, the connection and the
/// curvature at a point.
#[derive(Clone, Debug, PartialEq)]
pub struct SecondOrderResidual {
    /// `e[α][μ][ν] = f^α_{;[μ̄;ν̄]} + f^α_{;γ̄}Γ^γ_{[μ̄ν̄]} − f^γ R^α_{γν̄μ̄}`, zero
    /// for consistent inputs.
    pub raw: Tensor3,
    /// `x[α][δ] = e[α][μ][ν] η_δ^{νμ}`.
    pub contracted: Mat4,
    /// `x[α][δ] η^δ_{αω}`, indexed by ω.
    pub full: [C64; 4],
}

/// Evaluates the antisymmetrized second covariant derivative of `f` against
/// the connection torsion and the curvature, with both derivative slots
/// acted on by the mirror.
pub fn second_order_residual(
    f: &dyn Fn(&Point) -> [C64; 4],
    gamma: &dyn Fn(&Point) -> Tensor3,
    curv: &CurvatureTensors,
    eta: &MixtureTensor,
    mirror: &MirrorTensor,
    z: &Point,
    fd: &FiniteDifferenceScheme,
) -> SecondOrderResidual {
    let first = |p: &Point| -> [[C64; 4]; 4] {
        covariant_derivative(f, gamma, p, Variance::Vector, fd)
    };
    let d1 = first(z);
    let dd1 = fd.gradient(&first, z);
    let g = gamma(z);

    // f^α_{;μ;ν} = ∂_ν f^α_{;μ} + f^λ_{;μ}Γ^α_{λν} − f^α_{;γ}Γ^γ_{μν}
    let mut second = [[[ZERO; 4]; 4]; 4];
    for a in 0..4 {
        for m in 0..4 {
            for n in 0..4 {
                let mut v = dd1[n][a][m];
                for l in 0..4 {
                    v += d1[l][m] * g[a][l][n] - d1[a][l] * g[l][m][n];
                }
                second[a][m][n] = v;
            }
        }
    }
    let md = mirror.diagonal_entries();
    let mut raw = linalg::zero_tensor3();
    for a in 0..4 {
        for m in 0..4 {
            for n in 0..4 {
                let mut v = 0.5 * (second[a][m][n] - second[a][n][m]);
                for c in 0..4 {
                    v += d1[a][c] * 0.5 * (g[c][m][n] - g[c][n][m]);
                    v -= f(z)[c] * curv.r[a][c][n][m];
                }
                raw[a][m][n] = v * md[m] * md[n];
            }
        }
    }
    let u = &eta.upper;
    let l = &eta.lower;
    let mut contracted = linalg::zero_mat();
    for a in 0..4 {
        for d in 0..4 {
            let mut v = ZERO;
            for m in 0..4 {
                for n in 0..4 {
                    v += raw[a][m][n] * u[d][n][m];
                }
            }
            contracted[a][d] = v;
        }
    }
    let mut full = [ZERO; 4];
    for (w, out) in full.iter_mut().enumerate() {
        for a in 0..4 {
            for d in 0..4 {
                *out += contracted[a][d] * l[d][a][w];
            }
        }
    }
    SecondOrderResidual {
        raw,
        contracted,
        full,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;

    fn flat(_: &Point) -> Tensor3 {
        linalg::zero_tensor3()
    }

    #[test]
    fn constant_field_in_flat_space() {
        let f = |_: &Point| [c(1.0, 0.0), c(0.0, 2.0), ZERO, ZERO];
        let d = covariant_derivative(&f, &flat, &[0.0; 4], Variance::Vector, &FiniteDifferenceScheme::new(1e-3));
        assert_eq!(linalg::max_abs_mat(&d), 0.0);
    }

    #[test]
    fn coordinate_function() {
        let f = |z: &Point| [c(z[0], 0.0), ZERO, ZERO, ZERO];
        let d = covariant_derivative(&f, &flat, &[0.3, 0.0, 0.0, 0.0], Variance::Vector, &FiniteDifferenceScheme::new(1e-3));
        for b in 0..4 {
            let expect = if b == 0 { 1.0 } else { 0.0 };
            assert!((d[0][b] - c(expect, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn dual_sign() {
        let mut g = linalg::zero_tensor3();
        g[1][0][2] = c(2.0, 0.0);
        let gamma = move |_: &Point| g;
        let f = |_: &Point| [ZERO, c(1.0, 0.0), ZERO, ZERO];
        let fd = FiniteDifferenceScheme::new(1e-3);
        let dv = covariant_derivative(&f, &gamma, &[0.0; 4], Variance::Vector, &fd);
        let dd = covariant_derivative(&f, &gamma, &[0.0; 4], Variance::Dual, &fd);
        assert_eq!(dd[0][2], c(-2.0, 0.0));
        assert_eq!(dv[0][2], ZERO);
    }
}
