use crate::algebra::{MetricPair, MixtureTensor, MultiVector};
use crate::error::{Error, Result};
use crate::linalg::{self, Mat4, C64, ZERO};

/// Largest antisymmetry defect tolerated by [`faraday_relations`], relative
/// to the largest entry.
pub const ANTISYMMETRY_TOLERANCE: f64 = 1e-12;

/// Covariant Faraday tensor with `F_{0i} = E_i`, `F_{ij} = −ε_{ijk}B_k`.
pub fn faraday_from_fields(e: [f64; 3], b: [f64; 3]) -> [[f64; 4]; 4] {
    let mut f = [[0.0; 4]; 4];
    for i in 0..3 {
        f[0][i + 1] = e[i];
        f[i + 1][0] = -e[i];
    }
    for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        f[i + 1][j + 1] = -b[k];
        f[j + 1][i + 1] = b[k];
    }
    f
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FaradayRelations {
    /// `E + iB`.
    pub eb: MultiVector,
    /// `F` recovered from `E + iB`.
    pub f_round: [[f64; 4]; 4],
    /// The dual tensor `G` recovered alongside.
    pub g_dual: [[f64; 4]; 4],
    /// `max |F_round − F|`.
    pub round_trip: f64,
}

fn as_complex(f: &[[f64; 4]; 4]) -> Mat4 {
    f.map(|row| row.map(|x| C64::new(x, 0.0)))
}

/// `(E + iB)^γ = ½ η^{αγ}_β g^{βδ} F_{δα}` (the coefficient of `e^β` in
/// `e^α e^γ`), and back through the mirrored product
/// `ē^α e^β → −F^{αβ} − iG^{αβ}`.
pub fn faraday_relations(f: &[[f64; 4]; 4], eta: &MixtureTensor, g: &MetricPair) -> Result<FaradayRelations> {
    let scale = f.iter().flatten().fold(1.0f64, |m, x| m.max(x.abs()));
    let mut defect = 0.0f64;
    for a in 0..4 {
        for b in 0..4 {
            defect = defect.max((f[a][b] + f[b][a]).abs());
        }
    }
    if defect > ANTISYMMETRY_TOLERANCE * scale {
        return Err(Error::AsymmetryError { defect });
    }
    let fc = as_complex(f);
    let u = &eta.upper;
    // mixed[β][α] = g^{βδ} F_{δα}
    let mixed = linalg::mat_mul(&g.upper, &fc);
    let mut v = [ZERO; 4];
    for (gm, out) in v.iter_mut().enumerate() {
        for b in 0..4 {
            for a in 0..4 {
                *out += u[b][a][gm] * mixed[b][a];
            }
        }
        *out *= 0.5;
    }
    let m = &eta.mirror.m;
    let mut y = linalg::zero_mat();
    for a in 0..4 {
        for b in 0..4 {
            for n in 0..4 {
                for gm in 0..4 {
                    y[a][b] += m[a][n] * u[gm][n][b] * v[gm];
                }
            }
        }
    }
    // −F^{αβ} − iG^{αβ}, lowered with g on both sides.
    let lowered = linalg::mat_mul(&linalg::mat_mul(&g.lower, &y), &g.lower);
    let mut f_round = [[0.0; 4]; 4];
    let mut g_dual = [[0.0; 4]; 4];
    let mut round_trip = 0.0f64;
    for a in 0..4 {
        for b in 0..4 {
            f_round[a][b] = -lowered[a][b].re;
            g_dual[a][b] = -lowered[a][b].im;
            round_trip = round_trip.max((f_round[a][b] - f[a][b]).abs());
        }
    }
    Ok(FaradayRelations { eb: MultiVector::from_components(v), f_round, g_dual, round_trip })
}

/// `T^{αβ} = F^{αμ} g_{μλ} F^{λβ} + ¼ g^{αβ} F_{μν}F^{μν}` from covariant `F`.
pub fn stress_energy(f: &[[f64; 4]; 4], g: &MetricPair) -> Mat4 {
    let fl = as_complex(f);
    let fu = linalg::mat_mul(&linalg::mat_mul(&g.upper, &fl), &g.upper);
    let mut inv = ZERO;
    for a in 0..4 {
        for b in 0..4 {
            inv += fl[a][b] * fu[a][b];
        }
    }
    let t = linalg::mat_mul(&linalg::mat_mul(&fu, &g.lower), &fu);
    linalg::mat_add(&t, &linalg::mat_scale(&g.upper, 0.25 * inv))
}

fn contract(t: &Mat4, eta: &MixtureTensor) -> MultiVector {
    let mut out = [ZERO; 4];
    for (gm, o) in out.iter_mut().enumerate() {
        for a in 0..4 {
            for b in 0..4 {
                *o += t[a][b] * eta.lower[gm][a][b];
            }
        }
    }
    MultiVector::from_components(out)
}

/// The Poynting element by both routes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Poynting {
    /// `(E + iB)(E − iB)` under the mixture.
    pub product: MultiVector,
    /// `T^{αβ} η^γ_{αβ} e_γ`.
    pub contraction: MultiVector,
}

impl Poynting {
    pub fn discrepancy(&self) -> f64 {
        self.product.dist(&self.contraction)
    }
}

pub fn poynting_direct(e: [f64; 3], b: [f64; 3], eta: &MixtureTensor) -> MultiVector {
    let v = |s: f64| {
        MultiVector::from_components([
            ZERO,
            C64::new(e[0], s * b[0]),
            C64::new(e[1], s * b[1]),
            C64::new(e[2], s * b[2]),
        ])
    };
    eta.mul(&v(1.0), &v(-1.0))
}

pub fn poynting(e: [f64; 3], b: [f64; 3], eta: &MixtureTensor) -> Poynting {
    let f = faraday_from_fields(e, b);
    let t = stress_energy(&f, &MetricPair::minkowski());
    Poynting { product: poynting_direct(e, b, eta), contraction: contract(&t, eta) }
}

/// `T^{αβ} η^γ_{αβ} e_γ` for `T^{αβ} = (ρ + p)u^αu^β − p g^{αβ}`, which is
/// `(ρ + p)u² + 2p e₀` in the natural geometry.
pub fn perfect_fluid_contraction(rho: f64, p: f64, u: &MultiVector, eta: &MixtureTensor, g: &MetricPair) -> MultiVector {
    let mut t = linalg::zero_mat();
    for a in 0..4 {
        for b in 0..4 {
            t[a][b] = (rho + p) * u.c[a] * u.c[b] - p * g.upper[a][b];
        }
    }
    contract(&t, eta)
}
