use crate::error::Result;
use crate::fd::{FiniteDifferenceScheme, Point};
use crate::geometry::curvature;
use crate::linalg::{self, Tensor3, Tensor4, C64};

/// Curvature of the connection `Γ^μ_{αβ} = δ^μ_α h_β`.
#[derive(Clone, Debug, PartialEq)]
pub struct SimpleFieldCurvature {
    pub p: Tensor4,
    pub r: Tensor4,
    /// `F[ν][μ] = ½(∂_ν h_μ − ∂_μ h_ν)`.
    pub f: [[f64; 4]; 4],
    /// `max |R^α_{βνμ} − δ^α_β F_{νμ}|`.
    pub curvature_defect: f64,
    /// `max_α |Γ^β_{αβ} − h_α|`.
    pub trace_defect: f64,
}

pub fn simple_connection(h: &[f64; 4]) -> Tensor3 {
    let mut t = linalg::zero_tensor3();
    for a in 0..4 {
        for b in 0..4 {
            t[a][a][b] = C64::new(h[b], 0.0);
        }
    }
    t
}

pub fn simple_field_curvature(
    h: &dyn Fn(&Point) -> [f64; 4],
    z: &Point,
    fd: &FiniteDifferenceScheme,
) -> Result<SimpleFieldCurvature> {
    let gamma = |p: &Point| simple_connection(&h(p));
    let t = curvature(&gamma, z, fd, None)?;
    let dh = fd.gradient(h, z);
    let mut f = [[0.0; 4]; 4];
    for n in 0..4 {
        for m in 0..4 {
            f[n][m] = 0.5 * (dh[n][m] - dh[m][n]);
        }
    }
    let mut curvature_defect = 0.0f64;
    for a in 0..4 {
        for b in 0..4 {
            for n in 0..4 {
                for m in 0..4 {
                    let expect = if a == b { f[n][m] } else { 0.0 };
                    curvature_defect = curvature_defect.max((t.r[a][b][n][m] - expect).norm());
                }
            }
        }
    }
    let g0 = gamma(z);
    let h0 = h(z);
    let trace_defect = (0..4)
        .map(|a| ((0..4).map(|b| g0[b][a][b]).sum::<C64>() - h0[a]).norm())
        .fold(0.0, f64::max);
    Ok(SimpleFieldCurvature { p: t.p, r: t.r, f, curvature_defect, trace_defect })
}
