use super::contour::AnalyticField;
use crate::algebra::{MixtureTensor, MultiVector};
use crate::error::Result;
use crate::fd::{FiniteDifferenceScheme, Point};
use crate::geometry::{covariant_from_parts, Variance};
use crate::linalg::{self, Mat4, Tensor3, C64, ZERO};

/// `t[γ][β][α]` = components of `e^β e_α`, or of `ē^β e_α` when `mirrored`.
fn mixed_table(eta: &MixtureTensor, mirrored: bool) -> Result<Tensor3> {
    let dual = eta.dual_basis()?;
    let mut t = linalg::zero_tensor3();
    for b in 0..eta.dim {
        let up = if mirrored { eta.mirror.apply(&dual[b]) } else { dual[b] };
        for a in 0..eta.dim {
            let p = eta.mul(&up, &MultiVector::basis(a));
            for g in 0..4 {
                t[g][b][a] = p.c[g];
            }
        }
    }
    Ok(t)
}

fn covariant(
    f: &AnalyticField,
    gamma: &dyn Fn(&Point) -> Tensor3,
    z: &Point,
    fd: &FiniteDifferenceScheme,
) -> Mat4 {
    let grad = f.gradient(z, fd);
    let df: [[C64; 4]; 4] = std::array::from_fn(|b| grad[b].c);
    covariant_from_parts(&f.components(z), &df, &gamma(z), Variance::Vector)
}

fn contract(t: &Tensor3, d: &Mat4, n: usize) -> [C64; 4] {
    let mut out = [ZERO; 4];
    for (g, o) in out.iter_mut().enumerate() {
        for b in 0..n {
            for a in 0..n {
                *o += t[g][b][a] * d[a][b];
            }
        }
    }
    out
}

/// `d f/dz = (1/n) e^β e_α f^α_{;β}` over the first `n = η.dim` coordinates.
pub fn proper_derivative(
    f: &AnalyticField,
    gamma: &dyn Fn(&Point) -> Tensor3,
    eta: &MixtureTensor,
    z: &Point,
    fd: &FiniteDifferenceScheme,
) -> Result<MultiVector> {
    let t = mixed_table(eta, false)?;
    let d = covariant(f, gamma, z, fd);
    let v = contract(&t, &d, eta.dim);
    Ok(MultiVector::from_components(v).scale_real(1.0 / eta.dim as f64))
}

/// Components of `ē^β e_α f^α_{;β}`, the derivative along the mirrored
/// directions. It vanishes exactly when `f` is analytic at `z`.
///
/// In the complex restriction this is `(∂_x + i ∂_y) f = 2 ∂f/∂z*`.
pub fn analyticity_residual(
    f: &AnalyticField,
    gamma: &dyn Fn(&Point) -> Tensor3,
    eta: &MixtureTensor,
    z: &Point,
    fd: &FiniteDifferenceScheme,
) -> Result<[C64; 4]> {
    let t = mixed_table(eta, true)?;
    let d = covariant(f, gamma, z, fd);
    Ok(contract(&t, &d, eta.dim))
}

/// A connection that vanishes everywhere.
pub fn flat(_: &Point) -> Tensor3 {
    linalg::zero_tensor3()
}
