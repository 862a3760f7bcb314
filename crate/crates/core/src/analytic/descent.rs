use super::contour::{AnalyticField, Contour};
use crate::algebra::{exp_split, MultiVector};
use crate::error::Result;
use crate::linalg::{C64, ZERO};

/// `dφ/ds = ξ + iη + (ζ + iω)k` split into `ξ + ζk` and `η + ωk`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Descent {
    pub derivative: MultiVector,
    /// Unit direction of the vector part of `φ(z(s₀))`, or of `dφ/ds` when
    /// `φ(z(s₀))` is a scalar. Zero when both are scalars.
    pub k: MultiVector,
    /// Vanishes on a purely oscillating path.
    pub re_part: MultiVector,
    /// Vanishes on a path of pure descent.
    pub im_part: MultiVector,
}

fn phi_along(phi: &AnalyticField, c: &Contour, s: f64) -> MultiVector {
    phi.eval(&c.point(s))
}

/// Splits `d/ds φ(z(s))` at `s₀` relative to the exponential direction `k`.
/// Any part of the vector derivative orthogonal to `k` is split by
/// components.
pub fn descent_conditions(phi: &AnalyticField, c: &Contour, s0: f64) -> Result<Descent> {
    let (a, b) = c.range();
    let h = 1e-3 * (b - a);
    let f = |s| phi_along(phi, c, s);
    let d = (f(s0 - 2.0 * h) - f(s0 + 2.0 * h)).scale_real(1.0 / (12.0 * h))
        + (f(s0 + h) - f(s0 - h)).scale_real(8.0 / (12.0 * h));
    let at = exp_split(&f(s0))?;
    let k = if at.k.max_abs() > 0.0 { at.k } else { exp_split(&d)?.k };
    let v = d.vector_part();
    let kv = k.vector_part();
    let lambda: C64 = v.iter().zip(kv.iter()).map(|(x, y)| x * y).sum();
    let mut rest = [ZERO; 3];
    for i in 0..3 {
        rest[i] = v[i] - lambda * kv[i];
    }
    let s = d.scalar_part();
    let part = |pick: fn(C64) -> f64| {
        let mut out = MultiVector::scalar(C64::new(pick(s), 0.0)) + k.scale(C64::new(pick(lambda), 0.0));
        for i in 0..3 {
            out.c[i + 1] += pick(rest[i]);
        }
        out
    };
    Ok(Descent { derivative: d, k, re_part: part(|x| x.re), im_part: part(|x| x.im) })
}
