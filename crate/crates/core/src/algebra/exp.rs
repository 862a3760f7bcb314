use super::{MixtureTensor, MultiVector};
use crate::error::{Error, Result};
use crate::linalg::{C64, I, ZERO};

/// Series length used by [`mv_exp`] callers that have no better choice; the
/// tail is below 1e-15 for arguments of norm up to 10.
pub const DEFAULT_EXP_TERMS: usize = 64;

/// `Σ φᵏ/k!` in the natural geometry.
pub fn mv_exp(phi: &MultiVector, terms: usize) -> Result<MultiVector> {
    mv_exp_with(phi, terms, &MixtureTensor::natural())
}

/// `Σ φᵏ/k!` under `eta`, failing when the last term is not negligible.
pub fn mv_exp_with(phi: &MultiVector, terms: usize, eta: &MixtureTensor) -> Result<MultiVector> {
    if terms == 0 {
        return Err(Error::InvalidArgument("exponential needs at least one term".into()));
    }
    if !phi.is_finite() {
        return Err(Error::NonFinite("exponent"));
    }
    let mut sum = MultiVector::one();
    let mut term = MultiVector::one();
    for k in 1..terms {
        term = eta.mul(&term, phi).scale_real(1.0 / k as f64);
        sum += term;
    }
    let tail = term.max_abs();
    if !(tail <= 1e-15 * sum.max_abs().max(1.0)) {
        return Err(Error::NonConvergence { terms, tail });
    }
    Ok(sum)
}

/// `e^φ = e^{α+γk} e^{i(β+δk)}` with `k² = e₀`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExpSplit {
    pub evanescent: MultiVector,
    pub oscillatory: MultiVector,
    /// Unit direction of the vector part, zero when φ is a scalar.
    pub k: MultiVector,
    /// `α + iβ`.
    pub scalar: C64,
    /// `γ + iδ`, the principal root of `(c + i d)·(c + i d)`.
    pub root: C64,
}

/// The dot product `w·w` of a complex 3-vector, without conjugation.
pub fn bilinear_square(w: &[C64; 3]) -> C64 {
    w.iter().map(|x| x * x).sum()
}

/// Splits `φ = α + iβ + c + i d` (natural geometry) into its evanescent and
/// oscillatory factors.
pub fn exp_split(phi: &MultiVector) -> Result<ExpSplit> {
    if !phi.is_finite() {
        return Err(Error::NonFinite("exponent"));
    }
    let s = phi.scalar_part();
    let w = phi.vector_part();
    let alpha = s.re.exp();
    let phase = C64::new(0.0, s.im).exp();
    if w.iter().all(|x| *x == ZERO) {
        return Ok(ExpSplit {
            evanescent: MultiVector::scalar(C64::new(alpha, 0.0)),
            oscillatory: MultiVector::scalar(phase),
            k: MultiVector::zero(),
            scalar: s,
            root: ZERO,
        });
    }
    let ww = bilinear_square(&w);
    let wn: f64 = w.iter().map(|x| x.norm_sqr()).sum();
    if ww.norm() <= 1e-14 * wn {
        return Err(Error::DegenerateVector);
    }
    let root = ww.sqrt();
    let kv = w.map(|x| x / root);
    let k = MultiVector::from_scalar_vector(ZERO, kv);
    let (g, d) = (root.re, root.im);
    let evanescent = (MultiVector::scalar(C64::new(g.cosh(), 0.0)) + k.scale_real(g.sinh()))
        .scale_real(alpha);
    let oscillatory =
        (MultiVector::scalar(C64::new(d.cos(), 0.0)) + k.scale(I * d.sin())).scale(phase);
    Ok(ExpSplit {
        evanescent,
        oscillatory,
        k,
        scalar: s,
        root,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RotationMode {
    /// `z e^{i e_a ω}`.
    OneSided,
    /// `e^{−½ i e_a ω} z e^{½ i e_a ω}`, which fixes the scalar part.
    Sandwich,
}

/// `cos θ + i e_axis sin θ`, the closed form of `e^{i e_axis θ}`.
pub fn rotor(axis: usize, theta: f64) -> MultiVector {
    MultiVector::scalar(C64::new(theta.cos(), 0.0)) + MultiVector::basis(axis).scale(I * theta.sin())
}

/// Rotates `z` about the spatial axis `axis ∈ 1..=3`.
///
/// # Panics
/// If `axis` is not a spatial index.
pub fn rotate(z: &MultiVector, axis: usize, omega: f64, mode: RotationMode) -> MultiVector {
    assert!((1..=3).contains(&axis), "rotation axis must be 1, 2 or 3");
    let eta = MixtureTensor::natural();
    match mode {
        RotationMode::OneSided => eta.mul(z, &rotor(axis, omega)),
        RotationMode::Sandwich => {
            let left = rotor(axis, -0.5 * omega);
            let right = rotor(axis, 0.5 * omega);
            eta.mul(&eta.mul(&left, z), &right)
        }
    }
}
