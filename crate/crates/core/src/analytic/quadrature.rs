//! Adaptive Gauss–Kronrod (7/15) quadrature for vector-valued integrands.

use crate::algebra::MultiVector;
use crate::error::{Error, Result};
use crate::fd::FdValue;
use crate::linalg::{C64, ZERO};
use serde::{Deserialize, Serialize};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
/// Gauss weights for the odd Kronrod nodes `XGK[1], XGK[3], XGK[5], XGK[7]`.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Integrand values the quadrature can accumulate.
pub trait Integrand: FdValue + Copy {
    fn zero() -> Self;
    /// Largest component magnitude, used for error control.
    fn magnitude(&self) -> f64;
}

impl Integrand for C64 {
    fn zero() -> Self {
        ZERO
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

impl Integrand for MultiVector {
    fn zero() -> Self {
        MultiVector::zero()
    }
    fn magnitude(&self) -> f64 {
        self.max_abs()
    }
}

impl<const N: usize> Integrand for [C64; N] {
    fn zero() -> Self {
        [ZERO; N]
    }
    fn magnitude(&self) -> f64 {
        self.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }
}

/// Error targets and budget of the adaptive scheme.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Quadrature {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for Quadrature {
    fn default() -> Self {
        Quadrature { abs_tol: 1e-11, rel_tol: 1e-11, max_intervals: 500 }
    }
}

/// Integral value with its estimated error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureResult<T> {
    pub value: T,
    pub error: f64,
    pub intervals: usize,
    pub evaluations: usize,
}

struct Piece<T> {
    a: f64,
    b: f64,
    value: T,
    error: f64,
}

fn gk15<T: Integrand>(f: &dyn Fn(f64) -> T, a: f64, b: f64) -> Piece<T> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc.scaled(WGK[7]);
    let mut gauss = fc.scaled(WG[3]);
    for j in 0..7 {
        let x = half * XGK[j];
        let mut sum = f(center - x);
        sum.add_scaled(&f(center + x), 1.0);
        kronrod.add_scaled(&sum, WGK[j]);
        if j % 2 == 1 {
            gauss.add_scaled(&sum, WG[j / 2]);
        }
    }
    let mut diff = kronrod;
    diff.add_scaled(&gauss, -1.0);
    Piece {
        a,
        b,
        value: kronrod.scaled(half),
        error: (diff.magnitude() * half.abs()).max(1e2 * f64::EPSILON * kronrod.magnitude() * half.abs()),
    }
}

impl Quadrature {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 || self.rel_tol > 0.0) || self.abs_tol < 0.0 || self.rel_tol < 0.0 {
            return Err(Error::InvalidArgument("quadrature tolerance must be positive".into()));
        }
        if self.max_intervals == 0 {
            return Err(Error::InvalidArgument("quadrature needs at least one interval".into()));
        }
        Ok(())
    }

    /// `∫ f` over the consecutive intervals of `breaks`, bisecting the worst
    /// interval until the summed error meets the target.
    pub fn integrate<T: Integrand>(
        &self,
        f: &dyn Fn(f64) -> T,
        breaks: &[f64],
    ) -> Result<QuadratureResult<T>> {
        self.validate()?;
        if breaks.len() < 2 {
            return Err(Error::InvalidArgument("integration range needs two endpoints".into()));
        }
        let mut pieces: Vec<Piece<T>> = breaks.windows(2).map(|w| gk15(f, w[0], w[1])).collect();
        let mut evaluations = 15 * pieces.len();
        loop {
            let mut value = T::zero();
            let mut error = 0.0;
            for p in &pieces {
                value.add_scaled(&p.value, 1.0);
                error += p.error;
            }
            if !value.magnitude().is_finite() || !error.is_finite() {
                return Err(Error::QuadratureFailure { intervals: pieces.len(), error });
            }
            if error <= self.abs_tol.max(self.rel_tol * value.magnitude()) {
                return Ok(QuadratureResult { value, error, intervals: pieces.len(), evaluations });
            }
            if pieces.len() >= self.max_intervals {
                return Err(Error::QuadratureFailure { intervals: pieces.len(), error });
            }
            let worst = pieces
                .iter()
                .enumerate()
                .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
                .map(|(i, _)| i)
                .unwrap_or(0);
            let p = pieces.swap_remove(worst);
            let mid = 0.5 * (p.a + p.b);
            pieces.push(gk15(f, p.a, mid));
            pieces.push(gk15(f, mid, p.b));
            evaluations += 30;
        }
    }
}
