use crate::error::{Error, Result};
use crate::fd::{FiniteDifferenceScheme, Point};
use crate::linalg::{self, C64, CONDITION_LIMIT};
use crate::report::SuiteReport;
use nalgebra::DMatrix;
use std::sync::Arc;

pub type FieldTensor = [[DMatrix<C64>; 4]; 4];

type PotentialFn = Arc<dyn Fn(&Point) -> [DMatrix<C64>; 4] + Send + Sync>;

/// Matrix potentials `ℋ_μ` (k×k) with coupling `ε`.
#[derive(Clone)]
pub struct MatrixPotentialSet {
    pub h: PotentialFn,
    pub epsilon: f64,
    pub k: usize,
}

impl std::fmt::Debug for MatrixPotentialSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MatrixPotentialSet").field("epsilon", &self.epsilon).field("k", &self.k).finish()
    }
}

/// Sign convention of the quadratic term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CouplingForm {
    /// `ℋ_{[μ,ν]} + εℋ_{[ν}ℋ_{μ]}`, read off the curvature of `Γ = εℋ`.
    #[default]
    Curvature,
    /// `ℋ_{[μ,ν]} + iεℋ_{[μ}ℋ_{ν]}`, covariant under
    /// `ℋ' = S⁻¹ℋS + (i/ε)S⁻¹∂S`.
    Gauge,
}

impl MatrixPotentialSet {
    pub fn new(k: usize, epsilon: f64, h: impl Fn(&Point) -> [DMatrix<C64>; 4] + Send + Sync + 'static) -> Self {
        MatrixPotentialSet { h: Arc::new(h), epsilon, k }
    }

    pub fn at(&self, z: &Point) -> Result<[DMatrix<C64>; 4]> {
        let h = (self.h)(z);
        for m in &h {
            if m.nrows() != self.k || m.ncols() != self.k {
                return Err(Error::InvalidArgument(format!(
                    "potential is {}×{}, expected {k}×{k}",
                    m.nrows(),
                    m.ncols(),
                    k = self.k
                )));
            }
            if m.iter().any(|x| !x.is_finite()) {
                return Err(Error::NonFinite("matrix potential"));
            }
        }
        Ok(h)
    }

    /// `ℋ'_μ = S⁻¹ℋ_μS + (i/ε)S⁻¹∂_μS`.
    pub fn gauge_transformed(
        &self,
        s: impl Fn(&Point) -> DMatrix<C64> + Send + Sync + 'static,
        fd: FiniteDifferenceScheme,
    ) -> MatrixPotentialSet {
        let base = self.clone();
        let eps = self.epsilon;
        let s = Arc::new(s);
        MatrixPotentialSet::new(self.k, eps, move |p| {
            let sp = s(p);
            let inv = sp.clone().try_inverse().unwrap_or_else(|| sp.map(|_| C64::new(f64::NAN, 0.0)));
            let ds = fd.gradient(&|q: &Point| s(q), p);
            let h = (base.h)(p);
            std::array::from_fn(|m| &inv * &h[m] * &sp + &inv * &ds[m] * C64::new(0.0, 1.0 / eps))
        })
    }
}

pub fn yang_mills_field_tensor(
    set: &MatrixPotentialSet,
    z: &Point,
    fd: &FiniteDifferenceScheme,
    form: CouplingForm,
) -> Result<FieldTensor> {
    let h = set.at(z)?;
    // dh[ν][μ] = ∂_ν ℋ_μ
    let dh = fd.gradient(&|p: &Point| (set.h)(p), z);
    let eps = set.epsilon;
    Ok(std::array::from_fn(|m| {
        std::array::from_fn(|n| {
            let lin = (&dh[n][m] - &dh[m][n]) * C64::new(0.5, 0.0);
            let quad = match form {
                CouplingForm::Curvature => (&h[n] * &h[m] - &h[m] * &h[n]) * C64::new(0.5 * eps, 0.0),
                CouplingForm::Gauge => (&h[m] * &h[n] - &h[n] * &h[m]) * C64::new(0.0, 0.5 * eps),
            };
            lin + quad
        })
    }))
}

fn max_entry(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

/// `max |F'_{μν} − S⁻¹F_{μν}S|` with both tensors in the gauge form.
pub fn gauge_covariance_check(
    set: &MatrixPotentialSet,
    s: impl Fn(&Point) -> DMatrix<C64> + Send + Sync + Clone + 'static,
    z: &Point,
    fd: &FiniteDifferenceScheme,
    tol: f64,
) -> Result<SuiteReport> {
    let sz = s(z);
    if sz.nrows() != set.k || sz.ncols() != set.k {
        return Err(Error::InvalidArgument("gauge matrix has the wrong size".into()));
    }
    let (inv, condition) =
        linalg::invert_dynamic(&sz).ok_or(Error::SingularGauge { condition: f64::INFINITY })?;
    if condition > CONDITION_LIMIT {
        return Err(Error::SingularGauge { condition });
    }
    let f = yang_mills_field_tensor(set, z, fd, CouplingForm::Gauge)?;
    let transformed = set.gauge_transformed(s, *fd);
    let fp = yang_mills_field_tensor(&transformed, z, fd, CouplingForm::Gauge)?;
    let mut worst = 0.0f64;
    for m in 0..4 {
        for n in 0..4 {
            let expect = &inv * &f[m][n] * &sz;
            worst = worst.max(max_entry(&(&fp[m][n] - expect)));
        }
    }
    let mut r = SuiteReport::new("yangmills");
    r.check("gauge-covariance", "F' = S⁻¹FS under the gauge transformation", worst, tol);
    Ok(r)
}
