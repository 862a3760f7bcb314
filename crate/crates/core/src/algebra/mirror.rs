use super::{MixtureTensor, MultiVector};
use crate::error::{Error, Result};
use crate::linalg::{self, Mat4, C64, ZERO};

/// The mirror as a linear map on components: `(z̄)^β = m[β][α] z^α`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MirrorTensor {
    pub m: Mat4,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InvolutionKind {
    Mirror,
    Conjugate,
    Adjoint,
}

impl MirrorTensor {
    /// `diag(+1, −1, −1, −1)`: time fixed, space negated.
    pub fn natural() -> Self {
        Self::diagonal([1.0, -1.0, -1.0, -1.0])
    }

    pub fn identity() -> Self {
        MirrorTensor {
            m: linalg::identity(),
        }
    }

    pub fn diagonal(d: [f64; 4]) -> Self {
        MirrorTensor {
            m: linalg::diag(d.map(|x| C64::new(x, 0.0))),
        }
    }

    /// Derives the mirror from commutation: a basis element that commutes
    /// with every other is fixed, one that anti-commutes with any other is
    /// negated. Elements that do neither have no mirror assignment.
    pub fn from_commutation(eta: &MixtureTensor) -> Result<Self> {
        let n = eta.dim;
        let mut d = [1.0; 4];
        for a in 0..n {
            let mut commutes_all = true;
            let mut anti_any = false;
            for b in 0..n {
                let ab = eta.mul(&MultiVector::basis(a), &MultiVector::basis(b));
                let ba = eta.mul(&MultiVector::basis(b), &MultiVector::basis(a));
                if ab.dist(&ba) > 1e-14 {
                    commutes_all = false;
                }
                if (ab + ba).max_abs() <= 1e-14 && ab.max_abs() > 0.0 {
                    anti_any = true;
                }
            }
            d[a] = if anti_any {
                -1.0
            } else if commutes_all {
                1.0
            } else {
                return Err(Error::InvalidArgument(format!(
                    "basis element e{a} neither commutes with all bases nor anti-commutes with any"
                )));
            };
        }
        Ok(Self::diagonal(d))
    }

    pub fn apply(&self, z: &MultiVector) -> MultiVector {
        MultiVector {
            c: linalg::mat_vec(&self.m, &z.c),
        }
    }

    pub fn apply_components(&self, v: &[C64; 4]) -> [C64; 4] {
        linalg::mat_vec(&self.m, v)
    }

    /// Diagonal entries, for mirrors that act index by index.
    pub fn diagonal_entries(&self) -> [C64; 4] {
        [self.m[0][0], self.m[1][1], self.m[2][2], self.m[3][3]]
    }

    pub fn is_diagonal(&self) -> bool {
        (0..4).all(|i| (0..4).all(|j| i == j || self.m[i][j] == ZERO))
    }

    /// `‖M∘M − 1‖`.
    pub fn involution_defect(&self) -> f64 {
        linalg::max_abs_diff_mat(&linalg::mat_mul(&self.m, &self.m), &linalg::identity())
    }

    /// The mirror expressed in a basis `e_{α'} = Λ_{α'}^β e_β`, i.e. with the
    /// rows of `lambda` holding the new bases: `M' = Λ M Λ⁻¹` acting on rows.
    pub fn transformed(&self, lambda: &Mat4) -> Result<Self> {
        let (inv, condition) = linalg::invert(lambda).ok_or(Error::SingularFrame {
            condition: f64::INFINITY,
        })?;
        if condition > linalg::CONDITION_LIMIT {
            return Err(Error::SingularFrame { condition });
        }
        let mt = linalg::transpose(&self.m);
        let row_form = linalg::mat_mul(&linalg::mat_mul(lambda, &mt), &inv);
        Ok(MirrorTensor {
            m: linalg::transpose(&row_form),
        })
    }
}

impl Default for MirrorTensor {
    fn default() -> Self {
        Self::natural()
    }
}

/// Applies an involution in the natural geometry.
pub fn involute(a: &MultiVector, kind: InvolutionKind) -> MultiVector {
    involute_with(a, kind, &MirrorTensor::natural())
}

/// Applies an involution using the given mirror. Conjugation acts on the
/// complex components, which in the natural geometry is the same as reversing
/// basis products.
pub fn involute_with(a: &MultiVector, kind: InvolutionKind, mirror: &MirrorTensor) -> MultiVector {
    match kind {
        InvolutionKind::Mirror => mirror.apply(a),
        InvolutionKind::Conjugate => a.conj_components(),
        InvolutionKind::Adjoint => mirror.apply(&a.conj_components()),
    }
}
