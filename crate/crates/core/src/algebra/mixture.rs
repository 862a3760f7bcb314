use super::{MirrorTensor, MultiVector};
use crate::error::{Error, Result};
use crate::linalg::{self, Mat4, Tensor3, C64, I, ONE, ZERO};
use nalgebra::{DMatrix, DVector};

/// The product table `e_α e_β = η^γ_{αβ} e_γ` together with the dual table
/// `e^α e^β = η_γ^{αβ} e^γ` and the mirror of the algebra.
///
/// Both tables are stored output-index first: `lower[γ][α][β]` and
/// `upper[γ][α][β]`. Only the leading `dim` bases take part in products; the
/// remaining entries are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct MixtureTensor {
    pub lower: Tensor3,
    pub upper: Tensor3,
    pub dim: usize,
    pub mirror: MirrorTensor,
}

const CYCLIC: [(usize, usize, usize); 3] = [(1, 2, 3), (2, 3, 1), (3, 1, 2)];

impl MixtureTensor {
    /// The complex quaternions: `e_α² = e₀` and `e_i e_j = −e_j e_i = i e_k`
    /// for cyclic `{ijk}`.
    pub fn natural() -> Self {
        let mut l = linalg::zero_tensor3();
        for a in 0..4 {
            l[0][a][a] = ONE;
            l[a][0][a] = ONE;
            l[a][a][0] = ONE;
        }
        for (i, j, k) in CYCLIC {
            l[i][j][k] = I;
            l[i][k][j] = -I;
        }
        MixtureTensor {
            lower: l,
            upper: l,
            dim: 4,
            mirror: MirrorTensor::natural(),
        }
    }

    /// The complex numbers as a two-basis algebra: `e₀ = 1` and `e₁` playing
    /// the imaginary unit, `e₁² = −e₀`. The mirror negates `e₁`, so that it
    /// acts as complex conjugation of `x e₀ + y e₁`.
    pub fn complex_plane() -> Self {
        let mut l = linalg::zero_tensor3();
        l[0][0][0] = ONE;
        l[1][0][1] = ONE;
        l[1][1][0] = ONE;
        l[0][1][1] = -ONE;
        Self::from_lower(l, 2, MirrorTensor::diagonal([1.0, -1.0, 1.0, 1.0]))
            .expect("complex plane bases are invertible")
    }

    /// The real Clifford algebra of the plane on bases `{1, e₁, e₂, e₁e₂}`,
    /// with `e₁² = e₂² = 1` and `e₁e₂ = −e₂e₁`.
    pub fn anticommuting_plane() -> Self {
        let mut l = linalg::zero_tensor3();
        for a in 0..4 {
            l[a][0][a] = ONE;
            l[a][a][0] = ONE;
        }
        l[0][1][1] = ONE;
        l[0][2][2] = ONE;
        l[0][3][3] = -ONE;
        l[3][1][2] = ONE;
        l[3][2][1] = -ONE;
        l[2][1][3] = ONE;
        l[2][3][1] = -ONE;
        l[1][2][3] = -ONE;
        l[1][3][2] = ONE;
        let partial = MixtureTensor {
            lower: l,
            upper: l,
            dim: 4,
            mirror: MirrorTensor::identity(),
        };
        let mirror = MirrorTensor::from_commutation(&partial)
            .expect("every non-scalar basis of the plane algebra anti-commutes");
        Self::from_lower(l, 4, mirror).expect("plane algebra bases are invertible")
    }

    /// Builds the dual table from the lower one. The dual basis is
    /// `e^α = (e_α)⁻¹`, and `η_γ^{αβ}` are the components of `e^α e^β` over it.
    pub fn from_lower(lower: Tensor3, dim: usize, mirror: MirrorTensor) -> Result<Self> {
        if dim == 0 || dim > 4 {
            return Err(Error::InvalidArgument(format!("dimension {dim} not in 1..=4")));
        }
        let mut eta = MixtureTensor {
            lower,
            upper: linalg::zero_tensor3(),
            dim,
            mirror,
        };
        let duals = eta.dual_basis()?;
        let mut d = DMatrix::<C64>::zeros(dim, dim);
        for (g, dual) in duals.iter().enumerate().take(dim) {
            for r in 0..dim {
                d[(r, g)] = dual.c[r];
            }
        }
        let lu = d.clone().lu();
        for a in 0..dim {
            for b in 0..dim {
                let p = eta.mul(&duals[a], &duals[b]);
                let rhs = DVector::from_iterator(dim, p.c.iter().take(dim).copied());
                let u = lu.solve(&rhs).ok_or(Error::SingularBasis(a))?;
                for g in 0..dim {
                    eta.upper[g][a][b] = u[g];
                }
            }
        }
        Ok(eta)
    }

    /// Assembles a mixture from explicit tables without checking them.
    pub fn from_parts(lower: Tensor3, upper: Tensor3, dim: usize, mirror: MirrorTensor) -> Self {
        MixtureTensor {
            lower,
            upper,
            dim,
            mirror,
        }
    }

    /// `u^γ = a^α b^β η^γ_{αβ}`.
    pub fn mul(&self, a: &MultiVector, b: &MultiVector) -> MultiVector {
        Self::contract(&self.lower, self.dim, &a.c, &b.c)
    }

    /// Product of two elements given by their dual-basis components.
    pub fn mul_upper(&self, a: &[C64; 4], b: &[C64; 4]) -> [C64; 4] {
        Self::contract(&self.upper, self.dim, a, b).c
    }

    fn contract(t: &Tensor3, n: usize, a: &[C64; 4], b: &[C64; 4]) -> MultiVector {
        let mut out = [ZERO; 4];
        for (g, o) in out.iter_mut().enumerate().take(n) {
            let mut s = ZERO;
            for al in 0..n {
                if a[al] == ZERO {
                    continue;
                }
                for be in 0..n {
                    s += a[al] * b[be] * t[g][al][be];
                }
            }
            *o = s;
        }
        MultiVector { c: out }
    }

    /// Matrix of `x ↦ a·x` on components.
    pub fn left_matrix(&self, a: &MultiVector) -> Mat4 {
        let mut m = linalg::zero_mat();
        for (g, row) in m.iter_mut().enumerate().take(self.dim) {
            for (b, x) in row.iter_mut().enumerate().take(self.dim) {
                for al in 0..self.dim {
                    *x += a.c[al] * self.lower[g][al][b];
                }
            }
        }
        m
    }

    /// Two-sided inverse of `a`, if one exists.
    pub fn inverse(&self, a: &MultiVector) -> Option<MultiVector> {
        let n = self.dim;
        let m = self.left_matrix(a);
        let dm = DMatrix::from_fn(n, n, |i, j| m[i][j]);
        let (inv, condition) = linalg::invert_dynamic(&dm)?;
        if condition > linalg::CONDITION_LIMIT {
            return None;
        }
        let mut x = MultiVector::zero();
        for i in 0..n {
            x.c[i] = inv[(i, 0)];
        }
        let right = self.mul(&x, a);
        if right.dist(&MultiVector::one()) > 1e-10 {
            return None;
        }
        Some(x)
    }

    /// `e^α = (e_α)⁻¹` expressed over the `e_α`.
    pub fn dual_basis(&self) -> Result<[MultiVector; 4]> {
        let mut out = [MultiVector::zero(); 4];
        for (a, d) in out.iter_mut().enumerate().take(self.dim) {
            *d = self
                .inverse(&MultiVector::basis(a))
                .ok_or(Error::SingularBasis(a))?;
        }
        Ok(out)
    }

    /// A copy with `lower[g][a][b]` shifted by `delta` and the dual table kept.
    pub fn perturbed(&self, g: usize, a: usize, b: usize, delta: C64) -> Self {
        let mut p = self.clone();
        p.lower[g][a][b] += delta;
        p
    }

    /// `max |η^λ_{βγ}η^ω_{αλ} − η^λ_{αβ}η^ω_{λγ}|` over all index tuples.
    pub fn associativity_defect(&self) -> f64 {
        let n = self.dim;
        let l = &self.lower;
        let mut worst: f64 = 0.0;
        for w in 0..n {
            for a in 0..n {
                for b in 0..n {
                    for g in 0..n {
                        let mut x = ZERO;
                        let mut y = ZERO;
                        for lam in 0..n {
                            x += l[lam][b][g] * l[w][a][lam];
                            y += l[lam][a][b] * l[w][lam][g];
                        }
                        worst = worst.max((x - y).norm());
                    }
                }
            }
        }
        worst
    }
}

/// `a·b` under `eta`.
pub fn mv_mul(a: &MultiVector, b: &MultiVector, eta: &MixtureTensor) -> MultiVector {
    eta.mul(a, b)
}
