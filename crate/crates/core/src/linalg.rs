//! Fixed-size complex arrays and the few dense linear-algebra helpers the
//! tensor code needs.

use nalgebra::{DMatrix, Matrix4};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type Mat4 = [[C64; 4]; 4];
/// Rank-3 array indexed `[output][first][second]`.
pub type Tensor3 = [[[C64; 4]; 4]; 4];
pub type Tensor4 = [[[[C64; 4]; 4]; 4]; 4];

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Inversion is refused above this 1-norm condition estimate.
pub const CONDITION_LIMIT: f64 = 1e8;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn zero_mat() -> Mat4 {
    [[ZERO; 4]; 4]
}

pub fn identity() -> Mat4 {
    let mut m = zero_mat();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = ONE;
    }
    m
}

pub fn diag(d: [C64; 4]) -> Mat4 {
    let mut m = zero_mat();
    for i in 0..4 {
        m[i][i] = d[i];
    }
    m
}

pub fn zero_tensor3() -> Tensor3 {
    [[[ZERO; 4]; 4]; 4]
}

pub fn zero_tensor4() -> Tensor4 {
    [[[[ZERO; 4]; 4]; 4]; 4]
}

pub fn mat_mul(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut out = zero_mat();
    for i in 0..4 {
        for j in 0..4 {
            let mut s = ZERO;
            for k in 0..4 {
                s += a[i][k] * b[k][j];
            }
            out[i][j] = s;
        }
    }
    out
}

pub fn mat_vec(a: &Mat4, v: &[C64; 4]) -> [C64; 4] {
    let mut out = [ZERO; 4];
    for i in 0..4 {
        for k in 0..4 {
            out[i] += a[i][k] * v[k];
        }
    }
    out
}

pub fn mat_add(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut out = *a;
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] += b[i][j];
        }
    }
    out
}

pub fn mat_sub(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut out = *a;
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] -= b[i][j];
        }
    }
    out
}

pub fn mat_scale(a: &Mat4, s: C64) -> Mat4 {
    let mut out = *a;
    for row in out.iter_mut() {
        for x in row.iter_mut() {
            *x *= s;
        }
    }
    out
}

pub fn transpose(a: &Mat4) -> Mat4 {
    let mut out = zero_mat();
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = a[j][i];
        }
    }
    out
}

pub fn adjoint(a: &Mat4) -> Mat4 {
    let mut out = zero_mat();
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = a[j][i].conj();
        }
    }
    out
}

pub fn to_nalgebra(a: &Mat4) -> Matrix4<C64> {
    Matrix4::from_fn(|i, j| a[i][j])
}

pub fn from_nalgebra(m: &Matrix4<C64>) -> Mat4 {
    let mut out = zero_mat();
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = m[(i, j)];
        }
    }
    out
}

fn norm1(m: &DMatrix<C64>) -> f64 {
    (0..m.ncols())
        .map(|j| (0..m.nrows()).map(|i| m[(i, j)].norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Inverts a square complex matrix, returning the inverse together with its
/// 1-norm condition number. `None` when the matrix is singular.
pub fn invert_dynamic(m: &DMatrix<C64>) -> Option<(DMatrix<C64>, f64)> {
    let inv = m.clone().try_inverse()?;
    let cond = norm1(m) * norm1(&inv);
    if !cond.is_finite() {
        return None;
    }
    Some((inv, cond))
}

/// Inverts a 4×4 complex matrix with a condition check.
pub fn invert(a: &Mat4) -> Option<(Mat4, f64)> {
    let d = DMatrix::from_fn(4, 4, |i, j| a[i][j]);
    let (inv, cond) = invert_dynamic(&d)?;
    let mut out = zero_mat();
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = inv[(i, j)];
        }
    }
    Some((out, cond))
}

/// Inverts the leading `dim`×`dim` block, leaving the rest zero.
pub fn invert_block(a: &Mat4, dim: usize) -> Option<(Mat4, f64)> {
    let d = DMatrix::from_fn(dim, dim, |i, j| a[i][j]);
    let (inv, cond) = invert_dynamic(&d)?;
    let mut out = zero_mat();
    for i in 0..dim {
        for j in 0..dim {
            out[i][j] = inv[(i, j)];
        }
    }
    Some((out, cond))
}

pub fn max_abs_mat(a: &Mat4) -> f64 {
    a.iter().flatten().map(|x| x.norm()).fold(0.0, f64::max)
}

pub fn max_abs_diff_mat(a: &Mat4, b: &Mat4) -> f64 {
    max_abs_mat(&mat_sub(a, b))
}

pub fn max_abs_t3(a: &Tensor3) -> f64 {
    a.iter().flatten().flatten().map(|x| x.norm()).fold(0.0, f64::max)
}

pub fn max_abs_diff_t3(a: &Tensor3, b: &Tensor3) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                m = m.max((a[i][j][k] - b[i][j][k]).norm());
            }
        }
    }
    m
}

pub fn max_abs_t4(a: &Tensor4) -> f64 {
    a.iter()
        .flatten()
        .flatten()
        .flatten()
        .map(|x| x.norm())
        .fold(0.0, f64::max)
}

pub fn max_abs_diff_t4(a: &Tensor4, b: &Tensor4) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                for l in 0..4 {
                    m = m.max((a[i][j][k][l] - b[i][j][k][l]).norm());
                }
            }
        }
    }
    m
}

/// Kronecker product of two 2×2 matrices; the left factor indexes the coarse
/// 2×2 blocks.
pub fn kron2(a: &[[C64; 2]; 2], b: &[[C64; 2]; 2]) -> Mat4 {
    let mut out = zero_mat();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}
