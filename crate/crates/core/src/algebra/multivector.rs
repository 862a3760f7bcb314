use crate::error::{Error, Result};
use crate::fd::FdValue;
use crate::linalg::{C64, ONE, ZERO};
use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Neg, Sub, SubAssign};

/// An element `z = z^α e_α` of ℂ^{1+3}, stored by its four complex components.
///
/// Addition and scaling are componentwise. Products depend on a
/// [`MixtureTensor`](super::MixtureTensor) and are therefore methods on it.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct MultiVector {
    pub c: [C64; 4],
}

impl MultiVector {
    /// Checked constructor rejecting NaN and infinities.
    pub fn new(c: [C64; 4]) -> Result<Self> {
        if c.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            Ok(MultiVector { c })
        } else {
            Err(Error::NonFinite("multivector component"))
        }
    }

    /// # Panics
    /// If any component is not finite.
    pub fn from_components(c: [C64; 4]) -> Self {
        Self::new(c).expect("multivector components must be finite")
    }

    pub fn from_real(x: [f64; 4]) -> Self {
        Self::from_components([
            C64::new(x[0], 0.0),
            C64::new(x[1], 0.0),
            C64::new(x[2], 0.0),
            C64::new(x[3], 0.0),
        ])
    }

    pub const fn zero() -> Self {
        MultiVector { c: [ZERO; 4] }
    }

    pub const fn one() -> Self {
        MultiVector {
            c: [ONE, ZERO, ZERO, ZERO],
        }
    }

    /// The basis element `e_index`.
    ///
    /// # Panics
    /// If `index > 3`.
    pub fn basis(index: usize) -> Self {
        let mut c = [ZERO; 4];
        c[index] = ONE;
        MultiVector { c }
    }

    pub fn scalar(s: C64) -> Self {
        MultiVector {
            c: [s, ZERO, ZERO, ZERO],
        }
    }

    /// Builds `s e₀ + v^i e_i`.
    pub fn from_scalar_vector(s: C64, v: [C64; 3]) -> Self {
        MultiVector {
            c: [s, v[0], v[1], v[2]],
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        MultiVector {
            c: self.c.map(|z| z * s),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        MultiVector {
            c: self.c.map(|z| z * s),
        }
    }

    pub fn scalar_part(&self) -> C64 {
        self.c[0]
    }

    pub fn vector_part(&self) -> [C64; 3] {
        [self.c[1], self.c[2], self.c[3]]
    }

    /// Componentwise complex conjugate (no basis action).
    pub fn conj_components(&self) -> Self {
        MultiVector {
            c: self.c.map(|z| z.conj()),
        }
    }

    pub fn re(&self) -> [f64; 4] {
        self.c.map(|z| z.re)
    }

    pub fn im(&self) -> [f64; 4] {
        self.c.map(|z| z.im)
    }

    /// Largest component modulus.
    pub fn max_abs(&self) -> f64 {
        self.c.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Euclidean norm of the eight real coordinates.
    pub fn norm(&self) -> f64 {
        self.c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn dist(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn is_finite(&self) -> bool {
        self.c.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl Index<usize> for MultiVector {
    type Output = C64;
    fn index(&self, i: usize) -> &C64 {
        &self.c[i]
    }
}

impl IndexMut<usize> for MultiVector {
    fn index_mut(&mut self, i: usize) -> &mut C64 {
        &mut self.c[i]
    }
}

impl Add for MultiVector {
    type Output = MultiVector;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl AddAssign for MultiVector {
    fn add_assign(&mut self, rhs: Self) {
        for i in 0..4 {
            self.c[i] += rhs.c[i];
        }
    }
}

impl Sub for MultiVector {
    type Output = MultiVector;
    fn sub(mut self, rhs: Self) -> Self {
        self -= rhs;
        self
    }
}

impl SubAssign for MultiVector {
    fn sub_assign(&mut self, rhs: Self) {
        for i in 0..4 {
            self.c[i] -= rhs.c[i];
        }
    }
}

impl Neg for MultiVector {
    type Output = MultiVector;
    fn neg(self) -> Self {
        MultiVector {
            c: self.c.map(|z| -z),
        }
    }
}

impl FdValue for MultiVector {
    fn scaled(&self, w: f64) -> Self {
        self.scale_real(w)
    }
    fn add_scaled(&mut self, other: &Self, w: f64) {
        for i in 0..4 {
            self.c[i] += other.c[i] * w;
        }
    }
}

impl fmt::Display for MultiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, z) in self.c.iter().enumerate() {
            if *z == ZERO {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({}{:+}i)e{}", z.re, z.im, i)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
