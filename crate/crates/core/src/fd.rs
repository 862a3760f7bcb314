//! Finite-difference stencils over callback-defined fields on a 4D coordinate
//! domain.

use crate::error::{Error, Result};
use crate::linalg::C64;
use nalgebra::DMatrix;

pub type Point = [f64; 4];

/// Values that finite differences can combine linearly.
pub trait FdValue: Clone {
    fn scaled(&self, w: f64) -> Self;
    fn add_scaled(&mut self, other: &Self, w: f64);
}

impl FdValue for f64 {
    fn scaled(&self, w: f64) -> Self {
        self * w
    }
    fn add_scaled(&mut self, other: &Self, w: f64) {
        *self += other * w;
    }
}

impl FdValue for C64 {
    fn scaled(&self, w: f64) -> Self {
        self * w
    }
    fn add_scaled(&mut self, other: &Self, w: f64) {
        *self += other * w;
    }
}

impl<T: FdValue, const N: usize> FdValue for [T; N] {
    fn scaled(&self, w: f64) -> Self {
        std::array::from_fn(|i| self[i].scaled(w))
    }
    fn add_scaled(&mut self, other: &Self, w: f64) {
        for (a, b) in self.iter_mut().zip(other.iter()) {
            a.add_scaled(b, w);
        }
    }
}

impl FdValue for DMatrix<C64> {
    fn scaled(&self, w: f64) -> Self {
        self * C64::new(w, 0.0)
    }
    fn add_scaled(&mut self, other: &Self, w: f64) {
        *self += other * C64::new(w, 0.0);
    }
}

/// Axis-aligned box `lo ≤ x ≤ hi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Domain {
    pub lo: Point,
    pub hi: Point,
}

impl Domain {
    pub fn new(lo: Point, hi: Point) -> Self {
        Domain { lo, hi }
    }

    pub fn contains(&self, z: &Point) -> bool {
        (0..4).all(|a| z[a] >= self.lo[a] && z[a] <= self.hi[a])
    }

    /// A lattice of `n` points per axis strictly inside the box, keeping
    /// `margin` clear of every face.
    pub fn interior_lattice(&self, n: usize, margin: f64) -> Vec<Point> {
        let axis = |a: usize, k: usize| -> f64 {
            let lo = self.lo[a] + margin;
            let hi = self.hi[a] - margin;
            if n == 1 {
                0.5 * (lo + hi)
            } else {
                lo + (hi - lo) * (k as f64 + 0.5) / n as f64
            }
        };
        let mut pts = Vec::with_capacity(n.pow(4));
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        pts.push([axis(0, i), axis(1, j), axis(2, k), axis(3, l)]);
                    }
                }
            }
        }
        pts
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FdOrder {
    Two,
    Four,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FiniteDifferenceScheme {
    pub h: [f64; 4],
    pub order: FdOrder,
    /// When set, stencils that would leave the box switch to one-sided forms.
    pub domain: Option<Domain>,
}

const CENTRAL2: [(i32, f64); 2] = [(-1, -0.5), (1, 0.5)];
const CENTRAL4: [(i32, f64); 4] = [
    (-2, 1.0 / 12.0),
    (-1, -8.0 / 12.0),
    (1, 8.0 / 12.0),
    (2, -1.0 / 12.0),
];
const FORWARD2: [(i32, f64); 3] = [(0, -1.5), (1, 2.0), (2, -0.5)];
const FORWARD4: [(i32, f64); 5] = [
    (0, -25.0 / 12.0),
    (1, 4.0),
    (2, -3.0),
    (3, 4.0 / 3.0),
    (4, -0.25),
];

impl FiniteDifferenceScheme {
    pub fn new(h: f64) -> Self {
        FiniteDifferenceScheme {
            h: [h; 4],
            order: FdOrder::Two,
            domain: None,
        }
    }

    pub fn with_order(mut self, order: FdOrder) -> Self {
        self.order = order;
        self
    }

    pub fn with_domain(mut self, domain: Domain) -> Self {
        self.domain = Some(domain);
        self
    }

    /// The same scheme with every step multiplied by `factor`.
    pub fn refined(&self, factor: f64) -> Self {
        let mut s = *self;
        for h in s.h.iter_mut() {
            *h *= factor;
        }
        s
    }

    pub fn validate(&self) -> Result<()> {
        if self.h.iter().all(|h| h.is_finite() && *h > 0.0) {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "finite-difference steps must be positive, got {:?}",
                self.h
            )))
        }
    }

    /// Number of steps the central stencil reaches on each side.
    pub fn radius(&self) -> usize {
        match self.order {
            FdOrder::Two => 1,
            FdOrder::Four => 2,
        }
    }

    fn stencil(&self, z: &Point, axis: usize) -> (Vec<(i32, f64)>, f64) {
        let h = self.h[axis];
        let r = self.radius() as f64;
        let central: &[(i32, f64)] = match self.order {
            FdOrder::Two => &CENTRAL2,
            FdOrder::Four => &CENTRAL4,
        };
        let forward: &[(i32, f64)] = match self.order {
            FdOrder::Two => &FORWARD2,
            FdOrder::Four => &FORWARD4,
        };
        if let Some(d) = &self.domain {
            let reach = (r + 2.0) * h;
            if z[axis] - r * h < d.lo[axis] && z[axis] + reach <= d.hi[axis] {
                return (forward.to_vec(), h);
            }
            if z[axis] + r * h > d.hi[axis] && z[axis] - reach >= d.lo[axis] {
                return (forward.iter().map(|&(k, w)| (-k, -w)).collect(), h);
            }
        }
        (central.to_vec(), h)
    }

    /// ∂f/∂x^axis at `z`.
    pub fn partial<T: FdValue>(&self, f: &dyn Fn(&Point) -> T, z: &Point, axis: usize) -> T {
        let (stencil, h) = self.stencil(z, axis);
        let mut acc: Option<T> = None;
        for (k, w) in stencil {
            let mut p = *z;
            p[axis] += k as f64 * h;
            let v = f(&p);
            match acc.as_mut() {
                None => acc = Some(v.scaled(w / h)),
                Some(a) => a.add_scaled(&v, w / h),
            }
        }
        acc.expect("stencil is never empty")
    }

    /// All four partial derivatives, indexed by axis.
    pub fn gradient<T: FdValue>(&self, f: &dyn Fn(&Point) -> T, z: &Point) -> [T; 4] {
        [
            self.partial(f, z, 0),
            self.partial(f, z, 1),
            self.partial(f, z, 2),
            self.partial(f, z, 3),
        ]
    }

    /// ∂²f/∂x^a∂x^b by nesting first-derivative stencils.
    pub fn second_partial<T: FdValue>(
        &self,
        f: &dyn Fn(&Point) -> T,
        z: &Point,
        a: usize,
        b: usize,
    ) -> T {
        let inner = |p: &Point| self.partial(f, p, b);
        self.partial(&inner, z, a)
    }
}

impl Default for FiniteDifferenceScheme {
    fn default() -> Self {
        FiniteDifferenceScheme::new(1e-3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cubic(p: &Point) -> f64 {
        p[0].powi(3) + 2.0 * p[1] * p[2] - p[3]
    }

    #[test]
    fn central_difference_is_exact_for_quadratics() {
        let fd = FiniteDifferenceScheme::new(0.1);
        let f = |p: &Point| p[0] * p[0] + 3.0 * p[1];
        let g = fd.gradient(&f, &[1.0, 2.0, 0.0, 0.0]);
        assert!((g[0] - 2.0).abs() < 1e-12);
        assert!((g[1] - 3.0).abs() < 1e-12);
        assert!(g[2].abs() < 1e-12);
    }

    #[test]
    fn order_two_error_shrinks_fourfold() {
        let f = |p: &Point| p[0].sin();
        let z = [0.7, 0.0, 0.0, 0.0];
        let e = |h: f64| (FiniteDifferenceScheme::new(h).partial(&f, &z, 0) - 0.7f64.cos()).abs();
        let ratio = e(0.02) / e(0.01);
        assert!((3.9..4.1).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn order_four_error_shrinks_sixteenfold() {
        let f = |p: &Point| p[0].sin();
        let z = [0.7, 0.0, 0.0, 0.0];
        let e = |h: f64| {
            (FiniteDifferenceScheme::new(h)
                .with_order(FdOrder::Four)
                .partial(&f, &z, 0)
                - 0.7f64.cos())
            .abs()
        };
        let ratio = e(0.04) / e(0.02);
        assert!((15.0..17.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn one_sided_fallback_at_the_boundary() {
        let d = Domain::new([0.0; 4], [1.0; 4]);
        let fd = FiniteDifferenceScheme::new(0.01).with_domain(d);
        let z = [0.0, 0.5, 0.5, 1.0];
        let g = fd.gradient(&cubic, &z);
        assert!(g[0].abs() < 1e-3);
        assert!((g[3] + 1.0).abs() < 1e-12);
        assert!((g[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mixed_second_partial() {
        let fd = FiniteDifferenceScheme::new(1e-3);
        let v = fd.second_partial(&cubic, &[0.3, 0.1, 0.2, 0.0], 1, 2);
        assert!((v - 2.0).abs() < 1e-6);
    }

    #[test]
    fn lattice_stays_inside() {
        let d = Domain::new([-1.0; 4], [1.0; 4]);
        let pts = d.interior_lattice(3, 0.1);
        assert_eq!(pts.len(), 81);
        assert!(pts.iter().all(|p| p.iter().all(|x| x.abs() <= 0.9)));
    }
}
