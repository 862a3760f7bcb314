use crate::fd::Point;
use crate::linalg::{Mat4, C64, ZERO};
use crate::sampling::Sampler;
use serde::{Deserialize, Serialize};

/// `coef · t^p0 x^p1 y^p2 z^p3`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Monomial {
    pub coef: C64,
    pub powers: [u32; 4],
}

/// A complex polynomial in the four real coordinates.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Polynomial {
    pub terms: Vec<Monomial>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn constant(c: C64) -> Self {
        Polynomial {
            terms: vec![Monomial {
                coef: c,
                powers: [0; 4],
            }],
        }
    }

    /// The coordinate function `x^axis`.
    pub fn coordinate(axis: usize) -> Self {
        let mut powers = [0; 4];
        powers[axis] = 1;
        Polynomial {
            terms: vec![Monomial {
                coef: C64::new(1.0, 0.0),
                powers,
            }],
        }
    }

    pub fn term(mut self, coef: C64, powers: [u32; 4]) -> Self {
        self.terms.push(Monomial { coef, powers });
        self
    }

    pub fn eval(&self, z: &Point) -> C64 {
        self.terms
            .iter()
            .map(|m| {
                let mut v = m.coef;
                for (a, &p) in m.powers.iter().enumerate() {
                    if p > 0 {
                        v *= z[a].powi(p as i32);
                    }
                }
                v
            })
            .sum()
    }

    pub fn derivative(&self, axis: usize) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|m| m.powers[axis] > 0)
            .map(|m| {
                let mut powers = m.powers;
                let p = powers[axis];
                powers[axis] -= 1;
                Monomial {
                    coef: m.coef * p as f64,
                    powers,
                }
            })
            .collect();
        Polynomial { terms }
    }

    pub fn degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|m| m.powers.iter().sum())
            .max()
            .unwrap_or(0)
    }

    /// Random coefficients of modulus below `scale` on every monomial of
    /// total degree `1..=degree`.
    pub fn random(rng: &mut Sampler, degree: u32, scale: f64) -> Self {
        let mut p = Polynomial::zero();
        for a in 0..=degree {
            for b in 0..=degree - a {
                for c in 0..=degree - a - b {
                    for d in 0..=degree - a - b - c {
                        if a + b + c + d == 0 {
                            continue;
                        }
                        let coef = C64::new(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0))
                            * (scale / std::f64::consts::SQRT_2);
                        p = p.term(coef, [a, b, c, d]);
                    }
                }
            }
        }
        p
    }
}

/// A 4×4 matrix of polynomials with an analytic derivative.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolynomialMatrix {
    pub entries: Vec<Vec<Polynomial>>,
}

impl PolynomialMatrix {
    /// Identity plus random polynomial perturbations.
    pub fn near_identity(rng: &mut Sampler, degree: u32, scale: f64) -> Self {
        let entries = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| {
                        let p = Polynomial::random(rng, degree, scale);
                        if i == j {
                            p.term(C64::new(1.0, 0.0), [0; 4])
                        } else {
                            p
                        }
                    })
                    .collect()
            })
            .collect();
        PolynomialMatrix { entries }
    }

    pub fn eval(&self, z: &Point) -> Mat4 {
        let mut m = [[ZERO; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                m[i][j] = self.entries[i][j].eval(z);
            }
        }
        m
    }

    pub fn derivative(&self, axis: usize) -> PolynomialMatrix {
        PolynomialMatrix {
            entries: self
                .entries
                .iter()
                .map(|row| row.iter().map(|p| p.derivative(axis)).collect())
                .collect(),
        }
    }
}
