//! Contraction identities of the mixture tensor, checked by direct
//! enumeration over index tuples.

use super::{magnitude_sq, metric_from_mixture, InvolutionKind, MirrorTensor, MixtureTensor};
use super::involute_with;
use crate::linalg::{self, Mat4, Tensor3, C64, ZERO};
use crate::report::{Check, SuiteReport};
use crate::sampling::Sampler;

/// Condition estimate above which a random transform is redrawn.
const SAMPLE_CONDITION_LIMIT: f64 = 1e2;

fn max_over<F: Fn(usize, usize, usize, usize) -> C64>(n: usize, f: F) -> f64 {
    let mut worst: f64 = 0.0;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    worst = worst.max(f(a, b, c, d).norm());
                }
            }
        }
    }
    worst
}

fn delta(a: usize, b: usize) -> C64 {
    if a == b {
        C64::new(1.0, 0.0)
    } else {
        ZERO
    }
}

fn sum<F: Fn(usize) -> C64>(n: usize, f: F) -> C64 {
    (0..n).map(f).sum()
}

fn sum2<F: Fn(usize, usize) -> C64>(n: usize, f: F) -> C64 {
    let mut s = ZERO;
    for i in 0..n {
        for j in 0..n {
            s += f(i, j);
        }
    }
    s
}

/// `(1/n) η^a_{mn} η^m_{bw} η_g^{nw}`-type triple contraction with the three
/// tables and index routing supplied by the caller.
fn triple<F: Fn(usize, usize, usize) -> C64>(n: usize, f: F) -> C64 {
    let mut s = ZERO;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                s += f(i, j, k);
            }
        }
    }
    s / n as f64
}

/// Verifies the pseudo-inverse, cyclic, conjugate, index-exchange, triple and
/// signature identities, associativity, and mirror covariance under `samples`
/// random basis transforms drawn from `seed`.
pub fn identity_suite(
    eta: &MixtureTensor,
    mirror: &MirrorTensor,
    samples: usize,
    tol: f64,
    seed: u64,
) -> SuiteReport {
    let n = eta.dim;
    let nf = n as f64;
    let l: &Tensor3 = &eta.lower;
    let u: &Tensor3 = &eta.upper;
    let mut r = SuiteReport::new("algebra-identities");

    let lemma_a = max_over(n, |a, d, _, _| {
        sum2(n, |b, g| l[a][b][g] * u[d][g][b]) - delta(a, d) * nf
    });
    let lemma_b = max_over(n, |a, d, _, _| {
        sum2(n, |g, b| l[g][d][b] * u[g][b][a]) - delta(a, d) * nf
    });
    let lemma_c = max_over(n, |a, d, _, _| {
        sum2(n, |g, b| u[g][a][b] * l[g][b][d]) - delta(a, d) * nf
    });
    r.check(
        "pseudo-inverse-contractions",
        "the three contractions of the mixture with its dual equal n times the identity",
        lemma_a.max(lemma_b).max(lemma_c),
        tol,
    );

    r.check(
        "cyclic-lower",
        "lower mixture invariant under cyclic permutation of its indices",
        max_over(n, |g, a, b, _| l[g][a][b] - l[a][b][g]),
        tol,
    );
    r.check(
        "cyclic-upper",
        "dual mixture invariant under cyclic permutation of its indices",
        max_over(n, |g, a, b, _| u[g][a][b] - u[a][b][g]),
        tol,
    );
    r.check(
        "conjugate-lower",
        "swapping the product order of the lower mixture conjugates it",
        max_over(n, |g, a, b, _| l[g][a][b] - l[g][b][a].conj()),
        tol,
    );
    r.check(
        "conjugate-upper",
        "swapping the product order of the dual mixture conjugates it",
        max_over(n, |g, a, b, _| u[g][a][b] - u[g][b][a].conj()),
        tol,
    );
    r.push(Check::informational(
        "conjugate-upper-negated",
        "dual mixture against minus the conjugate of its swap; incompatible with the contractions above",
        max_over(n, |g, a, b, _| u[g][a][b] + u[g][b][a].conj()),
        tol,
    ));

    let pi_a = max_over(n, |g, d, _, _| {
        sum2(n, |a, b| l[g][a][b] * u[d][b][a]) / nf - delta(g, d)
    });
    let pi_b = max_over(n, |d, b, _, _| {
        sum2(n, |g, a| l[g][a][b] * u[g][d][a]) / nf - delta(d, b)
    });
    r.check(
        "pseudo-inverse-normalized",
        "contractions of the mixture with its dual over n give the identity",
        pi_a.max(pi_b),
        tol,
    );

    r.check(
        "index-exchange-1",
        "η^b_{gl} η_d^{al} = η_l^{ab} η^l_{gd}",
        max_over(n, |b, g, a, d| {
            sum(n, |m| l[b][g][m] * u[d][a][m]) - sum(n, |m| u[m][a][b] * l[m][g][d])
        }),
        tol,
    );
    r.check(
        "index-exchange-2",
        "η^b_{gl} η_d^{la} = η_g^{al} η^b_{ld}",
        max_over(n, |b, g, a, d| {
            sum(n, |m| l[b][g][m] * u[d][m][a]) - sum(n, |m| u[g][a][m] * l[b][m][d])
        }),
        tol,
    );
    r.check(
        "index-exchange-3",
        "η^b_{lg} η_d^{la} = η_l^{ba} η^l_{dg}",
        max_over(n, |b, g, a, d| {
            sum(n, |m| l[b][m][g] * u[d][m][a]) - sum(n, |m| u[m][b][a] * l[m][d][g])
        }),
        tol,
    );
    r.check(
        "index-exchange-4",
        "η^b_{lg} η_d^{al} = η_g^{la} η^b_{dl}",
        max_over(n, |b, g, a, d| {
            sum(n, |m| l[b][m][g] * u[d][a][m]) - sum(n, |m| u[g][m][a] * l[b][d][m])
        }),
        tol,
    );

    r.check(
        "triple-1",
        "η^a_{bg} = (1/n) η^a_{mn} η^m_{bw} η_g^{nw}",
        max_over(n, |a, b, g, _| {
            l[a][b][g] - triple(n, |m, v, w| l[a][m][v] * l[m][b][w] * u[g][v][w])
        }),
        tol,
    );
    r.check(
        "triple-2",
        "η_a^{bg} = (1/n) η_a^{mn} η_m^{bw} η^g_{nw}",
        max_over(n, |a, b, g, _| {
            u[a][b][g] - triple(n, |m, v, w| u[a][m][v] * u[m][b][w] * l[g][v][w])
        }),
        tol,
    );
    r.check(
        "triple-3",
        "η^a_{gb} = (1/n) η^a_{nm} η^m_{wb} η_g^{wn}",
        max_over(n, |a, g, b, _| {
            l[a][g][b] - triple(n, |m, v, w| l[a][v][m] * l[m][w][b] * u[g][w][v])
        }),
        tol,
    );
    r.check(
        "triple-4",
        "η_a^{gb} = (1/n) η_a^{nm} η_m^{wb} η^g_{wn}",
        max_over(n, |a, g, b, _| {
            u[a][g][b] - triple(n, |m, v, w| u[a][v][m] * u[m][w][b] * l[g][w][v])
        }),
        tol,
    );

    // s = e_α ē^α; the mirrored contraction η^α_{βγ} η_δ^{γ̄β} equals s·1.
    let mt = &mirror.m;
    let mirrored_u = |d: usize, g: usize, b: usize| sum(n, |v| mt[v][g] * u[d][v][b]);
    let s_value = match eta.dual_basis() {
        Ok(duals) => {
            let mut acc = ZERO;
            for (a, dual) in duals.iter().enumerate().take(n) {
                let p = eta.mul(&super::MultiVector::basis(a), &mirror.apply(dual));
                acc += p.c[0];
            }
            acc
        }
        Err(_) => ZERO,
    };
    let signature_residual = if s_value.norm() < 1e-12 {
        f64::INFINITY
    } else {
        max_over(n, |a, d, _, _| {
            sum2(n, |b, g| l[a][b][g] * mirrored_u(d, g, b)) / s_value - delta(a, d)
        })
    };
    r.check(
        "signature-pseudo-inverse",
        "mirrored contraction divided by the signature s = e_α ē^α gives the identity",
        signature_residual,
        tol,
    );

    r.check(
        "dual-product-consistency",
        "both expressions of e_β e^α agree: η^α_{γβ} = η_β^{αγ}",
        max_over(n, |a, g, b, _| l[a][g][b] - u[b][a][g]),
        tol,
    );

    r.check(
        "associativity",
        "η^λ_{βγ}η^ω_{αλ} = η^λ_{αβ}η^ω_{λγ}",
        eta.associativity_defect(),
        tol,
    );

    r.push(mirror_covariance(mirror, samples, tol, seed));
    r
}

/// The mirror carried into a random basis `e_{α'} = Λ_{α'}^β e_β` must act on
/// the new bases as the original mirror acts on their expansions.
fn mirror_covariance(mirror: &MirrorTensor, samples: usize, tol: f64, seed: u64) -> Check {
    let mut rng = Sampler::new(seed);
    let mut worst: f64 = 0.0;
    let mut drawn = 0;
    while drawn < samples {
        let lambda = rng.matrix();
        let Some((_, condition)) = linalg::invert(&lambda) else {
            continue;
        };
        if condition > SAMPLE_CONDITION_LIMIT {
            continue;
        }
        drawn += 1;
        let Ok(primed) = mirror.transformed(&lambda) else {
            worst = f64::INFINITY;
            continue;
        };
        // Row α' of Λ holds e_{α'}; mirroring it directly versus applying M'
        // and re-expanding must give the same vector.
        let mt = linalg::transpose(&mirror.m);
        let direct: Mat4 = linalg::mat_mul(&lambda, &mt);
        let via_primed = linalg::mat_mul(&linalg::transpose(&primed.m), &lambda);
        let scale = linalg::max_abs_mat(&lambda).max(1.0);
        worst = worst
            .max(linalg::max_abs_diff_mat(&direct, &via_primed) / scale)
            .max(primed.involution_defect());
    }
    Check::new(
        "mirror-covariance",
        "the mirror transforms covariantly under random invertible basis changes",
        worst,
        tol,
    )
}

/// Product laws of the involutions and the magnitude over `samples` random
/// pairs: `(zw)* = w*z*`, `(zw)† = z†w†`, mirror involution, `|zw|² = |z|²|w|²`
/// and `|z|² = z^α z^β g_{αβ}`.
pub fn product_law_suite(eta: &MixtureTensor, samples: usize, tol: f64, seed: u64) -> SuiteReport {
    let mut rng = Sampler::new(seed);
    let mirror = &eta.mirror;
    let metric = metric_from_mixture(eta, mirror);
    let mut conj = 0.0f64;
    let mut adj = 0.0f64;
    let mut inv = 0.0f64;
    let mut mag = 0.0f64;
    let mut quad = 0.0f64;
    for _ in 0..samples {
        let z = rng.multivector();
        let w = rng.multivector();
        let zw = eta.mul(&z, &w);

        let lhs = involute_with(&zw, InvolutionKind::Conjugate, mirror);
        let rhs = eta.mul(
            &involute_with(&w, InvolutionKind::Conjugate, mirror),
            &involute_with(&z, InvolutionKind::Conjugate, mirror),
        );
        conj = conj.max(lhs.dist(&rhs));

        let lhs = involute_with(&zw, InvolutionKind::Adjoint, mirror);
        let rhs = eta.mul(
            &involute_with(&z, InvolutionKind::Adjoint, mirror),
            &involute_with(&w, InvolutionKind::Adjoint, mirror),
        );
        adj = adj.max(lhs.dist(&rhs));

        let twice = involute_with(&involute_with(&z, InvolutionKind::Mirror, mirror), InvolutionKind::Mirror, mirror);
        inv = inv.max(twice.dist(&z));

        match (magnitude_sq(&zw, eta), magnitude_sq(&z, eta), magnitude_sq(&w, eta)) {
            (Ok(a), Ok(b), Ok(c)) => {
                let rel = (a - b * c).norm() / (b * c).norm().max(1.0);
                mag = mag.max(rel);
            }
            _ => mag = f64::INFINITY,
        }
        match (&metric, magnitude_sq(&z, eta)) {
            (Ok(g), Ok(m)) => quad = quad.max((m - g.quadratic(&z.c)).norm()),
            _ => quad = f64::INFINITY,
        }
    }
    let mut r = SuiteReport::new("algebra-product-laws");
    r.check("conjugate-reverses-products", "(zw)* = w* z*", conj, tol);
    r.check("adjoint-preserves-products", "(zw)† = z† w†", adj, tol);
    r.check("mirror-involution", "mirror of the mirror is the identity", inv, tol);
    r.check("magnitude-multiplicative", "|zw|² = |z|²|w|², relative", mag, tol * 100.0);
    r.check("magnitude-metric", "|z|² = z^α z^β g_{αβ}", quad, tol);
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn natural_passes_every_gating_identity() {
        let eta = MixtureTensor::natural();
        let r = identity_suite(&eta, &MirrorTensor::natural(), 200, 1e-12, 1);
        for c in &r.checks {
            if c.gate {
                assert!(c.pass, "{} residual {}", c.id, c.residual);
            }
        }
        assert!(r.all_pass());
        let printed = r.get("conjugate-upper-negated").unwrap();
        assert!((printed.residual - 2.0).abs() < 1e-12);
    }

    #[test]
    fn contractions_are_exact_for_natural() {
        let eta = MixtureTensor::natural();
        let r = identity_suite(&eta, &MirrorTensor::natural(), 1, 1e-12, 1);
        for id in ["pseudo-inverse-contractions", "triple-1", "index-exchange-3", "associativity"] {
            assert_eq!(r.get(id).unwrap().residual, 0.0, "{id}");
        }
    }

    #[test]
    fn perturbation_breaks_an_identity() {
        let eta = MixtureTensor::natural().perturbed(3, 1, 2, C64::new(0.1, 0.0));
        let r = identity_suite(&eta, &MirrorTensor::natural(), 10, 1e-12, 1);
        assert!(!r.all_pass());
        assert!(r.max_residual() >= 0.05);
        let lemma = r.get("pseudo-inverse-contractions").unwrap();
        assert!((lemma.residual - 0.1).abs() < 1e-12);
    }

    #[test]
    fn product_laws_hold_in_natural_geometry() {
        let r = product_law_suite(&MixtureTensor::natural(), 1000, 1e-12, 4);
        assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn plane_algebra_passes_its_contractions() {
        let eta = MixtureTensor::anticommuting_plane();
        let r = identity_suite(&eta, &eta.mirror, 10, 1e-12, 2);
        for id in ["pseudo-inverse-contractions", "associativity", "index-exchange-1", "triple-1"] {
            assert!(r.get(id).unwrap().pass, "{id}");
        }
    }
}
