//! Acceptance criteria, one printed line each.

use cqmix::algebra::{identity_suite, product_law_suite};
use cqmix::analytic::*;
use cqmix::dirac::*;
use cqmix::electromag::*;
use cqmix::fd::{Domain, FiniteDifferenceScheme, Point};
use cqmix::geometry::{frame_compatibility, FrameField};
use cqmix::linalg::{self, C64};
use cqmix::sampling::Sampler;
use cqmix::weakfield::*;
use cqmix::{MirrorTensor, MixtureTensor, MultiVector};
use nalgebra::DMatrix;
use std::f64::consts::PI;
use std::time::Instant;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn run(n: u32, name: &str, limit_s: f64, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let o = f();
    let secs = start.elapsed().as_secs_f64();
    let pass = o.pass && secs < limit_s;
    println!(
        "criterion {n:>2} {} {name}: {} [{:.3} s, limit {limit_s} s]",
        if pass { "PASS" } else { "FAIL" },
        o.detail,
        secs
    );
    pass
}

fn basis_table() -> Outcome {
    let eta = MixtureTensor::natural();
    let i = C64::i();
    let mut worst = 0.0f64;
    for a in 0..4 {
        for b in 0..4 {
            let expect = match (a, b) {
                (0, _) => MultiVector::basis(b),
                (_, 0) => MultiVector::basis(a),
                _ if a == b => MultiVector::basis(0),
                _ => {
                    let k = 6 - a - b;
                    let cyclic = (b + 3 - a) % 3 == 1;
                    MultiVector::basis(k).scale(if cyclic { i } else { -i })
                }
            };
            worst = worst.max(eta.mul(&MultiVector::basis(a), &MultiVector::basis(b)).dist(&expect));
        }
    }
    outcome(worst == 0.0, format!("16 products, max residual {worst:e}"))
}

fn identities() -> Outcome {
    let eta = MixtureTensor::natural();
    let a = identity_suite(&eta, &MirrorTensor::natural(), 1000, 1e-12, 2024);
    let b = product_law_suite(&eta, 1000, 1e-12, 2024);
    let worst = a.checks.iter().chain(&b.checks).filter(|c| c.gate).map(|c| c.residual).fold(0.0, f64::max);
    outcome(a.all_pass() && b.all_pass(), format!("{} checks, max gated residual {worst:e}", a.checks.len() + b.checks.len()))
}

fn v(x: f64, y: f64) -> MultiVector {
    MultiVector::from_real([0.0, x, y, 0.0])
}

fn paths() -> Outcome {
    let eta = MixtureTensor::anticommuting_plane();
    let r2 = AnalyticField::new(|p: &Point| MultiVector::from_real([p[1] * p[1] + p[2] * p[2], 0.0, 0.0, 0.0]));
    let cubic = AnalyticField::new(|p: &Point| MultiVector::from_real([0.0, p[1].powi(3) / 3.0, p[2].powi(3) / 3.0, 0.0]));
    let rect = |c: f64| Contour::polyline(&[v(0.0, -1.0), v(c, -1.0), v(c, 1.0), v(0.0, 1.0)]).unwrap();
    let arc = Contour::arc(MultiVector::zero(), 1.0, -PI / 2.0, PI / 2.0, (1, 2)).unwrap();
    let mut worst_naive = 0.0f64;
    let mut worst_fixed = 0.0f64;
    let mut contours = Vec::new();
    for c in [0.5, 1.0, 2.0] {
        let r = path_integral(&r2, &rect(c), &eta).unwrap().value;
        worst_naive = worst_naive.max(r.dist(&v(0.0, 2.0 * (c * c + 1.0 / 3.0))));
        contours.push(rect(c));
    }
    worst_naive = worst_naive.max(path_integral(&r2, &arc, &eta).unwrap().value.dist(&v(0.0, 2.0)));
    contours.push(arc);
    for c in &contours {
        let r = corrected_path_integral(&cubic, c, &eta).unwrap().value;
        worst_fixed = worst_fixed.max(r.dist(&v(0.0, 4.0 / 3.0)));
    }
    outcome(
        worst_naive < 1e-6 && worst_fixed < 1e-6,
        format!("naive max error {worst_naive:e}, corrected max error {worst_fixed:e}"),
    )
}

fn residues() -> Outcome {
    let mut worst = 0.0f64;
    for r in [1.0, 5.0] {
        let p = residue_pair(&Contour::circle(r).unwrap()).unwrap();
        let tau = C64::new(0.0, 2.0 * PI);
        worst = worst.max((p.i_z - tau).norm()).max((p.i_conj + tau).norm()).max(p.sum.norm());
    }
    outcome(worst < 1e-8, format!("radii 1 and 5, max deviation {worst:e}"))
}

fn projector_amplitude(d: &DiracSet, omega: f64, k: [f64; 3], m: f64) -> [C64; 4] {
    // Columns of ω·1 − (k·η − M H) span the kernel of the forward symbol on shell.
    let mut a = linalg::mat_scale(&d.h, C64::new(-m, 0.0));
    for j in 0..3 {
        a = linalg::mat_add(&a, &linalg::mat_scale(&d.eta[j + 1], C64::new(k[j], 0.0)));
    }
    let p = linalg::mat_sub(&linalg::mat_scale(&linalg::identity(), C64::new(omega, 0.0)), &a);
    let col = (0..4)
        .max_by(|&x, &y| {
            let n = |c: usize| (0..4).map(|r| p[r][c].norm_sqr()).sum::<f64>();
            n(x).total_cmp(&n(y))
        })
        .unwrap();
    std::array::from_fn(|r| p[r][col])
}

fn dirac() -> Outcome {
    let d = dirac_set_from_pauli();
    let rel = verify_dirac_conditions(&d);
    let rel_max = rel.max_residual();
    let mut s = Sampler::new(5);
    let (mut fact, mut shell, mut oracle) = (0.0f64, 0.0f64, 0.0f64);
    let mut all = rel.all_pass() && rel_max == 0.0;
    for _ in 0..100 {
        let k = s.vec3(-2.0, 2.0);
        let m = s.uniform(0.1, 2.0);
        let omega = s.uniform(0.1, 3.0);
        let w = PlaneWave::new([s.complex(), s.complex(), s.complex(), s.complex()], omega, k).unwrap();
        let f = factorization_check(&d, &w, m, 1e-12);
        all &= f.all_pass();
        fact = fact.max(f.max_residual());
        let on = PlaneWave::on_shell(&d, k, m).unwrap();
        let r = dirac_residual(&d, &on, m).iter().fold(0.0f64, |a, x| a.max(x.norm()));
        shell = shell.max(r);
        let amp = projector_amplitude(&d, on.omega, k, m);
        let scale = amp.iter().fold(0.0f64, |a, x| a.max(x.norm()));
        let ro = dirac_residual(&d, &PlaneWave::new(amp, on.omega, k).unwrap(), m);
        oracle = oracle.max(ro.iter().fold(0.0f64, |a, x| a.max(x.norm())) / scale);
    }
    all &= shell < 1e-12 && oracle < 1e-12;
    outcome(
        all,
        format!("relations {rel_max:e}, factorization {fact:e}, on-shell {shell:e}, oracle kernel {oracle:e}"),
    )
}

fn wave_potential() -> FourPotential {
    let w1 = FourPotential::plane_wave(0.7, [0.2, -0.4, 0.1], [1.0, 0.5, -0.3], 0.2);
    let w2 = FourPotential::plane_wave(-0.3, [0.5, 0.3, 0.0], [-0.4, 0.9, 0.6], 1.1);
    let (a1, a2) = (w1.clone(), w2.clone());
    FourPotential::new(
        move |p| (w1.phi)(p) + (w2.phi)(p),
        move |p| {
            let (x, y) = ((a1.a)(p), (a2.a)(p));
            [x[0] + y[0], x[1] + y[1], x[2] + y[2]]
        },
    )
}

fn maxwell() -> Outcome {
    let h = wave_potential();
    let z = [0.3, -0.2, 0.4, 0.1];
    let (hc, hf) = (0.02, 0.01);
    let coarse = maxwell_residuals(&h, &z, &FiniteDifferenceScheme::new(hc)).unwrap().groups();
    let fine = maxwell_residuals(&h, &z, &FiniteDifferenceScheme::new(hf)).unwrap().groups();
    let bound = 10.0;
    let mut ok = coarse.iter().all(|r| *r <= bound * hc * hc) && fine.iter().all(|r| *r <= bound * hf * hf);
    let mut ratios = Vec::new();
    for g in 0..4 {
        // Groups exact on the stencil sit at roundoff and carry no rate.
        if coarse[g] > 1e-9 {
            let r = coarse[g] / fine[g];
            ok &= (3.2..4.8).contains(&r);
            ratios.push(format!("{r:.3}"));
        } else {
            ratios.push("exact".into());
        }
    }
    outcome(ok, format!("groups at h={hf}: [{}], ratios [{}]", fine.map(|x| format!("{x:.2e}")).join(", "), ratios.join(", ")))
}

fn simple_field() -> Outcome {
    let mut s = Sampler::new(11);
    let z = [0.1, 0.3, -0.2, 0.25];
    let (mut ok, mut ratios, mut trace) = (true, Vec::new(), 0.0f64);
    for _ in 0..5 {
        let a: [[f64; 2]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| s.uniform(-1.0, 1.0)));
        let w: [[f64; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| s.uniform(-1.5, 1.5)));
        let h = move |p: &Point| -> [f64; 4] {
            std::array::from_fn(|m| a[m][0] * (w[m][0] * p[0] + w[m][1] * p[1]).sin() + a[m][1] * (w[m][2] * p[2] - w[m][3] * p[3]).cos())
        };
        let mut dh = [[0.0; 4]; 4];
        for m in 0..4 {
            let c1 = a[m][0] * (w[m][0] * z[0] + w[m][1] * z[1]).cos();
            let s2 = -a[m][1] * (w[m][2] * z[2] - w[m][3] * z[3]).sin();
            dh[0][m] = c1 * w[m][0];
            dh[1][m] = c1 * w[m][1];
            dh[2][m] = s2 * w[m][2];
            dh[3][m] = -s2 * w[m][3];
        }
        let err = |step: f64| {
            let r = simple_field_curvature(&h, &z, &FiniteDifferenceScheme::new(step)).unwrap();
            let mut e = 0.0f64;
            for al in 0..4 {
                for be in 0..4 {
                    for n in 0..4 {
                        for m in 0..4 {
                            let f = if al == be { 0.5 * (dh[n][m] - dh[m][n]) } else { 0.0 };
                            e = e.max((r.r[al][be][n][m] - f).norm());
                        }
                    }
                }
            }
            (e, r.trace_defect)
        };
        let ((c, tc), (f, tf)) = (err(0.02), err(0.01));
        trace = trace.max(tc).max(tf);
        ok &= c <= 10.0 * 0.02 * 0.02 && f <= 10.0 * 0.01 * 0.01 && (3.2..4.8).contains(&(c / f));
        ratios.push(format!("{:.3}", c / f));
    }
    outcome(ok && trace == 0.0, format!("5 fields, ratios [{}], trace defect {trace:e}", ratios.join(", ")))
}

fn su2(p: &Point) -> DMatrix<C64> {
    let th = 0.4 * p[0] + 0.3 * p[1] * p[2] + 0.2 * p[3].sin();
    let n = [p[1].cos(), p[2].sin() * 0.5, 0.7];
    let len = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
    let n = n.map(|x| x / len);
    let (c, s) = (th.cos(), th.sin());
    let i = C64::i();
    DMatrix::from_row_slice(
        2,
        2,
        &[C64::new(c, 0.0) + i * s * n[2], i * s * n[0] + s * n[1], i * s * n[0] - s * n[1], C64::new(c, 0.0) - i * s * n[2]],
    )
}

fn yang_mills() -> Outcome {
    let set = MatrixPotentialSet::new(2, 0.8, |p| {
        let m = |a: f64, b: f64, c: f64| DMatrix::from_row_slice(2, 2, &[C64::new(c, 0.0), C64::new(a, -b), C64::new(a, b), C64::new(-c, 0.0)]);
        [
            m(p[1] * p[2], 0.3, p[0]),
            m(0.5, p[0] * p[3], p[2] * p[2]),
            m(p[3], p[1], 0.2 * p[0] * p[1]),
            m(p[0] * p[0], -0.4, p[2]),
        ]
    });
    let z = [0.2, -0.1, 0.3, 0.4];
    let res = |h: f64| {
        gauge_covariance_check(&set, su2, &z, &FiniteDifferenceScheme::new(h), 1.0).unwrap().checks[0].residual
    };
    let (c, f) = (res(0.02), res(0.01));
    let s0 = su2(&[0.5, 1.0, -0.7, 0.3]);
    let constant = gauge_covariance_check(&set, move |_| s0.clone(), &z, &FiniteDifferenceScheme::new(1e-3), 1e-10).unwrap();
    let cr = constant.checks[0].residual;
    let ok = c <= 10.0 * 0.02 * 0.02 && f <= 10.0 * 0.01 * 0.01 && (3.2..4.8).contains(&(c / f)) && cr < 1e-10;
    outcome(ok, format!("SU(2) residual {f:e} at h=0.01, ratio {:.3}, constant gauge {cr:e}", c / f))
}

fn weak_field() -> Outcome {
    // Newtonian limit.
    let g = [3e-4, -1e-4, 2e-4];
    let cfg = WeakFieldConfig::new(1e-3).unwrap().with_psi(move |p| g[0] * p[1] + g[1] * p[2] + g[2] * p[3]);
    let p = TestParticle::new(1.0, 0.0, [0.0; 4], [0.05, 0.0, -0.02]).unwrap();
    let path = trajectory(&cfg, &p, 0.05, 200).unwrap();
    let newton = (0..3)
        .map(|i| ((path[200].v[i] - p.v[i]) / 10.0 + g[i]).abs() / g[i].abs())
        .fold(0.0, f64::max);

    // Lorentz limit with electric and magnetic fields.
    let (e, b) = ([0.05, 0.02, 0.0], [0.1, -0.3, 0.4]);
    let cfg = WeakFieldConfig::new(1e-4)
        .unwrap()
        .with_phi(move |p| e[0] * p[1] + e[1] * p[2])
        .with_vector_potential(move |p| {
            let r = [p[1], p[2], p[3]];
            [-0.5 * (b[1] * r[2] - b[2] * r[1]), -0.5 * (b[2] * r[0] - b[0] * r[2]), -0.5 * (b[0] * r[1] - b[1] * r[0])]
        });
    let q = TestParticle::new(1.5, -0.8, [0.0, 0.1, 0.2, -0.1], [0.3, 0.1, -0.2]).unwrap();
    let f = force_decomposition(&cfg, &q, &q.x).unwrap();
    let vv = q.v;
    let vxb = [vv[1] * b[2] - vv[2] * b[1], vv[2] * b[0] - vv[0] * b[2], vv[0] * b[1] - vv[1] * b[0]];
    let lorentz = (0..3)
        .map(|i| {
            let x = q.e * (e[i] + vxb[i]) / q.m;
            (f.lorentz[i] - x).abs() / x.abs()
        })
        .fold(0.0, f64::max);

    // Cyclotron orbit over one period.
    let bz = 1.0;
    let cfg = WeakFieldConfig::new(1e-4).unwrap().with_vector_potential(move |p| [0.5 * bz * p[2], -0.5 * bz * p[1], 0.0]);
    let v0 = 0.1;
    let c = TestParticle::new(1.0, 1.0, [0.0; 4], [v0, 0.0, 0.0]).unwrap();
    let period = cyclotron_period(&cfg, &c, bz);
    let orbit = trajectory(&cfg, &c, period / 1000.0, 1000).unwrap();
    let radius = c.m * v0 * cfg.c / (c.e * bz);
    let (mut rad, mut drift) = (0.0f64, 0.0f64);
    for s in &orbit {
        let r = (s.x[0].powi(2) + (s.x[1] + radius).powi(2)).sqrt();
        rad = rad.max((r - radius).abs() / radius);
        drift = drift.max(((s.v[0].powi(2) + s.v[1].powi(2) + s.v[2].powi(2)).sqrt() - v0).abs() / v0);
    }
    outcome(
        newton < 0.01 && lorentz < 0.01 && rad < 0.01 && drift < 1e-3,
        format!("Newton {newton:.2e}, Lorentz {lorentz:.2e}, cyclotron radius {rad:.2e}, speed drift {drift:.2e} (relative)"),
    )
}

fn compatibility() -> Outcome {
    let domain = Domain::new([-1.0; 4], [1.0; 4]);
    let frame = FrameField::new(
        |z: &Point| {
            let mut m = linalg::identity();
            m[0][1] = C64::new(0.3 * z[1].sin(), 0.1 * z[0]);
            m[1][2] = C64::new(0.2 * (z[0] + z[3]).cos(), 0.0);
            m[2][0] = C64::new(0.1 * z[2] * z[1], 0.05);
            m[3][3] = C64::new(1.0 + 0.2 * z[0].sin() * z[2], 0.0);
            m[2][3] = C64::new(0.0, 0.2 * (0.5 * z[3]).sin());
            m
        },
        domain,
    );
    let pts = domain.interior_lattice(2, 0.4);
    let base = MixtureTensor::natural();
    let (hc, hf) = (2e-3, 1e-3);
    let coarse = frame_compatibility(&frame, &frame, &base, &pts, &FiniteDifferenceScheme::new(hc), 1e-4);
    let fine = frame_compatibility(&frame, &frame, &base, &pts, &FiniteDifferenceScheme::new(hf), 1e-4);
    let bad = frame_compatibility(&frame, &frame.distorted(1, 0.3), &base, &pts, &FiniteDifferenceScheme::new(hf), 1e-4);
    let mut ok = true;
    let mut parts = Vec::new();
    for id in ["metric-compatibility", "mixture-compatibility"] {
        let (c, f, b) = (coarse.get(id).unwrap().residual, fine.get(id).unwrap().residual, bad.get(id).unwrap().residual);
        ok &= f <= 10.0 * hf * hf && (3.2..4.8).contains(&(c / f)) && b >= 10.0 * f;
        parts.push(format!("{id} {f:.2e} ratio {:.3} mismatch x{:.0}", c / f, b / f));
    }
    outcome(ok, parts.join("; "))
}

fn poynting_check() -> Outcome {
    let eta = MixtureTensor::natural();
    let mut s = Sampler::new(5);
    let (mut routes, mut oracle) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let (e, b) = (s.vec3(-3.0, 3.0), s.vec3(-3.0, 3.0));
        let p = poynting(e, b, &eta);
        routes = routes.max(p.discrepancy());
        let cross = [e[1] * b[2] - e[2] * b[1], e[2] * b[0] - e[0] * b[2], e[0] * b[1] - e[1] * b[0]];
        let sc: f64 = e.iter().chain(b.iter()).map(|x| x * x).sum();
        let expect = MultiVector::from_real([sc, 2.0 * cross[0], 2.0 * cross[1], 2.0 * cross[2]]);
        oracle = oracle.max(p.product.dist(&expect));
    }
    outcome(routes < 1e-10 && oracle < 1e-10, format!("100 pairs, route gap {routes:e}, oracle gap {oracle:e}"))
}

#[test]
fn acceptance_criteria() {
    let results = [
        run(1, "basis multiplication table", 1e-3, basis_table),
        run(2, "identity suite", 1.0, identities),
        run(3, "path dependence and corrected integral", 1.0, paths),
        run(4, "residue absorption", 1.0, residues),
        run(5, "Dirac algebra", 1.0, dirac),
        run(6, "Maxwell identities", 5.0, maxwell),
        run(7, "simple-field curvature", 5.0, simple_field),
        run(8, "Yang-Mills gauge covariance", 5.0, yang_mills),
        run(9, "weak-field limits", 10.0, weak_field),
        run(10, "compatibility", 5.0, compatibility),
        run(11, "Poynting consistency", 1.0, poynting_check),
    ];
    let failed: Vec<_> = results.iter().enumerate().filter(|(_, p)| !**p).map(|(i, _)| i + 1).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
