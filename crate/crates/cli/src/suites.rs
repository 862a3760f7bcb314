use crate::config::{MaxwellConfig, ScenarioConfig};
use crate::error::{CliError, Result};
use cqmix::algebra::{identity_suite, product_law_suite};
use cqmix::analytic::{corrected_path_integral, path_integral, residue_pair, AnalyticField, Contour};
use cqmix::dirac::{dirac_residual, dirac_set_from_pauli, factorization_check, verify_dirac_conditions, PlaneWave};
use cqmix::electromag::{gauge_covariance_check, maxwell_residuals, FourPotential, MatrixPotentialSet};
use cqmix::fd::{Domain, FiniteDifferenceScheme, Point};
use cqmix::geometry::{frame_compatibility, FrameField};
use cqmix::linalg::{self, C64};
use nalgebra::DMatrix;
use cqmix::sampling::Sampler;
use cqmix::weakfield::{cyclotron_period, force_decomposition, trajectory, TestParticle, WeakFieldConfig};
use cqmix::{Check, MirrorTensor, MixtureTensor, MultiVector, SuiteReport};
use std::f64::consts::PI;

/// Runs the named suite. Library errors inside a suite become failing checks.
pub fn run_suite(name: &str, cfg: &ScenarioConfig) -> Result<SuiteReport> {
    let report = match name {
        "algebra-identities" => algebra(cfg),
        "geometry-compatibility" => geometry(cfg),
        "analytic-paths" => analytic(cfg),
        "dirac" => dirac(cfg),
        "maxwell" => maxwell(cfg),
        "yangmills" => yangmills(cfg),
        "weakfield" => weakfield(cfg),
        "all" => {
            let mut all = SuiteReport::new("all");
            for s in &crate::SUITES[..crate::SUITES.len() - 1] {
                for mut c in run_suite(s, cfg)?.checks {
                    c.id = format!("{s}/{}", c.id);
                    all.push(c);
                }
            }
            all
        }
        other => return Err(CliError::UnknownSuite(other.to_string())),
    };
    Ok(report)
}

fn failed(r: &mut SuiteReport, id: &str, reference: &str, e: cqmix::Error) {
    r.push(Check::new(id, &format!("{reference} ({e})"), f64::MAX, 0.0));
}

/// `|ratio − 4| ≤ 0.8`, the second-order rate under step halving.
fn rate_check(r: &mut SuiteReport, id: &str, reference: &str, coarse: f64, fine: f64) {
    r.check(id, reference, (coarse / fine - 4.0).abs(), 0.8);
}

fn algebra(cfg: &ScenarioConfig) -> SuiteReport {
    let eta = MixtureTensor::natural();
    let mut r = SuiteReport::new("algebra-identities");
    let mut worst = 0.0f64;
    for a in 0..4 {
        for b in 0..4 {
            let expect = match (a, b) {
                (0, _) => MultiVector::basis(b),
                (_, 0) => MultiVector::basis(a),
                _ if a == b => MultiVector::basis(0),
                _ => {
                    let sign = if (b + 3 - a) % 3 == 1 { 1.0 } else { -1.0 };
                    MultiVector::basis(6 - a - b).scale(C64::new(0.0, sign))
                }
            };
            worst = worst.max(eta.mul(&MultiVector::basis(a), &MultiVector::basis(b)).dist(&expect));
        }
    }
    r.check("basis-table", "e_a e_a = e0 and e_i e_j = i e_k for cyclic i, j, k", worst, 0.0);
    let (n, tol, seed) = (cfg.algebra.samples, cfg.algebra.tolerance, cfg.seed);
    r.extend(identity_suite(&eta, &MirrorTensor::natural(), n, tol, seed));
    r.extend(product_law_suite(&eta, n, tol, seed));
    r
}

fn trig_frame(domain: Domain) -> FrameField {
    FrameField::new(
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
    )
}

fn geometry(cfg: &ScenarioConfig) -> SuiteReport {
    let g = &cfg.geometry;
    let domain = Domain::new([-1.0; 4], [1.0; 4]);
    let frame = trig_frame(domain);
    let pts = domain.interior_lattice(g.lattice, g.margin);
    let base = MixtureTensor::natural();
    let coarse = frame_compatibility(&frame, &frame, &base, &pts, &FiniteDifferenceScheme::new(g.h), g.tolerance);
    let fine = frame_compatibility(&frame, &frame, &base, &pts, &FiniteDifferenceScheme::new(0.5 * g.h), g.tolerance);
    let bad = frame_compatibility(
        &frame,
        &frame.distorted(1, g.distortion),
        &base,
        &pts,
        &FiniteDifferenceScheme::new(0.5 * g.h),
        g.tolerance,
    );
    let mut r = SuiteReport::new("geometry-compatibility");
    for id in ["metric-compatibility", "mixture-compatibility"] {
        let (c, f, b) = (
            coarse.get(id).map_or(f64::MAX, |c| c.residual),
            fine.get(id).map_or(f64::MAX, |c| c.residual),
            bad.get(id).map_or(0.0, |c| c.residual),
        );
        r.check(id, "covariant derivative of the frame-induced tensor", f, g.tolerance);
        rate_check(&mut r, &format!("{id}-rate"), "second-order convergence under step halving", c, f);
        r.check(&format!("{id}-mismatch"), "matched residual over mismatched residual", f / b, 0.1);
    }
    for c in fine.checks {
        if r.get(&c.id).is_none() {
            r.push(c);
        }
    }
    r
}

fn v(x: f64, y: f64) -> MultiVector {
    MultiVector::from_real([0.0, x, y, 0.0])
}

fn rectangle(c: f64) -> std::result::Result<Contour, cqmix::Error> {
    Contour::polyline(&[v(0.0, -1.0), v(c, -1.0), v(c, 1.0), v(0.0, 1.0)])
}

fn analytic(cfg: &ScenarioConfig) -> SuiteReport {
    let a = &cfg.analytic;
    let eta = MixtureTensor::anticommuting_plane();
    let r2 = AnalyticField::new(|p: &Point| MultiVector::from_real([p[1] * p[1] + p[2] * p[2], 0.0, 0.0, 0.0]));
    let cubic = AnalyticField::new(|p: &Point| MultiVector::from_real([0.0, p[1].powi(3) / 3.0, p[2].powi(3) / 3.0, 0.0]));
    let mut r = SuiteReport::new("analytic-paths");
    let mut contours = Vec::new();
    for &c in &a.rectangles {
        match rectangle(c) {
            Ok(k) => contours.push((format!("rect-{c}"), k, v(0.0, 2.0 * (c * c + 1.0 / 3.0)))),
            Err(e) => failed(&mut r, &format!("rect-{c}"), "rectangle contour", e),
        }
    }
    match Contour::arc(MultiVector::zero(), 1.0, -PI / 2.0, PI / 2.0, (1, 2)) {
        Ok(k) => contours.push(("arc".into(), k, v(0.0, 2.0))),
        Err(e) => failed(&mut r, "arc", "unit half-circle contour", e),
    }
    for (name, k, naive) in &contours {
        match path_integral(&r2, k, &eta) {
            Ok(q) => r.check(&format!("naive-{name}"), "integral of dr |r|^2 depends on the path", q.value.dist(naive), a.tolerance),
            Err(e) => failed(&mut r, &format!("naive-{name}"), "naive integral", e),
        }
        match corrected_path_integral(&cubic, k, &eta) {
            Ok(q) => r.check(
                &format!("corrected-{name}"),
                "connection-corrected integral equals (4/3) e2 on every path",
                q.value.dist(&v(0.0, 4.0 / 3.0)),
                a.tolerance,
            ),
            Err(e) => failed(&mut r, &format!("corrected-{name}"), "corrected integral", e),
        }
    }
    let tau = C64::new(0.0, 2.0 * PI);
    for &radius in &a.radii {
        match Contour::circle(radius).and_then(|c| residue_pair(&c)) {
            Ok(p) => {
                let t = a.residue_tolerance;
                r.check(&format!("residue-z-{radius}"), "closed integral of dw/w is 2 pi i", (p.i_z - tau).norm(), t);
                r.check(&format!("residue-conj-{radius}"), "closed integral of dw*/w* is -2 pi i", (p.i_conj + tau).norm(), t);
                r.check(&format!("residue-sum-{radius}"), "the two residues cancel", p.sum.norm(), t);
            }
            Err(e) => failed(&mut r, &format!("residue-{radius}"), "residue pair", e),
        }
    }
    r
}

fn dirac(cfg: &ScenarioConfig) -> SuiteReport {
    let c = &cfg.dirac;
    let d = dirac_set_from_pauli();
    let mut r = verify_dirac_conditions(&d);
    let mut s = Sampler::new(cfg.seed);
    let (mut fact, mut shell) = (0.0f64, 0.0f64);
    for _ in 0..c.modes {
        let k = s.vec3(-c.max_momentum, c.max_momentum);
        let m = s.uniform(0.0, c.max_mass);
        let omega = s.uniform(0.1, 3.0);
        let amp = [s.complex(), s.complex(), s.complex(), s.complex()];
        match PlaneWave::new(amp, omega, k) {
            Ok(w) => fact = fact.max(factorization_check(&d, &w, m, c.tolerance).max_residual()),
            Err(_) => fact = f64::MAX,
        }
        match PlaneWave::on_shell(&d, k, m) {
            Ok(w) => shell = shell.max(dirac_residual(&d, &w, m).iter().fold(0.0, |a, x| a.max(x.norm()))),
            Err(_) => shell = f64::MAX,
        }
    }
    r.check("symbol-factorization", "adjoint times forward symbol is the Klein-Gordon symbol", fact, c.tolerance);
    r.check("on-shell-residual", "Dirac residual of the on-shell kernel amplitude", shell, c.tolerance);
    r
}

pub fn wave_potential(m: &MaxwellConfig) -> FourPotential {
    let waves: Vec<_> = m.waves.iter().map(|w| FourPotential::plane_wave(w.phi0, w.a0, w.k, w.phase)).collect();
    let ws = waves.clone();
    FourPotential::new(
        move |p| waves.iter().map(|w| (w.phi)(p)).sum(),
        move |p| {
            let mut a = [0.0; 3];
            for w in &ws {
                let x = (w.a)(p);
                for i in 0..3 {
                    a[i] += x[i];
                }
            }
            a
        },
    )
}

pub const MAXWELL_GROUPS: [&str; 4] = ["gauss-e", "ampere", "gauss-b", "faraday"];

fn maxwell(cfg: &ScenarioConfig) -> SuiteReport {
    let m = &cfg.maxwell;
    let h = wave_potential(m);
    let mut r = SuiteReport::new("maxwell");
    let groups = |step: f64| maxwell_residuals(&h, &m.point, &FiniteDifferenceScheme::new(step)).map(|x| x.groups());
    match (groups(m.h), groups(0.5 * m.h)) {
        (Ok(c), Ok(f)) => {
            let hf = 0.5 * m.h;
            for g in 0..4 {
                let id = MAXWELL_GROUPS[g];
                r.check(id, "field equation residual of a wave-equation potential", f[g], m.constant * hf * hf);
                if c[g] > 1e-9 {
                    rate_check(&mut r, &format!("{id}-rate"), "second-order convergence under step halving", c[g], f[g]);
                } else {
                    r.push(Check::informational(&format!("{id}-rate"), "exact on the stencil; no rate", c[g], 1e-9));
                }
            }
        }
        (Err(e), _) | (_, Err(e)) => failed(&mut r, "maxwell", "Maxwell residuals", e),
    }
    r
}

fn su2(p: &Point) -> DMatrix<C64> {
    let th = 0.4 * p[0] + 0.3 * p[1] * p[2] + 0.2 * p[3].sin();
    let n = [p[1].cos(), 0.5 * p[2].sin(), 0.7];
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

fn potentials(epsilon: f64) -> MatrixPotentialSet {
    MatrixPotentialSet::new(2, epsilon, |p| {
        let m = |a: f64, b: f64, c: f64| DMatrix::from_row_slice(2, 2, &[C64::new(c, 0.0), C64::new(a, -b), C64::new(a, b), C64::new(-c, 0.0)]);
        [
            m(p[1] * p[2], 0.3, p[0]),
            m(0.5, p[0] * p[3], p[2] * p[2]),
            m(p[3], p[1], 0.2 * p[0] * p[1]),
            m(p[0] * p[0], -0.4, p[2]),
        ]
    })
}

fn yangmills(cfg: &ScenarioConfig) -> SuiteReport {
    let y = &cfg.yangmills;
    let set = potentials(y.epsilon);
    let mut r = SuiteReport::new("yangmills");
    let res = |h: f64| {
        gauge_covariance_check(&set, su2, &y.point, &FiniteDifferenceScheme::new(h), f64::INFINITY).map(|c| c.checks[0].residual)
    };
    match (res(y.h), res(0.5 * y.h)) {
        (Ok(c), Ok(f)) => {
            let hf = 0.5 * y.h;
            r.check("gauge-covariance", "F' = S^-1 F S for a smooth SU(2) gauge", f, y.constant * hf * hf);
            rate_check(&mut r, "gauge-covariance-rate", "second-order convergence under step halving", c, f);
        }
        (Err(e), _) | (_, Err(e)) => failed(&mut r, "gauge-covariance", "gauge covariance", e),
    }
    let s0 = su2(&[0.5, 1.0, -0.7, 0.3]);
    match gauge_covariance_check(&set, move |_| s0.clone(), &y.point, &FiniteDifferenceScheme::new(1e-3), y.exact_tolerance) {
        Ok(c) => r.check("constant-gauge", "F' = S^-1 F S exactly for constant S", c.checks[0].residual, y.exact_tolerance),
        Err(e) => failed(&mut r, "constant-gauge", "constant gauge", e),
    }
    r
}

fn weak_base(cfg: &ScenarioConfig) -> std::result::Result<WeakFieldConfig, cqmix::Error> {
    let w = &cfg.weakfield;
    Ok(WeakFieldConfig::new(w.mu_e)?.with_speed_of_light(w.c)?.with_guard(w.guard))
}

fn newton(cfg: &ScenarioConfig) -> std::result::Result<f64, cqmix::Error> {
    let g = [3e-4, -1e-4, 2e-4];
    let wf = weak_base(cfg)?.with_psi(move |p| g[0] * p[1] + g[1] * p[2] + g[2] * p[3]);
    let p = TestParticle::new(1.0, 0.0, [0.0; 4], [0.05, 0.0, -0.02])?;
    let (dt, n) = (0.05, 200);
    let path = trajectory(&wf, &p, dt, n)?;
    let t = dt * n as f64;
    let mut worst = 0.0f64;
    for i in 0..3 {
        let a = (path[n].v[i] - p.v[i]) / t;
        let expect = -0.5 * wf.mu_g * g[i];
        worst = worst.max((a - expect).abs() / expect.abs());
    }
    Ok(worst)
}

fn lorentz(cfg: &ScenarioConfig) -> std::result::Result<f64, cqmix::Error> {
    let (e, b) = ([0.05, 0.02, 0.0], [0.1, -0.3, 0.4]);
    let wf = weak_base(cfg)?.with_phi(move |p| e[0] * p[1] + e[1] * p[2]).with_vector_potential(move |p| {
        let r = [p[1], p[2], p[3]];
        [-0.5 * (b[1] * r[2] - b[2] * r[1]), -0.5 * (b[2] * r[0] - b[0] * r[2]), -0.5 * (b[0] * r[1] - b[1] * r[0])]
    });
    let q = TestParticle::new(1.5, -0.8, [0.0, 0.1, 0.2, -0.1], [0.3, 0.1, -0.2])?;
    let f = force_decomposition(&wf, &q, &q.x)?;
    let v = q.v;
    let vxb = [v[1] * b[2] - v[2] * b[1], v[2] * b[0] - v[0] * b[2], v[0] * b[1] - v[1] * b[0]];
    let scale = q.e * wf.rho * wf.mu_e / q.m;
    Ok((0..3)
        .map(|i| {
            let expect = scale * (e[i] + vxb[i]);
            (f.lorentz[i] - expect).abs() / expect.abs()
        })
        .fold(0.0, f64::max))
}

/// Relative radius error and relative speed drift over one period.
pub fn cyclotron_errors(wf: &WeakFieldConfig, p: &TestParticle, b: f64, steps: usize) -> std::result::Result<(f64, f64, Vec<cqmix::weakfield::TrajectorySample>), cqmix::Error> {
    let period = cyclotron_period(wf, p, b);
    let path = trajectory(wf, p, period / steps as f64, steps)?;
    let v0 = p.speed();
    let radius = v0 * p.m / (p.e * wf.rho * wf.mu_e * b).abs();
    // The guiding centre lies one radius from the start along v × B / |v × B| times sign(e).
    let sign = (p.e * b).signum();
    let centre = [p.x[1] + sign * radius * p.v[1] / v0, p.x[2] - sign * radius * p.v[0] / v0];
    let (mut rad, mut drift) = (0.0f64, 0.0f64);
    for s in &path {
        let r = ((s.x[0] - centre[0]).powi(2) + (s.x[1] - centre[1]).powi(2)).sqrt();
        rad = rad.max((r - radius).abs() / radius);
        let speed = (s.v[0] * s.v[0] + s.v[1] * s.v[1] + s.v[2] * s.v[2]).sqrt();
        drift = drift.max((speed - v0).abs() / v0);
    }
    Ok((rad, drift, path))
}

pub fn cyclotron_setup(cfg: &ScenarioConfig) -> std::result::Result<(WeakFieldConfig, TestParticle, f64), cqmix::Error> {
    let b = 1.0;
    let wf = weak_base(cfg)?.with_vector_potential(move |p| [0.5 * b * p[2], -0.5 * b * p[1], 0.0]);
    let p = TestParticle::new(1.0, 1.0, [0.0; 4], [0.1, 0.0, 0.0])?;
    Ok((wf, p, b))
}

fn weakfield(cfg: &ScenarioConfig) -> SuiteReport {
    let tol = cfg.weakfield.tolerance;
    let mut r = SuiteReport::new("weakfield");
    match newton(cfg) {
        Ok(x) => r.check("newtonian-limit", "acceleration of a neutral particle is -G", x, tol),
        Err(e) => failed(&mut r, "newtonian-limit", "Newtonian limit", e),
    }
    match lorentz(cfg) {
        Ok(x) => r.check("lorentz-limit", "acceleration of a charge is e(E + v x B)/m", x, tol),
        Err(e) => failed(&mut r, "lorentz-limit", "Lorentz limit", e),
    }
    match cyclotron_setup(cfg).and_then(|(wf, p, b)| cyclotron_errors(&wf, &p, b, cfg.weakfield.steps)) {
        Ok((rad, drift, _)) => {
            r.check("cyclotron-radius", "orbit radius m v c/(e B) over one period", rad, tol);
            r.check("speed-drift", "a magnetic field does no work", drift, 1e-3);
        }
        Err(e) => failed(&mut r, "cyclotron", "cyclotron orbit", e),
    }
    r
}
