use cqmix::algebra::{MetricPair, MirrorTensor, MixtureTensor};
use cqmix::fd::{Domain, FiniteDifferenceScheme, Point};
use cqmix::geometry::*;
use cqmix::linalg::{self, Tensor3, C64};
use cqmix::sampling::Sampler;

fn domain() -> Domain {
    Domain::new([-1.0; 4], [1.0; 4])
}

fn random_frame(seed: u64) -> (PolynomialMatrix, FrameField) {
    let mut s = Sampler::new(seed);
    let p = PolynomialMatrix::near_identity(&mut s, 2, 0.15);
    let q = p.clone();
    (p, FrameField::new(move |z| q.eval(z), domain()))
}

fn trig_frame() -> FrameField {
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
        domain(),
    )
}

fn lattice() -> Vec<Point> {
    domain().interior_lattice(2, 0.4)
}

#[test]
fn matched_frame_geometry_is_compatible_to_second_order() {
    let frame = trig_frame();
    let base = MixtureTensor::natural();
    let coarse = frame_compatibility(&frame, &frame, &base, &lattice(), &FiniteDifferenceScheme::new(2e-3), 1e-4);
    let fine = frame_compatibility(&frame, &frame, &base, &lattice(), &FiniteDifferenceScheme::new(1e-3), 1e-4);
    assert!(coarse.all_pass(), "{:?}", coarse.checks);
    for id in ["metric-compatibility", "mixture-compatibility"] {
        let ratio = coarse.get(id).unwrap().residual / fine.get(id).unwrap().residual;
        assert!((3.2..4.8).contains(&ratio), "{id} ratio {ratio}");
    }
}

#[test]
fn mismatched_connection_is_detected() {
    let frame = trig_frame();
    let other = frame.distorted(1, 0.3);
    let base = MixtureTensor::natural();
    let fd = FiniteDifferenceScheme::new(1e-3);
    let good = frame_compatibility(&frame, &frame, &base, &lattice(), &fd, 1e-4);
    let bad = frame_compatibility(&frame, &other, &base, &lattice(), &fd, 1e-4);
    for id in ["metric-compatibility", "mixture-compatibility"] {
        let g = good.get(id).unwrap().residual;
        let b = bad.get(id).unwrap().residual;
        assert!(b >= 10.0 * g, "{id}: {b} vs {g}");
    }
}

#[test]
fn pure_gauge_connection_is_flat() {
    let frame = trig_frame();
    let z = [0.1, 0.2, -0.3, 0.15];
    let r_at = |h: f64| {
        let fd = FiniteDifferenceScheme::new(h);
        let gamma = |p: &Point| connection_from_frame(&frame, p, &fd).unwrap();
        let t = curvature(&gamma, &z, &fd, Some(&MetricPair::minkowski())).unwrap();
        assert_eq!(symmetric_part_defect(&t.r), 0.0);
        linalg::max_abs_t4(&t.r)
    };
    let (a, b) = (r_at(4e-3), r_at(2e-3));
    assert!(a < 1e-4, "{a}");
    let ratio = a / b;
    assert!((3.2..4.8).contains(&ratio), "ratio {ratio}");
}

#[test]
fn transported_constant_vector_is_parallel() {
    let (_, frame) = random_frame(12);
    let fd = FiniteDifferenceScheme::new(1e-3);
    let c = [C64::new(0.3, 0.1), C64::new(-0.5, 0.0), C64::new(0.2, 0.4), C64::new(1.0, -0.2)];
    let f = |p: &Point| {
        let inv = frame.at(p).unwrap().1;
        to_frame(&c, &inv)
    };
    let gamma = |p: &Point| connection_from_frame(&frame, p, &fd).unwrap();
    let d = covariant_derivative(&f, &gamma, &[0.2, -0.1, 0.1, 0.3], Variance::Vector, &fd);
    assert!(linalg::max_abs_mat(&d) < 1e-5, "{}", linalg::max_abs_mat(&d));
}

#[test]
fn commutation_coefficients_match_basis_brackets() {
    // ∂_α e_β − ∂_β e_α over the frame has components Γ^δ_{βα} − Γ^δ_{αβ},
    // which is C^δ_{αβ} with C^δ_{βα} = 2Γ^δ_{[αβ]}.
    let frame = trig_frame();
    let fd = FiniteDifferenceScheme::new(1e-4);
    let z = [0.3, -0.2, 0.1, 0.25];
    let gamma = connection_from_frame(&frame, &z, &fd).unwrap();
    let split = commutation_coefficients(&gamma, &MetricPair::minkowski());
    let inv = frame.at(&z).unwrap().1;
    let rows = |p: &Point| frame.raw(p);
    let grad = fd.gradient(&rows, &z);
    for a in 0..4 {
        for b in 0..4 {
            let mut v = [C64::new(0.0, 0.0); 4];
            for p in 0..4 {
                v[p] = grad[a][b][p] - grad[b][a][p];
            }
            let bracket = to_frame(&v, &inv);
            for d in 0..4 {
                assert!((bracket[d] - split.c[d][a][b]).norm() < 1e-9);
            }
        }
    }
}

#[test]
fn metric_part_of_frame_connection_is_christoffel() {
    let frame = trig_frame();
    let fd = FiniteDifferenceScheme::new(1e-3);
    let z = [0.1, 0.3, -0.2, 0.2];
    let base = MixtureTensor::natural();
    let g0 = MetricPair::minkowski().lower;
    let metric = |p: &Point| frame.metric(&g0, p);
    let pair = MetricPair::from_lower(metric(&z)).unwrap();
    let gamma = connection_from_frame(&frame, &z, &fd).unwrap();
    let split = commutation_coefficients(&gamma, &pair);
    let christoffel = christoffel_from_metric(&metric, &z, &fd).unwrap();
    assert!(linalg::max_abs_diff_t3(&split.metric_part, &christoffel) < 1e-5);
    let _ = base;
}

#[test]
fn second_order_relation_holds_for_pure_gauge_geometry() {
    let frame = trig_frame();
    let eta = MixtureTensor::natural();
    let mirror = MirrorTensor::natural();
    let z = [0.1, -0.2, 0.2, 0.1];
    let f = |p: &Point| {
        [
            C64::new(p[0] * p[1] + 0.3, 0.0),
            C64::new(p[2] * p[2], p[3]),
            C64::new((p[1]).sin(), 0.0),
            C64::new(0.2 * p[0] * p[3], 0.1),
        ]
    };
    let res = |h: f64, zero_r: bool| {
        let fd = FiniteDifferenceScheme::new(h);
        let gamma = |p: &Point| connection_from_frame(&frame, p, &fd).unwrap();
        let mut curv = curvature(&gamma, &z, &fd, None).unwrap();
        if zero_r {
            curv.r = linalg::zero_tensor4();
        }
        let out = second_order_residual(&f, &gamma, &curv, &eta, &mirror, &z, &fd);
        raw_norm(&out.raw)
    };
    let (a, b) = (res(4e-3, false), res(2e-3, false));
    assert!(a < 1e-3, "{a}");
    assert!((3.0..5.0).contains(&(a / b)), "ratio {}", a / b);
    // A curved connection with its curvature withheld leaves a visible residual.
    let curved = |p: &Point| -> Tensor3 {
        let mut t = linalg::zero_tensor3();
        t[1][2][0] = C64::new(p[3], 0.0);
        t[0][0][3] = C64::new(p[1] * p[1], 0.0);
        t
    };
    let fd = FiniteDifferenceScheme::new(2e-3);
    let curv = curvature(&curved, &z, &fd, None).unwrap();
    let with_r = second_order_residual(&f, &curved, &curv, &eta, &mirror, &z, &fd);
    let mut zeroed = curv.clone();
    zeroed.r = linalg::zero_tensor4();
    let without_r = second_order_residual(&f, &curved, &zeroed, &eta, &mirror, &z, &fd);
    assert!(raw_norm(&with_r.raw) < 1e-4);
    assert!(raw_norm(&without_r.raw) > 1e-2);
}

fn raw_norm(t: &Tensor3) -> f64 {
    linalg::max_abs_t3(t)
}
