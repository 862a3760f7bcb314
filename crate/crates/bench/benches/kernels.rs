use cqmix::analytic::{corrected_path_integral, AnalyticField, Contour};
use cqmix::dirac::{dirac_set_from_pauli, PlaneWave};
use cqmix::fd::{FiniteDifferenceScheme, Point};
use cqmix::weakfield::geodesic_step;
use cqmix::{MixtureTensor, MultiVector};
use cqmix_bench::{cyclotron, multivectors};
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn product(c: &mut Criterion) {
    let eta = MixtureTensor::natural();
    let xs = multivectors(64, 1);
    c.bench_function("mixture_product_64", |b| {
        b.iter(|| {
            let mut acc = MultiVector::basis(0);
            for x in &xs {
                acc = eta.mul(&acc, black_box(x));
            }
            acc
        })
    });
}

fn path(c: &mut Criterion) {
    let eta = MixtureTensor::anticommuting_plane();
    let v = |x: f64, y: f64| MultiVector::from_real([0.0, x, y, 0.0]);
    let contour = Contour::polyline(&[v(0.0, -1.0), v(1.0, -1.0), v(1.0, 1.0), v(0.0, 1.0)]).unwrap();
    let f = AnalyticField::new(|p: &Point| MultiVector::from_real([0.0, p[1].powi(3) / 3.0, p[2].powi(3) / 3.0, 0.0]));
    c.bench_function("corrected_path_integral", |b| b.iter(|| corrected_path_integral(&f, &contour, &eta).unwrap()));
}

fn dirac(c: &mut Criterion) {
    let d = dirac_set_from_pauli();
    c.bench_function("dirac_on_shell_kernel", |b| b.iter(|| PlaneWave::on_shell(&d, black_box([0.3, -0.2, 0.5]), 0.8).unwrap()));
}

fn geodesic(c: &mut Criterion) {
    let (cfg, p) = cyclotron();
    c.bench_function("geodesic_step", |b| b.iter(|| geodesic_step(&cfg, black_box(&p), 1e-3).unwrap()));
}

fn maxwell(c: &mut Criterion) {
    let h = cqmix::electromag::FourPotential::plane_wave(0.7, [0.2, -0.4, 0.1], [1.0, 0.5, -0.3], 0.2);
    let fd = FiniteDifferenceScheme::new(1e-2);
    c.bench_function("maxwell_residuals", |b| {
        b.iter(|| cqmix::electromag::maxwell_residuals(&h, black_box(&[0.1, 0.2, 0.3, 0.4]), &fd).unwrap())
    });
}

criterion_group!(kernels, product, path, dirac, geodesic, maxwell);
criterion_main!(kernels);
