use crate::config::ScenarioConfig;
use crate::error::{CliError, Result};
use crate::suites::{cyclotron_setup, wave_potential, MAXWELL_GROUPS};
use cqmix::analytic::{corrected_path_integral, path_integral, residue_pair, AnalyticField, Contour};
use cqmix::electromag::maxwell_residuals;
use cqmix::fd::{FiniteDifferenceScheme, Point};
use cqmix::weakfield::{cyclotron_period, trajectory, TestParticle, TrajectorySample, WeakFieldConfig};
use cqmix::{MixtureTensor, MultiVector};
use std::io::Write;

fn writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out)
}

/// Writes the named demo's CSV table to `out`.
pub fn demo<W: Write>(name: &str, cfg: &ScenarioConfig, out: W) -> Result<()> {
    let mut w = writer(out);
    match name {
        "path-integral" => path_table(&mut w)?,
        "residue" => residue_table(cfg, &mut w)?,
        "cyclotron" => {
            let (wf, p, dt, steps) = cyclotron_scenario(cfg)?;
            trajectory_table(&mut w, &trajectory(&wf, &p, dt, steps)?)?
        }
        "newton" => {
            let (wf, p, dt, steps) = newton_scenario(cfg)?;
            trajectory_table(&mut w, &trajectory(&wf, &p, dt, steps)?)?
        }
        "maxwell-convergence" => maxwell_table(cfg, &mut w)?,
        other => return Err(CliError::UnknownDemo(other.to_string())),
    }
    w.flush()?;
    Ok(())
}

fn path_table<W: Write>(w: &mut csv::Writer<W>) -> Result<()> {
    let eta = MixtureTensor::anticommuting_plane();
    let r2 = AnalyticField::new(|p: &Point| MultiVector::from_real([p[1] * p[1] + p[2] * p[2], 0.0, 0.0, 0.0]));
    let cubic = AnalyticField::new(|p: &Point| MultiVector::from_real([0.0, p[1].powi(3) / 3.0, p[2].powi(3) / 3.0, 0.0]));
    let v = |x: f64, y: f64| MultiVector::from_real([0.0, x, y, 0.0]);
    w.write_record(["c", "naive_e2", "expected_e2", "corrected_e2"])?;
    for k in 1..=12 {
        let c = 0.25 * k as f64;
        let contour = Contour::polyline(&[v(0.0, -1.0), v(c, -1.0), v(c, 1.0), v(0.0, 1.0)])?;
        let naive = path_integral(&r2, &contour, &eta)?.value;
        let fixed = corrected_path_integral(&cubic, &contour, &eta)?.value;
        w.serialize((c, naive[2].re, 2.0 * (c * c + 1.0 / 3.0), fixed[2].re))?;
    }
    Ok(())
}

fn residue_table<W: Write>(cfg: &ScenarioConfig, w: &mut csv::Writer<W>) -> Result<()> {
    let radius = cfg.analytic.radii.first().copied().unwrap_or(1.0);
    let p = residue_pair(&Contour::circle(radius)?)?;
    w.write_record(["integrand", "re", "im"])?;
    w.serialize(("dw/w", p.i_z.re, p.i_z.im))?;
    w.serialize(("dw*/w*", p.i_conj.re, p.i_conj.im))?;
    Ok(())
}

fn custom(cfg: &ScenarioConfig) -> Result<Option<(WeakFieldConfig, TestParticle)>> {
    match &cfg.weakfield.particle {
        Some(p) => Ok(Some((cfg.weakfield.build()?, p.build()?))),
        None => Ok(None),
    }
}

/// Field and particle for the cyclotron demo, one period at the configured step count.
pub fn cyclotron_scenario(cfg: &ScenarioConfig) -> Result<(WeakFieldConfig, TestParticle, f64, usize)> {
    let steps = cfg.weakfield.steps;
    let (wf, p, b) = match custom(cfg)? {
        Some((wf, p)) => {
            let b = cfg.weakfield.b;
            (wf, p, (b[0] * b[0] + b[1] * b[1] + b[2] * b[2]).sqrt())
        }
        None => cyclotron_setup(cfg)?,
    };
    let dt = match cfg.weakfield.dt {
        Some(dt) => dt,
        None if b > 0.0 => cyclotron_period(&wf, &p, b) / steps as f64,
        None => {
            return Err(CliError::Config {
                file: "scenario".into(),
                location: "key `weakfield.b`".into(),
                message: "cyclotron demo needs a non-zero field or an explicit dt".into(),
            })
        }
    };
    Ok((wf, p, dt, steps))
}

/// Field and particle for the Newtonian demo.
pub fn newton_scenario(cfg: &ScenarioConfig) -> Result<(WeakFieldConfig, TestParticle, f64, usize)> {
    let dt = cfg.weakfield.dt.unwrap_or(0.05);
    let steps = cfg.weakfield.steps;
    match custom(cfg)? {
        Some((wf, p)) => Ok((wf, p, dt, steps)),
        None => {
            let w = &cfg.weakfield;
            let wf = WeakFieldConfig::new(w.mu_e)?
                .with_speed_of_light(w.c)?
                .with_guard(w.guard)
                .with_psi(|p| 1e-5 * p[3]);
            let p = TestParticle::new(1.0, 0.0, [0.0; 4], [0.02, 0.0, 0.01])?;
            Ok((wf, p, dt, steps))
        }
    }
}

fn trajectory_table<W: Write>(w: &mut csv::Writer<W>, path: &[TrajectorySample]) -> Result<()> {
    let mut header = vec!["t", "x", "y", "z", "vx", "vy", "vz"];
    header.extend(["grav_x", "grav_y", "grav_z", "lorentz_x", "lorentz_y", "lorentz_z"]);
    header.extend(["residual_x", "residual_y", "residual_z"]);
    w.write_record(&header)?;
    for s in path {
        let f = &s.forces;
        let mut row = vec![s.t];
        row.extend(s.x);
        row.extend(s.v);
        row.extend(f.grav);
        row.extend(f.lorentz);
        row.extend(f.residual);
        w.serialize(row)?;
    }
    Ok(())
}

fn maxwell_table<W: Write>(cfg: &ScenarioConfig, w: &mut csv::Writer<W>) -> Result<()> {
    let m = &cfg.maxwell;
    let h = wave_potential(m);
    let mut header = vec!["h"];
    header.extend(MAXWELL_GROUPS);
    w.write_record(&header)?;
    for k in 0..6 {
        let step = m.h * 0.5f64.powi(k);
        let g = maxwell_residuals(&h, &m.point, &FiniteDifferenceScheme::new(step))?.groups();
        w.serialize((step, g[0], g[1], g[2], g[3]))?;
    }
    Ok(())
}
