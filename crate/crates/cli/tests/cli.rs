use std::path::PathBuf;
use std::process::{Command, Output};

fn cqmix(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cqmix")).args(args).output().unwrap()
}

fn config(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "configs", name].iter().collect();
    p.to_string_lossy().into_owned()
}

#[test]
fn algebra_suite_passes_and_reports_json() {
    let out = cqmix(&["run", "algebra-identities"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["suite"], "algebra-identities");
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["reference"].is_string()));
}

#[test]
fn analytic_suite_carries_the_corrected_check() {
    let out = cqmix(&["run", "analytic-paths", "--config", &config("default.toml")]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"corrected-arc\""));
}

#[test]
fn unknown_suite_exits_with_two() {
    let out = cqmix(&["run", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown suite"));
}

#[test]
fn failing_check_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("strict.toml");
    std::fs::write(&path, "seed = 1\n[analytic]\ntolerance = 1e-30\n").unwrap();
    let out = cqmix(&["run", "analytic-paths", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn reports_are_byte_identical_for_a_seed() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for p in [&a, &b] {
        let out = cqmix(&["run", "dirac", "--seed", "9", "--out", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn shipped_configs_validate() {
    for name in ["default.toml", "cyclotron.toml", "newton.toml"] {
        let out = cqmix(&["validate", &config(name)]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn validate_rejects_bad_rho_and_fast_particles() {
    let dir = tempfile::tempdir().unwrap();
    let rho = dir.path().join("rho.toml");
    std::fs::write(&rho, "seed = 1\n[weakfield]\nmu_e = 1e-3\nrho = 5.0\n").unwrap();
    let out = cqmix(&["validate", rho.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("rho * mu_e"));

    let fast = dir.path().join("fast.toml");
    std::fs::write(&fast, "seed = 1\n[weakfield.particle]\nm = 1.0\ne = 0.0\nv = [1.0, 0.0, 0.0]\n").unwrap();
    assert_eq!(cqmix(&["validate", fast.to_str().unwrap()]).status.code(), Some(2));

    let typo = dir.path().join("typo.toml");
    std::fs::write(&typo, "seed = 1\n\n[maxwell]\nhh = 0.1\n").unwrap();
    let out = cqmix(&["validate", typo.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));
}

#[test]
fn residue_demo_writes_two_rows() {
    let out = cqmix(&["demo", "residue"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 3);
    let im: Vec<f64> = text.lines().skip(1).map(|l| l.rsplit(',').next().unwrap().parse().unwrap()).collect();
    assert!((im[0] - 2.0 * std::f64::consts::PI).abs() < 1e-8 && (im[1] + 2.0 * std::f64::consts::PI).abs() < 1e-8);
}

#[test]
fn configured_cyclotron_demo_closes_its_orbit() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("orbit.csv");
    let out = cqmix(&["demo", "cyclotron", "--config", &config("cyclotron.toml"), "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(!text.contains('\r'));
    let rows: Vec<Vec<f64>> = text.lines().skip(1).map(|l| l.split(',').map(|s| s.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 2001);
    let (a, b) = (&rows[0], rows.last().unwrap());
    assert!((a[1] - b[1]).abs() < 1e-6 && (a[2] - b[2]).abs() < 1e-6);
    // r = m v c/(e B) = 0.15 / (0.5 · 2).
    let max_x = rows.iter().map(|r| r[1]).fold(f64::MIN, f64::max);
    assert!((max_x - 2.0 * 0.15).abs() < 1e-3, "{max_x}");
}

#[test]
fn unknown_demo_exits_with_two() {
    assert_eq!(cqmix(&["demo", "nope"]).status.code(), Some(2));
}
