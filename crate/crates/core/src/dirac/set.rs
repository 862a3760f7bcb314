use crate::algebra::table::{fill_mat, fill_tensor3, parse_error, parse_sections, write_mat, write_tensor3};
use crate::error::Result;
use crate::linalg::{self, kron2, Mat4, C64, ONE, ZERO};
use crate::report::SuiteReport;
use serde::{Deserialize, Serialize};

/// `σ₀..σ₃`.
pub fn pauli(i: usize) -> [[C64; 2]; 2] {
    let i_ = C64::i();
    match i {
        0 => [[ONE, ZERO], [ZERO, ONE]],
        1 => [[ZERO, ONE], [ONE, ZERO]],
        2 => [[ZERO, -i_], [i_, ZERO]],
        3 => [[ONE, ZERO], [ZERO, -ONE]],
        _ => panic!("Pauli index {i} out of range 0..=3"),
    }
}

/// Matrices indexed `[row γ][column α]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiracSet {
    pub eta: [Mat4; 4],
    pub h: Mat4,
    pub hhat: Mat4,
    /// `N/M`, the coupling per unit mass (`1/i` in natural units).
    pub n: C64,
}

/// `η⁰ = 1`, `η¹ = σ₁⊗σ₂`, `η² = σ₂⊗σ₀`, `η³ = σ₁⊗σ₁`, `H = σ₁⊗σ₃`,
/// `Ĥ = −H`.
pub fn dirac_set_from_pauli() -> DiracSet {
    let h = kron2(&pauli(1), &pauli(3));
    DiracSet {
        eta: [
            linalg::identity(),
            kron2(&pauli(1), &pauli(2)),
            kron2(&pauli(2), &pauli(0)),
            kron2(&pauli(1), &pauli(1)),
        ],
        h,
        hhat: linalg::mat_scale(&h, -ONE),
        n: C64::new(0.0, -1.0),
    }
}

fn mm(a: &Mat4, b: &Mat4) -> Mat4 {
    linalg::mat_mul(a, b)
}

fn dev(a: &Mat4, target: &Mat4) -> f64 {
    linalg::max_abs_diff_mat(a, target)
}

/// Maximum entry of `ab + s·ba` against `target`.
fn pair(a: &Mat4, b: &Mat4, s: f64, target: &Mat4) -> f64 {
    let ab = mm(a, b);
    let ba = mm(b, a);
    dev(&linalg::mat_add(&ab, &linalg::mat_scale(&ba, C64::new(s, 0.0))), target)
}

/// The algebraic conditions under which the adjoint derivative squares to the
/// Klein–Gordon operator. Each check reports the largest entry deviation.
pub fn verify_dirac_conditions(d: &DiracSet) -> SuiteReport {
    let one = linalg::identity();
    let zero = linalg::zero_mat();
    let mut r = SuiteReport::new("dirac");
    let tol = 1e-14;
    r.check("eta0-square", "η⁰η⁰ = 1", dev(&mm(&d.eta[0], &d.eta[0]), &one), tol);
    let sq = (1..4).map(|i| dev(&mm(&d.eta[i], &d.eta[i]), &one)).fold(0.0, f64::max);
    r.check("etai-square", "ηⁱηⁱ = 1", sq, tol);
    r.check("h-square", "HH = 1", dev(&mm(&d.h, &d.h), &one), tol);
    r.check("h-hhat", "HĤ = −1", dev(&mm(&d.h, &d.hhat), &linalg::mat_scale(&one, -ONE)), tol);
    let c0 = (1..4).map(|i| pair(&d.eta[0], &d.eta[i], -1.0, &zero)).fold(0.0, f64::max);
    r.check("eta0-commutes", "[η⁰, ηⁱ] = 0", c0, tol);
    r.check("h-commutes-eta0", "[H, η⁰] = 0", pair(&d.h, &d.eta[0], -1.0, &zero), tol);
    let mut anti = 0.0f64;
    for i in 1..4 {
        for j in i + 1..4 {
            anti = anti.max(pair(&d.eta[i], &d.eta[j], 1.0, &zero));
        }
    }
    r.check("etai-anticommute", "{ηⁱ, ηʲ} = 0 for i ≠ j", anti, tol);
    let ah = (1..4).map(|i| pair(&d.eta[i], &d.h, 1.0, &zero)).fold(0.0, f64::max);
    r.check("h-anticommutes", "{ηⁱ, H} = 0", ah, tol);
    let e0 = dev(&linalg::mat_add(&mm(&d.hhat, &d.eta[0]), &mm(&d.eta[0], &d.h)), &zero);
    r.check("hhat-eta0", "Ĥη⁰ + η⁰H = 0", e0, tol);
    let ei = (1..4)
        .map(|i| dev(&linalg::mat_sub(&mm(&d.hhat, &d.eta[i]), &mm(&d.eta[i], &d.h)), &zero))
        .fold(0.0, f64::max);
    r.check("hhat-etai", "Ĥηⁱ − ηⁱH = 0", ei, tol);
    r
}

impl DiracSet {
    /// Plain-text table: section `eta` holds `β γ α` entries of `η^{γβ}_α`,
    /// sections `h` and `hhat` hold `γ α` entries, and `coupling` holds the
    /// single entry `0 0` for `n`.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        write_tensor3(&mut out, "eta", &self.eta);
        write_mat(&mut out, "h", &self.h);
        write_mat(&mut out, "hhat", &self.hhat);
        let mut c = linalg::zero_mat();
        c[0][0] = self.n;
        write_mat(&mut out, "coupling", &c);
        out
    }

    pub fn from_table(text: &str) -> Result<Self> {
        let (headers, sections) = parse_sections(text)?;
        if let Some((line, key, _)) = headers.first() {
            return Err(parse_error(*line, format!("unknown header `{key}`")));
        }
        let (mut eta, mut h, mut hhat, mut n) = (None, None, None, ZERO);
        for s in &sections {
            match s.name.as_str() {
                "eta" => eta = Some(fill_tensor3(s)?),
                "h" => h = Some(fill_mat(s)?),
                "hhat" => hhat = Some(fill_mat(s)?),
                "coupling" => {
                    let m = fill_mat(s)?;
                    if let Some((line, _, _)) = s.entries.iter().find(|e| e.1 != [0, 0]) {
                        return Err(parse_error(*line, "coupling has only the entry 0 0".into()));
                    }
                    n = m[0][0];
                }
                other => return Err(parse_error(s.line, format!("unknown section `{other}`"))),
            }
        }
        let missing = |name: &str| parse_error(0, format!("missing `{name}` section"));
        Ok(DiracSet {
            eta: eta.ok_or_else(|| missing("eta"))?,
            h: h.ok_or_else(|| missing("h"))?,
            hhat: hhat.ok_or_else(|| missing("hhat"))?,
            n,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_set_passes_exactly() {
        let r = verify_dirac_conditions(&dirac_set_from_pauli());
        assert!(r.all_pass());
        assert_eq!(r.max_residual(), 0.0);
    }

    #[test]
    fn kronecker_entry() {
        let d = dirac_set_from_pauli();
        assert_eq!(d.eta[2][0][2], C64::new(0.0, -1.0));
        assert_eq!(mm(&d.h, &d.h), linalg::identity());
    }

    #[test]
    fn identity_in_place_of_eta1_breaks_anticommutation() {
        let mut d = dirac_set_from_pauli();
        d.eta[1] = linalg::identity();
        let r = verify_dirac_conditions(&d);
        assert_eq!(r.get("etai-anticommute").unwrap().residual, 2.0);
        assert!(!r.all_pass());
    }

    #[test]
    fn sign_flip_of_h_pair_still_passes() {
        let mut d = dirac_set_from_pauli();
        std::mem::swap(&mut d.h, &mut d.hhat);
        assert!(verify_dirac_conditions(&d).all_pass());
    }

    #[test]
    fn table_round_trip() {
        let d = dirac_set_from_pauli();
        let text = d.to_table();
        assert_eq!(DiracSet::from_table(&text).unwrap(), d);
        assert!(DiracSet::from_table("eta\n0 0 0 1 0\n").is_err());
        assert!(DiracSet::from_table(&text.replace("coupling\n0 0", "coupling\n1 0")).is_err());
    }
}
