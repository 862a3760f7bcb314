//! Plain-text tables for mixture tensors.
//!
//! ```text
//! dim 4
//! lower
//! 0 0 0 1 0
//! 3 1 2 0 1
//! upper
//! ...
//! mirror
//! 0 0 1 0
//! ```
//!
//! Entry lines are `gamma alpha beta re im` (mirror rows are `row col re im`),
//! zero entries are omitted, and floats are written in shortest round-trip
//! form so that parsing reproduces every bit.

use super::{MirrorTensor, MixtureTensor};
use crate::error::{Error, Result};
use crate::linalg::{self, Mat4, Tensor3, C64, ZERO};
use std::fmt::Write;

pub(crate) fn write_tensor3(out: &mut String, name: &str, t: &Tensor3) {
    writeln!(out, "{name}").unwrap();
    for (g, plane) in t.iter().enumerate() {
        for (a, row) in plane.iter().enumerate() {
            for (b, z) in row.iter().enumerate() {
                if *z != ZERO {
                    writeln!(out, "{g} {a} {b} {} {}", z.re, z.im).unwrap();
                }
            }
        }
    }
}

pub(crate) fn write_mat(out: &mut String, name: &str, m: &Mat4) {
    writeln!(out, "{name}").unwrap();
    for (i, row) in m.iter().enumerate() {
        for (j, z) in row.iter().enumerate() {
            if *z != ZERO {
                writeln!(out, "{i} {j} {} {}", z.re, z.im).unwrap();
            }
        }
    }
}

/// A parsed section: its name and the numeric entry lines.
pub(crate) struct Section {
    pub name: String,
    pub line: usize,
    pub entries: Vec<(usize, Vec<usize>, C64)>,
}

/// Splits a table into `key value` headers and sections of entry lines.
pub(crate) fn parse_sections(text: &str) -> Result<(Vec<(usize, String, String)>, Vec<Section>)> {
    let mut headers = Vec::new();
    let mut sections: Vec<Section> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let numeric = fields[0].chars().all(|c| c.is_ascii_digit());
        if !numeric {
            if fields.len() == 1 {
                sections.push(Section {
                    name: fields[0].to_string(),
                    line: line_no,
                    entries: Vec::new(),
                });
            } else if fields.len() == 2 && sections.is_empty() {
                headers.push((line_no, fields[0].to_string(), fields[1].to_string()));
            } else {
                return Err(parse_error(line_no, format!("unexpected line `{line}`")));
            }
            continue;
        }
        let Some(section) = sections.last_mut() else {
            return Err(parse_error(line_no, "entry before any section header".into()));
        };
        if fields.len() < 3 {
            return Err(parse_error(line_no, "entry needs indices and a complex value".into()));
        }
        let k = fields.len() - 2;
        let mut idx = Vec::with_capacity(k);
        for f in &fields[..k] {
            let v: usize = f
                .parse()
                .map_err(|_| parse_error(line_no, format!("bad index `{f}`")))?;
            if v > 3 {
                return Err(parse_error(line_no, format!("index {v} out of range 0..=3")));
            }
            idx.push(v);
        }
        let re: f64 = fields[k]
            .parse()
            .map_err(|_| parse_error(line_no, format!("bad real part `{}`", fields[k])))?;
        let im: f64 = fields[k + 1]
            .parse()
            .map_err(|_| parse_error(line_no, format!("bad imaginary part `{}`", fields[k + 1])))?;
        if !re.is_finite() || !im.is_finite() {
            return Err(parse_error(line_no, "non-finite entry".into()));
        }
        section.entries.push((line_no, idx, C64::new(re, im)));
    }
    Ok((headers, sections))
}

pub(crate) fn parse_error(line: usize, message: String) -> Error {
    Error::Parse { line, message }
}

pub(crate) fn fill_tensor3(s: &Section) -> Result<Tensor3> {
    let mut t = linalg::zero_tensor3();
    for (line, idx, z) in &s.entries {
        if idx.len() != 3 {
            return Err(parse_error(*line, format!("section `{}` needs three indices", s.name)));
        }
        t[idx[0]][idx[1]][idx[2]] = *z;
    }
    Ok(t)
}

pub(crate) fn fill_mat(s: &Section) -> Result<Mat4> {
    let mut m = linalg::zero_mat();
    for (line, idx, z) in &s.entries {
        if idx.len() != 2 {
            return Err(parse_error(*line, format!("section `{}` needs two indices", s.name)));
        }
        m[idx[0]][idx[1]] = *z;
    }
    Ok(m)
}

impl MixtureTensor {
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        writeln!(out, "dim {}", self.dim).unwrap();
        write_tensor3(&mut out, "lower", &self.lower);
        write_tensor3(&mut out, "upper", &self.upper);
        write_mat(&mut out, "mirror", &self.mirror.m);
        out
    }

    /// Parses a table. When the `upper` section is absent the dual table is
    /// rebuilt from `lower`; a missing `mirror` defaults to the natural one.
    pub fn from_table(text: &str) -> Result<Self> {
        let (headers, sections) = parse_sections(text)?;
        let mut dim = 4;
        for (line, key, value) in headers {
            match key.as_str() {
                "dim" => {
                    dim = value
                        .parse()
                        .ok()
                        .filter(|d| (1..=4).contains(d))
                        .ok_or_else(|| parse_error(line, format!("bad dimension `{value}`")))?;
                }
                _ => return Err(parse_error(line, format!("unknown header `{key}`"))),
            }
        }
        let mut lower = None;
        let mut upper = None;
        let mut mirror = None;
        for s in &sections {
            match s.name.as_str() {
                "lower" => lower = Some(fill_tensor3(s)?),
                "upper" => upper = Some(fill_tensor3(s)?),
                "mirror" => mirror = Some(MirrorTensor { m: fill_mat(s)? }),
                other => return Err(parse_error(s.line, format!("unknown section `{other}`"))),
            }
        }
        let lower = lower.ok_or_else(|| parse_error(0, "missing `lower` section".into()))?;
        let mirror = mirror.unwrap_or_default();
        match upper {
            Some(u) => Ok(MixtureTensor::from_parts(lower, u, dim, mirror)),
            None => MixtureTensor::from_lower(lower, dim, mirror),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn natural_round_trips_exactly() {
        let eta = MixtureTensor::natural();
        let text = eta.to_table();
        assert!(text.contains("3 1 2 0 1\n"));
        assert_eq!(MixtureTensor::from_table(&text).unwrap(), eta);
    }

    #[test]
    fn awkward_floats_round_trip() {
        let eta = MixtureTensor::natural().perturbed(2, 1, 3, C64::new(0.1 + 0.2, -1e-300));
        assert_eq!(MixtureTensor::from_table(&eta.to_table()).unwrap(), eta);
    }

    #[test]
    fn missing_upper_is_rebuilt() {
        let text = MixtureTensor::complex_plane().to_table();
        let trimmed: String = {
            let start = text.find("upper").unwrap();
            let end = text.find("mirror").unwrap();
            format!("{}{}", &text[..start], &text[end..])
        };
        assert_eq!(MixtureTensor::from_table(&trimmed).unwrap(), MixtureTensor::complex_plane());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = MixtureTensor::from_table("dim 4\nlower\n0 0 0 1 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = MixtureTensor::from_table("lower\n0 0 9 1 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }
}
