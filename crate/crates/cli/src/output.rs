//! JSON report schemas and record builders. All reports are deterministic
//! for a fixed command line and seed (no timestamps, fixed field order).

use num_complex::Complex64;
use serde::Serialize;

use polytrace::algebra::LaurentSystem;
use polytrace::certify::{Certificate, CertifiedRegion};
use polytrace::nag::WitnessSet;
use polytrace::polyhedral::MixedCell;

#[derive(Debug)]
pub struct CliError {
    message: String,
}

impl CliError {
    pub fn new(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&serde_json::json!({
            "schema": "polytrace/error/v1",
            "error": self.message,
        }))
        .unwrap()
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

pub fn print_json<T: Serialize>(value: &T) {
    use std::io::Write;
    let text = serde_json::to_string_pretty(value).unwrap();
    let mut out = std::io::stdout().lock();
    // A closed pipe downstream is not our error.
    let _ = writeln!(out, "{text}");
    let _ = out.flush();
}

fn pair(c: &Complex64) -> [f64; 2] {
    [c.re, c.im]
}

fn pairs(v: &[Complex64]) -> Vec<[f64; 2]> {
    v.iter().map(pair).collect()
}

#[derive(Serialize)]
pub struct SolutionRecord {
    pub coordinates: Vec<[f64; 2]>,
    pub residual: f64,
    pub status: &'static str,
    pub cluster_size: usize,
}

pub fn solution_records(system: &LaurentSystem, sols: &[Vec<Complex64>]) -> Vec<SolutionRecord> {
    sols.iter()
        .map(|s| SolutionRecord {
            coordinates: pairs(s),
            residual: system.scaled_residual(s),
            status: "success",
            cluster_size: 1,
        })
        .collect()
}

#[derive(Serialize)]
pub struct SolveReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub method: &'static str,
    pub seed: u64,
    pub path_count: usize,
    pub count: usize,
    pub stalled: bool,
    pub solutions: Vec<SolutionRecord>,
}

#[derive(Serialize)]
pub struct CellRecord {
    pub normal: Vec<i64>,
    pub r: i64,
    pub beta: Vec<i64>,
    pub edges: Vec<[usize; 2]>,
    pub volume: u64,
}

pub fn cell_record(c: &MixedCell) -> CellRecord {
    CellRecord {
        normal: c.alpha.clone(),
        r: c.r,
        beta: c.beta.clone(),
        edges: c.edges.iter().map(|&(a, b)| [a, b]).collect(),
        volume: c.volume,
    }
}

#[derive(Serialize)]
pub struct MixedVolReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub seed: u64,
    pub mixed_volume: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cells: Option<Vec<CellRecord>>,
}

#[derive(Serialize)]
pub struct BoxRecord {
    pub re: [f64; 2],
    pub im: [f64; 2],
}

#[derive(Serialize)]
pub struct CertificateRecord {
    pub method: &'static str,
    pub point: Vec<[f64; 2]>,
    pub certified: bool,
    pub unique: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub real: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub boxes: Option<Vec<BoxRecord>>,
    pub distinct_from: Vec<usize>,
}

pub fn certificate_record(c: &Certificate) -> CertificateRecord {
    let (radius, boxes) = match &c.region {
        CertifiedRegion::Ball { radius } => (Some(*radius), None),
        CertifiedRegion::Box(b) => (
            None,
            Some(
                b.iter()
                    .map(|ci| BoxRecord {
                        re: [ci.re.lo, ci.re.hi],
                        im: [ci.im.lo, ci.im.hi],
                    })
                    .collect(),
            ),
        ),
        CertifiedRegion::None => (None, None),
    };
    CertificateRecord {
        method: match c.method {
            polytrace::certify::CertificateMethod::Alpha => "alpha",
            polytrace::certify::CertificateMethod::Krawczyk => "krawczyk",
        },
        point: pairs(&c.point),
        certified: c.certified,
        unique: c.unique,
        real: c.real,
        radius,
        boxes,
        distinct_from: c.distinct_from.clone(),
    }
}

#[derive(Serialize)]
pub struct CertifyReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub method: &'static str,
    pub seed: u64,
    pub certified_count: usize,
    pub certificates: Vec<CertificateRecord>,
}

#[derive(Serialize)]
pub struct SliceFormRecord {
    pub constant: [f64; 2],
    pub coefficients: Vec<[f64; 2]>,
}

#[derive(Serialize)]
pub struct ComponentRecord {
    pub dimension: usize,
    pub degree: usize,
    pub slice: Vec<SliceFormRecord>,
    pub points: Vec<Vec<[f64; 2]>>,
}

pub fn component_record(w: &WitnessSet) -> ComponentRecord {
    use polytrace::algebra::Exponent;
    let n = w.slice.nvars();
    let slice = w
        .slice
        .forms()
        .iter()
        .map(|f| SliceFormRecord {
            constant: pair(&f.coefficient(&Exponent::zero(n))),
            coefficients: (0..n)
                .map(|v| pair(&f.coefficient(&Exponent::unit(n, v))))
                .collect(),
        })
        .collect();
    ComponentRecord {
        dimension: w.dim(),
        degree: w.degree(),
        slice,
        points: w.points.iter().map(|p| pairs(p)).collect(),
    }
}

#[derive(Serialize)]
pub struct DecomposeReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub seed: u64,
    pub inconclusive: bool,
    pub components: Vec<ComponentRecord>,
}

#[derive(Serialize)]
pub struct MemberEvidence {
    pub component: usize,
    pub dimension: usize,
    pub degree: usize,
}

#[derive(Serialize)]
pub struct MemberReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub seed: u64,
    pub member: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evidence: Option<MemberEvidence>,
    pub residual: f64,
}

/// Accepts either a bare list of coordinate-pair lists or a solve report.
pub fn parse_solution_json(text: &str) -> Result<Vec<Vec<Complex64>>, CliError> {
    #[derive(serde::Deserialize)]
    struct Wrapped {
        solutions: Vec<WrappedRecord>,
    }
    #[derive(serde::Deserialize)]
    struct WrappedRecord {
        coordinates: Vec<[f64; 2]>,
    }
    if let Ok(raw) = serde_json::from_str::<Vec<Vec<[f64; 2]>>>(text) {
        return Ok(raw
            .into_iter()
            .map(|s| s.into_iter().map(|p| Complex64::new(p[0], p[1])).collect())
            .collect());
    }
    let wrapped: Wrapped = serde_json::from_str(text)
        .map_err(|e| CliError::new(format!("solutions must be [[re,im],...] lists or a solve report: {e}")))?;
    Ok(wrapped
        .solutions
        .into_iter()
        .map(|r| {
            r.coordinates
                .into_iter()
                .map(|p| Complex64::new(p[0], p[1]))
                .collect()
        })
        .collect())
}
