//! Output schemas. JSON output is versioned (`"schema": 1`) and fully
//! deterministic: struct field order is fixed and every float is rounded to
//! six significant digits before serialization.

use anyhow::{anyhow, Result};
use knead_core::algebra::{IntMatrix, IntPolynomial, RationalFunction};
use knead_core::entropy::EntropyReport;
use knead_core::homology::{DiagramCertificate, DiagramMatrices, TensorLiftReport};
use knead_core::kneading::TriangularKneading;
use knead_core::markov::TransitionMatrix;
use knead_core::pipeline::{SystemInvariants, TriangularAnalysis};
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

/// Round to six significant digits (the print precision contract).
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let exp = x.abs().log10().floor() as i32;
    let scale = 10f64.powi(5 - exp);
    (x * scale).round() / scale
}

pub fn fmt_sig(x: f64) -> String {
    format!("{}", round_sig(x))
}

pub fn poly_json(p: &IntPolynomial) -> Result<Vec<i64>> {
    p.to_i64_coeffs()
        .ok_or_else(|| anyhow!("polynomial coefficient exceeds the JSON integer range"))
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct RfJson {
    pub num: Vec<i64>,
    pub den: Vec<i64>,
}

pub fn rf_json(rf: &RationalFunction) -> Result<RfJson> {
    Ok(RfJson {
        num: poly_json(rf.numerator())?,
        den: poly_json(rf.denominator())?,
    })
}

pub fn mat_json(m: &IntMatrix) -> Result<Vec<Vec<i64>>> {
    m.to_i64_rows()
        .ok_or_else(|| anyhow!("matrix entry exceeds the JSON integer range"))
}

#[derive(Debug, Serialize)]
pub struct OrbitJson {
    pub period: usize,
    pub block: String,
    pub points: Vec<f64>,
    pub residual: f64,
}

#[derive(Debug, Serialize)]
pub struct ItineraryJson {
    pub schema: u32,
    pub command: &'static str,
    pub basis: OrbitJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fiber: Option<Vec<OrbitJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rotation: Option<usize>,
    pub product_period: usize,
}

#[derive(Debug, Serialize)]
pub struct SystemJson {
    pub blocks: Vec<String>,
    pub periods: Vec<usize>,
    pub kneading_matrix: Vec<Vec<RfJson>>,
    pub determinant: RfJson,
    pub d_polynomial: Vec<i64>,
    pub transition_matrix: Vec<Vec<i64>>,
    pub char_polynomial: Vec<i64>,
}

pub fn system_json(inv: &SystemInvariants) -> Result<SystemJson> {
    let m = inv.matrix.modality();
    let mut kneading_matrix = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = Vec::with_capacity(m + 1);
        for j in 0..=m {
            row.push(rf_json(inv.matrix.entry(i, j))?);
        }
        kneading_matrix.push(row);
    }
    Ok(SystemJson {
        blocks: inv.data.blocks().iter().map(ToString::to_string).collect(),
        periods: inv.data.periods(),
        kneading_matrix,
        determinant: rf_json(&inv.determinant.value)?,
        d_polynomial: poly_json(&inv.d_polynomial)?,
        transition_matrix: mat_json(inv.transition.matrix())?,
        char_polynomial: poly_json(&inv.char_polynomial)?,
    })
}

#[derive(Debug, Serialize)]
pub struct LiftJson {
    /// Formal tensor entries as (fiber factor, basis factor) pairs.
    pub matrix_pairs: Vec<Vec<(RfJson, RfJson)>>,
    pub determinant: RfJson,
    pub d_polynomial: Vec<i64>,
    pub periods: Vec<usize>,
}

pub fn lift_json(lift: &TriangularKneading) -> Result<LiftJson> {
    let matrix_pairs = lift
        .matrix
        .iter()
        .map(|row| {
            row.iter()
                .map(|(g, f)| Ok((rf_json(g)?, rf_json(f)?)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LiftJson {
        matrix_pairs,
        determinant: rf_json(&lift.determinant)?,
        d_polynomial: poly_json(&lift.d_polynomial)?,
        periods: lift.periods.clone(),
    })
}

#[derive(Debug, Serialize)]
pub struct KneadingJson {
    pub schema: u32,
    pub command: &'static str,
    pub basis: SystemJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fiber: Option<SystemJson>,
    pub lift: LiftJson,
}

#[derive(Debug, Serialize)]
pub struct PartitionJson {
    pub breakpoints: Vec<f64>,
    pub labels: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct RectangleJson {
    pub label: String,
    pub x: (f64, f64),
    pub y: (f64, f64),
}

#[derive(Debug, Serialize)]
pub struct MarkovJson {
    pub schema: u32,
    pub command: &'static str,
    pub basis: TransitionJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fiber: Option<TransitionJson>,
    pub product: TransitionJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis_partition: Option<PartitionJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fiber_partition: Option<PartitionJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rectangles: Option<Vec<RectangleJson>>,
}

#[derive(Debug, Serialize)]
pub struct TransitionJson {
    pub labels: Vec<String>,
    pub matrix: Vec<Vec<i64>>,
    pub char_polynomial: Vec<i64>,
}

pub fn transition_json(t: &TransitionMatrix) -> Result<TransitionJson> {
    Ok(TransitionJson {
        labels: t.labels().to_vec(),
        matrix: mat_json(t.matrix())?,
        char_polynomial: poly_json(&t.matrix().char_poly())?,
    })
}

#[derive(Debug, Serialize)]
pub struct DiagramJson {
    pub dims: (usize, usize),
    pub pi: Vec<Vec<i64>>,
    pub boundary: Vec<Vec<i64>>,
    pub omega: Vec<Vec<i64>>,
    pub alpha: Vec<Vec<i64>>,
    pub beta: Vec<Vec<i64>>,
    pub gamma: Vec<Vec<i64>>,
    pub theta: Vec<Vec<i64>>,
    pub a_matrix: Vec<Vec<i64>>,
    pub b_factor: Vec<Vec<i64>>,
    pub d_factor: Vec<Vec<i64>>,
}

pub fn diagram_json(dm: &DiagramMatrices) -> Result<DiagramJson> {
    Ok(DiagramJson {
        dims: dm.dims,
        pi: mat_json(&dm.pi)?,
        boundary: mat_json(&dm.boundary)?,
        omega: mat_json(&dm.omega)?,
        alpha: mat_json(&dm.alpha)?,
        beta: mat_json(&dm.beta)?,
        gamma: mat_json(&dm.gamma)?,
        theta: mat_json(&dm.theta)?,
        a_matrix: mat_json(&dm.a_matrix)?,
        b_factor: mat_json(&dm.b_factor)?,
        d_factor: mat_json(&dm.d_factor)?,
    })
}

#[derive(Debug, Serialize)]
pub struct CertificateJson {
    pub commutes_0: bool,
    pub commutes_1: bool,
    pub charpoly_equal: bool,
    pub p_theta: Vec<i64>,
    pub p_a: Vec<i64>,
    pub residual_0_norm: i64,
    pub residual_1_norm: i64,
}

pub fn certificate_json(c: &DiagramCertificate) -> Result<CertificateJson> {
    let norm = |m: &IntMatrix| -> i64 {
        m.to_i64_rows()
            .map(|rows| rows.iter().flatten().map(|v| v.abs()).sum())
            .unwrap_or(i64::MAX)
    };
    Ok(CertificateJson {
        commutes_0: c.commutes_0,
        commutes_1: c.commutes_1,
        charpoly_equal: c.charpoly_equal,
        p_theta: poly_json(&c.p_theta)?,
        p_a: poly_json(&c.p_a)?,
        residual_0_norm: norm(&c.residual_0),
        residual_1_norm: norm(&c.residual_1),
    })
}

#[derive(Debug, Serialize)]
pub struct TensorDiagramJson {
    pub boundary: Vec<Vec<i64>>,
    pub alpha: Vec<Vec<i64>>,
    pub beta: Vec<Vec<i64>>,
    pub omega: Vec<Vec<i64>>,
    pub gamma: Vec<Vec<i64>>,
    pub a_transpose: Vec<Vec<i64>>,
    pub theta_transpose: Vec<Vec<i64>>,
}

pub fn tensor_diagram_json(
    dy: &DiagramMatrices,
    dx: &DiagramMatrices,
) -> Result<TensorDiagramJson> {
    Ok(TensorDiagramJson {
        boundary: mat_json(&dy.boundary.kron(&dx.boundary))?,
        alpha: mat_json(&dy.alpha.kron(&dx.alpha))?,
        beta: mat_json(&dy.beta.kron(&dx.beta))?,
        omega: mat_json(&dy.omega.kron(&dx.omega))?,
        gamma: mat_json(&dy.gamma.kron(&dx.gamma))?,
        a_transpose: mat_json(&dy.a_matrix.kron(&dx.a_matrix).transpose())?,
        theta_transpose: mat_json(&dy.theta.kron(&dx.theta).transpose())?,
    })
}

#[derive(Debug, Serialize)]
pub struct TensorLiftJson {
    pub commutes_alpha: bool,
    pub commutes_theta: bool,
    pub p_a: Vec<i64>,
    pub p_theta: Vec<i64>,
    pub d_times_cyclotomic: Vec<i64>,
    pub holds: bool,
}

pub fn tensor_lift_json(r: &TensorLiftReport) -> Result<TensorLiftJson> {
    Ok(TensorLiftJson {
        commutes_alpha: r.commutes_alpha,
        commutes_theta: r.commutes_theta,
        p_a: poly_json(&r.p_a)?,
        p_theta: poly_json(&r.p_theta)?,
        d_times_cyclotomic: poly_json(&r.d_times_cyclotomic)?,
        holds: r.holds(),
    })
}

#[derive(Debug, Serialize)]
pub struct HomologyJson {
    pub schema: u32,
    pub command: &'static str,
    pub basis: DiagramJson,
    pub basis_certificate: CertificateJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fiber: Option<DiagramJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fiber_certificate: Option<CertificateJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tensor: Option<TensorDiagramJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tensor_identity: Option<TensorLiftJson>,
}

#[derive(Debug, Serialize)]
pub struct EntropyJson {
    pub schema: u32,
    pub command: &'static str,
    pub h_kneading: f64,
    pub h_spectral: f64,
    pub t_star: Option<f64>,
    pub lambda: f64,
    pub h_basis: f64,
    pub h_fiber: f64,
    pub bowen_ok: bool,
}

pub fn entropy_json(r: &EntropyReport) -> EntropyJson {
    EntropyJson {
        schema: SCHEMA_VERSION,
        command: "entropy",
        h_kneading: round_sig(r.h_kneading),
        h_spectral: round_sig(r.h_spectral),
        t_star: r.t_star.map(round_sig),
        lambda: round_sig(r.lambda),
        h_basis: round_sig(r.h_basis),
        h_fiber: round_sig(r.h_fiber),
        bowen_ok: r.bowen_ok,
    }
}

#[derive(Debug, Serialize)]
pub struct CheckJson {
    pub name: String,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct VerifyJson {
    pub schema: u32,
    pub command: &'static str,
    pub kneading: KneadingJson,
    pub markov: MarkovJson,
    pub homology: HomologyJson,
    pub entropy: EntropyJson,
    pub checks: Vec<CheckJson>,
    pub all_pass: bool,
}

pub fn orbit_json(orbit: &knead_core::interval_map::Orbit, block: String) -> OrbitJson {
    OrbitJson {
        period: orbit.period,
        block,
        points: orbit.points.iter().map(|&p| round_sig(p)).collect(),
        residual: round_sig(orbit.residual),
    }
}

pub fn itinerary_json(analysis: &TriangularAnalysis) -> ItineraryJson {
    let basis = orbit_json(
        &analysis.basis.orbits[0],
        analysis.basis.data.blocks()[0].to_string(),
    );
    let fiber = analysis.fiber.as_ref().map(|f| {
        f.orbits
            .iter()
            .zip(f.data.blocks())
            .map(|(o, b)| orbit_json(o, b.to_string()))
            .collect()
    });
    ItineraryJson {
        schema: SCHEMA_VERSION,
        command: "itinerary",
        basis,
        fiber,
        rotation: Some(analysis.rotation),
        product_period: analysis.product_period,
    }
}
