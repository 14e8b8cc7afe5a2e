//! Polytopic state-space models: generalized-plant vertices, convex
//! combination semantics, scheduling signals, validation, and the JSON
//! wire schema consumed by the command-line tools.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matcore::Matrix;

/// Channel dimensions of a generalized plant vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dims {
    /// states
    pub n: usize,
    /// control channel width (inputs = measurements = m, square channel)
    pub m: usize,
    /// exogenous inputs
    pub n_w: usize,
    /// performance outputs
    pub n_z: usize,
    /// uncertainty outputs (into the plant)
    pub n_q: usize,
    /// uncertainty inputs (out of the plant)
    pub n_p: usize,
}

/// One vertex of the polytopic generalized plant.
///
/// Unspecified channels default to zero; the direct feedthrough from the
/// control input to the measurement is carried only so that validation can
/// flag models that violate the zero-feedthrough assumption.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralizedVertex {
    pub a: Matrix,
    pub b1: Matrix,
    pub b2: Matrix,
    pub b3: Matrix,
    pub c1: Matrix,
    pub c2: Matrix,
    pub c3: Matrix,
    pub d11: Matrix,
    pub d12: Matrix,
    pub d13: Matrix,
    pub d21: Matrix,
    pub d22: Matrix,
    pub d31: Matrix,
    pub d32: Matrix,
    pub d33: Matrix,
}

impl GeneralizedVertex {
    /// Vertex with only the conic channel `(A, B2, C2)` populated.
    pub fn from_conic_channel(a: Matrix, b2: Matrix, c2: Matrix) -> Self {
        let n = a.rows();
        let m = b2.cols();
        GeneralizedVertex {
            a,
            b1: Matrix::zeros(n, 0),
            b2,
            b3: Matrix::zeros(n, 0),
            c1: Matrix::zeros(0, n),
            c2,
            c3: Matrix::zeros(0, n),
            d11: Matrix::zeros(0, 0),
            d12: Matrix::zeros(0, m),
            d13: Matrix::zeros(0, 0),
            d21: Matrix::zeros(m, 0),
            d22: Matrix::zeros(m, m),
            d31: Matrix::zeros(0, 0),
            d32: Matrix::zeros(0, m),
            d33: Matrix::zeros(0, 0),
        }
    }

    pub fn dims(&self) -> Dims {
        Dims {
            n: self.a.rows(),
            m: self.b2.cols(),
            n_w: self.b1.cols(),
            n_z: self.c1.rows(),
            n_q: self.b3.cols(),
            n_p: self.c3.rows(),
        }
    }

    fn dim_violations(&self, label: &str, out: &mut Vec<String>) {
        let d = self.dims();
        let checks: [(&str, usize, usize, &Matrix); 14] = [
            ("A", d.n, d.n, &self.a),
            ("B1", d.n, d.n_w, &self.b1),
            ("B2", d.n, d.m, &self.b2),
            ("B3", d.n, d.n_q, &self.b3),
            ("C1", d.n_z, d.n, &self.c1),
            ("C2", d.m, d.n, &self.c2),
            ("C3", d.n_p, d.n, &self.c3),
            ("D11", d.n_z, d.n_w, &self.d11),
            ("D12", d.n_z, d.m, &self.d12),
            ("D13", d.n_z, d.n_q, &self.d13),
            ("D21", d.m, d.n_w, &self.d21),
            ("D22", d.m, d.m, &self.d22),
            ("D31", d.n_p, d.n_w, &self.d31),
            ("D32", d.n_p, d.m, &self.d32),
        ];
        for (name, r, c, m) in checks {
            if m.rows() != r || m.cols() != c {
                out.push(format!(
                    "{label}: {name} is {}x{}, expected {r}x{c}",
                    m.rows(),
                    m.cols()
                ));
            }
            if !m.all_finite() {
                out.push(format!("{label}: {name} has non-finite entries"));
            }
        }
        if self.d33.rows() != d.n_p || self.d33.cols() != d.n_q {
            out.push(format!(
                "{label}: D33 is {}x{}, expected {}x{}",
                self.d33.rows(),
                self.d33.cols(),
                d.n_p,
                d.n_q
            ));
        }
        if self.d22.norm_max() != 0.0 {
            out.push(format!("{label}: nonzero D22 feedthrough (assumed zero)"));
        }
    }

    fn scale_all(&self, w: f64) -> GeneralizedVertex {
        GeneralizedVertex {
            a: self.a.scale(w),
            b1: self.b1.scale(w),
            b2: self.b2.scale(w),
            b3: self.b3.scale(w),
            c1: self.c1.scale(w),
            c2: self.c2.scale(w),
            c3: self.c3.scale(w),
            d11: self.d11.scale(w),
            d12: self.d12.scale(w),
            d13: self.d13.scale(w),
            d21: self.d21.scale(w),
            d22: self.d22.scale(w),
            d31: self.d31.scale(w),
            d32: self.d32.scale(w),
            d33: self.d33.scale(w),
        }
    }

    fn axpy(&mut self, other: &GeneralizedVertex, w: f64) {
        self.a.add_in_place(&other.a, w);
        self.b1.add_in_place(&other.b1, w);
        self.b2.add_in_place(&other.b2, w);
        self.b3.add_in_place(&other.b3, w);
        self.c1.add_in_place(&other.c1, w);
        self.c2.add_in_place(&other.c2, w);
        self.c3.add_in_place(&other.c3, w);
        self.d11.add_in_place(&other.d11, w);
        self.d12.add_in_place(&other.d12, w);
        self.d13.add_in_place(&other.d13, w);
        self.d21.add_in_place(&other.d21, w);
        self.d22.add_in_place(&other.d22, w);
        self.d31.add_in_place(&other.d31, w);
        self.d32.add_in_place(&other.d32, w);
        self.d33.add_in_place(&other.d33, w);
    }

    fn scaled_sum(vertices: &[GeneralizedVertex], weights: &[f64]) -> GeneralizedVertex {
        let mut acc = vertices[0].scale_all(weights[0]);
        for (v, &w) in vertices.iter().zip(weights.iter()).skip(1) {
            acc.axpy(v, w);
        }
        acc
    }
}

/// Per-vertex `(A, B2, C2)` triples of the square conic channel.
#[derive(Clone, Debug)]
pub struct ConicChannelView {
    vertices: Vec<(Matrix, Matrix, Matrix)>,
}

impl ConicChannelView {
    pub fn new(vertices: Vec<(Matrix, Matrix, Matrix)>) -> Result<Self, ModelError> {
        if vertices.is_empty() {
            return Err(ModelError::Invalid("no vertices".into()));
        }
        let n = vertices[0].0.rows();
        let m = vertices[0].1.cols();
        for (a, b, c) in &vertices {
            if a.rows() != n || a.cols() != n || b.rows() != n || b.cols() != m
                || c.rows() != m || c.cols() != n
            {
                return Err(ModelError::Invalid(
                    "conic channel vertices must share (n, m) with a square channel".into(),
                ));
            }
        }
        Ok(ConicChannelView { vertices })
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n(&self) -> usize {
        self.vertices[0].0.rows()
    }

    pub fn m(&self) -> usize {
        self.vertices[0].1.cols()
    }

    pub fn vertex(&self, i: usize) -> (&Matrix, &Matrix, &Matrix) {
        let v = &self.vertices[i];
        (&v.0, &v.1, &v.2)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Matrix, &Matrix, &Matrix)> {
        self.vertices.iter().map(|v| (&v.0, &v.1, &v.2))
    }

    /// Convex combination of the channel at simplex weights `s`.
    pub fn at(&self, s: &[f64]) -> (Matrix, Matrix, Matrix) {
        let n = self.n();
        let m = self.m();
        let mut a = Matrix::zeros(n, n);
        let mut b = Matrix::zeros(n, m);
        let mut c = Matrix::zeros(m, n);
        for (k, (av, bv, cv)) in self.iter().enumerate() {
            a.add_in_place(av, s[k]);
            b.add_in_place(bv, s[k]);
            c.add_in_place(cv, s[k]);
        }
        (a, b, c)
    }
}

#[derive(Clone, Debug)]
pub struct PolytopicModel {
    pub vertices: Vec<GeneralizedVertex>,
    pub labels: Vec<String>,
}

#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("weights are not on the simplex")]
    NotOnSimplex,
    #[error("invalid model: {0}")]
    Invalid(String),
    #[error("json: {0}")]
    Json(String),
}

impl PolytopicModel {
    pub fn new(vertices: Vec<GeneralizedVertex>) -> Result<Self, ModelError> {
        if vertices.is_empty() {
            return Err(ModelError::Invalid("a polytopic model needs at least one vertex".into()));
        }
        let labels = (0..vertices.len()).map(|i| format!("vertex {}", i + 1)).collect();
        let model = PolytopicModel { vertices, labels };
        let report = model.validate();
        if !report.is_ok() {
            return Err(ModelError::Invalid(report.violations.join("; ")));
        }
        Ok(model)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn dims(&self) -> Dims {
        self.vertices[0].dims()
    }

    /// Report-based validation: dimension consistency across vertices and the
    /// zero-feedthrough assumption on the measurement channel.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        if self.vertices.is_empty() {
            report.violations.push("no vertices".into());
            return report;
        }
        let d0 = self.vertices[0].dims();
        for (i, v) in self.vertices.iter().enumerate() {
            let label = format!("vertex {}", i + 1);
            v.dim_violations(&label, &mut report.violations);
            let d = v.dims();
            if d != d0 {
                report
                    .violations
                    .push(format!("{label}: channel dims {d:?} differ from vertex 1 {d0:?}"));
            }
        }
        report
    }

    /// Convex combination of every channel at simplex weights `s`.
    pub fn evaluate(&self, s: &[f64]) -> Result<GeneralizedVertex, ModelError> {
        check_simplex(s, self.vertices.len(), 1e-9)?;
        Ok(GeneralizedVertex::scaled_sum(&self.vertices, s))
    }

    pub fn conic_channel(&self) -> ConicChannelView {
        ConicChannelView {
            vertices: self
                .vertices
                .iter()
                .map(|v| (v.a.clone(), v.b2.clone(), v.c2.clone()))
                .collect(),
        }
    }
}

fn check_simplex(s: &[f64], n: usize, tol: f64) -> Result<(), ModelError> {
    if s.len() != n {
        return Err(ModelError::NotOnSimplex);
    }
    let sum: f64 = s.iter().sum();
    if (sum - 1.0).abs() > tol || s.iter().any(|&w| !(-tol..=1.0 + tol).contains(&w)) {
        return Err(ModelError::NotOnSimplex);
    }
    Ok(())
}

/// Deterministic scheduling signals over the unit simplex.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SchedulingSignal {
    /// pinned to one vertex
    ConstantVertex { index: usize, num_vertices: usize },
    /// two-vertex pair driven by the cubic blend: s1 = phi(t, 1, 0)
    SmoothStepPair { t_f: f64 },
    /// piecewise-linear table of simplex points; clamps outside the knots
    PiecewiseLinearTable { times: Vec<f64>, weights: Vec<Vec<f64>> },
}

impl SchedulingSignal {
    pub fn num_vertices(&self) -> usize {
        match self {
            SchedulingSignal::ConstantVertex { num_vertices, .. } => *num_vertices,
            SchedulingSignal::SmoothStepPair { .. } => 2,
            SchedulingSignal::PiecewiseLinearTable { weights, .. } => {
                weights.first().map_or(0, |w| w.len())
            }
        }
    }

    /// Simplex weights at time `t`; the table variant clamps beyond its knots.
    pub fn sample(&self, t: f64) -> Vec<f64> {
        match self {
            SchedulingSignal::ConstantVertex { index, num_vertices } => {
                let mut s = vec![0.0; *num_vertices];
                s[*index] = 1.0;
                s
            }
            SchedulingSignal::SmoothStepPair { t_f } => {
                let s1 = crate::heatx::smooth_step(t, 1.0, 0.0, *t_f);
                vec![s1, 1.0 - s1]
            }
            SchedulingSignal::PiecewiseLinearTable { times, weights } => {
                let n = self.num_vertices();
                if times.is_empty() {
                    return vec![1.0 / n as f64; n];
                }
                if t <= times[0] {
                    return normalize_simplex(&weights[0]);
                }
                if t >= *times.last().unwrap() {
                    return normalize_simplex(weights.last().unwrap());
                }
                let k = times.partition_point(|&tk| tk <= t).saturating_sub(1);
                let (t0, t1) = (times[k], times[k + 1]);
                let lam = if t1 > t0 { (t - t0) / (t1 - t0) } else { 0.0 };
                let w: Vec<f64> = weights[k]
                    .iter()
                    .zip(weights[k + 1].iter())
                    .map(|(a, b)| (1.0 - lam) * a + lam * b)
                    .collect();
                normalize_simplex(&w)
            }
        }
    }

    /// True when `t` falls inside the table's knot span (always true for
    /// the analytic variants).
    pub fn in_range(&self, t: f64) -> bool {
        match self {
            SchedulingSignal::PiecewiseLinearTable { times, .. } => {
                !times.is_empty() && t >= times[0] && t <= *times.last().unwrap()
            }
            _ => true,
        }
    }
}

fn normalize_simplex(w: &[f64]) -> Vec<f64> {
    let clipped: Vec<f64> = w.iter().map(|&x| x.max(0.0)).collect();
    let sum: f64 = clipped.iter().sum();
    if sum <= 0.0 {
        vec![1.0 / w.len() as f64; w.len()]
    } else {
        clipped.iter().map(|x| x / sum).collect()
    }
}

// ---------------------------------------------------------------------------
// JSON wire schema
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct VertexFile {
    #[serde(rename = "A")]
    a: Vec<Vec<f64>>,
    #[serde(rename = "B2")]
    b2: Vec<Vec<f64>>,
    #[serde(rename = "C2")]
    c2: Vec<Vec<f64>>,
    #[serde(rename = "B1", skip_serializing_if = "Option::is_none")]
    b1: Option<Vec<Vec<f64>>>,
    #[serde(rename = "B3", skip_serializing_if = "Option::is_none")]
    b3: Option<Vec<Vec<f64>>>,
    #[serde(rename = "C1", skip_serializing_if = "Option::is_none")]
    c1: Option<Vec<Vec<f64>>>,
    #[serde(rename = "C3", skip_serializing_if = "Option::is_none")]
    c3: Option<Vec<Vec<f64>>>,
    #[serde(rename = "D11", skip_serializing_if = "Option::is_none")]
    d11: Option<Vec<Vec<f64>>>,
    #[serde(rename = "D12", skip_serializing_if = "Option::is_none")]
    d12: Option<Vec<Vec<f64>>>,
    #[serde(rename = "D13", skip_serializing_if = "Option::is_none")]
    d13: Option<Vec<Vec<f64>>>,
    #[serde(rename = "D21", skip_serializing_if = "Option::is_none")]
    d21: Option<Vec<Vec<f64>>>,
    #[serde(rename = "D22", skip_serializing_if = "Option::is_none")]
    d22: Option<Vec<Vec<f64>>>,
    #[serde(rename = "D31", skip_serializing_if = "Option::is_none")]
    d31: Option<Vec<Vec<f64>>>,
    #[serde(rename = "D32", skip_serializing_if = "Option::is_none")]
    d32: Option<Vec<Vec<f64>>>,
    #[serde(rename = "D33", skip_serializing_if = "Option::is_none")]
    d33: Option<Vec<Vec<f64>>>,
}

#[derive(Serialize, Deserialize)]
pub struct ModelFile {
    pub n: usize,
    pub m: usize,
    vertices: Vec<VertexFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schedule: Option<SchedulingSignal>,
}

fn opt_matrix(v: &Option<Vec<Vec<f64>>>, rows: usize, cols: usize, name: &str) -> Result<Matrix, ModelError> {
    match v {
        None => Ok(Matrix::zeros(rows, cols)),
        Some(rows_data) => {
            let m = Matrix::from_nested(rows_data)
                .map_err(|e| ModelError::Json(format!("{name}: {e}")))?;
            Ok(m)
        }
    }
}

fn channel_cols(vertices: &[VertexFile], pick: fn(&VertexFile) -> Option<&Vec<Vec<f64>>>) -> usize {
    vertices
        .iter()
        .filter_map(pick)
        .map(|m| m.first().map_or(0, |r| r.len()))
        .max()
        .unwrap_or(0)
}

fn channel_rows(vertices: &[VertexFile], pick: fn(&VertexFile) -> Option<&Vec<Vec<f64>>>) -> usize {
    vertices.iter().filter_map(pick).map(|m| m.len()).max().unwrap_or(0)
}

impl ModelFile {
    pub fn to_model(&self) -> Result<(PolytopicModel, Option<SchedulingSignal>), ModelError> {
        let n = self.n;
        let m = self.m;
        let n_w = channel_cols(&self.vertices, |v| v.b1.as_ref());
        let n_q = channel_cols(&self.vertices, |v| v.b3.as_ref());
        let n_z = channel_rows(&self.vertices, |v| v.c1.as_ref());
        let n_p = channel_rows(&self.vertices, |v| v.c3.as_ref());
        let mut vertices = Vec::with_capacity(self.vertices.len());
        for (i, vf) in self.vertices.iter().enumerate() {
            let tag = format!("vertex {}", i + 1);
            let a = Matrix::from_nested(&vf.a).map_err(|e| ModelError::Json(format!("{tag} A: {e}")))?;
            let b2 = Matrix::from_nested(&vf.b2).map_err(|e| ModelError::Json(format!("{tag} B2: {e}")))?;
            let c2 = Matrix::from_nested(&vf.c2).map_err(|e| ModelError::Json(format!("{tag} C2: {e}")))?;
            vertices.push(GeneralizedVertex {
                a,
                b1: opt_matrix(&vf.b1, n, n_w, "B1")?,
                b2,
                b3: opt_matrix(&vf.b3, n, n_q, "B3")?,
                c1: opt_matrix(&vf.c1, n_z, n, "C1")?,
                c2,
                c3: opt_matrix(&vf.c3, n_p, n, "C3")?,
                d11: opt_matrix(&vf.d11, n_z, n_w, "D11")?,
                d12: opt_matrix(&vf.d12, n_z, m, "D12")?,
                d13: opt_matrix(&vf.d13, n_z, n_q, "D13")?,
                d21: opt_matrix(&vf.d21, m, n_w, "D21")?,
                d22: opt_matrix(&vf.d22, m, m, "D22")?,
                d31: opt_matrix(&vf.d31, n_p, n_w, "D31")?,
                d32: opt_matrix(&vf.d32, n_p, m, "D32")?,
                d33: opt_matrix(&vf.d33, n_p, n_q, "D33")?,
            });
        }
        let model = PolytopicModel::new(vertices)?;
        let d = model.dims();
        if d.n != n || d.m != m {
            return Err(ModelError::Json(format!(
                "declared (n={n}, m={m}) but matrices imply (n={}, m={})",
                d.n, d.m
            )));
        }
        Ok((model, self.schedule.clone()))
    }

    pub fn from_model(model: &PolytopicModel, schedule: Option<&SchedulingSignal>) -> Self {
        let d = model.dims();
        let some_if = |m: &Matrix| {
            if m.rows() == 0 || m.cols() == 0 || m.norm_max() == 0.0 {
                None
            } else {
                Some(m.to_nested())
            }
        };
        ModelFile {
            n: d.n,
            m: d.m,
            vertices: model
                .vertices
                .iter()
                .map(|v| VertexFile {
                    a: v.a.to_nested(),
                    b2: v.b2.to_nested(),
                    c2: v.c2.to_nested(),
                    b1: some_if(&v.b1),
                    b3: some_if(&v.b3),
                    c1: some_if(&v.c1),
                    c3: some_if(&v.c3),
                    d11: some_if(&v.d11),
                    d12: some_if(&v.d12),
                    d13: some_if(&v.d13),
                    d21: some_if(&v.d21),
                    d22: some_if(&v.d22),
                    d31: some_if(&v.d31),
                    d32: some_if(&v.d32),
                    d33: some_if(&v.d33),
                })
                .collect(),
            schedule: schedule.cloned(),
        }
    }
}

pub fn model_from_json(text: &str) -> Result<(PolytopicModel, Option<SchedulingSignal>), ModelError> {
    let file: ModelFile = serde_json::from_str(text).map_err(|e| ModelError::Json(e.to_string()))?;
    file.to_model()
}

pub fn model_to_json(model: &PolytopicModel, schedule: Option<&SchedulingSignal>) -> String {
    let file = ModelFile::from_model(model, schedule);
    serde_json::to_string_pretty(&file).expect("model serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn two_vertex_model() -> PolytopicModel {
        let v1 = GeneralizedVertex::from_conic_channel(
            Matrix::from_rows(&[&[-1.0, 0.5], &[0.0, -2.0]]),
            Matrix::from_rows(&[&[0.0], &[1.0]]),
            Matrix::from_rows(&[&[1.0, 0.0]]),
        );
        let v2 = GeneralizedVertex::from_conic_channel(
            Matrix::from_rows(&[&[-0.5, 0.2], &[0.1, -1.0]]),
            Matrix::from_rows(&[&[0.0], &[0.6]]),
            Matrix::from_rows(&[&[1.0, 0.0]]),
        );
        PolytopicModel::new(vec![v1, v2]).unwrap()
    }

    #[test]
    fn validate_well_formed() {
        assert!(two_vertex_model().validate().is_ok());
    }

    #[test]
    fn validate_flags_nonzero_d22() {
        let mut model = two_vertex_model();
        model.vertices[0].d22 = Matrix::scalar(0.3);
        let report = model.validate();
        assert!(report.violations.iter().any(|v| v.contains("D22")));
    }

    #[test]
    fn validate_flags_mismatched_c2() {
        let mut model = two_vertex_model();
        model.vertices[1].c2 = Matrix::from_rows(&[&[1.0, 0.0, 0.0]]);
        let report = model.validate();
        assert!(!report.is_ok());
    }

    #[test]
    fn evaluate_unit_weight_returns_vertex() {
        let model = two_vertex_model();
        let v = model.evaluate(&[1.0, 0.0]).unwrap();
        assert_eq!(v, model.vertices[0]);
        let v = model.evaluate(&[0.0, 1.0]).unwrap();
        assert_eq!(v, model.vertices[1]);
    }

    #[test]
    fn evaluate_average() {
        let model = two_vertex_model();
        let v = model.evaluate(&[0.5, 0.5]).unwrap();
        let expect = 0.5 * (model.vertices[0].a[(0, 0)] + model.vertices[1].a[(0, 0)]);
        assert_abs_diff_eq!(v.a[(0, 0)], expect, epsilon = 1e-15);
    }

    #[test]
    fn evaluate_single_vertex_any_weight() {
        let v1 = GeneralizedVertex::from_conic_channel(
            Matrix::scalar(-1.0),
            Matrix::scalar(1.0),
            Matrix::scalar(1.0),
        );
        let model = PolytopicModel::new(vec![v1.clone()]).unwrap();
        assert_eq!(model.evaluate(&[1.0]).unwrap(), v1);
    }

    #[test]
    fn evaluate_rejects_off_simplex() {
        let model = two_vertex_model();
        assert!(matches!(model.evaluate(&[0.7, 0.7]), Err(ModelError::NotOnSimplex)));
        assert!(matches!(model.evaluate(&[1.2, -0.2]), Err(ModelError::NotOnSimplex)));
    }

    #[test]
    fn evaluate_is_affine_in_weights() {
        let model = two_vertex_model();
        for k in 0..=10 {
            let alpha = k as f64 / 10.0;
            let s_a = [0.9, 0.1];
            let s_b = [0.2, 0.8];
            let mixed = [
                alpha * s_a[0] + (1.0 - alpha) * s_b[0],
                alpha * s_a[1] + (1.0 - alpha) * s_b[1],
            ];
            let va = model.evaluate(&s_a).unwrap();
            let vb = model.evaluate(&s_b).unwrap();
            let vm = model.evaluate(&mixed).unwrap();
            let expect = &va.a.scale(alpha) + &vb.a.scale(1.0 - alpha);
            assert!((&vm.a - &expect).norm_max() <= 1e-12);
        }
    }

    #[test]
    fn smooth_step_pair_samples() {
        let sig = SchedulingSignal::SmoothStepPair { t_f: 20.0 };
        let s = sig.sample(0.0);
        assert_abs_diff_eq!(s[0], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s[1], 0.0, epsilon = 1e-15);
        let s = sig.sample(20.0);
        assert_abs_diff_eq!(s[0], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s[1], 1.0, epsilon = 1e-15);
        let s = sig.sample(10.0);
        assert_abs_diff_eq!(s[0], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(s[1], 0.5, epsilon = 1e-15);
    }

    #[test]
    fn schedule_simplex_invariant_random_times() {
        let signals = [
            SchedulingSignal::SmoothStepPair { t_f: 20.0 },
            SchedulingSignal::ConstantVertex { index: 1, num_vertices: 3 },
            SchedulingSignal::PiecewiseLinearTable {
                times: vec![0.0, 5.0, 12.0],
                weights: vec![vec![1.0, 0.0], vec![0.25, 0.75], vec![0.4, 0.6]],
            },
        ];
        let mut state = 77u64;
        for _ in 0..1000 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let t = (state >> 11) as f64 / (1u64 << 53) as f64 * 40.0 - 5.0;
            for sig in &signals {
                let s = sig.sample(t.max(0.0));
                let sum: f64 = s.iter().sum();
                assert!((sum - 1.0).abs() <= 1e-12);
                assert!(s.iter().all(|&w| (-1e-12..=1.0 + 1e-12).contains(&w)));
            }
        }
    }

    #[test]
    fn table_clamps_out_of_range() {
        let sig = SchedulingSignal::PiecewiseLinearTable {
            times: vec![1.0, 2.0],
            weights: vec![vec![1.0, 0.0], vec![0.0, 1.0]],
        };
        assert_eq!(sig.sample(0.0), vec![1.0, 0.0]);
        assert_eq!(sig.sample(5.0), vec![0.0, 1.0]);
        assert!(!sig.in_range(5.0));
        assert!(sig.in_range(1.5));
    }

    #[test]
    fn json_roundtrip() {
        let model = two_vertex_model();
        let sched = SchedulingSignal::SmoothStepPair { t_f: 20.0 };
        let text = model_to_json(&model, Some(&sched));
        let (back, sched_back) = model_from_json(&text).unwrap();
        assert_eq!(back.num_vertices(), 2);
        assert_eq!(sched_back, Some(sched));
        assert!((&back.vertices[0].a - &model.vertices[0].a).norm_max() <= 1e-15);
        assert_eq!(back.dims(), model.dims());
    }

    #[test]
    fn json_rejects_garbage() {
        assert!(model_from_json("{not json").is_err());
        assert!(model_from_json("{\"n\": 1, \"m\": 1, \"vertices\": []}").is_err());
    }
}
