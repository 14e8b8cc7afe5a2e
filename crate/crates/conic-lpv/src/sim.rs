//! Fixed-step closed-loop simulation of a polytopic plant under a
//! polytopic controller in negative feedback, reference tracking, trace
//! export, and the tracking metrics used by the study tables.

use serde::Serialize;
use thiserror::Error;

use crate::heatx::ShiftedFrame;
use crate::lpvsys::{ConicChannelView, PolytopicModel, SchedulingSignal};
use crate::synthesis::{PolytopicController, VertexController};

#[derive(Clone, Debug)]
pub enum Reference {
    Zero,
    /// scalar cubic-blend reference in the loop's output units
    SmoothStep { initial: f64, final_value: f64, t_f: f64 },
}

impl Reference {
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            Reference::Zero => 0.0,
            Reference::SmoothStep { initial, final_value, t_f } => {
                crate::heatx::smooth_step(t, *initial, *final_value, *t_f)
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct LoopConfig {
    pub plant: PolytopicModel,
    pub controller: PolytopicController,
    pub schedule: SchedulingSignal,
    /// reference on the first output channel (remaining channels track zero)
    pub reference: Reference,
    pub t_end: f64,
    pub dt: f64,
    pub x_plant0: Vec<f64>,
    pub x_ctrl0: Vec<f64>,
    /// present when the loop is the shifted heat-exchanger study; enables
    /// physical-temperature reconstruction in the trace
    pub frame: Option<ShiftedFrame>,
}

#[derive(Clone, Debug)]
pub struct SimulationTrace {
    pub t: Vec<f64>,
    pub x_plant: Vec<Vec<f64>>,
    pub x_ctrl: Vec<Vec<f64>>,
    pub u: Vec<Vec<f64>>,
    pub y: Vec<Vec<f64>>,
    pub reference: Vec<f64>,
    /// reconstructed physical temperatures `[cold, hot]` when a frame is set
    pub physical: Option<Vec<[f64; 2]>>,
    /// wiring note carried into exports
    pub feedback_convention: &'static str,
}

pub const FEEDBACK_NOTE: &str =
    "controller input = y - r (shifted measurement minus reference); plant input = -controller output";

#[derive(Debug, Error)]
pub enum SimError {
    #[error("simulation diverged at t = {0}: state magnitude exceeded 1e9")]
    Divergence(f64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("trace is empty")]
    EmptyTrace,
    #[error("bad configuration: {0}")]
    BadConfig(String),
}

const DIVERGENCE_CAP: f64 = 1e9;

/// Classic fourth-order fixed-step integration of the coupled
/// plant/controller states; scheduling and reference are sampled at the
/// stage times.
pub fn simulate(config: &LoopConfig) -> Result<SimulationTrace, SimError> {
    let dims = config.plant.dims();
    let n = dims.n;
    let m = dims.m;
    let n_c = config.controller.order();
    if config.controller.io_width() != m {
        return Err(SimError::DimensionMismatch(format!(
            "controller width {} vs plant channel {m}",
            config.controller.io_width()
        )));
    }
    if config.x_plant0.len() != n || config.x_ctrl0.len() != n_c {
        return Err(SimError::DimensionMismatch("initial condition lengths".into()));
    }
    if !(config.dt > 0.0) || !(config.t_end > 0.0) {
        return Err(SimError::BadConfig("step and horizon must be positive".into()));
    }
    if config.schedule.num_vertices() != config.plant.num_vertices()
        || config.controller.num_vertices() != config.plant.num_vertices()
    {
        return Err(SimError::DimensionMismatch(
            "schedule, plant, and controller must share the vertex count".into(),
        ));
    }

    let plant_view = config.plant.conic_channel();
    let steps = (config.t_end / config.dt).round() as usize;
    let mut t_grid = Vec::with_capacity(steps + 1);
    let mut xs = Vec::with_capacity(steps + 1);
    let mut xcs = Vec::with_capacity(steps + 1);
    let mut us = Vec::with_capacity(steps + 1);
    let mut ys = Vec::with_capacity(steps + 1);
    let mut refs = Vec::with_capacity(steps + 1);

    // stacked state [x_plant; x_ctrl]
    let mut z: Vec<f64> = config
        .x_plant0
        .iter()
        .chain(config.x_ctrl0.iter())
        .copied()
        .collect();

    let derivative = |t: f64, z: &[f64], out: &mut Vec<f64>| {
        let s = config.schedule.sample(t);
        let (a_p, b2, c2) = plant_view.at(&s);
        let (a_c, b_c, c_c) = config.controller.at(&s);
        let r = config.reference.eval(t);
        out.clear();
        out.resize(n + n_c, 0.0);
        // y = C2 x, u_c = y - r (first channel), u_p = -C_c x_c
        let mut y = vec![0.0; m];
        for i in 0..m {
            for j in 0..n {
                y[i] += c2[(i, j)] * z[j];
            }
        }
        let mut yc = vec![0.0; m];
        for i in 0..m {
            for j in 0..n_c {
                yc[i] += c_c[(i, j)] * z[n + j];
            }
        }
        let mut e = y.clone();
        e[0] -= r;
        for i in 0..n {
            let mut acc = 0.0;
            for j in 0..n {
                acc += a_p[(i, j)] * z[j];
            }
            for j in 0..m {
                acc -= b2[(i, j)] * yc[j];
            }
            out[i] = acc;
        }
        for i in 0..n_c {
            let mut acc = 0.0;
            for j in 0..n_c {
                acc += a_c[(i, j)] * z[n + j];
            }
            for j in 0..m {
                acc += b_c[(i, j)] * e[j];
            }
            out[n + i] = acc;
        }
    };

    let record = |t: f64,
                  z: &[f64],
                  t_grid: &mut Vec<f64>,
                  xs: &mut Vec<Vec<f64>>,
                  xcs: &mut Vec<Vec<f64>>,
                  us: &mut Vec<Vec<f64>>,
                  ys: &mut Vec<Vec<f64>>,
                  refs: &mut Vec<f64>| {
        let s = config.schedule.sample(t);
        let (_, _, c2) = plant_view.at(&s);
        let (_, _, c_c) = config.controller.at(&s);
        let mut y = vec![0.0; m];
        for i in 0..m {
            for j in 0..n {
                y[i] += c2[(i, j)] * z[j];
            }
        }
        let mut u = vec![0.0; m];
        for i in 0..m {
            for j in 0..n_c {
                u[i] -= c_c[(i, j)] * z[n + j];
            }
        }
        t_grid.push(t);
        xs.push(z[..n].to_vec());
        xcs.push(z[n..].to_vec());
        us.push(u);
        ys.push(y);
        refs.push(config.reference.eval(t));
    };

    let dim = n + n_c;
    let mut k1 = Vec::with_capacity(dim);
    let mut k2 = Vec::with_capacity(dim);
    let mut k3 = Vec::with_capacity(dim);
    let mut k4 = Vec::with_capacity(dim);
    let mut stage = vec![0.0; dim];

    record(0.0, &z, &mut t_grid, &mut xs, &mut xcs, &mut us, &mut ys, &mut refs);
    let h = config.dt;
    for step in 0..steps {
        let t = step as f64 * h;
        derivative(t, &z, &mut k1);
        for i in 0..dim {
            stage[i] = z[i] + 0.5 * h * k1[i];
        }
        derivative(t + 0.5 * h, &stage, &mut k2);
        for i in 0..dim {
            stage[i] = z[i] + 0.5 * h * k2[i];
        }
        derivative(t + 0.5 * h, &stage, &mut k3);
        for i in 0..dim {
            stage[i] = z[i] + h * k3[i];
        }
        derivative(t + h, &stage, &mut k4);
        for i in 0..dim {
            z[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        let t_next = (step + 1) as f64 * h;
        if z.iter().any(|v| !v.is_finite() || v.abs() > DIVERGENCE_CAP) {
            return Err(SimError::Divergence(t_next));
        }
        record(t_next, &z, &mut t_grid, &mut xs, &mut xcs, &mut us, &mut ys, &mut refs);
    }

    let physical = config.frame.as_ref().map(|frame| {
        xs.iter().map(|x| frame.physical_from_state(x)).collect()
    });
    Ok(SimulationTrace {
        t: t_grid,
        x_plant: xs,
        x_ctrl: xcs,
        u: us,
        y: ys,
        reference: refs,
        physical,
        feedback_convention: FEEDBACK_NOTE,
    })
}

/// Open-loop simulation of the square channel under a sampled input;
/// returns states, the combined output, and each vertex's output along the
/// same trajectory (inputs are interpolated linearly at stage times).
pub fn simulate_channel(
    view: &ConicChannelView,
    schedule: &SchedulingSignal,
    u_samples: &[Vec<f64>],
    dt: f64,
    x0: &[f64],
) -> Result<(Vec<Vec<f64>>, Vec<Vec<f64>>, Vec<Vec<Vec<f64>>>), SimError> {
    let n = view.n();
    let m = view.m();
    if x0.len() != n {
        return Err(SimError::DimensionMismatch("x0 length".into()));
    }
    if u_samples.is_empty() || u_samples.iter().any(|u| u.len() != m) {
        return Err(SimError::DimensionMismatch("input sample width".into()));
    }
    let steps = u_samples.len() - 1;
    let u_at = |t: f64| -> Vec<f64> {
        let pos = (t / dt).clamp(0.0, steps as f64);
        let k = pos.floor() as usize;
        let frac = pos - k as f64;
        if k >= steps {
            return u_samples[steps].clone();
        }
        u_samples[k]
            .iter()
            .zip(u_samples[k + 1].iter())
            .map(|(a, b)| (1.0 - frac) * a + frac * b)
            .collect()
    };
    let deriv = |t: f64, x: &[f64]| -> Vec<f64> {
        let s = schedule.sample(t);
        let (a_p, b2, _) = view.at(&s);
        let u = u_at(t);
        let mut dx = vec![0.0; n];
        for i in 0..n {
            for j in 0..n {
                dx[i] += a_p[(i, j)] * x[j];
            }
            for j in 0..m {
                dx[i] += b2[(i, j)] * u[j];
            }
        }
        dx
    };

    let mut x = x0.to_vec();
    let mut states = Vec::with_capacity(u_samples.len());
    states.push(x.clone());
    for step in 0..steps {
        let t = step as f64 * dt;
        let k1 = deriv(t, &x);
        let mid1: Vec<f64> = x.iter().zip(&k1).map(|(xi, k)| xi + 0.5 * dt * k).collect();
        let k2 = deriv(t + 0.5 * dt, &mid1);
        let mid2: Vec<f64> = x.iter().zip(&k2).map(|(xi, k)| xi + 0.5 * dt * k).collect();
        let k3 = deriv(t + 0.5 * dt, &mid2);
        let end: Vec<f64> = x.iter().zip(&k3).map(|(xi, k)| xi + dt * k).collect();
        let k4 = deriv(t + dt, &end);
        for i in 0..n {
            x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        if x.iter().any(|v| !v.is_finite() || v.abs() > DIVERGENCE_CAP) {
            return Err(SimError::Divergence((step + 1) as f64 * dt));
        }
        states.push(x.clone());
    }

    let num_vertices = view.num_vertices();
    let mut y = Vec::with_capacity(states.len());
    let mut y_vertices = vec![Vec::with_capacity(states.len()); num_vertices];
    for (k, xk) in states.iter().enumerate() {
        let t = k as f64 * dt;
        let s = schedule.sample(t);
        let mut combined = vec![0.0; m];
        for (vi, (_, _, c2)) in view.iter().enumerate() {
            let mut yv = vec![0.0; m];
            for i in 0..m {
                for j in 0..n {
                    yv[i] += c2[(i, j)] * xk[j];
                }
            }
            for i in 0..m {
                combined[i] += s[vi] * yv[i];
            }
            y_vertices[vi].push(yv);
        }
        y.push(combined);
    }
    Ok((states, y, y_vertices))
}

/// Linear interpolation of vertex designs into a gain-scheduled controller.
/// Carries no stability or performance guarantee; used as the comparison
/// baseline in the study.
pub fn interpolate_hinf(designs: &[VertexController]) -> Result<PolytopicController, crate::synthesis::SynthError> {
    PolytopicController::new(designs.to_vec())
}

/// Root-mean-square tracking error of the first output channel against the
/// reference, over the whole trace.
pub fn rms_error(trace: &SimulationTrace) -> Result<f64, SimError> {
    if trace.t.is_empty() {
        return Err(SimError::EmptyTrace);
    }
    let sum: f64 = trace
        .y
        .iter()
        .zip(trace.reference.iter())
        .map(|(y, r)| {
            let e = y[0] - r;
            e * e
        })
        .sum();
    Ok((sum / trace.t.len() as f64).sqrt())
}

#[derive(Clone, Debug, Serialize)]
pub struct ScenarioMetric {
    pub controller: String,
    pub delta: f64,
    pub rms_error: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ControllerSpread {
    pub controller: String,
    /// sample standard deviation of the RMS errors across scenarios
    pub std_dev: f64,
}

/// Study table: RMS per (controller, scenario) plus the per-controller
/// spread across scenarios.
#[derive(Clone, Debug, Serialize)]
pub struct Metrics {
    pub entries: Vec<ScenarioMetric>,
    pub spread: Vec<ControllerSpread>,
}

pub struct ScenarioRun {
    pub controller_label: String,
    pub delta: f64,
    pub config: LoopConfig,
}

/// Runs every scenario, aborting on the first failure (no partial tables).
pub fn scenario_table(runs: &[ScenarioRun]) -> Result<Metrics, SimError> {
    let mut entries = Vec::with_capacity(runs.len());
    for run in runs {
        let trace = simulate(&run.config)?;
        entries.push(ScenarioMetric {
            controller: run.controller_label.clone(),
            delta: run.delta,
            rms_error: rms_error(&trace)?,
        });
    }
    let mut labels: Vec<String> = Vec::new();
    for e in &entries {
        if !labels.contains(&e.controller) {
            labels.push(e.controller.clone());
        }
    }
    let spread = labels
        .into_iter()
        .map(|label| {
            let vals: Vec<f64> = entries
                .iter()
                .filter(|e| e.controller == label)
                .map(|e| e.rms_error)
                .collect();
            ControllerSpread { controller: label, std_dev: sample_std_dev(&vals) }
        })
        .collect();
    Ok(Metrics { entries, spread })
}

pub fn sample_std_dev(vals: &[f64]) -> f64 {
    if vals.len() < 2 {
        return 0.0;
    }
    let mean = vals.iter().sum::<f64>() / vals.len() as f64;
    let var = vals.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (vals.len() - 1) as f64;
    var.sqrt()
}

/// One row per sample: time, plant states, controller states, inputs,
/// outputs, reference, and physical temperatures when available.
pub fn trace_to_csv(trace: &SimulationTrace) -> String {
    let n = trace.x_plant.first().map_or(0, |x| x.len());
    let n_c = trace.x_ctrl.first().map_or(0, |x| x.len());
    let m = trace.u.first().map_or(0, |u| u.len());
    let mut header = vec!["t".to_string()];
    header.extend((1..=n).map(|i| format!("x{i}")));
    header.extend((1..=n_c).map(|i| format!("xc{i}")));
    header.extend((1..=m).map(|i| format!("u{i}")));
    header.extend((1..=m).map(|i| format!("y{i}")));
    header.push("ref".to_string());
    if trace.physical.is_some() {
        header.push("T_cold_out".to_string());
        header.push("T_hot_out".to_string());
    }
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for k in 0..trace.t.len() {
        let mut row: Vec<String> = vec![format!("{:.9e}", trace.t[k])];
        row.extend(trace.x_plant[k].iter().map(|v| format!("{v:.9e}")));
        row.extend(trace.x_ctrl[k].iter().map(|v| format!("{v:.9e}")));
        row.extend(trace.u[k].iter().map(|v| format!("{v:.9e}")));
        row.extend(trace.y[k].iter().map(|v| format!("{v:.9e}")));
        row.push(format!("{:.9e}", trace.reference[k]));
        if let Some(phys) = &trace.physical {
            row.push(format!("{:.9e}", phys[k][0]));
            row.push(format!("{:.9e}", phys[k][1]));
        }
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Deterministic band-limited test signals: a seeded sum of sinusoids.
pub mod signals {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// `len` samples at spacing `dt` of a zero-mean sum of `num_tones`
    /// sinusoids with frequencies up to `max_freq` rad/s.
    pub fn band_limited(seed: u64, len: usize, dt: f64, num_tones: usize, max_freq: f64, amplitude: f64) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tones: Vec<(f64, f64, f64)> = (0..num_tones)
            .map(|_| {
                let w = rng.gen_range(0.05 * max_freq..=max_freq);
                let phase = rng.gen_range(0.0..std::f64::consts::TAU);
                let amp = rng.gen_range(0.2..=1.0);
                (w, phase, amp)
            })
            .collect();
        let norm: f64 = tones.iter().map(|(_, _, a)| a).sum();
        (0..len)
            .map(|k| {
                let t = k as f64 * dt;
                amplitude
                    * tones
                        .iter()
                        .map(|(w, p, a)| a * (w * t + p).sin())
                        .sum::<f64>()
                    / norm.max(1e-12)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lpvsys::GeneralizedVertex;
    use crate::matcore::Matrix;
    use approx::assert_abs_diff_eq;

    fn single_vertex_model(a: f64) -> PolytopicModel {
        PolytopicModel::new(vec![GeneralizedVertex::from_conic_channel(
            Matrix::scalar(a),
            Matrix::scalar(1.0),
            Matrix::scalar(1.0),
        )])
        .unwrap()
    }

    fn zero_controller() -> PolytopicController {
        PolytopicController::new(vec![VertexController {
            a_c: Matrix::scalar(-1.0),
            b_c: Matrix::scalar(0.0),
            c_c: Matrix::scalar(0.0),
        }])
        .unwrap()
    }

    #[test]
    fn open_loop_scalar_decay_matches_exponential() {
        let view = single_vertex_model(-1.0).conic_channel();
        let schedule = SchedulingSignal::ConstantVertex { index: 0, num_vertices: 1 };
        let dt = 1e-3;
        let len = 1001; // exactly t = 1
        let u = vec![vec![0.0]; len];
        let (states, _, _) = simulate_channel(&view, &schedule, &u, dt, &[1.0]).unwrap();
        let x_end = states.last().unwrap()[0];
        assert!((x_end - (-1.0f64).exp()).abs() <= 1e-8, "x(1) = {x_end}");
    }

    #[test]
    fn closed_loop_zero_everything_is_zero() {
        let config = LoopConfig {
            plant: single_vertex_model(-1.0),
            controller: zero_controller(),
            schedule: SchedulingSignal::ConstantVertex { index: 0, num_vertices: 1 },
            reference: Reference::Zero,
            t_end: 1.0,
            dt: 1e-2,
            x_plant0: vec![0.0],
            x_ctrl0: vec![0.0],
            frame: None,
        };
        let trace = simulate(&config).unwrap();
        assert!(trace.x_plant.iter().all(|x| x[0] == 0.0));
        assert!(trace.u.iter().all(|u| u[0] == 0.0));
        assert!(trace.y.iter().all(|y| y[0] == 0.0));
    }

    #[test]
    fn rk4_order_via_richardson() {
        // stiff-ish diagonal test system integrated open loop from x0
        let v = GeneralizedVertex::from_conic_channel(
            Matrix::diag(&[-1.0, -80.0]),
            Matrix::from_rows(&[&[1.0], &[1.0]]),
            Matrix::from_rows(&[&[1.0, 0.0]]),
        );
        let model = PolytopicModel::new(vec![v]).unwrap();
        let view = model.conic_channel();
        let schedule = SchedulingSignal::ConstantVertex { index: 0, num_vertices: 1 };
        let t_end = 1.0;
        let x0 = [1.0, 1.0];
        let exact = [(-1.0f64 * t_end).exp(), (-80.0f64 * t_end).exp()];
        let err_at = |dt: f64| -> f64 {
            let len = (t_end / dt).round() as usize + 1;
            let u = vec![vec![0.0]; len];
            let (states, _, _) = simulate_channel(&view, &schedule, &u, dt, &x0).unwrap();
            let xf = states.last().unwrap();
            ((xf[0] - exact[0]).powi(2) + (xf[1] - exact[1]).powi(2)).sqrt()
        };
        let e1 = err_at(2e-3);
        let e2 = err_at(1e-3);
        let ratio = e1 / e2;
        assert!(
            (12.0..=20.0).contains(&ratio),
            "Richardson ratio {ratio} (errors {e1:.3e}, {e2:.3e})"
        );
    }

    #[test]
    fn divergence_detected_for_unstable_loop() {
        let config = LoopConfig {
            plant: single_vertex_model(1.0), // unstable, no control authority
            controller: zero_controller(),
            schedule: SchedulingSignal::ConstantVertex { index: 0, num_vertices: 1 },
            reference: Reference::Zero,
            t_end: 60.0,
            dt: 1e-2,
            x_plant0: vec![1.0],
            x_ctrl0: vec![0.0],
            frame: None,
        };
        assert!(matches!(simulate(&config), Err(SimError::Divergence(_))));
    }

    #[test]
    fn trace_determinism() {
        let config = LoopConfig {
            plant: single_vertex_model(-1.0),
            controller: PolytopicController::new(vec![VertexController {
                a_c: Matrix::scalar(-2.0),
                b_c: Matrix::scalar(1.0),
                c_c: Matrix::scalar(0.5),
            }])
            .unwrap(),
            schedule: SchedulingSignal::ConstantVertex { index: 0, num_vertices: 1 },
            reference: Reference::SmoothStep { initial: -1.0, final_value: 0.0, t_f: 2.0 },
            t_end: 5.0,
            dt: 1e-3,
            x_plant0: vec![-1.0],
            x_ctrl0: vec![0.0],
            frame: None,
        };
        let t1 = simulate(&config).unwrap();
        let t2 = simulate(&config).unwrap();
        assert_eq!(t1.x_plant, t2.x_plant);
        assert_eq!(trace_to_csv(&t1), trace_to_csv(&t2));
    }

    #[test]
    fn rms_cases() {
        let mk = |y_vals: Vec<f64>| SimulationTrace {
            t: (0..y_vals.len()).map(|k| k as f64).collect(),
            x_plant: vec![vec![]; y_vals.len()],
            x_ctrl: vec![vec![]; y_vals.len()],
            u: vec![vec![0.0]; y_vals.len()],
            y: y_vals.iter().map(|v| vec![*v]).collect(),
            reference: vec![0.0; y_vals.len()],
            physical: None,
            feedback_convention: FEEDBACK_NOTE,
        };
        assert_abs_diff_eq!(rms_error(&mk(vec![0.0; 10])).unwrap(), 0.0);
        assert_abs_diff_eq!(rms_error(&mk(vec![2.0; 7])).unwrap(), 2.0, epsilon = 1e-12);
        // sinusoid over whole periods: RMS = amplitude / sqrt(2)
        let len = 1000;
        let amp = 3.0;
        let vals: Vec<f64> = (0..len)
            .map(|k| amp * (std::f64::consts::TAU * 4.0 * k as f64 / len as f64).sin())
            .collect();
        let rms = rms_error(&mk(vals)).unwrap();
        assert!((rms - amp / 2.0f64.sqrt()).abs() <= 0.01 * amp);
        let empty = SimulationTrace {
            t: vec![],
            x_plant: vec![],
            x_ctrl: vec![],
            u: vec![],
            y: vec![],
            reference: vec![],
            physical: None,
            feedback_convention: FEEDBACK_NOTE,
        };
        assert!(matches!(rms_error(&empty), Err(SimError::EmptyTrace)));
    }

    #[test]
    fn scenario_table_identical_runs_zero_spread() {
        let config = LoopConfig {
            plant: single_vertex_model(-1.0),
            controller: zero_controller(),
            schedule: SchedulingSignal::ConstantVertex { index: 0, num_vertices: 1 },
            reference: Reference::Zero,
            t_end: 1.0,
            dt: 1e-2,
            x_plant0: vec![1.0],
            x_ctrl0: vec![0.0],
            frame: None,
        };
        let runs = vec![
            ScenarioRun { controller_label: "open".into(), delta: 0.0, config: config.clone() },
            ScenarioRun { controller_label: "open".into(), delta: 0.5, config: config.clone() },
        ];
        let metrics = scenario_table(&runs).unwrap();
        assert_eq!(metrics.entries.len(), 2);
        assert_abs_diff_eq!(metrics.spread[0].std_dev, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn scenario_table_aborts_on_divergence() {
        let bad = LoopConfig {
            plant: single_vertex_model(1.0),
            controller: zero_controller(),
            schedule: SchedulingSignal::ConstantVertex { index: 0, num_vertices: 1 },
            reference: Reference::Zero,
            t_end: 60.0,
            dt: 1e-2,
            x_plant0: vec![1.0],
            x_ctrl0: vec![0.0],
            frame: None,
        };
        let runs = vec![ScenarioRun { controller_label: "bad".into(), delta: 0.0, config: bad }];
        assert!(matches!(scenario_table(&runs), Err(SimError::Divergence(_))));
    }

    #[test]
    fn interpolation_reduces_to_vertex_at_unit_weight() {
        let v1 = VertexController {
            a_c: Matrix::scalar(-1.0),
            b_c: Matrix::scalar(1.0),
            c_c: Matrix::scalar(2.0),
        };
        let v2 = VertexController {
            a_c: Matrix::scalar(-3.0),
            b_c: Matrix::scalar(0.5),
            c_c: Matrix::scalar(-1.0),
        };
        let ctrl = interpolate_hinf(&[v1, v2]).unwrap();
        let (a, _, c) = ctrl.at(&[1.0, 0.0]);
        assert_abs_diff_eq!(a[(0, 0)], -1.0);
        assert_abs_diff_eq!(c[(0, 0)], 2.0);
        let (a, b, _) = ctrl.at(&[0.5, 0.5]);
        assert_abs_diff_eq!(a[(0, 0)], -2.0);
        assert_abs_diff_eq!(b[(0, 0)], 0.75);
    }

    #[test]
    fn band_limited_signal_deterministic() {
        let s1 = signals::band_limited(42, 100, 0.01, 5, 10.0, 1.0);
        let s2 = signals::band_limited(42, 100, 0.01, 5, 10.0, 1.0);
        assert_eq!(s1, s2);
        let s3 = signals::band_limited(43, 100, 0.01, 5, 10.0, 1.0);
        assert_ne!(s1, s3);
        assert!(s1.iter().all(|v| v.abs() <= 1.0 + 1e-9));
    }
}
