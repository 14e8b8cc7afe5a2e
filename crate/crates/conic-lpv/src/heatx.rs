//! Counter-flow heat-exchanger study plant: linearized two-tank thermal
//! model with time-varying flow rates, shifted coordinates that place the
//! regulation target at the origin, a two-vertex polytopic embedding, and
//! the rank-one uncertainty structure used for robust design.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lpvsys::{GeneralizedVertex, PolytopicModel, SchedulingSignal};
use crate::matcore::{self, Matrix};

/// Sign given to the inlet-temperature terms in `B_p` and `W`.
///
/// `InletHeats` is the energy-balance convention (warmer inlet raises the
/// tank temperature). `InletCools` negates both input vectors; it matches
/// some printed statements of this model but makes inlet temperatures cool
/// the tanks, so it is exposed for comparison rather than used by default.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignConvention {
    InletHeats,
    InletCools,
}

/// Physical constants and operating points of the heat-exchanger study.
/// Defaults are the published tabletop values; temperatures in Celsius,
/// flows in m^3/s, volumes in m^3.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HeatExchangerParams {
    /// heat transfer coefficient, J/(s m^2 C)
    pub heat_transfer_coeff: f64,
    /// exchange area, m^2
    pub area: f64,
    pub cold_flow_initial: f64,
    pub cold_flow_final: f64,
    pub hot_flow_initial: f64,
    pub hot_flow_final: f64,
    pub cold_density: f64,
    pub hot_density: f64,
    pub cold_specific_heat: f64,
    pub hot_specific_heat: f64,
    pub cold_volume: f64,
    pub hot_volume: f64,
    /// cold outlet temperature at the start of the transition
    pub cold_outlet_initial: f64,
    /// cold outlet temperature to regulate to after the transition
    pub cold_outlet_final: f64,
    /// constant cold inlet temperature (not part of the published table;
    /// defaults to the initial outlet so the study starts from rest)
    pub cold_inlet: f64,
    /// flow transition duration, s
    pub transition_time: f64,
    pub sign_convention: SignConvention,
}

impl Default for HeatExchangerParams {
    fn default() -> Self {
        HeatExchangerParams {
            heat_transfer_coeff: 2411.8,
            area: 48.4,
            cold_flow_initial: 0.04,
            cold_flow_final: 0.02,
            hot_flow_initial: 0.10,
            hot_flow_final: 0.06,
            cold_density: 3.50e3,
            hot_density: 3.72e3,
            cold_specific_heat: 481.8,
            hot_specific_heat: 499.0,
            cold_volume: 15.8e-2,
            hot_volume: 57.8e-2,
            cold_outlet_initial: 9.3,
            cold_outlet_final: 25.0,
            cold_inlet: 9.3,
            transition_time: 20.0,
        sign_convention: SignConvention::InletHeats,
        }
    }
}

#[derive(Debug, Error)]
pub enum HeatxError {
    #[error("flow rates must be positive (got v_c = {0}, v_h = {1})")]
    NonPositiveFlow(f64, f64),
    #[error("shifted-coordinate system matrix is singular")]
    SingularShift,
    #[error(transparent)]
    Mat(#[from] matcore::MatError),
    #[error(transparent)]
    Model(#[from] crate::lpvsys::ModelError),
}

/// Cubic blend between `x_i` and `x_f` over `[0, t_f]`; constant outside,
/// continuously differentiable at both joins.
pub fn smooth_step(t: f64, x_i: f64, x_f: f64, t_f: f64) -> f64 {
    assert!(t_f > 0.0, "transition time must be positive");
    if t <= 0.0 {
        x_i
    } else if t >= t_f {
        x_f
    } else {
        let tau = t / t_f;
        x_i + (x_f - x_i) * (3.0 * tau * tau - 2.0 * tau * tau * tau)
    }
}

/// Plant matrices at fixed flow rates.
#[derive(Clone, Debug)]
pub struct PlantMatrices {
    /// 2x2 state matrix over [cold outlet, hot outlet]
    pub a_p: Matrix,
    /// 2x1 input vector for the hot inlet temperature (the control)
    pub b_p: Matrix,
    /// 2x1 input vector for the constant cold inlet temperature
    pub dist_w: Matrix,
}

impl HeatExchangerParams {
    pub fn thermal_rate_cold(&self) -> f64 {
        self.heat_transfer_coeff * self.area
            / (self.cold_specific_heat * self.cold_density * self.cold_volume)
    }

    pub fn thermal_rate_hot(&self) -> f64 {
        self.heat_transfer_coeff * self.area
            / (self.hot_specific_heat * self.hot_density * self.hot_volume)
    }

    pub fn cold_flow(&self, t: f64) -> f64 {
        smooth_step(t, self.cold_flow_initial, self.cold_flow_final, self.transition_time)
    }

    pub fn hot_flow(&self, t: f64) -> f64 {
        smooth_step(t, self.hot_flow_initial, self.hot_flow_final, self.transition_time)
    }
}

/// Builds `(A_p, B_p, W)` at the given flow rates.
pub fn build_plant_matrices(
    params: &HeatExchangerParams,
    v_c: f64,
    v_h: f64,
) -> Result<PlantMatrices, HeatxError> {
    if v_c <= 0.0 || v_h <= 0.0 {
        return Err(HeatxError::NonPositiveFlow(v_c, v_h));
    }
    let alpha_c = params.thermal_rate_cold();
    let alpha_h = params.thermal_rate_hot();
    let fc = v_c / params.cold_volume;
    let fh = v_h / params.hot_volume;
    let a_p = Matrix::from_rows(&[
        &[-fc - alpha_c, alpha_c],
        &[alpha_h, -fh - alpha_h],
    ]);
    let sign = match params.sign_convention {
        SignConvention::InletHeats => 1.0,
        SignConvention::InletCools => -1.0,
    };
    let b_p = Matrix::from_rows(&[&[0.0], &[sign * fh]]);
    let dist_w = Matrix::from_rows(&[&[sign * fc], &[0.0]]);
    Ok(PlantMatrices { a_p, b_p, dist_w })
}

/// Shifted coordinate frame that moves the regulation target to the origin:
/// `x = T + eta + nu*[1;1]`, `u = T_h_in + nu`, `y = x_1`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ShiftedFrame {
    /// state offset, 2 entries
    pub eta: Vec<f64>,
    /// scalar input/output offset
    pub offset_nu: f64,
}

impl ShiftedFrame {
    pub fn physical_from_state(&self, x: &[f64]) -> [f64; 2] {
        [
            x[0] - self.eta[0] - self.offset_nu,
            x[1] - self.eta[1] - self.offset_nu,
        ]
    }

    pub fn state_from_physical(&self, temps: &[f64; 2]) -> Vec<f64> {
        vec![
            temps[0] + self.eta[0] + self.offset_nu,
            temps[1] + self.eta[1] + self.offset_nu,
        ]
    }

    pub fn physical_input(&self, u: f64) -> f64 {
        u - self.offset_nu
    }

    /// Shifted output value corresponding to a physical cold-outlet target.
    pub fn shifted_reference(&self, physical_target: f64) -> f64 {
        physical_target + self.eta[0] + self.offset_nu
    }
}

/// Solves for the shift `(eta, nu)` that makes the shifted system
/// homogeneous with `y = 0` at the regulated cold-outlet temperature.
///
/// `eta` solves `(A_p + W [1 0]) eta = W (T_c_in - T_c_out_final)`; the
/// scalar offset is `nu = -eta_1 - T_c_out_final`, which pins the shifted
/// equilibrium exactly at the physical target.
pub fn change_of_variables(
    params: &HeatExchangerParams,
    a_p: &Matrix,
    dist_w: &Matrix,
) -> Result<ShiftedFrame, HeatxError> {
    let mut shift = a_p.clone();
    // A_p + W * [1 0]
    shift[(0, 0)] += dist_w[(0, 0)];
    shift[(1, 0)] += dist_w[(1, 0)];
    let rhs = dist_w.scale(params.cold_inlet - params.cold_outlet_final);
    let eta = matcore::solve_linear(&shift, &rhs).map_err(|_| HeatxError::SingularShift)?;
    let offset_nu = -eta[(0, 0)] - params.cold_outlet_final;
    Ok(ShiftedFrame {
        eta: vec![eta[(0, 0)], eta[(1, 0)]],
        offset_nu,
    })
}

/// Rank-one perturbation of the thermal coupling: `A_delta = delta *
/// [[a_c, -a_c], [-a_h, a_h]]` with the per-stream thermal rates.
pub fn uncertainty_matrix(params: &HeatExchangerParams, delta: f64) -> Matrix {
    let ac = params.thermal_rate_cold();
    let ah = params.thermal_rate_hot();
    Matrix::from_rows(&[&[ac, -ac], &[-ah, ah]]).scale(delta)
}

/// Everything the analysis/synthesis/simulation pipeline needs for one
/// uncertainty preset.
#[derive(Clone, Debug)]
pub struct HeatxScenario {
    /// two-vertex polytopic model with the uncertainty folded into `A`
    pub model: PolytopicModel,
    pub schedule: SchedulingSignal,
    pub frame: ShiftedFrame,
    pub delta: f64,
    /// the uncertainty block itself (`q = Delta p`)
    pub delta_matrix: Matrix,
    pub params: HeatExchangerParams,
}

impl HeatxScenario {
    /// Shifted-coordinate state for the pre-transition rest condition
    /// (both tanks at the initial cold-outlet temperature).
    pub fn initial_state(&self) -> Vec<f64> {
        let t0 = self.params.cold_outlet_initial;
        self.frame.state_from_physical(&[t0, t0])
    }

    /// Physical cold-outlet reference at time `t`.
    pub fn physical_reference(&self, t: f64) -> f64 {
        smooth_step(
            t,
            self.params.cold_outlet_initial,
            self.params.cold_outlet_final,
            self.params.transition_time,
        )
    }
}

/// Uncertainty presets exercised by the study.
pub fn delta_presets() -> [f64; 3] {
    [0.0, 0.5, -1.0]
}

/// Builds the two-vertex polytopic model for uncertainty level `delta`.
///
/// Vertex 1 evaluates the plant at the initial flows, vertex 2 at the final
/// flows; the uncertainty is folded into each vertex `A`. The robust-design
/// channels use identity input/output weights on the full state, exposed
/// both as the uncertainty channel and as the synthesis performance channel.
pub fn build_polytopic_model(
    params: &HeatExchangerParams,
    delta: f64,
) -> Result<HeatxScenario, HeatxError> {
    let p1 = build_plant_matrices(params, params.cold_flow_initial, params.hot_flow_initial)?;
    let p2 = build_plant_matrices(params, params.cold_flow_final, params.hot_flow_final)?;
    let a_delta = uncertainty_matrix(params, delta);
    let c2 = Matrix::from_rows(&[&[1.0, 0.0]]);
    let eye = Matrix::identity(2);

    let make_vertex = |p: &PlantMatrices| -> GeneralizedVertex {
        let mut v = GeneralizedVertex::from_conic_channel(
            &p.a_p + &a_delta,
            p.b_p.clone(),
            c2.clone(),
        );
        // uncertainty loop q -> p and the matching synthesis channel w -> z
        v.b1 = eye.clone();
        v.b3 = eye.clone();
        v.c1 = eye.clone();
        v.c3 = eye.clone();
        v.d11 = Matrix::zeros(2, 2);
        v.d12 = Matrix::zeros(2, 1);
        v.d13 = Matrix::zeros(2, 2);
        v.d21 = Matrix::zeros(1, 2);
        v.d31 = Matrix::zeros(2, 2);
        v.d32 = Matrix::zeros(2, 1);
        v.d33 = Matrix::zeros(2, 2);
        v
    };

    let model = PolytopicModel::new(vec![make_vertex(&p1), make_vertex(&p2)])?;
    // the change of variables is evaluated at the final flows, the
    // regulation operating point after the transition
    let frame = change_of_variables(params, &p2.a_p, &p2.dist_w)?;
    Ok(HeatxScenario {
        model,
        schedule: SchedulingSignal::SmoothStepPair { t_f: params.transition_time },
        frame,
        delta,
        delta_matrix: a_delta,
        params: params.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn smooth_step_branches() {
        assert_abs_diff_eq!(smooth_step(0.0, 2.0, 5.0, 20.0), 2.0);
        assert_abs_diff_eq!(smooth_step(-3.0, 2.0, 5.0, 20.0), 2.0);
        assert_abs_diff_eq!(smooth_step(20.0, 2.0, 5.0, 20.0), 5.0);
        assert_abs_diff_eq!(smooth_step(40.0, 2.0, 5.0, 20.0), 5.0);
        assert_abs_diff_eq!(smooth_step(10.0, 2.0, 5.0, 20.0), 3.5, epsilon = 1e-15);
    }

    #[test]
    fn smooth_step_is_c1_at_joins() {
        let d = 1e-7;
        let slope_start = (smooth_step(d, 2.0, 5.0, 20.0) - 2.0) / d;
        let slope_end = (5.0 - smooth_step(20.0 - d, 2.0, 5.0, 20.0)) / d;
        assert!(slope_start.abs() < 1e-5);
        assert!(slope_end.abs() < 1e-5);
    }

    #[test]
    fn plant_matrices_match_hand_arithmetic() {
        let params = HeatExchangerParams::default();
        let p = build_plant_matrices(&params, 0.04, 0.10).unwrap();
        // pocket-calculator route, spelled out step by step
        let ua = 2411.8 * 48.4;
        let cold_capacity = 481.8 * 3.50e3 * 15.8e-2;
        let hot_capacity = 499.0 * 3.72e3 * 57.8e-2;
        let alpha_c = ua / cold_capacity;
        let alpha_h = ua / hot_capacity;
        assert_abs_diff_eq!(p.a_p[(0, 1)], alpha_c, epsilon = 1e-12);
        assert_abs_diff_eq!(p.a_p[(1, 0)], alpha_h, epsilon = 1e-12);
        assert_abs_diff_eq!(p.a_p[(0, 0)], -0.04 / 0.158 - alpha_c, epsilon = 1e-12);
        assert_abs_diff_eq!(p.a_p[(1, 1)], -0.10 / 0.578 - alpha_h, epsilon = 1e-12);
        // magnitude spot values
        assert_abs_diff_eq!(alpha_c, 0.438122, epsilon = 1e-6);
        assert_abs_diff_eq!(alpha_h, 0.108797, epsilon = 1e-6);
        assert_abs_diff_eq!(p.b_p[(1, 0)], 0.10 / 0.578, epsilon = 1e-12);
        assert_abs_diff_eq!(p.dist_w[(0, 0)], 0.04 / 0.158, epsilon = 1e-12);
    }

    #[test]
    fn inverted_convention_negates_inputs() {
        let mut params = HeatExchangerParams::default();
        params.sign_convention = SignConvention::InletCools;
        let p = build_plant_matrices(&params, 0.04, 0.10).unwrap();
        assert_abs_diff_eq!(p.b_p[(1, 0)], -0.10 / 0.578, epsilon = 1e-12);
        assert_abs_diff_eq!(p.dist_w[(0, 0)], -0.04 / 0.158, epsilon = 1e-12);
        // the state matrix is unaffected
        let nominal = build_plant_matrices(&HeatExchangerParams::default(), 0.04, 0.10).unwrap();
        assert!((&p.a_p - &nominal.a_p).norm_max() == 0.0);
    }

    #[test]
    fn doubling_cold_volume_halves_first_row() {
        let params = HeatExchangerParams::default();
        let mut doubled = params.clone();
        doubled.cold_volume *= 2.0;
        let p = build_plant_matrices(&params, 0.04, 0.10).unwrap();
        let pd = build_plant_matrices(&doubled, 0.04, 0.10).unwrap();
        assert_abs_diff_eq!(pd.a_p[(0, 0)], 0.5 * p.a_p[(0, 0)], epsilon = 1e-12);
        assert_abs_diff_eq!(pd.a_p[(0, 1)], 0.5 * p.a_p[(0, 1)], epsilon = 1e-12);
        assert_abs_diff_eq!(pd.dist_w[(0, 0)], 0.5 * p.dist_w[(0, 0)], epsilon = 1e-12);
    }

    #[test]
    fn vanishing_hot_flow_rejected_and_limit() {
        let params = HeatExchangerParams::default();
        assert!(build_plant_matrices(&params, 0.04, 0.0).is_err());
        let p = build_plant_matrices(&params, 0.04, 1e-12).unwrap();
        assert!(p.b_p[(1, 0)].abs() < 1e-11);
    }

    #[test]
    fn change_of_variables_zero_rhs() {
        let mut params = HeatExchangerParams::default();
        params.cold_inlet = params.cold_outlet_final;
        let p = build_plant_matrices(&params, params.cold_flow_final, params.hot_flow_final).unwrap();
        let frame = change_of_variables(&params, &p.a_p, &p.dist_w).unwrap();
        assert_abs_diff_eq!(frame.eta[0], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(frame.eta[1], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(frame.offset_nu, -25.0, epsilon = 1e-12);
    }

    #[test]
    fn change_of_variables_solve_residual() {
        let params = HeatExchangerParams::default();
        let p = build_plant_matrices(&params, params.cold_flow_final, params.hot_flow_final).unwrap();
        let frame = change_of_variables(&params, &p.a_p, &p.dist_w).unwrap();
        let eta = Matrix::column(&frame.eta);
        let mut shift = p.a_p.clone();
        shift[(0, 0)] += p.dist_w[(0, 0)];
        shift[(1, 0)] += p.dist_w[(1, 0)];
        let rhs = p.dist_w.scale(params.cold_inlet - params.cold_outlet_final);
        let res = &shift.matmul(&eta) - &rhs;
        assert!(res.norm_max() <= 1e-10);
    }

    #[test]
    fn shifted_equilibrium_regulates_target() {
        // physical equilibrium implied by the shift: A_p T + B_p u + W T_in = 0
        // at T = -eta - nu*1, u = -nu, with the cold outlet at the target
        let params = HeatExchangerParams::default();
        let p = build_plant_matrices(&params, params.cold_flow_final, params.hot_flow_final).unwrap();
        let frame = change_of_variables(&params, &p.a_p, &p.dist_w).unwrap();
        let t_bar = [
            -frame.eta[0] - frame.offset_nu,
            -frame.eta[1] - frame.offset_nu,
        ];
        assert_abs_diff_eq!(t_bar[0], params.cold_outlet_final, epsilon = 1e-9);
        let u_bar = -frame.offset_nu;
        let resid = [
            p.a_p[(0, 0)] * t_bar[0] + p.a_p[(0, 1)] * t_bar[1]
                + p.b_p[(0, 0)] * u_bar
                + p.dist_w[(0, 0)] * params.cold_inlet,
            p.a_p[(1, 0)] * t_bar[0] + p.a_p[(1, 1)] * t_bar[1]
                + p.b_p[(1, 0)] * u_bar
                + p.dist_w[(1, 0)] * params.cold_inlet,
        ];
        assert!(resid[0].abs() <= 1e-9);
        assert!(resid[1].abs() <= 1e-9);
        // and the hot side sits warmer than the cold side
        assert!(t_bar[1] > t_bar[0]);
    }

    #[test]
    fn uncertainty_is_rank_one_and_linear() {
        let params = HeatExchangerParams::default();
        let d1 = uncertainty_matrix(&params, 0.5);
        let d2 = uncertainty_matrix(&params, -1.0);
        // rank one: determinant is zero
        let det = d1[(0, 0)] * d1[(1, 1)] - d1[(0, 1)] * d1[(1, 0)];
        assert_abs_diff_eq!(det, 0.0, epsilon = 1e-12);
        let s1 = matcore::sigma_max(&d1).unwrap();
        let s2 = matcore::sigma_max(&d2).unwrap();
        assert_abs_diff_eq!(s2, 2.0 * s1, epsilon = 1e-9);
        assert_abs_diff_eq!(matcore::sigma_max(&uncertainty_matrix(&params, 0.0)).unwrap(), 0.0);
    }

    #[test]
    fn model_vertices_match_plant_matrices() {
        let params = HeatExchangerParams::default();
        let scen = build_polytopic_model(&params, 0.0).unwrap();
        assert!(scen.model.validate().is_ok());
        let p1 = build_plant_matrices(&params, 0.04, 0.10).unwrap();
        let v = scen.model.evaluate(&[1.0, 0.0]).unwrap();
        assert!((&v.a - &p1.a_p).norm_max() <= 1e-15);
        assert!((&v.b2 - &p1.b_p).norm_max() <= 1e-15);
    }

    #[test]
    fn vertices_are_hurwitz_for_table_parameters() {
        let params = HeatExchangerParams::default();
        for delta in delta_presets() {
            let scen = build_polytopic_model(&params, delta).unwrap();
            for v in &scen.model.vertices {
                assert!(
                    matcore::is_hurwitz(&v.a).unwrap(),
                    "vertex not Hurwitz at delta = {delta}"
                );
            }
        }
    }

    #[test]
    fn interpolated_plant_vs_frozen_flows_gap_reported() {
        // the polytopic interpolation only approximates the frozen-flow
        // plant; the gap over the transition is small but nonzero
        let params = HeatExchangerParams::default();
        let scen = build_polytopic_model(&params, 0.0).unwrap();
        let mut max_gap = 0.0f64;
        for k in 0..=100 {
            let t = params.transition_time * k as f64 / 100.0;
            let s = scen.schedule.sample(t);
            let interp = scen.model.evaluate(&s).unwrap();
            let frozen =
                build_plant_matrices(&params, params.cold_flow(t), params.hot_flow(t)).unwrap();
            max_gap = max_gap.max((&interp.a - &frozen.a_p).norm_max());
            max_gap = max_gap.max((&interp.b2 - &frozen.b_p).norm_max());
        }
        // the flow profiles are the same cubic, so here the gap vanishes
        assert!(max_gap <= 1e-12, "gap {max_gap}");
    }
}
