use conic_lpv::conic::{self, ConicSector};
use conic_lpv::heatx;
use conic_lpv::sdp::SolverOptions;
use conic_lpv::sim::{self, LoopConfig, Reference, ScenarioRun};
use conic_lpv::synthesis::{self, HinfOptions};

fn run(gamma_tol: f64, reg: f64, noise: f64, backoff: f64) {
    let params = heatx::HeatExchangerParams::default();
    let opts = SolverOptions::tight();
    let mut max_a_sectors = Vec::new();
    let mut min_r_sectors = Vec::new();
    for delta in heatx::delta_presets() {
        let scen = heatx::build_polytopic_model(&params, delta).unwrap();
        let view = scen.model.conic_channel();
        let (a_star, _) = conic::max_a_given_b(&view, f64::INFINITY, &opts).unwrap();
        let a_used = a_star * (1.0 + backoff);
        let (b_star, _) = conic::min_b_given_a(&view, a_used, &opts).unwrap();
        max_a_sectors.push((a_used, b_star));
        let mr = conic::bounds_min_radius(&view, &opts).unwrap();
        min_r_sectors.push((mr.sector.a, mr.sector.b));
    }
    let union = |sectors: &[(f64, f64)]| {
        sectors.iter().fold((0.0f64, 0.0f64), |(a, b), (sa, sb)| (a.min(*sa), b.max(*sb)))
    };
    let design_max_a = union(&max_a_sectors);
    let design_min_r = union(&min_r_sectors);

    let nominal = heatx::build_polytopic_model(&params, 0.0).unwrap();
    let hinf_opts = HinfOptions { reg_penalty: reg, reg_noise: noise, gamma_tol, ..HinfOptions::default() };
    let designs: Vec<_> = nominal
        .model
        .vertices
        .iter()
        .map(|v| synthesis::hinf_vertex_synthesis(v, &hinf_opts).unwrap())
        .collect();
    let vertex_ctrls: Vec<_> = designs.iter().map(|d| d.controller.clone()).collect();
    let gammas: Vec<f64> = designs.iter().map(|d| d.gamma).collect();

    let mut all = vec![("hinf-interp".to_string(), sim::interpolate_hinf(&vertex_ctrls).unwrap())];
    for (label, s) in [("conic-max-a", design_max_a), ("conic-min-r", design_min_r)] {
        let plant_sector = ConicSector::new(s.0, s.1).unwrap();
        let (a_c, b_c) = synthesis::controller_cone_from_plant(&plant_sector, 1e-3).unwrap();
        match synthesis::conic_projection(&vertex_ctrls, (a_c, b_c), &gammas, &opts) {
            Ok(res) => {
                if synthesis::certify_controller(&res.controller, (a_c, b_c), &opts).is_err() {
                    println!("g_tol={gamma_tol} pen={reg} noise={noise}: {label} certify FAILED");
                    return;
                }
                all.push((label.to_string(), res.controller));
            }
            Err(e) => {
                println!("g_tol={gamma_tol} pen={reg} noise={noise}: {label} projection failed: {e}");
                return;
            }
        }
    }

    let mut runs = Vec::new();
    for (label, ctrl) in &all {
        for delta in heatx::delta_presets() {
            let scen = heatx::build_polytopic_model(&params, delta).unwrap();
            runs.push(ScenarioRun {
                controller_label: label.clone(),
                delta,
                config: LoopConfig {
                    plant: scen.model.clone(),
                    controller: ctrl.clone(),
                    schedule: scen.schedule.clone(),
                    reference: Reference::SmoothStep {
                        initial: scen.frame.shifted_reference(params.cold_outlet_initial),
                        final_value: scen.frame.shifted_reference(params.cold_outlet_final),
                        t_f: params.transition_time,
                    },
                    t_end: 60.0,
                    dt: 2e-3,
                    x_plant0: scen.initial_state(),
                    x_ctrl0: vec![0.0; ctrl.order()],
                    frame: Some(scen.frame.clone()),
                },
            });
        }
    }
    match sim::scenario_table(&runs) {
        Ok(metrics) => {
            let get = |c: &str, d: f64| {
                metrics
                    .entries
                    .iter()
                    .find(|e| e.controller == c && e.delta == d)
                    .map(|e| e.rms_error)
                    .unwrap()
            };
            let sd = |c: &str| {
                metrics.spread.iter().find(|s| s.controller == c).map(|s| s.std_dev).unwrap()
            };
            let ordering_ok = heatx::delta_presets()
                .iter()
                .all(|&d| get("conic-max-a", d) < get("conic-min-r", d));
            println!(
                "g_tol={gamma_tol} pen={reg} noise={noise} backoff={backoff}: maxa<minr {}  spread maxa {:.4} interp {:.4} ratio {:.3}  rms(maxa) {:?}",
                ordering_ok,
                sd("conic-max-a"),
                sd("hinf-interp"),
                sd("conic-max-a") / sd("hinf-interp"),
                heatx::delta_presets().map(|d| (get("conic-max-a", d) * 1e3).round() / 1e3),
            );
        }
        Err(e) => println!("g_tol={gamma_tol} pen={reg} noise={noise}: simulation failed: {e}"),
    }
}

fn main() {
    for pen in [0.1, 0.2] {
        for noise in [0.005, 0.01, 0.02, 0.05, 0.1] {
            run(0.05, pen, noise, 0.02);
        }
    }
}
