use conic_lpv::conic::{self, ConicSector};
use conic_lpv::heatx;
use conic_lpv::sdp::SolverOptions;
use conic_lpv::sim::{self, LoopConfig, Reference, ScenarioRun};
use conic_lpv::synthesis::{self, HinfOptions};

fn main() {
    let params = heatx::HeatExchangerParams::default();
    let opts = SolverOptions::tight();
    let backoff = 0.02;

    // analysis across presets, design sector = union (widest)
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
        println!("delta {delta}: max-a [{a_used:.4}, {b_star:.3}], min-r [{:.4}, {:.4}]", mr.sector.a, mr.sector.b);
    }
    let union = |sectors: &[(f64, f64)]| {
        sectors.iter().fold((0.0f64, 0.0f64), |(a, b), (sa, sb)| (a.min(*sa), b.max(*sb)))
    };
    let design_max_a = union(&max_a_sectors);
    let design_min_r = union(&min_r_sectors);
    println!("design sectors: max-a {design_max_a:?}, min-r {design_min_r:?}");

    // verify the design sector certifies on every preset
    for delta in heatx::delta_presets() {
        let scen = heatx::build_polytopic_model(&params, delta).unwrap();
        let view = scen.model.conic_channel();
        for (label, s) in [("max-a", design_max_a), ("min-r", design_min_r)] {
            let sector = ConicSector::new(s.0, s.1).unwrap();
            let ok = conic::certify_cone(&view, &sector, Default::default(), &opts).is_ok();
            println!("  delta {delta} {label} union certified: {ok}");
        }
    }

    // vertex H-infinity designs on the nominal model
    let nominal = heatx::build_polytopic_model(&params, 0.0).unwrap();
    let hinf_opts = HinfOptions::with_reg(0.1);
    let designs: Vec<_> = nominal
        .model
        .vertices
        .iter()
        .map(|v| synthesis::hinf_vertex_synthesis(v, &hinf_opts).unwrap())
        .collect();
    for (i, d) in designs.iter().enumerate() {
        println!(
            "vertex {i}: gamma = {:.4} (achieved {:.4}), L = {:?}, K = {:?}",
            d.gamma, d.gamma_achieved,
            d.controller.b_c.to_nested(),
            d.controller.c_c.to_nested()
        );
    }
    let vertex_ctrls: Vec<_> = designs.iter().map(|d| d.controller.clone()).collect();
    let gammas: Vec<f64> = designs.iter().map(|d| d.gamma).collect();

    // conic projections for both design sectors
    let mut conic_ctrls = Vec::new();
    for (label, s) in [("conic-max-a", design_max_a), ("conic-min-r", design_min_r)] {
        let plant_sector = ConicSector::new(s.0, s.1).unwrap();
        let (a_c, b_c) = synthesis::controller_cone_from_plant(&plant_sector, 1e-3).unwrap();
        let t0 = std::time::Instant::now();
        let res = synthesis::conic_projection(&vertex_ctrls, (a_c, b_c), &gammas, &opts).unwrap();
        println!(
            "{label}: controller cone ({a_c:.4}, {b_c:.3}), nu = {:.4}, solve {:?}",
            res.nu,
            t0.elapsed()
        );
        let cert = synthesis::certify_controller(&res.controller, (a_c, b_c), &opts);
        println!("  certify_controller: {}", cert.is_ok());
        for (i, v) in res.controller.vertices.iter().enumerate() {
            println!("  B_c[{i}] = {:?} (was L = {:?})", v.b_c.to_nested(), vertex_ctrls[i].b_c.to_nested());
        }
        conic_ctrls.push((label, res.controller));
    }

    // closed-loop study
    let interp = sim::interpolate_hinf(&vertex_ctrls).unwrap();
    let mut runs = Vec::new();
    let mut all = vec![("hinf-interp", interp)];
    for (l, c) in conic_ctrls {
        all.push((l, c));
    }
    for (label, ctrl) in &all {
        for delta in heatx::delta_presets() {
            let scen = heatx::build_polytopic_model(&params, delta).unwrap();
            let shifted_ref = Reference::SmoothStep {
                initial: scen.frame.shifted_reference(params.cold_outlet_initial),
                final_value: scen.frame.shifted_reference(params.cold_outlet_final),
                t_f: params.transition_time,
            };
            runs.push(ScenarioRun {
                controller_label: label.to_string(),
                delta,
                config: LoopConfig {
                    plant: scen.model.clone(),
                    controller: ctrl.clone(),
                    schedule: scen.schedule.clone(),
                    reference: shifted_ref,
                    t_end: 60.0,
                    dt: 1e-3,
                    x_plant0: scen.initial_state(),
                    x_ctrl0: vec![0.0; ctrl.order()],
                    frame: Some(scen.frame.clone()),
                },
            });
        }
    }
    let metrics = sim::scenario_table(&runs).unwrap();
    for e in &metrics.entries {
        println!("RMS {} delta={}: {:.4}", e.controller, e.delta, e.rms_error);
    }
    for s in &metrics.spread {
        println!("std-dev {}: {:.4}", s.controller, s.std_dev);
    }
}
