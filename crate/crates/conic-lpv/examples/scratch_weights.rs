use conic_lpv::heatx;
use conic_lpv::sim::{self, LoopConfig, Reference};
use conic_lpv::synthesis::{self, HinfOptions};

fn main() {
    let params = heatx::HeatExchangerParams::default();
    for reg in [0.01, 0.02, 0.03, 0.05, 0.08, 0.1, 0.15] {
        let nominal = heatx::build_polytopic_model(&params, 0.0).unwrap();
        let hinf_opts = HinfOptions::with_reg(reg);
        let designs: Result<Vec<_>, _> = nominal
            .model
            .vertices
            .iter()
            .map(|v| synthesis::hinf_vertex_synthesis(v, &hinf_opts))
            .collect();
        let designs = match designs {
            Ok(d) => d,
            Err(e) => {
                println!("reg {reg}: synthesis failed: {e}");
                continue;
            }
        };
        let gains: Vec<f64> = designs
            .iter()
            .map(|d| d.controller.b_c.norm_max().max(d.controller.c_c.norm_max()))
            .collect();
        let interp = sim::interpolate_hinf(
            &designs.iter().map(|d| d.controller.clone()).collect::<Vec<_>>(),
        )
        .unwrap();
        let mut rms_all = Vec::new();
        let mut ok = true;
        for delta in heatx::delta_presets() {
            let scen = heatx::build_polytopic_model(&params, delta).unwrap();
            let config = LoopConfig {
                plant: scen.model.clone(),
                controller: interp.clone(),
                schedule: scen.schedule.clone(),
                reference: Reference::SmoothStep {
                    initial: scen.frame.shifted_reference(params.cold_outlet_initial),
                    final_value: scen.frame.shifted_reference(params.cold_outlet_final),
                    t_f: params.transition_time,
                },
                t_end: 60.0,
                dt: 1e-3,
                x_plant0: scen.initial_state(),
                x_ctrl0: vec![0.0; interp.order()],
                frame: Some(scen.frame.clone()),
            };
            match sim::simulate(&config).and_then(|t| sim::rms_error(&t)) {
                Ok(rms) => rms_all.push(rms),
                Err(e) => {
                    println!("reg {reg}: delta {delta} -> {e}");
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            println!(
                "reg {reg}: gains {gains:?}, gammas {:?}, interp RMS {:?} stddev {:.4}",
                designs.iter().map(|d| d.gamma).collect::<Vec<_>>(),
                rms_all,
                sim::sample_std_dev(&rms_all)
            );
        }
    }
}
