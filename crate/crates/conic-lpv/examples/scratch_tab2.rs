use conic_lpv::conic::{self, CertifyForm, ConicSector};
use conic_lpv::heatx;
use conic_lpv::sdp::SolverOptions;

fn main() {
    let params = heatx::HeatExchangerParams::default();
    let opts = SolverOptions::tight();
    for delta in heatx::delta_presets() {
        let scen = heatx::build_polytopic_model(&params, delta).unwrap();
        let view = scen.model.conic_channel();
        let t0 = std::time::Instant::now();
        let (a_star, _) = conic::max_a_given_b(&view, f64::INFINITY, &opts).unwrap();
        let (b_star, _) = conic::min_b_given_a(&view, a_star, &opts).unwrap();
        let t1 = t0.elapsed();
        let t0 = std::time::Instant::now();
        let mr = conic::bounds_min_radius(&view, &opts).unwrap();
        let t2 = t0.elapsed();
        println!(
            "delta={delta:>4}: max-a sector [{a_star:.4}, {b_star:.3}] ({t1:.1?})  min-r sector [{:.4}, {:.4}] c={:.4} r={:.4} ({t2:.1?})",
            mr.sector.a, mr.sector.b, mr.centre, mr.sector.radius()
        );
        // sanity: certify the max-a sector through the direct form too
        let s = ConicSector::new(a_star, b_star).unwrap();
        let ok = conic::certify_cone(&view, &s, CertifyForm::Auto, &opts).is_ok();
        println!("          re-certify [a*, b*]: {ok}");
        let sigma = conic_lpv::matcore::sigma_max(&scen.delta_matrix).unwrap();
        println!("          sigma_max(A_delta) = {sigma:.4}");
    }
}
