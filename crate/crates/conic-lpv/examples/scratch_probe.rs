use conic_lpv::conic::{self, CertifyForm, ConicSector};
use conic_lpv::heatx;
use conic_lpv::sdp::SolverOptions;

fn main() {
    let params = heatx::HeatExchangerParams::default();
    let opts = SolverOptions::tight();
    let scen = heatx::build_polytopic_model(&params, 0.0).unwrap();
    let view = scen.model.conic_channel();

    // probe unbounded sectors at candidate lower bounds
    for a in [-0.03, -0.04, -0.0448, -0.05, -0.06, -0.065, -0.07, -0.08, -0.0856, -0.09] {
        let sector = ConicSector { a, b: f64::INFINITY };
        let ok = conic::certify_cone(&view, &sector, CertifyForm::Corollary2, &opts).is_ok();
        println!("certify [{a}, inf): {ok}");
    }
    // probe bounded sectors at a = -0.06 (stage-2 question: what b is needed?)
    for b in [0.7, 1.0, 2.0, 5.0, 10.0, 30.0, 98.9, 200.0, 1000.0] {
        let sector = ConicSector { a: -0.06, b };
        let ok = conic::certify_cone(&view, &sector, CertifyForm::Auto, &opts).is_ok();
        println!("certify [-0.06, {b}): {ok}");
    }
    for b in [0.7, 1.0, 2.0, 5.0, 10.0, 30.0, 98.9] {
        let sector = ConicSector { a: -0.0856, b };
        let ok = conic::certify_cone(&view, &sector, CertifyForm::Auto, &opts).is_ok();
        println!("certify [-0.0856, {b}): {ok}");
    }
}
