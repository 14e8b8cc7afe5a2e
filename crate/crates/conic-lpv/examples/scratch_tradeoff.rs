use conic_lpv::conic;
use conic_lpv::heatx;
use conic_lpv::sdp::SolverOptions;

fn main() {
    let params = heatx::HeatExchangerParams::default();
    let opts = SolverOptions::tight();
    for delta in [0.0, -1.0] {
        let scen = heatx::build_polytopic_model(&params, delta).unwrap();
        let view = scen.model.conic_channel();
        let (a_star, _) = conic::max_a_given_b(&view, f64::INFINITY, &opts).unwrap();
        println!("delta = {delta}: stage-1 a* = {a_star:.6}");
        for rho in [0.0, 0.01, 0.02, 0.05, 0.10, 0.20, 0.40, 0.60] {
            let a_used = a_star * (1.0 + rho);
            match conic::min_b_given_a(&view, a_used, &opts) {
                Ok((b_star, _)) => println!("  backoff {rho:>4}: a = {a_used:.5} -> b* = {b_star:.3}  (a_c = {:.5}, b_c = {:.4})", -1.0 / b_star, -1.0 / a_used),
                Err(e) => println!("  backoff {rho:>4}: a = {a_used:.5} -> error {e}"),
            }
        }
    }
}
