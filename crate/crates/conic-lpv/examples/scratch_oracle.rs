use conic_lpv::conic::{self, CertMethod, ConicSector};
use conic_lpv::heatx;
use conic_lpv::matcore::{self, Matrix};
use conic_lpv::sdp::SolverOptions;

fn main() {
    let params = heatx::HeatExchangerParams::default();
    let scen = heatx::build_polytopic_model(&params, 0.0).unwrap();
    let view = scen.model.conic_channel();

    // single-vertex searches: for an LTI SISO channel the certificate is
    // tight, so max-a should land at the minimum real part of the response
    let opts = SolverOptions::tight();
    for i in 0..2 {
        let (a, b, c) = view.vertex(i);
        let single =
            conic_lpv::lpvsys::ConicChannelView::new(vec![(a.clone(), b.clone(), c.clone())])
                .unwrap();
        let (a_star, _) = conic::max_a_given_b(&single, f64::INFINITY, &opts).unwrap();
        let mut min_re = f64::INFINITY;
        for &w in matcore::log_grid(1e-4, 1e4, 4000).iter() {
            let g = matcore::frequency_response(a, b, c, w).unwrap();
            min_re = min_re.min(g[(0, 0)].re);
        }
        println!("vertex {i}: max-a = {a_star:.6}, grid min Re G = {min_re:.6}");
    }

    // brute-force 3-unknown scan: does a common P certify [a, inf)?
    let scan = |a_bound: f64| -> Option<(f64, f64, f64, f64)> {
        let sector = ConicSector { a: a_bound, b: f64::INFINITY };
        let mut best: Option<(f64, f64, f64, f64)> = None;
        let grid: Vec<f64> = (0..=60).map(|k| 10f64.powf(-3.0 + 4.0 * k as f64 / 60.0)).collect();
        for &p11 in &grid {
            for &p22 in &grid {
                let lim = (p11 * p22).sqrt();
                for j in -20..=20 {
                    let p12 = lim * (j as f64) / 20.0 * 0.999;
                    let p = Matrix::from_rows(&[&[p11, p12], &[p12, p22]]);
                    let res =
                        conic::vertex_residuals(&view, &sector, CertMethod::Corollary2, &p)
                            .unwrap();
                    let worst = res.iter().cloned().fold(f64::INFINITY, f64::min);
                    match &best {
                        Some((w, _, _, _)) if *w >= worst => {}
                        _ => best = Some((worst, p11, p12, p22)),
                    }
                }
            }
        }
        best
    };
    for a_bound in [-0.05, -0.06, -0.07, -0.08, -0.0856, -0.09] {
        if let Some((worst, p11, p12, p22)) = scan(a_bound) {
            println!(
                "a = {a_bound}: best worst-residual over scan = {worst:.3e} at P = [[{p11:.4}, {p12:.4}], [..., {p22:.4}]]  (feasible: {})",
                worst >= -1e-9
            );
        }
    }
}
