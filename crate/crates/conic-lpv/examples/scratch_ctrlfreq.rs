use conic_lpv::conic::{self, ConicSector};
use conic_lpv::heatx;
use conic_lpv::matcore::{self, Matrix};
use conic_lpv::sdp::SolverOptions;
use conic_lpv::synthesis::{self, HinfOptions};

fn nyq(a: &Matrix, b: &Matrix, c: &Matrix, label: &str) {
    let mut min_re = f64::INFINITY;
    let mut max_mag = 0.0f64;
    print!("{label}: ");
    for &w in &[0.0, 0.03, 0.1, 0.3, 1.0, 3.0, 10.0, 30.0] {
        let g = matcore::frequency_response(a, b, c, w).unwrap();
        let z = g[(0, 0)];
        min_re = min_re.min(z.re);
        max_mag = max_mag.max(z.norm());
        if w == 0.0 || w == 0.3 || w == 3.0 {
            print!("G({w}) = {:.3}{:+.3}j  ", z.re, z.im);
        }
    }
    for &w in matcore::log_grid(1e-3, 1e3, 500).iter() {
        let g = matcore::frequency_response(a, b, c, w).unwrap();
        min_re = min_re.min(g[(0, 0)].re);
        max_mag = max_mag.max(g[(0, 0)].norm());
    }
    println!("min Re = {min_re:.4}, max |G| = {max_mag:.3}");
}

fn main() {
    let params = heatx::HeatExchangerParams::default();
    let opts = SolverOptions::tight();
    let nominal = heatx::build_polytopic_model(&params, 0.0).unwrap();
    let hinf_opts = HinfOptions::with_reg(0.1);
    let designs: Vec<_> = nominal
        .model
        .vertices
        .iter()
        .map(|v| synthesis::hinf_vertex_synthesis(v, &hinf_opts).unwrap())
        .collect();
    for (i, d) in designs.iter().enumerate() {
        println!("A_c[{i}] eigs: {:?}", matcore::eigenvalues(&d.controller.a_c).unwrap());
        nyq(&d.controller.a_c, &d.controller.b_c, &d.controller.c_c, &format!("raw hinf {i}"));
    }
    let vertex_ctrls: Vec<_> = designs.iter().map(|d| d.controller.clone()).collect();
    let gammas: Vec<f64> = designs.iter().map(|d| d.gamma).collect();
    let sector = ConicSector::new(-0.0894, 13.222).unwrap();
    let (a_c, b_c) = synthesis::controller_cone_from_plant(&sector, 1e-3).unwrap();
    println!("controller cone ({a_c:.4}, {b_c:.3})");
    let res = synthesis::conic_projection(&vertex_ctrls, (a_c, b_c), &gammas, &opts).unwrap();
    for (i, v) in res.controller.vertices.iter().enumerate() {
        nyq(&v.a_c, &v.b_c, &v.c_c, &format!("projected {i}"));
    }
    // what does an unconstrained-best gain-limited controller look like:
    // scale raw B down until it certifies in the cone (bisection on scale)
    for (i, d) in designs.iter().enumerate() {
        let mut lo = 0.0;
        let mut hi = 1.0;
        for _ in 0..30 {
            let mid = 0.5 * (lo + hi);
            let cand = synthesis::PolytopicController::new(vec![synthesis::VertexController {
                a_c: d.controller.a_c.clone(),
                b_c: d.controller.b_c.scale(mid),
                c_c: d.controller.c_c.clone(),
            }])
            .unwrap();
            if conic::certify_cone(&cand.conic_channel(), &ConicSector::new(a_c, b_c).unwrap(), Default::default(), &SolverOptions::default()).is_ok() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        println!("vertex {i}: max certifiable scale of raw L = {lo:.4} -> B = {:?}", d.controller.b_c.scale(lo).to_nested());
    }
}
