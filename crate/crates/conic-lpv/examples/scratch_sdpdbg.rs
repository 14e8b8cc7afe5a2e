use conic_lpv::heatx;
use conic_lpv::lmi::{strict_margin, LmiProgram};
use conic_lpv::matcore::Matrix;
use conic_lpv::sdp::{self, SolverOptions};

fn main() {
    let params = heatx::HeatExchangerParams::default();
    let scen = heatx::build_polytopic_model(&params, 0.0).unwrap();
    let view = scen.model.conic_channel();
    let n = view.n();
    let m = view.m();
    let eye_n = Matrix::identity(n);

    let mut prog = LmiProgram::new();
    let p = prog.declare_symmetric(n);
    let a_var = prog.declare_scalar();
    for (a_m, b_m, c_m) in view.iter() {
        let e00 = prog
            .sandwich(eye_n.clone(), p, a_m.clone())
            .add(&prog.sandwich(a_m.transpose(), p, eye_n.clone()));
        let e10 = prog
            .sandwich(b_m.transpose(), p, eye_n.clone())
            .plus_const(&c_m.scale(-0.5));
        let e11 = prog.scalar_times(a_var, &Matrix::identity(m));
        prog.add_nsd_block(vec![vec![e00], vec![e10, e11]]).unwrap();
    }
    let eps = strict_margin(1.0);
    let pd = prog.var(p).plus_const(&eye_n.scale(-eps));
    prog.add_psd_block(vec![vec![pd]]).unwrap();
    prog.add_nsd_block(vec![vec![prog.var(a_var)]]).unwrap();
    prog.minimize(vec![(a_var, Matrix::scalar(-1.0))]);

    let (problem, back) = prog.compile().unwrap();
    for opts in [SolverOptions::default(), SolverOptions::tight()] {
        let sol = sdp::solve(&problem, &opts).unwrap();
        println!(
            "status {:?} iters {} obj(a) {:.8}  worst-min-eig {:.3e}  P = {:?}",
            sol.status,
            sol.iterations,
            back.extract_scalar(a_var, &sol.x).unwrap(),
            sol.worst_block_min_eig,
            back.extract(p, &sol.x).unwrap()
        );
    }
}
