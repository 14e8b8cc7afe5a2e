//! Output-feedback H-infinity synthesis for one generalized-plant vertex:
//! bisection on the closed-loop level, solving a feasibility LMI in the
//! linearized controller variables at each level, then reconstructing the
//! full-order controller from the final solution.

use crate::lmi::{strict_margin, LmiProgram, Var};
use crate::lpvsys::GeneralizedVertex;
use crate::matcore::{self, Matrix};
use crate::sdp::{self, SdpStatus, SolverOptions};

use super::{SynthError, VertexController};

#[derive(Clone, Debug)]
pub struct HinfOptions {
    /// relative bisection tolerance on the achievable level
    pub gamma_tol: f64,
    /// weight of the control-penalty rows added to the performance output
    /// to regularize plants with rank-deficient feedthrough
    pub reg_penalty: f64,
    /// weight of the measurement-noise columns added to the exogenous input
    pub reg_noise: f64,
    pub gamma_max: f64,
    pub solver: SolverOptions,
}

impl Default for HinfOptions {
    fn default() -> Self {
        HinfOptions {
            gamma_tol: 0.2,
            reg_penalty: 0.1,
            reg_noise: 0.1,
            gamma_max: 1e6,
            solver: SolverOptions::default(),
        }
    }
}

impl HinfOptions {
    /// Sets both regularization weights to the same value.
    pub fn with_reg(eps: f64) -> Self {
        HinfOptions { reg_penalty: eps, reg_noise: eps, ..HinfOptions::default() }
    }
}

#[derive(Clone, Debug)]
pub struct HinfDesign {
    pub controller: VertexController,
    /// certified closed-loop level (for the regularized channels)
    pub gamma: f64,
    /// measured closed-loop norm, for reporting
    pub gamma_achieved: f64,
}

/// Synthesis channels after optional regularization.
struct Channels {
    a: Matrix,
    b1: Matrix,
    b2: Matrix,
    c1: Matrix,
    c2: Matrix,
    d11: Matrix,
    d12: Matrix,
    d21: Matrix,
}

fn regularized_channels(v: &GeneralizedVertex, reg_penalty: f64, reg_noise: f64) -> Channels {
    let d = v.dims();
    // the crate wires loops with negative feedback (plant input is minus
    // the controller output); fold the sign into the control channel so the
    // returned controller drops straight into that interconnection
    let b2 = v.b2.scale(-1.0);
    let d12_signed = v.d12.scale(-1.0);
    if reg_penalty <= 0.0 && reg_noise <= 0.0 {
        return Channels {
            a: v.a.clone(),
            b1: v.b1.clone(),
            b2,
            c1: v.c1.clone(),
            c2: v.c2.clone(),
            d11: v.d11.clone(),
            d12: d12_signed,
            d21: v.d21.clone(),
        };
    }
    // exogenous channel gains a measurement-noise column block, the
    // performance channel a control-penalty row block
    let n_w = d.n_w + d.m;
    let n_z = d.n_z + d.m;
    let mut b1 = Matrix::zeros(d.n, n_w);
    b1.set_block(0, 0, &v.b1);
    let mut d21 = Matrix::zeros(d.m, n_w);
    d21.set_block(0, 0, &v.d21);
    for i in 0..d.m {
        d21[(i, d.n_w + i)] = reg_noise;
    }
    let mut c1 = Matrix::zeros(n_z, d.n);
    c1.set_block(0, 0, &v.c1);
    let mut d12 = Matrix::zeros(n_z, d.m);
    d12.set_block(0, 0, &d12_signed);
    for i in 0..d.m {
        d12[(d.n_z + i, i)] = reg_penalty;
    }
    let mut d11 = Matrix::zeros(n_z, n_w);
    d11.set_block(0, 0, &v.d11);
    Channels { a: v.a.clone(), b1, b2, c1, c2: v.c2.clone(), d11, d12, d21 }
}

struct SynthesisVars {
    x: Var,
    y: Var,
    a_hat: Var,
    b_hat: Var,
    c_hat: Var,
}

fn build_program(ch: &Channels, gamma: f64) -> (LmiProgram, SynthesisVars) {
    let n = ch.a.rows();
    let n_w = ch.b1.cols();
    let n_z = ch.c1.rows();
    let m_u = ch.b2.cols();
    let m_y = ch.c2.rows();
    let eye_n = Matrix::identity(n);
    let eps = strict_margin(1.0);

    let mut prog = LmiProgram::new();
    let x = prog.declare_symmetric(n);
    let y = prog.declare_symmetric(n);
    let a_hat = prog.declare_rectangular(n, n);
    let b_hat = prog.declare_rectangular(n, m_y);
    let c_hat = prog.declare_rectangular(m_u, n);

    // performance LMI, negative definite
    let e00 = prog
        .sandwich(ch.a.clone(), y, eye_n.clone())
        .add(&prog.sandwich(eye_n.clone(), y, ch.a.transpose()))
        .add(&prog.sandwich(ch.b2.clone(), c_hat, eye_n.clone()))
        .add(&prog.sandwich_t(eye_n.clone(), c_hat, ch.b2.transpose()))
        .plus_const(&eye_n.scale(eps));
    let e10 = prog.var(a_hat).plus_const(&ch.a.transpose());
    let e11 = prog
        .sandwich(eye_n.clone(), x, ch.a.clone())
        .add(&prog.sandwich(ch.a.transpose(), x, eye_n.clone()))
        .add(&prog.sandwich(eye_n.clone(), b_hat, ch.c2.clone()))
        .add(&prog.sandwich_t(ch.c2.transpose(), b_hat, eye_n.clone()))
        .plus_const(&eye_n.scale(eps));
    let e20 = prog.konst(ch.b1.transpose());
    let e21 = prog
        .sandwich(ch.b1.transpose(), x, eye_n.clone())
        .add(&prog.sandwich_t(ch.d21.transpose(), b_hat, eye_n.clone()));
    let e22 = prog.konst(Matrix::identity(n_w).scale(-gamma + eps));
    let e30 = prog
        .sandwich(ch.c1.clone(), y, eye_n.clone())
        .add(&prog.sandwich(ch.d12.clone(), c_hat, eye_n.clone()));
    let e31 = prog.konst(ch.c1.clone());
    let e32 = prog.konst(ch.d11.clone());
    let e33 = prog.konst(Matrix::identity(n_z).scale(-gamma + eps));
    prog.add_nsd_block(vec![
        vec![e00],
        vec![e10, e11],
        vec![e20, e21, e22],
        vec![e30, e31, e32, e33],
    ])
    .expect("synthesis grid dims");

    // coupling condition [Y I; I X] positive definite
    let p00 = prog.var(y).plus_const(&eye_n.scale(-eps));
    let p10 = prog.konst(eye_n.clone());
    let p11 = prog.var(x).plus_const(&eye_n.scale(-eps));
    prog.add_psd_block(vec![vec![p00], vec![p10, p11]])
        .expect("coupling grid dims");

    (prog, SynthesisVars { x, y, a_hat, b_hat, c_hat })
}

struct FeasiblePoint {
    x: Matrix,
    y: Matrix,
    a_hat: Matrix,
    b_hat: Matrix,
    c_hat: Matrix,
}

fn try_level(ch: &Channels, gamma: f64, solver: &SolverOptions) -> Option<FeasiblePoint> {
    let (prog, vars) = build_program(ch, gamma);
    let (problem, back) = prog.compile().ok()?;
    let sol = sdp::check_feasible(&problem, solver).ok()?;
    if !matches!(sol.status, SdpStatus::Feasible | SdpStatus::Optimal) {
        return None;
    }
    Some(FeasiblePoint {
        x: back.extract(vars.x, &sol.x).ok()?,
        y: back.extract(vars.y, &sol.x).ok()?,
        a_hat: back.extract(vars.a_hat, &sol.x).ok()?,
        b_hat: back.extract(vars.b_hat, &sol.x).ok()?,
        c_hat: back.extract(vars.c_hat, &sol.x).ok()?,
    })
}

fn reconstruct(ch: &Channels, pt: &FeasiblePoint) -> Result<VertexController, SynthError> {
    let n = ch.a.rows();
    let y_inv = matcore::solve_linear(&pt.y, &Matrix::identity(n))
        .map_err(|_| SynthError::Reconstruction("shaping variable not invertible".into()))?;
    // U V^T = I - X Y with V = Y, so U = Y^{-1} - X (negative definite
    // whenever the coupling condition holds strictly)
    let u = &y_inv - &pt.x;
    let u_inv = matcore::solve_linear(&u, &Matrix::identity(n))
        .map_err(|_| SynthError::Reconstruction("coupling factor not invertible".into()))?;
    let b_k = u_inv.matmul(&pt.b_hat);
    let c_k = pt.c_hat.matmul(&y_inv);
    let inner = &(&pt.a_hat - &pt.x.matmul(&ch.a).matmul(&pt.y))
        - &(&pt.b_hat.matmul(&ch.c2).matmul(&pt.y) + &pt.x.matmul(&ch.b2).matmul(&pt.c_hat));
    let a_k = u_inv.matmul(&inner).matmul(&y_inv);
    Ok(VertexController { a_c: a_k, b_c: b_k, c_c: c_k })
}

/// Closed-loop realization of the plant channels with the controller.
pub(crate) fn close_loop(
    ch_a: &Matrix,
    ch_b1: &Matrix,
    ch_b2: &Matrix,
    ch_c1: &Matrix,
    ch_c2: &Matrix,
    ch_d11: &Matrix,
    ch_d12: &Matrix,
    ch_d21: &Matrix,
    k: &VertexController,
) -> (Matrix, Matrix, Matrix, Matrix) {
    let n = ch_a.rows();
    let n_c = k.a_c.rows();
    let mut a_cl = Matrix::zeros(n + n_c, n + n_c);
    a_cl.set_block(0, 0, ch_a);
    a_cl.set_block(0, n, &ch_b2.matmul(&k.c_c));
    a_cl.set_block(n, 0, &k.b_c.matmul(ch_c2));
    a_cl.set_block(n, n, &k.a_c);
    let mut b_cl = Matrix::zeros(n + n_c, ch_b1.cols());
    b_cl.set_block(0, 0, ch_b1);
    b_cl.set_block(n, 0, &k.b_c.matmul(ch_d21));
    let mut c_cl = Matrix::zeros(ch_c1.rows(), n + n_c);
    c_cl.set_block(0, 0, ch_c1);
    c_cl.set_block(0, n, &ch_d12.matmul(&k.c_c));
    (a_cl, b_cl, c_cl, ch_d11.clone())
}

/// Synthesizes a full-order stabilizing controller for one vertex with the
/// closed-loop level within `gamma_tol` (relative) of the best achievable
/// under the regularized channels.
///
/// The design targets the negative-feedback interconnection used throughout
/// the crate: the plant input is minus the controller output.
pub fn hinf_vertex_synthesis(
    vertex: &GeneralizedVertex,
    opts: &HinfOptions,
) -> Result<HinfDesign, SynthError> {
    let ch = regularized_channels(vertex, opts.reg_penalty, opts.reg_noise);
    if ch.b1.cols() == 0 || ch.c1.rows() == 0 {
        return Err(SynthError::SynthesisInfeasible(
            "synthesis needs nonempty exogenous and performance channels \
             (set a positive regularization weight for bare plants)"
                .into(),
        ));
    }

    // grow an upper bracket first
    let mut hi = 1.0;
    let mut grow = 0;
    let (mut gamma_best, mut pt_best) = loop {
        if let Some(pt) = try_level(&ch, hi, &opts.solver) {
            break (hi, pt);
        }
        hi *= 4.0;
        grow += 1;
        if hi > opts.gamma_max || grow > 40 {
            return Err(SynthError::SynthesisInfeasible(format!(
                "no feasible level found up to {:.3e}",
                opts.gamma_max
            )));
        }
    };
    let mut lo = 0.0;
    while gamma_best - lo > 0.5 * opts.gamma_tol * gamma_best {
        let mid = 0.5 * (lo + gamma_best);
        if mid <= 0.0 {
            break;
        }
        match try_level(&ch, mid, &opts.solver) {
            Some(pt) => {
                gamma_best = mid;
                pt_best = pt;
            }
            None => lo = mid,
        }
    }

    // reconstruct from a level strictly inside the feasible set: the
    // analytic center right at the infimum has a nearly singular coupling
    // factor and blows up the controller gains
    let gamma_synth = gamma_best * (1.0 + opts.gamma_tol / 3.0);
    if let Some(pt) = try_level(&ch, gamma_synth, &opts.solver) {
        gamma_best = gamma_synth;
        pt_best = pt;
    }

    let controller = reconstruct(&ch, &pt_best)?;
    // post-verification: the reconstructed loop must be internally stable
    // and meet the certified level
    let (a_cl, b_cl, c_cl, d_cl) = close_loop(
        &ch.a, &ch.b1, &ch.b2, &ch.c1, &ch.c2, &ch.d11, &ch.d12, &ch.d21, &controller,
    );
    if !matcore::is_hurwitz(&a_cl).map_err(SynthError::Mat)? {
        return Err(SynthError::Reconstruction(
            "reconstructed closed loop is not internally stable".into(),
        ));
    }
    let gamma_achieved = matcore::hinf_norm(&a_cl, &b_cl, &c_cl, &d_cl, 1e-6)
        .map_err(SynthError::Mat)?;
    Ok(HinfDesign { controller, gamma: gamma_best, gamma_achieved })
}
