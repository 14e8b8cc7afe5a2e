//! Small dense semidefinite-programming solver in linear-matrix-inequality
//! standard form: minimize `c^T x` subject to `F0 + sum_i x_i F_i >= 0`
//! over a list of symmetric blocks.
//!
//! The method is a plain phase-1 / phase-2 logarithmic-barrier scheme with
//! damped Newton steps and a backtracking line search that keeps every block
//! positive definite (Cholesky test). Problems here are desk scale (a few
//! hundred scalar unknowns at most), where this is the simplest method that
//! is accurate and fully deterministic.

use serde::Serialize;
use thiserror::Error;

use crate::matcore::{self, Matrix};

/// One PSD constraint `F0 + sum_i x_i F_i >= 0`.
#[derive(Clone, Debug)]
pub struct SdpBlock {
    pub f0: Matrix,
    /// one coefficient matrix per variable; zero matrices are skipped
    pub coeffs: Vec<Matrix>,
}

#[derive(Clone, Debug)]
pub struct SdpProblem {
    pub num_vars: usize,
    /// minimize `objective . x`
    pub objective: Vec<f64>,
    pub blocks: Vec<SdpBlock>,
}

#[derive(Clone, Debug)]
pub struct SolverOptions {
    pub feas_tol: f64,
    pub gap_tol: f64,
    pub max_iterations: usize,
    pub initial_slack_margin: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            feas_tol: 1e-7,
            gap_tol: 1e-7,
            max_iterations: 200,
            initial_slack_margin: 1.0,
        }
    }
}

impl SolverOptions {
    pub fn tight() -> Self {
        SolverOptions {
            feas_tol: 1e-9,
            gap_tol: 1e-9,
            max_iterations: 400,
            initial_slack_margin: 1.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SdpStatus {
    Optimal,
    Feasible,
    Infeasible,
    MaxIterations,
    NumericalFailure,
}

#[derive(Clone, Debug, Serialize)]
pub struct SdpSolution {
    pub status: SdpStatus,
    pub x: Vec<f64>,
    pub objective: f64,
    pub worst_block_min_eig: f64,
    pub iterations: usize,
}

#[derive(Debug, Error)]
pub enum SdpError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("problem exceeds solver size caps: {0}")]
    TooLarge(String),
}

const MAX_VARS: usize = 500;
const MAX_TOTAL_DIM: usize = 200;
const BARRIER_MU: f64 = 10.0;
const CENTER_TOL: f64 = 1e-10;
const MAX_NEWTON_PER_STAGE: usize = 80;

impl SdpProblem {
    pub fn validate(&self) -> Result<(), SdpError> {
        if self.objective.len() != self.num_vars {
            return Err(SdpError::DimensionMismatch(format!(
                "objective has {} entries for {} variables",
                self.objective.len(),
                self.num_vars
            )));
        }
        if self.num_vars > MAX_VARS {
            return Err(SdpError::TooLarge(format!("{} variables", self.num_vars)));
        }
        let mut total = 0usize;
        for (k, b) in self.blocks.iter().enumerate() {
            let n = b.f0.rows();
            if !b.f0.is_square() || !b.f0.is_symmetric(1e-9) {
                return Err(SdpError::DimensionMismatch(format!(
                    "block {k}: F0 must be square symmetric"
                )));
            }
            if b.coeffs.len() != self.num_vars {
                return Err(SdpError::DimensionMismatch(format!(
                    "block {k}: {} coefficient matrices for {} variables",
                    b.coeffs.len(),
                    self.num_vars
                )));
            }
            for (i, f) in b.coeffs.iter().enumerate() {
                if f.rows() != n || f.cols() != n || !f.is_symmetric(1e-9) {
                    return Err(SdpError::DimensionMismatch(format!(
                        "block {k}, coefficient {i}: expected symmetric {n}x{n}"
                    )));
                }
            }
            total += n;
        }
        if total > MAX_TOTAL_DIM {
            return Err(SdpError::TooLarge(format!("total block dimension {total}")));
        }
        Ok(())
    }

    pub fn eval_block(&self, k: usize, x: &[f64]) -> Matrix {
        let b = &self.blocks[k];
        let mut s = b.f0.clone();
        for (i, f) in b.coeffs.iter().enumerate() {
            if x[i] != 0.0 && f.norm_max() != 0.0 {
                s.add_in_place(&f.scale(x[i]), 1.0);
            }
        }
        s.symmetrize()
    }

    pub fn worst_min_eig(&self, x: &[f64]) -> f64 {
        let mut worst = f64::INFINITY;
        for k in 0..self.blocks.len() {
            let s = self.eval_block(k, x);
            if s.rows() == 0 {
                continue;
            }
            let me = matcore::min_eig(&s).unwrap_or(f64::NEG_INFINITY);
            worst = worst.min(me);
        }
        if worst.is_finite() {
            worst
        } else {
            0.0
        }
    }

    fn total_dim(&self) -> usize {
        self.blocks.iter().map(|b| b.f0.rows()).sum()
    }
}

/// Minimize the objective over the PSD constraints.
pub fn solve(problem: &SdpProblem, opts: &SolverOptions) -> Result<SdpSolution, SdpError> {
    problem.validate()?;
    let mut iterations = 0usize;
    let phase1 = run_phase1(problem, opts, &mut iterations);
    let x0 = match phase1 {
        Phase1Outcome::Strict(x) => x,
        Phase1Outcome::Marginal(x) => {
            // no usable interior for the barrier; report the near-feasible point
            let worst = problem.worst_min_eig(&x);
            let objective = dot(&problem.objective, &x);
            let status = if worst >= -opts.feas_tol {
                SdpStatus::Feasible
            } else {
                SdpStatus::NumericalFailure
            };
            return Ok(SdpSolution { status, x, objective, worst_block_min_eig: worst, iterations });
        }
        Phase1Outcome::Infeasible(x) => {
            let worst = problem.worst_min_eig(&x);
            return Ok(SdpSolution {
                status: SdpStatus::Infeasible,
                x,
                objective: f64::NAN,
                worst_block_min_eig: worst,
                iterations,
            });
        }
        Phase1Outcome::Failed(x) => {
            let worst = problem.worst_min_eig(&x);
            return Ok(SdpSolution {
                status: SdpStatus::NumericalFailure,
                x,
                objective: f64::NAN,
                worst_block_min_eig: worst,
                iterations,
            });
        }
    };

    if problem.objective.iter().all(|&c| c == 0.0) {
        // pure feasibility: center once for a well-conditioned interior point
        let mut x = x0;
        let _ = center(problem, &problem.objective, 0.0, &mut x, opts, &mut iterations);
        let worst = problem.worst_min_eig(&x);
        return Ok(SdpSolution {
            status: SdpStatus::Feasible,
            x,
            objective: 0.0,
            worst_block_min_eig: worst,
            iterations,
        });
    }

    let ntotal = problem.total_dim().max(1) as f64;
    let mut x = x0;
    let mut t = 1.0;
    let mut status = SdpStatus::MaxIterations;
    for _stage in 0..64 {
        match center(problem, &problem.objective, t, &mut x, opts, &mut iterations) {
            CenterOutcome::Centered => {}
            CenterOutcome::IterationBudget => {
                status = SdpStatus::MaxIterations;
                break;
            }
            CenterOutcome::Failed => {
                status = SdpStatus::NumericalFailure;
                break;
            }
        }
        let obj = dot(&problem.objective, &x);
        if ntotal / t <= opts.gap_tol * (1.0 + obj.abs()) {
            status = SdpStatus::Optimal;
            break;
        }
        if x.iter().any(|v| v.abs() > 1e10) {
            status = SdpStatus::NumericalFailure;
            break;
        }
        t *= BARRIER_MU;
    }
    let objective = dot(&problem.objective, &x);
    let worst = problem.worst_min_eig(&x);
    Ok(SdpSolution { status, x, objective, worst_block_min_eig: worst, iterations })
}

/// Feasibility mode: ignores the objective and looks for a strictly
/// feasible point, centering it when an interior exists.
pub fn check_feasible(problem: &SdpProblem, opts: &SolverOptions) -> Result<SdpSolution, SdpError> {
    let mut p = problem.clone();
    p.objective = vec![0.0; p.num_vars];
    solve(&p, opts)
}

/// Solve starting from a caller-supplied strictly feasible point, skipping
/// phase 1. Falls back to the cold-start path when the point is not
/// comfortably interior.
pub fn solve_from(
    problem: &SdpProblem,
    opts: &SolverOptions,
    x0: &[f64],
) -> Result<SdpSolution, SdpError> {
    problem.validate()?;
    if x0.len() != problem.num_vars {
        return Err(SdpError::DimensionMismatch(format!(
            "start point has {} entries for {} variables",
            x0.len(),
            problem.num_vars
        )));
    }
    let interior = problem
        .blocks
        .iter()
        .enumerate()
        .all(|(k, _)| matcore::cholesky(&problem.eval_block(k, x0)).is_ok());
    if !interior {
        return solve(problem, opts);
    }
    let mut iterations = 0usize;
    let ntotal = problem.total_dim().max(1) as f64;
    let mut x = x0.to_vec();
    let mut t = 1.0;
    let mut status = SdpStatus::MaxIterations;
    for _stage in 0..64 {
        match center(problem, &problem.objective, t, &mut x, opts, &mut iterations) {
            CenterOutcome::Centered => {}
            CenterOutcome::IterationBudget => {
                status = SdpStatus::MaxIterations;
                break;
            }
            CenterOutcome::Failed => {
                status = SdpStatus::NumericalFailure;
                break;
            }
        }
        let obj = dot(&problem.objective, &x);
        if ntotal / t <= opts.gap_tol * (1.0 + obj.abs()) {
            status = SdpStatus::Optimal;
            break;
        }
        if x.iter().any(|v| v.abs() > 1e12) {
            status = SdpStatus::NumericalFailure;
            break;
        }
        t *= BARRIER_MU;
    }
    let objective = dot(&problem.objective, &x);
    let worst = problem.worst_min_eig(&x);
    Ok(SdpSolution { status, x, objective, worst_block_min_eig: worst, iterations })
}

enum Phase1Outcome {
    /// strictly feasible with a comfortable margin
    Strict(Vec<f64>),
    /// converged with the slack stuck near zero; feasible only marginally
    Marginal(Vec<f64>),
    Infeasible(Vec<f64>),
    Failed(Vec<f64>),
}

/// Phase 1: minimize s subject to `F(x) + s I > 0`, starting from x = 0.
fn run_phase1(problem: &SdpProblem, opts: &SolverOptions, iterations: &mut usize) -> Phase1Outcome {
    let m = problem.num_vars;
    let x_zero = vec![0.0; m];
    let scale = problem
        .blocks
        .iter()
        .map(|b| b.f0.norm_max())
        .fold(1.0f64, f64::max);
    let strict_target = (100.0 * opts.feas_tol * scale).max(1e-6);

    // quick exit: x = 0 may already be comfortably interior
    let worst0 = problem.worst_min_eig(&x_zero);
    if worst0 > strict_target {
        return Phase1Outcome::Strict(x_zero);
    }

    // augmented problem over (x, s)
    let aug = augment_with_slack(problem);
    let mut z = vec![0.0; m + 1];
    z[m] = (-worst0).max(0.0) + opts.initial_slack_margin * scale.max(1.0);
    let mut c_aug = vec![0.0; m + 1];
    c_aug[m] = 1.0;

    let ntotal = aug.total_dim().max(1) as f64;
    let mut t = 1.0;
    for _stage in 0..64 {
        match center_phase1(&aug, &c_aug, t, &mut z, opts, iterations, -strict_target) {
            CenterOutcome::Centered => {}
            CenterOutcome::IterationBudget | CenterOutcome::Failed => {
                return if z[m] <= -strict_target {
                    Phase1Outcome::Strict(z[..m].to_vec())
                } else {
                    Phase1Outcome::Failed(z[..m].to_vec())
                };
            }
        }
        if z[m] <= -strict_target {
            return Phase1Outcome::Strict(z[..m].to_vec());
        }
        if ntotal / t <= 0.1 * opts.feas_tol * (1.0 + z[m].abs()) {
            // converged; classify by where the slack landed
            return if z[m] < opts.feas_tol {
                Phase1Outcome::Marginal(z[..m].to_vec())
            } else {
                Phase1Outcome::Infeasible(z[..m].to_vec())
            };
        }
        t *= BARRIER_MU;
    }
    Phase1Outcome::Failed(z[..m].to_vec())
}

fn augment_with_slack(problem: &SdpProblem) -> SdpProblem {
    let m = problem.num_vars;
    let blocks = problem
        .blocks
        .iter()
        .map(|b| {
            let n = b.f0.rows();
            let mut coeffs = b.coeffs.clone();
            coeffs.push(Matrix::identity(n));
            SdpBlock { f0: b.f0.clone(), coeffs }
        })
        .collect();
    SdpProblem {
        num_vars: m + 1,
        objective: {
            let mut c = vec![0.0; m + 1];
            c[m] = 1.0;
            c
        },
        blocks,
    }
}

enum CenterOutcome {
    Centered,
    IterationBudget,
    Failed,
}

/// Newton centering of `t * c.x + barrier(x)`; `x` must start strictly feasible.
fn center(
    problem: &SdpProblem,
    c: &[f64],
    t: f64,
    x: &mut Vec<f64>,
    opts: &SolverOptions,
    iterations: &mut usize,
) -> CenterOutcome {
    for _ in 0..MAX_NEWTON_PER_STAGE {
        if *iterations >= opts.max_iterations * 50 {
            return CenterOutcome::IterationBudget;
        }
        *iterations += 1;
        let (grad, hess) = match gradient_hessian(problem, c, t, x) {
            Some(gh) => gh,
            None => return CenterOutcome::Failed,
        };
        let dir = match solve_newton(&hess, &grad) {
            Some(d) => d,
            None => return CenterOutcome::Failed,
        };
        let decrement = -dot(&grad, &dir);
        if decrement <= 2.0 * CENTER_TOL {
            return CenterOutcome::Centered;
        }
        if !line_search(problem, c, t, x, &dir, &grad) {
            // stalled inside the feasible set; treat the point as centered
            return CenterOutcome::Centered;
        }
    }
    CenterOutcome::Centered
}

/// Phase-1 variant that abandons centering as soon as the slack variable
/// has dropped below `early_exit` (no need to polish further).
fn center_phase1(
    problem: &SdpProblem,
    c: &[f64],
    t: f64,
    x: &mut Vec<f64>,
    opts: &SolverOptions,
    iterations: &mut usize,
    early_exit: f64,
) -> CenterOutcome {
    let slack_idx = problem.num_vars - 1;
    for _ in 0..MAX_NEWTON_PER_STAGE {
        if x[slack_idx] <= early_exit {
            return CenterOutcome::Centered;
        }
        if *iterations >= opts.max_iterations * 50 {
            return CenterOutcome::IterationBudget;
        }
        *iterations += 1;
        let (grad, hess) = match gradient_hessian(problem, c, t, x) {
            Some(gh) => gh,
            None => return CenterOutcome::Failed,
        };
        let dir = match solve_newton(&hess, &grad) {
            Some(d) => d,
            None => return CenterOutcome::Failed,
        };
        let decrement = -dot(&grad, &dir);
        if decrement <= 2.0 * CENTER_TOL {
            return CenterOutcome::Centered;
        }
        if !line_search(problem, c, t, x, &dir, &grad) {
            return CenterOutcome::Centered;
        }
    }
    CenterOutcome::Centered
}

/// Gradient and Hessian of `t*c.x − sum_j log det F_j(x)` at a strictly
/// feasible `x`. Returns `None` when a block has lost positive definiteness.
fn gradient_hessian(
    problem: &SdpProblem,
    c: &[f64],
    t: f64,
    x: &[f64],
) -> Option<(Vec<f64>, Matrix)> {
    let m = problem.num_vars;
    let mut grad: Vec<f64> = c.iter().map(|ci| t * ci).collect();
    let mut hess = Matrix::zeros(m, m);
    for (k, block) in problem.blocks.iter().enumerate() {
        let s = problem.eval_block(k, x);
        let l = matcore::cholesky(&s).ok()?;
        // W_i = L^{-1} F_i L^{-T}; then grad_i = -tr(W_i), H_ik = <W_i, W_k>
        let mut ws: Vec<Option<Matrix>> = Vec::with_capacity(m);
        for f in &block.coeffs {
            if f.norm_max() == 0.0 {
                ws.push(None);
                continue;
            }
            let y = matcore::linsolve::solve_lower(&l, f);
            let w = matcore::linsolve::solve_lower(&l, &y.transpose());
            ws.push(Some(w));
        }
        for i in 0..m {
            if let Some(wi) = &ws[i] {
                grad[i] -= wi.trace();
                for j in i..m {
                    if let Some(wj) = &ws[j] {
                        let mut dotf = 0.0;
                        for (a, b) in wi.data().iter().zip(wj.data().iter()) {
                            dotf += a * b;
                        }
                        hess[(i, j)] += dotf;
                        if i != j {
                            hess[(j, i)] = hess[(i, j)];
                        }
                    }
                }
            }
        }
    }
    Some((grad, hess))
}

fn solve_newton(hess: &Matrix, grad: &[f64]) -> Option<Vec<f64>> {
    let m = grad.len();
    let trace = hess.trace().max(1e-300);
    let mut reg = 1e-14 * trace / m as f64;
    for _ in 0..8 {
        let mut h = hess.clone();
        for i in 0..m {
            h[(i, i)] += reg;
        }
        if let Ok(l) = matcore::cholesky(&h) {
            let b = Matrix::column(&grad.iter().map(|g| -g).collect::<Vec<_>>());
            let y = matcore::linsolve::solve_lower(&l, &b);
            let d = matcore::linsolve::solve_lower_transpose(&l, &y);
            let dir: Vec<f64> = (0..m).map(|i| d[(i, 0)]).collect();
            if dir.iter().all(|v| v.is_finite()) {
                return Some(dir);
            }
        }
        reg = (reg * 100.0).max(1e-12 * trace / m as f64);
    }
    None
}

fn barrier_value(problem: &SdpProblem, x: &[f64]) -> Option<f64> {
    let mut phi = 0.0;
    for k in 0..problem.blocks.len() {
        let s = problem.eval_block(k, x);
        let l = matcore::cholesky(&s).ok()?;
        for i in 0..l.rows() {
            phi -= 2.0 * l[(i, i)].ln();
        }
    }
    Some(phi)
}

fn line_search(
    problem: &SdpProblem,
    c: &[f64],
    t: f64,
    x: &mut Vec<f64>,
    dir: &[f64],
    grad: &[f64],
) -> bool {
    let m = x.len();
    let merit0 = t * dot(c, x) + barrier_value(problem, x).expect("current point feasible");
    let slope = dot(grad, dir);
    let mut alpha = 1.0;
    for _ in 0..60 {
        let trial: Vec<f64> = (0..m).map(|i| x[i] + alpha * dir[i]).collect();
        if let Some(phi) = barrier_value(problem, &trial) {
            let merit = t * dot(c, &trial) + phi;
            if merit <= merit0 + 0.01 * alpha * slope {
                *x = trial;
                return true;
            }
        }
        alpha *= 0.5;
        if alpha < 1e-14 {
            return false;
        }
    }
    false
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn scalar_block(f0: f64, coeffs: Vec<f64>) -> SdpBlock {
        SdpBlock {
            f0: Matrix::scalar(f0),
            coeffs: coeffs.into_iter().map(Matrix::scalar).collect(),
        }
    }

    #[test]
    fn minimize_scalar_lower_bound() {
        // minimize x s.t. x - 1 >= 0
        let p = SdpProblem {
            num_vars: 1,
            objective: vec![1.0],
            blocks: vec![scalar_block(-1.0, vec![1.0])],
        };
        let sol = solve(&p, &SolverOptions::default()).unwrap();
        assert_eq!(sol.status, SdpStatus::Optimal);
        assert_abs_diff_eq!(sol.x[0], 1.0, epsilon = 1e-5);
    }

    #[test]
    fn maximize_interval_endpoint() {
        // maximize a s.t. diag(1 - a, a + 2) >= 0  ->  a = 1
        let p = SdpProblem {
            num_vars: 1,
            objective: vec![-1.0],
            blocks: vec![SdpBlock {
                f0: Matrix::diag(&[1.0, 2.0]),
                coeffs: vec![Matrix::diag(&[-1.0, 1.0])],
            }],
        };
        let sol = solve(&p, &SolverOptions::default()).unwrap();
        assert_eq!(sol.status, SdpStatus::Optimal);
        assert_abs_diff_eq!(sol.x[0], 1.0, epsilon = 1e-5);
    }

    #[test]
    fn two_by_two_determinant() {
        // minimize t s.t. [[t, 1], [1, t]] >= 0  ->  t = 1
        let mut f1 = Matrix::zeros(2, 2);
        f1[(0, 0)] = 1.0;
        f1[(1, 1)] = 1.0;
        let mut f0 = Matrix::zeros(2, 2);
        f0[(0, 1)] = 1.0;
        f0[(1, 0)] = 1.0;
        let p = SdpProblem {
            num_vars: 1,
            objective: vec![1.0],
            blocks: vec![SdpBlock { f0, coeffs: vec![f1] }],
        };
        let sol = solve(&p, &SolverOptions::default()).unwrap();
        assert_eq!(sol.status, SdpStatus::Optimal);
        assert_abs_diff_eq!(sol.x[0], 1.0, epsilon = 1e-5);
    }

    #[test]
    fn feasibility_constant_blocks() {
        let p = SdpProblem {
            num_vars: 0,
            objective: vec![],
            blocks: vec![SdpBlock { f0: Matrix::scalar(1.0), coeffs: vec![] }],
        };
        let sol = check_feasible(&p, &SolverOptions::default()).unwrap();
        assert_eq!(sol.status, SdpStatus::Feasible);

        let p = SdpProblem {
            num_vars: 0,
            objective: vec![],
            blocks: vec![SdpBlock { f0: Matrix::scalar(-1.0), coeffs: vec![] }],
        };
        let sol = check_feasible(&p, &SolverOptions::default()).unwrap();
        assert_eq!(sol.status, SdpStatus::Infeasible);
    }

    #[test]
    fn lyapunov_scalar_feasibility() {
        // find p with 2p - eps >= 0 and p - eps >= 0 (A = -1)
        let eps = 1e-6;
        let p = SdpProblem {
            num_vars: 1,
            objective: vec![0.0],
            blocks: vec![scalar_block(-eps, vec![2.0]), scalar_block(-eps, vec![1.0])],
        };
        let sol = check_feasible(&p, &SolverOptions::default()).unwrap();
        assert_eq!(sol.status, SdpStatus::Feasible);
        assert!(sol.worst_block_min_eig >= -1e-7);
        assert!(2.0 * sol.x[0] - eps > 0.0);
    }

    #[test]
    fn determinism_bitwise() {
        let p = SdpProblem {
            num_vars: 2,
            objective: vec![1.0, 0.5],
            blocks: vec![
                SdpBlock {
                    f0: Matrix::from_rows(&[&[-1.0, 0.3], &[0.3, -0.5]]),
                    coeffs: vec![
                        Matrix::from_rows(&[&[1.0, 0.0], &[0.0, 0.2]]),
                        Matrix::from_rows(&[&[0.0, 0.1], &[0.1, 1.0]]),
                    ],
                },
                scalar_block(10.0, vec![-1.0, -1.0]),
            ],
        };
        let s1 = solve(&p, &SolverOptions::default()).unwrap();
        let s2 = solve(&p, &SolverOptions::default()).unwrap();
        assert_eq!(s1.x, s2.x);
        assert_eq!(s1.status, SdpStatus::Optimal);
    }

    #[test]
    fn monotone_in_bound_tightening() {
        // minimize x s.t. x >= lo; raising lo never lowers the optimum
        let mut prev = f64::NEG_INFINITY;
        for lo in [0.5, 1.0, 2.0, 4.0] {
            let p = SdpProblem {
                num_vars: 1,
                objective: vec![1.0],
                blocks: vec![scalar_block(-lo, vec![1.0])],
            };
            let sol = solve(&p, &SolverOptions::default()).unwrap();
            assert!(sol.objective >= prev);
            prev = sol.objective;
        }
    }

    #[test]
    fn rejects_bad_dims() {
        let p = SdpProblem {
            num_vars: 2,
            objective: vec![1.0],
            blocks: vec![],
        };
        assert!(matches!(p.validate(), Err(SdpError::DimensionMismatch(_))));
    }
}
