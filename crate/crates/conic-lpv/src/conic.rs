//! Interior-conic certificates for polytopic systems: feasibility of the
//! vertex-wise sector LMIs under one common Lyapunov matrix, the three
//! tight-bound searches (max lower bound, min upper bound, min radius), and
//! trajectory-level numerical checks of the sector inequality.

use serde::Serialize;
use thiserror::Error;

use crate::lmi::{strict_margin, LmiError, LmiProgram};
use crate::lpvsys::ConicChannelView;
use crate::matcore::{self, Matrix};
use crate::sdp::{self, SdpError, SdpStatus, SolverOptions};

/// Sector bounds `a < b`; `b` may be infinite. For plant certification the
/// sector must straddle zero (`a < 0 < b`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConicSector {
    pub a: f64,
    pub b: f64,
}

impl ConicSector {
    pub fn new(a: f64, b: f64) -> Result<Self, ConicError> {
        if !a.is_finite() || a >= b || b.is_nan() {
            return Err(ConicError::BadSector(format!("need finite a < b, got [{a}, {b}]")));
        }
        Ok(ConicSector { a, b })
    }

    pub fn is_bounded(&self) -> bool {
        self.b.is_finite()
    }

    pub fn centre(&self) -> f64 {
        0.5 * (self.a + self.b)
    }

    pub fn radius(&self) -> f64 {
        0.5 * (self.b - self.a)
    }

    /// `kappa = -a b` (finite sectors only).
    pub fn kappa(&self) -> f64 {
        -self.a * self.b
    }

    pub fn straddles_zero(&self) -> bool {
        self.a < 0.0 && self.b > 0.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CertMethod {
    Theorem2,
    Corollary2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CertifyForm {
    /// corollary form for unbounded or very large upper bounds
    #[default]
    Auto,
    Theorem2,
    Corollary2,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolverStats {
    pub status: SdpStatus,
    pub iterations: usize,
    pub worst_block_min_eig: f64,
}

/// A certified sector: the common Lyapunov matrix plus independently
/// re-checked per-vertex residuals.
#[derive(Clone, Debug)]
pub struct ConeCertificate {
    pub sector: ConicSector,
    /// `P` for the direct form, the rescaled matrix for the corollary form
    pub p: Matrix,
    pub method: CertMethod,
    /// smallest eigenvalue of each negated vertex block (want `>= -1e-6`)
    pub vertex_residuals: Vec<f64>,
    pub p_min_eig: f64,
    pub solver: SolverStats,
}

pub const RESIDUAL_TOL: f64 = 1e-6; // 10 * default feas_tol

impl ConeCertificate {
    /// Independent soundness re-check with fresh eigenvalue computations.
    pub fn recheck(&self, view: &ConicChannelView) -> Result<Vec<f64>, ConicError> {
        let residuals = vertex_residuals(view, &self.sector, self.method, &self.p)?;
        if residuals.iter().any(|&r| r < -RESIDUAL_TOL) {
            return Err(ConicError::Numerical(format!(
                "certificate residual check failed: worst {:.3e}",
                residuals.iter().cloned().fold(f64::INFINITY, f64::min)
            )));
        }
        Ok(residuals)
    }

    pub fn to_report(&self) -> CertificateReport {
        CertificateReport {
            sector: SectorReport::from(&self.sector),
            method: self.method,
            p: self.p.to_nested(),
            p_min_eig: self.p_min_eig,
            // residuals in the source orientation: largest eigenvalue of the
            // negative-semidefinite block, nonpositive when satisfied
            vertex_block_max_eigs: self.vertex_residuals.iter().map(|r| -r).collect(),
            solver: self.solver.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SectorReport {
    pub a: f64,
    /// absent means unbounded above
    pub b: Option<f64>,
    pub centre: Option<f64>,
    pub radius: Option<f64>,
    pub kappa: Option<f64>,
}

impl From<&ConicSector> for SectorReport {
    fn from(s: &ConicSector) -> Self {
        if s.is_bounded() {
            SectorReport {
                a: s.a,
                b: Some(s.b),
                centre: Some(s.centre()),
                radius: Some(s.radius()),
                kappa: Some(s.kappa()),
            }
        } else {
            SectorReport { a: s.a, b: None, centre: None, radius: None, kappa: None }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateReport {
    pub sector: SectorReport,
    pub method: CertMethod,
    pub p: Vec<Vec<f64>>,
    pub p_min_eig: f64,
    pub vertex_block_max_eigs: Vec<f64>,
    pub solver: SolverStats,
}

#[derive(Debug, Error)]
pub enum ConicError {
    #[error("bad sector: {0}")]
    BadSector(String),
    #[error("sector could not be certified (solver status {status:?}): {details}")]
    Uncertified { status: SdpStatus, details: String },
    #[error("signal length mismatch: {0}")]
    LengthMismatch(String),
    #[error("gains must be nonnegative")]
    NegativeGain,
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error(transparent)]
    Lmi(#[from] LmiError),
    #[error(transparent)]
    Sdp(#[from] SdpError),
    #[error(transparent)]
    Mat(#[from] matcore::MatError),
}

/// Numeric vertex block in the source (negative-semidefinite) orientation.
pub fn sector_block(
    a_m: &Matrix,
    b_m: &Matrix,
    c_m: &Matrix,
    sector: &ConicSector,
    method: CertMethod,
    p: &Matrix,
) -> Matrix {
    let n = a_m.rows();
    let m = b_m.cols();
    let (cc_scale, cross, corner) = match method {
        CertMethod::Theorem2 => (1.0, sector.centre(), sector.a * sector.b),
        CertMethod::Corollary2 => {
            let inv_b = if sector.is_bounded() { 1.0 / sector.b } else { 0.0 };
            (inv_b, 0.5 * (sector.a * inv_b + 1.0), sector.a)
        }
    };
    let mut block = Matrix::zeros(n + m, n + m);
    let top = &(&p.matmul(a_m) + &a_m.transpose().matmul(p))
        + &c_m.transpose().matmul(c_m).scale(cc_scale);
    block.set_block(0, 0, &top.symmetrize());
    let off = &p.matmul(b_m) - &c_m.transpose().scale(cross);
    block.set_block(0, n, &off);
    block.set_block(n, 0, &off.transpose());
    let mut corner_m = Matrix::zeros(m, m);
    for i in 0..m {
        corner_m[(i, i)] = corner;
    }
    block.set_block(n, n, &corner_m);
    block
}

/// Per-vertex `min_eig(-(block))` with the given `P`; nonnegative-ish when
/// the certificate holds.
pub fn vertex_residuals(
    view: &ConicChannelView,
    sector: &ConicSector,
    method: CertMethod,
    p: &Matrix,
) -> Result<Vec<f64>, ConicError> {
    let mut out = Vec::with_capacity(view.num_vertices());
    for (a_m, b_m, c_m) in view.iter() {
        let block = sector_block(a_m, b_m, c_m, sector, method, p);
        out.push(matcore::min_eig(&block.scale(-1.0).symmetrize())?);
    }
    Ok(out)
}

fn pick_method(sector: &ConicSector, form: CertifyForm) -> Result<CertMethod, ConicError> {
    match form {
        CertifyForm::Theorem2 => {
            if !sector.is_bounded() {
                return Err(ConicError::BadSector(
                    "the direct form needs a finite upper bound".into(),
                ));
            }
            Ok(CertMethod::Theorem2)
        }
        CertifyForm::Corollary2 => Ok(CertMethod::Corollary2),
        CertifyForm::Auto => Ok(if !sector.is_bounded() || sector.b > 1e3 {
            CertMethod::Corollary2
        } else {
            CertMethod::Theorem2
        }),
    }
}

/// Builds the certification program for a fixed sector; returns the program
/// and the Lyapunov variable handle.
fn certification_program(
    view: &ConicChannelView,
    sector: &ConicSector,
    method: CertMethod,
) -> (LmiProgram, crate::lmi::Var) {
    let n = view.n();
    let eye_n = Matrix::identity(n);
    let mut prog = LmiProgram::new();
    let p = prog.declare_symmetric(n);
    for (a_m, b_m, c_m) in view.iter() {
        let (cc_scale, cross, corner) = match method {
            CertMethod::Theorem2 => (1.0, sector.centre(), sector.a * sector.b),
            CertMethod::Corollary2 => {
                let inv_b = if sector.is_bounded() { 1.0 / sector.b } else { 0.0 };
                (inv_b, 0.5 * (sector.a * inv_b + 1.0), sector.a)
            }
        };
        let e00 = prog
            .sandwich(eye_n.clone(), p, a_m.clone())
            .add(&prog.sandwich(a_m.transpose(), p, eye_n.clone()))
            .plus_const(&c_m.transpose().matmul(c_m).scale(cc_scale));
        let e10 = prog
            .sandwich(b_m.transpose(), p, eye_n.clone())
            .plus_const(&c_m.scale(-cross));
        let e11 = prog.konst(Matrix::identity(view.m()).scale(corner));
        prog.add_nsd_block(vec![vec![e00], vec![e10, e11]])
            .expect("certification grid dims are consistent by construction");
    }
    let eps = strict_margin(1.0);
    let pd = prog.var(p).plus_const(&eye_n.scale(-eps));
    prog.add_psd_block(vec![vec![pd]]).expect("P block");
    (prog, p)
}

/// Certifies `view` inside `cone[a, b]` with one common Lyapunov matrix
/// across all vertices. Infeasibility means "not certified", never
/// "not conic" — the conditions are sufficient only.
pub fn certify_cone(
    view: &ConicChannelView,
    sector: &ConicSector,
    form: CertifyForm,
    opts: &SolverOptions,
) -> Result<ConeCertificate, ConicError> {
    if !sector.straddles_zero() {
        return Err(ConicError::BadSector(format!(
            "plant certification needs a < 0 < b, got [{}, {}]",
            sector.a, sector.b
        )));
    }
    if !sector.is_bounded() && matches!(form, CertifyForm::Theorem2) {
        return Err(ConicError::BadSector("unbounded sector needs the corollary form".into()));
    }
    let method = pick_method(sector, form)?;
    let (prog, p_var) = certification_program(view, sector, method);
    let (problem, back) = prog.compile()?;
    let sol = sdp::check_feasible(&problem, opts)?;
    match sol.status {
        SdpStatus::Feasible | SdpStatus::Optimal => {}
        status => {
            return Err(ConicError::Uncertified {
                status,
                details: format!(
                    "sector [{}, {}] ({method:?}), worst block min-eig {:.3e}",
                    sector.a, sector.b, sol.worst_block_min_eig
                ),
            })
        }
    }
    let p = back.extract(p_var, &sol.x)?;
    let p_min_eig = matcore::min_eig(&p)?;
    let vertex_res = vertex_residuals(view, sector, method, &p)?;
    let cert = ConeCertificate {
        sector: *sector,
        p,
        method,
        vertex_residuals: vertex_res,
        p_min_eig,
        solver: SolverStats {
            status: sol.status,
            iterations: sol.iterations,
            worst_block_min_eig: sol.worst_block_min_eig,
        },
    };
    // the soundness gate: never hand out a certificate that does not
    // re-verify through the independent eigenvalue route
    cert.recheck(view)?;
    Ok(cert)
}

const BOUND_MARGIN: f64 = 1e-6;

/// Assembles a certificate from an already-solved Lyapunov matrix, gated by
/// the independent eigenvalue recheck. Used by the bound searches, whose
/// optimizers return strictly feasible interior points; re-solving from a
/// cold start near the feasibility boundary would be needlessly fragile.
fn certificate_from_parts(
    view: &ConicChannelView,
    sector: ConicSector,
    method: CertMethod,
    p: Matrix,
    stats: SolverStats,
) -> Result<ConeCertificate, ConicError> {
    let p_min_eig = matcore::min_eig(&p)?;
    if p_min_eig <= 0.0 {
        return Err(ConicError::Numerical("Lyapunov matrix not positive definite".into()));
    }
    let cert = ConeCertificate {
        sector,
        p,
        method,
        vertex_residuals: Vec::new(),
        p_min_eig,
        solver: stats,
    };
    let residuals = cert.recheck(view)?;
    Ok(ConeCertificate { vertex_residuals: residuals, ..cert })
}

/// Stage "fix `b`, maximize `a`" of the bound search; one SDP since `a`
/// enters the corollary-form blocks affinely. Returns the certified lower
/// bound (optimum minus a small margin) and a fresh certificate.
pub fn max_a_given_b(
    view: &ConicChannelView,
    b: f64,
    opts: &SolverOptions,
) -> Result<(f64, ConeCertificate), ConicError> {
    if !(b > 0.0) {
        return Err(ConicError::BadSector(format!("need b > 0 (or infinite), got {b}")));
    }
    let n = view.n();
    let m = view.m();
    let eye_n = Matrix::identity(n);
    let inv_b = if b.is_finite() { 1.0 / b } else { 0.0 };

    let mut prog = LmiProgram::new();
    let p = prog.declare_symmetric(n);
    let a_var = prog.declare_scalar();
    for (a_m, b_m, c_m) in view.iter() {
        let e00 = prog
            .sandwich(eye_n.clone(), p, a_m.clone())
            .add(&prog.sandwich(a_m.transpose(), p, eye_n.clone()))
            .plus_const(&c_m.transpose().matmul(c_m).scale(inv_b));
        let e10 = prog
            .sandwich(b_m.transpose(), p, eye_n.clone())
            .plus_const(&c_m.scale(-0.5))
            .add(&prog.scalar_times(a_var, &c_m.scale(-0.5 * inv_b)));
        let e11 = prog.scalar_times(a_var, &Matrix::identity(m));
        prog.add_nsd_block(vec![vec![e00], vec![e10, e11]])?;
    }
    let eps = strict_margin(1.0);
    let pd = prog.var(p).plus_const(&eye_n.scale(-eps));
    prog.add_psd_block(vec![vec![pd]])?;
    // keep the lower bound on the negative side
    prog.add_nsd_block(vec![vec![prog.var(a_var)]])?;
    prog.minimize(vec![(a_var, Matrix::scalar(-1.0))]);

    let (problem, back) = prog.compile()?;
    let sol = sdp::solve(&problem, opts)?;
    match sol.status {
        SdpStatus::Optimal | SdpStatus::Feasible => {}
        status => {
            return Err(ConicError::Uncertified {
                status,
                details: "lower-bound search infeasible (unstable vertex dynamics?)".into(),
            })
        }
    }
    let a_opt = back.extract_scalar(a_var, &sol.x)?;
    let p_ret = back.extract(p, &sol.x)?;
    let stats = SolverStats {
        status: sol.status,
        iterations: sol.iterations,
        worst_block_min_eig: sol.worst_block_min_eig,
    };
    // the optimizer's own interior point certifies the margin-shifted bound
    // directly (pushing `a` down only helps the corollary-form blocks)
    let a_star = a_opt - BOUND_MARGIN;
    if let Ok(cert) = ConicSector::new(a_star, b).and_then(|sector| {
        certificate_from_parts(view, sector, CertMethod::Corollary2, p_ret, stats)
    }) {
        return Ok((a_star, cert));
    }
    for widen in [10.0, 100.0] {
        let a_star = a_opt - BOUND_MARGIN * widen;
        let sector = ConicSector::new(a_star, b)?;
        if let Ok(cert) = certify_cone(view, &sector, CertifyForm::Corollary2, opts) {
            return Ok((a_star, cert));
        }
    }
    // Feasible sets with an empty interior can send the barrier drifting
    // along a flat ridge; recover by bisecting on certifiability instead.
    bisect_max_a(view, b, opts).ok_or_else(|| {
        ConicError::Numerical(format!(
            "could not re-certify near the optimal lower bound {a_opt:.6e}"
        ))
    })
}

fn bisect_max_a(
    view: &ConicChannelView,
    b: f64,
    opts: &SolverOptions,
) -> Option<(f64, ConeCertificate)> {
    let probe = |a: f64| -> Option<ConeCertificate> {
        let sector = ConicSector::new(a, b).ok()?;
        certify_cone(view, &sector, CertifyForm::Auto, opts).ok()
    };
    if let Some(cert) = probe(-BOUND_MARGIN) {
        return Some((-BOUND_MARGIN, cert));
    }
    let mut lo = None;
    let mut mag = 1e-3;
    while mag <= 1e6 {
        if probe(-mag).is_some() {
            lo = Some(-mag);
            break;
        }
        mag *= 10.0;
    }
    let mut lo = lo?;
    let mut hi = -BOUND_MARGIN; // infeasible side
    for _ in 0..40 {
        let mid = 0.5 * (lo + hi);
        if probe(mid).is_some() {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo).abs() <= 1e-6 * lo.abs().max(1e-3) {
            break;
        }
    }
    probe(lo).map(|cert| (lo, cert))
}

/// Stage "fix `a`, minimize `b`"; `b` enters the direct-form blocks affinely.
pub fn min_b_given_a(
    view: &ConicChannelView,
    a: f64,
    opts: &SolverOptions,
) -> Result<(f64, ConeCertificate), ConicError> {
    if !(a < 0.0) || !a.is_finite() {
        return Err(ConicError::BadSector(format!("need finite a < 0, got {a}")));
    }
    let n = view.n();
    let m = view.m();
    let eye_n = Matrix::identity(n);

    let mut prog = LmiProgram::new();
    let p = prog.declare_symmetric(n);
    let b_var = prog.declare_scalar();
    for (a_m, b_m, c_m) in view.iter() {
        let e00 = prog
            .sandwich(eye_n.clone(), p, a_m.clone())
            .add(&prog.sandwich(a_m.transpose(), p, eye_n.clone()))
            .plus_const(&c_m.transpose().matmul(c_m));
        let e10 = prog
            .sandwich(b_m.transpose(), p, eye_n.clone())
            .plus_const(&c_m.scale(-0.5 * a))
            .add(&prog.scalar_times(b_var, &c_m.scale(-0.5)));
        let e11 = prog.scalar_times(b_var, &Matrix::identity(m).scale(a));
        prog.add_nsd_block(vec![vec![e00], vec![e10, e11]])?;
    }
    let eps = strict_margin(1.0);
    let pd = prog.var(p).plus_const(&eye_n.scale(-eps));
    prog.add_psd_block(vec![vec![pd]])?;
    // upper bound stays positive
    prog.add_psd_block(vec![vec![prog.var(b_var)]])?;
    prog.minimize(vec![(b_var, Matrix::scalar(1.0))]);

    let (problem, back) = prog.compile()?;
    let sol = sdp::solve(&problem, opts)?;
    match sol.status {
        SdpStatus::Optimal | SdpStatus::Feasible => {}
        status => {
            return Err(ConicError::Uncertified {
                status,
                details: format!("upper-bound search infeasible at a = {a}"),
            })
        }
    }
    let b_opt = back.extract_scalar(b_var, &sol.x)?;
    let p_ret = back.extract(p, &sol.x)?;
    let stats = SolverStats {
        status: sol.status,
        iterations: sol.iterations,
        worst_block_min_eig: sol.worst_block_min_eig,
    };
    let b_star = b_opt + BOUND_MARGIN * b_opt.abs().max(1.0);
    if let Ok(cert) = ConicSector::new(a, b_star).and_then(|sector| {
        certificate_from_parts(view, sector, CertMethod::Theorem2, p_ret, stats)
    }) {
        return Ok((b_star, cert));
    }
    for widen in [10.0, 100.0] {
        let b_star = b_opt + BOUND_MARGIN * widen * b_opt.abs().max(1.0);
        let sector = ConicSector::new(a, b_star)?;
        if let Ok(cert) = certify_cone(view, &sector, CertifyForm::Auto, opts) {
            return Ok((b_star, cert));
        }
    }
    bisect_min_b(view, a, opts).ok_or_else(|| {
        ConicError::Numerical(format!(
            "could not re-certify near the optimal upper bound {b_opt:.6e}"
        ))
    })
}

fn bisect_min_b(
    view: &ConicChannelView,
    a: f64,
    opts: &SolverOptions,
) -> Option<(f64, ConeCertificate)> {
    let probe = |b: f64| -> Option<ConeCertificate> {
        let sector = ConicSector::new(a, b).ok()?;
        certify_cone(view, &sector, CertifyForm::Auto, opts).ok()
    };
    let mut hi = None;
    let mut b = 1.0;
    while b <= 1e9 {
        if probe(b).is_some() {
            hi = Some(b);
            break;
        }
        b *= 4.0;
    }
    let mut hi = hi?;
    let mut lo = 0.0; // infeasible side
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if mid <= 0.0 {
            break;
        }
        if probe(mid).is_some() {
            hi = mid;
        } else {
            lo = mid;
        }
        if (hi - lo) <= 1e-6 * hi.max(1e-3) {
            break;
        }
    }
    probe(hi).map(|cert| (hi, cert))
}

/// Result of the minimum-radius search.
#[derive(Clone, Debug)]
pub struct MinRadiusResult {
    pub sector: ConicSector,
    pub certificate: ConeCertificate,
    pub centre: f64,
    pub kappa: f64,
    pub z_star: f64,
}

/// Minimizes the conic radius through the centre/kappa reparameterization
/// and a slack variable that linearizes `r^2 = c^2 + kappa`.
pub fn bounds_min_radius(
    view: &ConicChannelView,
    opts: &SolverOptions,
) -> Result<MinRadiusResult, ConicError> {
    let n = view.n();
    let m = view.m();
    let eye_n = Matrix::identity(n);

    let mut prog = LmiProgram::new();
    let p = prog.declare_symmetric(n);
    let c_var = prog.declare_scalar();
    let kappa = prog.declare_scalar();
    let z = prog.declare_scalar();
    for (a_m, b_m, c_m) in view.iter() {
        let e00 = prog
            .sandwich(eye_n.clone(), p, a_m.clone())
            .add(&prog.sandwich(a_m.transpose(), p, eye_n.clone()))
            .plus_const(&c_m.transpose().matmul(c_m));
        let e10 = prog
            .sandwich(b_m.transpose(), p, eye_n.clone())
            .add(&prog.scalar_times(c_var, &c_m.scale(-1.0)));
        let e11 = prog.scalar_times(kappa, &Matrix::identity(m).scale(-1.0));
        prog.add_nsd_block(vec![vec![e00], vec![e10, e11]])?;
    }
    // z - kappa >= c^2 through the Schur grid [[z - kappa, c], [c, 1]]
    let s00 = prog.var(z).sub(&prog.var(kappa));
    let s10 = prog.var(c_var);
    let s11 = prog.konst(Matrix::scalar(1.0));
    prog.add_psd_block(vec![vec![s00], vec![s10, s11]])?;
    let eps = strict_margin(1.0);
    let pd = prog.var(p).plus_const(&eye_n.scale(-eps));
    prog.add_psd_block(vec![vec![pd]])?;
    prog.minimize(vec![(z, Matrix::scalar(1.0))]);

    let (problem, back) = prog.compile()?;
    let sol = sdp::solve(&problem, opts)?;
    match sol.status {
        SdpStatus::Optimal | SdpStatus::Feasible => {}
        status => {
            return Err(ConicError::Uncertified {
                status,
                details: "minimum-radius search infeasible".into(),
            })
        }
    }
    let centre = back.extract_scalar(c_var, &sol.x)?;
    let kappa_v = back.extract_scalar(kappa, &sol.x)?;
    let z_star = back.extract_scalar(z, &sol.x)?;
    let r = z_star.max(0.0).sqrt();
    let sector = ConicSector::new(centre - r, centre + r)?;
    if !sector.straddles_zero() {
        return Err(ConicError::BadSector(format!(
            "minimum-radius sector [{}, {}] does not straddle zero",
            sector.a, sector.b
        )));
    }
    // the solved point certifies its own sector: r^2 = z >= c^2 + kappa means
    // the implied corner term is at least as negative as the solved one
    let p_ret = back.extract(p, &sol.x)?;
    let stats = SolverStats {
        status: sol.status,
        iterations: sol.iterations,
        worst_block_min_eig: sol.worst_block_min_eig,
    };
    let certificate =
        match certificate_from_parts(view, sector, CertMethod::Theorem2, p_ret, stats) {
            Ok(cert) => cert,
            Err(_) => certify_cone(view, &sector, CertifyForm::Auto, opts)?,
        };
    Ok(MinRadiusResult { sector, certificate, centre, kappa: kappa_v, z_star })
}

fn dot_slice(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
}

/// Cumulative trapezoid integrals of a per-sample scalar integrand.
fn cumulative_trapezoid(values: &[f64], dt: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(values.len());
    let mut acc = 0.0;
    out.push(0.0);
    for k in 1..values.len() {
        acc += 0.5 * dt * (values[k - 1] + values[k]);
        out.push(acc);
    }
    out
}

/// Evaluates the sector inequality along a sampled trajectory and returns
/// the worst margin over all truncation times; nonnegative (within
/// quadrature noise) whenever the certificate is sound.
///
/// For unbounded sectors the inequality is checked in its rescaled form
/// (divided through by the upper bound).
pub fn empirical_cone_check(
    u: &[Vec<f64>],
    y: &[Vec<f64>],
    x0: &[f64],
    p: &Matrix,
    sector: &ConicSector,
    method: CertMethod,
    dt: f64,
) -> Result<f64, ConicError> {
    if u.len() != y.len() || u.is_empty() {
        return Err(ConicError::LengthMismatch(format!(
            "u has {} samples, y has {}",
            u.len(),
            y.len()
        )));
    }
    if p.rows() != x0.len() {
        return Err(ConicError::LengthMismatch("x0 length vs P".into()));
    }
    let yy: Vec<f64> = y.iter().map(|yk| dot_slice(yk, yk)).collect();
    let yu: Vec<f64> = y.iter().zip(u.iter()).map(|(yk, uk)| dot_slice(yk, uk)).collect();
    let uu: Vec<f64> = u.iter().map(|uk| dot_slice(uk, uk)).collect();
    let i_yy = cumulative_trapezoid(&yy, dt);
    let i_yu = cumulative_trapezoid(&yu, dt);
    let i_uu = cumulative_trapezoid(&uu, dt);

    // beta = -x0' P x0 in the scaling that matches the stored P
    let x0m = Matrix::column(x0);
    let beta = -(x0m.transpose().matmul(p).matmul(&x0m))[(0, 0)];

    let mut worst = f64::INFINITY;
    for k in 0..u.len() {
        // for the corollary form the stored matrix is the rescaled one, so
        // the inequality is evaluated divided through by the upper bound
        let value = if sector.is_bounded() {
            match method {
                CertMethod::Theorem2 => {
                    -i_yy[k] + (sector.a + sector.b) * i_yu[k] - sector.a * sector.b * i_uu[k]
                }
                CertMethod::Corollary2 => {
                    let inv_b = 1.0 / sector.b;
                    -inv_b * i_yy[k] + (sector.a * inv_b + 1.0) * i_yu[k] - sector.a * i_uu[k]
                }
            }
        } else {
            // limit of the rescaled inequality as the upper bound grows
            i_yu[k] - sector.a * i_uu[k]
        };
        worst = worst.min(value - beta);
    }
    Ok(worst)
}

/// Verifies the scheduling-signal norm inequality along sampled vertex
/// outputs: the combined output never carries more truncated energy than
/// the schedule-weighted vertex outputs.
pub fn lemma1_check(
    schedule: &[Vec<f64>],
    vertex_outputs: &[Vec<Vec<f64>>],
    dt: f64,
) -> Result<bool, ConicError> {
    let num_vertices = vertex_outputs.len();
    if num_vertices == 0 {
        return Err(ConicError::LengthMismatch("no vertex outputs".into()));
    }
    let len = schedule.len();
    if vertex_outputs.iter().any(|v| v.len() != len) || len == 0 {
        return Err(ConicError::LengthMismatch(
            "schedule and vertex outputs must share the sample grid".into(),
        ));
    }
    let m = vertex_outputs[0][0].len();
    let mut lhs_int = vec![0.0; len]; // |sum_i s_i y_i|^2 pointwise
    let mut rhs_int = vec![0.0; len]; // sum_i s_i |y_i|^2 pointwise
    for k in 0..len {
        let s = &schedule[k];
        if s.len() != num_vertices {
            return Err(ConicError::LengthMismatch("schedule width".into()));
        }
        let mut combined = vec![0.0; m];
        let mut weighted = 0.0;
        for (i, yi) in vertex_outputs.iter().enumerate() {
            for (j, v) in yi[k].iter().enumerate() {
                combined[j] += s[i] * v;
            }
            weighted += s[i] * dot_slice(&yi[k], &yi[k]);
        }
        lhs_int[k] = dot_slice(&combined, &combined);
        rhs_int[k] = weighted;
    }
    let lhs = cumulative_trapezoid(&lhs_int, dt);
    let rhs = cumulative_trapezoid(&rhs_int, dt);
    Ok(lhs
        .iter()
        .zip(rhs.iter())
        .all(|(l, r)| *l <= *r + 1e-9 * (1.0 + r.abs())))
}

/// Loop-gain product test: true exactly when `g1 * g2 < 1`.
pub fn small_gain_check(gamma1: f64, gamma2: f64) -> Result<bool, ConicError> {
    if gamma1 < 0.0 || gamma2 < 0.0 {
        return Err(ConicError::NegativeGain);
    }
    Ok(gamma1 * gamma2 < 1.0)
}
