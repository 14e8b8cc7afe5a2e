//! Symbolic block-LMI modeling: declare matrix/scalar variables, assemble
//! affine block grids (lower triangle given, symmetry implied — mirroring
//! the usual star notation), compile to an [`SdpProblem`], and map solved
//! vectors back to named variables.

use thiserror::Error;

use crate::matcore::Matrix;
use crate::sdp::{SdpBlock, SdpProblem};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarKind {
    Symmetric(usize),
    Rectangular(usize, usize),
    Scalar,
}

impl VarKind {
    pub fn shape(&self) -> (usize, usize) {
        match *self {
            VarKind::Symmetric(n) => (n, n),
            VarKind::Rectangular(r, c) => (r, c),
            VarKind::Scalar => (1, 1),
        }
    }

    pub fn num_scalars(&self) -> usize {
        match *self {
            VarKind::Symmetric(n) => n * (n + 1) / 2,
            VarKind::Rectangular(r, c) => r * c,
            VarKind::Scalar => 1,
        }
    }
}

/// Handle to a declared decision variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Var(usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Psd,
    Nsd,
}

#[derive(Clone, Debug)]
struct Term {
    sign: f64,
    left: Matrix,
    var: Var,
    transposed: bool,
    right: Matrix,
}

/// Matrix-valued expression, affine in the declared variables.
#[derive(Clone, Debug)]
pub struct AffineExpr {
    rows: usize,
    cols: usize,
    constant: Matrix,
    terms: Vec<Term>,
}

impl AffineExpr {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn add(mut self, other: &AffineExpr) -> AffineExpr {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "expr shape");
        self.constant.add_in_place(&other.constant, 1.0);
        self.terms.extend(other.terms.iter().cloned());
        self
    }

    pub fn sub(mut self, other: &AffineExpr) -> AffineExpr {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "expr shape");
        self.constant.add_in_place(&other.constant, -1.0);
        for t in &other.terms {
            let mut t = t.clone();
            t.sign = -t.sign;
            self.terms.push(t);
        }
        self
    }

    pub fn scale(mut self, s: f64) -> AffineExpr {
        self.constant = self.constant.scale(s);
        for t in &mut self.terms {
            t.sign *= s;
        }
        self
    }

    pub fn plus_const(mut self, m: &Matrix) -> AffineExpr {
        assert_eq!((self.rows, self.cols), (m.rows(), m.cols()), "const shape");
        self.constant.add_in_place(m, 1.0);
        self
    }

}

#[derive(Clone, Debug)]
struct Constraint {
    sense: Sense,
    /// lower triangle: row i holds i+1 expressions
    grid: Vec<Vec<AffineExpr>>,
    row_dims: Vec<usize>,
}

#[derive(Debug, Error)]
pub enum LmiError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("program has no constraints")]
    EmptyProgram,
    #[error("unknown variable handle")]
    UnknownHandle,
}

/// Margin used to realize strict inequalities as shifted closed ones.
pub fn strict_margin(scale: f64) -> f64 {
    1e-6 * scale.max(1.0)
}

#[derive(Default)]
pub struct LmiProgram {
    vars: Vec<VarKind>,
    constraints: Vec<Constraint>,
    objective: Vec<(Var, Matrix)>,
}

impl LmiProgram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn declare(&mut self, kind: VarKind) -> Var {
        let (r, c) = kind.shape();
        assert!(r >= 1 && c >= 1, "variables must be at least 1x1");
        self.vars.push(kind);
        Var(self.vars.len() - 1)
    }

    pub fn declare_symmetric(&mut self, n: usize) -> Var {
        self.declare(VarKind::Symmetric(n))
    }

    pub fn declare_rectangular(&mut self, r: usize, c: usize) -> Var {
        self.declare(VarKind::Rectangular(r, c))
    }

    pub fn declare_scalar(&mut self) -> Var {
        self.declare(VarKind::Scalar)
    }

    pub fn kind(&self, v: Var) -> VarKind {
        self.vars[v.0]
    }

    pub fn num_scalar_unknowns(&self, v: Var) -> usize {
        self.vars[v.0].num_scalars()
    }

    pub fn konst(&self, m: Matrix) -> AffineExpr {
        AffineExpr {
            rows: m.rows(),
            cols: m.cols(),
            constant: m,
            terms: Vec::new(),
        }
    }

    pub fn zeros(&self, rows: usize, cols: usize) -> AffineExpr {
        self.konst(Matrix::zeros(rows, cols))
    }

    /// The bare variable as an expression.
    pub fn var(&self, v: Var) -> AffineExpr {
        let (r, c) = self.vars[v.0].shape();
        self.sandwich(Matrix::identity(r), v, Matrix::identity(c))
    }

    /// The transposed variable as an expression.
    pub fn var_t(&self, v: Var) -> AffineExpr {
        let (r, c) = self.vars[v.0].shape();
        self.sandwich_t(Matrix::identity(c), v, Matrix::identity(r))
    }

    /// `L * V * R` with known `L`, `R`.
    pub fn sandwich(&self, left: Matrix, v: Var, right: Matrix) -> AffineExpr {
        let (r, c) = self.vars[v.0].shape();
        assert_eq!(left.cols(), r, "left factor width");
        assert_eq!(right.rows(), c, "right factor height");
        AffineExpr {
            rows: left.rows(),
            cols: right.cols(),
            constant: Matrix::zeros(left.rows(), right.cols()),
            terms: vec![Term { sign: 1.0, left, var: v, transposed: false, right }],
        }
    }

    /// `coeff * v` for a scalar variable and an arbitrary known coefficient
    /// matrix, expanded into one rank-one term per nonzero row.
    pub fn scalar_times(&self, v: Var, coeff: &Matrix) -> AffineExpr {
        assert!(
            matches!(self.vars[v.0], VarKind::Scalar),
            "scalar_times needs a scalar variable"
        );
        let (r, c) = (coeff.rows(), coeff.cols());
        let mut terms = Vec::new();
        for i in 0..r {
            let row = coeff.block(i, 0, 1, c);
            if row.norm_max() == 0.0 {
                continue;
            }
            let mut left = Matrix::zeros(r, 1);
            left[(i, 0)] = 1.0;
            terms.push(Term { sign: 1.0, left, var: v, transposed: false, right: row });
        }
        AffineExpr { rows: r, cols: c, constant: Matrix::zeros(r, c), terms }
    }

    /// `L * V^T * R` with known `L`, `R`.
    pub fn sandwich_t(&self, left: Matrix, v: Var, right: Matrix) -> AffineExpr {
        let (r, c) = self.vars[v.0].shape();
        assert_eq!(left.cols(), c, "left factor width");
        assert_eq!(right.rows(), r, "right factor height");
        AffineExpr {
            rows: left.rows(),
            cols: right.cols(),
            constant: Matrix::zeros(left.rows(), right.cols()),
            terms: vec![Term { sign: 1.0, left, var: v, transposed: true, right }],
        }
    }

    /// Adds a PSD block constraint from its lower triangle.
    pub fn add_psd_block(&mut self, lower: Vec<Vec<AffineExpr>>) -> Result<usize, LmiError> {
        self.add_block(Sense::Psd, lower)
    }

    /// Adds an NSD block constraint from its lower triangle (negated at compile).
    pub fn add_nsd_block(&mut self, lower: Vec<Vec<AffineExpr>>) -> Result<usize, LmiError> {
        self.add_block(Sense::Nsd, lower)
    }

    fn add_block(&mut self, sense: Sense, lower: Vec<Vec<AffineExpr>>) -> Result<usize, LmiError> {
        if lower.is_empty() {
            return Err(LmiError::DimensionMismatch("empty constraint grid".into()));
        }
        let mut row_dims = Vec::with_capacity(lower.len());
        for (i, row) in lower.iter().enumerate() {
            if row.len() != i + 1 {
                return Err(LmiError::DimensionMismatch(format!(
                    "lower-triangle row {i} has {} entries, expected {}",
                    row.len(),
                    i + 1
                )));
            }
            let diag = &row[i];
            if diag.rows() != diag.cols() {
                return Err(LmiError::DimensionMismatch(format!(
                    "diagonal block {i} is {}x{}",
                    diag.rows(),
                    diag.cols()
                )));
            }
            row_dims.push(diag.rows());
        }
        for (i, row) in lower.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                if cell.rows() != row_dims[i] || cell.cols() != row_dims[j] {
                    return Err(LmiError::DimensionMismatch(format!(
                        "block ({i},{j}) is {}x{}, expected {}x{}",
                        cell.rows(),
                        cell.cols(),
                        row_dims[i],
                        row_dims[j]
                    )));
                }
            }
        }
        self.constraints.push(Constraint { sense, grid: lower, row_dims });
        Ok(self.constraints.len() - 1)
    }

    /// Sets the linear objective `minimize sum_k <coeff_k, V_k>`.
    pub fn minimize(&mut self, terms: Vec<(Var, Matrix)>) {
        for (v, coeff) in &terms {
            let (r, c) = self.vars[v.0].shape();
            assert_eq!((coeff.rows(), coeff.cols()), (r, c), "objective coefficient shape");
        }
        self.objective = terms;
    }

    fn scalar_layout(&self) -> (Vec<usize>, usize) {
        let mut offsets = Vec::with_capacity(self.vars.len());
        let mut total = 0usize;
        for k in &self.vars {
            offsets.push(total);
            total += k.num_scalars();
        }
        (offsets, total)
    }

    fn materialize(&self, v: Var, x: &[f64], offsets: &[usize]) -> Matrix {
        let kind = self.vars[v.0];
        let off = offsets[v.0];
        match kind {
            VarKind::Scalar => Matrix::scalar(x[off]),
            VarKind::Rectangular(r, c) => {
                let mut m = Matrix::zeros(r, c);
                for i in 0..r {
                    for j in 0..c {
                        m[(i, j)] = x[off + i * c + j];
                    }
                }
                m
            }
            VarKind::Symmetric(n) => {
                let mut m = Matrix::zeros(n, n);
                let mut k = 0usize;
                for i in 0..n {
                    for j in i..n {
                        m[(i, j)] = x[off + k];
                        m[(j, i)] = x[off + k];
                        k += 1;
                    }
                }
                m
            }
        }
    }

    fn eval_expr(&self, e: &AffineExpr, x: &[f64], offsets: &[usize]) -> Matrix {
        let mut out = e.constant.clone();
        for t in &e.terms {
            let v = self.materialize(t.var, x, offsets);
            let v = if t.transposed { v.transpose() } else { v };
            let term = t.left.matmul(&v).matmul(&t.right).scale(t.sign);
            out.add_in_place(&term, 1.0);
        }
        out
    }

    /// Scalarizes a full variable assignment into the compiled layout
    /// (variables not mentioned stay zero). Useful for warm starts.
    pub fn assignment_vector(&self, assignment: &[(Var, Matrix)]) -> Result<Vec<f64>, LmiError> {
        let (offsets, total) = self.scalar_layout();
        let mut x = vec![0.0; total];
        for (v, m) in assignment {
            self.write_scalars(*v, m, &mut x, &offsets)?;
        }
        Ok(x)
    }

    /// Numerically evaluates a constraint's full symmetric block matrix.
    pub fn eval_constraint(&self, id: usize, assignment: &[(Var, Matrix)]) -> Result<Matrix, LmiError> {
        let (offsets, total) = self.scalar_layout();
        let mut x = vec![0.0; total];
        for (v, m) in assignment {
            self.write_scalars(*v, m, &mut x, &offsets)?;
        }
        let c = self
            .constraints
            .get(id)
            .ok_or(LmiError::UnknownHandle)?;
        Ok(self.assemble(c, &x, &offsets))
    }

    fn write_scalars(&self, v: Var, m: &Matrix, x: &mut [f64], offsets: &[usize]) -> Result<(), LmiError> {
        if v.0 >= self.vars.len() {
            return Err(LmiError::UnknownHandle);
        }
        let kind = self.vars[v.0];
        let (r, c) = kind.shape();
        if (m.rows(), m.cols()) != (r, c) {
            return Err(LmiError::DimensionMismatch(format!(
                "value for variable is {}x{}, expected {r}x{c}",
                m.rows(),
                m.cols()
            )));
        }
        let off = offsets[v.0];
        match kind {
            VarKind::Scalar => x[off] = m[(0, 0)],
            VarKind::Rectangular(r, c) => {
                for i in 0..r {
                    for j in 0..c {
                        x[off + i * c + j] = m[(i, j)];
                    }
                }
            }
            VarKind::Symmetric(n) => {
                let mut k = 0;
                for i in 0..n {
                    for j in i..n {
                        x[off + k] = 0.5 * (m[(i, j)] + m[(j, i)]);
                        k += 1;
                    }
                }
            }
        }
        Ok(())
    }

    fn assemble(&self, c: &Constraint, x: &[f64], offsets: &[usize]) -> Matrix {
        let total: usize = c.row_dims.iter().sum();
        let starts: Vec<usize> = c
            .row_dims
            .iter()
            .scan(0usize, |acc, d| {
                let s = *acc;
                *acc += d;
                Some(s)
            })
            .collect();
        let mut m = Matrix::zeros(total, total);
        for (i, row) in c.grid.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                let val = self.eval_expr(cell, x, offsets);
                if i == j {
                    m.set_block(starts[i], starts[j], &val.symmetrize());
                } else {
                    m.set_block(starts[i], starts[j], &val);
                    m.set_block(starts[j], starts[i], &val.transpose());
                }
            }
        }
        m
    }

    /// Compiles the program into SDP standard form plus a back-map.
    pub fn compile(&self) -> Result<(SdpProblem, BackMap), LmiError> {
        if self.constraints.is_empty() {
            return Err(LmiError::EmptyProgram);
        }
        let (offsets, m) = self.scalar_layout();
        let zero = vec![0.0; m];

        let mut blocks = Vec::with_capacity(self.constraints.len());
        for c in &self.constraints {
            let f0_raw = self.assemble(c, &zero, &offsets);
            let mut coeffs = Vec::with_capacity(m);
            let mut unit = vec![0.0; m];
            for k in 0..m {
                unit[k] = 1.0;
                let fk = &self.assemble(c, &unit, &offsets) - &f0_raw;
                unit[k] = 0.0;
                coeffs.push(match c.sense {
                    Sense::Psd => fk,
                    Sense::Nsd => fk.scale(-1.0),
                });
            }
            let f0 = match c.sense {
                Sense::Psd => f0_raw,
                Sense::Nsd => f0_raw.scale(-1.0),
            };
            blocks.push(SdpBlock { f0, coeffs });
        }

        let mut objective = vec![0.0; m];
        for (v, coeff) in &self.objective {
            let off = offsets[v.0];
            match self.vars[v.0] {
                VarKind::Scalar => objective[off] += coeff[(0, 0)],
                VarKind::Rectangular(r, c) => {
                    for i in 0..r {
                        for j in 0..c {
                            objective[off + i * c + j] += coeff[(i, j)];
                        }
                    }
                }
                VarKind::Symmetric(n) => {
                    // c . V with the doubled off-diagonal parameterization
                    let mut k = 0;
                    for i in 0..n {
                        for j in i..n {
                            objective[off + k] += if i == j {
                                coeff[(i, j)]
                            } else {
                                coeff[(i, j)] + coeff[(j, i)]
                            };
                            k += 1;
                        }
                    }
                }
            }
        }

        let problem = SdpProblem { num_vars: m, objective, blocks };
        let back = BackMap { vars: self.vars.clone(), offsets };
        Ok((problem, back))
    }
}

/// Inverts the scalarization: recovers named variables from a solved vector.
#[derive(Clone, Debug)]
pub struct BackMap {
    vars: Vec<VarKind>,
    offsets: Vec<usize>,
}

impl BackMap {
    pub fn extract(&self, v: Var, x: &[f64]) -> Result<Matrix, LmiError> {
        if v.0 >= self.vars.len() {
            return Err(LmiError::UnknownHandle);
        }
        let off = self.offsets[v.0];
        Ok(match self.vars[v.0] {
            VarKind::Scalar => Matrix::scalar(x[off]),
            VarKind::Rectangular(r, c) => {
                let mut m = Matrix::zeros(r, c);
                for i in 0..r {
                    for j in 0..c {
                        m[(i, j)] = x[off + i * c + j];
                    }
                }
                m
            }
            VarKind::Symmetric(n) => {
                let mut m = Matrix::zeros(n, n);
                let mut k = 0;
                for i in 0..n {
                    for j in i..n {
                        m[(i, j)] = x[off + k];
                        m[(j, i)] = x[off + k];
                        k += 1;
                    }
                }
                m
            }
        })
    }

    pub fn extract_scalar(&self, v: Var, x: &[f64]) -> Result<f64, LmiError> {
        let m = self.extract(v, x)?;
        if (m.rows(), m.cols()) != (1, 1) {
            return Err(LmiError::DimensionMismatch("not a scalar variable".into()));
        }
        Ok(m[(0, 0)])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sdp::{self, SdpStatus, SolverOptions};
    use approx::assert_abs_diff_eq;

    #[test]
    fn declare_scalar_counts() {
        let mut p = LmiProgram::new();
        let s = p.declare_symmetric(2);
        let r = p.declare_rectangular(2, 1);
        let a = p.declare_scalar();
        assert_eq!(p.num_scalar_unknowns(s), 3);
        assert_eq!(p.num_scalar_unknowns(r), 2);
        assert_eq!(p.num_scalar_unknowns(a), 1);
    }

    #[test]
    fn compile_single_scalar() {
        let mut p = LmiProgram::new();
        let x = p.declare_scalar();
        let e = p.var(x);
        p.add_psd_block(vec![vec![e]]).unwrap();
        let (prob, _) = p.compile().unwrap();
        assert_eq!(prob.num_vars, 1);
        assert_eq!(prob.blocks.len(), 1);
        assert_abs_diff_eq!(prob.blocks[0].f0[(0, 0)], 0.0);
        assert_abs_diff_eq!(prob.blocks[0].coeffs[0][(0, 0)], 1.0);
    }

    #[test]
    fn compile_matches_hand_expansion() {
        // A^T P + P A for A = [[0, 1], [-1, -1]], symmetric P
        let a = Matrix::from_rows(&[&[0.0, 1.0], &[-1.0, -1.0]]);
        let mut prog = LmiProgram::new();
        let p = prog.declare_symmetric(2);
        let expr = prog
            .sandwich(a.transpose(), p, Matrix::identity(2))
            .add(&prog.sandwich(Matrix::identity(2), p, a.clone()));
        prog.add_psd_block(vec![vec![expr]]).unwrap();
        let (prob, _) = prog.compile().unwrap();
        assert_eq!(prob.num_vars, 3);
        let expect = [
            Matrix::from_rows(&[&[0.0, 1.0], &[1.0, 0.0]]),   // d/dp11
            Matrix::from_rows(&[&[-2.0, -1.0], &[-1.0, 2.0]]), // d/dp12
            Matrix::from_rows(&[&[0.0, -1.0], &[-1.0, -2.0]]), // d/dp22
        ];
        for (k, want) in expect.iter().enumerate() {
            assert!(
                (&prob.blocks[0].coeffs[k] - want).norm_max() <= 1e-12,
                "coefficient {k} mismatch: {:?}",
                prob.blocks[0].coeffs[k]
            );
        }
    }

    #[test]
    fn schur_grid_three_variables() {
        // [[z - kappa, c], [c, 1]] >= 0 as a lower-triangle grid
        let mut prog = LmiProgram::new();
        let z = prog.declare_scalar();
        let kappa = prog.declare_scalar();
        let c = prog.declare_scalar();
        let e00 = prog.var(z).sub(&prog.var(kappa));
        let e10 = prog.var(c);
        let e11 = prog.konst(Matrix::scalar(1.0));
        prog.add_psd_block(vec![vec![e00], vec![e10, e11]]).unwrap();
        let (prob, _) = prog.compile().unwrap();
        assert_eq!(prob.num_vars, 3);
        assert_eq!(prob.blocks[0].f0.rows(), 2);
        assert_abs_diff_eq!(prob.blocks[0].f0[(1, 1)], 1.0);
        // symmetry of every compiled coefficient
        for f in &prob.blocks[0].coeffs {
            assert!(f.is_symmetric(1e-12));
        }
    }

    #[test]
    fn roundtrip_lyapunov_feasibility() {
        // A^T P + P A <= -eps I, P >= eps I for stable diagonal A
        let a = Matrix::diag(&[-1.0, -2.0]);
        let eps = 1e-6;
        let mut prog = LmiProgram::new();
        let p = prog.declare_symmetric(2);
        let lyap = prog
            .sandwich(a.transpose(), p, Matrix::identity(2))
            .add(&prog.sandwich(Matrix::identity(2), p, a.clone()))
            .plus_const(&Matrix::identity(2).scale(eps));
        prog.add_nsd_block(vec![vec![lyap]]).unwrap();
        let pd = prog.var(p).plus_const(&Matrix::identity(2).scale(-eps));
        prog.add_psd_block(vec![vec![pd]]).unwrap();
        let (prob, back) = prog.compile().unwrap();
        let sol = sdp::check_feasible(&prob, &SolverOptions::default()).unwrap();
        assert_eq!(sol.status, SdpStatus::Feasible);
        let p_val = back.extract(p, &sol.x).unwrap();
        assert!(p_val.is_symmetric(0.0)); // exactly symmetric by construction
        let res = &a.transpose().matmul(&p_val) + &p_val.matmul(&a);
        assert!(crate::matcore::min_eig(&res.scale(-1.0)).unwrap() >= -1e-9);
    }

    #[test]
    fn compile_evaluate_consistency_random_assignments() {
        let a1 = Matrix::from_rows(&[&[-0.7, 0.44], &[0.11, -0.28]]);
        let b1 = Matrix::from_rows(&[&[0.0], &[0.17]]);
        let c1 = Matrix::from_rows(&[&[1.0, 0.0]]);
        let mut prog = LmiProgram::new();
        let p = prog.declare_symmetric(2);
        let b_c = prog.declare_rectangular(2, 1);
        let s = prog.declare_scalar();
        let e00 = prog
            .sandwich(Matrix::identity(2), p, a1.clone())
            .add(&prog.sandwich(a1.transpose(), p, Matrix::identity(2)))
            .plus_const(&c1.transpose().matmul(&c1));
        let e10 = prog
            .sandwich_t(Matrix::identity(1), b_c, Matrix::identity(2))
            .add(&prog.sandwich(b1.transpose(), p, Matrix::identity(2)))
            .sub(&prog.sandwich(Matrix::identity(1), s, c1.clone()));
        let e11 = prog.konst(Matrix::scalar(-1.0));
        let id = prog.add_nsd_block(vec![vec![e00], vec![e10, e11]]).unwrap();
        let (prob, _) = prog.compile().unwrap();

        let mut state = 0x1234_5678_9abc_def0u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 4.0 - 2.0
        };
        for _ in 0..25 {
            let pv = {
                let x11 = next();
                let x12 = next();
                let x22 = next();
                Matrix::from_rows(&[&[x11, x12], &[x12, x22]])
            };
            let bv = Matrix::from_rows(&[&[next()], &[next()]]);
            let sv = Matrix::scalar(next());
            let sym = prog
                .eval_constraint(id, &[(p, pv.clone()), (b_c, bv.clone()), (s, sv.clone())])
                .unwrap();
            // standard form stores the negated NSD block
            let x = {
                let mut x = vec![0.0; prob.num_vars];
                x[0] = pv[(0, 0)];
                x[1] = pv[(0, 1)];
                x[2] = pv[(1, 1)];
                x[3] = bv[(0, 0)];
                x[4] = bv[(1, 0)];
                x[5] = sv[(0, 0)];
                x
            };
            let numeric = prob.eval_block(0, &x);
            assert!((&numeric - &sym.scale(-1.0)).norm_max() <= 1e-12);
            assert!(numeric.is_symmetric(1e-13));
        }
    }

    #[test]
    fn extract_shapes() {
        let mut prog = LmiProgram::new();
        let s = prog.declare_symmetric(2);
        let r = prog.declare_rectangular(2, 1);
        let a = prog.declare_scalar();
        let e = prog.var(a);
        prog.add_psd_block(vec![vec![e]]).unwrap();
        let (_, back) = prog.compile().unwrap();
        let x = vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0];
        let sv = back.extract(s, &x).unwrap();
        assert_eq!((sv.rows(), sv.cols()), (2, 2));
        assert_abs_diff_eq!(sv[(0, 1)], sv[(1, 0)]);
        let rv = back.extract(r, &x).unwrap();
        assert_eq!((rv.rows(), rv.cols()), (2, 1));
        let av = back.extract(a, &x).unwrap();
        assert_eq!((av.rows(), av.cols()), (1, 1));
    }

    #[test]
    fn empty_program_rejected() {
        let prog = LmiProgram::new();
        assert!(matches!(prog.compile(), Err(LmiError::EmptyProgram)));
    }
}
