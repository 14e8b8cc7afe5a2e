use super::linsolve::Lu;
use super::matrix::{ComplexMatrix, Matrix};
use super::MatError;

/// Evaluates `C (jwI - A)^{-1} B` at one frequency.
///
/// The complex solve is embedded as the real system
/// `[[-A, -wI], [wI, -A]] [Xr; Xi] = [B; 0]`.
pub fn frequency_response(
    a: &Matrix,
    b: &Matrix,
    c: &Matrix,
    omega: f64,
) -> Result<ComplexMatrix, MatError> {
    if !a.is_square() {
        return Err(MatError::NonSquare { rows: a.rows(), cols: a.cols() });
    }
    let n = a.rows();
    if b.rows() != n || c.cols() != n {
        return Err(MatError::Shape("frequency_response: B/C dims".into()));
    }
    let m = b.cols();
    let mut sys = Matrix::zeros(2 * n, 2 * n);
    sys.set_block(0, 0, &a.scale(-1.0));
    sys.set_block(n, n, &a.scale(-1.0));
    let wi = Matrix::identity(n).scale(omega);
    sys.set_block(0, n, &wi.scale(-1.0));
    sys.set_block(n, 0, &wi);
    let mut rhs = Matrix::zeros(2 * n, m);
    rhs.set_block(0, 0, b);
    let lu = Lu::factor(&sys)?;
    if lu.is_singular() || lu.rcond(&sys) <= 1e-14 {
        return Err(MatError::SingularAtFrequency(omega));
    }
    let x = lu.solve(&rhs)?;
    let xr = x.block(0, 0, n, m);
    let xi = x.block(n, 0, n, m);
    Ok(ComplexMatrix::from_parts(&c.matmul(&xr), &c.matmul(&xi)))
}

/// `C (jwI - A)^{-1} B + D`.
pub fn frequency_response_d(
    a: &Matrix,
    b: &Matrix,
    c: &Matrix,
    d: &Matrix,
    omega: f64,
) -> Result<ComplexMatrix, MatError> {
    let g = frequency_response(a, b, c, omega)?;
    Ok(ComplexMatrix::from_parts(&(&g.real() + d), &g.imag()))
}

/// Logarithmically spaced grid, `n >= 2` points from `lo` to `hi`.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > lo && n >= 2);
    let (llo, lhi) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (llo + (lhi - llo) * i as f64 / (n - 1) as f64).exp())
        .collect()
}
