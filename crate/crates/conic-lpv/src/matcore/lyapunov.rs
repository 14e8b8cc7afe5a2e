use super::eig;
use super::linsolve::Lu;
use super::matrix::Matrix;
use super::MatError;

const LYAPUNOV_MAX_DIM: usize = 20;

/// Solves the continuous Lyapunov equation `A^T W + W A + Q = 0` by
/// Kronecker vectorization. `A` must be Hurwitz and `Q` symmetric;
/// dimension is capped at 20 states.
pub fn lyapunov_solve(a: &Matrix, q: &Matrix) -> Result<Matrix, MatError> {
    if !a.is_square() {
        return Err(MatError::NonSquare { rows: a.rows(), cols: a.cols() });
    }
    let n = a.rows();
    if n > LYAPUNOV_MAX_DIM {
        return Err(MatError::Shape(format!(
            "Lyapunov solve capped at {LYAPUNOV_MAX_DIM} states, got {n}"
        )));
    }
    if q.rows() != n || !q.is_symmetric(1e-9) {
        return Err(MatError::NonSymmetric);
    }
    if !eig::is_hurwitz(a)? {
        return Err(MatError::NotHurwitz);
    }

    // vec(A^T W) + vec(W A) = (I (x) A^T + A^T (x) I) vec(W), column stacking
    let at = a.transpose();
    let nn = n * n;
    let mut k = Matrix::zeros(nn, nn);
    for col_w in 0..n {
        for row_w in 0..n {
            let wi = col_w * n + row_w; // index of W(row_w, col_w) in vec(W)
            // term (I (x) A^T): contributes A^T(r, row_w) at rows of same column block
            for r in 0..n {
                let ri = col_w * n + r;
                k[(ri, wi)] += at[(r, row_w)];
            }
            // term (A^T (x) I): A^T(cb, col_w) couples column blocks
            for cb in 0..n {
                let ri = cb * n + row_w;
                k[(ri, wi)] += at[(cb, col_w)];
            }
        }
    }
    let mut rhs = Matrix::zeros(nn, 1);
    for col in 0..n {
        for row in 0..n {
            rhs[(col * n + row, 0)] = -q[(row, col)];
        }
    }
    let lu = Lu::factor(&k)?;
    if lu.is_singular() || lu.rcond(&k) <= 1e-14 {
        return Err(MatError::IllConditioned);
    }
    let w_vec = lu.solve(&rhs)?;
    let mut w = Matrix::zeros(n, n);
    for col in 0..n {
        for row in 0..n {
            w[(row, col)] = w_vec[(col * n + row, 0)];
        }
    }
    Ok(w.symmetrize())
}
