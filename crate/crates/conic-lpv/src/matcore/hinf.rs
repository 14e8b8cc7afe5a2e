use super::eig;
use super::freq::frequency_response_d;
use super::linsolve;
use super::matrix::Matrix;
use super::MatError;

/// H-infinity norm of `(A, B, C, D)` by Hamiltonian bisection.
///
/// For gamma above `sigma_max(D)`, the norm is below gamma exactly when the
/// associated Hamiltonian has no purely imaginary eigenvalue; candidate
/// frequencies taken from the pole layout seed the lower bound.
pub fn hinf_norm(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix, tol: f64) -> Result<f64, MatError> {
    if !a.is_square() {
        return Err(MatError::NonSquare { rows: a.rows(), cols: a.cols() });
    }
    let n = a.rows();
    let m = b.cols();
    let nz = c.rows();
    if b.rows() != n || c.cols() != n || d.rows() != nz || d.cols() != m {
        return Err(MatError::Shape("hinf_norm: system dims".into()));
    }
    let poles = eig::eigenvalues(a)?;
    if poles.iter().any(|z| z.re >= 0.0) {
        return Err(MatError::NotHurwitz);
    }

    let sigma_d = eig::sigma_max(d)?;
    let mut lo = sigma_d;
    let mut candidates = vec![0.0f64];
    for z in &poles {
        let mag = (z.re * z.re + z.im * z.im).sqrt();
        if mag > 0.0 {
            candidates.push(mag);
        }
        if z.im.abs() > 0.0 {
            candidates.push(z.im.abs());
        }
    }
    for w in candidates {
        let g = frequency_response_d(a, b, c, d, w)?;
        lo = lo.max(g.sigma_max());
    }
    if lo <= 1e-14 {
        // zero (or numerically zero) transfer; confirm with one probe
        if b.norm_max() == 0.0 || c.norm_max() == 0.0 {
            return Ok(sigma_d);
        }
    }

    let mut hi = (2.0 * lo).max(lo + 1.0);
    let mut grow = 0;
    while has_imaginary_hamiltonian_eig(a, b, c, d, hi)? {
        hi *= 2.0;
        grow += 1;
        if grow > 60 {
            return Err(MatError::NoConvergence("hinf bisection upper bound".into()));
        }
    }
    let floor = sigma_d * (1.0 + 1e-12);
    loop {
        if hi - lo <= tol * lo.max(1e-9) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= floor {
            break;
        }
        if has_imaginary_hamiltonian_eig(a, b, c, d, mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn has_imaginary_hamiltonian_eig(
    a: &Matrix,
    b: &Matrix,
    c: &Matrix,
    d: &Matrix,
    gamma: f64,
) -> Result<bool, MatError> {
    let n = a.rows();
    let m = b.cols();
    let nz = c.rows();
    // R = gamma^2 I - D^T D must stay positive definite during the search
    let mut r = d.transpose().matmul(d).scale(-1.0);
    for i in 0..m {
        r[(i, i)] += gamma * gamma;
    }
    let r_inv = match linsolve::spd_inverse(&r.symmetrize()) {
        Ok(ri) => ri,
        Err(_) => return Ok(true), // gamma at or below sigma_max(D)
    };
    let br = b.matmul(&r_inv);
    let a_shift = &a.clone() + &br.matmul(&d.transpose()).matmul(c);
    let mut h = Matrix::zeros(2 * n, 2 * n);
    h.set_block(0, 0, &a_shift);
    h.set_block(0, n, &br.matmul(&b.transpose()));
    let mut inner = d.matmul(&r_inv).matmul(&d.transpose());
    for i in 0..nz {
        inner[(i, i)] += 1.0;
    }
    let lower = c.transpose().matmul(&inner).matmul(c).scale(-1.0);
    h.set_block(n, 0, &lower);
    h.set_block(n, n, &a_shift.transpose().scale(-1.0));

    let eigs = eig::eigenvalues(&h)?;
    Ok(eigs.iter().any(|z| {
        let mag = (z.re * z.re + z.im * z.im).sqrt();
        z.re.abs() <= 1e-8 * (1.0 + mag)
    }))
}
