//! Eigenvalue kernels: cyclic Jacobi for symmetric matrices, balanced
//! Hessenberg-QR with implicit double shifts for general real spectra.

use num_complex::Complex64;

use super::matrix::Matrix;
use super::MatError;

/// Eigendecomposition of a symmetric matrix; eigenvalues ascending,
/// eigenvectors stored as the columns of an orthonormal matrix.
#[derive(Clone, Debug)]
pub struct SymmetricEigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Matrix,
}

const JACOBI_MAX_SWEEPS: usize = 100;

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
pub fn sym_eig(s: &Matrix) -> Result<SymmetricEigenDecomposition, MatError> {
    if !s.is_square() {
        return Err(MatError::NonSquare { rows: s.rows(), cols: s.cols() });
    }
    if !s.is_symmetric(1e-9) {
        return Err(MatError::NonSymmetric);
    }
    let n = s.rows();
    let mut a = s.symmetrize();
    let mut v = Matrix::identity(n);
    if n <= 1 {
        return Ok(SymmetricEigenDecomposition {
            eigenvalues: (0..n).map(|i| a[(i, i)]).collect(),
            eigenvectors: v,
        });
    }

    let scale = a.norm_max().max(f64::MIN_POSITIVE);
    let stop = 1e-15 * scale * (n as f64);
    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a[(p, q)].abs());
            }
        }
        if off <= stop {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let tau = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let sn = t * c;

                let app = a[(p, p)];
                let aqq = a[(q, q)];
                a[(p, p)] = app - t * apq;
                a[(q, q)] = aqq + t * apq;
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                for i in 0..n {
                    if i != p && i != q {
                        let aip = a[(i, p)];
                        let aiq = a[(i, q)];
                        a[(i, p)] = c * aip - sn * aiq;
                        a[(p, i)] = a[(i, p)];
                        a[(i, q)] = sn * aip + c * aiq;
                        a[(q, i)] = a[(i, q)];
                    }
                }
                for i in 0..n {
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = c * vip - sn * viq;
                    v[(i, q)] = sn * vip + c * viq;
                }
            }
        }
    }
    if !converged {
        return Err(MatError::NoConvergence("Jacobi sweep cap exceeded".into()));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].partial_cmp(&a[(j, j)]).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[(i, i)]).collect();
    let mut vectors = Matrix::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for i in 0..n {
            vectors[(i, new_col)] = v[(i, old_col)];
        }
    }
    Ok(SymmetricEigenDecomposition { eigenvalues, eigenvectors: vectors })
}

/// Smallest eigenvalue of a symmetric matrix.
pub fn min_eig(s: &Matrix) -> Result<f64, MatError> {
    Ok(sym_eig(s)?.eigenvalues[0])
}

/// Largest singular value, computed through `sym_eig` of `M^T M`.
pub fn sigma_max(m: &Matrix) -> Result<f64, MatError> {
    let gram = m.transpose().matmul(m).symmetrize();
    let dec = sym_eig(&gram)?;
    Ok(dec.eigenvalues.last().copied().unwrap_or(0.0).max(0.0).sqrt())
}

/// Eigenvalues of a general real square matrix.
///
/// Balance, eliminate to upper Hessenberg, then Francis double-shift QR.
pub fn eigenvalues(m: &Matrix) -> Result<Vec<Complex64>, MatError> {
    if !m.is_square() {
        return Err(MatError::NonSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(Vec::new());
    }
    // 1-indexed working copy keeps the classical QR bookkeeping intact.
    let mut a = vec![vec![0.0f64; n + 1]; n + 1];
    for i in 0..n {
        for j in 0..n {
            a[i + 1][j + 1] = m[(i, j)];
        }
    }
    balance(&mut a, n);
    hessenberg(&mut a, n);
    hqr(&mut a, n)
}

pub fn max_real_part(m: &Matrix) -> Result<f64, MatError> {
    Ok(eigenvalues(m)?
        .iter()
        .fold(f64::NEG_INFINITY, |acc, z| acc.max(z.re)))
}

pub fn is_hurwitz(m: &Matrix) -> Result<bool, MatError> {
    Ok(max_real_part(m)? < 0.0)
}

fn balance(a: &mut [Vec<f64>], n: usize) {
    const RADIX: f64 = 2.0;
    let sqrdx = RADIX * RADIX;
    loop {
        let mut last = true;
        for i in 1..=n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 1..=n {
                if j != i {
                    c += a[j][i].abs();
                    r += a[i][j].abs();
                }
            }
            if c != 0.0 && r != 0.0 {
                let mut g = r / RADIX;
                let mut f = 1.0;
                let s = c + r;
                let mut c_var = c;
                while c_var < g {
                    f *= RADIX;
                    c_var *= sqrdx;
                }
                g = r * RADIX;
                while c_var > g {
                    f /= RADIX;
                    c_var /= sqrdx;
                }
                if (c_var + r) / f < 0.95 * s {
                    last = false;
                    let g = 1.0 / f;
                    for j in 1..=n {
                        a[i][j] *= g;
                    }
                    for j in 1..=n {
                        a[j][i] *= f;
                    }
                }
            }
        }
        if last {
            break;
        }
    }
}

/// Reduction to upper Hessenberg form by stabilized elimination.
fn hessenberg(a: &mut [Vec<f64>], n: usize) {
    if n < 3 {
        return;
    }
    for m in 2..n {
        let mut x = 0.0f64;
        let mut i = m;
        for j in m..=n {
            if a[j][m - 1].abs() > x.abs() {
                x = a[j][m - 1];
                i = j;
            }
        }
        if i != m {
            for j in (m - 1)..=n {
                a.swap_elem(i, j, m, j);
            }
            for j in 1..=n {
                a.swap_elem(j, i, j, m);
            }
        }
        if x != 0.0 {
            for i in (m + 1)..=n {
                let mut y = a[i][m - 1];
                if y != 0.0 {
                    y /= x;
                    a[i][m - 1] = y;
                    for j in m..=n {
                        a[i][j] -= y * a[m][j];
                    }
                    for j in 1..=n {
                        a[j][m] += y * a[j][i];
                    }
                }
            }
        }
    }
    // zero the junk below the first subdiagonal left by the elimination
    for i in 3..=n {
        for j in 1..=(i - 2) {
            a[i][j] = 0.0;
        }
    }
}

trait SwapElem {
    fn swap_elem(&mut self, i1: usize, j1: usize, i2: usize, j2: usize);
}

impl SwapElem for [Vec<f64>] {
    fn swap_elem(&mut self, i1: usize, j1: usize, i2: usize, j2: usize) {
        let tmp = self[i1][j1];
        self[i1][j1] = self[i2][j2];
        self[i2][j2] = tmp;
    }
}

fn sign_of(a: f64, b: f64) -> f64 {
    if b >= 0.0 {
        a.abs()
    } else {
        -a.abs()
    }
}

const HQR_MAX_ITS: usize = 60;

/// Francis double-shift QR on an upper Hessenberg matrix (eigenvalues only).
#[allow(clippy::needless_range_loop)]
fn hqr(a: &mut [Vec<f64>], n: usize) -> Result<Vec<Complex64>, MatError> {
    let mut wr = vec![0.0f64; n + 1];
    let mut wi = vec![0.0f64; n + 1];

    let mut anorm = 0.0f64;
    for i in 1..=n {
        let lo = if i > 1 { i - 1 } else { 1 };
        for j in lo..=n {
            anorm += a[i][j].abs();
        }
    }
    if anorm == 0.0 {
        anorm = 1.0;
    }

    let mut nn = n;
    let mut t = 0.0f64;
    while nn >= 1 {
        let mut its = 0usize;
        loop {
            // look for a single small subdiagonal element
            let mut l = 1usize;
            let mut ll = nn;
            while ll >= 2 {
                let mut s = a[ll - 1][ll - 1].abs() + a[ll][ll].abs();
                if s == 0.0 {
                    s = anorm;
                }
                if a[ll][ll - 1].abs() + s == s {
                    a[ll][ll - 1] = 0.0;
                    l = ll;
                    break;
                }
                ll -= 1;
            }
            let mut x = a[nn][nn];
            if l == nn {
                wr[nn] = x + t;
                wi[nn] = 0.0;
                nn -= 1;
                break;
            }
            let mut y = a[nn - 1][nn - 1];
            let mut w = a[nn][nn - 1] * a[nn - 1][nn];
            if l == nn - 1 {
                let p = 0.5 * (y - x);
                let q = p * p + w;
                let mut z = q.abs().sqrt();
                x += t;
                if q >= 0.0 {
                    z = p + sign_of(z, p);
                    wr[nn - 1] = x + z;
                    wr[nn] = wr[nn - 1];
                    if z != 0.0 {
                        wr[nn] = x - w / z;
                    }
                    wi[nn - 1] = 0.0;
                    wi[nn] = 0.0;
                } else {
                    wr[nn - 1] = x + p;
                    wr[nn] = x + p;
                    wi[nn] = z;
                    wi[nn - 1] = -z;
                }
                nn -= 2;
                break;
            }
            if its == HQR_MAX_ITS {
                return Err(MatError::NoConvergence(
                    "QR iteration cap exceeded".into(),
                ));
            }
            if its > 0 && its % 10 == 0 {
                // exceptional shift
                t += x;
                for i in 1..=nn {
                    a[i][i] -= x;
                }
                let s = a[nn][nn - 1].abs() + a[nn - 1][nn - 2].abs();
                y = 0.75 * s;
                x = y;
                w = -0.4375 * s * s;
            }
            its += 1;

            // form shift and look for two consecutive small subdiagonals
            let mut m = nn - 2;
            let mut p = 0.0f64;
            let mut q = 0.0f64;
            let mut r = 0.0f64;
            while m >= l {
                let z = a[m][m];
                let rr = x - z;
                let ss = y - z;
                p = (rr * ss - w) / a[m + 1][m] + a[m][m + 1];
                q = a[m + 1][m + 1] - z - rr - ss;
                r = a[m + 2][m + 1];
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = a[m][m - 1].abs() * (q.abs() + r.abs());
                let v = p.abs() * (a[m - 1][m - 1].abs() + z.abs() + a[m + 1][m + 1].abs());
                if u + v == v {
                    break;
                }
                m -= 1;
            }
            for i in (m + 2)..=nn {
                a[i][i - 2] = 0.0;
            }
            for i in (m + 3)..=nn {
                a[i][i - 3] = 0.0;
            }
            // double QR step on rows l..nn and columns m..nn
            for k in m..=(nn - 1) {
                if k != m {
                    p = a[k][k - 1];
                    q = a[k + 1][k - 1];
                    r = if k != nn - 1 { a[k + 2][k - 1] } else { 0.0 };
                    x = p.abs() + q.abs() + r.abs();
                    if x != 0.0 {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                let s = sign_of((p * p + q * q + r * r).sqrt(), p);
                if s != 0.0 {
                    if k == m {
                        if l != m {
                            a[k][k - 1] = -a[k][k - 1];
                        }
                    } else {
                        a[k][k - 1] = -s * x;
                    }
                    p += s;
                    x = p / s;
                    y = q / s;
                    let z = r / s;
                    q /= p;
                    r /= p;
                    for j in k..=nn {
                        let mut pp = a[k][j] + q * a[k + 1][j];
                        if k != nn - 1 {
                            pp += r * a[k + 2][j];
                            a[k + 2][j] -= pp * z;
                        }
                        a[k + 1][j] -= pp * y;
                        a[k][j] -= pp * x;
                    }
                    let mmin = if nn < k + 3 { nn } else { k + 3 };
                    for i in l..=mmin {
                        let mut pp = x * a[i][k] + y * a[i][k + 1];
                        if k != nn - 1 {
                            pp += z * a[i][k + 2];
                            a[i][k + 2] -= pp * r;
                        }
                        a[i][k + 1] -= pp * q;
                        a[i][k] -= pp;
                    }
                }
            }
        }
    }

    let mut out: Vec<Complex64> = (1..=n).map(|i| Complex64::new(wr[i], wi[i])).collect();
    out.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
    Ok(out)
}
