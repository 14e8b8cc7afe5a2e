use super::matrix::Matrix;
use super::MatError;

/// LU factorization with partial pivoting.
pub struct Lu {
    lu: Matrix,
    piv: Vec<usize>,
    n: usize,
    singular: bool,
}

impl Lu {
    pub fn factor(a: &Matrix) -> Result<Lu, MatError> {
        if !a.is_square() {
            return Err(MatError::NonSquare { rows: a.rows(), cols: a.cols() });
        }
        let n = a.rows();
        let mut lu = a.clone();
        let mut piv: Vec<usize> = (0..n).collect();
        let mut singular = false;
        for k in 0..n {
            let mut p = k;
            let mut best = lu[(k, k)].abs();
            for i in (k + 1)..n {
                let v = lu[(i, k)].abs();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if p != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = tmp;
                }
                piv.swap(k, p);
            }
            let pivot = lu[(k, k)];
            if pivot == 0.0 {
                singular = true;
                continue;
            }
            for i in (k + 1)..n {
                let f = lu[(i, k)] / pivot;
                lu[(i, k)] = f;
                if f != 0.0 {
                    for j in (k + 1)..n {
                        lu[(i, j)] -= f * lu[(k, j)];
                    }
                }
            }
        }
        Ok(Lu { lu, piv, n, singular })
    }

    pub fn is_singular(&self) -> bool {
        self.singular
    }

    pub fn solve(&self, b: &Matrix) -> Result<Matrix, MatError> {
        if self.singular {
            return Err(MatError::Singular);
        }
        if b.rows() != self.n {
            return Err(MatError::Shape(format!(
                "rhs has {} rows, expected {}",
                b.rows(),
                self.n
            )));
        }
        let n = self.n;
        let m = b.cols();
        let mut x = Matrix::zeros(n, m);
        for i in 0..n {
            for j in 0..m {
                x[(i, j)] = b[(self.piv[i], j)];
            }
        }
        // forward substitution (unit lower triangle)
        for k in 0..n {
            for i in (k + 1)..n {
                let f = self.lu[(i, k)];
                if f != 0.0 {
                    for j in 0..m {
                        x[(i, j)] -= f * x[(k, j)];
                    }
                }
            }
        }
        // back substitution
        for k in (0..n).rev() {
            let d = self.lu[(k, k)];
            for j in 0..m {
                x[(k, j)] /= d;
            }
            for i in 0..k {
                let f = self.lu[(i, k)];
                if f != 0.0 {
                    for j in 0..m {
                        x[(i, j)] -= f * x[(k, j)];
                    }
                }
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<Matrix, MatError> {
        self.solve(&Matrix::identity(self.n))
    }

    /// Reciprocal 1-norm condition estimate; exact inverse is affordable here.
    pub fn rcond(&self, a: &Matrix) -> f64 {
        if self.singular {
            return 0.0;
        }
        match self.inverse() {
            Ok(inv) => {
                let d = a.norm_one() * inv.norm_one();
                if d > 0.0 {
                    1.0 / d
                } else {
                    0.0
                }
            }
            Err(_) => 0.0,
        }
    }
}

/// Solves `A X = B` for square, well-conditioned `A`.
pub fn solve_linear(a: &Matrix, b: &Matrix) -> Result<Matrix, MatError> {
    let lu = Lu::factor(a)?;
    if lu.is_singular() || lu.rcond(a) <= 1e-14 {
        return Err(MatError::Singular);
    }
    lu.solve(b)
}

pub fn inverse(a: &Matrix) -> Result<Matrix, MatError> {
    solve_linear(a, &Matrix::identity(a.rows()))
}

/// Lower Cholesky factor of a symmetric positive definite matrix.
/// Fails fast on loss of positive definiteness, which doubles as the
/// PD test inside the barrier line search.
pub fn cholesky(s: &Matrix) -> Result<Matrix, MatError> {
    if !s.is_square() {
        return Err(MatError::NonSquare { rows: s.rows(), cols: s.cols() });
    }
    let n = s.rows();
    let mut l = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let mut sum = s[(i, j)];
            for k in 0..j {
                sum -= l[(i, k)] * l[(j, k)];
            }
            if i == j {
                if sum <= 0.0 {
                    return Err(MatError::NotPositiveDefinite);
                }
                l[(i, j)] = sum.sqrt();
            } else {
                l[(i, j)] = sum / l[(j, j)];
            }
        }
    }
    Ok(l)
}

pub fn is_positive_definite(s: &Matrix) -> bool {
    cholesky(s).is_ok()
}

/// Solves `L X = B` for lower-triangular `L`.
pub fn solve_lower(l: &Matrix, b: &Matrix) -> Matrix {
    let n = l.rows();
    let m = b.cols();
    let mut x = b.clone();
    for j in 0..m {
        for i in 0..n {
            let mut sum = x[(i, j)];
            for k in 0..i {
                sum -= l[(i, k)] * x[(k, j)];
            }
            x[(i, j)] = sum / l[(i, i)];
        }
    }
    x
}

/// Solves `L^T X = B` for lower-triangular `L`.
pub fn solve_lower_transpose(l: &Matrix, b: &Matrix) -> Matrix {
    let n = l.rows();
    let m = b.cols();
    let mut x = b.clone();
    for j in 0..m {
        for i in (0..n).rev() {
            let mut sum = x[(i, j)];
            for k in (i + 1)..n {
                sum -= l[(k, i)] * x[(k, j)];
            }
            x[(i, j)] = sum / l[(i, i)];
        }
    }
    x
}

/// Inverse of an SPD matrix through its Cholesky factor.
pub fn spd_inverse(s: &Matrix) -> Result<Matrix, MatError> {
    let l = cholesky(s)?;
    let y = solve_lower(&l, &Matrix::identity(s.rows()));
    Ok(solve_lower_transpose(&l, &y).symmetrize())
}
