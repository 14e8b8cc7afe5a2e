//! Dense matrix primitives and the control-theoretic numerical kernels the
//! rest of the crate is built on: symmetric/general eigensolvers, LU and
//! Cholesky solves, Lyapunov equations, frequency response, and the
//! H-infinity norm. Everything is plain `f64`, desk scale, deterministic.

pub mod eig;
pub mod freq;
pub mod hinf;
pub mod linsolve;
pub mod lyapunov;
mod matrix;

use thiserror::Error;

pub use eig::{eigenvalues, is_hurwitz, max_real_part, min_eig, sigma_max, sym_eig, SymmetricEigenDecomposition};
pub use freq::{frequency_response, frequency_response_d, log_grid};
pub use hinf::hinf_norm;
pub use linsolve::{cholesky, inverse, is_positive_definite, solve_linear, spd_inverse, Lu};
pub use lyapunov::lyapunov_solve;
pub use matrix::{ComplexMatrix, Matrix};

#[derive(Debug, Error)]
pub enum MatError {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric within tolerance")]
    NonSymmetric,
    #[error("iteration did not converge: {0}")]
    NoConvergence(String),
    #[error("matrix is singular or ill-conditioned")]
    Singular,
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("matrix is not Hurwitz")]
    NotHurwitz,
    #[error("linear system is ill-conditioned")]
    IllConditioned,
    #[error("(jwI - A) is singular at omega = {0}")]
    SingularAtFrequency(f64),
    #[error("shape mismatch: {0}")]
    Shape(String),
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn reconstruct(dec: &SymmetricEigenDecomposition) -> Matrix {
        let lam = Matrix::diag(&dec.eigenvalues);
        let v = &dec.eigenvectors;
        v.matmul(&lam).matmul(&v.transpose())
    }

    #[test]
    fn sym_eig_identity() {
        let dec = sym_eig(&Matrix::identity(2)).unwrap();
        assert_abs_diff_eq!(dec.eigenvalues[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(dec.eigenvalues[1], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn sym_eig_swap() {
        let s = Matrix::from_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let dec = sym_eig(&s).unwrap();
        assert_abs_diff_eq!(dec.eigenvalues[0], -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(dec.eigenvalues[1], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn sym_eig_recovers_constructed_spectrum() {
        // S = Q^T D Q with known D, Q from Jacobi of a seed matrix
        let n = 6;
        let mut seed = Matrix::zeros(n, n);
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        for i in 0..n {
            for j in 0..=i {
                let v = next();
                seed[(i, j)] = v;
                seed[(j, i)] = v;
            }
        }
        let q = sym_eig(&seed).unwrap().eigenvectors;
        let d_known = vec![-3.0, -1.5, -0.25, 0.5, 2.0, 7.0];
        let s = q
            .matmul(&Matrix::diag(&d_known))
            .matmul(&q.transpose())
            .symmetrize();
        let dec = sym_eig(&s).unwrap();
        for (got, want) in dec.eigenvalues.iter().zip(d_known.iter()) {
            assert_abs_diff_eq!(got, want, epsilon = 1e-9);
        }
        // orthonormality and reconstruction invariants
        let vtv = dec.eigenvectors.transpose().matmul(&dec.eigenvectors);
        assert!((&vtv - &Matrix::identity(n)).norm_max() <= 1e-10);
        let rec = reconstruct(&dec);
        assert!((&rec - &s).norm_max() <= 1e-8 * s.norm_max());
    }

    #[test]
    fn min_eig_cases() {
        assert_abs_diff_eq!(min_eig(&Matrix::identity(3)).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(
            min_eig(&Matrix::diag(&[-2.0, 3.0])).unwrap(),
            -2.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(min_eig(&Matrix::zeros(3, 3)).unwrap(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn sym_eig_rejects_nonsymmetric() {
        let s = Matrix::from_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(sym_eig(&s), Err(MatError::NonSymmetric)));
    }

    #[test]
    fn solve_linear_cases() {
        let b = Matrix::from_rows(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let x = solve_linear(&Matrix::identity(2), &b).unwrap();
        assert!((&x - &b).norm_max() <= 1e-14);

        let a = Matrix::diag(&[2.0, 4.0]);
        let rhs = Matrix::column(&[2.0, 4.0]);
        let x = solve_linear(&a, &rhs).unwrap();
        assert_abs_diff_eq!(x[(0, 0)], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(x[(1, 0)], 1.0, epsilon = 1e-14);
    }

    #[test]
    fn solve_linear_recovers_known_solution() {
        let a = Matrix::from_rows(&[
            &[4.0, 1.0, -0.3, 0.0, 0.2],
            &[1.0, 5.0, 0.7, -1.0, 0.0],
            &[0.1, 0.7, 3.0, 0.5, -0.4],
            &[0.0, -1.0, 0.5, 6.0, 1.1],
            &[0.2, 0.0, -0.4, 1.1, 2.5],
        ]);
        let x_known = Matrix::from_rows(&[&[1.0], &[-2.0], &[0.5], &[3.0], &[-1.5]]);
        let b = a.matmul(&x_known);
        let x = solve_linear(&a, &b).unwrap();
        assert!((&x - &x_known).norm_max() <= 1e-9);
        let res = &a.matmul(&x) - &b;
        assert!(res.norm_max() <= 1e-9 * b.norm_max().max(1.0));
    }

    #[test]
    fn solve_linear_rejects_singular() {
        let a = Matrix::from_rows(&[&[1.0, 2.0], &[2.0, 4.0]]);
        assert!(matches!(
            solve_linear(&a, &Matrix::identity(2)),
            Err(MatError::Singular)
        ));
    }

    #[test]
    fn general_eigenvalues_companion() {
        // companion of (s+1)(s+2)(s+3) = s^3 + 6s^2 + 11s + 6
        let a = Matrix::from_rows(&[
            &[0.0, 1.0, 0.0],
            &[0.0, 0.0, 1.0],
            &[-6.0, -11.0, -6.0],
        ]);
        let eigs = eigenvalues(&a).unwrap();
        let mut re: Vec<f64> = eigs.iter().map(|z| z.re).collect();
        re.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_abs_diff_eq!(re[0], -3.0, epsilon = 1e-8);
        assert_abs_diff_eq!(re[1], -2.0, epsilon = 1e-8);
        assert_abs_diff_eq!(re[2], -1.0, epsilon = 1e-8);
        assert!(eigs.iter().all(|z| z.im.abs() <= 1e-8));
    }

    #[test]
    fn general_eigenvalues_complex_pair() {
        // [[0, w], [-w, 0]] has eigenvalues +-jw
        let w = 3.5;
        let a = Matrix::from_rows(&[&[0.0, w], &[-w, 0.0]]);
        let eigs = eigenvalues(&a).unwrap();
        let mut im: Vec<f64> = eigs.iter().map(|z| z.im).collect();
        im.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_abs_diff_eq!(im[0], -w, epsilon = 1e-9);
        assert_abs_diff_eq!(im[1], w, epsilon = 1e-9);
        assert!(eigs.iter().all(|z| z.re.abs() <= 1e-9));
    }

    #[test]
    fn general_eigenvalues_match_jacobi_on_symmetric() {
        let s = Matrix::from_rows(&[
            &[2.0, -1.0, 0.3, 0.0],
            &[-1.0, 1.5, 0.2, -0.7],
            &[0.3, 0.2, -0.5, 0.1],
            &[0.0, -0.7, 0.1, 3.0],
        ]);
        let sym = sym_eig(&s).unwrap().eigenvalues;
        let mut gen: Vec<f64> = eigenvalues(&s).unwrap().iter().map(|z| z.re).collect();
        gen.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (a, b) in sym.iter().zip(gen.iter()) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-8);
        }
    }

    #[test]
    fn lyapunov_scalar_and_diagonal() {
        let w = lyapunov_solve(&Matrix::scalar(-1.0), &Matrix::scalar(1.0)).unwrap();
        assert_abs_diff_eq!(w[(0, 0)], 0.5, epsilon = 1e-12);

        let a = Matrix::diag(&[-1.0, -2.0]);
        let w = lyapunov_solve(&a, &Matrix::identity(2)).unwrap();
        assert_abs_diff_eq!(w[(0, 0)], 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(w[(1, 1)], 0.25, epsilon = 1e-12);
        assert_abs_diff_eq!(w[(0, 1)], 0.0, epsilon = 1e-12);
    }

    #[test]
    fn lyapunov_residual_random_stable() {
        let a = Matrix::from_rows(&[
            &[-2.0, 1.0, 0.0, 0.5],
            &[0.0, -1.0, 0.7, 0.0],
            &[-0.3, 0.0, -3.0, 1.0],
            &[0.1, -0.2, 0.0, -0.8],
        ]);
        let q = Matrix::from_rows(&[
            &[2.0, 0.1, 0.0, 0.0],
            &[0.1, 1.0, -0.3, 0.0],
            &[0.0, -0.3, 1.5, 0.2],
            &[0.0, 0.0, 0.2, 1.2],
        ]);
        let w = lyapunov_solve(&a, &q).unwrap();
        let res = &(&a.transpose().matmul(&w) + &w.matmul(&a)) + &q;
        assert!(res.norm_max() <= 1e-9 * q.norm_max());
        assert!(w.is_symmetric(1e-12));
        // PSD since Q is PD and the pair is observable
        assert!(min_eig(&w).unwrap() > 0.0);
    }

    #[test]
    fn lyapunov_rejects_unstable() {
        assert!(matches!(
            lyapunov_solve(&Matrix::scalar(1.0), &Matrix::scalar(1.0)),
            Err(MatError::NotHurwitz)
        ));
    }

    #[test]
    fn frequency_response_first_order() {
        let a = Matrix::scalar(-1.0);
        let b = Matrix::scalar(1.0);
        let c = Matrix::scalar(1.0);
        let g0 = frequency_response(&a, &b, &c, 0.0).unwrap();
        assert_abs_diff_eq!(g0[(0, 0)].re, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(g0[(0, 0)].im, 0.0, epsilon = 1e-12);
        let g1 = frequency_response(&a, &b, &c, 1.0).unwrap();
        assert_abs_diff_eq!(g1[(0, 0)].re, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(g1[(0, 0)].im, -0.5, epsilon = 1e-12);
        // strictly proper roll-off
        let ghi = frequency_response(&a, &b, &c, 1e6).unwrap();
        assert!(ghi[(0, 0)].norm() < 1e-5);
    }

    #[test]
    fn frequency_response_conjugate_symmetry() {
        let a = Matrix::from_rows(&[&[-1.0, 2.0], &[-2.0, -0.5]]);
        let b = Matrix::from_rows(&[&[1.0], &[0.3]]);
        let c = Matrix::from_rows(&[&[1.0, -1.0]]);
        for &w in &[0.1, 1.0, 4.0, 33.0] {
            let gp = frequency_response(&a, &b, &c, w).unwrap();
            let gm = frequency_response(&a, &b, &c, -w).unwrap();
            assert_abs_diff_eq!(gp[(0, 0)].re, gm[(0, 0)].re, epsilon = 1e-10);
            assert_abs_diff_eq!(gp[(0, 0)].im, -gm[(0, 0)].im, epsilon = 1e-10);
        }
    }

    #[test]
    fn sigma_max_cases() {
        assert_abs_diff_eq!(
            sigma_max(&Matrix::diag(&[3.0, 4.0])).unwrap(),
            4.0,
            epsilon = 1e-10
        );
        assert_abs_diff_eq!(sigma_max(&Matrix::zeros(3, 2)).unwrap(), 0.0, epsilon = 1e-12);
        // rank one u v^T has sigma_max = |u| |v|
        let u = Matrix::column(&[1.0, 2.0, -2.0]);
        let v = Matrix::column(&[3.0, 4.0]);
        let m = u.matmul(&v.transpose());
        assert_abs_diff_eq!(sigma_max(&m).unwrap(), 15.0, epsilon = 1e-9);
    }

    #[test]
    fn hinf_norm_first_order_and_static() {
        let g = hinf_norm(
            &Matrix::scalar(-1.0),
            &Matrix::scalar(1.0),
            &Matrix::scalar(1.0),
            &Matrix::scalar(0.0),
            1e-8,
        )
        .unwrap();
        assert_abs_diff_eq!(g, 1.0, epsilon = 1e-6);

        let g = hinf_norm(
            &Matrix::scalar(-1.0),
            &Matrix::zeros(1, 2),
            &Matrix::zeros(2, 1),
            &Matrix::diag(&[3.0, 4.0]),
            1e-8,
        )
        .unwrap();
        assert_abs_diff_eq!(g, 4.0, epsilon = 1e-6);
    }

    #[test]
    fn hinf_norm_homogeneous_in_output() {
        let a = Matrix::from_rows(&[&[-1.0, 0.5], &[0.0, -2.0]]);
        let b = Matrix::from_rows(&[&[1.0], &[1.0]]);
        let c = Matrix::from_rows(&[&[1.0, 0.5]]);
        let d = Matrix::zeros(1, 1);
        let g1 = hinf_norm(&a, &b, &c, &d, 1e-9).unwrap();
        let g2 = hinf_norm(&a, &b, &c.scale(2.0), &d, 1e-9).unwrap();
        assert_abs_diff_eq!(g2, 2.0 * g1, epsilon = 1e-6 * g1.max(1.0));
    }

    #[test]
    fn hinf_norm_rejects_unstable() {
        assert!(matches!(
            hinf_norm(
                &Matrix::scalar(0.5),
                &Matrix::scalar(1.0),
                &Matrix::scalar(1.0),
                &Matrix::scalar(0.0),
                1e-6
            ),
            Err(MatError::NotHurwitz)
        ));
    }
}
