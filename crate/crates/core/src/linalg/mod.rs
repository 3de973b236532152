//! Rank, kernel and linear solves for [`Mat`] in every arithmetic mode.

pub mod exact;
pub mod float;
pub mod gf2;

use num_complex::Complex64;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::scalar::{Mode, Scalar};

/// Default relative threshold for numerical rank decisions.
pub const DEFAULT_TOL: f64 = 1e-8;

/// Default absolute residual tolerance for floating-point solves.
pub const DEFAULT_SOLVE_TOL: f64 = 1e-9;

/// Rank of `m`. `tol` only matters in float mode.
pub fn mat_rank(m: &Mat, tol: f64) -> Result<usize> {
    if m.rows() == 0 || m.cols() == 0 {
        return Ok(0);
    }
    match m.mode() {
        Mode::Exact => Ok(exact::rank(&m.exact_rows()?)),
        Mode::Float => {
            if !(tol >= 0.0) {
                return Err(Error::InvalidArgument(format!("negative tolerance {tol}")));
            }
            Ok(float::rank(&m.to_complex(), tol))
        }
        Mode::Gf2 => rank_gf2(m),
    }
}

/// Right null space basis, first nonzero entry of each vector equal to 1.
pub fn kernel_basis(m: &Mat) -> Result<Vec<Vec<Scalar>>> {
    kernel_basis_tol(m, DEFAULT_TOL)
}

pub fn kernel_basis_tol(m: &Mat, tol: f64) -> Result<Vec<Vec<Scalar>>> {
    match m.mode() {
        Mode::Exact => Ok(exact::kernel(&m.exact_rows()?, m.cols())
            .into_iter()
            .map(|v| v.into_iter().map(Scalar::Exact).collect())
            .collect()),
        Mode::Float => Ok(float::kernel(&m.to_complex(), tol)
            .into_iter()
            .map(|v| v.into_iter().map(Scalar::Float).collect())
            .collect()),
        Mode::Gf2 => Err(Error::WrongMode {
            expected: Mode::Exact,
            found: Mode::Gf2,
        }),
    }
}

/// One solution of `A x = b`, exact in exact mode and within
/// [`DEFAULT_SOLVE_TOL`] in float mode.
pub fn solve_exact(a: &Mat, b: &[Scalar]) -> Result<Vec<Scalar>> {
    solve_tol(a, b, DEFAULT_SOLVE_TOL)
}

pub fn solve_tol(a: &Mat, b: &[Scalar], tol: f64) -> Result<Vec<Scalar>> {
    if b.len() != a.rows() {
        return Err(Error::Dimension(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            a.rows()
        )));
    }
    if let Some(bad) = b.iter().find(|s| s.mode() != a.mode()) {
        return Err(Error::ModeMismatch {
            left: a.mode(),
            right: bad.mode(),
        });
    }
    match a.mode() {
        Mode::Exact => {
            let rhs: Vec<Cyclotomic> = b.iter().map(|s| s.as_exact().cloned()).collect::<Result<_>>()?;
            match exact::solve(&a.exact_rows()?, &rhs, a.cols()) {
                exact::Solve::Solution(x) => Ok(x.into_iter().map(Scalar::Exact).collect()),
                exact::Solve::Inconsistent(r) => Err(Error::NoSolution {
                    residual: format!("{r:e}"),
                }),
            }
        }
        Mode::Float => {
            let rhs: Vec<Complex64> = b.iter().map(Scalar::to_complex).collect();
            let (x, res) = float::solve(&a.to_complex(), &rhs);
            if res > tol {
                return Err(Error::NoSolution {
                    residual: format!("{res:e}"),
                });
            }
            Ok(x.into_iter().map(Scalar::Float).collect())
        }
        Mode::Gf2 => Err(Error::WrongMode {
            expected: Mode::Exact,
            found: Mode::Gf2,
        }),
    }
}

/// Rank over GF(2) of a GF(2) matrix.
pub fn rank_gf2(m: &Mat) -> Result<usize> {
    if m.mode() != Mode::Gf2 {
        return Err(Error::WrongMode {
            expected: Mode::Gf2,
            found: m.mode(),
        });
    }
    let rows = (0..m.rows())
        .map(|i| {
            let bits: Vec<bool> = m.row(i).iter().map(|s| !s.is_zero()).collect();
            gf2::BitRow::from_bools(&bits)
        })
        .collect();
    Ok(gf2::rank(rows, m.cols()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_empty() {
        assert_eq!(mat_rank(&Mat::identity(4, Mode::Exact), 0.0).unwrap(), 4);
        assert_eq!(mat_rank(&Mat::zeros(0, 3, Mode::Exact), 0.0).unwrap(), 0);
        assert_eq!(rank_gf2(&Mat::identity(5, Mode::Gf2)).unwrap(), 5);
        assert!(rank_gf2(&Mat::identity(2, Mode::Exact)).is_err());
    }

    #[test]
    fn zero_matrix_kernel_is_standard_basis() {
        let k = kernel_basis(&Mat::zeros(2, 3, Mode::Exact)).unwrap();
        assert_eq!(k.len(), 3);
        for (j, v) in k.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                assert_eq!(x, &Scalar::from_i64(Mode::Exact, (i == j) as i64));
            }
        }
    }

    #[test]
    fn inconsistent_solve_reports_residual() {
        let a = Mat::from_i64_rows(&[vec![1], vec![1]], Mode::Exact).unwrap();
        let b = vec![Scalar::from_i64(Mode::Exact, 0), Scalar::from_i64(Mode::Exact, 1)];
        assert!(matches!(solve_exact(&a, &b), Err(Error::NoSolution { .. })));
        let af = a.to_mode(Mode::Float).unwrap();
        let bf: Vec<Scalar> = b.iter().map(|s| s.to_mode(Mode::Float).unwrap()).collect();
        assert!(matches!(solve_exact(&af, &bf), Err(Error::NoSolution { .. })));
    }

    #[test]
    fn float_rank_respects_tolerance() {
        let m = Mat::from_fn(2, 2, Mode::Float, |i, j| {
            Scalar::float(if i == j { 1.0 } else { 0.0 } + if i == 1 && j == 1 { -1.0 + 1e-12 } else { 0.0 }, 0.0)
        })
        .unwrap();
        assert_eq!(mat_rank(&m, 1e-8).unwrap(), 1);
        assert_eq!(mat_rank(&m, 1e-14).unwrap(), 2);
    }
}
