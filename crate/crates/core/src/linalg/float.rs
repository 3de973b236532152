//! Floating-point rank, kernel and least-squares solve via the SVD.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

fn padded(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    // The thin SVD only yields a full right factor when rows >= cols.
    if m.nrows() >= m.ncols() {
        return m.clone();
    }
    let mut p = DMatrix::zeros(m.ncols(), m.ncols());
    p.rows_mut(0, m.nrows()).copy_from(m);
    p
}

/// Number of singular values above `tol` times the largest one.
pub fn rank(m: &DMatrix<Complex64>, tol: f64) -> usize {
    if m.is_empty() {
        return 0;
    }
    let sv = m.singular_values();
    let smax = sv.max();
    if smax == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol * smax).count()
}

/// Basis of the numerical null space, each vector scaled so its first
/// significant entry is 1.
pub fn kernel(m: &DMatrix<Complex64>, tol: f64) -> Vec<Vec<Complex64>> {
    let ncols = m.ncols();
    if ncols == 0 {
        return Vec::new();
    }
    let p = padded(m);
    let svd = p.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let smax = svd.singular_values.max();
    (0..ncols)
        .filter(|&k| smax == 0.0 || svd.singular_values[k] <= tol * smax)
        .map(|k| {
            let v: Vec<Complex64> = v_t.row(k).iter().map(|z| z.conj()).collect();
            normalize_first(v)
        })
        .collect()
}

pub fn normalize_first(v: Vec<Complex64>) -> Vec<Complex64> {
    let scale = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    match v.iter().find(|z| z.norm() > 1e-10 * scale) {
        Some(&lead) => v.iter().map(|z| z / lead).collect(),
        None => v,
    }
}

/// Least-squares solution and the largest absolute residual.
pub fn solve(a: &DMatrix<Complex64>, b: &[Complex64]) -> (Vec<Complex64>, f64) {
    let bv = DVector::from_column_slice(b);
    if a.ncols() == 0 {
        return (Vec::new(), bv.iter().map(|z| z.norm()).fold(0.0, f64::max));
    }
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let x = svd
        .solve(&bv, 1e-13 * smax.max(f64::MIN_POSITIVE))
        .unwrap_or_else(|_| DVector::zeros(a.ncols()));
    let res = (a * &x - &bv).iter().map(|z| z.norm()).fold(0.0, f64::max);
    (x.iter().copied().collect(), res)
}
