//! Catalecticant matrices and symmetric flattenings.

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::scalar::Scalar;
use crate::tensor::{to_binary_form, BinaryForm, HankelTensor};

/// The `(d−r+1)×(r+1)` Hankel matrix `C_{d−r,r}(h)` with entries `h_{i+j}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Catalecticant {
    pub d: usize,
    pub r: usize,
    pub mat: Mat,
}

pub fn catalecticant(b: &BinaryForm, r: usize) -> Result<Catalecticant> {
    let d = b.degree();
    if r > d {
        return Err(Error::InvalidArgument(format!("split {r} exceeds degree {d}")));
    }
    let h = b.coeffs();
    let mat = Mat::from_fn(d - r + 1, r + 1, b.mode(), |i, j| h[i + j].clone())?;
    Ok(Catalecticant { d, r, mat })
}

/// `m₁ = ⌈m/2⌉`, the number of modes indexing rows of a flattening.
pub fn row_modes(m: usize) -> usize {
    m.div_ceil(2)
}

/// `l = (n−1)·⌊m/2⌋`, the column split of the reduced flattening.
pub fn reduced_split(n: usize, m: usize) -> usize {
    (n - 1) * (m / 2)
}

/// All tuples in `[1,n]^len` in lexicographic order.
fn tuples(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (1..=n).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

/// The `n^{m₁} × n^{m−m₁}` flattening with lexicographically ordered tuple labels.
pub fn flatten_full(t: &HankelTensor) -> Mat {
    let m1 = row_modes(t.m());
    let rows = tuples(t.n(), m1);
    let cols = tuples(t.n(), t.m() - m1);
    let h = t.h();
    Mat::from_fn(rows.len(), cols.len(), t.mode(), |i, j| {
        let s: usize = rows[i].iter().sum::<usize>() + cols[j].iter().sum::<usize>();
        h[s - t.m()].clone()
    })
    .expect("entries share the tensor mode")
}

/// The reduced flattening, computed directly as `C_{d−l,l}(h)`.
pub fn flatten_reduced(t: &HankelTensor) -> Catalecticant {
    catalecticant(&to_binary_form(t), reduced_split(t.n(), t.m())).expect("l <= d")
}

/// Positions of the first tuple with each index sum, in increasing sum order.
fn first_per_sum(ts: &[Vec<usize>]) -> Vec<usize> {
    let mut seen: Vec<(usize, usize)> = Vec::new();
    for (pos, t) in ts.iter().enumerate() {
        let s: usize = t.iter().sum();
        if !seen.iter().any(|&(sum, _)| sum == s) {
            seen.push((s, pos));
        }
    }
    seen.sort_unstable();
    seen.into_iter().map(|(_, pos)| pos).collect()
}

/// Submatrix of [`flatten_full`] keeping one row and one column per index sum.
pub fn dedup_submatrix(t: &HankelTensor) -> Mat {
    let m1 = row_modes(t.m());
    let rows = first_per_sum(&tuples(t.n(), m1));
    let cols = first_per_sum(&tuples(t.n(), t.m() - m1));
    flatten_full(t).submatrix(&rows, &cols)
}

/// Convenience: the entry vector `h` as a column, `C_{d,0}(h)`.
pub fn column_of(h: &[Scalar]) -> Result<Mat> {
    let mode = h.first().map(Scalar::mode).ok_or_else(|| Error::Dimension("empty vector".into()))?;
    Mat::new(h.len(), 1, mode, h.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::mat_rank;
    use crate::scalar::Mode;
    use crate::tensor::{preset, Preset};

    fn ints(rows: &[&[i64]]) -> Mat {
        Mat::from_i64_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>(), Mode::Exact).unwrap()
    }

    #[test]
    fn catalecticant_of_cubic_example() {
        let b = to_binary_form(&preset(&Preset::Ex36).unwrap());
        let c = catalecticant(&b, 5).unwrap();
        assert_eq!(c.mat, ints(&[&[0, 0, 0, 0, 1, 0], &[0, 0, 0, 1, 0, 0]]));
        let c0 = catalecticant(&b, 0).unwrap();
        assert_eq!(c0.mat, column_of(b.coeffs()).unwrap());
        assert!(catalecticant(&b, 7).is_err());
        let c33 = catalecticant(&b, 3).unwrap();
        assert_eq!(mat_rank(&c33.mat, 0.0).unwrap(), 3);
    }

    #[test]
    fn anti_identity_catalecticant() {
        let b = to_binary_form(&preset(&Preset::Ex35).unwrap());
        let c = catalecticant(&b, 2).unwrap();
        assert_eq!(c.mat, ints(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]));
        assert_eq!(flatten_full(&preset(&Preset::Ex35).unwrap()), c.mat);
    }

    #[test]
    fn flattenings_of_small_tensors() {
        let t = HankelTensor::from_i64(2, 2, &[1, 2, 3]).unwrap();
        assert_eq!(flatten_full(&t), ints(&[&[1, 2], &[2, 3]]));
        let t = HankelTensor::from_i64(2, 3, &[10, 11, 12, 13]).unwrap();
        assert_eq!(
            flatten_full(&t),
            ints(&[&[10, 11], &[11, 12], &[11, 12], &[12, 13]])
        );
        let t = preset(&Preset::Random { n: 3, m: 3, seed: 1, bound: 5 }).unwrap();
        let red = flatten_reduced(&t);
        assert_eq!((red.mat.rows(), red.mat.cols()), (5, 3));
        assert_eq!(red.mat, dedup_submatrix(&t));
    }

    #[test]
    fn transpose_swaps_split() {
        let b = to_binary_form(&preset(&Preset::Random { n: 4, m: 2, seed: 3, bound: 9 }).unwrap());
        for r in 0..=b.degree() {
            let c = catalecticant(&b, r).unwrap().mat;
            let ct = catalecticant(&b, b.degree() - r).unwrap().mat;
            assert_eq!(c.transpose(), ct);
        }
    }
}
