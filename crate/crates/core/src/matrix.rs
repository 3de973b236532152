//! Dense row-major matrices of [`Scalar`]s.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::scalar::{Mode, Scalar};

/// Dense matrix whose entries all share one arithmetic mode.
#[derive(Clone, PartialEq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    mode: Mode,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn new(rows: usize, cols: usize, mode: Mode, data: Vec<Scalar>) -> Result<Mat> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|s| s.mode() != mode) {
            return Err(Error::ModeMismatch {
                left: mode,
                right: bad.mode(),
            });
        }
        Ok(Mat {
            rows,
            cols,
            mode,
            data,
        })
    }

    pub fn zeros(rows: usize, cols: usize, mode: Mode) -> Mat {
        Mat {
            rows,
            cols,
            mode,
            data: vec![Scalar::zero(mode); rows * cols],
        }
    }

    pub fn identity(k: usize, mode: Mode) -> Mat {
        let mut m = Mat::zeros(k, k, mode);
        for i in 0..k {
            m.data[i * k + i] = Scalar::one(mode);
        }
        m
    }

    /// Build from a closure; every produced entry must be in `mode`.
    pub fn from_fn(
        rows: usize,
        cols: usize,
        mode: Mode,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Result<Mat> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat::new(rows, cols, mode, data)
    }

    pub fn from_i64_rows(rows: &[Vec<i64>], mode: Mode) -> Result<Mat> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&v| Scalar::from_i64(mode, v)))
            .collect();
        Mat::new(r, c, mode, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) -> Result<()> {
        if v.mode() != self.mode {
            return Err(Error::ModeMismatch {
                left: self.mode,
                right: v.mode(),
            });
        }
        self.data[i * self.cols + j] = v;
        Ok(())
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Mat {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Mat {
            rows: self.cols,
            cols: self.rows,
            mode: self.mode,
            data,
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Mat {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        Mat {
            rows: rows.len(),
            cols: cols.len(),
            mode: self.mode,
            data,
        }
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        if self.mode != other.mode {
            return Err(Error::ModeMismatch {
                left: self.mode,
                right: other.mode,
            });
        }
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Mat::zeros(self.rows, other.cols, self.mode);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(b)?)?;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .try_fold(Scalar::zero(self.mode), |acc, (a, b)| acc.add(&a.mul(b)?))
            })
            .collect()
    }

    pub fn scale(&self, s: &Scalar) -> Result<Mat> {
        let data = self.data.iter().map(|x| x.mul(s)).collect::<Result<Vec<_>>>()?;
        Mat::new(self.rows, self.cols, self.mode, data)
    }

    pub fn neg(&self) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            mode: self.mode,
            data: self.data.iter().map(Scalar::neg).collect(),
        }
    }

    pub fn to_mode(&self, mode: Mode) -> Result<Mat> {
        let data = self.data.iter().map(|x| x.to_mode(mode)).collect::<Result<Vec<_>>>()?;
        Mat::new(self.rows, self.cols, mode, data)
    }

    /// Rows of exact entries; fails unless the matrix is in exact mode.
    pub fn exact_rows(&self) -> Result<Vec<Vec<Cyclotomic>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|s| s.as_exact().cloned()).collect())
            .collect()
    }

    pub fn to_complex(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).to_complex())
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(|s| s.to_string()).collect();
        let width = cells.iter().map(|c| c.chars().count()).max().unwrap_or(0);
        for i in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|j| format!("{:>width$}", cells[i * self.cols + j]))
                .collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat {}x{} ({})\n{}", self.rows, self.cols, self.mode, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_checks_shape_and_mode() {
        assert!(Mat::new(2, 2, Mode::Exact, vec![Scalar::one(Mode::Exact); 3]).is_err());
        let mixed = vec![Scalar::one(Mode::Exact), Scalar::one(Mode::Float)];
        assert!(matches!(
            Mat::new(1, 2, Mode::Exact, mixed),
            Err(Error::ModeMismatch { .. })
        ));
    }

    #[test]
    fn product_and_transpose() {
        let a = Mat::from_i64_rows(&[vec![1, 2], vec![3, 4]], Mode::Exact).unwrap();
        let b = Mat::from_i64_rows(&[vec![0, 1], vec![1, 0]], Mode::Exact).unwrap();
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab, Mat::from_i64_rows(&[vec![2, 1], vec![4, 3]], Mode::Exact).unwrap());
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.transpose().get(0, 1), &Scalar::from_i64(Mode::Exact, 3));
    }
}
