//! Block structure of the Koszul flattening of the special cubic tensor
//! `[i+j+k−2 = ⌊(3n−1)/2⌋]` and the rank of its Schur complement.
//!
//! Rows of `M^p` are labelled `(J, i)` and columns `(J′, k)`. Inside every
//! column block the order of `k` is reversed (`k̃ = n+1−k`), which turns each
//! nonzero block into a signed shift `±T_{j−mid}` and makes `D` diagonal.

use std::collections::HashMap;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::koszul::{koszul_matrix, wedge_insert, wedge_subsets, Tensor3, WedgeIndex};
use crate::linalg::{gf2, mat_rank};
use crate::matrix::Mat;
use crate::scalar::{Mode, Scalar};
use crate::tensor::{binom, preset, Preset};

type IntMat = Vec<Vec<i64>>;

/// The `n×n` shift matrix with `(i,k)` entry `1` iff `k − i = a`.
#[derive(Clone, Debug, PartialEq)]
pub struct ToeplitzShift {
    pub a: i64,
    pub n: usize,
    pub mat: Mat,
}

impl ToeplitzShift {
    pub fn new(a: i64, n: usize) -> ToeplitzShift {
        ToeplitzShift { a, n, mat: to_mat(&shift(a, n), Mode::Exact) }
    }
}

fn shift(a: i64, n: usize) -> IntMat {
    (0..n)
        .map(|i| (0..n).map(|k| i64::from(k as i64 - i as i64 == a)).collect())
        .collect()
}

fn int_mul(a: &IntMat, b: &IntMat) -> IntMat {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            let mut out = vec![0i64; cols];
            for (x, &v) in row.iter().enumerate() {
                if v != 0 {
                    for (o, &w) in out.iter_mut().zip(&b[x]) {
                        *o += v * w;
                    }
                }
            }
            out
        })
        .collect()
}

fn to_mat(m: &IntMat, mode: Mode) -> Mat {
    let cols = m.first().map_or(0, Vec::len);
    Mat::from_fn(m.len(), cols, mode, |i, j| Scalar::from_i64(mode, m[i][j])).expect("uniform mode")
}

fn to_int(s: &Scalar) -> Result<i64> {
    s.as_exact()?
        .rational_part()
        .filter(|q| q.is_integer())
        .and_then(|q| q.to_integer().to_i64())
        .ok_or_else(|| Error::InvariantViolation(format!("expected an integer entry, found {s}")))
}

/// The wedge-index families used to partition the special Koszul matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct IndexFamilies {
    pub n: usize,
    pub p: usize,
    pub mid: usize,
    /// `p`-subsets without `mid`.
    pub r0: Vec<WedgeIndex>,
    /// `J ∪ {mid}` for `J` in `r0`, listed in the same order so that `D` is diagonal.
    pub c0: Vec<WedgeIndex>,
    /// `p`-subsets containing `mid`.
    pub r: Vec<WedgeIndex>,
    /// `(p+1)`-subsets without `mid`.
    pub c: Vec<WedgeIndex>,
}

impl IndexFamilies {
    pub fn new(n: usize) -> Result<IndexFamilies> {
        check_n(n)?;
        let p = n / 2;
        let mid = n.div_ceil(2);
        let (r, r0): (Vec<_>, Vec<_>) = wedge_subsets(n, p).into_iter().partition(|j| j.contains(mid));
        let c0 = r0
            .iter()
            .map(|j| {
                let mut v = j.0.clone();
                v.push(mid);
                v.sort_unstable();
                WedgeIndex(v)
            })
            .collect();
        let c = wedge_subsets(n, p + 1).into_iter().filter(|j| !j.contains(mid)).collect();
        Ok(IndexFamilies { n, p, mid, r0, c0, r, c })
    }

    /// Members of `R` whose `s`-th smallest element is `mid`.
    pub fn r_s(&self, s: usize) -> Vec<WedgeIndex> {
        self.r.iter().filter(|j| j.0.get(s.wrapping_sub(1)) == Some(&self.mid)).cloned().collect()
    }

    /// Members of `C` with exactly `s` elements below `mid`.
    pub fn c_s(&self, s: usize) -> Vec<WedgeIndex> {
        self.c.iter().filter(|j| j.0.iter().filter(|&&x| x < self.mid).count() == s).cloned().collect()
    }
}

fn check_n(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("n must be at least 3, got {n}")));
    }
    Ok(())
}

/// `D`, `T₁`, `T₂` cut out of `M^p` for the special cubic tensor.
#[derive(Clone, Debug, PartialEq)]
pub struct Blocks {
    pub families: IndexFamilies,
    pub d: Mat,
    pub t1: Mat,
    pub t2: Mat,
}

struct IntBlocks {
    families: IndexFamilies,
    d: Vec<i64>,
    t1: IntMat,
    t2: IntMat,
}

fn int_blocks(n: usize) -> Result<IntBlocks> {
    let families = IndexFamilies::new(n)?;
    let t = Tensor3::from_hankel(&preset(&Preset::Thm52 { n })?)?;
    let km = koszul_matrix(&t, families.p)?;
    let row_block: HashMap<&WedgeIndex, usize> =
        km.rows.iter().step_by(n).enumerate().map(|(b, (j, _))| (j, b)).collect();
    let col_block: HashMap<&WedgeIndex, usize> =
        km.cols.iter().step_by(n).enumerate().map(|(b, (j, _))| (j, b)).collect();
    let cut = |rs: &[WedgeIndex], cs: &[WedgeIndex]| -> Result<IntMat> {
        let mut out = Vec::with_capacity(rs.len() * n);
        for jr in rs {
            for i in 0..n {
                let r = row_block[jr] * n + i;
                let mut row = Vec::with_capacity(cs.len() * n);
                for jc in cs {
                    for kt in 0..n {
                        row.push(to_int(km.mat.get(r, col_block[jc] * n + (n - 1 - kt)))?);
                    }
                }
                out.push(row);
            }
        }
        Ok(out)
    };
    let dfull = cut(&families.r0, &families.c0)?;
    let t1 = cut(&families.r0, &families.c)?;
    let t2 = cut(&families.r, &families.c0)?;
    let zero = cut(&families.r, &families.c)?;
    if zero.iter().flatten().any(|&v| v != 0) {
        return Err(Error::InvariantViolation("(R, C) block of M^p is not zero".into()));
    }
    let mut d = Vec::with_capacity(dfull.len());
    for (i, row) in dfull.iter().enumerate() {
        if row.iter().enumerate().any(|(j, &v)| (i == j) != (v != 0)) || row[i].abs() != 1 {
            return Err(Error::InvariantViolation("D is not a signed identity".into()));
        }
        d.push(row[i]);
    }
    Ok(IntBlocks { families, d, t1, t2 })
}

pub fn build_blocks(n: usize) -> Result<Blocks> {
    let b = int_blocks(n)?;
    let k = b.d.len();
    let d = Mat::from_fn(k, k, Mode::Exact, |i, j| Scalar::from_i64(Mode::Exact, if i == j { b.d[i] } else { 0 }))?;
    Ok(Blocks {
        families: b.families,
        d,
        t1: to_mat(&b.t1, Mode::Exact),
        t2: to_mat(&b.t2, Mode::Exact),
    })
}

fn schur_int(n: usize) -> Result<(IndexFamilies, IntMat)> {
    let b = int_blocks(n)?;
    let scaled: IntMat = b.t1.iter().zip(&b.d).map(|(row, &s)| row.iter().map(|v| -s * v).collect()).collect();
    Ok((b.families, int_mul(&b.t2, &scaled)))
}

/// `M = −T₂ D T₁`, rows labelled by `R × [n]`, columns by `C × [n]` with reversed `k`.
pub fn schur_m(n: usize) -> Result<Mat> {
    Ok(to_mat(&schur_int(n)?.1, Mode::Exact))
}

/// Sign of `e_K ∧ e_x` relative to the sorted basis vector.
fn eps(k: &WedgeIndex, x: usize, n: usize) -> Result<i64> {
    let (_, s) = wedge_insert(k, x, n)?
        .ok_or_else(|| Error::InvalidArgument(format!("{x} already in ({k})")))?;
    Ok(i64::from(s))
}

/// The `(J, J′)` block of `M` from the signed commutator formula.
pub fn block_of_m(n: usize, j_row: &WedgeIndex, j_col: &WedgeIndex) -> Result<Mat> {
    let fam = IndexFamilies::new(n)?;
    if !fam.r.contains(j_row) {
        return Err(Error::InvalidArgument(format!("({j_row}) is not a p-subset containing {}", fam.mid)));
    }
    if !fam.c.contains(j_col) {
        return Err(Error::InvalidArgument(format!("({j_col}) is not a (p+1)-subset avoiding {}", fam.mid)));
    }
    let mid = fam.mid;
    let rest: Vec<usize> = j_row.0.iter().copied().filter(|&x| x != mid).collect();
    let extra: Vec<usize> = j_col.0.iter().copied().filter(|x| !rest.contains(x)).collect();
    let zero = || to_mat(&vec![vec![0; n]; n], Mode::Exact);
    if rest.iter().any(|x| !j_col.contains(*x)) || extra.len() != 2 {
        return Ok(zero());
    }
    let (j, jp) = (extra[0], extra[1]);
    if !(j < mid && mid < jp) {
        return Ok(zero());
    }
    let k = WedgeIndex(j_col.0.iter().copied().filter(|&x| x != jp).collect());
    let delta = eps(j_row, j, n)? * eps(&k, mid, n)? * eps(&k, jp, n)?;
    let ta = shift(j as i64 - mid as i64, n);
    let tb = shift(jp as i64 - mid as i64, n);
    let (ba, ab) = (int_mul(&tb, &ta), int_mul(&ta, &tb));
    let out: IntMat = ba
        .iter()
        .zip(&ab)
        .map(|(x, y)| x.iter().zip(y).map(|(u, v)| delta * (u - v)).collect())
        .collect();
    Ok(to_mat(&out, Mode::Exact))
}

/// The `(J, J′)` block read off [`schur_m`].
pub fn schur_block(m: &Mat, fam: &IndexFamilies, j_row: &WedgeIndex, j_col: &WedgeIndex) -> Result<Mat> {
    let n = fam.n;
    let rb = fam.r.iter().position(|j| j == j_row);
    let cb = fam.c.iter().position(|j| j == j_col);
    let (Some(rb), Some(cb)) = (rb, cb) else {
        return Err(Error::InvalidArgument(format!("no block ({j_row}) x ({j_col})")));
    };
    let rows: Vec<usize> = (0..n).map(|i| rb * n + i).collect();
    let cols: Vec<usize> = (0..n).map(|k| cb * n + k).collect();
    Ok(m.submatrix(&rows, &cols))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaA1Check {
    pub n: usize,
    pub p: usize,
    pub rank_exact: usize,
    pub rank_gf2: usize,
    pub expected: usize,
    pub pass: bool,
}

/// Exact and GF(2) ranks of `M` against `C(n−1, p+1)·(p+1)`.
pub fn verify_lemma_a1(n: usize) -> Result<LemmaA1Check> {
    let (fam, m) = schur_int(n)?;
    let p = fam.p;
    let expected = binom(n - 1, p + 1) as usize * (p + 1);
    let rank_exact = mat_rank(&to_mat(&m, Mode::Exact), 0.0)?;
    let rank_gf2 = gf2_rank(&m);
    Ok(LemmaA1Check {
        n,
        p,
        rank_exact,
        rank_gf2,
        expected,
        pass: rank_exact == expected && rank_gf2 == expected,
    })
}

fn gf2_rank(m: &IntMat) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let rows = m
        .iter()
        .map(|r| gf2::BitRow::from_bools(&r.iter().map(|v| v % 2 != 0).collect::<Vec<_>>()))
        .collect();
    gf2::rank(rows, cols)
}

/// One diagonal block `M_s` after removing the middle rows and columns.
#[derive(Clone, Debug, PartialEq)]
pub struct SplitBlock {
    pub s: usize,
    /// Entries reduced mod 2.
    pub mat: Mat,
    pub rows: Vec<(WedgeIndex, usize)>,
    pub cols: Vec<(WedgeIndex, usize)>,
    pub full_column_rank: bool,
}

/// Indices `i` kept by the trimming step: those outside `p−s+2 ..= n−s`.
fn kept(n: usize, p: usize, s: usize) -> Vec<usize> {
    (1..=n).filter(|&i| !(p + 2 <= i + s && i + s <= n)).collect()
}

/// The blocks `M_s` of `M`, with full-column-rank checks over GF(2).
pub fn block_diagonal_split(n: usize) -> Result<Vec<SplitBlock>> {
    let (fam, m) = schur_int(n)?;
    let mut out = Vec::new();
    for s in 1..=fam.p {
        let rs = fam.r_s(s);
        let cs = fam.c_s(s);
        if rs.is_empty() || cs.is_empty() {
            continue;
        }
        let idx = kept(n, fam.p, s);
        let label = |fams: &[WedgeIndex], js: &[WedgeIndex]| -> Vec<((WedgeIndex, usize), usize)> {
            js.iter()
                .flat_map(|j| {
                    let b = fams.iter().position(|x| x == j).expect("member of family");
                    idx.iter().map(move |&i| ((j.clone(), i), b * n + i - 1))
                })
                .collect()
        };
        let rl = label(&fam.r, &rs);
        let cl = label(&fam.c, &cs);
        let sub: IntMat = rl
            .iter()
            .map(|(_, r)| cl.iter().map(|(_, c)| m[*r][*c].rem_euclid(2)).collect())
            .collect();
        let full_column_rank = gf2_rank(&sub) == cl.len();
        out.push(SplitBlock {
            s,
            mat: to_mat(&sub, Mode::Gf2),
            rows: rl.into_iter().map(|(l, _)| l).collect(),
            cols: cl.into_iter().map(|(l, _)| l).collect(),
            full_column_rank,
        });
    }
    Ok(out)
}

/// Whether columns can be eliminated one at a time by repeatedly finding a
/// row with a single nonzero among the remaining columns.
pub fn peels_to_triangular(m: &Mat) -> bool {
    let mut rows_left: Vec<usize> = (0..m.rows()).collect();
    let mut cols_left: Vec<usize> = (0..m.cols()).collect();
    while !cols_left.is_empty() {
        let hit = rows_left.iter().enumerate().find_map(|(pos, &r)| {
            let nz: Vec<usize> = cols_left.iter().copied().filter(|&c| !m.get(r, c).is_zero()).collect();
            (nz.len() == 1).then(|| (pos, nz[0]))
        });
        let Some((pos, c)) = hit else {
            return false;
        };
        rows_left.swap_remove(pos);
        cols_left.retain(|&x| x != c);
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[usize]) -> WedgeIndex {
        WedgeIndex(v.to_vec())
    }

    #[test]
    fn toeplitz_shift_pattern() {
        let t = ToeplitzShift::new(-1, 3);
        assert_eq!(
            t.mat,
            Mat::from_i64_rows(&[vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0]], Mode::Exact).unwrap()
        );
        for a in -4..=4 {
            let t = ToeplitzShift::new(a, 4);
            for i in 0..4 {
                assert!(t.mat.row(i).iter().filter(|v| !v.is_zero()).count() <= 1);
            }
        }
    }

    #[test]
    fn family_counts() {
        for n in 3..=9 {
            let f = IndexFamilies::new(n).unwrap();
            let p = n / 2;
            assert_eq!(f.r0.len() as u128, binom(n - 1, p));
            assert_eq!(f.c0.len() as u128, binom(n - 1, p));
            assert_eq!(f.r.len() as u128, binom(n - 1, p - 1));
            assert_eq!(f.c.len() as u128, binom(n - 1, p + 1));
        }
        assert!(IndexFamilies::new(2).is_err());
    }

    #[test]
    fn d_squares_to_identity() {
        for n in 3..=6 {
            let b = build_blocks(n).unwrap();
            let k = b.d.rows();
            assert_eq!(b.d.mul(&b.d).unwrap(), Mat::identity(k, Mode::Exact));
        }
        let b = build_blocks(3).unwrap();
        assert_eq!((b.d.rows(), b.d.cols()), (6, 6));
        assert_eq!((b.t1.rows(), b.t1.cols()), (6, 3));
        assert_eq!((b.t2.rows(), b.t2.cols()), (3, 6));
    }

    #[test]
    fn schur_matches_product() {
        let b = build_blocks(4).unwrap();
        let prod = b.t2.mul(&b.d).unwrap().mul(&b.t1).unwrap().neg();
        assert_eq!(prod, schur_m(4).unwrap());
    }

    #[test]
    fn commutator_formula_matches_schur() {
        for n in 3..=6 {
            let fam = IndexFamilies::new(n).unwrap();
            let m = schur_m(n).unwrap();
            for jr in &fam.r {
                for jc in &fam.c {
                    let blk = block_of_m(n, jr, jc).unwrap();
                    assert_eq!(blk, schur_block(&m, &fam, jr, jc).unwrap(), "n={n} ({jr}) ({jc})");
                    // Column `k = mid` sits at reversed position `n+1−mid`.
                    for x in 0..n {
                        assert!(blk.get(x, n - fam.mid).is_zero());
                        assert!(blk.get(fam.mid - 1, x).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn block_of_m_rejects_bad_labels() {
        assert!(block_of_m(4, &w(&[1, 3]), &w(&[1, 3, 4])).is_err());
        assert!(block_of_m(4, &w(&[1, 2]), &w(&[1, 2, 4])).is_err());
        assert!(block_of_m(4, &w(&[1, 2]), &w(&[1, 3, 4])).unwrap().is_zero());
        assert!(!block_of_m(4, &w(&[2, 3]), &w(&[1, 3, 4])).unwrap().is_zero());
        assert!(block_of_m(4, &w(&[2, 3]), &w(&[1, 2, 3])).is_err());
    }

    #[test]
    fn lemma_small_cases() {
        let c = verify_lemma_a1(3).unwrap();
        assert_eq!((c.rank_exact, c.rank_gf2, c.expected), (2, 2, 2));
        let c = verify_lemma_a1(4).unwrap();
        assert!(c.pass);
        assert_eq!(c.expected, 3);
    }

    #[test]
    fn trimmed_commutators_for_n6() {
        let split = block_diagonal_split(6).unwrap();
        let s2 = split.iter().find(|b| b.s == 2).unwrap();
        let rows_of = |j: &[usize]| -> Vec<usize> {
            (0..s2.rows.len()).filter(|&r| s2.rows[r].0 == w(j)).collect()
        };
        let cols_of = |j: &[usize]| -> Vec<usize> {
            (0..s2.cols.len()).filter(|&c| s2.cols[c].0 == w(j)).collect()
        };
        let t_m1_2 = s2.mat.submatrix(&rows_of(&[1, 3, 4]), &cols_of(&[1, 2, 4, 5]));
        let expect = Mat::from_i64_rows(
            &[vec![0, 1, 0, 0], vec![0, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, 0, 0]],
            Mode::Gf2,
        )
        .unwrap();
        assert_eq!(t_m1_2, expect);
        let t_m2_2 = s2.mat.submatrix(&rows_of(&[2, 3, 4]), &cols_of(&[1, 2, 4, 5]));
        assert_eq!(t_m2_2, Mat::identity(4, Mode::Gf2));
        assert!(s2.mat.submatrix(&rows_of(&[1, 3, 4]), &cols_of(&[1, 2, 5, 6])).is_zero());
        assert!(s2.mat.submatrix(&rows_of(&[1, 3, 6]), &cols_of(&[1, 2, 4, 5])).is_zero());
        assert_eq!((s2.rows.len(), s2.cols.len()), (24, 12));
    }
}
