//! Koszul flattenings of order-three tensors and the border rank bounds they certify.
//!
//! For `T = Σ t_ijk e_i ⊗ e_j ⊗ e_k` the map
//! `(e_J) ⊗ e_i ↦ Σ_{j,k} t_ijk (e_J ∧ e_j) ⊗ e_k`
//! is represented by an `n·C(n,p) × n·C(n,p+1)` matrix with rows labelled
//! `(J, i)` and columns `(J', k)`, both ordered lexicographically with the
//! wedge index outermost.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{mat_rank, DEFAULT_TOL};
use crate::matrix::Mat;
use crate::scalar::{Mode, Scalar};
use crate::tensor::{binom, preset, HankelTensor, Preset};

/// Dense order-three tensor on `C^n ⊗ C^n ⊗ C^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor3 {
    n: usize,
    mode: Mode,
    data: Vec<Scalar>,
}

impl Tensor3 {
    /// Build from a closure over 1-based indices `(i, j, k)`.
    pub fn from_fn(n: usize, mode: Mode, mut f: impl FnMut(usize, usize, usize) -> Scalar) -> Result<Tensor3> {
        let mut data = Vec::with_capacity(n * n * n);
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    let v = f(i, j, k);
                    if v.mode() != mode {
                        return Err(Error::ModeMismatch {
                            left: mode,
                            right: v.mode(),
                        });
                    }
                    data.push(v);
                }
            }
        }
        Ok(Tensor3 { n, mode, data })
    }

    pub fn from_hankel(t: &HankelTensor) -> Result<Tensor3> {
        if t.m() != 3 {
            return Err(Error::Dimension(format!("Koszul flattenings need order 3, got {}", t.m())));
        }
        let h = t.h();
        Tensor3::from_fn(t.n(), t.mode(), |i, j, k| h[i + j + k - 3].clone())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Entry `t_ijk` at 1-based indices.
    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        let n = self.n;
        &self.data[((i - 1) * n + (j - 1)) * n + (k - 1)]
    }
}

/// A strictly increasing tuple `j_1 < ⋯ < j_p` of 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WedgeIndex(pub Vec<usize>);

impl WedgeIndex {
    pub fn new(v: Vec<usize>) -> Result<WedgeIndex> {
        if v.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(format!("{v:?} is not strictly increasing")));
        }
        Ok(WedgeIndex(v))
    }

    pub fn contains(&self, j: usize) -> bool {
        self.0.binary_search(&j).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for WedgeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// All `p`-subsets of `{1, …, n}` in lexicographic order.
pub fn wedge_subsets(n: usize, p: usize) -> Vec<WedgeIndex> {
    fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<WedgeIndex>) {
        if left == 0 {
            out.push(WedgeIndex(cur.clone()));
            return;
        }
        for x in start..=n {
            if n - x + 1 < left {
                break;
            }
            cur.push(x);
            rec(x + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, p, &mut Vec::with_capacity(p), &mut out);
    out
}

/// Where the new vector enters the wedge product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SignConvention {
    /// `e_J ∧ e_j`: sign `(−1)^(p−q)` with `q = #{x ∈ J : x < j}`.
    #[default]
    Append,
    /// `e_j ∧ e_J`: sign `(−1)^q`.
    Prepend,
}

/// Insert `j` into `J` with the appending convention.
pub fn wedge_insert(jset: &WedgeIndex, j: usize, n: usize) -> Result<Option<(WedgeIndex, i8)>> {
    wedge_insert_with(jset, j, n, SignConvention::Append)
}

pub fn wedge_insert_with(
    jset: &WedgeIndex,
    j: usize,
    n: usize,
    convention: SignConvention,
) -> Result<Option<(WedgeIndex, i8)>> {
    if j < 1 || j > n {
        return Err(Error::InvalidArgument(format!("index {j} outside 1..={n}")));
    }
    if jset.contains(j) {
        return Ok(None);
    }
    let p = jset.len();
    let q = jset.0.iter().filter(|&&x| x < j).count();
    let mut merged = jset.0.clone();
    merged.insert(q, j);
    let swaps = match convention {
        SignConvention::Append => p - q,
        SignConvention::Prepend => q,
    };
    let sign = if swaps % 2 == 0 { 1 } else { -1 };
    Ok(Some((WedgeIndex(merged), sign)))
}

/// The representing matrix of a Koszul flattening with its basis labels.
#[derive(Clone, Debug, PartialEq)]
pub struct KoszulMatrix {
    pub n: usize,
    pub p: usize,
    pub mat: Mat,
    pub rows: Vec<(WedgeIndex, usize)>,
    pub cols: Vec<(WedgeIndex, usize)>,
}

impl KoszulMatrix {
    /// Row label in the form `(j1,j2|i)`.
    pub fn row_label(&self, r: usize) -> String {
        let (j, i) = &self.rows[r];
        format!("({j}|{i})")
    }

    pub fn col_label(&self, c: usize) -> String {
        let (j, k) = &self.cols[c];
        format!("({j}|{k})")
    }
}

fn check_p(n: usize, p: usize) -> Result<()> {
    if p < 1 || p + 1 > n {
        return Err(Error::InvalidArgument(format!("p must satisfy 1 <= p <= n-1, got p={p}, n={n}")));
    }
    Ok(())
}

fn labels(n: usize, p: usize) -> Vec<(WedgeIndex, usize)> {
    wedge_subsets(n, p)
        .into_iter()
        .flat_map(|j| (1..=n).map(move |i| (j.clone(), i)))
        .collect()
}

fn build(t: &Tensor3, p: usize, sign: impl Fn(&WedgeIndex, usize) -> Option<(WedgeIndex, i8)>) -> Result<KoszulMatrix> {
    let n = t.n();
    check_p(n, p)?;
    let rows = labels(n, p);
    let cols = labels(n, p + 1);
    let col_block: HashMap<WedgeIndex, usize> = wedge_subsets(n, p + 1)
        .into_iter()
        .enumerate()
        .map(|(pos, j)| (j, pos))
        .collect();
    let mut mat = Mat::zeros(rows.len(), cols.len(), t.mode());
    for (r, (jset, i)) in rows.iter().enumerate() {
        for j in 1..=n {
            let Some((merged, s)) = sign(jset, j) else {
                continue;
            };
            let block = col_block[&merged];
            for k in 1..=n {
                let v = t.get(*i, j, k);
                let v = if s < 0 { v.neg() } else { v.clone() };
                mat.set(r, block * n + k - 1, v)?;
            }
        }
    }
    Ok(KoszulMatrix { n, p, mat, rows, cols })
}

pub fn koszul_matrix(t: &Tensor3, p: usize) -> Result<KoszulMatrix> {
    koszul_matrix_with(t, p, SignConvention::Append)
}

pub fn koszul_matrix_with(t: &Tensor3, p: usize, convention: SignConvention) -> Result<KoszulMatrix> {
    let n = t.n();
    build(t, p, |jset, j| {
        wedge_insert_with(jset, j, n, convention).expect("index in range")
    })
}

/// Parity of the permutation that sorts `v` (distinct entries).
fn sort_parity(v: &[usize]) -> i8 {
    let inversions: usize = (0..v.len())
        .map(|a| (a + 1..v.len()).filter(|&b| v[a] > v[b]).count())
        .sum();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The same matrix built by appending `j` to `J` and sorting, with the sign
/// taken from the parity of the sorting permutation.
pub fn koszul_matrix_by_sorting(t: &Tensor3, p: usize) -> Result<KoszulMatrix> {
    build(t, p, |jset, j| {
        if jset.contains(j) {
            return None;
        }
        let mut v = jset.0.clone();
        v.push(j);
        let s = sort_parity(&v);
        v.sort_unstable();
        Some((WedgeIndex(v), s))
    })
}

pub fn koszul_rank(t: &Tensor3, p: usize) -> Result<usize> {
    mat_rank(&koszul_matrix(t, p)?.mat, DEFAULT_TOL)
}

/// `⌈rank / C(n−1, p)⌉`.
pub fn bound_from_rank(rank: usize, n: usize, p: usize) -> usize {
    let b = binom(n - 1, p) as usize;
    rank.div_ceil(b)
}

pub fn brank_lower_bound(t: &Tensor3, p: usize) -> Result<usize> {
    Ok(bound_from_rank(koszul_rank(t, p)?, t.n(), p))
}

/// Outcome of the rank check on the special cubic tensor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem52Check {
    pub n: usize,
    pub p: usize,
    pub r: usize,
    pub rank: usize,
    pub expected: usize,
    pub pass: bool,
}

/// Rank of `M^p` for the tensor with entries `[i+j+k−2 = r]`, `r = ⌊(3n−1)/2⌋`, `p = ⌊n/2⌋`.
pub fn verify_theorem52(n: usize) -> Result<Theorem52Check> {
    if n < 2 {
        return Err(Error::InvalidArgument("n must be at least 2".into()));
    }
    let p = n / 2;
    let r = (3 * n - 1) / 2;
    let t = Tensor3::from_hankel(&preset(&Preset::Thm52 { n })?)?;
    let rank = koszul_rank(&t, p)?;
    let expected = binom(n - 1, p) as usize * r;
    Ok(Theorem52Check {
        n,
        p,
        r,
        rank,
        expected,
        pass: rank == expected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[usize]) -> WedgeIndex {
        WedgeIndex(v.to_vec())
    }

    #[test]
    fn insertion_signs() {
        assert_eq!(wedge_insert(&w(&[1, 2]), 2, 3).unwrap(), None);
        assert_eq!(wedge_insert(&w(&[2]), 1, 2).unwrap(), Some((w(&[1, 2]), -1)));
        assert_eq!(wedge_insert(&w(&[1]), 2, 2).unwrap(), Some((w(&[1, 2]), 1)));
        assert_eq!(wedge_insert(&w(&[1, 3]), 2, 3).unwrap(), Some((w(&[1, 2, 3]), -1)));
        assert!(wedge_insert(&w(&[1]), 4, 3).is_err());
    }

    #[test]
    fn shapes_and_labels() {
        for n in 2..6 {
            for p in 1..n {
                let t = Tensor3::from_fn(n, Mode::Exact, |_, _, _| Scalar::one(Mode::Exact)).unwrap();
                let k = koszul_matrix(&t, p).unwrap();
                assert_eq!(k.mat.rows(), n * binom(n, p) as usize);
                assert_eq!(k.mat.cols(), n * binom(n, p + 1) as usize);
            }
        }
        let t = Tensor3::from_fn(4, Mode::Exact, |_, _, _| Scalar::one(Mode::Exact)).unwrap();
        let k = koszul_matrix(&t, 2).unwrap();
        assert_eq!(k.row_label(0), "(1,2|1)");
        assert_eq!(k.row_label(5), "(1,3|2)");
        assert!(koszul_matrix(&t, 4).is_err());
        assert!(koszul_matrix(&t, 0).is_err());
    }

    #[test]
    fn sorting_oracle_agrees() {
        let t = Tensor3::from_fn(5, Mode::Exact, |i, j, k| Scalar::from_i64(Mode::Exact, (i * 25 + j * 5 + k) as i64))
            .unwrap();
        for p in 1..5 {
            assert_eq!(koszul_matrix(&t, p).unwrap(), koszul_matrix_by_sorting(&t, p).unwrap());
        }
    }

    #[test]
    fn special_cubic_small_cases() {
        let c = verify_theorem52(3).unwrap();
        assert_eq!((c.p, c.r, c.rank), (1, 4, 8));
        assert!(c.pass);
        let c = verify_theorem52(4).unwrap();
        assert_eq!((c.p, c.r, c.rank), (2, 5, 15));
    }
}
