//! Hankel tensors, binary forms, Vandermonde terms and preset examples.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::{Mode, Scalar};

/// Binomial coefficient as `u128`; exact for all sizes used here.
pub fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// A Hankel tensor of order `m` on `C^n`, stored through its generating vector.
///
/// The entry at 1-based multi-index `(i_1, …, i_m)` is `h[i_1 + ⋯ + i_m − m]`.
#[derive(Clone, Debug, PartialEq)]
pub struct HankelTensor {
    n: usize,
    m: usize,
    mode: Mode,
    h: Vec<Scalar>,
}

impl HankelTensor {
    pub fn new(n: usize, m: usize, h: Vec<Scalar>) -> Result<HankelTensor> {
        let mode = h.first().map(Scalar::mode).unwrap_or(Mode::Exact);
        Self::with_mode(n, m, mode, h)
    }

    pub fn with_mode(n: usize, m: usize, mode: Mode, h: Vec<Scalar>) -> Result<HankelTensor> {
        if n < 2 || m < 1 {
            return Err(Error::Dimension(format!("need n >= 2 and m >= 1, got n={n}, m={m}")));
        }
        let expected = (n - 1) * m + 1;
        if h.len() != expected {
            return Err(Error::Dimension(format!(
                "generating vector has length {}, expected (n-1)m+1 = {expected}",
                h.len()
            )));
        }
        if mode == Mode::Gf2 {
            return Err(Error::InvalidArgument("tensors are exact or float".into()));
        }
        if let Some(bad) = h.iter().find(|s| s.mode() != mode) {
            return Err(Error::ModeMismatch {
                left: mode,
                right: bad.mode(),
            });
        }
        Ok(HankelTensor { n, m, mode, h })
    }

    pub fn from_i64(n: usize, m: usize, h: &[i64]) -> Result<HankelTensor> {
        Self::new(n, m, h.iter().map(|&v| Scalar::from_i64(Mode::Exact, v)).collect())
    }

    pub fn zero(n: usize, m: usize, mode: Mode) -> Result<HankelTensor> {
        let len = (n.max(2) - 1) * m + 1;
        Self::with_mode(n, m, mode, vec![Scalar::zero(mode); len])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Degree of the associated binary form, `(n−1)m`.
    pub fn d(&self) -> usize {
        (self.n - 1) * self.m
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn h(&self) -> &[Scalar] {
        &self.h
    }

    pub fn is_zero(&self) -> bool {
        self.h.iter().all(Scalar::is_zero)
    }

    /// Entry at a 1-based multi-index.
    pub fn entry(&self, idx: &[usize]) -> Result<&Scalar> {
        if idx.len() != self.m || idx.iter().any(|&i| i < 1 || i > self.n) {
            return Err(Error::Dimension(format!("index {idx:?} out of range")));
        }
        Ok(&self.h[idx.iter().sum::<usize>() - self.m])
    }

    pub fn to_mode(&self, mode: Mode) -> Result<HankelTensor> {
        let h = self.h.iter().map(|s| s.to_mode(mode)).collect::<Result<Vec<_>>>()?;
        Self::with_mode(self.n, self.m, mode, h)
    }

    /// `αA + βB` for tensors of the same shape and mode.
    pub fn linear_combination(alpha: &Scalar, a: &HankelTensor, beta: &Scalar, b: &HankelTensor) -> Result<HankelTensor> {
        if (a.n, a.m) != (b.n, b.m) {
            return Err(Error::Dimension("shape mismatch".into()));
        }
        let h = a
            .h
            .iter()
            .zip(&b.h)
            .map(|(x, y)| alpha.mul(x)?.add(&beta.mul(y)?))
            .collect::<Result<Vec<_>>>()?;
        Self::with_mode(a.n, a.m, a.mode, h)
    }
}

/// Binary form `h(x,y) = Σ_j binom(d,j) h_j x^j y^(d−j)` stored by its dual coefficients `h_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryForm {
    d: usize,
    mode: Mode,
    coeffs: Vec<Scalar>,
}

impl BinaryForm {
    pub fn new(coeffs: Vec<Scalar>) -> Result<BinaryForm> {
        if coeffs.is_empty() {
            return Err(Error::Dimension("a binary form needs at least one coefficient".into()));
        }
        let mode = coeffs[0].mode();
        if let Some(bad) = coeffs.iter().find(|s| s.mode() != mode) {
            return Err(Error::ModeMismatch {
                left: mode,
                right: bad.mode(),
            });
        }
        Ok(BinaryForm {
            d: coeffs.len() - 1,
            mode,
            coeffs,
        })
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Ordinary monomial coefficients: the coefficient of `x^j y^(d−j)` is `binom(d,j)·h_j`.
    pub fn monomial_coeffs(&self) -> Vec<Scalar> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let b = Scalar::from_i64(self.mode, binom(self.d, j) as i64);
                c.mul(&b).expect("same mode")
            })
            .collect()
    }
}

/// The correspondence between Hankel tensors and binary forms of degree `(n−1)m`.
pub fn to_binary_form(t: &HankelTensor) -> BinaryForm {
    BinaryForm {
        d: t.d(),
        mode: t.mode,
        coeffs: t.h.clone(),
    }
}

pub fn from_binary_form(b: &BinaryForm, n: usize, m: usize) -> Result<HankelTensor> {
    if n < 2 || b.d != (n - 1) * m {
        return Err(Error::Dimension(format!(
            "form of degree {} does not match n={n}, m={m}",
            b.d
        )));
    }
    HankelTensor::with_mode(n, m, b.mode, b.coeffs.clone())
}

/// `v_i = a^(i−1) b^(n−i)` for `i = 1..n`.
pub fn vandermonde_vector(a: &Scalar, b: &Scalar, n: usize) -> Result<Vec<Scalar>> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::InvalidArgument("node (0,0) is not a projective point".into()));
    }
    (0..n)
        .map(|i| a.pow(i as u32).mul(&b.pow((n - 1 - i) as u32)))
        .collect()
}

/// One term `λ·v(a,b)^{⊗m}`.
#[derive(Clone, Debug, PartialEq)]
pub struct VandermondeTerm {
    pub lambda: Scalar,
    pub a: Scalar,
    pub b: Scalar,
}

/// A Vandermonde decomposition `H = Σ λ_i v(a_i,b_i)^{⊗m}`.
#[derive(Clone, Debug, PartialEq)]
pub struct VandermondeDecomposition {
    pub n: usize,
    pub m: usize,
    pub mode: Mode,
    pub terms: Vec<VandermondeTerm>,
    pub claimed_rank: usize,
    pub unique: bool,
}

/// Generating vector `h_j = Σ_i λ_i a_i^j b_i^(d−j)` of a decomposition.
pub fn reconstruct(dec: &VandermondeDecomposition) -> Result<HankelTensor> {
    let d = (dec.n - 1) * dec.m;
    let mut h = vec![Scalar::zero(dec.mode); d + 1];
    for t in &dec.terms {
        for (j, hj) in h.iter_mut().enumerate() {
            let c = t.lambda.mul(&t.a.pow(j as u32))?.mul(&t.b.pow((d - j) as u32))?;
            *hj = hj.add(&c)?;
        }
    }
    HankelTensor::with_mode(dec.n, dec.m, dec.mode, h)
}

/// Symmetric tensor stored once per sorted multi-index.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseSymmetricTensor {
    n: usize,
    m: usize,
    /// Sorted 1-based multi-indices in lexicographic order, with their values.
    entries: Vec<(Vec<usize>, Scalar)>,
}

fn sorted_multi_indices(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            rec(i, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, m, &mut Vec::with_capacity(m), &mut out);
    out
}

impl DenseSymmetricTensor {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn get(&self, idx: &[usize]) -> Result<&Scalar> {
        let mut key = idx.to_vec();
        key.sort_unstable();
        self.entries
            .binary_search_by(|(k, _)| k.cmp(&key))
            .map(|pos| &self.entries[pos].1)
            .map_err(|_| Error::Dimension(format!("index {idx:?} out of range")))
    }

    /// All `n^m` entries in lexicographic order of 1-based multi-indices.
    pub fn expand(&self) -> Vec<Scalar> {
        let total = self.n.pow(self.m as u32);
        let mut out = Vec::with_capacity(total);
        let mut idx = vec![1; self.m];
        for _ in 0..total {
            out.push(self.get(&idx).expect("in range").clone());
            for pos in (0..self.m).rev() {
                if idx[pos] < self.n {
                    idx[pos] += 1;
                    break;
                }
                idx[pos] = 1;
            }
        }
        out
    }
}

pub fn dense(t: &HankelTensor) -> DenseSymmetricTensor {
    let entries = sorted_multi_indices(t.n, t.m)
        .into_iter()
        .map(|idx| {
            let v = t.h[idx.iter().sum::<usize>() - t.m].clone();
            (idx, v)
        })
        .collect();
    DenseSymmetricTensor { n: t.n, m: t.m, entries }
}

/// Entrywise equality: exact when both tensors are exact, otherwise within `tol` in max-abs.
pub fn tensors_equal(a: &DenseSymmetricTensor, b: &DenseSymmetricTensor, tol: f64) -> Result<bool> {
    if (a.n, a.m) != (b.n, b.m) {
        return Err(Error::Dimension(format!(
            "shapes ({}, {}) and ({}, {}) differ",
            a.n, a.m, b.n, b.m
        )));
    }
    Ok(a.entries.iter().zip(&b.entries).all(|((_, x), (_, y))| match (x, y) {
        (Scalar::Exact(p), Scalar::Exact(q)) => p == q,
        _ => (x.to_complex() - y.to_complex()).norm() <= tol,
    }))
}

/// Named example tensors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Preset {
    /// `n = 3`, `m = 2`, the anti-identity matrix.
    Ex35,
    /// `n = 3`, `m = 3`, entries 1 exactly when `i+j+k = 7`.
    Ex36,
    /// `n = 3`, the form `m x^(m−1) y + z^m`.
    Ex37 { m: usize },
    /// `n = 3`, entries 1 exactly when the index sum is `m + 2`.
    Ex47 { m: usize },
    /// Cubic tensor with entries 1 exactly when `i+j+k−2 = ⌊(3n−1)/2⌋`.
    Thm52 { n: usize },
    /// `n = 3`, `m = 3`, entries 1 exactly when `i+j+k = 8`.
    Ex55,
    /// Integer entries drawn uniformly from `[−bound, bound]`.
    Random { n: usize, m: usize, seed: u64, bound: i64 },
}

impl Preset {
    /// Resolve a preset name with optional size parameters.
    pub fn from_name(name: &str, n: Option<usize>, m: Option<usize>, seed: u64, bound: i64) -> Result<Preset> {
        let need = |v: Option<usize>, what: &str| {
            v.ok_or_else(|| Error::InvalidArgument(format!("preset '{name}' requires {what}")))
        };
        Ok(match name {
            "ex35" => Preset::Ex35,
            "ex36" => Preset::Ex36,
            "ex37" => Preset::Ex37 { m: need(m, "m")? },
            "ex47" => Preset::Ex47 { m: need(m, "m")? },
            "thm52" => Preset::Thm52 { n: need(n, "n")? },
            "ex55" => Preset::Ex55,
            "random" => Preset::Random {
                n: need(n, "n")?,
                m: need(m, "m")?,
                seed,
                bound,
            },
            other => return Err(Error::UnknownPreset(other.to_string())),
        })
    }
}

fn indicator(n: usize, m: usize, ones: &[usize]) -> Result<HankelTensor> {
    let len = (n - 1) * m + 1;
    let h: Vec<i64> = (0..len).map(|j| ones.contains(&j) as i64).collect();
    HankelTensor::from_i64(n, m, &h)
}

/// Build a preset tensor (always exact).
pub fn preset(p: &Preset) -> Result<HankelTensor> {
    match *p {
        Preset::Ex35 => indicator(3, 2, &[2]),
        Preset::Ex36 => indicator(3, 3, &[4]),
        Preset::Ex37 { m } => {
            if m < 1 {
                return Err(Error::InvalidArgument("m must be at least 1".into()));
            }
            indicator(3, m, &[1, 2 * m])
        }
        Preset::Ex47 { m } => {
            if m < 1 {
                return Err(Error::InvalidArgument("m must be at least 1".into()));
            }
            indicator(3, m, &[2])
        }
        Preset::Thm52 { n } => {
            if n < 2 {
                return Err(Error::InvalidArgument("n must be at least 2".into()));
            }
            indicator(n, 3, &[(3 * n - 1) / 2 - 1])
        }
        Preset::Ex55 => indicator(3, 3, &[5]),
        Preset::Random { n, m, seed, bound } => {
            if n < 2 || m < 1 || bound < 0 {
                return Err(Error::InvalidArgument(format!(
                    "random preset needs n >= 2, m >= 1, bound >= 0 (got {n}, {m}, {bound})"
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let h: Vec<i64> = (0..(n - 1) * m + 1).map(|_| rng.gen_range(-bound..=bound)).collect();
            HankelTensor::from_i64(n, m, &h)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex(v: i64) -> Scalar {
        Scalar::from_i64(Mode::Exact, v)
    }

    #[test]
    fn anti_identity_example() {
        let t = preset(&Preset::Ex35).unwrap();
        let dense = dense(&t);
        for i in 1..=3 {
            for j in 1..=3 {
                assert_eq!(dense.get(&[i, j]).unwrap(), &ex((i + j == 4) as i64));
            }
        }
        assert_eq!(
            to_binary_form(&t).monomial_coeffs(),
            vec![ex(0), ex(0), ex(6), ex(0), ex(0)]
        );
    }

    #[test]
    fn index_sum_examples() {
        let t = preset(&Preset::Ex36).unwrap();
        for idx in [[1, 3, 3], [2, 2, 3], [3, 2, 2]] {
            assert_eq!(t.entry(&idx).unwrap(), &ex(1));
        }
        assert_eq!(t.entry(&[3, 3, 3]).unwrap(), &ex(0));
        let t = preset(&Preset::Thm52 { n: 3 }).unwrap();
        assert_eq!(t.entry(&[1, 2, 3]).unwrap(), &ex(1));
        assert_eq!(t.entry(&[2, 2, 3]).unwrap(), &ex(0));
        let t = preset(&Preset::Ex37 { m: 3 }).unwrap();
        let ones: Vec<usize> = (0..t.h().len()).filter(|&j| !t.h()[j].is_zero()).collect();
        assert_eq!(ones, vec![1, 6]);
    }

    #[test]
    fn corner_tensor_and_wrong_length() {
        let t = HankelTensor::from_i64(2, 3, &[1, 0, 0, 0]).unwrap();
        assert_eq!(dense(&t).expand().iter().filter(|s| !s.is_zero()).count(), 1);
        assert!(matches!(HankelTensor::from_i64(3, 2, &[1, 2, 3]), Err(Error::Dimension(_))));
    }

    #[test]
    fn vandermonde_vector_orientation() {
        let v = vandermonde_vector(&ex(2), &ex(3), 3).unwrap();
        assert_eq!(v, vec![ex(9), ex(6), ex(4)]);
        assert_eq!(vandermonde_vector(&ex(1), &ex(0), 4).unwrap(), vec![ex(0), ex(0), ex(0), ex(1)]);
        assert!(vandermonde_vector(&ex(0), &ex(0), 2).is_err());
    }

    #[test]
    fn single_term_reconstruction() {
        let dec = VandermondeDecomposition {
            n: 2,
            m: 2,
            mode: Mode::Exact,
            terms: vec![VandermondeTerm {
                lambda: ex(1),
                a: ex(1),
                b: ex(1),
            }],
            claimed_rank: 1,
            unique: true,
        };
        assert_eq!(reconstruct(&dec).unwrap().h(), &[ex(1), ex(1), ex(1)]);
    }

    #[test]
    fn random_preset_is_reproducible() {
        let p = Preset::Random {
            n: 3,
            m: 3,
            seed: 7,
            bound: 9,
        };
        let a = preset(&p).unwrap();
        assert_eq!(a, preset(&p).unwrap());
        assert_eq!(a.h().len(), 7);
        assert!(matches!(
            Preset::from_name("nope", None, None, 0, 1),
            Err(Error::UnknownPreset(_))
        ));
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(5, 2), 10);
        assert_eq!(binom(7, 5), 21);
        assert_eq!(binom(3, 4), 0);
    }
}
