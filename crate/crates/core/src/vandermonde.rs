//! Vandermonde rank and Vandermonde rank decompositions of Hankel tensors.
//!
//! The procedure works on the binary form `h(x,y)` of a Hankel tensor:
//!
//! 1. `r` is the rank of the middle catalecticant `C_{d−s,s}(h)`, `s = ⌊d/2⌋`.
//! 2. If `d` is even and `r = d/2 + 1`, or the kernel form of `C_{d−r,r}(h)`
//!    is squarefree, the Vandermonde rank is `r`; otherwise it is `d − r + 2`.
//! 3. The nodes of a decomposition are the roots of a squarefree kernel form
//!    of the appropriate catalecticant, and the weights `λ` solve a transposed
//!    Vandermonde system.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::catalecticant::catalecticant;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, mat_rank, solve_tol, DEFAULT_TOL};
use crate::matrix::Mat;
use crate::poly::{self, Root};
use crate::scalar::{Mode, Scalar};
use crate::tensor::{
    dense, reconstruct, tensors_equal, to_binary_form, BinaryForm, HankelTensor, VandermondeDecomposition,
    VandermondeTerm,
};

/// Number of random kernel combinations tried before giving up.
pub const MAX_KERNEL_DRAWS: usize = 64;

/// Relative tolerance used when verifying floating-point decompositions.
pub const FLOAT_VERIFY_TOL: f64 = 1e-9;

/// Relative size below which float coefficients count as zero.
const FLOAT_ZERO_TOL: f64 = 1e-10;

/// Relative distance below which float roots count as repeated.
const FLOAT_CLUSTER_TOL: f64 = 1e-5;

/// A point `(a : b)` of the projective line with multiplicity.
///
/// Points are scaled to `b = 1` when `b ≠ 0` and to `(1, 0)` otherwise.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectiveRoot {
    pub a: Scalar,
    pub b: Scalar,
    pub multiplicity: usize,
}

/// The form `f(x,y) = f₀x^k + f₁x^(k−1)y + ⋯ + f_k y^k` with plain monomial coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelForm {
    coeffs: Vec<Scalar>,
}

impl KernelForm {
    /// Build a form, scaling the first nonzero coefficient to 1.
    pub fn new(coeffs: Vec<Scalar>) -> Result<KernelForm> {
        let mode = coeffs.first().map(Scalar::mode).ok_or(Error::ZeroForm)?;
        if mode == Mode::Gf2 {
            return Err(Error::InvalidArgument("kernel forms are exact or float".into()));
        }
        if let Some(bad) = coeffs.iter().find(|s| s.mode() != mode) {
            return Err(Error::ModeMismatch {
                left: mode,
                right: bad.mode(),
            });
        }
        let coeffs = clean(coeffs);
        let lead = coeffs.iter().find(|c| !c.is_zero()).cloned().ok_or(Error::ZeroForm)?;
        let coeffs = coeffs
            .iter()
            .map(|c| c.div(&lead).map(simplify))
            .collect::<Result<Vec<_>>>()?;
        Ok(KernelForm { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<KernelForm> {
        KernelForm::new(coeffs.iter().map(|&c| Scalar::from_i64(Mode::Exact, c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn mode(&self) -> Mode {
        self.coeffs[0].mode()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// `f(y, x)`, whose roots are the nodes `(a : b)` with `Σ f_j a^j b^(k−j) = 0`.
    pub fn reversed(&self) -> KernelForm {
        let mut c = self.coeffs.clone();
        c.reverse();
        KernelForm::new(c).expect("nonzero form")
    }

    /// Number of leading zero coefficients: the multiplicity of the root `(1, 0)`.
    fn leading_zeros(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Dehomogenization `p(t) = f(t, 1)`, lowest degree first, without the
    /// vanishing high-degree coefficients.
    fn dehomogenized(&self) -> Vec<Scalar> {
        let mut p: Vec<Scalar> = self.coeffs.iter().rev().cloned().collect();
        while p.last().is_some_and(Scalar::is_zero) {
            p.pop();
        }
        p
    }
}

fn simplify(s: Scalar) -> Scalar {
    match s {
        Scalar::Exact(c) => Scalar::Exact(c.simplify()),
        other => other,
    }
}

/// Zero out float entries that are negligible relative to the largest one.
fn clean(v: Vec<Scalar>) -> Vec<Scalar> {
    let scale = v.iter().map(|s| match s {
        Scalar::Float(z) => z.norm(),
        _ => 0.0,
    });
    let scale = scale.fold(0.0, f64::max);
    v.into_iter()
        .map(|s| match s {
            Scalar::Float(z) if z.norm() <= FLOAT_ZERO_TOL * scale => Scalar::float(0.0, 0.0),
            other => other,
        })
        .collect()
}

fn exact_coeffs(p: &[Scalar]) -> Result<Vec<Cyclotomic>> {
    p.iter().map(|s| s.as_exact().cloned()).collect()
}

fn complex_coeffs(p: &[Scalar]) -> Vec<Complex64> {
    p.iter().map(Scalar::to_complex).collect()
}

/// The border Vandermonde rank `rank C_{d−s,s}(h)` with `s = ⌊d/2⌋`.
pub fn border_vrank(t: &HankelTensor) -> Result<usize> {
    let b = to_binary_form(t);
    middle_rank(&b)
}

fn middle_rank(b: &BinaryForm) -> Result<usize> {
    let c = catalecticant(b, b.degree() / 2)?;
    mat_rank(&c.mat, DEFAULT_TOL)
}

/// Whether `f` has no repeated projective root.
pub fn is_squarefree(f: &KernelForm) -> Result<bool> {
    if f.leading_zeros() > 1 {
        return Ok(false);
    }
    let p = f.dehomogenized();
    match f.mode() {
        Mode::Exact => Ok(poly::is_squarefree(&exact_coeffs(&p)?)),
        _ => {
            let roots = poly::roots_complex(&complex_coeffs(&p));
            Ok(poly::cluster(&roots, FLOAT_CLUSTER_TOL).iter().all(|&(_, k)| k == 1))
        }
    }
}

/// Roots of `f(x, y)` in the projective line, with multiplicities summing to the degree.
pub fn projective_roots(f: &KernelForm) -> Result<Vec<ProjectiveRoot>> {
    let mode = f.mode();
    let mut out = Vec::new();
    let lz = f.leading_zeros();
    if lz > 0 {
        out.push(ProjectiveRoot {
            a: Scalar::one(mode),
            b: Scalar::zero(mode),
            multiplicity: lz,
        });
    }
    let p = f.dehomogenized();
    let finite: Vec<Root> = match mode {
        Mode::Exact => poly::roots_exact(&exact_coeffs(&p)?),
        _ => {
            let roots = poly::roots_complex(&complex_coeffs(&p));
            poly::cluster(&roots, FLOAT_CLUSTER_TOL)
                .into_iter()
                .map(|(z, k)| Root::Float(z, k))
                .collect()
        }
    };
    let any_float = finite.iter().any(|r| matches!(r, Root::Float(..)));
    for r in finite {
        let (a, multiplicity) = match r {
            Root::Exact(c, k) => (Scalar::Exact(c), k),
            Root::Float(z, k) => (Scalar::Float(z), k),
        };
        out.push(ProjectiveRoot {
            a,
            b: Scalar::one(mode),
            multiplicity,
        });
    }
    if any_float {
        for r in &mut out {
            r.a = r.a.to_mode(Mode::Float)?;
            r.b = r.b.to_mode(Mode::Float)?;
        }
    }
    Ok(out)
}

/// Which branch of the rank dichotomy applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VrankCase {
    /// `d` even and `r = d/2 + 1`.
    Full,
    /// The kernel form of `C_{d−r,r}(h)` is squarefree.
    Squarefree,
    /// The kernel form has a repeated root.
    Multiple,
}

/// Full outcome of the rank computation.
#[derive(Clone, Debug, PartialEq)]
pub struct VrankInfo {
    /// `rank C_{d−s,s}(h)`.
    pub r: usize,
    pub vrank: usize,
    pub case: VrankCase,
    /// The kernel form of `C_{d−r,r}(h)` when it is one-dimensional.
    pub kernel_form: Option<KernelForm>,
}

/// `(r, vrank, case)`.
pub fn vrank(t: &HankelTensor) -> Result<(usize, usize, VrankCase)> {
    let info = vrank_info(t)?;
    Ok((info.r, info.vrank, info.case))
}

pub fn vrank_info(t: &HankelTensor) -> Result<VrankInfo> {
    let b = to_binary_form(t);
    let d = b.degree();
    let r = middle_rank(&b)?;
    if r == 0 {
        return Ok(VrankInfo {
            r: 0,
            vrank: 0,
            case: VrankCase::Full,
            kernel_form: None,
        });
    }
    if d % 2 == 0 && r == d / 2 + 1 {
        return Ok(VrankInfo {
            r,
            vrank: r,
            case: VrankCase::Full,
            kernel_form: None,
        });
    }
    let c = catalecticant(&b, r)?;
    let ker = kernel_basis(&c.mat)?;
    if ker.len() != 1 {
        return Err(Error::InvariantViolation(format!(
            "kernel of C_{{{},{}}} has dimension {}, expected 1",
            d - r,
            r,
            ker.len()
        )));
    }
    let f = KernelForm::new(ker.into_iter().next().expect("one vector"))?;
    let (vrank, case) = if is_squarefree(&f)? {
        (r, VrankCase::Squarefree)
    } else {
        (d - r + 2, VrankCase::Multiple)
    };
    Ok(VrankInfo {
        r,
        vrank,
        case,
        kernel_form: Some(f),
    })
}

fn in_kernel(c: &Mat, v: &[Scalar]) -> Result<bool> {
    let image = c.mul_vec(v)?;
    Ok(match c.mode() {
        Mode::Exact => image.iter().all(Scalar::is_zero),
        _ => {
            let entry_max = (0..c.rows())
                .flat_map(|i| c.row(i).iter().map(|s| s.to_complex().norm()))
                .fold(0.0, f64::max);
            let v_max = v.iter().map(|s| s.to_complex().norm()).fold(0.0, f64::max);
            let scale = (entry_max * v_max * c.cols() as f64).max(f64::MIN_POSITIVE);
            image.iter().all(|s| s.to_complex().norm() <= DEFAULT_TOL * scale)
        }
    })
}

/// A squarefree form from `ker C_{d−k,k}(h)`.
///
/// The binomial `x^k − y^k` is taken when it lies in the kernel; otherwise
/// seeded random small-integer combinations of a kernel basis are tried with a
/// widening coefficient range.
pub fn generic_kernel_form(b: &BinaryForm, k: usize, seed: u64) -> Result<KernelForm> {
    let c = catalecticant(b, k)?.mat;
    let mode = b.mode();
    let basis = kernel_basis(&c)?;
    if basis.is_empty() {
        return Err(Error::InvariantViolation(format!(
            "C_{{{},{k}}} has a trivial kernel",
            b.degree() - k
        )));
    }
    if k >= 1 {
        let mut binomial = vec![Scalar::zero(mode); k + 1];
        binomial[0] = Scalar::one(mode);
        binomial[k] = Scalar::from_i64(mode, -1);
        if in_kernel(&c, &binomial)? {
            let f = KernelForm::new(binomial)?;
            if is_squarefree(&f)? {
                return Ok(f);
            }
        }
    }
    if basis.len() == 1 {
        let f = KernelForm::new(basis[0].clone())?;
        return if is_squarefree(&f)? {
            Ok(f)
        } else {
            Err(Error::NoSquarefreeKernel { attempts: 1 })
        };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..MAX_KERNEL_DRAWS {
        let range = 2 + attempt as i64 / 4;
        let weights: Vec<i64> = basis.iter().map(|_| rng.gen_range(-range..=range)).collect();
        if weights.iter().all(|&w| w == 0) {
            continue;
        }
        let mut v = vec![Scalar::zero(mode); k + 1];
        for (w, vec) in weights.iter().zip(&basis) {
            if *w == 0 {
                continue;
            }
            let w = Scalar::from_i64(mode, *w);
            for (acc, x) in v.iter_mut().zip(vec) {
                *acc = acc.add(&w.mul(x)?)?;
            }
        }
        let f = KernelForm::new(v)?;
        if is_squarefree(&f)? {
            return Ok(f);
        }
    }
    Err(Error::NoSquarefreeKernel {
        attempts: MAX_KERNEL_DRAWS,
    })
}

/// Weights `λ` with `h_j = Σ_i λ_i a_i^j b_i^(d−j)` for `j = 0..d`.
pub fn solve_lambdas(roots: &[ProjectiveRoot], b: &BinaryForm) -> Result<Vec<Scalar>> {
    if let Some(r) = roots.iter().find(|r| r.multiplicity != 1) {
        return Err(Error::InvalidArgument(format!(
            "node ({}, {}) has multiplicity {}",
            r.a, r.b, r.multiplicity
        )));
    }
    let d = b.degree();
    let mode = match roots.first() {
        Some(r) if r.a.mode() == Mode::Float => Mode::Float,
        _ => b.mode(),
    };
    let h: Vec<Scalar> = b.coeffs().iter().map(|s| s.to_mode(mode)).collect::<Result<_>>()?;
    let nodes: Vec<(Scalar, Scalar)> = roots
        .iter()
        .map(|r| Ok((r.a.to_mode(mode)?, r.b.to_mode(mode)?)))
        .collect::<Result<_>>()?;
    let a = Mat::from_fn(d + 1, roots.len(), mode, |j, i| {
        let (x, y) = &nodes[i];
        x.pow(j as u32).mul(&y.pow((d - j) as u32)).expect("same mode")
    })?;
    let scale = h.iter().map(|s| s.to_complex().norm()).fold(1.0, f64::max);
    solve_tol(&a, &h, FLOAT_VERIFY_TOL * scale)
}

/// A Vandermonde rank decomposition, verified by reconstruction before it is returned.
///
/// Decompositions are exact when every node is recognized exactly and
/// floating-point otherwise; float results are checked to a relative
/// tolerance of [`FLOAT_VERIFY_TOL`].
pub fn decompose(t: &HankelTensor, seed: u64) -> Result<VandermondeDecomposition> {
    let info = vrank_info(t)?;
    let b = to_binary_form(t);
    let d = b.degree();
    if info.vrank == 0 {
        return Ok(VandermondeDecomposition {
            n: t.n(),
            m: t.m(),
            mode: t.mode(),
            terms: Vec::new(),
            claimed_rank: 0,
            unique: false,
        });
    }
    let form = match (&info.case, &info.kernel_form) {
        (VrankCase::Squarefree, Some(f)) => f.clone(),
        _ => generic_kernel_form(&b, info.vrank, seed)?,
    };
    let nodes = projective_roots(&form.reversed())?;
    if nodes.len() != info.vrank || nodes.iter().any(|r| r.multiplicity != 1) {
        return Err(Error::InvariantViolation(format!(
            "expected {} simple nodes, found {:?}",
            info.vrank, nodes
        )));
    }
    let lambdas = solve_lambdas(&nodes, &b)?;
    let mode = lambdas.first().map(Scalar::mode).unwrap_or(t.mode());
    let terms: Vec<VandermondeTerm> = nodes
        .into_iter()
        .zip(lambdas)
        .filter(|(_, l)| !l.is_zero())
        .map(|(node, lambda)| {
            Ok(VandermondeTerm {
                lambda: simplify(lambda),
                a: node.a.to_mode(mode)?,
                b: node.b.to_mode(mode)?,
            })
        })
        .collect::<Result<_>>()?;
    if terms.len() != info.vrank {
        return Err(Error::InvariantViolation(format!(
            "{} nonzero weights for Vandermonde rank {}",
            terms.len(),
            info.vrank
        )));
    }
    let dec = VandermondeDecomposition {
        n: t.n(),
        m: t.m(),
        mode,
        terms,
        claimed_rank: info.vrank,
        unique: info.case == VrankCase::Squarefree && 2 * info.r < d + 2,
    };
    let scale = t.h().iter().map(|s| s.to_complex().norm()).fold(1.0, f64::max);
    if !tensors_equal(&dense(&reconstruct(&dec)?), &dense(t), FLOAT_VERIFY_TOL * scale)? {
        return Err(Error::InvariantViolation("decomposition does not reconstruct the tensor".into()));
    }
    Ok(dec)
}

/// Largest entry of `|h(reconstruct(dec)) − h(t)|`, zero when both are exact and equal.
pub fn reconstruction_residual(t: &HankelTensor, dec: &VandermondeDecomposition) -> Result<f64> {
    if (t.n(), t.m()) != (dec.n, dec.m) {
        return Err(Error::Dimension(format!(
            "tensor is ({}, {}) but decomposition is ({}, {})",
            t.n(),
            t.m(),
            dec.n,
            dec.m
        )));
    }
    let rec = reconstruct(dec)?;
    if t.mode() == Mode::Exact && rec.mode() == Mode::Exact && rec.h() == t.h() {
        return Ok(0.0);
    }
    Ok(rec
        .h()
        .iter()
        .zip(t.h())
        .map(|(x, y)| (x.to_complex() - y.to_complex()).norm())
        .fold(0.0, f64::max))
}
