//! Univariate polynomials: exact gcd and squarefree tests, numerical roots,
//! and recognition of rational and cyclotomic roots.
//!
//! Coefficient vectors are stored lowest degree first.

use nalgebra::{DMatrix, Schur};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

use crate::cyclotomic::Cyclotomic;

/// Largest root-of-unity order tried during root recognition.
pub const MAX_CYCLOTOMIC_ORDER: i64 = 720;

/// Largest denominator tried when recognizing rational coordinates.
pub const MAX_DENOMINATOR: i64 = 1_000_000;

pub fn trim(mut p: Vec<Cyclotomic>) -> Vec<Cyclotomic> {
    while p.last().is_some_and(Cyclotomic::is_zero) {
        p.pop();
    }
    p
}

/// Degree of a trimmed polynomial; `None` for the zero polynomial.
pub fn degree(p: &[Cyclotomic]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn derivative(p: &[Cyclotomic]) -> Vec<Cyclotomic> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(j, c)| c.mul(&Cyclotomic::from_i64(j as i64)))
        .collect()
}

fn monic(p: Vec<Cyclotomic>) -> Vec<Cyclotomic> {
    let p = trim(p);
    match p.last().and_then(Cyclotomic::inv) {
        Some(inv) => p.iter().map(|c| c.mul(&inv).simplify()).collect(),
        None => p,
    }
}

/// Quotient and remainder of `a / b`, `b` nonzero.
pub fn div_rem(a: &[Cyclotomic], b: &[Cyclotomic]) -> (Vec<Cyclotomic>, Vec<Cyclotomic>) {
    let b = trim(b.to_vec());
    let db = b.len().checked_sub(1).expect("division by the zero polynomial");
    let lead_inv = b[db].inv().expect("nonzero leading coefficient");
    let mut r = trim(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![Cyclotomic::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db].mul(&lead_inv).simplify();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                r[i + j] = r[i + j].sub(&c.mul(bj)).simplify();
            }
        }
        q[i] = c;
    }
    r.truncate(db);
    (trim(q), trim(r))
}

/// Monic greatest common divisor.
pub fn gcd(a: &[Cyclotomic], b: &[Cyclotomic]) -> Vec<Cyclotomic> {
    let mut x = monic(a.to_vec());
    let mut y = monic(b.to_vec());
    while !y.is_empty() {
        let (_, r) = div_rem(&x, &y);
        x = y;
        y = monic(r);
    }
    x
}

/// True when `p` has no repeated root over the algebraic closure.
pub fn is_squarefree(p: &[Cyclotomic]) -> bool {
    let p = trim(p.to_vec());
    if p.len() <= 2 {
        return true;
    }
    gcd(&p, &derivative(&p)).len() == 1
}

pub fn eval(p: &[Cyclotomic], x: &Cyclotomic) -> Cyclotomic {
    p.iter().rev().fold(Cyclotomic::zero(), |acc, c| acc.mul(x).add(c))
}

pub fn eval_complex(p: &[Complex64], z: Complex64) -> Complex64 {
    p.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
}

fn derivative_complex(p: &[Complex64]) -> Vec<Complex64> {
    p.iter().enumerate().skip(1).map(|(j, c)| c * j as f64).collect()
}

/// Roots of a polynomial with complex coefficients, as eigenvalues of the
/// companion matrix refined by a few Newton steps.
pub fn roots_complex(p: &[Complex64]) -> Vec<Complex64> {
    let mut p = p.to_vec();
    while p.last().is_some_and(|c| c.norm() == 0.0) {
        p.pop();
    }
    // Exact zero roots are split off: a nilpotent companion block can stall the QR sweep.
    let zeros = p.iter().take_while(|c| c.norm() == 0.0).count();
    let p = p.split_off(zeros.min(p.len()));
    let mut out = vec![Complex64::new(0.0, 0.0); zeros];
    let n = match p.len() {
        0 | 1 => return out,
        len => len - 1,
    };
    let lead = p[n];
    let mut comp = DMatrix::<Complex64>::zeros(n, n);
    for i in 1..n {
        comp[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..n {
        comp[(i, n - 1)] = -p[i] / lead;
    }
    let seeds: Vec<Complex64> = match Schur::try_new(comp, f64::EPSILON, SCHUR_MAX_ITER) {
        Some(schur) => {
            let (_, t) = schur.unpack();
            (0..n).map(|i| t[(i, i)]).collect()
        }
        None => durand_kerner(&p),
    };
    let dp = derivative_complex(&p);
    out.extend(seeds.into_iter().map(|mut z| {
        for _ in 0..4 {
            let f = eval_complex(&p, z);
            let g = eval_complex(&dp, z);
            if g.norm() == 0.0 {
                break;
            }
            let next = z - f / g;
            if !next.re.is_finite() || !next.im.is_finite() || eval_complex(&p, next).norm() >= f.norm() {
                break;
            }
            z = next;
        }
        z
    }));
    out
}

/// Iteration cap for the complex Schur form of a companion matrix.
const SCHUR_MAX_ITER: usize = 10_000;

/// Simultaneous Weierstrass iteration, used when the Schur form fails to converge.
fn durand_kerner(p: &[Complex64]) -> Vec<Complex64> {
    let n = p.len() - 1;
    let lead = p[n];
    let monic: Vec<Complex64> = p.iter().map(|c| c / lead).collect();
    let radius = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let denom: Complex64 = (0..n).filter(|&j| j != i).map(|j| z[i] - z[j]).product();
            if denom.norm() == 0.0 {
                continue;
            }
            let step = eval_complex(&monic, z[i]) / denom;
            z[i] -= step;
            moved = moved.max(step.norm());
        }
        if moved <= 1e-15 * radius {
            break;
        }
    }
    z
}

/// Best rational approximation with bounded denominator, by continued fractions.
pub fn approx_rational(x: f64, max_den: i64) -> Option<(i64, i64)> {
    if !x.is_finite() || x.abs() > 1e15 {
        return None;
    }
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut v = x;
    for _ in 0..64 {
        let a = v.floor();
        if a.abs() > 1e15 {
            break;
        }
        let a = a as i64;
        let h2 = a.checked_mul(h1)?.checked_add(h0)?;
        let k2 = a.checked_mul(k1)?.checked_add(k0)?;
        if k2 > max_den {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = v - a as f64;
        if frac.abs() < 1e-15 {
            break;
        }
        v = 1.0 / frac;
    }
    (k1 != 0).then_some((h1, k1))
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-9 * a.norm().max(1.0)
}

/// Try to identify `z` as an exact root of `p` of the form `u + v·i` with
/// rational `u, v`, or `q·ζ_N^k` with rational `q` and small `N`.
pub fn recognize_root(p: &[Cyclotomic], z: Complex64) -> Option<Cyclotomic> {
    let candidate_ok = |c: &Cyclotomic| close(c.to_complex(), z) && eval(p, c).is_zero();
    let re = approx_rational(z.re, MAX_DENOMINATOR);
    let im = approx_rational(z.im, MAX_DENOMINATOR);
    if let (Some((a, b)), Some((c, d))) = (re, im) {
        let cand = Cyclotomic::gauss(rat(a, b), rat(c, d));
        if candidate_ok(&cand) {
            return Some(cand);
        }
    }
    let modulus = z.norm();
    if modulus == 0.0 {
        return None;
    }
    let (qn, qd) = approx_rational(modulus, MAX_DENOMINATOR)?;
    let turns = (z.arg() / std::f64::consts::TAU).rem_euclid(1.0);
    let (k, n) = approx_rational(turns, MAX_CYCLOTOMIC_ORDER)?;
    let n = n.max(1);
    let k = k.rem_euclid(n);
    let cand = Cyclotomic::root_of_unity(n as u32, k as u32).scale(&rat(qn, qd)).simplify();
    candidate_ok(&cand).then_some(cand)
}

/// A root with its multiplicity.
#[derive(Clone, Debug, PartialEq)]
pub enum Root {
    Exact(Cyclotomic, usize),
    Float(Complex64, usize),
}

/// Group numerical roots that lie within a relative distance `tol` of each other.
pub fn cluster(roots: &[Complex64], tol: f64) -> Vec<(Complex64, usize)> {
    let mut groups: Vec<(Complex64, usize)> = Vec::new();
    for &z in roots {
        match groups
            .iter_mut()
            .find(|(c, _)| (*c - z).norm() <= tol * c.norm().max(z.norm()).max(1.0))
        {
            Some((c, k)) => {
                *c = (*c * *k as f64 + z) / (*k as f64 + 1.0);
                *k += 1;
            }
            None => groups.push((z, 1)),
        }
    }
    groups
}

/// Roots of a nonzero exact polynomial with multiplicities.
///
/// Every distinct root is recognized exactly when possible; if any one of them
/// is not, all roots are returned as floating-point values.
pub fn roots_exact(p: &[Cyclotomic]) -> Vec<Root> {
    let p = trim(p.to_vec());
    let Some(deg) = degree(&p) else {
        return Vec::new();
    };
    let zeros = p.iter().position(|c| !c.is_zero()).unwrap_or(0);
    let q: Vec<Cyclotomic> = p[zeros..].to_vec();
    let mut out = Vec::new();
    if zeros > 0 {
        out.push(Root::Exact(Cyclotomic::zero(), zeros));
    }
    if deg == zeros {
        return out;
    }
    let g = gcd(&q, &derivative(&q));
    let (sqfree, _) = div_rem(&q, &g);
    let approx: Vec<Complex64> = sqfree.iter().map(Cyclotomic::to_complex).collect();
    let candidates = roots_complex(&approx);
    let mut exact = Vec::with_capacity(candidates.len());
    for &z in &candidates {
        match recognize_root(&sqfree, z) {
            Some(r) => exact.push(r),
            None => break,
        }
    }
    if exact.len() == candidates.len() {
        for r in exact {
            let linear = vec![r.neg(), Cyclotomic::one()];
            let mut rest = q.clone();
            let mut mult = 0;
            loop {
                let (quot, rem) = div_rem(&rest, &linear);
                if !rem.is_empty() {
                    break;
                }
                rest = quot;
                mult += 1;
            }
            out.push(Root::Exact(r, mult.max(1)));
        }
        return out;
    }
    // Numerical fallback: count the roots of q nearest to each distinct root.
    let all = roots_complex(&q.iter().map(Cyclotomic::to_complex).collect::<Vec<_>>());
    let mut counts = vec![0usize; candidates.len()];
    for z in all {
        let nearest = (0..candidates.len())
            .min_by(|&a, &b| (candidates[a] - z).norm().total_cmp(&(candidates[b] - z).norm()))
            .expect("at least one candidate");
        counts[nearest] += 1;
    }
    let mut out: Vec<Root> = out
        .into_iter()
        .map(|r| match r {
            Root::Exact(c, k) => Root::Float(c.to_complex(), k),
            float => float,
        })
        .collect();
    out.extend(candidates.into_iter().zip(counts).map(|(z, k)| Root::Float(z, k.max(1))));
    out
}
