//! Exact arithmetic in cyclotomic number fields `Q(ζ_N)`.
//!
//! Elements are stored as coefficient vectors in the power basis
//! `1, ζ, …, ζ^(φ(N)−1)` reduced modulo the cyclotomic polynomial `Φ_N`.
//! Gaussian rationals live in `Q(ζ_4)`, plain rationals in `Q(ζ_1) = Q`.
//! Binary operations on elements of different fields lift both operands to
//! the compositum `Q(ζ_lcm)`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug)]
struct FieldData {
    order: u32,
    /// Monic `Φ_order`, lowest degree first.
    phi: Vec<BigInt>,
}

impl FieldData {
    fn degree(&self) -> usize {
        self.phi.len() - 1
    }
}

/// Element of a cyclotomic field.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<FieldData>,
    coeffs: Vec<BigRational>,
}

/// Integer coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    let divisors: Vec<u32> = (1..=n).filter(|d| n % d == 0).collect();
    let mut known: Vec<(u32, Vec<BigInt>)> = Vec::with_capacity(divisors.len());
    for &d in &divisors {
        // x^d - 1
        let mut num = vec![BigInt::zero(); d as usize + 1];
        num[0] = -BigInt::one();
        num[d as usize] = BigInt::one();
        for (e, phi_e) in &known {
            if d % e == 0 {
                num = div_monic_exact(&num, phi_e);
            }
        }
        known.push((d, num));
    }
    known.pop().expect("n has at least one divisor").1
}

fn div_monic_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dd;
    let mut q = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    q
}

/// `Q(ζ_{2m}) = Q(ζ_m)` for odd `m`; we always work with the smaller order.
fn normalize_order(n: u32) -> u32 {
    if n % 4 == 2 {
        n / 2
    } else {
        n
    }
}

fn field(order: u32) -> Arc<FieldData> {
    static RATIONALS: OnceLock<Arc<FieldData>> = OnceLock::new();
    static GAUSSIAN: OnceLock<Arc<FieldData>> = OnceLock::new();
    let build = |order: u32| {
        Arc::new(FieldData {
            order,
            phi: cyclotomic_polynomial(order),
        })
    };
    match normalize_order(order) {
        1 => RATIONALS.get_or_init(|| build(1)).clone(),
        4 => GAUSSIAN.get_or_init(|| build(4)).clone(),
        other => build(other),
    }
}

fn reduce(field: &FieldData, mut v: Vec<BigRational>) -> Vec<BigRational> {
    let deg = field.degree();
    if v.len() > deg {
        for i in (deg..v.len()).rev() {
            let c = std::mem::take(&mut v[i]);
            if c.is_zero() {
                continue;
            }
            for j in 0..deg {
                let t = &c * BigRational::from_integer(field.phi[j].clone());
                v[i - deg + j] -= t;
            }
        }
    }
    v.resize(deg, BigRational::zero());
    v
}

impl Cyclotomic {
    fn from_parts(field: Arc<FieldData>, coeffs: Vec<BigRational>) -> Self {
        let coeffs = reduce(&field, coeffs);
        Cyclotomic { field, coeffs }
    }

    /// Build the element `Σ_j c_j ζ_order^j` for an arbitrary-length coefficient list.
    pub fn from_power_coeffs(order: u32, coeffs: Vec<BigRational>) -> Self {
        assert!(order >= 1);
        let norm = normalize_order(order);
        if norm == order {
            let f = field(order);
            let mut exps = vec![BigRational::zero(); order as usize];
            for (j, c) in coeffs.into_iter().enumerate() {
                exps[j % order as usize] += c;
            }
            Self::from_parts(f, exps)
        } else {
            let mut acc = Cyclotomic::zero();
            for (j, c) in coeffs.into_iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                acc = acc.add(&Cyclotomic::root_of_unity(order, j as u32).mul(&Cyclotomic::rational(c)));
            }
            acc
        }
    }

    pub fn zero() -> Self {
        Self::rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one())
    }

    pub fn rational(q: BigRational) -> Self {
        Cyclotomic {
            field: field(1),
            coeffs: vec![q],
        }
    }

    pub fn from_i64(v: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Gaussian rational `re + im·i`.
    pub fn gauss(re: BigRational, im: BigRational) -> Self {
        if im.is_zero() {
            Self::rational(re)
        } else {
            Cyclotomic {
                field: field(4),
                coeffs: vec![re, im],
            }
        }
    }

    /// `ζ_n^k` with `ζ_n = exp(2πi/n)`.
    pub fn root_of_unity(n: u32, k: u32) -> Self {
        assert!(n >= 1);
        let k = k % n;
        let norm = normalize_order(n);
        if norm == n {
            let f = field(n);
            let mut v = vec![BigRational::zero(); n as usize];
            v[k as usize] = BigRational::one();
            Self::from_parts(f, v)
        } else {
            // n = 2m with m odd: ζ_n = -ζ_m^((m+1)/2).
            let m = norm;
            let e = ((k as u64 * ((m as u64 + 1) / 2)) % m as u64) as u32;
            let base = Self::root_of_unity(m, e);
            if k % 2 == 1 {
                base.neg()
            } else {
                base
            }
        }
    }

    /// Conductor of the field this element is currently represented in.
    pub fn order(&self) -> u32 {
        self.field.order
    }

    /// Power-basis coefficients.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.rational_part().map(|q| q.is_one()).unwrap_or(false)
    }

    /// The value as a rational, when it is one.
    pub fn rational_part(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn lift(&self, order: u32) -> Cyclotomic {
        let cur = self.field.order;
        if cur == order {
            return self.clone();
        }
        debug_assert_eq!(order % cur, 0);
        let step = (order / cur) as usize;
        let f = field(order);
        let mut v = vec![BigRational::zero(); order as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                v[(j * step) % order as usize] += c;
            }
        }
        Self::from_parts(f, v)
    }

    fn common(&self, other: &Cyclotomic) -> (Cyclotomic, Cyclotomic) {
        let (a, b) = (self.field.order, other.field.order);
        if a == b {
            return (self.clone(), other.clone());
        }
        let l = a.lcm(&b);
        (self.lift(l), other.lift(l))
    }

    pub fn add(&self, other: &Cyclotomic) -> Cyclotomic {
        if self.field.order == other.field.order {
            let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| x + y).collect();
            return Cyclotomic {
                field: self.field.clone(),
                coeffs,
            };
        }
        let (x, y) = self.common(other);
        x.add(&y)
    }

    pub fn sub(&self, other: &Cyclotomic) -> Cyclotomic {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Cyclotomic {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Cyclotomic) -> Cyclotomic {
        if self.field.order != other.field.order {
            let (x, y) = self.common(other);
            return x.mul(&y);
        }
        let deg = self.field.degree();
        if deg == 1 {
            return Cyclotomic {
                field: self.field.clone(),
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            };
        }
        let mut prod = vec![BigRational::zero(); 2 * deg - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Self::from_parts(self.field.clone(), prod)
    }

    pub fn scale(&self, q: &BigRational) -> Cyclotomic {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Cyclotomic {
        let mut base = self.clone();
        let mut acc = Cyclotomic::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Field automorphism `ζ ↦ ζ^k` (k coprime to the order).
    pub fn galois(&self, k: u32) -> Cyclotomic {
        let n = self.field.order as u64;
        let mut v = vec![BigRational::zero(); n as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                v[((j as u64 * k as u64) % n) as usize] += c;
            }
        }
        Self::from_parts(self.field.clone(), v)
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Cyclotomic {
        let n = self.field.order;
        if n <= 2 {
            self.clone()
        } else {
            self.galois(n - 1)
        }
    }

    fn units(n: u32) -> impl Iterator<Item = u32> {
        (1..=n).filter(move |k| k.gcd(&n) == 1)
    }

    pub fn inv(&self) -> Option<Cyclotomic> {
        if self.is_zero() {
            return None;
        }
        if self.field.degree() == 1 {
            return Some(Cyclotomic {
                field: self.field.clone(),
                coeffs: vec![self.coeffs[0].recip()],
            });
        }
        let n = self.field.order;
        let mut others = Cyclotomic::one().lift(n);
        for k in Self::units(n).filter(|&k| k != 1) {
            others = others.mul(&self.galois(k));
        }
        let norm = self
            .mul(&others)
            .rational_part()
            .expect("field norm is rational");
        Some(others.scale(&norm.recip()))
    }

    pub fn div(&self, other: &Cyclotomic) -> Option<Cyclotomic> {
        other.inv().map(|r| self.mul(&r))
    }

    /// Real and imaginary parts, when the element lies in `Q(i)`.
    pub fn as_gauss(&self) -> Option<(BigRational, BigRational)> {
        match self.field.order {
            1 => return Some((self.coeffs[0].clone(), BigRational::zero())),
            4 => return Some((self.coeffs[0].clone(), self.coeffs[1].clone())),
            _ => {}
        }
        let l = self.field.order.lcm(&4);
        let x = self.lift(l);
        for k in Self::units(l).filter(|k| k % 4 == 1 && *k != 1) {
            if x.galois(k) != x {
                return None;
            }
        }
        let c = x.conj();
        let two = BigRational::from_integer(BigInt::from(2));
        let re = x.add(&c).scale(&two.recip()).rational_part()?;
        let i = Cyclotomic::root_of_unity(4, 1);
        let im = x.sub(&c).mul(&i.neg()).scale(&two.recip()).rational_part()?;
        Some((re, im))
    }

    /// Move the element to `Q` or `Q(i)` when it lies there.
    pub fn simplify(&self) -> Cyclotomic {
        if self.field.order <= 4 {
            return self.clone();
        }
        match self.as_gauss() {
            Some((re, im)) => Cyclotomic::gauss(re, im),
            None => self.clone(),
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        let n = self.field.order as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let theta = 2.0 * std::f64::consts::PI * j as f64 / n;
            acc += Complex64::from_polar(rational_to_f64(c), theta);
        }
        acc
    }
}

pub(crate) fn rational_to_f64(q: &BigRational) -> f64 {
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Scale down both parts to keep them representable.
            let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(1000);
            let n = (q.numer() >> shift as usize).to_f64().unwrap_or(0.0);
            let d = (q.denom() >> shift as usize).to_f64().unwrap_or(1.0);
            n / d
        }
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.field.order == other.field.order {
            self.coeffs == other.coeffs
        } else {
            let (x, y) = self.common(other);
            x.coeffs == y.coeffs
        }
    }
}

impl Eq for Cyclotomic {}

pub(crate) fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_gauss() {
            Some((re, im)) if im.is_zero() => write!(f, "{}", fmt_rational(&re)),
            Some((re, im)) => {
                let sign = if im.is_negative() { '-' } else { '+' };
                write!(f, "{}{}{} i", fmt_rational(&re), sign, fmt_rational(&im.abs()))
            }
            None => {
                let parts: Vec<String> = self.coeffs.iter().map(fmt_rational).collect();
                write!(f, "zeta{}[{}]", self.field.order, parts.join(","))
            }
        }
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        let as_i64 = |v: Vec<BigInt>| v.into_iter().map(|c| c.to_i64().unwrap()).collect::<Vec<_>>();
        assert_eq!(as_i64(cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(4)), vec![1, 0, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(5)), vec![1, 1, 1, 1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(12)), vec![1, 0, -1, 0, 1]);
        // Φ_105 is the first with a coefficient outside {-1,0,1}.
        assert!(cyclotomic_polynomial(105).iter().any(|c| c.abs() == BigInt::from(2)));
    }

    #[test]
    fn roots_of_unity_multiply() {
        let w = Cyclotomic::root_of_unity(5, 1);
        assert_eq!(w.pow(5), Cyclotomic::one());
        assert_ne!(w.pow(2), Cyclotomic::one());
        let sum = (0..5).fold(Cyclotomic::zero(), |acc, j| acc.add(&w.pow(j)));
        assert!(sum.is_zero());
        // ζ_6 = -ζ_3^2
        let z6 = Cyclotomic::root_of_unity(6, 1);
        assert_eq!(z6.pow(3), Cyclotomic::from_i64(-1));
        assert!((z6.to_complex() - Complex64::from_polar(1.0, std::f64::consts::PI / 3.0)).norm() < 1e-14);
    }

    #[test]
    fn inverse_and_mixed_fields() {
        let x = Cyclotomic::root_of_unity(5, 2).add(&Cyclotomic::from_ratio(3, 7));
        let y = x.inv().unwrap();
        assert!(x.mul(&y).is_one());
        let i = Cyclotomic::root_of_unity(4, 1);
        let z = i.mul(&Cyclotomic::root_of_unity(3, 1));
        assert_eq!(z.order(), 12);
        assert_eq!(z.mul(&z.inv().unwrap()), Cyclotomic::one());
    }

    #[test]
    fn gauss_detection() {
        let z = Cyclotomic::gauss(q(1, 2), q(-3, 4));
        let lifted = z.mul(&Cyclotomic::root_of_unity(5, 1)).mul(&Cyclotomic::root_of_unity(5, 4));
        assert_eq!(lifted.as_gauss(), Some((q(1, 2), q(-3, 4))));
        assert_eq!(lifted.simplify().order(), 4);
        assert_eq!(Cyclotomic::root_of_unity(3, 1).as_gauss(), None);
        assert_eq!(format!("{}", z), "1/2-3/4 i");
        // ζ_8 + ζ_8^7 = √2 is real but not rational.
        let s = Cyclotomic::root_of_unity(8, 1).add(&Cyclotomic::root_of_unity(8, 7));
        assert_eq!(s.as_gauss(), None);
        assert_eq!(s.mul(&s), Cyclotomic::from_i64(2));
    }
}
