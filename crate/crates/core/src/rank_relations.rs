//! Classification of the cp, symmetric, border, symmetric border and
//! Vandermonde ranks of a Hankel tensor.
//!
//! Quantities that cannot be pinned down are reported as intervals. Every
//! conclusion carries a certificate naming the result it rests on and the
//! computed witness.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::catalecticant::flatten_reduced;
use crate::error::{Error, Result};
use crate::koszul::{bound_from_rank, koszul_rank, Tensor3};
use crate::linalg::{mat_rank, DEFAULT_TOL};
use crate::tensor::{binom, HankelTensor, Preset};
use crate::vandermonde::{vrank_info, VrankCase};

/// Largest `n` for which the cubic classification builds a Koszul matrix.
pub const MAX_KOSZUL_N: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
}

impl Interval {
    pub fn point(v: usize) -> Interval {
        Interval { lo: v, hi: v }
    }

    pub fn new(lo: usize, hi: usize) -> Result<Interval> {
        if lo > hi {
            return Err(Error::InvariantViolation(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(Interval { lo, hi })
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, v: usize) -> bool {
        self.lo <= v && v <= self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RankCase {
    EvenI,
    EvenIi,
    OddI,
    OddIi,
    OddGenericBounds,
    CubicGeneric,
    CubicUnresolved,
}

impl fmt::Display for RankCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RankCase::EvenI => "even_i",
            RankCase::EvenIi => "even_ii",
            RankCase::OddI => "odd_i",
            RankCase::OddIi => "odd_ii",
            RankCase::OddGenericBounds => "odd_generic_bounds",
            RankCase::CubicGeneric => "cubic_generic",
            RankCase::CubicUnresolved => "cubic_unresolved",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub quantity: String,
    pub theorem: String,
    pub witness: String,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} ({})", self.quantity, self.theorem, self.witness)
    }
}

/// Koszul flattening data gathered for cubic tensors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KoszulEvidence {
    pub p: usize,
    pub rank: usize,
    /// `⌊(3n−1)/2⌋·C(n−1, p)`.
    pub threshold: usize,
    pub bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    pub n: usize,
    pub m: usize,
    /// `rank C_{d−s,s}(h)`.
    pub r: usize,
    pub vrank: usize,
    #[serde(rename = "brank_V")]
    pub brank_v: usize,
    pub cp_rank: Interval,
    pub sym_rank: Interval,
    pub brank: Interval,
    pub sym_brank: Interval,
    pub case: RankCase,
    pub koszul: Option<KoszulEvidence>,
    pub certificates: Vec<Certificate>,
}

impl RankReport {
    /// Checks `brank ≤ cp ≤ sym ≤ vrank` and `brank ≤ sym_brank ≤ sym`
    /// on both interval endpoints.
    pub fn chain_holds(&self) -> bool {
        let v = Interval::point(self.vrank);
        let le = |a: &Interval, b: &Interval| a.lo <= b.lo && a.hi <= b.hi;
        [self.cp_rank, self.sym_rank, self.brank, self.sym_brank].iter().all(|i| i.lo <= i.hi)
            && le(&self.brank, &self.cp_rank)
            && le(&self.cp_rank, &self.sym_rank)
            && le(&self.sym_rank, &v)
            && le(&self.brank, &self.sym_brank)
            && le(&self.sym_brank, &self.sym_rank)
            && self.sym_brank.hi <= self.brank_v
    }
}

fn cert(quantity: &str, theorem: &str, witness: impl Into<String>) -> Certificate {
    Certificate {
        quantity: quantity.to_string(),
        theorem: theorem.to_string(),
        witness: witness.into(),
    }
}

/// `⌈((n−1)m+1)/2⌉`, the Vandermonde rank of a generic tensor.
pub fn generic_vrank(n: usize, m: usize) -> usize {
    ((n - 1) * m + 1).div_ceil(2)
}

/// `(m₀(n−1) + ⌈n/2⌉, m₀(n−1) + 1)` for odd `m = 2m₀+1`.
pub fn generic_odd_profile(n: usize, m: usize) -> Result<(usize, usize)> {
    if m % 2 == 0 {
        return Err(Error::InvalidArgument(format!("order {m} is even")));
    }
    let m0 = m / 2;
    Ok((m0 * (n - 1) + n.div_ceil(2), m0 * (n - 1) + 1))
}

struct Base {
    n: usize,
    m: usize,
    d: usize,
    r: usize,
    vrank: usize,
    case: VrankCase,
}

fn exact_relations(b: &Base, odd: bool, certs: &mut Vec<Certificate>) -> RankReport {
    let label = if odd { "odd-order" } else { "even-order" };
    let (case, cp, sym) = match b.case {
        VrankCase::Full | VrankCase::Squarefree => {
            let witness = if b.case == VrankCase::Full {
                format!("rank C_(d-s,s) = s+1 = {}", b.r)
            } else {
                format!("kernel form of C_(d-r,r) is squarefree, r = {}", b.r)
            };
            certs.push(cert("all", &format!("{label} rank equalities, case (i)"), witness));
            let c = if odd { RankCase::OddI } else { RankCase::EvenI };
            (c, Interval::point(b.r), Interval::point(b.r))
        }
        VrankCase::Multiple => {
            certs.push(cert(
                "vrank",
                &format!("{label} rank relations, case (ii)"),
                format!("kernel form has a multiple root, vrank = d-r+2 = {}", b.vrank),
            ));
            certs.push(cert(
                "cp_rank, sym_rank",
                "sandwiched between border rank and Vandermonde rank",
                format!("[{}, {}]", b.r, b.vrank),
            ));
            let c = if odd { RankCase::OddIi } else { RankCase::EvenIi };
            let i = Interval { lo: b.r, hi: b.vrank };
            (c, i, i)
        }
    };
    certs.push(cert(
        "brank, sym_brank, brank_V",
        "catalecticant border rank",
        format!("rank C_(d-s,s) = {}", b.r),
    ));
    RankReport {
        n: b.n,
        m: b.m,
        r: b.r,
        vrank: b.vrank,
        brank_v: b.r,
        cp_rank: cp,
        sym_rank: sym,
        brank: Interval::point(b.r),
        sym_brank: Interval::point(b.r),
        case,
        koszul: None,
        certificates: std::mem::take(certs),
    }
}

fn bounds_only(b: &Base, lo: usize, case: RankCase, koszul: Option<KoszulEvidence>, certs: Vec<Certificate>) -> RankReport {
    let lo = lo.min(b.r);
    RankReport {
        n: b.n,
        m: b.m,
        r: b.r,
        vrank: b.vrank,
        brank_v: b.r,
        cp_rank: Interval { lo, hi: b.vrank },
        sym_rank: Interval { lo, hi: b.vrank },
        brank: Interval { lo, hi: b.r },
        sym_brank: Interval { lo, hi: b.r },
        case,
        koszul,
        certificates: certs,
    }
}

/// Classify all rank quantities of `t`.
pub fn classify(t: &HankelTensor) -> Result<RankReport> {
    let info = vrank_info(t)?;
    let base = Base {
        n: t.n(),
        m: t.m(),
        d: t.d(),
        r: info.r,
        vrank: info.vrank,
        case: info.case,
    };
    let mut certs = Vec::new();
    if t.m() % 2 == 0 {
        return Ok(exact_relations(&base, false, &mut certs));
    }
    let m0 = t.m() / 2;
    let gate = 1 + (t.n() - 1) * m0;
    if base.r <= gate {
        certs.push(cert("gate", "odd-order hypothesis r <= 1+(n-1)m0", format!("{} <= {gate}", base.r)));
        return Ok(exact_relations(&base, true, &mut certs));
    }
    certs.push(cert("gate", "odd-order hypothesis r <= 1+(n-1)m0 fails", format!("{} > {gate}", base.r)));

    let flat = flatten_reduced(t);
    let flat_rank = mat_rank(&flat.mat, DEFAULT_TOL)?;
    certs.push(cert(
        "brank lower bound",
        "border rank dominates the reduced flattening",
        format!("rank C_(d-l,l) = {flat_rank} with l = {}", flat.r),
    ));
    certs.push(cert("upper bounds", "Vandermonde rank dominates every rank", format!("vrank = {}", base.vrank)));

    if t.m() != 3 || t.n() > MAX_KOSZUL_N {
        if t.m() == 3 {
            certs.push(cert(
                "koszul",
                "Koszul flattening skipped",
                format!("n = {} exceeds {MAX_KOSZUL_N}", t.n()),
            ));
        }
        return Ok(bounds_only(&base, flat_rank, RankCase::OddGenericBounds, None, certs));
    }

    let n = t.n();
    let p = n / 2;
    let rank = koszul_rank(&Tensor3::from_hankel(t)?, p)?;
    let target = (3 * n - 1) / 2;
    let threshold = target * binom(n - 1, p) as usize;
    let bound = bound_from_rank(rank, n, p);
    let ev = KoszulEvidence { p, rank, threshold, bound };
    certs.push(cert(
        "brank lower bound",
        "Koszul flattening lower bound",
        format!("rank M^{p} = {rank}, bound ceil({rank}/C({},{p})) = {bound}", n - 1),
    ));
    let cond_koszul = rank >= threshold;
    let cond_cat = base.r == 1 + base.d / 2;
    let cond_form = n % 2 == 1 || base.case == VrankCase::Squarefree;
    let lo = flat_rank.max(bound);
    if cond_koszul && cond_cat && cond_form {
        if base.vrank != target || lo < target {
            return Err(Error::InvariantViolation(format!(
                "cubic conditions hold but vrank = {}, lower bound = {lo}, expected {target}",
                base.vrank
            )));
        }
        certs.push(cert(
            "all",
            "generic cubic rank equalities",
            format!(
                "rank M^{p} = {rank} >= {threshold}, rank C_(d-s,s) = s+1 = {}{}",
                base.r,
                if n % 2 == 0 { ", kernel form squarefree" } else { "" }
            ),
        ));
        let pt = Interval::point(target);
        return Ok(RankReport {
            n,
            m: 3,
            r: base.r,
            vrank: base.vrank,
            brank_v: base.r,
            cp_rank: pt,
            sym_rank: pt,
            brank: pt,
            sym_brank: pt,
            case: RankCase::CubicGeneric,
            koszul: Some(ev),
            certificates: certs,
        });
    }
    let mut failed = Vec::new();
    if !cond_koszul {
        failed.push(format!("rank M^{p} = {rank} < {threshold}"));
    }
    if !cond_cat {
        failed.push(format!("rank C_(d-s,s) = {} != s+1 = {}", base.r, 1 + base.d / 2));
    }
    if !cond_form {
        failed.push("kernel form not squarefree".to_string());
    }
    certs.push(cert("all", "generic cubic conditions not met", failed.join("; ")));
    Ok(bounds_only(&base, lo, RankCase::CubicUnresolved, Some(ev), certs))
}

/// A rank value quoted from outside computations, kept only for comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiteratureFixture {
    pub preset: Preset,
    pub quantity: &'static str,
    pub value: usize,
    /// Where the value comes from. Nothing in this crate computes it.
    pub source: &'static str,
}

/// Values for small non-generic cubic tensors obtained from published tables
/// or computer algebra. [`classify`] never reports them; they only serve to
/// check that its intervals contain the true values.
pub fn literature_fixtures() -> Vec<LiteratureFixture> {
    let f = |preset, quantity, value, source| LiteratureFixture { preset, quantity, value, source };
    vec![
        f(Preset::Ex55, "sym_rank", 3, "external: published table of ternary cubics"),
        f(Preset::Ex55, "sym_brank", 2, "external: published table of ternary cubics"),
        f(Preset::Ex55, "cp_rank", 3, "external: Macaulay2 computation"),
        f(Preset::Ex37 { m: 3 }, "sym_rank", 4, "external: published table of ternary cubics"),
        f(Preset::Ex37 { m: 3 }, "sym_brank", 3, "external: published table of ternary cubics"),
        f(Preset::Ex37 { m: 3 }, "cp_rank", 4, "external: rank additivity for forms in disjoint variables"),
        f(Preset::Ex47 { m: 3 }, "sym_rank", 5, "external: symmetric rank of x^(m-2)y^2 + x^(m-1)z"),
        f(Preset::Ex47 { m: 3 }, "cp_rank", 5, "external: Macaulay2 computation"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::preset;

    #[test]
    fn generic_formulas() {
        assert_eq!(generic_vrank(3, 3), 4);
        assert_eq!(generic_vrank(3, 2), 3);
        for m in 1..8 {
            assert_eq!(generic_vrank(2, m), (m + 1).div_ceil(2));
        }
        assert_eq!(generic_odd_profile(4, 5).unwrap(), (8, 7));
        assert_eq!(generic_odd_profile(2, 3).unwrap(), (2, 2));
        assert_eq!(generic_odd_profile(3, 3).unwrap(), (4, 3));
        assert!(generic_odd_profile(3, 4).is_err());
        assert_eq!(generic_odd_profile(4, 5).unwrap().0, generic_vrank(4, 5));
    }

    #[test]
    fn even_order_examples() {
        let rep = classify(&preset(&Preset::Random { n: 3, m: 2, seed: 5, bound: 9 }).unwrap()).unwrap();
        assert_eq!(rep.case, RankCase::EvenI);
        for i in [rep.cp_rank, rep.sym_rank, rep.brank, rep.sym_brank] {
            assert_eq!(i, Interval::point(3));
        }
        let rep = classify(&preset(&Preset::Ex47 { m: 4 }).unwrap()).unwrap();
        assert_eq!(rep.case, RankCase::EvenIi);
        assert_eq!(rep.vrank, 7);
        assert_eq!(rep.brank, Interval::point(3));
        assert_eq!(rep.sym_brank, Interval::point(3));
        assert!(rep.sym_rank.lo <= 4 && rep.sym_rank.hi >= 7);
        assert!(rep.chain_holds());
    }

    #[test]
    fn cubic_examples() {
        let rep = classify(&preset(&Preset::Random { n: 3, m: 3, seed: 2, bound: 9 }).unwrap()).unwrap();
        assert_eq!(rep.case, RankCase::CubicGeneric);
        assert_eq!(rep.sym_rank, Interval::point(4));
        assert_eq!(rep.vrank, 4);
        let rep = classify(&preset(&Preset::Ex55).unwrap()).unwrap();
        assert_eq!(rep.case, RankCase::OddIi);
        assert_eq!(rep.vrank, 6);
        assert_eq!(rep.brank, Interval::point(2));
        assert!(rep.chain_holds());
        let rep = classify(&preset(&Preset::Thm52 { n: 4 }).unwrap()).unwrap();
        assert_eq!(rep.case, RankCase::CubicUnresolved);
        assert_eq!(rep.koszul.as_ref().unwrap().rank, 15);
        assert_eq!(rep.brank, Interval::point(5));
        assert_eq!(rep.cp_rank, Interval { lo: 5, hi: 6 });
        assert!(rep.chain_holds());
    }

    #[test]
    fn zero_tensor_is_rank_zero() {
        let rep = classify(&HankelTensor::from_i64(3, 3, &[0; 7]).unwrap()).unwrap();
        assert_eq!(rep.vrank, 0);
        assert_eq!(rep.cp_rank, Interval::point(0));
        assert!(rep.chain_holds());
    }

    #[test]
    fn fixtures_fall_inside_intervals() {
        for fx in literature_fixtures() {
            let rep = classify(&preset(&fx.preset).unwrap()).unwrap();
            let iv = match fx.quantity {
                "sym_rank" => rep.sym_rank,
                "sym_brank" => rep.sym_brank,
                "cp_rank" => rep.cp_rank,
                other => panic!("unknown quantity {other}"),
            };
            assert!(iv.contains(fx.value), "{:?}: {} not in {iv}", fx.preset, fx.value);
        }
    }

    #[test]
    fn interval_construction() {
        assert!(Interval::new(3, 2).is_err());
        assert_eq!(Interval::new(2, 2).unwrap().to_string(), "2");
        assert_eq!(Interval::new(2, 5).unwrap().to_string(), "[2, 5]");
    }
}
