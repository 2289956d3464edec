//! Difference and equivariant Jones polynomials of periodic diagrams.
//!
//! For a `p^n`-periodic diagram `D` the difference polynomials
//! `DJ_{n,s}(D)`, `0 <= s <= n`, refine the unreduced Jones polynomial:
//! `J(D) = sum_s p^s DJ_{n,s}(D)`. They are computed by a state sum over
//! orbits of Kauffman states, stratified by isotropy, in which every
//! resolved state contributes the difference polynomial of a trivial link
//! with `k` free orbits and `f` circles around the axis.

use num_bigint::BigInt;
use serde::Serialize;

use crate::budget::Budget;
use crate::diagram::{PeriodicTangleCode, Sign};
use crate::error::{Error, Result};
use crate::laurent::{binomial, check_odd_prime, LaurentPoly};
use crate::states::{jones_kauffman, jones_prefactor, level_histogram, neg_q_pow, Histogram};

/// Euler's totient.
pub fn totient(mut n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut result = n;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            while n.is_multiple_of(d) {
                n /= d;
            }
            result -= result / d;
        }
        d += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn pow_i64(p: u64, e: u32) -> i64 {
    p.checked_pow(e)
        .and_then(|x| i64::try_from(x).ok())
        .expect("prime power fits in i64")
}

/// `P_n`: the graded count of words of length `p^n` in `{q, q^-1}` that are
/// not `p^(n-1)`-periodic, divided by the orbit size `p^n`.
///
/// `P_0 = q + q^-1` and `P_n = (u^(p^n) - u(q^p)^(p^(n-1))) / p^n`, with
/// `u = q + q^-1`.
pub fn poly_p(p: u64, n: u32) -> Result<LaurentPoly> {
    check_odd_prime(p)?;
    let u = LaurentPoly::unknot();
    if n == 0 {
        return Ok(u);
    }
    let all = u.pow(pow_i64(p, n) as u32);
    let periodic = LaurentPoly::q_sum(p as i64).pow(pow_i64(p, n - 1) as u32);
    let d = BigInt::from(pow_i64(p, n));
    (all - periodic)
        .div_scalar_exact(&d)
        .ok_or_else(|| Error::Inconsistent(format!("P_{n} for p = {p} is not integral")))
}

/// `x_j = P_j(q^(p^(n-j)))` for `j = 0..=s`.
fn substituted_ps(p: u64, n: u32, s: u32) -> Result<Vec<LaurentPoly>> {
    (0..=s)
        .map(|j| Ok(poly_p(p, j)?.substitute(pow_i64(p, n - j))?))
        .collect()
}

/// Graded dimension of `M_s^{k,f}`, the `p^s`-isotypic block of the
/// homology of the trivial `p^n`-periodic link with `k` free orbits and `f`
/// circles around the axis:
///
/// `u^f * sum_{l=1..k} C(k,l) p^(s(l-1)) x_s^l A_s^(k-l)`,
/// `A_s = sum_{j<s} p^j x_j`. With `k = 0` the action is trivial and all of
/// `u^f` sits in the block `s = 0`.
pub fn qdim_m(p: u64, n: u32, s: u32, k: usize, f: usize) -> Result<LaurentPoly> {
    check_odd_prime(p)?;
    if s > n {
        return Err(Error::Malformed(format!("isotypic index {s} exceeds n = {n}")));
    }
    let u_f = LaurentPoly::unknot().pow(f as u32);
    if k == 0 {
        return Ok(if s == 0 { u_f } else { LaurentPoly::zero() });
    }
    let x = substituted_ps(p, n, s)?;
    let a = (0..s as usize)
        .map(|j| x[j].scale(&BigInt::from(pow_i64(p, j as u32))))
        .sum::<LaurentPoly>();
    let xs = &x[s as usize];
    let ps = BigInt::from(pow_i64(p, s));
    let mut total = LaurentPoly::zero();
    let mut xs_pow = LaurentPoly::one();
    let mut ps_pow = BigInt::from(1);
    for l in 1..=k {
        xs_pow = &xs_pow * xs;
        if l > 1 {
            ps_pow *= &ps;
        }
        let coeff = binomial(k as u64, l as u64) * &ps_pow;
        let term = &xs_pow * &a.pow((k - l) as u32);
        total += &term.scale(&coeff);
    }
    Ok(&u_f * &total)
}

/// `DJ_{v, v-m}` of the trivial `p^v`-periodic link with `k` free orbits and
/// `f` circles around the axis.
pub fn dj_trivial(p: u64, v: u32, m: u32, k: usize, f: usize) -> Result<LaurentPoly> {
    if m > v {
        return Err(Error::Malformed(format!("m = {m} exceeds v = {v}")));
    }
    qdim_m(p, v, v - m, k, f)
}

/// Level histograms of a code, with counts already divided by orbit size.
struct OrbitSums {
    p: u64,
    n: u32,
    prefactor: LaurentPoly,
    /// `levels[v]`: orbit counts by `(r, k, f)`.
    levels: Vec<Histogram>,
}

impl OrbitSums {
    fn new(code: &PeriodicTangleCode, min_level: u32, budget: &Budget) -> Result<OrbitSums> {
        let (plus, minus) = code.crossing_counts();
        let mut levels = vec![Histogram::new(); code.n() as usize + 1];
        for v in min_level..=code.n() {
            let orbit = code.p().pow(code.n() - v);
            let mut hist = level_histogram(code, v, budget)?;
            for count in hist.values_mut() {
                if *count % orbit != 0 {
                    return Err(Error::Inconsistent(format!(
                        "level {v}: {count} exact states do not split into orbits of size {orbit}"
                    )));
                }
                *count /= orbit;
            }
            levels[v as usize] = hist;
        }
        Ok(OrbitSums {
            p: code.p(),
            n: code.n(),
            prefactor: jones_prefactor(plus, minus),
            levels,
        })
    }

    /// `DJ_{n, n-m}`
    fn dj(&self, m: u32) -> Result<LaurentPoly> {
        let mut sum = LaurentPoly::zero();
        for v in m..=self.n {
            for (&(r, k, f), &count) in &self.levels[v as usize] {
                let term = &neg_q_pow(r) * &dj_trivial(self.p, v, m, k, f)?;
                sum += &term.scale(&BigInt::from(count));
            }
        }
        Ok(&self.prefactor * &sum)
    }
}

/// `DJ_{n, n-m}(D)` by the isotropy-stratified state sum.
pub fn dj_state_sum(code: &PeriodicTangleCode, m: u32, budget: &Budget) -> Result<LaurentPoly> {
    if m > code.n() {
        return Err(Error::Malformed(format!("m = {m} exceeds n = {}", code.n())));
    }
    OrbitSums::new(code, m, budget)?.dj(m)
}

/// `DJ_{n,0}, ..., DJ_{n,n}` of one diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiffJonesVector {
    pub p: u64,
    pub n: u32,
    /// `dj[s] = DJ_{n,s}`
    pub dj: Vec<LaurentPoly>,
}

impl DiffJonesVector {
    pub fn compute(code: &PeriodicTangleCode, budget: &Budget) -> Result<DiffJonesVector> {
        let sums = OrbitSums::new(code, 0, budget)?;
        let n = code.n();
        let dj = (0..=n).map(|s| sums.dj(n - s)).collect::<Result<_>>()?;
        Ok(DiffJonesVector { p: code.p(), n, dj })
    }

    /// `J_{p^n, p^s} = sum_{t >= s} DJ_{n,t}`
    pub fn equiv_jones(&self, s: u32) -> LaurentPoly {
        self.dj[s as usize..].iter().cloned().sum()
    }

    /// `sum_s p^s DJ_{n,s}`
    pub fn weighted_sum(&self) -> LaurentPoly {
        self.dj
            .iter()
            .enumerate()
            .map(|(s, d)| d.scale(&BigInt::from(pow_i64(self.p, s as u32))))
            .sum()
    }

    /// `sum_s phi(p^s) J_{p^n, p^s}`
    pub fn totient_sum(&self) -> LaurentPoly {
        (0..=self.n)
            .map(|s| {
                self.equiv_jones(s)
                    .scale(&BigInt::from(totient(self.p.pow(s))))
            })
            .sum()
    }
}

/// `J_{p^n, p^s}(D)`
pub fn equiv_jones(code: &PeriodicTangleCode, s: u32, budget: &Budget) -> Result<LaurentPoly> {
    if s > code.n() {
        return Err(Error::Malformed(format!("s = {s} exceeds n = {}", code.n())));
    }
    Ok(DiffJonesVector::compute(code, budget)?.equiv_jones(s))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub dj: DiffJonesVector,
    /// Classical state sum over the full diagram.
    pub jones: LaurentPoly,
    pub weighted_sum: LaurentPoly,
    pub totient_sum: LaurentPoly,
    pub passed: bool,
}

/// Compares `sum_s p^s DJ_{n,s}` and `sum_s phi(p^s) J_{p^n,p^s}` with the
/// Kauffman state sum of the full diagram.
pub fn check_decomposition(code: &PeriodicTangleCode, budget: &Budget) -> Result<DecompositionReport> {
    let dj = DiffJonesVector::compute(code, budget)?;
    let jones = jones_kauffman(&code.quotient(0)?, budget)?;
    let weighted_sum = dj.weighted_sum();
    let totient_sum = dj.totient_sum();
    let passed = weighted_sum == jones && totient_sum == jones;
    Ok(DecompositionReport {
        dj,
        jones,
        weighted_sum,
        totient_sum,
        passed,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkeinCongruence {
    pub s: u32,
    /// `q^{-2p^n} DJ_{n,n-s}(D+) - q^{2p^n} DJ_{n,n-s}(D-) - (q^{-p^n} - q^{p^n}) DJ_{n,n-s}(D0)`
    pub difference: LaurentPoly,
    /// Whether `q^{p^s} - q^{-p^s}` divides the difference.
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkeinReport {
    pub crossing: usize,
    pub positive: DiffJonesVector,
    pub negative: DiffJonesVector,
    pub resolved: DiffJonesVector,
    /// The exact identity for `DJ_{n,0}`.
    pub identity_holds: bool,
    pub congruences: Vec<SkeinCongruence>,
}

impl SkeinReport {
    pub fn passed(&self) -> bool {
        self.identity_holds && self.congruences.iter().all(|c| c.holds)
    }
}

/// Checks the equivariant skein relations for the orbit of tangle crossing
/// `crossing`: the orbit made all positive, all negative, and resolved.
pub fn check_skein(code: &PeriodicTangleCode, crossing: usize, budget: &Budget) -> Result<SkeinReport> {
    let t = code.tangle();
    let plus = code.with_tangle(t.with_sign(crossing, Sign::Positive)?);
    let minus = code.with_tangle(t.with_sign(crossing, Sign::Negative)?);
    let zero = code.with_tangle(t.oriented_resolution(crossing)?);
    let positive = DiffJonesVector::compute(&plus, budget)?;
    let negative = DiffJonesVector::compute(&minus, budget)?;
    let resolved = DiffJonesVector::compute(&zero, budget)?;

    let period = pow_i64(code.p(), code.n());
    let n = code.n();
    let combination = |idx: usize| {
        positive.dj[idx].shift(-2 * period)
            - negative.dj[idx].shift(2 * period)
            - &LaurentPoly::from_terms([(-period, 1), (period, -1)]) * &resolved.dj[idx]
    };
    let identity_holds = combination(0).is_zero();
    let mut congruences = Vec::new();
    for s in 0..=n {
        let difference = combination((n - s) as usize);
        let holds = difference
            .div_exact(&LaurentPoly::q_diff(pow_i64(code.p(), s)))
            .is_ok();
        congruences.push(SkeinCongruence { s, difference, holds });
    }
    Ok(SkeinReport {
        crossing,
        positive,
        negative,
        resolved,
        identity_holds,
        congruences,
    })
}
