//! Exact arithmetic in `Z[q, q^-1]` and `F_p[q, q^-1]`.
//!
//! [`LaurentPoly`] is a sparse map from exponent to big-integer coefficient,
//! kept canonical (no stored zero coefficients) after every operation.
//! [`ModPoly`] is the same shape over a prime field and carries the
//! congruence arithmetic used by the periodicity criteria.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("substitution q -> q^0 is not a ring endomorphism of Z[q, q^-1]")]
    ZeroSubstitution,
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("divisor leading coefficient {0} is not invertible")]
    NonUnitLeading(String),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("malformed polynomial text: {0}")]
    Parse(String),
}

/// Outcome of an exact division that did not go through.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DivError {
    #[error("not divisible")]
    NotDivisible,
    #[error(transparent)]
    Invalid(#[from] LaurentError),
}

/// An integer Laurent polynomial in `q`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c * q^e`
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c.into());
        }
        out
    }

    /// `q + q^-1`, the value on the unknot.
    pub fn unknot() -> Self {
        Self::q_sum(1)
    }

    /// `q^b + q^-b`
    pub fn q_sum(b: i64) -> Self {
        Self::from_terms([(b, 1), (-b, 1)])
    }

    /// `q^b - q^-b`
    pub fn q_diff(b: i64) -> Self {
        Self::from_terms([(b, 1), (-b, -1)])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading(&self) -> Option<(i64, &BigInt)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Adds `c * q^shift * other` in place.
    fn add_scaled(&mut self, other: &LaurentPoly, c: &BigInt, shift: i64) {
        for (e, k) in &other.terms {
            self.add_term(e + shift, k * c);
        }
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, k)| (*e, k * c)).collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The substitution `q -> q^k`; `k = -1` is the mirror substitution.
    pub fn substitute(&self, k: i64) -> Result<Self, LaurentError> {
        if k == 0 {
            return Err(LaurentError::ZeroSubstitution);
        }
        Ok(Self {
            terms: self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect(),
        })
    }

    /// `f(q^-1)`
    pub fn mirror(&self) -> Self {
        self.substitute(-1).expect("k = -1 is nonzero")
    }

    /// Exact division by an integer, `None` if some coefficient is not a multiple.
    pub fn div_scalar_exact(&self, d: &BigInt) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let (quo, rem) = c.div_rem(d);
            if !rem.is_zero() {
                return None;
            }
            terms.insert(*e, quo);
        }
        Some(Self { terms })
    }

    /// Exact quotient `f / g` in `Z[q, q^-1]`.
    ///
    /// `g` must have a leading (highest-exponent) coefficient of `+-1`, so the
    /// long division never leaves the integers. Since `q` is a unit, the
    /// quotient exponents are confined to `[min f - min g, max f - max g]`.
    pub fn div_exact(&self, g: &LaurentPoly) -> Result<Self, DivError> {
        let (g_top, g_lc) = g.leading().ok_or(LaurentError::ZeroDivisor)?;
        if !(g_lc.is_one() || (-g_lc).is_one()) {
            return Err(LaurentError::NonUnitLeading(g_lc.to_string()).into());
        }
        let g_bottom = g.min_exp().unwrap();
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let floor = self.min_exp().unwrap() - g_bottom;
        let unit_is_one = g_lc.is_one();
        let mut rest = self.clone();
        let mut quotient = Self::zero();
        while let Some((e, c)) = rest.leading() {
            let qe = e - g_top;
            if qe < floor {
                return Err(DivError::NotDivisible);
            }
            let qc = if unit_is_one { c.clone() } else { -c };
            rest.add_scaled(g, &-&qc, qe);
            quotient.add_term(qe, qc);
        }
        Ok(quotient)
    }

    /// Coefficient-wise reduction into `F_p`.
    pub fn mod_p(&self, p: u64) -> Result<ModPoly, LaurentError> {
        let mut out = ModPoly::zero(p)?;
        let modulus = BigInt::from(p);
        for (e, c) in &self.terms {
            let r = c.mod_floor(&modulus).to_u64().expect("residue fits in u64");
            if r != 0 {
                out.terms.insert(*e, r);
            }
        }
        Ok(out)
    }

    /// Sum of all coefficients, i.e. the value at `q = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.terms.values().sum()
    }
}

impl fmt::Display for LaurentPoly {
    /// `c*q^e` terms joined by ` + `, highest exponent first; `0` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*q^{e}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts the canonical output (`-1*q^9 + 1*q^5`) as well as the usual
/// handwritten shapes (`q^5 - q^9 + 2`, `3q^-1`).
impl FromStr for LaurentPoly {
    type Err = LaurentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(LaurentError::Parse(s.to_string()));
        }
        // split into signed terms; a '-' right after '^' belongs to the exponent
        let mut terms = Vec::new();
        let mut cur = String::new();
        let mut prev = None;
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && prev.is_some() && prev != Some('^') && prev != Some('+') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
            prev = Some(ch);
        }
        terms.push(cur);

        let mut out = Self::zero();
        for term in terms {
            let bad = || LaurentError::Parse(term.clone());
            let body = term.trim_start_matches('+');
            let (neg, body) = match body.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, body),
            };
            let (coef, e) = match body.find('q') {
                None => (body, 0i64),
                Some(pos) => {
                    let rest = &body[pos + 1..];
                    let e = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?
                    };
                    (body[..pos].trim_end_matches('*'), e)
                }
            };
            let mut c: BigInt = if coef.is_empty() {
                if body.starts_with('q') {
                    BigInt::one()
                } else {
                    return Err(bad());
                }
            } else {
                coef.parse().map_err(|_| bad())?
            };
            if neg {
                c = -c;
            }
            out.add_term(e, c);
        }
        Ok(out)
    }
}

impl serde::Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        Self {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e, c) in &self.terms {
            out.add_scaled(rhs, c, *e);
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |acc, x| acc + x)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn check_odd_prime(p: u64) -> Result<(), LaurentError> {
    if p == 2 || !is_prime(p) || p > u32::MAX as u64 {
        return Err(LaurentError::NotOddPrime(p));
    }
    Ok(())
}

/// A Laurent polynomial over `F_p`, residues stored in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModPoly {
    p: u64,
    terms: BTreeMap<i64, u64>,
}

impl ModPoly {
    pub fn zero(p: u64) -> Result<Self, LaurentError> {
        check_odd_prime(p)?;
        Ok(Self {
            p,
            terms: BTreeMap::new(),
        })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i64) -> u64 {
        self.terms.get(&e).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, u64)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, *c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn mul_mod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn inv(&self, a: u64) -> u64 {
        // a^(p-2) by Fermat
        let (mut base, mut exp, mut acc) = (a % self.p, self.p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_mod(acc, base);
            }
            base = self.mul_mod(base, base);
            exp >>= 1;
        }
        acc
    }

    fn add_term(&mut self, e: i64, c: u64) {
        let c = c % self.p;
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(e).or_insert(0);
        *entry = (*entry + c) % self.p;
        if *entry == 0 {
            self.terms.remove(&e);
        }
    }

    fn check_same(&self, other: &ModPoly) -> Result<(), LaurentError> {
        if self.p != other.p {
            return Err(LaurentError::ModulusMismatch(self.p, other.p));
        }
        Ok(())
    }

    pub fn add(&self, other: &ModPoly) -> Result<ModPoly, LaurentError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, *c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> ModPoly {
        Self {
            p: self.p,
            terms: self.terms.iter().map(|(e, c)| (*e, self.p - c)).collect(),
        }
    }

    pub fn sub(&self, other: &ModPoly) -> Result<ModPoly, LaurentError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &ModPoly) -> Result<ModPoly, LaurentError> {
        self.check_same(other)?;
        let mut out = Self {
            p: self.p,
            terms: BTreeMap::new(),
        };
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let c = self.mul_mod(*c1, *c2);
                out.add_term(e1 + e2, c);
            }
        }
        Ok(out)
    }

    /// Subtracts `c * q^shift * m` in place.
    fn sub_scaled(&mut self, m: &ModPoly, c: u64, shift: i64) {
        for (e, k) in &m.terms {
            let t = self.mul_mod(*k, c);
            self.add_term(e + shift, self.p - t);
        }
    }

    /// Euclidean remainder of `self` modulo `m`.
    ///
    /// Both polynomials are shifted to start at exponent zero, the ordinary
    /// polynomial remainder is taken, and the result is shifted back by the
    /// lowest exponent of `self`. The span of the remainder is strictly
    /// smaller than the span of `m`.
    pub fn reduce(&self, m: &ModPoly) -> Result<ModPoly, LaurentError> {
        self.check_same(m)?;
        let m_top = m.max_exp().ok_or(LaurentError::ZeroDivisor)?;
        let m_bottom = m.min_exp().unwrap();
        let span = m_top - m_bottom;
        let lc_inv = self.inv(m.coeff(m_top));
        let Some(base) = self.min_exp() else {
            return Ok(self.clone());
        };
        // work in coordinates where self starts at 0 and m starts at 0
        let mut rest = self.clone();
        while let Some(top) = rest.max_exp() {
            if top - base < span {
                break;
            }
            let c = self.mul_mod(rest.coeff(top), lc_inv);
            rest.sub_scaled(m, c, top - m_top);
        }
        Ok(rest)
    }

    /// Exact quotient in `F_p[q, q^-1]`, `Err(NotDivisible)` otherwise.
    pub fn div_exact(&self, g: &ModPoly) -> Result<ModPoly, DivError> {
        self.check_same(g)?;
        let g_top = g.max_exp().ok_or(LaurentError::ZeroDivisor)?;
        let g_bottom = g.min_exp().unwrap();
        let mut quotient = Self {
            p: self.p,
            terms: BTreeMap::new(),
        };
        let Some(f_bottom) = self.min_exp() else {
            return Ok(quotient);
        };
        let floor = f_bottom - g_bottom;
        let lc_inv = self.inv(g.coeff(g_top));
        let mut rest = self.clone();
        while let Some(top) = rest.max_exp() {
            let qe = top - g_top;
            if qe < floor {
                return Err(DivError::NotDivisible);
            }
            let c = self.mul_mod(rest.coeff(top), lc_inv);
            rest.sub_scaled(g, c, qe);
            quotient.add_term(qe, c);
        }
        Ok(quotient)
    }

    /// Canonical integer lift with coefficients in `[0, p)`.
    pub fn lift(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|(e, c)| (*e, BigInt::from(*c))))
    }

    pub fn pow(&self, mut exp: u64) -> Result<ModPoly, LaurentError> {
        let mut acc = ModPoly {
            p: self.p,
            terms: BTreeMap::from([(0, 1)]),
        };
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.lift(), self.p)
    }
}

impl fmt::Debug for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Binomial coefficient as a big integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `true` when every coefficient is non-negative.
pub fn is_nonnegative(f: &LaurentPoly) -> bool {
    f.terms().all(|(_, c)| !c.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn binomial_square() {
        let u = LaurentPoly::unknot();
        assert_eq!(u.pow(2), LaurentPoly::from_terms([(2, 1), (0, 2), (-2, 1)]));
    }

    #[test]
    fn zero_is_additive_identity() {
        let f = lp("3*q^4 + -2*q^-1");
        assert_eq!(&f + &LaurentPoly::zero(), f);
    }

    #[test]
    fn difference_of_squares() {
        let prod = &LaurentPoly::q_diff(1) * &LaurentPoly::q_sum(1);
        assert_eq!(prod, LaurentPoly::q_diff(2));
    }

    #[test]
    fn substitution_examples() {
        assert_eq!(LaurentPoly::unknot().substitute(3).unwrap(), LaurentPoly::q_sum(3));
        let f = LaurentPoly::from_terms([(3, 1), (-1, -1)]);
        assert_eq!(f.substitute(-1).unwrap(), LaurentPoly::from_terms([(-3, 1), (1, -1)]));
        assert_eq!(f.substitute(1).unwrap(), f);
        assert_eq!(f.substitute(0), Err(LaurentError::ZeroSubstitution));
    }

    #[test]
    fn exact_division_examples() {
        let h = LaurentPoly::q_diff(3).div_exact(&LaurentPoly::q_diff(1)).unwrap();
        assert_eq!(h, LaurentPoly::from_terms([(2, 1), (0, 1), (-2, 1)]));
        assert_eq!(
            LaurentPoly::q_diff(1).div_exact(&LaurentPoly::q_diff(3)),
            Err(DivError::NotDivisible)
        );
        assert_eq!(
            LaurentPoly::zero().div_exact(&LaurentPoly::q_diff(5)).unwrap(),
            LaurentPoly::zero()
        );
        assert!(matches!(
            LaurentPoly::one().div_exact(&LaurentPoly::zero()),
            Err(DivError::Invalid(LaurentError::ZeroDivisor))
        ));
        assert!(matches!(
            LaurentPoly::one().div_exact(&LaurentPoly::monomial(2, 1)),
            Err(DivError::Invalid(LaurentError::NonUnitLeading(_)))
        ));
    }

    #[test]
    fn division_by_negative_leading_unit() {
        let g = LaurentPoly::from_terms([(1, -1), (-1, 1)]);
        let f = LaurentPoly::q_diff(3);
        let h = f.div_exact(&g).unwrap();
        assert_eq!(&h * &g, f);
    }

    #[test]
    fn mod_p_examples() {
        let f = LaurentPoly::from_terms([(1, 3), (0, 5)]);
        assert_eq!(f.mod_p(3).unwrap().lift(), LaurentPoly::monomial(2, 0));
        let g = LaurentPoly::from_terms([(7, 9), (5, 36)]);
        assert!(g.mod_p(3).unwrap().is_zero());
        // (q+q^-1)^3 = q^3 + 3q + 3q^-1 + q^-3 by direct expansion
        let cube = LaurentPoly::unknot().pow(3);
        assert_eq!(cube, lp("1*q^3 + 3*q^1 + 3*q^-1 + 1*q^-3"));
        assert_eq!(cube.mod_p(3).unwrap().lift(), LaurentPoly::q_sum(3));
        assert_eq!(f.mod_p(4), Err(LaurentError::NotOddPrime(4)));
        assert_eq!(f.mod_p(2), Err(LaurentError::NotOddPrime(2)));
    }

    #[test]
    fn negative_coefficients_reduce_into_range() {
        let f = LaurentPoly::from_terms([(2, -1), (0, -7)]);
        let m = f.mod_p(5).unwrap();
        assert_eq!(m.coeff(2), 4);
        assert_eq!(m.coeff(0), 3);
    }

    #[test]
    fn reduce_examples() {
        let m = (LaurentPoly::unknot().pow(4) - LaurentPoly::one()).mod_p(3).unwrap();
        assert!(m.reduce(&m).unwrap().is_zero());
        let small = LaurentPoly::from_terms([(1, 1), (-1, 2)]).mod_p(3).unwrap();
        assert_eq!(small.reduce(&m).unwrap(), small);
        let u4 = LaurentPoly::unknot().pow(4).mod_p(3).unwrap();
        assert_eq!(u4.reduce(&m).unwrap().lift(), LaurentPoly::one());
        let zero = ModPoly::zero(3).unwrap();
        assert_eq!(u4.reduce(&zero), Err(LaurentError::ZeroDivisor));
    }

    #[test]
    fn text_format_matches_documented_shape() {
        let f = LaurentPoly::from_terms([(1, 1), (3, 1), (5, 1), (9, -1)]);
        assert_eq!(f.to_string(), "-1*q^9 + 1*q^5 + 1*q^3 + 1*q^1");
        assert_eq!(LaurentPoly::unknot().to_string(), "1*q^1 + 1*q^-1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert!("x*q^2".parse::<LaurentPoly>().is_err());
        assert!("q^".parse::<LaurentPoly>().is_err());
        assert!("".parse::<LaurentPoly>().is_err());
        let hand: LaurentPoly = "q + q^3 + q^5 - q^9".parse().unwrap();
        assert_eq!(hand, f);
        let mixed: LaurentPoly = "-2q^-3 + 3*q - 1".parse().unwrap();
        assert_eq!(mixed, LaurentPoly::from_terms([(-3, -2), (1, 3), (0, -1)]));
        assert_eq!("0".parse::<LaurentPoly>().unwrap(), LaurentPoly::zero());
    }

    #[test]
    fn big_coefficients_survive() {
        let f = LaurentPoly::unknot().pow(200);
        assert_eq!(f.coeff(0), binomial(200, 100));
        assert_eq!(f.to_string().parse::<LaurentPoly>().unwrap(), f);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(9, 3), BigInt::from(84));
        assert_eq!(binomial(27, 9), BigInt::from(4686825));
        assert_eq!(binomial(3, 5), BigInt::zero());
    }

    fn small_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-6i64..6, -5i64..5), 0..6)
            .prop_map(|ts| LaurentPoly::from_terms(ts))
    }

    fn nonzero_shift() -> impl Strategy<Value = i64> {
        prop_oneof![-4i64..=-1, 1i64..=4]
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn substitution_composes(f in small_poly(), k in nonzero_shift(), k2 in nonzero_shift()) {
            let lhs = f.substitute(k).unwrap().substitute(k2).unwrap();
            prop_assert_eq!(lhs, f.substitute(k * k2).unwrap());
        }

        #[test]
        fn exact_division_round_trip(h in small_poly(), b in 1i64..5, s in -3i64..3) {
            let g = LaurentPoly::q_diff(b).shift(s);
            let f = &g * &h;
            let back = f.div_exact(&g).unwrap();
            prop_assert_eq!(&g * &back, f);
            prop_assert_eq!(back, h);
        }

        #[test]
        fn reduction_is_idempotent(f in small_poly(), g in small_poly(), n in 1u32..4) {
            let m = (LaurentPoly::unknot().pow(2 * n) - LaurentPoly::one()).mod_p(3).unwrap();
            let fm = (&f * &g).mod_p(3).unwrap();
            let r = fm.reduce(&m).unwrap();
            prop_assert!(fm.sub(&r).unwrap().reduce(&m).unwrap().is_zero());
            let span = m.max_exp().unwrap() - m.min_exp().unwrap();
            if let (Some(lo), Some(hi)) = (r.min_exp(), r.max_exp()) {
                prop_assert!(hi - lo < span);
            }
        }

        #[test]
        fn text_round_trip(f in small_poly()) {
            let s = f.to_string();
            let back: LaurentPoly = s.parse().unwrap();
            prop_assert_eq!(back.to_string(), s);
            prop_assert_eq!(back, f);
        }
    }
}
