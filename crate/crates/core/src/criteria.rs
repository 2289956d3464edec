//! Periodicity criteria: membership of `J(q) - J(q^-1)` in the Przytycki
//! ideals, and the Murasugi congruence.

use num_bigint::BigInt;
use serde::Serialize;

use crate::budget::Budget;
use crate::diagram::PeriodicTangleCode;
use crate::equivariant::totient;
use crate::error::{Error, Result};
use crate::khovanov::RankTable;
use crate::laurent::{check_odd_prime, DivError, LaurentPoly};
use crate::states::jones_kauffman;

/// Ideal of `Z[q, q^-1]` generated by `p^i (q^{b_i} - q^{-b_i})`,
/// `i = 0, 1, ...`; `b = 0` in the last position stands for the constant
/// generator `p^i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealChain {
    p: u64,
    exponents: Vec<u64>,
}

impl IdealChain {
    pub fn new(p: u64, exponents: Vec<u64>) -> Result<IdealChain> {
        check_odd_prime(p)?;
        if exponents.is_empty() {
            return Err(Error::Malformed("an ideal chain needs at least one generator".into()));
        }
        for (i, pair) in exponents.windows(2).enumerate() {
            let (b, next) = (pair[0], pair[1]);
            if b == 0 {
                return Err(Error::Malformed(format!("constant generator at position {i} is not last")));
            }
            if next != 0 && b % next != 0 {
                return Err(Error::Malformed(format!(
                    "q^{next} - q^-{next} does not divide q^{b} - q^-{b}"
                )));
            }
        }
        Ok(IdealChain { p, exponents })
    }

    fn powers(p: u64, n: u32, count: u32) -> Vec<u64> {
        (0..count).map(|i| p.pow(n - i)).collect()
    }

    /// `I_{p^n} = (q^{p^n} - q^{-p^n}, p(q^{p^{n-1}} - ...), ..., p^{n-1}(q^p - q^-p), p^n)`
    pub fn przytycki(p: u64, n: u32) -> Result<IdealChain> {
        let mut e = Self::powers(p, n, n);
        e.push(0);
        Self::new(p, e)
    }

    /// `I_{p^n,s}`: the first `s` generators of the chain, no constant.
    pub fn strengthened(p: u64, n: u32, s: u32) -> Result<IdealChain> {
        if s == 0 || s > n + 1 {
            return Err(Error::Malformed(format!("s = {s} outside 1..={}", n + 1)));
        }
        Self::new(p, Self::powers(p, n, s))
    }

    /// `I_{p^n,n+1}`, ending in `p^n (q - q^-1)`; for `p^n = 5` this is
    /// `(q^5 - q^-5, 5(q - q^-1))`.
    pub fn example_variant(p: u64, n: u32) -> Result<IdealChain> {
        Self::strengthened(p, n, n + 1)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn generator(&self, i: usize) -> LaurentPoly {
        let scale = BigInt::from(self.p).pow(i as u32);
        let b = self.exponents[i];
        if b == 0 {
            LaurentPoly::monomial(scale, 0)
        } else {
            LaurentPoly::q_diff(b as i64).scale(&scale)
        }
    }

    /// Readable form, e.g. `(1*q^5 + -1*q^-5, 5*q^1 + -5*q^-1)`.
    pub fn describe(&self) -> String {
        let gens: Vec<String> = (0..self.exponents.len()).map(|i| self.generator(i).to_string()).collect();
        format!("({})", gens.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stage {
    pub index: usize,
    /// Polynomial entering the stage.
    pub input: LaurentPoly,
    /// Lifted quotient by the stage generator, when it exists.
    pub quotient: Option<LaurentPoly>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub member: bool,
    pub stages: Vec<Stage>,
}

impl Membership {
    /// Stage at which the reduction stopped, when `f` is not a member.
    pub fn failed_stage(&self) -> Option<&Stage> {
        if self.member {
            None
        } else {
            self.stages.last()
        }
    }
}

/// Decides `f ∈ I` by successive `p`-adic reduction along the chain.
pub fn ideal_member(f: &LaurentPoly, chain: &IdealChain) -> Result<Membership> {
    let p = chain.p;
    let big_p = BigInt::from(p);
    let last = chain.exponents.len() - 1;
    let mut current = f.clone();
    let mut stages = Vec::new();
    for (i, &b) in chain.exponents.iter().enumerate() {
        if current.is_zero() {
            return Ok(Membership { member: true, stages });
        }
        let mut stage = Stage {
            index: i,
            input: current.clone(),
            quotient: None,
        };
        if i == last {
            let member = if b == 0 {
                true
            } else {
                match current.div_exact(&LaurentPoly::q_diff(b as i64)) {
                    Ok(q) => {
                        stage.quotient = Some(q);
                        true
                    }
                    Err(DivError::NotDivisible) => false,
                    Err(DivError::Invalid(e)) => return Err(e.into()),
                }
            };
            stages.push(stage);
            return Ok(Membership { member, stages });
        }
        let g = LaurentPoly::q_diff(b as i64);
        let reduced = current.mod_p(p)?;
        let lift = if reduced.is_zero() {
            LaurentPoly::zero()
        } else {
            match reduced.div_exact(&g.mod_p(p)?) {
                Ok(q) => q.lift(),
                Err(DivError::NotDivisible) => {
                    stages.push(stage);
                    return Ok(Membership { member: false, stages });
                }
                Err(DivError::Invalid(e)) => return Err(e.into()),
            }
        };
        stage.quotient = Some(lift.clone());
        stages.push(stage);
        current = (current - &lift * &g)
            .div_scalar_exact(&big_p)
            .expect("remainder is divisible by p");
    }
    unreachable!("the last stage always returns")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Outcome {
    Obstructed,
    NoObstruction,
}

/// Result of one criterion; serialized as
/// `{criterion, p, n, s, result, witness_stage, witness_poly}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub criterion: String,
    pub p: u64,
    pub n: u32,
    pub s: Option<u32>,
    pub result: Outcome,
    pub witness_stage: Option<usize>,
    pub witness_poly: Option<LaurentPoly>,
}

impl Verdict {
    fn from_membership(criterion: &str, p: u64, n: u32, s: Option<u32>, m: &Membership) -> Verdict {
        let failed = m.failed_stage();
        Verdict {
            criterion: criterion.to_string(),
            p,
            n,
            s,
            result: if m.member {
                Outcome::NoObstruction
            } else {
                Outcome::Obstructed
            },
            witness_stage: failed.map(|st| st.index),
            witness_poly: failed.map(|st| st.input.clone()),
        }
    }

    pub fn obstructed(&self) -> bool {
        self.result == Outcome::Obstructed
    }
}

/// `J(q) - J(q^-1)`
pub fn mirror_difference(jones: &LaurentPoly) -> LaurentPoly {
    jones - &jones.mirror()
}

/// Tests `J(q) ≡ J(q^-1)` modulo `I_{p^n}`.
pub fn przytycki_check(jones: &LaurentPoly, p: u64, n: u32) -> Result<Verdict> {
    let m = ideal_member(&mirror_difference(jones), &IdealChain::przytycki(p, n)?)?;
    Ok(Verdict::from_membership("przytycki", p, n, None, &m))
}

/// Tests `J(q) ≡ J(q^-1)` modulo `I_{p^n,n+1}`.
pub fn przytycki_variant_check(jones: &LaurentPoly, p: u64, n: u32) -> Result<Verdict> {
    let m = ideal_member(&mirror_difference(jones), &IdealChain::example_variant(p, n)?)?;
    Ok(Verdict::from_membership("przytycki-variant", p, n, Some(n + 1), &m))
}

/// Smallest `s` in `1..=n` with `max_rank < phi(p^s)`.
pub fn strengthened_level(max_rank: u64, p: u64, n: u32) -> Option<u32> {
    (1..=n).find(|&s| max_rank < totient(p.pow(s)))
}

/// Tests `J(q) ≡ J(q^-1)` modulo `I_{p^n,s}` for the smallest admissible
/// `s`; without an admissible `s` this is the plain Przytycki test.
pub fn strengthened_check(jones: &LaurentPoly, ranks: &RankTable, p: u64, n: u32) -> Result<Verdict> {
    match strengthened_level(ranks.max_rank(), p, n) {
        Some(s) => strengthened_check_at(jones, ranks, p, n, s),
        None => {
            ranks.check_euler(jones)?;
            przytycki_check(jones, p, n)
        }
    }
}

/// Tests `J(q) ≡ J(q^-1)` modulo `I_{p^n,s}` for a given `s`, which must
/// satisfy `max_rank < phi(p^s)` and `1 <= s <= n`.
pub fn strengthened_check_at(jones: &LaurentPoly, ranks: &RankTable, p: u64, n: u32, s: u32) -> Result<Verdict> {
    ranks.check_euler(jones)?;
    if s == 0 || s > n {
        return Err(Error::Malformed(format!("s = {s} outside 1..={n}")));
    }
    let bound = totient(p.pow(s));
    if ranks.max_rank() >= bound {
        return Err(Error::Malformed(format!(
            "s = {s} is not admissible: max Khovanov rank {} is not below phi({}) = {bound}",
            ranks.max_rank(),
            p.pow(s)
        )));
    }
    let m = ideal_member(&mirror_difference(jones), &IdealChain::strengthened(p, n, s)?)?;
    Ok(Verdict::from_membership("strengthened", p, n, Some(s), &m))
}

/// `alpha = 1` for odd linking number with the axis, 2 otherwise.
pub fn murasugi_alpha(lk: i64) -> u32 {
    if lk % 2 != 0 {
        1
    } else {
        2
    }
}

/// Recomputes both sides of
/// `J(D) ≡ J(D_*)^{p^n} mod (p, (q + q^-1)^{alpha(p^n - 1)} - 1)`.
pub fn murasugi_verify(code: &PeriodicTangleCode, budget: &Budget) -> Result<Verdict> {
    let (p, n) = (code.p(), code.n());
    let full = jones_kauffman(&code.quotient(0)?, budget)?;
    let quotient = jones_kauffman(&code.quotient(n)?, budget)?;
    let period = code.period();
    let alpha = murasugi_alpha(code.lk_with_axis());
    let lhs = full.mod_p(p)?;
    let rhs = quotient.mod_p(p)?.pow(period)?;
    let exponent = u32::try_from(alpha as u64 * (period - 1))
        .map_err(|_| Error::Malformed("period too large".into()))?;
    let modulus = (LaurentPoly::unknot().pow(exponent) - LaurentPoly::one()).mod_p(p)?;
    let remainder = lhs.sub(&rhs)?.reduce(&modulus)?;
    let holds = remainder.is_zero();
    Ok(Verdict {
        criterion: "murasugi".into(),
        p,
        n,
        s: None,
        result: if holds {
            Outcome::NoObstruction
        } else {
            Outcome::Obstructed
        },
        witness_stage: None,
        witness_poly: (!holds).then(|| remainder.lift()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn membership_examples() {
        // (q - q^-1)^3 - (q^3 - q^-3) = -3(q - q^-1)
        let f = LaurentPoly::q_diff(1).pow(3) - LaurentPoly::q_diff(3);
        assert_eq!(f, LaurentPoly::q_diff(1).scale(&BigInt::from(-3)));
        let chain = IdealChain::new(3, vec![3, 1]).unwrap();
        assert!(ideal_member(&f, &chain).unwrap().member);

        let i3 = IdealChain::przytycki(3, 1).unwrap();
        assert_eq!(i3.exponents(), &[3, 0]);
        let m = ideal_member(&LaurentPoly::q_diff(1), &i3).unwrap();
        assert!(!m.member);
        assert_eq!(m.failed_stage().unwrap().index, 0);

        assert!(ideal_member(&LaurentPoly::zero(), &i3).unwrap().member);
    }

    #[test]
    fn chain_validation() {
        assert!(IdealChain::new(3, vec![0, 3]).is_err());
        assert!(IdealChain::new(3, vec![9, 2]).is_err());
        assert!(IdealChain::new(4, vec![4]).is_err());
        assert!(IdealChain::new(3, vec![]).is_err());
        assert_eq!(IdealChain::przytycki(3, 2).unwrap().exponents(), &[9, 3, 0]);
        assert_eq!(IdealChain::strengthened(5, 2, 1).unwrap().exponents(), &[25]);
        assert_eq!(IdealChain::example_variant(5, 1).unwrap().exponents(), &[5, 1]);
    }

    #[test]
    fn generators_are_members() {
        let chain = IdealChain::przytycki(3, 2).unwrap();
        for i in 0..3 {
            let g = chain.generator(i);
            assert!(ideal_member(&g, &chain).unwrap().member, "generator {i}");
            assert!(ideal_member(&g.shift(7), &chain).unwrap().member);
        }
        assert!(!ideal_member(&LaurentPoly::monomial(3, 0), &chain).unwrap().member);
    }

    #[test]
    fn trefoil_criteria() {
        let j = lp("q + q^3 + q^5 - q^9");
        assert!(!przytycki_check(&j, 3, 1).unwrap().obstructed());
        let ranks = RankTable::from_entries(
            [(0, 1, 1), (0, 3, 1), (2, 5, 1), (3, 9, 1)],
            crate::khovanov::Provenance::Computed,
        );
        let v = strengthened_check(&j, &ranks, 3, 1).unwrap();
        assert_eq!(v.s, Some(1));
        assert!(!v.obstructed());
        // 5 is not a period of the trefoil
        assert!(przytycki_check(&j, 5, 1).unwrap().obstructed());
    }

    #[test]
    fn unknot_never_obstructed() {
        let j = LaurentPoly::unknot();
        for (p, n) in [(3, 1), (5, 2), (7, 2)] {
            assert!(!przytycki_check(&j, p, n).unwrap().obstructed());
        }
    }

    #[test]
    fn strengthened_level_selection() {
        assert_eq!(strengthened_level(3, 5, 1), Some(1));
        assert_eq!(strengthened_level(4, 5, 1), None);
        assert_eq!(strengthened_level(4, 5, 2), Some(2));
        assert_eq!(strengthened_level(1, 3, 2), Some(1));
        assert_eq!(murasugi_alpha(2), 2);
        assert_eq!(murasugi_alpha(-1), 1);
    }

    #[test]
    fn euler_mismatch_is_an_error() {
        let ranks = RankTable::from_entries([(0, 1, 1)], crate::khovanov::Provenance::Ingested);
        assert!(matches!(
            strengthened_check(&LaurentPoly::unknot(), &ranks, 3, 1),
            Err(Error::Inconsistent(_))
        ));
    }
}
