//! Kauffman states: circle tracing with winding numbers, exact-isotropy
//! strata of periodic diagrams, and the classical state sum.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::budget::Budget;
use crate::diagram::{DiagramError, LinkDiagram, PeriodicTangleCode, Skeleton};
use crate::error::Result;
use crate::laurent::LaurentPoly;

/// One smoothing choice per crossing; bit `c` set means crossing `c` takes
/// the 1-smoothing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KauffmanState {
    bits: u64,
    len: usize,
}

impl KauffmanState {
    pub fn new(bits: u64, len: usize) -> Self {
        assert!(len <= 64, "at most 64 crossings");
        let mask = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
        Self { bits: bits & mask, len }
    }

    /// Parses a string of `0`/`1` characters, crossing 0 first.
    pub fn from_str_bits(s: &str) -> Option<Self> {
        let mut bits = 0u64;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => return None,
            }
        }
        (s.len() <= 64).then(|| Self::new(bits, s.len()))
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bit(&self, c: usize) -> bool {
        self.bits >> c & 1 == 1
    }

    pub fn ones(&self) -> usize {
        self.bits.count_ones() as usize
    }
}

/// Statistics of a state of the full diagram with isotropy exactly `Z/p^v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateStats {
    /// 1-smoothings in the full diagram.
    pub r: usize,
    pub v: u32,
    /// Free orbits of circles.
    pub k: usize,
    /// Circles around the axis.
    pub f: usize,
}

/// Reusable scratch space for circle tracing.
#[derive(Debug, Default)]
pub struct Tracer {
    visited: Vec<bool>,
}

impl Tracer {
    pub fn new() -> Self {
        Self::default()
    }

    /// Calls `visit` with the winding of every circle of the resolution.
    pub fn trace(&mut self, sk: &Skeleton, bits: u64, mut visit: impl FnMut(i32)) {
        let slots = 4 * sk.num_crossings();
        self.visited.clear();
        self.visited.resize(slots, false);
        for start in 0..slots {
            if self.visited[start] {
                continue;
            }
            let mut winding = 0;
            let mut cur = start;
            loop {
                self.visited[cur] = true;
                let (b, d) = sk.edge(cur);
                winding += d;
                self.visited[b] = true;
                let k = b % 4;
                let one = bits >> (b / 4) & 1 == 1;
                let partner = if one { 3 - k } else { k ^ 1 };
                cur = b - k + partner;
                if cur == start {
                    break;
                }
            }
            visit(winding);
        }
        for &w in sk.loops() {
            visit(w);
        }
    }

    /// `(k, f)`: circles with winding 0 and with winding ±1.
    pub fn orbit_counts(&mut self, sk: &Skeleton, bits: u64) -> Result<(usize, usize), DiagramError> {
        let (mut k, mut f) = (0, 0);
        let mut bad = None;
        self.trace(sk, bits, |w| match w.abs() {
            0 => k += 1,
            1 => f += 1,
            _ => bad = Some(w),
        });
        match bad {
            Some(winding) => Err(DiagramError::NonPlanar { winding }),
            None => Ok((k, f)),
        }
    }

    pub fn circle_count(&mut self, sk: &Skeleton, bits: u64) -> usize {
        let mut n = 0;
        self.trace(sk, bits, |_| n += 1);
        n
    }
}

/// Circles of the resolution of `d` along `s`, as winding numbers.
pub fn resolve_and_trace<D: LinkDiagram + ?Sized>(
    d: &D,
    s: &KauffmanState,
) -> Result<Vec<i32>, DiagramError> {
    let sk = d.skeleton();
    assert_eq!(s.len(), sk.num_crossings(), "state length must match crossing count");
    let mut out = Vec::new();
    Tracer::new().trace(sk, s.bits(), |w| out.push(w));
    if let Some(&w) = out.iter().find(|w| w.abs() > 1) {
        return Err(DiagramError::NonPlanar { winding: w });
    }
    Ok(out)
}

/// Rotates an `len`-bit word right by `shift` bits.
fn rotate(bits: u64, shift: usize, len: usize) -> u64 {
    if len == 0 || shift.is_multiple_of(len) {
        return bits;
    }
    let mask = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
    ((bits >> shift) | (bits << (len - shift))) & mask
}

/// The quotient `A_v` of a periodic code together with what is needed to
/// recognise its exact-isotropy states.
#[derive(Debug, Clone)]
pub struct Level {
    pub p: u64,
    pub v: u32,
    skeleton: Skeleton,
    crossings: usize,
    /// Bit shift of the order-`p` rotation of `A_v`; `None` at the top level.
    sub_shift: Option<usize>,
    /// `p^(n-v)`, the size of every state orbit at this level.
    orbit_size: u64,
    scale: usize,
}

impl Level {
    pub fn new(code: &PeriodicTangleCode, v: u32) -> Result<Level> {
        let quotient = code.quotient(v)?;
        let copies = quotient.copies();
        let t = code.tangle().num_crossings();
        let sub_shift = (v < code.n()).then(|| (copies / code.p() as usize) * t);
        Ok(Level {
            p: code.p(),
            v,
            crossings: copies * t,
            skeleton: quotient.skeleton().clone(),
            sub_shift,
            orbit_size: copies as u64,
            scale: code.p().pow(v) as usize,
        })
    }

    pub fn crossings(&self) -> usize {
        self.crossings
    }

    pub fn skeleton(&self) -> &Skeleton {
        &self.skeleton
    }

    /// Number of states in each orbit of the residual rotation.
    pub fn orbit_size(&self) -> u64 {
        self.orbit_size
    }

    /// Whether a state of `A_v` does not come from `A_{v+1}`.
    pub fn is_exact(&self, bits: u64) -> bool {
        match self.sub_shift {
            None => true,
            Some(shift) => rotate(bits, shift, self.crossings) != bits,
        }
    }

    fn stats(&self, tracer: &mut Tracer, bits: u64) -> Result<StateStats, DiagramError> {
        let (k, f) = tracer.orbit_counts(&self.skeleton, bits)?;
        Ok(StateStats {
            r: self.scale * bits.count_ones() as usize,
            v: self.v,
            k,
            f,
        })
    }
}

/// Lazily enumerates the exact-isotropy states of one level.
pub struct LevelStates {
    level: Level,
    next: u64,
    end: u64,
    tracer: Tracer,
}

impl Iterator for LevelStates {
    type Item = Result<(KauffmanState, StateStats), DiagramError>;

    fn next(&mut self) -> Option<Self::Item> {
        while self.next < self.end {
            let bits = self.next;
            self.next += 1;
            if self.level.is_exact(bits) {
                let state = KauffmanState::new(bits, self.level.crossings);
                return Some(self.level.stats(&mut self.tracer, bits).map(|s| (state, s)));
            }
        }
        None
    }
}

/// States of the quotient `A_v` whose isotropy in the full diagram is
/// exactly `Z/p^v`.
pub fn enumerate_level(code: &PeriodicTangleCode, v: u32, budget: &Budget) -> Result<LevelStates> {
    let level = Level::new(code, v)?;
    budget.check_states(level.crossings)?;
    let end = 1u64 << level.crossings;
    Ok(LevelStates {
        level,
        next: 0,
        end,
        tracer: Tracer::new(),
    })
}

/// Exact states of one level, counted by `(r, k, f)`.
pub type Histogram = BTreeMap<(usize, usize, usize), u64>;

const CHUNK_BITS: u32 = 12;

/// Parallel fold of `per_state` over all `2^crossings` states.
fn fold_states<T, F>(crossings: usize, per_state: F) -> Result<BTreeMap<T, u64>, DiagramError>
where
    T: Ord + Send + Copy,
    F: Fn(&mut Tracer, u64) -> Result<Option<T>, DiagramError> + Sync,
{
    let total = 1u64 << crossings;
    let chunk = 1u64 << CHUNK_BITS.min(crossings as u32);
    let chunks = total / chunk;
    (0..chunks)
        .into_par_iter()
        .map(|ci| {
            let mut tracer = Tracer::new();
            let mut local = BTreeMap::new();
            for bits in ci * chunk..(ci + 1) * chunk {
                if let Some(key) = per_state(&mut tracer, bits)? {
                    *local.entry(key).or_insert(0u64) += 1;
                }
            }
            Ok(local)
        })
        .try_reduce(BTreeMap::new, |mut a, b| {
            for (k, c) in b {
                *a.entry(k).or_insert(0) += c;
            }
            Ok(a)
        })
}

/// Histogram of the exact states of level `v`.
pub fn level_histogram(code: &PeriodicTangleCode, v: u32, budget: &Budget) -> Result<Histogram> {
    let level = Level::new(code, v)?;
    budget.check_states(level.crossings)?;
    let hist = fold_states(level.crossings, |tracer, bits| {
        if !level.is_exact(bits) {
            return Ok(None);
        }
        let s = level.stats(tracer, bits)?;
        Ok(Some((s.r, s.k, s.f)))
    })?;
    Ok(hist)
}

/// `(-1)^{n_-} q^{n_+ - 2 n_-}`
pub fn jones_prefactor(n_plus: usize, n_minus: usize) -> LaurentPoly {
    let sign = if n_minus.is_multiple_of(2) { 1 } else { -1 };
    LaurentPoly::monomial(sign, n_plus as i64 - 2 * n_minus as i64)
}

/// `(-q)^r`
pub fn neg_q_pow(r: usize) -> LaurentPoly {
    LaurentPoly::monomial(if r.is_multiple_of(2) { 1 } else { -1 }, r as i64)
}

/// Unreduced Jones polynomial by the Kauffman state sum.
pub fn jones_kauffman<D: LinkDiagram + ?Sized>(d: &D, budget: &Budget) -> Result<LaurentPoly> {
    let sk = d.skeleton();
    let n = sk.num_crossings();
    budget.check_states(n)?;
    let hist = fold_states(n, |tracer, bits| {
        Ok(Some((bits.count_ones() as usize, tracer.circle_count(sk, bits))))
    })?;
    let u = LaurentPoly::unknot();
    let mut powers = vec![LaurentPoly::one()];
    let mut sum = LaurentPoly::zero();
    for ((r, circles), count) in hist {
        while powers.len() <= circles {
            let next = powers.last().unwrap() * &u;
            powers.push(next);
        }
        sum += &(&neg_q_pow(r) * &powers[circles]).scale(&count.into());
    }
    let (plus, minus) = sk.crossing_counts();
    Ok(&jones_prefactor(plus, minus) * &sum)
}
