//! Rational Khovanov homology ranks from the cube of resolutions, and rank
//! tables read from CSV.

use std::collections::{BTreeMap, HashMap};
use std::io::Read;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::budget::Budget;
use crate::diagram::{LinkDiagram, Skeleton};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Computed,
    Ingested,
}

/// Nonzero ranks of `Kh^{i,j}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankTable {
    entries: BTreeMap<(i64, i64), u64>,
    provenance: Provenance,
}

impl RankTable {
    pub fn new(provenance: Provenance) -> Self {
        Self {
            entries: BTreeMap::new(),
            provenance,
        }
    }

    /// Builds a table from `(i, j, rank)` triples; zero ranks are dropped.
    pub fn from_entries(entries: impl IntoIterator<Item = (i64, i64, u64)>, provenance: Provenance) -> Self {
        let entries = entries
            .into_iter()
            .filter(|e| e.2 > 0)
            .map(|(i, j, r)| ((i, j), r))
            .collect();
        Self { entries, provenance }
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn rank(&self, i: i64, j: i64) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (i64, i64, u64)> + '_ {
        self.entries.iter().map(|(&(i, j), &r)| (i, j, r))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest rank, 0 for the empty table.
    pub fn max_rank(&self) -> u64 {
        self.entries.values().copied().max().unwrap_or(0)
    }

    /// `sum (-1)^i q^j rank(i,j)`
    pub fn euler_characteristic(&self) -> LaurentPoly {
        self.entries
            .iter()
            .map(|(&(i, j), &r)| LaurentPoly::monomial(if i % 2 == 0 { r as i64 } else { -(r as i64) }, j))
            .sum()
    }

    pub fn check_euler(&self, jones: &LaurentPoly) -> Result<()> {
        let chi = self.euler_characteristic();
        if &chi != jones {
            return Err(Error::Inconsistent(format!(
                "Euler characteristic of the rank table is {chi}, expected {jones}"
            )));
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,j,rank\n");
        for (i, j, r) in self.entries() {
            out.push_str(&format!("{i},{j},{r}\n"));
        }
        out
    }
}

/// Reads a rank table from CSV with header `i,j,rank`. When `jones` is given
/// the Euler characteristic must equal it.
pub fn ingest_ranks<R: Read>(reader: R, jones: Option<&LaurentPoly>) -> Result<RankTable> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr.headers().map_err(|e| Error::Malformed(e.to_string()))?.clone();
    if headers.iter().collect::<Vec<_>>() != ["i", "j", "rank"] {
        return Err(Error::Malformed(format!(
            "rank CSV header must be `i,j,rank`, found `{}`",
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut table = RankTable::new(Provenance::Ingested);
    for (line, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| Error::Malformed(e.to_string()))?;
        let row = line + 2;
        let field = |k: usize| -> Result<&str> {
            record
                .get(k)
                .ok_or_else(|| Error::Malformed(format!("row {row}: missing field")))
        };
        let parse_int = |k: usize| -> Result<i64> {
            field(k)?
                .parse()
                .map_err(|_| Error::Malformed(format!("row {row}: `{}` is not an integer", field(k).unwrap_or(""))))
        };
        if record.len() != 3 {
            return Err(Error::Malformed(format!("row {row}: expected 3 fields")));
        }
        let (i, j, rank) = (parse_int(0)?, parse_int(1)?, parse_int(2)?);
        if rank <= 0 {
            return Err(Error::Malformed(format!(
                "row {row}: rank must be positive (omit zero entries)"
            )));
        }
        if table.entries.insert((i, j), rank as u64).is_some() {
            return Err(Error::Malformed(format!("row {row}: duplicate entry ({i},{j})")));
        }
    }
    if let Some(j) = jones {
        table.check_euler(j)?;
    }
    Ok(table)
}

// ---------------------------------------------------------------------------
// Exact rank of sparse integer matrices

/// Matrix entries for fraction-free elimination.
trait Entry: Clone + PartialEq + Send + Sync {
    fn from_i64(x: i64) -> Self;
    fn is_zero(&self) -> bool;
    /// `a*x - b*y`, `None` on overflow.
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div(&self, d: &Self) -> Self;
    fn is_unit(&self) -> bool;
}

impl Entry for i64 {
    fn from_i64(x: i64) -> Self {
        x
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div(&self, d: &Self) -> Self {
        self / d
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
}

impl Entry for BigInt {
    fn from_i64(x: i64) -> Self {
        BigInt::from(x)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div(&self, d: &Self) -> Self {
        self / d
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
}

type SparseRow<T> = Vec<(usize, T)>;

/// Rank over the rationals; `None` if `T` overflowed.
fn rank_with<T: Entry>(rows: &[SparseRow<i64>]) -> Option<usize> {
    let mut rows: Vec<SparseRow<T>> = rows
        .iter()
        .map(|r| r.iter().map(|(c, v)| (*c, T::from_i64(*v))).collect())
        .collect();
    rows.sort_by_key(|r| r.len());
    let mut pivots: HashMap<usize, SparseRow<T>> = HashMap::new();
    let mut rank = 0;
    for mut row in rows {
        loop {
            let Some((lead, _)) = row.first() else { break };
            let Some(pivot) = pivots.get(lead) else {
                pivots.insert(*lead, row);
                rank += 1;
                break;
            };
            let a = &pivot[0].1;
            let b = &row[0].1;
            let g = a.gcd(b);
            let (fa, fb) = (a.div(&g), b.div(&g));
            // row <- fa*row - fb*pivot
            let mut merged = Vec::with_capacity(row.len() + pivot.len());
            let (mut i, mut j) = (1, 1);
            let zero = T::from_i64(0);
            while i < row.len() || j < pivot.len() {
                let (col, val) = match (row.get(i), pivot.get(j)) {
                    (Some((cr, vr)), Some((cp, _))) if cr < cp => {
                        i += 1;
                        (*cr, T::cross(&fa, vr, &zero, &zero)?)
                    }
                    (Some((cr, _)), Some((cp, vp))) if cp < cr => {
                        j += 1;
                        (*cp, T::cross(&zero, &zero, &fb, vp)?)
                    }
                    (Some((cr, vr)), Some((_, vp))) => {
                        i += 1;
                        j += 1;
                        (*cr, T::cross(&fa, vr, &fb, vp)?)
                    }
                    (Some((cr, vr)), None) => {
                        i += 1;
                        (*cr, T::cross(&fa, vr, &zero, &zero)?)
                    }
                    (None, Some((cp, vp))) => {
                        j += 1;
                        (*cp, T::cross(&zero, &zero, &fb, vp)?)
                    }
                    (None, None) => unreachable!(),
                };
                if !val.is_zero() {
                    merged.push((col, val));
                }
            }
            if let Some((_, first)) = merged.first() {
                let mut g = first.clone();
                for (_, v) in &merged[1..] {
                    if g.is_unit() {
                        break;
                    }
                    g = g.gcd(v);
                }
                if !g.is_unit() {
                    for (_, v) in merged.iter_mut() {
                        *v = v.div(&g);
                    }
                }
            }
            row = merged;
        }
    }
    Some(rank)
}

/// Exact rank over the rationals of a sparse integer matrix given by rows.
pub fn sparse_rank(rows: &[Vec<(usize, i64)>]) -> usize {
    rank_with::<i64>(rows).unwrap_or_else(|| rank_with::<BigInt>(rows).expect("big integers do not overflow"))
}

// ---------------------------------------------------------------------------
// The Khovanov complex

/// Circles of one resolution: circle index per slot, and the count.
struct Resolution {
    circle_of: Vec<u32>,
    circles: usize,
}

fn resolve(sk: &Skeleton, bits: u64) -> Resolution {
    let slots = 4 * sk.num_crossings();
    let mut circle_of = vec![u32::MAX; slots];
    let mut circles = 0u32;
    for start in 0..slots {
        if circle_of[start] != u32::MAX {
            continue;
        }
        let mut cur = start;
        loop {
            circle_of[cur] = circles;
            let (b, _) = sk.edge(cur);
            circle_of[b] = circles;
            let k = b % 4;
            let partner = if bits >> (b / 4) & 1 == 1 { 3 - k } else { k ^ 1 };
            cur = b - k + partner;
            if cur == start {
                break;
            }
        }
        circles += 1;
    }
    Resolution {
        circle_of,
        circles: circles as usize + sk.loops().len(),
    }
}

struct Complex {
    n: usize,
    n_plus: i64,
    n_minus: i64,
    resolutions: Vec<Resolution>,
    loops: usize,
}

impl Complex {
    fn new(sk: &Skeleton) -> Self {
        let n = sk.num_crossings();
        let resolutions = (0..1u64 << n).into_par_iter().map(|b| resolve(sk, b)).collect();
        let (plus, minus) = sk.crossing_counts();
        Self {
            n,
            n_plus: plus as i64,
            n_minus: minus as i64,
            resolutions,
            loops: sk.loops().len(),
        }
    }

    /// Generators `(state, labels)` with `r` 1-smoothings and internal degree `j`.
    fn generators(&self, r: usize, j: i64) -> Vec<(u64, u64)> {
        let mut gens = Vec::new();
        for state in 0..1u64 << self.n {
            if state.count_ones() as usize != r {
                continue;
            }
            let c = self.resolutions[state as usize].circles;
            // labels with the right number of v_- circles
            let minus = c as i64 + r as i64 - j;
            if minus < 0 || minus % 2 != 0 || minus / 2 > c as i64 {
                continue;
            }
            let want = (minus / 2) as u32;
            for labels in 0..1u64 << c {
                if labels.count_ones() == want {
                    gens.push((state, labels));
                }
            }
        }
        gens
    }

    /// Image of one generator under the differential, as `(target, coefficient)`.
    fn differential(&self, sk_n: usize, state: u64, labels: u64, out: &mut Vec<((u64, u64), i64)>) {
        let src = &self.resolutions[state as usize];
        for c in 0..sk_n {
            if state >> c & 1 == 1 {
                continue;
            }
            let target = state | 1 << c;
            let dst = &self.resolutions[target as usize];
            let sign = if (state & ((1u64 << c) - 1)).count_ones().is_multiple_of(2) { 1 } else { -1 };
            let a = src.circle_of[4 * c] as usize;
            let b = src.circle_of[4 * c + 2] as usize;
            let a2 = dst.circle_of[4 * c] as usize;
            let b2 = dst.circle_of[4 * c + 1] as usize;
            // transport labels of the untouched circles
            let crossing_circles = src.circles - self.loops;
            let mut base = 0u64;
            for x in 0..4 * sk_n {
                if x / 4 == c {
                    continue;
                }
                let from = src.circle_of[x] as usize;
                if from == a || from == b {
                    continue;
                }
                if labels >> from & 1 == 1 {
                    base |= 1 << dst.circle_of[x];
                }
            }
            let dst_crossing_circles = dst.circles - self.loops;
            for l in 0..self.loops {
                if labels >> (crossing_circles + l) & 1 == 1 {
                    base |= 1 << (dst_crossing_circles + l);
                }
            }
            let la = labels >> a & 1;
            if a != b {
                // merge into a2 == b2
                let lb = labels >> b & 1;
                match la + lb {
                    0 => out.push(((target, base), sign)),
                    1 => out.push(((target, base | 1 << a2), sign)),
                    _ => {}
                }
            } else if la == 0 {
                out.push(((target, base | 1 << b2), sign));
                out.push(((target, base | 1 << a2), sign));
            } else {
                out.push(((target, base | 1 << a2 | 1 << b2), sign));
            }
        }
    }

    fn block_rank(&self, r: usize, j: i64) -> usize {
        if r >= self.n {
            return 0;
        }
        let sources = self.generators(r, j);
        let targets = self.generators(r + 1, j);
        if sources.is_empty() || targets.is_empty() {
            return 0;
        }
        let index: HashMap<(u64, u64), usize> = targets.iter().enumerate().map(|(i, g)| (*g, i)).collect();
        let mut buf = Vec::new();
        let rows: Vec<Vec<(usize, i64)>> = sources
            .iter()
            .map(|&(s, l)| {
                buf.clear();
                self.differential(self.n, s, l, &mut buf);
                let mut row: BTreeMap<usize, i64> = BTreeMap::new();
                for (g, coef) in &buf {
                    *row.entry(index[g]).or_insert(0) += coef;
                }
                row.into_iter().filter(|(_, v)| *v != 0).collect()
            })
            .collect();
        sparse_rank(&rows)
    }
}

/// Ranks of `Kh^{i,j}(D; Q)` with `i = r - n_-`, `j = deg + r + n_+ - 2 n_-`.
pub fn kh_ranks<D: LinkDiagram + ?Sized>(d: &D, budget: &Budget) -> Result<RankTable> {
    let sk = d.skeleton();
    budget.check_kh(sk.num_crossings())?;
    let cx = Complex::new(sk);
    let n = cx.n;

    // chain group dimensions per (r, internal degree)
    let mut dims: BTreeMap<(usize, i64), u64> = BTreeMap::new();
    for state in 0..1u64 << n {
        let c = cx.resolutions[state as usize].circles;
        let r = state.count_ones() as usize;
        for minus in 0..=c {
            let count = crate::laurent::binomial(c as u64, minus as u64);
            let count: u64 = count.try_into().expect("generator count fits in u64");
            *dims.entry((r, c as i64 - 2 * minus as i64 + r as i64)).or_insert(0) += count;
        }
    }
    let keys: Vec<(usize, i64)> = dims.keys().copied().collect();
    let ranks: HashMap<(usize, i64), usize> = keys
        .par_iter()
        .map(|&(r, j)| ((r, j), cx.block_rank(r, j)))
        .collect();
    let mut table = RankTable::new(Provenance::Computed);
    for (&(r, j), &dim) in &dims {
        let out = ranks.get(&(r, j)).copied().unwrap_or(0) as u64;
        let inc = if r == 0 { 0 } else { ranks.get(&(r - 1, j)).copied().unwrap_or(0) as u64 };
        let h = dim - out - inc;
        if h > 0 {
            let i = r as i64 - cx.n_minus;
            let jj = j + cx.n_plus - 2 * cx.n_minus;
            table.entries.insert((i, jj), h);
        }
    }
    Ok(table)
}
