//! Link diagrams: planar-diagram (PD) codes, periodic tangle codes (PTC),
//! and the flattened crossing graph ([`Skeleton`]) every state sum runs on.
//!
//! Crossing slots are numbered counterclockwise starting at the incoming
//! under-strand. A crossing is positive when the over-strand runs from slot 3
//! to slot 1. The 0-smoothing joins slots (0,1) and (2,3), the 1-smoothing
//! joins (0,3) and (1,2); for a positive crossing the 0-smoothing is the
//! oriented resolution.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::laurent::{check_odd_prime, is_prime};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("dangling port: {0}")]
    DanglingPort(String),
    #[error("orientation mismatch: {0}")]
    OrientationMismatch(String),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("bad gluing: {0}")]
    BadGluing(String),
    #[error("arc label {label} appears {count} times (expected 2)")]
    ArcLabel { label: u64, count: usize },
    #[error("symmetry level {v} outside 0..={n}")]
    LevelOutOfRange { v: u32, n: u32 },
    #[error("crossing index {0} out of range")]
    NoSuchCrossing(usize),
    #[error("state circle winds {winding} times around the axis (diagram is not planar)")]
    NonPlanar { winding: i32 },
    #[error("malformed input: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn from_int(s: i64) -> Option<Sign> {
        match s {
            1 => Some(Sign::Positive),
            -1 => Some(Sign::Negative),
            _ => None,
        }
    }

    pub fn as_int(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

/// The flattened crossing graph of a diagram drawn in an annulus around the
/// axis (a planar diagram is the special case with no seam passages).
///
/// Slot `4c + k` is slot `k` of crossing `c`. `edges[slot]` is the slot at
/// the other end of the arc leaving it, together with the signed number of
/// seam passages along the way.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skeleton {
    signs: Vec<Sign>,
    edges: Vec<(u32, i32)>,
    loops: Vec<i32>,
}

impl Skeleton {
    pub fn new(signs: Vec<Sign>, edges: Vec<(u32, i32)>, loops: Vec<i32>) -> Result<Self, DiagramError> {
        if edges.len() != 4 * signs.len() {
            return Err(DiagramError::Malformed(format!(
                "{} slots for {} crossings",
                edges.len(),
                signs.len()
            )));
        }
        for (a, &(b, d)) in edges.iter().enumerate() {
            let back = edges.get(b as usize);
            if back != Some(&(a as u32, -d)) {
                return Err(DiagramError::DanglingPort(format!("slot {a}")));
            }
        }
        let skel = Self { signs, edges, loops };
        skel.check_orientation()?;
        Ok(skel)
    }

    pub fn num_crossings(&self) -> usize {
        self.signs.len()
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn edge(&self, slot: usize) -> (usize, i32) {
        let (b, d) = self.edges[slot];
        (b as usize, d)
    }

    /// Windings of the crossingless closed components.
    pub fn loops(&self) -> &[i32] {
        &self.loops
    }

    /// `(n_plus, n_minus)`
    pub fn crossing_counts(&self) -> (usize, usize) {
        let plus = self.signs.iter().filter(|s| **s == Sign::Positive).count();
        (plus, self.signs.len() - plus)
    }

    pub fn writhe(&self) -> i64 {
        let (p, m) = self.crossing_counts();
        p as i64 - m as i64
    }

    fn is_in_slot(&self, slot: usize) -> bool {
        let k = slot % 4;
        match self.signs[slot / 4] {
            Sign::Positive => k == 0 || k == 3,
            Sign::Negative => k == 0 || k == 1,
        }
    }

    /// Exit slot for a strand entering through `slot`.
    fn through(slot: usize) -> usize {
        let base = slot - slot % 4;
        base + (slot % 4 + 2) % 4
    }

    fn check_orientation(&self) -> Result<(), DiagramError> {
        for a in 0..self.edges.len() {
            let (b, _) = self.edge(a);
            if self.is_in_slot(a) == self.is_in_slot(b) {
                return Err(DiagramError::OrientationMismatch(format!(
                    "arc between slots {a} and {b} joins two {} ends",
                    if self.is_in_slot(a) { "incoming" } else { "outgoing" }
                )));
            }
        }
        Ok(())
    }

    /// Link components, each as the list of outgoing slots in traversal order
    /// (crossingless loops are not included).
    pub fn strands(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.edges.len()];
        let mut comps = Vec::new();
        for start in 0..self.edges.len() {
            if self.is_in_slot(start) || seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut out = start;
            while !seen[out] {
                seen[out] = true;
                comp.push(out);
                let (inc, _) = self.edge(out);
                out = Self::through(inc);
            }
            comps.push(comp);
        }
        comps
    }

    pub fn num_components(&self) -> usize {
        self.strands().len() + self.loops.len()
    }

    /// Net seam passages of each link component (orientation-signed).
    pub fn component_windings(&self) -> Vec<i32> {
        let mut w: Vec<i32> = self
            .strands()
            .iter()
            .map(|comp| comp.iter().map(|&s| self.edge(s).1).sum())
            .collect();
        w.extend(self.loops.iter().copied());
        w
    }

    /// The mirror image: every crossing switched.
    pub fn mirror(&self) -> Skeleton {
        // new slot k' of crossing c is old slot perm(k')
        let perm = |sign: Sign, k: usize| match sign {
            Sign::Positive => (k + 3) % 4,
            Sign::Negative => (k + 1) % 4,
        };
        let mut old_to_new = vec![0usize; self.edges.len()];
        for (c, &sign) in self.signs.iter().enumerate() {
            for k in 0..4 {
                old_to_new[4 * c + perm(sign, k)] = 4 * c + k;
            }
        }
        let mut edges = vec![(0u32, 0i32); self.edges.len()];
        for (old, &(b, d)) in self.edges.iter().enumerate() {
            edges[old_to_new[old]] = (old_to_new[b as usize] as u32, d);
        }
        Skeleton {
            signs: self.signs.iter().map(|s| s.flip()).collect(),
            edges,
            loops: self.loops.clone(),
        }
    }

    /// Disjoint union with a crossingless unknot of the given winding.
    pub fn with_extra_loop(&self, winding: i32) -> Skeleton {
        let mut out = self.clone();
        out.loops.push(winding);
        out
    }

    /// PD export. Labels are assigned per arc; orientation is recoverable
    /// with the `under-in` rule as long as every component passes under.
    pub fn to_planar(&self) -> Result<PlanarDiagram, DiagramError> {
        let mut label = vec![0u64; self.edges.len()];
        let mut next = 1u64;
        for comp in self.strands() {
            for out in comp {
                let (inc, _) = self.edge(out);
                label[out] = next;
                label[inc] = next;
                next += 1;
            }
        }
        let crossings: Vec<PdCrossing> = (0..self.num_crossings())
            .map(|c| PdCrossing {
                labels: [label[4 * c], label[4 * c + 1], label[4 * c + 2], label[4 * c + 3]],
                sign: self.signs[c],
            })
            .collect();
        let loop_labels: Vec<u64> = (0..self.loops.len() as u64).map(|i| next + i).collect();
        let text = render_pd(&crossings, &loop_labels);
        PlanarDiagram::parse(&text)
    }
}

/// Anything with a crossing graph: planar and annular diagrams.
pub trait LinkDiagram {
    fn skeleton(&self) -> &Skeleton;

    fn crossing_counts(&self) -> (usize, usize) {
        self.skeleton().crossing_counts()
    }
}

impl LinkDiagram for Skeleton {
    fn skeleton(&self) -> &Skeleton {
        self
    }
}

// ---------------------------------------------------------------------------
// PD codes

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PdCrossing {
    /// Arc labels counterclockwise, starting at the incoming under-strand.
    pub labels: [u64; 4],
    pub sign: Sign,
}

/// How the PD text fixes the direction of over-strands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PdOrientation {
    /// The first label of each crossing is the incoming under-strand;
    /// over-strand directions are propagated along components.
    UnderIn,
    /// Labels increase along each component and wrap from its largest label
    /// back to its smallest.
    Sequential,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarDiagram {
    crossings: Vec<PdCrossing>,
    loop_labels: Vec<u64>,
    skeleton: Skeleton,
}

impl LinkDiagram for PlanarDiagram {
    fn skeleton(&self) -> &Skeleton {
        &self.skeleton
    }
}

fn render_pd(crossings: &[PdCrossing], loops: &[u64]) -> String {
    let mut s = String::from("orientation: under-in\n");
    for c in crossings {
        let [a, b, x, d] = c.labels;
        s.push_str(&format!("X[{a},{b},{x},{d}]\n"));
    }
    for l in loops {
        s.push_str(&format!("O[{l}]\n"));
    }
    s
}

fn parse_bracket_list(body: &str) -> Result<Vec<u64>, DiagramError> {
    body.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| DiagramError::Malformed(format!("bad arc label `{}`", t.trim())))
        })
        .collect()
}

impl PlanarDiagram {
    /// Parses PD text: optional `#` comments, an optional
    /// `orientation: under-in|sequential` header, then `X[a,b,c,d]` crossings
    /// and `O[a]` crossingless loops in any layout (a Mathematica-style
    /// `PD[X[..], X[..]]` one-liner works too).
    pub fn parse(text: &str) -> Result<Self, DiagramError> {
        let mut mode = PdOrientation::UnderIn;
        let mut body = String::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("orientation:") {
                mode = match rest.trim() {
                    "under-in" => PdOrientation::UnderIn,
                    "sequential" => PdOrientation::Sequential,
                    other => {
                        return Err(DiagramError::Malformed(format!(
                            "unknown orientation mode `{other}`"
                        )))
                    }
                };
                continue;
            }
            body.push_str(line);
            body.push('\n');
        }

        let mut raw: Vec<[u64; 4]> = Vec::new();
        let mut loop_labels = Vec::new();
        let bytes = body.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let kind = bytes[i];
            if (kind == b'X' || kind == b'O') && bytes.get(i + 1) == Some(&b'[') {
                let close = body[i..]
                    .find(']')
                    .ok_or_else(|| DiagramError::Malformed("unclosed bracket".into()))?;
                let inner = &body[i + 2..i + close];
                let labels = parse_bracket_list(inner)?;
                match (kind, labels.len()) {
                    (b'X', 4) => raw.push([labels[0], labels[1], labels[2], labels[3]]),
                    (b'O', 1) => loop_labels.push(labels[0]),
                    _ => {
                        return Err(DiagramError::Malformed(format!(
                            "`{}` has the wrong number of labels",
                            &body[i..=i + close]
                        )))
                    }
                }
                i += close + 1;
            } else {
                i += 1;
            }
        }
        Self::from_crossings(&raw, &loop_labels, mode)
    }

    pub fn from_crossings(
        raw: &[[u64; 4]],
        loop_labels: &[u64],
        mode: PdOrientation,
    ) -> Result<Self, DiagramError> {
        let mut occurrences: HashMap<u64, Vec<usize>> = HashMap::new();
        for (c, labels) in raw.iter().enumerate() {
            for (k, &l) in labels.iter().enumerate() {
                occurrences.entry(l).or_default().push(4 * c + k);
            }
        }
        for &l in loop_labels {
            if occurrences.contains_key(&l) {
                return Err(DiagramError::ArcLabel {
                    label: l,
                    count: occurrences[&l].len() + 1,
                });
            }
        }
        let mut labels_sorted: Vec<_> = occurrences.keys().copied().collect();
        labels_sorted.sort_unstable();
        for l in &labels_sorted {
            let count = occurrences[l].len();
            if count != 2 {
                return Err(DiagramError::ArcLabel { label: *l, count });
            }
        }

        let slot_count = 4 * raw.len();
        let mut edges = vec![(0u32, 0i32); slot_count];
        for l in &labels_sorted {
            let occ = &occurrences[l];
            edges[occ[0]] = (occ[1] as u32, 0);
            edges[occ[1]] = (occ[0] as u32, 0);
        }

        // direction per slot: Some(true) = incoming
        let mut incoming: Vec<Option<bool>> = vec![None; slot_count];
        let assign = |incoming: &mut Vec<Option<bool>>, slot: usize, val: bool, queue: &mut Vec<usize>| {
            match incoming[slot] {
                Some(v) if v != val => Err(DiagramError::OrientationMismatch(format!(
                    "slot {} of crossing {} is both incoming and outgoing",
                    slot % 4,
                    slot / 4
                ))),
                Some(_) => Ok(()),
                None => {
                    incoming[slot] = Some(val);
                    queue.push(slot);
                    Ok(())
                }
            }
        };
        let mut queue = Vec::new();
        for c in 0..raw.len() {
            assign(&mut incoming, 4 * c, true, &mut queue)?;
            assign(&mut incoming, 4 * c + 2, false, &mut queue)?;
            if mode == PdOrientation::Sequential {
                let (j, l) = (raw[c][1], raw[c][3]);
                let over_j_to_l = l == j + 1 || j > l + 1;
                assign(&mut incoming, 4 * c + 1, over_j_to_l, &mut queue)?;
                assign(&mut incoming, 4 * c + 3, !over_j_to_l, &mut queue)?;
            }
        }
        while let Some(slot) = queue.pop() {
            let val = incoming[slot].unwrap();
            let partner = edges[slot].0 as usize;
            assign(&mut incoming, partner, !val, &mut queue)?;
            let opposite = slot - slot % 4 + (slot % 4 + 2) % 4;
            assign(&mut incoming, opposite, !val, &mut queue)?;
        }

        let mut crossings = Vec::with_capacity(raw.len());
        let mut signs = Vec::with_capacity(raw.len());
        for (c, labels) in raw.iter().enumerate() {
            let sign = match incoming[4 * c + 3] {
                Some(true) => Sign::Positive,
                Some(false) => Sign::Negative,
                None => {
                    return Err(DiagramError::OrientationMismatch(format!(
                        "over-strand at crossing {c} (labels {labels:?}) lies on a component that never passes under; use `orientation: sequential`"
                    )))
                }
            };
            signs.push(sign);
            crossings.push(PdCrossing {
                labels: *labels,
                sign,
            });
        }
        let skeleton = Skeleton::new(signs, edges, vec![0; loop_labels.len()])?;
        Ok(Self {
            crossings,
            loop_labels: loop_labels.to_vec(),
            skeleton,
        })
    }

    pub fn crossings(&self) -> &[PdCrossing] {
        &self.crossings
    }

    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn mirror(&self) -> PlanarDiagram {
        let raw: Vec<[u64; 4]> = self
            .crossings
            .iter()
            .map(|c| {
                let [a, b, x, d] = c.labels;
                match c.sign {
                    Sign::Positive => [d, a, b, x],
                    Sign::Negative => [b, x, d, a],
                }
            })
            .collect();
        Self::from_crossings(&raw, &self.loop_labels, PdOrientation::UnderIn)
            .expect("mirror of a valid diagram is valid")
    }

    pub fn to_text(&self) -> String {
        render_pd(&self.crossings, &self.loop_labels)
    }
}

// ---------------------------------------------------------------------------
// Periodic tangle codes

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Role {
    #[serde(rename = "ui")]
    UnderIn,
    #[serde(rename = "uo")]
    UnderOut,
    #[serde(rename = "oi")]
    OverIn,
    #[serde(rename = "oo")]
    OverOut,
}

impl Role {
    fn is_incoming(self) -> bool {
        matches!(self, Role::UnderIn | Role::OverIn)
    }

    fn switched(self) -> Role {
        match self {
            Role::UnderIn => Role::OverIn,
            Role::UnderOut => Role::OverOut,
            Role::OverIn => Role::UnderIn,
            Role::OverOut => Role::UnderOut,
        }
    }
}

/// A port of the fundamental domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PortRef {
    /// Slot of the crossing with the given index in [`Tangle::crossings`].
    Crossing(usize, u8),
    West(usize),
    East(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangleCrossing {
    pub id: u64,
    /// Roles of the four ports in counterclockwise order.
    pub roles: [Role; 4],
}

impl TangleCrossing {
    fn under_in_slot(&self) -> usize {
        self.roles.iter().position(|r| *r == Role::UnderIn).unwrap()
    }

    pub fn sign(&self) -> Sign {
        let o = self.under_in_slot();
        if self.roles[(o + 1) % 4] == Role::OverOut {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    /// Position of a given slot in the normalized numbering (0 = under-in).
    fn normalized(&self, slot: u8) -> usize {
        (slot as usize + 4 - self.under_in_slot()) % 4
    }

    fn validate(&self) -> Result<(), DiagramError> {
        let o = self
            .roles
            .iter()
            .position(|r| *r == Role::UnderIn)
            .ok_or_else(|| DiagramError::OrientationMismatch(format!("crossing {} has no under-in port", self.id)))?;
        let r = |k: usize| self.roles[(o + k) % 4];
        let ok = r(2) == Role::UnderOut
            && ((r(1) == Role::OverIn && r(3) == Role::OverOut) || (r(1) == Role::OverOut && r(3) == Role::OverIn));
        if !ok {
            return Err(DiagramError::OrientationMismatch(format!(
                "crossing {} has inconsistent port roles {:?}",
                self.id, self.roles
            )));
        }
        Ok(())
    }
}

/// Fundamental domain of a periodic diagram: a tangle with `a` ports on its
/// west side and `a` on its east side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tangle {
    crossings: Vec<TangleCrossing>,
    /// Directed arcs, source first.
    arcs: Vec<(PortRef, PortRef)>,
    west_labels: Vec<u64>,
    /// `glue[i]` is the west index receiving east port `i` of the previous copy.
    glue: Vec<usize>,
    /// Direction of the strand at each west port: +1 eastward, -1 westward.
    orient: Vec<i8>,
    /// Crossingless closed circles inside the domain.
    loops: usize,
}

impl fmt::Display for PortRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PortRef::Crossing(c, s) => write!(f, "crossing #{c} slot {s}"),
            PortRef::West(i) => write!(f, "west port {i}"),
            PortRef::East(i) => write!(f, "east port {i}"),
        }
    }
}

impl Tangle {
    pub fn new(
        crossings: Vec<TangleCrossing>,
        arcs: Vec<(PortRef, PortRef)>,
        west_labels: Vec<u64>,
        east_labels: Vec<u64>,
        orient: Vec<i8>,
        loops: usize,
    ) -> Result<Self, DiagramError> {
        let a = west_labels.len();
        if east_labels.len() != a {
            return Err(DiagramError::BadGluing(format!(
                "{a} west ports but {} east ports",
                east_labels.len()
            )));
        }
        let mut west_index = HashMap::new();
        for (i, l) in west_labels.iter().enumerate() {
            if west_index.insert(*l, i).is_some() {
                return Err(DiagramError::BadGluing(format!("west label {l} is repeated")));
            }
        }
        let mut glue = Vec::with_capacity(a);
        let mut glued = HashSet::new();
        for (i, l) in east_labels.iter().enumerate() {
            let w = *west_index
                .get(l)
                .ok_or_else(|| DiagramError::BadGluing(format!("east port {i} names unknown west port {l}")))?;
            if !glued.insert(w) {
                return Err(DiagramError::BadGluing(format!("west port {l} is glued twice")));
            }
            glue.push(w);
        }
        if orient.len() != a || orient.iter().any(|o| *o != 1 && *o != -1) {
            return Err(DiagramError::OrientationMismatch(format!(
                "orient must list +1/-1 for each of the {a} boundary positions"
            )));
        }
        let mut ids = HashSet::new();
        for c in &crossings {
            c.validate()?;
            if !ids.insert(c.id) {
                return Err(DiagramError::Malformed(format!("crossing id {} is repeated", c.id)));
            }
        }
        let tangle = Self {
            crossings,
            arcs,
            west_labels,
            glue,
            orient,
            loops,
        };
        tangle.check_ports()?;
        Ok(tangle)
    }

    fn all_ports(&self) -> Vec<PortRef> {
        let mut ports = Vec::new();
        for c in 0..self.crossings.len() {
            for s in 0..4u8 {
                ports.push(PortRef::Crossing(c, s));
            }
        }
        for i in 0..self.west_labels.len() {
            ports.push(PortRef::West(i));
            ports.push(PortRef::East(i));
        }
        ports
    }

    fn port_exists(&self, p: PortRef) -> bool {
        match p {
            PortRef::Crossing(c, s) => c < self.crossings.len() && s < 4,
            PortRef::West(i) | PortRef::East(i) => i < self.west_labels.len(),
        }
    }

    fn describe(&self, p: PortRef) -> String {
        match p {
            PortRef::Crossing(c, s) => match self.crossings.get(c) {
                Some(x) => format!("crossing {} slot {s}", x.id),
                None => p.to_string(),
            },
            _ => p.to_string(),
        }
    }

    /// Direction of the east port strand: +1 eastward.
    fn east_orient(&self, i: usize) -> i8 {
        self.orient[self.glue[i]]
    }

    /// Whether the strand leaves the port into the interior of the domain.
    fn is_source(&self, p: PortRef) -> bool {
        match p {
            PortRef::Crossing(c, s) => !self.crossings[c].roles[s as usize].is_incoming(),
            PortRef::West(i) => self.orient[i] == 1,
            PortRef::East(i) => self.east_orient(i) == -1,
        }
    }

    fn check_ports(&self) -> Result<(), DiagramError> {
        let mut used: HashMap<PortRef, usize> = HashMap::new();
        for (idx, &(s, t)) in self.arcs.iter().enumerate() {
            for p in [s, t] {
                if !self.port_exists(p) {
                    return Err(DiagramError::DanglingPort(format!("arc {idx} references missing {p}")));
                }
                if used.insert(p, idx).is_some() {
                    return Err(DiagramError::BadGluing(format!("{} is glued twice", self.describe(p))));
                }
            }
            if !self.is_source(s) || self.is_source(t) {
                return Err(DiagramError::OrientationMismatch(format!(
                    "arc {idx} from {} to {} runs against the strand orientation",
                    self.describe(s),
                    self.describe(t)
                )));
            }
        }
        for p in self.all_ports() {
            if !used.contains_key(&p) {
                return Err(DiagramError::DanglingPort(self.describe(p)));
            }
        }
        Ok(())
    }

    pub fn crossings(&self) -> &[TangleCrossing] {
        &self.crossings
    }

    pub fn arcs(&self) -> &[(PortRef, PortRef)] {
        &self.arcs
    }

    pub fn width(&self) -> usize {
        self.west_labels.len()
    }

    pub fn orient(&self) -> &[i8] {
        &self.orient
    }

    pub fn loops(&self) -> usize {
        self.loops
    }

    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn crossing_counts(&self) -> (usize, usize) {
        let plus = self.crossings.iter().filter(|c| c.sign() == Sign::Positive).count();
        (plus, self.crossings.len() - plus)
    }

    /// A closed braid piece: `word` lists `(i, positive)` generators acting on
    /// positions `i, i+1` (0 = top). In a positive generator the strand moving
    /// from position `i` to `i+1` passes over. `orient` gives the direction of
    /// each strand at the west side and must be constant on the cycles of the
    /// braid permutation.
    pub fn braid(strands: usize, word: &[(usize, bool)], orient: &[i8]) -> Result<Tangle, DiagramError> {
        if orient.len() != strands {
            return Err(DiagramError::Malformed("one orientation per strand".into()));
        }
        // open end at each position and the direction of the strand there
        let mut ends: Vec<PortRef> = (0..strands).map(PortRef::West).collect();
        let mut dirs: Vec<i8> = orient.to_vec();
        let mut crossings = Vec::new();
        let mut arcs = Vec::new();
        // geometric slots (ccw): 0 SW, 1 SE, 2 NE, 3 NW
        let link = |arcs: &mut Vec<(PortRef, PortRef)>, left: PortRef, right: PortRef, dir: i8| {
            if dir == 1 {
                arcs.push((left, right));
            } else {
                arcs.push((right, left));
            }
        };
        for (idx, &(i, positive)) in word.iter().enumerate() {
            if i + 1 >= strands {
                return Err(DiagramError::Malformed(format!("generator {i} out of range")));
            }
            let c = crossings.len();
            let (down, up) = (dirs[i], dirs[i + 1]);
            link(&mut arcs, ends[i], PortRef::Crossing(c, 3), down);
            link(&mut arcs, ends[i + 1], PortRef::Crossing(c, 0), up);
            // down strand NW -> SE, up strand SW -> NE
            let (down_over, up_over) = (positive, !positive);
            let role = |over: bool, incoming: bool| match (over, incoming) {
                (true, true) => Role::OverIn,
                (true, false) => Role::OverOut,
                (false, true) => Role::UnderIn,
                (false, false) => Role::UnderOut,
            };
            let mut roles = [Role::UnderIn; 4];
            roles[3] = role(down_over, down == 1);
            roles[1] = role(down_over, down != 1);
            roles[0] = role(up_over, up == 1);
            roles[2] = role(up_over, up != 1);
            crossings.push(TangleCrossing { id: idx as u64, roles });
            ends[i] = PortRef::Crossing(c, 2);
            ends[i + 1] = PortRef::Crossing(c, 1);
            dirs.swap(i, i + 1);
        }
        for i in 0..strands {
            link(&mut arcs, ends[i], PortRef::East(i), dirs[i]);
        }
        let labels: Vec<u64> = (0..strands as u64).collect();
        Tangle::new(crossings, arcs, labels.clone(), labels, orient.to_vec(), 0)
    }

    /// Crossingless domain whose closure is the trivial link with `k` free
    /// orbits and `f` circles around the axis.
    pub fn trivial(k: usize, f: usize) -> Tangle {
        let mut arcs = Vec::new();
        let mut orient = Vec::new();
        for i in 0..f {
            arcs.push((PortRef::West(i), PortRef::East(i)));
            orient.push(1);
        }
        for c in 0..k {
            let (a, b) = (f + 2 * c, f + 2 * c + 1);
            arcs.push((PortRef::West(a), PortRef::West(b)));
            arcs.push((PortRef::East(b), PortRef::East(a)));
            orient.push(1);
            orient.push(-1);
        }
        let labels: Vec<u64> = (0..(f + 2 * k) as u64).collect();
        Tangle::new(Vec::new(), arcs, labels.clone(), labels, orient, 0).expect("trivial tangle is valid")
    }

    fn check_index(&self, idx: usize) -> Result<(), DiagramError> {
        if idx >= self.crossings.len() {
            return Err(DiagramError::NoSuchCrossing(idx));
        }
        Ok(())
    }

    /// Same tangle with crossing `idx` given the requested sign.
    pub fn with_sign(&self, idx: usize, sign: Sign) -> Result<Tangle, DiagramError> {
        self.check_index(idx)?;
        let mut out = self.clone();
        if out.crossings[idx].sign() != sign {
            for r in out.crossings[idx].roles.iter_mut() {
                *r = r.switched();
            }
        }
        Ok(out)
    }

    /// Replaces crossing `idx` by its orientation-preserving smoothing.
    pub fn oriented_resolution(&self, idx: usize) -> Result<Tangle, DiagramError> {
        self.check_index(idx)?;
        let roles = self.crossings[idx].roles;
        let slot_of = |r: Role| roles.iter().position(|x| *x == r).unwrap() as u8;
        let mut exit_for = HashMap::new();
        exit_for.insert(slot_of(Role::UnderIn), slot_of(Role::OverOut));
        exit_for.insert(slot_of(Role::OverIn), slot_of(Role::UnderOut));

        let from: HashMap<PortRef, usize> = self.arcs.iter().enumerate().map(|(i, a)| (a.0, i)).collect();
        let mut consumed = vec![false; self.arcs.len()];
        let mut arcs = Vec::new();
        for (i, &(src, _)) in self.arcs.iter().enumerate() {
            if matches!(src, PortRef::Crossing(c, _) if c == idx) {
                continue;
            }
            consumed[i] = true;
            let mut tgt = self.arcs[i].1;
            while let PortRef::Crossing(c, s) = tgt {
                if c != idx {
                    break;
                }
                let next = from[&PortRef::Crossing(c, exit_for[&s])];
                consumed[next] = true;
                tgt = self.arcs[next].1;
            }
            arcs.push((src, tgt));
        }
        // what is left are closed cycles through the resolved crossing
        let mut loops = self.loops;
        for start in 0..self.arcs.len() {
            if consumed[start] {
                continue;
            }
            loops += 1;
            let mut cur = start;
            while !consumed[cur] {
                consumed[cur] = true;
                if let PortRef::Crossing(c, s) = self.arcs[cur].1 {
                    cur = from[&PortRef::Crossing(c, exit_for[&s])];
                }
            }
        }
        let renumber = |p: PortRef| match p {
            PortRef::Crossing(c, s) if c > idx => PortRef::Crossing(c - 1, s),
            other => other,
        };
        let arcs = arcs.into_iter().map(|(a, b)| (renumber(a), renumber(b))).collect();
        let mut crossings = self.crossings.clone();
        crossings.remove(idx);
        let east: Vec<u64> = self.glue.iter().map(|w| self.west_labels[*w]).collect();
        Tangle::new(crossings, arcs, self.west_labels.clone(), east, self.orient.clone(), loops)
    }
}

// JSON wire format -----------------------------------------------------------

fn compact<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

#[derive(Debug, Serialize, Deserialize)]
struct CrossingJson {
    id: u64,
    sign: i64,
    ports: [Role; 4],
}

#[derive(Debug, Serialize, Deserialize)]
struct TangleJson {
    crossings: Vec<CrossingJson>,
    arcs: Vec<[Value; 2]>,
    west: Vec<u64>,
    east: Vec<u64>,
    orient: Vec<i8>,
    #[serde(default, skip_serializing_if = "is_zero")]
    loops: usize,
}

fn is_zero(x: &usize) -> bool {
    *x == 0
}

#[derive(Debug, Serialize, Deserialize)]
struct PtcJson {
    p: u64,
    n: u32,
    tangle: TangleJson,
}

/// A `p^n`-periodic diagram: the annular closure of `p^n` copies of a tangle,
/// the east side of copy `j` glued to the west side of copy `j + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicTangleCode {
    p: u64,
    n: u32,
    tangle: Arc<Tangle>,
}

impl PeriodicTangleCode {
    pub fn new(p: u64, n: u32, tangle: Tangle) -> Result<Self, DiagramError> {
        if check_odd_prime(p).is_err() || !is_prime(p) {
            return Err(DiagramError::NotOddPrime(p));
        }
        if n == 0 {
            return Err(DiagramError::Malformed("period exponent n must be at least 1".into()));
        }
        p.checked_pow(n)
            .filter(|m| *m <= 1 << 20)
            .ok_or_else(|| DiagramError::Malformed(format!("period {p}^{n} is too large")))?;
        Ok(Self {
            p,
            n,
            tangle: Arc::new(tangle),
        })
    }

    /// Parses the PTC JSON format (see `docs/formats.md`).
    pub fn parse(text: &str) -> Result<Self, DiagramError> {
        let raw: PtcJson = serde_json::from_str(text).map_err(|e| DiagramError::Malformed(e.to_string()))?;
        let t = raw.tangle;
        let mut index = HashMap::new();
        let mut crossings = Vec::new();
        for (i, c) in t.crossings.iter().enumerate() {
            index.insert(c.id, i);
            let tc = TangleCrossing { id: c.id, roles: c.ports };
            tc.validate()?;
            let declared = Sign::from_int(c.sign)
                .ok_or_else(|| DiagramError::Malformed(format!("crossing {} has sign {}", c.id, c.sign)))?;
            if declared != tc.sign() {
                return Err(DiagramError::OrientationMismatch(format!(
                    "crossing {} declares sign {} but its port roles give {}",
                    c.id,
                    c.sign,
                    tc.sign().as_int()
                )));
            }
            crossings.push(tc);
        }
        let port = |v: &Value| -> Result<PortRef, DiagramError> {
            let bad = || DiagramError::Malformed(format!("bad port reference {v}"));
            let arr = v.as_array().ok_or_else(bad)?;
            let tag = arr.first().and_then(Value::as_str).ok_or_else(bad)?;
            let num = |k: usize| arr.get(k).and_then(Value::as_u64).ok_or_else(bad);
            match (tag, arr.len()) {
                ("c", 3) => {
                    let id = num(1)?;
                    let c = *index
                        .get(&id)
                        .ok_or_else(|| DiagramError::DanglingPort(format!("arc references unknown crossing {id}")))?;
                    let slot = num(2)?;
                    if slot > 3 {
                        return Err(DiagramError::DanglingPort(format!("crossing {id} has no slot {slot}")));
                    }
                    Ok(PortRef::Crossing(c, slot as u8))
                }
                ("w", 2) => Ok(PortRef::West(num(1)? as usize)),
                ("e", 2) => Ok(PortRef::East(num(1)? as usize)),
                _ => Err(bad()),
            }
        };
        let mut arcs = Vec::new();
        for [a, b] in &t.arcs {
            arcs.push((port(a)?, port(b)?));
        }
        let tangle = Tangle::new(crossings, arcs, t.west, t.east, t.orient, t.loops)?;
        Self::new(raw.p, raw.n, tangle)
    }

    pub fn to_json(&self) -> String {
        let t = &self.tangle;
        let port = |p: PortRef| -> Value {
            match p {
                PortRef::Crossing(c, s) => serde_json::json!(["c", t.crossings[c].id, s]),
                PortRef::West(i) => serde_json::json!(["w", i]),
                PortRef::East(i) => serde_json::json!(["e", i]),
            }
        };
        let raw = PtcJson {
            p: self.p,
            n: self.n,
            tangle: TangleJson {
                crossings: t
                    .crossings
                    .iter()
                    .map(|c| CrossingJson {
                        id: c.id,
                        sign: c.sign().as_int(),
                        ports: c.roles,
                    })
                    .collect(),
                arcs: t.arcs.iter().map(|(a, b)| [port(*a), port(*b)]).collect(),
                west: t.west_labels.clone(),
                east: t.glue.iter().map(|w| t.west_labels[*w]).collect(),
                orient: t.orient.clone(),
                loops: t.loops,
            },
        };
        // one crossing / arc per line
        let t = &raw.tangle;
        let list = |items: Vec<String>| {
            if items.is_empty() {
                "[]".to_string()
            } else {
                format!("[\n    {}\n  ]", items.join(",\n    "))
            }
        };
        let crossings = list(t.crossings.iter().map(compact).collect());
        let arcs = list(t.arcs.iter().map(compact).collect());
        let mut out = format!(
            "{{\"p\": {}, \"n\": {}, \"tangle\": {{\n  \"crossings\": {crossings},\n  \"arcs\": {arcs},\n  \"west\": {}, \"east\": {}, \"orient\": {}",
            raw.p,
            raw.n,
            compact(&t.west),
            compact(&t.east),
            compact(&t.orient)
        );
        if t.loops > 0 {
            out.push_str(&format!(", \"loops\": {}", t.loops));
        }
        out.push_str("\n}}\n");
        out
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `p^n`
    pub fn period(&self) -> u64 {
        self.p.pow(self.n)
    }

    pub fn tangle(&self) -> &Tangle {
        &self.tangle
    }

    pub fn with_tangle(&self, tangle: Tangle) -> PeriodicTangleCode {
        Self {
            p: self.p,
            n: self.n,
            tangle: Arc::new(tangle),
        }
    }

    /// The quotient by `Z/p^v`: `p^(n-v)` glued copies. `v = 0` is the full diagram.
    pub fn quotient(&self, v: u32) -> Result<AnnularDiagram, DiagramError> {
        if v > self.n {
            return Err(DiagramError::LevelOutOfRange { v, n: self.n });
        }
        AnnularDiagram::new(self.tangle.clone(), self.p.pow(self.n - v) as usize)
    }

    /// `(n_plus, n_minus)` of the full diagram.
    pub fn crossing_counts(&self) -> (usize, usize) {
        let (a, b) = self.tangle.crossing_counts();
        let m = self.period() as usize;
        (a * m, b * m)
    }

    /// Linking number with the axis: signed strand passages through one seam.
    pub fn lk_with_axis(&self) -> i64 {
        self.tangle.orient.iter().map(|o| *o as i64).sum()
    }
}

/// Cyclic closure of `copies` glued copies of a tangle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnularDiagram {
    tangle: Arc<Tangle>,
    copies: usize,
    seam: usize,
    skeleton: Skeleton,
}

impl LinkDiagram for AnnularDiagram {
    fn skeleton(&self) -> &Skeleton {
        &self.skeleton
    }
}

impl AnnularDiagram {
    pub fn new(tangle: Arc<Tangle>, copies: usize) -> Result<Self, DiagramError> {
        Self::with_seam(tangle, copies, 0)
    }

    /// Winding numbers are measured through the seam just west of copy `seam`.
    pub fn with_seam(tangle: Arc<Tangle>, copies: usize, seam: usize) -> Result<Self, DiagramError> {
        if copies == 0 {
            return Err(DiagramError::Malformed("an annular closure needs at least one copy".into()));
        }
        let seam = seam % copies;
        let skeleton = build_skeleton(&tangle, copies, seam)?;
        Ok(Self {
            tangle,
            copies,
            seam,
            skeleton,
        })
    }

    pub fn copies(&self) -> usize {
        self.copies
    }

    pub fn tangle(&self) -> &Tangle {
        &self.tangle
    }

    pub fn crossings_per_copy(&self) -> usize {
        self.tangle.num_crossings()
    }

    /// Global crossing index of crossing `local` in copy `copy`.
    pub fn crossing_index(&self, copy: usize, local: usize) -> usize {
        copy * self.tangle.num_crossings() + local
    }

    /// The `factor`-fold cyclic cover of this closure.
    pub fn expand(&self, factor: usize) -> Result<AnnularDiagram, DiagramError> {
        AnnularDiagram::with_seam(self.tangle.clone(), self.copies * factor, self.seam)
    }
}

fn build_skeleton(t: &Tangle, copies: usize, seam: usize) -> Result<Skeleton, DiagramError> {
    let per = t.num_crossings();
    let a = t.width();
    let mut other_end: HashMap<PortRef, (usize, PortRef)> = HashMap::new();
    for (i, &(s, d)) in t.arcs.iter().enumerate() {
        other_end.insert(s, (i, d));
        other_end.insert(d, (i, s));
    }
    let mut west_to_east = vec![0usize; a];
    for (e, w) in t.glue.iter().enumerate() {
        west_to_east[*w] = e;
    }
    // cross a boundary port into the neighbouring copy
    let hop = |copy: usize, p: PortRef| -> (usize, PortRef, i32) {
        match p {
            PortRef::East(e) => {
                let next = (copy + 1) % copies;
                let d = if next == seam { 1 } else { 0 };
                (next, PortRef::West(t.glue[e]), d)
            }
            PortRef::West(w) => {
                let prev = (copy + copies - 1) % copies;
                let d = if copy == seam { -1 } else { 0 };
                (prev, PortRef::East(west_to_east[w]), d)
            }
            PortRef::Crossing(..) => unreachable!(),
        }
    };
    let slot_index = |copy: usize, p: PortRef| -> usize {
        match p {
            PortRef::Crossing(c, s) => 4 * (copy * per + c) + t.crossings[c].normalized(s),
            _ => unreachable!(),
        }
    };

    let mut visited = vec![vec![false; t.arcs.len()]; copies];
    let mut edges = vec![(0u32, 0i32); 4 * per * copies];
    for copy in 0..copies {
        for c in 0..per {
            for s in 0..4u8 {
                let start = PortRef::Crossing(c, s);
                let from = slot_index(copy, start);
                let (mut cur_copy, mut cur) = (copy, start);
                let mut delta = 0i32;
                loop {
                    let (arc, far) = other_end[&cur];
                    visited[cur_copy][arc] = true;
                    if let PortRef::Crossing(..) = far {
                        edges[from] = (slot_index(cur_copy, far) as u32, delta);
                        break;
                    }
                    let (nc, np, d) = hop(cur_copy, far);
                    delta += d;
                    cur_copy = nc;
                    cur = np;
                }
            }
        }
    }

    let mut loops = Vec::new();
    for copy in 0..copies {
        for arc in 0..t.arcs.len() {
            if visited[copy][arc] {
                continue;
            }
            // crossingless component: walk it until we are back at this arc
            let mut winding = 0i32;
            let (mut cur_copy, mut cur) = (copy, t.arcs[arc].0);
            loop {
                let (i, far) = other_end[&cur];
                visited[cur_copy][i] = true;
                let (nc, np, d) = hop(cur_copy, far);
                winding += d;
                cur_copy = nc;
                cur = np;
                if cur_copy == copy && other_end[&cur].0 == arc {
                    break;
                }
            }
            loops.push(winding);
        }
        loops.extend(std::iter::repeat_n(0, t.loops));
    }
    let signs = (0..copies).flat_map(|_| t.crossings.iter().map(|c| c.sign())).collect();
    Skeleton::new(signs, edges, loops)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const TREFOIL_PTC: &str = r#"{"p":3,"n":1,"tangle":{
        "crossings":[{"id":0,"sign":1,"ports":["ui","oo","uo","oi"]}],
        "arcs":[[["w",0],["c",0,3]],[["w",1],["c",0,0]],[["c",0,1],["e",1]],[["c",0,2],["e",0]]],
        "west":[0,1],"east":[0,1],"orient":[1,1]}}"#;

    const RIGHT_TREFOIL_PD: &str = "X[2,0,3,5]\nX[0,4,1,3]\nX[4,2,5,1]\n";

    #[test]
    fn trefoil_ptc_parses() {
        let code = PeriodicTangleCode::parse(TREFOIL_PTC).unwrap();
        assert_eq!(code.period(), 3);
        let full = code.quotient(0).unwrap();
        assert_eq!(full.skeleton().num_crossings(), 3);
        assert_eq!(full.skeleton().num_components(), 1);
        assert_eq!(code.crossing_counts(), (3, 0));
        assert_eq!(code.lk_with_axis(), 2);
        let q = code.quotient(1).unwrap();
        assert_eq!(q.copies(), 1);
        assert_eq!(q.skeleton().num_crossings(), 1);
        assert_eq!(code.quotient(2), Err(DiagramError::LevelOutOfRange { v: 2, n: 1 }));
    }

    #[test]
    fn json_round_trip() {
        let code = PeriodicTangleCode::parse(TREFOIL_PTC).unwrap();
        let again = PeriodicTangleCode::parse(&code.to_json()).unwrap();
        assert_eq!(code, again);
    }

    #[test]
    fn unknot_through_axis() {
        let text = r#"{"p":3,"n":1,"tangle":{"crossings":[],"arcs":[[["w",0],["e",0]]],
            "west":[0],"east":[0],"orient":[1]}}"#;
        let code = PeriodicTangleCode::parse(text).unwrap();
        let d = code.quotient(0).unwrap();
        assert_eq!(d.skeleton().loops(), &[1]);
        assert_eq!(code.lk_with_axis(), 1);
    }

    #[test]
    fn west_port_glued_twice() {
        let text = r#"{"p":3,"n":1,"tangle":{"crossings":[],"arcs":[[["w",0],["e",0]],[["w",1],["e",1]]],
            "west":[0,1],"east":[0,0],"orient":[1,1]}}"#;
        assert!(matches!(PeriodicTangleCode::parse(text), Err(DiagramError::BadGluing(_))));
        let twice = r#"{"p":3,"n":1,"tangle":{"crossings":[],"arcs":[[["w",0],["e",0]],[["w",0],["e",0]]],
            "west":[0],"east":[0],"orient":[1]}}"#;
        assert!(matches!(PeriodicTangleCode::parse(twice), Err(DiagramError::BadGluing(_))));
    }

    #[test]
    fn ptc_validation_errors() {
        let dangling = r#"{"p":3,"n":1,"tangle":{"crossings":[],"arcs":[],
            "west":[0],"east":[0],"orient":[1]}}"#;
        assert!(matches!(PeriodicTangleCode::parse(dangling), Err(DiagramError::DanglingPort(_))));
        let backwards = r#"{"p":3,"n":1,"tangle":{"crossings":[],"arcs":[[["e",0],["w",0]]],
            "west":[0],"east":[0],"orient":[1]}}"#;
        assert!(matches!(
            PeriodicTangleCode::parse(backwards),
            Err(DiagramError::OrientationMismatch(_))
        ));
        let even = TREFOIL_PTC.replace("\"p\":3", "\"p\":2");
        assert_eq!(PeriodicTangleCode::parse(&even), Err(DiagramError::NotOddPrime(2)));
        let wrong_sign = TREFOIL_PTC.replace("\"sign\":1", "\"sign\":-1");
        assert!(matches!(
            PeriodicTangleCode::parse(&wrong_sign),
            Err(DiagramError::OrientationMismatch(_))
        ));
        let bad_roles = TREFOIL_PTC.replace(r#"["ui","oo","uo","oi"]"#, r#"["ui","uo","oo","oi"]"#);
        assert!(matches!(
            PeriodicTangleCode::parse(&bad_roles),
            Err(DiagramError::OrientationMismatch(_))
        ));
    }

    #[test]
    fn pd_trefoil() {
        let d = PlanarDiagram::parse(RIGHT_TREFOIL_PD).unwrap();
        assert_eq!(d.num_crossings(), 3);
        assert_eq!(d.crossing_counts(), (3, 0));
        assert_eq!(d.mirror().crossing_counts(), (0, 3));
        assert_eq!(d.skeleton().num_components(), 1);
    }

    #[test]
    fn pd_label_count_checked() {
        let err = PlanarDiagram::parse("X[0,3,1,4]\nX[4,1,5,2]\nX[2,5,3,7]\n").unwrap_err();
        assert!(matches!(err, DiagramError::ArcLabel { count: 1, .. }));
    }

    #[test]
    fn pd_unknot_and_empty() {
        let d = PlanarDiagram::parse("# unknot\nO[1]\n").unwrap();
        assert_eq!(d.num_crossings(), 0);
        assert_eq!(d.skeleton().num_components(), 1);
        assert_eq!(d.crossing_counts(), (0, 0));
    }

    #[test]
    fn pd_sequential_matches_under_in() {
        // left trefoil with labels increasing along the orientation
        let text = "X[5,2,0,3]\nX[3,0,4,1]\nX[1,4,2,5]\n";
        let a = PlanarDiagram::parse(text).unwrap();
        let b = PlanarDiagram::parse(&format!("orientation: sequential\n{text}")).unwrap();
        assert_eq!(a.crossing_counts(), (0, 3));
        assert_eq!(a, b);
    }

    #[test]
    fn one_liner_pd() {
        let d = PlanarDiagram::parse("PD[X[0,3,1,4], X[4,1,5,2], X[2,5,3,0]]").unwrap();
        assert_eq!(d.num_crossings(), 3);
    }

    #[test]
    fn skeleton_mirror_is_involution() {
        let code = PeriodicTangleCode::parse(TREFOIL_PTC).unwrap();
        let s = code.quotient(0).unwrap().skeleton().clone();
        assert_eq!(s.mirror().mirror(), s);
        assert_eq!(s.mirror().crossing_counts(), (0, 3));
    }

    #[test]
    fn pd_export_round_trip() {
        let code = PeriodicTangleCode::parse(TREFOIL_PTC).unwrap();
        let pd = code.quotient(0).unwrap().skeleton().to_planar().unwrap();
        assert_eq!(pd.crossing_counts(), (3, 0));
        let again = PlanarDiagram::parse(&pd.to_text()).unwrap();
        assert_eq!(again, pd);
    }

    #[test]
    fn braid_builder_matches_hand_code() {
        let t = Tangle::braid(2, &[(0, true)], &[1, 1]).unwrap();
        let hand = PeriodicTangleCode::parse(TREFOIL_PTC).unwrap();
        let code = PeriodicTangleCode::new(3, 1, t).unwrap();
        assert_eq!(
            code.quotient(0).unwrap().skeleton().crossing_counts(),
            hand.quotient(0).unwrap().skeleton().crossing_counts()
        );
        assert_eq!(code.lk_with_axis(), 2);
    }

    #[test]
    fn antiparallel_braid_signs() {
        // strands in opposite directions flip the sign of a positive generator
        let t = Tangle::braid(2, &[(0, true)], &[1, -1]);
        assert!(t.is_err(), "orientation must be constant on permutation cycles");
        let t = Tangle::braid(2, &[(0, true), (0, true)], &[1, -1]).unwrap();
        assert_eq!(t.crossing_counts(), (0, 2));
        let t = Tangle::braid(2, &[(0, true), (0, true)], &[1, 1]).unwrap();
        assert_eq!(t.crossing_counts(), (2, 0));
        let t = Tangle::braid(3, &[(0, true), (1, true)], &[-1, -1, -1]).unwrap();
        assert_eq!(t.crossing_counts(), (2, 0));
    }

    #[test]
    fn trivial_tangle_closure() {
        let code = PeriodicTangleCode::new(3, 1, Tangle::trivial(2, 1)).unwrap();
        let d = code.quotient(0).unwrap();
        let mut w = d.skeleton().component_windings();
        w.sort();
        assert_eq!(w, vec![0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(code.lk_with_axis(), 1);
        let q = code.quotient(1).unwrap();
        assert_eq!(q.skeleton().loops().len(), 3);
    }

    #[test]
    fn oriented_resolution_of_trefoil_orbit() {
        let code = PeriodicTangleCode::parse(TREFOIL_PTC).unwrap();
        let t0 = code.tangle().oriented_resolution(0).unwrap();
        assert_eq!(t0.num_crossings(), 0);
        let d = code.with_tangle(t0).quotient(0).unwrap();
        assert_eq!(d.skeleton().component_windings(), vec![1, 1]);
    }

    #[test]
    fn switching_changes_sign_only() {
        let code = PeriodicTangleCode::parse(TREFOIL_PTC).unwrap();
        let neg = code.tangle().with_sign(0, Sign::Negative).unwrap();
        assert_eq!(neg.crossing_counts(), (0, 1));
        assert_eq!(neg.with_sign(0, Sign::Positive).unwrap(), *code.tangle());
        assert!(code.tangle().with_sign(3, Sign::Negative).is_err());
    }

    #[test]
    fn component_count_is_seam_independent() {
        let t = Arc::new(Tangle::braid(3, &[(0, true), (1, false)], &[1, 1, 1]).unwrap());
        let base = AnnularDiagram::new(t.clone(), 3).unwrap();
        for seam in 1..3 {
            let other = AnnularDiagram::with_seam(t.clone(), 3, seam).unwrap();
            assert_eq!(other.skeleton().num_components(), base.skeleton().num_components());
            let mut a = other.skeleton().component_windings();
            let mut b = base.skeleton().component_windings();
            a.sort();
            b.sort();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn crossing_total_scales_with_copies() {
        let code = PeriodicTangleCode::new(3, 2, Tangle::braid(2, &[(0, true)], &[1, 1]).unwrap()).unwrap();
        for v in 0..=2 {
            let q = code.quotient(v).unwrap();
            let (a, b) = q.crossing_counts();
            assert_eq!(a + b, 3usize.pow(2 - v));
        }
        assert_eq!(code.quotient(1).unwrap().copies(), 3);
    }
}
