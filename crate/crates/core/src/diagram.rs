//! Knot diagrams on the 2-sphere as combinatorial maps.
//!
//! Every crossing has four ports numbered `0..4` counterclockwise. The strand
//! through a crossing uses opposite ports (`0-2` or `1-3`); `over02` records
//! whether the `0-2` pass is the over strand. Arcs are a perfect matching on
//! ports, stored as the involution `links` over darts `4 * crossing + port`.
//!
//! Faces are the orbits of "follow the arc, then turn to the next port
//! counterclockwise"; a walk along a face keeps the face on its right.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::gauss_code::{GaussCode, GaussError, Pass};

/// One side of one arc end: a (crossing, port) pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart(pub(crate) u32);

impl Dart {
    pub fn new(crossing: usize, port: u8) -> Dart {
        debug_assert!(port < 4);
        Dart((crossing as u32) << 2 | port as u32)
    }

    pub fn crossing(self) -> usize {
        (self.0 >> 2) as usize
    }

    pub fn port(self) -> u8 {
        (self.0 & 3) as u8
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// The port across the crossing on the same strand.
    pub fn opposite(self) -> Dart {
        Dart(self.0 ^ 2)
    }

    /// The next port counterclockwise around the same crossing.
    pub fn next_ccw(self) -> Dart {
        Dart((self.0 & !3) | ((self.0 + 1) & 3))
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.crossing(), self.port())
    }
}

/// A pass of the strand through a crossing, entering at `entry` and leaving
/// at the opposite port.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Passage {
    pub crossing: u32,
    pub entry: u8,
}

impl Passage {
    pub fn new(crossing: usize, entry: u8) -> Passage {
        Passage {
            crossing: crossing as u32,
            entry,
        }
    }

    pub fn entry_dart(self) -> Dart {
        Dart::new(self.crossing as usize, self.entry)
    }

    pub fn exit_dart(self) -> Dart {
        Dart::new(self.crossing as usize, self.entry ^ 2)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error(transparent)]
    Gauss(#[from] GaussError),
    #[error("Gauss code is not realizable on the sphere: {0}")]
    NonRealizable(String),
    #[error("dart {0} does not belong to the diagram")]
    InvalidDart(Dart),
    #[error("diagram has more than one component")]
    MultiComponent,
    #[error("diagram is not spherical: {faces} faces for {crossings} crossings")]
    NotSpherical { crossings: usize, faces: usize },
    #[error("malformed diagram: {0}")]
    Malformed(String),
}

/// A face of the diagram as the cyclic sequence of darts at which its
/// boundary walk arrives at a crossing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<Dart>,
}

impl Face {
    pub fn degree(&self) -> usize {
        self.darts.len()
    }
}

/// A knot diagram on S². The zero-crossing value is the trivial diagram D₀.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PlanarDiagram {
    links: Vec<u32>,
    over02: Vec<bool>,
}

impl fmt::Debug for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("PlanarDiagram(D0)");
        }
        write!(f, "PlanarDiagram[")?;
        for c in 0..self.crossing_count() {
            if c > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{}{}:", c, if self.over02[c] { "o" } else { "u" })?;
            for p in 0..4 {
                write!(f, " {}", self.link(Dart::new(c, p)))?;
            }
        }
        f.write_str("]")
    }
}

impl PlanarDiagram {
    /// D₀, a simple closed curve.
    pub fn trivial() -> PlanarDiagram {
        PlanarDiagram {
            links: Vec::new(),
            over02: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.over02.is_empty()
    }

    pub fn crossing_count(&self) -> usize {
        self.over02.len()
    }

    pub fn dart_count(&self) -> usize {
        self.links.len()
    }

    pub fn darts(&self) -> impl Iterator<Item = Dart> {
        (0..self.links.len() as u32).map(Dart)
    }

    /// The dart at the other end of the arc leaving `d`.
    pub fn link(&self, d: Dart) -> Dart {
        Dart(self.links[d.index()])
    }

    /// Whether the `0-2` pass of crossing `c` is the over strand.
    pub fn over02(&self, c: usize) -> bool {
        self.over02[c]
    }

    /// Whether the strand through `d` passes over at its crossing.
    pub fn is_over(&self, d: Dart) -> bool {
        self.over02[d.crossing()] == (d.port() & 1 == 0)
    }

    /// Crossing signs (+1 or -1) for the orientation of `traversal`, with
    /// ports counterclockwise as seen from above.
    pub fn crossing_signs(&self) -> Vec<i8> {
        let n = self.crossing_count();
        let mut over_entry = vec![0u8; n];
        let mut under_entry = vec![0u8; n];
        for p in self.traversal() {
            let c = p.crossing as usize;
            if self.is_over(p.entry_dart()) {
                over_entry[c] = p.entry;
            } else {
                under_entry[c] = p.entry;
            }
        }
        (0..n)
            .map(|c| if under_entry[c] == (over_entry[c] + 1) & 3 { 1 } else { -1 })
            .collect()
    }

    pub fn contains(&self, d: Dart) -> bool {
        d.index() < self.links.len()
    }

    /// Builds a diagram from a closed strand traversal; arcs join each exit
    /// port to the next entry port.
    pub(crate) fn from_passages(passages: &[Passage], over02: Vec<bool>) -> PlanarDiagram {
        let n = over02.len();
        debug_assert_eq!(passages.len(), 2 * n);
        let mut links = vec![u32::MAX; 4 * n];
        let m = passages.len();
        for t in 0..m {
            let exit = passages[t].exit_dart();
            let entry = passages[(t + 1) % m].entry_dart();
            links[exit.index()] = entry.0;
            links[entry.index()] = exit.0;
        }
        PlanarDiagram { links, over02 }
    }

    /// Builds a diagram from raw links and over flags, checking every
    /// invariant.
    pub fn from_raw(links: Vec<u32>, over02: Vec<bool>) -> Result<PlanarDiagram, DiagramError> {
        if links.len() != 4 * over02.len() {
            return Err(DiagramError::Malformed(
                "link table must have four entries per crossing".into(),
            ));
        }
        let d = PlanarDiagram { links, over02 };
        d.check_invariants()?;
        Ok(d)
    }

    /// The strand traversal starting by entering crossing 0 at port 0.
    pub(crate) fn traversal(&self) -> Vec<Passage> {
        self.traversal_from(Dart(0))
    }

    pub(crate) fn traversal_from(&self, start: Dart) -> Vec<Passage> {
        let mut out = Vec::with_capacity(2 * self.crossing_count());
        if self.is_trivial() {
            return out;
        }
        let mut cur = start;
        loop {
            out.push(Passage::new(cur.crossing(), cur.port()));
            cur = self.link(cur.opposite());
            if cur == start || out.len() > self.links.len() {
                break;
            }
        }
        out
    }

    /// Face boundaries; D₀ has two formal faces with no darts.
    pub fn faces(&self) -> Vec<Face> {
        if self.is_trivial() {
            return vec![Face { darts: vec![] }, Face { darts: vec![] }];
        }
        let mut seen = vec![false; self.links.len()];
        let mut faces = Vec::new();
        for start in 0..self.links.len() {
            if seen[start] {
                continue;
            }
            let mut darts = Vec::new();
            let mut d = Dart(start as u32);
            while !seen[d.index()] {
                seen[d.index()] = true;
                darts.push(d);
                d = self.face_next(d);
            }
            faces.push(Face { darts });
        }
        faces
    }

    /// Next arrival dart on the face walk through `d`.
    #[inline]
    pub fn face_next(&self, d: Dart) -> Dart {
        self.link(d.next_ccw())
    }

    pub fn face_count(&self) -> usize {
        if self.is_trivial() {
            return 2;
        }
        let mut seen = vec![false; self.links.len()];
        let mut count = 0;
        for start in 0..self.links.len() {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut d = Dart(start as u32);
            while !seen[d.index()] {
                seen[d.index()] = true;
                d = self.face_next(d);
            }
        }
        count
    }

    /// Matching, single component and `F = n + 2`.
    pub fn check_invariants(&self) -> Result<(), DiagramError> {
        let n = self.crossing_count();
        for (i, &l) in self.links.iter().enumerate() {
            if l as usize >= self.links.len()
                || l as usize == i
                || self.links[l as usize] as usize != i
            {
                return Err(DiagramError::Malformed(format!(
                    "port {} is not matched by exactly one arc",
                    Dart(i as u32)
                )));
            }
        }
        if !self.is_trivial() && self.traversal().len() != 2 * n {
            return Err(DiagramError::MultiComponent);
        }
        let faces = self.face_count();
        if faces != n + 2 {
            return Err(DiagramError::NotSpherical {
                crossings: n,
                faces,
            });
        }
        Ok(())
    }

    /// The Gauss code read along the strand entering at `start`.
    pub fn to_gauss(&self, start: Dart) -> GaussCode {
        if self.is_trivial() {
            return GaussCode::empty();
        }
        let entries = self.traversal_from(start).into_iter().map(|p| {
            let pass = if self.is_over(p.entry_dart()) {
                Pass::Over
            } else {
                Pass::Under
            };
            (p.crossing as u64 + 1, pass)
        });
        GaussCode::from_entries(entries).expect("traversal of a valid diagram is a valid code")
    }

    /// Reflection of the sphere: rotation order reversed at every crossing,
    /// with the same strand on top at each crossing.
    pub fn mirror(&self) -> PlanarDiagram {
        let flip = |d: u32| (d & !3) | ((4 - (d & 3)) & 3);
        let mut links = vec![0; self.links.len()];
        for (i, &l) in self.links.iter().enumerate() {
            links[flip(i as u32) as usize] = flip(l);
        }
        PlanarDiagram {
            links,
            over02: self.over02.clone(),
        }
    }

    /// Connected sum: cuts the arc at `a1` and the arc at `a2` and joins
    /// `a1` to the far end of the second arc and `a2` to the far end of the
    /// first.
    pub fn connect_sum(
        &self,
        a1: Dart,
        other: &PlanarDiagram,
        a2: Dart,
    ) -> Result<PlanarDiagram, DiagramError> {
        if self.is_trivial() {
            return Ok(other.clone());
        }
        if other.is_trivial() {
            return Ok(self.clone());
        }
        if !self.contains(a1) {
            return Err(DiagramError::InvalidDart(a1));
        }
        if !other.contains(a2) {
            return Err(DiagramError::InvalidDart(a2));
        }
        let shift = self.links.len() as u32;
        let mut links = self.links.clone();
        links.extend(other.links.iter().map(|&l| l + shift));
        let mut over02 = self.over02.clone();
        over02.extend_from_slice(&other.over02);
        let x1 = a1.0;
        let y1 = self.links[a1.index()];
        let x2 = a2.0 + shift;
        let y2 = other.links[a2.index()] + shift;
        links[x1 as usize] = y2;
        links[y2 as usize] = x1;
        links[x2 as usize] = y1;
        links[y1 as usize] = x2;
        let d = PlanarDiagram { links, over02 };
        debug_assert!(d.check_invariants().is_ok());
        Ok(d)
    }

    /// Relabels crossings and rotates ports; `perm[c]` is the new index of
    /// crossing `c` and `rot[c]` is added to each of its ports.
    pub fn relabel(&self, perm: &[usize], rot: &[u8]) -> PlanarDiagram {
        let n = self.crossing_count();
        let map = |d: u32| -> u32 {
            let c = (d >> 2) as usize;
            ((perm[c] as u32) << 2) | ((d + rot[c] as u32) & 3)
        };
        let mut links = vec![0; 4 * n];
        let mut over02 = vec![false; n];
        for c in 0..n {
            over02[perm[c]] = self.over02[c] != (rot[c] & 1 == 1);
        }
        for (i, &l) in self.links.iter().enumerate() {
            links[map(i as u32) as usize] = map(l);
        }
        PlanarDiagram { links, over02 }
    }

    /// Complete invariant for orientation-preserving map isomorphism.
    pub fn canonical_code(&self) -> CanonicalCode {
        CANON_SCRATCH.with(|s| {
            let mut s = s.borrow_mut();
            self.canonical_sequence(&mut s);
            CanonicalCode::encode(self.crossing_count(), &s.best)
        })
    }

    /// The diagram relabelled into canonical order.
    pub fn canonical_form(&self) -> PlanarDiagram {
        self.canonical_code().decode()
    }

    /// Minimum over all starting darts on an over strand of the
    /// breadth-first relabelling sequence `(over, m0, m1, m2, m3)` per
    /// crossing, comparing lexicographically with early abort.
    fn canonical_sequence(&self, s: &mut CanonScratch) {
        let n = self.crossing_count();
        s.best.clear();
        if n == 0 {
            return;
        }
        s.label.clear();
        s.label.resize(n, u32::MAX);
        s.offset.clear();
        s.offset.resize(n, 0);
        s.order.clear();
        let mut have_best = false;
        for c0 in 0..n {
            for p0 in 0..4u8 {
                if self.over02[c0] != (p0 & 1 == 0) {
                    continue;
                }
                for &c in &s.order {
                    s.label[c as usize] = u32::MAX;
                }
                s.order.clear();
                s.cur.clear();
                s.label[c0] = 0;
                s.offset[c0] = p0;
                s.order.push(c0 as u32);
                let mut state = if have_best {
                    Ordering::Equal
                } else {
                    Ordering::Less
                };
                let mut head = 0;
                let mut aborted = false;
                'bfs: while head < s.order.len() {
                    let c = s.order[head] as usize;
                    head += 1;
                    let r = s.offset[c];
                    let over_rel = (self.over02[c] != (r & 1 == 1)) as u32;
                    let mut vals = [over_rel, 0, 0, 0, 0];
                    for q in 0..4u8 {
                        let d = self.links[(c << 2) | ((q + r) & 3) as usize];
                        let c2 = (d >> 2) as usize;
                        let p2 = (d & 3) as u8;
                        if s.label[c2] == u32::MAX {
                            s.label[c2] = s.order.len() as u32;
                            s.offset[c2] = p2;
                            s.order.push(c2 as u32);
                        }
                        vals[q as usize + 1] =
                            (s.label[c2] << 2) | (p2.wrapping_sub(s.offset[c2]) & 3) as u32;
                    }
                    for v in vals {
                        let pos = s.cur.len();
                        s.cur.push(v);
                        if state == Ordering::Equal {
                            match v.cmp(&s.best[pos]) {
                                Ordering::Less => state = Ordering::Less,
                                Ordering::Greater => {
                                    aborted = true;
                                    break 'bfs;
                                }
                                Ordering::Equal => {}
                            }
                        }
                    }
                }
                if !aborted && state == Ordering::Less {
                    std::mem::swap(&mut s.best, &mut s.cur);
                    have_best = true;
                }
            }
        }
        for &c in &s.order {
            s.label[c as usize] = u32::MAX;
        }
    }
}

#[derive(Default)]
struct CanonScratch {
    best: Vec<u32>,
    cur: Vec<u32>,
    label: Vec<u32>,
    offset: Vec<u8>,
    order: Vec<u32>,
}

thread_local! {
    static CANON_SCRATCH: std::cell::RefCell<CanonScratch> = std::cell::RefCell::new(CanonScratch::default());
}

/// Canonical byte encoding of a diagram: crossing count (u16, big endian),
/// the matched dart of every port in canonical order (one byte each below 64
/// crossings, two bytes otherwise), then the packed over flags. D₀ encodes
/// as `[0, 0]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(Box<[u8]>);

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", self.hex())
    }
}

impl CanonicalCode {
    fn encode(n: usize, seq: &[u32]) -> CanonicalCode {
        assert!(n < 1 << 14, "diagram too large for canonical encoding");
        let wide = n >= 64;
        let mut out = Vec::with_capacity(2 + 4 * n * (1 + wide as usize) + n.div_ceil(8));
        out.extend_from_slice(&(n as u16).to_be_bytes());
        for k in 0..n {
            for q in 0..4 {
                let v = seq[5 * k + 1 + q];
                if wide {
                    out.extend_from_slice(&(v as u16).to_be_bytes());
                } else {
                    out.push(v as u8);
                }
            }
        }
        let mut byte = 0u8;
        for k in 0..n {
            if seq[5 * k] == 1 {
                byte |= 1 << (k % 8);
            }
            if k % 8 == 7 {
                out.push(byte);
                byte = 0;
            }
        }
        if !n.is_multiple_of(8) {
            out.push(byte);
        }
        CanonicalCode(out.into_boxed_slice())
    }

    /// The sentinel code of D₀.
    pub fn trivial() -> CanonicalCode {
        CanonicalCode(Box::new([0, 0]))
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<CanonicalCode, DiagramError> {
        let code = CanonicalCode(bytes.into());
        let n = code.crossing_count();
        let wide = n >= 64;
        let expected = 2 + 4 * n * (1 + wide as usize) + n.div_ceil(8);
        if bytes.len() < 2 || bytes.len() != expected {
            return Err(DiagramError::Malformed("bad canonical code length".into()));
        }
        let d = code.decode_unchecked();
        d.check_invariants()?;
        Ok(code)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn into_boxed(self) -> Box<[u8]> {
        self.0
    }

    pub(crate) fn from_boxed(b: Box<[u8]>) -> CanonicalCode {
        CanonicalCode(b)
    }

    pub fn crossing_count(&self) -> usize {
        u16::from_be_bytes([self.0[0], self.0[1]]) as usize
    }

    pub fn is_trivial(&self) -> bool {
        self.crossing_count() == 0
    }

    pub fn hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// 64-bit FNV-1a digest, for display.
    pub fn digest(&self) -> u64 {
        let mut h: u64 = 0xcbf29ce484222325;
        for &b in self.0.iter() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        h
    }

    /// The diagram in canonical labelling.
    pub fn decode(&self) -> PlanarDiagram {
        self.decode_unchecked()
    }

    fn decode_unchecked(&self) -> PlanarDiagram {
        decode_bytes(&self.0)
    }
}

pub(crate) fn decode_bytes(bytes: &[u8]) -> PlanarDiagram {
    let n = u16::from_be_bytes([bytes[0], bytes[1]]) as usize;
    let wide = n >= 64;
    let mut links = Vec::with_capacity(4 * n);
    let mut pos = 2;
    for _ in 0..4 * n {
        if wide {
            links.push(u16::from_be_bytes([bytes[pos], bytes[pos + 1]]) as u32);
            pos += 2;
        } else {
            links.push(bytes[pos] as u32);
            pos += 1;
        }
    }
    let over02 = (0..n)
        .map(|k| bytes[pos + k / 8] >> (k % 8) & 1 == 1)
        .collect();
    PlanarDiagram { links, over02 }
}

/// A Gauss code realized on the sphere.
#[derive(Clone, Debug)]
pub struct Realization {
    /// The embedding with the smallest canonical code. Crossing `i` carries
    /// label `i + 1` of the input code, and the traversal entering crossing 0
    /// at port 0 reads the input code.
    pub diagram: PlanarDiagram,
    /// Number of canonically distinct spherical embeddings.
    pub embedding_count: usize,
    /// False when the code has too many independent summands for exhaustive
    /// enumeration; the count and the minimum are then over a fixed subset.
    pub count_exact: bool,
}

/// Above this many independent flip choices only a deterministic subset of
/// embeddings is enumerated.
const MAX_FREE_FLIPS: usize = 12;

/// Per-crossing interleaving data solving the planarity conditions of a
/// Gauss code. The solution set is an affine space with one free bit per
/// connected component of the interlacement graph.
struct PlanarSolution {
    base: Vec<bool>,
    component: Vec<usize>,
    components: usize,
}

fn solve_planarity(code: &GaussCode) -> Result<PlanarSolution, DiagramError> {
    let n = code.crossing_count();
    if !code.parity_check() {
        return Err(DiagramError::NonRealizable(
            "a crossing has an odd number of entries between its occurrences".into(),
        ));
    }
    let occ = code.occurrences();
    let words = n.div_ceil(64).max(1);
    let entries = code.entries();
    let mut rows = vec![0u64; n * words];
    for a in 0..n {
        let (s, e) = occ[a];
        for entry in &entries[s + 1..e] {
            let b = entry.label as usize - 1;
            rows[a * words + b / 64] ^= 1 << (b % 64);
        }
    }
    let adjacent = |a: usize, b: usize| rows[a * words + b / 64] >> (b % 64) & 1 == 1;
    let common_odd = |a: usize, b: usize| {
        let mut acc = 0u32;
        for w in 0..words {
            acc += (rows[a * words + w] & rows[b * words + w]).count_ones();
        }
        acc % 2 == 1
    };
    for a in 0..n {
        for b in a + 1..n {
            if !adjacent(a, b) && common_odd(a, b) {
                return Err(DiagramError::NonRealizable(format!(
                    "non-interlaced crossings {} and {} share an odd number of interlaced crossings",
                    a + 1,
                    b + 1
                )));
            }
        }
    }
    let mut base = vec![false; n];
    let mut component = vec![usize::MAX; n];
    let mut components = 0;
    let mut stack = Vec::new();
    for root in 0..n {
        if component[root] != usize::MAX {
            continue;
        }
        component[root] = components;
        stack.push(root);
        while let Some(a) = stack.pop() {
            for b in 0..n {
                if b == a || !adjacent(a, b) {
                    continue;
                }
                // Interlaced pair: the flags differ iff the common
                // interlacing count is even.
                let want = base[a] ^ !common_odd(a, b);
                if component[b] == usize::MAX {
                    component[b] = components;
                    base[b] = want;
                    stack.push(b);
                } else if base[b] != want {
                    return Err(DiagramError::NonRealizable(format!(
                        "interlacement constraints around crossings {} and {} are inconsistent",
                        a + 1,
                        b + 1
                    )));
                }
            }
        }
        components += 1;
    }
    Ok(PlanarSolution {
        base,
        component,
        components,
    })
}

/// Builds the rotation system selected by one solution of the planarity
/// conditions: the second pass of crossing `a` enters at port 1 exactly
/// when the flag of `a` equals the parity of its first position.
fn embed_with(code: &GaussCode, flags: &[bool]) -> PlanarDiagram {
    let n = code.crossing_count();
    let occ = code.occurrences();
    let mut over02 = vec![false; n];
    let passages: Vec<Passage> = code
        .entries()
        .iter()
        .enumerate()
        .map(|(pos, e)| {
            let a = e.label as usize - 1;
            let first = occ[a].0;
            if pos == first {
                over02[a] = e.pass == Pass::Over;
                Passage::new(a, 0)
            } else {
                let entry = if flags[a] == (first % 2 == 1) { 1 } else { 3 };
                Passage::new(a, entry)
            }
        })
        .collect();
    PlanarDiagram::from_passages(&passages, over02)
}

/// Every canonically distinct spherical embedding of `code`, sorted by
/// canonical code, together with whether the enumeration was exhaustive.
pub fn embeddings(code: &GaussCode) -> Result<(Vec<PlanarDiagram>, bool), DiagramError> {
    if code.is_empty() {
        return Ok((vec![PlanarDiagram::trivial()], true));
    }
    let sol = solve_planarity(code)?;
    let free = sol.components.min(MAX_FREE_FLIPS);
    let exact = sol.components <= MAX_FREE_FLIPS;
    let mut found: Vec<(CanonicalCode, PlanarDiagram)> = Vec::new();
    let mut flags = vec![false; sol.base.len()];
    for mask in 0u64..(1u64 << free) {
        for (a, flag) in flags.iter_mut().enumerate() {
            let comp = sol.component[a];
            let flip = comp < free && mask >> comp & 1 == 1;
            *flag = sol.base[a] ^ flip;
        }
        let d = embed_with(code, &flags);
        let faces = d.face_count();
        if faces != d.crossing_count() + 2 {
            return Err(DiagramError::NotSpherical {
                crossings: d.crossing_count(),
                faces,
            });
        }
        found.push((d.canonical_code(), d));
    }
    found.sort_by(|a, b| a.0.cmp(&b.0));
    found.dedup_by(|a, b| a.0 == b.0);
    Ok((found.into_iter().map(|(_, d)| d).collect(), exact))
}

/// Realizes a Gauss code as a diagram on S².
pub fn realize(code: &GaussCode) -> Result<Realization, DiagramError> {
    let (mut all, exact) = embeddings(code)?;
    let embedding_count = all.len();
    Ok(Realization {
        diagram: all.swap_remove(0),
        embedding_count,
        count_exact: exact,
    })
}

/// See [`PlanarDiagram::to_gauss`].
pub fn to_gauss(d: &PlanarDiagram, start: Dart) -> GaussCode {
    d.to_gauss(start)
}

/// See [`PlanarDiagram::faces`].
pub fn faces(d: &PlanarDiagram) -> Vec<Face> {
    d.faces()
}

/// See [`PlanarDiagram::canonical_code`].
pub fn canonical_code(d: &PlanarDiagram) -> CanonicalCode {
    d.canonical_code()
}

/// See [`PlanarDiagram::mirror`].
pub fn mirror(d: &PlanarDiagram) -> PlanarDiagram {
    d.mirror()
}

/// See [`PlanarDiagram::connect_sum`].
pub fn connect_sum(
    d1: &PlanarDiagram,
    a1: Dart,
    d2: &PlanarDiagram,
    a2: Dart,
) -> Result<PlanarDiagram, DiagramError> {
    d1.connect_sum(a1, d2, a2)
}
