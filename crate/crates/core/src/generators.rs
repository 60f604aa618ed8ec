//! Constructions of candidate hard unknot diagrams: braid closures with
//! flype blocks, and the doubling-and-clasping construction generalizing
//! the Freedman-He-Wang diagram.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::diagram::{Dart, DiagramError, Passage, PlanarDiagram};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("invalid braid word: {0}")]
    InvalidBraid(String),
    #[error("closure has more than one component")]
    MultiComponent,
    #[error("braid words have different strand counts")]
    StrandMismatch,
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("construction is not spherical for these parameters")]
    NotSpherical,
}

/// A braid word on `strands` strands. Letter `i > 0` is σᵢ, `-i` its
/// inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<BraidWord, GeneratorError> {
        if strands < 2 {
            return Err(GeneratorError::InvalidBraid("at least two strands needed".into()));
        }
        if let Some(&l) = letters
            .iter()
            .find(|&&l| l == 0 || l.unsigned_abs() as usize >= strands)
        {
            return Err(GeneratorError::InvalidBraid(format!(
                "letter {l} out of range for {strands} strands"
            )));
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Concatenation.
    pub fn then(&self, other: &BraidWord) -> Result<BraidWord, GeneratorError> {
        if self.strands != other.strands {
            return Err(GeneratorError::StrandMismatch);
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    pub fn power(&self, k: usize) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.repeat(k),
        }
    }

    /// `perm[i]` is the bottom position of the strand starting at top
    /// position `i` (0-based).
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            for p in at.iter_mut() {
                if *p == i {
                    *p = i + 1;
                } else if *p == i + 1 {
                    *p = i;
                }
            }
        }
        at
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", words.join(" "))
    }
}

/// Parses space-separated signed letters; the strand count is given
/// separately.
pub fn parse_braid(strands: usize, text: &str) -> Result<BraidWord, GeneratorError> {
    let letters = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            i32::from_str(t).map_err(|_| GeneratorError::InvalidBraid(format!("bad letter {t:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    BraidWord::new(strands, letters)
}

pub fn braid_inverse(b: &BraidWord) -> BraidWord {
    BraidWord {
        strands: b.strands,
        letters: b.letters.iter().rev().map(|l| -l).collect(),
    }
}

/// The k-strand flype block: `[k-1, ..., 1, k-1, ..., 2, ..., k-1]`.
pub fn half_twist_flype(k: usize) -> BraidWord {
    assert!(k >= 2, "flype needs at least two strands");
    let mut letters = Vec::with_capacity(k * (k - 1) / 2);
    for j in 1..k {
        letters.extend((j..k).rev().map(|i| i as i32));
    }
    BraidWord {
        strands: k,
        letters,
    }
}

/// Trace closure. Strands run downward; at σᵢ the strand at position `i`
/// passes from the north-west port 0 to the south-east port 2 and is over
/// for positive letters, the other strand passes from north-east port 3
/// to south-west port 1.
pub fn braid_closure(b: &BraidWord) -> Result<PlanarDiagram, GeneratorError> {
    let perm = b.permutation();
    let mut p = perm[0];
    let mut cycle = 1;
    while p != 0 {
        p = perm[p];
        cycle += 1;
    }
    if cycle != b.strands {
        return Err(GeneratorError::MultiComponent);
    }
    if b.letters.is_empty() {
        return Ok(PlanarDiagram::trivial());
    }
    let mut passages = Vec::with_capacity(2 * b.letters.len());
    let mut pos = 0usize;
    loop {
        for (j, &l) in b.letters.iter().enumerate() {
            let i = l.unsigned_abs() as usize - 1;
            if pos == i {
                passages.push(Passage::new(j, 0));
                pos = i + 1;
            } else if pos == i + 1 {
                passages.push(Passage::new(j, 3));
                pos = i;
            }
        }
        if pos == 0 {
            break;
        }
    }
    let over02 = b.letters.iter().map(|&l| l > 0).collect();
    let d = PlanarDiagram::from_passages(&passages, over02);
    d.check_invariants()?;
    Ok(d)
}

/// Default braid `(σ₁σ₂⁻¹σ₃σ₂⁻¹)⁴`.
pub fn default_goeritz_braid() -> BraidWord {
    BraidWord {
        strands: 4,
        letters: vec![1, -2, 3, -2],
    }
    .power(4)
}

/// Closure of `B · Δ1 · B⁻¹ · Δ2`.
pub fn goeritz_generalized(
    b: &BraidWord,
    delta1: &BraidWord,
    delta2: &BraidWord,
) -> Result<PlanarDiagram, GeneratorError> {
    let word = b.then(delta1)?.then(&braid_inverse(b))?.then(delta2)?;
    braid_closure(&word)
}

/// The default word `B · Δ1 · B⁻¹ · Δ2` with the 4-strand flype and its
/// inverse (44 letters).
pub fn goeritz_default_word() -> BraidWord {
    let flype = half_twist_flype(4);
    let b = default_goeritz_braid();
    b.then(&flype)
        .and_then(|w| w.then(&braid_inverse(&b)))
        .and_then(|w| w.then(&braid_inverse(&flype)))
        .expect("same strand count")
}

/// `goeritz_generalized` with the defaults. The permutation of the word is
/// a commutator and hence even, so its trace closure on four strands is
/// never a knot: this returns `MultiComponent`.
pub fn goeritz_default() -> Result<PlanarDiagram, GeneratorError> {
    braid_closure(&goeritz_default_word())
}

/// Two parallel copies of a knot diagram along the blackboard framing.
///
/// Crossing `c` of the knot becomes crossings `4c + 2r + s`, where row `r`
/// (0 south, 1 north) is a copy of the strand through ports 0 and 2 and
/// column `s` (0 west, 1 east) a copy of the other strand, with port 0 to
/// the west and port 3 to the north.
#[derive(Clone, Debug)]
pub struct DoubledTangle {
    links: Vec<u32>,
    over02: Vec<bool>,
    source_crossings: usize,
}

/// The two copies of port `p` of crossing `c`, in counterclockwise order.
/// Copy 0 is on the left of a strand entering through `p`.
fn sub_dart(c: usize, p: u8, i: usize) -> Dart {
    const SUB: [[(usize, usize); 2]; 4] = [
        [(1, 0), (0, 0)],
        [(0, 0), (0, 1)],
        [(0, 1), (1, 1)],
        [(1, 1), (1, 0)],
    ];
    let (r, s) = SUB[p as usize][i];
    Dart::new(4 * c + 2 * r + s, p)
}

impl DoubledTangle {
    pub fn crossing_count(&self) -> usize {
        self.over02.len()
    }

    /// Number of crossings of the knot that was doubled.
    pub fn source_crossings(&self) -> usize {
        self.source_crossings
    }

    fn link(&self, d: Dart) -> Dart {
        Dart(self.links[d.index()])
    }

    /// Strand traversal entering at `start`, up to its return.
    pub(crate) fn traversal_from(&self, start: Dart) -> Vec<Passage> {
        let mut out = Vec::new();
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

    /// Passage counts of the two components.
    pub fn component_lengths(&self) -> [usize; 2] {
        if self.over02.is_empty() {
            return [0, 0];
        }
        [
            self.traversal_from(sub_dart(0, 0, 0)).len(),
            self.traversal_from(sub_dart(0, 0, 1)).len(),
        ]
    }

    /// Faces of the two-component map (for sphericity checks).
    pub fn face_count(&self) -> usize {
        if self.over02.is_empty() {
            return 3;
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
                d = self.link(d.next_ccw());
            }
        }
        count
    }
}

pub fn double_blackboard(k: &PlanarDiagram) -> DoubledTangle {
    let n = k.crossing_count();
    let mut links = vec![0u32; 16 * n];
    let mut set = |a: Dart, b: Dart| {
        links[a.index()] = b.0;
        links[b.index()] = a.0;
    };
    for c in 0..n {
        for r in 0..2 {
            set(Dart::new(4 * c + 2 * r, 2), Dart::new(4 * c + 2 * r + 1, 0));
        }
        for s in 0..2 {
            set(Dart::new(4 * c + s, 3), Dart::new(4 * c + 2 + s, 1));
        }
    }
    for x in k.darts() {
        let y = k.link(x);
        for i in 0..2 {
            set(
                sub_dart(x.crossing(), x.port(), i),
                sub_dart(y.crossing(), y.port(), 1 - i),
            );
        }
    }
    let over02 = (0..4 * n).map(|q| k.over02(q / 4)).collect();
    DoubledTangle {
        links,
        over02,
        source_crossings: n,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FhwVariant {
    Standard,
    Fake,
}

/// Wiring of the clasp where the free pair of ends wraps around the two
/// stretched strands. The wrapping leg passes clasp crossings 0, 1, 2, 3 in
/// order, entering each at port 0; the stretched strand `S2` passes 1 and 2,
/// `S1` passes 3 and 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Clasp {
    /// Entry port of the stretched strand at each clasp crossing.
    pub stretched_entry: [u8; 4],
    /// Whether the wrapping leg is over at each clasp crossing.
    pub leg_over: [bool; 4],
    /// `S2` passes crossing 2 before 1.
    pub s2_reversed: bool,
    /// `S1` passes crossing 0 before 3.
    pub s1_reversed: bool,
    /// After the second copy, `S1` is traversed before `S2`.
    pub s1_first: bool,
    /// Splice the mirrored copy in the opposite direction.
    pub splice_flip: bool,
}

impl Clasp {
    /// Every wiring, for calibration searches.
    pub fn all() -> impl Iterator<Item = Clasp> {
        (0u32..1 << 12).map(|m| Clasp {
            stretched_entry: [0, 1, 2, 3].map(|i| if m >> i & 1 == 1 { 3 } else { 1 }),
            leg_over: [0, 1, 2, 3].map(|i| m >> (4 + i) & 1 == 1),
            s2_reversed: m >> 8 & 1 == 1,
            s1_reversed: m >> 9 & 1 == 1,
            s1_first: m >> 10 & 1 == 1,
            splice_flip: m >> 11 & 1 == 1,
        })
    }
}

/// Clasp for a cut arc whose end passage is over at a positive crossing
/// or under at a negative one.
pub const CLASP_A: Clasp = Clasp {
    stretched_entry: [1, 3, 1, 3],
    leg_over: [false, false, true, true],
    s2_reversed: false,
    s1_reversed: false,
    s1_first: true,
    splice_flip: true,
};

/// Clasp for the remaining cut arcs; the mirror-image handedness of
/// `CLASP_A`.
pub const CLASP_B: Clasp = Clasp {
    stretched_entry: [1, 3, 1, 3],
    leg_over: [true, true, false, false],
    s2_reversed: false,
    s1_reversed: false,
    s1_first: false,
    splice_flip: true,
};

impl FhwVariant {
    /// The variant produced by cutting the arc that arrives at `cut`:
    /// standard when the arc ends at an over-passage, fake otherwise.
    pub fn of_cut(k: &PlanarDiagram, cut: Dart) -> FhwVariant {
        if k.is_over(cut) {
            FhwVariant::Standard
        } else {
            FhwVariant::Fake
        }
    }
}

/// The clasp whose handedness matches the crossing at the end of the cut
/// arc.
pub fn fhw_clasp(k: &PlanarDiagram, cut: Dart) -> Clasp {
    let positive = k.crossing_signs()[cut.crossing()] > 0;
    if positive == k.is_over(cut) {
        CLASP_A
    } else {
        CLASP_B
    }
}

/// One half of the construction: the doubled knot cut along the arc
/// arriving at `cut`, with the clasp and the stretched strands closed by a
/// cap. Returns the half and a dart of its cap arc.
pub fn fhw_half(k: &PlanarDiagram, cut: Dart, clasp: &Clasp) -> Result<(PlanarDiagram, Dart), GeneratorError> {
    if k.is_trivial() || !k.contains(cut) {
        return Err(DiagramError::InvalidDart(cut).into());
    }
    let doubled = double_blackboard(k);
    let base = doubled.crossing_count();
    let k1 = doubled.traversal_from(sub_dart(cut.crossing(), cut.port(), 0));
    let k2 = doubled.traversal_from(sub_dart(cut.crossing(), cut.port(), 1));
    debug_assert_eq!(k1.len() + k2.len(), 2 * base);
    let c = |i: usize| base + i;
    let mut passages = Vec::with_capacity(2 * base + 8);
    passages.extend_from_slice(&k1);
    passages.extend((0..4).map(|i| Passage::new(c(i), 0)));
    passages.extend(
        k2.iter()
            .rev()
            .map(|p| Passage::new(p.crossing as usize, p.entry ^ 2)),
    );
    let mut s2 = [
        Passage::new(c(1), clasp.stretched_entry[1]),
        Passage::new(c(2), clasp.stretched_entry[2]),
    ];
    if clasp.s2_reversed {
        s2.reverse();
    }
    let mut s1 = [
        Passage::new(c(3), clasp.stretched_entry[3]),
        Passage::new(c(0), clasp.stretched_entry[0]),
    ];
    if clasp.s1_reversed {
        s1.reverse();
    }
    let (first, second) = if clasp.s1_first { (s1, s2) } else { (s2, s1) };
    passages.extend_from_slice(&first);
    passages.extend_from_slice(&second);
    let mut over02 = doubled.over02.clone();
    over02.extend_from_slice(&clasp.leg_over);
    let half = PlanarDiagram::from_passages(&passages, over02);
    if half.check_invariants().is_err() {
        return Err(GeneratorError::NotSpherical);
    }
    Ok((half, second[0].entry_dart()))
}

/// The generalized construction for a given cut arc and clasp wiring.
pub fn fhw_with(k: &PlanarDiagram, cut: Dart, clasp: &Clasp) -> Result<PlanarDiagram, GeneratorError> {
    let (half, cap) = fhw_half(k, cut, clasp)?;
    let mirrored = half.mirror();
    let m = Dart::new(cap.crossing(), (4 - cap.port()) & 3);
    let m = if clasp.splice_flip { mirrored.link(m) } else { m };
    Ok(half.connect_sum(cap, &mirrored, m)?)
}

/// The construction cut at the arc arriving at `cut`, with the matching
/// clasp. The variant is `FhwVariant::of_cut(k, cut)`.
pub fn fhw_at(k: &PlanarDiagram, cut: Dart) -> Result<PlanarDiagram, GeneratorError> {
    if !k.contains(cut) {
        return Err(DiagramError::InvalidDart(cut).into());
    }
    fhw_with(k, cut, &fhw_clasp(k, cut))
}

/// Generalized Freedman-He-Wang diagram of `k` with `8 crs(k) + 8`
/// crossings. Among cut arcs of the requested variant, the one minimizing
/// the canonical code of the result is used.
pub fn fhw_generalized(k: &PlanarDiagram, variant: FhwVariant) -> Result<PlanarDiagram, GeneratorError> {
    let mut best: Option<(crate::diagram::CanonicalCode, PlanarDiagram)> = None;
    let mut last_err = None;
    for cut in k.darts().filter(|&c| FhwVariant::of_cut(k, c) == variant) {
        match fhw_at(k, cut) {
            Ok(d) => {
                let code = d.canonical_code();
                if best.as_ref().is_none_or(|(b, _)| code < *b) {
                    best = Some((code, d));
                }
            }
            Err(e) => last_err = Some(e),
        }
    }
    match best {
        Some((_, d)) => Ok(d),
        None => Err(last_err.unwrap_or(GeneratorError::Diagram(DiagramError::Malformed(
            "the trivial diagram has no arc to cut".into(),
        )))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::tests::{diagram, FIGURE_EIGHT, TREFOIL};

    fn word(k: usize, l: &[i32]) -> BraidWord {
        BraidWord::new(k, l.to_vec()).unwrap()
    }

    #[test]
    fn inverse_and_flype() {
        let f = half_twist_flype(4);
        assert_eq!(f.letters(), &[3, 2, 1, 3, 2, 3]);
        assert_eq!(braid_inverse(&f).letters(), &[-3, -2, -3, -1, -2, -3]);
        assert_eq!(braid_inverse(&braid_inverse(&f)), f);
        assert!(braid_inverse(&word(3, &[])).is_empty());
        assert_eq!(half_twist_flype(2).letters(), &[1]);
        assert_eq!(half_twist_flype(3).letters(), &[2, 1, 2]);
        for k in 2..=8 {
            let f = half_twist_flype(k);
            assert_eq!(f.len(), k * (k - 1) / 2);
            let reversal: Vec<usize> = (0..k).rev().collect();
            assert_eq!(f.permutation(), reversal, "k = {k}");
        }
    }

    #[test]
    fn braid_validation() {
        assert!(BraidWord::new(1, vec![]).is_err());
        assert!(BraidWord::new(3, vec![3]).is_err());
        assert!(BraidWord::new(3, vec![0]).is_err());
        assert_eq!(parse_braid(4, "1 -2 3").unwrap().letters(), &[1, -2, 3]);
    }

    #[test]
    fn closures() {
        let kink = braid_closure(&word(2, &[1])).unwrap();
        assert_eq!(kink.crossing_count(), 1);
        assert_eq!(kink.face_count(), 3);
        assert_eq!(
            braid_closure(&word(2, &[])),
            Err(GeneratorError::MultiComponent)
        );
        let d = braid_closure(&word(4, &[1, 2, 3])).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert!(d.check_invariants().is_ok());
        let trefoil = braid_closure(&word(2, &[1, 1, 1])).unwrap();
        let t = diagram(TREFOIL);
        let code = trefoil.canonical_code();
        assert!(code == t.canonical_code() || code == t.mirror().canonical_code());
        let pz = trefoil.to_gauss(Dart::new(0, 0));
        assert_eq!(pz.len(), 6);
    }

    #[test]
    fn goeritz_template() {
        let w = goeritz_default_word();
        assert_eq!(w.len(), 44);
        assert_eq!(w.permutation(), vec![2, 3, 0, 1]);
        assert_eq!(goeritz_default(), Err(GeneratorError::MultiComponent));
        let two = goeritz_generalized(&word(2, &[1]), &word(2, &[1]), &word(2, &[-1]));
        assert_eq!(two, Err(GeneratorError::MultiComponent));
        let mismatch = goeritz_generalized(&word(3, &[1]), &word(2, &[1]), &word(2, &[-1]));
        assert_eq!(mismatch, Err(GeneratorError::StrandMismatch));
    }

    #[test]
    fn goeritz_on_three_strands() {
        let f = half_twist_flype(3);
        let b = word(3, &[1, -2]);
        let d = goeritz_generalized(&b, &f, &braid_inverse(&f)).unwrap();
        assert_eq!(d.crossing_count(), 2 * 2 + 3 + 3);
        assert!(d.check_invariants().is_ok());
    }

    #[test]
    fn doubling() {
        let d0 = double_blackboard(&PlanarDiagram::trivial());
        assert_eq!(d0.crossing_count(), 0);
        let kink = double_blackboard(&diagram("1 -1"));
        assert_eq!(kink.crossing_count(), 4);
        assert_eq!(kink.component_lengths(), [4, 4]);
        let t = double_blackboard(&diagram(TREFOIL));
        assert_eq!(t.crossing_count(), 12);
        assert_eq!(t.component_lengths(), [12, 12]);
        // Two components: V - E + F = 2 still holds for the connected map.
        assert_eq!(t.face_count(), 12 + 2);
    }

    #[test]
    fn figure_eight_fhw_is_a_valid_diagram() {
        let d = fhw_generalized(&diagram(FIGURE_EIGHT), FhwVariant::Standard).unwrap();
        assert_eq!(d.crossing_count(), 40);
        assert!(d.check_invariants().is_ok());
    }
}
