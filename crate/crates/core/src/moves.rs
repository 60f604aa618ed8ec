//! Reidemeister moves on S².
//!
//! Every move is an edit of the strand traversal: passages are inserted,
//! removed, or swapped, and the arc matching is rebuilt from the new
//! traversal. Sites are addressed by darts of the diagram they were
//! enumerated from. A face is named by any of its arrival darts; the face
//! edge at dart `d` is the arc running from `link(d)` to `d`, with the face
//! on its right.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::diagram::{Dart, Passage, PlanarDiagram};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

/// Writhe sign of a kink crossing; independent of strand orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Chirality {
    Positive,
    Negative,
}

/// Which of the two strands pushed together by an R2 move lies on top.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OnTop {
    First,
    Second,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    R1Up,
    R1Down,
    R2Up,
    R2Down,
    R3,
}

impl MoveKind {
    pub fn crossing_delta(self) -> i8 {
        match self {
            MoveKind::R1Up => 1,
            MoveKind::R1Down => -1,
            MoveKind::R2Up => 2,
            MoveKind::R2Down => -2,
            MoveKind::R3 => 0,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            MoveKind::R1Up => "R1+",
            MoveKind::R1Down => "R1-",
            MoveKind::R2Up => "R2+",
            MoveKind::R2Down => "R2-",
            MoveKind::R3 => "R3",
        }
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for MoveKind {
    type Err = MoveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.trim() {
            "R1+" => MoveKind::R1Up,
            "R1-" => MoveKind::R1Down,
            "R2+" => MoveKind::R2Up,
            "R2-" => MoveKind::R2Down,
            "R3" => MoveKind::R3,
            other => return Err(MoveError::BadToken(other.to_string())),
        })
    }
}

/// A place where one Reidemeister move applies.
///
/// On D₀ there are no darts. `R1Up` there ignores `arc`; `R2Up` pushes the
/// curve over itself into the face selected by the port of `first`
/// (0 right, 1 left), with `second == first`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveSite {
    /// Adds a kink on the given side of the arc arriving at `arc`.
    R1Up {
        arc: Dart,
        side: Side,
        chirality: Chirality,
    },
    /// Removes the kink bounding a monogon.
    R1Down { face: Dart },
    /// Pushes the face edge at `first` across the face over or under the
    /// face edge at `second`. With `first == second` the edge is pushed
    /// over itself.
    R2Up {
        first: Dart,
        second: Dart,
        on_top: OnTop,
    },
    /// Pulls apart the two strands of a bigon.
    R2Down { face: Dart },
    /// Slides the face edge `slide` steps after `face` across the opposite
    /// crossing of a trigon.
    R3 { face: Dart, slide: u8 },
}

impl MoveSite {
    pub fn kind(&self) -> MoveKind {
        match self {
            MoveSite::R1Up { .. } => MoveKind::R1Up,
            MoveSite::R1Down { .. } => MoveKind::R1Down,
            MoveSite::R2Up { .. } => MoveKind::R2Up,
            MoveSite::R2Down { .. } => MoveKind::R2Down,
            MoveSite::R3 { .. } => MoveKind::R3,
        }
    }

    /// The opaque site token used in certificates.
    pub fn token(&self) -> String {
        match *self {
            MoveSite::R1Up {
                arc,
                side,
                chirality,
            } => format!(
                "{arc}:{}:{}",
                if side == Side::Left { "L" } else { "R" },
                if chirality == Chirality::Positive {
                    "+"
                } else {
                    "-"
                }
            ),
            MoveSite::R1Down { face } | MoveSite::R2Down { face } => face.to_string(),
            MoveSite::R2Up {
                first,
                second,
                on_top,
            } => format!(
                "{first},{second}:{}",
                if on_top == OnTop::First { "1" } else { "2" }
            ),
            MoveSite::R3 { face, slide } => format!("{face}:{slide}"),
        }
    }

    pub fn parse(kind: MoveKind, token: &str) -> Result<MoveSite, MoveError> {
        let bad = || MoveError::BadToken(token.to_string());
        let parts: Vec<&str> = token.trim().split(':').collect();
        let site = match (kind, parts.as_slice()) {
            (MoveKind::R1Up, [arc, side, chir]) => MoveSite::R1Up {
                arc: parse_dart(arc).ok_or_else(bad)?,
                side: match *side {
                    "L" => Side::Left,
                    "R" => Side::Right,
                    _ => return Err(bad()),
                },
                chirality: match *chir {
                    "+" => Chirality::Positive,
                    "-" => Chirality::Negative,
                    _ => return Err(bad()),
                },
            },
            (MoveKind::R1Down, [face]) => MoveSite::R1Down {
                face: parse_dart(face).ok_or_else(bad)?,
            },
            (MoveKind::R2Down, [face]) => MoveSite::R2Down {
                face: parse_dart(face).ok_or_else(bad)?,
            },
            (MoveKind::R2Up, [pair, top]) => {
                let (a, b) = pair.split_once(',').ok_or_else(bad)?;
                MoveSite::R2Up {
                    first: parse_dart(a).ok_or_else(bad)?,
                    second: parse_dart(b).ok_or_else(bad)?,
                    on_top: match *top {
                        "1" => OnTop::First,
                        "2" => OnTop::Second,
                        _ => return Err(bad()),
                    },
                }
            }
            (MoveKind::R3, [face, slide]) => MoveSite::R3 {
                face: parse_dart(face).ok_or_else(bad)?,
                slide: slide.parse().ok().filter(|&s: &u8| s < 3).ok_or_else(bad)?,
            },
            _ => return Err(bad()),
        };
        Ok(site)
    }
}

fn parse_dart(text: &str) -> Option<Dart> {
    let (c, p) = text.trim().split_once('.')?;
    let c: usize = c.parse().ok()?;
    let p: u8 = p.parse().ok()?;
    (p < 4 && c < (1 << 28)).then(|| Dart::new(c, p))
}

impl fmt::Display for MoveSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.kind(), self.token())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Move {
    pub site: MoveSite,
    pub crossing_delta: i8,
}

impl Move {
    pub fn new(site: MoveSite) -> Move {
        Move {
            site,
            crossing_delta: site.kind().crossing_delta(),
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.site.fmt(f)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("move site {site} does not apply: {reason}")]
    InvalidSite { site: String, reason: &'static str },
    #[error("malformed move token {0:?}")]
    BadToken(String),
    #[error("no single move undoes {0}")]
    NoInverse(String),
}

fn invalid(site: &MoveSite, reason: &'static str) -> MoveError {
    MoveError::InvalidSite {
        site: site.to_string(),
        reason,
    }
}

/// Position of every dart in the strand traversal.
struct Layout {
    passages: Vec<Passage>,
    position: Vec<u32>,
}

impl Layout {
    fn new(d: &PlanarDiagram) -> Layout {
        if d.is_trivial() {
            return Layout {
                passages: Vec::new(),
                position: Vec::new(),
            };
        }
        let passages = d.traversal();
        let mut position = vec![0; d.dart_count()];
        for (t, p) in passages.iter().enumerate() {
            position[p.entry_dart().index()] = t as u32;
            position[p.exit_dart().index()] = t as u32;
        }
        Layout { passages, position }
    }

    /// The arc arriving at `d`, as the traversal index of the passage it
    /// leaves, and whether the strand runs toward `d`.
    fn arc(&self, d: Dart) -> (usize, bool) {
        let t = self.position[d.index()] as usize;
        let m = self.passages.len();
        if self.passages[t].entry == d.port() {
            ((t + m - 1) % m, true)
        } else {
            (t, false)
        }
    }
}

/// Rebuilds a diagram from an edited traversal, renumbering crossings in
/// order of first appearance.
fn assemble(passages: &[Passage], over02: &[bool]) -> PlanarDiagram {
    if passages.is_empty() {
        return PlanarDiagram::trivial();
    }
    let mut map = vec![u32::MAX; over02.len()];
    let mut new_over = Vec::with_capacity(passages.len() / 2);
    let renamed: Vec<Passage> = passages
        .iter()
        .map(|p| {
            let c = p.crossing as usize;
            if map[c] == u32::MAX {
                map[c] = new_over.len() as u32;
                new_over.push(over02[c]);
            }
            Passage {
                crossing: map[c],
                entry: p.entry,
            }
        })
        .collect();
    PlanarDiagram::from_passages(&renamed, new_over)
}

fn over_flags(d: &PlanarDiagram, extra: &[bool]) -> Vec<bool> {
    (0..d.crossing_count())
        .map(|c| d.over02(c))
        .chain(extra.iter().copied())
        .collect()
}

fn orient(list: &[(usize, u8)], forward: bool) -> Vec<Passage> {
    if forward {
        list.iter().map(|&(c, e)| Passage::new(c, e)).collect()
    } else {
        list.iter()
            .rev()
            .map(|&(c, e)| Passage::new(c, e ^ 2))
            .collect()
    }
}

fn face_darts(d: &PlanarDiagram, start: Dart, limit: usize) -> Vec<Dart> {
    let mut out = vec![start];
    let mut cur = d.face_next(start);
    while cur != start && out.len() <= limit {
        out.push(cur);
        cur = d.face_next(cur);
    }
    out
}

fn check_dart(d: &PlanarDiagram, site: &MoveSite, x: Dart) -> Result<(), MoveError> {
    if d.contains(x) {
        Ok(())
    } else {
        Err(invalid(site, "dart out of range"))
    }
}

/// Applies a move, validating its site against `d`.
pub fn apply_move(d: &PlanarDiagram, m: &Move) -> Result<PlanarDiagram, MoveError> {
    if m.crossing_delta != m.site.kind().crossing_delta() {
        return Err(invalid(
            &m.site,
            "crossing delta does not match the move type",
        ));
    }
    let layout = Layout::new(d);
    apply_site(d, &layout, &m.site)
}

/// Calls `f` with every applicable site and its result.
pub(crate) fn for_each_child(
    d: &PlanarDiagram,
    cap: usize,
    mut f: impl FnMut(MoveSite, PlanarDiagram),
) {
    let layout = Layout::new(d);
    for_each_site(d, cap, |s| {
        let r = apply_site(d, &layout, &s).expect("enumerated sites apply");
        f(s, r)
    });
}

fn apply_site(
    d: &PlanarDiagram,
    layout: &Layout,
    site: &MoveSite,
) -> Result<PlanarDiagram, MoveError> {
    let n = d.crossing_count();
    if d.is_trivial() {
        return match *site {
            MoveSite::R1Up {
                side, chirality, ..
            } => {
                let (e, over) = kink(side, chirality);
                Ok(PlanarDiagram::from_passages(
                    &[Passage::new(0, 0), Passage::new(0, e)],
                    vec![over],
                ))
            }
            MoveSite::R2Up {
                first,
                second,
                on_top,
            } if first == second && first.crossing() == 0 && first.port() < 2 => {
                let list = self_push(0, 1);
                let passages = orient(&list, first.port() == 0);
                Ok(PlanarDiagram::from_passages(
                    &passages,
                    vec![on_top == OnTop::First; 2],
                ))
            }
            _ => Err(invalid(site, "D0 admits only R1+ and R2+ moves")),
        };
    }
    let t = &layout.passages;
    match *site {
        MoveSite::R1Up {
            arc,
            side,
            chirality,
        } => {
            check_dart(d, site, arc)?;
            let (at, forward) = layout.arc(arc);
            let (e, over) = kink(side, chirality);
            let ins = orient(&[(n, 0), (n, e)], forward);
            let mut out = Vec::with_capacity(t.len() + 2);
            for (i, p) in t.iter().enumerate() {
                out.push(*p);
                if i == at {
                    out.extend_from_slice(&ins);
                }
            }
            Ok(assemble(&out, &over_flags(d, &[over])))
        }
        MoveSite::R1Down { face } => {
            check_dart(d, site, face)?;
            if d.face_next(face) != face {
                return Err(invalid(site, "face is not a monogon"));
            }
            let c = face.crossing() as u32;
            let out: Vec<Passage> = t.iter().copied().filter(|p| p.crossing != c).collect();
            Ok(assemble(&out, &over_flags(d, &[])))
        }
        MoveSite::R2Down { face } => {
            check_dart(d, site, face)?;
            let darts = face_darts(d, face, 2);
            if darts.len() != 2 {
                return Err(invalid(site, "face is not a bigon"));
            }
            let (c0, c1) = (darts[0].crossing() as u32, darts[1].crossing() as u32);
            if c0 == c1 {
                return Err(invalid(site, "bigon has a single crossing"));
            }
            if d.is_over(darts[0]) != d.is_over(d.link(darts[0])) {
                return Err(invalid(site, "no strand lies over at both bigon crossings"));
            }
            let out: Vec<Passage> = t
                .iter()
                .copied()
                .filter(|p| p.crossing != c0 && p.crossing != c1)
                .collect();
            Ok(assemble(&out, &over_flags(d, &[])))
        }
        MoveSite::R3 { face, slide } => {
            check_dart(d, site, face)?;
            let darts = face_darts(d, face, 3);
            if darts.len() != 3 || slide > 2 {
                return Err(invalid(site, "face is not a trigon"));
            }
            let cs = [
                darts[0].crossing(),
                darts[1].crossing(),
                darts[2].crossing(),
            ];
            if cs[0] == cs[1] || cs[1] == cs[2] || cs[0] == cs[2] {
                return Err(invalid(site, "trigon repeats a crossing"));
            }
            let s = darts[slide as usize];
            if d.is_over(s) != d.is_over(d.link(s)) {
                return Err(invalid(
                    site,
                    "sliding strand is not over or under at both ends",
                ));
            }
            let m = t.len();
            let mut out = t.clone();
            for &x in &darts {
                let (a, _) = layout.arc(x);
                out.swap(a, (a + 1) % m);
            }
            Ok(assemble(&out, &over_flags(d, &[])))
        }
        MoveSite::R2Up {
            first,
            second,
            on_top,
        } => {
            check_dart(d, site, first)?;
            check_dart(d, site, second)?;
            let over = vec![on_top == OnTop::First; 2];
            let flags = over_flags(d, &over);
            let (u, v) = (n, n + 1);
            if first == second {
                let (at, forward) = layout.arc(first);
                let ins = orient(&self_push(u, v), forward);
                let mut out = Vec::with_capacity(t.len() + 4);
                for (i, p) in t.iter().enumerate() {
                    out.push(*p);
                    if i == at {
                        out.extend_from_slice(&ins);
                    }
                }
                return Ok(assemble(&out, &flags));
            }
            if !face_darts(d, first, 4 * n).contains(&second) {
                return Err(invalid(site, "darts do not bound a common face"));
            }
            let (at_a, fwd_a) = layout.arc(first);
            let (at_b, fwd_b) = layout.arc(second);
            let ins_a = orient(&[(u, 0), (v, 0)], fwd_a);
            let ins_b = orient(&[(v, 1), (u, 3)], fwd_b);
            let mut out = Vec::with_capacity(t.len() + 4);
            for (i, p) in t.iter().enumerate() {
                out.push(*p);
                if i == at_a {
                    out.extend_from_slice(&ins_a);
                }
                if i == at_b {
                    out.extend_from_slice(&ins_b);
                }
            }
            Ok(assemble(&out, &flags))
        }
    }
}

/// Entry port of the second pass and the over flag of the first pass for a
/// kink inserted along the arc direction. Port 3 puts the loop on the left.
fn kink(side: Side, chirality: Chirality) -> (u8, bool) {
    let e = if side == Side::Left { 3 } else { 1 };
    let over = (chirality == Chirality::Positive) == (e == 1);
    (e, over)
}

/// Passages of an arc pushed over itself into the face on its right.
fn self_push(u: usize, v: usize) -> [(usize, u8); 4] {
    [(u, 0), (v, 0), (v, 1), (u, 3)]
}

/// Every move applicable to `d` whose result has at most `cap` crossings.
pub fn enumerate_moves(d: &PlanarDiagram, cap: usize) -> Vec<Move> {
    let mut out = Vec::new();
    for_each_site(d, cap, |s| out.push(Move::new(s)));
    out
}

/// Calls `f` on every applicable site, in a fixed order.
pub fn for_each_site(d: &PlanarDiagram, cap: usize, mut f: impl FnMut(MoveSite)) {
    let n = d.crossing_count();
    let up1 = n < cap;
    let up2 = n + 2 <= cap;
    let chir = [Chirality::Positive, Chirality::Negative];
    let tops = [OnTop::First, OnTop::Second];
    if d.is_trivial() {
        if up1 {
            for side in [Side::Right, Side::Left] {
                for chirality in chir {
                    f(MoveSite::R1Up {
                        arc: Dart::new(0, 0),
                        side,
                        chirality,
                    });
                }
            }
        }
        if up2 {
            for port in 0..2 {
                for on_top in tops {
                    let x = Dart::new(0, port);
                    f(MoveSite::R2Up {
                        first: x,
                        second: x,
                        on_top,
                    });
                }
            }
        }
        return;
    }
    let mut seen = vec![false; d.dart_count()];
    let mut darts = Vec::new();
    for start in d.darts() {
        if seen[start.index()] {
            continue;
        }
        darts.clear();
        let mut x = start;
        while !seen[x.index()] {
            seen[x.index()] = true;
            darts.push(x);
            x = d.face_next(x);
        }
        match darts.len() {
            1 => f(MoveSite::R1Down { face: start }),
            2 => {
                let (a, b) = (darts[0], darts[1]);
                if a.crossing() != b.crossing() && d.is_over(a) == d.is_over(d.link(a)) {
                    f(MoveSite::R2Down { face: start });
                }
            }
            3 => {
                let cs = [
                    darts[0].crossing(),
                    darts[1].crossing(),
                    darts[2].crossing(),
                ];
                if cs[0] != cs[1] && cs[1] != cs[2] && cs[0] != cs[2] {
                    if let Some(slide) =
                        (0..3).find(|&i| d.is_over(darts[i]) == d.is_over(d.link(darts[i])))
                    {
                        f(MoveSite::R3 {
                            face: start,
                            slide: slide as u8,
                        });
                    }
                }
            }
            _ => {}
        }
        if up2 {
            for i in 0..darts.len() {
                for j in i..darts.len() {
                    for on_top in tops {
                        f(MoveSite::R2Up {
                            first: darts[i],
                            second: darts[j],
                            on_top,
                        });
                    }
                }
            }
        }
    }
    if up1 {
        // One dart per arc: the end where the traversal arrives.
        for p in d.traversal() {
            for side in [Side::Right, Side::Left] {
                for chirality in chir {
                    f(MoveSite::R1Up {
                        arc: p.entry_dart(),
                        side,
                        chirality,
                    });
                }
            }
        }
    }
}

/// A move on `d_after` that leads back to the class of `d_before`.
pub fn inverse_move(
    d_before: &PlanarDiagram,
    m: &Move,
    d_after: &PlanarDiagram,
) -> Result<Move, MoveError> {
    let target = d_before.canonical_code();
    let mut found = None;
    for_each_site(d_after, usize::MAX, |s| {
        if found.is_some() || s.kind().crossing_delta() != -m.crossing_delta {
            return;
        }
        let mv = Move::new(s);
        if let Ok(r) = apply_move(d_after, &mv) {
            if r.canonical_code() == target {
                found = Some(mv);
            }
        }
    });
    found.ok_or_else(|| MoveError::NoInverse(m.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::tests::{diagram, FIGURE_EIGHT, TREFOIL};
    use std::collections::HashSet;

    fn results(d: &PlanarDiagram, cap: usize) -> Vec<(Move, PlanarDiagram)> {
        enumerate_moves(d, cap)
            .into_iter()
            .map(|m| {
                let r = apply_move(d, &m).unwrap_or_else(|e| panic!("{e} on {d:?}"));
                (m, r)
            })
            .collect()
    }

    #[test]
    fn trivial_has_four_kinks_in_two_classes() {
        let d0 = PlanarDiagram::trivial();
        let moves: Vec<Move> = enumerate_moves(&d0, 1);
        assert_eq!(moves.len(), 4);
        assert!(moves.iter().all(|m| m.site.kind() == MoveKind::R1Up));
        let classes: HashSet<_> = moves
            .iter()
            .map(|m| apply_move(&d0, m).unwrap().canonical_code())
            .collect();
        assert_eq!(classes.len(), 2);
    }

    #[test]
    fn kink_roundtrip() {
        let d0 = PlanarDiagram::trivial();
        for (_, k) in results(&d0, 1) {
            assert_eq!(k.crossing_count(), 1);
            assert_eq!(k.face_count(), 3);
            let downs: Vec<_> = results(&k, 1)
                .into_iter()
                .filter(|(m, _)| m.site.kind() == MoveKind::R1Down)
                .collect();
            assert_eq!(downs.len(), 2);
            assert!(downs.iter().all(|(_, r)| r.is_trivial()));
        }
    }

    #[test]
    fn no_up_moves_at_cap() {
        let d = diagram(FIGURE_EIGHT);
        for m in enumerate_moves(&d, 4) {
            assert!(m.crossing_delta <= 0);
        }
    }

    #[test]
    fn moves_keep_invariants_and_deltas() {
        for text in [FIGURE_EIGHT, TREFOIL, "1 -1", "1 -2 2 -1", "1 2 -2 -1"] {
            let d = diagram(text);
            for (m, r) in results(&d, d.crossing_count() + 2) {
                r.check_invariants()
                    .unwrap_or_else(|e| panic!("{m} on {text}: {e}"));
                assert_eq!(
                    r.crossing_count() as i64 - d.crossing_count() as i64,
                    m.crossing_delta as i64
                );
                let back = inverse_move(&d, &m, &r).unwrap();
                assert_eq!(
                    apply_move(&r, &back).unwrap().canonical_code(),
                    d.canonical_code()
                );
            }
        }
    }

    #[test]
    fn r3_needs_non_cyclic_trigon() {
        // Trefoil faces: two trigons, both alternating, so no R3.
        let d = diagram(TREFOIL);
        assert!(enumerate_moves(&d, 3)
            .iter()
            .all(|m| m.site.kind() != MoveKind::R3));
    }

    #[test]
    fn tokens_roundtrip() {
        let d = diagram(FIGURE_EIGHT);
        for m in enumerate_moves(&d, 6) {
            let back = MoveSite::parse(m.site.kind(), &m.site.token()).unwrap();
            assert_eq!(back, m.site);
            assert_eq!(
                m.site.kind().token().parse::<MoveKind>().unwrap(),
                m.site.kind()
            );
        }
        assert!(MoveSite::parse(MoveKind::R3, "1.2").is_err());
        assert!(MoveSite::parse(MoveKind::R1Up, "1.7:L:+").is_err());
    }

    #[test]
    fn invalid_sites_are_rejected() {
        let d = diagram(TREFOIL);
        let bad = Move::new(MoveSite::R1Down {
            face: Dart::new(0, 0),
        });
        assert!(matches!(
            apply_move(&d, &bad),
            Err(MoveError::InvalidSite { .. })
        ));
        let out = Move::new(MoveSite::R2Down {
            face: Dart::new(40, 0),
        });
        assert!(apply_move(&d, &out).is_err());
    }
}
