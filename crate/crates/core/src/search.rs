//! Bounded breadth-first closure in the Reidemeister graph and the
//! quantities built on it: maxcr, extra crossings, recalcitrance and
//! replayable certificates.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use indexmap::IndexSet;
use num_rational::Ratio;
use rayon::prelude::*;
use rustc_hash::FxBuildHasher;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{decode_bytes, embeddings, CanonicalCode, Dart, PlanarDiagram};
use crate::gauss_code::{parse_gauss, serialize_gauss};
use crate::moves::{apply_move, for_each_child, Move, MoveKind, MoveSite};

/// Default memory ceiling for stored search states.
pub const DEFAULT_MEMORY_LIMIT: usize = 8 << 30;

/// Estimated bytes per visited state beyond its code: index slot, entry
/// header and allocator overhead.
const STATE_OVERHEAD: usize = 56;
const PARENT_BYTES: usize = std::mem::size_of::<(u32, MoveSite)>();

/// States expanded per parallel batch.
const BATCH: usize = 2048;
/// Batch size in fewest-crossings order; small to stay close to the exact
/// priority order, fixed so results do not depend on the thread count.
const BEST_FIRST_BATCH: usize = 64;
const HEAP_BYTES: usize = 8;

/// Expansion order of a closure. Both visit the same set of states when run
/// to exhaustion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchOrder {
    BreadthFirst,
    /// States with fewer crossings first, ties in discovery order. Reaches
    /// D₀ far sooner when it is reachable at all.
    FewestCrossings,
}

type Visited = IndexSet<Box<[u8]>, FxBuildHasher>;

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Upper bound on the estimated bytes of stored states.
    pub memory_limit: usize,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
    /// Keep a parent link per state so certificates can be read off the
    /// closure. Without it a second search rebuilds them.
    pub keep_parents: bool,
    /// Stop as soon as D₀ is reached.
    pub stop_at_trivial: bool,
    pub order: SearchOrder,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            memory_limit: DEFAULT_MEMORY_LIMIT,
            threads: None,
            keep_parents: true,
            stop_at_trivial: true,
            order: SearchOrder::BreadthFirst,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClosureStats {
    pub cap: usize,
    /// Distinct canonical classes stored.
    pub states: usize,
    /// States whose neighbours were generated.
    pub expanded: usize,
    /// Moves applied.
    pub moves: u64,
    /// Estimated bytes of stored states.
    pub bytes: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("cap {cap} is below the crossing number {crossings} of the start diagram")]
    CapBelowCrossings { cap: usize, crossings: usize },
    #[error("recalcitrance is undefined for the trivial diagram")]
    DividedByTrivial,
    #[error("recalcitrance needs an exact search result")]
    NotExact,
    #[error("could not build thread pool: {0}")]
    ThreadPool(String),
}

/// Result of one bounded closure.
#[derive(Clone, Debug)]
pub struct Closure {
    pub reached_trivial: bool,
    /// True when the frontier emptied within the memory budget.
    pub exhausted: bool,
    pub stats: ClosureStats,
    parents: Option<Vec<(u32, MoveSite)>>,
    trivial_index: Option<u32>,
}

impl Closure {
    /// Moves from the start diagram to D₀, each addressed in the canonical
    /// labelling of the diagram it applies to.
    pub fn path_to_trivial(&self) -> Option<Vec<MoveSite>> {
        let parents = self.parents.as_ref()?;
        let mut idx = self.trivial_index? as usize;
        let mut path = Vec::new();
        while idx != 0 {
            let (p, site) = parents[idx];
            path.push(site);
            idx = p as usize;
        }
        path.reverse();
        Some(path)
    }
}

fn with_pool<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R, SearchError> {
    match threads {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| SearchError::ThreadPool(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

/// Breadth-first closure of the classes reachable from `d` through
/// diagrams with at most `cap` crossings.
pub fn closure(d: &PlanarDiagram, cap: usize, opts: &SearchOptions) -> Result<Closure, SearchError> {
    if d.crossing_count() > cap {
        return Err(SearchError::CapBelowCrossings {
            cap,
            crossings: d.crossing_count(),
        });
    }
    with_pool(opts.threads, || closure_in_pool(d, cap, opts).0)
}

/// The closure together with every class it stored, in discovery order.
pub fn reachable_classes(
    d: &PlanarDiagram,
    cap: usize,
    opts: &SearchOptions,
) -> Result<(Closure, Vec<CanonicalCode>), SearchError> {
    if d.crossing_count() > cap {
        return Err(SearchError::CapBelowCrossings {
            cap,
            crossings: d.crossing_count(),
        });
    }
    let (c, visited) = with_pool(opts.threads, || closure_in_pool(d, cap, opts))?;
    Ok((c, visited.into_iter().map(CanonicalCode::from_boxed).collect()))
}

fn closure_in_pool(d: &PlanarDiagram, cap: usize, opts: &SearchOptions) -> (Closure, Visited) {
    let root = d.canonical_code();
    let mut stats = ClosureStats {
        cap,
        ..Default::default()
    };
    let per_state = STATE_OVERHEAD
        + if opts.keep_parents { PARENT_BYTES } else { 0 }
        + match opts.order {
            SearchOrder::BreadthFirst => 0,
            SearchOrder::FewestCrossings => HEAP_BYTES,
        };
    let mut visited = Visited::default();
    let mut parents = opts.keep_parents.then(Vec::new);
    let root_trivial = root.is_trivial();
    stats.bytes += root.as_bytes().len() + per_state;
    visited.insert(root.into_boxed());
    if let Some(p) = parents.as_mut() {
        p.push((0, MoveSite::R1Down { face: Dart::new(0, 0) }));
    }
    stats.states = 1;
    let mut result = Closure {
        reached_trivial: root_trivial,
        exhausted: false,
        stats,
        parents: None,
        trivial_index: root_trivial.then_some(0),
    };
    if root_trivial && opts.stop_at_trivial {
        result.parents = parents;
        return (result, visited);
    }

    // Breadth-first order is insertion order, so a cursor over `visited`
    // is the whole queue.
    let mut cursor = 0usize;
    let mut heap: BinaryHeap<Reverse<(u16, u32)>> = BinaryHeap::new();
    if opts.order == SearchOrder::FewestCrossings {
        heap.push(Reverse((d.crossing_count() as u16, 0)));
    }
    let mut batch_ids: Vec<usize> = Vec::with_capacity(BATCH);
    loop {
        batch_ids.clear();
        match opts.order {
            SearchOrder::BreadthFirst => {
                let end = (cursor + BATCH).min(visited.len());
                batch_ids.extend(cursor..end);
                cursor = end;
            }
            SearchOrder::FewestCrossings => {
                while batch_ids.len() < BEST_FIRST_BATCH {
                    match heap.pop() {
                        Some(Reverse((_, i))) => batch_ids.push(i as usize),
                        None => break,
                    }
                }
            }
        }
        if batch_ids.is_empty() {
            break;
        }
        let seen = &visited;
        let batch: Vec<(u64, Vec<(CanonicalCode, MoveSite)>)> = batch_ids
            .par_iter()
            .map(|&i| {
                let d = decode_bytes(&seen[i]);
                let mut out = Vec::new();
                let mut moves = 0u64;
                for_each_child(&d, cap, |site, child| {
                    moves += 1;
                    let code = child.canonical_code();
                    if !seen.contains(code.as_bytes()) {
                        out.push((code, site));
                    }
                });
                (moves, out)
            })
            .collect();
        for (&parent, (moves, children)) in batch_ids.iter().zip(batch) {
            stats.expanded += 1;
            stats.moves += moves;
            for (code, site) in children {
                let trivial = code.is_trivial();
                let len = code.as_bytes().len();
                let crossings = code.crossing_count() as u16;
                let (idx, fresh) = visited.insert_full(code.into_boxed());
                if !fresh {
                    continue;
                }
                stats.bytes += len + per_state;
                if let Some(p) = parents.as_mut() {
                    p.push((parent as u32, site));
                }
                if opts.order == SearchOrder::FewestCrossings {
                    heap.push(Reverse((crossings, idx as u32)));
                }
                if trivial {
                    result.reached_trivial = true;
                    result.trivial_index = Some(idx as u32);
                    if opts.stop_at_trivial {
                        stats.states = visited.len();
                        result.stats = stats;
                        result.parents = parents;
                        return (result, visited);
                    }
                }
            }
        }
        stats.states = visited.len();
        if stats.bytes > opts.memory_limit {
            result.stats = stats;
            result.parents = parents;
            return (result, visited);
        }
    }
    stats.states = visited.len();
    result.stats = stats;
    result.exhausted = true;
    result.parents = parents;
    (result, visited)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum InconclusiveReason {
    MemoryExceeded,
    /// The requested cap is below the crossing number, so no cap was tried.
    CapExhausted,
}

impl fmt::Display for InconclusiveReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InconclusiveReason::MemoryExceeded => "memory budget exceeded",
            InconclusiveReason::CapExhausted => "cap below crossing number",
        })
    }
}

#[derive(Clone, Debug)]
pub enum SearchResult {
    Exact {
        extra: usize,
        certificate: Certificate,
        stats: ClosureStats,
    },
    /// Every closure up to the cap limit exhausted without reaching D₀.
    LowerBound {
        extra_at_least: usize,
        stats: ClosureStats,
    },
    Inconclusive {
        reason: InconclusiveReason,
        stats: ClosureStats,
    },
}

impl SearchResult {
    pub fn exact_extra(&self) -> Option<usize> {
        match self {
            SearchResult::Exact { extra, .. } => Some(*extra),
            _ => None,
        }
    }

    pub fn stats(&self) -> &ClosureStats {
        match self {
            SearchResult::Exact { stats, .. }
            | SearchResult::LowerBound { stats, .. }
            | SearchResult::Inconclusive { stats, .. } => stats,
        }
    }
}

/// Dynnikov's quadratic bound `(crs - 1)² / 2`, raised to at least `crs`.
pub fn default_cap_max(crossings: usize) -> usize {
    let q = crossings.saturating_sub(1).pow(2) / 2;
    q.max(crossings)
}

/// Iterative deepening over caps `crs(d) ..= cap_max`.
pub fn compute_extra(
    d: &PlanarDiagram,
    cap_max: Option<usize>,
    opts: &SearchOptions,
) -> Result<SearchResult, SearchError> {
    let crs = d.crossing_count();
    let cap_max = cap_max.unwrap_or_else(|| default_cap_max(crs));
    let mut stats = ClosureStats::default();
    if cap_max < crs {
        return Ok(SearchResult::Inconclusive {
            reason: InconclusiveReason::CapExhausted,
            stats,
        });
    }
    let opts = SearchOptions {
        stop_at_trivial: true,
        order: SearchOrder::FewestCrossings,
        ..opts.clone()
    };
    for cap in crs..=cap_max {
        let c = closure(d, cap, &opts)?;
        stats = c.stats;
        if c.reached_trivial {
            let path = match c.path_to_trivial() {
                Some(p) => p,
                None => {
                    let again = SearchOptions {
                        keep_parents: true,
                        ..opts.clone()
                    };
                    let c = closure(d, cap, &again)?;
                    if !c.reached_trivial {
                        return Ok(SearchResult::Inconclusive {
                            reason: InconclusiveReason::MemoryExceeded,
                            stats: c.stats,
                        });
                    }
                    c.path_to_trivial().expect("parents were kept")
                }
            };
            let certificate = Certificate::from_path(d, &path);
            debug_assert_eq!(certificate.max_crossings, cap);
            return Ok(SearchResult::Exact {
                extra: cap - crs,
                certificate,
                stats,
            });
        }
        if !c.exhausted {
            return Ok(SearchResult::Inconclusive {
                reason: InconclusiveReason::MemoryExceeded,
                stats,
            });
        }
    }
    Ok(SearchResult::LowerBound {
        extra_at_least: cap_max - crs + 1,
        stats,
    })
}

/// `maxcr(D) / crs(D)` from an exact result.
pub fn recalcitrance(d: &PlanarDiagram, r: &SearchResult) -> Result<Ratio<u64>, SearchError> {
    let crs = d.crossing_count() as u64;
    if crs == 0 {
        return Err(SearchError::DividedByTrivial);
    }
    let extra = r.exact_extra().ok_or(SearchError::NotExact)? as u64;
    Ok(Ratio::new(crs + extra, crs))
}

/// One recorded move.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateStep {
    #[serde(rename = "move")]
    pub kind: String,
    pub site: String,
    pub crossings_after: usize,
}

/// A replayable untangling sequence. Sites are addressed in the canonical
/// labelling of the diagram before each step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub initial: String,
    pub max_crossings: usize,
    #[serde(default)]
    pub steps: Vec<CertificateStep>,
}

impl Certificate {
    fn from_path(d: &PlanarDiagram, path: &[MoveSite]) -> Certificate {
        let mut cur = d.canonical_form();
        let mut max_crossings = cur.crossing_count();
        let mut steps = Vec::with_capacity(path.len());
        for site in path {
            let next = apply_move(&cur, &Move::new(*site)).expect("path moves apply");
            max_crossings = max_crossings.max(next.crossing_count());
            steps.push(CertificateStep {
                kind: site.kind().token().to_string(),
                site: site.token(),
                crossings_after: next.crossing_count(),
            });
            cur = next.canonical_form();
        }
        Certificate {
            initial: serialize_gauss(&d.to_gauss(Dart::new(0, 0))),
            max_crossings,
            steps,
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("certificate serializes")
    }

    pub fn from_toml(text: &str) -> Result<Certificate, String> {
        toml::from_str(text).map_err(|e| e.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReplayReport {
    pub ok: bool,
    /// Steps that applied and matched their recorded crossing count.
    pub steps_verified: usize,
    pub max_crossings: usize,
    /// 1-based step of the first failure, or `None` for failures of the
    /// initial code or the final checks.
    pub failed_step: Option<usize>,
    pub reason: Option<String>,
}

fn replay_from(start: PlanarDiagram, cert: &Certificate) -> ReplayReport {
    let mut cur = start.canonical_form();
    let mut max_crossings = cur.crossing_count();
    let fail = |step: Option<usize>, verified: usize, max: usize, reason: String| ReplayReport {
        ok: false,
        steps_verified: verified,
        max_crossings: max,
        failed_step: step,
        reason: Some(reason),
    };
    for (i, step) in cert.steps.iter().enumerate() {
        let kind: MoveKind = match step.kind.parse() {
            Ok(k) => k,
            Err(e) => return fail(Some(i + 1), i, max_crossings, e.to_string()),
        };
        let site = match MoveSite::parse(kind, &step.site) {
            Ok(s) => s,
            Err(e) => return fail(Some(i + 1), i, max_crossings, e.to_string()),
        };
        let next = match apply_move(&cur, &Move::new(site)) {
            Ok(n) => n,
            Err(e) => return fail(Some(i + 1), i, max_crossings, e.to_string()),
        };
        if next.crossing_count() != step.crossings_after {
            return fail(
                Some(i + 1),
                i,
                max_crossings,
                format!(
                    "step yields {} crossings, certificate says {}",
                    next.crossing_count(),
                    step.crossings_after
                ),
            );
        }
        max_crossings = max_crossings.max(next.crossing_count());
        cur = next.canonical_form();
    }
    let n = cert.steps.len();
    if !cur.is_trivial() {
        return fail(
            None,
            n,
            max_crossings,
            format!("final diagram has {} crossings", cur.crossing_count()),
        );
    }
    if max_crossings != cert.max_crossings {
        return fail(
            None,
            n,
            max_crossings,
            format!(
                "maximum crossing count is {max_crossings}, certificate declares {}",
                cert.max_crossings
            ),
        );
    }
    ReplayReport {
        ok: true,
        steps_verified: n,
        max_crossings,
        failed_step: None,
        reason: None,
    }
}

/// Replays a certificate. A Gauss code does not fix the embedding, so every
/// embedding of the initial code is tried; the report of the attempt that
/// got furthest is returned on failure.
pub fn replay_certificate(cert: &Certificate) -> ReplayReport {
    let code = match parse_gauss(&cert.initial) {
        Ok(c) => c,
        Err(e) => {
            return ReplayReport {
                ok: false,
                steps_verified: 0,
                max_crossings: 0,
                failed_step: None,
                reason: Some(format!("initial code: {e}")),
            }
        }
    };
    let all = match embeddings(&code) {
        Ok((all, _)) => all,
        Err(e) => {
            return ReplayReport {
                ok: false,
                steps_verified: 0,
                max_crossings: code.crossing_count(),
                failed_step: None,
                reason: Some(format!("initial code: {e}")),
            }
        }
    };
    let mut best: Option<ReplayReport> = None;
    for d in all {
        let r = replay_from(d, cert);
        if r.ok {
            return r;
        }
        if best.as_ref().is_none_or(|b| r.steps_verified > b.steps_verified) {
            best = Some(r);
        }
    }
    best.expect("at least one embedding")
}

#[derive(Clone, Debug)]
pub struct SimplifyOptions {
    /// Extra crossings allowed above the start diagram.
    pub effort: usize,
    /// Upper bound on expansion steps.
    pub max_expansions: usize,
}

impl SimplifyOptions {
    pub fn new(effort: usize) -> SimplifyOptions {
        SimplifyOptions {
            effort,
            max_expansions: 200_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Simplification {
    /// Smallest diagram found, in canonical labelling.
    pub diagram: PlanarDiagram,
    pub expansions: usize,
    pub states: usize,
    /// True when every allowed state was explored without reaching D₀.
    pub exhausted: bool,
}

/// Move groups tried in order on each state, each group only once the
/// earlier ones have been explored.
const STAGES: [MoveKind; 4] = [MoveKind::R1Down, MoveKind::R3, MoveKind::R1Up, MoveKind::R2Up];

/// Best-first descent: states are explored by crossing count, removing
/// moves first, then R3 plateaus, then ascents. No diagram on the way has
/// more than `crs(d) + effort` crossings, so effort 0 stays within the
/// closure that defines extra = 0.
pub fn simplify_greedy(d: &PlanarDiagram, effort: usize) -> PlanarDiagram {
    simplify_greedy_with(d, &SimplifyOptions::new(effort)).diagram
}

pub fn simplify_greedy_with(d: &PlanarDiagram, opts: &SimplifyOptions) -> Simplification {
    let mut visited = Visited::default();
    let mut heap: BinaryHeap<Reverse<(usize, u64, u32, u8)>> = BinaryHeap::new();
    let mut seq = 0u64;
    let root = d.canonical_code();
    let mut best = 0usize;
    let mut best_n = d.crossing_count();
    let ceiling = best_n + opts.effort;
    heap.push(Reverse((best_n, seq, 0, 0)));
    visited.insert(root.into_boxed());
    let mut expansions = 0;
    let mut exhausted = true;
    while let Some(Reverse((_, _, idx, stage))) = heap.pop() {
        if best_n == 0 {
            exhausted = false;
            break;
        }
        if expansions >= opts.max_expansions {
            exhausted = false;
            break;
        }
        let cur = decode_bytes(&visited[idx as usize]);
        let n = cur.crossing_count();
        let kind = STAGES[stage as usize];
        let ascending = kind.crossing_delta() > 0;
        let limit = if ascending { ceiling } else { n };
        if n + kind.crossing_delta().max(0) as usize > limit {
            continue;
        }
        expansions += 1;
        let wanted = |k: MoveKind| match kind {
            MoveKind::R1Down => k == MoveKind::R1Down || k == MoveKind::R2Down,
            other => k == other,
        };
        let mut fresh = Vec::new();
        for_each_child(&cur, limit, |site, child| {
            if wanted(site.kind()) {
                let code = child.canonical_code();
                if !visited.contains(code.as_bytes()) {
                    let m = child.crossing_count();
                    let (i, new) = visited.insert_full(code.into_boxed());
                    if new {
                        fresh.push((m, i as u32));
                    }
                }
            }
        });
        for (m, i) in fresh {
            if m < best_n {
                best_n = m;
                best = i as usize;
            }
            seq += 1;
            heap.push(Reverse((m, seq, i, 0)));
        }
        if (stage as usize) + 1 < STAGES.len() {
            let next = STAGES[stage as usize + 1];
            let key = n + next.crossing_delta().max(0) as usize;
            if next.crossing_delta() <= 0 || key <= ceiling {
                seq += 1;
                heap.push(Reverse((key, seq, idx, stage + 1)));
            }
        }
    }
    Simplification {
        diagram: decode_bytes(&visited[best]),
        expansions,
        states: visited.len(),
        exhausted,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::tests::{diagram, FIGURE_EIGHT};

    fn small() -> SearchOptions {
        SearchOptions {
            memory_limit: 256 << 20,
            threads: Some(1),
            ..Default::default()
        }
    }

    #[test]
    fn trivial_closure() {
        let c = closure(&PlanarDiagram::trivial(), 3, &small()).unwrap();
        assert!(c.reached_trivial);
        assert_eq!(c.stats.states, 1);
        assert_eq!(c.stats.expanded, 0);
        let r = compute_extra(&PlanarDiagram::trivial(), None, &small()).unwrap();
        match r {
            SearchResult::Exact {
                extra, certificate, ..
            } => {
                assert_eq!(extra, 0);
                assert!(certificate.steps.is_empty());
                assert!(replay_certificate(&certificate).ok);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn kinks_untangle() {
        for text in ["1 -1", "1 -2 2 -1", "1 2 -2 -1", "1 -1 2 -2"] {
            let d = diagram(text);
            let r = compute_extra(&d, None, &small()).unwrap();
            assert_eq!(r.exact_extra(), Some(0), "{text}");
            if let SearchResult::Exact { certificate, .. } = &r {
                let rep = replay_certificate(certificate);
                assert!(rep.ok, "{rep:?}");
                let back = Certificate::from_toml(&certificate.to_toml()).unwrap();
                assert_eq!(&back, certificate);
            }
        }
    }

    #[test]
    fn figure_eight_stays_knotted() {
        let d = diagram(FIGURE_EIGHT);
        let c = closure(&d, 6, &small()).unwrap();
        assert!(c.exhausted);
        assert!(!c.reached_trivial);
        let r = compute_extra(&d, Some(5), &small()).unwrap();
        assert!(matches!(
            r,
            SearchResult::LowerBound {
                extra_at_least: 2,
                ..
            }
        ));
    }

    #[test]
    fn recalcitrance_values() {
        let d = diagram("1 -1");
        let r = compute_extra(&d, None, &small()).unwrap();
        assert_eq!(recalcitrance(&d, &r).unwrap(), Ratio::new(1, 1));
        assert_eq!(
            recalcitrance(&PlanarDiagram::trivial(), &r),
            Err(SearchError::DividedByTrivial)
        );
    }

    #[test]
    fn greedy_removes_kinks() {
        let d = diagram("1 -1 2 -2");
        assert!(simplify_greedy(&d, 0).is_trivial());
    }

    #[test]
    fn corrupted_certificate_fails_at_step() {
        let d = diagram("1 -2 2 -1");
        let SearchResult::Exact {
            mut certificate, ..
        } = compute_extra(&d, None, &small()).unwrap()
        else {
            panic!()
        };
        certificate.steps[0].site = "9.0".into();
        let rep = replay_certificate(&certificate);
        assert!(!rep.ok);
        assert_eq!(rep.failed_step, Some(1));
    }
}
