//! Knot diagrams on the 2-sphere, Reidemeister moves, and bounded
//! exhaustive search for the number of extra crossings needed to untangle
//! an unknot diagram.

pub mod corpus;
pub mod diagram;
pub mod gauss_code;
pub mod generators;
pub mod moves;
pub mod search;

pub use diagram::{
    canonical_code, connect_sum, embeddings, faces, mirror, realize, to_gauss, CanonicalCode, Dart,
    DiagramError, Face, PlanarDiagram, Realization,
};
pub use gauss_code::{
    parity_check, parse_gauss, rotate_basepoint, serialize_gauss, GaussCode, GaussEntry,
    GaussError, Pass,
};
pub use generators::{
    braid_closure, braid_inverse, default_goeritz_braid, double_blackboard, fhw_at, fhw_clasp,
    fhw_generalized, fhw_with, goeritz_default, goeritz_default_word, goeritz_generalized, half_twist_flype, parse_braid, BraidWord,
    Clasp, DoubledTangle, CLASP_A, CLASP_B, FhwVariant, GeneratorError,
};
pub use moves::{
    apply_move, enumerate_moves, inverse_move, Chirality, Move, MoveError, MoveKind, MoveSite,
    OnTop, Side,
};
pub use search::{
    closure, compute_extra, default_cap_max, reachable_classes, recalcitrance, replay_certificate, simplify_greedy,
    simplify_greedy_with, Certificate, CertificateStep, Closure, ClosureStats, InconclusiveReason,
    ReplayReport, SearchError, SearchOptions, SearchOrder, SearchResult, Simplification, SimplifyOptions,
    DEFAULT_MEMORY_LIMIT,
};
pub use corpus::{
    get_corpus, list_corpus, verify_corpus, CorpusEntry, CorpusReport, ExtraStatus, NotFound,
};
