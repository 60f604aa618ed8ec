//! Benchmark inputs shared by the criterion benches.

use reidemeister_core::{get_corpus, GaussCode, PlanarDiagram, SearchOptions};

/// Corpus entries of increasing size.
pub const SIZES: [&str; 4] = ["Culprit", "FHW", "D43", "Haken"];

pub fn corpus_code(name: &str) -> GaussCode {
    get_corpus(name).expect("corpus entry").gauss()
}

pub fn corpus_diagram(name: &str) -> PlanarDiagram {
    get_corpus(name).expect("corpus entry").diagram()
}

/// Single-threaded search with a small budget, so timings are stable.
pub fn search_options() -> SearchOptions {
    SearchOptions {
        memory_limit: 256 << 20,
        threads: Some(1),
        ..Default::default()
    }
}
