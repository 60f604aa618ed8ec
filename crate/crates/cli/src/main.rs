use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use reidemeister_core::*;
use serde_json::{json, Value};

/// Unknot diagrams, Reidemeister moves and extra-crossing search.
#[derive(Parser)]
#[command(name = "reidemeister", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    /// Timings and progress on standard error.
    #[arg(long, short, global = true)]
    verbose: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a Gauss code parses and realizes on the sphere.
    Validate { input: String },
    /// Crossings, faces, embeddings, canonical digest and parity.
    Info { input: String },
    /// Bounded search for the number of extra crossings.
    Extra(ExtraArgs),
    /// Verify a certificate file.
    Replay { path: PathBuf },
    /// Construct a diagram and print its Gauss code.
    Generate {
        #[command(subcommand)]
        kind: Generate,
    },
    /// Published hard unknot diagrams.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
    /// Structural dumps.
    Export {
        #[command(subcommand)]
        format: Export,
    },
}

#[derive(Args)]
struct ExtraArgs {
    input: String,
    /// Largest cap tried; default (crs - 1)² / 2.
    #[arg(long)]
    cap_max: Option<usize>,
    /// Memory budget for stored states, e.g. 8G, 512M or a byte count.
    #[arg(long, default_value = "8G", value_parser = parse_size)]
    mem_limit: usize,
    /// Worker threads; default all cores.
    #[arg(long)]
    threads: Option<usize>,
    /// Write the certificate here when the result is exact.
    #[arg(long)]
    certificate: Option<PathBuf>,
    /// Exit with status 3 when the search is inconclusive.
    #[arg(long)]
    strict: bool,
}

#[derive(Subcommand)]
enum Generate {
    /// Doubled knot with clasp, joined to its mirror image.
    Fhw {
        /// Knot diagram to double.
        #[arg(long)]
        base: String,
        #[arg(long, value_enum, default_value = "standard")]
        variant: VariantArg,
        /// Cut the arc arriving at this dart (`crossing.port`, 0-based)
        /// instead of the canonical choice.
        #[arg(long)]
        cut: Option<String>,
    },
    /// Closure of B · Δ1 · B⁻¹ · Δ2.
    Goeritz {
        #[arg(long, default_value_t = 4)]
        strands: usize,
        /// Braid B as signed letters; default (1 -2 3 -2)^4 on four strands,
        /// empty otherwise.
        #[arg(long, allow_hyphen_values = true)]
        braid: Option<String>,
        /// Default: the half-twist flype on `strands`.
        #[arg(long, allow_hyphen_values = true)]
        delta1: Option<String>,
        /// Default: the inverse of the flype.
        #[arg(long, allow_hyphen_values = true)]
        delta2: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Standard,
    Fake,
}

#[derive(Subcommand)]
enum CorpusAction {
    List,
    Show { name: String },
}

#[derive(Subcommand)]
enum Export {
    /// The 4-regular map: crossings, rotation order, arcs, over flags.
    Graph { input: String },
    /// Corpus metadata.
    Index,
}

enum Failure {
    Domain(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Domain(_) => 1,
            Failure::Io(_) => 2,
        }
    }
}

type Outcome = Result<Output, Failure>;

struct Output {
    text: String,
    json: Value,
    status: u8,
}

impl Output {
    fn ok(text: String, json: Value) -> Outcome {
        Ok(Output {
            text,
            json,
            status: 0,
        })
    }
}

fn parse_size(s: &str) -> Result<usize, String> {
    let s = s.trim();
    let (digits, shift) = match s.char_indices().last() {
        Some((i, c)) if c.is_ascii_alphabetic() => {
            let shift = match c.to_ascii_uppercase() {
                'K' => 10,
                'M' => 20,
                'G' => 30,
                'T' => 40,
                _ => return Err(format!("unknown size suffix in {s:?}")),
            };
            (&s[..i], shift)
        }
        _ => (s, 0),
    };
    let n: usize = digits.parse().map_err(|_| format!("bad size {s:?}"))?;
    n.checked_mul(1 << shift).ok_or_else(|| format!("size {s:?} overflows"))
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

/// `corpus:NAME`, `file:PATH` or `@PATH`, otherwise an inline code.
fn input_code(input: &str) -> Result<GaussCode, Failure> {
    let text = if let Some(name) = input.strip_prefix("corpus:") {
        get_corpus(name)
            .map_err(|e| Failure::Domain(e.to_string()))?
            .code
            .to_string()
    } else if let Some(path) = input.strip_prefix("file:").or_else(|| input.strip_prefix('@')) {
        read_file(Path::new(path))?
    } else {
        input.to_string()
    };
    parse_gauss(&text).map_err(|e| Failure::Domain(describe_gauss(&e)))
}

fn describe_gauss(e: &GaussError) -> String {
    let kind = match e {
        GaussError::LabelCount { .. } => "LabelCountError",
        GaussError::PassMismatch { .. } => "PassMismatchError",
        GaussError::ZeroLabel => "ZeroLabelError",
        GaussError::Syntax(_) => "SyntaxError",
    };
    format!("{kind}: {e}")
}

fn describe_diagram(e: &DiagramError) -> String {
    match e {
        DiagramError::Gauss(g) => describe_gauss(g),
        DiagramError::NonRealizable(_) => format!("NonRealizable: {e}"),
        DiagramError::MultiComponent => format!("MultiComponent: {e}"),
        DiagramError::NotSpherical { .. } => format!("NotSpherical: {e}"),
        _ => e.to_string(),
    }
}

fn input_realization(input: &str) -> Result<Realization, Failure> {
    let code = input_code(input)?;
    realize(&code).map_err(|e| Failure::Domain(describe_diagram(&e)))
}

fn code_text(d: &PlanarDiagram) -> String {
    serialize_gauss(&d.to_gauss(Dart::new(0, 0)))
}

fn cmd_validate(input: &str) -> Outcome {
    let r = input_realization(input)?;
    let n = r.diagram.crossing_count();
    Output::ok(
        format!("valid: {n} crossings"),
        json!({ "valid": true, "crossings": n }),
    )
}

fn cmd_info(input: &str) -> Outcome {
    let code = input_code(input)?;
    let parity = parity_check(&code);
    let r = realize(&code).map_err(|e| Failure::Domain(describe_diagram(&e)))?;
    let d = &r.diagram;
    let canonical = d.canonical_code();
    let digest = format!("{:016x}", canonical.digest());
    let embeddings = if r.count_exact {
        r.embedding_count.to_string()
    } else {
        format!(">= {}", r.embedding_count)
    };
    let text = format!(
        "crossings: {}\nfaces: {}\nembeddings: {embeddings}\ncanonical digest: {digest}\nparity check: {}",
        d.crossing_count(),
        d.face_count(),
        if parity { "pass" } else { "fail" }
    );
    Output::ok(
        text,
        json!({
            "crossings": d.crossing_count(),
            "faces": d.face_count(),
            "embedding_count": r.embedding_count,
            "embedding_count_exact": r.count_exact,
            "canonical_digest": digest,
            "parity_check": parity,
        }),
    )
}

fn stats_json(s: &ClosureStats) -> Value {
    json!({ "cap": s.cap, "states": s.states, "expanded": s.expanded, "moves": s.moves })
}

fn cmd_extra(args: &ExtraArgs, verbose: bool) -> Outcome {
    let d = input_realization(&args.input)?.diagram;
    let opts = SearchOptions {
        memory_limit: args.mem_limit,
        threads: args.threads,
        ..Default::default()
    };
    let start = Instant::now();
    let r = compute_extra(&d, args.cap_max, &opts).map_err(|e| Failure::Domain(e.to_string()))?;
    if verbose {
        eprintln!("search finished in {:.3?}", start.elapsed());
    }
    let s = r.stats();
    let stats_line = format!(
        "cap {}, {} states, {} expanded, {} moves",
        s.cap, s.states, s.expanded, s.moves
    );
    let mut status = 0;
    let (text, value) = match &r {
        SearchResult::Exact {
            extra, certificate, ..
        } => {
            if let Some(path) = &args.certificate {
                std::fs::write(path, certificate.to_toml())
                    .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            }
            let recal = recalcitrance(&d, &r)
                .map(|q| format!("{}/{}", q.numer(), q.denom()))
                .ok();
            let mut text = format!("extra = {extra}\nmax crossings = {}", certificate.max_crossings);
            if let Some(q) = &recal {
                let _ = write!(text, "\nrecalcitrance = {q}");
            }
            (
                text,
                json!({
                    "result": "exact",
                    "extra": extra,
                    "max_crossings": certificate.max_crossings,
                    "steps": certificate.steps.len(),
                    "recalcitrance": recal,
                }),
            )
        }
        SearchResult::LowerBound { extra_at_least, .. } => (
            format!("extra >= {extra_at_least}"),
            json!({ "result": "lower_bound", "extra_at_least": extra_at_least }),
        ),
        SearchResult::Inconclusive { reason, .. } => {
            if args.strict {
                status = 3;
            }
            let tag = match reason {
                InconclusiveReason::MemoryExceeded => "memory_exceeded",
                InconclusiveReason::CapExhausted => "cap_exhausted",
            };
            (
                format!("inconclusive: {reason}"),
                json!({ "result": "inconclusive", "reason": tag }),
            )
        }
    };
    let mut value = value;
    value["stats"] = stats_json(s);
    Ok(Output {
        text: format!("{text}\n{stats_line}"),
        json: value,
        status,
    })
}

fn cmd_replay(path: &Path) -> Outcome {
    let text = read_file(path)?;
    let cert = Certificate::from_toml(&text).map_err(Failure::Domain)?;
    let rep = replay_certificate(&cert);
    let value = json!({
        "ok": rep.ok,
        "steps_verified": rep.steps_verified,
        "max_crossings": rep.max_crossings,
        "failed_step": rep.failed_step,
        "reason": rep.reason,
    });
    if rep.ok {
        Output::ok(
            format!(
                "certificate verified: {} steps, max crossings {}",
                rep.steps_verified, rep.max_crossings
            ),
            value,
        )
    } else {
        let at = rep
            .failed_step
            .map_or("final check".to_string(), |s| format!("step {s}"));
        Err(Failure::Domain(format!(
            "certificate fails at {at}: {}",
            rep.reason.unwrap_or_default()
        )))
    }
}

fn parse_dart(s: &str) -> Result<Dart, Failure> {
    let bad = || Failure::Domain(format!("bad dart {s:?}; expected crossing.port"));
    let (c, p) = s.split_once('.').ok_or_else(bad)?;
    let c: usize = c.parse().map_err(|_| bad())?;
    let p: u8 = p.parse().map_err(|_| bad())?;
    if p > 3 {
        return Err(bad());
    }
    Ok(Dart::new(c, p))
}

fn generated(d: PlanarDiagram) -> Outcome {
    let code = code_text(&d);
    Output::ok(
        code.clone(),
        json!({ "crossings": d.crossing_count(), "code": code }),
    )
}

fn generator_failure(e: GeneratorError) -> Failure {
    match e {
        GeneratorError::MultiComponent => Failure::Domain(format!("MultiComponent: {e}")),
        e => Failure::Domain(e.to_string()),
    }
}

fn cmd_generate(kind: &Generate) -> Outcome {
    match kind {
        Generate::Fhw { base, variant, cut } => {
            let k = input_realization(base)?.diagram;
            let variant = match variant {
                VariantArg::Standard => FhwVariant::Standard,
                VariantArg::Fake => FhwVariant::Fake,
            };
            let d = match cut {
                Some(c) => fhw_at(&k, parse_dart(c)?),
                None => fhw_generalized(&k, variant),
            }
            .map_err(generator_failure)?;
            generated(d)
        }
        Generate::Goeritz {
            strands,
            braid,
            delta1,
            delta2,
        } => {
            let k = *strands;
            if k < 2 {
                return Err(Failure::Domain("at least two strands needed".into()));
            }
            let word = |text: &Option<String>, default: BraidWord| match text {
                Some(t) => parse_braid(k, t).map_err(generator_failure),
                None => Ok(default),
            };
            let default_b = if k == 4 {
                default_goeritz_braid()
            } else {
                BraidWord::new(k, vec![]).map_err(generator_failure)?
            };
            let flype = half_twist_flype(k);
            let b = word(braid, default_b)?;
            let d1 = word(delta1, flype.clone())?;
            let d2 = word(delta2, braid_inverse(&flype))?;
            generated(goeritz_generalized(&b, &d1, &d2).map_err(generator_failure)?)
        }
    }
}

fn entry_json(e: &CorpusEntry) -> Value {
    json!({
        "name": e.name,
        "crossings": e.crossings,
        "extra": e.extra.to_string(),
        "reference": e.reference,
        "note": e.note,
    })
}

fn cmd_corpus(action: &CorpusAction) -> Outcome {
    match action {
        CorpusAction::List => {
            let mut text = String::new();
            for e in list_corpus() {
                let _ = writeln!(text, "{:<24} {:>4}  extra {}", e.name, e.crossings, e.extra);
            }
            let list: Vec<Value> = list_corpus().iter().map(entry_json).collect();
            Output::ok(text.trim_end().to_string(), Value::Array(list))
        }
        CorpusAction::Show { name } => {
            let e = get_corpus(name).map_err(|e| Failure::Domain(e.to_string()))?;
            let code = e.code.trim();
            let mut text = format!(
                "name: {}\ncrossings: {}\nextra: {}\nreference: {}",
                e.name, e.crossings, e.extra, e.reference
            );
            if let Some(note) = e.note {
                let _ = write!(text, "\nnote: {note}");
            }
            let _ = write!(text, "\ncode: {code}");
            let mut value = entry_json(e);
            value["code"] = json!(code);
            Output::ok(text, value)
        }
    }
}

fn cmd_export(format: &Export) -> Outcome {
    match format {
        Export::Graph { input } => {
            let d = input_realization(input)?.diagram;
            let n = d.crossing_count();
            if d.is_trivial() {
                return Output::ok(
                    "vertices 0\nedges 0\ncurves 1".to_string(),
                    json!({ "vertices": [], "edges": [], "trivial_curve": true }),
                );
            }
            let mut text = format!("vertices {n}\nedges {}\n", 2 * n);
            let mut vertices = Vec::with_capacity(n);
            for c in 0..n {
                let ports: Vec<String> = (0..4)
                    .map(|p| d.link(Dart::new(c, p)).to_string())
                    .collect();
                let over = if d.over02(c) { "0-2" } else { "1-3" };
                let _ = writeln!(text, "vertex {c} over {over} ports {}", ports.join(" "));
                vertices.push(json!({ "id": c, "over": over, "ports": ports }));
            }
            let mut edges = Vec::with_capacity(2 * n);
            for a in d.darts() {
                let b = d.link(a);
                if a.index() < b.index() {
                    let _ = writeln!(text, "edge {a} {b}");
                    edges.push(json!([a.to_string(), b.to_string()]));
                }
            }
            Output::ok(
                text.trim_end().to_string(),
                json!({ "vertices": vertices, "edges": edges, "trivial_curve": false }),
            )
        }
        Export::Index => {
            let mut text = String::from("name\tcrossings\textra\tnote\n");
            for e in list_corpus() {
                let _ = writeln!(
                    text,
                    "{}\t{}\t{}\t{}",
                    e.name,
                    e.crossings,
                    e.extra,
                    e.note.unwrap_or("")
                );
            }
            let list: Vec<Value> = list_corpus().iter().map(entry_json).collect();
            Output::ok(text.trim_end().to_string(), Value::Array(list))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Validate { input } => cmd_validate(input),
        Command::Info { input } => cmd_info(input),
        Command::Extra(args) => cmd_extra(args, cli.verbose),
        Command::Replay { path } => cmd_replay(path),
        Command::Generate { kind } => cmd_generate(kind),
        Command::Corpus { action } => cmd_corpus(action),
        Command::Export { format } => cmd_export(format),
    };
    match outcome {
        Ok(out) => {
            let body = if cli.json {
                serde_json::to_string_pretty(&out.json).expect("json values serialize")
            } else {
                out.text
            };
            // A closed pipe (e.g. `| head`) is not an error.
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            ExitCode::from(out.status)
        }
        Err(f) => {
            let msg = match &f {
                Failure::Domain(m) | Failure::Io(m) => m,
            };
            if cli.json {
                println!("{}", json!({ "error": msg, "exit": f.code() }));
            }
            eprintln!("error: {msg}");
            ExitCode::from(f.code())
        }
    }
}
