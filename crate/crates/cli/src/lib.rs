//! Command-line front end. Every verb is a thin adapter over `mosaic_core`;
//! reports are JSON on stdout, errors go to stderr.
//!
//! Exit codes: 0 success, 1 the input was rejected (invalid board, not a
//! knot, move not applicable, …), 2 usage error.

pub mod render;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::sync::{mpsc, Mutex};
use std::thread;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use mosaic_core::dual::{self, Dual, IvPolicy};
use mosaic_core::moves::{self, Embedding};
use mosaic_core::poly;
use mosaic_core::search::{self, Closure, CrossingPattern, EnumFilter, EnumOptions};
use mosaic_core::{trace, Mosaic, TileGrid};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REJECTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Overrides `--threads`.
pub const THREADS_ENV: &str = "MOSAIC_THREADS";

#[derive(Parser, Debug)]
#[command(name = "mosaic", version, about = "Knot mosaic toolkit")]
pub struct Cli {
    /// Worker threads for enumerate and census; 1 runs sequentially.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Shuffles how enumeration work is scheduled. Never changes results.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// json (default) or text for reports; ascii (default) or svg for render.
    #[arg(long, global = true, value_enum)]
    format: Option<OutFormat>,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Json,
    Text,
    Ascii,
    Svg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PolicyArg {
    A,
    B,
    Checkerboard,
}

impl From<PolicyArg> for IvPolicy {
    fn from(p: PolicyArg) -> Self {
        match p {
            PolicyArg::A => IvPolicy::AlwaysA,
            PolicyArg::B => IvPolicy::AlwaysB,
            PolicyArg::Checkerboard => IvPolicy::Checkerboard,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ClosureArg {
    A,
    B,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CrossingsArg {
    AllA,
    AllB,
    Alternating,
}

/// Board file, or stdin when absent or `-`.
#[derive(clap::Args, Debug)]
struct Input {
    input: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Check that every strand end meets a partner.
    Validate(Input),
    /// Components, crossings and knot-ness.
    Trace(Input),
    /// The dual of a mosaic and its components.
    Dual {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "a")]
        policy: PolicyArg,
    },
    /// The triple (l, l', l'') of the dual.
    Triple {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "a")]
        policy: PolicyArg,
    },
    /// List the applicable reduction moves, or apply one by index.
    Moves {
        #[command(flatten)]
        input: Input,
        #[arg(long, conflicts_with = "apply")]
        list: bool,
        #[arg(long, value_name = "IDX")]
        apply: Option<usize>,
    },
    /// Apply moves until none is useful; prints the log.
    Reduce(Input),
    /// Jones polynomial, breadth and palindromy.
    Jones(Input),
    /// Stream every suitably connected n-mosaic as JSON lines.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        knots_only: bool,
        #[arg(long, value_name = "K")]
        max_crossings: Option<usize>,
    },
    /// Canonical knot n-mosaics grouped by Jones polynomial, as JSON lines.
    Census {
        #[arg(long)]
        n: usize,
        /// Identify mirror images.
        #[arg(long)]
        merge_mirrors: bool,
        /// Keep per-unit checkpoints here and resume from them.
        #[arg(long, value_name = "DIR")]
        checkpoint: Option<PathBuf>,
    },
    /// Crossing bound for a board size, or mosaic number bound for a crossing number.
    #[command(group(ArgGroup::new("query").required(true).args(["m", "c"])))]
    Bounds {
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        c: Option<i64>,
    },
    /// Saturated or endless boards.
    #[command(group(ArgGroup::new("board").required(true).args(["saturated", "endless"])))]
    Build {
        #[arg(long, value_name = "N", requires = "closure")]
        saturated: Option<usize>,
        #[arg(long, value_enum)]
        closure: Option<ClosureArg>,
        #[arg(long, value_enum, default_value = "alternating")]
        crossings: CrossingsArg,
        #[arg(long, value_name = "K")]
        endless: Option<usize>,
    },
    /// Picture of a mosaic (.kmo) or dual (.kmd).
    Render(Input),
}

/// Standard streams, swappable for tests.
pub struct Io<'a> {
    pub stdin: &'a mut dyn Read,
    pub stdout: &'a mut dyn Write,
    pub stderr: &'a mut dyn Write,
}

enum Failure {
    Usage(String),
    /// Domain rejection; the report, if any, still goes to stdout.
    Rejected { message: String, report: Option<Value> },
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn reject(e: impl ToString) -> Failure {
    Failure::Rejected { message: e.to_string(), report: None }
}

type Outcome = Result<(), Failure>;

/// Parses `args` (program name first) and runs the verb.
pub fn dispatch<I, T>(args: I, io: &mut Io) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { io.stderr } else { io.stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let threads = match thread_count(cli.threads, std::env::var(THREADS_ENV).ok()) {
        Ok(t) => t,
        Err(msg) => return usage(io, &msg),
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(e) => return usage(io, &e.to_string()),
    };
    let parallel = threads != Some(1);
    let result = run(&cli, &pool, parallel, io);
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => usage(io, &msg),
        Err(Failure::Rejected { message, report }) => {
            if let Some(r) = report {
                let _ = writeln!(io.stdout, "{r}");
            }
            let _ = writeln!(io.stderr, "{}", json!({ "error": message }));
            EXIT_REJECTED
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(io.stderr, "{}", json!({ "error": e.to_string() }));
            EXIT_REJECTED
        }
    }
}

fn usage(io: &mut Io, msg: &str) -> i32 {
    let _ = writeln!(io.stderr, "error: {msg}");
    EXIT_USAGE
}

/// The environment wins over the flag.
fn thread_count(flag: Option<usize>, env: Option<String>) -> Result<Option<usize>, String> {
    let n = match env {
        Some(v) => Some(v.trim().parse::<usize>().map_err(|_| format!("{THREADS_ENV}={v:?} is not a thread count"))?),
        None => flag,
    };
    match n {
        Some(0) => Err("thread count must be positive".into()),
        n => Ok(n),
    }
}

fn read_input(input: &Input, io: &mut Io) -> Result<(String, bool), Failure> {
    match &input.input {
        Some(p) if p.as_os_str() != "-" => {
            let text = fs::read_to_string(p).map_err(|e| reject(format!("{}: {e}", p.display())))?;
            Ok((text, p.extension().is_some_and(|e| e == "kmd")))
        }
        _ => {
            let mut text = String::new();
            io.stdin.read_to_string(&mut text)?;
            Ok((text, false))
        }
    }
}

fn read_mosaic(input: &Input, io: &mut Io) -> Result<Mosaic, Failure> {
    let (text, _) = read_input(input, io)?;
    Mosaic::parse(&text).map_err(reject)
}

/// A mosaic that validates.
fn read_valid(input: &Input, io: &mut Io) -> Result<Mosaic, Failure> {
    let m = read_mosaic(input, io)?;
    let report = m.validate();
    if !report.is_ok() {
        return Err(Failure::Rejected {
            message: report.to_string(),
            report: Some(json!({ "valid": false, "violations": report.violations })),
        });
    }
    Ok(m)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Style {
    Json,
    Text,
}

fn report_style(f: Option<OutFormat>) -> Result<Style, Failure> {
    match f {
        None | Some(OutFormat::Json) => Ok(Style::Json),
        Some(OutFormat::Text) => Ok(Style::Text),
        Some(other) => Err(Failure::Usage(format!("--format {other:?} applies to render only").to_lowercase())),
    }
}

fn emit(io: &mut Io, style: Style, value: Value, text: impl FnOnce() -> String) -> Outcome {
    match style {
        Style::Json => writeln!(io.stdout, "{value}")?,
        Style::Text => {
            let t = text();
            io.stdout.write_all(t.as_bytes())?;
            if !t.ends_with('\n') {
                writeln!(io.stdout)?;
            }
        }
    }
    Ok(())
}

fn run(cli: &Cli, pool: &rayon::ThreadPool, parallel: bool, io: &mut Io) -> Outcome {
    if let Verb::Render(input) = &cli.verb {
        let format = match cli.format {
            None | Some(OutFormat::Ascii) | Some(OutFormat::Text) => render::Format::Ascii,
            Some(OutFormat::Svg) => render::Format::Svg,
            Some(OutFormat::Json) => return Err(Failure::Usage("render writes ascii or svg".into())),
        };
        let grid = read_grid(input, io)?;
        io.stdout.write_all(render::render(&grid, format).as_bytes())?;
        return Ok(());
    }
    let style = report_style(cli.format)?;
    let opts = EnumOptions { seed: cli.seed, parallel, ..EnumOptions::default() };
    match &cli.verb {
        Verb::Validate(input) => {
            let m = read_mosaic(input, io)?;
            let report = m.validate();
            let value = json!({ "valid": report.is_ok(), "violations": report.violations });
            if report.is_ok() {
                emit(io, style, json!({ "valid": true }), || "valid".into())
            } else {
                let text = report.to_string();
                emit(io, style, value, || text.clone())?;
                Err(reject(text))
            }
        }
        Verb::Trace(input) => {
            let m = read_valid(input, io)?;
            let s = trace::classify(&m);
            let nugatory = trace::nugatory_crossings(&m).map_err(reject)?;
            let walks = trace::trace_components(&m).map_err(reject)?;
            let lengths: Vec<usize> = walks.iter().map(|w| w.steps.len()).collect();
            let value = json!({
                "components": s.components,
                "crossings": s.crossings,
                "is_knot": s.is_knot(),
                "nugatory": nugatory,
                "walk_lengths": lengths,
            });
            emit(io, style, value, || {
                format!(
                    "components {} crossings {} knot {} nugatory {}",
                    s.components.unwrap_or(0),
                    s.crossings.unwrap_or(0),
                    s.is_knot(),
                    nugatory.len()
                )
            })
        }
        Verb::Dual { input, policy } => {
            let m = read_valid(input, io)?;
            let d = dual::compute_dual(&m, (*policy).into()).map_err(reject)?;
            let comps = dual::classify_dual(&d);
            let value = json!({ "dual": d.serialize(), "triple": dual::triple(&d), "components": comps });
            emit(io, style, value, || d.serialize())
        }
        Verb::Triple { input, policy } => {
            let m = read_valid(input, io)?;
            let d = dual::compute_dual(&m, (*policy).into()).map_err(reject)?;
            let t = dual::triple(&d);
            emit(io, style, json!({ "triple": t }), || t.to_string())
        }
        Verb::Moves { input, list: _, apply } => {
            let m = read_valid(input, io)?;
            let e = Embedding::new(&m, IvPolicy::default()).map_err(reject)?;
            let found = moves::find_moves(&e);
            match apply {
                None => {
                    let blocked = moves::blocked_moves(&e);
                    let value = json!({ "triple": e.triple(), "moves": found, "blocked": blocked });
                    emit(io, style, value, || {
                        found
                            .iter()
                            .enumerate()
                            .map(|(i, mv)| format!("{i} {} {:?}\n", mv.kind, mv.anchor))
                            .collect()
                    })
                }
                Some(idx) => {
                    let mv = found.get(*idx).ok_or_else(|| reject(format!("no move {idx}; {} found", found.len())))?;
                    let out = moves::apply_move(&e, mv).map_err(reject)?;
                    let value = json!({ "move": mv, "outcome": out });
                    emit(io, style, value, || out.mosaic.serialize())
                }
            }
        }
        Verb::Reduce(input) => {
            let m = read_valid(input, io)?;
            let r = moves::reduce_to_fixpoint(&m).map_err(reject)?;
            let before = dual::triple(&dual::compute_dual(&m, IvPolicy::default()).map_err(reject)?);
            let value = json!({
                "mosaic": r.mosaic,
                "dual": r.dual,
                "triple_before": before,
                "triple_after": dual::triple(&r.dual),
                "log": r.log,
            });
            emit(io, style, value, || r.mosaic.serialize())
        }
        Verb::Jones(input) => {
            let m = read_valid(input, io)?;
            let v = poly::jones(&m).map_err(reject)?;
            let a = poly::analyze_jones(&v).map_err(reject)?;
            let w = poly::writhe(&m).map_err(reject)?;
            let value = json!({
                "jones": v.to_string(),
                "breadth": a.breadth,
                "palindromic": a.palindromic,
                "writhe": w,
                "crossings": m.crossing_count(),
            });
            emit(io, style, value, || v.to_string())
        }
        Verb::Enumerate { n, knots_only, max_crossings } => {
            if *n < 1 {
                return Err(Failure::Usage("--n must be at least 1".into()));
            }
            let filter = EnumFilter { require_knot: *knots_only, min_crossings: 0, max_crossings: *max_crossings };
            // the search runs on the pool; this thread streams its yields
            let (tx, rx) = mpsc::channel::<String>();
            let stats = thread::scope(|scope| -> Result<_, Failure> {
                let worker = scope.spawn(|| {
                    let tx = Mutex::new(tx);
                    pool.install(|| {
                        search::enumerate_mosaics(*n, &filter, &opts, &|m| {
                            let _ = tx.lock().unwrap().send(m.serialize());
                        })
                    })
                });
                let mut failed = None;
                for kmo in rx {
                    if failed.is_some() {
                        continue;
                    }
                    let r = match style {
                        Style::Json => writeln!(io.stdout, "{}", json!({ "mosaic": kmo })),
                        Style::Text => writeln!(io.stdout, "{kmo}"),
                    };
                    failed = r.err();
                }
                let stats = worker.join().expect("enumeration thread");
                match failed {
                    Some(e) => Err(Failure::Io(e)),
                    None => Ok(stats),
                }
            })?;
            let sink = &mut *io.stdout;
            match style {
                Style::Json => writeln!(sink, "{}", json!({ "summary": stats }))?,
                Style::Text => writeln!(sink, "# {} yielded, {} nodes", stats.yielded, stats.nodes)?,
            }
            Ok(())
        }
        Verb::Census { n, merge_mirrors, checkpoint } => {
            if *n < 1 {
                return Err(Failure::Usage("--n must be at least 1".into()));
            }
            let c = match checkpoint {
                Some(dir) => pool.install(|| search::census_resumable(*n, *merge_mirrors, &opts, dir)).map_err(reject)?,
                None => pool.install(|| search::census(*n, *merge_mirrors, &opts)),
            };
            for e in c.entries() {
                match style {
                    Style::Json => writeln!(io.stdout, "{}", e.to_json_line())?,
                    Style::Text => writeln!(io.stdout, "{}\t{}\t{}\t{}", e.jones, e.count, e.crossings_min, e.crossings_max)?,
                }
            }
            let summary = json!({ "summary": { "n": n, "jones_classes": c.len(), "knot_classes": c.classes(), "stats": c.stats } });
            match style {
                Style::Json => writeln!(io.stdout, "{summary}")?,
                Style::Text => writeln!(io.stdout, "# {} jones classes, {} knot classes", c.len(), c.classes())?,
            }
            Ok(())
        }
        Verb::Bounds { m, c } => {
            if let Some(m) = m {
                let b = search::crossing_upper_bound(*m).map_err(reject)?;
                emit(io, style, json!({ "crossing_upper_bound": b }), || b.to_string())
            } else {
                let c = c.expect("clap enforces one of --m, --c");
                let lb = search::mosaic_number_lower_bound(c).map_err(reject)?;
                let value = json!({
                    "mosaic_number_lower_bound": lb,
                    "b1": search::b1(c as f64),
                    "b2": search::b2(c as f64),
                });
                emit(io, style, value, || lb.to_string())
            }
        }
        Verb::Build { saturated, closure, crossings, endless } => {
            let m = match (saturated, endless) {
                (Some(n), _) => {
                    if *n < 3 {
                        return Err(reject(format!("a saturated board needs n >= 3, got {n}")));
                    }
                    let closure = match closure.expect("clap requires --closure") {
                        ClosureArg::A => Closure::A,
                        ClosureArg::B => Closure::B,
                    };
                    let pattern = match crossings {
                        CrossingsArg::AllA => CrossingPattern::AllA,
                        CrossingsArg::AllB => CrossingPattern::AllB,
                        CrossingsArg::Alternating => CrossingPattern::Alternating,
                    };
                    search::build_saturated(*n, closure, pattern)
                }
                (None, Some(k)) => {
                    if *k < 2 {
                        return Err(reject(format!("the endless family starts at k = 2, got {k}")));
                    }
                    search::build_endless(*k)
                }
                (None, None) => unreachable!("clap requires a board"),
            };
            let s = trace::classify(&m);
            let value = json!({
                "mosaic": m.serialize(),
                "crossings": m.crossing_count(),
                "components": s.components,
            });
            emit(io, style, value, || m.serialize())
        }
        Verb::Render(_) => unreachable!("handled above"),
    }
}

/// A `.kmd` file, or any text with a type 0 token, is read as a dual.
fn read_grid(input: &Input, io: &mut Io) -> Result<TileGrid, Failure> {
    let (text, kmd) = read_input(input, io)?;
    let has_dot = text.lines().skip(1).any(|l| l.split_whitespace().any(|t| t == "0"));
    if kmd || has_dot {
        return Ok(Dual::parse(&text).map_err(reject)?.grid().clone());
    }
    Ok(Mosaic::parse(&text).map_err(reject)?.grid().clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn environment_beats_flag() {
        assert_eq!(thread_count(Some(4), Some("2".into())), Ok(Some(2)));
        assert_eq!(thread_count(Some(4), None), Ok(Some(4)));
        assert_eq!(thread_count(None, None), Ok(None));
        assert!(thread_count(None, Some("x".into())).is_err());
        assert!(thread_count(Some(0), None).is_err());
    }
}
