//! Command line front end. Every command writes JSON (or DOT) to stdout.
//!
//! Exit codes: 0 on success or a realizable input, 1 when the input is well
//! formed but not realizable, 2 on malformed input or bad arguments.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::data::{self, FixedPointData};
use crate::decider::decide;
use crate::enumeration::{self, EnumerationBounds};
use crate::error::Error;
use crate::invariants::structural_checks;
use crate::multigraph::{graph_of, realize, to_dot, Multigraph, Realization};
use crate::ops4::ConstructionTrace;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_REALIZABLE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "cfp",
    version,
    about = "Fixed point data of circle actions on 4-manifolds"
)]
struct Cli {
    /// Pretty-print JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide realizability of fixed point data.
    Check { file: PathBuf },
    /// Print a construction trace for realizable data.
    Trace { file: PathBuf },
    /// Run the invariant battery.
    Invariants { file: PathBuf },
    /// List all realizable data within bounds, one JSON object per line.
    Enumerate {
        #[command(flatten)]
        bounds: BoundArgs,
        #[arg(long)]
        with_traces: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Signatures realized by exactly the given number of points.
    Spectrum {
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Match small realizable data against the closed-form families.
    Classify {
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Build the multigraph of a trace or of realizable data, or realize a graph.
    Graph {
        #[command(flatten)]
        source: GraphSource,
    },
    /// Render the multigraph in DOT.
    Dot {
        #[command(flatten)]
        source: GraphSource,
    },
}

#[derive(Debug, Args)]
struct BoundArgs {
    #[arg(long)]
    points: usize,
    #[arg(long)]
    max_weight: u64,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct GraphSource {
    #[arg(long)]
    data: Option<PathBuf>,
    #[arg(long)]
    trace: Option<PathBuf>,
    #[arg(long)]
    graph: Option<PathBuf>,
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    pretty: bool,
}

impl Io<'_> {
    fn read(&mut self, path: &PathBuf) -> std::result::Result<String, String> {
        if path.as_os_str() == "-" {
            let mut s = String::new();
            self.stdin
                .read_to_string(&mut s)
                .map_err(|e| format!("stdin: {e}"))?;
            Ok(s)
        } else {
            std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
        }
    }

    fn json<T: Serialize>(&mut self, value: &T) -> std::io::Result<()> {
        let text = if self.pretty {
            serde_json::to_string_pretty(value)
        } else {
            serde_json::to_string(value)
        }
        .expect("serializable");
        writeln!(self.out, "{text}")
    }
}

enum Failure {
    Invalid(String),
    NotRealizable,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Invalid(format!("write failed: {e}"))
    }
}

/// Runs the tool on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let mut io = Io {
        stdin,
        out,
        err,
        pretty: cli.pretty,
    };
    match execute(cli.command, &mut io) {
        Ok(()) => EXIT_OK,
        Err(Failure::NotRealizable) => EXIT_NOT_REALIZABLE,
        Err(Failure::Invalid(msg)) => {
            let _ = writeln!(io.err, "error: {msg}");
            EXIT_INVALID
        }
    }
}

fn load_data(io: &mut Io, path: &PathBuf) -> std::result::Result<FixedPointData, Failure> {
    let text = io.read(path).map_err(Failure::Invalid)?;
    Ok(data::parse(&text)?)
}

fn load_trace(io: &mut Io, path: &PathBuf) -> std::result::Result<ConstructionTrace, Failure> {
    let text = io.read(path).map_err(Failure::Invalid)?;
    Ok(ConstructionTrace::parse(&text)?)
}

#[derive(Serialize)]
struct EntryLine<'a> {
    #[serde(flatten)]
    data: &'a FixedPointData,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<&'a ConstructionTrace>,
}

enum Built {
    Graph(Multigraph),
    Given(Multigraph, Realization),
}

fn build_graph(io: &mut Io, source: &GraphSource) -> std::result::Result<Built, Failure> {
    if let Some(path) = &source.trace {
        let trace = load_trace(io, path)?;
        return Ok(Built::Graph(graph_of(&trace)?));
    }
    if let Some(path) = &source.data {
        let data = load_data(io, path)?;
        let decision = decide(&data)?;
        return match decision.trace {
            Some(trace) => Ok(Built::Graph(graph_of(&trace)?)),
            None => {
                io.json(&decision)?;
                Err(Failure::NotRealizable)
            }
        };
    }
    let path = source.graph.as_ref().expect("clap enforces one source");
    let text = io.read(path).map_err(Failure::Invalid)?;
    let g = Multigraph::parse(&text)?;
    let realization = realize(&g)?;
    Ok(Built::Given(g, realization))
}

fn execute(command: Command, io: &mut Io) -> std::result::Result<(), Failure> {
    match command {
        Command::Check { file } => {
            let decision = decide(&load_data(io, &file)?)?;
            io.json(&decision)?;
            if !decision.realizable {
                return Err(Failure::NotRealizable);
            }
        }
        Command::Trace { file } => {
            let decision = decide(&load_data(io, &file)?)?;
            match &decision.trace {
                Some(trace) => io.json(trace)?,
                None => {
                    io.json(&decision)?;
                    return Err(Failure::NotRealizable);
                }
            }
        }
        Command::Invariants { file } => {
            let report = structural_checks(&load_data(io, &file)?);
            io.json(&report)?;
        }
        Command::Enumerate {
            bounds,
            with_traces,
            jobs,
        } => {
            let bounds = EnumerationBounds::new(bounds.points, bounds.max_weight);
            let corpus = enumeration::enumerate_with_jobs(bounds, jobs.max(1));
            for (data, trace) in corpus.iter() {
                io.json(&EntryLine {
                    data,
                    trace: with_traces.then_some(trace),
                })?;
            }
        }
        Command::Spectrum { bounds } => {
            let spectrum = enumeration::signature_spectrum(bounds.points, bounds.max_weight);
            io.json(&spectrum)?;
        }
        Command::Classify { bounds } => {
            for entry in enumeration::classify_small(bounds.points, bounds.max_weight)? {
                io.json(&entry)?;
            }
        }
        Command::Graph { source } => match build_graph(io, &source)? {
            Built::Graph(g) => io.json(&g)?,
            Built::Given(_, r) => {
                io.json(&r)?;
                if let Realization::NotRealizable { .. } = r {
                    return Err(Failure::NotRealizable);
                }
            }
        },
        Command::Dot { source } => match build_graph(io, &source)? {
            Built::Graph(g) | Built::Given(g, _) => write!(io.out, "{}", to_dot(&g))?,
        },
    }
    Ok(())
}
