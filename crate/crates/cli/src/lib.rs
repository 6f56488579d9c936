//! `modugraph` command line. [`run`] does all the work so tests can drive it
//! with in-memory streams.

use std::fs::File;
use std::io::{self, Write};
use std::net::{IpAddr, SocketAddr};
use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use modugraph::analysis::{label_sets, maximal_cliques, maximal_independent_sets, walks, WalkOptions};
use modugraph::corpus::{build_directed_graph, load_corpus, CorpusAnalysis, ModulationRecord, FIXTURE_CSV};
use modugraph::export::{corpus_to_dot, graph_to_dot, graph_to_json, load_graph_json};
use modugraph::report::{
    analyze, automorphism_summary, classes_table, clique_classes, independent_set_classes,
    render_automorphisms,
};
use modugraph::{GraphPreset, KeyLabel, PivotGraph};
use modugraph_service::{ServiceState, Snapshot};

/// Exit status for bad input: unknown preset, vertex or file, malformed data.
pub const EXIT_USAGE: i32 = 2;
/// Exit status when an internal consistency check fails.
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "modugraph", version, about = "Pivot-modulation graphs of musical keys")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Diameter, clique and independence numbers, set classes, automorphisms.
    Analyze(GraphOpts),
    /// Maximal cliques grouped into transposition classes.
    Cliques(GraphOpts),
    /// Maximal independent sets grouped into transposition classes.
    Indepsets(GraphOpts),
    /// Automorphism group order and generators.
    Automorphisms(GraphOpts),
    /// Pivot triads shared by two keys.
    Pivots {
        #[command(flatten)]
        graph: GraphOpts,
        #[arg(long)]
        from: KeyLabel,
        #[arg(long)]
        to: KeyLabel,
    },
    /// Every walk of a fixed length between two keys.
    Walks {
        #[command(flatten)]
        graph: GraphOpts,
        #[arg(long)]
        from: KeyLabel,
        #[arg(long)]
        to: KeyLabel,
        #[arg(long)]
        steps: usize,
        /// Skip walks that return straight to the previous key.
        #[arg(long)]
        no_backtrack: bool,
        /// List one walk per choice of pivot triad at each step.
        #[arg(long)]
        with_pivots: bool,
    },
    /// Statistics over an annotated modulation corpus.
    Corpus {
        #[command(flatten)]
        corpus: CorpusOpts,
        #[arg(long)]
        json: bool,
    },
    /// Write the graph (or, with a corpus, the observed modulations) as DOT or JSON.
    Export {
        #[command(flatten)]
        graph: GraphOpts,
        /// Export the observed modulations of this corpus CSV instead of the graph.
        #[arg(long, conflicts_with = "fixture")]
        corpus: Option<PathBuf>,
        /// Export the observed modulations of the bundled fixture.
        #[arg(long)]
        fixture: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the HTTP API.
    Serve {
        #[command(flatten)]
        graph: GraphOpts,
        #[command(flatten)]
        corpus: CorpusOpts,
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: IpAddr,
    },
}

#[derive(Debug, Args)]
struct GraphOpts {
    /// Built-in graph: major12, minor12 or combined24.
    #[arg(long, conflicts_with = "graph", default_value = "combined24")]
    preset: String,
    /// Custom graph JSON file.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct CorpusOpts {
    /// Corpus CSV file.
    #[arg(long, env = "MODUGRAPH_CORPUS", conflicts_with = "fixture")]
    corpus: Option<PathBuf>,
    /// Use the bundled fixture corpus.
    #[arg(long)]
    fixture: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Dot,
    Json,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Internal(String),
}

impl From<modugraph::Error> for Failure {
    fn from(e: modugraph::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

/// Run one invocation. `argv[0]` is the program name.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = panic::catch_unwind(AssertUnwindSafe(|| execute(cli.command, out)));
    let failure = match result {
        Ok(Ok(())) => return 0,
        Ok(Err(f)) => f,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .map(String::as_str)
                .or_else(|| payload.downcast_ref::<&str>().copied())
                .unwrap_or("unknown panic");
            Failure::Internal(msg.to_owned())
        }
    };
    match failure {
        Failure::Usage(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Failure::Internal(msg) => {
            let _ = writeln!(err, "internal error: {msg}");
            EXIT_INTERNAL
        }
    }
}

fn load_graph(opts: &GraphOpts) -> Result<PivotGraph, Failure> {
    match &opts.graph {
        Some(path) => {
            let file = open(path)?;
            load_graph_json(file).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
        }
        None => Ok(opts.preset.parse::<GraphPreset>()?.build()),
    }
}

fn open(path: &Path) -> Result<File, Failure> {
    File::open(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_records(opts: &CorpusOpts) -> Result<Option<Vec<ModulationRecord>>, Failure> {
    if opts.fixture {
        return Ok(Some(load_corpus(FIXTURE_CSV.as_bytes())?));
    }
    match &opts.corpus {
        Some(path) => {
            let records = load_corpus(open(path)?)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            Ok(Some(records))
        }
        None => Ok(None),
    }
}

fn print_json(out: &mut dyn Write, value: &impl serde::Serialize) -> Outcome {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Internal(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn execute(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Analyze(opts) => {
            let g = load_graph(&opts)?;
            let report = analyze(&g);
            if opts.json {
                print_json(out, &report)
            } else {
                out.write_all(report.render_text().as_bytes())?;
                Ok(())
            }
        }
        Command::Cliques(opts) => {
            let g = load_graph(&opts)?;
            let sets = label_sets(&g, &maximal_cliques(&g));
            vertex_sets(out, &opts, "Maximal cliques", clique_classes(&g), sets)
        }
        Command::Indepsets(opts) => {
            let g = load_graph(&opts)?;
            let sets = label_sets(&g, &maximal_independent_sets(&g));
            vertex_sets(out, &opts, "Maximal independent sets", independent_set_classes(&g), sets)
        }
        Command::Automorphisms(opts) => {
            let g = load_graph(&opts)?;
            let summary = automorphism_summary(&g);
            if opts.json {
                print_json(out, &summary)
            } else {
                out.write_all(render_automorphisms(&summary).as_bytes())?;
                Ok(())
            }
        }
        Command::Pivots { graph, from, to } => {
            let g = load_graph(&graph)?;
            let (u, v) = (g.vertex(from)?, g.vertex(to)?);
            if u == v {
                return Err(Failure::Usage(format!("--from and --to are both {from}")));
            }
            let pivots: Vec<String> = g.pivots_between(u, v).iter().map(|t| t.to_string()).collect();
            if graph.json {
                print_json(out, &json!({ "from": from, "to": to, "pivots": pivots }))
            } else {
                for p in &pivots {
                    writeln!(out, "{p}")?;
                }
                Ok(())
            }
        }
        Command::Walks { graph, from, to, steps, no_backtrack, with_pivots } => {
            let g = load_graph(&graph)?;
            let (u, v) = (g.vertex(from)?, g.vertex(to)?);
            let found = walks(&g, u, v, steps, WalkOptions { no_backtrack, with_pivots })?;
            if graph.json {
                let list: Vec<_> = found
                    .iter()
                    .map(|w| {
                        let keys: Vec<KeyLabel> = w.vertices.iter().map(|&x| g.label(x)).collect();
                        match &w.pivots {
                            Some(p) => json!({ "keys": keys, "pivots": p }),
                            None => json!({ "keys": keys }),
                        }
                    })
                    .collect();
                return print_json(out, &list);
            }
            for w in &found {
                let mut line = g.label(w.vertices[0]).to_string();
                for (i, &x) in w.vertices[1..].iter().enumerate() {
                    match &w.pivots {
                        Some(p) => line.push_str(&format!(" -[{}]-> ", p[i])),
                        None => line.push_str(" -> "),
                    }
                    line.push_str(&g.label(x).to_string());
                }
                writeln!(out, "{line}")?;
            }
            writeln!(out, "{} walks", found.len())?;
            Ok(())
        }
        Command::Corpus { corpus, json } => {
            let records = load_records(&corpus)?.ok_or_else(|| {
                Failure::Usage("no corpus given (use --corpus, --fixture or MODUGRAPH_CORPUS)".into())
            })?;
            let analysis = CorpusAnalysis::new(&records);
            if json {
                print_json(out, &analysis)
            } else {
                out.write_all(render_corpus(&analysis).as_bytes())?;
                Ok(())
            }
        }
        Command::Export { graph, corpus, fixture, format, out: path } => {
            let text = match load_records(&CorpusOpts { corpus, fixture })? {
                Some(records) => match format {
                    Format::Dot => corpus_to_dot(&build_directed_graph(&records)),
                    Format::Json => {
                        let analysis = CorpusAnalysis::new(&records);
                        serde_json::to_string_pretty(&analysis).map_err(|e| Failure::Internal(e.to_string()))? + "\n"
                    }
                },
                None => {
                    let g = load_graph(&graph)?;
                    match format {
                        Format::Dot => graph_to_dot(&g),
                        Format::Json => graph_to_json(&g),
                    }
                }
            };
            match path {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
                None => Ok(out.write_all(text.as_bytes())?),
            }
        }
        Command::Serve { graph, corpus, port, host } => {
            let g = load_graph(&graph)?;
            let snapshot = load_records(&corpus)?.map(Snapshot::new);
            let state = ServiceState::new(g, snapshot);
            let addr = SocketAddr::new(host, port);
            let runtime = tokio::runtime::Runtime::new()?;
            writeln!(out, "listening on http://{addr}/api/v1")?;
            out.flush()?;
            runtime
                .block_on(modugraph_service::serve(state, addr))
                .map_err(|e| Failure::Usage(format!("{addr}: {e}")))
        }
    }
}

fn vertex_sets(
    out: &mut dyn Write,
    opts: &GraphOpts,
    title: &str,
    classes: Vec<modugraph::analysis::VertexSetClass>,
    sets: Vec<Vec<KeyLabel>>,
) -> Outcome {
    let listed: usize = classes.iter().map(|c| c.count()).sum();
    if listed != sets.len() {
        return Err(Failure::Internal(format!("{listed} sets in classes, {} enumerated", sets.len())));
    }
    if opts.json {
        return print_json(out, &json!({ "count": sets.len(), "classes": classes, "sets": sets }));
    }
    out.write_all(classes_table(title, &classes).as_bytes())?;
    writeln!(out, "total: {}", sets.len())?;
    Ok(())
}

fn render_corpus(a: &CorpusAnalysis) -> String {
    let mut s = format!(
        "songs: {}\nrecords: {}\ndistinct classes: {}\nunique song graphs: {}\n\n",
        a.songs, a.records, a.distinct_classes, a.song_graphs.unique
    );
    s.push_str("Class              | Songs | Pivot\n");
    s.push_str("-------------------+-------+------\n");
    for c in &a.histogram {
        let pivot = if c.theory_permits_pivot { "yes" } else { "no" };
        s.push_str(&format!("{:<18} | {:>5} | {pivot}\n", c.notation, c.songs));
    }
    let t = &a.degrees.totals;
    s.push_str(&format!(
        "\nedges: {} (pivot only {}, direct only {}, both {}; {} without a theoretical pivot)\n",
        t.edges, t.pivot_only, t.direct_only, t.both, t.without_theoretical_pivot
    ));
    let isolated: Vec<String> = a.degrees.isolated.iter().map(KeyLabel::to_string).collect();
    s.push_str(&format!("isolated: {}\n", isolated.join(", ")));
    for w in &a.warnings {
        s.push_str(&format!("warning: line {} ({}): {}\n", w.line, w.song_id, w.message));
    }
    s
}
