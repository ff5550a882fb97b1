use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use zdsemi::report::{
    cmd_count, cmd_enumerate, cmd_export_dot, cmd_verify, dump_labeled, emit, parse_range,
    EnumerateRequest, Format, Method, RunConfig,
};
use zdsemi::{PendantCase, TargetGraph};

#[derive(Parser)]
#[command(
    name = "zdsemi",
    version,
    about = "Count and enumerate zero-divisor semigroups with graph K_n or K_n+1"
)]
struct Cli {
    /// Worker threads (default: available cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Run oracle searches above the desk budget.
    #[arg(long, global = true)]
    allow_long_run: bool,
    /// Directory for cached generator and oracle results.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Count isomorphism classes by formula, generator and oracle.
    Count {
        #[command(flatten)]
        target: TargetArgs,
        #[arg(long, value_enum, default_value = "all")]
        method: MethodArg,
        /// Also write the report as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the report as JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Write class representatives as JSON, CSV or DOT.
    Enumerate {
        #[command(flatten)]
        target: TargetArgs,
        #[arg(long, value_enum, default_value = "oracle")]
        method: MethodArg,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
        /// Output file (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Keep only classes with this x1^2 (kn1 only).
        #[arg(long, value_parser = ["0", "x1", "a1", "a2"])]
        x1_square: Option<String>,
        /// Also write every accepted labeled table as NDJSON.
        #[arg(long)]
        dump_labeled: Option<PathBuf>,
    },
    /// Run every check that fits the budget for n in RANGE (e.g. 3..4).
    Verify {
        range: String,
        /// Also write the matrix and count reports as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// DOT for a target graph, or for the zero-divisor graph of a table.
    ExportDot {
        #[arg(long, value_enum)]
        graph: Option<GraphArg>,
        #[arg(long)]
        n: Option<usize>,
        /// MulTable JSON file.
        #[arg(long, conflicts_with_all = ["graph", "n"])]
        table: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct TargetArgs {
    #[arg(long, value_enum)]
    graph: GraphArg,
    #[arg(long)]
    n: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphArg {
    Kn,
    Kn1,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Formula,
    Generator,
    Oracle,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Dot,
}

fn target(graph: GraphArg, n: usize) -> TargetGraph {
    match graph {
        GraphArg::Kn => TargetGraph::CompleteK { n },
        GraphArg::Kn1 => TargetGraph::CompletePlusEnd { n },
    }
}

fn methods(m: MethodArg) -> Vec<Method> {
    match m {
        MethodArg::Formula => vec![Method::Formula],
        MethodArg::Generator => vec![Method::Generator],
        MethodArg::Oracle => vec![Method::Oracle],
        MethodArg::All => Method::ALL.to_vec(),
    }
}

fn run(cli: Cli) -> zdsemi::Result<u8> {
    let cfg = RunConfig {
        parallel: cli.jobs != Some(1),
        allow_long_run: cli.allow_long_run,
        cache_dir: cli.cache_dir,
    };
    match cli.cmd {
        Cmd::Count {
            target: t,
            method,
            out,
            json,
        } => {
            let report = cmd_count(target(t.graph, t.n), &methods(method), &cfg, out.as_deref())?;
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.render_text());
            }
            Ok(if report.is_consistent() { 0 } else { 1 })
        }
        Cmd::Enumerate {
            target: t,
            method,
            format,
            out,
            x1_square,
            dump_labeled: dump,
        } => {
            let method = match method {
                MethodArg::Generator => Method::Generator,
                MethodArg::Oracle => Method::Oracle,
                _ => {
                    return Err(zdsemi::Error::Usage(
                        "enumerate takes --method generator or oracle".into(),
                    ))
                }
            };
            let req = EnumerateRequest {
                target: target(t.graph, t.n),
                method,
                format: match format {
                    FormatArg::Json => Format::Json,
                    FormatArg::Csv => Format::Csv,
                    FormatArg::Dot => Format::Dot,
                },
                x1_square: x1_square.as_deref().and_then(PendantCase::parse),
            };
            let classes = cmd_enumerate(&req, &cfg, out.as_deref())?;
            if let Some(p) = &out {
                eprintln!("wrote {classes} classes to {}", p.display());
            }
            if let Some(p) = dump {
                let lines = dump_labeled(req.target, req.x1_square, &cfg, &p)?;
                eprintln!("wrote {lines} labeled tables to {}", p.display());
            }
            Ok(0)
        }
        Cmd::Verify { range, out } => {
            let (lo, hi) = parse_range(&range)?;
            let v = cmd_verify(lo, hi, &cfg)?;
            print!("{}", v.render_text());
            if let Some(p) = out {
                emit(Some(&p), &v.to_json())?;
            }
            Ok(if v.is_ok() { 0 } else { 1 })
        }
        Cmd::ExportDot {
            graph,
            n,
            table,
            out,
        } => {
            let t = match (graph, n) {
                (Some(g), Some(n)) => Some(target(g, n)),
                (None, None) => None,
                _ => return Err(zdsemi::Error::Usage("--graph and --n go together".into())),
            };
            let dot = cmd_export_dot(t, table.as_deref())?;
            emit(out.as_deref(), &dot)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
