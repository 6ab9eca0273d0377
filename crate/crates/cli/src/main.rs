//! mdich: generate metric instances, run dichotomy extractions, query the
//! exact oracles, and chart experiment suites.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use mdich_cli::commands::{cmd_extract, cmd_gen, cmd_oracle, read_metric, ExtractParams, GenParams};
use mdich_cli::config::load_caps;
use mdich_cli::experiment::{run_suite, write_csv, Family, Suite, SuiteParams};
use mdich_cli::CliError;
use mdich_core::oracle::Arith;

#[derive(Parser)]
#[command(name = "mdich", version, about = "metric Ramsey dichotomy toolkit")]
struct Cli {
    /// Caps config file (key=value lines).
    #[arg(long, global = true)]
    caps: Option<PathBuf>,
    /// Use exact rational arithmetic in the oracles.
    #[arg(long, global = true)]
    exact_rational: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance (metric-v1 or hst-v1 JSON).
    Gen(GenArgs),
    /// Run an extraction algorithm on a metric-v1 instance.
    Extract(ExtractArgs),
    /// Query an exact oracle on a metric-v1 instance.
    Oracle(OracleArgs),
    /// Run an experiment suite and write its CSV.
    Experiment(ExperimentArgs),
}

#[derive(Args)]
struct GenArgs {
    /// random | graph | ramsey-graph | composition-power | path |
    /// equilateral | lacunary | hst
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: Option<usize>,
    /// Vertex count for graph families.
    #[arg(long)]
    s: Option<usize>,
    /// Edge probability for --family graph (default 0.5).
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    base_n: Option<usize>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    k: Option<f64>,
    /// Sequence length for --family lacunary.
    #[arg(long)]
    len: Option<usize>,
    #[arg(long)]
    leaves: Option<usize>,
    /// Max out-degree for --family hst (default 3).
    #[arg(long)]
    degree: Option<usize>,
    /// Base convention for composition-power: copy | singleton.
    #[arg(long)]
    base: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Rejection-sampling budget for ramsey-graph.
    #[arg(long, default_value_t = 1000)]
    max_tries: usize,
    /// Read a graph-v1 file instead of sampling (--family graph).
    #[arg(long)]
    graph_in: Option<PathBuf>,
    /// Also write the sampled graph as graph-v1 (--family ramsey-graph).
    #[arg(long)]
    graph_out: Option<PathBuf>,
    /// Output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExtractArgs {
    /// bfm-increasing | eq-or-lacunary | greedy-lacunary | triangle-hst |
    /// hst-dichotomy
    #[arg(long)]
    algorithm: String,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    k: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    /// Net threshold for greedy-lacunary (default ceil(log2 n)).
    #[arg(long)]
    threshold: Option<usize>,
    /// Degree threshold for hst-dichotomy.
    #[arg(long)]
    h: Option<usize>,
    /// coarse | fine (hst-dichotomy).
    #[arg(long)]
    mode: Option<String>,
    /// HST file for hst-dichotomy (hst-v1 JSON).
    #[arg(long)]
    tree: Option<PathBuf>,
    /// Input metric (metric-v1 JSON).
    #[arg(long = "in")]
    input: PathBuf,
    /// Output path for the DichotomyResult JSON.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct OracleArgs {
    /// equilateral | lacunary | binary-hst
    #[arg(long)]
    query: String,
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    k: Option<f64>,
    /// Input metric (metric-v1 JSON).
    #[arg(long = "in")]
    input: PathBuf,
    /// Output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentArgs {
    /// d-k-above-2 | d-k-below-2 | e-k-above-2 | e-k-below-2 | d-1
    #[arg(long)]
    suite: String,
    /// Comma-separated instance sizes, e.g. 64,256,1024.
    #[arg(long)]
    n_list: String,
    #[arg(long)]
    alpha: f64,
    #[arg(long, default_value_t = 2.0)]
    k: f64,
    #[arg(long, default_value_t = 16)]
    seeds: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// random | composition
    #[arg(long, default_value = "random")]
    family: String,
    /// Base size for composition cells.
    #[arg(long, default_value_t = 4)]
    base_n: usize,
    /// Fail (exit 3) when a cell exceeds the oracle caps.
    #[arg(long)]
    require_oracle: bool,
    /// Append a result_hash column tying each row to its DichotomyResult.
    #[arg(long)]
    verbose: bool,
    /// Output CSV path.
    #[arg(long)]
    csv: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("mdich: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn write_or_stdout(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    let caps = load_caps(cli.caps.as_deref())?;
    let arith = if cli.exact_rational { Arith::Rational } else { Arith::Float };
    match cli.command {
        Command::Gen(a) => {
            let params = GenParams {
                family: a.family,
                n: a.n,
                s: a.s,
                p: a.p,
                base_n: a.base_n,
                beta: a.beta,
                t: a.t,
                k: a.k,
                len: a.len,
                leaves: a.leaves,
                degree: a.degree,
                base: a.base,
                seed: a.seed,
                max_tries: a.max_tries,
                graph_in: a.graph_in,
                graph_out: a.graph_out,
            };
            let text = cmd_gen(&params, &caps)?;
            write_or_stdout(&text, a.out.as_ref())
        }
        Command::Extract(a) => {
            let space = read_metric(&a.input)?;
            let params = ExtractParams {
                algorithm: a.algorithm,
                eps: a.eps,
                k: a.k,
                alpha: a.alpha,
                threshold: a.threshold,
                h: a.h,
                mode: a.mode,
                tree: a.tree,
            };
            let (result, summary) = cmd_extract(&params, &space)?;
            let json = format!("{}\n", serde_json::to_string(&result).map_err(CliError::from)?);
            std::fs::write(&a.out, json)?;
            println!("{summary}");
            Ok(())
        }
        Command::Oracle(a) => {
            let space = read_metric(&a.input)?;
            let report = cmd_oracle(&a.query, a.alpha, a.k, &space, &caps, arith)?;
            let json = format!("{}\n", serde_json::to_string(&report).map_err(CliError::from)?);
            write_or_stdout(&json, a.out.as_ref())
        }
        Command::Experiment(a) => {
            let n_list: Result<Vec<usize>, _> =
                a.n_list.split(',').filter(|s| !s.is_empty()).map(str::parse).collect();
            let n_list = n_list.map_err(|e| CliError::Usage(format!("bad n-list: {e}")))?;
            let params = SuiteParams {
                suite: Suite::parse(&a.suite)?,
                n_list,
                alpha: a.alpha,
                k: a.k,
                seeds: a.seeds,
                master_seed: a.seed,
                family: Family::parse(&a.family)?,
                base_n: a.base_n,
                require_oracle: a.require_oracle,
                verbose: a.verbose,
            };
            let rows = run_suite(&params, &caps)?;
            let mut buf = Vec::new();
            write_csv(&rows, params.verbose, &mut buf)?;
            std::fs::write(&a.csv, buf)?;
            println!("wrote {} rows to {}", rows.len(), a.csv.display());
            Ok(())
        }
    }
}
