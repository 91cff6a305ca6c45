//! `cpwlab`: command-line front end for the conformal partial wave toolkit.

mod config;

use std::io::{Read, Write};
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cpwlab::exact::{parse_q, Q, QI};
use cpwlab::lie::AlgebraName;
use cpwlab::report::{
    block_series_report, channels_report, count_report, count_sweep_csv, elliptic_eval, elliptic_selftest_report,
    gaudin_verify, pipeline_report, vertex_report, EllipticEval, GaudinOptions, PipelineConfig, Render, ReportError,
};
use cpwlab::trees::ChannelTree;
use cpwlab::vertex::VertexParams;
use serde_json::Value;

const SUBCOMMANDS: &[&str] = &["channels", "count", "gaudin-verify", "block-series", "vertex", "elliptic", "pipeline"];

#[derive(Parser, Debug)]
#[command(name = "cpwlab", version, about = "Exact checks for multipoint conformal partial waves")]
struct Cli {
    /// `key = value` settings file; command-line flags take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List every channel tree on N fields.
    Channels {
        #[arg(long = "N")]
        n: usize,
    },
    /// Count Casimir and vertex operators for a channel, or sweep all channels.
    Count(CountArgs),
    /// Exact commutativity checks for Gaudin Hamiltonians and channel limits.
    GaudinVerify(GaudinArgs),
    /// Harish-Chandra series of the BC2 Calogero-Sutherland Hamiltonian.
    BlockSeries(BlockArgs),
    /// Vertex algebra relations, Hamiltonian and spectrum.
    Vertex(VertexArgs),
    /// Lemniscatic Weierstrass function, coordinate map and gauge factor.
    Elliptic(EllipticArgs),
    /// Tree, counting and Gaudin stages in one deterministic report.
    Pipeline(PipelineArgs),
}

#[derive(Args, Debug, Clone)]
struct TreeArgs {
    /// Tree file, `-` for stdin, `comb`, or inline text such as `((1,2),3);4`.
    #[arg(long)]
    tree: Option<String>,
    /// Number of fields for `--tree comb`.
    #[arg(long = "N")]
    n: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct CountArgs {
    #[command(flatten)]
    tree: TreeArgs,
    /// Odd dimensions, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    d: Vec<usize>,
    /// Sweep all channels with Nmin..Nmax fields (CSV output).
    #[arg(long)]
    sweep: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
struct GaudinArgs {
    #[command(flatten)]
    tree: TreeArgs,
    #[arg(long, default_value = "sl2")]
    algebra: String,
    /// Site representations: spins for sl2, `vector` or `adjoint` for so(n).
    #[arg(long, value_delimiter = ',', default_value = "1/2,1/2,1/2")]
    sites: Vec<String>,
    /// ϖ-exponent window lo..hi for the listed limit orders.
    #[arg(long, default_value = "0..2")]
    orders: String,
    /// Spectral parameters used in the checks.
    #[arg(long, value_delimiter = ',', default_value = "5/2,7/2")]
    w: Vec<String>,
    #[arg(long)]
    float_digits: Option<usize>,
}

#[derive(Args, Debug)]
struct BlockArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    weights: Vec<String>,
    #[arg(long, allow_negative_numbers = true)]
    d: i64,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
    lambda: Vec<String>,
    #[arg(long, default_value_t = 6)]
    order: usize,
    #[arg(long)]
    float_digits: Option<usize>,
}

#[derive(Args, Debug, Clone)]
struct VertexInput {
    #[arg(long, allow_negative_numbers = true)]
    d: Option<i64>,
    /// Δ1,Δ2,Δ3 as Gaussian rationals, e.g. `3/2+2i`.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    weights: Vec<String>,
    /// l1,l2,el2
    #[arg(long, value_delimiter = ',')]
    spins: Vec<u32>,
    /// Additive constant of the vertex Hamiltonian.
    #[arg(long = "E", default_value = "0", allow_negative_numbers = true)]
    energy: String,
}

#[derive(Args, Debug)]
struct VertexArgs {
    #[command(flatten)]
    input: VertexInput,
    #[arg(long)]
    float_digits: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum EvalKind {
    Wp,
    #[value(name = "X")]
    X,
    Theta,
}

#[derive(Args, Debug)]
struct EllipticArgs {
    #[arg(long, value_enum)]
    eval: Option<EvalKind>,
    /// Complex point `a+bi`.
    #[arg(long, allow_negative_numbers = true)]
    z: Option<String>,
    #[arg(long)]
    selftest: bool,
    #[command(flatten)]
    vertex: VertexInput,
    #[arg(long)]
    float_digits: Option<usize>,
}

#[derive(Args, Debug)]
struct PipelineArgs {
    #[command(flatten)]
    tree: TreeArgs,
    #[arg(long, default_value_t = 5)]
    d: usize,
    #[arg(long, default_value = "sl2")]
    algebra: String,
    #[arg(long, value_delimiter = ',', default_value = "1/2")]
    sites: Vec<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of sampled spectral parameters.
    #[arg(long, default_value_t = 2)]
    samples: usize,
    #[arg(long, default_value = "0..2")]
    orders: String,
    /// Add wall-clock timings (makes the output non-reproducible).
    #[arg(long)]
    timings: bool,
    #[arg(long)]
    float_digits: Option<usize>,
}

fn invalid(msg: impl Into<String>) -> ReportError {
    ReportError::Validation(msg.into())
}

fn rational(text: &str) -> Result<Q, ReportError> {
    parse_q(text).map_err(|e| invalid(format!("{text:?}: {e}")))
}

fn gaussian(text: &str) -> Result<QI, ReportError> {
    text.parse::<QI>().map_err(|e| invalid(format!("{text:?}: {e}")))
}

fn range_i32(text: &str) -> Result<(i32, i32), ReportError> {
    let (a, b) = text.split_once("..").ok_or_else(|| invalid(format!("expected lo..hi, got {text:?}")))?;
    let lo = a.trim().parse().map_err(|_| invalid(format!("bad range start {a:?}")))?;
    let hi = b.trim().parse().map_err(|_| invalid(format!("bad range end {b:?}")))?;
    if lo > hi {
        return Err(invalid(format!("empty range {text}")));
    }
    Ok((lo, hi))
}

fn algebra(name: &str) -> Result<AlgebraName, ReportError> {
    name.parse().map_err(|e: cpwlab::lie::LieError| invalid(e.to_string()))
}

impl TreeArgs {
    fn load(&self) -> Result<Option<ChannelTree>, ReportError> {
        let Some(spec) = &self.tree else {
            return Ok(None);
        };
        let text = match spec.as_str() {
            "comb" => {
                let n = self.n.ok_or_else(|| invalid("--tree comb needs --N"))?;
                return Ok(Some(ChannelTree::comb(n)?));
            }
            "-" => {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s).map_err(|e| invalid(format!("stdin: {e}")))?;
                s
            }
            path if Path::new(path).is_file() => {
                std::fs::read_to_string(path).map_err(|e| invalid(format!("{path}: {e}")))?
            }
            inline => inline.to_string(),
        };
        let tree = ChannelTree::parse(text.trim())?;
        if let Some(n) = self.n.filter(|&n| n != tree.n()) {
            return Err(invalid(format!("--N {n} does not match the tree's N = {}", tree.n())));
        }
        Ok(Some(tree))
    }

    fn require(&self) -> Result<ChannelTree, ReportError> {
        self.load()?.ok_or_else(|| invalid("a --tree is required"))
    }
}

impl VertexInput {
    fn params(&self) -> Result<VertexParams, ReportError> {
        let d = self.d.ok_or_else(|| invalid("--d is required"))?;
        let weights: Vec<QI> = self.weights.iter().map(|w| gaussian(w)).collect::<Result<_, _>>()?;
        let weights: [QI; 3] = weights.try_into().map_err(|_| invalid("--weights needs three values"))?;
        let spins: [u32; 3] = self.spins.clone().try_into().map_err(|_| invalid("--spins needs l1,l2,el2"))?;
        Ok(VertexParams { d, weights, spins, energy: gaussian(&self.energy)? })
    }

    fn given(&self) -> bool {
        self.d.is_some() || !self.weights.is_empty() || !self.spins.is_empty()
    }
}

enum Output {
    Json(Value),
    Text(String),
}

fn render(digits: Option<usize>) -> Render {
    Render { float_digits: digits }
}

fn run(cmd: Command) -> Result<Output, ReportError> {
    match cmd {
        Command::Channels { n } => Ok(Output::Json(channels_report(n)?)),
        Command::Count(a) => {
            if let Some(sweep) = &a.sweep {
                let (lo, hi) = range_i32(sweep)?;
                if lo < 0 {
                    return Err(invalid("sweep bounds must be positive"));
                }
                return Ok(Output::Text(count_sweep_csv((lo as usize, hi as usize), &a.d)?));
            }
            let tree = a.tree.require()?;
            let [d] = a.d[..] else {
                return Err(invalid("a single --d is expected without --sweep"));
            };
            let report = count_report(&tree, d)?;
            Ok(match a.format {
                Format::Json => Output::Json(report),
                Format::Csv => Output::Text(format!(
                    "N,newick,d,n_cr,sum_cas,sum_vert,identity\n{},\"{}\",{},{},{},{},{}\n",
                    report["N"], tree.to_newick(), d, report["n_cr"], report["sum_cas"], report["sum_vert"],
                    report["identity_holds"]
                )),
            })
        }
        Command::GaudinVerify(a) => {
            let opts = GaudinOptions {
                algebra: algebra(&a.algebra)?,
                sites: a.sites.clone(),
                tree: a.tree.load()?,
                orders: range_i32(&a.orders)?,
                sample_w: a.w.iter().map(|w| rational(w)).collect::<Result<_, _>>()?,
            };
            Ok(Output::Json(gaudin_verify(&opts, render(a.float_digits))?))
        }
        Command::BlockSeries(a) => {
            let w: Vec<Q> = a.weights.iter().map(|w| rational(w)).collect::<Result<_, _>>()?;
            let w: [Q; 4] = w.try_into().map_err(|_| invalid("--weights needs four values"))?;
            let l: Vec<Q> = a.lambda.iter().map(|x| rational(x)).collect::<Result<_, _>>()?;
            let [l1, l2]: [Q; 2] = l.try_into().map_err(|_| invalid("--lambda needs two values"))?;
            Ok(Output::Json(block_series_report(w, a.d, (l1, l2), a.order, render(a.float_digits))?))
        }
        Command::Vertex(a) => Ok(Output::Json(vertex_report(&a.input.params()?, render(a.float_digits))?)),
        Command::Elliptic(a) => {
            let r = render(a.float_digits);
            if a.selftest {
                return Ok(Output::Json(elliptic_selftest_report(r)?));
            }
            let kind = match a.eval.ok_or_else(|| invalid("--eval or --selftest is required"))? {
                EvalKind::Wp => EllipticEval::Wp,
                EvalKind::X => EllipticEval::X,
                EvalKind::Theta => EllipticEval::Theta,
            };
            let z = gaussian(a.z.as_deref().ok_or_else(|| invalid("--z is required"))?)?.to_complex();
            let vertex = if a.vertex.given() { Some(a.vertex.params()?) } else { None };
            Ok(Output::Json(elliptic_eval(kind, z, vertex.as_ref(), r)?))
        }
        Command::Pipeline(a) => {
            let start = Instant::now();
            let cfg = PipelineConfig {
                tree: a.tree.require()?,
                d: a.d,
                algebra: algebra(&a.algebra)?,
                sites: a.sites.clone(),
                seed: a.seed,
                samples: a.samples,
                orders: range_i32(&a.orders)?,
            };
            let mut report = pipeline_report(&cfg, render(a.float_digits))?;
            if a.timings {
                report["elapsed_ms"] = serde_json::json!(start.elapsed().as_secs_f64() * 1e3);
            }
            Ok(Output::Json(report))
        }
    }
}

fn configure_threads() -> Result<(), ReportError> {
    let Ok(value) = std::env::var("CPWLAB_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| invalid(format!("CPWLAB_THREADS must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| invalid(format!("thread pool: {e}")))
}

/// Writes to stdout, treating a closed pipe as success.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn fail(err: ReportError) -> ExitCode {
    eprintln!("cpwlab: {err}");
    emit(&format!("{}\n", serde_json::to_string_pretty(&err.to_json()).expect("error JSON serializes")));
    ExitCode::from(err.exit_code() as u8)
}

fn main() -> ExitCode {
    let args = match config::merge_config(std::env::args().collect(), SUBCOMMANDS) {
        Ok(a) => a,
        Err(e) => return fail(invalid(e.to_string())),
    };
    let cli = Cli::parse_from(args);
    debug_assert!(cli.config.is_none(), "config flag is consumed before parsing");
    if let Err(e) = configure_threads() {
        return fail(e);
    }
    match run(cli.command) {
        Ok(Output::Json(v)) => {
            emit(&format!("{}\n", serde_json::to_string_pretty(&v).expect("report serializes")));
            ExitCode::SUCCESS
        }
        Ok(Output::Text(t)) => {
            emit(&t);
            ExitCode::SUCCESS
        }
        Err(e) => fail(e),
    }
}
