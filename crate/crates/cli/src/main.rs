use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use lattice_telescope::enumeration::MediantWalk;
use lattice_telescope::verify::{run_check, Level, VerifyOptions, CRITERIA};
use lattice_telescope::{detn_oracle, detn_pairs, unimodular_oracle, EvalOptions, Method};

use lattice_telescope_cli::bench;
use lattice_telescope_cli::series::{self, RunConfig, RunError};

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "lattice-telescope",
    version,
    about = "Evaluate and verify lattice-vector series"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one named series at a truncation and print a report.
    Sum(SumArgs),
    /// Run the verification suite; exit 1 if any check fails.
    Verify(VerifyArgs),
    /// Print a convergence/timing table as CSV.
    Bench(BenchArgs),
    /// Print enumerated pairs as `x.a x.b y.a y.b det` lines.
    Dump(DumpArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Toggle {
    On,
    Off,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Direct,
    Boundary,
    Oracle,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Direct => Method::Direct,
            MethodArg::Boundary => Method::Boundary,
            MethodArg::Oracle => Method::Oracle,
        }
    }
}

#[derive(Args)]
struct EvalArgs {
    /// Worker threads (1 = sequential reference order).
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    threads: u32,
    /// Compensated (Neumaier) accumulation.
    #[arg(long, value_enum, default_value = "on")]
    compensated: Toggle,
}

impl EvalArgs {
    fn options(&self) -> EvalOptions {
        EvalOptions::with_threads(self.threads as usize)
            .compensated(matches!(self.compensated, Toggle::On))
    }
}

#[derive(Args)]
struct SumArgs {
    /// Series name, one of: theorem1 theorem2 tropical1 tropical2 mt theorem3
    /// eisenstein d111 theorem4 zagier-chain dirichlet-sigma.
    #[arg(long)]
    series: String,
    /// Coordinate box [0,N]² (quadrant) or [−N,N]² (half-plane).
    #[arg(long = "box")]
    coord_box: Option<u32>,
    /// Coefficient box [−M,M]² for lattice sums over ℤz + ℤ.
    #[arg(long)]
    coeff_box: Option<u32>,
    /// Upper bound for scalar sums (mt, dirichlet-sigma).
    #[arg(long)]
    bound: Option<u32>,
    /// Determinant for theorem3; middle exponent for mt.
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
    /// mt: coprime pairs only.
    #[arg(long)]
    coprime: bool,
    #[arg(long, allow_negative_numbers = true)]
    z_re: Option<f64>,
    #[arg(long)]
    z_im: Option<f64>,
    #[arg(long)]
    s: Option<f64>,
    #[arg(long, value_enum)]
    method: Option<MethodArg>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[command(flatten)]
    eval: EvalArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Fast,
    Full,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum VerifyFormat {
    Text,
    Json,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "fast")]
    level: LevelArg,
    #[arg(long, value_enum, default_value = "text")]
    format: VerifyFormat,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    threads: u32,
    /// Relative perturbation of every reference value (suite self-test).
    #[arg(long, hide = true, default_value_t = 0.0)]
    tamper: f64,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    series: String,
    /// Comma-separated truncations.
    #[arg(long, value_delimiter = ',', default_value = "50,100,200,400,800")]
    ladder: Vec<u32>,
    /// Determinant for theorem3.
    #[arg(long, default_value_t = 1)]
    n: u64,
    #[command(flatten)]
    eval: EvalArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum DumpKind {
    /// Every pair of the cut mediant tree.
    Tree,
    /// Pairs of the tree whose mediant leaves the box.
    Boundary,
    /// Quadruple-loop unimodular pairs.
    Oracle,
    /// Half-plane pairs of determinant n.
    Detn,
    /// Exhaustive det-n filter.
    DetnOracle,
}

#[derive(Args)]
struct DumpArgs {
    #[arg(long, value_enum)]
    kind: DumpKind,
    #[arg(long = "box")]
    coord_box: u32,
    #[arg(long, default_value_t = 1)]
    n: u64,
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn run_error(e: RunError) -> ExitCode {
    match e {
        RunError::Usage(msg) => fail(EXIT_USAGE, msg),
        RunError::Eval(e) => fail(EXIT_FAILED, e),
    }
}

fn cmd_sum(args: SumArgs) -> ExitCode {
    let cfg = RunConfig {
        series: args.series,
        coord_box: args.coord_box,
        coeff_box: args.coeff_box,
        bound: args.bound,
        n: args.n,
        k: args.k,
        m: args.m,
        coprime: args.coprime,
        z_re: args.z_re,
        z_im: args.z_im,
        s: args.s,
        method: args.method.map(Method::from),
        eval: args.eval.options(),
    };
    let report = match series::run(&cfg) {
        Ok(r) => r,
        Err(e) => return run_error(e),
    };
    let stdout = io::stdout();
    let written = match args.format {
        Format::Json => report
            .to_json()
            .map_err(|e| e.to_string())
            .and_then(|text| writeln!(stdout.lock(), "{text}").map_err(|e| e.to_string())),
        Format::Csv => report.write_csv(stdout.lock()).map_err(|e| e.to_string()),
    };
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(EXIT_FAILED, e),
    }
}

#[derive(Serialize)]
struct MeasurementOut<'a> {
    label: &'a str,
    residual: f64,
    tolerance: f64,
    passed: bool,
}

#[derive(Serialize)]
struct CheckOut<'a> {
    id: u32,
    title: &'a str,
    passed: bool,
    elapsed_ms: f64,
    measurements: Vec<MeasurementOut<'a>>,
}

fn cmd_verify(args: VerifyArgs) -> ExitCode {
    let level = match args.level {
        LevelArg::Fast => Level::Fast,
        LevelArg::Full => Level::Full,
    };
    let opts = VerifyOptions {
        eval: EvalOptions::with_threads(args.threads as usize),
        tamper: args.tamper,
        ..VerifyOptions::new(level)
    };
    let mut checks = Vec::new();
    for id in 1..=CRITERIA {
        match run_check(id, &opts) {
            Ok(check) => {
                if args.format == VerifyFormat::Text {
                    println!("{}", check.summary());
                }
                checks.push(check);
            }
            Err(e) => return fail(EXIT_FAILED, format!("criterion {id}: {e}")),
        }
    }
    let failed = checks.iter().filter(|c| !c.passed()).count();
    match args.format {
        VerifyFormat::Text => println!("verify: {} passed, {failed} failed", checks.len() - failed),
        VerifyFormat::Json => {
            let out: Vec<CheckOut> = checks
                .iter()
                .map(|c| CheckOut {
                    id: c.id,
                    title: c.title,
                    passed: c.passed(),
                    elapsed_ms: c.elapsed.as_secs_f64() * 1e3,
                    measurements: c
                        .measurements
                        .iter()
                        .map(|m| MeasurementOut {
                            label: &m.label,
                            residual: m.residual,
                            tolerance: m.tolerance,
                            passed: m.passed,
                        })
                        .collect(),
                })
                .collect();
            match serde_json::to_string_pretty(&out) {
                Ok(text) => println!("{text}"),
                Err(e) => return fail(EXIT_FAILED, e),
            }
        }
    }
    for c in checks.iter().filter(|c| !c.passed()) {
        for m in c.failures() {
            eprintln!("failed [{}] {}", c.id, m);
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILED)
    }
}

fn cmd_bench(args: BenchArgs) -> ExitCode {
    if args.ladder.is_empty() {
        return fail(EXIT_USAGE, "empty ladder");
    }
    match bench::ladder(&args.series, &args.ladder, args.n, &args.eval.options()) {
        Ok(rows) => match bench::write_csv(&rows, io::stdout().lock()) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail(EXIT_FAILED, e),
        },
        Err(e) => run_error(e),
    }
}

fn cmd_dump(args: DumpArgs) -> ExitCode {
    let mut out = BufWriter::new(io::stdout().lock());
    let bound = args.coord_box;
    let result: Result<(), Box<dyn std::error::Error>> = (|| {
        match args.kind {
            DumpKind::Tree => {
                MediantWalk::new(bound).try_for_each(|node| writeln!(out, "{}", node.pair))?
            }
            DumpKind::Boundary => MediantWalk::new(bound)
                .filter(|node| node.boundary)
                .try_for_each(|node| writeln!(out, "{}", node.pair))?,
            DumpKind::Oracle => unimodular_oracle(bound)?
                .iter()
                .try_for_each(|p| writeln!(out, "{p}"))?,
            DumpKind::Detn => detn_pairs(args.n, bound)?.try_for_each(|p| writeln!(out, "{p}"))?,
            DumpKind::DetnOracle => detn_oracle(args.n, bound)?
                .iter()
                .try_for_each(|p| writeln!(out, "{p}"))?,
        }
        out.flush()?;
        Ok(())
    })();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => match e.downcast_ref::<lattice_telescope::Error>() {
            Some(lattice_telescope::Error::Domain(_) | lattice_telescope::Error::Refused(_)) => {
                fail(EXIT_USAGE, e)
            }
            _ => fail(EXIT_FAILED, e),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Sum(args) => cmd_sum(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Dump(args) => cmd_dump(args),
    }
}
