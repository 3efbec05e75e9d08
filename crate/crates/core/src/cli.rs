//! Command-line surface of the `chaoslab` binary.
//!
//! Exit codes: 0 on success or a passing certificate, 1 on a failed
//! certificate or a numeric failure, 2 on usage errors and invalid input, 3 on
//! resource limits and I/O failures.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::chaos::{
    averaged_sup_growth, clt_criteria, clt_table, khintchine_check, moment_table, rud_average,
    sign_concentration_check, AverageMode, CltThresholds,
};
use crate::combdim::{
    density_certificates, density_count, estimate_dimension, format_index_set, read_index_set, BlockChoice,
    BlockDensity, SearchStrategy, StructuredSet,
};
use crate::report::{fmt_real, CertificateReport, RunManifest, Verdict, TOOL_VERSION};
use crate::symspace::{coincidence_check, norm, ConcaveWeight, OrliczFunction, SpaceSpec, StepDistribution};
use crate::walsh::{chaos_sum, distribution_exact, distribution_mc, CoefficientMap, IndexSet, SignFunction};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "chaoslab", version, about = "Exact checks on Rademacher chaos, symmetric norms and index-set densities")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Global {
    /// Largest number of sign coordinates enumerated exactly.
    #[arg(long, global = true, default_value_t = crate::DEFAULT_BITS_CAP)]
    max_enum_bits: u32,
    /// Monte Carlo sample count for commands that fall back to sampling.
    #[arg(long, global = true)]
    mc_samples: Option<u64>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Relative tolerance for root finding and scalar maximisation.
    #[arg(long, global = true, default_value_t = crate::DEFAULT_TOL)]
    tol: f64,
    /// Output file; a `<out>.manifest.json` run record is written next to it.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SetKind {
    Sum,
    Triangle,
}

#[derive(Debug, Args)]
struct SetArgs {
    /// Index-set file, one decreasing element per line.
    #[arg(long, conflicts_with = "kind")]
    set: Option<PathBuf>,
    /// Generated family instead of a file.
    #[arg(long, value_enum, requires = "max")]
    kind: Option<SetKind>,
    /// Largest entry of the generated family.
    #[arg(long)]
    max: Option<u32>,
    /// Order of a generated triangle.
    #[arg(long, default_value_t = 3)]
    order: usize,
}

#[derive(Debug, Args)]
struct FunctionArgs {
    /// Coefficients of `Σ a_j r_j`.
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["set", "kind"])]
    coeffs: Option<Vec<f64>>,
    #[command(flatten)]
    set: SetArgs,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a generated index set.
    GenSet {
        #[arg(long, value_enum)]
        kind: SetKind,
        #[arg(long)]
        max: u32,
        #[arg(long, default_value_t = 3)]
        order: usize,
    },
    /// Block density certificates, or one count with `--blocks`.
    Density {
        #[command(flatten)]
        set: SetArgs,
        /// Blocks such as `3,4/1,2`.
        #[arg(long)]
        blocks: Option<BlockChoice>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long, value_delimiter = ',')]
        n_list: Vec<usize>,
        #[arg(long)]
        universe: Option<u32>,
        #[arg(long, default_value = "identity-blocks")]
        strategy: SearchStrategy,
    },
    /// Least-squares density exponent.
    Dimension {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        n_list: Vec<usize>,
        #[arg(long)]
        universe: Option<u32>,
        #[arg(long, default_value = "identity-blocks")]
        strategy: SearchStrategy,
        /// Fail unless the slope is at least this.
        #[arg(long)]
        expect_min: Option<f64>,
        /// Fail unless the slope is at most this.
        #[arg(long)]
        expect_max: Option<f64>,
    },
    /// Norm of a chaos sum in a symmetric space.
    Norm {
        #[command(flatten)]
        function: FunctionArgs,
        /// e.g. `lp:4`, `linf`, `orlicz-exp:2`, `lorentz-log:0.5`, `explr-extrap:2`.
        #[arg(long)]
        space: SpaceSpec,
    },
    /// Exact Khintchine bounds for `Σ a_j r_j`.
    Khintchine {
        #[arg(long, value_delimiter = ',', required = true)]
        coeffs: Vec<f64>,
        #[arg(long)]
        p: f64,
    },
    /// Moment table and growth exponent.
    Moments {
        #[command(flatten)]
        function: FunctionArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        p_list: Vec<f64>,
    },
    /// Average over random signs against the deterministic norm.
    Rud {
        #[command(flatten)]
        function: FunctionArgs,
        #[arg(long)]
        space: SpaceSpec,
    },
    /// Sup-norm concentration of randomly signed sums.
    Concentration {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long, conflicts_with = "n")]
        blocks: Option<BlockChoice>,
        /// Identity blocks `{1, …, n}`.
        #[arg(long)]
        n: Option<u32>,
    },
    /// Growth of deterministic over sign-averaged sup-norms on full triangles.
    Growth {
        #[arg(long)]
        order: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        n_list: Vec<usize>,
    },
    /// Star and pair ratios for the normal approximation.
    Clt {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        n_list: Vec<u32>,
        #[arg(long, default_value_t = CltThresholds::default().star)]
        star_threshold: f64,
        #[arg(long, default_value_t = CltThresholds::default().sharp)]
        sharp_threshold: f64,
    },
    /// Conditions for an Orlicz and a Marcinkiewicz space to coincide.
    Coincidence {
        /// `power:P` or `exp:R`.
        #[arg(long)]
        orlicz: String,
        /// `log:G`, `power:T`.
        #[arg(long)]
        weight: String,
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
        #[arg(long, default_value_t = 64)]
        grid: usize,
    },
}

/// Where a command's index set comes from.
enum Source {
    Explicit(IndexSet),
    Structured(StructuredSet),
}

impl SetArgs {
    fn source(&self) -> Result<Source> {
        match (&self.set, self.kind) {
            (Some(path), _) => Ok(Source::Explicit(read_index_set(path)?)),
            (None, Some(kind)) => {
                let max = self.max.ok_or_else(|| Error::invalid("--kind needs --max"))?;
                Ok(Source::Structured(structured(kind, max, self.order)?))
            }
            (None, None) => Err(Error::invalid("give an index set with --set FILE or --kind K --max N")),
        }
    }

    fn index_set(&self) -> Result<IndexSet> {
        match self.source()? {
            Source::Explicit(s) => Ok(s),
            Source::Structured(s) => s.materialize(),
        }
    }
}

fn structured(kind: SetKind, max: u32, order: usize) -> Result<StructuredSet> {
    match kind {
        SetKind::Sum => StructuredSet::sum_set(max),
        SetKind::Triangle => StructuredSet::triangle(order, max),
    }
}

impl Source {
    fn max_index(&self) -> u32 {
        match self {
            Source::Explicit(s) => s.max_index(),
            Source::Structured(s) => s.max_index(),
        }
    }
}

impl FunctionArgs {
    fn function(&self) -> Result<SignFunction> {
        chaos_sum(&self.coefficients()?)
    }

    fn coefficients(&self) -> Result<CoefficientMap> {
        match &self.coeffs {
            Some(a) => Ok(CoefficientMap::linear(a)),
            None => Ok(CoefficientMap::unit(&self.set.index_set()?)),
        }
    }
}

fn parse_orlicz(s: &str) -> Result<OrliczFunction> {
    match s.split_once(':') {
        Some(("power", x)) => OrliczFunction::power(parse_real(x)?),
        Some(("exp", x)) => OrliczFunction::exponential(parse_real(x)?),
        _ => Err(Error::invalid(format!("Orlicz function `{s}` should be power:P or exp:R"))),
    }
}

fn parse_weight(s: &str) -> Result<ConcaveWeight> {
    match s.split_once(':') {
        Some(("log", x)) => ConcaveWeight::log_power(parse_real(x)?),
        Some(("power", x)) => ConcaveWeight::power(parse_real(x)?),
        _ => Err(Error::invalid(format!("weight `{s}` should be log:G or power:T"))),
    }
}

fn parse_real(s: &str) -> Result<f64> {
    s.parse().map_err(|_| Error::invalid(format!("`{s}` is not a number")))
}

fn list<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// What a subcommand produced.
struct Outcome {
    verdict: Option<Verdict>,
    /// Text for `--out`.
    file: String,
    parameters: BTreeMap<String, String>,
}

impl Outcome {
    fn report(report: &CertificateReport) -> Outcome {
        Outcome {
            verdict: Some(report.verdict()),
            file: report.to_csv(),
            parameters: report.inputs.iter().cloned().collect(),
        }
    }
}

/// Exact law of `f`, or a seeded sample when the support is too large and
/// `--mc-samples` was given.
fn law(f: &SignFunction, g: &Global) -> Result<StepDistribution> {
    match distribution_exact(f, g.max_enum_bits) {
        Err(Error::ResourceLimit { .. }) if g.mc_samples.is_some() => {
            distribution_mc(f, g.mc_samples.unwrap_or(0), g.seed)
        }
        other => other,
    }
}

fn execute(cmd: &Command, g: &Global) -> Result<Outcome> {
    match cmd {
        Command::GenSet { kind, max, order } => {
            let set = structured(*kind, *max, *order)?.materialize()?;
            let text = format_index_set(&set);
            if g.out.is_none() {
                print!("{text}");
            }
            println!("# {} elements", set.len());
            let mut parameters = BTreeMap::new();
            parameters.insert("kind".into(), format!("{kind:?}").to_lowercase());
            parameters.insert("max".into(), max.to_string());
            parameters.insert("order".into(), set.order().to_string());
            Ok(Outcome { verdict: None, file: text, parameters })
        }
        Command::Density { set, blocks, alpha, beta, n_list, universe, strategy } => {
            let source = set.source()?;
            if let Some(b) = blocks {
                let count = match &source {
                    Source::Explicit(s) => density_count(s, b)?,
                    Source::Structured(s) => density_count(s, b)?,
                };
                println!("count {count}");
                let mut r = CertificateReport::new("density_count");
                r.input("blocks", b).info("count", count as f64);
                return Ok(Outcome::report(&r));
            }
            let (alpha, beta) = match (alpha, beta) {
                (Some(a), Some(b)) => (*a, *b),
                _ => return Err(Error::invalid("density needs --alpha and --beta, or --blocks")),
            };
            if n_list.is_empty() {
                return Err(Error::invalid("density needs --n-list"));
            }
            let universe = universe.unwrap_or_else(|| source.max_index());
            let report = match &source {
                Source::Explicit(s) => density_certificates(s, alpha, beta, n_list, universe, *strategy)?,
                Source::Structured(s) => density_certificates(s, alpha, beta, n_list, universe, *strategy)?,
            };
            print!("{report}");
            Ok(Outcome::report(&report))
        }
        Command::Dimension { set, n_list, universe, strategy, expect_min, expect_max } => {
            let source = set.source()?;
            let universe = universe.unwrap_or_else(|| source.max_index());
            fn fit<A: BlockDensity>(a: &A, n: &[usize], u: u32, s: SearchStrategy) -> Result<crate::combdim::DensityProfile> {
                estimate_dimension(a, n, u, s)
            }
            let profile = match &source {
                Source::Explicit(s) => fit(s, n_list, universe, *strategy)?,
                Source::Structured(s) => fit(s, n_list, universe, *strategy)?,
            };
            let mut file = String::from("n,best_count,strategy,witness\n");
            for row in &profile.rows {
                file.push_str(&format!("{},{},{},\"{}\"\n", row.n, row.best_count, row.strategy, row.witness));
                println!("n {:>6}  best {:>12}", row.n, row.best_count);
            }
            println!(
                "alpha_hat {:.6} ± {:.6}  r² {:.6}",
                profile.alpha_hat, profile.slope_stderr, profile.r_squared
            );
            let mut r = CertificateReport::new("dimension");
            r.input("n_list", list(n_list)).input("universe", universe).input("strategy", strategy);
            r.info("alpha_hat", profile.alpha_hat)
                .info("slope_stderr", profile.slope_stderr)
                .info("r_squared", profile.r_squared);
            if let Some(lo) = expect_min {
                r.ge("alpha_hat_min", profile.alpha_hat, *lo);
            }
            if let Some(hi) = expect_max {
                r.le("alpha_hat_max", profile.alpha_hat, *hi);
            }
            Ok(Outcome { verdict: Some(r.verdict()), file, parameters: r.inputs.iter().cloned().collect() })
        }
        Command::Norm { function, space } => {
            let dist = law(&function.function()?, g)?;
            let value = norm(&dist, space, g.tol)?;
            println!("{space} {}", fmt_real(value));
            let mut r = CertificateReport::new("norm");
            r.input("space", space).info("norm", value).info("atoms", dist.len() as f64);
            Ok(Outcome::report(&r))
        }
        Command::Khintchine { coeffs, p } => {
            let report = khintchine_check(coeffs, *p)?;
            let value = report.get("norm_p").unwrap_or(f64::NAN);
            let l2 = report.get("l2").unwrap_or(f64::NAN);
            println!(
                "value {value:.6} bounds [{:.6}, {:.6}] {}",
                l2 / 2f64.sqrt(),
                p.max(2.0).sqrt() * l2,
                report.verdict()
            );
            Ok(Outcome::report(&report))
        }
        Command::Moments { function, p_list } => {
            let table = moment_table(&function.function()?, p_list, g.max_enum_bits)?;
            let mut r = CertificateReport::new("moments");
            r.input("p_list", list(p_list));
            for &(p, v) in &table.rows {
                println!("p {:>8}  norm {}", fmt_real(p), fmt_real(v));
                r.le(format!("norm[{p}]"), v, table.sup_norm);
            }
            r.info("sup_norm", table.sup_norm);
            match table.theta {
                Some(theta) => {
                    println!("theta {}", fmt_real(theta));
                    r.info("theta", theta);
                }
                None => println!("theta undefined"),
            }
            Ok(Outcome::report(&r))
        }
        Command::Rud { function, space } => {
            let coeffs = function.coefficients()?;
            let mode = match g.mc_samples {
                Some(samples) => AverageMode::MonteCarlo { samples, seed: g.seed },
                None => AverageMode::Exact,
            };
            let avg = rud_average(&coeffs, space, mode, g.max_enum_bits, g.tol)?;
            println!(
                "average {}  deterministic {}  ratio {}  stderr {}",
                fmt_real(avg.average),
                fmt_real(avg.deterministic),
                fmt_real(avg.ratio),
                fmt_real(avg.stderr)
            );
            let mut r = CertificateReport::new("rud");
            r.input("space", space).input("mode", mode).input("seed", g.seed);
            r.info("average", avg.average)
                .info("deterministic", avg.deterministic)
                .info("ratio", avg.ratio)
                .info("stderr", avg.stderr)
                .info("patterns", avg.patterns as f64);
            Ok(Outcome::report(&r))
        }
        Command::Concentration { set, blocks, n } => {
            let a = set.index_set()?;
            let b = match (blocks, n) {
                (Some(b), _) => b.clone(),
                (None, Some(n)) => BlockChoice::identity(a.order(), *n)?,
                (None, None) => return Err(Error::invalid("concentration needs --blocks or --n")),
            };
            let report = sign_concentration_check(&a, &b, g.max_enum_bits)?;
            print!("{report}");
            Ok(Outcome::report(&report))
        }
        Command::Growth { order, n_list } => {
            let samples = g.mc_samples.unwrap_or(1000);
            let report = averaged_sup_growth(*order, n_list, samples, g.seed, g.max_enum_bits)?;
            print!("{report}");
            Ok(Outcome::report(&report))
        }
        Command::Clt { set, n_list, star_threshold, sharp_threshold } => {
            let a = set.index_set()?;
            let rows = clt_table(&a, n_list)?;
            let thresholds = CltThresholds { star: *star_threshold, sharp: *sharp_threshold };
            let report = clt_criteria(&a, n_list, thresholds)?;
            let mut file = String::from("n,size,star_ratio,sharp_ratio\n");
            for row in &rows {
                file.push_str(&format!(
                    "{},{},{},{}\n",
                    row.n,
                    row.size,
                    fmt_real(row.star_ratio),
                    fmt_real(row.sharp_ratio)
                ));
                println!(
                    "N {:>5}  |A_N| {:>8}  star {}  sharp {}",
                    row.n,
                    row.size,
                    fmt_real(row.star_ratio),
                    fmt_real(row.sharp_ratio)
                );
            }
            println!("{}", report.verdict());
            Ok(Outcome {
                verdict: Some(report.verdict()),
                file,
                parameters: report.inputs.iter().cloned().collect(),
            })
        }
        Command::Coincidence { orlicz, weight, eps, grid } => {
            let report = coincidence_check(&parse_orlicz(orlicz)?, &parse_weight(weight)?, *eps, *grid, g.tol)?;
            print!("{report}");
            Ok(Outcome::report(&report))
        }
    }
}

fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

fn write_outputs(argv: &[String], g: &Global, outcome: &Outcome, started: Instant) -> Result<()> {
    let Some(out) = &g.out else { return Ok(()) };
    std::fs::write(out, &outcome.file).map_err(|e| Error::Io(format!("{}: {e}", out.display())))?;
    let manifest_file = manifest_path(out);
    let mut tolerances = BTreeMap::new();
    tolerances.insert("tol".to_string(), g.tol);
    let mut parameters = outcome.parameters.clone();
    parameters.insert("max_enum_bits".into(), g.max_enum_bits.to_string());
    if let Some(s) = g.mc_samples {
        parameters.insert("mc_samples".into(), s.to_string());
    }
    let manifest = RunManifest {
        command_line: argv.to_vec(),
        parameters,
        seed: Some(g.seed),
        tolerances,
        tool_version: TOOL_VERSION.to_string(),
        wall_time_secs: started.elapsed().as_secs_f64(),
        outputs: vec![out.display().to_string(), manifest_file.display().to_string()],
        verdict: outcome.verdict,
    };
    manifest.write(&manifest_file)
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceLimit { .. } | Error::Io(_) => EXIT_RESOURCE,
        Error::NumericFailure(_) | Error::DegenerateFit(_) => EXIT_FAILED,
        Error::InvalidIndex(_)
        | Error::InvalidArgument(_)
        | Error::EmptyInput(_)
        | Error::Resolution { .. }
        | Error::Parse { .. } => EXIT_USAGE,
    }
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    crate::init_thread_pool();
    let started = Instant::now();
    let args: Vec<String> = argv.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let result = execute(&cli.command, &cli.global)
        .and_then(|outcome| write_outputs(&args, &cli.global, &outcome, started).map(|_| outcome));
    match result {
        Ok(outcome) => match outcome.verdict {
            Some(Verdict::Fail) => EXIT_FAILED,
            _ => EXIT_OK,
        },
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
