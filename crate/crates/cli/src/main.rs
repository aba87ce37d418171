use std::env;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use ohno_cli::expr::{self, ExprError, GRAMMAR};
use ohno_cli::values::parse_values;
use ohno_core::index::{Index, IndexCombination};
use ohno_core::mzv::{EvalConfig, EvalError, Evaluator, ZetaCache};
use ohno_core::ohno::{ohno_m_symbolic, ohno_series, EngineError};
use ohno_core::verify::{self, report_to_file, Grid, Param, ReportFormat, VerifyError};

const CACHE_ENV: &str = "OHNO_CACHE";

#[derive(Parser)]
#[command(name = "ohno", version, about = "Index algebra, Ohno sums and multiple zeta values")]
#[command(after_help = format!("Expression grammar:\n{GRAMMAR}"))]
struct Cli {
    /// ζ cache: on (in memory, or the file named by OHNO_CACHE), off, or a file path.
    #[arg(long, global = true, default_value = "on")]
    cache: String,
    /// Worker threads for evaluation and sweeps.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Numeric value of ζ(k) or of a combination.
    Eval {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        precision: Precision,
    },
    /// Expand an expression into a canonical combination.
    Expand {
        #[arg(long)]
        expr: String,
    },
    /// Dual of an index or of a combination.
    Dual {
        #[command(flatten)]
        input: Input,
    },
    /// Ohno sums: 𝒪_m of an index or combination, or the series up to X^M.
    Ohno {
        #[command(flatten)]
        input: Input,
        /// Shift total m.
        #[arg(long, required_unless_present = "max_order")]
        m: Option<u32>,
        /// Highest order of the generating series.
        #[arg(long = "M", conflicts_with = "m")]
        max_order: Option<u32>,
        /// Print the expanded combination only.
        #[arg(long)]
        symbolic: bool,
        #[command(flatten)]
        precision: Precision,
    },
    /// Check a registered identity over a parameter grid.
    Verify {
        /// Identity name, as printed by `list`.
        #[arg(long)]
        name: String,
        /// Values of s: a number, a range a..b, or a comma list. Omitted parameters take the identity's defaults.
        #[arg(long)]
        s: Option<String>,
        #[arg(long)]
        t: Option<String>,
        #[arg(long)]
        l: Option<String>,
        #[arg(long)]
        m: Option<String>,
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        q: Option<String>,
        /// Weights of the indices k, for identities quantified over indices.
        #[arg(long)]
        weight: Option<String>,
        #[command(flatten)]
        precision: Precision,
        /// Report file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Report format.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// List the identity registry.
    List,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Index entries, e.g. 1,2 or (1,2).
    #[arg(long)]
    index: Option<String>,
    /// Index expression; see the grammar below.
    #[arg(long)]
    expr: Option<String>,
}

#[derive(Args)]
struct Precision {
    /// Absolute tolerance of each numeric value.
    #[arg(long, default_value = "1e-12")]
    tol: f64,
    /// Cap on the number of series terms per ζ evaluation.
    #[arg(long)]
    terms_cap: Option<usize>,
    /// Working precision in bits, overriding the one derived from the tolerance.
    #[arg(long)]
    precision_bits: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

enum Failure {
    /// Bad input: exit 2 with the grammar and flag reference.
    Usage(String),
    /// Failed verification or evaluation: exit 1.
    Runtime(String),
}

impl From<ExprError> for Failure {
    fn from(e: ExprError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<EvalError> for Failure {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::PrecisionFailure { .. } => Failure::Runtime(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::Eval(inner) => inner.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl Precision {
    fn config(&self) -> Result<EvalConfig, Failure> {
        let mut cfg = EvalConfig::new(self.tol)?;
        if let Some(cap) = self.terms_cap {
            cfg = cfg.with_max_terms(cap);
        }
        if let Some(bits) = self.precision_bits {
            cfg = cfg.with_working_precision(bits);
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

impl Input {
    fn combination(&self) -> Result<IndexCombination, Failure> {
        match (&self.index, &self.expr) {
            (Some(text), _) => {
                let k: Index = text
                    .parse()
                    .map_err(|e: ohno_core::index::AlgebraError| Failure::Usage(e.to_string()))?;
                Ok(IndexCombination::from_index(k))
            }
            (None, Some(text)) => Ok(expr::evaluate(text)?),
            (None, None) => Err(Failure::Usage("one of --index or --expr is required".into())),
        }
    }
}

/// The cache file in use, if any, and the evaluator sharing it.
fn evaluator(setting: &str) -> Result<(Evaluator, Option<PathBuf>), Failure> {
    let path = match setting {
        "off" => return Ok((Evaluator::new(), None)),
        "on" => env::var_os(CACHE_ENV).map(PathBuf::from),
        file => Some(env::var_os(CACHE_ENV).map_or_else(|| PathBuf::from(file), PathBuf::from)),
    };
    let cache = Arc::new(ZetaCache::new());
    if let Some(p) = &path {
        if p.exists() {
            cache
                .merge_file(p)
                .map_err(|e| Failure::Runtime(format!("cannot read cache {}: {e}", p.display())))?;
        }
    }
    Ok((Evaluator::with_cache(cache), path))
}

fn save_cache(ev: &Evaluator, path: Option<PathBuf>) {
    if let (Some(cache), Some(path)) = (ev.cache(), path) {
        if let Err(e) = cache.save(&path) {
            eprintln!("warning: cannot save cache {}: {e}", path.display());
        }
    }
}

fn grid_values(text: &Option<String>, param: Param, grid: &mut Grid) -> Result<(), Failure> {
    if let Some(text) = text {
        let values = parse_values(text).map_err(|e| Failure::Usage(format!("--{}: {e}", param.name())))?;
        grid.set(param, values);
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .map_err(|e| Failure::Runtime(e.to_string()))?;
    }
    match cli.command {
        Command::List => {
            print!("{}", verify::registry_listing());
            Ok(())
        }
        Command::Expand { expr } => {
            println!("{}", expr::evaluate(&expr)?);
            Ok(())
        }
        Command::Dual { input } => {
            let c = input.combination()?;
            let d = c.dual_linear().map_err(|e| Failure::Usage(e.to_string()))?;
            println!("{d}");
            Ok(())
        }
        Command::Eval { input, precision } => {
            let cfg = precision.config()?;
            let c = input.combination()?;
            let (ev, path) = evaluator(&cli.cache)?;
            let value = ev.combination(&c, &cfg);
            save_cache(&ev, path);
            println!("{}", value?);
            Ok(())
        }
        Command::Ohno {
            input,
            m,
            max_order,
            symbolic,
            precision,
        } => {
            let c = input.combination()?;
            let cfg = precision.config()?;
            if let Some(order) = max_order {
                let (ev, path) = evaluator(&cli.cache)?;
                let series = ohno_series(&ev, &c, order, &cfg);
                save_cache(&ev, path);
                for (i, v) in series?.coefficients.iter().enumerate() {
                    println!("m={i}\t{v}");
                }
                return Ok(());
            }
            let m = m.expect("clap requires --m or --M");
            let expanded = ohno_m_symbolic(&c, m).map_err(|e| Failure::Usage(e.to_string()))?;
            println!("{expanded}");
            if !symbolic {
                let (ev, path) = evaluator(&cli.cache)?;
                let value = ev.combination(&expanded, &cfg);
                save_cache(&ev, path);
                println!("{}", value?);
            }
            Ok(())
        }
        Command::Verify {
            name,
            s,
            t,
            l,
            m,
            p,
            q,
            weight,
            precision,
            out,
            format,
        } => {
            let cfg = precision.config()?;
            let mut grid = Grid::new();
            for (text, param) in [
                (&s, Param::S),
                (&t, Param::T),
                (&l, Param::L),
                (&m, Param::M),
                (&p, Param::P),
                (&q, Param::Q),
                (&weight, Param::Weight),
            ] {
                grid_values(text, param, &mut grid)?;
            }
            let (ev, path) = evaluator(&cli.cache)?;
            let report = verify::verify(&name, &grid, &ev, &cfg).map_err(|e| match e {
                VerifyError::UnknownIdentity(_) | VerifyError::UnusedParameter { .. } | VerifyError::EmptyGrid(_) => {
                    Failure::Usage(e.to_string())
                }
            })?;
            save_cache(&ev, path);
            if let Some(out) = out {
                let format = match format {
                    Format::Json => ReportFormat::Json,
                    Format::Csv => ReportFormat::Csv,
                };
                report_to_file(&report, &out, format).map_err(|e| Failure::Runtime(e.to_string()))?;
            }
            println!("{report}");
            for failure in report.failures() {
                let reason = failure
                    .refused
                    .as_deref()
                    .or(failure.error.as_deref())
                    .map(str::to_string)
                    .or_else(|| failure.residual.map(|r| format!("residual {r:e}")))
                    .unwrap_or_else(|| "not equal".into());
                println!("  FAIL {}: {reason}", failure.params_text());
            }
            if report.pass {
                Ok(())
            } else {
                Err(Failure::Runtime(format!("{name}: verification failed")))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            eprintln!("\nExpression grammar:\n{GRAMMAR}");
            return ExitCode::from(2);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n");
            eprintln!("{}", Cli::command().render_help());
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
