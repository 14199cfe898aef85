mod grid;

use std::io::{self, Read, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use genfit::gof::KsMethod;
use genfit::report::{format_sig, SCHEMA_VERSION};
use genfit::{
    data, fit_report, selftest, BaseDist, Error, Family, Method, Model, OptimizerConfig,
    ReportOptions, SelftestConfig, SpacingContext, TailFlags,
};
use serde::Serialize;

/// Generalized G-family distributions and maximum product of spacings fits.
#[derive(Parser)]
#[command(name = "genfit", version, after_help = EXIT_CODES)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

const EXIT_CODES: &str = "Exit codes: 0 ok, 1 i/o, 2 unknown id or bad parameters, 3 unparsable input, 4 fit failure";

#[derive(Subcommand)]
enum Command {
    /// Density at points x.
    Pdf {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        points: PointArgs,
        /// Return ln f.
        #[arg(long)]
        log: bool,
    },
    /// Distribution function at points x.
    Cdf {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        points: PointArgs,
        #[command(flatten)]
        tails: TailArgs,
    },
    /// Quantiles at probabilities p.
    Quantile {
        #[command(flatten)]
        model: ModelArgs,
        /// Probabilities as start:stop:step or a comma list; read from stdin when absent.
        #[arg(long)]
        p: Option<String>,
        #[command(flatten)]
        tails: TailArgs,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        output: Output,
    },
    /// Random draws by inverse transform.
    Sample {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, env = "GENFIT_SEED", default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        output: Output,
    },
    /// Maximum product of spacings fit with goodness-of-fit report.
    Fit {
        #[arg(long)]
        family: String,
        #[arg(long)]
        base: String,
        /// Bundled dataset name, a file path, or - for stdin.
        #[arg(long)]
        data: String,
        #[arg(long)]
        no_location: bool,
        #[arg(long, default_value = "nelder-mead")]
        method: String,
        #[arg(long, default_value_t = 0.05)]
        sig_level: f64,
        #[arg(long, default_value = "asymptotic")]
        ks_method: String,
        #[arg(long, env = "GENFIT_SEED", default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        output: Output,
    },
    /// KS p-values of simulated samples against their generating model.
    Selftest {
        #[arg(long)]
        family: String,
        #[arg(long)]
        base: String,
        #[arg(long)]
        no_location: bool,
        #[arg(long, default_value_t = 100)]
        reps: usize,
        /// Sample sizes as start:stop:step or a comma list.
        #[arg(long, default_value = "5:100:5")]
        n_grid: String,
        #[arg(long, default_value = "asymptotic")]
        ks_method: String,
        #[arg(long, env = "GENFIT_SEED", default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        output: Output,
    },
    /// Available families, bases and datasets.
    List {
        #[arg(long, value_enum, default_value_t = Output::Text)]
        output: Output,
    },
}

#[derive(Args)]
struct ModelArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    base: String,
    /// Comma-separated (a, b, d, base parameters, mu).
    #[arg(long, allow_hyphen_values = true)]
    params: String,
    /// Drop mu from the parameter vector (it is fixed at 0).
    #[arg(long)]
    no_location: bool,
}

#[derive(Args)]
struct PointArgs {
    /// Points as start:stop:step or a comma list; read from stdin when absent.
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    #[arg(long, value_enum, default_value_t = Output::Text)]
    output: Output,
}

#[derive(Args)]
struct TailArgs {
    #[arg(long)]
    log_p: bool,
    #[arg(long)]
    no_lower_tail: bool,
}

impl TailArgs {
    fn flags(&self) -> TailFlags {
        TailFlags {
            log_p: self.log_p,
            lower_tail: !self.no_lower_tail,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
    Csv,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnknownFamily(_) => {
                let ids: Vec<&str> = Family::ALL.iter().map(|f| f.id()).collect();
                return Failure::new(2, format!("{e}; valid families: {}", ids.join(", ")));
            }
            Error::UnknownBase(_) => {
                let ids: Vec<&str> = BaseDist::ALL.iter().map(|b| b.id()).collect();
                return Failure::new(2, format!("{e}; valid bases: {}", ids.join(", ")));
            }
            Error::UnknownDataset(_)
            | Error::ParamLength { .. }
            | Error::ParamDomain { .. }
            | Error::Domain { .. } => 2,
            Error::Parse { .. } | Error::TooFewObservations { .. } => 3,
            Error::FitFailed(_) | Error::InfeasibleStart | Error::Convergence { .. } => 4,
        };
        Failure::new(code, e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            if stdout.write_all(out.as_bytes()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("genfit: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Pdf { model, points, log } => {
            let d = build(&model)?;
            let xs = read_points(points.x.as_deref())?;
            let v: Vec<f64> = xs.iter().map(|&x| d.pdf(x, log)).collect();
            Ok(columns("x", if log { "log_pdf" } else { "pdf" }, &xs, &v, points.output))
        }
        Command::Cdf { model, points, tails } => {
            let d = build(&model)?;
            let xs = read_points(points.x.as_deref())?;
            let v: Vec<f64> = xs.iter().map(|&x| d.cdf(x, tails.flags())).collect();
            Ok(columns("x", "cdf", &xs, &v, points.output))
        }
        Command::Quantile {
            model,
            p,
            tails,
            output,
        } => {
            let d = build(&model)?;
            let ps = read_points(p.as_deref())?;
            let v = ps
                .iter()
                .map(|&p| d.quantile(p, tails.flags()))
                .collect::<genfit::Result<Vec<f64>>>()?;
            Ok(columns("p", "quantile", &ps, &v, output))
        }
        Command::Sample {
            model,
            n,
            seed,
            output,
        } => {
            let d = build(&model)?;
            let draws = d.sample(n, seed)?;
            Ok(match output {
                Output::Json => json(&SampleOut {
                    schema_version: SCHEMA_VERSION,
                    seed,
                    values: draws,
                }),
                Output::Csv => std::iter::once("value".to_string())
                    .chain(draws.iter().map(f64::to_string))
                    .map(|l| l + "\n")
                    .collect(),
                Output::Text => draws.iter().map(|v| format!("{v}\n")).collect(),
            })
        }
        Command::Fit {
            family,
            base,
            data,
            no_location,
            method,
            sig_level,
            ks_method,
            seed,
            output,
        } => {
            let model = Model::new(family.parse()?, base.parse()?, !no_location);
            let values = load_data(&data)?;
            let ctx = SpacingContext::new(&values, model)?;
            let config = OptimizerConfig {
                seed,
                ..OptimizerConfig::with_method(method.parse::<Method>()?)
            };
            let opts = ReportOptions {
                sig_level,
                ks_method: ks_method.parse()?,
            };
            let report = fit_report(&ctx, &config, &opts)?;
            Ok(match output {
                Output::Text => report.to_text(),
                Output::Json => json(&report),
                Output::Csv => fit_curves(&ctx, &report.mps)?,
            })
        }
        Command::Selftest {
            family,
            base,
            no_location,
            reps,
            n_grid,
            ks_method,
            seed,
            output,
        } => {
            let model = Model::new(family.parse()?, base.parse()?, !no_location);
            let grid = grid::parse_points(&n_grid).map_err(|m| Failure::new(3, m))?;
            let n_grid = grid
                .iter()
                .map(|&n| {
                    if n >= 1.0 && n.fract() == 0.0 {
                        Ok(n as usize)
                    } else {
                        Err(Failure::new(3, format!("sample size {n} is not a positive integer")))
                    }
                })
                .collect::<Result<Vec<_>, _>>()?;
            let cfg = SelftestConfig {
                n_grid,
                reps,
                ks_method: ks_method.parse::<KsMethod>()?,
                ..SelftestConfig::new(model, seed)
            };
            let rows = selftest(&cfg)?;
            Ok(match output {
                Output::Json => json(&SelftestOut {
                    schema_version: SCHEMA_VERSION,
                    family: model.family.id(),
                    base: model.base.id(),
                    seed,
                    rows,
                }),
                Output::Csv | Output::Text => {
                    let sep = if output == Output::Csv { "," } else { "\t" };
                    let mut out = ["n", "min", "q1", "median", "q3", "max", "pass_rate", "redraws"]
                        .join(sep)
                        + "\n";
                    for r in rows {
                        let cells = [
                            r.n.to_string(),
                            format_sig(r.min),
                            format_sig(r.q1),
                            format_sig(r.median),
                            format_sig(r.q3),
                            format_sig(r.max),
                            format_sig(r.pass_rate),
                            r.redraws.to_string(),
                        ];
                        out += &(cells.join(sep) + "\n");
                    }
                    out
                }
            })
        }
        Command::List { output } => Ok(list(output)),
    }
}

fn build(args: &ModelArgs) -> Result<genfit::GDist, Failure> {
    let model = Model::new(args.family.parse()?, args.base.parse()?, !args.no_location);
    let params: Vec<f64> = grid::parse_list(&args.params).map_err(|m| Failure::new(3, m))?;
    Ok(model.dist(&params)?)
}

fn read_points(spec: Option<&str>) -> Result<Vec<f64>, Failure> {
    match spec {
        Some(s) => grid::parse_points(s).map_err(|m| Failure::new(3, m)),
        None => Ok(data::parse_values(&read_stdin()?)?),
    }
}

fn read_stdin() -> Result<String, Failure> {
    let mut text = String::new();
    io::stdin()
        .read_to_string(&mut text)
        .map_err(|e| Failure::new(1, format!("reading stdin: {e}")))?;
    Ok(text)
}

fn load_data(source: &str) -> Result<Vec<f64>, Failure> {
    if source == "-" {
        return Ok(data::parse_values(&read_stdin()?)?);
    }
    if data::dataset_names().any(|n| n == source) && !Path::new(source).exists() {
        return Ok(data::dataset(source)?.values);
    }
    let text = std::fs::read_to_string(source)
        .map_err(|e| Failure::new(1, format!("reading {source}: {e}")))?;
    Ok(data::parse_values(&text)?)
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serializes") + "\n"
}

#[derive(Serialize)]
struct ColumnsOut<'a> {
    schema_version: u32,
    input: &'a str,
    output: &'a str,
    points: Vec<[f64; 2]>,
}

#[derive(Serialize)]
struct SampleOut {
    schema_version: u32,
    seed: u64,
    values: Vec<f64>,
}

#[derive(Serialize)]
struct SelftestOut {
    schema_version: u32,
    family: &'static str,
    base: &'static str,
    seed: u64,
    rows: Vec<genfit::SelftestRow>,
}

fn columns(input: &str, output: &str, xs: &[f64], ys: &[f64], fmt: Output) -> String {
    match fmt {
        Output::Json => json(&ColumnsOut {
            schema_version: SCHEMA_VERSION,
            input,
            output,
            points: xs.iter().zip(ys).map(|(&x, &y)| [x, y]).collect(),
        }),
        Output::Csv | Output::Text => {
            let sep = if fmt == Output::Csv { "," } else { "\t" };
            let mut out = format!("{input}{sep}{output}\n");
            for (x, y) in xs.iter().zip(ys) {
                out += &format!("{x}{sep}{y}\n");
            }
            out
        }
    }
}

/// Sorted data with empirical and fitted distribution functions and the
/// fitted density, for plotting.
fn fit_curves(ctx: &SpacingContext, theta: &[f64]) -> Result<String, Failure> {
    let d = ctx.model().dist(theta)?;
    let n = ctx.n() as f64;
    let mut out = String::from("x,ecdf,cdf,pdf\n");
    for (i, &x) in ctx.data().iter().enumerate() {
        let ecdf = (i + 1) as f64 / n;
        out += &format!("{x},{ecdf},{},{}\n", d.cdf(x, TailFlags::default()), d.pdf(x, false));
    }
    Ok(out)
}

#[derive(Serialize)]
struct ListOut {
    schema_version: u32,
    families: Vec<FamilyEntry>,
    bases: Vec<BaseEntry>,
    datasets: Vec<&'static str>,
}

#[derive(Serialize)]
struct FamilyEntry {
    id: &'static str,
    induced: &'static [&'static str],
}

#[derive(Serialize)]
struct BaseEntry {
    id: &'static str,
    params: &'static [&'static str],
}

fn list(output: Output) -> String {
    let listing = ListOut {
        schema_version: SCHEMA_VERSION,
        families: Family::ALL
            .iter()
            .map(|f| FamilyEntry {
                id: f.id(),
                induced: f.induced_names(),
            })
            .collect(),
        bases: BaseDist::ALL
            .iter()
            .map(|b| BaseEntry {
                id: b.id(),
                params: b.param_names(),
            })
            .collect(),
        datasets: data::dataset_names().collect(),
    };
    if output == Output::Json {
        return json(&listing);
    }
    let mut out = String::from("families:\n");
    for f in &listing.families {
        out += &format!("  {:<12} {}\n", f.id, f.induced.join(","));
    }
    out += "bases (each followed by mu when the location is on):\n";
    for b in &listing.bases {
        out += &format!("  {:<18} {}\n", b.id, b.params.join(","));
    }
    out += &format!("datasets: {}\n", listing.datasets.join(", "));
    out
}
