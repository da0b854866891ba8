//! The `ratio-oed` command line. Every subcommand prints one table (CSV by
//! default) to stdout or to `--out`; `bakeoff` and `robustness` can also
//! write an SVG with `--plot`.

pub mod input;
pub mod svg;
pub mod table;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use crate::design::{optimal_design_hetero, optimal_design_homo, SearchOptions};
use crate::error::{Error, Result};
use crate::inference::{confidence_interval, IntervalRequest, Method, NormalHalfWidth, DEFAULT_REPLICATES};
use crate::model::{fit_least_squares, ExperimentDomain, ModelParams, VarianceModel};
use crate::sim::{
    coverage_study, default_theta0_grid, design_bakeoff, efficiency_loss, log_grid, prior_studies, prior_study,
    robustness_curve, CoverageSettings, SimSummary,
};
use table::{format_human, Cell, Table};

/// Environment variable capping worker threads (`0` or unset: one per core).
pub const THREADS_ENV: &str = "RATIO_OED_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    /// Only for `bakeoff` and `robustness`.
    Svg,
}

#[derive(Debug, Parser)]
#[command(name = "ratio-oed", version, about = "Optimal designs and interval estimates for a slope/intercept ratio")]
#[command(args_override_self = true)]
pub struct RunConfig {
    /// JSON object of flag values; explicit flags win.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Write the result table here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Progress and a short human summary on stderr.
    #[arg(short, long, global = true)]
    pub verbose: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct DomainArgs {
    #[arg(long, default_value_t = 1.0 / 3.0)]
    pub xmin: f64,
    #[arg(long, default_value_t = 19.0)]
    pub xmax: f64,
    /// Number of runs.
    #[arg(long, default_value_t = 10)]
    pub n: usize,
}

impl DomainArgs {
    fn domain(&self) -> Result<ExperimentDomain> {
        ExperimentDomain::new(self.xmin, self.xmax, self.n)
    }
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// True ratio used to simulate data.
    #[arg(long, default_value_t = 0.053)]
    pub theta: f64,
    #[arg(long, default_value_t = 3.9e-9)]
    pub beta0: f64,
    #[arg(long, default_value_t = 3.2e-10)]
    pub sigma: f64,
    /// Heteroskedastic scale, `power:GAMMA` or `table:PATH`.
    #[arg(long, value_name = "SPEC")]
    pub h: Option<String>,
}

impl ModelArgs {
    fn params(&self) -> Result<ModelParams> {
        let variance = match &self.h {
            None => VarianceModel::Homoskedastic { sigma: self.sigma },
            Some(spec) => VarianceModel::Heteroskedastic { sigma: self.sigma, h: input::parse_h_spec(spec)? },
        };
        ModelParams::new(self.beta0, self.theta, variance)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form allocation between the two endpoints.
    #[command(after_help = "Output columns: x_min,count (one row per support point)")]
    Design {
        #[command(flatten)]
        domain: DomainArgs,
        /// Prior guess of the ratio.
        #[arg(long)]
        theta0: f64,
    },

    /// Numerical design search for a heteroskedastic error scale.
    #[command(name = "design-hetero", after_help = "Output columns: x,count,criterion")]
    DesignHetero {
        #[command(flatten)]
        domain: DomainArgs,
        #[arg(long)]
        theta0: f64,
        /// `power:GAMMA` or `table:PATH` (CSV with header x,rel_sigma).
        #[arg(long, value_name = "SPEC")]
        h: String,
        #[arg(long, default_value_t = 50)]
        random_starts: usize,
        /// Iteration cap per start (default 500 times n).
        #[arg(long)]
        max_iter: Option<usize>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Required unless --random-starts is 0.
        #[arg(long)]
        seed: Option<u64>,
    },

    /// Least-squares fit of a dataset (CSV with header x,y).
    #[command(after_help = "Output columns: b0,b1,theta_hat,s2_e,n")]
    Estimate {
        #[arg(long, value_name = "PATH")]
        data: PathBuf,
    },

    /// Confidence intervals for the ratio.
    #[command(after_help = "Output columns: method,lower,theta_hat,upper,alpha,replicates,degenerate_replicates\n\
        Methods: normal-homo, normal-hetero, bayes, param, resid, wild, all")]
    Ci {
        #[arg(long, value_name = "PATH")]
        data: PathBuf,
        #[arg(long, default_value = "all")]
        method: String,
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
        /// Bootstrap replicates.
        #[arg(long = "B", default_value_t = DEFAULT_REPLICATES)]
        replicates: usize,
        /// Required for bootstrap methods.
        #[arg(long)]
        seed: Option<u64>,
        /// Normal half-width: `variance` (z times the delta-method variance) or `se` (z times its square root).
        #[arg(long, default_value = "variance")]
        normal_width: String,
    },

    /// Monte Carlo comparison of two designs.
    #[command(after_help = "Output columns: metric,a,b,ratio (ratio is a/b)\n\
        Designs: even, optimal, or a comma-separated list of x values")]
    Bakeoff {
        #[command(flatten)]
        domain: DomainArgs,
        #[command(flatten)]
        model: ModelArgs,
        /// Guess used to build `optimal` (default: --theta).
        #[arg(long)]
        theta0: Option<f64>,
        #[arg(long, default_value = "even")]
        design_a: String,
        #[arg(long, default_value = "optimal")]
        design_b: String,
        #[arg(long, default_value_t = 50_000)]
        nsim: usize,
        #[arg(long)]
        seed: u64,
        /// Box plot of both distributions.
        #[arg(long, value_name = "PATH")]
        plot: Option<PathBuf>,
    },

    /// Error of the closed-form design as a function of the prior guess.
    #[command(after_help = "Output columns: theta0,rho_star,n_at_xmin,intercentile_range,error_pct")]
    Robustness {
        #[command(flatten)]
        domain: DomainArgs,
        #[command(flatten)]
        model: ModelArgs,
        /// True ratio (default: --theta).
        #[arg(long)]
        theta_true: Option<f64>,
        #[arg(long, default_value_t = 500)]
        grid_points: usize,
        /// Default: theta_true / 50.
        #[arg(long)]
        grid_min: Option<f64>,
        /// Default: 20 * theta_true.
        #[arg(long)]
        grid_max: Option<f64>,
        #[arg(long, default_value_t = 50_000)]
        nsim: usize,
        #[arg(long)]
        seed: u64,
        /// Line plot of error_pct and rho_star.
        #[arg(long, value_name = "PATH")]
        plot: Option<PathBuf>,
    },

    /// Empirical coverage of interval methods on simulated datasets.
    #[command(after_help = "Output columns: method,coverage,mean_lower,mean_upper,mean_width,n_sim,failed")]
    Coverage {
        #[command(flatten)]
        domain: DomainArgs,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        theta0: Option<f64>,
        #[arg(long, default_value = "optimal")]
        design: String,
        #[arg(long, default_value = "all")]
        method: String,
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
        #[arg(long = "B", default_value_t = 1000)]
        replicates: usize,
        #[arg(long, default_value_t = 1000)]
        nsim: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = "variance")]
        normal_width: String,
    },

    /// Standard-error loss of published designs against the closed-form design.
    #[command(after_help = "Output columns: study,n,x_min,x_max,n_at_xmin,study_stderr,optimal_stderr,loss_pct")]
    Loss {
        /// Study number 1..10 or `all`.
        #[arg(long, default_value = "all")]
        study: String,
        /// Guess used to build the optimal design.
        #[arg(long, default_value_t = 1.0)]
        theta0: f64,
        /// True ratio for the simulation (default: --theta0).
        #[arg(long)]
        theta: Option<f64>,
        #[arg(long, default_value_t = 3.9e-9)]
        beta0: f64,
        #[arg(long, default_value_t = 3.2e-10)]
        sigma: f64,
        #[arg(long, default_value_t = 10_000)]
        nsim: usize,
        #[arg(long)]
        seed: u64,
    },
}

/// Appends `--key value` for every config entry whose flag is not already
/// on the command line. Booleans become bare flags; arrays are joined with
/// commas.
fn merge_config(args: Vec<OsString>, path: &Path) -> Result<Vec<OsString>> {
    let text = std::fs::read_to_string(path)?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| Error::invalid(format!("config {}: {e}", path.display())))?;
    let Value::Object(map) = value else {
        return Err(Error::invalid("config must be a JSON object"));
    };
    let present = |flag: &str| {
        args.iter().any(|a| {
            let a = a.to_string_lossy();
            a == flag || a.starts_with(&format!("{flag}="))
        })
    };
    let scalar = |v: &Value| -> Result<String> {
        match v {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) => Ok(n.to_string()),
            _ => Err(Error::invalid(format!("unsupported config value {v}"))),
        }
    };

    let mut merged = args.clone();
    for (key, v) in map {
        let flag = format!("--{}", key.replace('_', "-"));
        if key == "config" || present(&flag) || (key == "verbose" && present("-v")) {
            continue;
        }
        match v {
            Value::Null | Value::Bool(false) => {}
            Value::Bool(true) => merged.push(flag.into()),
            Value::Array(items) => {
                let parts = items.iter().map(scalar).collect::<Result<Vec<_>>>()?;
                merged.push(flag.into());
                merged.push(parts.join(",").into());
            }
            other => {
                merged.push(flag.into());
                merged.push(scalar(&other)?.into());
            }
        }
    }
    Ok(merged)
}

fn config_path(args: &[OsString]) -> Option<PathBuf> {
    let mut it = args.iter().map(|a| a.to_string_lossy().into_owned());
    while let Some(a) = it.next() {
        if a == "--config" {
            return it.next().map(PathBuf::from);
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Some(PathBuf::from(p));
        }
    }
    None
}

fn parse_methods(spec: &str) -> Result<Vec<Method>> {
    if spec == "all" {
        return Ok(Method::ALL.to_vec());
    }
    spec.split(',').map(|s| s.trim().parse()).collect()
}

fn parse_design(spec: &str, domain: &ExperimentDomain, theta0: f64) -> Result<Vec<f64>> {
    match spec {
        "even" => Ok(domain.even_spacing()),
        "optimal" => Ok(optimal_design_homo(domain, theta0)?.points()),
        list => list
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .ok()
                    .filter(|x| *x > 0.0 && x.is_finite())
                    .ok_or_else(|| Error::invalid(format!("bad design point '{s}'")))
            })
            .collect(),
    }
}

fn require_seed(seed: Option<u64>, what: &str) -> Result<u64> {
    seed.ok_or_else(|| Error::invalid(format!("{what} requires --seed")))
}

/// What a subcommand produced; written out after the worker pool is done.
#[derive(Default)]
struct Report {
    table: Table,
    svg: Option<String>,
    notes: Vec<String>,
}

impl Report {
    fn note(&mut self, msg: String) {
        self.notes.push(msg);
    }
}

fn emit(cfg: &RunConfig, report: &Report, stdout: &mut dyn Write) -> Result<()> {
    let write = |w: &mut dyn Write| -> Result<()> {
        match (cfg.format, &report.svg) {
            (Format::Csv, _) => report.table.write_csv(w)?,
            (Format::Json, _) => report.table.write_json(w)?,
            (Format::Svg, Some(doc)) => w.write_all(doc.as_bytes())?,
            (Format::Svg, None) => {
                return Err(Error::invalid("--format svg is only available for bakeoff and robustness"))
            }
        }
        Ok(())
    };
    match &cfg.out {
        Some(path) => {
            let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
            write(&mut file)?;
            file.flush()?;
        }
        None => write(stdout)?,
    }
    Ok(())
}

fn write_plot(path: &Option<PathBuf>, doc: &str) -> Result<()> {
    if let Some(p) = path {
        std::fs::write(p, doc)?;
    }
    Ok(())
}

fn summary_rows(table: &mut Table, a: &SimSummary, b: &SimSummary) {
    let rows: [(&str, fn(&SimSummary) -> f64); 9] = [
        ("median", |s| s.median),
        ("mean", |s| s.mean),
        ("stderr", |s| s.stderr),
        ("variance", |s| s.variance()),
        ("q01", |s| s.q01),
        ("q25", |s| s.q25),
        ("q75", |s| s.q75),
        ("q99", |s| s.q99),
        ("intercentile_range", |s| s.intercentile_range),
    ];
    for (name, get) in rows {
        table.push(vec![name.into(), get(a).into(), get(b).into(), (get(a) / get(b)).into()]);
    }
}

fn execute(cfg: &RunConfig) -> Result<Report> {
    let started = Instant::now();
    let mut out = Report::default();
    match &cfg.command {
        Command::Design { domain, theta0 } => {
            let alloc = optimal_design_homo(&domain.domain()?, *theta0)?;
            let mut t = Table::new(&["x_min", "count"]);
            for p in alloc.support() {
                t.push(vec![p.x.into(), p.count.into()]);
            }
            out.table = t;
        }

        Command::DesignHetero { domain, theta0, h, random_starts, max_iter, tol, seed } => {
            let seed = match random_starts {
                0 => seed.unwrap_or(0),
                _ => require_seed(*seed, "design-hetero with random starts")?,
            };
            let opts = SearchOptions {
                random_starts: *random_starts,
                max_iterations: *max_iter,
                simplex_tolerance: *tol,
                rng_seed: seed,
            };
            let found = optimal_design_hetero(&domain.domain()?, *theta0, &input::parse_h_spec(h)?, &opts)?;
            let mut t = Table::new(&["x", "count", "criterion"]);
            for &x in &found.xs {
                match t.rows.last_mut() {
                    Some(row) if row[0] == Cell::Num(x) => {
                        if let Cell::Int(c) = &mut row[1] {
                            *c += 1;
                        }
                    }
                    _ => t.push(vec![x.into(), 1usize.into(), found.criterion.into()]),
                }
            }
            out.note(format!("{} starts, criterion {}", found.starts, format_human(found.criterion)));
            out.table = t;
        }

        Command::Estimate { data } => {
            let data = input::parse_dataset(data)?;
            let fit = fit_least_squares(&data)?;
            let mut t = Table::new(&["b0", "b1", "theta_hat", "s2_e", "n"]);
            t.push(vec![fit.b0.into(), fit.b1.into(), fit.theta_hat.into(), fit.s2_e.into(), fit.n().into()]);
            out.note(format!("theta_hat {}", format_human(fit.theta_hat)));
            out.table = t;
        }

        Command::Ci { data, method, alpha, replicates, seed, normal_width } => {
            let data = input::parse_dataset(data)?;
            let methods = parse_methods(method)?;
            let width: NormalHalfWidth = normal_width.parse()?;
            let seed = match methods.iter().any(|m| m.is_bootstrap()) {
                true => require_seed(*seed, "bootstrap intervals")?,
                false => seed.unwrap_or(0),
            };
            let mut t =
                Table::new(&["method", "lower", "theta_hat", "upper", "alpha", "replicates", "degenerate_replicates"]);
            for m in methods {
                let b = if m.is_bootstrap() { *replicates } else { 0 };
                let req = IntervalRequest::new(m, *alpha, b, seed)?.with_half_width(width);
                let ci = confidence_interval(&data, &req)?;
                t.push(vec![
                    m.name().into(),
                    ci.lower.into(),
                    ci.theta_hat.into(),
                    ci.upper.into(),
                    (*alpha).into(),
                    ci.replicates.into(),
                    ci.degenerate_replicates.into(),
                ]);
            }
            out.table = t;
        }

        Command::Bakeoff { domain, model, theta0, design_a, design_b, nsim, seed, plot } => {
            let dom = domain.domain()?;
            let params = model.params()?;
            let theta0 = theta0.unwrap_or(model.theta);
            let a = parse_design(design_a, &dom, theta0)?;
            let b = parse_design(design_b, &dom, theta0)?;
            let report = design_bakeoff(&a, &b, &params, *nsim, *seed)?;
            let mut t = Table::new(&["metric", "a", "b", "ratio"]);
            summary_rows(&mut t, &report.a, &report.b);
            out.note(format!(
                "intercentile ratio {}, variance ratio {} ({:.1?})",
                format_human(report.intercentile_ratio),
                format_human(report.variance_ratio),
                started.elapsed()
            ));
            let doc = svg::box_plot(&[(design_a.as_str(), report.a), (design_b.as_str(), report.b)], Some(model.theta));
            write_plot(plot, &doc)?;
            out.table = t;
            out.svg = Some(doc);
        }

        Command::Robustness { domain, model, theta_true, grid_points, grid_min, grid_max, nsim, seed, plot } => {
            let dom = domain.domain()?;
            let params = model.params()?;
            let truth = theta_true.unwrap_or(model.theta);
            let grid = match (grid_min, grid_max, grid_points) {
                (None, None, 500) => default_theta0_grid(truth)?,
                _ => log_grid(grid_min.unwrap_or(truth / 50.0), grid_max.unwrap_or(truth * 20.0), *grid_points)?,
            };
            let rows = robustness_curve(truth, &grid, &dom, &params, *nsim, *seed)?;
            let mut t = Table::new(&["theta0", "rho_star", "n_at_xmin", "intercentile_range", "error_pct"]);
            for r in &rows {
                t.push(vec![
                    r.theta0.into(),
                    r.rho_star.into(),
                    r.count_at_min.into(),
                    r.intercentile_range.into(),
                    r.error_pct.into(),
                ]);
            }
            let worst = rows.iter().map(|r| r.error_pct).fold(f64::NEG_INFINITY, f64::max);
            out.note(format!("{} grid points, worst error {}%", rows.len(), format_human(worst)));
            let doc = svg::robustness_plot(&rows, truth);
            write_plot(plot, &doc)?;
            out.table = t;
            out.svg = Some(doc);
        }

        Command::Coverage { domain, model, theta0, design, method, alpha, replicates, nsim, seed, normal_width } => {
            let dom = domain.domain()?;
            let params = model.params()?;
            let design = parse_design(design, &dom, theta0.unwrap_or(model.theta))?;
            let settings = CoverageSettings {
                alpha: *alpha,
                n_sim: *nsim,
                replicates: *replicates,
                seed: *seed,
                normal_half_width: normal_width.parse()?,
            };
            let mut t =
                Table::new(&["method", "coverage", "mean_lower", "mean_upper", "mean_width", "n_sim", "failed"]);
            for m in parse_methods(method)? {
                let r = coverage_study(m, &design, &params, &settings)?;
                out.note(format!("{m}: coverage {}", format_human(r.coverage)));
                t.push(vec![
                    m.name().into(),
                    r.coverage.into(),
                    r.mean_lower.into(),
                    r.mean_upper.into(),
                    r.mean_width.into(),
                    r.n_sim.into(),
                    r.failed.into(),
                ]);
            }
            out.table = t;
        }

        Command::Loss { study, theta0, theta, beta0, sigma, nsim, seed } => {
            let studies = match study.as_str() {
                "all" => prior_studies(),
                id => {
                    let id: usize = id.parse().map_err(|_| Error::invalid(format!("bad study '{id}'")))?;
                    vec![prior_study(id).ok_or_else(|| Error::invalid(format!("no study {id} (1..10)")))?]
                }
            };
            let params = ModelParams::homoskedastic(*beta0, theta.unwrap_or(*theta0), *sigma)?;
            let mut t = Table::new(&[
                "study",
                "n",
                "x_min",
                "x_max",
                "n_at_xmin",
                "study_stderr",
                "optimal_stderr",
                "loss_pct",
            ]);
            let mut total = 0.0;
            for s in &studies {
                let r = efficiency_loss(s, &params, *theta0, *nsim, *seed)?;
                total += r.loss_pct;
                t.push(vec![
                    r.study_id.into(),
                    r.runs.into(),
                    r.x_min.into(),
                    r.x_max.into(),
                    r.optimal_count_at_min.into(),
                    r.study_stderr.into(),
                    r.optimal_stderr.into(),
                    r.loss_pct.into(),
                ]);
            }
            out.note(format!("mean loss {}%", format_human(total / studies.len() as f64)));
            out.table = t;
        }
    }
    out.note(format!("done in {:.2?}", started.elapsed()));
    Ok(out)
}

fn thread_count() -> Result<usize> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(0),
        Ok(v) if v.trim().is_empty() => Ok(0),
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::invalid(format!("{THREADS_ENV} must be a non-negative integer, got '{v}'"))),
    }
}

/// Parses `args` (including the program name), runs the subcommand and
/// returns the process exit code: 0 success, 2 invalid input, 3 numeric
/// failure. Diagnostics go to `stderr`.
pub fn run_command<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let mut argv: Vec<OsString> = args.into_iter().map(Into::into).collect();
    if let Some(path) = config_path(&argv) {
        match merge_config(argv, &path) {
            Ok(merged) => argv = merged,
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                return e.exit_code();
            }
        }
    }

    let cfg = match RunConfig::try_parse_from(argv) {
        Ok(cfg) => cfg,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{rendered}");
                    2
                }
            };
        }
    };

    let result = thread_count().and_then(|threads| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::Numeric(format!("thread pool: {e}")))?;
        let report = pool.install(|| execute(&cfg))?;
        if cfg.verbose {
            for n in &report.notes {
                let _ = writeln!(stderr, "{n}");
            }
        }
        emit(&cfg, &report, stdout)
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_command(std::iter::once("ratio-oed").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn design_table() {
        let (code, out, _) = run(&["design", "--n", "10", "--xmin", "0.3333333", "--xmax", "19", "--theta0", "0.053"]);
        assert_eq!(code, 0);
        assert_eq!(out, "x_min,count\n0.3333333,7\n19,3\n");
    }

    #[test]
    fn bad_flag_exit_two() {
        assert_eq!(run(&["design", "--bogus"]).0, 2);
        assert_eq!(run(&["design", "--theta0", "-1"]).0, 2);
        assert_eq!(run(&["--help"]).0, 0);
    }

    #[test]
    fn methods_parse() {
        assert_eq!(parse_methods("all").unwrap().len(), 6);
        assert_eq!(parse_methods("param,wild").unwrap(), vec![Method::ParametricBootstrap, Method::WildBootstrap]);
        assert!(parse_methods("nope").is_err());
    }
}
