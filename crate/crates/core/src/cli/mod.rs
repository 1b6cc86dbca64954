//! Command-line front end for the `lindiff` binary.

pub mod config;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::dirichlet::{self, TestFunction};
use crate::error::{Error, Result};
use crate::measures::Interval;
use crate::simulate::{self, SimConfig};
use crate::smoothcore::{self, CoreAnswer, HamzaVerdict};

pub use config::ConfigDocument;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_UNDECIDABLE: i32 = 3;
pub const EXIT_PRECONDITION: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "lindiff", version, about = "Dirichlet-form data of one-dimensional diffusions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// System description (TOML).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the representation conditions.
    Validate,
    /// Closability of the smooth-function form for a reference density.
    Hamza,
    /// Closure of smooth functions: merge scale-connected intervals.
    Merge,
    /// Do smooth compactly supported functions form a core?
    Core,
    /// Energy of the test function given by `experiment.knots`.
    Energy,
    /// Exact probability of reaching `right` before `left`.
    Hitprob(Points),
    /// Monte Carlo on the scale-uniform chain.
    Simulate(SimArgs),
}

fn num_arg(s: &str) -> std::result::Result<f64, String> {
    config::Num::parse(s)
}

#[derive(Debug, Args)]
pub struct Points {
    #[arg(long, value_parser = num_arg, allow_hyphen_values = true)]
    pub start: Option<f64>,
    #[arg(long, value_parser = num_arg, allow_hyphen_values = true)]
    pub left: Option<f64>,
    #[arg(long, value_parser = num_arg, allow_hyphen_values = true)]
    pub right: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SimArgs {
    #[command(flatten)]
    pub points: Points,
    #[arg(long)]
    pub paths: Option<u64>,
    /// Grid spacing in scale units.
    #[arg(long = "delta-s", value_parser = num_arg)]
    pub delta_s: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub threads: Option<usize>,
    /// Occupation profile of the walk on `[left, right]` instead of hitting.
    #[arg(long)]
    pub occupation: bool,
    /// Total jumps for `--occupation`.
    #[arg(long)]
    pub steps: Option<u64>,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config { .. } | Error::InvalidInterval(_) | Error::InvalidMeasure(_) | Error::InvalidScale(_) => EXIT_PARSE,
        Error::Undecidable(_) => EXIT_UNDECIDABLE,
        _ => EXIT_PRECONDITION,
    }
}

/// Parses `args` (program name first) and runs the command, writing `--out`
/// if given. Never exits the process.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            return Outcome { code, stdout: String::new(), stderr: e.render().to_string() };
        }
    };
    let (code, body) = match execute(&cli) {
        Ok(r) => r,
        Err(e) => return Outcome { code: exit_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") },
    };
    match &cli.out {
        Some(path) => match std::fs::write(path, &body) {
            Ok(()) => Outcome { code, stdout: String::new(), stderr: String::new() },
            Err(e) => Outcome {
                code: EXIT_PRECONDITION,
                stdout: String::new(),
                stderr: format!("error: cannot write {}: {e}\n", path.display()),
            },
        },
        None => Outcome { code, stdout: body, stderr: String::new() },
    }
}

fn load(cli: &Cli) -> Result<(ConfigDocument, String)> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| Error::Config { line: 0, column: 0, message: "--config is required".into() })?;
    let text = std::fs::read_to_string(path).map_err(|e| Error::Config {
        line: 0,
        column: 0,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    let doc = ConfigDocument::parse(&text)?;
    let id = doc.id.clone().unwrap_or_else(|| {
        path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "config".into())
    });
    Ok((doc, id))
}

fn header(name: &str, id: &str, doc: &ConfigDocument) -> String {
    format!("command {name}\nspec {id}\ndigest {}\n", doc.digest())
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn execute(cli: &Cli) -> Result<(i32, String)> {
    let (doc, id) = load(cli)?;
    let text = cli.format == Format::Text;
    match &cli.command {
        Command::Validate => {
            let spec = doc.build_spec()?;
            let r = dirichlet::validate(&spec);
            let code = if r.has_failures() {
                EXIT_NEGATIVE
            } else if r.has_undecidable() {
                EXIT_UNDECIDABLE
            } else {
                EXIT_OK
            };
            let body = if text {
                header("validate", &id, &doc) + &r.to_text()
            } else {
                let mut out = String::from("spec_id,subject,check,status,detail\n");
                for c in &r.checks {
                    let _ = writeln!(out, "{id},{},{},{},{}", c.subject, c.name, c.status, csv_field(&c.detail));
                }
                out
            };
            Ok((code, body))
        }
        Command::Hamza => {
            let a = doc.build_density()?;
            match smoothcore::hamza_closable(&a)? {
                HamzaVerdict::NotClosable(why) => {
                    let body = if text {
                        header("hamza", &id, &doc) + &format!("not closable: {why}\n")
                    } else {
                        format!("spec_id,closable,reason\n{id},false,{}\n", csv_field(&why))
                    };
                    Ok((EXIT_NEGATIVE, body))
                }
                HamzaVerdict::Closable => {
                    let spec = smoothcore::intervals_from_density(&a)?;
                    let ivs = spec.intervals();
                    let names: Vec<String> = ivs.iter().map(|e| e.interval.to_string()).collect();
                    let body = if text {
                        let mut out = header("hamza", &id, &doc);
                        let noun = if ivs.len() == 1 { "interval" } else { "intervals" };
                        let _ = writeln!(out, "closable; {} {noun} {}", ivs.len(), names.join(", "));
                        for (k, e) in ivs.iter().enumerate() {
                            let _ = writeln!(
                                out,
                                "interval.{k} {} scale={} s(a)={} s(b)={}",
                                e.interval,
                                e.scale.describe(),
                                e.scale.left_limit(),
                                e.scale.right_limit()
                            );
                        }
                        out
                    } else {
                        let mut out = String::from("spec_id,interval,left_limit,right_limit\n");
                        for e in ivs {
                            let _ = writeln!(
                                out,
                                "{id},{},{},{}",
                                csv_field(&e.interval.to_string()),
                                e.scale.left_limit(),
                                e.scale.right_limit()
                            );
                        }
                        out
                    };
                    Ok((EXIT_OK, body))
                }
            }
        }
        Command::Merge => {
            let spec = valid_spec(&doc)?;
            let m = smoothcore::cinf_merge(&spec)?;
            let body = if text {
                let mut out = header("merge", &id, &doc);
                let n = m.class_count();
                let summary: Vec<String> = m
                    .merged
                    .iter()
                    .map(|k| {
                        let name = if k.scale.is_natural() { "natural".to_string() } else { k.scale.describe() };
                        format!("{} with {name} scale", k.interval())
                    })
                    .collect();
                let _ = write!(out, "{n} {}", if n == 1 { "class" } else { "classes" });
                if !summary.is_empty() {
                    let _ = write!(out, "; merged: {}", summary.join(", "));
                }
                out.push('\n');
                out + &m.to_text()
            } else {
                let mut out = String::from("spec_id,class,interval,members,scale,left_limit,right_limit\n");
                for (k, c) in m.merged.iter().enumerate() {
                    let s = &c.scale;
                    let _ = writeln!(
                        out,
                        "{id},{k},{},{},{},{},{}",
                        csv_field(&s.domain().to_string()),
                        c.class.len(),
                        csv_field(&s.describe()),
                        s.left_limit(),
                        s.right_limit()
                    );
                }
                out
            };
            Ok((EXIT_OK, body))
        }
        Command::Core => {
            let spec = valid_spec(&doc)?;
            let v = smoothcore::is_special_standard_core(&spec)?;
            let code = if v.answer == CoreAnswer::Yes { EXIT_OK } else { EXIT_NEGATIVE };
            let body = if text {
                let mut out = header("core", &id, &doc);
                let _ = writeln!(out, "core: {}", v.answer);
                let _ = writeln!(out, "smooth_contained {}", v.smooth.contained);
                for r in v.smooth.reasons() {
                    let _ = writeln!(out, "reason {r}");
                }
                let _ = writeln!(out, "absolutely_continuous {}", v.condition_one());
                let _ = writeln!(out, "scale_isolated {}", v.condition_two());
                let connected: Vec<_> = v.graph.links.iter().filter(|w| w.connected).collect();
                for w in connected.iter().take(8) {
                    let _ = writeln!(out, "connected {} {} lambda_s={} lambda_l={}", w.i, w.j, w.lambda_s, w.lambda_l);
                }
                if connected.len() > 8 {
                    let _ = writeln!(out, "connected ... {} more", connected.len() - 8);
                }
                if v.graph.truncated {
                    let _ = writeln!(out, "note gap families materialized to depth {}", v.graph.truncation_depth);
                }
                out
            } else {
                format!(
                    "spec_id,core,smooth_contained,absolutely_continuous,scale_isolated\n{id},{},{},{},{}\n",
                    v.answer,
                    v.smooth.contained,
                    v.condition_one(),
                    v.condition_two()
                )
            };
            Ok((code, body))
        }
        Command::Energy => {
            let spec = doc.build_spec()?;
            let knots: Vec<(f64, f64)> = doc
                .experiment()
                .knots
                .ok_or_else(|| Error::Precondition("energy needs `experiment.knots`".into()))?
                .iter()
                .map(|(x, u)| (x.0, u.0))
                .collect();
            let u = TestFunction::from_knots(&spec, &knots)?;
            let e = dirichlet::energy(&spec, &u)?;
            let d = dirichlet::in_domain(&spec, &u)?;
            let code = if d.member { EXIT_OK } else { EXIT_NEGATIVE };
            let body = if text {
                let mut out = header("energy", &id, &doc);
                let _ = writeln!(out, "form {}", fmt_ext(e.form));
                let _ = writeln!(out, "killing {}{}", fmt_ext(e.killing), if e.killing_exact { "" } else { " (quadrature)" });
                let _ = writeln!(out, "total {}", fmt_ext(e.total()));
                let _ = writeln!(out, "in_domain {}", d.member);
                for r in &d.reasons {
                    let _ = writeln!(out, "reason {r}");
                }
                out
            } else {
                format!(
                    "spec_id,form,killing,total,in_domain\n{id},{},{},{},{}\n",
                    fmt_ext(e.form),
                    fmt_ext(e.killing),
                    fmt_ext(e.total()),
                    d.member
                )
            };
            Ok((code, body))
        }
        Command::Hitprob(p) => {
            let spec = doc.build_spec()?;
            let (x, l, r) = points(p, &doc)?;
            let h = dirichlet::hitting_probability(&spec, x, l, r)?;
            let body = if text {
                header("hitprob", &id, &doc) + &format!("start {x} left {l} right {r}\nexact {h}\n")
            } else {
                format!(
                    "spec_id,start,left,right,exact\n{id},{},{},{},{}\n",
                    num(x),
                    num(l),
                    num(r),
                    num(h)
                )
            };
            Ok((EXIT_OK, body))
        }
        Command::Simulate(a) => simulate_cmd(cli, a, &doc, &id),
    }
}

/// The system, refused unless it passes validation.
fn valid_spec(doc: &ConfigDocument) -> Result<crate::dirichlet::DiffusionSpec> {
    let spec = doc.build_spec()?;
    let r = dirichlet::validate(&spec);
    if !r.is_valid() {
        let failed: Vec<String> = r
            .checks
            .iter()
            .filter(|c| matches!(c.status, dirichlet::CheckStatus::Fail | dirichlet::CheckStatus::Undecidable))
            .map(|c| format!("{} {} {}", c.subject, c.name, c.status))
            .collect();
        return Err(Error::Precondition(format!("the system is not valid: {}", failed.join("; "))));
    }
    Ok(spec)
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_ext(x: crate::ExtReal) -> String {
    match x.finite() {
        Some(v) => num(v),
        None => x.to_string(),
    }
}

fn points(p: &Points, doc: &ConfigDocument) -> Result<(f64, f64, f64)> {
    let ex = doc.experiment();
    let pick = |flag: Option<f64>, cfg: Option<config::Num>, name: &str| {
        flag.or(cfg.map(|n| n.0))
            .ok_or_else(|| Error::Precondition(format!("missing --{name} (or experiment.{name})")))
    };
    Ok((pick(p.start, ex.start, "start")?, pick(p.left, ex.left, "left")?, pick(p.right, ex.right, "right")?))
}

fn simulate_cmd(cli: &Cli, a: &SimArgs, doc: &ConfigDocument, id: &str) -> Result<(i32, String)> {
    let spec = doc.build_spec()?;
    let ex = doc.experiment();
    let defaults = SimConfig::default();
    let cfg = SimConfig {
        delta_s: a.delta_s.or(ex.delta_s.map(|n| n.0)),
        n_paths: a.paths.or(ex.paths).unwrap_or(defaults.n_paths),
        seed: a.seed.or(ex.seed).unwrap_or(defaults.seed),
        threads: a.threads,
        ..defaults
    };
    let text = cli.format == Format::Text;
    if a.occupation {
        let ex_l = a.points.left.or(ex.left.map(|n| n.0));
        let ex_r = a.points.right.or(ex.right.map(|n| n.0));
        let start = a.points.start.or(ex.start.map(|n| n.0));
        let (l, r) = match (ex_l, ex_r) {
            (Some(l), Some(r)) => (l, r),
            _ => return Err(Error::Precondition("occupation needs --left and --right".into())),
        };
        let n = spec
            .index_of(0.5 * (l + r))
            .ok_or_else(|| Error::Precondition("the window is not inside an effective interval".into()))?;
        let chain = simulate::build_chain(&spec, n, &Interval::closed(l, r)?, &cfg)?;
        let steps = a.steps.or(ex.steps).unwrap_or(10_000_000);
        let p = simulate::occupation_profile(&chain, start, steps, &cfg)?;
        let mid = 0.5 * (l + r);
        let (m, se) = p.mass_fraction(|x| x > mid);
        let body = if text {
            let mut out = header("simulate", id, doc);
            let _ = writeln!(out, "occupation window [{l}, {r}] points {} steps {steps} paths {} seed {}", chain.len(), cfg.n_paths, cfg.seed);
            let _ = writeln!(out, "right_half estimate {} se {} expected {}", num(m), num(se), num(p.expected_fraction(|x| x > mid)));
            out
        } else {
            simulate::occupation_csv(id, &p)
        };
        return Ok((EXIT_OK, body));
    }
    let (x, l, r) = points(&a.points, doc)?;
    let n = spec
        .index_of(x)
        .ok_or_else(|| Error::Precondition(format!("{x} is a trap; its path is constant")))?;
    let chain = simulate::build_chain(&spec, n, &Interval::closed(l, r)?, &cfg)?;
    let h = simulate::estimate_hitting(&chain, x, l, r, &cfg)?;
    let body = if text {
        let mut out = header("simulate", id, doc);
        let _ = writeln!(out, "start {x} left {l} right {r} delta_s {} points {}", num(chain.delta_s), chain.len());
        let _ = writeln!(out, "exact {}", num(h.exact));
        let _ = writeln!(out, "chain_exact {}", num(h.chain_exact));
        let _ = writeln!(out, "estimate {} se {} z {:.3}", num(h.estimate), num(h.se), h.z_score());
        let _ = writeln!(out, "paths {} seed {} unresolved {}", h.n_paths, h.seed, h.unresolved);
        out
    } else {
        format!("{}\n{}\n", simulate::HITTING_CSV_HEADER, simulate::hitting_csv_row(id, chain.delta_s, &h))
    };
    Ok((EXIT_OK, body))
}
