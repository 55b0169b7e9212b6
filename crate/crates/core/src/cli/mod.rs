//! Command-line front end: configuration layering, dispatch, and reports.
//!
//! Parameters resolve as flags over config file over defaults. Exit codes:
//! 0 success, 2 invalid input, 3 budget exceeded, 4 a bound fell below its
//! exact value, 1 I/O failure.

mod commands;
mod params;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::parser::ValueSource;
use clap::{Arg, ArgAction, ArgMatches, Command};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rational::{parse_rational, Rational};

pub use commands::{parse_int_list, parse_real, run_command, Output};
pub use params::{command, CommandSpec, Kind, Param, COMMANDS, GLOBAL_KEYS};

/// Version of the JSON report layout.
pub const SCHEMA_VERSION: &str = "1.0";
/// JSON Schema every report satisfies.
pub const REPORT_SCHEMA: &str = include_str!("../../schema/report.schema.json");
/// Environment variable for the default worker count.
pub const WORKERS_ENV: &str = "SMALLBALL_WORKERS";
pub const MAX_SWEEP_CELLS: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub subcommand: String,
    pub parameters: BTreeMap<String, String>,
    pub master_seed: u64,
    pub output_path: Option<PathBuf>,
    pub format: Format,
    pub workers: Option<usize>,
    pub timing: bool,
}

fn check_value(param: &Param, value: &str) -> Result<()> {
    let bad = |what: &str| Error::Parse(format!("{} expects {what}, got {value:?}", param.key));
    match param.kind {
        Kind::Int => value.trim().parse::<i64>().map(|_| ()).map_err(|_| bad("an integer")),
        Kind::Rational => parse_rational(value).map(|_| ()).map_err(|_| bad("a rational p/q")),
        Kind::Real => parse_real(value).map(|_| ()).map_err(|_| bad("a real number")),
        Kind::Text => Ok(()),
    }
}

impl RunConfig {
    /// Defaults for `subcommand`.
    pub fn new(subcommand: &str) -> Result<Self> {
        let spec = command(subcommand).ok_or_else(|| Error::invalid(format!("unknown subcommand {subcommand:?}")))?;
        Ok(RunConfig {
            subcommand: subcommand.to_string(),
            parameters: spec
                .params
                .iter()
                .filter_map(|p| p.default.map(|d| (p.key.to_string(), d.to_string())))
                .collect(),
            master_seed: 0,
            output_path: None,
            format: Format::Json,
            workers: None,
            timing: false,
        })
    }

    fn spec(&self) -> &'static CommandSpec {
        command(&self.subcommand).expect("validated at construction")
    }

    /// Sets a parameter or global key; unknown keys and ill-typed values are rejected.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "seed" => {
                self.master_seed = value.trim().parse().map_err(|_| Error::Parse(format!("seed expects a 64-bit integer, got {value:?}")))?;
            }
            "output" => self.output_path = Some(PathBuf::from(value.trim())),
            "format" => {
                self.format = match value.trim() {
                    "json" => Format::Json,
                    "csv" => Format::Csv,
                    other => return Err(Error::Parse(format!("format must be json or csv, got {other:?}"))),
                }
            }
            "workers" => {
                let w: usize = value.trim().parse().map_err(|_| Error::Parse(format!("workers expects a count, got {value:?}")))?;
                if w == 0 {
                    return Err(Error::invalid("workers must be at least 1"));
                }
                self.workers = Some(w);
            }
            _ => {
                let param = self
                    .spec()
                    .params
                    .iter()
                    .find(|p| p.key == key)
                    .ok_or_else(|| Error::invalid(format!("unknown key {key:?} for {}", self.subcommand)))?;
                check_value(param, value)?;
                self.parameters.insert(key.to_string(), value.to_string());
            }
        }
        Ok(())
    }

    /// Applies a line-oriented `key = value` file; `#` starts a comment.
    pub fn apply_config_text(&mut self, text: &str) -> Result<()> {
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("config line {}: expected key = value", no + 1)))?;
            let v = v.trim();
            let v = v.strip_prefix('"').and_then(|x| x.strip_suffix('"')).unwrap_or(v);
            self.set(k.trim(), v)?;
        }
        Ok(())
    }

    pub(crate) fn opt_text(&self, key: &str) -> Option<String> {
        self.parameters.get(key).cloned()
    }

    pub(crate) fn text(&self, key: &str) -> Result<String> {
        self.opt_text(key).ok_or_else(|| Error::invalid(format!("missing required parameter --{key}")))
    }

    pub(crate) fn i64(&self, key: &str) -> Result<i64> {
        self.text(key)?.trim().parse().map_err(|_| Error::Parse(format!("{key} must be an integer")))
    }

    pub(crate) fn u64(&self, key: &str) -> Result<u64> {
        u64::try_from(self.i64(key)?).map_err(|_| Error::invalid(format!("{key} must be non-negative")))
    }

    pub(crate) fn opt_u64(&self, key: &str) -> Result<Option<u64>> {
        if self.parameters.contains_key(key) { self.u64(key).map(Some) } else { Ok(None) }
    }

    pub(crate) fn usize(&self, key: &str) -> Result<usize> {
        usize::try_from(self.u64(key)?).map_err(|_| Error::invalid(format!("{key} is too large")))
    }

    pub(crate) fn rational(&self, key: &str) -> Result<Rational> {
        parse_rational(&self.text(key)?)
    }

    pub(crate) fn opt_rational(&self, key: &str) -> Result<Option<Rational>> {
        self.opt_text(key).map(|t| parse_rational(&t)).transpose()
    }

    pub(crate) fn real(&self, key: &str) -> Result<f64> {
        parse_real(&self.text(key)?)
    }

    pub(crate) fn opt_real(&self, key: &str) -> Result<Option<f64>> {
        self.opt_text(key).map(|t| parse_real(&t)).transpose()
    }
}

/// A finished run: the rendered report and the exit code it maps to.
pub struct Rendered {
    pub body: String,
    pub code: i32,
    pub message: Option<String>,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Invalid(_) | Error::Parse(_) | Error::Quadrature { .. } => 2,
        Error::Budget { .. } => 3,
        Error::Soundness(_) => 4,
        Error::Io(_) | Error::Json(_) | Error::Csv(_) => 1,
    }
}

/// Runs `cfg` and renders the report in the configured format.
pub fn run(cfg: &RunConfig) -> Result<Rendered> {
    let started = Instant::now();
    if cfg.subcommand == "sweep" {
        let csv = sweep(cfg)?;
        return Ok(Rendered { body: csv, code: 0, message: None });
    }
    let out = run_command(cfg)?;
    let code = if out.violation.is_some() { 4 } else { 0 };
    let body = match cfg.format {
        Format::Csv => out
            .csv
            .ok_or_else(|| Error::invalid(format!("{} has no CSV form; use --format json", cfg.subcommand)))?,
        Format::Json => {
            let mut report = json!({
                "schema_version": SCHEMA_VERSION,
                "version": env!("CARGO_PKG_VERSION"),
                "subcommand": cfg.subcommand,
                "inputs": cfg.parameters,
                "seed": cfg.master_seed,
                "results": out.results,
            });
            if let Some(v) = &out.violation {
                report["violation"] = Value::String(v.clone());
            }
            if cfg.timing {
                report["wall_clock"] = json!(started.elapsed().as_secs_f64());
            }
            let mut s = serde_json::to_string_pretty(&report)?;
            s.push('\n');
            s
        }
    };
    Ok(Rendered { body, code, message: out.violation })
}

/// Grid axes `key=v1,v2;key2=a..b:step`, first key slowest.
fn parse_grid(text: &str) -> Result<Vec<(String, Vec<String>)>> {
    text.split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|axis| {
            let (k, v) = axis.split_once('=').ok_or_else(|| Error::Parse(format!("grid axis {axis:?} needs key=values")))?;
            let values: Vec<String> = if v.contains("..") {
                parse_int_list(v)?.into_iter().map(|x| x.to_string()).collect()
            } else {
                v.split(',').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect()
            };
            Ok((k.trim().to_string(), values))
        })
        .collect()
}

/// One CSV row per grid cell; a failing cell is flagged and the sweep goes on.
pub fn sweep(cfg: &RunConfig) -> Result<String> {
    let target = cfg.text("command")?;
    if target == "sweep" || command(&target).is_none() {
        return Err(Error::invalid(format!("cannot sweep over {target:?}")));
    }
    let axes = parse_grid(&cfg.text("grid")?)?;
    let cells: usize = if axes.is_empty() { 0 } else { axes.iter().map(|(_, v)| v.len()).product() };
    if cells > MAX_SWEEP_CELLS {
        return Err(Error::budget("sweep cells", cells, MAX_SWEEP_CELLS));
    }
    let mut base = RunConfig::new(&target)?;
    base.master_seed = cfg.master_seed;
    for item in cfg.text("set")?.split(';').map(str::trim).filter(|t| !t.is_empty()) {
        let (k, v) = item.split_once('=').ok_or_else(|| Error::Parse(format!("set item {item:?} needs key=value")))?;
        base.set(k.trim(), v.trim())?;
    }
    for (k, _) in &axes {
        if !base.spec().params.iter().any(|p| p.key == k) {
            return Err(Error::invalid(format!("unknown grid key {k:?} for {target}")));
        }
    }
    let mut header: Vec<String> = vec!["cell".into()];
    header.extend(axes.iter().map(|(k, _)| k.clone()));
    header.extend(["status".into(), "result".into()]);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header)?;
    for cell in 0..cells {
        let mut rest = cell;
        let mut values = vec![String::new(); axes.len()];
        for (i, (_, v)) in axes.iter().enumerate().rev() {
            values[i] = v[rest % v.len()].clone();
            rest /= v.len();
        }
        let mut c = base.clone();
        let outcome = axes
            .iter()
            .zip(&values)
            .try_for_each(|((k, _), v)| c.set(k, v))
            .and_then(|_| run_command(&c));
        let (status, result) = match outcome {
            Ok(out) => (
                if out.violation.is_some() { "violation".to_string() } else { "ok".to_string() },
                serde_json::to_string(&out.results)?,
            ),
            Err(e) => (format!("error({})", exit_code(&e)), e.to_string()),
        };
        let mut row = vec![cell.to_string()];
        row.extend(values);
        row.push(status);
        row.push(result);
        w.write_record(&row)?;
    }
    w.flush()?;
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub fn build_cli() -> Command {
    let version: &'static str = Box::leak(format!("{} (report schema {SCHEMA_VERSION})", env!("CARGO_PKG_VERSION")).into_boxed_str());
    let mut cli = Command::new("smallball")
        .about("Exact small-ball probabilities, their bounds, and related experiments")
        .version(version)
        .subcommand_required(true)
        .arg_required_else_help(true)
        .arg(Arg::new("config").long("config").global(true).value_name("PATH").help("key = value file applied under the flags"))
        .arg(Arg::new("seed").long("seed").global(true).value_name("U64").help("master seed (default 0)"))
        .arg(Arg::new("output").long("output").short('o').global(true).value_name("PATH").help("write the report here instead of stdout"))
        .arg(Arg::new("format").long("format").global(true).value_parser(["json", "csv"]).help("report format (default json)"))
        .arg(Arg::new("workers").long("workers").global(true).value_name("N").help(format!("worker threads (default ${WORKERS_ENV} or all cores)")))
        .arg(Arg::new("timing").long("timing").global(true).action(ArgAction::SetTrue).help("add wall-clock seconds to the report"));
    for spec in COMMANDS {
        let mut sub = Command::new(spec.name).about(spec.about);
        for p in spec.params {
            let mut help = p.help.to_string();
            if let Some(d) = p.default {
                help.push_str(&format!(" [default: {d:?}]"));
            }
            sub = sub.arg(Arg::new(p.key).long(p.key).value_name("VALUE").allow_hyphen_values(true).help(help));
        }
        cli = cli.subcommand(sub);
    }
    cli
}

fn explicit<'a>(m: &'a ArgMatches, key: &str) -> Option<&'a String> {
    match m.value_source(key) {
        Some(ValueSource::CommandLine) => m.get_one::<String>(key),
        _ => None,
    }
}

/// Resolves flags, config file and defaults into a configuration.
pub fn config_from_matches(m: &ArgMatches) -> Result<RunConfig> {
    let (name, sub) = m.subcommand().ok_or_else(|| Error::invalid("no subcommand given"))?;
    let mut cfg = RunConfig::new(name)?;
    if let Some(path) = sub.get_one::<String>("config").or_else(|| m.get_one::<String>("config")) {
        cfg.apply_config_text(&std::fs::read_to_string(path)?)?;
    }
    for key in GLOBAL_KEYS {
        if let Some(v) = explicit(sub, key).or_else(|| explicit(m, key)) {
            cfg.set(key, v)?;
        }
    }
    if sub.get_flag("timing") {
        cfg.timing = true;
    }
    for p in cfg.spec().params {
        if let Some(v) = explicit(sub, p.key) {
            cfg.set(p.key, v)?;
        }
    }
    Ok(cfg)
}

fn configure_workers(cfg: &RunConfig) {
    let n = cfg
        .workers
        .or_else(|| std::env::var(WORKERS_ENV).ok().and_then(|v| v.parse().ok()).filter(|w| *w > 0));
    if let Some(n) = n {
        // a pool built earlier in the process stays in place
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

/// Full CLI entry point; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let matches = match build_cli().try_get_matches_from(args) {
        Ok(m) => m,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let cfg = match config_from_matches(&matches) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    configure_workers(&cfg);
    let rendered = match run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let written = match &cfg.output_path {
        Some(path) => std::fs::write(path, &rendered.body),
        None => std::io::stdout().write_all(rendered.body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return 1;
    }
    if let Some(m) = &rendered.message {
        eprintln!("soundness check failed: {m}");
    }
    rendered.code
}
