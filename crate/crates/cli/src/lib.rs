//! `toricnl`: command-line frontend for the `toric-nl` library.
//!
//! Every report is a JSON envelope `{schema_version, run_config, report}`
//! (or its markdown rendering); re-running the embedded [`RunConfig`] with
//! `toricnl replay` reproduces the report byte for byte.

pub mod expr;
mod render;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;
use toric_nl::catalog::{catalog, list, CatalogVariety};
use toric_nl::cohomology::CohomologyCache;
use toric_nl::detcurve::{check_avoidance, curve_invariants, determinantal_check, preset_parameters, Preset};
use toric_nl::nl::{annotate, Checker};
use toric_nl::toric::{Fan, ToricThreefold, WeilDivisor};
use toric_nl::wps::{scan, Family};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_SEED: u64 = 20240917;
pub const DEFAULT_PRIME: u64 = 10007;
pub const DEFAULT_TRIALS: usize = 20;
pub const CACHE_ENV: &str = "TORICNL_CACHE_DIR";

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] toric_nl::Error),
    #[error("{0}")]
    Input(String),
    #[error("I/O error on {path}: {message}")]
    Io { path: String, message: String },
}

impl CliError {
    /// Stable machine-readable error code.
    pub fn code(&self) -> String {
        match self {
            CliError::Core(e) => {
                let debug = format!("{e:?}");
                debug.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Core").to_string()
            }
            CliError::Input(_) => "Input".into(),
            CliError::Io { .. } => "Io".into(),
        }
    }

    pub fn diagnostic(&self) -> String {
        json!({"schema_version": SCHEMA_VERSION, "error": {"code": self.code(), "message": self.to_string()}})
            .to_string()
    }
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Markdown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    Theorem1,
    Theorem3,
    Corollary4,
    Regularity,
    CodimBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PresetArg {
    Theorem1,
    Theorem3,
}

impl From<PresetArg> for Preset {
    fn from(p: PresetArg) -> Self {
        match p {
            PresetArg::Theorem1 => Preset::Theorem1,
            PresetArg::Theorem3 => Preset::Theorem3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "toricnl", version, about = "Cohomology and Noether-Lefschetz hypothesis checks on toric threefolds")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Cohomology cache directory (default: platform config dir).
    #[arg(long, global = true, env = CACHE_ENV)]
    pub cache_dir: Option<PathBuf>,
    /// Disable the on-disk cohomology cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sheaf cohomology of one divisor.
    Cohomology(CohomologyArgs),
    /// Run one of the hypothesis checks.
    Check(CheckArgs),
    /// Classify well-formed weight tuples with delta < sigma (JSON lines).
    Scan {
        #[arg(long)]
        max_weight: i64,
    },
    /// Determinantal curves: invariants and singular-locus avoidance.
    Detcurve(DetcurveArgs),
    /// Built-in varieties.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Re-run the configuration embedded in a saved report.
    Replay { report: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    List,
}

#[derive(Debug, Args)]
pub struct CohomologyArgs {
    /// Catalog name, `wps:a,b,c,d`, or path to a fan JSON file.
    #[arg(long)]
    pub variety: String,
    /// Ray coefficients, e.g. `-4,0,0,0`.
    #[arg(
        long,
        allow_hyphen_values = true,
        conflicts_with = "divisor_class",
        required_unless_present = "divisor_class"
    )]
    pub divisor: Option<String>,
    /// Combination of named classes, e.g. `-K-2H`.
    #[arg(long, allow_hyphen_values = true)]
    pub divisor_class: Option<String>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(value_enum)]
    pub kind: CheckKind,
    #[arg(long)]
    pub variety: String,
    /// Basis coordinates (e.g. `1,1`) or a class expression; defaults to the catalog's H.
    #[arg(long = "H", allow_hyphen_values = true)]
    pub h: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub d: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<i64>,
    /// Class expression for `codim-bound`.
    #[arg(long = "L", allow_hyphen_values = true)]
    pub l: Option<String>,
}

#[derive(Debug, Args)]
pub struct DetcurveArgs {
    #[arg(long)]
    pub variety: String,
    #[arg(long = "H", allow_hyphen_values = true)]
    pub h: Option<String>,
    /// Derive `k` and `L` from `d`.
    #[arg(long, value_enum, requires = "d", conflicts_with = "k")]
    pub preset: Option<PresetArg>,
    #[arg(long, allow_hyphen_values = true)]
    pub d: Option<i64>,
    #[arg(long, allow_hyphen_values = true, required_unless_present = "preset")]
    pub k: Option<i64>,
    /// Class expression for the determinantal hypothesis battery; optional with `--k`.
    #[arg(long = "L", allow_hyphen_values = true)]
    pub l: Option<String>,
    #[arg(long, default_value_t = DEFAULT_PRIME)]
    pub p: u64,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    pub trials: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

/// Divisor as typed by the user.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DivisorSpec {
    Coefficients(Vec<i64>),
    Expression(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum CommandConfig {
    Cohomology { divisor: DivisorSpec },
    Check { kind: CheckKind, h: Option<String>, d: Option<i64>, m: Option<i64>, l: Option<String> },
    Scan { max_weight: i64 },
    Detcurve { h: Option<String>, preset: Option<Preset>, d: Option<i64>, k: Option<i64>, l: Option<String> },
    CatalogList,
}

/// Everything needed to reproduce a run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub variety: Option<String>,
    pub command: CommandConfig,
    pub format: Format,
    pub cache_dir: Option<PathBuf>,
    pub seed: u64,
    pub prime: u64,
    pub trials: usize,
}

/// Rendered output and whether every check passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub pass: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }
}

fn default_cache_dir() -> Option<PathBuf> {
    dirs::config_dir().map(|d| d.join("toricnl"))
}

fn variety_spec(spec: &str) -> Result<String> {
    let path = Path::new(spec);
    if catalog(spec).is_err() && path.exists() {
        let abs = path.canonicalize().map_err(|e| CliError::Io { path: spec.into(), message: e.to_string() })?;
        return Ok(abs.to_string_lossy().into_owned());
    }
    Ok(spec.to_string())
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Option<RunConfig>> {
        let cache_dir = if cli.no_cache { None } else { cli.cache_dir.clone().or_else(default_cache_dir) };
        let mut cfg = RunConfig {
            variety: None,
            command: CommandConfig::CatalogList,
            format: cli.format,
            cache_dir,
            seed: DEFAULT_SEED,
            prime: DEFAULT_PRIME,
            trials: DEFAULT_TRIALS,
        };
        match &cli.command {
            Command::Replay { .. } => return Ok(None),
            Command::Catalog { action: CatalogAction::List } => cfg.cache_dir = None,
            Command::Scan { max_weight } => {
                cfg.cache_dir = None;
                cfg.command = CommandConfig::Scan { max_weight: *max_weight };
            }
            Command::Cohomology(a) => {
                cfg.variety = Some(variety_spec(&a.variety)?);
                let divisor = match (&a.divisor, &a.divisor_class) {
                    (Some(c), _) => DivisorSpec::Coefficients(
                        expr::parse_ints(c)
                            .ok_or_else(|| CliError::Input(format!("--divisor expects integers, got {c:?}")))?,
                    ),
                    (None, Some(e)) => DivisorSpec::Expression(e.clone()),
                    (None, None) => return Err(CliError::Input("--divisor or --divisor-class is required".into())),
                };
                cfg.command = CommandConfig::Cohomology { divisor };
            }
            Command::Check(a) => {
                cfg.variety = Some(variety_spec(&a.variety)?);
                cfg.command = CommandConfig::Check { kind: a.kind, h: a.h.clone(), d: a.d, m: a.m, l: a.l.clone() };
            }
            Command::Detcurve(a) => {
                cfg.variety = Some(variety_spec(&a.variety)?);
                cfg.seed = a.seed;
                cfg.prime = a.p;
                cfg.trials = a.trials;
                cfg.command = CommandConfig::Detcurve {
                    h: a.h.clone(),
                    preset: a.preset.map(Preset::from),
                    d: a.d,
                    k: a.k,
                    l: a.l.clone(),
                };
            }
        }
        Ok(Some(cfg))
    }
}

/// A catalog entry, or a bare fan read from JSON (only `K` and `D<i>` named).
struct Resolved {
    entry: CatalogVariety,
    from_catalog: bool,
}

fn resolve_variety(spec: &str) -> Result<Resolved> {
    match catalog(spec) {
        Ok(entry) => return Ok(Resolved { entry, from_catalog: true }),
        Err(toric_nl::Error::UnknownVariety(_)) if !spec.starts_with("wps:") && Path::new(spec).exists() => {}
        Err(e) => return Err(e.into()),
    }
    let text = std::fs::read_to_string(spec).map_err(|e| CliError::Io { path: spec.into(), message: e.to_string() })?;
    let fan = Fan::from_json(&text).map_err(|e| CliError::Input(format!("fan JSON {spec}: {e}")))?;
    let variety = ToricThreefold::new(fan)?;
    let mut named = BTreeMap::new();
    named.insert("K".to_string(), variety.canonical_divisor());
    let entry = CatalogVariety {
        name: spec.to_string(),
        variety,
        named,
        basis: Vec::new(),
        default_h: "H".into(),
        expectations: Vec::new(),
    };
    Ok(Resolved { entry, from_catalog: false })
}

impl Resolved {
    fn expression(&self, text: &str) -> Result<WeilDivisor> {
        expr::parse_expression(text, &self.entry.named, self.entry.variety.ray_count()).map_err(CliError::Input)
    }

    /// `--H`: basis coordinates when all entries are integers, else an expression.
    fn h(&self, spec: Option<&str>) -> Result<WeilDivisor> {
        match spec {
            None => self
                .entry
                .get(&self.entry.default_h)
                .cloned()
                .ok_or_else(|| CliError::Input(format!("{} has no default H; pass --H", self.entry.name))),
            Some(s) => match expr::parse_ints(s) {
                Some(coords) if self.entry.basis.is_empty() => Ok(self.entry.variety.divisor(&coords)?),
                Some(coords) => Ok(self.entry.from_basis_coords(&coords)?),
                None => self.expression(s),
            },
        }
    }
}

fn open_cache(cfg: &RunConfig) -> Result<Option<CohomologyCache>> {
    cfg.cache_dir.as_deref().map(CohomologyCache::open).transpose().map_err(CliError::from)
}

fn checker<'a>(x: &'a ToricThreefold, cache: &'a Option<CohomologyCache>) -> Checker<'a> {
    match cache {
        Some(c) => Checker::with_cache(x, c),
        None => Checker::new(x),
    }
}

fn require<T>(v: Option<T>, flag: &str, kind: &str) -> Result<T> {
    v.ok_or_else(|| CliError::Input(format!("{kind} requires {flag}")))
}

/// Execute a configuration and render its report.
pub fn execute(cfg: &RunConfig) -> Result<Outcome> {
    let (report, pass) = match &cfg.command {
        CommandConfig::CatalogList => (catalog_list()?, true),
        CommandConfig::Scan { max_weight } => return run_scan(cfg, *max_weight),
        CommandConfig::Cohomology { divisor } => run_cohomology(cfg, divisor)?,
        CommandConfig::Check { kind, h, d, m, l } => run_check(cfg, *kind, h.as_deref(), *d, *m, l.as_deref())?,
        CommandConfig::Detcurve { h, preset, d, k, l } => {
            run_detcurve(cfg, h.as_deref(), *preset, *d, *k, l.as_deref())?
        }
    };
    let stdout = match cfg.format {
        Format::Json => {
            let env = json!({"schema_version": SCHEMA_VERSION, "run_config": cfg, "report": report});
            serde_json::to_string_pretty(&env).expect("serializable") + "\n"
        }
        Format::Markdown => render::markdown(cfg, &report),
    };
    Ok(Outcome { stdout, pass })
}

fn variety_of(cfg: &RunConfig) -> Result<Resolved> {
    resolve_variety(cfg.variety.as_deref().ok_or_else(|| CliError::Input("missing --variety".into()))?)
}

fn catalog_list() -> Result<Value> {
    let mut entries = Vec::new();
    for name in list() {
        let c = catalog(&name)?;
        entries.push(json!({
            "name": c.name,
            "rays": c.variety.ray_count(),
            "class_group_rank": c.variety.class_group_rank(),
            "named": c.named.keys().collect::<Vec<_>>(),
            "basis": c.basis,
            "default_h": c.default_h,
        }));
    }
    Ok(json!({"kind": "catalog", "varieties": entries}))
}

fn run_cohomology(cfg: &RunConfig, spec: &DivisorSpec) -> Result<(Value, bool)> {
    let v = variety_of(cfg)?;
    let d = match spec {
        DivisorSpec::Coefficients(c) => v.entry.variety.divisor(c)?,
        DivisorSpec::Expression(e) => v.expression(e)?,
    };
    let cache = open_cache(cfg)?;
    let table = checker(&v.entry.variety, &cache).table(&d)?;
    Ok((
        json!({"kind": "cohomology", "variety": v.entry.name, "divisor": d.coeffs, "h": table.h, "chi": table.chi}),
        true,
    ))
}

fn run_check(
    cfg: &RunConfig,
    kind: CheckKind,
    h: Option<&str>,
    d: Option<i64>,
    m: Option<i64>,
    l: Option<&str>,
) -> Result<(Value, bool)> {
    let v = variety_of(cfg)?;
    let cache = open_cache(cfg)?;
    let chk = checker(&v.entry.variety, &cache);
    let (divisor, mut report, extra) = match kind {
        CheckKind::CodimBound => {
            let l = v.expression(require(l, "--L", "codim-bound")?)?;
            let (bound, r) = chk.codim_upper_bound(&l)?;
            (l, r, json!({"upper_bound": bound}))
        }
        _ => {
            let hd = v.h(h)?;
            let r = match kind {
                CheckKind::Theorem1 => chk.theorem1(&hd, require(d, "--d", "theorem1")?)?,
                CheckKind::Theorem3 => chk.theorem3(&hd, require(d, "--d", "theorem3")?)?,
                CheckKind::Corollary4 => chk.corollary4(&hd, require(d, "--d", "corollary4")?)?,
                _ => chk.is_m_regular(&hd, require(m, "--m", "regularity")?)?,
            };
            (hd, r, Value::Null)
        }
    };
    if v.from_catalog && kind != CheckKind::CodimBound {
        annotate(&mut report, &v.entry, &divisor)?;
    }
    let pass = report.all_pass();
    let mut out = json!({"kind": "check", "variety": v.entry.name, "divisor": divisor.coeffs, "hypotheses": report});
    if let Value::Object(extra) = extra {
        out.as_object_mut().expect("object").extend(extra);
    }
    Ok((out, pass))
}

fn run_detcurve(
    cfg: &RunConfig,
    h: Option<&str>,
    preset: Option<Preset>,
    d: Option<i64>,
    k: Option<i64>,
    l: Option<&str>,
) -> Result<(Value, bool)> {
    if let Some(k) = k.filter(|&k| k < 2) {
        return Err(toric_nl::Error::KTooSmall(k).into());
    }
    let v = variety_of(cfg)?;
    let x = &v.entry.variety;
    let hd = v.h(h)?;
    let (k, l) = match (preset, k) {
        (Some(p), _) => {
            let (k, l) = preset_parameters(p, x, &hd, require(d, "--d", "--preset")?)?;
            (k, Some(l))
        }
        (None, Some(k)) => (k as usize, l.map(|e| v.expression(e)).transpose()?),
        (None, None) => return Err(CliError::Input("detcurve requires --k or --preset".into())),
    };
    let cache = open_cache(cfg)?;
    let chk = checker(x, &cache);
    let avoidance = check_avoidance(x, &hd, k, cfg.prime, cfg.trials, cfg.seed)?;
    let invariants = curve_invariants(&chk, &hd, k)?;
    let battery = l.as_ref().map(|l| determinantal_check(&chk, l, &hd, k)).transpose()?;
    let pass = avoidance.pass && battery.as_ref().is_none_or(|b| b.all_pass());
    Ok((
        json!({
            "kind": "detcurve",
            "variety": v.entry.name,
            "divisor": hd.coeffs,
            "k": k,
            "L": l.map(|l| l.coeffs),
            "invariants": invariants,
            "avoidance": avoidance,
            "hypotheses": battery,
        }),
        pass,
    ))
}

fn run_scan(cfg: &RunConfig, max_weight: i64) -> Result<Outcome> {
    let entries = scan(max_weight)?;
    let unexpected = entries.iter().filter(|e| e.family == Family::Unexpected).count();
    let mut by_family: BTreeMap<String, usize> = BTreeMap::new();
    for e in &entries {
        *by_family.entry(e.family.to_string()).or_default() += 1;
    }
    let summary = json!({"summary": {"max_weight": max_weight, "total": entries.len(), "unexpected": unexpected, "by_family": by_family}});
    let stdout = match cfg.format {
        Format::Json => {
            let mut out = json!({"schema_version": SCHEMA_VERSION, "run_config": cfg}).to_string() + "\n";
            for e in &entries {
                out += &(serde_json::to_string(e).expect("serializable") + "\n");
            }
            out + &summary.to_string() + "\n"
        }
        Format::Markdown => render::scan_markdown(cfg, &entries, &summary),
    };
    Ok(Outcome { stdout, pass: unexpected == 0 })
}

/// Read the run configuration embedded in a saved report (JSON envelope,
/// JSON-lines header, or the fenced block of a markdown report).
pub fn embedded_config(text: &str) -> Result<RunConfig> {
    let candidates = [
        serde_json::from_str::<Value>(text).ok(),
        text.lines().next().and_then(|l| serde_json::from_str::<Value>(l).ok()),
        render::fenced_config(text).and_then(|b| serde_json::from_str::<Value>(&b).ok()),
    ];
    for v in candidates.into_iter().flatten() {
        let cfg = v.get("run_config").cloned().unwrap_or(v);
        if let Ok(cfg) = serde_json::from_value::<RunConfig>(cfg) {
            return Ok(cfg);
        }
    }
    Err(CliError::Input("no embedded run_config found".into()))
}

/// Parse-independent entry point used by `main`.
pub fn run(cli: Cli) -> Result<Outcome> {
    if let Command::Replay { report } = &cli.command {
        let text = std::fs::read_to_string(report)
            .map_err(|e| CliError::Io { path: report.display().to_string(), message: e.to_string() })?;
        return execute(&embedded_config(&text)?);
    }
    let cfg = RunConfig::from_cli(&cli)?.expect("non-replay command");
    execute(&cfg)
}
