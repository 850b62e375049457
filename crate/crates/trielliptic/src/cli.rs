//! Command-line entry point.
//!
//! Exit codes: 0 success, 1 verification failure or budget exhausted, 2 usage or input error.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::census::{build_sigma, census, classify_source, CensusError, CensusOptions};
use crate::geometry::{analyze, verify_family, GeomError};
use crate::git::{catalog_entry, classify_nonstable, dimension_table, enumerate_maximal_families, GitError, Sign};
use crate::lattice::catalog::{builtin_entries, catalog_in, load_entries, CatalogEntry};
use crate::lattice::eichler::eichler_orbit_check;
use crate::lattice::embed::Limits;
use crate::lattice::normal_form::isotropic_normal_form;
use crate::lattice::{root_system, roots, theta_counts, IntegralLattice, LatticeError};
use crate::linalg::Rat;
use crate::poly::{parse_rat, BiForm};
use crate::qform::{builtin_forms, form_named, gauss_sum, isotropic_census, load_forms, picard_rank, FiniteQuadraticForm, FormEntry, QformError};
use crate::report::{assemble, catalog_checksums, emit, RunManifest};
use crate::verify::{is_budget_error, verify_all, Status, VerifyError, VerifyOptions, DEFAULT_SEED};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "trielliptic", version, about = "Exact GIT, lattice and boundary computations for (2,3) surfaces")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Default)]
pub struct GlobalArgs {
    /// Cap on worker threads.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Wall-clock budget for embedding searches; exceeding it gives an inconclusive report.
    #[arg(long, global = true)]
    pub budget_seconds: Option<f64>,
    /// TOML config file with keys mirroring the long flag names.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Catalog directory (niemeier.json, forms.json). Also TRIELLIPTIC_CATALOG.
    #[arg(long, global = true)]
    pub catalog: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Omit wall-clock fields so equal manifests give byte-identical reports.
    #[arg(long, global = true)]
    pub no_timing: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Hilbert-Mumford combinatorics.
    #[command(subcommand)]
    Git(GitCmd),
    /// Polynomial geometry on P1 x P2.
    #[command(subcommand)]
    Geom(GeomCmd),
    /// Finite quadratic forms.
    #[command(subcommand)]
    Qf(QfCmd),
    /// Integral lattices.
    #[command(subcommand)]
    Lat(LatCmd),
    /// Baily-Borel boundary census for T_n.
    Census {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        n: u8,
        /// Search every catalog Niemeier lattice, not only the designated targets.
        #[arg(long)]
        all_targets: bool,
    },
    /// Acceptance suite.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SignArg {
    Nonpositive,
    Negative,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum GitCmd {
    Families {
        #[arg(long, value_enum)]
        sign: SignArg,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    Classify {
        #[arg(long)]
        poly: PathBuf,
    },
    StrataDims,
}

#[derive(Subcommand, Debug)]
pub enum GeomCmd {
    VerifyFamily {
        #[arg(long)]
        label: String,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    Analyze {
        #[arg(long)]
        poly: PathBuf,
        /// Comma-separated rationals x0,x1,y0,y1,y2.
        #[arg(long)]
        point: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum QfCmd {
    Picard {
        #[arg(long)]
        lattice: String,
    },
    Gauss {
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long)]
        lattice: String,
    },
    Census {
        #[arg(long)]
        lattice: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum LatCmd {
    Roots {
        #[arg(long)]
        name: String,
    },
    Complement {
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
    },
    Eichler {
        #[arg(long, value_parser = clap::value_parser!(u64).range(4..=16))]
        n: u64,
    },
    NormalForm {
        #[arg(long)]
        lattice: String,
        /// File with two integer vectors (one per line) spanning the isotropic plane.
        #[arg(long)]
        j: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    All {
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        samples: Option<usize>,
    },
}

#[derive(Debug, Default, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct Config {
    pub jobs: Option<usize>,
    pub budget_seconds: Option<f64>,
    pub catalog: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub no_timing: Option<bool>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Config, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Compute(String),
    #[error("search budget exhausted: {0}")]
    Budget(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_USAGE,
            CliError::Compute(_) | CliError::Budget(_) => EXIT_FAILED,
        }
    }
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        match e {
            LatticeError::Inconclusive(_) => CliError::Budget(e.to_string()),
            LatticeError::UnknownName(_) => CliError::Input(e.to_string()),
            _ => CliError::Compute(e.to_string()),
        }
    }
}

impl From<CensusError> for CliError {
    fn from(e: CensusError) -> Self {
        match e {
            CensusError::Lattice(l) => l.into(),
            CensusError::BadN(_) => CliError::Input(e.to_string()),
            _ => CliError::Compute(e.to_string()),
        }
    }
}

impl From<GitError> for CliError {
    fn from(e: GitError) -> Self {
        match e {
            GitError::UnknownLabel(_) | GitError::ZeroForm => CliError::Input(e.to_string()),
            _ => CliError::Compute(e.to_string()),
        }
    }
}

impl From<GeomError> for CliError {
    fn from(e: GeomError) -> Self {
        match e {
            GeomError::UnknownLabel(_) | GeomError::BadPoint(_) | GeomError::NotOnSurface => CliError::Input(e.to_string()),
            _ => CliError::Compute(e.to_string()),
        }
    }
}

impl From<QformError> for CliError {
    fn from(e: QformError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        if is_budget_error(&e) {
            CliError::Budget(e.to_string())
        } else {
            CliError::Compute(e.to_string())
        }
    }
}

/// Resolved settings: flags, then TRIELLIPTIC_CATALOG (catalog only), then the config file.
pub struct Context {
    pub catalog_dir: Option<PathBuf>,
    pub entries: Vec<CatalogEntry>,
    pub forms: Vec<FormEntry>,
    pub limits: Limits,
    pub config: Config,
    pub manifest: RunManifest,
}

impl Context {
    fn census_options(&self) -> CensusOptions {
        CensusOptions { limits: self.limits, entries: self.entries.clone(), ..CensusOptions::default() }
    }

    fn form(&self, name: &str) -> Result<FiniteQuadraticForm, CliError> {
        if let Some(f) = form_named(name, &self.forms) {
            return Ok(f?);
        }
        Ok(self.lattice(name)?.discriminant_form()?)
    }

    fn lattice(&self, name: &str) -> Result<IntegralLattice, CliError> {
        if let Some(n) = name.strip_prefix("Sigma").and_then(|k| k.parse::<u8>().ok()) {
            return Ok(build_sigma(n)?);
        }
        Ok(catalog_in(name, &self.entries)?)
    }
}

enum Outcome {
    Ok,
    /// JSON pointers into the report where the evidence sits.
    Failed(Vec<String>),
}

fn read_text(p: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))
}

fn read_form(p: &Path) -> Result<BiForm, CliError> {
    BiForm::parse(&read_text(p)?).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))
}

fn parse_point(s: &str) -> Result<[Rat; 5], CliError> {
    let parts: Vec<Rat> = s
        .split(',')
        .map(|t| parse_rat(t.trim()).ok_or_else(|| CliError::Input(format!("bad coordinate {t:?}"))))
        .collect::<Result<_, _>>()?;
    parts.try_into().map_err(|_| CliError::Input(format!("point needs 5 coordinates: {s}")))
}

fn parse_vectors(text: &str) -> Result<Vec<Vec<BigInt>>, CliError> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            l.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<BigInt>().map_err(|_| CliError::Input(format!("bad integer {t:?}"))))
                .collect()
        })
        .collect()
}

fn sign_of(s: SignArg) -> Sign {
    match s {
        SignArg::Nonpositive => Sign::Nonpositive,
        SignArg::Negative => Sign::Negative,
    }
}

fn families_table(sign: Sign) -> Result<String, CliError> {
    let fams = enumerate_maximal_families(sign)?;
    let mut out = format!("{:<6} {:<14} {:<14} maximal monomials\n", "label", "table λ", "witness λ");
    for f in fams {
        let e = catalog_entry(&f.label)?;
        let lam = e.lambda.map_or("-".into(), |l| l.to_string());
        let maxi: Vec<String> = f.maximal_monomials.iter().map(|m| m.to_string()).collect();
        out.push_str(&format!("{:<6} {:<14} {:<14} {}\n", f.label, lam, f.witness_lambda.to_string(), maxi.join(", ")));
    }
    Ok(out)
}

fn git_cmd(cmd: &GitCmd) -> Result<(Value, Outcome), CliError> {
    match cmd {
        GitCmd::Families { sign, .. } => {
            let sign = sign_of(*sign);
            let fams = enumerate_maximal_families(sign)?;
            let rows: Vec<Value> = fams
                .iter()
                .map(|f| {
                    let e = catalog_entry(&f.label).ok();
                    json!({
                        "label": f.label,
                        "tableLambda": e.and_then(|e| e.lambda).map(|l| l.as_vec()),
                        "witnessLambda": f.witness_lambda.as_vec(),
                        "maximalMonomials": f.maximal_monomials.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
                        "monomials": f.full_set.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            Ok((json!({"sign": format!("{sign:?}").to_lowercase(), "families": rows}), Outcome::Ok))
        }
        GitCmd::Classify { poly } => {
            let f = read_form(poly)?;
            let verdict = classify_nonstable(&f)?;
            Ok((json!({"form": f.to_text(), "classification": verdict}), Outcome::Ok))
        }
        GitCmd::StrataDims => Ok((json!({"rows": dimension_table()?}), Outcome::Ok)),
    }
}

fn geom_cmd(cmd: &GeomCmd, ctx: &mut Context) -> Result<(Value, Outcome), CliError> {
    match cmd {
        GeomCmd::VerifyFamily { label, samples, seed } => {
            let seed = seed.or(ctx.config.seed).unwrap_or(DEFAULT_SEED);
            let samples = samples.or(ctx.config.samples).unwrap_or(50);
            ctx.manifest.seed = Some(seed);
            ctx.manifest.bound("samples", samples);
            ctx.manifest.bound("coefficientBound", crate::geometry::COEFF_BOUND);
            let c = verify_family(label, samples, seed)?;
            let outcome = if c.all_passed() { Outcome::Ok } else { Outcome::Failed(vec!["/failures".into()]) };
            Ok((serde_json::to_value(&c).unwrap_or_default(), outcome))
        }
        GeomCmd::Analyze { poly, point } => {
            let f = read_form(poly)?;
            let p = point.as_deref().map(parse_point).transpose()?;
            let a = analyze(&f, p.as_ref())?;
            Ok((serde_json::to_value(&a).unwrap_or_default(), Outcome::Ok))
        }
    }
}

fn qf_cmd(cmd: &QfCmd, ctx: &mut Context) -> Result<(Value, Outcome), CliError> {
    match cmd {
        QfCmd::Picard { lattice } => {
            let f = ctx.form(lattice)?;
            let p = picard_rank(&f)?;
            Ok((json!({"lattice": lattice, "discForm": f.to_json(), "picard": p}), Outcome::Ok))
        }
        QfCmd::Gauss { m, lattice } => {
            let f = ctx.form(lattice)?;
            let g = gauss_sum(*m, &f);
            let (re, im) = g.eval();
            Ok((json!({"lattice": lattice, "m": m, "exact": g, "value": [re, im], "discForm": f.to_json()}), Outcome::Ok))
        }
        QfCmd::Census { lattice } => {
            let f = ctx.form(lattice)?;
            Ok((json!({"lattice": lattice, "discForm": f.to_json(), "isotropic": isotropic_census(&f)}), Outcome::Ok))
        }
    }
}

fn strip_m(name: &str) -> &str {
    let s = name.trim();
    s.strip_prefix("M(").and_then(|x| x.strip_suffix(')')).unwrap_or(s)
}

fn lat_cmd(cmd: &LatCmd, ctx: &mut Context) -> Result<(Value, Outcome), CliError> {
    match cmd {
        LatCmd::Roots { name } => {
            let lat = ctx.lattice(name)?;
            let rs = root_system(&lat)?;
            let body = json!({
                "name": lat.name,
                "rank": lat.rank(),
                "det": lat.det().to_string(),
                "rootSystem": rs.to_string(),
                "rootCount": roots(&lat)?.len(),
                "thetaCoeffs": theta_counts(&lat, 4)?,
            });
            Ok((body, Outcome::Ok))
        }
        LatCmd::Complement { source, target } => {
            let src = ctx.lattice(source)?;
            let opts = ctx.census_options();
            ctx.manifest.bound("maxNodes", opts.limits.max_nodes);
            let results = classify_source(&src, &[strip_m(target)], &opts)?;
            Ok((json!({"source": source, "results": results}), Outcome::Ok))
        }
        LatCmd::Eichler { n } => {
            let c = eichler_orbit_check(*n as usize);
            let outcome = if c.holds { Outcome::Ok } else { Outcome::Failed(vec!["/check".into()]) };
            Ok((json!({"check": c}), outcome))
        }
        LatCmd::NormalForm { lattice, j } => {
            let lat = ctx.lattice(lattice)?;
            let plane = parse_vectors(&read_text(j)?)?;
            if plane.len() != 2 || plane.iter().any(|v| v.len() != lat.rank()) {
                return Err(CliError::Input(format!("{}: need two vectors of length {}", j.display(), lat.rank())));
            }
            let nf = isotropic_normal_form(&lat, &plane)?;
            let b = nf.b_lattice("B")?;
            let body = json!({
                "lattice": lattice,
                "normalForm": nf,
                "bDiscForm": b.discriminant_form()?.to_json(),
                "bSignature": b.signature(),
            });
            Ok((body, Outcome::Ok))
        }
    }
}

fn census_cmd(n: u8, all_targets: bool, ctx: &mut Context) -> Result<(Value, Outcome), CliError> {
    let mut opts = ctx.census_options();
    opts.all_targets = all_targets;
    ctx.manifest.bound("maxNodes", opts.limits.max_nodes);
    ctx.manifest.bound("normalFormBound", opts.normal_form_bound);
    ctx.manifest.bound("allTargets", all_targets);
    let start = Instant::now();
    let c = census(n, &opts)?;
    let type_ii: Vec<Value> = c
        .type_ii
        .iter()
        .map(|t| {
            json!({
                "e": t.e,
                "target": t.target,
                "rootSystem": t.root_system.to_string(),
                "thetaCoeffs": t.invariants.theta,
                "discForm": t.disc,
                "inGenus": t.in_genus,
            })
        })
        .collect();
    let body = json!({
        "n": c.n,
        "typeII": type_ii,
        "typeIII": c.type_iii,
        "typeIIIDetail": c.type_iii_detail,
        "runtimeSec": start.elapsed().as_secs_f64(),
        "searchBounds": {
            "maxNodes": opts.limits.max_nodes,
            "budgetSeconds": ctx.manifest.budget_seconds,
            "normalFormBound": opts.normal_form_bound,
            "targets": c.per_target,
        },
        "curves": c.curves(),
        "matchesReference": c.matches_reference,
        "discrepancies": c.discrepancies,
        "normalFormChecks": c.normal_form_checks,
    });
    let outcome = if c.matches_reference { Outcome::Ok } else { Outcome::Failed(vec!["/discrepancies".into()]) };
    Ok((body, outcome))
}

fn verify_cmd(seed: Option<u64>, samples: Option<usize>, ctx: &mut Context) -> Result<(Value, Outcome), CliError> {
    let mut opts = VerifyOptions {
        seed: seed.or(ctx.config.seed).unwrap_or(DEFAULT_SEED),
        samples: samples.or(ctx.config.samples).unwrap_or(50),
        census: ctx.census_options(),
        ..VerifyOptions::default()
    };
    opts.census.entries = ctx.entries.clone();
    ctx.manifest.seed = Some(opts.seed);
    ctx.manifest.bound("samples", opts.samples);
    ctx.manifest.bound("gridBound", opts.grid_bound);
    ctx.manifest.bound("randomMatrices", opts.random_matrices);
    ctx.manifest.bound("lambdas", opts.lambdas);
    ctx.manifest.bound("maxNodes", opts.census.limits.max_nodes);
    let results = verify_all(&opts)?;
    for r in &results {
        eprintln!("{}", r.line());
    }
    let failed: Vec<String> = results
        .iter()
        .enumerate()
        .filter(|(_, r)| !r.passed())
        .map(|(i, _)| format!("/criteria/{i}/evidence"))
        .collect();
    let inconclusive = results.iter().any(|r| r.status == Status::Inconclusive);
    let passed = results.iter().filter(|r| r.passed()).count();
    let mut body = json!({"criteria": results, "passed": passed, "total": results.len()});
    if inconclusive {
        body["reason"] = "budget".into();
    }
    let outcome = if failed.is_empty() { Outcome::Ok } else { Outcome::Failed(failed) };
    Ok((body, outcome))
}

fn dispatch(cli: &Cli, ctx: &mut Context) -> Result<(Value, Outcome), CliError> {
    match &cli.command {
        Command::Git(c) => git_cmd(c),
        Command::Geom(c) => geom_cmd(c, ctx),
        Command::Qf(c) => qf_cmd(c, ctx),
        Command::Lat(c) => lat_cmd(c, ctx),
        Command::Census { n, all_targets } => census_cmd(*n, *all_targets, ctx),
        Command::Verify(VerifyCmd::All { seed, samples }) => verify_cmd(*seed, *samples, ctx),
    }
}

fn build_context(cli: &Cli, argv: Vec<String>) -> Result<Context, CliError> {
    let config = match &cli.global.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    let catalog_dir = cli
        .global
        .catalog
        .clone()
        .or_else(|| std::env::var_os("TRIELLIPTIC_CATALOG").map(PathBuf::from))
        .or_else(|| config.catalog.clone());
    if let Some(d) = &catalog_dir {
        if !d.is_dir() {
            return Err(CliError::Input(format!("catalog directory {} not found", d.display())));
        }
    }
    let entries = load_entries(catalog_dir.as_deref())?;
    let forms = load_forms(catalog_dir.as_deref())?;
    let budget = cli.global.budget_seconds.or(config.budget_seconds);
    if budget.is_some_and(|b| !(b > 0.0)) {
        return Err(CliError::Input("--budget-seconds must be positive".into()));
    }
    let limits = Limits {
        deadline: budget.map(|b| Instant::now() + Duration::from_secs_f64(b)),
        ..Limits::default()
    };
    let mut manifest = RunManifest::new(argv);
    manifest.catalogs = catalog_checksums(
        catalog_dir.as_deref(),
        &[
            ("niemeier.json", serde_json::to_value(builtin_entries()).unwrap_or_default()),
            ("forms.json", serde_json::to_value(builtin_forms()).unwrap_or_default()),
        ],
    );
    manifest.jobs = cli.global.jobs.or(config.jobs);
    manifest.budget_seconds = budget;
    Ok(Context { catalog_dir, entries, forms, limits, config, manifest })
}

fn execute(cli: &Cli, argv: Vec<String>) -> Result<i32, CliError> {
    let start = Instant::now();
    let mut ctx = build_context(cli, argv)?;
    let out = cli.global.out.clone().or_else(|| ctx.config.out.clone());
    let timing = !(cli.global.no_timing || ctx.config.no_timing.unwrap_or(false));
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(ctx.manifest.jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Compute(e.to_string()))?;

    if let Command::Git(GitCmd::Families { sign, format: Format::Table }) = &cli.command {
        let text = pool.install(|| families_table(sign_of(*sign)))?;
        match &out {
            Some(p) => std::fs::write(p, text).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?,
            None => print!("{text}"),
        }
        return Ok(EXIT_OK);
    }

    let result = pool.install(|| dispatch(cli, &mut ctx));
    let (body, outcome, code) = match result {
        Ok((body, Outcome::Ok)) => (body, None, EXIT_OK),
        Ok((body, Outcome::Failed(ptrs))) => (body, Some(ptrs), EXIT_FAILED),
        Err(CliError::Budget(msg)) => {
            (json!({"status": "inconclusive", "reason": "budget", "detail": msg}), Some(vec!["/detail".into()]), EXIT_FAILED)
        }
        Err(e) => return Err(e),
    };
    if timing {
        ctx.manifest.wall_clock_sec = Some(start.elapsed().as_secs_f64());
    }
    let report = assemble(&ctx.manifest, body, timing);
    let dest = emit(&report, out.as_ref()).map_err(|e| CliError::Input(format!("cannot write report: {e}")))?;
    if let Some(ptrs) = outcome {
        eprintln!("verification failed; evidence in {dest} at {}", ptrs.join(", "));
    }
    Ok(code)
}

/// Parse `args` (program name first) and run; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let argv: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    match execute(&cli, argv) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.code()
        }
    }
}
