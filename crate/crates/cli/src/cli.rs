//! Argument parsing and the subcommands.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use wpos_core::equilibria::{
    deviation_report, iterated_dominance, potential_minimize, AnalysisReport, DeviationReport, MinimizeMode,
    PotentialConfig, PotentialResult, DEFAULT_CAP,
};
use wpos_core::generators::{
    gen_general_lb, gen_network_lb, gen_singleton_lb, random_exponential_game, random_game, RandomGameConfig,
};
use wpos_core::numerics::{
    bernoulli_numbers, beta_envelope, faulhaber_pathologies, finite_n_general, gamma_d, general_ratio,
    lower_bound_params, singleton_bound, singleton_limit, singleton_w, solve_phi,
};
use wpos_core::{AnalysisError, Game, GeneratorError, NumericsError, Profile};

use crate::dot::network_dot;
use crate::format::{general_file, load_game, network_file, singleton_file, GameFile, LoadError};
use crate::numfmt::{fmt_num, json_num, json_opt, DEFAULT_DIGITS};
use crate::parallel::{default_threads, enumerate_parallel};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_NO_EQUILIBRIUM: u8 = 2;
pub const EXIT_CAP: u8 = 3;
pub const EXIT_IO: u8 = 4;

#[derive(Debug, Parser)]
#[command(name = "wpos", version, about = "Price-of-stability experiments for weighted congestion games")]
pub struct Cli {
    /// Significant digits of printed numbers.
    #[arg(long, global = true, default_value_t = DEFAULT_DIGITS, value_parser = parse_digits)]
    pub digits: usize,
    /// Write the result to this file instead of stdout.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Root of x^(d+1) = (x+1)^d.
    Phi(DegreeArgs),
    /// Lower-bound parameters (d, c_d, beta, mu, ...) as CSV.
    Params(ParamsArgs),
    /// Generate a game as JSON (or DOT for the network instance).
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Enumerate a game: equilibria, optimum, PoS and PoA.
    Analyze(AnalyzeArgs),
    /// Minimise the approximate potential and certify the result.
    Descend(DescendArgs),
    /// Convergence and numerics tables as CSV.
    Table {
        #[command(subcommand)]
        kind: TableKind,
    },
    /// Closed-form ratio predictions.
    Ratios(RatiosArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub lo: u32,
    pub hi: u32,
}

impl Span {
    fn iter(self) -> impl Iterator<Item = u32> {
        self.lo..=self.hi
    }
}

/// `a..b` and `a..=b` are both inclusive; a single number is a one-point span.
fn parse_span(s: &str) -> Result<Span, String> {
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (s, s),
    };
    let num = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("`{t}`: {e}"));
    let (lo, hi) = (num(lo)?, num(hi)?);
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok(Span { lo, hi })
}

fn parse_digits(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(d) if (1..=17).contains(&d) => Ok(d),
        _ => Err(format!("`{s}` is not an integer in 1..=17")),
    }
}

fn parse_profile(s: &str) -> Result<Profile, String> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}")))
        .collect::<Result<_, _>>()
        .map(Profile::new)
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct DegreeArgs {
    #[arg(long)]
    pub d: Option<u32>,
    /// Inclusive range such as 9..100.
    #[arg(long = "d-range", value_parser = parse_span)]
    pub d_range: Option<Span>,
}

impl DegreeArgs {
    fn span(&self) -> Span {
        match (self.d, self.d_range) {
            (Some(d), _) => Span { lo: d, hi: d },
            (None, Some(s)) => s,
            (None, None) => unreachable!("clap requires one of --d, --d-range"),
        }
    }
}

#[derive(Debug, Args)]
pub struct ParamsArgs {
    #[command(flatten)]
    pub degree: DegreeArgs,
    /// Add the closed-form lower and upper envelopes of beta.
    #[arg(long)]
    pub envelope: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenFormat {
    Json,
    Dot,
}

#[derive(Debug, Subcommand)]
pub enum GenKind {
    /// Weighted lower-bound instance of degree d >= 9 with n tail players.
    General {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        n: u32,
        /// Emit the network form (edge-level game or DOT digraph).
        #[arg(long)]
        network: bool,
        #[arg(long, value_enum, default_value_t = GenFormat::Json)]
        format: GenFormat,
    },
    /// Singleton lower-bound instance.
    Singleton {
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long)]
        gamma: f64,
        #[arg(long)]
        n: u32,
    },
    /// Seeded random game.
    Random {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        players: usize,
        #[arg(long, default_value_t = 4)]
        resources: usize,
        #[arg(long = "max-degree", default_value_t = 3)]
        max_degree: usize,
        #[arg(long = "weight-range", default_value_t = 2.0)]
        weight_range: f64,
        #[arg(long, default_value_t = 2)]
        strategies: usize,
        /// Exponential latencies a e^x instead of polynomials.
        #[arg(long)]
        exponential: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct EngineArgs {
    /// Largest profile count that may be enumerated.
    #[arg(long, env = "WPOS_CAP", default_value_t = DEFAULT_CAP)]
    pub cap: u64,
    /// Worker threads for enumeration (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    pub format: ReportFormat,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    pub game: PathBuf,
    /// Approximation factor of the equilibria sought.
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    /// Exhaustive enumeration (the default).
    #[arg(long, conflicts_with = "descend")]
    pub enumerate: bool,
    /// Local potential descent instead of enumeration.
    #[arg(long)]
    pub descend: bool,
    /// Potential parameter for --descend.
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
    /// With --descend: use the exact power sums (degree at most 4).
    #[arg(long, requires = "descend")]
    pub exact: bool,
    /// Also run iterated elimination of alpha-dominated strategies.
    #[arg(long)]
    pub dominance: bool,
    /// At most this many equilibria are listed; the count is always exact.
    #[arg(long = "list-limit", default_value_t = 10_000)]
    pub list_limit: usize,
    #[command(flatten)]
    pub engine: EngineArgs,
}

#[derive(Debug, Args)]
pub struct DescendArgs {
    pub game: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
    /// Use the exact power sums instead of their two-term truncation (degree at most 4).
    #[arg(long)]
    pub exact: bool,
    /// Minimise over all profiles instead of descending locally.
    #[arg(long)]
    pub global: bool,
    /// Starting profile for local descent, e.g. 0,1,0.
    #[arg(long, value_parser = parse_profile)]
    pub start: Option<Profile>,
    #[command(flatten)]
    pub engine: EngineArgs,
}

#[derive(Debug, Subcommand)]
pub enum TableKind {
    /// Measured C(s~)/C(s*) of the general instance against the predictions.
    PosConvergence {
        #[arg(long, default_value_t = 9)]
        d: u32,
        #[arg(long, value_parser = parse_span, default_value = "1..12")]
        n: Span,
        /// Confirm by enumeration that s~ is the only equilibrium.
        #[arg(long)]
        verify: bool,
        #[arg(long, env = "WPOS_CAP", default_value_t = DEFAULT_CAP)]
        cap: u64,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Measured ratio of the singleton instance against its limit.
    SingletonConvergence {
        #[arg(long, default_value_t = 3)]
        d: u32,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long)]
        gamma: f64,
        #[arg(long, value_parser = parse_span, default_value = "2..12")]
        n: Span,
        #[arg(long)]
        verify: bool,
        #[arg(long, env = "WPOS_CAP", default_value_t = DEFAULT_CAP)]
        cap: u64,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Monotonicity and minimum of the exact power-sum polynomials on [1, 2].
    Pathologies {
        #[arg(long, value_parser = parse_span, default_value = "1..22")]
        m: Span,
    },
    /// Exact Bernoulli numbers B_0..B_n.
    Bernoulli {
        #[arg(long, default_value_t = 20)]
        n: usize,
    },
}

#[derive(Debug, Args)]
pub struct RatiosArgs {
    #[arg(long)]
    pub d: u32,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long)]
    pub gamma: f64,
    #[arg(long, default_value_t = 1)]
    pub n: u32,
}

/// A failed command: exit code and message.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<AnalysisError> for Failure {
    fn from(e: AnalysisError) -> Self {
        let code = match e {
            AnalysisError::CapExceeded { .. } | AnalysisError::NoConvergence(_) => EXIT_CAP,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<GeneratorError> for Failure {
    fn from(e: GeneratorError) -> Self {
        let code = if matches!(e, GeneratorError::Cap(_)) { EXIT_CAP } else { EXIT_USAGE };
        Failure { code, message: e.to_string() }
    }
}

impl From<NumericsError> for Failure {
    fn from(e: NumericsError) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        Failure { code: EXIT_IO, message: e.to_string() }
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure { code: EXIT_IO, message: e.to_string() }
    }
}

/// What a command produced: text for the sink and an exit code.
struct Emitted {
    text: String,
    code: u8,
}

impl Emitted {
    fn ok(text: String) -> Self {
        Emitted { text, code: EXIT_OK }
    }
}

struct Csv(csv::Writer<Vec<u8>>);

impl Csv {
    fn new(header: &[&str]) -> Result<Self, Failure> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(header)?;
        Ok(Csv(w))
    }

    fn row<I, S>(&mut self, fields: I) -> Result<(), Failure>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        Ok(self.0.write_record(fields)?)
    }

    fn finish(self) -> Result<String, Failure> {
        let bytes = self.0.into_inner().map_err(|e| Failure { code: EXIT_IO, message: e.to_string() })?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialise");
    s.push('\n');
    s
}

fn profile_json(p: &Profile) -> Value {
    json!(p.as_slice())
}

/// Parses `args` (program name first) and runs the command. Help and
/// version requests exit 0; other parse errors exit 1.
pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_OK
            }
        }
    }
}

pub fn run(cli: Cli) -> u8 {
    let digits = cli.digits;
    let result = match &cli.command {
        Command::Phi(a) => phi(a, digits),
        Command::Params(a) => params(a, digits),
        Command::Gen { kind } => generate(kind, digits),
        Command::Analyze(a) => analyze(a, digits),
        Command::Descend(a) => descend(a, digits),
        Command::Table { kind } => table(kind, digits),
        Command::Ratios(a) => ratios(a, digits),
    };
    match result {
        Ok(out) => match write_out(cli.output.as_ref(), &out.text) {
            Ok(()) => out.code,
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_IO
            }
        },
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn write_out(path: Option<&PathBuf>, text: &str) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, text),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}

fn phi(a: &DegreeArgs, digits: usize) -> Result<Emitted, Failure> {
    if let Some(d) = a.d {
        return Ok(Emitted::ok(format!("{}\n", fmt_num(solve_phi(d), digits))));
    }
    let mut csv = Csv::new(&["d", "phi", "lambert_bound"])?;
    for d in a.span().iter() {
        let bound = if d >= 2 {
            let df = f64::from(d);
            fmt_num(gamma_d(df)? * df / df.ln(), digits)
        } else {
            String::new()
        };
        csv.row([d.to_string(), fmt_num(solve_phi(d), digits), bound])?;
    }
    Ok(Emitted::ok(csv.finish()?))
}

fn params(a: &ParamsArgs, digits: usize) -> Result<Emitted, Failure> {
    let mut header = vec!["d", "c_d", "beta", "mu", "phi", "w", "alpha"];
    if a.envelope {
        header.extend(["beta_lower", "beta_upper"]);
    }
    let mut csv = Csv::new(&header)?;
    for d in a.degree.span().iter() {
        let p = lower_bound_params(d)?;
        let mut row = vec![
            d.to_string(),
            fmt_num(p.c_f64(), digits),
            fmt_num(p.beta, digits),
            p.mu.to_string(),
            fmt_num(p.phi, digits),
            fmt_num(p.w, digits),
            fmt_num(p.alpha, digits),
        ];
        if a.envelope {
            let (lo, hi) = beta_envelope(d);
            row.extend([fmt_num(lo, digits), fmt_num(hi, digits)]);
        }
        csv.row(row)?;
    }
    Ok(Emitted::ok(csv.finish()?))
}

fn generate(kind: &GenKind, digits: usize) -> Result<Emitted, Failure> {
    let file = match *kind {
        GenKind::General { d, n, network, format } => {
            if format == GenFormat::Dot && !network {
                return Err(Failure::usage("--format dot needs --network"));
            }
            if network {
                let net = gen_network_lb(d, n)?;
                if format == GenFormat::Dot {
                    return Ok(Emitted::ok(network_dot(&net, digits)));
                }
                network_file(&net)?
            } else {
                general_file(&gen_general_lb(d, n)?)
            }
        }
        GenKind::Singleton { d, alpha, gamma, n } => singleton_file(&gen_singleton_lb(d, alpha, gamma, n)?),
        GenKind::Random { seed, players, resources, max_degree, weight_range, strategies, exponential } => {
            let cfg =
                RandomGameConfig { players, resources, max_degree, weight_range, strategies_per_player: strategies };
            let game = if exponential { random_exponential_game(seed, &cfg)? } else { random_game(seed, &cfg)? };
            GameFile::from_game(&game)
        }
    };
    Ok(Emitted::ok(file.to_json()))
}

fn threads(t: Option<usize>) -> usize {
    t.unwrap_or_else(default_threads)
}

fn analyze(a: &AnalyzeArgs, digits: usize) -> Result<Emitted, Failure> {
    let (game, _) = load_game(&a.game)?;
    if a.descend {
        let cfg = if a.exact { PotentialConfig::exact(a.gamma)? } else { PotentialConfig::new(a.gamma)? };
        let r = potential_minimize(&game, &cfg, MinimizeMode::Local, None)?;
        return descent_output(&game, &r, "local", &cfg, a.engine.format, digits);
    }
    let report = enumerate_parallel(&game, a.alpha, a.engine.cap, threads(a.engine.threads))?;
    let code = if report.has_equilibrium() { EXIT_OK } else { EXIT_NO_EQUILIBRIUM };
    let text = match a.engine.format {
        ReportFormat::Json => {
            let mut v = report_json(&game, &report, a.list_limit, digits)?;
            if a.dominance {
                let dom = iterated_dominance(&game, a.alpha, 0.0, a.engine.cap)?;
                v["dominance"] = json!({
                    "survivor": dom.survivor.as_ref().map(profile_json),
                    "eliminations": dom.trace.iter().map(|e| json!({
                        "player": e.player,
                        "removed": e.removed,
                        "dominated_by": e.dominated_by,
                    })).collect::<Vec<_>>(),
                    "remaining": dom.remaining,
                });
            }
            json_text(&v)
        }
        ReportFormat::Csv => {
            let mut csv = Csv::new(&["kind", "profile", "cost", "alpha_star", "ratio_to_opt"])?;
            let opt_alpha = deviation_report(&game, &report.opt_profile)?.alpha_star;
            csv.row([
                "opt".to_string(),
                report.opt_profile.to_string(),
                fmt_num(report.opt_cost, digits),
                fmt_num(opt_alpha, digits),
                "1".to_string(),
            ])?;
            for e in report.equilibria.iter().take(a.list_limit) {
                csv.row([
                    "equilibrium".to_string(),
                    e.profile.to_string(),
                    fmt_num(e.cost, digits),
                    fmt_num(e.alpha_star, digits),
                    fmt_num(ratio(e.cost, report.opt_cost), digits),
                ])?;
            }
            csv.finish()?
        }
    };
    Ok(Emitted { text, code })
}

fn ratio(cost: f64, opt: f64) -> f64 {
    if opt > 0.0 {
        cost / opt
    } else if cost > 0.0 {
        f64::INFINITY
    } else {
        1.0
    }
}

fn report_json(game: &Game, r: &AnalysisReport, limit: usize, digits: usize) -> Result<Value, Failure> {
    let opt_dev = deviation_report(game, &r.opt_profile)?;
    let entry = |e: &wpos_core::equilibria::EquilibriumEntry| {
        json!({
            "profile": profile_json(&e.profile),
            "cost": json_num(e.cost, digits),
            "alpha_star": json_num(e.alpha_star, digits),
        })
    };
    Ok(json!({
        "alpha": json_num(r.alpha, digits),
        "players": game.players(),
        "resources": game.resources().len(),
        "degree": game.degree(),
        "profile_count": r.profile_count as u64,
        "opt_cost": json_num(r.opt_cost, digits),
        "opt_profile": profile_json(&r.opt_profile),
        "opt_alpha_star": json_num(opt_dev.alpha_star, digits),
        "equilibrium_count": r.equilibria.len(),
        "equilibria": r.equilibria.iter().take(limit).map(entry).collect::<Vec<_>>(),
        "best_equilibrium": r.best_eq.as_ref().map(entry),
        "worst_equilibrium": r.worst_eq.as_ref().map(entry),
        "pos": json_num(r.pos, digits),
        "poa": json_num(r.poa, digits),
        "marginal": r.marginal.iter().map(profile_json).collect::<Vec<_>>(),
        "min_eq_margin": json_opt(r.min_eq_margin, digits),
        "max_non_eq_margin": json_opt(r.max_non_eq_margin, digits),
    }))
}

fn descend(a: &DescendArgs, digits: usize) -> Result<Emitted, Failure> {
    let (game, _) = load_game(&a.game)?;
    let cfg = if a.exact { PotentialConfig::exact(a.gamma)? } else { PotentialConfig::new(a.gamma)? };
    let start = a.start.clone();
    let (mode, label) = if a.global {
        if start.is_some() {
            return Err(Failure::usage("--start only applies to local descent"));
        }
        (MinimizeMode::Global { cap: a.engine.cap }, "global")
    } else {
        (MinimizeMode::Local, "local")
    };
    let r = potential_minimize(&game, &cfg, mode, start.as_ref())?;
    descent_output(&game, &r, label, &cfg, a.engine.format, digits)
}

fn deviation_json(d: &DeviationReport, digits: usize) -> Value {
    Value::Array(
        d.players
            .iter()
            .map(|p| {
                json!({
                    "best_alternative": p.best_alternative,
                    "current_cost": json_num(p.current_cost, digits),
                    "best_cost": json_num(p.best_cost, digits),
                    "ratio": json_num(p.ratio, digits),
                })
            })
            .collect(),
    )
}

fn descent_output(
    game: &Game,
    r: &PotentialResult,
    mode: &str,
    cfg: &PotentialConfig,
    format: ReportFormat,
    digits: usize,
) -> Result<Emitted, Failure> {
    let cost = game.social_cost(&r.profile).map_err(|e| Failure::usage(e.to_string()))?;
    let text = match format {
        ReportFormat::Json => json_text(&json!({
            "mode": mode,
            "gamma": json_num(cfg.gamma(), digits),
            "exact": cfg.is_exact(),
            "profile": profile_json(&r.profile),
            "potential": json_num(r.potential, digits),
            "cost": json_num(cost, digits),
            "steps": r.steps,
            "alpha_star": json_num(r.certificate.alpha_star, digits),
            "alpha_guarantee": json_num(r.alpha_guarantee, digits),
            "pos_guarantee": json_opt(r.pos_guarantee, digits),
            "players": deviation_json(&r.certificate, digits),
        })),
        ReportFormat::Csv => {
            let mut csv = Csv::new(&["player", "choice", "current_cost", "best_alternative", "best_cost", "ratio"])?;
            for (i, p) in r.certificate.players.iter().enumerate() {
                csv.row([
                    i.to_string(),
                    r.profile.choice(i).to_string(),
                    fmt_num(p.current_cost, digits),
                    p.best_alternative.to_string(),
                    fmt_num(p.best_cost, digits),
                    fmt_num(p.ratio, digits),
                ])?;
            }
            csv.finish()?
        }
    };
    Ok(Emitted::ok(text))
}

/// `true` when enumeration at `α = 1` finds exactly `nash` and nothing else.
fn unique_equilibrium(game: &Game, nash: &Profile, cap: u64, threads: usize) -> Result<bool, Failure> {
    let r = enumerate_parallel(game, 1.0, cap, threads)?;
    Ok(r.equilibria.len() == 1 && r.equilibria[0].profile == *nash)
}

fn table(kind: &TableKind, digits: usize) -> Result<Emitted, Failure> {
    match *kind {
        TableKind::PosConvergence { d, n, verify, cap, threads: t } => {
            let p = lower_bound_params(d)?;
            let mut header = vec!["n", "players", "opt_cost", "nash_cost", "measured", "predicted", "limit"];
            if verify {
                header.push("unique_equilibrium");
            }
            let mut csv = Csv::new(&header)?;
            let min_n = p.mu.saturating_sub(1).max(1);
            for n in n.iter() {
                if n < min_n {
                    eprintln!("note: skipping n = {n}; the construction at d = {d} needs n >= {min_n}");
                    continue;
                }
                let inst = gen_general_lb(d, n)?;
                let opt = inst.game.social_cost(&inst.opt_profile).map_err(|e| Failure::usage(e.to_string()))?;
                let nash = inst.game.social_cost(&inst.nash_profile).map_err(|e| Failure::usage(e.to_string()))?;
                let mut row = vec![
                    n.to_string(),
                    inst.players().to_string(),
                    fmt_num(opt, digits),
                    fmt_num(nash, digits),
                    fmt_num(nash / opt, digits),
                    fmt_num(finite_n_general(&p, n), digits),
                    fmt_num(general_ratio(&p), digits),
                ];
                if verify {
                    row.push(unique_equilibrium(&inst.game, &inst.nash_profile, cap, threads(t))?.to_string());
                }
                csv.row(row)?;
            }
            Ok(Emitted::ok(csv.finish()?))
        }
        TableKind::SingletonConvergence { d, alpha, gamma, n, verify, cap, threads: t } => {
            let limit = singleton_limit(d, alpha, gamma)?;
            let bound = singleton_bound(d, alpha)?;
            let mut header = vec!["n", "w", "opt_cost", "nash_cost", "measured", "limit", "bound"];
            if verify {
                header.push("unique_equilibrium");
            }
            let mut csv = Csv::new(&header)?;
            for n in n.iter() {
                let inst = gen_singleton_lb(d, alpha, gamma, n)?;
                let opt = inst.game.social_cost(&inst.opt_profile).map_err(|e| Failure::usage(e.to_string()))?;
                let nash = inst.game.social_cost(&inst.nash_profile).map_err(|e| Failure::usage(e.to_string()))?;
                let mut row = vec![
                    n.to_string(),
                    fmt_num(singleton_w(d, gamma), digits),
                    fmt_num(opt, digits),
                    fmt_num(nash, digits),
                    fmt_num(nash / opt, digits),
                    fmt_num(limit, digits),
                    fmt_num(bound, digits),
                ];
                if verify {
                    row.push(unique_equilibrium(&inst.game, &inst.nash_profile, cap, threads(t))?.to_string());
                }
                csv.row(row)?;
            }
            Ok(Emitted::ok(csv.finish()?))
        }
        TableKind::Pathologies { m } => {
            let mut csv = Csv::new(&["m", "monotone", "min_value", "argmin"])?;
            for m in m.iter() {
                let p = faulhaber_pathologies(m);
                csv.row([
                    m.to_string(),
                    p.monotone_on_unit_interval.to_string(),
                    fmt_num(p.min_value_on_unit_interval, digits),
                    fmt_num(p.argmin, digits),
                ])?;
            }
            Ok(Emitted::ok(csv.finish()?))
        }
        TableKind::Bernoulli { n } => {
            let table = bernoulli_numbers(n);
            let mut csv = Csv::new(&["j", "numerator", "denominator"])?;
            for (j, b) in table.values().iter().enumerate() {
                csv.row([j.to_string(), b.numer().to_string(), b.denom().to_string()])?;
            }
            Ok(Emitted::ok(csv.finish()?))
        }
    }
}

fn ratios(a: &RatiosArgs, digits: usize) -> Result<Emitted, Failure> {
    let mut csv = Csv::new(&["quantity", "value"])?;
    if let Ok(p) = lower_bound_params(a.d) {
        csv.row(["general".to_string(), fmt_num(general_ratio(&p), digits)])?;
        csv.row(["finite_n_general".to_string(), fmt_num(finite_n_general(&p, a.n), digits)])?;
    }
    csv.row(["singleton_bound".to_string(), fmt_num(singleton_bound(a.d, a.alpha)?, digits)])?;
    csv.row(["singleton_limit".to_string(), fmt_num(singleton_limit(a.d, a.alpha, a.gamma)?, digits)])?;
    csv.row(["singleton_w".to_string(), fmt_num(singleton_w(a.d, a.gamma), digits)])?;
    Ok(Emitted::ok(csv.finish()?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spans() {
        assert_eq!(parse_span("9..12"), Ok(Span { lo: 9, hi: 12 }));
        assert_eq!(parse_span("9..=12"), Ok(Span { lo: 9, hi: 12 }));
        assert_eq!(parse_span("7"), Ok(Span { lo: 7, hi: 7 }));
        assert!(parse_span("5..2").is_err());
        assert!(parse_span("a..2").is_err());
    }

    #[test]
    fn profiles() {
        assert_eq!(parse_profile("0, 1,2"), Ok(Profile::new(vec![0, 1, 2])));
        assert!(parse_profile("0,x").is_err());
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
