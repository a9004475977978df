//! Command-line interface.
//!
//! Exit codes: 0 when every assertion passes, 1 when one fails (the report
//! carries a witness), 2 on usage or input errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::cube::{set_max_arity, BooleanFunction, RealFunction, Sign, Subset};
use crate::entropy::{self, EntropyReport};
use crate::error::{Error, Result};
use crate::format::{self, Loaded};
use crate::fourier::{inverse_transform, parseval_check, Spectrum};
use crate::influence::{pivot_profile, spectral_profile};
use crate::noise::{Exponent, NoiseParams};
use crate::report::{Report, Tolerance};
use crate::social;
use crate::suite::{self, Check, VerifyOptions};
use crate::survey::{self, SurveyConfig, SurveyMode};
use crate::zoo;

/// Environment variable overriding the arity cap.
pub const MAX_N_ENV: &str = "HYPERCUBE_MAX_N";

#[derive(Parser, Debug)]
#[command(name = "boolcube", version, about = "Fourier analysis of Boolean functions on the Hamming cube")]
struct Cli {
    /// Emit the JSON report instead of a table.
    #[arg(long, global = true)]
    json: bool,
    /// Relative tolerance for inequality checks.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ZooName {
    Dictator,
    Parity,
    Maj,
    Or,
    And,
    Tribes,
    /// Tribes with the balanced parameters for a given tribe width.
    Bl,
    Const,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Exhaustive,
    Random,
    Family,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Preset {
    /// `‖T_{1/√3} f‖_4 <= ‖f‖_2`.
    FourTwo,
    /// `‖T_{1/√3} f‖_2 <= ‖f‖_{4/3}`.
    TwoFourThirds,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a named function: dictator N I | parity N I,J,.. | maj N | or N |
    /// and N | tribes WIDTH COUNT | bl WIDTH | const N +1/-1.
    #[command(allow_negative_numbers = true)]
    Zoo {
        name: ZooName,
        params: Vec<String>,
        /// Write the truth table here.
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
        /// Write the spectrum here.
        #[arg(long)]
        spec: Option<PathBuf>,
    },
    /// Spectrum, influences and level weights of a .bfn or .spec file.
    Analyze {
        file: PathBuf,
        /// Write the spectrum here.
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
        /// Write the reconstructed truth table here (Boolean inputs only).
        #[arg(long)]
        bfn: Option<PathBuf>,
    },
    /// Fourier entropy, min-entropy and the entropy/influence bounds.
    Entropy { file: PathBuf },
    /// Run a named check (or `all`) on a file, or on every function of arity N.
    Verify {
        check: String,
        file: Option<PathBuf>,
        /// Check every Boolean function of this arity instead of a file.
        #[arg(long)]
        all_n: Option<u32>,
        #[arg(long, default_value_t = 0)]
        threads: usize,
        #[arg(long)]
        preset: Option<Preset>,
        #[arg(long)]
        p: Option<Exponent>,
        #[arg(long)]
        q: Option<Exponent>,
        #[arg(long, allow_negative_numbers = true)]
        rho: Option<f64>,
        /// Truncation degree; all degrees when omitted.
        #[arg(long)]
        d: Option<u32>,
    },
    /// Leaderboards of H/I and H_inf/I.
    Survey {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        #[arg(long, default_value_t = 1000)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        top: usize,
        #[arg(long, default_value_t = 0)]
        threads: usize,
        /// Permit exhaustive mode at n = 5.
        #[arg(long)]
        allow_large: bool,
        /// Write the leaderboard as JSON lines.
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Greedy coalition for a monotone function.
    #[command(allow_negative_numbers = true)]
    Coalition {
        file: PathBuf,
        #[arg(long, default_value_t = 0.99)]
        target: f64,
        #[arg(long, default_value = "+1")]
        direction: String,
    },
    /// Distance to the nearest dictator against `731 (1 - W^1)`.
    Fkn { file: PathBuf },
    /// Largest influence against the KKL bounds.
    Kkl { file: PathBuf },
}

enum Outcome {
    Report(Box<Report>),
    Text(String),
}

fn read_input(path: &Path) -> Result<Loaded> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
    format::parse_any(&text).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
}

fn load_boolean(path: &Path) -> Result<BooleanFunction> {
    match read_input(path)? {
        Loaded::Boolean(f) => Ok(f),
        Loaded::Spectrum(s) => BooleanFunction::from_real(&inverse_transform(&s)),
    }
}

fn load_real(path: &Path) -> Result<(RealFunction, Option<BooleanFunction>)> {
    Ok(match read_input(path)? {
        Loaded::Boolean(f) => (f.to_real(), Some(f)),
        Loaded::Spectrum(s) => {
            let real = inverse_transform(&s);
            let boolean = BooleanFunction::from_real(&real).ok();
            (real, boolean)
        }
    })
}

fn param<T: std::str::FromStr>(params: &[String], k: usize, what: &str) -> Result<T> {
    let raw = params
        .get(k)
        .ok_or_else(|| Error::InvalidArgument(format!("missing parameter <{what}>")))?;
    raw.parse()
        .map_err(|_| Error::InvalidArgument(format!("<{what}>: cannot parse {raw:?}")))
}

fn build_zoo(name: ZooName, params: &[String]) -> Result<BooleanFunction> {
    let expect = |k: usize| -> Result<()> {
        if params.len() == k {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("expected {k} parameter(s), got {}", params.len())))
        }
    };
    match name {
        ZooName::Dictator => {
            expect(2)?;
            zoo::dictator(param(params, 0, "n")?, param(params, 1, "i")?)
        }
        ZooName::Parity => {
            expect(2)?;
            let n = param(params, 0, "n")?;
            let coords = params[1]
                .split(',')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| Error::InvalidArgument(format!("bad coordinate {s:?}"))))
                .collect::<Result<Vec<_>>>()?;
            zoo::parity(n, Subset::from_coords(&coords, n)?)
        }
        ZooName::Maj => {
            expect(1)?;
            zoo::majority(param(params, 0, "n")?)
        }
        ZooName::Or => {
            expect(1)?;
            zoo::or_fn(param(params, 0, "n")?)
        }
        ZooName::And => {
            expect(1)?;
            zoo::and_fn(param(params, 0, "n")?)
        }
        ZooName::Tribes => {
            expect(2)?;
            zoo::tribes(&zoo::Partition::uniform(param(params, 0, "width")?, param(params, 1, "count")?)?)
        }
        ZooName::Bl => {
            expect(1)?;
            zoo::tribes(&zoo::bl_params(param(params, 0, "width")?)?.partition()?)
        }
        ZooName::Const => {
            expect(2)?;
            BooleanFunction::constant(param(params, 0, "n")?, Sign::from_value(param(params, 1, "value")?)?)
        }
    }
}

fn describe(r: &mut Report, s: &Spectrum) {
    r.quantity("mean", s.mean())
        .quantity("variance", s.variance())
        .quantity("squared_norm", s.squared_norm())
        .quantity("degree", f64::from(s.degree()));
    let prof = spectral_profile(s);
    r.quantity("total_influence", prof.total);
    for (k, v) in prof.per_coordinate.iter().enumerate() {
        r.quantity(&format!("I_{}", k + 1), *v);
    }
    for (k, w) in s.level_weights().iter().enumerate() {
        r.quantity(&format!("W^{k}"), *w);
    }
}

fn parse_direction(raw: &str) -> Result<Sign> {
    match raw {
        "+1" | "1" | "+" => Ok(Sign::Plus),
        "-1" | "-" => Ok(Sign::Minus),
        _ => Err(Error::InvalidArgument(format!("direction must be +1 or -1, got {raw:?}"))),
    }
}

fn entropy_report(f: &RealFunction, boolean: Option<&BooleanFunction>, tol: Tolerance) -> Result<Report> {
    let s = f.spectrum();
    let e = EntropyReport::from_spectrum(&s)?;
    let mut r = Report::new("entropy", tol);
    r.input("n", f.arity());
    r.log_base("2");
    r.details(&e);
    match boolean {
        Some(b) => {
            r.absorb("", entropy::entropy_range_check(b, tol));
            r.absorb("owz:", entropy::owz_level_bound_check(b, tol));
            r.absorb("edge-iso:", entropy::edge_isoperimetric_check(b, tol));
            r.absorb("shannon:", entropy::shannon_code_bound_check(f, tol)?);
            r.absorb("log-n:", entropy::log_n_bound_check(b, tol));
        }
        None => {
            r.quantity("H", e.entropy).quantity("H_inf", e.min_entropy).quantity("I", e.total_influence);
            r.absorb("shannon:", entropy::shannon_code_bound_check(f, tol)?);
        }
    }
    Ok(r)
}

fn verify(
    which: &str,
    file: Option<&Path>,
    all_n: Option<u32>,
    threads: usize,
    opts: &VerifyOptions,
    tol: Tolerance,
) -> Result<Report> {
    let checks: Vec<Check> = if which == "all" {
        Check::ALL.to_vec()
    } else {
        vec![Check::from_str(which, true).map_err(|_| {
            let names: Vec<&str> = Check::ALL.iter().map(|c| c.name()).collect();
            Error::InvalidArgument(format!("unknown check {which:?}; expected all or one of {}", names.join(", ")))
        })?]
    };
    match (file, all_n) {
        (Some(_), Some(_)) => Err(Error::InvalidArgument("give either a file or --all-n, not both".into())),
        (None, None) => Err(Error::InvalidArgument("verify needs a file or --all-n N".into())),
        (None, Some(n)) => suite::exhaustive_verify(n, &checks, opts, tol, threads),
        (Some(path), None) => {
            let (real, boolean) = load_real(path)?;
            if checks.len() == 1 {
                return match &boolean {
                    Some(b) => suite::check_boolean(b, checks[0], opts, tol),
                    None => suite::check_real(&real, checks[0], opts, tol),
                };
            }
            let mut r = Report::new("verify", tol);
            r.input("file", path.display().to_string()).input("n", real.arity());
            for c in checks {
                let sub = match &boolean {
                    Some(b) => match suite::check_boolean(b, c, opts, tol) {
                        Ok(sub) => sub,
                        // checks that do not apply to this input are skipped
                        Err(Error::NotMonotone { .. } | Error::ConstantFunction | Error::InvalidArgument(_)) => continue,
                        Err(e) => return Err(e),
                    },
                    None if c.boolean_only() => continue,
                    None => suite::check_real(&real, c, opts, tol)?,
                };
                r.absorb(&format!("{}:", c.name()), sub);
            }
            Ok(r)
        }
    }
}

fn hyper_options(preset: Option<Preset>, p: Option<Exponent>, q: Option<Exponent>, rho: Option<f64>) -> Result<Option<NoiseParams>> {
    match (preset, p, q, rho) {
        (None, None, None, None) => Ok(None),
        (Some(Preset::FourTwo), None, None, None) => Ok(Some(NoiseParams::four_two())),
        (Some(Preset::TwoFourThirds), None, None, None) => Ok(Some(NoiseParams::two_four_thirds())),
        (None, Some(p), Some(q), Some(rho)) => NoiseParams::new(rho, p, q).map(Some),
        _ => Err(Error::InvalidArgument("give either --preset or all of --p, --q, --rho".into())),
    }
}

fn execute(cmd: Command, tol: Tolerance) -> Result<Outcome> {
    match cmd {
        Command::Zoo { name, params, output, spec } => {
            let f = build_zoo(name, &params)?;
            let s = f.spectrum();
            if let Some(path) = &output {
                write_file(path, &format::write_bfn(&f))?;
            }
            if let Some(path) = &spec {
                write_file(path, &format::write_spec(&s))?;
            }
            if output.is_none() && spec.is_none() {
                return Ok(Outcome::Text(format::write_bfn(&f)));
            }
            let mut r = Report::new("zoo", tol);
            r.input("name", format!("{name:?}").to_lowercase())
                .input("params", params)
                .input("n", f.arity());
            describe(&mut r, &s);
            r.quantity("monotone", if f.is_monotone() { 1.0 } else { 0.0 });
            Ok(Outcome::Report(Box::new(r)))
        }
        Command::Analyze { file, output, bfn } => {
            let (real, boolean) = load_real(&file)?;
            let s = real.spectrum();
            let mut r = Report::new("analyze", tol);
            r.input("file", file.display().to_string()).input("n", real.arity());
            r.input("boolean", boolean.is_some());
            describe(&mut r, &s);
            if let Some(b) = &boolean {
                r.quantity("monotone", if b.is_monotone() { 1.0 } else { 0.0 });
                let pivots = pivot_profile(b);
                for (k, v) in pivots.per_coordinate.iter().enumerate() {
                    r.assert_with(
                        &format!("pivot_I_{}==spectral_I_{}", k + 1, k + 1),
                        *v,
                        crate::report::Relation::Eq,
                        r.quantities[&format!("I_{}", k + 1)],
                        Tolerance::EXACT,
                    );
                }
            }
            r.absorb("parseval:", parseval_check(&real, tol));
            if let Some(path) = &output {
                write_file(path, &format::write_spec(&s))?;
            }
            if let Some(path) = &bfn {
                let b = boolean.ok_or_else(|| Error::InvalidArgument("input is not ±1-valued".into()))?;
                write_file(path, &format::write_bfn(&b))?;
            }
            Ok(Outcome::Report(Box::new(r)))
        }
        Command::Entropy { file } => {
            let (real, boolean) = load_real(&file)?;
            Ok(Outcome::Report(Box::new(entropy_report(&real, boolean.as_ref(), tol)?)))
        }
        Command::Verify { check, file, all_n, threads, preset, p, q, rho, d } => {
            let opts = VerifyOptions { hyper: hyper_options(preset, p, q, rho)?, trunc_degree: d };
            Ok(Outcome::Report(Box::new(verify(&check, file.as_deref(), all_n, threads, &opts, tol)?)))
        }
        Command::Survey { n, mode, count, seed, top, threads, allow_large, output } => {
            let mode = match mode {
                Mode::Exhaustive => SurveyMode::Exhaustive,
                Mode::Random => SurveyMode::Random { count, seed },
                Mode::Family => SurveyMode::Family,
            };
            let cfg = SurveyConfig { n, mode, top, threads, allow_large };
            let lb = survey::efi_survey(&cfg)?;
            if let Some(path) = &output {
                write_file(path, &lb.to_jsonl())?;
            }
            let mut r = lb.to_report(tol);
            r.log_base("2");
            if let SurveyMode::Random { seed, .. } = mode {
                r.seed(seed);
            }
            r.details(json!({ "efi": lb.efi, "mefi": lb.mefi }));
            Ok(Outcome::Report(Box::new(r)))
        }
        Command::Coalition { file, target, direction } => {
            let f = load_boolean(&file)?;
            let trace = social::greedy_coalition(&f, target, parse_direction(&direction)?)?;
            let mut r = trace.to_report(f.arity(), tol);
            r.log_base("e");
            r.details(&trace);
            Ok(Outcome::Report(Box::new(r)))
        }
        Command::Fkn { file } => {
            let f = load_boolean(&file)?;
            let (res, mut r) = social::fkn_check(&f, tol)?;
            r.details(json!({ "result": res, "affine": social::affine_classify(&f) }));
            Ok(Outcome::Report(Box::new(r)))
        }
        Command::Kkl { file } => {
            let f = load_boolean(&file)?;
            let mut r = social::kkl_intermediate_check(&f, tol)?;
            if f.arity() >= 2 {
                let ratio = social::kkl_ratio(&f)?;
                r.quantity("kkl_ratio", ratio).quantity("kkl_c_estimate", social::KKL_C);
            }
            Ok(Outcome::Report(Box::new(r)))
        }
    }
}

fn apply_env_cap() -> Result<()> {
    match std::env::var(MAX_N_ENV) {
        Ok(raw) => {
            let n = raw
                .trim()
                .parse::<u32>()
                .map_err(|_| Error::InvalidArgument(format!("{MAX_N_ENV}={raw:?} is not an integer")))?;
            set_max_arity(n)
        }
        Err(_) => Ok(()),
    }
}

fn emit(r: &Report, json: bool, out: &mut dyn Write) -> i32 {
    let _ = if json { writeln!(out, "{}", r.to_json()) } else { write!(out, "{}", r.to_text()) };
    if r.passed() {
        0
    } else {
        1
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    if let Err(e) = apply_env_cap() {
        let _ = writeln!(err, "error: {e}");
        return 2;
    }
    if !cli.tol.is_finite() || cli.tol < 0.0 {
        let _ = writeln!(err, "error: --tol must be a non-negative number");
        return 2;
    }
    let json = cli.json;
    match execute(cli.command, Tolerance(cli.tol)) {
        Ok(Outcome::Text(t)) => {
            let _ = write!(out, "{t}");
            0
        }
        Ok(Outcome::Report(r)) => emit(&r, json, out),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
