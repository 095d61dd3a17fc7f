//! Shell front end for the grasslog verification toolkit.
//!
//! Every command emits a JSON document on stdout (or to --out) and a
//! wall-clock line on stderr, so captured reports stay byte-identical for a
//! fixed flag set and seed. Exit codes: 0 when every check passes, 1 when a
//! verification check fails, 2 when the invocation or its inputs are
//! unusable.

use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use grasslog::chain::{cone_homotopy, Chain, ChainMode, CoeffMode};
use grasslog::config::{random_configuration, Configuration};
use grasslog::field::FieldDescriptor;
use grasslog::harness::{
    grassmann_d1, grassmann_d2, grassmann_d2_unsymmetrized, verify_base_change, verify_cocycle,
    verify_functional_equation, verify_skew_symmetry, zeta_demo,
};
use grasslog::homology::{grassmann_homology, HomologyReport};
use grasslog::milnor::{km2_reduce, milnor_image, volume_calibration, MilnorSymbolSum, SuslinSymbol};
use grasslog::numeric::polylog::{bw_d1, bw_d2, bw_dm, li};
use grasslog::numeric::{Complex, PrecisionPolicy, Real};
use grasslog::report::{CheckReport, RunReport};

#[derive(Parser)]
#[command(name = "grasslog", version, about = "Verification toolkit for Grassmann polylogarithms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a seeded verification suite and print its report.
    Verify(VerifyArgs),
    /// Evaluate a polylogarithm or Bloch-Wigner function at one point.
    Eval(EvalArgs),
    /// Enumerate configuration homology over a small prime field.
    Homology(HomologyArgs),
    /// Check the zeta times Dirichlet L identity against D2 at a root of unity.
    ZetaDemo(ZetaDemoArgs),
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    /// Ambient dimension.
    #[arg(long, default_value_t = 2)]
    m: usize,
    /// Simplicial index (simplicial suite) or chain degree (exact chain suites).
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Number of seeded samples.
    #[arg(long, default_value_t = 100)]
    trials: u64,
    /// Requested decimal digits for numeric suites.
    #[arg(long, default_value_t = 50)]
    prec: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Coefficient field for exact suites: q, fp:<p>, or qsqrt:<d>.
    #[arg(long, default_value = "q")]
    field: String,
    /// Write the JSON report to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON input to check in place of random sampling (simplicial: one
    /// configuration; symbols: an array of Suslin symbols).
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Simplicial,
    SignDecomposition,
    Homotopy,
    FiveTerm,
    Cocycle,
    Volform,
    Symbols,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Simplicial => "simplicial",
            Suite::SignDecomposition => "sign-decomposition",
            Suite::Homotopy => "homotopy",
            Suite::FiveTerm => "five-term",
            Suite::Cocycle => "cocycle",
            Suite::Volform => "volform",
            Suite::Symbols => "symbols",
        }
    }
}

#[derive(Args)]
struct EvalArgs {
    #[arg(value_enum)]
    what: EvalTarget,
    /// The point, as "a+bi" or as JSON {"re": "...", "im": "..."}.
    #[arg(long, allow_hyphen_values = true)]
    x: String,
    /// Polylogarithm order; required for li and dm.
    #[arg(long)]
    m: Option<usize>,
    /// Requested decimal digits.
    #[arg(long, default_value_t = 30)]
    prec: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum EvalTarget {
    Li,
    D1,
    D2,
    Dm,
}

impl EvalTarget {
    fn name(self) -> &'static str {
        match self {
            EvalTarget::Li => "li",
            EvalTarget::D1 => "d1",
            EvalTarget::D2 => "d2",
            EvalTarget::Dm => "dm",
        }
    }
}

#[derive(Args)]
struct HomologyArgs {
    /// Prime field, fp:<p>.
    #[arg(long)]
    field: String,
    /// Ambient dimension, 1 or 2.
    #[arg(long)]
    m: usize,
    /// Largest chain degree to report.
    #[arg(long)]
    max_n: usize,
}

#[derive(Args)]
struct ZetaDemoArgs {
    /// Fundamental discriminant, -3 or -4.
    #[arg(long, allow_hyphen_values = true)]
    disc: i64,
    /// Requested decimal digits.
    #[arg(long, default_value_t = 40)]
    prec: u32,
}

#[derive(Debug)]
struct CliError(String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn fail<E: fmt::Display>(e: E) -> CliError {
    CliError(e.to_string())
}

struct Outcome {
    json: String,
    pass: bool,
    out: Option<PathBuf>,
    wall_ms: u128,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            if let Some(path) = &outcome.out {
                if let Err(e) = fs::write(path, &outcome.json) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{}", outcome.json);
            }
            eprintln!("wall_time_ms={}", outcome.wall_ms);
            if outcome.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let clock = Instant::now();
    match cli.command {
        Command::Verify(args) => run_verify(args, clock),
        Command::Eval(args) => run_eval(args, clock),
        Command::Homology(args) => run_homology(args, clock),
        Command::ZetaDemo(args) => run_zeta_demo(args, clock),
    }
}

fn parse_field(s: &str) -> Result<FieldDescriptor, CliError> {
    if s == "q" {
        return Ok(FieldDescriptor::rational());
    }
    if let Some(rest) = s.strip_prefix("fp:") {
        let p: u64 = rest.parse().map_err(|_| CliError(format!("bad prime in field {s:?}")))?;
        return FieldDescriptor::prime(p).map_err(fail);
    }
    if let Some(rest) = s.strip_prefix("qsqrt:") {
        let d: i64 = rest.parse().map_err(|_| CliError(format!("bad discriminant in field {s:?}")))?;
        return FieldDescriptor::quadratic(d).map_err(fail);
    }
    Err(CliError(format!("unknown field {s:?}; expected q, fp:<p>, or qsqrt:<d>")))
}

fn exact_check(label: &str, trials: u64, seed: u64, violations: u64) -> CheckReport {
    CheckReport {
        check: label.to_string(),
        trials,
        rejected: 0,
        max_residual: violations.to_string(),
        tolerance: "1".to_string(),
        pass: violations == 0,
        seed,
    }
}

/// Equivariant chain with up to `terms` random general-position tuples.
fn random_chain<R: Rng>(
    field: FieldDescriptor,
    m: usize,
    degree: usize,
    terms: usize,
    coeffs: CoeffMode,
    rng: &mut R,
) -> Result<Chain, CliError> {
    let mut chain = Chain::zero(field, m, degree, ChainMode::Equivariant, coeffs);
    for _ in 0..terms {
        let config = random_configuration(field, m, degree + 1, rng).map_err(fail)?;
        let num: i64 = rng.gen_range(-9..=9);
        if num == 0 {
            continue;
        }
        let den: i64 = if coeffs == CoeffMode::Integer { 1 } else { rng.gen_range(1..=4) };
        chain.add_term(config, BigRational::new(num.into(), den.into())).map_err(fail)?;
    }
    Ok(chain)
}

fn reject_config_flag(suite: Suite, config: &Option<PathBuf>) -> Result<(), CliError> {
    if config.is_some() {
        return Err(CliError(format!("the {} suite does not take --config", suite.name())));
    }
    Ok(())
}

fn run_verify(args: VerifyArgs, clock: Instant) -> Result<Outcome, CliError> {
    if args.trials == 0 {
        return Err(CliError("--trials must be at least 1".to_string()));
    }
    if args.m == 0 {
        return Err(CliError("--m must be at least 1".to_string()));
    }
    let mut report = RunReport::new(format!("verify {}", args.suite.name()));
    match args.suite {
        Suite::Simplicial => suite_simplicial(&args, &mut report)?,
        Suite::SignDecomposition => suite_sign_decomposition(&args, &mut report)?,
        Suite::Homotopy => suite_homotopy(&args, &mut report)?,
        Suite::FiveTerm => suite_five_term(&args, &mut report)?,
        Suite::Cocycle => suite_cocycle(&args, &mut report)?,
        Suite::Volform => suite_volform(&args, &mut report)?,
        Suite::Symbols => suite_symbols(&args, &mut report)?,
    }
    report.wall_time_ms = clock.elapsed().as_millis();
    Ok(Outcome {
        json: report.to_json(),
        pass: report.pass,
        out: args.out.clone(),
        wall_ms: report.wall_time_ms,
    })
}

fn exact_parameters(report: &mut RunReport, args: &VerifyArgs) {
    report
        .parameter("m", args.m as u64)
        .parameter("n", args.n as u64)
        .parameter("trials", args.trials)
        .parameter("seed", args.seed)
        .parameter("field", args.field.as_str());
}

fn numeric_parameters(report: &mut RunReport, args: &VerifyArgs) {
    report
        .parameter("m", args.m as u64)
        .parameter("trials", args.trials)
        .parameter("prec", args.prec)
        .parameter("seed", args.seed);
}

/// Double faces commute after reindexing: dropping vector j then vector i
/// equals dropping vector i then vector j-1, for i < j.
fn suite_simplicial(args: &VerifyArgs, report: &mut RunReport) -> Result<(), CliError> {
    let configs: Vec<Configuration> = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(fail)?;
            let c: Configuration = serde_json::from_str(&text).map_err(fail)?;
            if c.len() < 3 {
                return Err(CliError("double faces need at least three vectors".to_string()));
            }
            report.parameter("m", c.m() as u64).parameter("config", path.display().to_string());
            if let Some(n) = c.simplicial_n() {
                report.parameter("n", n as u64);
            }
            vec![c]
        }
        None => {
            let field = parse_field(&args.field)?;
            if args.m + args.n + 1 < 3 {
                return Err(CliError(
                    "double faces need at least three vectors; raise --m or --n".to_string(),
                ));
            }
            exact_parameters(report, args);
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            (0..args.trials)
                .map(|_| random_configuration(field, args.m, args.m + args.n + 1, &mut rng))
                .collect::<Result<_, _>>()
                .map_err(fail)?
        }
    };
    let mut violations = 0u64;
    for c in &configs {
        for j in 1..c.len() {
            for i in 0..j {
                let lhs = c.face(j).and_then(|d| d.face(i));
                let rhs = c.face(i).and_then(|d| d.face(j - 1));
                match (lhs, rhs) {
                    (Ok(a), Ok(b)) if a == b => {}
                    _ => violations += 1,
                }
            }
        }
    }
    report.push(exact_check("face-face", configs.len() as u64, args.seed, violations));
    Ok(())
}

fn suite_sign_decomposition(args: &VerifyArgs, report: &mut RunReport) -> Result<(), CliError> {
    reject_config_flag(args.suite, &args.config)?;
    if args.n == 0 {
        return Err(CliError("the boundary needs chain degree at least 1; raise --n".to_string()));
    }
    let field = parse_field(&args.field)?;
    exact_parameters(report, args);
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut violations = 0u64;
    for _ in 0..args.trials {
        let chain = random_chain(field, args.m, args.n, 3, CoeffMode::Rational, &mut rng)?;
        let lhs = chain.alt().and_then(|a| a.boundary());
        let rhs = chain.boundary().and_then(|b| b.alt());
        match (lhs, rhs) {
            (Ok(a), Ok(b)) if a == b => {}
            _ => violations += 1,
        }
    }
    report.push(exact_check("alt-boundary-commute", args.trials, args.seed, violations));
    Ok(())
}

fn suite_homotopy(args: &VerifyArgs, report: &mut RunReport) -> Result<(), CliError> {
    reject_config_flag(args.suite, &args.config)?;
    if args.n < 2 {
        return Err(CliError(
            "the homotopy inverts boundaries of positive degree; use --n of at least 2".to_string(),
        ));
    }
    let field = parse_field(&args.field)?;
    exact_parameters(report, args);
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut violations = 0u64;
    for _ in 0..args.trials {
        let chain = random_chain(field, args.m, args.n, 3, CoeffMode::Rational, &mut rng)?;
        let z = chain.boundary().map_err(fail)?;
        let w = cone_homotopy(&z).map_err(fail)?;
        if w.boundary().map_err(fail)? != z {
            violations += 1;
        }
    }
    report.push(exact_check("cone-homotopy-inverts", args.trials, args.seed, violations));
    Ok(())
}

fn suite_five_term(args: &VerifyArgs, report: &mut RunReport) -> Result<(), CliError> {
    reject_config_flag(args.suite, &args.config)?;
    if args.m != 2 {
        return Err(CliError("the five-term suite is the m = 2 functional equation; use --m 2".to_string()));
    }
    let policy = PrecisionPolicy::new(args.prec).map_err(fail)?;
    numeric_parameters(report, args);
    let symmetrized = grassmann_d2(&policy);
    let raw = grassmann_d2_unsymmetrized(&policy);
    report.push(verify_functional_equation(&symmetrized, args.trials, &policy, args.seed).map_err(fail)?);
    report.push(
        verify_skew_symmetry(&symmetrized, "skew-symmetrized", args.trials, &policy, args.seed)
            .map_err(fail)?,
    );
    report.push(verify_skew_symmetry(&raw, "skew-raw", args.trials, &policy, args.seed).map_err(fail)?);
    Ok(())
}

fn suite_cocycle(args: &VerifyArgs, report: &mut RunReport) -> Result<(), CliError> {
    reject_config_flag(args.suite, &args.config)?;
    let policy = PrecisionPolicy::new(args.prec).map_err(fail)?;
    let bits = policy.working_bits();
    let f = match args.m {
        1 => grassmann_d1(&policy),
        2 => grassmann_d2(&policy),
        _ => return Err(CliError("cocycle checks ship for --m 1 and --m 2".to_string())),
    };
    let mut e = vec![Complex::zero(bits); args.m];
    e[0] = Complex::one(bits);
    numeric_parameters(report, args);
    report.push(verify_cocycle(&f, &e, args.trials, &policy, args.seed).map_err(fail)?);
    report.push(verify_base_change(&f, args.trials, &policy, args.seed).map_err(fail)?);
    Ok(())
}

/// The chart-change pullback of the logarithmic volume form equals a sign
/// times the coordinate volume form; the engine derives the sign per m.
fn suite_volform(args: &VerifyArgs, report: &mut RunReport) -> Result<(), CliError> {
    reject_config_flag(args.suite, &args.config)?;
    for m in 1..=4usize {
        let sign = volume_calibration(m).map_err(fail)?;
        report.parameter(&format!("epsilon_m{m}"), i64::from(sign));
        report.push(CheckReport {
            check: format!("volume-calibration-m{m}"),
            trials: 1,
            rejected: 0,
            max_residual: "0".to_string(),
            tolerance: "1".to_string(),
            pass: true,
            seed: args.seed,
        });
    }
    Ok(())
}

fn suite_symbols(args: &VerifyArgs, report: &mut RunReport) -> Result<(), CliError> {
    if args.m != 2 {
        return Err(CliError("symbol reduction ships for --m 2 only".to_string()));
    }
    if let Some(path) = &args.config {
        let text = fs::read_to_string(path).map_err(fail)?;
        let symbols: Vec<SuslinSymbol> = serde_json::from_str(&text).map_err(fail)?;
        if symbols.is_empty() {
            return Err(CliError("the symbol list is empty".to_string()));
        }
        report.parameter("m", 2u64).parameter("config", path.display().to_string());
        let mut sum = MilnorSymbolSum::zero(2);
        for s in &symbols {
            if s.m() != 2 {
                return Err(CliError(format!("expected 2-entry symbols, got m = {}", s.m())));
            }
            sum = sum.add(&s.to_milnor()).map_err(fail)?;
        }
        let invariant = km2_reduce(&sum).map_err(fail)?;
        let violations = u64::from(!invariant.is_trivial());
        report.push(exact_check("symbols-trivial", 1, args.seed, violations));
        return Ok(());
    }
    if args.field != "q" {
        return Err(CliError("the tame oracle reduces over q; drop --field".to_string()));
    }
    if args.n != 3 {
        return Err(CliError(
            "boundaries of degree-3 chains land in the Suslin degree; use --n 3".to_string(),
        ));
    }
    let field = parse_field(&args.field)?;
    exact_parameters(report, args);
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut violations = 0u64;
    for _ in 0..args.trials {
        let chain = random_chain(field, 2, 3, 3, CoeffMode::Integer, &mut rng)?
            .to_coinvariant()
            .map_err(fail)?;
        let image = milnor_image(&chain.boundary().map_err(fail)?).map_err(fail)?;
        if !km2_reduce(&image).map_err(fail)?.is_trivial() {
            violations += 1;
        }
    }
    report.push(exact_check("boundary-symbols-trivial", args.trials, args.seed, violations));
    Ok(())
}

#[derive(Serialize)]
struct EvalReport {
    schema: u32,
    command: String,
    parameters: serde_json::Value,
    value: serde_json::Value,
}

fn run_eval(args: EvalArgs, clock: Instant) -> Result<Outcome, CliError> {
    let policy = PrecisionPolicy::new(args.prec).map_err(fail)?;
    let bits = policy.working_bits();
    let digits = args.prec as usize;
    let z = parse_point(&args.x, bits)?;
    let need_order = || CliError(format!("--m is required for {}", args.what.name()));
    let value = match args.what {
        EvalTarget::Li => {
            let m = args.m.ok_or_else(need_order)?;
            let v = li(m, &z, bits).map_err(fail)?;
            json!({ "re": v.re.decimal(digits), "im": v.im.decimal(digits) })
        }
        EvalTarget::D1 => json!(bw_d1(&z, bits).map_err(fail)?.decimal(digits)),
        EvalTarget::D2 => json!(bw_d2(&z, bits).map_err(fail)?.decimal(digits)),
        EvalTarget::Dm => {
            let m = args.m.ok_or_else(need_order)?;
            json!(bw_dm(m, &z, bits).map_err(fail)?.decimal(digits))
        }
    };
    let mut parameters = serde_json::Map::new();
    if let Some(m) = args.m {
        parameters.insert("m".to_string(), json!(m as u64));
    }
    parameters.insert("prec".to_string(), json!(args.prec));
    parameters.insert(
        "x".to_string(),
        json!({ "re": z.re.decimal(digits), "im": z.im.decimal(digits) }),
    );
    let doc = EvalReport {
        schema: 1,
        command: format!("eval {}", args.what.name()),
        parameters: serde_json::Value::Object(parameters),
        value,
    };
    let json = serde_json::to_string_pretty(&doc).map_err(fail)? + "\n";
    Ok(Outcome { json, pass: true, out: None, wall_ms: clock.elapsed().as_millis() })
}

#[derive(Serialize)]
struct HomologyDoc {
    schema: u32,
    command: String,
    #[serde(flatten)]
    report: HomologyReport,
}

fn run_homology(args: HomologyArgs, clock: Instant) -> Result<Outcome, CliError> {
    let field = parse_field(&args.field)?;
    let report = grassmann_homology(field, args.m, args.max_n).map_err(fail)?;
    let doc = HomologyDoc { schema: 1, command: "homology".to_string(), report };
    let json = serde_json::to_string_pretty(&doc).map_err(fail)? + "\n";
    Ok(Outcome { json, pass: true, out: None, wall_ms: clock.elapsed().as_millis() })
}

#[derive(Serialize)]
struct ZetaDoc {
    schema: u32,
    command: String,
    disc: i64,
    prec: u32,
    lhs: String,
    rhs: String,
    residual: String,
    tolerance: String,
    pass: bool,
}

fn run_zeta_demo(args: ZetaDemoArgs, clock: Instant) -> Result<Outcome, CliError> {
    let policy = PrecisionPolicy::new(args.prec).map_err(fail)?;
    let demo = zeta_demo(args.disc, &policy).map_err(fail)?;
    let digits = args.prec as usize;
    let doc = ZetaDoc {
        schema: 1,
        command: "zeta-demo".to_string(),
        disc: demo.discriminant,
        prec: args.prec,
        lhs: demo.lhs.decimal(digits),
        rhs: demo.rhs.decimal(digits),
        residual: demo.residual.decimal(digits),
        tolerance: demo.tolerance.decimal(digits),
        pass: demo.pass,
    };
    let json = serde_json::to_string_pretty(&doc).map_err(fail)? + "\n";
    Ok(Outcome { json, pass: demo.pass, out: None, wall_ms: clock.elapsed().as_millis() })
}

fn parse_point(s: &str, bits: usize) -> Result<Complex, CliError> {
    let bad = || CliError(format!("cannot parse point {s:?}; use \"a+bi\" or {{\"re\": ..., \"im\": ...}}"));
    let t = s.trim();
    if t.starts_with('{') {
        let v: serde_json::Value = serde_json::from_str(t).map_err(|_| bad())?;
        let part = |key: &str| match &v[key] {
            serde_json::Value::Null => Ok(Real::zero(bits)),
            serde_json::Value::String(text) => {
                let text = text.trim();
                if !valid_decimal(text) {
                    return Err(bad());
                }
                let text = text.strip_prefix('+').unwrap_or(text);
                Real::from_decimal_str(text, bits).ok_or_else(bad)
            }
            serde_json::Value::Number(n) => Real::from_decimal_str(&n.to_string(), bits).ok_or_else(bad),
            _ => Err(bad()),
        };
        return Ok(Complex::new(part("re")?, part("im")?));
    }
    let (re_token, im_token) = split_rectangular(t).ok_or_else(bad)?;
    let parse_part = |token: &str| {
        if !valid_decimal(token) {
            return Err(bad());
        }
        let token = token.strip_prefix('+').unwrap_or(token);
        Real::from_decimal_str(token, bits).ok_or_else(bad)
    };
    Ok(Complex::new(parse_part(&re_token)?, parse_part(&im_token)?))
}

/// Strict decimal shape: the underlying parser tolerates trailing junk, so
/// the token is vetted before it gets there.
fn valid_decimal(token: &str) -> bool {
    let rest = token.strip_prefix(['+', '-']).unwrap_or(token);
    let (mantissa, exponent) = match rest.split_once(['e', 'E']) {
        Some((m, e)) => (m, Some(e)),
        None => (rest, None),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    let mantissa_ok = match mantissa.split_once('.') {
        Some((int, frac)) => {
            (int.is_empty() || digits(int))
                && (frac.is_empty() || digits(frac))
                && !(int.is_empty() && frac.is_empty())
        }
        None => digits(mantissa),
    };
    let exponent_ok = match exponent {
        Some(e) => digits(e.strip_prefix(['+', '-']).unwrap_or(e)),
        None => true,
    };
    mantissa_ok && exponent_ok
}

/// Splits "a+bi" into real and imaginary tokens. The split sign is the last
/// +/- that is neither leading nor an exponent sign; a bare trailing i means
/// a unit coefficient.
fn split_rectangular(t: &str) -> Option<(String, String)> {
    let body = match t.strip_suffix('i') {
        Some(body) => body,
        None => return Some((t.to_string(), "0".to_string())),
    };
    let chars: Vec<char> = body.chars().collect();
    let split = (1..chars.len())
        .rev()
        .find(|&k| (chars[k] == '+' || chars[k] == '-') && chars[k - 1] != 'e' && chars[k - 1] != 'E');
    let unit = |sign: &str| match sign {
        "" | "+" => "1".to_string(),
        "-" => "-1".to_string(),
        other => other.to_string(),
    };
    match split {
        Some(k) => {
            let re: String = chars[..k].iter().collect();
            let im: String = chars[k..].iter().collect();
            Some((re, unit(&im)))
        }
        None => Some(("0".to_string(), unit(body))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BITS: usize = 96;

    fn point(s: &str) -> (String, String) {
        let z = parse_point(s, BITS).unwrap_or_else(|e| panic!("{s:?}: {e}"));
        (z.re.decimal(6), z.im.decimal(6))
    }

    #[test]
    fn rectangular_points_parse() {
        assert_eq!(point("0+1i"), ("0".to_string(), "1.00000e0".to_string()));
        assert_eq!(point("1+0i"), ("1.00000e0".to_string(), "0".to_string()));
        assert_eq!(point("-1.5-2i"), ("-1.50000e0".to_string(), "-2.00000e0".to_string()));
        assert_eq!(point("2.5e-1+1e-2i"), ("2.50000e-1".to_string(), "1.00000e-2".to_string()));
        assert_eq!(point("3"), ("3.00000e0".to_string(), "0".to_string()));
        assert_eq!(point("-i"), ("0".to_string(), "-1.00000e0".to_string()));
        assert_eq!(point("2i"), ("0".to_string(), "2.00000e0".to_string()));
    }

    #[test]
    fn json_points_parse() {
        assert_eq!(point(r#"{"re": "0.25", "im": "-1"}"#), point("0.25-1i"));
        assert_eq!(point(r#"{"re": 0.5}"#), point("0.5"));
    }

    #[test]
    fn junk_points_are_rejected() {
        for s in ["", "1+2j", "abc", "1++2i", "{\"re\": []}", "--1"] {
            assert!(parse_point(s, BITS).is_err(), "{s:?} parsed");
        }
    }

    #[test]
    fn field_strings_parse() {
        assert_eq!(parse_field("q").unwrap(), FieldDescriptor::rational());
        assert_eq!(parse_field("fp:5").unwrap(), FieldDescriptor::prime(5).unwrap());
        assert!(parse_field("fp:6").is_err());
        assert!(parse_field("r").is_err());
    }
}
