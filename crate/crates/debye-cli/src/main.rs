//! Command-line front end for the Debye-function library.
//!
//! Subcommands: `eval` (one D_N(alpha, X) by any method), `sweep`
//! (temperature grid of U and c_V with asymptotic comparison curves),
//! `brackets` (the bracket-series engine on the Debye integral), and
//! `selftest` (the acceptance grid). Output is CSV by default or JSON with
//! `--format json`; exit codes are 0 success, 2 domain error, 3 convergence
//! error, 4 I/O error.

mod table;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use debye::brackets::{
    bracket_series_to_dto, candidate_to_dto, classify_debye_candidates, debye_bracket_series,
    evaluate_candidate,
};
use debye::thermo::{asymptotic_u_and_cv, heat_capacity, internal_energy, Regime, SolidModel};
use debye::{
    debye_bernoulli_series, debye_dubinov_polylog, debye_large_x, debye_new_polylog,
    debye_oracle, debye_series_s1, debye_series_s2, recommend_method, DebyeError,
    DebyeEvaluation, DebyeParams, Method,
};

use table::OutputTable;

const BOLTZMANN_SI: f64 = 1.380_649e-23; // J/K

#[derive(Parser)]
#[command(
    name = "debye",
    version,
    about = "Debye functions D_N(alpha, X) and Debye-model thermodynamics",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate D_N(alpha, X) with a chosen representation.
    Eval(EvalArgs),
    /// Sweep a temperature grid and emit U, c_V and asymptotic curves.
    Sweep(SweepArgs),
    /// Run the bracket-series engine on the Debye integral and print every
    /// subset classification as JSON.
    Brackets(BracketsArgs),
    /// Run the acceptance grid and print one pass/fail line per criterion.
    Selftest,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    /// Pick the convergent closed form for the given parameters.
    Auto,
    Oracle,
    Bernoulli,
    #[value(alias = "new_polylog")]
    NewPolylog,
    Dubinov,
    #[value(alias = "dubinov_continued")]
    DubinovContinued,
    S1,
    S2,
    #[value(alias = "large_x")]
    LargeX,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScaleArg {
    Linear,
    Log,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format for the table.
    #[arg(long, value_enum, default_value = "csv", env = "DEBYE_FORMAT")]
    format: FormatArg,
    /// Write to a file instead of stdout.
    #[arg(long, env = "DEBYE_OUT")]
    out: Option<PathBuf>,
    /// Omit the metadata block (including the timestamp), making identical
    /// invocations byte-identical.
    #[arg(long)]
    no_meta: bool,
}

#[derive(Args)]
struct EvalArgs {
    /// Dimension N of the Debye function.
    #[arg(long = "N", env = "DEBYE_N")]
    n: u32,
    /// Denominator shift alpha.
    #[arg(long, env = "DEBYE_ALPHA")]
    alpha: f64,
    /// Upper integration limit X.
    #[arg(long = "X", env = "DEBYE_X")]
    x: f64,
    #[arg(long, value_enum, default_value = "auto", env = "DEBYE_METHOD")]
    method: MethodArg,
    /// Relative tolerance for tolerance-driven methods.
    #[arg(long, default_value_t = 1e-10, env = "DEBYE_TOL")]
    tol: f64,
    /// Per-index term cap for the direct double series.
    #[arg(long, default_value_t = 2000, env = "DEBYE_MAX_TERMS")]
    max_terms: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SweepArgs {
    /// Debye temperature Theta_D (same unit as the temperature grid).
    #[arg(long, env = "DEBYE_THETA_D")]
    theta_d: f64,
    #[arg(long, env = "DEBYE_T_MIN")]
    t_min: f64,
    #[arg(long, env = "DEBYE_T_MAX")]
    t_max: f64,
    #[arg(long, default_value_t = 50, env = "DEBYE_POINTS")]
    points: usize,
    #[arg(long, value_enum, default_value = "log", env = "DEBYE_SCALE")]
    scale: ScaleArg,
    /// Particle count entering U and c_V.
    #[arg(long, default_value_t = 1.0, env = "DEBYE_N_PARTICLES")]
    n_particles: f64,
    /// Boltzmann constant in the caller's units (natural units by default).
    #[arg(long, default_value_t = 1.0, env = "DEBYE_K_B", conflicts_with = "si")]
    k_b: f64,
    /// Use the SI Boltzmann constant (J/K).
    #[arg(long)]
    si: bool,
    /// Emit NaN rows (with a status flag column) instead of aborting when a
    /// row fails.
    #[arg(long)]
    lenient: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct BracketsArgs {
    /// Dimension N substituted into the symbolic enumeration.
    #[arg(long = "N", env = "DEBYE_N")]
    n: u32,
    #[arg(long, env = "DEBYE_ALPHA")]
    alpha: f64,
    #[arg(long = "X", env = "DEBYE_X")]
    x: f64,
    /// Per-index term cap when summing convergent candidates.
    #[arg(long, default_value_t = 2000, env = "DEBYE_MAX_TERMS")]
    max_terms: usize,
    /// Write to a file instead of stdout.
    #[arg(long, env = "DEBYE_OUT")]
    out: Option<PathBuf>,
}

fn exit_code_for(err: &DebyeError) -> u8 {
    match err {
        DebyeError::Domain(_) | DebyeError::SingularBand { .. } => 2,
        DebyeError::Convergence(_) => 3,
        DebyeError::ContinuationResidual { .. } => 3,
        DebyeError::Special(s) => match s {
            debye::special::SpecialError::Convergence { .. } => 3,
            _ => 2,
        },
        DebyeError::Quadrature(q) => match q {
            debye::quad::QuadError::ToleranceNotReached { .. } => 3,
            debye::quad::QuadError::BadRequest(_) => 2,
        },
    }
}

fn emit(table: &OutputTable, output: &OutputArgs) -> Result<(), std::io::Error> {
    let mut table = table.clone();
    if output.no_meta {
        table.metadata = BTreeMap::new();
    } else {
        let ts = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs().to_string())
            .unwrap_or_default();
        table.meta("generated_at_unix", ts);
        table.meta("tool_version", env!("CARGO_PKG_VERSION"));
    }
    let text = match output.format {
        FormatArg::Csv => table.to_csv(),
        FormatArg::Json => {
            let mut s = table.to_json();
            s.push('\n');
            s
        }
    };
    match &output.out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn run_eval(args: &EvalArgs) -> Result<OutputTable, DebyeError> {
    let p = DebyeParams::new(args.n, args.alpha, args.x)?;
    let method = match args.method {
        MethodArg::Auto => recommend_method(&p)?,
        MethodArg::Oracle => Method::Oracle,
        MethodArg::Bernoulli => Method::BernoulliSeries,
        MethodArg::NewPolylog => Method::NewPolylog,
        MethodArg::Dubinov | MethodArg::DubinovContinued => Method::DubinovPolylog,
        MethodArg::S1 => Method::S1Direct,
        MethodArg::S2 => Method::S2Direct,
        MethodArg::LargeX => Method::LargeXAsymptotic,
    };
    let eval: DebyeEvaluation<f64> = match method {
        Method::Oracle => debye_oracle(&p, args.tol.max(1e-13))?,
        Method::BernoulliSeries => {
            if args.alpha != 1.0 {
                return Err(DebyeError::Domain(
                    "the Bernoulli series evaluates D_N(X) at alpha = 1 only".into(),
                ));
            }
            debye_bernoulli_series(args.n, args.x, args.tol)?
        }
        Method::NewPolylog => debye_new_polylog(&p)?,
        Method::DubinovPolylog => {
            debye_dubinov_polylog(&p, args.method == MethodArg::DubinovContinued)?
        }
        Method::S1Direct => debye_series_s1(&p, args.max_terms)?,
        Method::S2Direct => debye_series_s2(&p, args.max_terms)?,
        Method::LargeXAsymptotic => debye_large_x(args.n, args.x)?,
    };
    let mut t = OutputTable::new(vec![
        ("value", ""),
        ("err_estimate", ""),
        ("terms_used", ""),
    ]);
    t.push_row(vec![eval.value, eval.err_estimate, eval.terms_used as f64]);
    t.meta("method", eval.method.tag());
    t.meta("N", args.n.to_string());
    t.meta("alpha", OutputTable::format_value(args.alpha));
    t.meta("X", OutputTable::format_value(args.x));
    t.meta("tol", OutputTable::format_value(args.tol));
    Ok(t)
}

fn run_sweep(args: &SweepArgs) -> Result<OutputTable, DebyeError> {
    if !(args.t_min > 0.0 && args.t_min < args.t_max) {
        return Err(DebyeError::Domain(format!(
            "need 0 < t_min < t_max, got [{}, {}]",
            args.t_min, args.t_max
        )));
    }
    if args.points < 2 {
        return Err(DebyeError::Domain("points must be >= 2".into()));
    }
    let k_b = if args.si { BOLTZMANN_SI } else { args.k_b };
    let model = SolidModel::new(args.n_particles, k_b, args.theta_d)?;
    let mut columns = vec![
        ("T", "Theta_D units"),
        ("u", ""),
        ("U", "energy"),
        ("c_V", "energy/T"),
        ("cv_over_3NkB", ""),
        ("U_high_T_asym", "energy"),
        ("cv_high_T_asym", "energy/T"),
        ("U_low_T_asym", "energy"),
        ("cv_low_T_asym", "energy/T"),
    ];
    if args.lenient {
        columns.push(("status", ""));
    }
    let mut t = OutputTable::new(columns);
    for i in 0..args.points {
        let f = i as f64 / (args.points - 1) as f64;
        let temp = match args.scale {
            ScaleArg::Linear => args.t_min + (args.t_max - args.t_min) * f,
            ScaleArg::Log => args.t_min * (args.t_max / args.t_min).powf(f),
        };
        let row = (|| -> Result<Vec<f64>, DebyeError> {
            let u = internal_energy(&model, temp)?;
            let cv = heat_capacity(&model, temp)?;
            let (uh, cvh) = asymptotic_u_and_cv(&model, temp, Regime::HighT)?;
            let (ul, cvl) = asymptotic_u_and_cv(&model, temp, Regime::LowT)?;
            Ok(vec![
                temp,
                model.theta_d / temp,
                u,
                cv,
                cv / (3.0 * model.n_particles * model.k_b),
                uh,
                cvh,
                ul,
                cvl,
            ])
        })();
        match row {
            Ok(mut r) => {
                if args.lenient {
                    r.push(0.0);
                }
                t.push_row(r);
            }
            Err(e) => {
                if args.lenient {
                    let mut r = vec![temp];
                    r.extend(std::iter::repeat_n(f64::NAN, 8));
                    r.push(1.0);
                    t.push_row(r);
                } else {
                    return Err(e);
                }
            }
        }
    }
    t.meta("theta_d", OutputTable::format_value(args.theta_d));
    t.meta("n_particles", OutputTable::format_value(args.n_particles));
    t.meta("k_b", OutputTable::format_value(k_b));
    t.meta(
        "method.U",
        "bernoulli_series below u = 2, new_polylog above (auto-routed)",
    );
    t.meta(
        "method.c_V",
        "bernoulli_series below u = 2, e^-u polylogarithm closed form above",
    );
    t.meta("method.asymptotics", "truncated high-T/low-T expansions");
    Ok(t)
}

fn run_brackets(args: &BracketsArgs) -> Result<String, DebyeError> {
    let series = debye_bracket_series();
    let (labeled, singular) = classify_debye_candidates(&series)
        .map_err(|e| DebyeError::Domain(e.to_string()))?;
    let mut subsets = Vec::new();
    for l in &labeled {
        let dto = candidate_to_dto(&l.candidate);
        let evaluation = if l.candidate.validity.is_valid() {
            match evaluate_candidate(
                &l.candidate,
                &series,
                args.n as i64,
                args.alpha,
                args.x,
                args.max_terms,
                1e-10,
            ) {
                Ok(e) => serde_json::json!({
                    "value": e.value,
                    "err_estimate": e.err_estimate,
                    "terms_used": e.terms_used,
                    "skipped_poles": e.skipped_poles,
                }),
                Err(e) => serde_json::json!({ "error": e.to_string() }),
            }
        } else {
            serde_json::Value::Null
        };
        subsets.push(serde_json::json!({
            "label": l.label.to_string(),
            "candidate": dto,
            "convergence_domain": l.label.convergence_domain(),
            "evaluation": evaluation,
        }));
    }
    for c in &singular {
        subsets.push(serde_json::json!({
            "label": serde_json::Value::Null,
            "candidate": candidate_to_dto(c),
            "convergence_domain": serde_json::Value::Null,
            "evaluation": serde_json::Value::Null,
        }));
    }
    let doc = serde_json::json!({
        "dimension": args.n,
        "alpha": args.alpha,
        "x": args.x,
        "series": bracket_series_to_dto(&series),
        "subset_count": subsets.len(),
        "structured_candidates": labeled.len(),
        "subsets": subsets,
    });
    Ok(serde_json::to_string_pretty(&doc).expect("document serializes") + "\n")
}

fn run_selftest() -> u8 {
    let reports = debye::selftest::run_all();
    let mut all = true;
    for r in &reports {
        println!(
            "criterion {:>2} [{}] {}: {}",
            r.id,
            if r.passed { "pass" } else { "FAIL" },
            r.name,
            r.detail
        );
        all &= r.passed;
    }
    if all {
        println!("all {} criteria passed", reports.len());
        0
    } else {
        1
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match &cli.command {
        Command::Eval(args) => match run_eval(args) {
            Ok(t) => match emit(&t, &args.output) {
                Ok(()) => 0,
                Err(e) => {
                    eprintln!("io error: {e}");
                    4
                }
            },
            Err(e) => {
                eprintln!("error: {e}");
                exit_code_for(&e)
            }
        },
        Command::Sweep(args) => match run_sweep(args) {
            Ok(t) => match emit(&t, &args.output) {
                Ok(()) => 0,
                Err(e) => {
                    eprintln!("io error: {e}");
                    4
                }
            },
            Err(e) => {
                eprintln!("error: {e}");
                exit_code_for(&e)
            }
        },
        Command::Brackets(args) => match run_brackets(args) {
            Ok(doc) => {
                let io_result = match &args.out {
                    Some(path) => std::fs::write(path, &doc),
                    None => std::io::stdout().write_all(doc.as_bytes()),
                };
                match io_result {
                    Ok(()) => 0,
                    Err(e) => {
                        eprintln!("io error: {e}");
                        4
                    }
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                exit_code_for(&e)
            }
        },
        Command::Selftest => run_selftest(),
    };
    ExitCode::from(code)
}
