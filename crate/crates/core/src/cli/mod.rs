//! Command-line front end: argument handling, dispatch and reports.
//!
//! Every command produces a text report and a JSON report with the same
//! content. Exit codes: 0 on success, 2 when an input violates a
//! precondition (the report names the error), 1 on internal failure.

mod parse;

use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::coeff::{format_rat, parse_rat, Rat};
use crate::eulerint::{integrate, parse_strata};
use crate::localstd::{milnor_number, GenericMode};
use crate::merogerm::{
    chi_c_fibre_with, generic_value, is_typical_with, special_values_with, FibreReport, FibreValue, MeroGerm,
};
use crate::newton::{is_convenient, newton_number, NewtonDiagram};
use crate::planecurve::{verify_formula1, verify_theorem4_curves, CurveSingularity};

pub use parse::{infer_variables, parse_expr, parse_poly, print_poly, Expr, ParseError, RESERVED};

/// Environment variable holding the seed for `--mode sample`.
pub const SEED_VAR: &str = "MEROTOP_SEED";

#[derive(Debug, Parser)]
#[command(name = "merotop", version, about = "Exact Milnor numbers and Euler characteristics of Milnor fibres")]
struct Cli {
    /// Print one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// How generic members of a pencil are handled.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Param)]
    mode: Mode,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Exact computation over Q(t).
    Param,
    /// Rational samples of t, cross-checked.
    Sample,
}

#[derive(Debug, Clone, clap::Args)]
struct GermArgs {
    /// Numerator P.
    #[arg(long)]
    num: String,
    /// Denominator Q.
    #[arg(long)]
    den: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Milnor number of an isolated singularity at the origin.
    Milnor { expr: String },
    /// Newton number of a convenient polynomial.
    NewtonMu { expr: String },
    /// Euler characteristic of the zero fibre of P/Q.
    Chi0 {
        #[command(flatten)]
        germ: GermArgs,
    },
    /// Euler characteristic of the fibre of P/Q over a value.
    Chic {
        #[command(flatten)]
        germ: GermArgs,
        /// A rational number or `inf`.
        #[arg(long, allow_hyphen_values = true)]
        value: String,
    },
    /// Whether a value of P/Q is typical.
    Typical {
        #[command(flatten)]
        germ: GermArgs,
        #[arg(long, allow_hyphen_values = true)]
        value: String,
    },
    /// Candidate atypical values of P/Q, each examined.
    SpecialValues {
        #[command(flatten)]
        germ: GermArgs,
    },
    /// Euler characteristic of a generic fibre of P/Q.
    GenericChi {
        #[command(flatten)]
        germ: GermArgs,
    },
    /// Both sides of the level-set formula for P(x, y) at t0.
    Formula1 {
        expr: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        t0: String,
    },
    /// Both sides of the curve formula for forms s, s' in x, y, z.
    Theorem4 {
        #[arg(long)]
        s: String,
        #[arg(long)]
        sprime: String,
    },
    /// Integral of a constructible function given by a strata file.
    EulerIntegrate {
        #[arg(long)]
        strata: String,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Milnor { .. } => "milnor",
            Command::NewtonMu { .. } => "newton-mu",
            Command::Chi0 { .. } => "chi0",
            Command::Chic { .. } => "chic",
            Command::Typical { .. } => "typical",
            Command::SpecialValues { .. } => "special-values",
            Command::GenericChi { .. } => "generic-chi",
            Command::Formula1 { .. } => "formula1",
            Command::Theorem4 { .. } => "theorem4",
            Command::EulerIntegrate { .. } => "euler-integrate",
        }
    }

    fn inputs(&self) -> Map<String, Value> {
        let mut m = Map::new();
        let mut put = |k: &str, v: &String| {
            m.insert(k.into(), Value::String(v.clone()));
        };
        match self {
            Command::Milnor { expr } | Command::NewtonMu { expr } => put("expr", expr),
            Command::Chi0 { germ } | Command::SpecialValues { germ } | Command::GenericChi { germ } => {
                put("num", &germ.num);
                put("den", &germ.den);
            }
            Command::Chic { germ, value } | Command::Typical { germ, value } => {
                put("num", &germ.num);
                put("den", &germ.den);
                put("value", value);
            }
            Command::Formula1 { expr, t0 } => {
                put("expr", expr);
                put("t0", t0);
            }
            Command::Theorem4 { s, sprime } => {
                put("s", s);
                put("sprime", sprime);
            }
            Command::EulerIntegrate { strata } => put("strata", strata),
        }
        m
    }
}

/// What a command run produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Failure {
    code: String,
    message: String,
}

impl Failure {
    // the code is the error's variant name; wrapped germ errors report the
    // inner name
    fn from_error<E: fmt::Debug + fmt::Display>(e: E) -> Self {
        let debug = format!("{e:?}");
        let mut idents = debug.split(|c: char| !c.is_alphanumeric()).filter(|s| !s.is_empty());
        let mut code = idents.next().unwrap_or("Error");
        if code == "Germ" {
            code = idents.next().unwrap_or(code);
        }
        Failure {
            code: code.to_string(),
            message: e.to_string(),
        }
    }

    fn invalid(code: &str, message: impl Into<String>) -> Self {
        Failure {
            code: code.into(),
            message: message.into(),
        }
    }
}

struct Report {
    result: Map<String, Value>,
    text: String,
}

fn rat_value(r: &Rat) -> Value {
    Value::String(format_rat(r))
}

fn parse_value(text: &str) -> Result<FibreValue, Failure> {
    if text.trim() == "inf" {
        return Ok(FibreValue::Infinity);
    }
    parse_rat(text)
        .map(FibreValue::Finite)
        .ok_or_else(|| Failure::invalid("InvalidValue", format!("expected a rational number or inf, got {text:?}")))
}

fn germ_from(args: &GermArgs) -> Result<MeroGerm, Failure> {
    let vars = infer_variables(&[&args.num, &args.den], 1).map_err(Failure::from_error)?;
    let p = parse_poly(&args.num, &vars).map_err(Failure::from_error)?;
    let q = parse_poly(&args.den, &vars).map_err(Failure::from_error)?;
    MeroGerm::new(p, q).map_err(Failure::from_error)
}

fn variables_value(vars: &[char]) -> Value {
    Value::Array(vars.iter().map(|c| Value::String(c.to_string())).collect())
}

fn fibre_fields(r: &FibreReport) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("value".into(), Value::String(r.value.to_string()));
    m.insert("chi".into(), json!(r.chi));
    m.insert("mu_special".into(), json!(r.mu_special));
    m.insert("mu_generic".into(), json!(r.mu_generic));
    m.insert("typical".into(), Value::String(r.typical.to_string()));
    m
}

fn singularity_value(s: &CurveSingularity) -> Value {
    json!({"location": s.location.to_string(), "mu": s.mu, "at_infinity": s.at_infinity})
}

fn execute(command: &Command, mode: GenericMode) -> Result<Report, Failure> {
    match command {
        Command::Milnor { expr } => {
            let vars = infer_variables(&[expr], 1).map_err(Failure::from_error)?;
            let p = parse_poly(expr, &vars).map_err(Failure::from_error)?;
            let mu = milnor_number(&p).map_err(Failure::from_error)?;
            let mut result = Map::new();
            result.insert("mu".into(), json!(mu));
            result.insert("variables".into(), variables_value(&vars));
            Ok(Report {
                result,
                text: format!("mu = {mu}\n"),
            })
        }
        Command::NewtonMu { expr } => {
            let vars = infer_variables(&[expr], 1).map_err(Failure::from_error)?;
            let p = parse_poly(expr, &vars).map_err(Failure::from_error)?;
            let d = NewtonDiagram::of_poly(&p);
            let nu = newton_number(&d).map_err(Failure::from_error)?;
            let mut result = Map::new();
            result.insert("newton_number".into(), json!(nu));
            result.insert("convenient".into(), json!(is_convenient(&d).map_err(Failure::from_error)?));
            result.insert("variables".into(), variables_value(&vars));
            Ok(Report {
                result,
                text: format!("newton number = {nu}\n"),
            })
        }
        Command::Chi0 { germ } => fibre_command(germ, "0", mode),
        Command::Chic { germ, value } => fibre_command(germ, value, mode),
        Command::Typical { germ, value } => {
            let f = germ_from(germ)?;
            let c = parse_value(value)?;
            let typical = is_typical_with(&f, &c, mode).map_err(Failure::from_error)?;
            let r = chi_c_fibre_with(&f, &c, mode).map_err(Failure::from_error)?;
            let mut result = fibre_fields(&r);
            result.insert("is_typical".into(), json!(typical));
            let verdict = if typical { "typical" } else { "atypical" };
            Ok(Report {
                result,
                text: format!("{c} is {verdict} (chi = {})\n", r.chi),
            })
        }
        Command::SpecialValues { germ } => {
            let f = germ_from(germ)?;
            let sv = special_values_with(&f, mode).map_err(Failure::from_error)?;
            let mut text = format!("mu generic = {}\n", sv.mu_generic);
            let mut candidates = Vec::new();
            for c in &sv.candidates {
                let mut m = Map::new();
                m.insert("value".into(), Value::String(c.value.to_string()));
                m.insert("verdict".into(), Value::String(c.verdict.to_string()));
                m.insert("chi".into(), c.report.as_ref().map_or(Value::Null, |r| json!(r.chi)));
                m.insert(
                    "reason".into(),
                    c.reason.as_ref().map_or(Value::Null, |e| {
                        let f = Failure::from_error(e);
                        json!({"code": f.code, "message": f.message})
                    }),
                );
                candidates.push(Value::Object(m));
                match (&c.report, &c.reason) {
                    (Some(r), _) => text.push_str(&format!("{}: {} (chi = {})\n", c.value, c.verdict, r.chi)),
                    (None, Some(e)) => text.push_str(&format!("{}: {} ({e})\n", c.value, c.verdict)),
                    (None, None) => text.push_str(&format!("{}: {}\n", c.value, c.verdict)),
                }
            }
            let locus = sv.irrational_locus.display_in("c");
            if !sv.irrational_locus.is_one() {
                text.push_str(&format!("unexamined irrational candidates: roots of {locus}\n"));
            }
            let mut result = Map::new();
            result.insert("mu_generic".into(), json!(sv.mu_generic));
            result.insert("candidates".into(), Value::Array(candidates));
            result.insert("irrational_locus".into(), Value::String(locus));
            Ok(Report { result, text })
        }
        Command::GenericChi { germ } => {
            let f = germ_from(germ)?;
            let sv = special_values_with(&f, mode).map_err(Failure::from_error)?;
            let c = generic_value(&sv);
            let r = chi_c_fibre_with(&f, &c, mode).map_err(Failure::from_error)?;
            let text = format!("chi = {} (at {c})\n", r.chi);
            Ok(Report {
                result: fibre_fields(&r),
                text,
            })
        }
        Command::Formula1 { expr, t0 } => {
            let p = parse_poly(expr, &['x', 'y']).map_err(Failure::from_error)?;
            let t0 = parse_rat(t0)
                .ok_or_else(|| Failure::invalid("InvalidValue", format!("expected a rational t0, got {t0:?}")))?;
            let r = verify_formula1(&p, &t0).map_err(Failure::from_error)?;
            let infinity: Vec<Value> = r
                .infinity
                .iter()
                .map(|j| json!({"point": j.point.to_string(), "mu_special": j.mu_special, "mu_generic": j.mu_generic}))
                .collect();
            let mut result = Map::new();
            result.insert("lhs".into(), json!(r.lhs));
            result.insert("rhs_signed".into(), json!(r.rhs_signed));
            result.insert("rhs_abs".into(), json!(r.rhs_abs));
            result.insert(
                "matching_sign_exponent".into(),
                Value::String(r.matching_sign_exponent.to_string()),
            );
            result.insert("chi_special".into(), json!(r.chi_special));
            result.insert("chi_generic".into(), json!(r.chi_generic));
            result.insert("t_generic".into(), rat_value(&r.t_generic));
            result.insert(
                "affine_singularities".into(),
                Value::Array(r.affine_singularities.iter().map(singularity_value).collect()),
            );
            result.insert("infinity".into(), Value::Array(infinity));
            result.insert("points_at_infinity".into(), json!(r.points_at_infinity));
            let text = format!(
                "lhs = chi(V_t) - chi(V_t0) = {} - {} = {}\nrhs sum = {}\n|lhs| = |rhs|: {}\nsign exponent: {}\n",
                r.chi_generic,
                r.chi_special,
                r.lhs,
                r.rhs_signed,
                r.lhs.abs() == r.rhs_abs,
                r.matching_sign_exponent
            );
            Ok(Report { result, text })
        }
        Command::Theorem4 { s, sprime } => {
            let xyz = ['x', 'y', 'z'];
            let f = parse_poly(s, &xyz).map_err(Failure::from_error)?;
            let g = parse_poly(sprime, &xyz).map_err(Failure::from_error)?;
            let r = verify_theorem4_curves(&f, &g).map_err(Failure::from_error)?;
            let singular: Vec<Value> = r
                .singular_off
                .iter()
                .map(|(s, chi)| {
                    let mut v = singularity_value(s);
                    v["chi"] = json!(chi);
                    v
                })
                .collect();
            let intersections: Vec<Value> = r
                .intersections
                .iter()
                .map(|p| {
                    json!({"point": p.point.to_string(), "multiplicity": p.multiplicity,
                           "transversal": p.transversal, "chi0": p.chi0})
                })
                .collect();
            let mut result = Map::new();
            result.insert("lhs".into(), json!(r.lhs));
            result.insert("rhs".into(), json!(r.rhs));
            result.insert("agree".into(), json!(r.agree));
            result.insert("chi_z".into(), json!(r.chi_z));
            result.insert("chi_z_prime".into(), json!(r.chi_z_prime));
            result.insert("rhs_transversal".into(), json!(r.rhs_transversal));
            result.insert("singular_off".into(), Value::Array(singular));
            result.insert("intersections".into(), Value::Array(intersections));
            let text = format!(
                "lhs = chi(Z') - chi(Z) = {} - {} = {}\nrhs = {}\nagree: {}\n",
                r.chi_z_prime, r.chi_z, r.lhs, r.rhs, r.agree
            );
            Ok(Report { result, text })
        }
        Command::EulerIntegrate { strata } => {
            let content = std::fs::read_to_string(strata)
                .map_err(|e| Failure::invalid("UnreadableFile", format!("{strata}: {e}")))?;
            let (s, f) = parse_strata(&content).map_err(Failure::from_error)?;
            let value = integrate(&f, &s).map_err(Failure::from_error)?;
            let mut result = Map::new();
            result.insert("integral".into(), json!(value));
            result.insert("strata".into(), json!(s.len()));
            Ok(Report {
                result,
                text: format!("integral = {value}\n"),
            })
        }
    }
}

fn fibre_command(germ: &GermArgs, value: &str, mode: GenericMode) -> Result<Report, Failure> {
    let f = germ_from(germ)?;
    let c = parse_value(value)?;
    let r = chi_c_fibre_with(&f, &c, mode).map_err(Failure::from_error)?;
    let text = format!("chi = {}\n", r.chi);
    Ok(Report {
        result: fibre_fields(&r),
        text,
    })
}

fn seed_from_env() -> Result<u64, Failure> {
    match std::env::var(SEED_VAR) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Failure::invalid("InvalidSeed", format!("{SEED_VAR} must be an unsigned integer, got {s:?}"))),
        Err(_) => Ok(0),
    }
}

fn json_document(command: &str, inputs: Map<String, Value>, result: Option<Map<String, Value>>, errors: &[Failure]) -> String {
    let errors: Vec<Value> = errors
        .iter()
        .map(|f| json!({"code": f.code, "message": f.message}))
        .collect();
    let doc = json!({
        "command": command,
        "inputs": inputs,
        "result": result.map_or(Value::Null, Value::Object),
        "errors": errors,
        "version": env!("CARGO_PKG_VERSION"),
    });
    format!("{doc}\n")
}

/// Runs one command line; `args` starts with the program name.
pub fn run_command<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            return if code == 0 {
                Outcome {
                    exit_code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    exit_code: 2,
                    stdout: String::new(),
                    stderr: rendered,
                }
            };
        }
    };
    let name = cli.command.name();
    let inputs = cli.command.inputs();
    let outcome = seed_from_env()
        .map_err(|f| (2, f))
        .and_then(|seed| {
            let mode = match cli.mode {
                Mode::Param => GenericMode::Parametric,
                Mode::Sample => GenericMode::Sampled { seed },
            };
            match catch_unwind(AssertUnwindSafe(|| execute(&cli.command, mode))) {
                Ok(r) => r.map_err(|f| (2, f)),
                Err(panic) => {
                    let message = panic
                        .downcast_ref::<String>()
                        .cloned()
                        .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                        .unwrap_or_else(|| "unknown failure".into());
                    Err((1, Failure::invalid("InternalError", message)))
                }
            }
        });
    render(name, inputs, cli.json, outcome)
}

fn render(name: &str, inputs: Map<String, Value>, as_json: bool, outcome: Result<Report, (i32, Failure)>) -> Outcome {
    match outcome {
        Ok(report) => Outcome {
            exit_code: 0,
            stdout: if as_json {
                json_document(name, inputs, Some(report.result), &[])
            } else {
                report.text
            },
            stderr: String::new(),
        },
        Err((exit_code, failure)) => {
            let stderr = format!("error: {}: {}\n", failure.code, failure.message);
            let stdout = if as_json {
                json_document(name, inputs, None, &[failure])
            } else {
                String::new()
            };
            Outcome {
                exit_code,
                stdout,
                stderr,
            }
        }
    }
}

#[cfg(test)]
mod tests;
