//! Command-line front end.
//!
//! Exit codes: 0 success, 1 input or validation error, 2 dimension mismatch,
//! 3 property failure (an axiom suite or a maximal-uncertainty check that did
//! not pass). Results go to standard output, diagnostics to standard error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::error::Error;
use crate::fixtures;
use crate::functions::{jensen_check, verify_axioms, AxiomCheck, FunctionRegistry, UncertaintyFunction};
use crate::measures::{discriminate, UncertaintyMeasure};
use crate::quantum::{born_distribution, imaginary_phase_state, Observable, State};
use crate::random::{random_maximal_uncertainty_state, rng_for};
use crate::table::{align, fixed4};

/// Largest matrix dimension the CLI accepts.
pub const MAX_DIM: usize = 64;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_DIMENSION: i32 = 2;
pub const EXIT_PROPERTY: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "quncert", version, about = "Uncertainty measures for quantum states")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Args)]
pub struct Inputs {
    /// Observable file: {"effects": [<matrix>, ...]}.
    #[arg(short = 'A', long = "observable")]
    pub observable: PathBuf,
    /// State file: {"density": <matrix>} or {"ket": <vector>}.
    #[arg(short = 's', long = "state")]
    pub state: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate (f, A)-uncertainty measures on a state.
    Eval {
        /// Function specifier: v | e | g | s | mix:w1*f1+w2*f2+...
        #[arg(short = 'f', long = "function", required = true)]
        functions: Vec<String>,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Print the Born distribution of an observable in a state.
    Distribution {
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Run the randomized axiom suite on an uncertainty function.
    Axioms {
        #[arg(short = 'f', long = "function")]
        function: String,
        /// Outcome count.
        #[arg(short = 'd', long = "dim")]
        dim: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of points in the extra n-point Jensen check.
        #[arg(long, default_value_t = 3)]
        jensen_points: usize,
    },
    /// Check or generate maximal-uncertainty states.
    Maxunc {
        #[command(subcommand)]
        action: Maxunc,
    },
    /// Compare several states under one observable.
    Discriminate {
        #[arg(short = 'A', long = "observable")]
        observable: PathBuf,
        #[arg(short = 's', long = "state", required = true)]
        states: Vec<PathBuf>,
        #[arg(short = 'f', long = "function", default_values_t = ["v".to_string(), "e".to_string(), "g".to_string(), "s".to_string()])]
        functions: Vec<String>,
    },
    /// Print the qubit reference table (|±> measurements on I/2 and |+>).
    Examples,
}

#[derive(Debug, Subcommand)]
pub enum Maxunc {
    /// Is the state maximally uncertain for the observable?
    Check {
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Emit a maximal-uncertainty state as JSON.
    Generate {
        /// Random I/d + T for the standard basis of C^d.
        #[arg(short = 'd', long = "dim", conflicts_with = "alpha")]
        dim: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// The pure qubit state [alpha, i*sqrt(1 - alpha^2)].
        #[arg(long, allow_negative_numbers = true)]
        alpha: Option<f64>,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_dimension_error() {
            EXIT_DIMENSION
        } else {
            EXIT_INPUT
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

type CmdResult = std::result::Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, registry: &FunctionRegistry, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                EXIT_INPUT
            } else {
                let _ = write!(out, "{rendered}");
                EXIT_OK
            };
        }
    };
    match execute(&cli, registry, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(cli: &Cli, registry: &FunctionRegistry, out: &mut dyn Write) -> CmdResult {
    match &cli.command {
        Command::Eval { functions, inputs } => cmd_eval(cli.format, registry, functions, inputs, out),
        Command::Distribution { inputs } => cmd_distribution(cli.format, inputs, out),
        Command::Axioms {
            function,
            dim,
            samples,
            seed,
            jensen_points,
        } => cmd_axioms(cli.format, registry, function, *dim, *samples, *seed, *jensen_points, out),
        Command::Maxunc { action } => cmd_maxunc(cli.format, action, out),
        Command::Discriminate {
            observable,
            states,
            functions,
        } => cmd_discriminate(cli.format, registry, observable, states, functions, out),
        Command::Examples => cmd_examples(cli.format, out),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn load_state(path: &Path) -> Result<State, Failure> {
    let text = read(path)?;
    // Checked before validation so that huge inputs never reach the eigensolver.
    let probe: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    let n = probe
        .get("density")
        .or_else(|| probe.get("ket"))
        .and_then(|v| v.as_array())
        .map_or(0, Vec::len);
    check_cap(n)?;
    State::from_json(&text).map_err(|e| with_path(path, e))
}

fn load_observable(path: &Path) -> Result<Observable, Failure> {
    let text = read(path)?;
    let probe: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    let n = probe
        .get("effects")
        .and_then(|v| v.get(0))
        .and_then(|v| v.as_array())
        .map_or(0, Vec::len);
    check_cap(n)?;
    Observable::from_json(&text).map_err(|e| with_path(path, e))
}

fn with_path(path: &Path, e: Error) -> Failure {
    let mut f = Failure::from(e);
    f.message = format!("{}: {}", path.display(), f.message);
    f
}

fn check_cap(n: usize) -> Result<(), Failure> {
    if n > MAX_DIM {
        return Err(input_error(format!(
            "dimension {n} exceeds the CLI limit of {MAX_DIM}"
        )));
    }
    Ok(())
}

fn emit_json(out: &mut dyn Write, value: &impl Serialize) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| input_error(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn distribution_table(p: &[f64]) -> String {
    align(&[
        (0..p.len()).map(|i| format!("P({i})")).collect(),
        p.iter().map(|&x| fixed4(x)).collect(),
    ])
}

fn cmd_eval(
    format: Format,
    registry: &FunctionRegistry,
    specs: &[String],
    inputs: &Inputs,
    out: &mut dyn Write,
) -> CmdResult {
    let functions = specs
        .iter()
        .map(|s| registry.parse(s))
        .collect::<Result<Vec<_>, _>>()?;
    let a = load_observable(&inputs.observable)?;
    let rho = load_state(&inputs.state)?;
    let p = born_distribution(&rho, &a)?;
    let mut values = Vec::with_capacity(functions.len());
    for f in functions {
        let name = f.name();
        let m = UncertaintyMeasure::new(f, a.clone())?;
        values.push((name, m.measure(&rho)?));
    }
    match format {
        Format::Json => {
            let values: Vec<_> = values
                .iter()
                .map(|(f, v)| json!({"function": f, "value": v}))
                .collect();
            emit_json(out, &json!({"distribution": p.probs(), "values": values}))?;
        }
        Format::Table => {
            write!(out, "{}", distribution_table(p.probs()))?;
            writeln!(out)?;
            let mut rows = vec![vec!["function".to_string(), "value".to_string()]];
            rows.extend(values.iter().map(|(f, v)| vec![f.clone(), fixed4(*v)]));
            write!(out, "{}", align(&rows))?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_distribution(format: Format, inputs: &Inputs, out: &mut dyn Write) -> CmdResult {
    let a = load_observable(&inputs.observable)?;
    let rho = load_state(&inputs.state)?;
    let p = born_distribution(&rho, &a)?;
    match format {
        Format::Json => emit_json(out, &json!({"distribution": p.probs()}))?,
        Format::Table => write!(out, "{}", distribution_table(p.probs()))?,
    }
    Ok(EXIT_OK)
}

#[allow(clippy::too_many_arguments)]
fn cmd_axioms(
    format: Format,
    registry: &FunctionRegistry,
    spec: &str,
    d: usize,
    samples: usize,
    seed: u64,
    jensen_points: usize,
    out: &mut dyn Write,
) -> CmdResult {
    if d < 2 {
        return Err(Error::TooFewOutcomes(d).into());
    }
    check_cap(d)?;
    if jensen_points < 2 {
        return Err(input_error("--jensen-points must be at least 2"));
    }
    let f = registry.parse(spec)?;
    if !f.accepts(d) {
        return Err(Error::ArityMismatch {
            expected: f.arity().unwrap_or(d),
            found: d,
        }
        .into());
    }
    let report = verify_axioms(&f, d, samples, seed)?;
    let jensen = jensen_check(&f, d, jensen_points, samples, seed)?;
    let mut checks: Vec<(&str, &AxiomCheck)> = report.checks().to_vec();
    checks.push(("jensen", &jensen));
    let pass = checks.iter().all(|(_, c)| c.pass);

    match format {
        Format::Json => {
            let axioms: serde_json::Map<String, serde_json::Value> = checks
                .iter()
                .map(|(k, c)| (k.to_string(), serde_json::to_value(c).expect("serializable")))
                .collect();
            emit_json(
                out,
                &json!({
                    "function": f.name(),
                    "d": d,
                    "samples": samples,
                    "seed": seed,
                    "pass": pass,
                    "axioms": axioms,
                }),
            )?;
        }
        Format::Table => {
            writeln!(out, "function {}  d={d}  samples={samples}  seed={seed}", f.name())?;
            let mut rows = vec![vec![
                "axiom".to_string(),
                "pass".to_string(),
                "worst_violation".to_string(),
            ]];
            for (name, c) in &checks {
                rows.push(vec![
                    name.to_string(),
                    if c.pass { "yes" } else { "NO" }.to_string(),
                    format!("{:.3e}", c.worst_violation),
                ]);
            }
            write!(out, "{}", align(&rows))?;
            writeln!(out, "{}", if pass { "all axioms pass" } else { "axiom failure" })?;
        }
    }
    Ok(if pass { EXIT_OK } else { EXIT_PROPERTY })
}

fn cmd_maxunc(format: Format, action: &Maxunc, out: &mut dyn Write) -> CmdResult {
    match action {
        Maxunc::Check { inputs } => {
            let a = load_observable(&inputs.observable)?;
            let rho = load_state(&inputs.state)?;
            let p = born_distribution(&rho, &a)?;
            let verdict = p.is_maximal_uncertainty();
            match format {
                Format::Json => emit_json(
                    out,
                    &json!({"maximal_uncertainty": verdict, "distribution": p.probs()}),
                )?,
                Format::Table => {
                    writeln!(out, "maximal_uncertainty {verdict}")?;
                    write!(out, "{}", distribution_table(p.probs()))?;
                }
            }
            Ok(if verdict { EXIT_OK } else { EXIT_PROPERTY })
        }
        Maxunc::Generate { dim, seed, alpha } => {
            let state = match (dim, alpha) {
                (_, Some(alpha)) => imaginary_phase_state(*alpha)?,
                (Some(d), None) => {
                    if *d < 2 {
                        return Err(Error::TooFewOutcomes(*d).into());
                    }
                    check_cap(*d)?;
                    random_maximal_uncertainty_state(*d, &mut rng_for(*seed, 0))
                }
                (None, None) => return Err(input_error("generate needs --dim or --alpha")),
            };
            let value: serde_json::Value = serde_json::from_str(&state.to_json()).expect("valid json");
            emit_json(out, &value)?;
            Ok(EXIT_OK)
        }
    }
}

fn cmd_discriminate(
    format: Format,
    registry: &FunctionRegistry,
    observable: &Path,
    states: &[PathBuf],
    specs: &[String],
    out: &mut dyn Write,
) -> CmdResult {
    let functions = specs
        .iter()
        .map(|s| registry.parse(s))
        .collect::<Result<Vec<_>, _>>()?;
    let a = load_observable(observable)?;
    for f in &functions {
        if !f.accepts(a.outcomes()) {
            return Err(Error::ArityMismatch {
                expected: f.arity().unwrap_or(0),
                found: a.outcomes(),
            }
            .into());
        }
    }
    let labeled = states
        .iter()
        .map(|p| {
            let label = p
                .file_stem()
                .map_or_else(|| p.display().to_string(), |s| s.to_string_lossy().into_owned());
            load_state(p).map(|s| (label, s))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let report = discriminate(&labeled, &a, &functions)?;
    match format {
        Format::Json => emit_json(out, &report)?,
        Format::Table => write!(out, "{}", report.to_table())?,
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct ExampleRow {
    observable: &'static str,
    state: &'static str,
    label: &'static str,
    distribution: Vec<f64>,
    values: Vec<f64>,
}

fn example_rows() -> Result<Vec<ExampleRow>, Error> {
    let sharp = fixtures::plus_minus_observable();
    let unsharp = fixtures::unsharp_plus_minus_observable();
    let rho = State::maximally_mixed(2);
    let psi = fixtures::plus_state();
    let cases = [
        ("plus_minus", &sharp, "rho", &rho, "x"),
        ("plus_minus", &sharp, "psi", &psi, "y"),
        ("unsharp_plus_minus", &unsharp, "rho", &rho, "x"),
        ("unsharp_plus_minus", &unsharp, "psi", &psi, "z"),
    ];
    cases
        .into_iter()
        .map(|(obs_name, a, state_name, state, label)| {
            let p = born_distribution(state, a)?;
            let values = UncertaintyFunction::builtins()
                .iter()
                .map(|f| f.evaluate(&p))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(ExampleRow {
                observable: obs_name,
                state: state_name,
                label,
                distribution: p.probs().to_vec(),
                values,
            })
        })
        .collect()
}

const SINE_NOTE: &str = "* s(z) = (sin(2pi/3) + sin(pi/3))/2 = sqrt(3)/2. \
A value of 0.500 is sometimes quoted for this entry; it does not follow from the sine formula.";

fn cmd_examples(format: Format, out: &mut dyn Write) -> CmdResult {
    let rows = example_rows()?;
    match format {
        Format::Json => emit_json(
            out,
            &json!({
                "functions": ["v", "e", "g", "s"],
                "rows": rows,
                "notes": [SINE_NOTE],
            }),
        )?,
        Format::Table => {
            let mut table = vec![["observable", "state", "label", "P(0)", "P(1)", "v", "e", "g", "s"]
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()];
            for r in &rows {
                let mut cells = vec![r.observable.to_string(), r.state.to_string(), r.label.to_string()];
                cells.extend(r.distribution.iter().map(|&p| fixed4(p)));
                cells.extend(r.values.iter().map(|&v| fixed4(v)));
                if r.label == "z" {
                    if let Some(last) = cells.last_mut() {
                        last.push('*');
                    }
                }
                table.push(cells);
            }
            write!(out, "{}", align(&table))?;
            writeln!(out)?;
            writeln!(out, "rho = I/2;  psi = |+><+| with |+> = (|0> + |1>)/sqrt(2)")?;
            writeln!(out, "{SINE_NOTE}")?;
        }
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str], registry: &FunctionRegistry) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["quncert"];
        full.extend_from_slice(args);
        let code = run(full, registry, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn examples_table_values() {
        let (code, out, _) = run_args(&["examples"], &FunctionRegistry::default());
        assert_eq!(code, 0);
        assert!(out.contains("unsharp_plus_minus  psi    z      0.6667  0.3333  0.8889  0.9183  0.6667  0.8660*"), "{out}");
        assert!(out.contains("plus_minus          psi    y      1.0000  0.0000  0.0000  0.0000  0.0000  0.0000"), "{out}");
    }

    #[test]
    fn axioms_exit_codes() {
        let (code, out, _) = run_args(&["axioms", "-f", "v", "-d", "2", "--samples", "1"], &FunctionRegistry::default());
        assert_eq!(code, 0, "{out}");

        let mut registry = FunctionRegistry::default();
        registry.register(
            "purity",
            UncertaintyFunction::custom("purity", None, |x| x.iter().map(|p| p * p).sum()),
        );
        let (code, out, _) = run_args(&["axioms", "-f", "purity", "-d", "3", "--samples", "500"], &registry);
        assert_eq!(code, EXIT_PROPERTY);
        assert!(out.contains("concave           NO"), "{out}");
    }

    #[test]
    fn bad_inputs_exit_one() {
        let reg = FunctionRegistry::default();
        assert_eq!(run_args(&["axioms", "-f", "zzz", "-d", "3"], &reg).0, EXIT_INPUT);
        assert_eq!(run_args(&["axioms", "-f", "v", "-d", "65"], &reg).0, EXIT_INPUT);
        assert_eq!(run_args(&["bogus"], &reg).0, EXIT_INPUT);
        let (code, _, err) = run_args(&["distribution", "-A", "/nonexistent.json", "-s", "/nonexistent.json"], &reg);
        assert_eq!(code, EXIT_INPUT);
        assert!(err.contains("nonexistent"));
        assert_eq!(run_args(&["maxunc", "generate"], &reg).0, EXIT_INPUT);
        assert_eq!(run_args(&["maxunc", "generate", "--alpha", "2"], &reg).0, EXIT_INPUT);
    }

    #[test]
    fn help_goes_to_stdout() {
        let (code, out, _) = run_args(&["--help"], &FunctionRegistry::default());
        assert_eq!(code, 0);
        assert!(out.contains("axioms"));
    }

    #[test]
    fn generate_alpha_negative() {
        let (code, out, _) = run_args(&["maxunc", "generate", "--alpha", "-0.5"], &FunctionRegistry::default());
        assert_eq!(code, 0);
        let s = State::from_json(&out).unwrap();
        let p = born_distribution(&s, &fixtures::plus_minus_observable()).unwrap();
        assert!(p.is_maximal_uncertainty());
    }
}
