//! Batch front end: every subcommand reads instance and map files (or a
//! built-in instance), prints a line-oriented `key: value` report on
//! standard output, and encodes its verdict in the exit code.
//!
//! Exit codes are uniform across subcommands: 0 when the checked
//! property holds (or the search succeeded), 1 when it fails (or the
//! search was exhausted), 2 for usage errors such as bad flag values,
//! and 3 for malformed input files. Diagnostics go to standard error;
//! standard output carries only the report.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use msmetric_core::value::format_rational;
use msmetric_core::{
    ball, builtins, classify, default_max_iter, find_separating_space, generate_ms_space,
    parse_instance, parse_map_pairs, picard, serialize_instance, validate_ms_with, Contraction,
    ContractionKind, ContractionReport, GenConfig, MsCheckOptions, MsSpace, PointId, SelfMap,
    SolveOutcome, Value,
};

const EXIT_HOLDS: u8 = 0;
const EXIT_FAILS: u8 = 1;

enum CliError {
    /// Bad flag or argument value; exit 2.
    Usage(String),
    /// Unreadable or malformed input file; exit 3.
    Input(String),
}

#[derive(Parser)]
#[command(
    name = "msmetric",
    version,
    about = "Exact validation, analysis, and search for finite M_s-metric structures"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

/// Instance source: a file path or a named built-in.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct InputArg {
    /// Instance file.
    #[arg(value_name = "FILE")]
    file: Option<PathBuf>,
    /// Built-in instance name (available: example1).
    #[arg(long, value_name = "NAME")]
    builtin: Option<String>,
}

impl InputArg {
    fn load(&self) -> Result<MsSpace, CliError> {
        if let Some(name) = &self.builtin {
            return match name.as_str() {
                "example1" => Ok(builtins::example1()),
                other => Err(CliError::Usage(format!(
                    "unknown built-in instance `{other}` (available: example1)"
                ))),
            };
        }
        let path = self.file.as_ref().expect("clap requires one input source");
        let text = read(path)?;
        parse_instance(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum KindArg {
    Banach,
    Kannan,
    Phi,
}

#[derive(Copy, Clone, ValueEnum)]
enum ModeArg {
    #[value(name = "ms-not-partial-s")]
    MsNotPartialS,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the M_s axioms; list violations with exact witnesses.
    Validate {
        #[command(flatten)]
        input: InputArg,
        /// Also check the strengthened identity condition (a triple
        /// value equal to all three self-distances forces the points
        /// to coincide).
        #[arg(long)]
        strengthened: bool,
        /// Print only the verdict line.
        #[arg(long)]
        quiet: bool,
    },
    /// Check both axiom families; list all violations.
    Classify {
        #[command(flatten)]
        input: InputArg,
        /// Print only the two verdict lines.
        #[arg(long)]
        quiet: bool,
    },
    /// List the closed ball around a center point.
    Ball {
        #[command(flatten)]
        input: InputArg,
        /// Center point id.
        #[arg(long, value_name = "POINT")]
        center: String,
        /// Ball radius (integer, decimal, or fraction).
        #[arg(long, value_name = "VALUE")]
        radius: String,
    },
    /// Evaluate a contraction condition for a self-map.
    Contract {
        #[command(flatten)]
        input: InputArg,
        /// Self-map file.
        #[arg(long, value_name = "FILE")]
        map: PathBuf,
        /// Contraction condition to evaluate.
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Comparison function for --kind phi, written family:parameter
        /// (families: linear, saturating).
        #[arg(long, value_name = "SPEC", required_if_eq("kind", "phi"))]
        phi: Option<String>,
        /// Print only the verdict line.
        #[arg(long)]
        quiet: bool,
    },
    /// Iterate a self-map from a start point until it fixes or cycles.
    Solve {
        #[command(flatten)]
        input: InputArg,
        /// Self-map file.
        #[arg(long, value_name = "FILE")]
        map: PathBuf,
        /// Start point id.
        #[arg(long, value_name = "POINT")]
        x0: String,
        /// Iteration budget (default: four times the point count).
        #[arg(long, value_name = "N")]
        max_iter: Option<usize>,
    },
    /// Search for an instance separating the two axiom families.
    Search {
        /// What to search for.
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Point count of the generated instances.
        #[arg(long, default_value_t = 3, value_name = "N")]
        size: usize,
        /// Seed; a fixed seed reproduces the output byte for byte.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Trial budget.
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Write the instance to this file instead of standard output.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Generate a valid instance.
    Gen {
        /// Point count of the generated instance.
        #[arg(long, default_value_t = 3, value_name = "N")]
        size: usize,
        /// Seed; a fixed seed reproduces the output byte for byte.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Trial budget.
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Write the instance to this file instead of standard output.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.cmd {
        Cmd::Validate {
            input,
            strengthened,
            quiet,
        } => cmd_validate(&input, strengthened, quiet),
        Cmd::Classify { input, quiet } => cmd_classify(&input, quiet),
        Cmd::Ball {
            input,
            center,
            radius,
        } => cmd_ball(&input, &center, &radius),
        Cmd::Contract {
            input,
            map,
            kind,
            phi,
            quiet,
        } => cmd_contract(&input, &map, kind, phi.as_deref(), quiet),
        Cmd::Solve {
            input,
            map,
            x0,
            max_iter,
        } => cmd_solve(&input, &map, &x0, max_iter),
        Cmd::Search {
            mode: ModeArg::MsNotPartialS,
            size,
            seed,
            trials,
            out,
        } => cmd_search(size, seed, trials, out.as_deref()),
        Cmd::Gen {
            size,
            seed,
            trials,
            out,
        } => cmd_gen(size, seed, trials, out.as_deref()),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_map(path: &Path, space: &MsSpace) -> Result<SelfMap, CliError> {
    let text = read(path)?;
    let pairs =
        parse_map_pairs(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    SelfMap::from_pairs(space, &pairs)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn point_list(points: &[PointId]) -> String {
    let names: Vec<&str> = points.iter().map(|p| p.as_str()).collect();
    names.join(" ")
}

fn cmd_validate(input: &InputArg, strengthened: bool, quiet: bool) -> Result<u8, CliError> {
    let space = input.load()?;
    let options = MsCheckOptions {
        strengthened_identity: strengthened,
    };
    let report = validate_ms_with(&space, options);
    println!("is_ms: {}", report.passed());
    if !quiet {
        println!("checks_performed: {}", report.checks_performed);
        for v in &report.violations {
            println!("violation: {v}");
        }
    }
    Ok(if report.passed() {
        EXIT_HOLDS
    } else {
        EXIT_FAILS
    })
}

fn cmd_classify(input: &InputArg, quiet: bool) -> Result<u8, CliError> {
    let space = input.load()?;
    let c = classify(&space);
    println!("is_ms: {}", c.is_ms());
    println!("is_partial_s: {}", c.is_partial_s());
    if !quiet {
        for v in c.ms.violations.iter().chain(&c.partial_s.violations) {
            println!("violation: {v}");
        }
    }
    Ok(EXIT_HOLDS)
}

fn cmd_ball(input: &InputArg, center: &str, radius: &str) -> Result<u8, CliError> {
    let space = input.load()?;
    let center = PointId::new(center).map_err(|e| CliError::Usage(format!("--center: {e}")))?;
    let radius: Value = radius
        .parse()
        .map_err(|e| CliError::Usage(format!("--radius: {e}")))?;
    let members =
        ball(&space, &center, &radius).map_err(|e| CliError::Usage(format!("--center: {e}")))?;
    println!("ball: {}", point_list(&members));
    Ok(EXIT_HOLDS)
}

fn print_contraction_report(report: &ContractionReport, contraction: &Contraction, quiet: bool) {
    println!("admissible: {}", report.admissible);
    if quiet {
        return;
    }
    println!("kind: {}", report.kind);
    if let Contraction::Phi(f) = contraction {
        println!("phi: {f}");
    }
    if let Some(k) = &report.constant {
        let key = match report.kind {
            ContractionKind::Banach => "k_star",
            ContractionKind::Kannan => "lambda_star",
            ContractionKind::Phi => unreachable!("weak condition reports no constant"),
        };
        println!("{key}: {}", format_rational(k));
    }
    if let Some(w) = &report.witness {
        println!("witness: {}", point_list(w));
    }
    if let Some((lhs, rhs)) = &report.witness_sides {
        println!("witness_lhs: {}", format_rational(lhs));
        println!("witness_rhs: {}", format_rational(rhs));
    }
    if let Some(w) = &report.infeasible_witness {
        println!("infeasible_witness: {}", point_list(w));
    }
}

fn cmd_contract(
    input: &InputArg,
    map_path: &Path,
    kind: KindArg,
    phi: Option<&str>,
    quiet: bool,
) -> Result<u8, CliError> {
    let space = input.load()?;
    let map = load_map(map_path, &space)?;
    let contraction = match kind {
        KindArg::Banach => Contraction::Banach,
        KindArg::Kannan => Contraction::Kannan,
        KindArg::Phi => {
            let spec = phi.expect("clap requires --phi for --kind phi");
            Contraction::Phi(
                spec.parse()
                    .map_err(|e| CliError::Usage(format!("--phi: {e}")))?,
            )
        }
    };
    let report = contraction
        .evaluate(&space, &map)
        .expect("map was bound to this space");
    print_contraction_report(&report, &contraction, quiet);
    Ok(if report.admissible {
        EXIT_HOLDS
    } else {
        EXIT_FAILS
    })
}

fn cmd_solve(
    input: &InputArg,
    map_path: &Path,
    x0: &str,
    max_iter: Option<usize>,
) -> Result<u8, CliError> {
    let space = input.load()?;
    let map = load_map(map_path, &space)?;
    let x0 = PointId::new(x0).map_err(|e| CliError::Usage(format!("--x0: {e}")))?;
    let budget = max_iter.unwrap_or_else(|| default_max_iter(&space));
    let trace =
        picard(&space, &map, &x0, budget).map_err(|e| CliError::Usage(format!("--x0: {e}")))?;
    println!("outcome: {}", trace.outcome);
    println!("orbit: {}", point_list(&trace.orbit));
    println!("steps: {}", trace.steps);
    match trace.outcome {
        SolveOutcome::Fixed => {
            let u = trace
                .fixed_point
                .as_ref()
                .expect("fixed outcome has a point");
            println!("fixed_point: {u}");
            let d = trace
                .self_distance_at_fix
                .as_ref()
                .expect("fixed outcome has a self-distance");
            println!("self_distance: {d}");
            Ok(EXIT_HOLDS)
        }
        SolveOutcome::Cycle { entry } => {
            // The closing element repeats the entry point; print one lap.
            let lap = &trace.orbit[entry..trace.orbit.len() - 1];
            println!("cycle: {}", point_list(lap));
            Ok(EXIT_FAILS)
        }
        SolveOutcome::Budget => Ok(EXIT_FAILS),
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn gen_config(size: usize, seed: u64, trials: u64) -> Result<GenConfig, CliError> {
    let mut config = GenConfig::new(size, seed);
    config.trials = trials;
    config
        .validate()
        .map_err(|e| CliError::Usage(format!("--size: {e}")))?;
    Ok(config)
}

fn cmd_search(size: usize, seed: u64, trials: u64, out: Option<&Path>) -> Result<u8, CliError> {
    let config = gen_config(size, seed, trials)?;
    match find_separating_space(&config).expect("config was validated") {
        Some(sep) => {
            let mut text = serialize_instance(&sep.space);
            text.push_str(&format!(
                "# witness: {}\n# trial: {}\n",
                sep.witness, sep.trial
            ));
            emit(&text, out)?;
            Ok(EXIT_HOLDS)
        }
        None => {
            eprintln!("search exhausted after {trials} trials");
            Ok(EXIT_FAILS)
        }
    }
}

fn cmd_gen(size: usize, seed: u64, trials: u64, out: Option<&Path>) -> Result<u8, CliError> {
    let config = gen_config(size, seed, trials)?;
    match generate_ms_space(&config).expect("config was validated") {
        Some(space) => {
            emit(&serialize_instance(&space), out)?;
            Ok(EXIT_HOLDS)
        }
        None => {
            eprintln!("generation exhausted after {trials} trials");
            Ok(EXIT_FAILS)
        }
    }
}
