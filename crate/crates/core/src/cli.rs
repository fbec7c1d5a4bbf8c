//! The `arfkit` command line.
//!
//! Data goes to `out`, diagnostics to `err`. Exit codes: 0 success, 1 a
//! property fails (not Arf, or `verify` found a violation), 2 usage or input
//! error, 3 internal invariant violation.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::arf::{self, arf_closure, is_arf_pattern, is_arf_stability, lipman_tower};
use crate::decomp::{decompose, enumerate_non_normal_ideals};
use crate::error::Error;
use crate::props::{random_semigroups, Battery};
use crate::semigroup::{enumerate_by_conductor, NumericalSemigroup, DEFAULT_MAX_BOUND};

pub const EXIT_OK: u8 = 0;
pub const EXIT_PROPERTY_FAILS: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INTERNAL: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "arfkit", version, about = "Arf numerical semigroups and the decomposition of their integrally closed ideals")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Reject inputs whose membership window would exceed this size.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_BOUND)]
    max_bound: i64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Multiplicity, conductor, Frobenius number, genus, embedding dimension.
    Stats(Input),
    /// Decide the Arf property with both criteria.
    Check(Input),
    /// The smallest Arf semigroup containing the input.
    Closure(Input),
    /// The tower of blow-ups at maximal ideals and its multiplicity sequence.
    Tower(Input),
    /// Decompose the integrally closed ideal with minimum value `--value`.
    Decompose {
        #[command(flatten)]
        input: Input,
        /// Minimum value `a ∈ S` of the ideal `{s ∈ S : s >= a}`.
        #[arg(long)]
        value: i64,
    },
    /// Integrally closed ideals that are not ideals of k[[t]].
    Enumerate(Input),
    /// Run the property battery on one semigroup or a whole family.
    Verify {
        #[command(flatten)]
        input: OptionalInput,
        /// Sweep every numerical semigroup with conductor at most this.
        #[arg(long)]
        exhaustive_conductor: Option<i64>,
        /// Additionally sweep this many random semigroups.
        #[arg(long, default_value_t = 0)]
        random: usize,
        /// Conductor cap for random semigroups.
        #[arg(long, default_value_t = 30)]
        random_conductor: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Comma-separated generators, e.g. 3,11,13.
    generators: Option<String>,
    /// Comma-separated multiplicity sequence, e.g. 3,3,3,2.
    #[arg(long)]
    mult_seq: Option<String>,
}

#[derive(Debug, Args)]
#[group(required = false, multiple = false)]
struct OptionalInput {
    generators: Option<String>,
    #[arg(long)]
    mult_seq: Option<String>,
}

/// A failure that ends the command with a particular exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Internal(_) => EXIT_INTERNAL,
            Error::NotArf { .. } => EXIT_PROPERTY_FAILS,
            _ => EXIT_USAGE,
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
            code: EXIT_INTERNAL,
            message: format!("write failed: {e}"),
        }
    }
}

fn parse_list(text: &str) -> Result<Vec<i64>, Failure> {
    text.split(',')
        .map(|part| {
            let part = part.trim();
            match part.parse::<i64>() {
                Ok(n) if n > 0 => Ok(n),
                _ => Err(Failure {
                    code: EXIT_USAGE,
                    message: format!("expected a positive integer, got {part:?}"),
                }),
            }
        })
        .collect()
}

fn build_semigroup(
    generators: Option<&str>,
    mult_seq: Option<&str>,
    max_bound: i64,
) -> Result<NumericalSemigroup, Failure> {
    match (generators, mult_seq) {
        (Some(g), None) => Ok(NumericalSemigroup::from_generators_bounded(&parse_list(g)?, max_bound)?),
        (None, Some(m)) => {
            let entries = parse_list(m)?;
            let total: i64 = entries.iter().sum();
            if total > max_bound {
                return Err(Error::BoundExceeded {
                    needed: total,
                    limit: max_bound,
                }
                .into());
            }
            Ok(arf::from_multiplicity_sequence(&entries)?)
        }
        _ => Err(Failure {
            code: EXIT_USAGE,
            message: "give either generators or --mult-seq".into(),
        }),
    }
}

impl Input {
    fn semigroup(&self, max_bound: i64) -> Result<NumericalSemigroup, Failure> {
        build_semigroup(self.generators.as_deref(), self.mult_seq.as_deref(), max_bound)
    }
}

fn emit_json(out: &mut dyn Write, value: &impl Serialize) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure {
        code: EXIT_INTERNAL,
        message: e.to_string(),
    })?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn join(values: &[i64]) -> String {
    values.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{e}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{e}");
                EXIT_OK
            };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "arfkit: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<u8, Failure> {
    let json = cli.json;
    match &cli.command {
        Command::Stats(input) => {
            let s = input.semigroup(cli.max_bound)?;
            let stats = s.stats();
            if json {
                emit_json(out, &json!({"semigroup": s, "stats": stats}))?;
            } else {
                writeln!(out, "semigroup {s}")?;
                writeln!(out, "multiplicity {}", stats.multiplicity)?;
                writeln!(out, "conductor {}", stats.conductor)?;
                writeln!(out, "frobenius {}", stats.frobenius)?;
                writeln!(out, "genus {}", stats.genus)?;
                writeln!(out, "embedding dimension {}", stats.embedding_dimension)?;
                writeln!(out, "small elements {}", join(s.small_elements()))?;
            }
            Ok(EXIT_OK)
        }
        Command::Check(input) => {
            let s = input.semigroup(cli.max_bound)?;
            let pattern = is_arf_pattern(&s);
            let stability = is_arf_stability(&s);
            if pattern.is_arf() != stability.is_arf() {
                return Err(Error::Internal(format!("Arf criteria disagree on {s}")).into());
            }
            let minimal = arf::has_minimal_multiplicity(&s);
            if json {
                emit_json(
                    out,
                    &json!({
                        "semigroup": s,
                        "arf": pattern.is_arf(),
                        "pattern_witness": pattern.witness(),
                        "stability_witness": stability.witness(),
                        "minimal_multiplicity": minimal,
                    }),
                )?;
            } else {
                match (pattern.witness(), stability.witness()) {
                    (Some(triple), Some(ideal)) => {
                        writeln!(out, "{s} is not Arf; {triple}")?;
                        writeln!(out, "{ideal}")?;
                    }
                    _ => writeln!(out, "{s} is Arf")?,
                }
                writeln!(out, "minimal multiplicity: {minimal}")?;
            }
            Ok(if pattern.is_arf() { EXIT_OK } else { EXIT_PROPERTY_FAILS })
        }
        Command::Closure(input) => {
            let s = input.semigroup(cli.max_bound)?;
            let closure = arf_closure(&s);
            let tower = lipman_tower(&closure)?;
            if json {
                emit_json(
                    out,
                    &json!({
                        "semigroup": s,
                        "closure": closure,
                        "multiplicity_sequence": tower.multiplicity_sequence,
                    }),
                )?;
            } else {
                writeln!(out, "Arf closure of {s}: {closure}")?;
                writeln!(out, "small elements {}", join(closure.small_elements()))?;
                writeln!(out, "conductor {}", closure.conductor())?;
                writeln!(
                    out,
                    "multiplicity sequence ({})",
                    join(tower.multiplicity_sequence.entries())
                )?;
            }
            Ok(EXIT_OK)
        }
        Command::Tower(input) => {
            let s = input.semigroup(cli.max_bound)?;
            let tower = lipman_tower(&s)?;
            if json {
                emit_json(out, &tower)?;
            } else {
                for (i, ring) in tower.rings.iter().enumerate() {
                    writeln!(out, "A_{i} = {ring}  multiplicity {}", ring.multiplicity())?;
                }
                writeln!(
                    out,
                    "multiplicity sequence ({})",
                    join(tower.multiplicity_sequence.entries())
                )?;
            }
            Ok(EXIT_OK)
        }
        Command::Decompose { input, value } => {
            let s = input.semigroup(cli.max_bound)?;
            let result = decompose(&s, *value)?;
            if !result.verified {
                return Err(Error::Internal(format!(
                    "factors of the ideal with minimum {value} over {s} do not multiply back"
                ))
                .into());
            }
            if json {
                emit_json(out, &result)?;
            } else {
                let target = crate::ideal::principal_closure(&s, *value)?;
                writeln!(out, "I = {target} over {s}")?;
                writeln!(out, "q = {}", result.q)?;
                for (n, step) in result.tower.iter().enumerate() {
                    let radical = step
                        .radical
                        .as_ref()
                        .map_or_else(|| "-".to_string(), ToString::to_string);
                    writeln!(
                        out,
                        "level {n}: ring {}, I_{n} = {} (shift {}), radical {radical}",
                        step.ring, step.ideal, step.shift
                    )?;
                }
                let names: Vec<String> =
                    (0..result.factors.len()).map(|i| format!("m_{i}")).collect();
                if names.is_empty() {
                    writeln!(out, "I = R (empty product)")?;
                } else {
                    writeln!(out, "I = {}", names.join(" · "))?;
                }
                for (i, f) in result.factors.iter().enumerate() {
                    writeln!(out, "  m_{i} = maximal ideal of {} = {}", f.ring, f.values)?;
                }
                writeln!(out, "B = I : I = {}", result.endpoint_b)?;
                writeln!(out, "verified: {}", result.verified)?;
            }
            Ok(EXIT_OK)
        }
        Command::Enumerate(input) => {
            let s = input.semigroup(cli.max_bound)?;
            let ideals = enumerate_non_normal_ideals(&s)?;
            if json {
                let list: Vec<_> = ideals
                    .iter()
                    .map(|i| json!({"a": i.min_value, "ideal": i.to_ideal()}))
                    .collect();
                emit_json(out, &json!({"semigroup": s, "ideals": list}))?;
            } else {
                writeln!(
                    out,
                    "{} integrally closed ideals of {s} are not ideals of k[[t]]",
                    ideals.len()
                )?;
                for i in &ideals {
                    writeln!(out, "a = {}: {}", i.min_value, i)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Verify {
            input,
            exhaustive_conductor,
            random,
            random_conductor,
            seed,
        } => {
            let mut family = Vec::new();
            if input.generators.is_some() || input.mult_seq.is_some() {
                family.push(build_semigroup(
                    input.generators.as_deref(),
                    input.mult_seq.as_deref(),
                    cli.max_bound,
                )?);
            }
            if let Some(c) = exhaustive_conductor {
                family.extend(enumerate_by_conductor(*c));
            }
            family.extend(random_semigroups(*seed, *random, *random_conductor));
            if family.is_empty() {
                return Err(Failure {
                    code: EXIT_USAGE,
                    message: "verify needs a semigroup, --exhaustive-conductor or --random".into(),
                });
            }
            let mut battery = Battery::new();
            for s in &family {
                battery.run_all(s);
            }
            let report = battery.report();
            if json {
                emit_json(out, &report)?;
            } else {
                writeln!(out, "{} semigroups checked", report.semigroups)?;
                for t in &report.properties {
                    let status = if t.ok() { "PASS" } else { "FAIL" };
                    writeln!(out, "{status} {} {}/{}", t.name, t.passed, t.checked)?;
                    if let Some(c) = &t.counterexample {
                        writeln!(out, "  counterexample: {c}")?;
                    }
                }
            }
            Ok(if report.ok { EXIT_OK } else { EXIT_PROPERTY_FAILS })
        }
    }
}
