use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use bcgraded::bcgraded::{Algebra, Series, SeriesType};
use bcgraded::fock::FockSpace;
use bcgraded::verify::{self, Interval, Mutation, SuiteConfig, SuiteId};
use bcgraded::{Error, Field, QMode};

/// Exact brackets, Fock actions and identity suites for BC_N-graded Lie
/// algebras over quantum tori.
#[derive(Parser, Debug)]
#[command(name = "bcgraded", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long, global = true, default_value = "d")]
    series: SeriesType,
    #[arg(long, global = true, default_value_t = 2)]
    n: u32,
    /// `generic` or `root:L`.
    #[arg(long, global = true, default_value = "generic")]
    q: QMode,
    #[arg(long, global = true, default_value_t = 3)]
    cutoff: u32,
    #[arg(long, global = true, default_value_t = 100)]
    trials: u32,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Defaults to json for `verify` and text otherwise.
    #[arg(long, global = true)]
    format: Option<Format>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Closed,
    Generic,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MutationArg {
    FlipCentralSign,
    DropCorrection,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Bracket of two generator expressions.
    Bracket {
        a: String,
        b: String,
        #[arg(long, value_enum, default_value = "closed")]
        mode: Mode,
    },
    /// Action of a generator expression on a Fock vector.
    Act {
        expr: String,
        #[arg(long, default_value = "vacuum")]
        state: String,
    },
    /// Closed brackets of all canonical generator pairs.
    Table {
        /// Exponent range `LO:HI` for both torus exponents.
        #[arg(long, default_value = "0:0", value_parser = parse_interval, allow_hyphen_values = true)]
        exponents: Interval,
    },
    /// Run an identity suite.
    Verify {
        #[arg(long)]
        suite: String,
        /// Exponent range `LO:HI` overriding the suite default.
        #[arg(long, value_parser = parse_interval, allow_hyphen_values = true)]
        exponents: Option<Interval>,
        /// Inject a deliberate defect (harness sensitivity check).
        #[arg(long, value_enum)]
        mutation: Option<MutationArg>,
    },
}

fn parse_interval(s: &str) -> Result<Interval, String> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| format!("expected LO:HI, got '{s}'"))?;
    let lo: i64 = lo.trim().parse().map_err(|e| format!("{e}"))?;
    let hi: i64 = hi.trim().parse().map_err(|e| format!("{e}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}:{hi}"));
    }
    Ok(Interval::new(lo, hi))
}

/// What to print and which exit status to use.
struct Outcome {
    text: String,
    ok: bool,
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let c = &cli.common;
    let series = Series::new(c.series, c.n)?;
    let field = Field::new(c.q);
    let json_out = |default: Format| c.format.unwrap_or(default) == Format::Json;
    match &cli.verb {
        Verb::Bracket { a, b, mode } => {
            let alg = Algebra::new(series, field.clone());
            let (x, y) = (alg.parse(a)?, alg.parse(b)?);
            let closed = alg.closed_bracket_comb(&x, &y)?;
            let generic = match mode {
                Mode::Closed => None,
                _ => Some(alg.realize(&x)?.bracket(&alg.realize(&y)?, &field)?),
            };
            let diff = match (mode, &generic) {
                (Mode::Both, Some(g)) => Some(alg.realize(&closed)?.sub(g)?),
                _ => None,
            };
            let ok = diff.as_ref().is_none_or(|d| d.is_zero());
            let text = if json_out(Format::Text) {
                let mut v = json!({});
                if *mode != Mode::Generic {
                    v["closed"] = closed.to_json();
                    v["closed_text"] = json!(closed.to_string());
                }
                if let Some(g) = &generic {
                    v["generic"] = g.to_json();
                    v["generic_text"] = json!(g.to_string());
                }
                if let Some(d) = &diff {
                    v["diff"] = json!(if d.is_zero() { String::new() } else { d.to_string() });
                }
                v.to_string()
            } else {
                match (mode, &generic, &diff) {
                    (Mode::Closed, _, _) => closed.to_string(),
                    (Mode::Generic, Some(g), _) => g.to_string(),
                    (_, _, Some(d)) if d.is_zero() => closed.to_string(),
                    (_, Some(g), Some(d)) => format!("closed:  {closed}\ngeneric: {g}\ndiff:    {d}"),
                    _ => unreachable!("generic is computed for modes other than closed"),
                }
            };
            Ok(Outcome { text, ok })
        }
        Verb::Act { expr, state } => {
            let alg = Algebra::new(series, field.clone());
            let fs = FockSpace::new(series, field);
            let x = alg.parse(expr)?;
            let v = fs.parse_vector(state)?;
            let out = fs.pi_apply(&x, &v)?;
            let text = if json_out(Format::Text) { out.to_json(fs.is_bosonic()).to_string() } else { out.to_string() };
            Ok(Outcome { text, ok: true })
        }
        Verb::Table { exponents } => {
            let alg = Algebra::new(series, field);
            let rows = alg.structure_table(exponents.iter(), exponents.iter())?;
            let text = if json_out(Format::Text) {
                verify::table_json(&rows).to_string()
            } else {
                verify::render_table(&rows).trim_end().to_string()
            };
            Ok(Outcome { text, ok: true })
        }
        Verb::Verify { suite, exponents, mutation } => {
            let id: SuiteId = suite.parse()?;
            let mut cfg = SuiteConfig::new(id, series, c.q);
            cfg.cutoff = c.cutoff;
            cfg.trials = c.trials;
            cfg.seed = c.seed;
            if let Some(r) = exponents {
                cfg.ranges.exponents = *r;
            }
            cfg.mutation = mutation.map(|m| match m {
                MutationArg::FlipCentralSign => Mutation::FlipCentralSign,
                MutationArg::DropCorrection => Mutation::DropCorrection,
            });
            let report = verify::run_suite(&cfg)?;
            let text = if json_out(Format::Json) { report.to_json().to_string() } else { report.to_string() };
            Ok(Outcome { text, ok: report.passed() })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = writeln!(stdout, "{}", out.text);
            if out.ok {
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
