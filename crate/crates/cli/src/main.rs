//! Command-line verification harness.
//!
//! Subcommands: `verify` runs a named certificate suite, `eval` applies a
//! catalog function to a sequence file, `gap-table` prints the truncated
//! dual values, and `report` runs everything and emits the full report.
//! All randomness is seeded and environment variables are never consulted,
//! so identical arguments produce byte-identical output. Exit codes: 0 on
//! pass, 1 on failure (the first failing certificate is printed), 3 when a
//! comparison exhausted its refinement budget and the run is inconclusive.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use gapcert_core::certificate::{BudgetParams, Verdict, VerificationReport};
use gapcert_core::duality::gap_truncation_table;
use gapcert_core::exact_number::{to_decimal, ExactValue};
use gapcert_core::func::{ConvexFnDesc, SeparableQuadratic};
use gapcert_core::suite::{run_suite, SuiteId};
use gapcert_core::FiniteSeq;

#[derive(Parser)]
#[command(name = "gapcert")]
#[command(
    about = "Exact-arithmetic certificates for an everywhere-empty subdifferential and its duality gap"
)]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Commands,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FunctionId {
    /// The separable quadratic itself.
    F,
    /// Its convex conjugate.
    FConj,
    /// The zero function.
    Zero,
    /// The indicator of the origin.
    IndicatorOrigin,
    /// A continuous linear functional (requires --functional).
    Linear,
}

#[derive(Debug, Parser)]
struct BudgetArgs {
    /// Partial-sum length for zeta enclosures.
    #[arg(long = "zeta-N", default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    zeta_n: u64,

    /// Dyadic mantissa precision in bits.
    #[arg(long, default_value_t = 128, value_parser = clap::value_parser!(u32).range(16..=4096))]
    precision_bits: u32,

    /// Largest truncation for primal/dual tables.
    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..=10_000))]
    truncation_max: u64,

    /// Decimal digits in rendered values (policy cap 12).
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..=12))]
    digits: u32,
}

impl BudgetArgs {
    fn params(&self) -> BudgetParams {
        BudgetParams {
            zeta_n: self.zeta_n,
            precision_bits: self.precision_bits,
            truncation_max: self.truncation_max,
            digits: self.digits,
        }
    }
}

#[derive(Subcommand)]
enum Commands {
    /// Run one verification suite and report its certificates.
    Verify {
        /// Suite id: theorem-a|theorem-b|theorem-c|theorem-d|sum-rule|
        /// chain-rule|duality-gap|inf-conv|qualifications|all
        suite: SuiteId,

        /// Seed for the generated sweep inputs.
        #[arg(long, default_value_t = 42)]
        seed: u64,

        #[command(flatten)]
        budget: BudgetArgs,

        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,

        /// Write the report here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },

    /// Evaluate a catalog function on a sequence file.
    Eval {
        /// Which catalog function to evaluate.
        #[arg(long, value_enum)]
        function: FunctionId,

        /// Path to the input sequence: {"entries": [[n, "p/q"], ...]}.
        #[arg(long)]
        input: PathBuf,

        /// Sequence file for the linear functional (with --function linear).
        #[arg(long)]
        functional: Option<PathBuf>,

        #[command(flatten)]
        budget: BudgetArgs,

        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },

    /// Print the truncated-dual table approaching the duality gap.
    GapTable {
        #[command(flatten)]
        budget: BudgetArgs,

        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },

    /// Run every suite and emit the aggregated report.
    Report {
        /// Seed for the generated sweep inputs.
        #[arg(long, default_value_t = 42)]
        seed: u64,

        #[command(flatten)]
        budget: BudgetArgs,

        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,

        /// Write the report here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Commands::Verify {
            suite,
            seed,
            budget,
            format,
            output,
        } => {
            let report = run_suite(suite, seed, &budget.params());
            emit_report(&report, format, output.as_deref())?;
            Ok(report_exit_code(&report))
        }
        Commands::Report {
            seed,
            budget,
            format,
            output,
        } => {
            let report = run_suite(SuiteId::All, seed, &budget.params());
            emit_report(&report, format, output.as_deref())?;
            Ok(report_exit_code(&report))
        }
        Commands::Eval {
            function,
            input,
            functional,
            budget,
            format,
        } => {
            eval_command(
                function,
                &input,
                functional.as_deref(),
                &budget.params(),
                format,
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Commands::GapTable { budget, format } => {
            gap_table_command(&budget.params(), format)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn report_exit_code(report: &VerificationReport) -> ExitCode {
    match report.verdict {
        Verdict::Pass => ExitCode::SUCCESS,
        Verdict::Fail => {
            if let Some(cert) = report.first_failure() {
                eprintln!("first failing certificate: {}", cert.claim);
            }
            ExitCode::from(1)
        }
        Verdict::Inconclusive => ExitCode::from(3),
    }
}

fn emit_report(
    report: &VerificationReport,
    format: Format,
    output: Option<&std::path::Path>,
) -> Result<()> {
    let rendered = match format {
        Format::Json => serde_json::to_string_pretty(report)? + "\n",
        Format::Text => render_report_text(report),
    };
    match output {
        Some(path) => fs::write(path, rendered)
            .with_context(|| format!("writing report to {}", path.display()))?,
        None => print!("{rendered}"),
    }
    Ok(())
}

fn render_report_text(report: &VerificationReport) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let _ = writeln!(out, "suite: {}", report.suite);
    let _ = writeln!(out, "seed: {}", report.seed);
    let _ = writeln!(
        out,
        "budget: zeta_n={} precision_bits={} truncation_max={} digits={}",
        report.budget.zeta_n,
        report.budget.precision_bits,
        report.budget.truncation_max,
        report.budget.digits
    );
    let _ = writeln!(out, "certificates: {}", report.certificates.len());
    for cert in &report.certificates {
        let flag = if cert.pass { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "[{flag}] {}", cert.claim);
        if let Some(margin) = &cert.margin {
            let _ = writeln!(out, "    margin: {margin}");
        }
        if let Some(enclosure) = &cert.enclosure {
            let _ = writeln!(out, "    enclosure: {enclosure}");
        }
        for (key, value) in &cert.witness {
            let _ = writeln!(out, "    {key}: {value}");
        }
    }
    let verdict = match report.verdict {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::Inconclusive => "inconclusive",
    };
    let _ = writeln!(out, "verdict: {verdict}");
    out
}

fn load_seq(path: &std::path::Path) -> Result<FiniteSeq> {
    let data = fs::read_to_string(path)
        .with_context(|| format!("reading sequence file {}", path.display()))?;
    let seq: FiniteSeq = serde_json::from_str(&data)
        .with_context(|| format!("parsing sequence file {}", path.display()))?;
    Ok(seq)
}

fn eval_command(
    function: FunctionId,
    input: &std::path::Path,
    functional: Option<&std::path::Path>,
    budget: &BudgetParams,
    format: Format,
) -> Result<()> {
    let x = load_seq(input)?;
    let q = SeparableQuadratic::canonical();

    // `f-conj` is the conjugate of the quadratic; the rest evaluate a
    // descriptor directly.
    let value: Option<ExactValue> = match function {
        FunctionId::F => ConvexFnDesc::separable_quadratic(q).evaluate(&x),
        FunctionId::FConj => ConvexFnDesc::separable_quadratic(q).conjugate_at(&x),
        FunctionId::Zero => ConvexFnDesc::zero().evaluate(&x),
        FunctionId::IndicatorOrigin => ConvexFnDesc::indicator_origin().evaluate(&x),
        FunctionId::Linear => {
            let path = match functional {
                Some(p) => p,
                None => bail!("--function linear requires --functional <path>"),
            };
            ConvexFnDesc::linear(load_seq(path)?).evaluate(&x)
        }
    };

    match format {
        Format::Json => {
            let body = match &value {
                Some(v) => {
                    let (decimal, enclosure) = to_decimal(v, budget.digits, &budget.refinement())?;
                    serde_json::json!({
                        "input": &x,
                        "value": v,
                        "decimal": decimal,
                        "enclosure": enclosure,
                    })
                }
                None => serde_json::json!({
                    "input": &x,
                    "value": "infinite",
                }),
            };
            println!("{}", serde_json::to_string_pretty(&body)?);
        }
        Format::Text => match &value {
            Some(v) => {
                let (decimal, enclosure) = to_decimal(v, budget.digits, &budget.refinement())?;
                println!("input: {x}");
                println!("value: {v}");
                println!("decimal: {decimal}");
                println!("enclosure: {enclosure}");
            }
            None => {
                println!("input: {x}");
                println!("value: infinite");
            }
        },
    }
    Ok(())
}

fn gap_table_command(budget: &BudgetParams, format: Format) -> Result<()> {
    let q = SeparableQuadratic::canonical();
    let table = gap_truncation_table(&q, budget.truncation_max);
    match format {
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(&table)?);
        }
        Format::Text => {
            println!("N\ttruncated_dual_value\tdecimal");
            for (n, value) in &table {
                let (decimal, _) = to_decimal(
                    &ExactValue::from_rational(value.clone()),
                    budget.digits,
                    &budget.refinement(),
                )?;
                println!("{n}\t{value}\t{decimal}");
            }
        }
    }
    Ok(())
}
