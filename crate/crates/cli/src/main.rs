use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use fuzzy_dematel::{
    emit_diagram, reproduce, run_report, AnalysisReport, CsfRule, DefuzzMode, DiagramFormat, Error, InputKind,
    RunOptions, Tolerances,
};

const EXIT_CODES: &str = "\
Exit status:
   0  success
   1  reproduce: at least one check failed
   2  usage error
   3  unreadable/unwritable file
  10  MalformedDocument        11  UnknownFactor         12  DuplicateJudgment
  13  MissingJudgment          14  SelfJudgment          15  UnknownTerm
  16  NonSquare                17  NegativeEntry         18  NonNumericField
  19  RaggedPanel              20  EmptyPanel            21  NegativeScalar
  22  DivisionByZeroComponent  23  InvalidFuzzyNumber    24  InvalidScale
  25  InvalidCatalog           26  DimensionMismatch     27  ZeroMatrix
  28  SingularSystem           29  KExceedsCauseGroup    30  Io";

#[derive(Parser)]
#[command(name = "fdematel", version, about = "Fuzzy DEMATEL cause-effect analysis", after_help = EXIT_CODES)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    PerExpert,
    Aggregate,
}

#[derive(Clone, Copy, ValueEnum)]
enum InputFormat {
    Survey,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Svg,
    Dot,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Analyse a survey (.json) or crisp direct-relation matrix (.csv) and write a JSON report.
    Run {
        input: PathBuf,
        /// Override input detection by file extension.
        #[arg(long, value_enum)]
        input_format: Option<InputFormat>,
        /// Defuzzification route for survey input.
        #[arg(long, value_enum, default_value = "per-expert")]
        mode: Mode,
        /// Zero the diagonal of the direct-relation matrix before normalizing.
        #[arg(long)]
        zero_diagonal: bool,
        /// Critical-success-factor rule: `cause-group` or `top-<k>`.
        #[arg(long, default_value = "cause-group")]
        csf: String,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Recompute the embedded case study and compare with the printed tables.
    Reproduce {
        /// Per-cell tolerance against the printed total-relation matrix.
        #[arg(long, default_value_t = Tolerances::default().total)]
        tolerance: f64,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Draw the cause-effect diagram of a report.
    Diagram {
        report: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

enum Failure {
    Domain(Error),
    File(anyhow::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).with_context(|| format!("reading {}", path.display())).map_err(Failure::File)
}

fn write_out(output: Option<&Path>, body: &str) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, body).with_context(|| format!("writing {}", path.display())),
        None => std::io::stdout().write_all(body.as_bytes()).context("writing standard output"),
    }
    .map_err(Failure::File)
}

fn execute(command: Command) -> Result<bool, Failure> {
    match command {
        Command::Run { input, input_format, mode, zero_diagonal, csf, output } => {
            let kind = match input_format {
                Some(InputFormat::Survey) => InputKind::Survey,
                Some(InputFormat::Csv) => InputKind::CrispMatrix,
                None => InputKind::from_path(&input).ok_or_else(|| {
                    Failure::File(anyhow!(
                        "cannot tell the format of {} from its extension; pass --input-format",
                        input.display()
                    ))
                })?,
            };
            let options = RunOptions {
                mode: match mode {
                    Mode::PerExpert => DefuzzMode::PerExpertBnp,
                    Mode::Aggregate => DefuzzMode::AggregateThenDefuzzify,
                },
                zero_diagonal,
                csf_rule: csf.parse::<CsfRule>()?,
            };
            let bytes = read(&input)?;
            let report = run_report(&input.display().to_string(), &bytes, kind, &options)?;
            write_out(output.as_deref(), &report.to_json())?;
            Ok(true)
        }
        Command::Reproduce { tolerance, output } => {
            let verification = reproduce(Tolerances { total: tolerance, ..Tolerances::default() });
            write_out(output.as_deref(), &verification.render())?;
            Ok(verification.passed())
        }
        Command::Diagram { report, format, output } => {
            let text = String::from_utf8(read(&report)?)
                .map_err(|e| Error::MalformedDocument(format!("report is not UTF-8: {e}")))?;
            let report = AnalysisReport::from_json(&text)?;
            let format = match format {
                Format::Svg => DiagramFormat::Svg,
                Format::Dot => DiagramFormat::Dot,
                Format::Json => DiagramFormat::Json,
            };
            write_out(output.as_deref(), &emit_diagram(&report.to_result(), format))?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Domain(e)) => {
            eprintln!("error [{}]: {e}", e.class());
            ExitCode::from(e.exit_code() as u8)
        }
        Err(Failure::File(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}
