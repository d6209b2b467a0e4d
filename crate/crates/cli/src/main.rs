//! `lspace`: command-line front end.
//!
//! Exit codes: 0 for a positive certificate (or a successful report), 1 for
//! a negative or inapplicable result, 2 for input and resource errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lspace::heegaard::gen_lens_labeled;
use lspace::report::{self, LoMode};
use lspace::{recognize_s3, HeegaardDiagram, Limits, Presentation, S3Outcome, SignMatrix};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "lspace", version, about = "Certificates for strong Heegaard diagrams")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write the report (or generated diagram) here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,

    /// Cap on enumerated Floer generators / perfect matchings.
    #[arg(long, default_value_t = 1_000_000, global = true,
          value_parser = clap::value_parser!(u64).range(1..))]
    max_generators: u64,

    /// Cap on the order of formal determinants.
    #[arg(long, default_value_t = 12, global = true,
          value_parser = clap::value_parser!(u64).range(1..))]
    max_perm_n: u64,

    /// Cap on rows for the exhaustive row-scaling test.
    #[arg(long, default_value_t = 16, global = true,
          value_parser = clap::value_parser!(u64).range(1..=32))]
    max_bruteforce_rows: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    #[value(alias = "structured")]
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Det,
    Bruteforce,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Full report on a diagram file.
    Analyze { file: PathBuf },
    /// Decide whether a diagram is a strong Heegaard diagram.
    CheckStrong { file: PathBuf },
    /// Non-left-orderability test on a sign matrix or presentation file.
    CheckLo {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Det)]
        mode: Mode,
    },
    /// S³ recognition for a strong diagram with trivial H₁.
    RecognizeS3 { file: PathBuf },
    /// Generate a diagram file.
    Gen {
        #[command(subcommand)]
        family: Family,
    },
    /// Count and algebraic intersection matrices, determinant and permanent.
    Matrix { file: PathBuf },
}

#[derive(Debug, Subcommand)]
enum Family {
    /// Standard genus-one diagram of the lens space L(p, q).
    Lens {
        p: u64,
        /// Recorded as a label; does not change the diagram.
        #[arg(long)]
        q: Option<u64>,
    },
}

enum Failure {
    Input(String),
    Resource(String),
}

impl From<lspace::Error> for Failure {
    fn from(e: lspace::Error) -> Self {
        if e.is_resource_limit() {
            Failure::Resource(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_diagram(path: &Path) -> Result<HeegaardDiagram, Failure> {
    read(path)?
        .parse()
        .map_err(|e: lspace::Error| Failure::Input(format!("{}: {e}", path.display())))
}

/// Sign-matrix text, or a presentation (first line `gens m`) whose ε-matrix
/// is used.
fn read_sign_matrix(path: &Path) -> Result<SignMatrix, Failure> {
    let text = read(path)?;
    let parsed = if text.starts_with("gens") {
        text.parse::<Presentation>().map(|p| p.epsilon_matrix())
    } else {
        text.parse::<SignMatrix>()
    };
    parsed.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

struct Output<'a> {
    format: Format,
    path: Option<&'a Path>,
}

impl Output<'_> {
    fn emit<T: Serialize + std::fmt::Display>(&self, value: &T) -> Result<(), Failure> {
        let mut text = match self.format {
            Format::Text => value.to_string(),
            Format::Json => serde_json::to_string_pretty(value)
                .map_err(|e| Failure::Input(format!("serializing report: {e}")))?,
        };
        if !text.ends_with('\n') {
            text.push('\n');
        }
        self.write_raw(&text)
    }

    fn write_raw(&self, text: &str) -> Result<(), Failure> {
        match self.path {
            Some(p) => fs::write(p, text)
                .map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes())
                    .and_then(|_| out.flush())
                    .map_err(|e| Failure::Input(format!("stdout: {e}")))
            }
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let limits = Limits {
        max_generators: usize::try_from(cli.max_generators).unwrap_or(usize::MAX),
        max_perm_n: usize::try_from(cli.max_perm_n).unwrap_or(usize::MAX),
        max_bruteforce_rows: cli.max_bruteforce_rows as usize,
    };
    let out = Output {
        format: cli.format,
        path: cli.output.as_deref(),
    };
    match &cli.command {
        Command::Analyze { file } => {
            let h = read_diagram(file)?;
            out.emit(&report::analyze(&h, &limits)?)?;
            Ok(0)
        }
        Command::CheckStrong { file } => {
            let h = read_diagram(file)?;
            let r = h.strong_report(limits.max_generators)?;
            out.emit(&r)?;
            Ok(if r.is_strong { 0 } else { 1 })
        }
        Command::CheckLo { file, mode } => {
            let e = read_sign_matrix(file)?;
            let mode = match mode {
                Mode::Det => LoMode::Det,
                Mode::Bruteforce => LoMode::Bruteforce,
            };
            let r = report::check_lo(&e, mode, &limits)?;
            out.emit(&r)?;
            Ok(if r.certified { 0 } else { 1 })
        }
        Command::RecognizeS3 { file } => {
            let h = read_diagram(file)?;
            let v = recognize_s3(&h, &limits)?;
            out.emit(&v)?;
            Ok(if v.outcome == S3Outcome::IsS3 { 0 } else { 1 })
        }
        Command::Gen {
            family: Family::Lens { p, q },
        } => {
            let p = usize::try_from(*p).map_err(|_| Failure::Input("p too large".into()))?;
            let h = gen_lens_labeled(p, *q)?;
            out.write_raw(&h.to_file_string())?;
            Ok(0)
        }
        Command::Matrix { file } => {
            let h = read_diagram(file)?;
            out.emit(&report::matrices(&h, &limits)?)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Resource(msg)) => {
            eprintln!("resource limit: {msg}");
            ExitCode::from(2)
        }
    }
}
