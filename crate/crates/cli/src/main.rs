//! `qbiperm`: evaluate circuits, compare and dilate channels, and inspect the
//! topology of hom-sets from the command line. All output is JSON.

mod input;
mod selftest;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qbiperm::algebra::Picture;
use qbiperm::completion::BuiltinTarget;
use qbiperm::normalform::{channel_equal, stinespring_family, NormalForm};
use qbiperm::{tol, topology, Error};
use serde_json::{json, Value};

use input::{load, CliError};

#[derive(Parser)]
#[command(
    name = "qbiperm",
    version,
    about = "Circuits, channels and their normal forms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum PictureArg {
    Schrodinger,
    Heisenberg,
}

impl From<PictureArg> for Picture {
    fn from(p: PictureArg) -> Picture {
        match p {
            PictureArg::Schrodinger => Picture::Schrodinger,
            PictureArg::Heisenberg => Picture::Heisenberg,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a circuit file (.qc) to a matrix or channel.
    Eval {
        file: PathBuf,
        /// Write the result here and print only its type.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Semantic equality of two circuits or channels.
    Compare {
        a: PathBuf,
        b: PathBuf,
        /// Tolerance; defaults to $QBIPERM_TOL, then 1e-9.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Minimal Stinespring dilation of a channel.
    Dilate { channel: PathBuf },
    /// Normal form of a channel, read in the chosen picture.
    Normalform {
        channel: PathBuf,
        #[arg(long, value_enum)]
        picture: Option<PictureArg>,
    },
    /// Connected components of the unital *-homomorphisms DOM → [COD].
    Components {
        #[arg(long, value_delimiter = ',', required = true)]
        dom: Vec<usize>,
        #[arg(long)]
        cod: usize,
    },
    /// Transfer-matrix distance between two channels.
    Distance { a: PathBuf, b: PathBuf },
    /// Image of a channel under the universal lift into a target.
    Lift {
        #[arg(long)]
        target: String,
        input: PathBuf,
    },
    /// Run the law checks on sampled data.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => return report(&CliError::Usage(e.to_string().trim().to_string())),
    };
    match run(cli.command) {
        Ok((value, code)) => {
            if let Some(v) = value {
                // A closed pipe downstream is not an error worth reporting.
                let _ = writeln!(std::io::stdout(), "{v}");
            }
            ExitCode::from(code)
        }
        Err(e) => report(&e),
    }
}

fn report(e: &CliError) -> ExitCode {
    eprintln!("{}", json!({ "kind": e.kind(), "message": e.to_string() }));
    ExitCode::from(e.exit_code())
}

fn forms_json(forms: &[NormalForm]) -> Result<Value, CliError> {
    let value = match forms {
        [single] => serde_json::to_value(single),
        many => serde_json::to_value(many),
    };
    Ok(value.map_err(|e| Error::InvalidData(e.to_string()))?)
}

fn run(command: Command) -> Result<(Option<Value>, u8), CliError> {
    let done = |v: Value| Ok((Some(v), 0));
    match command {
        Command::Eval { file, out } => {
            let source = input::read(&file)?;
            let expr = qbiperm::circuits::parse(&source)?;
            let ty = qbiperm::circuits::typecheck(&expr)?;
            let value = serde_json::to_value(qbiperm::circuits::evaluate(&expr)?)
                .map_err(|e| Error::InvalidData(e.to_string()))?;
            match out {
                Some(path) => {
                    std::fs::write(&path, format!("{value}\n"))
                        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                    done(json!({ "type": ty }))
                }
                None => done(value),
            }
        }
        Command::Compare { a, b, tol } => {
            let (f, g) = (load(&a)?, load(&b)?);
            let (equal, distance) = channel_equal(&f, &g, tol::resolve(tol))?;
            done(json!({ "equal": equal, "distance": distance }))
        }
        Command::Dilate { channel } => done(forms_json(&stinespring_family(&load(&channel)?)?)?),
        Command::Normalform { channel, picture } => {
            let forms = stinespring_family(&load(&channel)?)?;
            let forms: Vec<NormalForm> = match picture.map(Picture::from) {
                Some(p) => forms
                    .into_iter()
                    .map(|nf| if nf.picture == p { nf } else { nf.flipped() })
                    .collect(),
                None => forms,
            };
            done(forms_json(&forms)?)
        }
        Command::Components { dom, cod } => {
            if dom.contains(&0) {
                return Err(CliError::Usage("--dom entries must be positive".into()));
            }
            let atlas = topology::component_atlas(cod, &dom);
            done(serde_json::to_value(atlas).map_err(|e| Error::InvalidData(e.to_string()))?)
        }
        Command::Distance { a, b } => {
            let d = topology::distance(&load(&a)?, &load(&b)?)?;
            done(json!({ "distance": d }))
        }
        Command::Lift { target, input } => {
            let target: BuiltinTarget = target.parse()?;
            done(target.lift_json(&load(&input)?)?)
        }
        Command::Selftest { seed, samples } => {
            let (report, ok) = selftest::run(seed, samples)?;
            Ok((Some(report), if ok { 0 } else { 1 }))
        }
    }
}
