mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;
use thiserror::Error;

use args::{Cli, Command};
use output::Sink;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad input that clap could not catch: malformed vectors, unknown names, invalid points.
    #[error("{0}")]
    Usage(String),

    #[error("check {id} failed: {detail}")]
    Computation { id: String, detail: String },

    #[error("failing checks: {}", .0.join(", "))]
    ChecksFailed(Vec<String>),

    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    fn from_core_in_check(e: w3_core::Error, id: &str) -> Self {
        match e {
            w3_core::Error::TailTooLarge { .. } => CliError::Computation { id: id.into(), detail: e.to_string() },
            other => other.into(),
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

impl From<w3_core::Error> for CliError {
    fn from(e: w3_core::Error) -> Self {
        use w3_core::Error as E;
        match e {
            E::VectorSyntax { .. }
            | E::InvalidMonomial(_)
            | E::UnknownBuiltin(_)
            | E::UnknownModule(_)
            | E::ParseComplex(_)
            | E::ParseRational(_)
            | E::InvalidLabel { .. }
            | E::NotInUpperHalfPlane
            | E::Json(_) => CliError::Usage(e.to_string()),
            other => CliError::Computation { id: "internal".into(), detail: other.to_string() },
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let sink = Sink::new(cli.json, cli.quiet);
    match &cli.command {
        Command::Singular(a) => commands::singular(&sink, a),
        Command::Zhu(a) => commands::zhu(&sink, a),
        Command::Ideal(a) => commands::ideal(&sink, a),
        Command::Characters(a) => commands::characters(&sink, a),
        Command::ModularCheck(a) => commands::modular_check(&sink, a),
        Command::Verify(a) => commands::verify(&sink, a),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("w3: {e}");
            if matches!(e, CliError::Usage(_)) {
                eprintln!("run `w3 --help` for the command grammar");
            }
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn input_errors_are_usage_errors() {
        let e: CliError = w3_core::Error::UnknownModule("X".into()).into();
        assert_eq!(e.exit_code(), 2);
        let e: CliError = w3_core::Error::ZeroLeadingCoefficient.into();
        assert_eq!(e.exit_code(), 1);
    }

    #[test]
    fn tail_failures_name_the_check() {
        let e = CliError::from_core_in_check(w3_core::Error::TailTooLarge { tail: 1.0, tol: 1e-9 }, "modular-check");
        assert!(e.to_string().starts_with("check modular-check failed"));
        assert_eq!(e.exit_code(), 1);
    }
}
