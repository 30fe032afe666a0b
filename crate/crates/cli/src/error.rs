use std::process::ExitCode;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    /// JSON syntax or document schema problems.
    #[error("{origin}:{line}:{column}: {message}")]
    Syntax {
        origin: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{origin}: {message}")]
    Schema { origin: String, message: String },
    /// A library error, with the document line it points at when known.
    #[error("{}{source}", location(origin, *line))]
    Library {
        origin: Option<String>,
        line: Option<usize>,
        #[source]
        source: zgroupoid::Error,
    },
}

fn location(origin: &Option<String>, line: Option<usize>) -> String {
    match (origin, line) {
        (Some(o), Some(l)) => format!("{o}:{l}: "),
        (Some(o), None) => format!("{o}: "),
        _ => String::new(),
    }
}

impl From<zgroupoid::Error> for CliError {
    fn from(source: zgroupoid::Error) -> Self {
        CliError::Library {
            origin: None,
            line: None,
            source,
        }
    }
}

impl CliError {
    /// 1 for well-formed input that fails a law or a precondition, 2 otherwise.
    pub fn exit_code(&self) -> u8 {
        use zgroupoid::Error as E;
        match self {
            CliError::Library { source, .. } => match source {
                E::GroupoidAxiom { .. }
                | E::MorphismAxiom { .. }
                | E::ActionAxiom { .. }
                | E::GroupAxiom { .. }
                | E::NotGroupAction(_)
                | E::Precondition(_)
                | E::NotTransitive(_)
                | E::NotFunctor(_)
                | E::NotUnitBijective(_)
                | E::IsMono => 1,
                _ => 2,
            },
            _ => 2,
        }
    }

    pub fn code(&self) -> ExitCode {
        ExitCode::from(self.exit_code())
    }
}

pub type CliResult<T> = Result<T, CliError>;
