use nonevade::caps::CapsParseError;
use nonevade::certifier::{CertifyError, VerifyError};
use nonevade::complex::ComplexError;
use nonevade::game::GameError;
use nonevade::lattice::LatticeError;
use nonevade::oracles::OracleError;
use serde::Serialize;

/// Exit 1: the input is well formed but fails a mathematical check.
pub const SEMANTIC: u8 = 1;
/// Exit 2: usage, parse or I/O problem.
pub const USAGE: u8 = 2;

#[derive(Debug, Serialize)]
pub struct CliError {
    #[serde(rename = "exit")]
    pub code: u8,
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    pub fn new(code: u8, kind: &'static str, message: impl Into<String>) -> Self {
        CliError {
            code,
            kind,
            message: message.into(),
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        CliError::new(USAGE, "usage", message)
    }

    pub fn io(path: &std::path::Path, e: std::io::Error) -> Self {
        CliError::new(USAGE, "io", format!("{}: {e}", path.display()))
    }

    pub fn report(&self, json: bool) {
        if json {
            eprintln!("{}", serde_json::json!({ "error": self }));
        } else {
            eprintln!("error: {}", self.message);
        }
    }
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        use LatticeError::*;
        let (code, kind) = match &e {
            Parse { .. } => (USAGE, "parse"),
            InvalidLabel(_) | DuplicateElement(_) => (USAGE, "parse"),
            UnknownElement(_) | NotAnAtom(_) | NotACoatom(_) | NotInterior(_)
            | NotComparable(..) => (USAGE, "argument"),
            UnknownFamily(_) | ParamOutOfRange(_) => (USAGE, "argument"),
            CycleDetected(_) | NotAPartialOrder(_) => (SEMANTIC, "not-a-poset"),
            NoUniqueBottom(_) | NoUniqueTop(_) | NotALattice { .. } => (SEMANTIC, "not-a-lattice"),
        };
        CliError::new(code, kind, e.to_string())
    }
}

impl From<CertifyError> for CliError {
    fn from(e: CertifyError) -> Self {
        match e {
            CertifyError::Lattice(e) => e.into(),
            CertifyError::ElementOnBoundary(_) => CliError::new(USAGE, "argument", e.to_string()),
            CertifyError::Verify(e) => e.into(),
            _ => CliError::new(SEMANTIC, "certify", e.to_string()),
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        CliError::new(SEMANTIC, "verify", e.to_string())
    }
}

impl From<ComplexError> for CliError {
    fn from(e: ComplexError) -> Self {
        CliError::new(SEMANTIC, "complex", e.to_string())
    }
}

impl From<GameError> for CliError {
    fn from(e: GameError) -> Self {
        match e {
            GameError::Lattice(e) => e.into(),
            GameError::CapExceeded { .. } => CliError::new(USAGE, "cap", e.to_string()),
            _ => CliError::new(SEMANTIC, "game", e.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        CliError::new(USAGE, "cap", e.to_string())
    }
}

impl From<CapsParseError> for CliError {
    fn from(e: CapsParseError) -> Self {
        CliError::usage(e.to_string())
    }
}
