use std::fmt;

/// A position in parsed input, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("syntax error at {at}: {message}")]
    Syntax { at: Location, message: String },

    #[error("duplicate declaration of atom `{atom}`")]
    DuplicateAtom { atom: String },

    #[error("rule at {at} has an empty head and an empty body")]
    EmptyRule { at: Location },

    #[error("{what} needs {requested}, above the limit of {limit} (see --max-atoms)")]
    BoundExceeded {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    #[error("atom `{atom}` is not part of the signature")]
    UnknownAtom { atom: String },

    #[error("predicate `{predicate}` is used with arities {first} and {second}")]
    ArityMismatch {
        predicate: String,
        first: usize,
        second: usize,
    },

    #[error("unsupported construct at {at}: {message}")]
    Unsupported { at: Location, message: String },

    #[error("characterisations disagree for {notion}: this is a bug")]
    Inconsistent { notion: String },
}

impl Error {
    pub fn is_bound(&self) -> bool {
        matches!(self, Error::BoundExceeded { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
