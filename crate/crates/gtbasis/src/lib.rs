//! Explicit Gelfand–Tsetlin type bases for representations of gl_n, o_N and sp_2n,
//! built from exact rational operators.

pub mod branching;
pub mod exact;
pub mod export;
pub mod gln;
pub mod liealg_bcd;
pub mod patterns;
pub mod yangian;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("not dominant: {0}")]
    NotDominant(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("outside domain: {0}")]
    Domain(String),
    #[error("size cap exceeded: {0}")]
    TooLarge(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("singular denominator: {0}")]
    Singular(String),
    #[error("internal contract violated: {0}")]
    Contract(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Classical series: `A` is gl_n, `B` is o_{2n+1}, `C` is sp_{2n}, `D` is o_{2n}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
}

impl Series {
    pub fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
        }
    }
}

impl std::str::FromStr for Series {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" | "GL" => Ok(Series::A),
            "B" => Ok(Series::B),
            "C" => Ok(Series::C),
            "D" => Ok(Series::D),
            _ => Err(Error::Parse(format!(
                "unknown series {s:?}; expected A, B, C or D"
            ))),
        }
    }
}

impl std::fmt::Display for Series {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.letter())
    }
}
