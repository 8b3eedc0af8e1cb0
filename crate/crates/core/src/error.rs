use core::fmt;

/// Failures reported by the numerical routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A parameter or coordinate was NaN or infinite on input.
    NonFinite(&'static str),
    /// A single map evaluation produced a non-finite value.
    Overflow,
    /// The orbit left the escape ball at the given step (0-based, counted
    /// from the initial state including any transient).
    Diverged {
        step: usize,
    },
    /// `b > 1/4`: the quadratic has no real fixed points.
    NoRealFixedPoints {
        b: f64,
    },
    /// Homogeneous period-n lifting needs `n` not divisible by 3.
    PeriodDivisibleBy3 {
        period: usize,
    },
    /// A lifted seed did not close with the claimed period.
    LiftValidationFailed {
        expected_period: usize,
        found_period: Option<usize>,
    },
    /// The deduplicated number of lifted cycles disagrees with the counting formula.
    CountMismatch {
        expected: usize,
        found: usize,
    },
    /// No bifurcation of the requested kind was located in the bracket.
    NoEventInBracket {
        lo: f64,
        hi: f64,
    },
    /// Continuation lost track of a cycle branch near `b`.
    BranchLost {
        b: f64,
    },
    InvalidArgument(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonFinite(what) => write!(f, "{what} is not finite"),
            Error::Overflow => write!(f, "map evaluation overflowed"),
            Error::Diverged { step } => write!(f, "orbit diverged at step {step}"),
            Error::NoRealFixedPoints { b } => {
                write!(f, "no real fixed points for b = {b} (need b <= 1/4)")
            }
            Error::PeriodDivisibleBy3 { period } => {
                write!(
                    f,
                    "period {period} is divisible by 3; use the period-3n lift"
                )
            }
            Error::LiftValidationFailed {
                expected_period,
                found_period,
            } => match found_period {
                Some(p) => write!(f, "lifted seed has period {p}, expected {expected_period}"),
                None => write!(
                    f,
                    "lifted seed does not close within {expected_period} steps"
                ),
            },
            Error::CountMismatch { expected, found } => {
                write!(
                    f,
                    "found {found} distinct lifted cycles, formula predicts {expected}"
                )
            }
            Error::NoEventInBracket { lo, hi } => {
                write!(f, "no bifurcation event in bracket [{lo}, {hi}]")
            }
            Error::BranchLost { b } => write!(f, "cycle branch lost near b = {b}"),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
