use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument was outside the domain of the operation.
    InvalidArgument { what: &'static str, value: i64 },
    /// Ascending search hit its cap without finding a solution.
    CappedSearch { cap: u64 },
    /// The requested bounding method does not apply to this input.
    InapplicableMethod(&'static str),
    /// Pentagon completion divided by a vanishing coordinate.
    DegenerateConfiguration,
    /// `xy = 16` in the reduced objective.
    SingularInput,
    /// `2g + t - 2 < 1` in the Fuchsian degree bound.
    InvalidSignature { genus: u32, cusps: u32 },
    /// A threshold minimum was attained too close to the edge of its scan window.
    ThresholdWindow { family: &'static str, at: u64, edge: u64 },
    /// The aggregate bound was requested without every family report.
    IncompleteCampaign(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidArgument { what, value } => {
                write!(f, "invalid argument: {what} (got {value})")
            }
            Error::CappedSearch { cap } => write!(f, "no solution found below cap {cap}"),
            Error::InapplicableMethod(why) => write!(f, "method not applicable: {why}"),
            Error::DegenerateConfiguration => write!(f, "degenerate pentagon: q14 = 0"),
            Error::SingularInput => write!(f, "singular input: xy = 16"),
            Error::InvalidSignature { genus, cusps } => {
                write!(f, "invalid signature (g, t) = ({genus}, {cusps}): need 2g + t - 2 >= 1")
            }
            Error::ThresholdWindow { family, at, edge } => write!(
                f,
                "{family}: threshold minimum at {at} is too close to the window edge {edge}"
            ),
            Error::IncompleteCampaign(missing) => write!(f, "missing family report: {missing}"),
        }
    }
}

impl core::error::Error for Error {}
