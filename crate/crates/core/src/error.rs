use core::fmt;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An operation requiring a nonzero integer received zero.
    ZeroInput,
    /// An operation requiring a nonnegative integer received a negative one.
    NegativeInput,
    /// `d` is not a square-free integer outside {0, 1}.
    InvalidD(i64),
    /// Not a discriminant: must be ≡ 0 or 1 (mod 4), nonzero and not a square.
    InvalidDiscriminant(i64),
    /// A definite form was required (discriminant < 0).
    NotDefinite,
    /// An indefinite form was required (discriminant > 0).
    NotIndefinite,
    /// The discriminant is a perfect square; such forms are out of scope.
    SquareDiscriminant,
    /// Two forms that must share a discriminant do not.
    DiscMismatch,
    /// A primitive form was required but gcd(a, b, c) > 1.
    ImprimitiveForm,
    /// A negative definite class cannot enter Gauss composition directly.
    NegativeDefiniteClass,
    /// `d` has the wrong residue modulo 4 for this operation.
    WrongResidue(i64),
    /// The opposite relation has already been applied to this set.
    AlreadyCollapsed,
    /// No represented value coprime to twice the discriminant was found below
    /// the search bound; indicates a bug, not a mathematical possibility.
    NoCoprimeValueFound,
    /// An intermediate value exceeded the fixed-width integer range.
    Overflow,
    /// A closed-form count disagreed with direct enumeration.
    FormulaMismatch {
        context: &'static str,
        expected: u64,
        actual: u64,
    },
    /// An internal invariant was violated; always a bug.
    Internal(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroInput => write!(f, "input must be nonzero"),
            Error::NegativeInput => write!(f, "input must be nonnegative"),
            Error::InvalidD(d) => {
                write!(f, "d = {d} is not a square-free integer outside {{0, 1}}")
            }
            Error::InvalidDiscriminant(disc) => write!(
                f,
                "{disc} is not a usable discriminant (need ≡ 0,1 mod 4, nonzero, nonsquare)"
            ),
            Error::NotDefinite => write!(f, "form is not definite"),
            Error::NotIndefinite => write!(f, "form is not indefinite"),
            Error::SquareDiscriminant => write!(f, "square discriminants are out of scope"),
            Error::DiscMismatch => write!(f, "forms have different discriminants"),
            Error::ImprimitiveForm => write!(f, "form is imprimitive"),
            Error::NegativeDefiniteClass => {
                write!(f, "negative definite classes cannot be composed")
            }
            Error::WrongResidue(d) => write!(f, "d = {d} has the wrong residue mod 4"),
            Error::AlreadyCollapsed => write!(f, "opposite classes were already collapsed"),
            Error::NoCoprimeValueFound => {
                write!(f, "no represented value coprime to 2·disc found (bug)")
            }
            Error::Overflow => write!(f, "integer overflow"),
            Error::FormulaMismatch {
                context,
                expected,
                actual,
            } => write!(
                f,
                "formula/enumeration mismatch in {context}: formula {expected}, enumeration {actual}"
            ),
            Error::Internal(msg) => write!(f, "internal invariant violated: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
