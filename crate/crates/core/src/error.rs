use thiserror::Error;

/// Errors raised by the physics and planning routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument fell outside the domain of the formula.
    #[error("{name} must be {constraint} (got {value})")]
    Domain {
        name: &'static str,
        constraint: &'static str,
        value: f64,
    },
    /// A list argument that must contain at least one element was empty.
    #[error("{0} must not be empty")]
    Empty(&'static str),
    /// The distance term of the path-loss model has a non-positive slope.
    #[error("path loss cannot be inverted: distance slope {slope_db_per_decade} dB/decade is not positive")]
    NotInvertible { slope_db_per_decade: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check(
    ok: bool,
    name: &'static str,
    constraint: &'static str,
    value: f64,
) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            constraint,
            value,
        })
    }
}

pub(crate) fn positive(name: &'static str, value: f64) -> Result<()> {
    check(value.is_finite() && value > 0.0, name, "> 0", value)
}

pub(crate) fn non_negative(name: &'static str, value: f64) -> Result<()> {
    check(value.is_finite() && value >= 0.0, name, ">= 0", value)
}

pub(crate) fn finite(name: &'static str, value: f64) -> Result<()> {
    check(value.is_finite(), name, "finite", value)
}
