//! Link budget and electromagnetic exposure models for tethered-balloon
//! base stations.
//!
//! The crate is split by concern:
//!
//! * [`rf`] holds the closed-form propagation physics: Hata path loss for a
//!   small city, near-field distance, slant range, free-space power density,
//!   rms E-field and received power.
//! * [`coverage`] inverts the path-loss model for a cell radius and lays out
//!   multi-balloon constellations on a hexagonal lattice.
//! * [`exposure`] produces density and field profiles and classifies
//!   exposure zones against configurable thresholds.
//! * [`green`] compares annual CO₂ output of a diesel terrestrial fleet with
//!   a balloon deployment.
//!
//! All routines are pure functions over `f64` and are safe to call from any
//! thread.

pub mod coverage;
pub mod error;
pub mod exposure;
pub mod green;
pub mod rf;

pub use coverage::{Cell, Constellation};
pub use error::{Error, Result};
pub use exposure::{ExposureZone, SweepSeries, ZoneThresholds};
pub use green::{GreenComparison, PowerSourceProfile, SourceKind};
pub use rf::{Gain, LinkBudgetResult, LinkGeometry, PathLoss, TransmitterConfig, ValidityWarning};
