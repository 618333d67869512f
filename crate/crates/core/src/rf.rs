//! Closed-form propagation physics.
//!
//! Units follow radio-planning practice: frequencies in MHz, Hata distances
//! in km, everything else in SI. Gains are dB at the API boundary and linear
//! inside the field equations.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{check, finite, non_negative, positive, Result};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT_M_S: f64 = 299_792_458.0;

/// Impedance of free space approximated as 120π Ω.
pub const FREE_SPACE_IMPEDANCE_OHM: f64 = 120.0 * PI;

/// Frequency range (MHz) over which the Hata fit was derived.
pub const HATA_FREQ_RANGE_MHZ: (f64, f64) = (150.0, 1500.0);
/// Base-station antenna height range (m) of the Hata fit.
pub const HATA_BS_HEIGHT_RANGE_M: (f64, f64) = (30.0, 200.0);
/// Distance range (km) of the Hata fit.
pub const HATA_DISTANCE_RANGE_KM: (f64, f64) = (1.0, 20.0);

pub fn db_to_linear(gain_db: f64) -> Result<f64> {
    finite("gain_db", gain_db)?;
    Ok(10f64.powf(gain_db / 10.0))
}

pub fn linear_to_db(ratio: f64) -> Result<f64> {
    positive("ratio", ratio)?;
    Ok(10.0 * ratio.log10())
}

/// Free-space wavelength in metres for a carrier in MHz.
pub fn wavelength_m(freq_mhz: f64) -> Result<f64> {
    positive("freq_mhz", freq_mhz)?;
    Ok(SPEED_OF_LIGHT_M_S / (freq_mhz * 1e6))
}

/// Boundary of the antenna near field, `2L²/λ`.
pub fn near_field_distance(antenna_dim_m: f64, freq_mhz: f64) -> Result<f64> {
    non_negative("antenna_dim_m", antenna_dim_m)?;
    let lambda = wavelength_m(freq_mhz)?;
    Ok(2.0 * antenna_dim_m * antenna_dim_m / lambda)
}

/// Mobile-antenna correction factor `a(h_re)` for a small or medium city.
pub fn hata_correction_small_city(freq_mhz: f64, rx_antenna_height_m: f64) -> Result<f64> {
    positive("freq_mhz", freq_mhz)?;
    positive("rx_antenna_height_m", rx_antenna_height_m)?;
    let lf = freq_mhz.log10();
    Ok((1.1 * lf - 0.7) * rx_antenna_height_m - (1.56 * lf - 0.8))
}

/// A parameter that lies outside the range the Hata model was fitted on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ValidityWarning {
    Frequency(f64),
    BsAntennaHeight(f64),
    Distance(f64),
}

impl fmt::Display for ValidityWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (name, value, (lo, hi), unit) = match *self {
            Self::Frequency(v) => ("freq_mhz", v, HATA_FREQ_RANGE_MHZ, "MHz"),
            Self::BsAntennaHeight(v) => ("bs_antenna_height_m", v, HATA_BS_HEIGHT_RANGE_M, "m"),
            Self::Distance(v) => ("distance_km", v, HATA_DISTANCE_RANGE_KM, "km"),
        };
        write!(
            f,
            "{name} = {value} outside Hata validity range [{lo}, {hi}] {unit}"
        )
    }
}

/// Path loss together with any out-of-range annotations.
#[derive(Debug, Clone, PartialEq)]
pub struct PathLoss {
    pub loss_db: f64,
    pub warnings: Vec<ValidityWarning>,
}

pub(crate) fn hata_warnings(
    freq_mhz: f64,
    bs_antenna_height_m: f64,
    distance_km: Option<f64>,
) -> Vec<ValidityWarning> {
    let outside = |v: f64, (lo, hi): (f64, f64)| v < lo || v > hi;
    let mut warnings = Vec::new();
    if outside(freq_mhz, HATA_FREQ_RANGE_MHZ) {
        warnings.push(ValidityWarning::Frequency(freq_mhz));
    }
    if outside(bs_antenna_height_m, HATA_BS_HEIGHT_RANGE_M) {
        warnings.push(ValidityWarning::BsAntennaHeight(bs_antenna_height_m));
    }
    if let Some(d) = distance_km {
        if outside(d, HATA_DISTANCE_RANGE_KM) {
            warnings.push(ValidityWarning::Distance(d));
        }
    }
    warnings
}

/// Distance-independent part of the Hata loss and the dB-per-decade slope
/// of its distance term.
pub(crate) fn hata_terms(
    freq_mhz: f64,
    bs_antenna_height_m: f64,
    rx_antenna_height_m: f64,
) -> Result<(f64, f64)> {
    positive("bs_antenna_height_m", bs_antenna_height_m)?;
    let correction = hata_correction_small_city(freq_mhz, rx_antenna_height_m)?;
    let lh = bs_antenna_height_m.log10();
    let intercept = 69.55 + 26.16 * freq_mhz.log10() - 13.82 * lh - correction;
    let slope = 44.9 - 6.55 * lh;
    Ok((intercept, slope))
}

/// Hata path loss (dB) for a small city. Out-of-range parameters still
/// produce a value and are reported in [`PathLoss::warnings`].
pub fn hata_path_loss(
    freq_mhz: f64,
    bs_antenna_height_m: f64,
    rx_antenna_height_m: f64,
    distance_km: f64,
) -> Result<PathLoss> {
    positive("distance_km", distance_km)?;
    let (intercept, slope) = hata_terms(freq_mhz, bs_antenna_height_m, rx_antenna_height_m)?;
    Ok(PathLoss {
        loss_db: intercept + slope * distance_km.log10(),
        warnings: hata_warnings(freq_mhz, bs_antenna_height_m, Some(distance_km)),
    })
}

/// Straight-line distance from the payload to a ground point.
pub fn slant_range(altitude_m: f64, ground_offset_m: f64) -> Result<f64> {
    non_negative("altitude_m", altitude_m)?;
    non_negative("ground_offset_m", ground_offset_m)?;
    let r = altitude_m.hypot(ground_offset_m);
    check(
        r > 0.0,
        "slant range",
        "> 0 (altitude and offset both zero)",
        r,
    )?;
    Ok(r)
}

fn check_field_args(power_w: f64, gain_linear: f64, range_m: f64) -> Result<()> {
    non_negative("power_w", power_w)?;
    positive("gain_linear", gain_linear)?;
    positive("range_m", range_m)
}

/// Isotropic-equivalent far-field power density `P·G / (4πR²)` in W/m².
pub fn power_density(power_w: f64, gain_linear: f64, range_m: f64) -> Result<f64> {
    check_field_args(power_w, gain_linear, range_m)?;
    Ok(power_w * gain_linear / (4.0 * PI * range_m * range_m))
}

/// RMS electric field `√(30·P·G) / R` in V/m.
pub fn e_field_rms(power_w: f64, gain_linear: f64, range_m: f64) -> Result<f64> {
    check_field_args(power_w, gain_linear, range_m)?;
    Ok((30.0 * power_w * gain_linear).sqrt() / range_m)
}

/// Friis received power `P·Gt·Gr·λ² / (4πR)²` in W.
pub fn received_power(
    power_w: f64,
    tx_gain_linear: f64,
    rx_gain_linear: f64,
    freq_mhz: f64,
    range_m: f64,
) -> Result<f64> {
    check_field_args(power_w, tx_gain_linear, range_m)?;
    positive("rx_gain_linear", rx_gain_linear)?;
    let lambda = wavelength_m(freq_mhz)?;
    let spread = 4.0 * PI * range_m;
    Ok(power_w * tx_gain_linear * rx_gain_linear * lambda * lambda / (spread * spread))
}

/// Antenna gain, kept in whichever unit it was specified.
///
/// `Linear` is used verbatim, which lets callers reproduce published tables
/// that rounded a dB gain to a linear figure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gain {
    Db(f64),
    Linear(f64),
}

impl Gain {
    pub fn linear(self) -> Result<f64> {
        match self {
            Gain::Db(db) => db_to_linear(db),
            Gain::Linear(g) => {
                positive("gain_linear", g)?;
                Ok(g)
            }
        }
    }

    pub fn db(self) -> Result<f64> {
        match self {
            Gain::Db(db) => {
                finite("gain_db", db)?;
                Ok(db)
            }
            Gain::Linear(g) => linear_to_db(g),
        }
    }
}

/// Radiating side of the link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransmitterConfig {
    pub power_w: f64,
    pub gain: Gain,
    pub freq_mhz: f64,
    pub antenna_dim_m: f64,
}

impl TransmitterConfig {
    pub fn validate(&self) -> Result<()> {
        positive("power_w", self.power_w)?;
        self.gain.linear()?;
        positive("freq_mhz", self.freq_mhz)?;
        non_negative("antenna_dim_m", self.antenna_dim_m)
    }

    /// Effective isotropic radiated power `P·G` in W.
    pub fn eirp_w(&self) -> Result<f64> {
        Ok(self.power_w * self.gain.linear()?)
    }
}

/// Placement of the payload relative to one ground receiver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkGeometry {
    pub altitude_m: f64,
    pub ground_offset_m: f64,
    pub bs_antenna_height_m: f64,
    pub rx_antenna_height_m: f64,
    pub rx_gain_db: f64,
}

impl LinkGeometry {
    pub fn validate(&self) -> Result<()> {
        non_negative("altitude_m", self.altitude_m)?;
        non_negative("ground_offset_m", self.ground_offset_m)?;
        positive("bs_antenna_height_m", self.bs_antenna_height_m)?;
        positive("rx_antenna_height_m", self.rx_antenna_height_m)?;
        finite("rx_gain_db", self.rx_gain_db)
    }

    pub fn range_m(&self) -> Result<f64> {
        slant_range(self.altitude_m, self.ground_offset_m)
    }
}

/// Every link quantity evaluated at one geometry.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkBudgetResult {
    pub path_loss_db: f64,
    pub power_density_w_m2: f64,
    pub e_field_v_m: f64,
    pub received_power_w: f64,
    pub range_m: f64,
    pub warnings: Vec<ValidityWarning>,
}

/// Evaluates the link at `geometry`. The Hata distance is the slant range
/// expressed in km.
pub fn evaluate_link(tx: &TransmitterConfig, geometry: &LinkGeometry) -> Result<LinkBudgetResult> {
    tx.validate()?;
    geometry.validate()?;
    let range_m = geometry.range_m()?;
    let gt = tx.gain.linear()?;
    let gr = db_to_linear(geometry.rx_gain_db)?;
    let path_loss = hata_path_loss(
        tx.freq_mhz,
        geometry.bs_antenna_height_m,
        geometry.rx_antenna_height_m,
        range_m / 1000.0,
    )?;
    Ok(LinkBudgetResult {
        path_loss_db: path_loss.loss_db,
        power_density_w_m2: power_density(tx.power_w, gt, range_m)?,
        e_field_v_m: e_field_rms(tx.power_w, gt, range_m)?,
        received_power_w: received_power(tx.power_w, gt, gr, tx.freq_mhz, range_m)?,
        range_m,
        warnings: path_loss.warnings,
    })
}
