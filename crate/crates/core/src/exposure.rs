//! Ground-level exposure profiles and zone classification.

use std::fmt;

use crate::error::{check, non_negative, positive, Error, Result};
use crate::rf::{self, TransmitterConfig};

/// Default number of samples in a sweep, endpoints included.
pub const DEFAULT_SWEEP_STEPS: usize = 101;

/// Default fraction of the limit at which a location is flagged as caution.
pub const DEFAULT_CAUTION_FRACTION: f64 = 0.1;

/// A sampled curve ordered by strictly increasing abscissa.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSeries {
    pub label: String,
    pub abscissa_name: String,
    pub unit: String,
    pub points: Vec<(f64, f64)>,
}

impl SweepSeries {
    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|&(_, v)| v)
    }

    /// Point with the largest value; the first one wins on ties.
    pub fn max_point(&self) -> Option<(f64, f64)> {
        self.points
            .iter()
            .copied()
            .fold(None, |best: Option<(f64, f64)>, p| match best {
                Some(b) if b.1 >= p.1 => Some(b),
                _ => Some(p),
            })
    }

    pub fn is_strictly_decreasing(&self) -> bool {
        self.points.windows(2).all(|w| w[1].1 < w[0].1)
    }
}

/// `steps` evenly spaced samples over `[lo, hi]`; both endpoints are exact.
fn grid(lo: f64, hi: f64, steps: usize) -> Result<Vec<f64>> {
    check(steps >= 2, "num_steps", ">= 2", steps as f64)?;
    let last = steps - 1;
    Ok((0..steps)
        .map(|i| {
            if i == last {
                hi
            } else {
                lo + (hi - lo) * i as f64 / last as f64
            }
        })
        .collect())
}

fn ordered_range(name: &'static str, lo: f64, hi: f64) -> Result<()> {
    positive(name, lo)?;
    check(
        hi.is_finite() && hi > lo,
        name,
        "a range with max > min",
        hi,
    )
}

fn series(
    label: &str,
    abscissa_name: &str,
    unit: &str,
    xs: Vec<f64>,
    f: impl Fn(f64) -> Result<f64>,
) -> Result<SweepSeries> {
    let points = xs
        .into_iter()
        .map(|x| f(x).map(|v| (x, v)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepSeries {
        label: label.to_owned(),
        abscissa_name: abscissa_name.to_owned(),
        unit: unit.to_owned(),
        points,
    })
}

/// Power density at each distance, one row per entry.
pub fn table_one(tx: &TransmitterConfig, distances_m: &[f64]) -> Result<Vec<(f64, f64)>> {
    if distances_m.is_empty() {
        return Err(Error::Empty("distances_m"));
    }
    let gain = tx.gain.linear()?;
    distances_m
        .iter()
        .map(|&r| rf::power_density(tx.power_w, gain, r).map(|pd| (r, pd)))
        .collect()
}

/// Density on the ground as the receiver walks away from the point directly
/// beneath the balloon, over offsets `[0, offset_max_m]`.
pub fn ground_density_profile(
    tx: &TransmitterConfig,
    altitude_m: f64,
    offset_max_m: f64,
    num_steps: usize,
) -> Result<SweepSeries> {
    positive("altitude_m", altitude_m)?;
    non_negative("offset_max_m", offset_max_m)?;
    let gain = tx.gain.linear()?;
    series(
        &format!("power density at altitude {altitude_m} m"),
        "ground_offset_m",
        "W/m^2",
        grid(0.0, offset_max_m, num_steps)?,
        |d| rf::power_density(tx.power_w, gain, rf::slant_range(altitude_m, d)?),
    )
}

/// Density at a fixed ground offset while the balloon altitude varies.
pub fn altitude_density_profile(
    tx: &TransmitterConfig,
    altitude_min_m: f64,
    altitude_max_m: f64,
    ground_offset_m: f64,
    num_steps: usize,
) -> Result<SweepSeries> {
    ordered_range("altitude_m", altitude_min_m, altitude_max_m)?;
    non_negative("ground_offset_m", ground_offset_m)?;
    let gain = tx.gain.linear()?;
    series(
        &format!("power density at ground offset {ground_offset_m} m"),
        "altitude_m",
        "W/m^2",
        grid(altitude_min_m, altitude_max_m, num_steps)?,
        |a| rf::power_density(tx.power_w, gain, rf::slant_range(a, ground_offset_m)?),
    )
}

/// RMS E-field against slant range.
pub fn efield_profile(
    tx: &TransmitterConfig,
    range_min_m: f64,
    range_max_m: f64,
    num_steps: usize,
) -> Result<SweepSeries> {
    ordered_range("range_m", range_min_m, range_max_m)?;
    let gain = tx.gain.linear()?;
    series(
        "rms electric field",
        "range_m",
        "V/m",
        grid(range_min_m, range_max_m, num_steps)?,
        |r| rf::e_field_rms(tx.power_w, gain, r),
    )
}

/// Power density against slant range.
pub fn range_density_profile(
    tx: &TransmitterConfig,
    range_min_m: f64,
    range_max_m: f64,
    num_steps: usize,
) -> Result<SweepSeries> {
    ordered_range("range_m", range_min_m, range_max_m)?;
    let gain = tx.gain.linear()?;
    series(
        "power density",
        "range_m",
        "W/m^2",
        grid(range_min_m, range_max_m, num_steps)?,
        |r| rf::power_density(tx.power_w, gain, r),
    )
}

/// Received power at a fixed ground offset while the altitude varies.
/// `freq_mhz` sets the wavelength of the receiving aperture.
#[allow(clippy::too_many_arguments)]
pub fn received_power_profile(
    tx: &TransmitterConfig,
    rx_gain_db: f64,
    freq_mhz: f64,
    altitude_min_m: f64,
    altitude_max_m: f64,
    ground_offset_m: f64,
    num_steps: usize,
) -> Result<SweepSeries> {
    ordered_range("altitude_m", altitude_min_m, altitude_max_m)?;
    non_negative("ground_offset_m", ground_offset_m)?;
    let gt = tx.gain.linear()?;
    let gr = rf::db_to_linear(rx_gain_db)?;
    series(
        &format!("received power at ground offset {ground_offset_m} m"),
        "altitude_m",
        "W",
        grid(altitude_min_m, altitude_max_m, num_steps)?,
        |a| {
            let r = rf::slant_range(a, ground_offset_m)?;
            rf::received_power(tx.power_w, gt, gr, freq_mhz, r)
        },
    )
}

/// Exposure class of a location, ordered from least to most exposed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExposureZone {
    Safe,
    Caution,
    ExceedsLimit,
}

impl ExposureZone {
    pub fn as_str(self) -> &'static str {
        match self {
            ExposureZone::Safe => "SAFE",
            ExposureZone::Caution => "CAUTION",
            ExposureZone::ExceedsLimit => "EXCEEDS_LIMIT",
        }
    }
}

impl fmt::Display for ExposureZone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZoneThresholds {
    pub limit_w_m2: f64,
    pub caution_fraction: f64,
}

impl ZoneThresholds {
    /// General-public reference level for a carrier frequency: 2 W/m² up to
    /// 400 MHz, f/200 W/m² between 400 and 2000 MHz, 10 W/m² above.
    pub fn general_public(freq_mhz: f64) -> Result<Self> {
        positive("freq_mhz", freq_mhz)?;
        Ok(Self {
            limit_w_m2: freq_mhz.clamp(400.0, 2000.0) / 200.0,
            caution_fraction: DEFAULT_CAUTION_FRACTION,
        })
    }

    pub fn validate(&self) -> Result<()> {
        positive("limit_w_m2", self.limit_w_m2)?;
        check(
            self.caution_fraction > 0.0 && self.caution_fraction < 1.0,
            "caution_fraction",
            "in (0, 1)",
            self.caution_fraction,
        )
    }
}

pub fn classify_zone(density_w_m2: f64, thresholds: &ZoneThresholds) -> Result<ExposureZone> {
    non_negative("density_w_m2", density_w_m2)?;
    thresholds.validate()?;
    Ok(if density_w_m2 >= thresholds.limit_w_m2 {
        ExposureZone::ExceedsLimit
    } else if density_w_m2 >= thresholds.caution_fraction * thresholds.limit_w_m2 {
        ExposureZone::Caution
    } else {
        ExposureZone::Safe
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rf::Gain;
    use approx::assert_relative_eq;

    fn reference_tx() -> TransmitterConfig {
        TransmitterConfig {
            power_w: 20.0,
            gain: Gain::Linear(50.0),
            freq_mhz: 900.0,
            antenna_dim_m: 1.0,
        }
    }

    #[test]
    fn table_rows() {
        let rows = table_one(&reference_tx(), &[10.0, 100.0, 500.0]).unwrap();
        assert_eq!(rows.len(), 3);
        assert_relative_eq!(rows[1].1, 0.0079577, max_relative = 1e-5);
        assert_eq!(table_one(&reference_tx(), &[10.0]).unwrap().len(), 1);
        assert_eq!(
            table_one(&reference_tx(), &[]),
            Err(Error::Empty("distances_m"))
        );
        assert!(table_one(&reference_tx(), &[0.0]).is_err());
    }

    #[test]
    fn ground_profile() {
        let s = ground_density_profile(&reference_tx(), 150.0, 25.0, DEFAULT_SWEEP_STEPS).unwrap();
        assert_eq!(s.points.len(), 101);
        assert_eq!(s.points[0].0, 0.0);
        assert_eq!(s.points[100].0, 25.0);
        assert_eq!(s.max_point().unwrap().0, 0.0);
        assert_relative_eq!(s.points[0].1, 3.537e-3, max_relative = 1e-3);
        assert_relative_eq!(s.points[100].1, 3.4412e-3, max_relative = 1e-4);
        assert!(s.is_strictly_decreasing());

        assert!(ground_density_profile(&reference_tx(), 0.0, 25.0, 11).is_err());
        assert!(ground_density_profile(&reference_tx(), 150.0, 25.0, 1).is_err());
    }

    #[test]
    fn altitude_profile() {
        let s = altitude_density_profile(&reference_tx(), 200.0, 400.0, 0.0, 101).unwrap();
        assert!(s.is_strictly_decreasing());
        assert_relative_eq!(s.points[0].1, 1.989e-3, max_relative = 1e-3);
        assert_relative_eq!(s.points[100].1 * 4.0, s.points[0].1, max_relative = 1e-12);
        assert!(altitude_density_profile(&reference_tx(), 400.0, 200.0, 0.0, 101).is_err());
        assert!(altitude_density_profile(&reference_tx(), 0.0, 200.0, 0.0, 101).is_err());
    }

    #[test]
    fn field_profile() {
        let s = efield_profile(&reference_tx(), 10.0, 100.0, 10).unwrap();
        assert_relative_eq!(s.points[0].1, 17.3205, max_relative = 1e-5);
        assert_relative_eq!(s.points[9].1 * 10.0, s.points[0].1, max_relative = 1e-12);
        assert!(s.is_strictly_decreasing());

        let silent = TransmitterConfig {
            power_w: 0.0,
            ..reference_tx()
        };
        let s = efield_profile(&silent, 10.0, 100.0, 10).unwrap();
        assert!(s.values().all(|v| v == 0.0));
        assert!(efield_profile(&reference_tx(), 100.0, 10.0, 10).is_err());
    }

    #[test]
    fn received_profile() {
        let s = received_power_profile(&reference_tx(), 0.0, 900.0, 200.0, 1000.0, 0.0, 5).unwrap();
        assert_relative_eq!(s.points[4].1, 7.0265e-7, max_relative = 1e-4);
        assert!(s.is_strictly_decreasing());

        let s = received_power_profile(&reference_tx(), 0.0, 900.0, 200.0, 400.0, 0.0, 3).unwrap();
        assert_relative_eq!(s.points[2].1 * 4.0, s.points[0].1, max_relative = 1e-12);

        let doubled = received_power_profile(
            &reference_tx(),
            10.0 * 2f64.log10(),
            900.0,
            200.0,
            400.0,
            0.0,
            3,
        )
        .unwrap();
        for (a, b) in s.values().zip(doubled.values()) {
            assert_relative_eq!(b, 2.0 * a, max_relative = 1e-12);
        }
        assert!(received_power_profile(&reference_tx(), 0.0, 900.0, 400.0, 200.0, 0.0, 3).is_err());
    }

    #[test]
    fn zones() {
        let t = ZoneThresholds {
            limit_w_m2: 4.5,
            caution_fraction: 0.1,
        };
        assert_eq!(classify_zone(5.0, &t).unwrap(), ExposureZone::ExceedsLimit);
        assert_eq!(classify_zone(0.796, &t).unwrap(), ExposureZone::Caution);
        assert_eq!(classify_zone(0.0, &t).unwrap(), ExposureZone::Safe);
        assert_eq!(classify_zone(4.5, &t).unwrap(), ExposureZone::ExceedsLimit);
        assert!(classify_zone(-1.0, &t).is_err());
        assert!(ExposureZone::ExceedsLimit > ExposureZone::Caution);
        assert!(ExposureZone::Caution > ExposureZone::Safe);
        assert_eq!(ExposureZone::ExceedsLimit.to_string(), "EXCEEDS_LIMIT");
    }

    #[test]
    fn default_thresholds() {
        assert_eq!(
            ZoneThresholds::general_public(900.0).unwrap(),
            ZoneThresholds {
                limit_w_m2: 4.5,
                caution_fraction: 0.1,
            }
        );
        assert_eq!(
            ZoneThresholds::general_public(100.0).unwrap().limit_w_m2,
            2.0
        );
        assert_eq!(
            ZoneThresholds::general_public(5000.0).unwrap().limit_w_m2,
            10.0
        );
        let bad = ZoneThresholds {
            limit_w_m2: 4.5,
            caution_fraction: 1.0,
        };
        assert!(bad.validate().is_err());
    }
}
