//! JSON scenario files.
//!
//! A scenario groups its settings into `transmitter`, `geometry`,
//! `thresholds`, `green`, `sweeps` and `coverage` objects plus an
//! `output_dir`. Only `transmitter.power_w` and `transmitter.freq_mhz` are
//! required; everything else falls back to the defaults in this module.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use tether_core::exposure::{DEFAULT_CAUTION_FRACTION, DEFAULT_SWEEP_STEPS};
use tether_core::green::{DEFAULT_DIESEL_L_PER_H, DEFAULT_HOURS_PER_YEAR};
use tether_core::{
    Gain, LinkGeometry, PowerSourceProfile, SourceKind, TransmitterConfig, ZoneThresholds,
};

use crate::error::CliError;

pub const DEFAULT_GAIN_DB: f64 = 0.0;
pub const DEFAULT_ANTENNA_DIM_M: f64 = 1.0;
pub const DEFAULT_ALTITUDE_M: f64 = 200.0;
pub const DEFAULT_GROUND_OFFSET_M: f64 = 0.0;
pub const DEFAULT_BS_ANTENNA_HEIGHT_M: f64 = 200.0;
pub const DEFAULT_RX_ANTENNA_HEIGHT_M: f64 = 1.5;
pub const DEFAULT_RX_GAIN_DB: f64 = 0.0;
pub const DEFAULT_TABLE1_DISTANCES_M: [f64; 3] = [10.0, 100.0, 500.0];
pub const DEFAULT_FIG4_ALTITUDE_M: f64 = 150.0;
pub const DEFAULT_FIG5_ALTITUDE_M: f64 = 200.0;
pub const DEFAULT_GROUND_OFFSET_SWEEP_M: (f64, f64) = (0.0, 25.0);
pub const DEFAULT_ALTITUDE_SWEEP_M: (f64, f64) = (200.0, 400.0);
pub const DEFAULT_RANGE_SWEEP_M: (f64, f64) = (10.0, 500.0);
pub const DEFAULT_BALLOON_RADIUS_KM: f64 = 10.0;
pub const DEFAULT_TERRESTRIAL_RADIUS_KM: f64 = 1.0;
pub const DEFAULT_MAX_PATH_LOSS_DB: f64 = 144.846;
pub const DEFAULT_NUM_BALLOONS: usize = 7;

/// Inclusive sampling range of one swept variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sweep {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweeps {
    pub table1_distances_m: Vec<f64>,
    pub fig4_altitude_m: f64,
    pub fig5_altitude_m: f64,
    pub ground_offset: Sweep,
    pub altitude: Sweep,
    pub range: Sweep,
    pub received_altitude: Sweep,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreenSettings {
    pub terrestrial: PowerSourceProfile,
    pub balloon: PowerSourceProfile,
    pub hours_per_year: f64,
    pub balloon_radius_km: f64,
    pub terrestrial_radius_km: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverageSettings {
    pub max_path_loss_db: f64,
    pub num_balloons: usize,
}

/// A fully defaulted and validated scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub transmitter: TransmitterConfig,
    pub geometry: LinkGeometry,
    pub thresholds: ZoneThresholds,
    pub green: GreenSettings,
    pub sweeps: Sweeps,
    pub coverage: CoverageSettings,
    pub output_dir: PathBuf,
    /// Non-fatal remarks raised while loading, echoed into CSV headers.
    pub warnings: Vec<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RawScenario {
    transmitter: Option<RawTransmitter>,
    geometry: RawGeometry,
    thresholds: RawThresholds,
    green: RawGreen,
    sweeps: RawSweeps,
    coverage: RawCoverage,
    output_dir: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RawTransmitter {
    power_w: Option<f64>,
    gain_db: Option<f64>,
    gain_linear: Option<f64>,
    freq_mhz: Option<f64>,
    antenna_dim_m: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RawGeometry {
    altitude_m: Option<f64>,
    ground_offset_m: Option<f64>,
    bs_antenna_height_m: Option<f64>,
    rx_antenna_height_m: Option<f64>,
    rx_gain_db: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RawThresholds {
    limit_w_m2: Option<f64>,
    caution_fraction: Option<f64>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
enum RawSourceKind {
    Diesel,
    Solar,
    Grid,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProfile {
    source_kind: RawSourceKind,
    fuel_liters_per_hour: Option<f64>,
    emission_factor_kg_per_liter: Option<f64>,
    grid_kwh_per_hour: Option<f64>,
    grid_emission_kg_per_kwh: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RawGreen {
    terrestrial: Option<RawProfile>,
    balloon: Option<RawProfile>,
    hours_per_year: Option<f64>,
    balloon_radius_km: Option<f64>,
    terrestrial_radius_km: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RawSweep {
    min: Option<f64>,
    max: Option<f64>,
    steps: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RawSweeps {
    table1_distances_m: Option<Vec<f64>>,
    fig4_altitude_m: Option<f64>,
    fig5_altitude_m: Option<f64>,
    ground_offset: RawSweep,
    altitude: RawSweep,
    range: RawSweep,
    received_altitude: RawSweep,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RawCoverage {
    max_path_loss_db: Option<f64>,
    num_balloons: Option<usize>,
}

/// Collects every violated constraint instead of stopping at the first.
#[derive(Default)]
struct Checker {
    errors: Vec<String>,
}

impl Checker {
    fn fail(&mut self, field: &str, constraint: &str, value: impl std::fmt::Display) {
        self.errors
            .push(format!("{field} must be {constraint} (got {value})"));
    }

    fn required(&mut self, field: &str, value: Option<f64>) -> f64 {
        value.unwrap_or_else(|| {
            self.errors.push(format!("{field} is required"));
            f64::NAN
        })
    }

    fn positive(&mut self, field: &str, v: f64) -> f64 {
        if !(v.is_finite() && v > 0.0) && !v.is_nan() {
            self.fail(field, "> 0", v);
        }
        v
    }

    fn non_negative(&mut self, field: &str, v: f64) -> f64 {
        if !(v.is_finite() && v >= 0.0) {
            self.fail(field, ">= 0", v);
        }
        v
    }

    fn finite(&mut self, field: &str, v: f64) -> f64 {
        if !v.is_finite() {
            self.fail(field, "finite", v);
        }
        v
    }

    fn sweep(
        &mut self,
        field: &str,
        raw: &RawSweep,
        default: (f64, f64),
        allow_zero_min: bool,
    ) -> Sweep {
        let s = Sweep {
            min: raw.min.unwrap_or(default.0),
            max: raw.max.unwrap_or(default.1),
            steps: raw.steps.unwrap_or(DEFAULT_SWEEP_STEPS),
        };
        if allow_zero_min {
            self.non_negative(&format!("{field}.min"), s.min);
        } else {
            self.positive(&format!("{field}.min"), s.min);
        }
        if !(s.max.is_finite() && s.max > s.min) {
            self.fail(
                &format!("{field}.max"),
                &format!("> {field}.min ({})", s.min),
                s.max,
            );
        }
        if s.steps < 2 {
            self.fail(&format!("{field}.steps"), ">= 2", s.steps);
        }
        s
    }

    fn profile(
        &mut self,
        field: &str,
        raw: Option<&RawProfile>,
        default: PowerSourceProfile,
    ) -> PowerSourceProfile {
        let Some(raw) = raw else {
            return default;
        };
        let mut p = match raw.source_kind {
            RawSourceKind::Diesel => PowerSourceProfile::diesel(DEFAULT_DIESEL_L_PER_H),
            RawSourceKind::Solar => PowerSourceProfile::solar(),
            RawSourceKind::Grid => {
                let kwh =
                    self.required(&format!("{field}.grid_kwh_per_hour"), raw.grid_kwh_per_hour);
                PowerSourceProfile::grid(kwh)
            }
        };
        let overrides = [
            (
                "fuel_liters_per_hour",
                raw.fuel_liters_per_hour,
                &mut p.fuel_liters_per_hour,
            ),
            (
                "emission_factor_kg_per_liter",
                raw.emission_factor_kg_per_liter,
                &mut p.emission_factor_kg_per_liter,
            ),
            (
                "grid_kwh_per_hour",
                raw.grid_kwh_per_hour,
                &mut p.grid_kwh_per_hour,
            ),
            (
                "grid_emission_kg_per_kwh",
                raw.grid_emission_kg_per_kwh,
                &mut p.grid_emission_kg_per_kwh,
            ),
        ];
        let solar = p.source_kind == SourceKind::Solar;
        for (name, value, slot) in overrides {
            if let Some(v) = value {
                *slot = v;
            }
            let full = format!("{field}.{name}");
            if !slot.is_nan() {
                self.non_negative(&full, *slot);
            }
            if solar && *slot != 0.0 {
                self.fail(&full, "0 for a SOLAR source", *slot);
            }
        }
        p
    }
}

/// Reads, parses and validates a scenario file.
pub fn load_scenario(path: &Path) -> Result<Scenario, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_scenario(&text).map_err(|e| match e {
        ParseFailure::Syntax(err) => CliError::Parse {
            path: path.to_owned(),
            line: err.line(),
            column: err.column(),
            message: err.to_string(),
        },
        ParseFailure::Invalid(errors) => CliError::Validation(errors),
    })
}

#[derive(Debug)]
pub enum ParseFailure {
    Syntax(serde_json::Error),
    Invalid(Vec<String>),
}

/// Parses and validates scenario text.
pub fn parse_scenario(text: &str) -> Result<Scenario, ParseFailure> {
    let raw: RawScenario = serde_json::from_str(text).map_err(ParseFailure::Syntax)?;
    let mut c = Checker::default();
    let mut warnings = Vec::new();

    let tx = raw.transmitter.unwrap_or_default();
    let power_w = c.required("transmitter.power_w", tx.power_w);
    c.positive("transmitter.power_w", power_w);
    let freq_mhz = c.required("transmitter.freq_mhz", tx.freq_mhz);
    c.positive("transmitter.freq_mhz", freq_mhz);
    let gain = match (tx.gain_linear, tx.gain_db) {
        (Some(g), db) => {
            c.positive("transmitter.gain_linear", g);
            if let Some(db) = db {
                c.finite("transmitter.gain_db", db);
                warnings.push(format!(
                    "transmitter.gain_linear = {g} overrides transmitter.gain_db = {db}"
                ));
            }
            Gain::Linear(g)
        }
        (None, db) => Gain::Db(c.finite("transmitter.gain_db", db.unwrap_or(DEFAULT_GAIN_DB))),
    };
    let antenna_dim_m = c.non_negative(
        "transmitter.antenna_dim_m",
        tx.antenna_dim_m.unwrap_or(DEFAULT_ANTENNA_DIM_M),
    );
    let transmitter = TransmitterConfig {
        power_w,
        gain,
        freq_mhz,
        antenna_dim_m,
    };

    let g = &raw.geometry;
    let geometry = LinkGeometry {
        altitude_m: c.non_negative(
            "geometry.altitude_m",
            g.altitude_m.unwrap_or(DEFAULT_ALTITUDE_M),
        ),
        ground_offset_m: c.non_negative(
            "geometry.ground_offset_m",
            g.ground_offset_m.unwrap_or(DEFAULT_GROUND_OFFSET_M),
        ),
        bs_antenna_height_m: c.positive(
            "geometry.bs_antenna_height_m",
            g.bs_antenna_height_m.unwrap_or(DEFAULT_BS_ANTENNA_HEIGHT_M),
        ),
        rx_antenna_height_m: c.positive(
            "geometry.rx_antenna_height_m",
            g.rx_antenna_height_m.unwrap_or(DEFAULT_RX_ANTENNA_HEIGHT_M),
        ),
        rx_gain_db: c.finite(
            "geometry.rx_gain_db",
            g.rx_gain_db.unwrap_or(DEFAULT_RX_GAIN_DB),
        ),
    };
    if geometry.altitude_m == 0.0 && geometry.ground_offset_m == 0.0 {
        c.errors
            .push("geometry.altitude_m and geometry.ground_offset_m must not both be 0".into());
    }

    let fallback = if freq_mhz.is_finite() && freq_mhz > 0.0 {
        ZoneThresholds::general_public(freq_mhz).expect("frequency checked above")
    } else {
        ZoneThresholds {
            limit_w_m2: f64::NAN,
            caution_fraction: DEFAULT_CAUTION_FRACTION,
        }
    };
    let thresholds = ZoneThresholds {
        limit_w_m2: raw.thresholds.limit_w_m2.unwrap_or(fallback.limit_w_m2),
        caution_fraction: raw
            .thresholds
            .caution_fraction
            .unwrap_or(fallback.caution_fraction),
    };
    c.positive("thresholds.limit_w_m2", thresholds.limit_w_m2);
    if !(thresholds.caution_fraction > 0.0 && thresholds.caution_fraction < 1.0) {
        c.fail(
            "thresholds.caution_fraction",
            "in (0, 1)",
            thresholds.caution_fraction,
        );
    }

    let gr = &raw.green;
    let green = GreenSettings {
        terrestrial: c.profile(
            "green.terrestrial",
            gr.terrestrial.as_ref(),
            PowerSourceProfile::default(),
        ),
        balloon: c.profile(
            "green.balloon",
            gr.balloon.as_ref(),
            PowerSourceProfile::solar(),
        ),
        hours_per_year: c.positive(
            "green.hours_per_year",
            gr.hours_per_year.unwrap_or(DEFAULT_HOURS_PER_YEAR),
        ),
        balloon_radius_km: c.positive(
            "green.balloon_radius_km",
            gr.balloon_radius_km.unwrap_or(DEFAULT_BALLOON_RADIUS_KM),
        ),
        terrestrial_radius_km: c.positive(
            "green.terrestrial_radius_km",
            gr.terrestrial_radius_km
                .unwrap_or(DEFAULT_TERRESTRIAL_RADIUS_KM),
        ),
    };

    let sw = &raw.sweeps;
    let table1_distances_m = sw
        .table1_distances_m
        .clone()
        .unwrap_or_else(|| DEFAULT_TABLE1_DISTANCES_M.to_vec());
    if table1_distances_m.is_empty() {
        c.errors
            .push("sweeps.table1_distances_m must not be empty".into());
    }
    for (i, &d) in table1_distances_m.iter().enumerate() {
        c.positive(&format!("sweeps.table1_distances_m[{i}]"), d);
    }
    let sweeps = Sweeps {
        table1_distances_m,
        fig4_altitude_m: c.positive(
            "sweeps.fig4_altitude_m",
            sw.fig4_altitude_m.unwrap_or(DEFAULT_FIG4_ALTITUDE_M),
        ),
        fig5_altitude_m: c.positive(
            "sweeps.fig5_altitude_m",
            sw.fig5_altitude_m.unwrap_or(DEFAULT_FIG5_ALTITUDE_M),
        ),
        ground_offset: c.sweep(
            "sweeps.ground_offset",
            &sw.ground_offset,
            DEFAULT_GROUND_OFFSET_SWEEP_M,
            true,
        ),
        altitude: c.sweep(
            "sweeps.altitude",
            &sw.altitude,
            DEFAULT_ALTITUDE_SWEEP_M,
            false,
        ),
        range: c.sweep("sweeps.range", &sw.range, DEFAULT_RANGE_SWEEP_M, false),
        received_altitude: c.sweep(
            "sweeps.received_altitude",
            &sw.received_altitude,
            DEFAULT_ALTITUDE_SWEEP_M,
            false,
        ),
    };
    if sweeps.ground_offset.min != 0.0 {
        c.fail(
            "sweeps.ground_offset.min",
            "0 (profiles start beneath the balloon)",
            sweeps.ground_offset.min,
        );
    }

    let coverage = CoverageSettings {
        max_path_loss_db: c.finite(
            "coverage.max_path_loss_db",
            raw.coverage
                .max_path_loss_db
                .unwrap_or(DEFAULT_MAX_PATH_LOSS_DB),
        ),
        num_balloons: raw.coverage.num_balloons.unwrap_or(DEFAULT_NUM_BALLOONS),
    };
    if coverage.num_balloons == 0 {
        c.fail("coverage.num_balloons", ">= 1", 0);
    }

    if !c.errors.is_empty() {
        return Err(ParseFailure::Invalid(c.errors));
    }
    Ok(Scenario {
        transmitter,
        geometry,
        thresholds,
        green,
        sweeps,
        coverage,
        output_dir: raw.output_dir.unwrap_or_else(|| PathBuf::from(".")),
        warnings,
    })
}
