//! Annual CO₂ comparison of a diesel terrestrial fleet with a balloon.
//!
//! The per-site figures below are modelling assumptions, not measured data.
//! Emissions are reported in metric tonnes.

use std::fmt;

use crate::coverage;
use crate::error::{check, non_negative, positive, Result};

/// Assumed diesel generator consumption per terrestrial site, L/h.
pub const DEFAULT_DIESEL_L_PER_H: f64 = 2.0;
/// Operating hours in a year.
pub const DEFAULT_HOURS_PER_YEAR: f64 = 8760.0;
/// CO₂ released by burning one litre of diesel, kg/L.
pub const DEFAULT_DIESEL_KG_CO2_PER_L: f64 = 2.68;
/// Grid carbon intensity, kg CO₂/kWh.
pub const DEFAULT_GRID_KG_CO2_PER_KWH: f64 = 0.82;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SourceKind {
    Diesel,
    Solar,
    Grid,
}

impl fmt::Display for SourceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SourceKind::Diesel => "DIESEL",
            SourceKind::Solar => "SOLAR",
            SourceKind::Grid => "GRID",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerSourceProfile {
    pub source_kind: SourceKind,
    pub fuel_liters_per_hour: f64,
    pub emission_factor_kg_per_liter: f64,
    pub grid_kwh_per_hour: f64,
    pub grid_emission_kg_per_kwh: f64,
}

impl PowerSourceProfile {
    pub fn diesel(liters_per_hour: f64) -> Self {
        Self {
            source_kind: SourceKind::Diesel,
            fuel_liters_per_hour: liters_per_hour,
            emission_factor_kg_per_liter: DEFAULT_DIESEL_KG_CO2_PER_L,
            grid_kwh_per_hour: 0.0,
            grid_emission_kg_per_kwh: 0.0,
        }
    }

    pub fn grid(kwh_per_hour: f64) -> Self {
        Self {
            source_kind: SourceKind::Grid,
            fuel_liters_per_hour: 0.0,
            emission_factor_kg_per_liter: 0.0,
            grid_kwh_per_hour: kwh_per_hour,
            grid_emission_kg_per_kwh: DEFAULT_GRID_KG_CO2_PER_KWH,
        }
    }

    pub fn solar() -> Self {
        Self {
            source_kind: SourceKind::Solar,
            fuel_liters_per_hour: 0.0,
            emission_factor_kg_per_liter: 0.0,
            grid_kwh_per_hour: 0.0,
            grid_emission_kg_per_kwh: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        non_negative("fuel_liters_per_hour", self.fuel_liters_per_hour)?;
        non_negative(
            "emission_factor_kg_per_liter",
            self.emission_factor_kg_per_liter,
        )?;
        non_negative("grid_kwh_per_hour", self.grid_kwh_per_hour)?;
        non_negative("grid_emission_kg_per_kwh", self.grid_emission_kg_per_kwh)?;
        if self.source_kind == SourceKind::Solar {
            for (name, v) in [
                ("fuel_liters_per_hour", self.fuel_liters_per_hour),
                (
                    "emission_factor_kg_per_liter",
                    self.emission_factor_kg_per_liter,
                ),
                ("grid_kwh_per_hour", self.grid_kwh_per_hour),
                ("grid_emission_kg_per_kwh", self.grid_emission_kg_per_kwh),
            ] {
                check(v == 0.0, name, "0 for a SOLAR source", v)?;
            }
        }
        Ok(())
    }
}

impl Default for PowerSourceProfile {
    fn default() -> Self {
        Self::diesel(DEFAULT_DIESEL_L_PER_H)
    }
}

pub fn annual_emissions_tons(profile: &PowerSourceProfile, hours_per_year: f64) -> Result<f64> {
    positive("hours_per_year", hours_per_year)?;
    profile.validate()?;
    Ok(match profile.source_kind {
        SourceKind::Diesel => {
            profile.fuel_liters_per_hour * hours_per_year * profile.emission_factor_kg_per_liter
                / 1000.0
        }
        SourceKind::Grid => {
            profile.grid_kwh_per_hour * hours_per_year * profile.grid_emission_kg_per_kwh / 1000.0
        }
        SourceKind::Solar => 0.0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreenComparison {
    pub terrestrial_annual_tons: f64,
    pub balloon_annual_tons: f64,
    pub avoided_tons: f64,
    pub replaced_bs_count: u64,
}

/// Emissions of the terrestrial sites one balloon replaces against the
/// balloon's own emissions.
pub fn compare(
    terrestrial: &PowerSourceProfile,
    balloon: &PowerSourceProfile,
    balloon_radius_km: f64,
    terrestrial_radius_km: f64,
    hours_per_year: f64,
) -> Result<GreenComparison> {
    let replaced_bs_count = coverage::replacement_count(balloon_radius_km, terrestrial_radius_km)?;
    let per_site = annual_emissions_tons(terrestrial, hours_per_year)?;
    let terrestrial_annual_tons = replaced_bs_count as f64 * per_site;
    let balloon_annual_tons = annual_emissions_tons(balloon, hours_per_year)?;
    Ok(GreenComparison {
        terrestrial_annual_tons,
        balloon_annual_tons,
        avoided_tons: terrestrial_annual_tons - balloon_annual_tons,
        replaced_bs_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn per_site_emissions() {
        assert_eq!(
            annual_emissions_tons(&PowerSourceProfile::solar(), 8760.0).unwrap(),
            0.0
        );
        assert_relative_eq!(
            annual_emissions_tons(&PowerSourceProfile::diesel(2.0), 8760.0).unwrap(),
            46.954,
            max_relative = 1e-5
        );
        assert_relative_eq!(
            annual_emissions_tons(&PowerSourceProfile::diesel(1.0), 8760.0).unwrap(),
            23.477,
            max_relative = 1e-5
        );
        // 1 kWh/h * 8760 h * 0.82 kg/kWh
        assert_relative_eq!(
            annual_emissions_tons(&PowerSourceProfile::grid(1.0), 8760.0).unwrap(),
            7.1832,
            max_relative = 1e-12
        );
    }

    #[test]
    fn rejects_bad_profiles() {
        assert!(annual_emissions_tons(&PowerSourceProfile::diesel(-1.0), 8760.0).is_err());
        assert!(annual_emissions_tons(&PowerSourceProfile::diesel(1.0), 0.0).is_err());
        let dirty_sun = PowerSourceProfile {
            fuel_liters_per_hour: 1.0,
            ..PowerSourceProfile::solar()
        };
        assert!(dirty_sun.validate().is_err());
    }

    #[test]
    fn comparisons() {
        let fleet = PowerSourceProfile::diesel(2.0);
        let c = compare(&fleet, &PowerSourceProfile::solar(), 10.0, 1.0, 8760.0).unwrap();
        assert_eq!(c.replaced_bs_count, 100);
        assert_relative_eq!(c.terrestrial_annual_tons, 4695.36, max_relative = 1e-12);
        assert_eq!(c.balloon_annual_tons, 0.0);
        assert_eq!(c.avoided_tons, c.terrestrial_annual_tons);

        let same = compare(&fleet, &fleet, 5.0, 5.0, 8760.0).unwrap();
        assert_eq!(same.replaced_bs_count, 1);
        assert_eq!(same.avoided_tons, 0.0);

        let sun = PowerSourceProfile::solar();
        let none = compare(&sun, &sun, 10.0, 1.0, 8760.0).unwrap();
        assert_eq!(none.replaced_bs_count, 100);
        assert_eq!(
            (
                none.terrestrial_annual_tons,
                none.balloon_annual_tons,
                none.avoided_tons
            ),
            (0.0, 0.0, 0.0)
        );

        assert!(compare(&fleet, &sun, 0.0, 1.0, 8760.0).is_err());
    }
}
