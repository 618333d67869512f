//! CSV-producing commands. Each builds its output in memory; [`write_csv`]
//! puts it on disk.

use std::fs;
use std::path::{Path, PathBuf};

use tether_core::coverage::{self, Constellation};
use tether_core::exposure::{self, SweepSeries};
use tether_core::{green, rf};

use crate::error::CliError;
use crate::format::{sci, CsvText};
use crate::scenario::Scenario;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Figure {
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Fig8,
}

impl Figure {
    pub fn file_name(self) -> &'static str {
        match self {
            Figure::Fig4 => "fig4.csv",
            Figure::Fig5 => "fig5.csv",
            Figure::Fig6 => "fig6.csv",
            Figure::Fig7 => "fig7.csv",
            Figure::Fig8 => "fig8.csv",
        }
    }
}

/// What the range sweep of `fig7` reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum RangeQuantity {
    #[default]
    Density,
    Efield,
}

fn start(header: &str, scenario: &Scenario) -> CsvText {
    let mut out = CsvText::new(header);
    for w in &scenario.warnings {
        out.warning(w);
    }
    out
}

pub fn table1(scenario: &Scenario) -> Result<String, CliError> {
    let rows = exposure::table_one(&scenario.transmitter, &scenario.sweeps.table1_distances_m)?;
    let mut out = start("distance_m,power_density_w_m2", scenario);
    for (r, pd) in rows {
        out.row(&[&sci(r), &sci(pd)]);
    }
    Ok(out.into_string())
}

/// Series behind one of the exposure figures.
pub fn figure_series(
    scenario: &Scenario,
    figure: Figure,
    quantity: RangeQuantity,
) -> Result<SweepSeries, CliError> {
    let tx = &scenario.transmitter;
    let sw = &scenario.sweeps;
    let offset = scenario.geometry.ground_offset_m;
    let series = match figure {
        Figure::Fig4 | Figure::Fig5 => {
            let altitude = if figure == Figure::Fig4 {
                sw.fig4_altitude_m
            } else {
                sw.fig5_altitude_m
            };
            exposure::ground_density_profile(
                tx,
                altitude,
                sw.ground_offset.max,
                sw.ground_offset.steps,
            )?
        }
        Figure::Fig6 => exposure::altitude_density_profile(
            tx,
            sw.altitude.min,
            sw.altitude.max,
            offset,
            sw.altitude.steps,
        )?,
        Figure::Fig7 => match quantity {
            RangeQuantity::Density => {
                exposure::range_density_profile(tx, sw.range.min, sw.range.max, sw.range.steps)?
            }
            RangeQuantity::Efield => {
                exposure::efield_profile(tx, sw.range.min, sw.range.max, sw.range.steps)?
            }
        },
        Figure::Fig8 => exposure::received_power_profile(
            tx,
            scenario.geometry.rx_gain_db,
            tx.freq_mhz,
            sw.received_altitude.min,
            sw.received_altitude.max,
            offset,
            sw.received_altitude.steps,
        )?,
    };
    Ok(series)
}

pub fn exposure(
    scenario: &Scenario,
    figure: Figure,
    quantity: RangeQuantity,
) -> Result<String, CliError> {
    let series = figure_series(scenario, figure, quantity)?;
    let mut out = start("abscissa,value,unit", scenario);
    out.comment(&format!(
        "series: {}; abscissa: {}",
        series.label, series.abscissa_name
    ));
    if figure == Figure::Fig7 && quantity == RangeQuantity::Density {
        out.comment("radiation power is reported as power density");
    }
    for (x, v) in &series.points {
        out.row(&[&sci(*x), &sci(*v), &series.unit]);
    }
    Ok(out.into_string())
}

pub struct CoverageReport {
    pub radius_km: f64,
    pub constellation: Constellation,
    pub union_area_km2: f64,
    pub warnings: Vec<rf::ValidityWarning>,
}

pub fn coverage_report(
    scenario: &Scenario,
    max_path_loss_db: f64,
    num_balloons: usize,
) -> Result<CoverageReport, CliError> {
    let (radius_km, warnings) = coverage::cell_radius_from_budget(
        scenario.transmitter.freq_mhz,
        scenario.geometry.bs_antenna_height_m,
        scenario.geometry.rx_antenna_height_m,
        max_path_loss_db,
    )?;
    let constellation = coverage::constellation_layout(num_balloons, radius_km)?;
    let union_area_km2 = constellation.union_area_default_km2()?;
    Ok(CoverageReport {
        radius_km,
        constellation,
        union_area_km2,
        warnings,
    })
}

pub fn coverage(
    scenario: &Scenario,
    max_path_loss_db: f64,
    num_balloons: usize,
) -> Result<String, CliError> {
    let report = coverage_report(scenario, max_path_loss_db, num_balloons)?;
    let mut out = start(
        &format!("cell_radius_km,{}", sci(report.radius_km)),
        scenario,
    );
    for w in &report.warnings {
        out.warning(&w.to_string());
    }
    let links: Vec<String> = report
        .constellation
        .links()
        .into_iter()
        .map(|(a, b)| format!("{a}-{b}"))
        .collect();
    out.comment(&format!(
        "max_path_loss_db={max_path_loss_db} spacing_km={} inter_balloon_links={}",
        sci(report.constellation.spacing_km),
        if links.is_empty() {
            "none".to_owned()
        } else {
            links.join(" ")
        }
    ));
    out.line("index,x_km,y_km");
    for (i, cell) in report.constellation.cells.iter().enumerate() {
        out.row(&[
            &i.to_string(),
            &sci(cell.center_x_km),
            &sci(cell.center_y_km),
        ]);
    }
    out.row(&["union_area_km2", &sci(report.union_area_km2)]);
    Ok(out.into_string())
}

fn describe_profile(name: &str, p: &tether_core::PowerSourceProfile) -> String {
    format!(
        "{name}={} fuel_liters_per_hour={} emission_factor_kg_per_liter={} grid_kwh_per_hour={} grid_emission_kg_per_kwh={}",
        p.source_kind,
        p.fuel_liters_per_hour,
        p.emission_factor_kg_per_liter,
        p.grid_kwh_per_hour,
        p.grid_emission_kg_per_kwh
    )
}

pub fn green(
    scenario: &Scenario,
    balloon_radius_km: f64,
    terrestrial_radius_km: f64,
) -> Result<String, CliError> {
    let g = &scenario.green;
    let cmp = green::compare(
        &g.terrestrial,
        &g.balloon,
        balloon_radius_km,
        terrestrial_radius_km,
        g.hours_per_year,
    )?;
    let mut out = start("quantity,value", scenario);
    out.comment(&format!(
        "assumed: {}; {}; hours_per_year={} balloon_radius_km={balloon_radius_km} terrestrial_radius_km={terrestrial_radius_km}",
        describe_profile("terrestrial", &g.terrestrial),
        describe_profile("balloon", &g.balloon),
        g.hours_per_year,
    ));
    out.row(&["replaced_bs_count", &cmp.replaced_bs_count.to_string()]);
    out.row(&["terrestrial_annual_tons", &sci(cmp.terrestrial_annual_tons)]);
    out.row(&["balloon_annual_tons", &sci(cmp.balloon_annual_tons)]);
    out.row(&["avoided_tons", &sci(cmp.avoided_tons)]);
    Ok(out.into_string())
}

pub fn zones(scenario: &Scenario, densities: &[f64]) -> Result<String, CliError> {
    let negative: Vec<String> = densities
        .iter()
        .enumerate()
        .filter(|(_, d)| d.is_nan() || **d < 0.0)
        .map(|(i, d)| format!("density[{i}] must be >= 0 (got {d})"))
        .collect();
    if !negative.is_empty() {
        return Err(CliError::Validation(negative));
    }
    let mut out = CsvText::new("density_w_m2,zone");
    for &d in densities {
        let zone = exposure::classify_zone(d, &scenario.thresholds)?;
        out.row(&[&sci(d), zone.as_str()]);
    }
    Ok(out.into_string())
}

/// Densities of the table rows, used when `zones` gets no explicit list.
pub fn table1_densities(scenario: &Scenario) -> Result<Vec<f64>, CliError> {
    Ok(
        exposure::table_one(&scenario.transmitter, &scenario.sweeps.table1_distances_m)?
            .into_iter()
            .map(|(_, pd)| pd)
            .collect(),
    )
}

pub fn linkbudget(scenario: &Scenario) -> Result<String, CliError> {
    let r = rf::evaluate_link(&scenario.transmitter, &scenario.geometry)?;
    let near_field = rf::near_field_distance(
        scenario.transmitter.antenna_dim_m,
        scenario.transmitter.freq_mhz,
    )?;
    let zone = exposure::classify_zone(r.power_density_w_m2, &scenario.thresholds)?;
    let mut out = start("key,value", scenario);
    for w in &r.warnings {
        out.warning(&w.to_string());
    }
    out.row(&["path_loss_db", &sci(r.path_loss_db)]);
    out.row(&["power_density_w_m2", &sci(r.power_density_w_m2)]);
    out.row(&["e_field_v_m", &sci(r.e_field_v_m)]);
    out.row(&["received_power_w", &sci(r.received_power_w)]);
    out.row(&["range_m", &sci(r.range_m)]);
    out.row(&["near_field_m", &sci(near_field)]);
    out.row(&["zone", zone.as_str()]);
    Ok(out.into_string())
}

/// Writes `contents` to `dir/name`, creating `dir` if needed.
pub fn write_csv(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| CliError::io(&path, e))?;
    Ok(path)
}
