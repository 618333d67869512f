//! Command-line surface.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::commands::{self, Figure, RangeQuantity};
use crate::error::CliError;
use crate::scenario::{load_scenario, Scenario};

/// Defaults applied to settings a scenario file leaves out.
pub const DEFAULTS_HELP: &str = "\
Scenario defaults (used when a key is absent):
  transmitter: gain_db=0 antenna_dim_m=1 (power_w and freq_mhz are required;
               gain_linear, when given, overrides gain_db)
  geometry:    altitude_m=200 ground_offset_m=0 bs_antenna_height_m=200
               rx_antenna_height_m=1.5 rx_gain_db=0
  thresholds:  limit_w_m2=freq_mhz/200 clamped to [2, 10] caution_fraction=0.1
  sweeps:      table1_distances_m=[10,100,500] fig4_altitude_m=150 fig5_altitude_m=200
               ground_offset 0..25 m, altitude 200..400 m, range 10..500 m,
               received_altitude 200..400 m, 101 steps each
  coverage:    max_path_loss_db=144.846 num_balloons=7
  green (assumptions, not measured data):
               terrestrial=DIESEL fuel_liters_per_hour=2 emission_factor_kg_per_liter=2.68
               balloon=SOLAR hours_per_year=8760 grid_emission_kg_per_kwh=0.82
               balloon_radius_km=10 terrestrial_radius_km=1
Exit status: 0 success, 1 usage or validation error, 2 I/O error.";

#[derive(Debug, Parser)]
#[command(name = "tether", version, about = "Link budget and exposure calculator for tethered-balloon base stations", after_help = DEFAULTS_HELP)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Scenario file (JSON).
    #[arg(long)]
    pub scenario: PathBuf,
    /// Output directory; overrides the scenario's output_dir.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Power density against distance, written to table1.csv.
    #[command(after_help = DEFAULTS_HELP)]
    Table1 {
        #[command(flatten)]
        common: Common,
    },
    /// Exposure profile for one figure, written to <figure>.csv.
    #[command(after_help = DEFAULTS_HELP)]
    Exposure {
        #[command(flatten)]
        common: Common,
        #[arg(value_enum)]
        figure: Figure,
        /// Quantity reported by the fig7 range sweep.
        #[arg(long, value_enum, default_value_t = RangeQuantity::Density)]
        quantity: RangeQuantity,
    },
    /// Cell radius and multi-balloon layout, written to coverage.csv.
    #[command(after_help = DEFAULTS_HELP)]
    Coverage {
        #[command(flatten)]
        common: Common,
        /// Maximum tolerated path loss in dB [default: scenario coverage.max_path_loss_db].
        #[arg(long, allow_negative_numbers = true)]
        max_path_loss_db: Option<f64>,
        /// Number of balloons [default: scenario coverage.num_balloons].
        #[arg(long)]
        balloons: Option<usize>,
    },
    /// CO2 comparison against a terrestrial fleet, written to green.csv.
    #[command(after_help = DEFAULTS_HELP)]
    Green {
        #[command(flatten)]
        common: Common,
        /// [default: scenario green.terrestrial_radius_km]
        #[arg(long, allow_negative_numbers = true)]
        terrestrial_radius_km: Option<f64>,
        /// [default: scenario green.balloon_radius_km]
        #[arg(long, allow_negative_numbers = true)]
        balloon_radius_km: Option<f64>,
    },
    /// Exposure-zone classification, written to zones.csv.
    #[command(after_help = DEFAULTS_HELP)]
    Zones {
        #[command(flatten)]
        common: Common,
        /// Density to classify in W/m^2; repeatable. Defaults to the table1 densities.
        #[arg(long = "density", allow_negative_numbers = true, value_delimiter = ',')]
        densities: Vec<f64>,
    },
    /// Single-point link budget printed to standard output.
    #[command(after_help = DEFAULTS_HELP)]
    Linkbudget {
        #[command(flatten)]
        common: Common,
        /// Overrides geometry.altitude_m.
        #[arg(long, allow_negative_numbers = true)]
        altitude_m: Option<f64>,
        /// Overrides geometry.ground_offset_m.
        #[arg(long, allow_negative_numbers = true)]
        ground_offset_m: Option<f64>,
    },
}

fn output_dir(common: &Common, scenario: &Scenario) -> PathBuf {
    common
        .out
        .clone()
        .unwrap_or_else(|| scenario.output_dir.clone())
}

/// Executes one subcommand. CSV paths written are reported on `log`; the
/// link budget goes to `stdout`.
pub fn run(cli: Cli, stdout: &mut dyn Write, log: &mut dyn Write) -> Result<(), CliError> {
    let (common, name, scenario, contents) = match &cli.command {
        Command::Table1 { common } => {
            let s = load_scenario(&common.scenario)?;
            let csv = commands::table1(&s)?;
            (common, "table1.csv", s, csv)
        }
        Command::Exposure {
            common,
            figure,
            quantity,
        } => {
            let s = load_scenario(&common.scenario)?;
            let csv = commands::exposure(&s, *figure, *quantity)?;
            (common, figure.file_name(), s, csv)
        }
        Command::Coverage {
            common,
            max_path_loss_db,
            balloons,
        } => {
            let s = load_scenario(&common.scenario)?;
            let csv = commands::coverage(
                &s,
                max_path_loss_db.unwrap_or(s.coverage.max_path_loss_db),
                balloons.unwrap_or(s.coverage.num_balloons),
            )?;
            (common, "coverage.csv", s, csv)
        }
        Command::Green {
            common,
            terrestrial_radius_km,
            balloon_radius_km,
        } => {
            let s = load_scenario(&common.scenario)?;
            let csv = commands::green(
                &s,
                balloon_radius_km.unwrap_or(s.green.balloon_radius_km),
                terrestrial_radius_km.unwrap_or(s.green.terrestrial_radius_km),
            )?;
            (common, "green.csv", s, csv)
        }
        Command::Zones { common, densities } => {
            let s = load_scenario(&common.scenario)?;
            let densities = if densities.is_empty() {
                commands::table1_densities(&s)?
            } else {
                densities.clone()
            };
            let csv = commands::zones(&s, &densities)?;
            (common, "zones.csv", s, csv)
        }
        Command::Linkbudget {
            common,
            altitude_m,
            ground_offset_m,
        } => {
            let mut s = load_scenario(&common.scenario)?;
            if let Some(a) = altitude_m {
                s.geometry.altitude_m = *a;
            }
            if let Some(d) = ground_offset_m {
                s.geometry.ground_offset_m = *d;
            }
            let csv = commands::linkbudget(&s)?;
            stdout
                .write_all(csv.as_bytes())
                .map_err(|e| CliError::io("<stdout>", e))?;
            return Ok(());
        }
    };
    let path = commands::write_csv(&output_dir(common, &scenario), name, &contents)?;
    writeln!(log, "wrote {}", path.display()).map_err(|e| CliError::io("<stderr>", e))?;
    Ok(())
}
