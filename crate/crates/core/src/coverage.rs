//! Cell sizing and multi-balloon layout.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{finite, positive, Error, Result};
use crate::rf::{self, PathLoss};

/// Sample count used for union-area estimates.
pub const UNION_AREA_SAMPLES: usize = 100_000;
/// Seed used for union-area estimates.
pub const UNION_AREA_SEED: u64 = 42;

/// Radius (km) at which the Hata loss equals `max_path_loss_db`, together
/// with any validity warnings for the inputs and the resulting distance.
pub fn cell_radius_from_budget(
    freq_mhz: f64,
    bs_antenna_height_m: f64,
    rx_antenna_height_m: f64,
    max_path_loss_db: f64,
) -> Result<(f64, Vec<rf::ValidityWarning>)> {
    finite("max_path_loss_db", max_path_loss_db)?;
    let (intercept, slope) = rf::hata_terms(freq_mhz, bs_antenna_height_m, rx_antenna_height_m)?;
    if slope <= 0.0 {
        return Err(Error::NotInvertible {
            slope_db_per_decade: slope,
        });
    }
    let radius_km = 10f64.powf((max_path_loss_db - intercept) / slope);
    let warnings = rf::hata_warnings(freq_mhz, bs_antenna_height_m, Some(radius_km));
    Ok((radius_km, warnings))
}

/// Convenience inverse of [`rf::hata_path_loss`] that drops the warnings.
pub fn radius_for(loss: &PathLoss, freq_mhz: f64, bs_m: f64, rx_m: f64) -> Result<f64> {
    cell_radius_from_budget(freq_mhz, bs_m, rx_m, loss.loss_db).map(|(d, _)| d)
}

pub fn cell_area_km2(radius_km: f64) -> Result<f64> {
    positive("radius_km", radius_km)?;
    Ok(PI * radius_km * radius_km)
}

/// Terrestrial cells needed to cover one balloon cell by area, rounded up.
pub fn replacement_count(balloon_radius_km: f64, terrestrial_radius_km: f64) -> Result<u64> {
    positive("balloon_radius_km", balloon_radius_km)?;
    positive("terrestrial_radius_km", terrestrial_radius_km)?;
    let ratio = balloon_radius_km / terrestrial_radius_km;
    Ok((ratio * ratio).ceil() as u64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub radius_km: f64,
    pub center_x_km: f64,
    pub center_y_km: f64,
}

impl Cell {
    fn contains(&self, x: f64, y: f64) -> bool {
        let dx = x - self.center_x_km;
        let dy = y - self.center_y_km;
        dx * dx + dy * dy <= self.radius_km * self.radius_km
    }
}

/// Balloon cells on a hexagonal lattice with centre spacing `√3·D`.
#[derive(Debug, Clone, PartialEq)]
pub struct Constellation {
    pub cells: Vec<Cell>,
    pub spacing_km: f64,
}

/// Lays out `num_balloons` cells ring by ring around the origin.
///
/// Each ring starts on the +x axis and proceeds counterclockwise.
pub fn constellation_layout(num_balloons: usize, radius_km: f64) -> Result<Constellation> {
    if num_balloons == 0 {
        return Err(Error::Domain {
            name: "num_balloons",
            constraint: ">= 1",
            value: 0.0,
        });
    }
    positive("radius_km", radius_km)?;
    let spacing = 3f64.sqrt() * radius_km;
    let unit: Vec<(f64, f64)> = (0..6)
        .map(|k| {
            let angle = PI / 3.0 * k as f64;
            (angle.cos(), angle.sin())
        })
        .collect();

    let mut centers = vec![(0.0, 0.0)];
    let mut ring = 1;
    while centers.len() < num_balloons {
        // axial walk: start at ring·e0, then step along e(side+2)
        let mut pos = (ring as f64 * unit[0].0, ring as f64 * unit[0].1);
        'ring: for side in 0..6 {
            let step = unit[(side + 2) % 6];
            for _ in 0..ring {
                if centers.len() == num_balloons {
                    break 'ring;
                }
                centers.push(pos);
                pos = (pos.0 + step.0, pos.1 + step.1);
            }
        }
        ring += 1;
    }

    let cells = centers
        .into_iter()
        .map(|(x, y)| Cell {
            radius_km,
            center_x_km: snap(x * spacing),
            center_y_km: snap(y * spacing),
        })
        .collect();
    Ok(Constellation {
        cells,
        spacing_km: spacing,
    })
}

// Clear float residue so that lattice points on an axis print as exact zeros.
fn snap(v: f64) -> f64 {
    if v.abs() < 1e-12 {
        0.0
    } else {
        v
    }
}

impl Constellation {
    pub fn radius_km(&self) -> f64 {
        self.cells[0].radius_km
    }

    /// Index pairs of adjacent cells, i.e. balloons joined by an inter-balloon link.
    pub fn links(&self) -> Vec<(usize, usize)> {
        let tol = 1e-9 * self.spacing_km.max(1.0);
        let mut out = Vec::new();
        for (i, a) in self.cells.iter().enumerate() {
            for (j, b) in self.cells.iter().enumerate().skip(i + 1) {
                let d = (a.center_x_km - b.center_x_km).hypot(a.center_y_km - b.center_y_km);
                if (d - self.spacing_km).abs() <= tol {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Area of the union of all cells by uniform sampling of the bounding box.
    pub fn union_area_km2(&self, samples: usize, seed: u64) -> Result<f64> {
        if samples == 0 {
            return Err(Error::Domain {
                name: "samples",
                constraint: ">= 1",
                value: 0.0,
            });
        }
        let r = self.radius_km();
        let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for c in &self.cells {
            x0 = x0.min(c.center_x_km - r);
            x1 = x1.max(c.center_x_km + r);
            y0 = y0.min(c.center_y_km - r);
            y1 = y1.max(c.center_y_km + r);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let hits = (0..samples)
            .filter(|_| {
                let x = x0 + (x1 - x0) * rng.random::<f64>();
                let y = y0 + (y1 - y0) * rng.random::<f64>();
                self.cells.iter().any(|c| c.contains(x, y))
            })
            .count();
        Ok((x1 - x0) * (y1 - y0) * hits as f64 / samples as f64)
    }

    pub fn union_area_default_km2(&self) -> Result<f64> {
        self.union_area_km2(UNION_AREA_SAMPLES, UNION_AREA_SEED)
    }
}
