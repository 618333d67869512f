//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any fails.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::Command;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tether_core::coverage::cell_radius_from_budget;
use tether_core::exposure::{
    altitude_density_profile, efield_profile, ground_density_profile, range_density_profile,
    received_power_profile, table_one,
};
use tether_core::green::{annual_emissions_tons, compare, PowerSourceProfile};
use tether_core::rf::{
    e_field_rms, hata_path_loss, power_density, received_power, wavelength_m,
    FREE_SPACE_IMPEDANCE_OHM,
};
use tether_core::{Gain, TransmitterConfig};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn reference_tx() -> TransmitterConfig {
    TransmitterConfig {
        power_w: 20.0,
        gain: Gain::Linear(50.0),
        freq_mhz: 900.0,
        antenna_dim_m: 1.0,
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn round_dp(v: f64, places: i32) -> f64 {
    let s = 10f64.powi(places);
    (v * s).round() / s
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn table_one_golden() -> Outcome {
    // printed value, decimals printed, raw reference
    let expected = [
        (10.0, 0.796, 3, 0.79577),
        (100.0, 0.008, 3, 0.0079577),
        (500.0, 0.000318, 6, 0.00031831),
    ];
    let distances: Vec<f64> = expected.iter().map(|e| e.0).collect();
    let rows = table_one(&reference_tx(), &distances).map_err(|e| e.to_string())?;
    for ((r, pd), (_, printed, places, raw)) in rows.iter().zip(expected) {
        ensure(
            round_dp(*pd, places) == printed,
            format!("R={r}: {pd} does not round to {printed}"),
        )?;
        ensure(
            rel(*pd, raw) < 1e-3,
            format!("R={r}: {pd} vs {raw} beyond 0.1%"),
        )?;
    }
    Ok(format!(
        "{:.6} {:.7} {:.8}",
        rows[0].1, rows[1].1, rows[2].1
    ))
}

fn scenario_one_maxima() -> Outcome {
    let tx = reference_tx();
    let mut detail = Vec::new();
    for (altitude, published, tol) in [(150.0, 3.537e-3, 1e-3), (200.0, 1.98e-3, 1e-2)] {
        let s = ground_density_profile(&tx, altitude, 25.0, 101).map_err(|e| e.to_string())?;
        let (at, max) = s.max_point().ok_or("empty series")?;
        ensure(at == 0.0, format!("a_t={altitude}: maximum at d={at}"))?;
        ensure(
            rel(max, published) < tol,
            format!("a_t={altitude}: {max:e} vs {published:e} beyond {tol}"),
        )?;
        detail.push(format!("{max:.4e}@{altitude}m"));
    }
    Ok(detail.join(" "))
}

fn hata_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let f = rng.random_range(150.0..=1500.0);
        let h = rng.random_range(30.0..=440.0);
        let hr = rng.random_range(1.0..=10.0);
        let d = rng.random_range(1.0..=20.0);
        let loss = hata_path_loss(f, h, hr, d)
            .map_err(|e| e.to_string())?
            .loss_db;
        let (back, _) = cell_radius_from_budget(f, h, hr, loss).map_err(|e| e.to_string())?;
        worst = worst.max(rel(back, d));
    }
    ensure(worst < 1e-9, format!("worst relative error {worst:e}"))?;
    Ok(format!("worst relative error {worst:.2e}"))
}

fn hata_hand_values() -> Outcome {
    // term-by-term at f=900 MHz, h_te=200 m, h_re=1.5 m:
    //   26.16·log10(900)             = 77.282984
    //   13.82·log10(200)             = 31.800235
    //   a(1.5) = 3.824500 − 3.808618 = 0.015882
    //   44.9 − 6.55·log10(200)       = 44.9 − 15.071746 = 29.828254
    let fixed: f64 = 69.55 + 77.282984 - 31.800235 - 0.015882;
    let oracle_1km = fixed;
    let oracle_10km = fixed + 29.828254;
    ensure(
        (oracle_1km - 115.017).abs() < 0.01,
        "oracle disagrees with 115.017",
    )?;
    ensure(
        (oracle_10km - 144.846).abs() < 0.01,
        "oracle disagrees with 144.846",
    )?;

    let at = |d| hata_path_loss(900.0, 200.0, 1.5, d).map(|p| p.loss_db);
    let pl1 = at(1.0).map_err(|e| e.to_string())?;
    let pl10 = at(10.0).map_err(|e| e.to_string())?;
    ensure((pl1 - 115.017).abs() < 0.01, format!("PL(1 km) = {pl1}"))?;
    ensure((pl10 - 144.846).abs() < 0.01, format!("PL(10 km) = {pl10}"))?;
    ensure(
        (pl1 - oracle_1km).abs() < 1e-5,
        "implementation drifts from hand terms at 1 km",
    )?;
    ensure(
        (pl10 - oracle_10km).abs() < 1e-5,
        "implementation drifts from hand terms at 10 km",
    )?;
    Ok(format!("PL(1 km)={pl1:.3} dB, PL(10 km)={pl10:.3} dB"))
}

fn algebraic_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut worst_e, mut worst_r) = (0.0f64, 0.0f64);
    for _ in 0..1000 {
        let p = 10f64.powf(rng.random_range(-3.0..3.0));
        let gt = 10f64.powf(rng.random_range(-1.0..4.0));
        let gr = 10f64.powf(rng.random_range(-1.0..3.0));
        let f = rng.random_range(50.0..60_000.0);
        let r = 10f64.powf(rng.random_range(-1.0..5.0));
        let err = |e: tether_core::Error| e.to_string();
        let pd = power_density(p, gt, r).map_err(err)?;
        let e = e_field_rms(p, gt, r).map_err(err)?;
        let pr = received_power(p, gt, gr, f, r).map_err(err)?;
        let lambda = wavelength_m(f).map_err(err)?;
        worst_e = worst_e.max((e * e / FREE_SPACE_IMPEDANCE_OHM - pd).abs() / pd);
        worst_r = worst_r.max((pr - pd * gr * lambda * lambda / (4.0 * PI)).abs() / pr);
    }
    ensure(worst_e < 1e-12, format!("E²/120π vs P_d: {worst_e:e}"))?;
    ensure(worst_r < 1e-12, format!("P_r vs P_d·aperture: {worst_r:e}"))?;
    Ok(format!("worst {worst_e:.1e} / {worst_r:.1e}"))
}

fn monotone_shapes() -> Outcome {
    let tx = reference_tx();
    let e = |e: tether_core::Error| e.to_string();
    let sweeps = [
        altitude_density_profile(&tx, 200.0, 400.0, 0.0, 101).map_err(e)?,
        altitude_density_profile(&tx, 200.0, 400.0, 25.0, 101).map_err(e)?,
        efield_profile(&tx, 10.0, 500.0, 101).map_err(e)?,
        range_density_profile(&tx, 10.0, 500.0, 101).map_err(e)?,
        received_power_profile(&tx, 0.0, 900.0, 200.0, 400.0, 0.0, 101).map_err(e)?,
    ];
    for s in &sweeps {
        ensure(
            s.is_strictly_decreasing(),
            format!("{} is not strictly decreasing", s.label),
        )?;
    }
    let fig6 = &sweeps[0];
    let first = fig6.points.first().unwrap().1;
    let last = fig6.points.last().unwrap().1;
    ensure(
        rel(4.0 * last, first) < 1e-12,
        format!("400 m / 200 m ratio {}", last / first),
    )?;
    for altitude in [50.0, 150.0, 200.0, 300.0, 440.0] {
        let g = ground_density_profile(&tx, altitude, 25.0, 101).map_err(e)?;
        ensure(
            g.max_point().unwrap().0 == 0.0,
            format!("a_t={altitude}: peak off-centre"),
        )?;
        ensure(
            g.is_strictly_decreasing(),
            format!("a_t={altitude}: ground profile not decreasing"),
        )?;
    }
    Ok(format!(
        "{} sweeps decreasing, 400/200 ratio {:.12}",
        sweeps.len(),
        last / first
    ))
}

fn green_claim() -> Outcome {
    let terrestrial = power_density(20.0, 50.0, 10.0).map_err(|e| e.to_string())?;
    let balloon = power_density(20.0, 50.0, 150.0).map_err(|e| e.to_string())?;
    let ratio = terrestrial / balloon;
    ensure(ratio > 100.0, format!("ratio {ratio}"))?;
    Ok(format!("terrestrial/balloon density ratio {ratio:.1}"))
}

fn bundled_scenario() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios/default.json")
}

fn run_all_commands(out: &Path) -> Result<Vec<(String, Vec<u8>)>, String> {
    let scenario = bundled_scenario();
    let mut invocations: Vec<(Vec<&str>, Option<&str>)> = vec![
        (vec!["table1"], Some("table1.csv")),
        (vec!["coverage"], Some("coverage.csv")),
        (vec!["green"], Some("green.csv")),
        (vec!["zones"], Some("zones.csv")),
        (vec!["linkbudget"], None),
    ];
    for fig in ["fig4", "fig5", "fig6", "fig7", "fig8"] {
        invocations.push((vec!["exposure", fig], None));
    }
    let mut outputs = Vec::new();
    for (args, file) in invocations {
        let result = Command::new(env!("CARGO_BIN_EXE_tether"))
            .arg(args[0])
            .arg("--scenario")
            .arg(&scenario)
            .arg("--out")
            .arg(out)
            .args(&args[1..])
            .output()
            .map_err(|e| e.to_string())?;
        ensure(
            result.status.success(),
            format!("{args:?} exited with {}", result.status),
        )?;
        let (name, bytes) = match (file, args.get(1)) {
            (Some(f), _) => (
                f.to_owned(),
                std::fs::read(out.join(f)).map_err(|e| e.to_string())?,
            ),
            (None, Some(fig)) => {
                let f = format!("{fig}.csv");
                let bytes = std::fs::read(out.join(&f)).map_err(|e| e.to_string())?;
                (f, bytes)
            }
            (None, None) => ("linkbudget(stdout)".to_owned(), result.stdout),
        };
        outputs.push((name, bytes));
    }
    Ok(outputs)
}

fn cli_determinism() -> Outcome {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let a = run_all_commands(&tmp.path().join("a"))?;
    let b = run_all_commands(&tmp.path().join("b"))?;
    for ((name, x), (_, y)) in a.iter().zip(&b) {
        ensure(!x.is_empty(), format!("{name} is empty"))?;
        ensure(x == y, format!("{name} differs between runs"))?;
    }
    Ok(format!("{} outputs byte-identical", a.len()))
}

fn green_properties() -> Outcome {
    let e = |e: tether_core::Error| e.to_string();
    let solar = PowerSourceProfile::solar();
    let balloon = annual_emissions_tons(&solar, 8760.0).map_err(e)?;
    ensure(balloon == 0.0, format!("solar balloon emits {balloon}"))?;

    let per_site = annual_emissions_tons(&PowerSourceProfile::diesel(2.0), 8760.0).map_err(e)?;
    let oracle = 2.0 * 8760.0 * 2.68 / 1000.0;
    ensure(
        rel(per_site, oracle) < 1e-6,
        format!("{per_site} vs {oracle}"),
    )?;
    ensure(
        rel(per_site, 46.954) < 1e-4,
        format!("{per_site} vs 46.954"),
    )?;

    let fleet = PowerSourceProfile::diesel(2.0);
    for (radius, count) in [(1.0, 1u64), (2.0, 4), (5.0, 25), (10.0, 100)] {
        let c = compare(&fleet, &solar, radius, 1.0, 8760.0).map_err(e)?;
        ensure(
            c.replaced_bs_count == count,
            format!("radius {radius}: count {}", c.replaced_bs_count),
        )?;
        ensure(
            c.balloon_annual_tons == 0.0,
            "solar balloon tonnage non-zero",
        )?;
        ensure(
            rel(c.avoided_tons, count as f64 * per_site) < 1e-12,
            format!("avoided {} not linear in count {count}", c.avoided_tons),
        )?;
    }
    Ok(format!("{per_site:.4} t/site/yr, solar balloon 0 t"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 density-vs-distance table", table_one_golden),
        ("2 scenario-1 ground maxima", scenario_one_maxima),
        ("3 Hata inversion round trip", hata_round_trip),
        ("4 Hata hand-oracle values", hata_hand_values),
        ("5 field/density/received identities", algebraic_identities),
        ("6 sweep monotonicity and shape", monotone_shapes),
        ("7 balloon vs terrestrial density", green_claim),
        ("8 CLI determinism", cli_determinism),
        ("9 green model properties", green_properties),
    ];
    let mut failures = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS [{name}] {detail}"),
            Err(why) => {
                failures += 1;
                println!("FAIL [{name}] {why}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
