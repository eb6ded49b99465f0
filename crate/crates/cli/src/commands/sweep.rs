//! `sweep`: energy breakdown along a parameter grid.

use super::{f, write_csv, RunContext};
use crate::CliError;
use slam_energy_core::planner::{sweep_area, sweep_speed, sweep_t_sens, SweepTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    TSens,
    SideLength,
    Speed,
}

impl std::str::FromStr for SweepAxis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "t_sens" => Ok(SweepAxis::TSens),
            "L" => Ok(SweepAxis::SideLength),
            "v" => Ok(SweepAxis::Speed),
            _ => Err(format!("unknown axis '{s}' (expected t_sens, L or v)")),
        }
    }
}

/// Parse "start:stop:step" into an inclusive grid.
pub fn parse_grid(text: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    let [start, stop, step] = parts.as_slice() else {
        return Err(CliError::Config(format!(
            "grid '{text}' must be start:stop:step"
        )));
    };
    let parse = |s: &str| -> Result<f64, CliError> {
        s.parse()
            .map_err(|e| CliError::Config(format!("grid '{text}': {e}")))
    };
    let (start, stop, step) = (parse(start)?, parse(stop)?, parse(step)?);
    if !(step > 0.0) || stop < start {
        return Err(CliError::Config(format!(
            "grid '{text}' needs step > 0 and stop >= start"
        )));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| start + i as f64 * step).collect())
}

pub fn run_sweep(ctx: &RunContext, axis: SweepAxis, grid: &[f64]) -> Result<SweepTable, CliError> {
    if grid.is_empty() {
        return Err(CliError::Config("sweep grid is empty".into()));
    }
    let mission = ctx.mission()?;
    let model = ctx.channel_model()?;
    let payload = ctx.config.payload()?;
    let mechanics = ctx.config.mechanics()?;
    let sampling = ctx.sampling();
    let n_sub = ctx.config.n_sub_intervals;
    let tol = ctx.config.power_tolerance;

    let table = match axis {
        SweepAxis::TSens => {
            let (speed, _) = ctx.schedule(&mission)?;
            sweep_t_sens(
                grid, speed, &mission, &model, &mechanics, &payload, sampling, n_sub, tol,
            )?
        }
        SweepAxis::SideLength => sweep_area(
            grid, &mission, &model, &mechanics, &payload, sampling, n_sub, tol,
        )?,
        SweepAxis::Speed => sweep_speed(
            grid, &mission, &model, &mechanics, &payload, sampling, n_sub, tol,
        )?,
    };

    let mut rows = Vec::with_capacity(table.rows.len());
    let mut failures = 0usize;
    for row in &table.rows {
        match &row.outcome {
            Ok(point) => rows.push(vec![
                f(row.axis_value),
                f(point.breakdown.comm),
                f(point.breakdown.lidar),
                f(point.breakdown.mech),
                f(point.breakdown.total),
                point.periods.to_string(),
                f(point.periods_approx),
            ]),
            Err(reason) => {
                failures += 1;
                eprintln!("warning: {} = {}: {reason}", table.axis, row.axis_value);
            }
        }
    }
    let csv_path = ctx.out_path("sweep.csv");
    write_csv(
        &csv_path,
        &[
            table.axis,
            "E_comm",
            "E_LiDAR",
            "E_mech",
            "E_total",
            "periods",
            "periods_approx",
        ],
        &rows,
    )?;
    println!(
        "sweep over {}: {} points solved, {} failed -> {}",
        table.axis,
        rows.len(),
        failures,
        csv_path.display()
    );

    let mut manifest = ctx.manifest("sweep");
    manifest.add_output(&csv_path)?;
    ctx.finish_manifest(manifest)?;

    if failures == table.rows.len() {
        return Err(CliError::Solver("every sweep point failed".into()));
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing_is_inclusive() {
        let g = parse_grid("0.06:0.2:0.01").unwrap();
        assert_eq!(g.len(), 15);
        assert!((g[0] - 0.06).abs() < 1e-15);
        assert!((g[14] - 0.2).abs() < 1e-12);

        let g = parse_grid("2:20:1").unwrap();
        assert_eq!(g.len(), 19);

        assert!(parse_grid("1:2").is_err());
        assert!(parse_grid("2:1:0.5").is_err());
        assert!(parse_grid("1:2:0").is_err());
        assert!(parse_grid("1:2:x").is_err());
    }

    #[test]
    fn axis_names_parse() {
        assert_eq!("t_sens".parse::<SweepAxis>().unwrap(), SweepAxis::TSens);
        assert_eq!("L".parse::<SweepAxis>().unwrap(), SweepAxis::SideLength);
        assert_eq!("v".parse::<SweepAxis>().unwrap(), SweepAxis::Speed);
        assert!("speed".parse::<SweepAxis>().is_err());
    }
}
