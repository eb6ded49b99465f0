//! `map-eval`: rebuild an occupancy grid from a scan dataset and score it.

use super::{f, write_csv, RunContext};
use crate::config::PoseSource;
use crate::dataset::{read_records_from_path, ScanRecord};
use crate::CliError;
use slam_energy_core::mapping::{
    dead_reckon, map_iou, map_losses, rasterize_occupancy, sample_free_space, to_global, GridSpec,
    MapLosses, OccupancyGrid, PointCloud, PoseEstimate,
};
use slam_energy_core::world::build_square_world;
use std::io::Write;
use std::path::Path;

pub struct MapEvalOutcome {
    pub losses: MapLosses,
    pub iou: f64,
    pub periods: usize,
}

/// Mapping poses for each record. Scan rays are world-frame, so the pose
/// fed to the transform keeps heading 0; dead reckoning only perturbs the
/// position estimate.
fn mapping_poses(
    ctx: &RunContext,
    records: &[ScanRecord],
    t_sens: f64,
    speed: f64,
) -> Vec<PoseEstimate> {
    match ctx.config.pose_source {
        PoseSource::GroundTruth => records
            .iter()
            .map(|r| PoseEstimate {
                x: r.pose[0],
                y: r.pose[1],
                heading: 0.0,
            })
            .collect(),
        PoseSource::DeadReckoning => {
            let first = &records[0];
            let start = PoseEstimate {
                x: first.pose[0],
                y: first.pose[1],
                heading: first.pose[2],
            };
            let initial_velocity = [speed * first.pose[2].cos(), speed * first.pose[2].sin()];
            let odometry: Vec<_> = records.iter().map(|r| r.odometry).collect();
            dead_reckon(start, initial_velocity, &odometry, t_sens)
                .into_iter()
                .map(|p| PoseEstimate {
                    x: p.x,
                    y: p.y,
                    heading: 0.0,
                })
                .collect()
        }
    }
}

fn export_grid(path: &Path, grid: &OccupancyGrid) -> Result<(), CliError> {
    let spec = grid.spec;
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(
        out,
        "{} {} {} {} {}",
        f(spec.origin[0]),
        f(spec.origin[1]),
        f(spec.resolution),
        spec.width,
        spec.height
    )?;
    for cy in 0..spec.height {
        let row: Vec<String> = (0..spec.width)
            .map(|cx| f(grid.probability(cx, cy)))
            .collect();
        writeln!(out, "{}", row.join(" "))?;
    }
    out.flush()?;
    Ok(())
}

pub fn run_map_eval(ctx: &RunContext, dataset: &Path) -> Result<MapEvalOutcome, CliError> {
    let records = read_records_from_path(dataset)?;
    if records.is_empty() {
        return Err(CliError::Config(format!(
            "dataset {} holds no records",
            dataset.display()
        )));
    }
    let mission = ctx.mission()?;
    let (speed, t_sens) = ctx.schedule(&mission)?;
    let world =
        build_square_world(mission.side_length)?.with_resolution_hint(ctx.config.grid_resolution);
    let metrics = ctx.config.map_metrics();

    let poses = mapping_poses(ctx, &records, t_sens, speed);
    let clouds: Vec<PointCloud> = records
        .iter()
        .zip(poses.iter())
        .map(|(r, pose)| to_global(&r.scan(), pose))
        .collect();
    let free: Vec<PointCloud> = records
        .iter()
        .zip(poses.iter())
        .map(|(r, pose)| sample_free_space(&r.scan(), pose, metrics.free_space_spacing))
        .collect();

    let spec = GridSpec::covering(&world, ctx.config.grid_resolution);
    let grid = rasterize_occupancy(&clouds, &free, spec);
    let losses = map_losses(&grid, &clouds, &free, &metrics, 1)?;
    let iou = map_iou(&grid, &world, ctx.config.iou_threshold)?;

    println!("map evaluation over {} periods:", records.len());
    println!("  L_cls   {:.9}", losses.classification);
    println!("  L_ch    {:.9}", losses.chamfer);
    println!("  L_total {:.9}", losses.total);
    println!("  IoU     {:.9}", iou);

    let grid_path = ctx.out_path("grid.txt");
    export_grid(&grid_path, &grid)?;
    let metrics_path = ctx.out_path("map_metrics.csv");
    write_csv(
        &metrics_path,
        &["metric", "value"],
        &[
            vec!["L_cls".into(), f(losses.classification)],
            vec!["L_ch".into(), f(losses.chamfer)],
            vec!["L_total".into(), f(losses.total)],
            vec!["iou".into(), f(iou)],
        ],
    )?;

    let mut manifest = ctx.manifest("map-eval");
    manifest.add_output(&grid_path)?;
    manifest.add_output(&metrics_path)?;
    ctx.finish_manifest(manifest)?;

    Ok(MapEvalOutcome {
        losses,
        iou,
        periods: records.len(),
    })
}
