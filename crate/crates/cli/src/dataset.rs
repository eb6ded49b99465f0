//! Scan dataset persistence: one CSV row per sensing period.
//!
//! Row layout: period index, 360 ranges (world-frame ray angles, hence the
//! `range_world_*` column names), 6 odometry values, then the ground-truth
//! pose. Floats are written with 17 significant digits so the reader
//! recovers bit-identical values.

use slam_energy_core::world::{LidarScan, OdometryReading, SCAN_ANGLES};
use std::io::{BufReader, Read, Write};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("line {line}: {reason}")]
    Format { line: usize, reason: String },
}

/// Everything recorded about one sensing period.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanRecord {
    pub period: u32,
    pub ranges: Vec<f64>,
    pub odometry: OdometryReading,
    pub pose: [f64; 3], // x, y, heading
}

impl ScanRecord {
    pub fn scan(&self) -> LidarScan {
        LidarScan {
            ranges: self.ranges.clone(),
            period: self.period,
        }
    }
}

/// Render a float so that parsing the text recovers the exact bits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn header() -> Vec<String> {
    let mut cols = Vec::with_capacity(1 + SCAN_ANGLES + 6 + 3);
    cols.push("period".to_string());
    for deg in 0..SCAN_ANGLES {
        cols.push(format!("range_world_{deg:03}"));
    }
    for name in [
        "accel_x",
        "accel_y",
        "accel_z",
        "ang_vel_x",
        "ang_vel_y",
        "ang_vel_z",
        "pose_x",
        "pose_y",
        "pose_heading",
    ] {
        cols.push(name.to_string());
    }
    cols
}

pub fn write_records<W: Write>(out: W, records: &[ScanRecord]) -> Result<(), DatasetError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header())?;
    for r in records {
        let mut row = Vec::with_capacity(1 + SCAN_ANGLES + 9);
        row.push(r.period.to_string());
        row.extend(r.ranges.iter().map(|&x| fmt_f64(x)));
        row.extend(r.odometry.acceleration.iter().map(|&x| fmt_f64(x)));
        row.extend(r.odometry.angular_velocity.iter().map(|&x| fmt_f64(x)));
        row.extend(r.pose.iter().map(|&x| fmt_f64(x)));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_records<R: Read>(input: R) -> Result<Vec<ScanRecord>, DatasetError> {
    let mut reader = csv::Reader::from_reader(BufReader::new(input));
    {
        let got = reader.headers()?;
        let expect = header();
        if got.len() != expect.len() {
            return Err(DatasetError::Format {
                line: 1,
                reason: format!("expected {} columns, found {}", expect.len(), got.len()),
            });
        }
    }
    let mut records = Vec::new();
    for (idx, row) in reader.records().enumerate() {
        let line = idx + 2;
        let row = row?;
        let field = |i: usize| -> Result<f64, DatasetError> {
            row.get(i)
                .ok_or_else(|| DatasetError::Format {
                    line,
                    reason: format!("missing column {i}"),
                })?
                .parse::<f64>()
                .map_err(|e| DatasetError::Format {
                    line,
                    reason: format!("column {i}: {e}"),
                })
        };
        let period: u32 =
            row.get(0)
                .unwrap_or_default()
                .parse()
                .map_err(|e| DatasetError::Format {
                    line,
                    reason: format!("period: {e}"),
                })?;
        let mut ranges = Vec::with_capacity(SCAN_ANGLES);
        for i in 0..SCAN_ANGLES {
            let r = field(1 + i)?;
            if !r.is_finite() || r < 0.0 {
                return Err(DatasetError::Format {
                    line,
                    reason: format!("range {i} out of domain: {r}"),
                });
            }
            ranges.push(r);
        }
        let base = 1 + SCAN_ANGLES;
        let odometry = OdometryReading {
            acceleration: [field(base)?, field(base + 1)?, field(base + 2)?],
            angular_velocity: [field(base + 3)?, field(base + 4)?, field(base + 5)?],
            period,
        };
        let pose = [field(base + 6)?, field(base + 7)?, field(base + 8)?];
        records.push(ScanRecord {
            period,
            ranges,
            odometry,
            pose,
        });
    }
    Ok(records)
}

pub fn read_records_from_path(path: &std::path::Path) -> Result<Vec<ScanRecord>, DatasetError> {
    let f = std::fs::File::open(path)?;
    read_records(BufReader::new(f))
}
