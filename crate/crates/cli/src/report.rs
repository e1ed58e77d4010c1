//! Benchmark report rows and their CSV/JSON renderings.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::AppError;

/// One scored reconstruction. `psnr_db` is infinite for a perfect match;
/// JSON renders that as null, CSV as `inf`.
#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub image: String,
    pub method: String,
    pub mse: f64,
    pub psnr_db: f64,
    pub wall_time_ms: f64,
    pub seed: u64,
}

pub const CSV_HEADER: &str = "image,method,mse,psnr_db,wall_time_ms,seed";

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.image, r.method, r.mse, r.psnr_db, r.wall_time_ms, r.seed
        )
        .expect("writing to a String cannot fail");
    }
    out
}

pub fn to_json(rows: &[BenchRow]) -> String {
    serde_json::to_string_pretty(rows).expect("static schema serializes")
}

/// Writes `<base>.csv`, `<base>.json` and `<base>.config.json` next to each
/// other so results ship with their parameters.
pub fn write_reports(base: &Path, rows: &[BenchRow], config_echo: &str) -> Result<(), AppError> {
    let write = |ext: &str, body: String| -> Result<(), AppError> {
        let path = base.with_extension(ext);
        fs::write(&path, body).map_err(aaca_core::Error::from)?;
        println!("wrote {}", path.display());
        Ok(())
    };
    write("csv", to_csv(rows))?;
    write("json", to_json(rows))?;
    write("config.json", format!("{}\n", config_echo))
}

pub fn print_rows(rows: &[BenchRow]) {
    println!("{}", CSV_HEADER);
    for r in rows {
        println!(
            "{},{},{},{},{},{}",
            r.image, r.method, r.mse, r.psnr_db, r.wall_time_ms, r.seed
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Vec<BenchRow> {
        vec![
            BenchRow {
                image: "gradient".into(),
                method: "bilinear".into(),
                mse: 12.5,
                psnr_db: 37.16,
                wall_time_ms: 1.25,
                seed: 42,
            },
            BenchRow {
                image: "gradient".into(),
                method: "external:ref".into(),
                mse: 0.0,
                psnr_db: f64::INFINITY,
                wall_time_ms: 0.0,
                seed: 42,
            },
        ]
    }

    #[test]
    fn csv_has_fixed_header_and_one_line_per_row() {
        let csv = to_csv(&sample());
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[1], "gradient,bilinear,12.5,37.16,1.25,42");
        assert!(lines[2].contains("inf"));
    }

    #[test]
    fn json_is_an_array_of_row_objects() {
        let parsed: serde_json::Value = serde_json::from_str(&to_json(&sample())).unwrap();
        let rows = parsed.as_array().unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0]["method"], "bilinear");
        assert_eq!(rows[0]["mse"], 12.5);
        // non-finite psnr serializes as null
        assert!(rows[1]["psnr_db"].is_null());
    }
}
