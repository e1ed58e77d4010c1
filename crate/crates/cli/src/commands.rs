//! Subcommand implementations.

use std::fs::File;
use std::io::BufWriter;
use std::path::Path;
use std::time::Instant;

use aaca_core::{
    construct_pheromone, downscale, interpolate, load_pgm, mse, psnr_from_mse, save_pgm,
    GrayImage, InterpolationRequest, Method,
};

use crate::config::{echo_json, Settings};
use crate::report::{print_rows, write_reports, BenchRow};
use crate::AppError;

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn request(settings: &Settings, method: Method) -> InterpolationRequest {
    let mut req = InterpolationRequest::new(method, settings.scale);
    req.obaca_normalize = settings.obaca_normalize;
    req.convention = settings.convention;
    req.eps = settings.eps;
    req
}

fn upscale(img: &GrayImage, settings: &Settings, method: Method) -> Result<GrayImage, AppError> {
    let field = if method.needs_pheromone() {
        Some(construct_pheromone(img, &settings.params)?)
    } else {
        None
    };
    Ok(interpolate(img, field.as_ref(), &request(settings, method))?)
}

fn single_input<'a>(settings: &'a Settings, what: &str) -> Result<&'a Path, AppError> {
    match settings.inputs.as_slice() {
        [one] => Ok(one),
        [] => Err(AppError::Usage(format!("{} needs --input", what))),
        _ => Err(AppError::Usage(format!("{} takes exactly one --input", what))),
    }
}

pub fn interpolate_cmd(settings: &Settings) -> Result<(), AppError> {
    let input = single_input(settings, "interpolate")?;
    let output = settings
        .output
        .as_deref()
        .ok_or_else(|| AppError::Usage("interpolate needs --output".into()))?;
    let method = match settings.methods.as_slice() {
        [one] => *one,
        _ => return Err(AppError::Usage("interpolate runs exactly one method".into())),
    };
    println!("config: {}", echo_json(settings));
    let img = load_pgm(input)?;
    let start = Instant::now();
    let out = upscale(&img, settings, method)?;
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    save_pgm(&out, output)?;
    println!(
        "{} {}x{} -> {}x{} via {} in {:.3} ms",
        input.display(),
        img.width(),
        img.height(),
        out.width(),
        out.height(),
        method,
        wall_ms
    );
    println!("wrote {}", output.display());
    Ok(())
}

pub fn bench_cmd(settings: &Settings) -> Result<(), AppError> {
    if settings.inputs.is_empty() {
        return Err(AppError::Usage("bench needs at least one --input".into()));
    }
    if settings.compare.is_some() && settings.inputs.len() != 1 {
        return Err(AppError::Usage(
            "--compare scores against exactly one reference image".into(),
        ));
    }
    let echo = echo_json(settings);
    println!("config: {}", echo);

    let mut rows = Vec::new();
    for input in &settings.inputs {
        let reference = load_pgm(input)?;
        let small = downscale(&reference, settings.scale, settings.downscale)?;
        for &method in &settings.methods {
            let start = Instant::now();
            let up = upscale(&small, settings, method)?;
            let wall_ms = start.elapsed().as_secs_f64() * 1e3;
            let err = mse(&reference, &up)?;
            rows.push(BenchRow {
                image: stem(input),
                method: method.name().to_string(),
                mse: err,
                psnr_db: psnr_from_mse(err),
                wall_time_ms: wall_ms,
                seed: settings.params.seed,
            });
        }
        if let Some(compare) = &settings.compare {
            let candidate = load_pgm(compare)?;
            let err = mse(&reference, &candidate)?;
            rows.push(BenchRow {
                image: stem(input),
                method: format!("external:{}", stem(compare)),
                mse: err,
                psnr_db: psnr_from_mse(err),
                wall_time_ms: 0.0,
                seed: settings.params.seed,
            });
        }
    }

    print_rows(&rows);
    if let Some(base) = &settings.report {
        write_reports(base, &rows, &echo)?;
    }
    Ok(())
}

pub fn pheromone_cmd(settings: &Settings) -> Result<(), AppError> {
    let input = single_input(settings, "pheromone")?;
    let output = settings
        .output
        .as_deref()
        .ok_or_else(|| AppError::Usage("pheromone needs --output".into()))?;
    println!("config: {}", echo_json(settings));
    let img = load_pgm(input)?;
    let start = Instant::now();
    let field = construct_pheromone(&img, &settings.params)?;
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let file = File::create(output).map_err(aaca_core::Error::from)?;
    field
        .write_csv(BufWriter::new(file))
        .map_err(aaca_core::Error::from)?;
    println!(
        "{} {}x{} field built in {:.3} ms",
        input.display(),
        img.width(),
        img.height(),
        wall_ms
    );
    println!("wrote {}", output.display());
    Ok(())
}

pub fn metrics_cmd(settings: &Settings) -> Result<(), AppError> {
    let input = single_input(settings, "metrics")?;
    let compare = settings
        .compare
        .as_deref()
        .ok_or_else(|| AppError::Usage("metrics needs --compare".into()))?;
    let reference = load_pgm(input)?;
    let candidate = load_pgm(compare)?;
    let err = mse(&reference, &candidate)?;
    let psnr = psnr_from_mse(err);
    println!("mse {}", err);
    println!("psnr_db {}", psnr);
    if let Some(base) = &settings.report {
        let rows = [BenchRow {
            image: stem(input),
            method: format!("external:{}", stem(compare)),
            mse: err,
            psnr_db: psnr,
            wall_time_ms: 0.0,
            seed: settings.params.seed,
        }];
        write_reports(base, &rows, &echo_json(settings))?;
    }
    Ok(())
}
