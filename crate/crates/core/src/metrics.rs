//! Image quality metrics for benchmarking reconstructions against a
//! reference.

use crate::error::{Error, Result};
use crate::image::GrayImage;

/// Combined score of one reconstruction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QualityScore {
    pub mse: f64,
    pub psnr_db: f64,
}

/// Mean squared error between two images of identical dimensions.
pub fn mse(a: &GrayImage, b: &GrayImage) -> Result<f64> {
    if a.width() != b.width() || a.height() != b.height() {
        return Err(Error::DimensionMismatch(
            a.width(),
            a.height(),
            b.width(),
            b.height(),
        ));
    }
    let sum: u64 = a
        .pixels()
        .iter()
        .zip(b.pixels())
        .map(|(&p, &q)| {
            let d = (p as i64 - q as i64).unsigned_abs();
            d * d
        })
        .sum();
    Ok(sum as f64 / a.pixels().len() as f64)
}

/// Peak signal-to-noise ratio in dB for an 8-bit image pair.
///
/// Identical images have zero error; the ratio is reported as positive
/// infinity in that case.
pub fn psnr(a: &GrayImage, b: &GrayImage) -> Result<f64> {
    Ok(psnr_from_mse(mse(a, b)?))
}

/// PSNR in dB for a known mean squared error, with peak fixed at 255.
pub fn psnr_from_mse(mse: f64) -> f64 {
    if mse <= 0.0 {
        return f64::INFINITY;
    }
    10.0 * (255.0_f64 * 255.0 / mse).log10()
}

/// Computes both metrics in one pass.
pub fn quality(reference: &GrayImage, candidate: &GrayImage) -> Result<QualityScore> {
    let mse = mse(reference, candidate)?;
    Ok(QualityScore {
        mse,
        psnr_db: psnr_from_mse(mse),
    })
}
