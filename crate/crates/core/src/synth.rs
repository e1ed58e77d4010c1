//! Deterministic synthetic test patterns.

use crate::image::GrayImage;

/// Flat image of one value.
pub fn constant(width: usize, height: usize, value: u8) -> GrayImage {
    GrayImage::constant(width, height, value)
}

/// Linear diagonal ramp from 0 at the top-left to 255 at the bottom-right.
pub fn gradient(width: usize, height: usize) -> GrayImage {
    let denom = (width + height - 2).max(1) as f64;
    let data = (0..height)
        .flat_map(|i| {
            (0..width).map(move |j| ((i + j) as f64 * 255.0 / denom).round() as u8)
        })
        .collect();
    GrayImage::from_vec(width, height, data).expect("dimensions match data")
}

/// Checkerboard of 0/255 tiles with the given tile edge length.
pub fn checkerboard(width: usize, height: usize, tile: usize) -> GrayImage {
    let t = tile.max(1);
    let data = (0..height)
        .flat_map(|i| {
            (0..width).map(move |j| if ((i / t) + (j / t)) % 2 == 0 { 0 } else { 255 })
        })
        .collect();
    GrayImage::from_vec(width, height, data).expect("dimensions match data")
}

/// Radial gradient, quadratic in the distance from the image center, so the
/// local variation grows from the center outward.
pub fn radial(width: usize, height: usize) -> GrayImage {
    let ci = (height as f64 - 1.0) / 2.0;
    let cj = (width as f64 - 1.0) / 2.0;
    let dmax = ci * ci + cj * cj;
    let data = (0..height)
        .flat_map(|i| {
            (0..width).map(move |j| {
                let d = (i as f64 - ci).powi(2) + (j as f64 - cj).powi(2);
                (255.0 * d / dmax).round() as u8
            })
        })
        .collect();
    GrayImage::from_vec(width, height, data).expect("dimensions match data")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gradient_spans_full_range() {
        let img = gradient(64, 64);
        assert_eq!(img.get(0, 0), 0);
        assert_eq!(img.get(63, 63), 255);
    }

    #[test]
    fn checkerboard_alternates_tiles() {
        let img = checkerboard(8, 8, 2);
        assert_eq!(img.get(0, 0), 0);
        assert_eq!(img.get(0, 2), 255);
        assert_eq!(img.get(2, 0), 255);
        assert_eq!(img.get(2, 2), 0);
    }

    #[test]
    fn radial_is_dark_at_center() {
        let img = radial(9, 9);
        assert_eq!(img.get(4, 4), 0);
        assert_eq!(img.get(0, 0), 255);
    }
}
