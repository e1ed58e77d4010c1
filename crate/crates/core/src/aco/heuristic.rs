//! Local intensity variation and the normalized heuristic field.

use crate::image::GrayImage;

use super::VmaxMode;

/// Largest possible variation sum: four absolute differences of 255.
pub const VC_THEORETICAL_MAX: f64 = 4.0 * 255.0;

/// Intensity variation at a pixel: the absolute differences across both
/// diagonals, the horizontal and the vertical neighbor pairs. Out-of-bounds
/// neighbors replicate the nearest edge pixel.
pub fn vc(img: &GrayImage, row: usize, col: usize) -> f64 {
    let i = row as isize;
    let j = col as isize;
    let d = |a: u8, b: u8| (a as i32 - b as i32).abs() as f64;
    d(img.get_clamped(i - 1, j - 1), img.get_clamped(i + 1, j + 1))
        + d(img.get_clamped(i + 1, j - 1), img.get_clamped(i - 1, j + 1))
        + d(img.get_clamped(i, j - 1), img.get_clamped(i, j + 1))
        + d(img.get_clamped(i - 1, j), img.get_clamped(i + 1, j))
}

/// Per-pixel heuristic values, normalized into [0, 1].
#[derive(Debug, Clone)]
pub struct HeuristicField {
    width: usize,
    height: usize,
    eta: Vec<f64>,
    vmax: f64,
}

impl HeuristicField {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        debug_assert!(row < self.height && col < self.width);
        self.eta[row * self.width + col]
    }

    /// The normalization constant that was applied.
    pub fn vmax(&self) -> f64 {
        self.vmax
    }

    pub fn values(&self) -> &[f64] {
        &self.eta
    }

    /// Constructor from raw values, for controlled test setups.
    #[cfg(test)]
    pub(crate) fn from_values(width: usize, height: usize, eta: Vec<f64>, vmax: f64) -> Self {
        debug_assert_eq!(eta.len(), width * height);
        Self {
            width,
            height,
            eta,
            vmax,
        }
    }
}

/// Computes the heuristic field of an image: eta = vc / vmax.
///
/// Empirical mode divides by the largest variation present, so the most
/// varied pixel scores exactly 1; a flat image falls back to a divisor of 1
/// and scores 0 everywhere.
pub fn heuristic_field(img: &GrayImage, mode: VmaxMode) -> HeuristicField {
    let (w, h) = (img.width(), img.height());
    let mut raw = Vec::with_capacity(w * h);
    let mut max = 0.0f64;
    for i in 0..h {
        for j in 0..w {
            let v = vc(img, i, j);
            if v > max {
                max = v;
            }
            raw.push(v);
        }
    }
    let vmax = match mode {
        VmaxMode::Empirical => {
            if max > 0.0 {
                max
            } else {
                1.0
            }
        }
        VmaxMode::Theoretical => VC_THEORETICAL_MAX,
    };
    for v in &mut raw {
        *v /= vmax;
    }
    HeuristicField {
        width: w,
        height: h,
        eta: raw,
        vmax,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth;

    #[test]
    fn vc_is_zero_on_flat_image() {
        let img = GrayImage::constant(5, 5, 200);
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(vc(&img, i, j), 0.0);
            }
        }
    }

    #[test]
    fn vc_center_of_ramp_patch() {
        let img = GrayImage::from_vec(3, 3, vec![1, 2, 3, 4, 5, 6, 7, 8, 9]).unwrap();
        assert_eq!(vc(&img, 1, 1), 20.0);
    }

    #[test]
    fn vc_corner_uses_replication() {
        // replication collapses every pair that reaches outside
        let img = GrayImage::from_vec(3, 3, vec![9, 9, 9, 9, 9, 9, 9, 9, 9]).unwrap();
        assert_eq!(vc(&img, 0, 0), 0.0);
    }

    #[test]
    fn flat_image_heuristic_is_zero_with_unit_fallback() {
        let img = GrayImage::constant(6, 6, 31);
        let field = heuristic_field(&img, VmaxMode::Empirical);
        assert_eq!(field.vmax(), 1.0);
        assert!(field.values().iter().all(|&e| e == 0.0));
    }

    #[test]
    fn empirical_mode_tops_out_at_one() {
        let img = synth::gradient(8, 8);
        let field = heuristic_field(&img, VmaxMode::Empirical);
        let top = field.values().iter().cloned().fold(0.0f64, f64::max);
        assert_eq!(top, 1.0);
        assert!(field.values().iter().all(|&e| (0.0..=1.0).contains(&e)));
    }

    #[test]
    fn checkerboard_interior_scores_half_in_theoretical_mode() {
        // 2x2 tiles: axial pairs straddle a tile boundary, diagonal pairs
        // land on the same color
        let img = synth::checkerboard(8, 8, 2);
        let field = heuristic_field(&img, VmaxMode::Theoretical);
        for i in 2..6 {
            for j in 2..6 {
                assert_eq!(field.get(i, j), 0.5, "at ({}, {})", i, j);
            }
        }
    }
}
