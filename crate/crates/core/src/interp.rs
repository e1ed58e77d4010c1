//! Upscalers: nearest, bilinear, bicubic and the two pheromone-guided
//! methods layered on top of bilinear.

use std::fmt;
use std::str::FromStr;

use crate::aco::PheromoneField;
use crate::error::{Error, Result};
use crate::image::{map_output_coord, CoordConvention, GrayImage, SourceCoord};
use crate::weighting::{boost, PheromoneGroup, DEFAULT_EPS};

/// Available upscaling methods.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Nearest,
    Bilinear,
    Bicubic,
    Obaca,
    Aaca,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Nearest,
        Method::Bilinear,
        Method::Bicubic,
        Method::Obaca,
        Method::Aaca,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Method::Nearest => "nearest",
            Method::Bilinear => "bilinear",
            Method::Bicubic => "bicubic",
            Method::Obaca => "obaca",
            Method::Aaca => "aaca",
        }
    }

    /// Whether the method consumes a pheromone field.
    pub fn needs_pheromone(&self) -> bool {
        matches!(self, Method::Obaca | Method::Aaca)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "nearest" => Ok(Method::Nearest),
            "bilinear" => Ok(Method::Bilinear),
            "bicubic" => Ok(Method::Bicubic),
            "obaca" => Ok(Method::Obaca),
            "aaca" => Ok(Method::Aaca),
            other => Err(Error::InvalidParams(format!("unknown method {:?}", other))),
        }
    }
}

/// Full description of one upscaling run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterpolationRequest {
    pub method: Method,
    pub scale: u32,
    /// Divide the weighted corner sum by the summed weights.
    pub obaca_normalize: bool,
    /// Saturate results into [0, 255]; when off, out-of-range values are
    /// reported as errors instead.
    pub clamp: bool,
    pub convention: CoordConvention,
    /// Equality tolerance used when grouping boosted pheromone values.
    pub eps: f64,
}

impl InterpolationRequest {
    pub fn new(method: Method, scale: u32) -> Self {
        Self {
            method,
            scale,
            obaca_normalize: true,
            clamp: true,
            convention: CoordConvention::default(),
            eps: DEFAULT_EPS,
        }
    }
}

/// Dispatches an upscaling run. Pheromone-guided methods require `pheromone`
/// with the source image's dimensions.
pub fn interpolate(
    img: &GrayImage,
    pheromone: Option<&PheromoneField>,
    req: &InterpolationRequest,
) -> Result<GrayImage> {
    if req.scale < 2 {
        return Err(Error::InvalidScale(req.scale));
    }
    if img.width() < 2 || img.height() < 2 {
        return Err(Error::ImageTooSmall {
            width: img.width(),
            height: img.height(),
            min: 2,
        });
    }
    if !req.eps.is_finite() || req.eps < 0.0 {
        return Err(Error::InvalidParams("eps must be finite and non-negative".into()));
    }
    let pher = if req.method.needs_pheromone() {
        let p = pheromone.ok_or_else(|| {
            Error::InvalidParams(format!("method {} requires a pheromone field", req.method))
        })?;
        if p.width() != img.width() || p.height() != img.height() {
            return Err(Error::DimensionMismatch(
                img.width(),
                img.height(),
                p.width(),
                p.height(),
            ));
        }
        Some(p)
    } else {
        None
    };
    match req.method {
        Method::Nearest => upscale(img, req, |img, c| {
            let r = (c.x.round() as usize).min(img.height() - 1);
            let col = (c.y.round() as usize).min(img.width() - 1);
            img.get(r, col) as f64
        }),
        Method::Bilinear => upscale(img, req, |img, c| bilinear_value(img, c)),
        Method::Bicubic => upscale(img, req, |img, c| bicubic_value(img, c)),
        Method::Obaca => {
            let p = pher.expect("checked above");
            upscale(img, req, |img, c| {
                obaca_value(img, p, c, req.obaca_normalize)
            })
        }
        Method::Aaca => {
            let p = pher.expect("checked above");
            upscale(img, req, |img, c| aaca_value(img, p, c, req.eps))
        }
    }
}

/// Nearest-neighbor upscale.
pub fn nearest(img: &GrayImage, scale: u32) -> Result<GrayImage> {
    interpolate(img, None, &InterpolationRequest::new(Method::Nearest, scale))
}

/// Plain bilinear upscale.
pub fn bilinear(img: &GrayImage, scale: u32) -> Result<GrayImage> {
    interpolate(img, None, &InterpolationRequest::new(Method::Bilinear, scale))
}

/// Bicubic upscale with the standard cubic convolution kernel (a = -0.5)
/// and edge replication.
pub fn bicubic(img: &GrayImage, scale: u32) -> Result<GrayImage> {
    interpolate(img, None, &InterpolationRequest::new(Method::Bicubic, scale))
}

/// Pheromone-weighted corner blend.
pub fn obaca(
    img: &GrayImage,
    pheromone: &PheromoneField,
    scale: u32,
    normalize: bool,
) -> Result<GrayImage> {
    let mut req = InterpolationRequest::new(Method::Obaca, scale);
    req.obaca_normalize = normalize;
    interpolate(img, Some(pheromone), &req)
}

/// Bilinear upscale scaled site-by-site by the global pheromone weight.
pub fn aaca(img: &GrayImage, pheromone: &PheromoneField, scale: u32) -> Result<GrayImage> {
    interpolate(img, Some(pheromone), &InterpolationRequest::new(Method::Aaca, scale))
}

fn upscale<F>(img: &GrayImage, req: &InterpolationRequest, value_at: F) -> Result<GrayImage>
where
    F: Fn(&GrayImage, &SourceCoord) -> f64,
{
    let s = req.scale as usize;
    let (out_h, out_w) = (img.height() * s, img.width() * s);
    let mut data = Vec::with_capacity(out_h * out_w);
    for row in 0..out_h {
        for col in 0..out_w {
            let coord = map_output_coord(
                row,
                col,
                req.scale,
                img.height(),
                img.width(),
                req.convention,
            )?;
            data.push(finalize(value_at(img, &coord), row, col, req.clamp)?);
        }
    }
    GrayImage::from_vec(out_w, out_h, data)
}

/// Rounds half up and saturates, or rejects out-of-range values in strict
/// mode.
fn finalize(value: f64, row: usize, col: usize, clamp: bool) -> Result<u8> {
    let rounded = value.round();
    if clamp {
        Ok(rounded.clamp(0.0, 255.0) as u8)
    } else if (0.0..=255.0).contains(&rounded) {
        Ok(rounded as u8)
    } else {
        Err(Error::OutOfRange { row, col, value })
    }
}

/// The four bilinear weights of a source coordinate, paired with the
/// corners (u+1, v+1), (u, v+1), (u+1, v) and (u, v) in that order.
pub fn bilinear_weights(c: &SourceCoord) -> [f64; 4] {
    [
        c.dx * c.dy,
        (1.0 - c.dx) * c.dy,
        c.dx * (1.0 - c.dy),
        (1.0 - c.dx) * (1.0 - c.dy),
    ]
}

/// Unrounded bilinear blend at one source coordinate.
pub fn bilinear_value(img: &GrayImage, c: &SourceCoord) -> f64 {
    let [w1, w2, w3, w4] = bilinear_weights(c);
    w1 * img.get(c.u + 1, c.v + 1) as f64
        + w2 * img.get(c.u, c.v + 1) as f64
        + w3 * img.get(c.u + 1, c.v) as f64
        + w4 * img.get(c.u, c.v) as f64
}

/// Boosted pheromone at the four corners of a site. The value at (u, v)
/// scales the (u, v) bilinear term, the value at (u+1, v) scales the
/// (u, v+1) term, the value at (u, v+1) scales the (u+1, v) term, and the
/// value at (u+1, v+1) scales its own term.
fn corner_boosts(pheromone: &PheromoneField, c: &SourceCoord) -> [f64; 4] {
    [
        boost(pheromone.get(c.u + 1, c.v + 1)),
        boost(pheromone.get(c.u + 1, c.v)),
        boost(pheromone.get(c.u, c.v + 1)),
        boost(pheromone.get(c.u, c.v)),
    ]
}

pub(crate) fn obaca_value(
    img: &GrayImage,
    pheromone: &PheromoneField,
    c: &SourceCoord,
    normalize: bool,
) -> f64 {
    let [w1, w2, w3, w4] = bilinear_weights(c);
    let [mut p1, mut p2, mut p3, mut p4] = corner_boosts(pheromone, c);
    if normalize {
        // the ratio is invariant under scaling the boosts, so divide by the
        // largest one; a uniform field then contributes exact 1.0 factors
        // and the result reduces to plain bilinear bit-for-bit
        let top = p1.max(p2).max(p3).max(p4);
        p1 /= top;
        p2 /= top;
        p3 /= top;
        p4 /= top;
    }
    let numer = p1 * w1 * img.get(c.u + 1, c.v + 1) as f64
        + p2 * w2 * img.get(c.u, c.v + 1) as f64
        + p3 * w3 * img.get(c.u + 1, c.v) as f64
        + p4 * w4 * img.get(c.u, c.v) as f64;
    if normalize {
        numer / (p1 * w1 + p2 * w2 + p3 * w3 + p4 * w4)
    } else {
        numer
    }
}

pub(crate) fn aaca_value(
    img: &GrayImage,
    pheromone: &PheromoneField,
    c: &SourceCoord,
    eps: f64,
) -> f64 {
    let group = PheromoneGroup::from_taus([
        pheromone.get(c.u, c.v),
        pheromone.get(c.u + 1, c.v),
        pheromone.get(c.u, c.v + 1),
        pheromone.get(c.u + 1, c.v + 1),
    ]);
    group.global_weight(eps) * bilinear_value(img, c)
}

fn bicubic_value(img: &GrayImage, c: &SourceCoord) -> f64 {
    let i0 = c.x.floor();
    let j0 = c.y.floor();
    let tr = c.x - i0;
    let tc = c.y - j0;
    let wr = cubic_weights(tr);
    let wc = cubic_weights(tc);
    let mut sum = 0.0;
    for (m, wrow) in wr.iter().enumerate() {
        let row = i0 as isize + m as isize - 1;
        for (n, wcol) in wc.iter().enumerate() {
            let col = j0 as isize + n as isize - 1;
            sum += wrow * wcol * img.get_clamped(row, col) as f64;
        }
    }
    sum
}

/// Kernel weights for the taps at offsets -1, 0, 1, 2 around the base
/// index, for a fractional position t in [0, 1).
fn cubic_weights(t: f64) -> [f64; 4] {
    [
        cubic_kernel(t + 1.0),
        cubic_kernel(t),
        cubic_kernel(1.0 - t),
        cubic_kernel(2.0 - t),
    ]
}

/// Keys cubic convolution kernel with a = -0.5.
fn cubic_kernel(s: f64) -> f64 {
    const A: f64 = -0.5;
    let s = s.abs();
    if s <= 1.0 {
        (A + 2.0) * s * s * s - (A + 3.0) * s * s + 1.0
    } else if s < 2.0 {
        A * s * s * s - 5.0 * A * s * s + 8.0 * A * s - 4.0 * A
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::image::{downscale, DownscaleMode};
    use crate::synth;

    fn coord(u: usize, v: usize, dx: f64, dy: f64) -> SourceCoord {
        SourceCoord {
            x: u as f64 + dx,
            y: v as f64 + dy,
            u,
            v,
            dx,
            dy,
        }
    }

    fn square() -> GrayImage {
        GrayImage::from_vec(2, 2, vec![0, 100, 100, 200]).unwrap()
    }

    #[test]
    fn bilinear_weights_sum_to_one() {
        for (dx, dy) in [(0.0, 0.0), (0.25, 0.0), (0.5, 0.5), (1.0, 0.375)] {
            let w = bilinear_weights(&coord(0, 0, dx, dy));
            assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            assert!(w.iter().all(|&x| (0.0..=1.0).contains(&x)));
        }
    }

    #[test]
    fn bilinear_quarter_step_along_rows() {
        let v = bilinear_value(&square(), &coord(0, 0, 0.25, 0.0));
        assert_eq!(v, 25.0);
    }

    #[test]
    fn bilinear_center_of_square() {
        let v = bilinear_value(&square(), &coord(0, 0, 0.5, 0.5));
        assert_eq!(v, 100.0);
    }

    #[test]
    fn bilinear_identity_at_grid_points() {
        let img = square();
        assert_eq!(bilinear_value(&img, &coord(0, 0, 0.0, 0.0)), 0.0);
        assert_eq!(bilinear_value(&img, &coord(0, 0, 1.0, 1.0)), 200.0);
    }

    #[test]
    fn nearest_upscale_recovers_under_decimation() {
        let img = synth::gradient(8, 8);
        let up = nearest(&img, 4).unwrap();
        assert_eq!(up.width(), 32);
        let back = downscale(&up, 4, DownscaleMode::Decimate).unwrap();
        assert_eq!(back, img);
    }

    #[test]
    fn constant_image_is_reproduced_by_every_plain_method() {
        let img = GrayImage::constant(4, 4, 77);
        for f in [nearest, bilinear, bicubic] {
            let out = f(&img, 4).unwrap();
            assert!(out.pixels().iter().all(|&p| p == 77));
        }
    }

    #[test]
    fn bicubic_matches_direct_evaluation_on_a_ramp() {
        // independent check: non-separated accumulation with expanded
        // polynomial weights
        fn reference(img: &GrayImage, scale: u32) -> GrayImage {
            let s = scale as usize;
            let (h, w) = (img.height(), img.width());
            let mut data = Vec::new();
            for bigr in 0..h * s {
                for bigc in 0..w * s {
                    let x = ((bigr as f64 + 0.5) / s as f64 - 0.5).clamp(0.0, h as f64 - 1.0);
                    let y = ((bigc as f64 + 0.5) / s as f64 - 0.5).clamp(0.0, w as f64 - 1.0);
                    let (i0, j0) = (x.floor(), y.floor());
                    let (t, u) = (x - i0, y - j0);
                    let rw = [
                        ((-t + 2.0) * t - 1.0) * t / 2.0,
                        (((3.0 * t - 5.0) * t) * t + 2.0) / 2.0,
                        ((-3.0 * t + 4.0) * t + 1.0) * t / 2.0,
                        (t - 1.0) * t * t / 2.0,
                    ];
                    let cw = [
                        ((-u + 2.0) * u - 1.0) * u / 2.0,
                        (((3.0 * u - 5.0) * u) * u + 2.0) / 2.0,
                        ((-3.0 * u + 4.0) * u + 1.0) * u / 2.0,
                        (u - 1.0) * u * u / 2.0,
                    ];
                    let mut acc = 0.0;
                    for m in 0..4 {
                        for n in 0..4 {
                            let r = (i0 as isize + m as isize - 1).clamp(0, h as isize - 1);
                            let c = (j0 as isize + n as isize - 1).clamp(0, w as isize - 1);
                            acc += rw[m] * cw[n] * img.get(r as usize, c as usize) as f64;
                        }
                    }
                    data.push(acc.round().clamp(0.0, 255.0) as u8);
                }
            }
            GrayImage::from_vec(w * s, h * s, data).unwrap()
        }

        let img = synth::gradient(8, 8);
        assert_eq!(bicubic(&img, 4).unwrap(), reference(&img, 4));
    }

    #[test]
    fn bicubic_reproduces_ramp_interior_exactly() {
        let img = synth::gradient(8, 8);
        let out = bicubic(&img, 4).unwrap();
        // analytic ramp value at the mapped coordinate, away from borders
        for row in 8..24 {
            for col in 8..24 {
                let x = (row as f64 + 0.5) / 4.0 - 0.5;
                let y = (col as f64 + 0.5) / 4.0 - 0.5;
                let expected = (x + y) * 255.0 / 14.0;
                let got = out.get(row, col) as f64;
                assert!(
                    (got - expected).abs() <= 1.0,
                    "at ({}, {}): {} vs {}",
                    row,
                    col,
                    got,
                    expected
                );
            }
        }
    }

    #[test]
    fn obaca_boosted_corner_pulls_the_blend() {
        let img = square();
        let tau = vec![0.0, 0.0, 0.0, 3.0f64.ln()];
        let pher = PheromoneField::from_vec(2, 2, tau).unwrap();
        let v = obaca_value(&img, &pher, &coord(0, 0, 0.5, 0.5), true);
        assert!((v - 200.0 / 1.5).abs() < 1e-12);
        let img_out = |v: f64| finalize(v, 0, 0, true).unwrap();
        assert_eq!(img_out(v), 133);
    }

    #[test]
    fn obaca_literal_mode_skips_normalization() {
        let img = square();
        let tau = vec![0.0, 0.0, 0.0, 3.0f64.ln()];
        let pher = PheromoneField::from_vec(2, 2, tau).unwrap();
        let v = obaca_value(&img, &pher, &coord(0, 0, 0.5, 0.5), false);
        assert!((v - 200.0).abs() < 1e-12);
    }

    #[test]
    fn obaca_with_uniform_field_and_normalization_is_bilinear() {
        let img = synth::gradient(16, 16);
        let pher = PheromoneField::new(16, 16, 1e-4);
        let a = obaca(&img, &pher, 4, true).unwrap();
        let b = bilinear(&img, 4).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn aaca_three_one_group_takes_the_maximum() {
        let img = square();
        let tau = vec![0.0, 0.0, 0.0, 1.2f64.ln()];
        let pher = PheromoneField::from_vec(2, 2, tau).unwrap();
        let v = aaca_value(&img, &pher, &coord(0, 0, 0.5, 0.5), DEFAULT_EPS);
        assert!((v - 120.0).abs() < 1e-12);
    }

    #[test]
    fn aaca_output_is_weighted_bilinear_at_every_site() {
        let img = synth::radial(12, 12);
        let params = crate::aco::AcoParams::default().with_seed(5);
        let pher = crate::aco::construct_pheromone(&img, &params).unwrap();
        let out = aaca(&img, &pher, 2).unwrap();
        for row in 0..24 {
            for col in 0..24 {
                let c = map_output_coord(row, col, 2, 12, 12, CoordConvention::HalfPixel)
                    .unwrap();
                let group = PheromoneGroup::from_taus([
                    pher.get(c.u, c.v),
                    pher.get(c.u + 1, c.v),
                    pher.get(c.u, c.v + 1),
                    pher.get(c.u + 1, c.v + 1),
                ]);
                let expected = finalize(
                    group.global_weight(DEFAULT_EPS) * bilinear_value(&img, &c),
                    row,
                    col,
                    true,
                )
                .unwrap();
                assert_eq!(out.get(row, col), expected);
            }
        }
    }

    #[test]
    fn pheromone_methods_require_a_field() {
        let img = square();
        let req = InterpolationRequest::new(Method::Aaca, 2);
        assert!(matches!(
            interpolate(&img, None, &req),
            Err(Error::InvalidParams(_))
        ));
    }

    #[test]
    fn pheromone_dimensions_must_match() {
        let img = square();
        let pher = PheromoneField::new(3, 3, 1e-4);
        assert!(matches!(
            aaca(&img, &pher, 2),
            Err(Error::DimensionMismatch(..))
        ));
    }

    #[test]
    fn strict_mode_reports_out_of_range_sites() {
        let img = GrayImage::constant(2, 2, 255);
        let pher = PheromoneField::new(2, 2, 1.0);
        let mut req = InterpolationRequest::new(Method::Aaca, 2);
        req.clamp = false;
        // boost(1.0) = e, so every site lands far above 255
        assert!(matches!(
            interpolate(&img, Some(&pher), &req),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("lanczos".parse::<Method>().is_err());
    }

    #[test]
    fn rejects_scale_below_two() {
        let img = square();
        assert!(matches!(bilinear(&img, 1), Err(Error::InvalidScale(1))));
    }

    proptest::proptest! {
        #[test]
        fn bilinear_weights_are_convex(dx in 0.0..=1.0f64, dy in 0.0..=1.0f64) {
            let w = bilinear_weights(&coord(3, 5, dx, dy));
            proptest::prop_assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            proptest::prop_assert!(w.iter().all(|&x| (0.0..=1.0).contains(&x)));
        }

        #[test]
        fn bilinear_stays_within_corner_range(dx in 0.0..=1.0f64, dy in 0.0..=1.0f64) {
            let img = square();
            let v = bilinear_value(&img, &coord(0, 0, dx, dy));
            proptest::prop_assert!((0.0..=200.0).contains(&v));
        }
    }
}
