//! Grayscale image container, PGM reading/writing, integer downscaling and
//! the output-to-source coordinate mapping used by every upscaler.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};

/// 8-bit grayscale image, row-major storage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    data: Vec<u8>,
}

impl GrayImage {
    /// Builds an image from a row-major pixel buffer.
    pub fn from_vec(width: usize, height: usize, data: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::BadDimensions(width, height));
        }
        let expected = width
            .checked_mul(height)
            .ok_or(Error::BadDimensions(width, height))?;
        if data.len() != expected {
            return Err(Error::DataLength {
                width,
                height,
                expected,
                actual: data.len(),
            });
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    /// Image filled with a single value.
    pub fn constant(width: usize, height: usize, value: u8) -> Self {
        Self {
            width,
            height,
            data: vec![value; width * height],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Row-major pixel data.
    pub fn pixels(&self) -> &[u8] {
        &self.data
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        debug_assert!(row < self.height && col < self.width);
        self.data[row * self.width + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: u8) {
        debug_assert!(row < self.height && col < self.width);
        self.data[row * self.width + col] = value;
    }

    /// Pixel lookup with edge replication for out-of-range indices.
    pub fn get_clamped(&self, row: isize, col: isize) -> u8 {
        let r = row.clamp(0, self.height as isize - 1) as usize;
        let c = col.clamp(0, self.width as isize - 1) as usize;
        self.data[r * self.width + c]
    }
}

/// Decodes a PGM image (binary `P5` or plain `P2`) from raw bytes.
///
/// Header comments introduced by `#` are skipped. Only maxval 255 is
/// accepted.
pub fn decode_pgm(bytes: &[u8]) -> Result<GrayImage> {
    let mut cursor = 0usize;

    let magic = next_token(bytes, &mut cursor)
        .ok_or_else(|| Error::PgmFormat("missing magic number".into()))?;
    let binary = match magic.as_slice() {
        b"P5" => true,
        b"P2" => false,
        other => {
            return Err(Error::PgmFormat(format!(
                "unsupported magic {:?}",
                String::from_utf8_lossy(other)
            )))
        }
    };

    let width = parse_header_number(bytes, &mut cursor, "width")?;
    let height = parse_header_number(bytes, &mut cursor, "height")?;
    let maxval = parse_header_number(bytes, &mut cursor, "maxval")?;
    if maxval != 255 {
        return Err(Error::UnsupportedMaxval(maxval as u32));
    }
    if width == 0 || height == 0 {
        return Err(Error::BadDimensions(width, height));
    }
    let npixels = width
        .checked_mul(height)
        .ok_or(Error::BadDimensions(width, height))?;

    let data = if binary {
        // Exactly one whitespace byte separates the header from the payload.
        if cursor >= bytes.len() || !bytes[cursor].is_ascii_whitespace() {
            return Err(Error::PgmFormat("missing separator after maxval".into()));
        }
        cursor += 1;
        let payload = &bytes[cursor..];
        if payload.len() < npixels {
            return Err(Error::PgmFormat(format!(
                "truncated pixel data: expected {} bytes, found {}",
                npixels,
                payload.len()
            )));
        }
        payload[..npixels].to_vec()
    } else {
        let mut data = Vec::with_capacity(npixels);
        while data.len() < npixels {
            let sample = parse_header_number(bytes, &mut cursor, "sample")?;
            if sample > 255 {
                return Err(Error::PgmFormat(format!(
                    "sample {} exceeds maxval 255",
                    sample
                )));
            }
            data.push(sample as u8);
        }
        data
    };

    GrayImage::from_vec(width, height, data)
}

/// Encodes an image as binary PGM (`P5`, maxval 255).
pub fn encode_pgm(img: &GrayImage) -> Vec<u8> {
    let header = format!("P5\n{} {}\n255\n", img.width(), img.height());
    let mut out = Vec::with_capacity(header.len() + img.pixels().len());
    out.extend_from_slice(header.as_bytes());
    out.extend_from_slice(img.pixels());
    out
}

/// Reads a PGM file.
pub fn load_pgm<P: AsRef<Path>>(path: P) -> Result<GrayImage> {
    let bytes = fs::read(path)?;
    decode_pgm(&bytes)
}

/// Writes an image as a binary PGM file.
pub fn save_pgm<P: AsRef<Path>>(img: &GrayImage, path: P) -> Result<()> {
    let mut file = fs::File::create(path)?;
    file.write_all(&encode_pgm(img))?;
    Ok(())
}

/// Returns the next whitespace-delimited token, skipping `#` comments.
fn next_token(bytes: &[u8], cursor: &mut usize) -> Option<Vec<u8>> {
    loop {
        while *cursor < bytes.len() && bytes[*cursor].is_ascii_whitespace() {
            *cursor += 1;
        }
        if *cursor < bytes.len() && bytes[*cursor] == b'#' {
            while *cursor < bytes.len() && bytes[*cursor] != b'\n' {
                *cursor += 1;
            }
            continue;
        }
        break;
    }
    if *cursor >= bytes.len() {
        return None;
    }
    let start = *cursor;
    while *cursor < bytes.len()
        && !bytes[*cursor].is_ascii_whitespace()
        && bytes[*cursor] != b'#'
    {
        *cursor += 1;
    }
    Some(bytes[start..*cursor].to_vec())
}

fn parse_header_number(bytes: &[u8], cursor: &mut usize, what: &str) -> Result<usize> {
    let token = next_token(bytes, cursor)
        .ok_or_else(|| Error::PgmFormat(format!("missing {}", what)))?;
    std::str::from_utf8(&token)
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .ok_or_else(|| {
            Error::PgmFormat(format!(
                "invalid {}: {:?}",
                what,
                String::from_utf8_lossy(&token)
            ))
        })
}

/// How output coordinates are mapped back onto the source grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CoordConvention {
    /// Pixel centers sit at half-integer positions: `x = (X + 0.5)/s - 0.5`.
    #[default]
    HalfPixel,
    /// First and last samples of both grids coincide.
    AlignCorners,
}

impl CoordConvention {
    pub fn name(&self) -> &'static str {
        match self {
            CoordConvention::HalfPixel => "half_pixel",
            CoordConvention::AlignCorners => "align_corners",
        }
    }
}

impl fmt::Display for CoordConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for CoordConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "half_pixel" => Ok(CoordConvention::HalfPixel),
            "align_corners" => Ok(CoordConvention::AlignCorners),
            other => Err(Error::InvalidParams(format!(
                "unknown coordinate convention {:?}",
                other
            ))),
        }
    }
}

/// Real-valued source location of one output pixel plus the base corner of
/// its 2x2 interpolation group.
///
/// `x`/`u`/`dx` follow the row axis, `y`/`v`/`dy` the column axis. `dx` and
/// `dy` normally lie in `[0, 1)`; they reach exactly 1.0 when the mapped
/// coordinate is clamped to the last row or column and the base index is
/// pulled back so the group stays in bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SourceCoord {
    pub x: f64,
    pub y: f64,
    pub u: usize,
    pub v: usize,
    pub dx: f64,
    pub dy: f64,
}

/// Maps output pixel `(out_row, out_col)` at integer `scale` back to source
/// coordinates over a `src_height` x `src_width` image.
pub fn map_output_coord(
    out_row: usize,
    out_col: usize,
    scale: u32,
    src_height: usize,
    src_width: usize,
    convention: CoordConvention,
) -> Result<SourceCoord> {
    if scale < 2 {
        return Err(Error::InvalidScale(scale));
    }
    if src_height < 2 || src_width < 2 {
        return Err(Error::ImageTooSmall {
            width: src_width,
            height: src_height,
            min: 2,
        });
    }
    let (x, u, dx) = map_axis(out_row, scale, src_height, convention);
    let (y, v, dy) = map_axis(out_col, scale, src_width, convention);
    Ok(SourceCoord { x, y, u, v, dx, dy })
}

fn map_axis(out: usize, scale: u32, src_len: usize, convention: CoordConvention) -> (f64, usize, f64) {
    let s = scale as f64;
    let raw = match convention {
        CoordConvention::HalfPixel => (out as f64 + 0.5) / s - 0.5,
        CoordConvention::AlignCorners => {
            let out_len = src_len * scale as usize;
            out as f64 * (src_len - 1) as f64 / (out_len - 1) as f64
        }
    };
    let x = raw.clamp(0.0, (src_len - 1) as f64);
    let u = (x.floor() as usize).min(src_len - 2);
    let dx = x - u as f64;
    (x, u, dx)
}

/// Downscaling strategies for producing benchmark inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DownscaleMode {
    /// Keep every `factor`-th pixel, starting at (0, 0).
    #[default]
    Decimate,
    /// Average each `factor` x `factor` block, rounding half up.
    Box,
}

impl DownscaleMode {
    pub fn name(&self) -> &'static str {
        match self {
            DownscaleMode::Decimate => "decimate",
            DownscaleMode::Box => "box",
        }
    }
}

impl fmt::Display for DownscaleMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for DownscaleMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "decimate" => Ok(DownscaleMode::Decimate),
            "box" => Ok(DownscaleMode::Box),
            other => Err(Error::InvalidParams(format!(
                "unknown downscale mode {:?}",
                other
            ))),
        }
    }
}

/// Shrinks an image by an integer factor that must divide both dimensions.
pub fn downscale(img: &GrayImage, factor: u32, mode: DownscaleMode) -> Result<GrayImage> {
    if factor < 2 {
        return Err(Error::InvalidScale(factor));
    }
    let f = factor as usize;
    if img.width() % f != 0 {
        return Err(Error::NotDivisible {
            dim: img.width(),
            factor,
        });
    }
    if img.height() % f != 0 {
        return Err(Error::NotDivisible {
            dim: img.height(),
            factor,
        });
    }
    let out_w = img.width() / f;
    let out_h = img.height() / f;
    let mut data = Vec::with_capacity(out_w * out_h);
    for i in 0..out_h {
        for j in 0..out_w {
            let value = match mode {
                DownscaleMode::Decimate => img.get(i * f, j * f),
                DownscaleMode::Box => {
                    let mut sum: u64 = 0;
                    for di in 0..f {
                        for dj in 0..f {
                            sum += img.get(i * f + di, j * f + dj) as u64;
                        }
                    }
                    let n = (f * f) as u64;
                    ((2 * sum + n) / (2 * n)) as u8
                }
            };
            data.push(value);
        }
    }
    GrayImage::from_vec(out_w, out_h, data)
}
