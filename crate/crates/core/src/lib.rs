//! Ant-colony guided grayscale image upscaling.
//!
//! A colony of ants walks the source image, depositing pheromone where
//! local intensity variation is high. The resulting field steers two
//! bilinear-based upscalers: a per-corner weighted blend (`obaca`) and a
//! site-wide weighting of the plain bilinear result (`aaca`). Classic
//! nearest, bilinear and bicubic resamplers are included as baselines,
//! along with PGM I/O, downscaling and MSE/PSNR scoring.
//!
//! ```
//! use aaca_core::{aaca, construct_pheromone, AcoParams};
//! use aaca_core::synth;
//!
//! let img = synth::gradient(16, 16);
//! let params = AcoParams::default().with_seed(42);
//! let field = construct_pheromone(&img, &params).unwrap();
//! let up = aaca(&img, &field, 2).unwrap();
//! assert_eq!(up.width(), 32);
//! ```

pub mod aco;
pub mod error;
pub mod image;
pub mod interp;
pub mod metrics;
pub mod synth;
pub mod weighting;

pub use aco::{
    construct_pheromone, construct_pheromone_traced, default_ant_count, default_memory_size,
    heuristic_field, AcoParams, ConstructionTrace, HeuristicField, PheromoneField, VmaxMode,
};
pub use error::{Error, Result};
pub use image::{
    decode_pgm, downscale, encode_pgm, load_pgm, map_output_coord, save_pgm, CoordConvention,
    DownscaleMode, GrayImage, SourceCoord,
};
pub use interp::{
    aaca, bicubic, bilinear, bilinear_value, bilinear_weights, interpolate, nearest, obaca,
    InterpolationRequest, Method,
};
pub use metrics::{mse, psnr, psnr_from_mse, quality, QualityScore};
pub use weighting::{boost, PheromoneGroup, WeightPattern, DEFAULT_EPS};
