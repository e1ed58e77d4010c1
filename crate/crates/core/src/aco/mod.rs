//! Ant colony system that deposits pheromone over an image.
//!
//! A colony of ants walks the pixel grid for a fixed number of iterations,
//! preferring pixels with high local intensity variation. Walks leave
//! pheromone behind; the finished field marks detail-rich regions and feeds
//! the weighting stage of the interpolators.

mod engine;
mod field;
mod heuristic;

pub use engine::{
    admissible_neighbors, construct_pheromone, construct_pheromone_traced, global_update,
    local_update, transition_choose, AntState, ConstructionTrace, DrawStream, VisitedSet,
    NEIGHBOR_OFFSETS,
};
pub use field::PheromoneField;
pub use heuristic::{heuristic_field, vc, HeuristicField, VC_THEORETICAL_MAX};

use crate::error::{Error, Result};

/// Normalization source for the heuristic values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VmaxMode {
    /// Divide by the largest variation found in the image (1 if the image
    /// is flat).
    #[default]
    Empirical,
    /// Divide by the theoretical maximum of 4 * 255.
    Theoretical,
}

impl VmaxMode {
    pub fn name(&self) -> &'static str {
        match self {
            VmaxMode::Empirical => "empirical",
            VmaxMode::Theoretical => "theoretical",
        }
    }
}

impl std::fmt::Display for VmaxMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for VmaxMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "empirical" => Ok(VmaxMode::Empirical),
            "theoretical" => Ok(VmaxMode::Theoretical),
            other => Err(Error::InvalidParams(format!(
                "unknown vmax mode {:?}",
                other
            ))),
        }
    }
}

/// Colony configuration.
///
/// `ants` and `memory_size` may be left at 0 to derive them from the image:
/// the colony size defaults to round(sqrt(w * h)) and each ant's memory to
/// ceil(w * h / ants).
#[derive(Debug, Clone, PartialEq)]
pub struct AcoParams {
    /// Pheromone exponent in the exploration distribution.
    pub alpha: f64,
    /// Heuristic exponent, favors high-variation pixels.
    pub beta: f64,
    /// Initial pheromone on every pixel, also the local evaporation target.
    pub tau_init: f64,
    /// Local evaporation rate applied on each arrival.
    pub phi: f64,
    /// Global evaporation rate applied after each iteration.
    pub rho: f64,
    /// Exploitation threshold of the pseudorandom proportional rule.
    pub q0: f64,
    /// Number of colony iterations.
    pub iterations: u32,
    /// Steps each ant takes per iteration.
    pub steps_per_ant: u32,
    /// Colony size, 0 derives it from the image.
    pub ants: usize,
    /// Capacity of each ant's visited-pixel memory, 0 derives it.
    pub memory_size: usize,
    /// Master seed for every random draw.
    pub seed: u64,
    pub vmax_mode: VmaxMode,
}

impl Default for AcoParams {
    fn default() -> Self {
        Self {
            alpha: 1.0,
            beta: 2.0,
            tau_init: 1e-4,
            phi: 1e-5,
            rho: 0.1,
            q0: 0.7,
            iterations: 4,
            steps_per_ant: 40,
            ants: 0,
            memory_size: 0,
            seed: 0,
            vmax_mode: VmaxMode::Empirical,
        }
    }
}

impl AcoParams {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_iterations(mut self, iterations: u32) -> Self {
        self.iterations = iterations;
        self
    }

    pub fn with_steps_per_ant(mut self, steps: u32) -> Self {
        self.steps_per_ant = steps;
        self
    }

    pub fn with_ants(mut self, ants: usize) -> Self {
        self.ants = ants;
        self
    }

    pub fn with_q0(mut self, q0: f64) -> Self {
        self.q0 = q0;
        self
    }

    pub fn with_vmax_mode(mut self, mode: VmaxMode) -> Self {
        self.vmax_mode = mode;
        self
    }

    /// Checks every field against its documented range.
    pub fn validate(&self) -> Result<()> {
        fn finite(name: &str, v: f64) -> Result<()> {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidParams(format!("{} must be finite", name)))
            }
        }
        finite("alpha", self.alpha)?;
        finite("beta", self.beta)?;
        finite("tau_init", self.tau_init)?;
        finite("phi", self.phi)?;
        finite("rho", self.rho)?;
        finite("q0", self.q0)?;
        if self.alpha < 0.0 {
            return Err(Error::InvalidParams("alpha must be non-negative".into()));
        }
        if self.beta < self.alpha {
            return Err(Error::InvalidParams(
                "beta must be at least alpha".into(),
            ));
        }
        if self.tau_init <= 0.0 {
            return Err(Error::InvalidParams("tau_init must be positive".into()));
        }
        if self.phi <= 0.0 || self.phi >= 1.0 {
            return Err(Error::InvalidParams(
                "phi must lie strictly between 0 and 1".into(),
            ));
        }
        if self.rho <= 0.0 || self.rho >= 1.0 {
            return Err(Error::InvalidParams(
                "rho must lie strictly between 0 and 1".into(),
            ));
        }
        if !(0.0..=1.0).contains(&self.q0) {
            return Err(Error::InvalidParams("q0 must lie in [0, 1]".into()));
        }
        if self.iterations == 0 || self.iterations > 10 {
            return Err(Error::InvalidParams(
                "iterations must lie in [1, 10]".into(),
            ));
        }
        Ok(())
    }
}

/// Colony size for a given image: round(sqrt(w * h)), at least 1.
pub fn default_ant_count(width: usize, height: usize) -> usize {
    let k = ((width as f64 * height as f64).sqrt()).round() as usize;
    k.max(1)
}

/// Ant memory capacity: ceil(w * h / ants).
pub fn default_memory_size(width: usize, height: usize, ants: usize) -> usize {
    let pixels = width * height;
    (pixels + ants - 1) / ants
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        assert!(AcoParams::default().validate().is_ok());
    }

    #[test]
    fn validate_rejects_out_of_range_fields() {
        assert!(AcoParams::default().with_iterations(0).validate().is_err());
        assert!(AcoParams::default().with_iterations(11).validate().is_err());
        assert!(AcoParams {
            tau_init: 0.0,
            ..Default::default()
        }
        .validate()
        .is_err());
        assert!(AcoParams {
            phi: 1.0,
            ..Default::default()
        }
        .validate()
        .is_err());
        assert!(AcoParams {
            rho: 0.0,
            ..Default::default()
        }
        .validate()
        .is_err());
        assert!(AcoParams::default().with_q0(1.5).validate().is_err());
        assert!(AcoParams {
            alpha: 2.0,
            beta: 1.0,
            ..Default::default()
        }
        .validate()
        .is_err());
    }

    #[test]
    fn ant_count_rounds_to_nearest() {
        assert_eq!(default_ant_count(128, 128), 128);
        assert_eq!(default_ant_count(120, 90), 104);
        assert_eq!(default_ant_count(1, 1), 1);
    }

    #[test]
    fn memory_size_is_ceiled_quotient() {
        assert_eq!(default_memory_size(128, 128, 128), 128);
        assert_eq!(default_memory_size(10, 10, 3), 34);
        assert_eq!(default_memory_size(10, 10, 1), 100);
    }
}
