//! Pheromone matrix storage.

use std::io;

use crate::error::{Error, Result};

/// Per-pixel pheromone values, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PheromoneField {
    width: usize,
    height: usize,
    tau: Vec<f64>,
}

impl PheromoneField {
    /// Field with every cell at `tau_init`.
    pub fn new(width: usize, height: usize, tau_init: f64) -> Self {
        Self {
            width,
            height,
            tau: vec![tau_init; width * height],
        }
    }

    /// Builds a field from explicit values, mainly for tests and tools.
    pub fn from_vec(width: usize, height: usize, tau: Vec<f64>) -> Result<Self> {
        if tau.len() != width * height {
            return Err(Error::DataLength {
                width,
                height,
                expected: width * height,
                actual: tau.len(),
            });
        }
        Ok(Self { width, height, tau })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        debug_assert!(row < self.height && col < self.width);
        self.tau[row * self.width + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: f64) {
        debug_assert!(row < self.height && col < self.width);
        self.tau[row * self.width + col] = value;
    }

    pub fn values(&self) -> &[f64] {
        &self.tau
    }

    pub fn max_tau(&self) -> f64 {
        self.tau.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Writes the matrix as CSV, one image row per line. Values use the
    /// shortest decimal form that parses back to the same float.
    pub fn write_csv<W: io::Write>(&self, mut out: W) -> io::Result<()> {
        for row in self.tau.chunks(self.width) {
            let mut first = true;
            for v in row {
                if first {
                    first = false;
                } else {
                    write!(out, ",")?;
                }
                write!(out, "{}", v)?;
            }
            writeln!(out)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn new_fills_with_initial_value() {
        let f = PheromoneField::new(3, 2, 1e-4);
        assert_eq!(f.values().len(), 6);
        assert!(f.values().iter().all(|&t| t == 1e-4));
    }

    #[test]
    fn from_vec_checks_length() {
        assert!(PheromoneField::from_vec(2, 2, vec![0.1; 3]).is_err());
    }

    #[test]
    fn csv_round_trips_exact_values() {
        let f = PheromoneField::from_vec(2, 2, vec![1e-4, 0.25, 0.000199999, 1.0]).unwrap();
        let mut buf = Vec::new();
        f.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut parsed = Vec::new();
        for line in text.lines() {
            for cell in line.split(',') {
                parsed.push(cell.parse::<f64>().unwrap());
            }
        }
        assert_eq!(parsed, f.values());
        assert_eq!(text.lines().count(), 2);
    }
}
