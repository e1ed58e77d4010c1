//! Global weighting of interpolation sites from boosted pheromone values.
//!
//! Each output pixel gathers the pheromone at its four surrounding source
//! pixels, boosts them through `exp`, and reduces the group to a single
//! weight. Groups whose values are all equal or all distinct take the mean;
//! any partial tie takes the maximum.

use crate::error::{Error, Result};

/// Default tolerance when grouping boosted values for equality.
pub const DEFAULT_EPS: f64 = 1e-12;

/// Exponential boost applied to a raw pheromone value.
pub fn boost(tau: f64) -> f64 {
    tau.exp()
}

/// Tie structure of a boosted four-value group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightPattern {
    AllEqual,
    ThreeOne,
    TwoTwo,
    TwoOneOne,
    AllDistinct,
}

/// The four boosted pheromone values around one interpolation site.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PheromoneGroup(pub [f64; 4]);

impl PheromoneGroup {
    /// Gathers a group from raw pheromone values, applying the boost.
    pub fn from_taus(taus: [f64; 4]) -> Self {
        Self(taus.map(boost))
    }

    /// Partitions the group into equivalence classes and names the tie
    /// structure. Two values belong to the same class when they are chained
    /// by gaps of at most `eps` in sorted order.
    pub fn classify(&self, eps: f64) -> WeightPattern {
        let mut sorted = self.0;
        sorted.sort_by(|a, b| a.partial_cmp(b).expect("pheromone values are finite"));
        let mut class_sizes = [0usize; 4];
        let mut nclasses = 0;
        let mut size = 1;
        for w in sorted.windows(2) {
            if w[1] - w[0] <= eps {
                size += 1;
            } else {
                class_sizes[nclasses] = size;
                nclasses += 1;
                size = 1;
            }
        }
        class_sizes[nclasses] = size;
        nclasses += 1;
        let mut sizes = class_sizes[..nclasses].to_vec();
        sizes.sort_unstable();
        match sizes.as_slice() {
            [4] => WeightPattern::AllEqual,
            [1, 3] => WeightPattern::ThreeOne,
            [2, 2] => WeightPattern::TwoTwo,
            [1, 1, 2] => WeightPattern::TwoOneOne,
            _ => WeightPattern::AllDistinct,
        }
    }

    /// Reduces the group to the global weight for its interpolation site.
    pub fn global_weight(&self, eps: f64) -> f64 {
        match self.classify(eps) {
            WeightPattern::AllEqual | WeightPattern::AllDistinct => self.mean(),
            WeightPattern::ThreeOne | WeightPattern::TwoTwo | WeightPattern::TwoOneOne => {
                self.max()
            }
        }
    }

    /// Summed in ascending order so the result depends only on the multiset,
    /// not on corner enumeration order.
    pub fn mean(&self) -> f64 {
        let mut sorted = self.0;
        sorted.sort_by(|a, b| a.partial_cmp(b).expect("pheromone values are finite"));
        sorted.iter().sum::<f64>() / 4.0
    }

    pub fn max(&self) -> f64 {
        self.0.iter().fold(f64::NEG_INFINITY, |m, &v| m.max(v))
    }

    pub fn min(&self) -> f64 {
        self.0.iter().fold(f64::INFINITY, |m, &v| m.min(v))
    }

    /// Rejects groups containing non-finite or non-positive values.
    pub fn validate(&self) -> Result<()> {
        if self.0.iter().any(|v| !v.is_finite() || *v <= 0.0) {
            return Err(Error::InvalidParams(format!(
                "boosted pheromone group must be positive and finite, got {:?}",
                self.0
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boost_is_exp() {
        assert_eq!(boost(0.0), 1.0);
        assert!((boost(1e-4) - 1.000100005).abs() < 1e-9);
    }

    #[test]
    fn boost_is_monotone() {
        let mut last = boost(0.0);
        for tau in [1e-4, 1e-2, 0.5, 1.0, 2.0] {
            let b = boost(tau);
            assert!(b > last);
            last = b;
        }
    }

    #[test]
    fn classify_all_patterns() {
        let eps = DEFAULT_EPS;
        assert_eq!(
            PheromoneGroup([1.5, 1.5, 1.5, 1.5]).classify(eps),
            WeightPattern::AllEqual
        );
        assert_eq!(
            PheromoneGroup([1.0, 1.0, 1.0, 1.2]).classify(eps),
            WeightPattern::ThreeOne
        );
        assert_eq!(
            PheromoneGroup([1.0, 3.0, 1.0, 3.0]).classify(eps),
            WeightPattern::TwoTwo
        );
        assert_eq!(
            PheromoneGroup([2.0, 1.0, 3.0, 1.0]).classify(eps),
            WeightPattern::TwoOneOne
        );
        assert_eq!(
            PheromoneGroup([1.0, 1.1, 1.2, 1.3]).classify(eps),
            WeightPattern::AllDistinct
        );
    }

    #[test]
    fn classify_chains_values_within_eps() {
        // gaps of 1e-13 chain into one class of three
        let g = PheromoneGroup([1.0, 1.0 + 1e-13, 1.0 + 2e-13, 2.0]);
        assert_eq!(g.classify(1e-12), WeightPattern::ThreeOne);
    }

    #[test]
    fn global_weight_examples() {
        let eps = DEFAULT_EPS;
        assert_eq!(PheromoneGroup([2.0, 2.0, 2.0, 2.0]).global_weight(eps), 2.0);
        assert_eq!(PheromoneGroup([1.0, 1.0, 1.0, 3.0]).global_weight(eps), 3.0);
        assert!(
            (PheromoneGroup([1.0, 1.1, 1.2, 1.3]).global_weight(eps) - 1.15).abs() < 1e-12
        );
        assert_eq!(PheromoneGroup([1.0, 1.0, 3.0, 3.0]).global_weight(eps), 3.0);
    }

    #[test]
    fn global_weight_between_min_and_max() {
        let g = PheromoneGroup([1.7, 0.3, 2.9, 2.9]);
        let w = g.global_weight(DEFAULT_EPS);
        assert!(g.min() <= w && w <= g.max());
    }

    #[test]
    fn validate_rejects_bad_groups() {
        assert!(PheromoneGroup([1.0, 1.0, 1.0, 0.0]).validate().is_err());
        assert!(PheromoneGroup([1.0, f64::NAN, 1.0, 1.0]).validate().is_err());
        assert!(PheromoneGroup([1.0, 2.0, 3.0, 4.0]).validate().is_ok());
    }

    proptest::proptest! {
        #[test]
        fn weight_stays_between_extremes(vals in proptest::array::uniform4(1e-6..1e3f64)) {
            let g = PheromoneGroup(vals);
            let w = g.global_weight(DEFAULT_EPS);
            proptest::prop_assert!(g.min() <= w && w <= g.max());
        }

        #[test]
        fn classification_ignores_order(
            vals in proptest::array::uniform4(1e-6..1e3f64),
            swap_a in 0usize..4,
            swap_b in 0usize..4,
        ) {
            let mut shuffled = vals;
            shuffled.swap(swap_a, swap_b);
            let a = PheromoneGroup(vals);
            let b = PheromoneGroup(shuffled);
            proptest::prop_assert_eq!(a.classify(DEFAULT_EPS), b.classify(DEFAULT_EPS));
            proptest::prop_assert_eq!(a.global_weight(DEFAULT_EPS), b.global_weight(DEFAULT_EPS));
        }
    }
}
