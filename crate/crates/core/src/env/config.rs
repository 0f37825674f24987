use thiserror::Error;

use crate::scalar::Scalar;
use crate::virtue::{EType, LearnConfig};

/// A rejected configuration value, reported with the offending key.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{key}: {reason}")]
pub struct ConfigError {
    pub key: String,
    pub reason: String,
}

impl ConfigError {
    pub fn new(key: impl Into<String>, reason: impl Into<String>) -> Self {
        Self { key: key.into(), reason: reason.into() }
    }
}

/// Environment parameters plus the switches that select an experimental
/// condition. Defaults are the standard experiment values.
#[derive(Debug, Clone, PartialEq)]
pub struct WorldConfig<T: Scalar = f64> {
    pub starting_reserve: T,
    pub maximum_reserve: T,
    pub food_value: T,
    /// Food relocates on every cycle whose 1-based number is a multiple of this.
    pub food_update_frequency: u32,
    pub falling_chance: T,
    pub mutation_chance: T,
    pub begging_threshold: T,
    pub learn: LearnConfig<T>,
    pub population: usize,
    pub etype: EType,
    pub learning_enabled: bool,
    pub exemplars_enabled: bool,
    /// Replace the generosity factor of the beg factor with `1 - (g + 1) / 2`.
    pub bf_use_selfishness: bool,
}

impl<T: Scalar> Default for WorldConfig<T> {
    fn default() -> Self {
        Self {
            starting_reserve: T::lit(5.0),
            maximum_reserve: T::lit(10.0),
            food_value: T::lit(1.25),
            food_update_frequency: 4,
            falling_chance: T::lit(0.1),
            mutation_chance: T::lit(0.05),
            begging_threshold: T::lit(0.2),
            learn: LearnConfig::default(),
            population: 100,
            etype: EType::None,
            learning_enabled: false,
            exemplars_enabled: false,
            bf_use_selfishness: false,
        }
    }
}

impl<T: Scalar> WorldConfig<T> {
    pub fn validate(&self) -> Result<(), ConfigError> {
        let finite = |key: &str, v: T| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(ConfigError::new(key, "value must be finite"))
            }
        };
        let probability = |key: &str, p: T| {
            finite(key, p)?;
            if p < T::zero() || p > T::one() {
                Err(ConfigError::new(key, "probability out of range [0, 1]"))
            } else {
                Ok(())
            }
        };

        finite("starting_reserve", self.starting_reserve)?;
        finite("maximum_reserve", self.maximum_reserve)?;
        finite("food_value", self.food_value)?;
        finite("begging_threshold", self.begging_threshold)?;
        finite("learning_rate", self.learn.learning_rate)?;
        probability("falling_chance", self.falling_chance)?;
        probability("mutation_chance", self.mutation_chance)?;

        if self.maximum_reserve <= T::zero() {
            return Err(ConfigError::new("maximum_reserve", "must be positive"));
        }
        if self.starting_reserve < T::zero() || self.starting_reserve > self.maximum_reserve {
            return Err(ConfigError::new("starting_reserve", "must lie in [0, maximum_reserve]"));
        }
        if self.food_value < T::zero() {
            return Err(ConfigError::new("food_value", "must be non-negative"));
        }
        if self.food_update_frequency < 1 {
            return Err(ConfigError::new("food_update_frequency", "must be at least 1"));
        }
        if self.learn.learning_rate <= T::zero() {
            return Err(ConfigError::new("learning_rate", "must be positive"));
        }
        if self.population < 2 {
            return Err(ConfigError::new("population", "must be at least 2"));
        }
        if self.etype == EType::None && self.learning_enabled {
            return Err(ConfigError::new("learning_enabled", "learning requires an e-type"));
        }
        if self.etype == EType::None && self.exemplars_enabled {
            return Err(ConfigError::new("exemplars_enabled", "exemplars require an e-type"));
        }
        Ok(())
    }
}
