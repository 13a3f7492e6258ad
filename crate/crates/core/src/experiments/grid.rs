use serde::{Deserialize, Serialize};

use crate::error::{finite, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    Linear,
    Log,
}

/// A sampled axis, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub scale: Scale,
}

impl Axis {
    pub fn new(min: f64, max: f64, count: usize, scale: Scale) -> Result<Self> {
        let axis = Self {
            min,
            max,
            count,
            scale,
        };
        axis.check()?;
        Ok(axis)
    }

    pub fn linear(min: f64, max: f64, count: usize) -> Result<Self> {
        Self::new(min, max, count, Scale::Linear)
    }

    pub fn check(&self) -> Result<()> {
        finite("axis min", self.min)?;
        finite("axis max", self.max)?;
        if self.count < 2 {
            return Err(Error::InvalidParameter {
                name: "axis count",
                value: self.count as f64,
                reason: "needs at least 2 points",
            });
        }
        if self.min >= self.max {
            return Err(Error::InvalidParameter {
                name: "axis min",
                value: self.min,
                reason: "must be below axis max",
            });
        }
        if self.scale == Scale::Log && self.min <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "axis min",
                value: self.min,
                reason: "log axes need a positive minimum",
            });
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        let n = self.count - 1;
        (0..self.count)
            .map(|i| {
                if i == 0 {
                    return self.min;
                }
                if i == n {
                    return self.max;
                }
                let t = i as f64 / n as f64;
                match self.scale {
                    Scale::Linear => self.min + (self.max - self.min) * t,
                    Scale::Log => (self.min.ln() + (self.max.ln() - self.min.ln()) * t).exp(),
                }
            })
            .collect()
    }
}
