//! Observed sample container.

use crate::baseline::DataSummary;
use crate::error::{Error, Result};

/// A univariate sample. The raw order is preserved; a sorted copy is cached
/// for the order-statistic-based objectives and statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    values: Vec<f64>,
    sorted: Vec<f64>,
}

impl Dataset {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidData("dataset is empty".into()));
        }
        if let Some(bad) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidData(format!(
                "non-finite value at position {bad}"
            )));
        }
        let mut sorted = values.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
        Ok(Self { values, sorted })
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// Observations in input order.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Observations in ascending order.
    pub fn sorted(&self) -> &[f64] {
        &self.sorted
    }

    pub fn min(&self) -> f64 {
        self.sorted[0]
    }

    pub fn max(&self) -> f64 {
        self.sorted[self.sorted.len() - 1]
    }

    pub fn median(&self) -> f64 {
        let n = self.sorted.len();
        if n % 2 == 1 {
            self.sorted[n / 2]
        } else {
            0.5 * (self.sorted[n / 2 - 1] + self.sorted[n / 2])
        }
    }

    pub fn summary(&self) -> DataSummary<f64> {
        DataSummary {
            min: self.min(),
            median: self.median(),
            max: self.max(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preserves_order_and_sorts() {
        let d = Dataset::new(vec![3.0, 1.0, 2.0]).unwrap();
        assert_eq!(d.values(), &[3.0, 1.0, 2.0]);
        assert_eq!(d.sorted(), &[1.0, 2.0, 3.0]);
        assert_eq!(d.median(), 2.0);
        assert_eq!((d.min(), d.max()), (1.0, 3.0));
    }

    #[test]
    fn even_median() {
        let d = Dataset::new(vec![4.0, 1.0, 3.0, 2.0]).unwrap();
        assert_eq!(d.median(), 2.5);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Dataset::new(vec![]).is_err());
        assert!(Dataset::new(vec![1.0, f64::NAN]).is_err());
        assert!(Dataset::new(vec![1.0, f64::INFINITY]).is_err());
    }
}
