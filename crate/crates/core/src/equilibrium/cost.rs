use serde::Serialize;

use crate::error::{Error, Result};

/// Server sampling cost `c(beta)`, non-decreasing on `(0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CostFunction {
    /// `c0 * beta^2`
    Quadratic { c0: f64 },
    /// `c0 * beta`
    Linear { c0: f64 },
    /// Piecewise-linear through `(beta, cost)` knots sorted by `beta`,
    /// flat outside the knot range.
    Table { points: Vec<(f64, f64)> },
}

impl CostFunction {
    pub fn quadratic(c0: f64) -> Result<Self> {
        Self::Quadratic { c0 }.validated()
    }

    pub fn linear(c0: f64) -> Result<Self> {
        Self::Linear { c0 }.validated()
    }

    pub fn table(points: Vec<(f64, f64)>) -> Result<Self> {
        Self::Table { points }.validated()
    }

    pub fn zero() -> Self {
        Self::Linear { c0: 0.0 }
    }

    /// Checks coefficients and knots, then samples `(0, 1]` to confirm `c`
    /// never decreases.
    pub fn validated(self) -> Result<Self> {
        match &self {
            Self::Quadratic { c0 } | Self::Linear { c0 } => {
                if !(c0.is_finite() && *c0 >= 0.0) {
                    return Err(Error::InvalidCost(format!(
                        "coefficient {c0} must be finite and >= 0"
                    )));
                }
            }
            Self::Table { points } => {
                if points.is_empty() {
                    return Err(Error::InvalidCost("table needs at least one point".into()));
                }
                if points.iter().any(|(b, c)| !b.is_finite() || !c.is_finite()) {
                    return Err(Error::InvalidCost("table entries must be finite".into()));
                }
                if points.windows(2).any(|w| w[1].0 <= w[0].0) {
                    return Err(Error::InvalidCost(
                        "table rates must be strictly increasing".into(),
                    ));
                }
            }
        }
        let samples: Vec<f64> = (1..=1000).map(|i| self.eval(i as f64 / 1000.0)).collect();
        if samples.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::InvalidCost(
                "cost must be non-decreasing in beta".into(),
            ));
        }
        Ok(self)
    }

    pub fn eval(&self, beta: f64) -> f64 {
        match self {
            Self::Quadratic { c0 } => c0 * beta * beta,
            Self::Linear { c0 } => c0 * beta,
            Self::Table { points } => {
                let first = points[0];
                let last = points[points.len() - 1];
                if beta <= first.0 {
                    return first.1;
                }
                if beta >= last.0 {
                    return last.1;
                }
                let i = points.partition_point(|&(b, _)| b <= beta);
                let (b0, c0) = points[i - 1];
                let (b1, c1) = points[i];
                c0 + (c1 - c0) * (beta - b0) / (b1 - b0)
            }
        }
    }
}

/// Server utility `F_S - c(beta)`.
pub fn server_utility(f_s: f64, beta: f64, cost: &CostFunction) -> f64 {
    f_s - cost.eval(beta)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn utility_examples() {
        let quad = CostFunction::quadratic(80.0).unwrap();
        let u = server_utility(0.2, 0.5625, &quad);
        assert!((u - (-25.1125)).abs() < 1e-12);
        assert_eq!(server_utility(1.0, 0.37, &CostFunction::zero()), 1.0);
        assert_eq!(server_utility(0.0, 1.0, &quad), -80.0);
    }

    #[test]
    fn table_interpolates() {
        let t = CostFunction::table(vec![(0.0, 0.0), (0.5, 1.0), (1.0, 3.0)]).unwrap();
        assert_eq!(t.eval(0.25), 0.5);
        assert_eq!(t.eval(0.75), 2.0);
        assert_eq!(t.eval(1.0), 3.0);
        assert_eq!(t.eval(0.5), 1.0);
    }

    #[test]
    fn rejects_decreasing_or_bad() {
        assert!(CostFunction::table(vec![(0.0, 1.0), (1.0, 0.5)]).is_err());
        assert!(CostFunction::table(vec![(0.5, 1.0), (0.5, 2.0)]).is_err());
        assert!(CostFunction::table(vec![]).is_err());
        assert!(CostFunction::quadratic(-1.0).is_err());
        assert!(CostFunction::linear(f64::NAN).is_err());
    }
}
