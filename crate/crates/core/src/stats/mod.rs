//! Statistical kernels: categorical entropy, Spearman rank correlation and
//! simple least-squares regression.

mod entropy;
mod ols;
mod spearman;

pub use entropy::{entropy, entropy_with_base, Distribution, EntropyBase};
pub use ols::{ols_fit, significance_stars, ModelForm, RegressionResult};
pub use spearman::{mid_ranks, spearman, spearman_exact_p, CorrelationResult};

use statrs::distribution::{ContinuousCDF, StudentsT};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StatsError {
    #[error("distribution has no mass")]
    EmptyDistribution,
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("log-linear model needs x > 0")]
    NonPositiveX,
}

/// Two-sided p-value of a t statistic with `df` degrees of freedom.
pub(crate) fn two_sided_t(t: f64, df: f64) -> f64 {
    if t.is_infinite() {
        return 0.0;
    }
    if t.is_nan() {
        return 1.0;
    }
    let dist = StudentsT::new(0.0, 1.0, df).expect("df > 0");
    (2.0 * dist.sf(t.abs())).clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_p_values() {
        assert_eq!(two_sided_t(0.0, 5.0), 1.0);
        assert_eq!(two_sided_t(f64::INFINITY, 5.0), 0.0);
        // t = 2.228 is the 97.5% quantile at 10 df
        assert!((two_sided_t(2.228138851986, 10.0) - 0.05).abs() < 1e-9);
        assert!((two_sided_t(-2.228138851986, 10.0) - 0.05).abs() < 1e-9);
    }
}
