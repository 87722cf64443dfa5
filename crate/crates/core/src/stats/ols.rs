use std::fmt;

use serde::{Deserialize, Serialize};

use super::{two_sided_t, StatsError};

/// Regressor transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelForm {
    /// `y = a x + b`
    Linear,
    /// `y = a ln(x) + b`
    LogLinear,
    /// `y = a log10(x) + b`
    LogLinear10,
}

impl ModelForm {
    fn regressor(self, x: f64) -> f64 {
        match self {
            ModelForm::Linear => x,
            ModelForm::LogLinear => x.ln(),
            ModelForm::LogLinear10 => x.log10(),
        }
    }

    pub fn is_log(self) -> bool {
        !matches!(self, ModelForm::Linear)
    }

    pub fn name(self) -> &'static str {
        match self {
            ModelForm::Linear => "linear",
            ModelForm::LogLinear => "log-linear",
            ModelForm::LogLinear10 => "log10-linear",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegressionResult {
    pub slope: f64,
    pub intercept: f64,
    pub se_slope: f64,
    pub se_intercept: f64,
    pub p_slope: f64,
    pub p_intercept: f64,
    pub r2: f64,
    pub adj_r2: f64,
    pub n: usize,
    pub model_form: ModelForm,
}

impl RegressionResult {
    /// Model string such as `y = 0.6479x - 0.8269` or `y = 1.0753log(x) + 0.5643`.
    pub fn model_string(&self) -> String {
        let x = if self.model_form.is_log() { "log(x)" } else { "x" };
        let sign = if self.intercept < 0.0 { '-' } else { '+' };
        format!(
            "y = {:.4}{} {} {:.4}",
            self.slope,
            x,
            sign,
            self.intercept.abs()
        )
    }

    pub fn predict(&self, x: f64) -> f64 {
        self.slope * self.model_form.regressor(x) + self.intercept
    }
}

impl fmt::Display for RegressionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (N = {}, adj R² = {:.3})",
            self.model_string(),
            self.n,
            self.adj_r2
        )
    }
}

/// Significance marks used in the rendered tables: `***` below 0.05,
/// `**` in [0.05, 0.1), nothing otherwise.
pub fn significance_stars(p: f64) -> &'static str {
    if p < 0.05 {
        "***"
    } else if p < 0.1 {
        "**"
    } else {
        ""
    }
}

fn coefficient_p(coef: f64, se: f64, df: f64) -> f64 {
    if se == 0.0 {
        if coef == 0.0 {
            1.0
        } else {
            0.0
        }
    } else {
        two_sided_t(coef / se, df)
    }
}

/// Ordinary least squares of `y` on `(1, x)` or `(1, log x)`.
pub fn ols_fit(xs: &[f64], ys: &[f64], form: ModelForm) -> Result<RegressionResult, StatsError> {
    if xs.len() != ys.len() {
        return Err(StatsError::DegenerateInput(format!(
            "length mismatch ({} vs {})",
            xs.len(),
            ys.len()
        )));
    }
    let n = xs.len();
    if n < 3 {
        return Err(StatsError::DegenerateInput(format!(
            "need at least 3 points, got {}",
            n
        )));
    }
    if form.is_log() && xs.iter().any(|&x| x <= 0.0) {
        return Err(StatsError::NonPositiveX);
    }
    let z: Vec<f64> = xs.iter().map(|&x| form.regressor(x)).collect();
    if z.iter().chain(ys).any(|v| !v.is_finite()) {
        return Err(StatsError::DegenerateInput("non-finite value".into()));
    }
    let nf = n as f64;
    let mz = z.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let mut szz = 0.0;
    let mut szy = 0.0;
    let mut syy = 0.0;
    for (zi, yi) in z.iter().zip(ys) {
        szz += (zi - mz) * (zi - mz);
        szy += (zi - mz) * (yi - my);
        syy += (yi - my) * (yi - my);
    }
    if szz == 0.0 {
        return Err(StatsError::DegenerateInput("regressor is constant".into()));
    }
    let slope = szy / szz;
    let intercept = my - slope * mz;
    let sse: f64 = z
        .iter()
        .zip(ys)
        .map(|(zi, yi)| {
            let r = yi - (slope * zi + intercept);
            r * r
        })
        .sum();
    let df = nf - 2.0;
    let sigma2 = sse / df;
    let se_slope = (sigma2 / szz).sqrt();
    let se_intercept = (sigma2 * (1.0 / nf + mz * mz / szz)).sqrt();

    let r2 = if syy == 0.0 { 1.0 } else { 1.0 - sse / syy };
    let adj_r2 = 1.0 - (1.0 - r2) * (nf - 1.0) / df;
    Ok(RegressionResult {
        slope,
        intercept,
        se_slope,
        se_intercept,
        p_slope: coefficient_p(slope, se_slope, df),
        p_intercept: coefficient_p(intercept, se_intercept, df),
        r2,
        adj_r2,
        n,
        model_form: form,
    })
}
