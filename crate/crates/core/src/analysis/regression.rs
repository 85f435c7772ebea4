use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Ordinary least squares with an intercept.
#[derive(Clone, Debug)]
pub struct Fit {
    /// Intercept first, then one slope per predictor.
    pub coefficients: Vec<f64>,
    pub r_squared: f64,
}

/// Regress `y` on the predictor columns (each the same length as `y`).
pub fn least_squares(predictors: &[&[f64]], y: &[f64]) -> Result<Fit> {
    let n = y.len();
    for p in predictors {
        if p.len() != n {
            return Err(Error::LengthMismatch(n, p.len()));
        }
    }
    if n < predictors.len() + 2 {
        return Err(Error::Degenerate(format!("{n} observations for {} predictors", predictors.len())));
    }
    if y.iter().chain(predictors.iter().flat_map(|p| p.iter())).any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("regression input"));
    }
    let mean = y.iter().sum::<f64>() / n as f64;
    let ss_tot: f64 = y.iter().map(|v| (v - mean).powi(2)).sum();
    if ss_tot == 0.0 {
        return Err(Error::Degenerate("response has zero variance".into()));
    }
    let x = DMatrix::from_fn(n, predictors.len() + 1, |i, j| if j == 0 { 1.0 } else { predictors[j - 1][i] });
    let yv = DVector::from_column_slice(y);
    let beta = x
        .clone()
        .svd(true, true)
        .solve(&yv, 1e-12)
        .map_err(|e| Error::Degenerate(e.to_string()))?;
    let resid = &yv - &x * &beta;
    let ss_res = resid.norm_squared();
    Ok(Fit {
        coefficients: beta.iter().copied().collect(),
        r_squared: 1.0 - ss_res / ss_tot,
    })
}

/// Multiple R² of `y` on the predictors.
pub fn multiple_r_squared(predictors: &[&[f64]], y: &[f64]) -> Result<f64> {
    least_squares(predictors, y).map(|f| f.r_squared)
}
