//! Least-squares extraction of expansion coefficients from samples.

use std::collections::BTreeSet;

use nalgebra::{DMatrix, DVector};
use num_rational::Rational64;

use super::expansion::{Endpoint, ExpTerm, Expansion};
use super::mellin::to_f64;
use super::RegError;

/// Condition numbers above this are refused.
pub const MAX_CONDITION: f64 = 1e12;

#[derive(Debug, Clone)]
pub struct FitReport {
    pub expansion: Expansion,
    pub residual_rms: f64,
    pub max_residual: f64,
    /// Condition number of the column-normalized design matrix.
    pub condition: f64,
}

pub fn fit_expansion(
    samples: &[(f64, f64)],
    exponents: &[(Rational64, u32)],
    endpoint: Endpoint,
) -> Result<FitReport, RegError> {
    let distinct: BTreeSet<_> = exponents.iter().collect();
    if distinct.len() != exponents.len() {
        return Err(RegError::Fit("duplicate exponent in the fit basis".into()));
    }
    if exponents.is_empty() || samples.len() < exponents.len() {
        return Err(RegError::Fit(format!(
            "{} samples cannot determine {} coefficients",
            samples.len(),
            exponents.len()
        )));
    }
    if samples.iter().any(|&(x, y)| !(x > 0.0) || !y.is_finite()) {
        return Err(RegError::Fit(
            "samples need positive abscissae and finite values".into(),
        ));
    }
    let basis = |x: f64, (a, k): (Rational64, u32)| x.powf(to_f64(a)) * x.ln().powi(k as i32);
    let (n, p) = (samples.len(), exponents.len());
    let mut a = DMatrix::from_fn(n, p, |i, j| basis(samples[i].0, exponents[j]));
    let b = DVector::from_iterator(n, samples.iter().map(|s| s.1));
    let mut scales = vec![1.0; p];
    for (j, scale) in scales.iter_mut().enumerate() {
        let norm = a.column(j).norm();
        if norm == 0.0 {
            return Err(RegError::Fit(format!("basis column {j} vanishes on the samples")));
        }
        *scale = norm;
        a.column_mut(j).scale_mut(1.0 / norm);
    }
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    let condition = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    if condition > MAX_CONDITION {
        return Err(RegError::IllConditioned { condition });
    }
    let coeffs = svd.solve(&b, 0.0).map_err(|e| RegError::Fit(e.to_string()))?;
    let residual = &b - &a * &coeffs;
    let terms: Vec<ExpTerm> = exponents
        .iter()
        .zip(coeffs.iter().zip(&scales))
        .map(|(&(alpha, k), (c, s))| ExpTerm::new(alpha, k, c / s))
        .collect();
    let half = Rational64::new(1, 2);
    let order = match endpoint {
        Endpoint::Zero => exponents.iter().map(|e| e.0).max().unwrap() + half,
        Endpoint::Infinity => -exponents.iter().map(|e| e.0).min().unwrap() + half,
    };
    Ok(FitReport {
        expansion: Expansion::new(terms, order, endpoint)?,
        residual_rms: residual.norm() / (n as f64).sqrt(),
        max_residual: residual.amax(),
        condition,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_model_is_recovered() {
        let samples: Vec<(f64, f64)> = (1..=10)
            .map(|j| {
                let t = 2f64.powi(-j);
                (t, 2.0 / t.sqrt() + 3.0)
            })
            .collect();
        let r = fit_expansion(
            &samples,
            &[(Rational64::new(-1, 2), 0), (Rational64::from_integer(0), 0)],
            Endpoint::Zero,
        )
        .unwrap();
        assert!((r.expansion.terms()[0].coeff - 2.0).abs() < 1e-8);
        assert!((r.expansion.terms()[1].coeff - 3.0).abs() < 1e-8);
        assert!(r.residual_rms < 1e-10);
    }

    #[test]
    fn duplicate_exponents_are_rejected() {
        let samples = vec![(0.5, 1.0), (0.25, 2.0), (0.125, 3.0)];
        let e = (Rational64::from_integer(0), 0);
        assert!(matches!(
            fit_expansion(&samples, &[e, e], Endpoint::Zero),
            Err(RegError::Fit(_))
        ));
    }
}
