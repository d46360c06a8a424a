use num_rational::Rational64;

use super::{SpectraError, SpectralModel};
use crate::reg::{fit_expansion, Endpoint, ExpTerm, Expansion};

/// Fitted short-time expansion with the exact terms for comparison.
#[derive(Debug, Clone)]
pub struct ShortTimeFit {
    pub expansion: Expansion,
    pub exact: Vec<ExpTerm>,
    pub residual_rms: f64,
    pub max_residual: f64,
    pub condition: f64,
    pub samples: Vec<(f64, f64)>,
}

impl ShortTimeFit {
    /// Fitted coefficient of `t^{α}`.
    pub fn coeff(&self, alpha: Rational64) -> f64 {
        self.expansion.coeff(alpha, 0)
    }

    pub fn exact_coeff(&self, alpha: Rational64) -> f64 {
        self.exact.iter().filter(|t| t.alpha == alpha).map(|t| t.coeff).sum()
    }

    /// Coefficients of `t^{(−m+j)/2}` with `j` odd.
    pub fn odd_shift_coeffs(&self, m: usize) -> Vec<(Rational64, f64)> {
        self.expansion
            .terms()
            .iter()
            .filter(|t| (t.alpha * 2 + m as i64).to_integer() % 2 != 0)
            .map(|t| (t.alpha, t.coeff))
            .collect()
    }
}

/// Fit `Tr e^{-tΔ_k} ≈ Σ_{j<n} a_j t^{(−m+j)/2}` on the grid `t = ℓ²·2^{-i/4}`,
/// `i = 28..=56`, with `ℓ` the smallest factor length.
pub fn short_time_expansion(model: &SpectralModel, k: usize, n_terms: usize) -> Result<ShortTimeFit, SpectraError> {
    if n_terms == 0 {
        return Err(SpectraError::InvalidArgument("need at least one term".into()));
    }
    let m = model.dim() as i64;
    let scale = model.min_length().unwrap_or(1.0).powi(2);
    let samples = (28..=56)
        .map(|i| {
            let t = scale * 2f64.powf(-(i as f64) / 4.0);
            model.heat_trace(k, t).map(|e| (t, e.value))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let exponents: Vec<(Rational64, u32)> = (0..n_terms as i64).map(|j| (Rational64::new(-m + j, 2), 0)).collect();
    let report = fit_expansion(&samples, &exponents, Endpoint::Zero)?;
    Ok(ShortTimeFit {
        expansion: report.expansion,
        exact: model.short_time_terms(k)?,
        residual_rms: report.residual_rms,
        max_residual: report.max_residual,
        condition: report.condition,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{Boundary, Geometry};
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn circle_leading_coefficient() {
        let l = 3.0;
        let c = SpectralModel::build(&Geometry::circle(l, 0.0)).unwrap();
        let fit = short_time_expansion(&c, 0, 4).unwrap();
        let lead = fit.coeff(Rational64::new(-1, 2));
        assert!((lead - l / (4.0 * PI).sqrt()).abs() < 1e-8, "{lead}");
        for (_, c) in fit.odd_shift_coeffs(1) {
            assert!(c.abs() < 1e-8);
        }
    }

    #[test]
    fn interval_has_constant_term() {
        let i = SpectralModel::build(&Geometry::interval(2.0, Boundary::Relative)).unwrap();
        let fit = short_time_expansion(&i, 0, 3).unwrap();
        assert!((fit.coeff(Rational64::from_integer(0)) + 0.5).abs() < 1e-8);
        assert_eq!(fit.exact_coeff(Rational64::from_integer(0)), -0.5);
    }

    #[test]
    fn torus_area_term() {
        let t = SpectralModel::build(&Geometry::torus(&[1.0, 2.0])).unwrap();
        for k in 0..=2 {
            let fit = short_time_expansion(&t, k, 4).unwrap();
            let mult = [1.0, 2.0, 1.0][k];
            assert!((fit.coeff(Rational64::from_integer(-1)) - mult * 2.0 / (4.0 * PI)).abs() < 1e-8);
        }
    }
}
