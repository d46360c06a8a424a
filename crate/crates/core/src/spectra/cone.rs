//! Flat cones `C(S^b) = ℝ^{b+1} \ {0}` and their regularized traces.

use std::f64::consts::PI;

use num_rational::Rational64;

use super::SpectraError;
use crate::reg::{
    change_of_variable_coeffs, regularized_integral, Endpoint, ExpTerm, Expansion, PhgSample, RegIntegral, RegOptions,
};
use crate::special::gamma;

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn check(b: usize, k: usize) -> Result<(), SpectraError> {
    if b < 1 {
        return Err(SpectraError::InvalidArgument(
            "cone link dimension must be at least 1".into(),
        ));
    }
    if k > b + 1 {
        return Err(SpectraError::Degree { k, dim: b + 1 });
    }
    Ok(())
}

/// `c_k = C(b+1, k)·(4π)^{-(b+1)/2}`.
pub fn cone_coefficient(b: usize, k: usize) -> Result<f64, SpectraError> {
    check(b, k)?;
    Ok(binomial(b + 1, k) * (4.0 * PI).powf(-((b + 1) as f64) / 2.0))
}

/// Pointwise trace `tr e^{-tΔ_k}(r, r) = c_k t^{-(b+1)/2}`; independent of `r`.
pub fn cone_trace(b: usize, k: usize, t: f64, r: f64) -> Result<f64, SpectraError> {
    if !(t > 0.0 && r > 0.0) {
        return Err(SpectraError::InvalidArgument(format!(
            "need t, r > 0, got t = {t}, r = {r}"
        )));
    }
    Ok(cone_coefficient(b, k)? * t.powf(-((b + 1) as f64) / 2.0))
}

fn euclidean_kernel(n: usize, t: f64, d2: f64) -> f64 {
    (4.0 * PI * t).powf(-(n as f64) / 2.0) * (-d2 / (4.0 * t)).exp()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingReport {
    /// `H(λ²t, λr, λr̃)`
    pub scaled: f64,
    /// `λ^{-(1+b)} H(t, r, r̃)`
    pub expected: f64,
    pub residual: f64,
}

/// Relative residual of `H(λ²t, λr, λr̃) = λ^{-(1+b)} H(t, r, r̃)` for the
/// Euclidean kernel, at points `r ω`, `r̃ ω'` with a fixed angle between `ω, ω'`.
pub fn euclidean_scaling_check(
    b: usize,
    lambda: f64,
    t: f64,
    r: f64,
    r_tilde: f64,
) -> Result<ScalingReport, SpectraError> {
    check(b, 0)?;
    if !(lambda > 0.0 && t > 0.0 && r > 0.0 && r_tilde > 0.0) {
        return Err(SpectraError::InvalidArgument(
            "scaling check needs positive λ, t, r, r̃".into(),
        ));
    }
    let angle: f64 = 0.7;
    let d2 = |a: f64, c: f64| a * a + c * c - 2.0 * a * c * angle.cos();
    let n = b + 1;
    let scaled = euclidean_kernel(n, lambda * lambda * t, d2(lambda * r, lambda * r_tilde));
    let expected = lambda.powf(-(n as f64)) * euclidean_kernel(n, t, d2(r, r_tilde));
    Ok(ScalingReport {
        scaled,
        expected,
        residual: (scaled - expected).abs() / expected.abs(),
    })
}

fn sphere_volume(b: usize) -> f64 {
    let h = (b + 1) as f64 / 2.0;
    2.0 * PI.powf(h) / gamma(h)
}

/// The radial integrand `r^b·vol(S^b)·tr e^{-tΔ_k}` as a sample with its expansions.
pub fn radial_trace_sample(b: usize, k: usize, t: f64) -> Result<PhgSample, SpectraError> {
    let a = cone_trace(b, k, t, 1.0)? * sphere_volume(b);
    let p = Rational64::from_integer(b as i64);
    let term = ExpTerm::new(p, 0, a);
    let at_zero = Expansion::new(vec![term], p + 1, Endpoint::Zero)?;
    let at_inf = Expansion::new(vec![term], p + 2, Endpoint::Infinity)?;
    Ok(PhgSample::new(move |x| term.eval(x), at_zero, at_inf)?)
}

/// `⨍₀^∞ r^b vol(S^b) tr e^{-tΔ_k} dr`; vanishes for the pure power.
pub fn spatial_reg_integral(b: usize, k: usize, t: f64) -> Result<RegIntegral, SpectraError> {
    Ok(regularized_integral(
        &radial_trace_sample(b, k, t)?,
        1.0,
        RegOptions::default(),
    )?)
}

/// `Tr^R e^{-tΔ_k} = C_k + Σ_ℓ c_{kℓ} log^ℓ t` on a cone over a `b`-dimensional link.
#[derive(Debug, Clone, PartialEq)]
pub struct ConeTraceForm {
    pub b: usize,
    /// Pointwise coefficients `c_k` of `t^{-(b+1)/2}`.
    pub c: Vec<f64>,
    /// `C_k`
    pub constants: Vec<f64>,
    /// `c_{kℓ}` for `ℓ = 1, 2, …`
    pub log_coeffs: Vec<Vec<f64>>,
}

impl ConeTraceForm {
    /// The flat cone: constants and log coefficients produced by the regularized
    /// spatial integral and the change-of-variable rule.
    pub fn flat(b: usize) -> Result<Self, SpectraError> {
        let mut c = Vec::new();
        let mut constants = Vec::new();
        let mut log_coeffs = Vec::new();
        for k in 0..=b + 1 {
            c.push(cone_coefficient(b, k)?);
            let sample = radial_trace_sample(b, k, 1.0)?;
            constants.push(regularized_integral(&sample, 1.0, RegOptions::default())?.value);
            log_coeffs.push(change_of_variable_coeffs(&sample));
        }
        Ok(ConeTraceForm {
            b,
            c,
            constants,
            log_coeffs,
        })
    }

    /// A trace of the same scaling form with prescribed constants and log coefficients.
    pub fn synthetic(b: usize, constants: Vec<f64>, log_coeffs: Vec<Vec<f64>>) -> Result<Self, SpectraError> {
        let c = (0..=b + 1)
            .map(|k| cone_coefficient(b, k))
            .collect::<Result<Vec<_>, _>>()?;
        let form = ConeTraceForm {
            b,
            c,
            constants,
            log_coeffs,
        };
        form.validate()?;
        Ok(form)
    }

    pub fn validate(&self) -> Result<(), SpectraError> {
        let n = self.b + 2;
        if self.c.len() != n || self.constants.len() != n || self.log_coeffs.len() != n {
            return Err(SpectraError::InvalidArgument(format!(
                "cone trace over a {}-dimensional link needs {} degrees",
                self.b, n
            )));
        }
        let finite = self
            .constants
            .iter()
            .chain(self.log_coeffs.iter().flatten())
            .all(|x| x.is_finite());
        if !finite {
            return Err(SpectraError::InvalidArgument(
                "cone trace coefficients must be finite".into(),
            ));
        }
        Ok(())
    }

    pub fn regularized_trace(&self, k: usize, t: f64) -> f64 {
        let l = t.ln();
        self.constants[k]
            + self.log_coeffs[k]
                .iter()
                .enumerate()
                .map(|(i, c)| c * l.powi(i as i32 + 1))
                .sum::<f64>()
    }

    /// `C_ℓ = Σ_k (−1)^k c_{kℓ}` with `C_0 = Σ_k (−1)^k C_k`.
    pub fn alternating_coeffs(&self) -> Vec<f64> {
        let n = self.log_coeffs.iter().map(|v| v.len()).max().unwrap_or(0);
        let mut out = vec![0.0; n + 1];
        for k in 0..self.constants.len() {
            let s = if k % 2 == 0 { 1.0 } else { -1.0 };
            out[0] += s * self.constants[k];
            for (l, c) in self.log_coeffs[k].iter().enumerate() {
                out[l + 1] += s * c;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficients() {
        assert!((cone_trace(1, 0, 2.0, 5.0).unwrap() - 1.0 / (8.0 * PI)).abs() < 1e-16);
        assert!((cone_coefficient(1, 1).unwrap() - 2.0 / (4.0 * PI)).abs() < 1e-16);
        assert!(cone_coefficient(1, 3).is_err());
        assert!((sphere_volume(1) - 2.0 * PI).abs() < 1e-12);
        assert!((sphere_volume(2) - 4.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn scaling_identity() {
        let r = euclidean_scaling_check(1, 3.0, 1.0, 2.0, 2.0).unwrap();
        assert!(r.residual < 1e-12);
        let r = euclidean_scaling_check(4, 0.3, 0.2, 1.0, 1.5).unwrap();
        assert!(r.residual < 1e-12);
    }

    #[test]
    fn flat_cone_trace_vanishes() {
        for b in 1..=3 {
            let f = ConeTraceForm::flat(b).unwrap();
            assert!(f.constants.iter().all(|c| c.abs() < 1e-10), "{:?}", f.constants);
            assert!(f.log_coeffs.iter().all(|v| v.is_empty()));
            assert_eq!(f.regularized_trace(0, 3.0).abs() < 1e-10, true);
        }
    }

    #[test]
    fn synthetic_shape_is_checked() {
        assert!(ConeTraceForm::synthetic(1, vec![1.0, 2.0], vec![vec![]; 3]).is_err());
        let f = ConeTraceForm::synthetic(1, vec![1.0, 2.0, 0.5], vec![vec![1.0], vec![], vec![0.0, 3.0]]).unwrap();
        assert_eq!(f.alternating_coeffs(), vec![-0.5, 1.0, 3.0]);
    }
}
