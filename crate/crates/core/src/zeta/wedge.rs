use std::sync::Arc;

use num_rational::Rational64;
use num_traits::Zero;
use rayon::prelude::*;

use super::{ModelTrace, ZetaError, ZetaFn, TORSION_SIGN};
use crate::reg::reg_int_zero_check;
use crate::spectra::{ConeTraceForm, SpectralModel};

#[derive(Debug, Clone, PartialEq)]
pub struct EvenDimReport {
    /// `(s, Σ_j (−1)^j j ζ_j(s))`
    pub samples: Vec<(f64, f64)>,
    /// `Σ_j (−1)^j j ζ′_j(0)`
    pub derivative_at_zero: f64,
}

impl EvenDimReport {
    pub fn max_residual(&self) -> f64 {
        self.samples
            .iter()
            .map(|s| s.1.abs())
            .fold(self.derivative_at_zero.abs(), f64::max)
    }
}

fn weight(j: usize) -> f64 {
    if j % 2 == 0 {
        j as f64
    } else {
        -(j as f64)
    }
}

/// `Σ_j (−1)^j j ζ_j(s)` at the samples and the derivative combination at 0.
pub fn even_dim_vanishing(model: &SpectralModel, s_samples: &[f64]) -> Result<EvenDimReport, ZetaError> {
    if model.dim() % 2 != 0 {
        return Err(ZetaError::OddDimension(model.dim()));
    }
    let zetas = (1..=model.dim())
        .map(|j| super::zeta_continue(model, j))
        .collect::<Result<Vec<_>, _>>()?;
    let combine = |f: &(dyn Fn(&ZetaFn) -> Result<f64, ZetaError> + Sync)| -> Result<f64, ZetaError> {
        let vals = zetas.par_iter().map(f).collect::<Result<Vec<_>, _>>()?;
        Ok(vals.iter().enumerate().map(|(i, v)| weight(i + 1) * v).sum())
    };
    let samples = s_samples
        .iter()
        .map(|&s| Ok((s, combine(&|z| Ok(z.eval(s)?.value))?)))
        .collect::<Result<Vec<_>, ZetaError>>()?;
    let derivative_at_zero = combine(&|z| Ok(z.at_zero()?.derivative))?;
    Ok(EvenDimReport {
        samples,
        derivative_at_zero,
    })
}

/// Both evaluations of the wedge torsion.
#[derive(Debug, Clone, PartialEq)]
pub struct WedgeTorsion {
    /// Exact value from the cancellation identities; `None` when the fibre is
    /// not flat enough for the binomial identity.
    pub symbolic: Option<Rational64>,
    /// `½ Σ_k (−1)^k k ζ′_k(0)` from the product traces.
    pub numeric: f64,
    pub numeric_error: f64,
    /// `ζ′(0)` per wedge degree.
    pub per_degree: Vec<f64>,
}

/// Exact vanishing of `Σ_ℓ c_ℓ (∫₀¹ + ∫₁^∞) t^{s−1} log^ℓ t dt`.
fn log_poly_mellin_vanishes(max_log: usize) -> bool {
    (0..=max_log as u32).all(|l| reg_int_zero_check(Rational64::zero(), l).is_zero())
}

fn symbolic_path(cone: &ConeTraceForm, fibre: &SpectralModel) -> Option<Rational64> {
    let n = cone.log_coeffs.iter().map(|v| v.len()).max().unwrap_or(0);
    // (i) every cone-degree zeta is a combination of vanishing Mellin pairs
    if !log_poly_mellin_vanishes(n) {
        return None;
    }
    // (ii) fibre harmonic correction: again vanishing pairs; positive part needs
    // Σ_j (−1)^j j ζ_j ≡ 0, which for flat fibres is Σ_j (−1)^j j C(m, j) = 0
    let mult = fibre.hodge_multiplicities()?;
    let alternating: i64 = mult
        .iter()
        .enumerate()
        .map(|(j, m)| if j % 2 == 0 { j as i64 * m } else { -(j as i64) * m })
        .sum();
    if alternating != 0 {
        return None;
    }
    Some(Rational64::zero())
}

/// Torsion of `C(B) × F` for a cone trace of scaling form and an even-dimensional `F`.
pub fn wedge_torsion(cone: &ConeTraceForm, fibre: &SpectralModel) -> Result<WedgeTorsion, ZetaError> {
    if fibre.dim() % 2 != 0 {
        return Err(ZetaError::OddDimension(fibre.dim()));
    }
    cone.validate().map_err(|e| ZetaError::NotScalingForm(e.to_string()))?;
    let symbolic = symbolic_path(cone, fibre);
    let poly = |i: usize| {
        let mut p = vec![cone.constants[i]];
        p.extend(&cone.log_coeffs[i]);
        p
    };
    let top = cone.b + 1 + fibre.dim();
    let per = (0..=top)
        .into_par_iter()
        .map(|k| {
            let parts: Vec<(usize, Vec<f64>)> = (0..=fibre.dim())
                .filter(|&j| j <= k && k - j <= cone.b + 1)
                .map(|j| (j, poly(k - j)))
                .collect();
            if parts.is_empty() {
                return Ok((0.0, 0.0));
            }
            let z = ZetaFn::new(Arc::new(ModelTrace::weighted(fibre, parts)?)).at_zero()?;
            Ok((z.derivative, z.error))
        })
        .collect::<Result<Vec<_>, ZetaError>>()?;
    let mut numeric = 0.0;
    let mut numeric_error = 0.0;
    for (k, (d, e)) in per.iter().enumerate() {
        let w = 0.5 * TORSION_SIGN * if k % 2 == 0 { k as f64 } else { -(k as f64) };
        numeric += w * d;
        numeric_error += w.abs() * e;
    }
    Ok(WedgeTorsion {
        symbolic,
        numeric,
        numeric_error,
        per_degree: per.into_iter().map(|p| p.0).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::Geometry;

    #[test]
    fn torus_cancels() {
        let t = SpectralModel::build(&Geometry::torus(&[1.0, 1.0])).unwrap();
        let r = even_dim_vanishing(&t, &[2.0, 3.0]).unwrap();
        assert!(r.max_residual() < 1e-10, "{r:?}");
        let p = SpectralModel::build(&Geometry::Point).unwrap();
        assert_eq!(even_dim_vanishing(&p, &[2.0]).unwrap().max_residual(), 0.0);
        let c = SpectralModel::build(&Geometry::circle(1.0, 0.0)).unwrap();
        assert!(matches!(
            even_dim_vanishing(&c, &[2.0]),
            Err(ZetaError::OddDimension(1))
        ));
    }

    #[test]
    fn flat_wedges() {
        for b in [1, 2] {
            let cone = ConeTraceForm::flat(b).unwrap();
            for f in [Geometry::Point, Geometry::torus(&[1.0, 1.0])] {
                let m = SpectralModel::build(&f).unwrap();
                let w = wedge_torsion(&cone, &m).unwrap();
                assert_eq!(w.symbolic, Some(Rational64::zero()));
                assert!(w.numeric.abs() < 1e-8);
            }
        }
    }

    #[test]
    fn synthetic_cone_with_logs() {
        let cone =
            ConeTraceForm::synthetic(1, vec![0.7, -1.1, 0.4], vec![vec![0.3, 0.05], vec![-0.2], vec![]]).unwrap();
        let t2 = SpectralModel::build(&Geometry::torus(&[1.0, 1.4])).unwrap();
        let w = wedge_torsion(&cone, &t2).unwrap();
        assert_eq!(w.symbolic, Some(Rational64::zero()));
        assert!(w.numeric.abs() < 1e-8, "{w:?}");
        assert!(w.per_degree.iter().any(|d| d.abs() > 1e-3));
        let odd = SpectralModel::build(&Geometry::circle(1.0, 0.0)).unwrap();
        assert!(wedge_torsion(&cone, &odd).is_err());
    }
}
