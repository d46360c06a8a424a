use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::norm::ORIENTATION;
use super::{ModelTrace, ZetaAtZero, ZetaError, ZetaFn};
use crate::spectra::SpectralModel;

/// `log T = TORSION_SIGN · ½ Σ_k (−1)^k k ζ′_k(0)`.
pub const TORSION_SIGN: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Convention {
    pub sign: f64,
    pub orientation: &'static str,
}

impl Convention {
    pub fn current() -> Self {
        Convention {
            sign: TORSION_SIGN,
            orientation: ORIENTATION.describe(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeZeta {
    pub k: usize,
    pub zeta0: f64,
    pub dzeta0: f64,
    pub betti: u64,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TorsionResult {
    pub per_degree: Vec<DegreeZeta>,
    #[serde(rename = "logT")]
    pub log_t: f64,
    pub error: f64,
    pub convention: Convention,
}

pub fn zeta_continue(model: &SpectralModel, k: usize) -> Result<ZetaFn, ZetaError> {
    Ok(ZetaFn::new(Arc::new(ModelTrace::degree(model, k)?)))
}

pub fn zeta_reg_at_zero(z: &ZetaFn) -> Result<ZetaAtZero, ZetaError> {
    z.at_zero()
}

/// Assemble `log T` from per-degree `ζ′(0)`, one degree per task.
pub fn log_torsion(model: &SpectralModel) -> Result<TorsionResult, ZetaError> {
    let per_degree = (0..=model.dim())
        .into_par_iter()
        .map(|k| {
            let z = zeta_continue(model, k)?.at_zero()?;
            Ok(DegreeZeta {
                k,
                zeta0: z.value,
                dzeta0: z.derivative,
                betti: model.betti(k),
                error: z.error,
            })
        })
        .collect::<Result<Vec<_>, ZetaError>>()?;
    let mut log_t = 0.0;
    let mut error = 0.0;
    for d in &per_degree {
        let w = if d.k % 2 == 0 { 1.0 } else { -1.0 } * d.k as f64 * 0.5 * TORSION_SIGN;
        log_t += w * d.dzeta0;
        error += w.abs() * d.error;
    }
    Ok(TorsionResult {
        per_degree,
        log_t,
        error,
        convention: Convention::current(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::{Boundary, Geometry};
    use std::f64::consts::PI;

    fn log_t(g: Geometry) -> f64 {
        log_torsion(&SpectralModel::build(&g).unwrap()).unwrap().log_t
    }

    #[test]
    fn twisted_circle_anchor() {
        for l in [1.0, 2.0 * PI, 10.0] {
            assert!((log_t(Geometry::circle(l, PI)) - 2f64.ln()).abs() < 1e-8, "L={l}");
        }
        let th = 2.0 * PI / 3.0;
        assert!((log_t(Geometry::circle(3.0, th)) - 3f64.sqrt().ln()).abs() < 1e-8);
    }

    #[test]
    fn trivial_circle_is_log_length() {
        for l in [1.0, 2.0 * PI, 10.0] {
            assert!((log_t(Geometry::circle(l, 0.0)) - l.ln()).abs() < 1e-8);
        }
    }

    #[test]
    fn intervals() {
        let l = 2.0;
        let m = SpectralModel::build(&Geometry::interval(l, Boundary::Relative)).unwrap();
        let z = zeta_continue(&m, 0).unwrap().at_zero().unwrap();
        // det Δ_D = 2L
        assert!((-z.derivative - (2.0 * l).ln()).abs() < 1e-9);
        assert!((log_t(Geometry::interval(l, Boundary::Relative)) - 0.5 * (2.0 * l).ln()).abs() < 1e-9);
        assert!((log_t(Geometry::interval(l, Boundary::Absolute)) - 0.5 * (2.0 * l).ln()).abs() < 1e-9);
    }
}
