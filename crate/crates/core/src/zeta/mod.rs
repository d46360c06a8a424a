//! Spectral zeta functions continued through the split Mellin transform
//! `Γ(s)ζ(s) = ∫₀¹ t^{s−1}(Tr − b) dt + ∫₁^∞ t^{s−1}(Tr − b) dt`, torsion,
//! torsion norms and the wedge computation.

mod norm;
mod source;
mod torsion;
mod wedge;

use std::collections::BTreeSet;
use std::sync::Arc;

use num_rational::Rational64;
use num_traits::Zero;
use thiserror::Error;

pub use norm::{torsion_norm, DetLineElement, HarmonicRep, NormReport, Orientation, ORIENTATION};
pub use source::{HeatTraceExpansion, ModelTrace, TraceSource};
pub use torsion::{log_torsion, zeta_continue, zeta_reg_at_zero, Convention, DegreeZeta, TorsionResult, TORSION_SIGN};
pub use wedge::{even_dim_vanishing, wedge_torsion, EvenDimReport, WedgeTorsion};

use crate::quad::{integrate, integrate_to_infinity, QuadError, QuadOptions};
use crate::reg::{mellin_term, ExpTerm, MeromorphicValue, RegError, Side};
use crate::special::{gamma, reciprocal_gamma_jet};
use crate::spectra::{Estimate, SpectraError};

#[derive(Debug, Error)]
pub enum ZetaError {
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Reg(#[from] RegError),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error("ζ has a pole at s = {0}")]
    Pole(f64),
    #[error("remainder integral diverges at s = {s} (remainder order {order})")]
    Divergent { s: f64, order: f64 },
    #[error("model has odd dimension {0}")]
    OddDimension(usize),
    #[error("Gram matrix in degree {degree} is degenerate (determinant {det:e})")]
    DegenerateGram { degree: usize, det: f64 },
    #[error("degree {degree}: {got} representatives for a {expected}-dimensional cohomology")]
    BettiMismatch { degree: usize, expected: u64, got: usize },
    #[error("cone trace is not of scaling form: {0}")]
    NotScalingForm(String),
    #[error("no Dirichlet series available for this source")]
    NoDirichlet,
    #[error("{0}")]
    InvalidArgument(String),
}

const QUAD_TOL: f64 = 1e-13;

fn quad_opts() -> QuadOptions {
    QuadOptions {
        abs_tol: QUAD_TOL,
        rel_tol: 1e-13,
        max_panels: 6000,
    }
}

/// Value and derivative of the regular part at `s = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZetaAtZero {
    pub value: f64,
    pub derivative: f64,
    pub error: f64,
    /// Laurent development of `ζ` at 0.
    pub laurent: MeromorphicValue,
    /// Laurent development of `Γ(s)ζ(s)` at 0.
    pub gamma_zeta: MeromorphicValue,
}

/// A zeta function `ζ(s) = Γ(s)^{-1}[Σ Mellin terms + H(s)]`, `H` entire.
#[derive(Clone)]
pub struct ZetaFn {
    source: Arc<dyn TraceSource>,
    /// Expansion terms with the half-line they are integrated over.
    pieces: Vec<(ExpTerm, Side)>,
}

impl std::fmt::Debug for ZetaFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ZetaFn")
            .field("pieces", &self.pieces)
            .finish_non_exhaustive()
    }
}

impl ZetaFn {
    pub fn new(source: Arc<dyn TraceSource>) -> Self {
        let kernel = source.kernel_dim();
        let mut pieces: Vec<(ExpTerm, Side)> = Vec::new();
        let mut push = |t: ExpTerm, side: Side| {
            if let Some(p) = pieces
                .iter_mut()
                .find(|p| p.1 == side && p.0.alpha == t.alpha && p.0.k == t.k)
            {
                p.0.coeff += t.coeff;
            } else {
                pieces.push((t, side));
            }
        };
        for t in source.short_time() {
            push(t, Side::UnitInterval);
        }
        for t in source.long_time() {
            push(t, Side::Tail);
        }
        if kernel != 0.0 {
            push(ExpTerm::new(Rational64::zero(), 0, -kernel), Side::UnitInterval);
            push(ExpTerm::new(Rational64::zero(), 0, -kernel), Side::Tail);
        }
        pieces.retain(|p| p.0.coeff != 0.0);
        ZetaFn { source, pieces }
    }

    pub fn source(&self) -> &dyn TraceSource {
        self.source.as_ref()
    }

    pub fn pieces(&self) -> &[(ExpTerm, Side)] {
        &self.pieces
    }

    /// Poles `−α` of `Γ(s)ζ(s)`.
    pub fn gamma_zeta_poles(&self) -> Vec<Rational64> {
        self.pieces
            .iter()
            .map(|p| -p.0.alpha)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// Principal parts of `Γ(s)ζ(s)` at each of its poles.
    pub fn poles(&self) -> Vec<MeromorphicValue> {
        self.gamma_zeta_poles()
            .into_iter()
            .map(|p| {
                let mut m = self.rational_laurent(p, 0);
                m.regular_jet.clear();
                m
            })
            .filter(|m| m.pole_order() > 0)
            .collect()
    }

    fn rational_laurent(&self, s0: Rational64, jet: usize) -> MeromorphicValue {
        let mut g = MeromorphicValue::regular(crate::spectra::q_to_f64(s0), vec![0.0; jet]);
        for (t, side) in &self.pieces {
            g = g.plus(&mellin_term(t.alpha, t.k, *side).laurent_at(s0, jet).scaled(t.coeff));
        }
        g
    }

    fn rational_eval(&self, s: f64) -> f64 {
        self.pieces
            .iter()
            .map(|(t, side)| t.coeff * mellin_term(t.alpha, t.k, *side).eval(s))
            .sum()
    }

    /// `H(s)` with a `log^p t` weight: `∫₀¹ t^{s−1} log^p t R₀ + ∫₁^∞ t^{s−1} log^p t R∞`.
    pub fn remainder_mellin(&self, s: f64, p: u32) -> Result<Estimate, ZetaError> {
        if !self.source.has_remainders() {
            return Ok(Estimate::exact(0.0));
        }
        let order = self.source.remainder_zero_order();
        if s + order <= 0.0 {
            return Err(ZetaError::Divergent { s, order });
        }
        let src = &self.source;
        let pi = p as i32;
        let lower = integrate(
            |t: f64| {
                let r = src.remainder_zero(t);
                if r == 0.0 {
                    0.0
                } else {
                    r * t.powf(s - 1.0) * t.ln().powi(pi)
                }
            },
            0.0,
            1.0,
            quad_opts(),
        )?;
        let upper = integrate_to_infinity(
            |t: f64| {
                let r = src.remainder_inf(t);
                if r == 0.0 {
                    0.0
                } else {
                    r * t.powf(s - 1.0) * t.ln().powi(pi)
                }
            },
            1.0,
            quad_opts(),
        )?;
        Ok(Estimate::new(lower.value + upper.value, lower.error + upper.error))
    }

    fn is_pole(&self, s: f64) -> bool {
        self.pieces.iter().any(|(t, _)| crate::spectra::q_to_f64(-t.alpha) == s)
    }

    /// `Γ(s)ζ(s)`.
    pub fn gamma_zeta(&self, s: f64) -> Result<Estimate, ZetaError> {
        if self.is_pole(s) {
            return Err(ZetaError::Pole(s));
        }
        let h = self.remainder_mellin(s, 0)?;
        Ok(Estimate::new(self.rational_eval(s) + h.value, h.error))
    }

    /// `ζ(s)` at real `s`; at `s = 0` the regular part.
    pub fn eval(&self, s: f64) -> Result<Estimate, ZetaError> {
        if s == 0.0 {
            let z = self.at_zero()?;
            return Ok(Estimate::new(z.value, z.error));
        }
        if s < 0.0 && s.fract() == 0.0 {
            // 1/Γ vanishes; only the Laurent data at s would decide
            return Err(ZetaError::Pole(s));
        }
        let g = self.gamma_zeta(s)?;
        let gs = gamma(s);
        Ok(Estimate::new(g.value / gs, g.error / gs.abs()))
    }

    /// Laurent data of `ζ` at 0 after exact division by `Γ`.
    pub fn at_zero(&self) -> Result<ZetaAtZero, ZetaError> {
        let mut g = self.rational_laurent(Rational64::zero(), 2);
        let h0 = self.remainder_mellin(0.0, 0)?;
        g = g.plus(&MeromorphicValue::regular(0.0, vec![h0.value]));
        let r = reciprocal_gamma_jet(g.principal.len() + 3);
        let z = g.times_taylor(&r, 2);
        Ok(ZetaAtZero {
            value: z.coeff(0),
            derivative: z.coeff(1),
            error: h0.error,
            laurent: z,
            gamma_zeta: g,
        })
    }

    /// `Σ m λ^{-s}` over positive eigenvalues with a Weyl tail bound.
    pub fn dirichlet_sum(&self, s: f64, tol: f64) -> Result<Estimate, ZetaError> {
        self.source.dirichlet_sum(s, tol).unwrap_or(Err(ZetaError::NoDirichlet))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{hurwitz_zeta, riemann_zeta, riemann_zeta_ds};
    use crate::spectra::{Geometry, SpectralModel};
    use std::f64::consts::PI;

    fn model_zeta(g: &Geometry, k: usize) -> ZetaFn {
        let m = SpectralModel::build(g).unwrap();
        ZetaFn::new(Arc::new(ModelTrace::degree(&m, k).unwrap()))
    }

    #[test]
    fn circle_values() {
        let z = model_zeta(&Geometry::circle(2.0 * PI, 0.0), 0);
        let v = z.eval(2.0).unwrap().value;
        assert!((v - PI.powi(4) / 45.0).abs() < 1e-10, "{v}");
        let a = z.at_zero().unwrap();
        assert!((a.value + 1.0).abs() < 1e-10);
        assert!((a.derivative + 2.0 * (2.0 * PI).ln()).abs() < 1e-9, "{}", a.derivative);
        assert!((4.0 * riemann_zeta_ds(0.0) + 2.0 * (2.0 * PI).ln()).abs() < 1e-12);
    }

    #[test]
    fn dirichlet_paths_agree() {
        for g in [
            Geometry::circle(1.0, 0.0),
            Geometry::circle(2.0, 1.0),
            Geometry::torus(&[1.0, 1.3]),
        ] {
            let m = SpectralModel::build(&g).unwrap();
            for k in 0..=m.dim() {
                let z = model_zeta(&g, k);
                for s in [3.0, 4.0] {
                    let a = z.eval(s).unwrap().value;
                    let b = z.dirichlet_sum(s, 1e-12).unwrap().value;
                    assert!((a - b).abs() < 1e-8 * a.abs().max(1.0), "{g:?} k={k} s={s}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn twisted_circle_against_hurwitz() {
        let (l, th) = (3.0, 2.0);
        let z = model_zeta(&Geometry::circle(l, th), 0);
        let s = 1.5;
        let a = th / (2.0 * PI);
        let expected = (l / (2.0 * PI)).powf(2.0 * s) * (hurwitz_zeta(2.0 * s, a) + hurwitz_zeta(2.0 * s, 1.0 - a));
        assert!((z.eval(s).unwrap().value - expected).abs() < 1e-10);
        assert!((riemann_zeta(3.0) - hurwitz_zeta(3.0, 1.0)).abs() < 1e-14);
    }

    #[test]
    fn truncated_is_entire_power() {
        let z = model_zeta(&Geometry::truncated(&[(2.0, 1)]), 0);
        for s in [-0.5, 0.5, 3.0] {
            assert!((z.eval(s).unwrap().value - 2f64.powf(-s)).abs() < 1e-10, "{s}");
        }
        let a = z.at_zero().unwrap();
        assert!((a.value - 1.0).abs() < 1e-12);
        assert!((a.derivative + 2f64.ln()).abs() < 1e-10);
        assert!(z.eval(-1.0).is_err());
    }

    #[test]
    fn pole_is_reported() {
        let z = model_zeta(&Geometry::circle(1.0, 0.0), 0);
        assert!(matches!(z.eval(0.5), Err(ZetaError::Pole(_))));
        assert_eq!(z.poles().len(), 2);
    }
}
