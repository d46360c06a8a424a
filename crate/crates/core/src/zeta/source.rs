use std::collections::BTreeMap;

use num_rational::Rational64;
use num_traits::Zero;

use super::ZetaError;
use crate::reg::ExpTerm;
use crate::spectra::{Estimate, SpectralModel};

/// A heat-type trace on `(0, ∞)` split into expansions and remainders:
/// `Tr = Σ short + R₀` on `(0, 1]` and `Tr = Σ long + R∞` on `[1, ∞)`.
pub trait TraceSource: Send + Sync {
    fn short_time(&self) -> Vec<ExpTerm>;
    fn long_time(&self) -> Vec<ExpTerm>;
    /// Constant removed at `t → ∞`.
    fn kernel_dim(&self) -> f64;
    fn remainder_zero(&self, t: f64) -> f64;
    fn remainder_inf(&self, t: f64) -> f64;
    /// `R₀ = O(t^r)`.
    fn remainder_zero_order(&self) -> f64;
    fn has_remainders(&self) -> bool {
        true
    }
    fn dirichlet_sum(&self, _s: f64, _tol: f64) -> Option<Result<Estimate, ZetaError>> {
        None
    }
}

/// A trace known only through its expansions (remainders identically zero).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct HeatTraceExpansion {
    /// Terms `a t^α log^k t` on `(0, 1]`.
    pub short_time: Vec<ExpTerm>,
    /// Terms `b t^β log^ℓ t` on `[1, ∞)`.
    pub long_time: Vec<ExpTerm>,
    pub kernel_dim: f64,
}

impl TraceSource for HeatTraceExpansion {
    fn short_time(&self) -> Vec<ExpTerm> {
        self.short_time.clone()
    }
    fn long_time(&self) -> Vec<ExpTerm> {
        self.long_time.clone()
    }
    fn kernel_dim(&self) -> f64 {
        self.kernel_dim
    }
    fn remainder_zero(&self, _t: f64) -> f64 {
        0.0
    }
    fn remainder_inf(&self, _t: f64) -> f64 {
        0.0
    }
    fn remainder_zero_order(&self) -> f64 {
        f64::INFINITY
    }
    fn has_remainders(&self) -> bool {
        false
    }
}

/// `Σ_j P_j(log t)·Tr e^{-tΔ_j}` for log-polynomials `P_j` on one model.
#[derive(Debug, Clone)]
pub struct ModelTrace {
    model: SpectralModel,
    /// `(j, [p_0, p_1, …])` with `P_j(x) = Σ p_ℓ x^ℓ`
    parts: Vec<(usize, Vec<f64>)>,
    kernel_dim: f64,
}

fn log_poly(p: &[f64], t: f64) -> f64 {
    let l = t.ln();
    p.iter().rev().fold(0.0, |acc, c| acc * l + c)
}

impl ModelTrace {
    /// `Tr e^{-tΔ_k}` with `dim ker Δ_k` removed at infinity.
    pub fn degree(model: &SpectralModel, k: usize) -> Result<Self, ZetaError> {
        if k > model.dim() {
            return Err(crate::spectra::SpectraError::Degree { k, dim: model.dim() }.into());
        }
        Ok(ModelTrace {
            model: model.clone(),
            parts: vec![(k, vec![1.0])],
            kernel_dim: model.betti(k) as f64,
        })
    }

    /// A general combination; no constant is removed at infinity.
    pub fn weighted(model: &SpectralModel, parts: Vec<(usize, Vec<f64>)>) -> Result<Self, ZetaError> {
        if let Some(&(k, _)) = parts.iter().find(|p| p.0 > model.dim()) {
            return Err(crate::spectra::SpectraError::Degree { k, dim: model.dim() }.into());
        }
        Ok(ModelTrace {
            model: model.clone(),
            parts,
            kernel_dim: 0.0,
        })
    }

    pub fn model(&self) -> &SpectralModel {
        &self.model
    }

    fn collect(&self, base: impl Fn(usize) -> Vec<ExpTerm>) -> Vec<ExpTerm> {
        let mut acc: BTreeMap<(Rational64, u32), f64> = BTreeMap::new();
        for (j, p) in &self.parts {
            for t in base(*j) {
                for (l, c) in p.iter().enumerate() {
                    if *c != 0.0 {
                        *acc.entry((t.alpha, t.k + l as u32)).or_insert(0.0) += t.coeff * c;
                    }
                }
            }
        }
        acc.into_iter()
            .filter(|(_, c)| *c != 0.0)
            .map(|((a, k), c)| ExpTerm::new(a, k, c))
            .collect()
    }
}

impl TraceSource for ModelTrace {
    fn short_time(&self) -> Vec<ExpTerm> {
        self.collect(|j| self.model.short_time_terms(j).unwrap_or_default())
    }

    fn long_time(&self) -> Vec<ExpTerm> {
        self.collect(|j| {
            let b = self.model.betti(j);
            if b == 0 {
                Vec::new()
            } else {
                vec![ExpTerm::new(Rational64::zero(), 0, b as f64)]
            }
        })
    }

    fn kernel_dim(&self) -> f64 {
        self.kernel_dim
    }

    fn remainder_zero(&self, t: f64) -> f64 {
        self.parts
            .iter()
            .map(|(j, p)| log_poly(p, t) * self.model.short_remainder(*j, t).map(|e| e.value).unwrap_or(f64::NAN))
            .sum()
    }

    fn remainder_inf(&self, t: f64) -> f64 {
        self.parts
            .iter()
            .map(|(j, p)| log_poly(p, t) * self.model.positive_trace(*j, t).map(|e| e.value).unwrap_or(f64::NAN))
            .sum()
    }

    fn remainder_zero_order(&self) -> f64 {
        // log factors cost an arbitrarily small power
        self.model.short_remainder_order() - 1e-9
    }

    fn dirichlet_sum(&self, s: f64, tol: f64) -> Option<Result<Estimate, ZetaError>> {
        let [(k, p)] = self.parts.as_slice() else {
            return None;
        };
        if p.as_slice() != [1.0] {
            return None;
        }
        Some(dirichlet(&self.model, *k, s, tol))
    }
}

fn dirichlet(model: &SpectralModel, k: usize, s: f64, tol: f64) -> Result<Estimate, ZetaError> {
    let weyl = model.weyl_bound(k)?;
    let cap = if model.is_finite() {
        f64::MAX
    } else {
        weyl.cutoff_for_dirichlet(s, tol)
            .ok_or_else(|| ZetaError::InvalidArgument(format!("Dirichlet series does not converge at s = {s}")))?
    };
    let eig = model.eigenvalues_below(k, cap)?;
    let sum: f64 = eig
        .iter()
        .rev()
        .filter(|e| e.0 > 0.0)
        .map(|&(l, m)| m as f64 * l.powf(-s))
        .sum();
    let tail = if model.is_finite() {
        0.0
    } else {
        weyl.dirichlet_tail(s, cap)
    };
    Ok(Estimate::new(
        sum,
        tail + 4.0 * f64::EPSILON * sum.abs() * (eig.len() as f64).sqrt(),
    ))
}
