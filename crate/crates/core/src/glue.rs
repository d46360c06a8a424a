//! Exact sequences, determinant-line bookkeeping and the circle gluing check.
//!
//! The gluing identity checked here is
//! `‖Φ(α ⊗ β)‖_M = 2^{−χ(∂M)/2} · ‖α‖_{(N, ∂M)} · ‖β‖_K`
//! for `M = S¹_{2L}` cut at two points into `N = [0, L]` with relative and
//! `K = [0, L]` with absolute conditions.

use serde::Serialize;
use thiserror::Error;

use crate::spectra::{Boundary, Geometry, SpectraError, SpectralModel};
pub use crate::zeta::DetLineElement;
use crate::zeta::{torsion_norm, zeta_continue, HarmonicRep, ZetaError};

#[derive(Debug, Error)]
pub enum GlueError {
    #[error(transparent)]
    Zeta(#[from] ZetaError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error("inconsistent cohomology data: {0}")]
    Inconsistent(String),
    #[error("{0}")]
    InvalidArgument(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flavor {
    Absolute,
    Relative,
    L2Reduced,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologyProfile {
    /// `(k, dim H^k)` for the trivial line bundle.
    pub dims: Vec<(usize, u64)>,
    pub flavor: Flavor,
    pub rank: u32,
}

impl CohomologyProfile {
    pub fn new(dims: &[u64], flavor: Flavor, rank: u32) -> Self {
        CohomologyProfile {
            dims: dims.iter().copied().enumerate().collect(),
            flavor,
            rank,
        }
    }

    pub fn of_model(model: &SpectralModel, flavor: Flavor) -> Self {
        CohomologyProfile::new(model.betti_numbers(), flavor, 1)
    }

    pub fn dim(&self, k: usize) -> u64 {
        self.dims.iter().filter(|d| d.0 == k).map(|d| d.1).sum::<u64>() * self.rank as u64
    }

    pub fn euler(&self) -> i64 {
        let s: i64 = self
            .dims
            .iter()
            .map(|&(k, d)| if k % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum();
        s * self.rank as i64
    }

    pub fn disjoint_union(&self, other: &CohomologyProfile) -> Result<Self, GlueError> {
        if self.rank != other.rank {
            return Err(GlueError::InvalidArgument("ranks differ".into()));
        }
        let top = self.dims.iter().chain(&other.dims).map(|d| d.0).max().unwrap_or(0);
        let dims = (0..=top)
            .map(|k| {
                let d = |p: &CohomologyProfile| p.dims.iter().filter(|d| d.0 == k).map(|d| d.1).sum::<u64>();
                (k, d(self) + d(other))
            })
            .collect();
        Ok(CohomologyProfile {
            dims,
            flavor: self.flavor,
            rank: self.rank,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactSequence {
    pub label: String,
    pub dims: Vec<u64>,
}

impl ExactSequence {
    pub fn new(label: impl Into<String>, dims: Vec<u64>) -> Self {
        ExactSequence {
            label: label.into(),
            dims,
        }
    }

    pub fn alternating_sum(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }
}

pub fn alternating_sum_check(seq: &ExactSequence) -> bool {
    seq.alternating_sum() == 0
}

/// Interleave `A^k → B^k → C^k → A^{k+1} → …` for `k = 0..=top`.
fn long_exact(label: &str, a: &[u64], b: &[u64], c: &[u64], top: usize) -> ExactSequence {
    let at = |v: &[u64], k: usize| v.get(k).copied().unwrap_or(0);
    let dims = (0..=top).flat_map(|k| [at(a, k), at(b, k), at(c, k)]).collect();
    ExactSequence::new(label, dims)
}

/// Long exact sequences assembled from the built-in circle/interval/point models.
pub fn builtin_sequences(l: f64) -> Result<Vec<ExactSequence>, GlueError> {
    let circle = SpectralModel::build(&Geometry::circle(2.0 * l, 0.0))?
        .betti_numbers()
        .to_vec();
    let rel = SpectralModel::build(&Geometry::interval(l, Boundary::Relative))?
        .betti_numbers()
        .to_vec();
    let abs = SpectralModel::build(&Geometry::interval(l, Boundary::Absolute))?
        .betti_numbers()
        .to_vec();
    let pt = SpectralModel::build(&Geometry::Point)?.betti_numbers().to_vec();
    let two_pts: Vec<u64> = pt.iter().map(|d| 2 * d).collect();
    let two_abs: Vec<u64> = abs.iter().map(|d| 2 * d).collect();
    Ok(vec![
        // H(M) → H(I) ⊕ H(I) → H(I ∩ I)
        long_exact("Mayer–Vietoris S¹ = I ∪ I", &circle, &two_abs, &two_pts, 1),
        // H(N, ∂) → H(M) → H(K)
        long_exact("pair (S¹, K) relative ⊗ absolute", &rel, &circle, &abs, 1),
        // H(I, ∂I) → H(I) → H(∂I)
        long_exact("pair (I, ∂I)", &rel, &abs, &two_pts, 1),
    ])
}

/// Inputs to the end-degree identities of the `θ`-complex.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThetaInputs {
    /// Formal interpolation parameter; outputs never depend on it.
    pub theta: f64,
    pub m: usize,
    pub rank: u32,
    /// `dim H⁰_θ`; `None` means connected with trivial bundle, i.e. `rank`.
    pub h0_theta: Option<u64>,
    pub hm_theta: u64,
    /// `dim H^k_{(2)}(N, ∂M)` for `k = 0..=m`.
    pub rel_n: Vec<u64>,
    /// `dim H^k(K, ∂M)` for `k = 0..=m`.
    pub rel_k: Vec<u64>,
    /// `dim H^k(∂M)` for `k = 0..m`.
    pub boundary: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThetaDims {
    pub h0: u64,
    pub h1: u64,
    pub hm1: u64,
    pub hm: u64,
    /// `(k, dim H^k_θ)` for `2 ≤ k ≤ m − 2`.
    pub middle: Vec<(usize, u64)>,
}

pub fn theta_dims(inp: &ThetaInputs) -> Result<ThetaDims, GlueError> {
    let m = inp.m;
    if m < 3 {
        return Err(GlueError::InvalidArgument(format!("need m ≥ 3, got {m}")));
    }
    if inp.rel_n.len() != m + 1 || inp.rel_k.len() != m + 1 || inp.boundary.len() != m {
        return Err(GlueError::InvalidArgument(
            "relative data needs m + 1 entries and boundary data m entries".into(),
        ));
    }
    let h0 = inp.h0_theta.unwrap_or(inp.rank as u64);
    if h0 != inp.rank as u64 {
        return Err(GlueError::Inconsistent(format!(
            "dim H⁰_θ = {h0} but a connected manifold with trivial rank-{} bundle has {}",
            inp.rank, inp.rank
        )));
    }
    let i = |v: u64| v as i64;
    let h1 = i(h0) - i(inp.rel_n[0]) - i(inp.rel_k[0]) - i(inp.boundary[0]) + i(inp.rel_n[1]) + i(inp.rel_k[1]);
    let hm1 = i(inp.hm_theta) - i(inp.rel_n[m]) - i(inp.rel_k[m])
        + i(inp.boundary[m - 1])
        + i(inp.rel_n[m - 1])
        + i(inp.rel_k[m - 1]);
    for (name, v) in [("H¹_θ", h1), ("H^{m−1}_θ", hm1)] {
        if v < 0 {
            return Err(GlueError::Inconsistent(format!("dim {name} = {v} < 0")));
        }
    }
    let middle = (2..=m - 2).map(|k| (k, inp.rel_n[k] + inp.rel_k[k])).collect();
    Ok(ThetaDims {
        h0,
        h1: h1 as u64,
        hm1: hm1 as u64,
        hm: inp.hm_theta,
        middle,
    })
}

/// `2^{χ/2}` with `χ = rank · Σ (−1)^k dim H^k(∂M)`.
pub fn chi_factor(boundary: &CohomologyProfile) -> f64 {
    2f64.powf(boundary.euler() as f64 / 2.0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GluingReport {
    /// `‖Φ(α ⊗ β)‖` on `S¹_{2L}`.
    pub left: f64,
    /// `2^{−χ(∂)/2}·‖α‖·‖β‖`.
    pub right: f64,
    /// Harmonic representatives of `Φ(α ⊗ β)`.
    pub glued: Vec<String>,
    pub chi_factor: f64,
    pub ratio: f64,
    pub tolerance: f64,
}

pub const GLUING_TOLERANCE: f64 = 1e-6;

/// Concrete `Φ` on the circle: `β = c` lifts to the constant `c` on `M`
/// (restriction `H⁰(M) → H⁰(K)` is the identity on constants, so the
/// connecting map vanishes) and `α = a dx` on `N` maps to the harmonic form
/// with the same period, `a L/(2L) dx`.
fn phi(alpha: f64, beta: f64, l: f64) -> (f64, f64) {
    (beta, alpha * l / (2.0 * l))
}

pub fn circle_gluing_check(l: f64) -> Result<GluingReport, GlueError> {
    if !(l > 0.0 && l.is_finite()) {
        return Err(GlueError::InvalidArgument(format!("length must be positive, got {l}")));
    }
    let m = SpectralModel::build(&Geometry::circle(2.0 * l, 0.0))?;
    let n = SpectralModel::build(&Geometry::interval(l, Boundary::Relative))?;
    let k = SpectralModel::build(&Geometry::interval(l, Boundary::Absolute))?;
    for seq in builtin_sequences(l)? {
        if !alternating_sum_check(&seq) {
            return Err(GlueError::Inconsistent(format!(
                "{} is not exact: {:?}",
                seq.label, seq.dims
            )));
        }
    }
    let alpha = 1.0 / l;
    let beta = 1.0;
    let (c0, c1) = phi(alpha, beta, l);
    let glued = DetLineElement::new(vec![HarmonicRep::constant(0, c0), HarmonicRep::constant(1, c1)]);
    let left = torsion_norm(&m, &glued)?;
    let na = torsion_norm(&n, &DetLineElement::new(vec![HarmonicRep::constant(1, alpha)]))?;
    let kb = torsion_norm(&k, &DetLineElement::new(vec![HarmonicRep::constant(0, beta)]))?;
    let boundary = CohomologyProfile::new(&[2], Flavor::Absolute, 1);
    let factor = chi_factor(&boundary);
    let right = na.norm * kb.norm / factor;
    Ok(GluingReport {
        left: left.norm,
        right,
        glued: vec![format!("{c0}"), format!("{c1} dx")],
        chi_factor: factor,
        ratio: left.norm / right,
        tolerance: GLUING_TOLERANCE,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeterminantOracles {
    /// `det′Δ(S¹_ℓ)` and `ℓ²`.
    pub circle: (f64, f64),
    /// `det Δ_D[0, L]` and `2L`.
    pub dirichlet: (f64, f64),
    pub max_rel_error: f64,
}

pub fn determinant_oracles(l: f64) -> Result<DeterminantOracles, GlueError> {
    let det = |g: Geometry| -> Result<f64, GlueError> {
        let m = SpectralModel::build(&g)?;
        Ok((-zeta_continue(&m, 0)?.at_zero()?.derivative).exp())
    };
    let circle = (det(Geometry::circle(l, 0.0))?, l * l);
    let dirichlet = (det(Geometry::interval(l, Boundary::Relative))?, 2.0 * l);
    let rel = |p: (f64, f64)| ((p.0 - p.1) / p.1).abs();
    Ok(DeterminantOracles {
        circle,
        dirichlet,
        max_rel_error: rel(circle).max(rel(dirichlet)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn alternating_sums() {
        assert!(alternating_sum_check(&ExactSequence::new("", vec![1, 2, 1])));
        assert!(!alternating_sum_check(&ExactSequence::new("", vec![1, 3, 1])));
        let seqs = builtin_sequences(1.0).unwrap();
        assert_eq!(seqs[0].dims, vec![1, 2, 2, 1, 0, 0]);
        assert_eq!(seqs[1].dims, vec![0, 1, 1, 1, 1, 0]);
        assert!(seqs.iter().all(alternating_sum_check));
    }

    fn inputs(rank: u32, theta: f64) -> ThetaInputs {
        ThetaInputs {
            theta,
            m: 3,
            rank,
            h0_theta: None,
            hm_theta: 0,
            rel_n: vec![0; 4],
            rel_k: vec![0; 4],
            boundary: vec![rank as u64, 0, 0],
        }
    }

    #[test]
    fn theta_identities() {
        let d = theta_dims(&inputs(1, 0.3)).unwrap();
        assert_eq!(d.h1, 0);
        assert_eq!(theta_dims(&inputs(3, 0.3)).unwrap().h0, 3);
        assert_eq!(theta_dims(&inputs(1, 1.2)).unwrap(), d);
        let mut bad = inputs(1, 0.3);
        bad.boundary[0] = 2;
        assert!(matches!(theta_dims(&bad), Err(GlueError::Inconsistent(_))));
        let mut small = inputs(1, 0.3);
        small.m = 2;
        assert!(theta_dims(&small).is_err());
    }

    #[test]
    fn chi_factors() {
        assert_eq!(chi_factor(&CohomologyProfile::new(&[2], Flavor::Absolute, 1)), 2.0);
        assert_eq!(
            chi_factor(&CohomologyProfile::new(&[1, 2, 1], Flavor::Absolute, 1)),
            1.0
        );
        assert_eq!(
            chi_factor(&CohomologyProfile::new(&[1, 0, 1], Flavor::Absolute, 3)),
            8.0
        );
        let a = CohomologyProfile::new(&[1, 0, 1], Flavor::Absolute, 1);
        let b = CohomologyProfile::new(&[1], Flavor::Absolute, 1);
        let u = a.disjoint_union(&b).unwrap();
        assert_eq!(chi_factor(&u), chi_factor(&a) * chi_factor(&b));
    }

    #[test]
    fn circle_gluing() {
        for l in [1.0, PI, 10.0] {
            let r = circle_gluing_check(l).unwrap();
            assert!((r.ratio - 1.0).abs() < 1e-6, "L={l}: {r:?}");
            assert_eq!(r.chi_factor, 2.0);
            let o = determinant_oracles(l).unwrap();
            assert!(o.max_rel_error < 1e-8, "{o:?}");
        }
        assert!(circle_gluing_check(-1.0).is_err());
    }
}
