//! `e^{-tλ} = s·(ν−1)!/t^{ν−1} · (2πi)^{-1} ∫_Γ e^{tξ} (λ+ξ)^{-ν} dξ`
//!
//! `Γ` comes in along the ray at angle `−θ`, runs counterclockwise over the arc
//! `|ξ| = r` through the positive axis, and leaves along the ray at angle `+θ`.
//! The enclosed region is the sector around the negative axis together with the
//! disk, so every `−λ ≤ 0` is enclosed.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{SpectraError, SpectralModel};
use crate::quad::{integrate, QuadOptions};

/// Sign `s` of the prefactor with the orientation above; pinned by `dunford_sign_oracle`.
pub const DUNFORD_PREFACTOR_SIGN: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourSpec {
    pub theta: f64,
    pub t: f64,
    pub nu: u32,
    /// Panel budgets for each ray and for the arc.
    pub ray_panels: usize,
    pub arc_panels: usize,
    /// Arc radius; `1/t` when absent.
    pub radius: Option<f64>,
}

impl ContourSpec {
    pub fn new(theta: f64, t: f64, nu: u32) -> Self {
        ContourSpec {
            theta,
            t,
            nu,
            ray_panels: 4000,
            arc_panels: 2000,
            radius: None,
        }
    }

    fn validate(&self) -> Result<(), SpectraError> {
        if !(self.theta > PI / 2.0 && self.theta < PI) {
            return Err(SpectraError::Contour(format!("θ = {} not in (π/2, π)", self.theta)));
        }
        if !(self.t > 0.0 && self.t.is_finite()) || self.nu == 0 {
            return Err(SpectraError::Contour(format!(
                "need t > 0 and ν ≥ 1, got t = {}, ν = {}",
                self.t, self.nu
            )));
        }
        if let Some(r) = self.radius {
            if !(r > 0.0 && r.is_finite()) {
                return Err(SpectraError::Contour(format!("radius {r} must be positive")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DunfordValue {
    pub value: f64,
    /// Imaginary part left by the quadrature; zero in exact arithmetic.
    pub imaginary: f64,
    pub error: f64,
}

fn resolvent_sum(eigs: &[(f64, u64)], xi: Complex64, nu: u32) -> Complex64 {
    eigs.iter().map(|&(l, m)| (xi + l).powi(-(nu as i32)) * m as f64).sum()
}

/// Unscaled `(2πi)^{-1} ∫_Γ e^{tξ} Σ m (λ+ξ)^{-ν} dξ`.
fn contour_integral(eigs: &[(f64, u64)], spec: &ContourSpec, tol: f64) -> Result<(Complex64, f64), SpectraError> {
    spec.validate()?;
    let (t, nu, th) = (spec.t, spec.nu, spec.theta);
    let r = spec.radius.unwrap_or(1.0 / t);
    if eigs.iter().any(|e| !(e.0 >= 0.0)) {
        return Err(SpectraError::Contour("negative eigenvalue meets the contour".into()));
    }
    let c = th.cos();
    let mass: f64 = eigs.iter().map(|e| e.1 as f64).sum();
    // ray cut where e^{tρ cosθ} (ρ sinθ)^{-ν} · mass / (t|cosθ|) < tol
    let mut rho_max = r + 1.0 / (t * c.abs());
    let tail = |rho: f64| mass * (t * rho * c).exp() * (rho * th.sin()).powi(-(nu as i32)) / (t * c.abs());
    while tail(rho_max) > 1e-3 * tol {
        rho_max *= 1.5;
    }
    let ray_opts = QuadOptions {
        abs_tol: tol,
        rel_tol: 1e-14,
        max_panels: spec.ray_panels,
    };
    let arc_opts = QuadOptions {
        max_panels: spec.arc_panels,
        ..ray_opts
    };
    let ray = |sign: f64| {
        let dir = Complex64::from_polar(1.0, sign * th);
        integrate(
            |rho: f64| {
                let xi = dir * rho;
                (xi * t).exp() * resolvent_sum(eigs, xi, nu) * dir
            },
            r,
            rho_max,
            ray_opts,
        )
    };
    let up = ray(1.0)?;
    let down = ray(-1.0)?;
    let arc = integrate(
        |phi: f64| {
            let e = Complex64::from_polar(1.0, phi);
            let xi = e * r;
            (xi * t).exp() * resolvent_sum(eigs, xi, nu) * (Complex64::i() * xi)
        },
        -th,
        th,
        arc_opts,
    )?;
    let total = up.value - down.value + arc.value;
    let z = total / Complex64::new(0.0, 2.0 * PI);
    let err = (up.error + down.error + arc.error + 2.0 * tail(rho_max)) / (2.0 * PI);
    Ok((z, err))
}

fn prefactor(t: f64, nu: u32) -> f64 {
    let fact: f64 = (1..nu).map(|j| j as f64).product();
    DUNFORD_PREFACTOR_SIGN * fact / t.powi(nu as i32 - 1)
}

/// Contour evaluation of `Tr e^{-tΔ_k}` on a model with finitely many eigenvalues.
pub fn dunford_heat(model: &SpectralModel, k: usize, spec: &ContourSpec) -> Result<DunfordValue, SpectraError> {
    if !model.is_finite() {
        return Err(SpectraError::Contour(
            "model must have finitely many eigenvalues".into(),
        ));
    }
    let eigs = model.eigenvalues_below(k, f64::MAX)?;
    let pre = prefactor(spec.t, spec.nu);
    let (z, err) = contour_integral(&eigs, spec, 1e-12 / pre.abs().max(1e-300))?;
    Ok(DunfordValue {
        value: pre * z.re,
        imaginary: pre * z.im,
        error: pre.abs() * err,
    })
}

/// Sign of the prefactor that turns the contour integral for a single
/// eigenvalue `λ = 1` with `ν = 2`, `t = 1` into `e^{-1}`: the residue of
/// `e^{tξ}(1+ξ)^{-2}` at `ξ = −1` is `t e^{-t}`.
pub fn dunford_sign_oracle() -> Result<f64, SpectraError> {
    let spec = ContourSpec::new(0.75 * PI, 1.0, 2);
    let (z, _) = contour_integral(&[(1.0, 1)], &spec, 1e-12)?;
    let residue = (-1f64).exp();
    Ok(if (z.re - residue).abs() < (z.re + residue).abs() {
        1.0
    } else {
        -1.0
    })
}
