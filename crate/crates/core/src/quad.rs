//! Adaptive Gauss–Legendre quadrature.
//!
//! Each panel is integrated with a 15-point Gauss–Legendre rule on the whole
//! panel and on both halves; the discrepancy is the panel error estimate. The
//! panel with the largest estimate is bisected until the summed estimate meets
//! the requested tolerance.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::{Add, Mul, Sub};
use std::sync::OnceLock;

use num_complex::Complex64;
use thiserror::Error;

const GAUSS_POINTS: usize = 15;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error("quadrature did not converge: achieved error {achieved:.3e}, requested {requested:.3e} after {evaluations} evaluations")]
    NonConvergence {
        achieved: f64,
        requested: f64,
        evaluations: usize,
    },
    #[error("integrand is not finite at x = {x}")]
    NonFinite { x: f64 },
    #[error("invalid interval [{a}, {b}]")]
    InvalidInterval { a: f64, b: f64 },
}

/// Values the integrator can accumulate.
pub trait QuadValue: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(&self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_panels: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            abs_tol: 1e-10,
            rel_tol: 1e-13,
            max_panels: 4000,
        }
    }
}

impl QuadOptions {
    pub fn with_abs_tol(abs_tol: f64) -> Self {
        QuadOptions {
            abs_tol,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult<T> {
    pub value: T,
    pub error: f64,
    pub evaluations: usize,
}

/// Nodes and weights on [-1, 1], computed once by Newton iteration on `P_n`.
fn gauss_legendre() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = GAUSS_POINTS;
        let mut rule = Vec::with_capacity(n);
        for i in 0..n {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            rule.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
        }
        rule
    })
}

fn gauss_panel<T: QuadValue, F: FnMut(f64) -> T>(f: &mut F, a: f64, b: f64) -> Result<T, QuadError> {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = T::zero();
    for &(x, w) in gauss_legendre() {
        let xx = mid + half * x;
        let v = f(xx);
        if !v.magnitude().is_finite() {
            return Err(QuadError::NonFinite { x: xx });
        }
        acc = acc + v * w;
    }
    Ok(acc * half)
}

struct Panel<T> {
    a: f64,
    b: f64,
    left: T,
    right: T,
    error: f64,
}

impl<T> PartialEq for Panel<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<T> Eq for Panel<T> {}
impl<T> PartialOrd for Panel<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for Panel<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn make_panel<T: QuadValue, F: FnMut(f64) -> T>(f: &mut F, a: f64, b: f64, whole: T) -> Result<Panel<T>, QuadError> {
    let m = 0.5 * (a + b);
    let left = gauss_panel(f, a, m)?;
    let right = gauss_panel(f, m, b)?;
    let error = (whole - (left + right)).magnitude();
    Ok(Panel {
        a,
        b,
        left,
        right,
        error,
    })
}

/// Integrate `f` over the finite interval `[a, b]`.
pub fn integrate<T: QuadValue, F: FnMut(f64) -> T>(
    mut f: F,
    a: f64,
    b: f64,
    opts: QuadOptions,
) -> Result<QuadResult<T>, QuadError> {
    if !(a.is_finite() && b.is_finite()) || b < a {
        return Err(QuadError::InvalidInterval { a, b });
    }
    if a == b {
        return Ok(QuadResult {
            value: T::zero(),
            error: 0.0,
            evaluations: 0,
        });
    }
    let mut evaluations = 0usize;
    let mut heap = BinaryHeap::new();
    // start from a few panels so that narrow features are not missed
    let initial = 4;
    let h = (b - a) / initial as f64;
    for i in 0..initial {
        let (pa, pb) = (
            a + i as f64 * h,
            if i + 1 == initial { b } else { a + (i + 1) as f64 * h },
        );
        let whole = gauss_panel(&mut f, pa, pb)?;
        heap.push(make_panel(&mut f, pa, pb, whole)?);
        evaluations += 3 * GAUSS_POINTS;
    }
    loop {
        let (value, error) = heap
            .iter()
            .fold((T::zero(), 0.0), |(v, e), p| (v + p.left + p.right, e + p.error));
        let target = opts.abs_tol.max(opts.rel_tol * value.magnitude());
        if error <= target {
            return Ok(QuadResult {
                value,
                error,
                evaluations,
            });
        }
        if heap.len() >= opts.max_panels {
            return Err(QuadError::NonConvergence {
                achieved: error,
                requested: target,
                evaluations,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let m = 0.5 * (worst.a + worst.b);
        if m <= worst.a || m >= worst.b {
            // cannot bisect further in floating point
            return Err(QuadError::NonConvergence {
                achieved: error,
                requested: target,
                evaluations,
            });
        }
        heap.push(make_panel(&mut f, worst.a, m, worst.left)?);
        heap.push(make_panel(&mut f, m, worst.b, worst.right)?);
        evaluations += 4 * GAUSS_POINTS;
    }
}

/// Integrate `f` over `[a, ∞)` through `x = a + u/(1-u)`.
pub fn integrate_to_infinity<T: QuadValue, F: FnMut(f64) -> T>(
    mut f: F,
    a: f64,
    opts: QuadOptions,
) -> Result<QuadResult<T>, QuadError> {
    integrate(
        |u: f64| {
            let w = 1.0 - u;
            let x = a + u / w;
            if x.is_infinite() {
                return T::zero();
            }
            f(x) * (1.0 / (w * w))
        },
        0.0,
        1.0,
        opts,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodes_integrate_polynomials_exactly() {
        let r = integrate(|x: f64| x.powi(20), 0.0, 1.0, QuadOptions::with_abs_tol(1e-14)).unwrap();
        assert!((r.value - 1.0 / 21.0).abs() < 1e-15);
        let wsum: f64 = gauss_legendre().iter().map(|p| p.1).sum();
        assert!((wsum - 2.0).abs() < 1e-14);
    }

    #[test]
    fn endpoint_singularity() {
        let r = integrate(|x: f64| x.sqrt().recip(), 0.0, 1.0, QuadOptions::with_abs_tol(1e-11)).unwrap();
        assert!((r.value - 2.0).abs() < 1e-10);
        let r = integrate(|x: f64| x.ln().powi(3), 0.0, 1.0, QuadOptions::with_abs_tol(1e-11)).unwrap();
        assert!((r.value + 6.0).abs() < 1e-10);
    }

    #[test]
    fn semi_infinite() {
        let r = integrate_to_infinity(|x: f64| (-x).exp(), 0.0, QuadOptions::with_abs_tol(1e-13)).unwrap();
        assert!((r.value - 1.0).abs() < 1e-13);
        let r = integrate_to_infinity(|x: f64| 1.0 / (x * x), 1.0, QuadOptions::with_abs_tol(1e-13)).unwrap();
        assert!((r.value - 1.0).abs() < 1e-13);
    }

    #[test]
    fn complex_values() {
        let r = integrate(
            |t: f64| Complex64::new(0.0, t).exp(),
            0.0,
            std::f64::consts::PI,
            QuadOptions::with_abs_tol(1e-13),
        )
        .unwrap();
        assert!((r.value - Complex64::new(0.0, 2.0)).norm() < 1e-13);
    }

    #[test]
    fn non_convergence_is_reported() {
        let opts = QuadOptions {
            abs_tol: 1e-30,
            rel_tol: 0.0,
            max_panels: 8,
        };
        let err = integrate(|x: f64| (50.0 * x).sin(), 0.0, 10.0, opts).unwrap_err();
        assert!(matches!(err, QuadError::NonConvergence { .. }));
    }
}
