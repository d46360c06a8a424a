//! Regularized integrals over `(0, ∞)` and `(0, 1]` for functions with declared
//! expansions at the endpoints.

use std::fmt;
use std::sync::Arc;

use num_rational::Rational64;
use num_traits::Zero;

use super::expansion::{finite_part_from_zero, Endpoint, Expansion};
use super::mellin::{mellin_term, to_f64, MeromorphicValue, Side};
use super::RegError;
use crate::quad::{integrate, integrate_to_infinity, QuadOptions};

/// A function on `(0, ∞)` with its expansions at both ends.
#[derive(Clone)]
pub struct PhgSample {
    evaluator: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    at_zero: Expansion,
    at_inf: Expansion,
}

impl fmt::Debug for PhgSample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PhgSample")
            .field("at_zero", &self.at_zero)
            .field("at_inf", &self.at_inf)
            .finish_non_exhaustive()
    }
}

/// Estimated constants in the remainder bounds `|f − S| ≤ C·x^{±r}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RemainderConstants {
    pub zero: f64,
    pub infinity: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegIntegral {
    pub value: f64,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CovResult {
    /// `⨍ f(λx) dx` from the scaling formula.
    pub value: f64,
    /// The same quantity integrated directly from the rescaled sample.
    pub direct: f64,
    pub log_coeffs: Vec<f64>,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SigmaFiniteParts {
    pub value: f64,
    pub laurent: MeromorphicValue,
    pub error: f64,
}

const GRID_OCTAVES: i32 = 12;

impl PhgSample {
    pub fn new<F>(f: F, at_zero: Expansion, at_inf: Expansion) -> Result<Self, RegError>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if at_zero.endpoint() != Endpoint::Zero || at_inf.endpoint() != Endpoint::Infinity {
            return Err(RegError::Expansion("expansions attached to the wrong endpoints".into()));
        }
        Ok(PhgSample {
            evaluator: Arc::new(f),
            at_zero,
            at_inf,
        })
    }

    /// A sample only used on `(0, 1]`.
    pub fn on_unit_interval<F>(f: F, at_zero: Expansion) -> Result<Self, RegError>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        PhgSample::new(
            f,
            at_zero,
            Expansion::empty(Rational64::from_integer(2), Endpoint::Infinity),
        )
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.evaluator)(x)
    }

    pub fn at_zero(&self) -> &Expansion {
        &self.at_zero
    }

    pub fn at_inf(&self) -> &Expansion {
        &self.at_inf
    }

    pub fn rescaled(&self, lambda: f64) -> PhgSample {
        let f = self.evaluator.clone();
        PhgSample {
            evaluator: Arc::new(move |x| f(lambda * x)),
            at_zero: self.at_zero.rescaled(lambda),
            at_inf: self.at_inf.rescaled(lambda),
        }
    }

    /// `af + bg`, with expansions combined termwise.
    pub fn linear_combination(a: f64, f: &PhgSample, b: f64, g: &PhgSample) -> Result<PhgSample, RegError> {
        let combine = |e1: &Expansion, e2: &Expansion, endpoint: Endpoint| -> Result<Expansion, RegError> {
            let mut terms: Vec<super::ExpTerm> = Vec::new();
            for (c, e) in [(a, e1), (b, e2)] {
                for t in e.terms() {
                    match terms.iter_mut().find(|o| o.alpha == t.alpha && o.k == t.k) {
                        Some(o) => o.coeff += c * t.coeff,
                        None => terms.push(super::ExpTerm::new(t.alpha, t.k, c * t.coeff)),
                    }
                }
            }
            Expansion::new(terms, e1.remainder_order().min(e2.remainder_order()), endpoint)
        };
        let (fe, ge) = (f.evaluator.clone(), g.evaluator.clone());
        PhgSample::new(
            move |x| a * fe(x) + b * ge(x),
            combine(&f.at_zero, &g.at_zero, Endpoint::Zero)?,
            combine(&f.at_inf, &g.at_inf, Endpoint::Infinity)?,
        )
    }

    fn remainder_ratios(&self, endpoint: Endpoint) -> Vec<Option<f64>> {
        let (e, sign) = match endpoint {
            Endpoint::Zero => (&self.at_zero, -1),
            Endpoint::Infinity => (&self.at_inf, 1),
        };
        let r = to_f64(e.remainder_order());
        (1..=GRID_OCTAVES)
            .map(|j| {
                let x = 2f64.powi(sign * j);
                let fx = self.eval(x);
                let rem = (fx - e.partial_sum(x)).abs();
                let noise = 64.0 * f64::EPSILON * (fx.abs() + e.magnitude(x));
                let scale = match endpoint {
                    Endpoint::Zero => x.powf(-r),
                    Endpoint::Infinity => x.powf(r),
                };
                if !rem.is_finite() {
                    None
                } else if rem <= noise {
                    // lost in rounding, no information
                    Some(0.0)
                } else {
                    Some(rem * scale)
                }
            })
            .collect()
    }

    fn remainder_constant(&self, endpoint: Endpoint) -> Result<f64, RegError> {
        let ratios = self.remainder_ratios(endpoint);
        if ratios.iter().any(|r| r.is_none()) {
            return Err(RegError::RemainderViolation {
                endpoint,
                detail: "function or expansion is not finite on the test grid".into(),
            });
        }
        let ratios: Vec<f64> = ratios.into_iter().map(|r| r.unwrap_or(0.0)).collect();
        let split = 2 * ratios.len() / 3;
        let head = ratios[..split].iter().cloned().fold(0.0, f64::max);
        let tail = ratios[split..].iter().cloned().fold(0.0, f64::max);
        if tail > 4.0 * head + 1e-300 {
            return Err(RegError::RemainderViolation {
                endpoint,
                detail: format!("remainder ratio grows from {head:.3e} to {tail:.3e} on the geometric grid"),
            });
        }
        Ok(head.max(tail))
    }

    /// Check the declared remainder orders on a geometric grid and return the
    /// estimated remainder constants.
    pub fn validate(&self) -> Result<RemainderConstants, RegError> {
        Ok(RemainderConstants {
            zero: self.remainder_constant(Endpoint::Zero)?,
            infinity: self.remainder_constant(Endpoint::Infinity)?,
        })
    }
}

/// Tolerances for the regularized integrals.
#[derive(Debug, Clone, Copy)]
pub struct RegOptions {
    pub tol: f64,
    pub max_panels: usize,
}

impl Default for RegOptions {
    fn default() -> Self {
        RegOptions {
            tol: 1e-10,
            max_panels: 4000,
        }
    }
}

impl RegOptions {
    fn quad(&self, share: f64) -> QuadOptions {
        QuadOptions {
            abs_tol: self.tol * share,
            rel_tol: 1e-14,
            max_panels: self.max_panels,
        }
    }
}

/// Lower cut below which the remainder integral is bounded rather than computed.
fn lower_cut(c_hat: f64, r: f64, budget: f64, upper: f64) -> (f64, f64) {
    let c = c_hat.max(1e-12);
    let x = ((budget * (r + 1.0)) / c).powf(1.0 / (r + 1.0)).min(upper);
    (x, c_hat * x.powf(r + 1.0) / (r + 1.0))
}

fn zero_order(f: &PhgSample) -> Result<f64, RegError> {
    let r = to_f64(f.at_zero.remainder_order());
    if r <= -1.0 {
        return Err(RegError::RemainderOrder(format!(
            "remainder order {r} at 0 is not integrable"
        )));
    }
    Ok(r)
}

/// `∫₀^c (f − S₀) dx` with the cut and its bound.
fn remainder_integral_from_zero(
    f: &PhgSample,
    c: f64,
    weight: impl Fn(f64) -> f64,
    opts: RegOptions,
) -> Result<(f64, f64), RegError> {
    let r = zero_order(f)?;
    let c_hat = f.remainder_constant(Endpoint::Zero)?;
    let (x_c, cut_err) = lower_cut(c_hat, r, 0.05 * opts.tol, c);
    let q = integrate(
        |x| (f.eval(x) - f.at_zero.partial_sum(x)) * weight(x),
        x_c,
        c,
        opts.quad(0.4),
    )?;
    Ok((q.value, q.error + cut_err))
}

/// `⨍₀^∞ f dx`, split at `split`.
pub fn regularized_integral(f: &PhgSample, split: f64, opts: RegOptions) -> Result<RegIntegral, RegError> {
    if !(split > 0.0 && split.is_finite()) {
        return Err(RegError::InvalidArgument(format!(
            "split point must be positive, got {split}"
        )));
    }
    let r_inf = to_f64(f.at_inf.remainder_order());
    if r_inf <= 1.0 {
        return Err(RegError::RemainderOrder(format!(
            "remainder order {r_inf} at ∞ is not integrable"
        )));
    }
    f.remainder_constant(Endpoint::Infinity)?;
    let (left, left_err) = remainder_integral_from_zero(f, split, |_| 1.0, opts)?;
    let right = integrate_to_infinity(|x| f.eval(x) - f.at_inf.partial_sum(x), split, opts.quad(0.4))?;
    let parts_zero: f64 = f
        .at_zero
        .terms()
        .iter()
        .map(|t| t.coeff * finite_part_from_zero(t.alpha, t.k, split))
        .sum();
    let parts_inf: f64 = f
        .at_inf
        .terms()
        .iter()
        .map(|t| t.coeff * finite_part_from_zero(t.alpha, t.k, split))
        .sum();
    Ok(RegIntegral {
        value: left + right.value + parts_zero - parts_inf,
        error: left_err + right.error,
    })
}

/// Coefficients `c_ℓ` in `⨍ f(λx)dx = λ^{-1}(⨍ f + Σ_ℓ c_ℓ log^ℓ λ)`.
///
/// Only the `x^{-1} log^k x` terms contribute: `c_ℓ = (b_{−1,ℓ−1} − a_{−1,ℓ−1})/ℓ`
/// with `a` the coefficients at 0 and `b` those at ∞.
pub fn change_of_variable_coeffs(f: &PhgSample) -> Vec<f64> {
    let m1 = -Rational64::from_integer(1);
    let n_f = [f.at_zero.max_log_power(m1), f.at_inf.max_log_power(m1)]
        .into_iter()
        .flatten()
        .max()
        .map(|k| k as usize + 1)
        .unwrap_or(0);
    (1..=n_f)
        .map(|l| (f.at_inf.coeff(m1, l as u32 - 1) - f.at_zero.coeff(m1, l as u32 - 1)) / l as f64)
        .collect()
}

/// `⨍₀^∞ f(λx) dx` by the scaling formula, checked against direct integration
/// of the rescaled sample.
pub fn change_of_variable(f: &PhgSample, lambda: f64, agreement: f64, opts: RegOptions) -> Result<CovResult, RegError> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(RegError::InvalidArgument(format!("λ must be positive, got {lambda}")));
    }
    let base = regularized_integral(f, 1.0, opts)?;
    let direct = regularized_integral(&f.rescaled(lambda), 1.0, opts)?;
    let log_coeffs = change_of_variable_coeffs(f);
    let ll = lambda.ln();
    let logs: f64 = log_coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| c * ll.powi(i as i32 + 1))
        .sum();
    let formula = (base.value + logs) / lambda;
    if (formula - direct.value).abs() > agreement {
        return Err(RegError::Disagreement {
            direct: direct.value,
            formula,
            tolerance: agreement,
        });
    }
    Ok(CovResult {
        value: formula,
        direct: direct.value,
        log_coeffs,
        error: base.error / lambda + direct.error,
    })
}

/// Finite part at `σ = 0` of `σ ↦ ∫₀¹ x^σ f(x) dx`, with its Laurent data.
pub fn sigma_finite_part(f: &PhgSample, opts: RegOptions) -> Result<SigmaFiniteParts, RegError> {
    let mut laurent = MeromorphicValue::regular(0.0, vec![0.0, 0.0]);
    for t in f.at_zero.terms() {
        let m = mellin_term(t.alpha + Rational64::from_integer(1), t.k, Side::UnitInterval);
        laurent = laurent.plus(&m.laurent_at(Rational64::zero(), 2).scaled(t.coeff));
    }
    let (c0, e0) = remainder_integral_from_zero(f, 1.0, |_| 1.0, opts)?;
    let (c1, _) = remainder_integral_from_zero(f, 1.0, |x| x.ln(), opts)?;
    laurent = laurent.plus(&MeromorphicValue::regular(0.0, vec![c0, c1]));
    Ok(SigmaFiniteParts {
        value: laurent.finite_part(),
        laurent,
        error: e0,
    })
}

/// `LIM_{ε→0} ∫_ε¹ f dx`, from a direct quadrature at one small `ε` plus the
/// divergent part of the expansion evaluated at `ε`.
pub fn epsilon_limit(f: &PhgSample, opts: RegOptions) -> Result<RegIntegral, RegError> {
    let r = zero_order(f)?;
    let c_hat = f.remainder_constant(Endpoint::Zero)?;
    let (eps, cut_err) = lower_cut(c_hat, r, 0.05 * opts.tol, 0.5);
    let q = integrate(|x| f.eval(x), eps, 1.0, opts.quad(0.5))?;
    let diverging: f64 = f
        .at_zero
        .terms()
        .iter()
        .map(|t| t.coeff * finite_part_from_zero(t.alpha, t.k, eps))
        .sum();
    Ok(RegIntegral {
        value: q.value + diverging,
        error: q.error + cut_err,
    })
}

#[cfg(test)]
mod tests {
    use super::super::ExpTerm;
    use super::*;

    fn q(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    fn exp_decay() -> PhgSample {
        let zero = Expansion::new(
            (0..4)
                .map(|n| ExpTerm::new(q(n, 1), 0, (-1f64).powi(n as i32) / (1..=n).product::<i64>() as f64))
                .collect(),
            q(4, 1),
            Endpoint::Zero,
        )
        .unwrap();
        PhgSample::new(
            |x: f64| (-x).exp(),
            zero,
            Expansion::empty(q(10, 1), Endpoint::Infinity),
        )
        .unwrap()
    }

    fn one_over_one_plus() -> PhgSample {
        let zero = Expansion::new(
            (0..4)
                .map(|n| ExpTerm::new(q(n, 1), 0, (-1f64).powi(n as i32)))
                .collect(),
            q(4, 1),
            Endpoint::Zero,
        )
        .unwrap();
        let inf = Expansion::new(
            (1..4)
                .map(|n| ExpTerm::new(q(-n, 1), 0, (-1f64).powi(n as i32 + 1)))
                .collect(),
            q(4, 1),
            Endpoint::Infinity,
        )
        .unwrap();
        PhgSample::new(|x: f64| 1.0 / (1.0 + x), zero, inf).unwrap()
    }

    #[test]
    fn pure_powers_integrate_to_zero() {
        for b in [q(-3, 1), q(-1, 2), q(2, 1), q(7, 3)] {
            let bf = to_f64(b);
            let zero = Expansion::new(vec![ExpTerm::new(b, 0, 1.0)], b.max(q(0, 1)) + 1, Endpoint::Zero).unwrap();
            let inf = Expansion::new(vec![ExpTerm::new(b, 0, 1.0)], (-b).max(q(0, 1)) + 2, Endpoint::Infinity).unwrap();
            let f = PhgSample::new(move |x: f64| x.powf(bf), zero, inf).unwrap();
            let r = regularized_integral(&f, 1.0, RegOptions::default()).unwrap();
            assert!(r.value.abs() < 1e-12, "b = {b}: {}", r.value);
        }
    }

    #[test]
    fn convergent_and_log_examples() {
        let r = regularized_integral(&exp_decay(), 1.0, RegOptions::default()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-10);
        let r = regularized_integral(&one_over_one_plus(), 1.0, RegOptions::default()).unwrap();
        assert!(r.value.abs() < 1e-10, "{}", r.value);
    }

    #[test]
    fn split_point_independence() {
        let f = one_over_one_plus();
        let v: Vec<f64> = [0.5, 1.0, 2.0]
            .iter()
            .map(|&c| regularized_integral(&f, c, RegOptions::default()).unwrap().value)
            .collect();
        assert!((v[0] - v[1]).abs() < 1e-9 && (v[2] - v[1]).abs() < 1e-9);
    }

    #[test]
    fn change_of_variable_examples() {
        let opts = RegOptions::default();
        let r = change_of_variable(&exp_decay(), 2.0, 1e-8, opts).unwrap();
        assert!((r.value - 0.5).abs() < 1e-9 && r.log_coeffs.is_empty());
        let e = std::f64::consts::E;
        let r = change_of_variable(&one_over_one_plus(), e, 1e-8, opts).unwrap();
        assert!((r.value - 1.0 / e).abs() < 1e-9);
        assert_eq!(r.log_coeffs, vec![1.0]);
        let base = regularized_integral(&one_over_one_plus(), 1.0, opts).unwrap().value;
        let r = change_of_variable(&one_over_one_plus(), 1.0, 1e-8, opts).unwrap();
        assert!((r.value - base).abs() < 1e-10);
    }

    #[test]
    fn sigma_and_epsilon_agree_on_powers() {
        let opts = RegOptions::default();
        for (alpha, k, expect) in [(-1, 0, 0.0), (-2, 0, -1.0), (-1, 1, 0.0)] {
            let a = q(alpha, 1);
            let zero = Expansion::new(vec![ExpTerm::new(a, k, 1.0)], q(3, 1), Endpoint::Zero).unwrap();
            let f =
                PhgSample::on_unit_interval(move |x: f64| x.powi(alpha as i32) * x.ln().powi(k as i32), zero).unwrap();
            let s = sigma_finite_part(&f, opts).unwrap();
            let e = epsilon_limit(&f, opts).unwrap();
            assert!((s.value - expect).abs() < 1e-12, "{alpha},{k}: {}", s.value);
            assert!((e.value - expect).abs() < 1e-9, "{alpha},{k}: {}", e.value);
        }
    }

    #[test]
    fn false_remainder_order_is_detected() {
        let zero = Expansion::new(vec![ExpTerm::new(q(0, 1), 0, 1.0)], q(2, 1), Endpoint::Zero).unwrap();
        let f = PhgSample::new(
            |x: f64| (-x).exp(),
            zero,
            Expansion::empty(q(10, 1), Endpoint::Infinity),
        )
        .unwrap();
        assert!(matches!(f.validate(), Err(RegError::RemainderViolation { .. })));
        assert!(exp_decay().validate().is_ok());
    }
}
