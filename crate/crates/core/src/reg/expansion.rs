//! Finite asymptotic expansions `Σ a·x^α·log^k x` at `0` or `∞`.

use std::collections::BTreeSet;

use num_rational::Rational64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::mellin::to_f64;
use super::RegError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Endpoint {
    Zero,
    Infinity,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpTerm {
    pub alpha: Rational64,
    pub k: u32,
    pub coeff: f64,
}

impl ExpTerm {
    pub fn new(alpha: Rational64, k: u32, coeff: f64) -> Self {
        ExpTerm { alpha, k, coeff }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let mut v = self.coeff * x.powf(to_f64(self.alpha));
        if self.k > 0 {
            v *= x.ln().powi(self.k as i32);
        }
        v
    }
}

/// Terms plus remainder order `r`: the error is `O(x^r)` at 0 and `O(x^{-r})` at ∞.
#[derive(Debug, Clone, PartialEq)]
pub struct Expansion {
    terms: Vec<ExpTerm>,
    remainder_order: Rational64,
    endpoint: Endpoint,
}

impl Expansion {
    pub fn new(terms: Vec<ExpTerm>, remainder_order: Rational64, endpoint: Endpoint) -> Result<Self, RegError> {
        let mut seen = BTreeSet::new();
        for t in &terms {
            if !seen.insert((t.alpha, t.k)) {
                return Err(RegError::Expansion(format!(
                    "duplicate term (α = {}, k = {})",
                    t.alpha, t.k
                )));
            }
            let ok = match endpoint {
                Endpoint::Zero => t.alpha < remainder_order,
                Endpoint::Infinity => t.alpha > -remainder_order,
            };
            if !ok {
                return Err(RegError::Expansion(format!(
                    "term x^{} is not above the remainder order {} at {:?}",
                    t.alpha, remainder_order, endpoint
                )));
            }
        }
        Ok(Expansion {
            terms,
            remainder_order,
            endpoint,
        })
    }

    pub fn empty(remainder_order: Rational64, endpoint: Endpoint) -> Self {
        Expansion {
            terms: Vec::new(),
            remainder_order,
            endpoint,
        }
    }

    pub fn terms(&self) -> &[ExpTerm] {
        &self.terms
    }

    pub fn remainder_order(&self) -> Rational64 {
        self.remainder_order
    }

    pub fn endpoint(&self) -> Endpoint {
        self.endpoint
    }

    pub fn partial_sum(&self, x: f64) -> f64 {
        self.terms.iter().map(|t| t.eval(x)).sum()
    }

    /// Sum of absolute term sizes; a scale for cancellation error.
    pub fn magnitude(&self, x: f64) -> f64 {
        self.terms.iter().map(|t| t.eval(x).abs()).sum()
    }

    pub fn coeff(&self, alpha: Rational64, k: u32) -> f64 {
        self.terms
            .iter()
            .find(|t| t.alpha == alpha && t.k == k)
            .map(|t| t.coeff)
            .unwrap_or(0.0)
    }

    pub fn max_log_power(&self, alpha: Rational64) -> Option<u32> {
        self.terms
            .iter()
            .filter(|t| t.alpha == alpha && t.coeff != 0.0)
            .map(|t| t.k)
            .max()
    }

    /// Expansion of `x ↦ f(λx)` given the expansion of `f`.
    pub fn rescaled(&self, lambda: f64) -> Expansion {
        let ll = lambda.ln();
        let mut out: Vec<ExpTerm> = Vec::new();
        for t in &self.terms {
            let base = t.coeff * lambda.powf(to_f64(t.alpha));
            // (log λ + log x)^k = Σ_j C(k,j) log^{k−j}λ log^j x
            let mut binom = 1.0;
            for j in 0..=t.k {
                if j > 0 {
                    binom *= (t.k - j + 1) as f64 / j as f64;
                }
                let c = base * binom * ll.powi((t.k - j) as i32);
                match out.iter_mut().find(|o| o.alpha == t.alpha && o.k == j) {
                    Some(o) => o.coeff += c,
                    None => out.push(ExpTerm::new(t.alpha, j, c)),
                }
            }
        }
        Expansion {
            terms: out,
            remainder_order: self.remainder_order,
            endpoint: self.endpoint,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitValue {
    pub value: f64,
    /// A `log^k x` term with `k ≥ 1` sits at exponent 0.
    pub log_present: bool,
}

/// `LIM`: the coefficient of `x⁰ log⁰ x`.
pub fn regularized_limit(e: &Expansion, strict: bool) -> Result<LimitValue, RegError> {
    let log_present = e.terms.iter().any(|t| t.alpha.is_zero() && t.k > 0 && t.coeff != 0.0);
    if strict && log_present {
        return Err(RegError::LogAtConstant);
    }
    Ok(LimitValue {
        value: e.coeff(Rational64::zero(), 0),
        log_present,
    })
}

/// Finite part of `∫₀^c x^α log^k x dx` (the antiderivative with no constant term at 0).
pub fn finite_part_from_zero(alpha: Rational64, k: u32, c: f64) -> f64 {
    let lc = c.ln();
    if alpha == -Rational64::from_integer(1) {
        return lc.powi(k as i32 + 1) / (k as f64 + 1.0);
    }
    let a1 = to_f64(alpha) + 1.0;
    let mut acc = 0.0;
    let mut falling = 1.0;
    for j in 0..=k {
        if j > 0 {
            falling *= (k - j + 1) as f64;
        }
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * falling * lc.powi((k - j) as i32) / a1.powi(j as i32 + 1);
    }
    c.powf(a1) * acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn lim_examples() {
        let e = Expansion::new(
            vec![
                ExpTerm::new(q(-1, 1), 0, 3.0),
                ExpTerm::new(q(0, 1), 0, 5.0),
                ExpTerm::new(q(1, 1), 0, 7.0),
            ],
            q(2, 1),
            Endpoint::Zero,
        )
        .unwrap();
        assert_eq!(regularized_limit(&e, true).unwrap().value, 5.0);
        let e = Expansion::new(
            vec![ExpTerm::new(q(0, 1), 1, 2.0), ExpTerm::new(q(0, 1), 0, 5.0)],
            q(1, 1),
            Endpoint::Zero,
        )
        .unwrap();
        let l = regularized_limit(&e, false).unwrap();
        assert_eq!((l.value, l.log_present), (5.0, true));
        assert_eq!(regularized_limit(&e, true), Err(RegError::LogAtConstant));
        let e = Expansion::new(vec![ExpTerm::new(q(-1, 2), 0, 1.0)], q(1, 1), Endpoint::Zero).unwrap();
        assert_eq!(regularized_limit(&e, true).unwrap().value, 0.0);
    }

    #[test]
    fn rejects_bad_expansions() {
        let dup = vec![ExpTerm::new(q(0, 1), 0, 1.0), ExpTerm::new(q(0, 1), 0, 2.0)];
        assert!(Expansion::new(dup, q(1, 1), Endpoint::Zero).is_err());
        assert!(Expansion::new(vec![ExpTerm::new(q(2, 1), 0, 1.0)], q(1, 1), Endpoint::Zero).is_err());
        assert!(Expansion::new(vec![ExpTerm::new(q(-3, 1), 0, 1.0)], q(2, 1), Endpoint::Infinity).is_err());
    }

    #[test]
    fn finite_parts_match_antiderivatives() {
        // ∫₀^2 x log x dx = 2 log 2 − 1
        assert!((finite_part_from_zero(q(1, 1), 1, 2.0) - (2.0 * 2f64.ln() - 1.0)).abs() < 1e-15);
        // LIM ∫_ε^3 x^{-2} = −1/3
        assert!((finite_part_from_zero(q(-2, 1), 0, 3.0) + 1.0 / 3.0).abs() < 1e-15);
        assert!((finite_part_from_zero(q(-1, 1), 1, 2.0) - 0.5 * 2f64.ln().powi(2)).abs() < 1e-15);
    }

    #[test]
    fn rescaling_expands_logs() {
        let e = Expansion::new(vec![ExpTerm::new(q(-1, 1), 1, 1.0)], q(0, 1), Endpoint::Zero).unwrap();
        let r = e.rescaled(2.0);
        assert!((r.coeff(q(-1, 1), 1) - 0.5).abs() < 1e-15);
        assert!((r.coeff(q(-1, 1), 0) - 0.5 * 2f64.ln()).abs() < 1e-15);
        for x in [0.1, 0.7] {
            assert!((r.partial_sum(x) - e.partial_sum(2.0 * x)).abs() < 1e-14);
        }
    }
}
