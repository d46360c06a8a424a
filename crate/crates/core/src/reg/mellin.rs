//! Exact Mellin terms and Laurent jets of rational functions of `s`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg};

use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Which half of `(0, ∞)` a Mellin term integrates over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    UnitInterval,
    Tail,
}

/// `Σ c/(s − p)^n` with exact rational poles and coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RationalFunction {
    terms: BTreeMap<(Rational64, u32), Rational64>,
}

impl RationalFunction {
    pub fn zero() -> Self {
        RationalFunction::default()
    }

    /// `coeff / (s − pole)^order`.
    pub fn pole(pole: Rational64, order: u32, coeff: Rational64) -> Self {
        let mut f = RationalFunction::zero();
        f.add_term(pole, order, coeff);
        f
    }

    fn add_term(&mut self, pole: Rational64, order: u32, coeff: Rational64) {
        let entry = self.terms.entry((pole, order)).or_insert_with(Rational64::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&(pole, order));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: Rational64) -> Self {
        let mut out = RationalFunction::zero();
        for (&(p, n), &a) in &self.terms {
            out.add_term(p, n, a * c);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (Rational64, u32, Rational64)> + '_ {
        self.terms.iter().map(|(&(p, n), &c)| (p, n, c))
    }

    pub fn poles(&self) -> Vec<Rational64> {
        let mut p: Vec<Rational64> = self.terms.keys().map(|k| k.0).collect();
        p.dedup();
        p
    }

    pub fn eval(&self, s: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&(p, n), &c)| to_f64(c) / (s - to_f64(p)).powi(n as i32))
            .sum()
    }

    /// Laurent development at `s0`: principal part and the first `jet` regular coefficients.
    pub fn laurent_at(&self, s0: Rational64, jet: usize) -> MeromorphicValue {
        let order = self.terms.keys().filter(|k| k.0 == s0).map(|k| k.1).max().unwrap_or(0) as usize;
        let mut principal = vec![0.0; order];
        let mut regular = vec![0.0; jet];
        for (&(p, n), &c) in &self.terms {
            let c = to_f64(c);
            if p == s0 {
                principal[order - n as usize] += c;
                continue;
            }
            // (s − p)^{-n} = Σ_j (−1)^j C(n+j−1, j) d^{−n−j} h^j,  d = s0 − p
            let d = to_f64(s0 - p);
            let mut binom = 1.0;
            for (j, r) in regular.iter_mut().enumerate() {
                if j > 0 {
                    binom *= (n as usize + j - 1) as f64 / j as f64;
                }
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                *r += c * sign * binom * d.powi(-(n as i32) - j as i32);
            }
        }
        MeromorphicValue {
            location: to_f64(s0),
            principal,
            regular_jet: regular,
        }
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(mut self, rhs: RationalFunction) -> RationalFunction {
        for (&(p, n), &c) in &rhs.terms {
            self.add_term(p, n, c);
        }
        self
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        self.scale(-Rational64::one())
    }
}

fn fmt_q(r: Rational64) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(p, n), &c)| {
                let base = if p.is_zero() {
                    "s".to_string()
                } else if p.is_negative() {
                    format!("(s + {})", fmt_q(-p))
                } else {
                    format!("(s - {})", fmt_q(p))
                };
                let pow = if n == 1 { base } else { format!("{base}^{n}") };
                format!("{}/{}", fmt_q(c), pow)
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub(crate) fn to_f64(r: Rational64) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn factorial_q(k: u32) -> Rational64 {
    (1..=k as i64).fold(Rational64::one(), |acc, i| acc * Rational64::from_integer(i))
}

/// `∫₀¹ x^{α+s−1} log^k x dx = (−1)^k k!/(s+α)^{k+1}`; the tail `∫₁^∞` is its negative.
pub fn mellin_term(alpha: Rational64, k: u32, side: Side) -> RationalFunction {
    let sign = if k % 2 == 0 { 1 } else { -1 };
    let c = factorial_q(k) * Rational64::from_integer(sign);
    let c = match side {
        Side::UnitInterval => c,
        Side::Tail => -c,
    };
    RationalFunction::pole(-alpha, k + 1, c)
}

/// Unit-interval plus tail Mellin term; identically zero.
pub fn reg_int_zero_check(alpha: Rational64, k: u32) -> RationalFunction {
    mellin_term(alpha, k, Side::UnitInterval) + mellin_term(alpha, k, Side::Tail)
}

/// Laurent data of a meromorphic function at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct MeromorphicValue {
    pub location: f64,
    /// `c_{−p}, …, c_{−1}`
    pub principal: Vec<f64>,
    /// `c₀, c₁, …`
    pub regular_jet: Vec<f64>,
}

impl MeromorphicValue {
    pub fn regular(location: f64, jet: Vec<f64>) -> Self {
        MeromorphicValue {
            location,
            principal: Vec::new(),
            regular_jet: jet,
        }
    }

    pub fn pole_order(&self) -> usize {
        self.principal
            .iter()
            .position(|c| *c != 0.0)
            .map(|i| self.principal.len() - i)
            .unwrap_or(0)
    }

    /// Coefficient of `(s − s0)^n`, zero outside the stored range.
    pub fn coeff(&self, n: i64) -> f64 {
        if n < 0 {
            let p = self.principal.len() as i64;
            if -n > p {
                0.0
            } else {
                self.principal[(p + n) as usize]
            }
        } else {
            self.regular_jet.get(n as usize).copied().unwrap_or(0.0)
        }
    }

    pub fn finite_part(&self) -> f64 {
        self.coeff(0)
    }

    pub fn eval(&self, s: f64) -> f64 {
        let h = s - self.location;
        let p = self.principal.len() as i32;
        let sing: f64 = self
            .principal
            .iter()
            .enumerate()
            .map(|(i, c)| c * h.powi(i as i32 - p))
            .sum();
        let reg: f64 = self
            .regular_jet
            .iter()
            .enumerate()
            .map(|(j, c)| c * h.powi(j as i32))
            .sum();
        sing + reg
    }

    pub fn scaled(&self, c: f64) -> Self {
        MeromorphicValue {
            location: self.location,
            principal: self.principal.iter().map(|x| x * c).collect(),
            regular_jet: self.regular_jet.iter().map(|x| x * c).collect(),
        }
    }

    /// Sum of two developments at the same point.
    pub fn plus(&self, other: &MeromorphicValue) -> Self {
        assert_eq!(self.location, other.location, "Laurent jets at different points");
        let p = self.principal.len().max(other.principal.len());
        let j = self.regular_jet.len().max(other.regular_jet.len());
        MeromorphicValue {
            location: self.location,
            principal: (0..p)
                .map(|i| self.coeff(i as i64 - p as i64) + other.coeff(i as i64 - p as i64))
                .collect(),
            regular_jet: (0..j).map(|i| self.coeff(i as i64) + other.coeff(i as i64)).collect(),
        }
    }

    /// Product with a Taylor series `Σ r_j (s − s0)^j`, keeping `jet` regular terms.
    pub fn times_taylor(&self, r: &[f64], jet: usize) -> Self {
        let p = self.principal.len() as i64;
        let mut principal = vec![0.0; p as usize];
        let mut regular = vec![0.0; jet];
        for n in -p..jet as i64 {
            let mut acc = 0.0;
            for (j, rj) in r.iter().enumerate() {
                acc += self.coeff(n - j as i64) * rj;
            }
            if n < 0 {
                principal[(p + n) as usize] = acc;
            } else {
                regular[n as usize] = acc;
            }
        }
        MeromorphicValue {
            location: self.location,
            principal,
            regular_jet: regular,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn table_entries() {
        assert_eq!(mellin_term(q(0, 1), 0, Side::UnitInterval).to_string(), "1/s");
        assert_eq!(mellin_term(q(0, 1), 1, Side::UnitInterval).to_string(), "-1/s^2");
        assert_eq!(mellin_term(q(-2, 1), 0, Side::Tail).to_string(), "-1/(s - 2)");
        assert!((mellin_term(q(1, 2), 2, Side::UnitInterval).eval(1.5) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn reg_int_zero_is_exact() {
        for a2 in -12..=0 {
            for k in 0..=3 {
                assert!(reg_int_zero_check(q(a2, 2), k).is_zero());
            }
        }
    }

    #[test]
    fn laurent_of_simple_terms() {
        // 1/(s+1) at 0: 1 − s + s²
        let f = mellin_term(q(1, 1), 0, Side::UnitInterval);
        let m = f.laurent_at(q(0, 1), 3);
        assert_eq!(m.regular_jet, vec![1.0, -1.0, 1.0]);
        assert_eq!(m.pole_order(), 0);
        // −1/s² + 2/(s−1)
        let g = mellin_term(q(0, 1), 1, Side::UnitInterval) + RationalFunction::pole(q(1, 1), 1, q(2, 1));
        let m = g.laurent_at(q(0, 1), 2);
        assert_eq!(m.principal, vec![-1.0, 0.0]);
        assert_eq!(m.regular_jet, vec![-2.0, -2.0]);
        assert!((m.eval(0.01) - g.eval(0.01)).abs() < 1e-3);
    }

    #[test]
    fn times_taylor_divides_by_gamma() {
        // (1/s)·(s + γ s²) = 1 + γ s
        let m = RationalFunction::pole(q(0, 1), 1, q(1, 1)).laurent_at(q(0, 1), 2);
        let out = m.times_taylor(&[0.0, 1.0, 0.5], 2);
        assert_eq!(out.coeff(-1), 0.0);
        assert_eq!(out.regular_jet, vec![1.0, 0.5]);
    }
}
