//! Special functions used as independent oracles and as building blocks:
//! Hurwitz and Riemann zeta (Euler–Maclaurin, with the s-derivative), the
//! log-gamma function and the Taylor jet of `1/Γ` at the origin.

use std::f64::consts::PI;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `B_{2j}` for j = 1..=13.
const BERNOULLI_EVEN: [f64; 13] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
];

/// Number of explicit terms before the Euler–Maclaurin tail.
const EM_SHIFT: usize = 24;
/// Number of Bernoulli correction terms actually used.
const EM_TERMS: usize = 12;

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, i| acc * i as f64)
}

/// Value and s-derivative of `ζ(s, a) = Σ_{n≥0} (n+a)^{-s}` at real `s ≠ 1`, `a > 0`.
///
/// Euler–Maclaurin summation after `EM_SHIFT` explicit terms; the returned
/// third component bounds the truncation error of the value (the first omitted
/// Bernoulli term).
pub fn hurwitz_zeta_with_derivative(s: f64, a: f64) -> (f64, f64, f64) {
    assert!(a > 0.0, "Hurwitz zeta needs a > 0, got {a}");
    assert!((s - 1.0).abs() > 1e-12, "Hurwitz zeta has a pole at s = 1");

    let mut value = 0.0;
    let mut deriv = 0.0;
    for n in 0..EM_SHIFT {
        let x = n as f64 + a;
        let p = x.powf(-s);
        value += p;
        deriv -= x.ln() * p;
    }
    let x = EM_SHIFT as f64 + a;
    let lx = x.ln();
    let xs = x.powf(1.0 - s);
    value += xs / (s - 1.0);
    deriv += -lx * xs / (s - 1.0) - xs / ((s - 1.0) * (s - 1.0));
    let half = 0.5 * x.powf(-s);
    value += half;
    deriv -= lx * half;

    let mut bound = 0.0;
    for j in 1..=EM_TERMS + 1 {
        // Pochhammer (s)_{2j-1} and its derivative
        let mut poch = 1.0;
        let mut dpoch = 0.0;
        for i in 0..(2 * j - 1) {
            let f = s + i as f64;
            dpoch = dpoch * f + poch;
            poch *= f;
        }
        let c = BERNOULLI_EVEN[j - 1] / factorial(2 * j);
        let xp = x.powf(-s - 2.0 * j as f64 + 1.0);
        let term = c * poch * xp;
        if j == EM_TERMS + 1 {
            bound = term.abs();
            break;
        }
        value += term;
        deriv += c * xp * (dpoch - lx * poch);
    }
    (value, deriv, bound)
}

pub fn hurwitz_zeta(s: f64, a: f64) -> f64 {
    hurwitz_zeta_with_derivative(s, a).0
}

/// `∂_s ζ(s, a)`.
pub fn hurwitz_zeta_ds(s: f64, a: f64) -> f64 {
    hurwitz_zeta_with_derivative(s, a).1
}

pub fn riemann_zeta(s: f64) -> f64 {
    hurwitz_zeta(s, 1.0)
}

pub fn riemann_zeta_ds(s: f64) -> f64 {
    hurwitz_zeta_ds(s, 1.0)
}

/// `ln Γ(x)` for `x > 0` by upward recurrence and the Stirling series.
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma needs x > 0, got {x}");
    let mut shift = 0.0;
    let mut y = x;
    while y < 15.0 {
        shift += y.ln();
        y += 1.0;
    }
    let mut series = (y - 0.5) * y.ln() - y + 0.5 * (2.0 * PI).ln();
    let y2 = y * y;
    let mut yp = y;
    for (j, b) in BERNOULLI_EVEN.iter().enumerate().take(8) {
        let n = 2 * (j + 1);
        series += b / ((n * (n - 1)) as f64 * yp);
        yp *= y2;
    }
    series - shift
}

/// `Γ(x)` for real `x` away from the non-positive integers.
pub fn gamma(x: f64) -> f64 {
    if x > 0.0 {
        ln_gamma(x).exp()
    } else {
        assert!(x.fract() != 0.0, "Γ has a pole at {x}");
        // reflection: Γ(x)Γ(1-x) = π / sin(πx)
        PI / ((PI * x).sin() * ln_gamma(1.0 - x).exp())
    }
}

/// Taylor coefficients `r_0, …, r_{n-1}` of `1/Γ(s) = Σ r_j s^j` at `s = 0`.
///
/// Uses `1/Γ(s) = s·exp(γs − Σ_{k≥2} (−1)^k ζ(k) s^k / k)`.
pub fn reciprocal_gamma_jet(n: usize) -> Vec<f64> {
    if n == 0 {
        return Vec::new();
    }
    // exponent series e(s) = Σ e_k s^k, k = 1..n-1
    let mut e = vec![0.0; n];
    if n > 1 {
        e[1] = EULER_GAMMA;
    }
    for (k, ek) in e.iter_mut().enumerate().skip(2) {
        let sign = if k % 2 == 0 { -1.0 } else { 1.0 };
        *ek = sign * riemann_zeta(k as f64) / k as f64;
    }
    // exp of a series with zero constant term: p' = e' p
    let mut p = vec![0.0; n];
    p[0] = 1.0;
    for m in 1..n {
        let mut acc = 0.0;
        for k in 1..=m {
            acc += k as f64 * e[k] * p[m - k];
        }
        p[m] = acc / m as f64;
    }
    let mut out = vec![0.0; n];
    out[1..n].copy_from_slice(&p[..(n - 1)]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn riemann_values() {
        assert!((riemann_zeta(2.0) - PI * PI / 6.0).abs() < 1e-14);
        assert!((riemann_zeta(4.0) - PI.powi(4) / 90.0).abs() < 1e-14);
        assert!((riemann_zeta(0.0) + 0.5).abs() < 1e-14);
        assert!((riemann_zeta(-1.0) + 1.0 / 12.0).abs() < 1e-14);
        assert!((riemann_zeta_ds(0.0) + 0.5 * (2.0 * PI).ln()).abs() < 1e-13);
    }

    #[test]
    fn hurwitz_at_one_is_riemann() {
        for &s in &[-2.5, -0.3, 0.0, 0.5, 2.0, 3.7] {
            let direct: f64 = if s > 1.5 {
                let n = 200_000f64;
                (1..200_000).map(|n| (n as f64).powf(-s)).sum::<f64>() + n.powf(1.0 - s) / (s - 1.0) + 0.5 * n.powf(-s)
            } else {
                riemann_zeta(s)
            };
            assert!((hurwitz_zeta(s, 1.0) - direct).abs() < 1e-9 * direct.abs().max(1.0));
        }
    }

    #[test]
    fn lerch_formula_matches_em_derivative() {
        for &a in &[0.1, 1.0 / 6.0, 0.25, 0.5, 0.9, 1.0, 2.5] {
            let lerch = ln_gamma(a) - 0.5 * (2.0 * PI).ln();
            assert!((hurwitz_zeta_ds(0.0, a) - lerch).abs() < 1e-12, "a = {a}");
            assert!((hurwitz_zeta(0.0, a) - (0.5 - a)).abs() < 1e-13);
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let h = 1e-5;
        for &(s, a) in &[(2.0, 0.3), (-0.5, 0.75), (0.2, 1.0)] {
            let fd = (hurwitz_zeta(s + h, a) - hurwitz_zeta(s - h, a)) / (2.0 * h);
            assert!((fd - hurwitz_zeta_ds(s, a)).abs() < 1e-8);
        }
    }

    #[test]
    fn gamma_values() {
        assert!((gamma(5.0) - 24.0).abs() < 1e-11);
        assert!((gamma(0.5) - PI.sqrt()).abs() < 1e-13, "{}", gamma(0.5) - PI.sqrt());
        assert!((gamma(-0.5) + 2.0 * PI.sqrt()).abs() < 1e-13);
        assert!((ln_gamma(100.0) - 359.134_205_369_575_4).abs() < 1e-10);
    }

    #[test]
    fn reciprocal_gamma_jet_known_terms() {
        let r = reciprocal_gamma_jet(4);
        assert_eq!(r[0], 0.0);
        assert!((r[1] - 1.0).abs() < 1e-15);
        assert!((r[2] - EULER_GAMMA).abs() < 1e-15);
        let c3 = EULER_GAMMA * EULER_GAMMA / 2.0 - PI * PI / 12.0;
        assert!((r[3] - c3).abs() < 1e-13);
        // compare with 1/Γ at a small s
        let s: f64 = 1e-3;
        let series: f64 = reciprocal_gamma_jet(8)
            .iter()
            .enumerate()
            .map(|(j, c)| c * s.powi(j as i32))
            .sum();
        assert!((series - 1.0 / gamma(s)).abs() < 1e-14);
    }
}
