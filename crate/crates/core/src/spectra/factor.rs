//! Closed-form spectral data of the one-factor building blocks.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_rational::Rational64;

use super::geometry::{Boundary, Factor};
use super::Estimate;

/// Terms beyond `e^{-46}` relative are dropped and bounded.
const GAUSS_CUT: f64 = 46.0;
/// Taylor order of the short-time expansion of a finite spectrum.
pub(crate) const TRUNCATED_TAYLOR_ORDER: u32 = 4;

/// Bound for `Σ_{k ≥ k0} e^{-β k²}`, `k0 ≥ 1`.
pub(crate) fn gauss_tail(beta: f64, k0: f64) -> f64 {
    (-beta * k0 * k0).exp() / (1.0 - (-beta * (2.0 * k0 + 1.0)).exp())
}

fn cut_index(beta: f64) -> f64 {
    ((GAUSS_CUT / beta).sqrt()).ceil() + 1.0
}

/// Value of the short-time terms at `t` and the remainder `trace − terms`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Split {
    pub short: f64,
    pub rem: Estimate,
}

impl Split {
    pub fn zero() -> Self {
        Split {
            short: 0.0,
            rem: Estimate::exact(0.0),
        }
    }

    pub fn one() -> Self {
        Split {
            short: 1.0,
            rem: Estimate::exact(0.0),
        }
    }

    pub fn add(&self, o: &Split) -> Split {
        Split {
            short: self.short + o.short,
            rem: self.rem + o.rem,
        }
    }

    pub fn mul(&self, o: &Split) -> Split {
        Split {
            short: self.short * o.short,
            rem: o.rem.scale(self.short) + self.rem.scale(o.short) + self.rem * o.rem,
        }
    }
}

/// Kernel dimension and positive-spectrum trace `Σ_{λ>0} m e^{-tλ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct KernelSplit {
    pub kernel: f64,
    pub positive: Estimate,
}

impl KernelSplit {
    pub fn zero() -> Self {
        KernelSplit {
            kernel: 0.0,
            positive: Estimate::exact(0.0),
        }
    }

    pub fn one() -> Self {
        KernelSplit {
            kernel: 1.0,
            positive: Estimate::exact(0.0),
        }
    }

    pub fn add(&self, o: &KernelSplit) -> KernelSplit {
        KernelSplit {
            kernel: self.kernel + o.kernel,
            positive: self.positive + o.positive,
        }
    }

    pub fn mul(&self, o: &KernelSplit) -> KernelSplit {
        KernelSplit {
            kernel: self.kernel * o.kernel,
            positive: o.positive.scale(self.kernel) + self.positive.scale(o.kernel) + self.positive * o.positive,
        }
    }

    pub fn total(&self) -> Estimate {
        self.positive + Estimate::exact(self.kernel)
    }
}

struct CircleParts {
    kernel: f64,
    positive: Estimate,
    leading: f64,
    rem: Estimate,
}

/// Rank-one circle with holonomy `theta`: eigenvalues `((2πn + θ)/L)²`.
fn circle(length: f64, theta: f64, t: f64) -> CircleParts {
    let kernel = if theta == 0.0 { 1.0 } else { 0.0 };
    let leading = length / (4.0 * PI * t).sqrt();
    let t_switch = length * length / (4.0 * PI * PI);
    if t < t_switch {
        let gamma = length * length / (4.0 * t);
        let kmax = cut_index(gamma) as i64;
        let mut s = 0.0;
        for k in 1..=kmax {
            let kf = k as f64;
            s += (-gamma * kf * kf).exp() * (kf * theta).cos();
        }
        let rem = Estimate::new(
            2.0 * leading * s,
            2.0 * leading * gauss_tail(gamma, (kmax + 1) as f64) + 4.0 * f64::EPSILON * leading,
        );
        let total = Estimate::exact(leading) + rem;
        CircleParts {
            kernel,
            positive: total - Estimate::exact(kernel),
            leading,
            rem,
        }
    } else {
        let beta = t * (2.0 * PI / length).powi(2);
        let a = theta / (2.0 * PI);
        let nmax = cut_index(beta) as i64;
        let mut s = 0.0;
        // fixed order: n = 0, 1, -1, 2, -2, ...
        for n in 0..=nmax {
            for m in if n == 0 { vec![0] } else { vec![n, -n] } {
                let x = m as f64 + a;
                if x != 0.0 {
                    s += (-beta * x * x).exp();
                }
            }
        }
        let tail = gauss_tail(beta, (nmax + 1) as f64) + gauss_tail(beta, nmax as f64);
        let positive = Estimate::new(s, tail + 4.0 * f64::EPSILON * s);
        CircleParts {
            kernel,
            positive,
            leading,
            rem: positive + Estimate::exact(kernel) - Estimate::exact(leading),
        }
    }
}

struct IntervalParts {
    positive: Estimate,
    /// `Σ_{n∈ℤ} e^{-t(πn/L)²}` minus its leading term `L/√(πt)`
    rem: Estimate,
}

fn interval(length: f64, t: f64) -> IntervalParts {
    let lead = length / (PI * t).sqrt();
    if t < length * length / (PI * PI) {
        let gamma = length * length / t;
        let kmax = cut_index(gamma) as i64;
        let s: f64 = (1..=kmax).map(|k| (-gamma * (k * k) as f64).exp()).sum();
        let rem = Estimate::new(
            2.0 * lead * s,
            2.0 * lead * gauss_tail(gamma, (kmax + 1) as f64) + 4.0 * f64::EPSILON * lead,
        );
        // positive = (S − 1)/2 with S = lead + rem
        IntervalParts {
            positive: (Estimate::exact(lead - 1.0) + rem).scale(0.5),
            rem,
        }
    } else {
        let beta = t * (PI / length).powi(2);
        let nmax = cut_index(beta) as i64;
        let s: f64 = (1..=nmax).map(|n| (-beta * (n * n) as f64).exp()).sum();
        let positive = Estimate::new(s, gauss_tail(beta, (nmax + 1) as f64) + 4.0 * f64::EPSILON * s);
        IntervalParts {
            positive,
            rem: positive.scale(2.0) + Estimate::exact(1.0 - lead),
        }
    }
}

fn interval_is_dirichlet(boundary: Boundary, degree: usize) -> bool {
    matches!((boundary, degree), (Boundary::Relative, 0) | (Boundary::Absolute, 1))
}

/// `e^{-x} − Σ_{j≤J} (−x)^j / j!`
fn taylor_remainder(x: f64, order: u32) -> f64 {
    if x < 1.0 {
        let mut term = 1.0;
        for j in 1..=order {
            term *= -x / j as f64;
        }
        let mut acc = 0.0;
        for j in order + 1..order + 40 {
            term *= -x / j as f64;
            acc += term;
            if term.abs() < 1e-18 * acc.abs() {
                break;
            }
        }
        acc
    } else {
        let mut poly = 0.0;
        let mut term = 1.0;
        for j in 0..=order {
            if j > 0 {
                term *= -x / j as f64;
            }
            poly += term;
        }
        (-x).exp() - poly
    }
}

impl Factor {
    pub fn dim(&self) -> usize {
        match self {
            Factor::Point => 0,
            Factor::Circle { .. } | Factor::Interval { .. } => 1,
            Factor::Truncated { degrees } => degrees.len() - 1,
        }
    }

    pub fn betti(&self, d: usize) -> u64 {
        match self {
            Factor::Point => 1,
            Factor::Circle { holonomies, .. } => holonomies.iter().filter(|h| **h == 0.0).count() as u64,
            Factor::Interval { boundary, .. } => u64::from(!interval_is_dirichlet(*boundary, d)),
            Factor::Truncated { degrees } => degrees[d].iter().filter(|e| e.0 == 0.0).map(|e| e.1).sum(),
        }
    }

    pub fn kernel_split(&self, d: usize, t: f64) -> KernelSplit {
        match self {
            Factor::Point => KernelSplit::one(),
            Factor::Circle { length, holonomies } => holonomies.iter().fold(KernelSplit::zero(), |acc, &h| {
                let c = circle(*length, h, t);
                acc.add(&KernelSplit {
                    kernel: c.kernel,
                    positive: c.positive,
                })
            }),
            Factor::Interval { length, .. } => KernelSplit {
                kernel: self.betti(d) as f64,
                positive: interval(*length, t).positive,
            },
            Factor::Truncated { degrees } => {
                let mut kernel = 0.0;
                let mut s = 0.0;
                for &(l, m) in &degrees[d] {
                    if l == 0.0 {
                        kernel += m as f64;
                    } else {
                        s += m as f64 * (-t * l).exp();
                    }
                }
                KernelSplit {
                    kernel,
                    positive: Estimate::new(s, 4.0 * f64::EPSILON * s),
                }
            }
        }
    }

    /// Short-time terms as powers of `t`.
    pub fn short_terms(&self, d: usize) -> BTreeMap<Rational64, f64> {
        let mut out = BTreeMap::new();
        match self {
            Factor::Point => {
                out.insert(Rational64::from_integer(0), 1.0);
            }
            Factor::Circle { length, holonomies } => {
                out.insert(
                    Rational64::new(-1, 2),
                    holonomies.len() as f64 * length / (4.0 * PI).sqrt(),
                );
            }
            Factor::Interval { length, boundary } => {
                out.insert(Rational64::new(-1, 2), length / (4.0 * PI).sqrt());
                let c = if interval_is_dirichlet(*boundary, d) { -0.5 } else { 0.5 };
                out.insert(Rational64::from_integer(0), c);
            }
            Factor::Truncated { degrees } => {
                let mut fact = 1.0;
                for j in 0..=TRUNCATED_TAYLOR_ORDER {
                    if j > 0 {
                        fact *= j as f64;
                    }
                    let moment: f64 = degrees[d].iter().map(|&(l, m)| m as f64 * l.powi(j as i32)).sum();
                    let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                    out.insert(Rational64::from_integer(j as i64), sign * moment / fact);
                }
            }
        }
        out
    }

    pub fn split(&self, d: usize, t: f64) -> Split {
        match self {
            Factor::Point => Split::one(),
            Factor::Circle { length, holonomies } => holonomies.iter().fold(Split::zero(), |acc, &h| {
                let c = circle(*length, h, t);
                acc.add(&Split {
                    short: c.leading,
                    rem: c.rem,
                })
            }),
            Factor::Interval { length, .. } => {
                let p = interval(*length, t);
                let short: f64 = self
                    .short_terms(d)
                    .iter()
                    .map(|(a, c)| c * t.powf(super::q_to_f64(*a)))
                    .sum();
                Split {
                    short,
                    rem: p.rem.scale(0.5),
                }
            }
            Factor::Truncated { degrees } => {
                let short: f64 = self
                    .short_terms(d)
                    .iter()
                    .map(|(a, c)| c * t.powf(super::q_to_f64(*a)))
                    .sum();
                let rem: f64 = degrees[d]
                    .iter()
                    .map(|&(l, m)| m as f64 * taylor_remainder(t * l, TRUNCATED_TAYLOR_ORDER))
                    .sum();
                Split {
                    short,
                    rem: Estimate::new(
                        rem,
                        8.0 * f64::EPSILON * (rem.abs() + short.abs() * (t * 1e-3).min(1.0)),
                    ),
                }
            }
        }
    }

    pub fn eigenvalues_below(&self, d: usize, cap: f64) -> Vec<(f64, u64)> {
        let mut out = Vec::new();
        match self {
            Factor::Point => out.push((0.0, 1)),
            Factor::Circle { length, holonomies } => {
                let r = length * cap.sqrt();
                for &h in holonomies {
                    let lo = ((-r - h) / (2.0 * PI)).floor() as i64;
                    let hi = ((r - h) / (2.0 * PI)).ceil() as i64;
                    for n in lo..=hi {
                        let l = ((2.0 * PI * n as f64 + h) / length).powi(2);
                        if l <= cap {
                            out.push((l, 1));
                        }
                    }
                }
            }
            Factor::Interval { length, boundary } => {
                let start = if interval_is_dirichlet(*boundary, d) { 1 } else { 0 };
                let mut n = start;
                loop {
                    let l = (PI * n as f64 / length).powi(2);
                    if l > cap {
                        break;
                    }
                    out.push((l, 1));
                    n += 1;
                }
            }
            Factor::Truncated { degrees } => out.extend(degrees[d].iter().filter(|e| e.0 <= cap)),
        }
        merge_eigenvalues(out)
    }

    /// Coefficients `c_p` of a bound `N(λ) ≤ Σ c_p λ^{p/2}` on the counting function.
    pub fn weyl(&self, d: usize) -> Vec<f64> {
        match self {
            Factor::Point => vec![1.0],
            Factor::Circle { length, holonomies } => {
                let r = holonomies.len() as f64;
                vec![r, r * length / PI]
            }
            Factor::Interval { length, .. } => vec![1.0, length / PI],
            Factor::Truncated { degrees } => vec![degrees[d].iter().map(|e| e.1 as f64).sum()],
        }
    }
}

/// Sort and merge equal eigenvalues.
pub(crate) fn merge_eigenvalues(mut v: Vec<(f64, u64)>) -> Vec<(f64, u64)> {
    v.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out: Vec<(f64, u64)> = Vec::with_capacity(v.len());
    for (l, m) in v {
        match out.last_mut() {
            Some(last) if (last.0 - l).abs() <= 1e-12 * l.max(1.0) => last.1 += m,
            _ => out.push((l, m)),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_and_direct_circle_agree_at_crossover() {
        for &(l, th) in &[(1.0, 0.0), (2.0 * PI, 0.0), (2.0 * PI, PI), (10.0, 2.0)] {
            let ts = l * l / (4.0 * PI * PI);
            let below = circle(l, th, ts * (1.0 - 1e-12));
            let above = circle(l, th, ts);
            let a = below.positive.value + below.kernel;
            let b = above.positive.value + above.kernel;
            assert!((a - b).abs() < 1e-12, "L={l} θ={th}: {a} vs {b}");
        }
    }

    #[test]
    fn dual_and_direct_interval_agree_at_crossover() {
        for l in [1.0, PI, 7.0] {
            let ts = l * l / (PI * PI);
            let a = interval(l, ts * (1.0 - 1e-12)).positive.value;
            let b = interval(l, ts).positive.value;
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn taylor_remainder_is_accurate() {
        for x in [1e-6f64, 0.3, 0.99, 1.5, 20.0] {
            let direct = (-x).exp() - (1.0 - x + x * x / 2.0 - x * x * x / 6.0 + x.powi(4) / 24.0);
            let r = taylor_remainder(x, 4);
            assert!((r - direct).abs() <= 4e-16 || x < 1e-3, "{x}");
        }
        let x = 1e-3f64;
        assert!((taylor_remainder(x, 4) - (-x.powi(5) / 120.0 + x.powi(6) / 720.0 - x.powi(7) / 5040.0)).abs() < 1e-28);
    }
}
