use std::collections::{BTreeMap, VecDeque};

use num_rational::Rational64;

use super::factor::{merge_eigenvalues, KernelSplit, Split, TRUNCATED_TAYLOR_ORDER};

/// Stand-in order for remainders that vanish faster than any power.
pub const EXPONENTIAL_ORDER: f64 = 40.0;
use super::geometry::{factors_of, Factor, Geometry};
use super::{Estimate, SpectraError};
use crate::reg::ExpTerm;

/// Per-degree spectra of a model geometry, assembled from one-factor pieces.
#[derive(Debug, Clone)]
pub struct SpectralModel {
    geometry: Geometry,
    factors: Vec<Factor>,
    dim: usize,
    betti: Vec<u64>,
    chi: i64,
}

/// Polynomial bound `N(λ) ≤ Σ_p c_p λ^{p/2}` on the eigenvalue counting function.
#[derive(Debug, Clone, PartialEq)]
pub struct WeylBound {
    pub coeffs: Vec<f64>,
}

impl WeylBound {
    pub fn count(&self, lambda: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(p, c)| c * lambda.powf(p as f64 / 2.0))
            .sum()
    }

    /// Bound on `Σ_{λ > cap} e^{-tλ}`.
    pub fn heat_tail(&self, t: f64, cap: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(p, c)| {
                let q = p as f64 / 2.0;
                let d = t - q / cap;
                if *c == 0.0 {
                    0.0
                } else if d <= 0.0 {
                    f64::INFINITY
                } else {
                    c * t * cap.powf(q) * (-t * cap).exp() / d
                }
            })
            .sum()
    }

    /// Bound on `Σ_{λ > cap} λ^{-s}`.
    pub fn dirichlet_tail(&self, s: f64, cap: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(p, c)| {
                let q = p as f64 / 2.0;
                if *c == 0.0 {
                    0.0
                } else if s <= q {
                    f64::INFINITY
                } else {
                    s * c * cap.powf(q - s) / (s - q)
                }
            })
            .sum()
    }

    fn cutoff(bound: impl Fn(f64) -> f64, tol: f64) -> Option<f64> {
        let mut cap = 1.0;
        for _ in 0..200 {
            if bound(cap) < tol {
                return Some(cap);
            }
            cap *= 2.0;
        }
        None
    }

    pub fn cutoff_for_heat(&self, t: f64, tol: f64) -> Option<f64> {
        WeylBound::cutoff(|c| self.heat_tail(t, c), tol)
    }

    pub fn cutoff_for_dirichlet(&self, s: f64, tol: f64) -> Option<f64> {
        WeylBound::cutoff(|c| self.dirichlet_tail(s, c), tol)
    }

    fn add(&self, o: &WeylBound) -> WeylBound {
        let n = self.coeffs.len().max(o.coeffs.len());
        WeylBound {
            coeffs: (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&0.0) + o.coeffs.get(i).unwrap_or(&0.0))
                .collect(),
        }
    }

    fn mul(&self, o: &WeylBound) -> WeylBound {
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return WeylBound { coeffs: Vec::new() };
        }
        let mut c = vec![0.0; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        WeylBound { coeffs: c }
    }
}

/// Plain and degree-weighted supertraces `Σ(−1)^k Tr_k`, `Σ(−1)^k k Tr_k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Supertraces {
    pub plain: Estimate,
    pub weighted: Estimate,
}

type Poly = BTreeMap<Rational64, f64>;

fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    for (e, c) in b {
        *out.entry(*e).or_insert(0.0) += c;
    }
    out
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            *out.entry(ea + eb).or_insert(0.0) += ca * cb;
        }
    }
    out
}

impl SpectralModel {
    pub fn build(geometry: &Geometry) -> Result<Self, SpectraError> {
        let factors = factors_of(geometry)?;
        let mut model = SpectralModel {
            geometry: geometry.clone(),
            dim: factors.iter().map(|f| f.dim()).sum(),
            factors,
            betti: Vec::new(),
            chi: 0,
        };
        model.betti = model.convolve(|f, d| f.betti(d), 1, 0, |a, b| a + b, |a, b| a * b);
        model.chi = model
            .betti
            .iter()
            .enumerate()
            .map(|(k, b)| if k % 2 == 0 { *b as i64 } else { -(*b as i64) })
            .sum();
        Ok(model)
    }

    pub fn geometry(&self) -> &Geometry {
        &self.geometry
    }

    pub fn label(&self) -> String {
        self.geometry.label()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn betti(&self, k: usize) -> u64 {
        self.betti.get(k).copied().unwrap_or(0)
    }

    pub fn betti_numbers(&self) -> &[u64] {
        &self.betti
    }

    pub fn chi(&self) -> i64 {
        self.chi
    }

    /// True when every degree has finitely many eigenvalues.
    pub fn is_finite(&self) -> bool {
        self.factors
            .iter()
            .all(|f| matches!(f, Factor::Point | Factor::Truncated { .. }))
    }

    /// Order `r` with `|short_remainder| = O(t^r)` as `t → 0`; exponentially
    /// small remainders report `EXPONENTIAL_ORDER`.
    pub fn short_remainder_order(&self) -> f64 {
        if !self.factors.iter().any(|f| matches!(f, Factor::Truncated { .. })) {
            return EXPONENTIAL_ORDER;
        }
        let lengths = self
            .factors
            .iter()
            .filter(|f| matches!(f, Factor::Circle { .. } | Factor::Interval { .. }))
            .count();
        (TRUNCATED_TAYLOR_ORDER + 1) as f64 - lengths as f64 / 2.0
    }

    /// Smallest length among the factors, the natural short-time scale.
    pub fn min_length(&self) -> Option<f64> {
        self.factors
            .iter()
            .filter_map(|f| match f {
                Factor::Circle { length, .. } | Factor::Interval { length, .. } => Some(*length),
                _ => None,
            })
            .min_by(|a, b| a.total_cmp(b))
    }

    /// Flat tori (and the point): degree-`k` spectrum is `C(m,k)` copies of the function spectrum.
    pub fn hodge_multiplicities(&self) -> Option<Vec<i64>> {
        let flat = self.factors.iter().all(|f| match f {
            Factor::Point => true,
            Factor::Circle { holonomies, .. } => holonomies.len() == 1,
            _ => false,
        });
        if !flat {
            return None;
        }
        Some(self.convolve(|_, _| 1i64, 1, 0, |a, b| a + b, |a, b| a * b))
    }

    fn check(&self, k: usize, t: Option<f64>) -> Result<(), SpectraError> {
        if k > self.dim {
            return Err(SpectraError::Degree { k, dim: self.dim });
        }
        if let Some(t) = t {
            if !(t > 0.0 && t.is_finite()) {
                return Err(SpectraError::InvalidArgument(format!("t must be positive, got {t}")));
            }
        }
        Ok(())
    }

    fn convolve<T: Clone>(
        &self,
        mut per: impl FnMut(&Factor, usize) -> T,
        unit: T,
        zero: T,
        add: impl Fn(&T, &T) -> T,
        mul: impl Fn(&T, &T) -> T,
    ) -> Vec<T> {
        let mut acc = vec![unit];
        for f in &self.factors {
            let vals: Vec<T> = (0..=f.dim()).map(|d| per(f, d)).collect();
            let mut next = vec![zero.clone(); acc.len() + f.dim()];
            for (i, a) in acc.iter().enumerate() {
                for (d, v) in vals.iter().enumerate() {
                    next[i + d] = add(&next[i + d], &mul(a, v));
                }
            }
            acc = next;
        }
        acc
    }

    fn kernel_split(&self, k: usize, t: f64) -> KernelSplit {
        self.convolve(
            |f, d| f.kernel_split(d, t),
            KernelSplit::one(),
            KernelSplit::zero(),
            |a, b| a.add(b),
            |a, b| a.mul(b),
        )
        .swap_remove(k)
    }

    /// `Tr e^{-tΔ_k}` with its truncation bound.
    pub fn heat_trace(&self, k: usize, t: f64) -> Result<Estimate, SpectraError> {
        self.check(k, Some(t))?;
        Ok(self.kernel_split(k, t).total())
    }

    /// As `heat_trace`, failing when the achieved bound exceeds `tol`.
    pub fn heat_trace_tol(&self, k: usize, t: f64, tol: f64) -> Result<Estimate, SpectraError> {
        let e = self.heat_trace(k, t)?;
        if e.error > tol {
            return Err(SpectraError::ToleranceUnreachable {
                achieved: e.error,
                requested: tol,
            });
        }
        Ok(e)
    }

    /// `Σ_{λ>0} m(λ) e^{-tλ}` in degree `k`.
    pub fn positive_trace(&self, k: usize, t: f64) -> Result<Estimate, SpectraError> {
        self.check(k, Some(t))?;
        Ok(self.kernel_split(k, t).positive)
    }

    /// Exact short-time terms `a_j t^{α_j}` of the degree-`k` trace.
    pub fn short_time_terms(&self, k: usize) -> Result<Vec<ExpTerm>, SpectraError> {
        self.check(k, None)?;
        let p = self
            .convolve(
                |f, d| f.short_terms(d),
                Poly::from([(Rational64::from_integer(0), 1.0)]),
                Poly::new(),
                poly_add,
                poly_mul,
            )
            .swap_remove(k);
        Ok(p.into_iter()
            .filter(|(_, c)| *c != 0.0)
            .map(|(a, c)| ExpTerm::new(a, 0, c))
            .collect())
    }

    /// `Tr e^{-tΔ_k} − Σ a_j t^{α_j}`, computed without cancellation.
    pub fn short_remainder(&self, k: usize, t: f64) -> Result<Estimate, SpectraError> {
        self.check(k, Some(t))?;
        Ok(self
            .convolve(
                |f, d| f.split(d, t),
                Split::one(),
                Split::zero(),
                |a, b| a.add(b),
                |a, b| a.mul(b),
            )
            .swap_remove(k)
            .rem)
    }

    /// All eigenvalues `≤ cap` in degree `k`, merged and sorted, zero modes included.
    pub fn eigenvalues_below(&self, k: usize, cap: f64) -> Result<Vec<(f64, u64)>, SpectraError> {
        self.check(k, None)?;
        let lists = self.convolve(
            |f, d| f.eigenvalues_below(d, cap),
            vec![(0.0, 1)],
            Vec::new(),
            |a, b| merge_eigenvalues(a.iter().chain(b).copied().collect()),
            |a, b| {
                let mut out = Vec::new();
                for &(la, ma) in a {
                    for &(lb, mb) in b {
                        if la + lb <= cap {
                            out.push((la + lb, ma * mb));
                        }
                    }
                }
                merge_eigenvalues(out)
            },
        );
        Ok(lists.into_iter().nth(k).unwrap_or_default())
    }

    pub fn weyl_bound(&self, k: usize) -> Result<WeylBound, SpectraError> {
        self.check(k, None)?;
        Ok(self
            .convolve(
                |f, d| WeylBound { coeffs: f.weyl(d) },
                WeylBound { coeffs: vec![1.0] },
                WeylBound { coeffs: Vec::new() },
                |a, b| a.add(b),
                |a, b| a.mul(b),
            )
            .swap_remove(k))
    }

    /// Lazy nondecreasing stream of `(λ, m)` in degree `k`.
    pub fn eigen_stream(&self, k: usize) -> Result<EigenStream<'_>, SpectraError> {
        self.check(k, None)?;
        Ok(EigenStream {
            model: self,
            k,
            done_below: -1.0,
            cap: 16.0,
            buffer: VecDeque::new(),
        })
    }

    /// Direct sum `Σ m e^{-tλ}` over an enumerated spectrum plus the Weyl tail bound.
    pub fn heat_trace_by_enumeration(&self, k: usize, t: f64, tol: f64) -> Result<Estimate, SpectraError> {
        self.check(k, Some(t))?;
        let weyl = self.weyl_bound(k)?;
        let cap = weyl.cutoff_for_heat(t, tol).ok_or(SpectraError::ToleranceUnreachable {
            achieved: f64::INFINITY,
            requested: tol,
        })?;
        let eig = self.eigenvalues_below(k, cap)?;
        let s: f64 = eig.iter().map(|&(l, m)| m as f64 * (-t * l).exp()).sum();
        Ok(Estimate::new(s, weyl.heat_tail(t, cap) + 8.0 * f64::EPSILON * s))
    }

    pub fn supertraces(&self, t: f64) -> Result<Supertraces, SpectraError> {
        let mut plain = Estimate::exact(0.0);
        let mut weighted = Estimate::exact(0.0);
        for k in 0..=self.dim {
            let tr = self.heat_trace(k, t)?;
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            plain = plain + tr.scale(sign);
            weighted = weighted + tr.scale(sign * k as f64);
        }
        Ok(Supertraces { plain, weighted })
    }
}

pub struct EigenStream<'a> {
    model: &'a SpectralModel,
    k: usize,
    done_below: f64,
    cap: f64,
    buffer: VecDeque<(f64, u64)>,
}

impl Iterator for EigenStream<'_> {
    type Item = (f64, u64);

    fn next(&mut self) -> Option<(f64, u64)> {
        while self.buffer.is_empty() {
            if self.model.is_finite() && self.done_below >= 0.0 {
                let all = self.model.eigenvalues_below(self.k, f64::MAX).ok()?;
                if all.last().map_or(true, |e| e.0 <= self.done_below) {
                    return None;
                }
            }
            let window = self.model.eigenvalues_below(self.k, self.cap).ok()?;
            self.buffer.extend(window.into_iter().filter(|e| e.0 > self.done_below));
            self.done_below = self.cap;
            self.cap *= 2.0;
        }
        self.buffer.pop_front()
    }
}

/// `A × B`, checked by comparing the factored traces against direct enumeration
/// of the summed spectra.
pub fn product_model(a: &SpectralModel, b: &SpectralModel) -> Result<SpectralModel, SpectraError> {
    let g = Geometry::product(vec![a.geometry.clone(), b.geometry.clone()]);
    let p = SpectralModel::build(&g)?;
    let t = 1.0;
    for k in 0..=p.dim {
        let mut factored = Estimate::exact(0.0);
        for i in 0..=a.dim.min(k) {
            let j = k - i;
            if j <= b.dim {
                factored = factored + a.heat_trace(i, t)? * b.heat_trace(j, t)?;
            }
        }
        let direct = p.heat_trace_by_enumeration(k, t, 1e-13)?;
        let bound = 1e-10 + factored.error + direct.error;
        if (direct.value - factored.value).abs() > bound {
            return Err(SpectraError::ProductMismatch {
                degree: k,
                direct: direct.value,
                factored: factored.value,
            });
        }
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::super::Boundary;
    use super::*;
    use std::f64::consts::PI;

    fn circle(l: f64, h: f64) -> SpectralModel {
        SpectralModel::build(&Geometry::circle(l, h)).unwrap()
    }

    #[test]
    fn circle_spectra() {
        let c = circle(2.0 * PI, 0.0);
        let e = c.eigenvalues_below(0, 4.0).unwrap();
        assert_eq!(e, vec![(0.0, 1), (1.0, 2), (4.0, 2)]);
        assert_eq!(c.betti_numbers(), &[1, 1]);
        let tw = circle(2.0 * PI, PI);
        assert_eq!(tw.betti_numbers(), &[0, 0]);
        assert_eq!(tw.eigenvalues_below(0, 3.0).unwrap(), vec![(0.25, 2), (2.25, 2)]);
    }

    #[test]
    fn heat_trace_values() {
        let t = SpectralModel::build(&Geometry::truncated(&[(1.0, 1)])).unwrap();
        assert!((t.heat_trace(0, 1.0).unwrap().value - (-1f64).exp()).abs() < 1e-16);
        let c = circle(2.0 * PI, 0.0);
        assert!((c.heat_trace(0, 1.0).unwrap().value - 1.772_637_204_826_652).abs() < 1e-12);
        let i = SpectralModel::build(&Geometry::interval(PI, Boundary::Relative)).unwrap();
        assert!((i.heat_trace(0, 1.0).unwrap().value - 0.386_318_602_413_326).abs() < 1e-12);
        assert_eq!(i.betti_numbers(), &[0, 1]);
        assert_eq!(i.chi(), -1);
    }

    #[test]
    fn short_remainder_is_small_at_short_time() {
        let c = circle(1.0, 0.7);
        let r = c.short_remainder(0, 1e-3).unwrap();
        assert!(r.value.abs() < 1e-100);
        let i = SpectralModel::build(&Geometry::interval(1.0, Boundary::Absolute)).unwrap();
        let terms = i.short_time_terms(0).unwrap();
        let t = 0.01;
        let s: f64 = terms.iter().map(|x| x.eval(t)).sum();
        assert!((s + i.short_remainder(0, t).unwrap().value - i.heat_trace(0, t).unwrap().value).abs() < 1e-12);
    }

    #[test]
    fn torus_is_circle_product() {
        let torus = SpectralModel::build(&Geometry::torus(&[1.0, 1.5])).unwrap();
        let p = product_model(&circle(1.0, 0.0), &circle(1.5, 0.0)).unwrap();
        for k in 0..=2 {
            for t in [0.01, 0.3, 2.0] {
                let a = torus.heat_trace(k, t).unwrap().value;
                let b = p.heat_trace(k, t).unwrap().value;
                assert!((a - b).abs() < 1e-12 * a);
            }
        }
        let c = circle(1.0, 0.0);
        let t1 = torus.heat_trace(1, 0.2).unwrap().value;
        let direct = 2.0 * c.heat_trace(0, 0.2).unwrap().value * circle(1.5, 0.0).heat_trace(0, 0.2).unwrap().value;
        assert!((t1 - direct).abs() < 1e-12 * t1);
    }

    #[test]
    fn eigen_stream_is_sorted_and_complete() {
        let torus = SpectralModel::build(&Geometry::torus(&[1.0, 2.0])).unwrap();
        let first: Vec<(f64, u64)> = torus.eigen_stream(0).unwrap().take(40).collect();
        assert!(first.windows(2).all(|w| w[0].0 < w[1].0));
        let cap = first.last().unwrap().0;
        assert_eq!(first, torus.eigenvalues_below(0, cap).unwrap());
        let finite = SpectralModel::build(&Geometry::truncated(&[(1.0, 2), (3.0, 1)])).unwrap();
        assert_eq!(
            finite.eigen_stream(0).unwrap().collect::<Vec<_>>(),
            vec![(1.0, 2), (3.0, 1)]
        );
    }

    #[test]
    fn weyl_tail_bounds_hold() {
        let c = circle(3.0, 1.0);
        let w = c.weyl_bound(0).unwrap();
        let all = c.eigenvalues_below(0, 400.0).unwrap();
        for cap in [5.0, 20.0, 50.0] {
            let n: u64 = all.iter().filter(|e| e.0 <= cap).map(|e| e.1).sum();
            assert!(n as f64 <= w.count(cap));
            let tail: f64 = all
                .iter()
                .filter(|e| e.0 > cap)
                .map(|e| e.1 as f64 * (-0.1 * e.0).exp())
                .sum();
            assert!(tail <= w.heat_tail(0.1, cap));
        }
    }

    #[test]
    fn supertrace_of_truncated_pair() {
        let m = SpectralModel::build(&Geometry::truncated_degrees(vec![vec![(1.0, 1)], vec![(1.0, 1)]])).unwrap();
        let s = m.supertraces(0.7).unwrap();
        assert!(s.plain.value.abs() < 1e-16);
        assert!((s.weighted.value + (-0.7f64).exp()).abs() < 1e-16);
    }
}
