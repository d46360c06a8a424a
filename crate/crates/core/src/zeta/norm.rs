use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;
use serde::Serialize;

use super::{log_torsion, ZetaError};
use crate::quad::{integrate, QuadOptions};
use crate::spectra::{Geometry, SpectralModel};

/// Which cohomology degrees enter the determinant line inverted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Orientation {
    EvenInverted,
    OddInverted,
}

impl Orientation {
    /// Exponent `±1` of the degree-`k` factor.
    pub fn exponent(self, k: usize) -> i32 {
        let even = k % 2 == 0;
        match (self, even) {
            (Orientation::EvenInverted, true) | (Orientation::OddInverted, false) => -1,
            _ => 1,
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Orientation::EvenInverted => "even degrees inverted",
            Orientation::OddInverted => "odd degrees inverted",
        }
    }
}

/// Pinned by constancy of `T(L)·‖μ‖_{L²}(L)` over circle lengths.
pub const ORIENTATION: Orientation = Orientation::EvenInverted;

/// Coefficient function of a harmonic form, `f` in degree 0 and `f dx` in degree 1.
#[derive(Clone)]
pub struct HarmonicRep {
    pub degree: usize,
    pub label: String,
    coeff: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl fmt::Debug for HarmonicRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HarmonicRep")
            .field("degree", &self.degree)
            .field("label", &self.label)
            .finish_non_exhaustive()
    }
}

impl HarmonicRep {
    pub fn new<F>(degree: usize, label: impl Into<String>, coeff: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        HarmonicRep {
            degree,
            label: label.into(),
            coeff: Arc::new(coeff),
        }
    }

    pub fn constant(degree: usize, c: f64) -> Self {
        HarmonicRep::new(degree, format!("{c}"), move |_| c)
    }

    pub fn scaled(&self, c: f64) -> Self {
        let f = self.coeff.clone();
        HarmonicRep::new(self.degree, format!("{c}·{}", self.label), move |x| c * f(x))
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.coeff)(x)
    }
}

/// Basis element of the determinant line: one representative per cohomology
/// dimension in each degree.
#[derive(Debug, Clone, Default)]
pub struct DetLineElement {
    pub reps: Vec<HarmonicRep>,
}

impl DetLineElement {
    pub fn new(reps: Vec<HarmonicRep>) -> Self {
        DetLineElement { reps }
    }

    pub fn empty() -> Self {
        DetLineElement::default()
    }

    fn in_degree(&self, k: usize) -> Vec<&HarmonicRep> {
        self.reps.iter().filter(|r| r.degree == k).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormReport {
    pub torsion: f64,
    pub l2_norm: f64,
    /// `T·‖μ‖_{L²}`
    pub norm: f64,
    /// `(k, det G_k, exponent)`
    pub gram: Vec<(usize, f64, i32)>,
    pub error: f64,
}

enum Domain {
    Point,
    Segment(f64),
}

fn domain_of(model: &SpectralModel) -> Result<Domain, ZetaError> {
    match model.geometry() {
        Geometry::Point => Ok(Domain::Point),
        Geometry::Circle { length, .. } | Geometry::Interval { length, .. } => Ok(Domain::Segment(*length)),
        _ => Err(ZetaError::InvalidArgument(
            "L² pairings are available on the point, circles and intervals".into(),
        )),
    }
}

fn pairing(d: &Domain, a: &HarmonicRep, b: &HarmonicRep) -> Result<f64, ZetaError> {
    match d {
        Domain::Point => Ok(a.eval(0.0) * b.eval(0.0)),
        Domain::Segment(l) => Ok(integrate(
            |x| a.eval(x) * b.eval(x),
            0.0,
            *l,
            QuadOptions {
                abs_tol: 1e-14,
                rel_tol: 1e-14,
                max_panels: 2000,
            },
        )?
        .value),
    }
}

/// `‖μ‖^{RS} = T·Π_k (det G_k)^{±1/2}` with exponents from `ORIENTATION`.
pub fn torsion_norm(model: &SpectralModel, element: &DetLineElement) -> Result<NormReport, ZetaError> {
    let dom = domain_of(model)?;
    let mut gram = Vec::new();
    let mut log_norm = 0.0;
    for k in 0..=model.dim() {
        let reps = element.in_degree(k);
        let b = model.betti(k);
        if reps.len() as u64 != b {
            return Err(ZetaError::BettiMismatch {
                degree: k,
                expected: b,
                got: reps.len(),
            });
        }
        if reps.is_empty() {
            continue;
        }
        let n = reps.len();
        let mut g = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = pairing(&dom, reps[i], reps[j])?;
                g[(i, j)] = v;
                g[(j, i)] = v;
            }
        }
        let det = g.determinant();
        if !(det > 1e-300) {
            return Err(ZetaError::DegenerateGram { degree: k, det });
        }
        let e = ORIENTATION.exponent(k);
        log_norm += 0.5 * e as f64 * det.ln();
        gram.push((k, det, e));
    }
    if element.reps.iter().any(|r| r.degree > model.dim()) {
        return Err(ZetaError::InvalidArgument(
            "representative above the model dimension".into(),
        ));
    }
    let t = log_torsion(model)?;
    let torsion = t.log_t.exp();
    let l2_norm = log_norm.exp();
    Ok(NormReport {
        torsion,
        l2_norm,
        norm: torsion * l2_norm,
        gram,
        error: torsion * l2_norm * t.error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn circle_element(l: f64) -> DetLineElement {
        DetLineElement::new(vec![HarmonicRep::constant(0, 1.0), HarmonicRep::constant(1, 1.0 / l)])
    }

    #[test]
    fn circle_family_is_constant() {
        let vals: Vec<f64> = [1.0, 2.0 * PI, 10.0]
            .iter()
            .map(|&l| {
                let m = SpectralModel::build(&Geometry::circle(l, 0.0)).unwrap();
                torsion_norm(&m, &circle_element(l)).unwrap().norm
            })
            .collect();
        assert!(
            (vals[0] - vals[1]).abs() < 1e-8 && (vals[0] - vals[2]).abs() < 1e-8,
            "{vals:?}"
        );
    }

    #[test]
    fn acyclic_and_scaling() {
        let m = SpectralModel::build(&Geometry::circle(2.0, PI)).unwrap();
        let r = torsion_norm(&m, &DetLineElement::empty()).unwrap();
        assert!((r.norm - 2.0).abs() < 1e-8);
        let c = SpectralModel::build(&Geometry::circle(2.0, 0.0)).unwrap();
        let base = torsion_norm(&c, &circle_element(2.0)).unwrap().norm;
        let scaled = DetLineElement::new(vec![HarmonicRep::constant(0, 3.0), HarmonicRep::constant(1, 0.5)]);
        let s = torsion_norm(&c, &scaled).unwrap().norm;
        assert!((s - base * (1.0 / 3.0) * (0.5 * 2.0)).abs() < 1e-8);
    }

    #[test]
    fn wrong_count_is_rejected() {
        let c = SpectralModel::build(&Geometry::circle(2.0, 0.0)).unwrap();
        assert!(torsion_norm(&c, &DetLineElement::new(vec![HarmonicRep::constant(0, 1.0)])).is_err());
        let deg = DetLineElement::new(vec![HarmonicRep::constant(0, 0.0), HarmonicRep::constant(1, 1.0)]);
        assert!(matches!(torsion_norm(&c, &deg), Err(ZetaError::DegenerateGram { .. })));
    }
}
