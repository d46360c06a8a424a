//! Model geometries with explicit Hodge spectra, heat traces with
//! truncation bounds, the Dunford contour representation and cone traces.

mod cone;
mod dunford;
mod factor;
mod geometry;
mod model;
mod short_time;

use std::ops::{Add, Mul, Sub};

use num_rational::Rational64;
use num_traits::ToPrimitive;
use thiserror::Error;

pub use cone::{
    cone_coefficient, cone_trace, euclidean_scaling_check, radial_trace_sample, spatial_reg_integral, ConeTraceForm,
    ScalingReport,
};
pub use dunford::{dunford_heat, dunford_sign_oracle, ContourSpec, DunfordValue, DUNFORD_PREFACTOR_SIGN};
pub use geometry::{Boundary, Geometry};
pub use model::{product_model, EigenStream, SpectralModel, Supertraces, WeylBound, EXPONENTIAL_ORDER};
pub use short_time::{short_time_expansion, ShortTimeFit};

use crate::quad::QuadError;
use crate::reg::RegError;

#[derive(Debug, Error)]
pub enum SpectraError {
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),
    #[error("degree {k} out of range for dimension {dim}")]
    Degree { k: usize, dim: usize },
    #[error("tolerance unreachable: achieved {achieved:e}, requested {requested:e}")]
    ToleranceUnreachable { achieved: f64, requested: f64 },
    #[error("contour: {0}")]
    Contour(String),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Fit(#[from] RegError),
    #[error("product spectrum mismatch in degree {degree}: direct {direct}, factored {factored}")]
    ProductMismatch { degree: usize, direct: f64, factored: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// A value with an absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

impl Estimate {
    pub fn new(value: f64, error: f64) -> Self {
        Estimate {
            value,
            error: error.abs(),
        }
    }

    pub fn exact(value: f64) -> Self {
        Estimate { value, error: 0.0 }
    }

    pub fn scale(self, c: f64) -> Self {
        Estimate {
            value: self.value * c,
            error: self.error * c.abs(),
        }
    }
}

impl Add for Estimate {
    type Output = Estimate;
    fn add(self, o: Estimate) -> Estimate {
        let v = self.value + o.value;
        Estimate {
            value: v,
            error: self.error + o.error + f64::EPSILON * v.abs(),
        }
    }
}

impl Sub for Estimate {
    type Output = Estimate;
    fn sub(self, o: Estimate) -> Estimate {
        self + o.scale(-1.0)
    }
}

impl Mul for Estimate {
    type Output = Estimate;
    fn mul(self, o: Estimate) -> Estimate {
        let v = self.value * o.value;
        Estimate {
            value: v,
            error: self.value.abs() * o.error
                + o.value.abs() * self.error
                + self.error * o.error
                + f64::EPSILON * v.abs(),
        }
    }
}

pub(crate) fn q_to_f64(r: Rational64) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
