use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::SpectraError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    /// Dirichlet on functions, Neumann on 1-forms.
    Relative,
    /// Neumann on functions, Dirichlet on 1-forms.
    Absolute,
}

/// Model geometry descriptor, as read from and written to JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum Geometry {
    Point,
    Circle {
        length: f64,
        #[serde(default)]
        holonomy: f64,
        /// Holonomy angles of a higher-rank flat bundle; overrides `holonomy`.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        holonomies: Option<Vec<f64>>,
    },
    Interval {
        length: f64,
        boundary: Boundary,
    },
    Torus {
        lengths: Vec<f64>,
    },
    /// Form degree (as a decimal string key) to `(λ, multiplicity)` pairs.
    Truncated {
        eigenvalues: BTreeMap<String, Vec<(f64, u64)>>,
    },
    Product {
        factors: Vec<Geometry>,
    },
}

impl Geometry {
    pub fn circle(length: f64, holonomy: f64) -> Self {
        Geometry::Circle {
            length,
            holonomy,
            holonomies: None,
        }
    }

    pub fn interval(length: f64, boundary: Boundary) -> Self {
        Geometry::Interval { length, boundary }
    }

    pub fn torus(lengths: &[f64]) -> Self {
        Geometry::Torus {
            lengths: lengths.to_vec(),
        }
    }

    /// Explicit spectrum in degree 0 only.
    pub fn truncated(eigenvalues: &[(f64, u64)]) -> Self {
        Geometry::Truncated {
            eigenvalues: BTreeMap::from([("0".to_string(), eigenvalues.to_vec())]),
        }
    }

    pub fn truncated_degrees(degrees: Vec<Vec<(f64, u64)>>) -> Self {
        Geometry::Truncated {
            eigenvalues: degrees
                .into_iter()
                .enumerate()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
        }
    }

    pub fn product(factors: Vec<Geometry>) -> Self {
        Geometry::Product { factors }
    }

    pub fn from_json(s: &str) -> Result<Self, SpectraError> {
        serde_json::from_str(s).map_err(|e| SpectraError::InvalidGeometry(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("geometry serializes")
    }

    pub fn label(&self) -> String {
        match self {
            Geometry::Point => "point".into(),
            Geometry::Circle {
                length,
                holonomy,
                holonomies,
            } => match holonomies {
                Some(h) => format!("circle(L={length}, holonomies={h:?})"),
                None => format!("circle(L={length}, θ={holonomy})"),
            },
            Geometry::Interval { length, boundary } => format!("interval(L={length}, {boundary:?})").to_lowercase(),
            Geometry::Torus { lengths } => format!("torus{lengths:?}"),
            Geometry::Truncated { eigenvalues } => format!("truncated({} degrees)", eigenvalues.len()),
            Geometry::Product { factors } => factors.iter().map(|f| f.label()).collect::<Vec<_>>().join(" × "),
        }
    }
}

/// A one-factor building block with closed-form spectra.
#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Factor {
    Point,
    Circle { length: f64, holonomies: Vec<f64> },
    Interval { length: f64, boundary: Boundary },
    Truncated { degrees: Vec<Vec<(f64, u64)>> },
}

fn positive_length(l: f64) -> Result<f64, SpectraError> {
    if l > 0.0 && l.is_finite() {
        Ok(l)
    } else {
        Err(SpectraError::InvalidGeometry(format!(
            "length must be positive and finite, got {l}"
        )))
    }
}

pub(crate) fn factors_of(g: &Geometry) -> Result<Vec<Factor>, SpectraError> {
    Ok(match g {
        Geometry::Point => vec![Factor::Point],
        Geometry::Circle {
            length,
            holonomy,
            holonomies,
        } => {
            let hs = holonomies.clone().unwrap_or_else(|| vec![*holonomy]);
            if hs.is_empty() {
                return Err(SpectraError::InvalidGeometry("empty holonomy list".into()));
            }
            for h in &hs {
                if !(0.0..2.0 * PI).contains(h) {
                    return Err(SpectraError::InvalidGeometry(format!("holonomy {h} outside [0, 2π)")));
                }
            }
            vec![Factor::Circle {
                length: positive_length(*length)?,
                holonomies: hs,
            }]
        }
        Geometry::Interval { length, boundary } => vec![Factor::Interval {
            length: positive_length(*length)?,
            boundary: *boundary,
        }],
        Geometry::Torus { lengths } => {
            if lengths.is_empty() {
                return Err(SpectraError::InvalidGeometry("torus needs at least one length".into()));
            }
            lengths
                .iter()
                .map(|&l| {
                    Ok(Factor::Circle {
                        length: positive_length(l)?,
                        holonomies: vec![0.0],
                    })
                })
                .collect::<Result<_, SpectraError>>()?
        }
        Geometry::Truncated { eigenvalues } => {
            let mut parsed = BTreeMap::new();
            for (key, list) in eigenvalues {
                let k: usize = key.parse().map_err(|_| {
                    SpectraError::InvalidGeometry(format!("degree key {key:?} is not a non-negative integer"))
                })?;
                if parsed.insert(k, list).is_some() {
                    return Err(SpectraError::InvalidGeometry(format!("degree {k} listed twice")));
                }
            }
            let dim = parsed.keys().max().copied().unwrap_or(0);
            let mut degrees = vec![Vec::new(); dim + 1];
            for (k, list) in parsed {
                for &(lambda, m) in list {
                    if !(lambda >= 0.0 && lambda.is_finite()) || m == 0 {
                        return Err(SpectraError::InvalidGeometry(format!(
                            "degree {k}: eigenvalue {lambda} with multiplicity {m}"
                        )));
                    }
                }
                let mut sorted = list.clone();
                sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
                degrees[k] = sorted;
            }
            vec![Factor::Truncated { degrees }]
        }
        Geometry::Product { factors } => {
            if factors.is_empty() {
                return Err(SpectraError::InvalidGeometry("product of no factors".into()));
            }
            let mut out = Vec::new();
            for f in factors {
                out.extend(factors_of(f)?);
            }
            out
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let samples = [
            r#"{"kind":"circle","length":6.2832,"holonomy":3.1416}"#,
            r#"{"kind":"product","factors":[{"kind":"circle","length":1.0,"holonomy":0.0},{"kind":"point"}]}"#,
            r#"{"kind":"truncated","eigenvalues":{"0":[[1.0,1]],"1":[[1.0,1]]}}"#,
            r#"{"kind":"interval","length":2.0,"boundary":"relative"}"#,
            r#"{"kind":"torus","lengths":[1.0,2.0]}"#,
        ];
        for s in samples {
            let g = Geometry::from_json(s).unwrap();
            assert_eq!(Geometry::from_json(&g.to_json()).unwrap(), g);
        }
    }

    #[test]
    fn invalid_descriptors() {
        for s in [
            r#"{"kind":"circle","length":-1.0}"#,
            r#"{"kind":"circle","length":1.0,"holonomy":7.0}"#,
            r#"{"kind":"blob"}"#,
            r#"{"kind":"truncated","eigenvalues":{"0":[[-1.0,1]]}}"#,
            r#"{"kind":"product","factors":[]}"#,
        ] {
            let parsed = Geometry::from_json(s);
            assert!(parsed.is_err() || factors_of(&parsed.unwrap()).is_err(), "{s}");
        }
    }
}
