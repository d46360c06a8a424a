//! Exact algebra of polyhomogeneous index sets.
//!
//! An index set is a discrete subset of `ℂ × ℕ₀` closed under
//! `(α, k) ↦ (α + ℓ, k′)` for `ℓ ∈ ℕ₀`, `k′ ≤ k`. It is stored as its minimal
//! generating set together with a real cutoff; membership is only decided
//! for exponents with `Re(α) ≤ cutoff`.
//!
//! The weight used for the one-sided integral in the pushforward identity is
//! the indicator of `{x₃ ≤ x₂}`. Its face-11 set is sometimes written as all of
//! `ℕ₀ × ℕ₀`, which would allow unbounded log powers at a single exponent; we
//! use the smooth set `{(0, 0)}` there instead.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Default membership cutoff.
pub fn default_cutoff() -> Rational64 {
    Rational64::from_integer(10)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndexError {
    #[error("cannot parse index set: {0}")]
    Parse(String),
    #[error("link dimension b = {0} is below 2")]
    LinkDimension(i64),
    #[error("invalid parameter: {0}")]
    Parameter(String),
}

/// A pair `(α, k)` with exact rational real and imaginary parts of `α`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexTerm {
    pub alpha_re: Rational64,
    pub alpha_im: Rational64,
    pub k: u32,
}

impl IndexTerm {
    pub fn new(alpha_re: Rational64, alpha_im: Rational64, k: u32) -> Self {
        IndexTerm { alpha_re, alpha_im, k }
    }

    pub fn real(alpha: Rational64, k: u32) -> Self {
        IndexTerm::new(alpha, Rational64::zero(), k)
    }

    pub fn int(alpha: i64, k: u32) -> Self {
        IndexTerm::real(Rational64::from_integer(alpha), k)
    }

    /// True if `other` lies in the closure of `{self}`.
    pub fn covers(&self, other: &IndexTerm) -> bool {
        if self.alpha_im != other.alpha_im || other.k > self.k {
            return false;
        }
        let d = other.alpha_re - self.alpha_re;
        d.is_integer() && !d.is_negative()
    }

    /// True if the exponents differ by an integer (so their orbits meet).
    fn same_lattice(&self, other: &IndexTerm) -> bool {
        self.alpha_im == other.alpha_im && (self.alpha_re - other.alpha_re).is_integer()
    }

    fn shifted(&self, re: Rational64, im: Rational64, k: u32) -> IndexTerm {
        IndexTerm::new(self.alpha_re + re, self.alpha_im + im, self.k + k)
    }
}

/// Minimal generators plus cutoff.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexSet {
    generators: BTreeSet<IndexTerm>,
    cutoff: Rational64,
}

impl IndexSet {
    pub fn empty() -> Self {
        IndexSet::empty_with_cutoff(default_cutoff())
    }

    pub fn empty_with_cutoff(cutoff: Rational64) -> Self {
        IndexSet {
            generators: BTreeSet::new(),
            cutoff,
        }
    }

    /// Closure of the given terms, reduced to minimal generators.
    pub fn normalize<I: IntoIterator<Item = IndexTerm>>(raw_terms: I, cutoff: Rational64) -> Self {
        let raw: BTreeSet<IndexTerm> = raw_terms.into_iter().collect();
        let generators = raw
            .iter()
            .filter(|t| !raw.iter().any(|o| o != *t && o.covers(t)))
            .copied()
            .collect();
        IndexSet { generators, cutoff }
    }

    pub fn from_terms<I: IntoIterator<Item = IndexTerm>>(terms: I) -> Self {
        IndexSet::normalize(terms, default_cutoff())
    }

    /// The smooth set `{(c, 0)}` closed upward, i.e. the smallest set that is `≥ c`.
    pub fn starting_at(c: Rational64) -> Self {
        IndexSet::from_terms([IndexTerm::real(c, 0)])
    }

    pub fn generators(&self) -> impl Iterator<Item = &IndexTerm> {
        self.generators.iter()
    }

    pub fn cutoff(&self) -> Rational64 {
        self.cutoff
    }

    pub fn with_cutoff(mut self, cutoff: Rational64) -> Self {
        self.cutoff = cutoff;
        self
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// `Some(true/false)` below the cutoff, `None` above it.
    pub fn contains(&self, term: &IndexTerm) -> Option<bool> {
        if term.alpha_re > self.cutoff {
            return None;
        }
        Some(self.generators.iter().any(|g| g.covers(term)))
    }

    /// Every member with `Re(α) ≤ cutoff`.
    pub fn members_below_cutoff(&self) -> BTreeSet<IndexTerm> {
        let mut out = BTreeSet::new();
        for g in &self.generators {
            let mut l = 0i64;
            loop {
                let re = g.alpha_re + Rational64::from_integer(l);
                if re > self.cutoff {
                    break;
                }
                for k in 0..=g.k {
                    out.insert(IndexTerm::new(re, g.alpha_im, k));
                }
                l += 1;
            }
        }
        out
    }

    /// Set union (the combination of contributions to one face).
    pub fn union(&self, other: &IndexSet) -> IndexSet {
        IndexSet::normalize(
            self.generators.iter().chain(other.generators.iter()).copied(),
            self.cutoff.min(other.cutoff),
        )
    }

    /// `E ∪ F ∪ {(α, k+ℓ+1) : (α,k) ∈ E, (α,ℓ) ∈ F}`.
    pub fn extended_union(&self, other: &IndexSet) -> IndexSet {
        let mut raw: Vec<IndexTerm> = self.generators.iter().chain(other.generators.iter()).copied().collect();
        for e in &self.generators {
            for f in &other.generators {
                if e.same_lattice(f) {
                    // first exponent reached by both orbits
                    let re = e.alpha_re.max(f.alpha_re);
                    raw.push(IndexTerm::new(re, e.alpha_im, e.k + f.k + 1));
                }
            }
        }
        IndexSet::normalize(raw, self.cutoff.min(other.cutoff))
    }

    /// `{(α+β, k+ℓ)}` over all pairs.
    pub fn minkowski_sum(&self, other: &IndexSet) -> IndexSet {
        let raw = self.generators.iter().flat_map(|e| {
            other
                .generators
                .iter()
                .map(move |f| e.shifted(f.alpha_re, f.alpha_im, f.k))
        });
        IndexSet::normalize(raw, self.cutoff.min(other.cutoff))
    }

    /// Translate every exponent by the real amount `c`.
    pub fn shift(&self, c: Rational64) -> IndexSet {
        IndexSet::normalize(
            self.generators.iter().map(|g| g.shifted(c, Rational64::zero(), 0)),
            self.cutoff,
        )
    }

    /// `E > c` (strict) or `E ≥ c` in the convention that forbids logs at `Re(α) = c`.
    pub fn check_bound(&self, c: Rational64, strict: bool) -> bool {
        self.generators.iter().all(|g| {
            if strict {
                g.alpha_re > c
            } else {
                g.alpha_re > c || (g.alpha_re == c && g.k == 0)
            }
        })
    }

    /// Smallest real part present, with the largest log power attached to it.
    pub fn leading(&self) -> Option<(Rational64, u32)> {
        let min = self.generators.iter().map(|g| g.alpha_re).min()?;
        let k = self
            .generators
            .iter()
            .filter(|g| g.alpha_re == min)
            .map(|g| g.k)
            .max()?;
        Some((min, k))
    }
}

fn fmt_rational(r: &Rational64) -> String {
    if r.is_integer() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for IndexTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re = fmt_rational(&self.alpha_re);
        if self.alpha_im.is_zero() {
            write!(f, "({},{})", re, self.k)
        } else {
            let sign = if self.alpha_im.is_negative() { "-" } else { "+" };
            write!(
                f,
                "({} {} {}·i,{})",
                re,
                sign,
                fmt_rational(&self.alpha_im.abs()),
                self.k
            )
        }
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "{{{}}}; cutoff={}", body.join(", "), fmt_rational(&self.cutoff))
    }
}

pub fn parse_rational(s: &str) -> Result<Rational64, IndexError> {
    let s = s.trim();
    let bad = || IndexError::Parse(format!("bad rational '{s}'"));
    if let Some((p, q)) = s.split_once('/') {
        let p: i64 = p.trim().parse().map_err(|_| bad())?;
        let q: i64 = q.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(bad());
        }
        Ok(Rational64::new(p, q))
    } else {
        s.parse::<i64>().map(Rational64::from_integer).map_err(|_| bad())
    }
}

fn parse_exponent(s: &str) -> Result<(Rational64, Rational64), IndexError> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let s = s.replace('·', "").replace('*', "");
    if !s.ends_with('i') {
        return Ok((parse_rational(&s)?, Rational64::zero()));
    }
    let body = &s[..s.len() - 1];
    // split at the last sign that is not the leading one
    let split = body
        .char_indices()
        .filter(|&(i, c)| i > 0 && (c == '+' || c == '-'))
        .map(|(i, _)| i)
        .last();
    let imag = |t: &str| -> Result<Rational64, IndexError> {
        match t {
            "" | "+" => Ok(Rational64::one()),
            "-" => Ok(-Rational64::one()),
            _ => parse_rational(t.strip_prefix('+').unwrap_or(t)),
        }
    };
    match split {
        Some(i) => Ok((parse_rational(&body[..i])?, imag(&body[i..])?)),
        None => Ok((Rational64::zero(), imag(body)?)),
    }
}

impl FromStr for IndexSet {
    type Err = IndexError;

    /// Accepts `{(α, k), ...}` optionally followed by `; cutoff=C`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (set_part, cutoff) = match s.split_once(';') {
            Some((a, b)) => {
                let b = b.trim();
                let c = b
                    .strip_prefix("cutoff")
                    .and_then(|r| r.trim_start().strip_prefix('='))
                    .ok_or_else(|| IndexError::Parse(format!("expected 'cutoff=C', got '{b}'")))?;
                (a, parse_rational(c)?)
            }
            None => (s, default_cutoff()),
        };
        let inner = set_part
            .trim()
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| IndexError::Parse(format!("expected braces around '{}'", set_part.trim())))?;
        let mut terms = Vec::new();
        let mut rest = inner.trim();
        while !rest.is_empty() {
            let rest_open = rest
                .strip_prefix('(')
                .ok_or_else(|| IndexError::Parse(format!("expected '(' at '{rest}'")))?;
            let close = rest_open
                .find(')')
                .ok_or_else(|| IndexError::Parse("unclosed '('".into()))?;
            let tuple = &rest_open[..close];
            let (alpha, k) = tuple
                .rsplit_once(',')
                .ok_or_else(|| IndexError::Parse(format!("expected '(α, k)', got '({tuple})'")))?;
            let (re, im) = parse_exponent(alpha)?;
            let k: u32 = k
                .trim()
                .parse()
                .map_err(|_| IndexError::Parse(format!("bad log power '{}'", k.trim())))?;
            terms.push(IndexTerm::new(re, im, k));
            rest = rest_open[close + 1..].trim_start();
            rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
        }
        Ok(IndexSet::normalize(terms, cutoff))
    }
}

/// Index sets at the faces (10), (11), (01) of the blown-up quadrant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexTriple {
    pub e10: IndexSet,
    pub e11: IndexSet,
    pub e01: IndexSet,
}

impl IndexTriple {
    pub fn new(e10: IndexSet, e11: IndexSet, e01: IndexSet) -> Self {
        IndexTriple { e10, e11, e01 }
    }

    pub fn empty() -> Self {
        IndexTriple::new(IndexSet::empty(), IndexSet::empty(), IndexSet::empty())
    }

    /// Weight of the one-sided integral `∫_{x₃}^∞ · dx₂/x₂`: `(∅, {(0,0)}, {(0,0)})`.
    pub fn cutoff_indicator() -> Self {
        let smooth = IndexSet::starting_at(Rational64::zero());
        IndexTriple::new(IndexSet::empty(), smooth.clone(), smooth)
    }
}

/// Index sets of the pushforward of a product of two polyhomogeneous functions
/// on the b-triple space.
pub fn pushforward_triple(left: &IndexTriple, right: &IndexTriple) -> IndexTriple {
    let f10 = left.e11.minkowski_sum(&right.e10).extended_union(&left.e10);
    let f11 = left
        .e10
        .minkowski_sum(&right.e01)
        .extended_union(&left.e11.minkowski_sum(&right.e11));
    let f01 = left.e01.minkowski_sum(&right.e11).extended_union(&right.e01);
    IndexTriple::new(f10, f11, f01)
}

/// Boundary faces of the resolvent and heat spaces that carry bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Face {
    Sc,
    Zf,
    PhiF0,
    Bf0,
    Lb0,
    Rb0,
}

impl Face {
    pub fn label(&self) -> &'static str {
        match self {
            Face::Sc => "sc",
            Face::Zf => "zf",
            Face::PhiF0 => "φf₀",
            Face::Bf0 => "bf₀",
            Face::Lb0 => "lb₀",
            Face::Rb0 => "rb₀",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bound {
    pub c: Rational64,
    pub strict: bool,
}

impl Bound {
    pub fn at_least(c: i64) -> Self {
        Bound {
            c: Rational64::from_integer(c),
            strict: false,
        }
    }

    pub fn greater_than(c: i64) -> Self {
        Bound {
            c: Rational64::from_integer(c),
            strict: true,
        }
    }

    pub fn holds_for(&self, set: &IndexSet) -> bool {
        set.check_bound(self.c, self.strict)
    }

    /// The smallest index set satisfying this bound, when it is attained.
    pub fn extremal_set(&self) -> IndexSet {
        if self.strict {
            // any set starting strictly above c works; take c + 1/2 as representative
            IndexSet::starting_at(self.c + Rational64::new(1, 2))
        } else {
            IndexSet::starting_at(self.c)
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", if self.strict { ">" } else { "≥" }, fmt_rational(&self.c))
    }
}

pub type FaceBounds = BTreeMap<Face, Bound>;

/// Bounds for the index sets of `(□ + κ²)^{-σ}`.
pub fn resolvent_power_bounds(sigma: i64, b: i64) -> Result<FaceBounds, IndexError> {
    if sigma < 1 {
        return Err(IndexError::Parameter(format!("σ must be ≥ 1, got {sigma}")));
    }
    if b < 2 {
        return Err(IndexError::LinkDimension(b));
    }
    let mut out = FaceBounds::new();
    out.insert(Face::Sc, Bound::at_least(0));
    out.insert(Face::PhiF0, Bound::at_least((-2 * sigma + b + 1).min(0)));
    out.insert(Face::Bf0, Bound::at_least(-2 * sigma));
    out.insert(Face::Lb0, Bound::greater_than(-2 * (sigma - 1)));
    out.insert(Face::Rb0, Bound::greater_than(-2 * (sigma - 1)));
    out.insert(Face::Zf, Bound::at_least(-2 * sigma));
    Ok(out)
}

/// Index sets at sc, zf and φf₀ for one piece of the contour decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalSets {
    pub sc: IndexSet,
    pub zf: IndexSet,
    pub phi_f0: IndexSet,
}

impl DiagonalSets {
    fn union(&self, other: &DiagonalSets) -> DiagonalSets {
        DiagonalSets {
            sc: self.sc.union(&other.sc),
            zf: self.zf.union(&other.zf),
            phi_f0: self.phi_f0.union(&other.phi_f0),
        }
    }

    pub fn bounds(&self) -> FaceBounds {
        let mut out = FaceBounds::new();
        for (face, set) in [(Face::Sc, &self.sc), (Face::Zf, &self.zf), (Face::PhiF0, &self.phi_f0)] {
            if let Some((c, k)) = set.leading() {
                // a log at the leading exponent only supports a strict bound just below
                let bound = if k == 0 {
                    Bound { c, strict: false }
                } else {
                    Bound {
                        c: c - Rational64::new(1, 2),
                        strict: true,
                    }
                };
                out.insert(face, bound);
            }
        }
        out
    }
}

/// The three contour contributions to the heat-kernel diagonal and their union.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeatTraceIndexSets {
    pub resolvent: DiagonalSets,
    pub rays: DiagonalSets,
    pub arc: DiagonalSets,
    pub segments: DiagonalSets,
    pub combined: DiagonalSets,
}

impl HeatTraceIndexSets {
    pub fn bounds(&self) -> FaceBounds {
        self.combined.bounds()
    }
}

/// Index sets of the heat-kernel diagonal at long times, assembled from the
/// resolvent-power diagonal `(sc ≥ 0, zf ≥ −2ν, φf₀ ≥ −2ν + b + 1)`.
///
/// * rays at infinity: exponentially decaying, so empty away from sc;
/// * arc of radius `1/t`: the `t^{-ν}` prefactor shifts zf and φf₀ by `2ν`;
/// * finite segments: the `s²` Jacobian shifts by 2, the one-sided integral
///   produces an extended union with the sc set, and the `t^{-ν+1}` prefactor
///   shifts by `2ν − 2`. Inside that extended union the sc set carries the
///   `ρ^{b+1}` density weight and the Jacobian shift, so it enters as
///   `ℱ_sc + b + 3`.
pub fn heat_trace_index_sets(nu: i64, b: i64) -> Result<HeatTraceIndexSets, IndexError> {
    if nu < 1 {
        return Err(IndexError::Parameter(format!("ν must be ≥ 1, got {nu}")));
    }
    if b < 2 {
        return Err(IndexError::LinkDimension(b));
    }
    let r = Rational64::from_integer;
    let resolvent = DiagonalSets {
        sc: IndexSet::starting_at(r(0)),
        zf: IndexSet::starting_at(r(-2 * nu)),
        phi_f0: IndexSet::starting_at(r(-2 * nu + b + 1)),
    };
    let rays = DiagonalSets {
        sc: resolvent.sc.clone(),
        zf: IndexSet::empty(),
        phi_f0: IndexSet::empty(),
    };
    let arc = DiagonalSets {
        sc: resolvent.sc.clone(),
        zf: resolvent.zf.shift(r(2 * nu)),
        phi_f0: resolvent.phi_f0.shift(r(2 * nu)),
    };
    let segment_phi = resolvent
        .phi_f0
        .shift(r(2))
        .extended_union(&resolvent.sc.shift(r(b + 3)))
        .shift(r(2 * nu - 2));
    let segments = DiagonalSets {
        sc: resolvent.sc.clone(),
        zf: resolvent.zf.shift(r(2)).shift(r(2 * nu - 2)),
        phi_f0: segment_phi,
    };
    let combined = rays.union(&arc).union(&segments);
    Ok(HeatTraceIndexSets {
        resolvent,
        rays,
        arc,
        segments,
        combined,
    })
}

pub fn heat_trace_bounds(nu: i64, b: i64) -> Result<FaceBounds, IndexError> {
    Ok(heat_trace_index_sets(nu, b)?.bounds())
}

/// Approximate real part, for display and numerics.
pub fn rational_to_f64(r: Rational64) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(s: &str) -> IndexSet {
        s.parse().unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(set("{(0,0),(1,0)}"), set("{(0,0)}"));
        assert!(set("{}").is_empty());
        let e = set("{(-2,1),(-2,0)}");
        assert_eq!(e.generators().collect::<Vec<_>>(), vec![&IndexTerm::int(-2, 1)]);
    }

    #[test]
    fn extended_union_examples() {
        assert_eq!(set("{(0,0)}").extended_union(&set("{(0,0)}")), set("{(0,1)}"));
        let e = set("{(1/2,0), (3,2)}");
        assert_eq!(e.extended_union(&IndexSet::empty()), e);
        assert_eq!(set("{(-2,0)}").extended_union(&set("{(-2,1)}")), set("{(-2,2)}"));
        // orbits meeting only after a shift
        assert_eq!(set("{(0,0)}").extended_union(&set("{(2,0)}")), set("{(0,0),(2,1)}"));
    }

    #[test]
    fn minkowski_examples() {
        let c = Rational64::new(-7, 3);
        assert_eq!(
            set("{(0,0)}").minkowski_sum(&IndexSet::starting_at(c)),
            IndexSet::starting_at(c)
        );
        assert!(set("{(1,3)}").minkowski_sum(&IndexSet::empty()).is_empty());
        assert_eq!(set("{(-2,1)}").minkowski_sum(&set("{(3,1)}")), set("{(1,2)}"));
    }

    #[test]
    fn check_bound_examples() {
        assert!(set("{(0,0)}").check_bound(Rational64::zero(), false));
        assert!(!set("{(0,1)}").check_bound(Rational64::zero(), false));
        assert!(!set("{(-2,0)}").check_bound(Rational64::from_integer(-2), true));
        assert!(IndexSet::empty().check_bound(Rational64::from_integer(100), true));
    }

    #[test]
    fn membership_above_cutoff_is_unknown() {
        let e = set("{(0,0)}; cutoff=3");
        assert_eq!(e.contains(&IndexTerm::int(2, 0)), Some(true));
        assert_eq!(e.contains(&IndexTerm::int(2, 1)), Some(false));
        assert_eq!(e.contains(&IndexTerm::int(4, 0)), None);
        assert_eq!(e.members_below_cutoff().len(), 4);
    }

    #[test]
    fn text_round_trip_with_complex_exponents() {
        let e = set("{(1/2 + 3/2·i, 1), (-1 - i, 0), (2i, 0)}; cutoff=7/2");
        let printed = e.to_string();
        assert_eq!(printed.parse::<IndexSet>().unwrap(), e);
        assert!(printed.ends_with("; cutoff=7/2"));
        assert_eq!(
            set("{(0,0)}").extended_union(&set("{(0,0)}")).to_string(),
            "{(0,1)}; cutoff=10"
        );
    }

    #[test]
    fn parse_errors() {
        assert!("(0,0)".parse::<IndexSet>().is_err());
        assert!("{(0)}".parse::<IndexSet>().is_err());
        assert!("{(1/0,0)}".parse::<IndexSet>().is_err());
        assert!("{(0,0)}; cut=1".parse::<IndexSet>().is_err());
    }

    #[test]
    fn pushforward_with_indicator_weight_keeps_face_10() {
        let left = IndexTriple::new(set("{(1,0),(3/2,2)}"), set("{(-1,1)}"), set("{(2,0)}"));
        let out = pushforward_triple(&left, &IndexTriple::cutoff_indicator());
        assert_eq!(out.e10, left.e10);
        assert_eq!(out.e11, left.e10.extended_union(&left.e11));
        let empty = pushforward_triple(&IndexTriple::empty(), &IndexTriple::empty());
        assert_eq!(empty, IndexTriple::empty());
    }

    #[test]
    fn resolvent_bounds_examples() {
        let b1 = resolvent_power_bounds(1, 2).unwrap();
        assert_eq!(b1[&Face::PhiF0], Bound::at_least(0));
        assert_eq!(b1[&Face::Zf], Bound::at_least(-2));
        assert_eq!(b1[&Face::Bf0], Bound::at_least(-2));
        assert_eq!(b1[&Face::Lb0], Bound::greater_than(0));
        let b2 = resolvent_power_bounds(2, 2).unwrap();
        assert_eq!(b2[&Face::PhiF0], Bound::at_least(-1));
        assert_eq!(b2[&Face::Zf], Bound::at_least(-4));
        assert_eq!(resolvent_power_bounds(3, 7).unwrap()[&Face::PhiF0], Bound::at_least(0));
        assert_eq!(resolvent_power_bounds(1, 1), Err(IndexError::LinkDimension(1)));
    }

    #[test]
    fn heat_trace_bounds_examples() {
        let sets = heat_trace_index_sets(2, 2).unwrap();
        assert_eq!(sets.arc.zf.leading(), Some((Rational64::zero(), 0)));
        assert!(sets.segments.phi_f0.check_bound(Rational64::from_integer(3), false));
        let b = heat_trace_bounds(2, 2).unwrap();
        assert_eq!(b[&Face::Sc], Bound::at_least(0));
        assert_eq!(b[&Face::Zf], Bound::at_least(0));
        assert_eq!(b[&Face::PhiF0], Bound::at_least(3));
        assert!(sets.rays.zf.is_empty() && sets.rays.phi_f0.is_empty());
    }
}
