//! Two-dimensional rate-region polytopes.
//!
//! A [`RateRegion`] is the set of `(r1, r2) >= 0` satisfying a list of
//! half-plane constraints `c1*r1 + c2*r2 <= rhs` with `c1, c2 >= 0`. Such a
//! region is convex and down-closed, so it is determined by the Pareto
//! corner points returned by [`vertices`]. Constraint counts are small
//! (usually seven), so vertex enumeration intersects every pair of lines.
//!
//! Redundant constraints are never dropped silently: the gap audit compares
//! constraint families one by one. [`RateRegion::normalized`] gives a
//! cleaned-up copy for display.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numfmt::round_sig;

/// Absolute tolerance of every geometric predicate, in bits.
pub const TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateConstraint {
    pub c1: f64,
    pub c2: f64,
    pub rhs: f64,
}

/// Constraint family by coefficient pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    R1,
    R2,
    Sum,
    TwoR1PlusR2,
    R1PlusTwoR2,
    Other,
}

impl Family {
    /// The five families compared by the gap audit, in report order.
    pub const AUDITED: [Family; 5] = [Family::R1, Family::R2, Family::Sum, Family::TwoR1PlusR2, Family::R1PlusTwoR2];
}

impl RateConstraint {
    pub fn new(c1: f64, c2: f64, rhs: f64) -> Result<Self> {
        if !(c1.is_finite() && c2.is_finite() && c1 >= 0.0 && c2 >= 0.0) {
            return Err(Error::InvalidConstraint(format!("coefficients must be finite and >= 0, got ({c1}, {c2})")));
        }
        if c1 == 0.0 && c2 == 0.0 {
            return Err(Error::InvalidConstraint("both coefficients are zero".into()));
        }
        if !rhs.is_finite() {
            return Err(Error::InvalidConstraint(format!("rhs must be finite, got {rhs}")));
        }
        Ok(Self { c1, c2, rhs })
    }

    pub fn r1(rhs: f64) -> Self {
        Self { c1: 1.0, c2: 0.0, rhs }
    }

    pub fn r2(rhs: f64) -> Self {
        Self { c1: 0.0, c2: 1.0, rhs }
    }

    pub fn sum(rhs: f64) -> Self {
        Self { c1: 1.0, c2: 1.0, rhs }
    }

    pub fn two_r1_r2(rhs: f64) -> Self {
        Self { c1: 2.0, c2: 1.0, rhs }
    }

    pub fn r1_two_r2(rhs: f64) -> Self {
        Self { c1: 1.0, c2: 2.0, rhs }
    }

    pub fn family(&self) -> Family {
        match (self.c1, self.c2) {
            (c1, c2) if c1 == 1.0 && c2 == 0.0 => Family::R1,
            (c1, c2) if c1 == 0.0 && c2 == 1.0 => Family::R2,
            (c1, c2) if c1 == 1.0 && c2 == 1.0 => Family::Sum,
            (c1, c2) if c1 == 2.0 && c2 == 1.0 => Family::TwoR1PlusR2,
            (c1, c2) if c1 == 1.0 && c2 == 2.0 => Family::R1PlusTwoR2,
            _ => Family::Other,
        }
    }

    #[inline]
    pub fn value(&self, p: Vertex) -> f64 {
        self.c1 * p.r1 + self.c2 * p.r2
    }

    pub fn swapped(&self) -> Self {
        Self { c1: self.c2, c2: self.c1, rhs: self.rhs }
    }
}

impl fmt::Display for RateConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*R1 + {}*R2 <= {}", self.c1, self.c2, self.rhs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Vertex {
    pub r1: f64,
    pub r2: f64,
}

impl Vertex {
    pub const fn new(r1: f64, r2: f64) -> Self {
        Self { r1, r2 }
    }

    pub fn approx_eq(&self, other: &Vertex, tol: f64) -> bool {
        (self.r1 - other.r1).abs() <= tol && (self.r2 - other.r2).abs() <= tol
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateRegion {
    pub constraints: Vec<RateConstraint>,
}

impl RateRegion {
    pub fn new(constraints: Vec<RateConstraint>) -> Self {
        Self { constraints }
    }

    /// `r1 <= a`, `r2 <= b`.
    pub fn boxed(a: f64, b: f64) -> Self {
        Self::new(vec![RateConstraint::r1(a), RateConstraint::r2(b)])
    }

    pub fn is_bounded(&self) -> bool {
        let caps_r1 = self.constraints.iter().any(|c| c.c1 > 0.0);
        let caps_r2 = self.constraints.iter().any(|c| c.c2 > 0.0);
        caps_r1 && caps_r2
    }

    pub fn family(&self, family: Family) -> impl Iterator<Item = &RateConstraint> {
        self.constraints.iter().filter(move |c| c.family() == family)
    }

    /// Tightest right-hand side among the constraints of one family.
    pub fn family_min(&self, family: Family) -> Option<f64> {
        self.family(family).map(|c| c.rhs).reduce(f64::min)
    }

    /// Region with the user labels exchanged.
    pub fn swapped(&self) -> Self {
        Self::new(self.constraints.iter().map(RateConstraint::swapped).collect())
    }

    /// Copy with identical constraints merged and constraints that do not
    /// touch the region removed. Keeps the original order otherwise.
    pub fn normalized(&self) -> Result<Self> {
        let verts = vertices(self)?;
        let mut kept: Vec<RateConstraint> = Vec::new();
        for c in &self.constraints {
            let tight = verts.iter().filter(|v| (c.value(**v) - c.rhs).abs() <= TOL).count();
            // A line touching at a single vertex is supporting, not a facet,
            // unless the region itself is a single point or a segment.
            let facet = tight >= 2 || (tight == 1 && verts.len() == 1);
            let dup = kept.iter().any(|k| k.c1 == c.c1 && k.c2 == c.c2 && (k.rhs - c.rhs).abs() <= TOL);
            if facet && !dup {
                kept.push(*c);
            }
        }
        Ok(Self::new(kept))
    }

    /// Canonical JSON view: 12 significant digits for every number.
    pub fn to_json_view(&self) -> Result<RegionJson> {
        let verts = vertices(self)?;
        Ok(RegionJson {
            constraints: self
                .constraints
                .iter()
                .map(|c| RateConstraint { c1: round_sig(c.c1), c2: round_sig(c.c2), rhs: round_sig(c.rhs) })
                .collect(),
            vertices: verts.iter().map(|v| [round_sig(v.r1), round_sig(v.r2)]).collect(),
        })
    }
}

/// Serialized shape of a region.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionJson {
    pub constraints: Vec<RateConstraint>,
    pub vertices: Vec<[f64; 2]>,
}

fn check_enumerable(region: &RateRegion) -> Result<()> {
    if !region.is_bounded() {
        return Err(Error::UnboundedRegion);
    }
    for (index, c) in region.constraints.iter().enumerate() {
        if c.rhs < -TOL {
            return Err(Error::EmptyRegion { index, rhs: c.rhs });
        }
    }
    Ok(())
}

/// Extreme points of the region, deduplicated at [`TOL`], in clockwise
/// order around the origin: `r1` increasing and `r2` decreasing, up to
/// rounding in the last place.
///
/// The origin is only reported when it is the whole region; otherwise the
/// list runs from the `r2` intercept to the `r1` intercept.
pub fn vertices(region: &RateRegion) -> Result<Vec<Vertex>> {
    check_enumerable(region)?;

    // Axes as constraints -r1 <= 0 and -r2 <= 0.
    let mut lines: Vec<(f64, f64, f64)> = region.constraints.iter().map(|c| (c.c1, c.c2, c.rhs.max(0.0))).collect();
    lines.push((-1.0, 0.0, 0.0));
    lines.push((0.0, -1.0, 0.0));

    let feasible =
        |p: Vertex| p.r1 >= -TOL && p.r2 >= -TOL && region.constraints.iter().all(|c| c.value(p) <= c.rhs + TOL);

    let mut points: Vec<Vertex> = Vec::new();
    for i in 0..lines.len() {
        for j in (i + 1)..lines.len() {
            let (a1, b1, e1) = lines[i];
            let (a2, b2, e2) = lines[j];
            let det = a1 * b2 - a2 * b1;
            if det.abs() < 1e-14 {
                continue;
            }
            let r1 = (e1 * b2 - e2 * b1) / det;
            let r2 = (a1 * e2 - a2 * e1) / det;
            let p = Vertex::new(r1, r2);
            if feasible(p) {
                points.push(Vertex::new(r1.max(0.0), r2.max(0.0)));
            }
        }
    }

    // Angle order stays correct when two vertices share an r1 that rounds differently.
    points.sort_by(|a, b| b.r2.atan2(b.r1).total_cmp(&a.r2.atan2(a.r1)));
    let mut out: Vec<Vertex> = Vec::with_capacity(points.len());
    for p in points {
        if !out.iter().any(|q| q.approx_eq(&p, TOL)) {
            out.push(p);
        }
    }
    // A feasible point with two independent tight lines is extreme, so
    // only the origin needs removing.
    let origin = Vertex::new(0.0, 0.0);
    if out.len() > 1 {
        out.retain(|p| !p.approx_eq(&origin, TOL));
    }
    Ok(out)
}

/// Membership with slack `tol` on every constraint and on the axes.
pub fn contains(region: &RateRegion, point: Vertex, tol: f64) -> bool {
    point.r1 >= -tol && point.r2 >= -tol && region.constraints.iter().all(|c| c.value(point) <= c.rhs + tol)
}

/// Largest `t` with `(t, t)` in the region.
pub fn symmetric_rate(region: &RateRegion) -> f64 {
    region.constraints.iter().map(|c| c.rhs / (c.c1 + c.c2)).fold(f64::INFINITY, f64::min).max(0.0)
}

/// Concatenates the constraint lists.
pub fn intersect(a: &RateRegion, b: &RateRegion) -> RateRegion {
    let mut constraints = a.constraints.clone();
    constraints.extend_from_slice(&b.constraints);
    RateRegion::new(constraints)
}

/// Every vertex of `inner` must sit inside `outer`.
pub fn check_containment(inner: &RateRegion, outer: &RateRegion) -> Result<()> {
    for v in vertices(inner)? {
        if !contains(outer, v, TOL) {
            return Err(Error::Containment { r1: v.r1, r2: v.r2 });
        }
    }
    Ok(())
}

/// `inner` is within `gap` bits of `outer` if every outer vertex, moved
/// down by `gap` in each coordinate (clamped at zero), lands in `inner`.
/// Vertex checks suffice because `inner` is convex and down-closed.
pub fn gap_certificate(inner: &RateRegion, outer: &RateRegion, gap: f64) -> Result<bool> {
    check_containment(inner, outer)?;
    Ok(vertices(outer)?.iter().all(|v| {
        let shifted = Vertex::new((v.r1 - gap).max(0.0), (v.r2 - gap).max(0.0));
        contains(inner, shifted, TOL)
    }))
}

/// Weaker form of [`gap_certificate`] without clamping: every outer vertex
/// moved down by `gap` satisfies each inner constraint, negative
/// coordinates allowed. Family-wise rhs gaps of `gap * (c1 + c2)` imply
/// it; the clamped form additionally compares the axis intercepts.
pub fn unclamped_gap_certificate(inner: &RateRegion, outer: &RateRegion, gap: f64) -> Result<bool> {
    check_containment(inner, outer)?;
    Ok(vertices(outer)?.iter().all(|v| {
        let shifted = Vertex::new(v.r1 - gap, v.r2 - gap);
        inner.constraints.iter().all(|c| c.value(shifted) <= c.rhs + TOL)
    }))
}

pub fn one_bit_certificate(inner: &RateRegion, outer: &RateRegion) -> Result<bool> {
    gap_certificate(inner, outer, 1.0)
}

/// Every outer vertex halved lies in `inner`.
pub fn within_half_certificate(inner: &RateRegion, outer: &RateRegion) -> Result<bool> {
    check_containment(inner, outer)?;
    Ok(vertices(outer)?.iter().all(|v| contains(inner, Vertex::new(v.r1 / 2.0, v.r2 / 2.0), TOL)))
}

/// Vertex lists equal element-wise within `tol`.
pub fn same_vertex_set(a: &[Vertex], b: &[Vertex], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(p, q)| p.approx_eq(q, tol))
}
