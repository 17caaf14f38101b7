//! Generalized degrees of freedom.
//!
//! With `log SNR2 = a1 log SNR1`, `log INR1 = a2 log SNR1` and
//! `log INR2 = a3 log SNR1`, each rate normalized by its own `log SNR`
//! converges to a piecewise-linear region in `(d1, d2)`. Regions reuse
//! [`RateRegion`] with general coefficients, so a constraint reads
//! `c1*d1 + c2*d2 <= rhs` with `c2` already multiplied by `a1`.

use serde::Serialize;

use crate::bounds::{symmetric_bounds, symmetric_capacity_strong};
use crate::channel::{classify, ChannelParams, ClassTag};
use crate::error::{Error, Result};
use crate::hk::symmetric_hk_rate;
use crate::lg;
use crate::region::{RateConstraint, RateRegion};

/// Regions in normalized coordinates `(d1, d2)`.
pub type GdofRegion = RateRegion;

#[inline]
fn pos(x: f64) -> f64 {
    x.max(0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GdofParams {
    pub alpha1: f64,
    pub alpha2: f64,
    pub alpha3: f64,
}

impl GdofParams {
    pub fn new(alpha1: f64, alpha2: f64, alpha3: f64) -> Result<Self> {
        if !(alpha1.is_finite() && alpha1 > 0.0) {
            return Err(Error::InvalidParameter(format!("alpha1 must be > 0, got {alpha1}")));
        }
        for (name, a) in [("alpha2", alpha2), ("alpha3", alpha3)] {
            if !(a.is_finite() && a >= 0.0) {
                return Err(Error::InvalidParameter(format!("{name} must be >= 0, got {a}")));
            }
        }
        Ok(Self { alpha1, alpha2, alpha3 })
    }

    pub fn symmetric(alpha: f64) -> Result<Self> {
        Self::new(1.0, alpha, alpha)
    }

    /// Exponents of a concrete channel; needs `snr1 > 1`.
    pub fn from_channel(p: &ChannelParams) -> Result<Self> {
        if !(p.snr1 > 1.0) {
            return Err(Error::Domain(format!("snr1 must be > 1, got {}", p.snr1)));
        }
        let l = p.snr1.ln();
        Self::new(p.snr2.ln() / l, p.inr1.ln() / l, p.inr2.ln() / l)
    }

    /// Class of any channel with these exponents at high SNR.
    pub fn class(&self) -> ClassTag {
        match (self.alpha2 >= self.alpha1, self.alpha3 >= 1.0) {
            (false, false) => ClassTag::Weak,
            (true, false) => ClassTag::MixedStrongAt1,
            (false, true) => ClassTag::MixedStrongAt2,
            (true, true) => ClassTag::Strong,
        }
    }

    /// Exponents with the user labels exchanged, normalized by `log SNR2`.
    pub fn swapped(&self) -> Self {
        Self { alpha1: 1.0 / self.alpha1, alpha2: self.alpha3 / self.alpha1, alpha3: self.alpha2 / self.alpha1 }
    }
}

/// `d1 + k*d2 <= rhs`, where `k` counts copies of `a1 d2`.
fn c(g: &GdofParams, k1: f64, k2: f64, rhs: f64) -> RateConstraint {
    RateConstraint { c1: k1, c2: k2 * g.alpha1, rhs }
}

fn unit_box() -> Vec<RateConstraint> {
    vec![RateConstraint::r1(1.0), RateConstraint::r2(1.0)]
}

fn require(g: &GdofParams, expected: &'static str, ok: impl Fn(ClassTag) -> bool) -> Result<()> {
    let actual = g.class();
    if ok(actual) {
        Ok(())
    } else {
        Err(Error::ClassMismatch { expected, actual })
    }
}

/// Symmetric gdof: the "W" curve.
pub fn d_sym(alpha: f64) -> Result<f64> {
    if !(alpha >= 0.0) {
        return Err(Error::Domain(format!("alpha must be >= 0, got {alpha}")));
    }
    Ok(if alpha <= 0.5 {
        1.0 - alpha
    } else if alpha <= 2.0 / 3.0 {
        alpha
    } else if alpha <= 1.0 {
        1.0 - alpha / 2.0
    } else if alpha <= 2.0 {
        alpha / 2.0
    } else {
        1.0
    })
}

pub fn weak_gdof_region(g: &GdofParams) -> Result<GdofRegion> {
    require(g, "weak", |t| t == ClassTag::Weak)?;
    let &GdofParams { alpha1: a1, alpha2: a2, alpha3: a3 } = g;
    let mut cs = unit_box();
    cs.extend([
        c(g, 1.0, 1.0, 1.0 + pos(a1 - a3)),
        c(g, 1.0, 1.0, a1 + pos(1.0 - a2)),
        c(g, 1.0, 1.0, a2.max(1.0 - a3) + a3.max(a1 - a2)),
        c(g, 2.0, 1.0, 1f64.max(a2) + a3.max(a1 - a2) + 1.0 - a3),
        c(g, 1.0, 2.0, a1.max(a3) + a2.max(1.0 - a3) + a1 - a2),
    ]);
    Ok(RateRegion::new(cs))
}

fn mixed_at1(g: &GdofParams) -> Vec<RateConstraint> {
    let &GdofParams { alpha1: a1, alpha2: a2, alpha3: a3 } = g;
    let mut cs = unit_box();
    cs.extend([
        c(g, 1.0, 1.0, 1.0 + pos(a1 - a3)),
        c(g, 1.0, 1.0, 1f64.max(a2)),
        c(g, 1.0, 2.0, a1.max(a3) + a2.max(1.0 - a3)),
    ]);
    cs
}

/// Mixed region. When receiver 2 is the strong side the receiver-1 form
/// is evaluated on the swapped exponents and mapped back.
pub fn mixed_gdof_region(g: &GdofParams) -> Result<GdofRegion> {
    require(g, "mixed", |t| t.is_mixed())?;
    if g.class() == ClassTag::MixedStrongAt1 {
        return Ok(RateRegion::new(mixed_at1(g)));
    }
    // swapped constraints are in units of log SNR2; scale back by a1
    let cs = mixed_at1(&g.swapped())
        .into_iter()
        .map(|k| {
            let (c1, c2, rhs) = (k.c2 * g.alpha1, k.c1 * g.alpha1, k.rhs * g.alpha1);
            if c2 == 0.0 {
                RateConstraint::r1(rhs / c1)
            } else if c1 == 0.0 {
                RateConstraint::r2(rhs / c2)
            } else {
                RateConstraint { c1, c2, rhs }
            }
        })
        .collect();
    Ok(RateRegion::new(cs))
}

pub fn strong_gdof_region(g: &GdofParams) -> Result<GdofRegion> {
    require(g, "strong", |t| t == ClassTag::Strong)?;
    let &GdofParams { alpha1: a1, alpha2: a2, alpha3: a3 } = g;
    let mut cs = unit_box();
    cs.extend([c(g, 1.0, 1.0, 1f64.max(a2)), c(g, 1.0, 1.0, a1.max(a3))]);
    Ok(RateRegion::new(cs))
}

/// Region for `a1 = 1`, `a2 = a3 = alpha`.
pub fn symmetric_gdof_region(alpha: f64) -> Result<GdofRegion> {
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(Error::Domain(format!("alpha must be >= 0, got {alpha}")));
    }
    let mut cs = unit_box();
    if alpha < 1.0 {
        let m = alpha.max(1.0 - alpha);
        cs.extend([
            RateConstraint::sum((2.0 - alpha).min(2.0 * m)),
            RateConstraint::two_r1_r2(2.0 - alpha + m),
            RateConstraint::r1_two_r2(2.0 - alpha + m),
        ]);
    } else {
        cs.push(RateConstraint::sum(alpha));
    }
    Ok(RateRegion::new(cs))
}

/// One-sided channel (`a2 = 0`, no interference at receiver 1).
pub fn one_sided_gdof_region(g: &GdofParams, strong: bool) -> Result<GdofRegion> {
    if g.alpha2 != 0.0 {
        return Err(Error::InvalidParameter(format!("one-sided region needs alpha2 = 0, got {}", g.alpha2)));
    }
    let &GdofParams { alpha1: a1, alpha3: a3, .. } = g;
    let mut cs = unit_box();
    let rhs = if strong { a1.max(a3) } else { 1f64.max(1.0 + a1 - a3) };
    cs.push(c(g, 1.0, 1.0, rhs));
    Ok(RateRegion::new(cs))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BaselineScheme {
    Orthogonalize,
    TreatAsNoise,
}

pub fn baseline_gdof(alpha: f64, scheme: BaselineScheme) -> Result<f64> {
    if !(alpha >= 0.0) {
        return Err(Error::Domain(format!("alpha must be >= 0, got {alpha}")));
    }
    Ok(match scheme {
        BaselineScheme::Orthogonalize => 0.5,
        BaselineScheme::TreatAsNoise => pos(1.0 - alpha),
    })
}

/// Normalized symmetric rates at a finite SNR.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Convergence {
    pub lower: f64,
    pub upper: f64,
    pub d_limit: f64,
}

/// Achievable and upper-bound symmetric rates at `inr = snr^alpha`,
/// divided by `log snr`. For `alpha >= 1` both use the exact capacity.
pub fn finite_snr_convergence(snr: f64, alpha: f64) -> Result<Convergence> {
    if !(snr > 2.0 && snr.is_finite()) {
        return Err(Error::Domain(format!("snr must be > 2, got {snr}")));
    }
    let d_limit = d_sym(alpha)?;
    let inr = snr.powf(alpha);
    let l = lg(snr);
    let (lower, upper) = if alpha >= 1.0 {
        let cap = symmetric_capacity_strong(snr, inr.max(snr))?;
        (cap, cap)
    } else {
        (symmetric_hk_rate(snr, inr), symmetric_bounds(snr, inr).best)
    };
    Ok(Convergence { lower: lower / l, upper: upper / l, d_limit })
}

/// High-SNR piecewise-linear approximation of the outer bound, in bits.
pub fn first_order_expansion(p: &ChannelParams) -> Result<RateRegion> {
    let tag = classify(p).tag;
    for (name, v) in [("snr1", p.snr1), ("snr2", p.snr2)] {
        if !(v > 1.0) {
            return Err(Error::Domain(format!("{name} must be > 1, got {v}")));
        }
    }
    for (name, v) in [("inr1", p.inr1), ("inr2", p.inr2)] {
        if !(v > 0.0) {
            return Err(Error::Domain(format!("{name} must be > 0, got {v}")));
        }
    }
    match tag {
        ClassTag::Weak => Ok(weak_expansion(p)),
        ClassTag::MixedStrongAt1 => Ok(mixed_expansion(p)),
        ClassTag::MixedStrongAt2 => Ok(mixed_expansion(&p.swapped()).swapped()),
        ClassTag::Strong => Err(Error::ClassMismatch { expected: "weak or mixed", actual: tag }),
    }
}

fn weak_expansion(p: &ChannelParams) -> RateRegion {
    let (s1, s2, i1, i2) = (lg(p.snr1), lg(p.snr2), lg(p.inr1), lg(p.inr2));
    RateRegion::new(vec![
        RateConstraint::r1(s1),
        RateConstraint::r2(s2),
        RateConstraint::sum(s1 + pos(s2 - i2)),
        RateConstraint::sum(s2 + pos(s1 - i1)),
        RateConstraint::sum(i1.max(s1 - i2) + i2.max(s2 - i1)),
        RateConstraint::two_r1_r2(s1.max(i1) + i2.max(s2 - i1) + s1 - i2),
        RateConstraint::r1_two_r2(s2.max(i2) + i1.max(s1 - i2) + s2 - i1),
    ])
}

fn mixed_expansion(p: &ChannelParams) -> RateRegion {
    let (s1, s2, i1, i2) = (lg(p.snr1), lg(p.snr2), lg(p.inr1), lg(p.inr2));
    RateRegion::new(vec![
        RateConstraint::r1(s1),
        RateConstraint::r2(s2),
        RateConstraint::sum(s1 + pos(s2 - i2)),
        RateConstraint::sum(s1.max(i1)),
        RateConstraint::r1_two_r2(s2.max(i2) + i1.max(s1 - i2)),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::region::{same_vertex_set, symmetric_rate, vertices};

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn d_sym_examples() {
        assert_eq!(d_sym(0.5).unwrap(), 0.5);
        assert_eq!(d_sym(0.75).unwrap(), 0.625);
        assert_eq!(d_sym(2.0).unwrap(), 1.0);
        assert_eq!(d_sym(0.0).unwrap(), 1.0);
        assert!(d_sym(-0.1).is_err());
    }

    #[test]
    fn weak_region_examples() {
        let r = weak_gdof_region(&GdofParams::symmetric(0.4).unwrap()).unwrap();
        close(symmetric_rate(&r), 0.6, 1e-12);
        let sums: Vec<f64> = r.family(crate::region::Family::Sum).map(|c| c.rhs).collect();
        assert_eq!(sums.len(), 3);
        close(sums[2], 1.2, 1e-12);

        let free = weak_gdof_region(&GdofParams::new(1.0, 0.0, 0.0).unwrap()).unwrap();
        let v = vertices(&free).unwrap();
        assert!(same_vertex_set(&v, &vertices(&RateRegion::boxed(1.0, 1.0)).unwrap(), 1e-12));

        let r = weak_gdof_region(&GdofParams::symmetric(0.75).unwrap()).unwrap();
        close(r.family_min(crate::region::Family::TwoR1PlusR2).unwrap(), 2.0, 1e-12);
        close(symmetric_rate(&r), 0.625, 1e-12);

        assert!(weak_gdof_region(&GdofParams::symmetric(1.2).unwrap()).is_err());
    }

    #[test]
    fn mixed_and_strong_examples() {
        let r = mixed_gdof_region(&GdofParams::new(1.0, 1.5, 0.5).unwrap()).unwrap();
        close(r.family_min(crate::region::Family::Sum).unwrap(), 1.5, 1e-12);
        close(r.family_min(crate::region::Family::R1PlusTwoR2).unwrap(), 2.5, 1e-12);

        let s = strong_gdof_region(&GdofParams::symmetric(1.4).unwrap()).unwrap();
        let want = symmetric_gdof_region(1.4).unwrap();
        assert!(same_vertex_set(&vertices(&s).unwrap(), &vertices(&want).unwrap(), 1e-12));

        let vs = strong_gdof_region(&GdofParams::new(1.0, 2.0, 2.0).unwrap()).unwrap();
        assert_eq!(vertices(&vs).unwrap().len(), 3);
        assert!(strong_gdof_region(&GdofParams::symmetric(0.5).unwrap()).is_err());
    }

    #[test]
    fn mixed_at2_is_mirror() {
        let g = GdofParams::new(1.0, 0.5, 1.5).unwrap();
        let r = mixed_gdof_region(&g).unwrap();
        let m = mixed_gdof_region(&GdofParams::new(1.0, 1.5, 0.5).unwrap()).unwrap().swapped();
        assert!(same_vertex_set(&vertices(&r).unwrap(), &vertices(&m).unwrap(), 1e-12));
    }

    #[test]
    fn symmetric_region_examples() {
        let r = symmetric_gdof_region(0.5).unwrap();
        let v = vertices(&r).unwrap();
        assert!(same_vertex_set(
            &v,
            &[crate::region::Vertex::new(0.0, 1.0), crate::region::Vertex::new(1.0, 0.0)],
            1e-12
        ));
        let one = symmetric_gdof_region(1.0).unwrap();
        close(one.family_min(crate::region::Family::Sum).unwrap(), 1.0, 0.0);
        let r = symmetric_gdof_region(0.6).unwrap();
        close(r.family_min(crate::region::Family::Sum).unwrap(), 1.2, 1e-12);
        close(r.family_min(crate::region::Family::TwoR1PlusR2).unwrap(), 2.0, 1e-12);
    }

    #[test]
    fn one_sided_examples() {
        let r = one_sided_gdof_region(&GdofParams::new(1.0, 0.0, 0.4).unwrap(), false).unwrap();
        let v = vertices(&r).unwrap();
        assert!(v.iter().any(|p| p.approx_eq(&crate::region::Vertex::new(1.0, 0.6), 1e-12)));
        assert!(v.iter().any(|p| p.approx_eq(&crate::region::Vertex::new(0.6, 1.0), 1e-12)));

        let r = one_sided_gdof_region(&GdofParams::new(0.5, 0.0, 0.8).unwrap(), false).unwrap();
        let v = vertices(&r).unwrap();
        assert!(v.iter().any(|p| p.approx_eq(&crate::region::Vertex::new(0.5, 1.0), 1e-12)));

        let r = one_sided_gdof_region(&GdofParams::new(1.0, 0.0, 1.5).unwrap(), true).unwrap();
        close(r.family_min(crate::region::Family::Sum).unwrap(), 1.5, 0.0);
        assert!(one_sided_gdof_region(&GdofParams::new(1.0, 0.1, 0.4).unwrap(), false).is_err());
    }

    #[test]
    fn baselines() {
        assert_eq!(baseline_gdof(0.5, BaselineScheme::Orthogonalize).unwrap(), 0.5);
        close(baseline_gdof(0.3, BaselineScheme::TreatAsNoise).unwrap(), 0.7, 1e-15);
        assert_eq!(baseline_gdof(1.5, BaselineScheme::TreatAsNoise).unwrap(), 0.0);
    }

    #[test]
    fn convergence_examples() {
        let c = finite_snr_convergence(1e12, 0.75).unwrap();
        let tol = 2.0 / 1e12f64.log2();
        assert!((c.lower - 0.625).abs() <= tol && (c.upper - 0.625).abs() <= tol);
        let c = finite_snr_convergence(100.0, 0.5).unwrap();
        close(c.lower, 0.5106, 1e-4);
        assert_eq!(c.d_limit, 0.5);
        let c = finite_snr_convergence(1e9, 0.0).unwrap();
        assert!(c.lower > 0.9 && c.upper > 0.9);
        assert!(finite_snr_convergence(2.0, 0.5).is_err());
    }

    #[test]
    fn expansion_examples() {
        let w = first_order_expansion(&ChannelParams::new(100.0, 100.0, 10.0, 10.0).unwrap()).unwrap();
        close(w.constraints[4].rhs, 100f64.log2(), 1e-12);
        let m = first_order_expansion(&ChannelParams::new(100.0, 10.0, 20.0, 5.0).unwrap()).unwrap();
        close(m.constraints[3].rhs, 6.6439, 1e-4);
        assert!(first_order_expansion(&ChannelParams::new(10.0, 10.0, 100.0, 100.0).unwrap()).is_err());
    }

    #[test]
    fn expansion_is_scaled_gdof_region() {
        let p = ChannelParams::new(1e6, 1e5, 300.0, 40.0).unwrap();
        let g = GdofParams::from_channel(&p).unwrap();
        let e = first_order_expansion(&p).unwrap();
        let r = weak_gdof_region(&g).unwrap();
        let l = lg(p.snr1);
        // gdof region carries the unit box first, then the five couplings
        for (k, ek) in r.constraints[2..].iter().zip(&e.constraints[2..]) {
            close(k.rhs * l, ek.rhs, 1e-9);
        }
    }
}
