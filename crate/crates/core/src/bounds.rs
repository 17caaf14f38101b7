//! Outer bounds and exact capacity expressions.

use serde::Serialize;

use crate::channel::{classify, ChannelParams, ClassTag};
use crate::error::{Error, Result};
use crate::lg;
use crate::region::{RateConstraint as C, RateRegion};

/// `log(1 + inr1 + snr1/(1+inr2)) + log(1 + inr2 + snr2/(1+inr1))`.
pub fn new_sum_bound(p: &ChannelParams) -> f64 {
    lg(1.0 + p.inr1 + p.snr1 / (1.0 + p.inr2)) + lg(1.0 + p.inr2 + p.snr2 / (1.0 + p.inr1))
}

fn require(p: &ChannelParams, expected: &'static str, ok: impl Fn(ClassTag) -> bool) -> Result<ClassTag> {
    let tag = classify(p).tag;
    if ok(tag) {
        Ok(tag)
    } else {
        Err(Error::ClassMismatch { expected, actual: tag })
    }
}

/// Seven-constraint outer bound for weak interference, in the order
/// `R1`, `R2`, one-sided sum bound for each side, the genie sum bound,
/// `2R1+R2`, `R1+2R2`.
pub fn weak_outer(p: &ChannelParams) -> Result<RateRegion> {
    require(p, "weak", |t| t == ClassTag::Weak)?;
    let &ChannelParams { snr1: s1, snr2: s2, inr1: i1, inr2: i2 } = p;
    Ok(RateRegion::new(vec![
        C::r1(lg(1.0 + s1)),
        C::r2(lg(1.0 + s2)),
        C::sum(lg(1.0 + s1) + lg(1.0 + s2 / (1.0 + i2))),
        C::sum(lg(1.0 + s2) + lg(1.0 + s1 / (1.0 + i1))),
        C::sum(new_sum_bound(p)),
        C::two_r1_r2(lg(1.0 + s1 + i1) + lg(1.0 + i2 + s2 / (1.0 + i1)) + lg((1.0 + s1) / (1.0 + i2))),
        C::r1_two_r2(lg(1.0 + s2 + i2) + lg(1.0 + i1 + s1 / (1.0 + i2)) + lg((1.0 + s2) / (1.0 + i1))),
    ]))
}

fn mixed_outer_at1(p: &ChannelParams) -> RateRegion {
    let &ChannelParams { snr1: s1, snr2: s2, inr1: i1, inr2: i2 } = p;
    RateRegion::new(vec![
        C::r1(lg(1.0 + s1)),
        C::r2(lg(1.0 + s2)),
        C::sum(lg(1.0 + s1) + lg(1.0 + s2 / (1.0 + i2))),
        C::sum(lg(1.0 + s1 + i1)),
        C::r1_two_r2(lg(1.0 + s2 + i2) + lg(1.0 + i1 + s1 / (1.0 + i2)) + lg(1.0 + s2 / (1.0 + i1))),
    ])
}

/// Five-constraint outer bound for mixed interference. For a channel
/// strong at receiver 2 the bound is computed on the swapped channel and
/// mapped back, so its weighted constraint is `2R1+R2`.
pub fn mixed_outer(p: &ChannelParams) -> Result<RateRegion> {
    match require(p, "mixed", |t| t.is_mixed())? {
        ClassTag::MixedStrongAt1 => Ok(mixed_outer_at1(p)),
        _ => Ok(mixed_outer_at1(&p.swapped()).swapped()),
    }
}

/// Capacity region under strong interference: the intersection of the two
/// multiple-access regions.
pub fn strong_capacity(p: &ChannelParams) -> Result<RateRegion> {
    require(p, "strong", |t| t == ClassTag::Strong)?;
    Ok(RateRegion::new(vec![
        C::r1(lg(1.0 + p.snr1)),
        C::r2(lg(1.0 + p.snr2)),
        C::sum(lg(1.0 + p.snr1 + p.inr1)),
        C::sum(lg(1.0 + p.snr2 + p.inr2)),
    ]))
}

/// The outer bound matching the channel class.
pub fn outer_for_class(p: &ChannelParams) -> Result<RateRegion> {
    match classify(p).tag {
        ClassTag::Weak => weak_outer(p),
        ClassTag::MixedStrongAt1 | ClassTag::MixedStrongAt2 => mixed_outer(p),
        ClassTag::Strong => strong_capacity(p),
    }
}

pub fn pt2pt_outer(p: &ChannelParams) -> RateRegion {
    RateRegion::boxed(lg(1.0 + p.snr1), lg(1.0 + p.snr2))
}

/// Sum capacity of the weak one-sided channel, where only receiver 2 sees
/// interference.
pub fn one_sided_sum_capacity(snr1: f64, snr2: f64, inr2: f64) -> Result<f64> {
    if !(inr2 < snr1) {
        return Err(Error::Domain(format!(
            "one-sided sum capacity needs inr2 < snr1, got inr2 = {inr2}, snr1 = {snr1}"
        )));
    }
    Ok(lg(1.0 + snr1) + lg(1.0 + snr2 / (1.0 + inr2)))
}

/// Symmetric capacity when `inr >= snr`.
pub fn symmetric_capacity_strong(snr: f64, inr: f64) -> Result<f64> {
    if inr < snr {
        return Err(Error::ClassMismatch { expected: "strong", actual: ClassTag::Weak });
    }
    if inr >= snr * snr + snr {
        Ok(lg(1.0 + snr))
    } else {
        Ok(0.5 * lg(1.0 + snr + inr))
    }
}

/// Symmetric-rate outer bounds. Members that do not apply at the given
/// parameters are `None`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymmetricBoundSet {
    /// One-sided genie bound, stated for `inr < snr`.
    pub genie_ub: Option<f64>,
    pub new_ub: f64,
    /// Defined for `0 < inr < snr`.
    pub kramer_ub: Option<f64>,
    /// Point-to-point cap, included for `inr < 1`.
    pub pt2pt_ub: Option<f64>,
    pub best: f64,
}

pub fn genie_bound(snr: f64, inr: f64) -> f64 {
    0.5 * lg(1.0 + snr) + 0.5 * lg(1.0 + snr / (1.0 + inr))
}

/// Half of [`new_sum_bound`] on a symmetric channel.
pub fn new_symmetric_bound(snr: f64, inr: f64) -> f64 {
    lg(1.0 + inr + snr / (1.0 + inr))
}

pub fn kramer_bound(snr: f64, inr: f64) -> Result<f64> {
    if !(inr > 0.0 && inr < snr) {
        return Err(Error::Domain(format!("needs 0 < inr < snr, got snr = {snr}, inr = {inr}")));
    }
    let t = 1.0 + snr / inr;
    Ok(lg(2.0 - t + (t * t + 4.0 * snr * t).sqrt()) - 1.0)
}

pub fn symmetric_bounds(snr: f64, inr: f64) -> SymmetricBoundSet {
    let genie_ub = (inr < snr).then(|| genie_bound(snr, inr));
    let new_ub = new_symmetric_bound(snr, inr);
    let kramer_ub = kramer_bound(snr, inr).ok();
    let pt2pt_ub = (inr < 1.0).then(|| lg(1.0 + snr));
    let best = [genie_ub, Some(new_ub), kramer_ub, pt2pt_ub].into_iter().flatten().fold(f64::INFINITY, f64::min);
    SymmetricBoundSet { genie_ub, new_ub, kramer_ub, pt2pt_ub, best }
}
