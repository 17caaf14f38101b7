//! Han–Kobayashi achievable regions for fixed Gaussian power splits.
//!
//! Each user superposes a private codeword, treated as noise at the other
//! receiver, on a common codeword decoded by both. A [`PowerSplit`] is
//! parameterized by the interference the private part causes at the
//! unintended receiver. All regions use constant time sharing and Gaussian
//! codebooks.

use serde::Serialize;

use crate::channel::{alpha, classify, ChannelParams, ClassTag};
use crate::error::{Error, Result};
use crate::lg;
use crate::region::{RateConstraint, RateRegion, Vertex};

/// Private interference levels of a Han–Kobayashi split.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerSplit {
    /// Interference from user 1's private message at receiver 2.
    pub inr_p2: f64,
    /// Interference from user 2's private message at receiver 1.
    pub inr_p1: f64,
}

impl PowerSplit {
    pub const fn new(inr_p2: f64, inr_p1: f64) -> Self {
        Self { inr_p2, inr_p1 }
    }

    /// Everything common.
    pub const ALL_COMMON: PowerSplit = PowerSplit::new(0.0, 0.0);

    /// Everything private: the treat-as-noise scheme.
    pub fn all_private(params: &ChannelParams) -> Self {
        Self::new(params.inr2, params.inr1)
    }

    pub fn validate(&self, params: &ChannelParams) -> Result<()> {
        let ok = |p: f64, cap: f64| p.is_finite() && (0.0..=cap).contains(&p);
        if !ok(self.inr_p2, params.inr2) {
            return Err(Error::InvalidSplit(format!(
                "inr_p2 = {} must lie in [0, inr2 = {}]",
                self.inr_p2, params.inr2
            )));
        }
        if !ok(self.inr_p1, params.inr1) {
            return Err(Error::InvalidSplit(format!(
                "inr_p1 = {} must lie in [0, inr1 = {}]",
                self.inr_p1, params.inr1
            )));
        }
        Ok(())
    }

    pub fn swapped(&self) -> Self {
        Self::new(self.inr_p1, self.inr_p2)
    }
}

/// SNR of each user's private message at its own receiver.
fn private_snrs(params: &ChannelParams, split: &PowerSplit) -> (f64, f64) {
    let s1p = if params.inr2 > 0.0 { params.snr1 * split.inr_p2 / params.inr2 } else { params.snr1 };
    let s2p = if params.inr1 > 0.0 { params.snr2 * split.inr_p1 / params.inr1 } else { params.snr2 };
    (s1p, s2p)
}

/// Gaussian evaluation of the Han–Kobayashi region for a fixed split.
///
/// Constraint order: `R1`, `R2`, three sum bounds, `2R1+R2`, `R1+2R2`.
pub fn hk_region(params: &ChannelParams, split: &PowerSplit) -> Result<RateRegion> {
    split.validate(params)?;
    let &ChannelParams { snr1, snr2, inr1, inr2 } = params;
    let (s1p, s2p) = private_snrs(params, split);
    let n1 = 1.0 + split.inr_p1;
    let n2 = 1.0 + split.inr_p2;

    // Mutual-information building blocks, noise floor includes the other
    // user's private interference.
    let all1 = lg((1.0 + snr1 + inr1) / n1);
    let all2 = lg((1.0 + snr2 + inr2) / n2);
    let priv1 = lg(1.0 + s1p / n1);
    let priv2 = lg(1.0 + s2p / n2);
    let mix1 = lg(1.0 + (s1p + inr1 - split.inr_p1) / n1);
    let mix2 = lg(1.0 + (s2p + inr2 - split.inr_p2) / n2);

    Ok(RateRegion::new(vec![
        RateConstraint::r1(lg(1.0 + snr1 / n1)),
        RateConstraint::r2(lg(1.0 + snr2 / n2)),
        RateConstraint::sum(all2 + priv1),
        RateConstraint::sum(all1 + priv2),
        RateConstraint::sum(mix1 + mix2),
        RateConstraint::two_r1_r2(all1 + priv1 + mix2),
        RateConstraint::r1_two_r2(all2 + priv2 + mix1),
    ]))
}

/// Split that the one-bit guarantee is proved for: private interference at
/// the noise level on weak links, all-common on strong ones.
pub fn recommended_split(params: &ChannelParams) -> PowerSplit {
    let p2 = params.inr2.min(1.0);
    let p1 = params.inr1.min(1.0);
    match classify(params).tag {
        ClassTag::Weak => PowerSplit::new(p2, p1),
        ClassTag::MixedStrongAt1 => PowerSplit::new(p2, 0.0),
        ClassTag::MixedStrongAt2 => PowerSplit::new(0.0, p1),
        ClassTag::Strong => PowerSplit::ALL_COMMON,
    }
}

/// Symmetric rate of the split with private interference at noise level;
/// below `inr = 1` the treat-as-noise rate.
pub fn symmetric_hk_rate(snr: f64, inr: f64) -> f64 {
    if inr < 1.0 {
        return lg(1.0 + snr / (1.0 + inr));
    }
    let a = 0.5 * lg(1.0 + snr + inr) + 0.5 * lg(2.0 + snr / inr) - 1.0;
    let b = lg(1.0 + inr + snr / inr) - 1.0;
    a.min(b)
}

pub fn treat_as_noise_region(params: &ChannelParams) -> RateRegion {
    RateRegion::boxed(lg(1.0 + params.snr1 / (1.0 + params.inr1)), lg(1.0 + params.snr2 / (1.0 + params.inr2)))
}

/// Corner reached when receiver 2 decodes and strips user 1 first while
/// user 2 runs at its interference-free rate.
pub fn costa_point(params: &ChannelParams) -> Vertex {
    Vertex::new(lg(1.0 + params.inr2 / (1.0 + params.snr2)), lg(1.0 + params.snr2))
}

/// Symmetric treat-as-noise rate.
pub fn regime1_rate(snr: f64, inr: f64) -> f64 {
    lg(1.0 + snr / (1.0 + inr))
}

/// Distance from [`regime1_rate`] to the symmetric outer bound
/// `log(1 + inr + snr/(1+inr))`.
pub fn regime1_gap(snr: f64, inr: f64) -> f64 {
    lg(1.0 + inr * (1.0 + inr) / (1.0 + inr + snr))
}

/// Validity window for `gamma` at a given `alpha`, as an open interval.
pub fn regime2_gamma_window(alpha: f64) -> Result<(f64, f64)> {
    if !(alpha > 0.5 && alpha < 2.0 / 3.0) {
        return Err(Error::Domain(format!("alpha = {alpha} outside (1/2, 2/3)")));
    }
    Ok(((2.0 * alpha - 1.0) / (1.0 - alpha), 1.0))
}

/// Symmetric rate with private interference `(inr/snr)^(1-gamma)` for
/// `1/2 < alpha < 2/3`.
pub fn regime2_rate(snr: f64, inr: f64, gamma: f64) -> Result<f64> {
    let a = alpha(snr, inr)?;
    let (lo, hi) = regime2_gamma_window(a)?;
    if !(gamma > lo && gamma < hi) {
        return Err(Error::Domain(format!("gamma = {gamma} outside ({lo}, {hi}) at alpha = {a}")));
    }
    let inr_p = (inr / snr).powf(1.0 - gamma);
    let private = lg(1.0 + snr * inr_p / (inr * (1.0 + inr_p)));
    let denom = inr + (snr + inr) * inr_p;
    let common_mac = 0.5 * lg(1.0 + (snr + inr) * (inr - inr_p) / denom);
    let common_own = lg(1.0 + inr * (inr - inr_p) / denom);
    Ok(private + common_mac.min(common_own))
}

/// Marginal rate densities at normalized power level `z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DifferentialRatePair {
    pub r1: f64,
    pub r2: f64,
}

/// Raw ratio form; divide by `ln 2` for bits per unit power.
pub fn differential_rates(z: f64, snr1: f64, inr2: f64) -> Result<DifferentialRatePair> {
    if !(z.is_finite() && z >= 0.0) {
        return Err(Error::Domain(format!("z must be finite and >= 0, got {z}")));
    }
    Ok(DifferentialRatePair { r1: snr1 / (1.0 + snr1 * z), r2: inr2 / (1.0 + inr2 * z) })
}
