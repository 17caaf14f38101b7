//! Channel parameterization and regime classification.
//!
//! A channel instance is fully described by four linear power ratios:
//! the direct-link `snr1`, `snr2` and the cross-link `inr1` (interference
//! of user 2 seen at receiver 1) and `inr2` (user 1 at receiver 2).

use serde::Serialize;

use crate::error::{Error, Result};

/// Converts a value in dB to a linear power ratio.
#[inline]
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

#[inline]
pub fn linear_to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}

/// The four dimensionless power ratios of a two-user Gaussian interference
/// channel. Always finite and nonnegative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChannelParams {
    pub snr1: f64,
    pub snr2: f64,
    /// Interference-to-noise ratio at receiver 1 (caused by user 2).
    pub inr1: f64,
    /// Interference-to-noise ratio at receiver 2 (caused by user 1).
    pub inr2: f64,
}

impl ChannelParams {
    pub fn new(snr1: f64, snr2: f64, inr1: f64, inr2: f64) -> Result<Self> {
        for (name, v) in [("snr1", snr1), ("snr2", snr2), ("inr1", inr1), ("inr2", inr2)] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidParameter(format!("{name} must be finite and >= 0, got {v}")));
            }
        }
        Ok(Self { snr1, snr2, inr1, inr2 })
    }

    pub fn symmetric(snr: f64, inr: f64) -> Result<Self> {
        Self::new(snr, snr, inr, inr)
    }

    pub fn from_db(snr1_db: f64, snr2_db: f64, inr1_db: f64, inr2_db: f64) -> Result<Self> {
        Self::new(db_to_linear(snr1_db), db_to_linear(snr2_db), db_to_linear(inr1_db), db_to_linear(inr2_db))
    }

    /// Builds the ratios from link power gains `g_ij = |h_ij|^2`, transmit
    /// powers and the noise power: `snr_i = g_ii p_i / n0`,
    /// `inr1 = g21 p2 / n0`, `inr2 = g12 p1 / n0`.
    #[allow(clippy::too_many_arguments)]
    pub fn from_physical(g11: f64, g12: f64, g21: f64, g22: f64, p1: f64, p2: f64, n0: f64) -> Result<Self> {
        let inputs = [("g11", g11), ("g12", g12), ("g21", g21), ("g22", g22), ("p1", p1), ("p2", p2)];
        for (name, v) in inputs {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidParameter(format!("{name} must be finite and >= 0, got {v}")));
            }
        }
        if !n0.is_finite() || n0 <= 0.0 {
            return Err(Error::InvalidParameter(format!("n0 must be finite and > 0, got {n0}")));
        }
        Self::new(g11 * p1 / n0, g22 * p2 / n0, g21 * p2 / n0, g12 * p1 / n0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.snr1 == self.snr2 && self.inr1 == self.inr2
    }

    /// The same channel with the user labels exchanged.
    pub fn swapped(&self) -> Self {
        Self { snr1: self.snr2, snr2: self.snr1, inr1: self.inr2, inr2: self.inr1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ClassTag {
    #[serde(rename = "weak")]
    Weak,
    /// `inr1 >= snr2` and `inr2 < snr1`: receiver 1 can decode user 2.
    #[serde(rename = "mixed_strong_at_1")]
    MixedStrongAt1,
    #[serde(rename = "mixed_strong_at_2")]
    MixedStrongAt2,
    #[serde(rename = "strong")]
    Strong,
}

impl ClassTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            ClassTag::Weak => "weak",
            ClassTag::MixedStrongAt1 => "mixed_strong_at_1",
            ClassTag::MixedStrongAt2 => "mixed_strong_at_2",
            ClassTag::Strong => "strong",
        }
    }

    pub fn is_mixed(&self) -> bool {
        matches!(self, ClassTag::MixedStrongAt1 | ClassTag::MixedStrongAt2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InterferenceClass {
    pub tag: ClassTag,
    /// `Some` only for symmetric channels; no general very-strong test exists
    /// for asymmetric ones.
    pub very_strong: Option<bool>,
}

/// Weak needs both cross links strictly below the other user's direct link;
/// equality counts as strong on that side.
pub fn classify(params: &ChannelParams) -> InterferenceClass {
    let strong_at_1 = params.inr1 >= params.snr2;
    let strong_at_2 = params.inr2 >= params.snr1;
    let tag = match (strong_at_1, strong_at_2) {
        (false, false) => ClassTag::Weak,
        (true, false) => ClassTag::MixedStrongAt1,
        (false, true) => ClassTag::MixedStrongAt2,
        (true, true) => ClassTag::Strong,
    };
    let very_strong = params.is_symmetric().then(|| is_very_strong_symmetric(params.snr1, params.inr1));
    InterferenceClass { tag, very_strong }
}

/// `inr >= snr^2 + snr`: each receiver decodes the interference first at no
/// loss to its own rate.
#[inline]
pub fn is_very_strong_symmetric(snr: f64, inr: f64) -> bool {
    inr >= snr * snr + snr
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BSet {
    /// The common-message sum-rate constraint binds.
    B1,
    /// The individual common-message constraint binds.
    B2,
}

impl BSet {
    pub fn as_str(&self) -> &'static str {
        match self {
            BSet::B1 => "B1",
            BSet::B2 => "B2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SymmetricRegime {
    /// 1..=5, ordered by interference level.
    pub regime: u8,
    /// `None` when `inr < 1`.
    pub bset: Option<BSet>,
}

/// Symmetric-channel regime and B-set.
///
/// Regimes 1..4 split at `log INR = (1/2, 2/3, 1) log SNR`, with a boundary
/// going to the larger index. The comparisons are done on powers
/// (`INR^2` vs `SNR`, `INR^3` vs `SNR^2`, `INR` vs `SNR`) so exact boundaries
/// such as SNR = 100, INR = 10 are not lost to rounding in a log ratio.
/// Regime 5 is the very-strong region `INR >= SNR^2 + SNR`.
pub fn symmetric_regime(snr: f64, inr: f64) -> Result<SymmetricRegime> {
    if !(snr.is_finite() && snr > 1.0) {
        return Err(Error::Domain(format!("symmetric regime needs snr > 1, got {snr}")));
    }
    if !(inr.is_finite() && inr >= 0.0) {
        return Err(Error::Domain(format!("inr must be finite and >= 0, got {inr}")));
    }
    let regime = if inr * inr < snr {
        1
    } else if inr.powi(3) < snr * snr {
        2
    } else if inr < snr {
        3
    } else if !is_very_strong_symmetric(snr, inr) {
        4
    } else {
        5
    };
    let bset = (inr >= 1.0).then_some(if snr * (snr + inr) < inr * inr * (inr + 1.0) { BSet::B1 } else { BSet::B2 });
    Ok(SymmetricRegime { regime, bset })
}

/// Interference level `log INR / log SNR`.
pub fn alpha(snr: f64, inr: f64) -> Result<f64> {
    if !(snr.is_finite() && snr > 1.0) || !(inr.is_finite() && inr > 0.0) {
        return Err(Error::Domain(format!("alpha needs snr > 1 and inr > 0, got ({snr}, {inr})")));
    }
    Ok(inr.ln() / snr.ln())
}
