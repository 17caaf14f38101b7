//! Gap audits between the Han–Kobayashi inner region and the outer bounds.
//!
//! [`delta_audit`] compares constraint families numerically; the geometric
//! certificates in [`crate::region`] give an independent second check.
//! Random sweeps draw channels with [`ChaCha8Rng`] seeded by
//! `seed_from_u64`, so a seed reproduces a sweep exactly regardless of the
//! thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{kramer_bound, mixed_outer, new_symmetric_bound, symmetric_capacity_strong, weak_outer};
use crate::channel::{alpha, classify, ChannelParams, ClassTag};
use crate::error::{Error, Result};
use crate::hk::{hk_region, recommended_split, regime1_gap, regime2_gamma_window, regime2_rate, symmetric_hk_rate};
use crate::lg;
use crate::region::{gap_certificate, unclamped_gap_certificate, within_half_certificate, Family, RateRegion};

/// Slack on every delta threshold.
pub const DELTA_SLACK: f64 = 1e-9;

/// SNR range of sweeps, in dB.
pub const SNR_DB_RANGE: (f64, f64) = (0.0, 60.0);
/// INR range of sweeps, in dB.
pub const INR_DB_RANGE: (f64, f64) = (-20.0, 60.0);

/// Difference between one inner constraint and its partner outer constraint.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairedDelta {
    #[serde(skip)]
    pub family: Family,
    pub inner_index: usize,
    pub outer_index: usize,
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapReport {
    pub class: ClassTag,
    pub delta_r1: Option<f64>,
    pub delta_r2: Option<f64>,
    pub delta_sum: Option<f64>,
    pub delta_2r1_r2: Option<f64>,
    pub delta_r1_2r2: Option<f64>,
    pub paired_deltas: Vec<PairedDelta>,
    pub pass: bool,
}

impl GapReport {
    /// Deltas in the order `R1`, `R2`, sum, `2R1+R2`, `R1+2R2`.
    pub fn deltas(&self) -> [Option<f64>; 5] {
        [self.delta_r1, self.delta_r2, self.delta_sum, self.delta_2r1_r2, self.delta_r1_2r2]
    }

    pub fn max_paired(&self, family: Family) -> Option<f64> {
        self.paired_deltas.iter().filter(|p| p.family == family).map(|p| p.delta).reduce(f64::max)
    }
}

/// Thresholds `g, g, 2g, 3g, 3g` for a gap of `g` bits per user.
fn thresholds(gap_bits: f64) -> [f64; 5] {
    [gap_bits, gap_bits, 2.0 * gap_bits, 3.0 * gap_bits, 3.0 * gap_bits]
}

/// Inner and outer regions used by the audit for a weak or mixed channel.
pub fn audit_regions(params: &ChannelParams) -> Result<(ClassTag, RateRegion, RateRegion)> {
    let tag = classify(params).tag;
    let outer = match tag {
        ClassTag::Weak => weak_outer(params)?,
        ClassTag::MixedStrongAt1 | ClassTag::MixedStrongAt2 => mixed_outer(params)?,
        ClassTag::Strong => return Err(Error::ClassMismatch { expected: "weak or mixed", actual: tag }),
    };
    let inner = hk_region(params, &recommended_split(params))?;
    Ok((tag, inner, outer))
}

/// Family-by-family comparison against the one-bit thresholds.
pub fn delta_audit(params: &ChannelParams) -> Result<GapReport> {
    delta_audit_with_gap(params, 1.0)
}

/// [`delta_audit`] with thresholds scaled to a gap of `gap_bits`.
pub fn delta_audit_with_gap(params: &ChannelParams, gap_bits: f64) -> Result<GapReport> {
    let (class, inner, outer) = audit_regions(params)?;
    let mut deltas = [None; 5];
    let mut paired_deltas = Vec::new();
    for (slot, family) in Family::AUDITED.into_iter().enumerate() {
        let inn: Vec<(usize, f64)> = indexed(&inner, family);
        let out: Vec<(usize, f64)> = indexed(&outer, family);
        if inn.is_empty() || out.is_empty() {
            continue;
        }
        let min_out = out.iter().map(|x| x.1).fold(f64::INFINITY, f64::min);
        let min_in = inn.iter().map(|x| x.1).fold(f64::INFINITY, f64::min);
        deltas[slot] = Some(min_out - min_in);
        for (k, &(ii, iv)) in inn.iter().enumerate() {
            let (oi, ov) = out[k.min(out.len() - 1)];
            paired_deltas.push(PairedDelta { family, inner_index: ii, outer_index: oi, delta: ov - iv });
        }
    }
    let limits = thresholds(gap_bits);
    let pass = deltas.iter().zip(limits).all(|(d, lim)| d.is_none_or(|d| d < lim + DELTA_SLACK));
    Ok(GapReport {
        class,
        delta_r1: deltas[0],
        delta_r2: deltas[1],
        delta_sum: deltas[2],
        delta_2r1_r2: deltas[3],
        delta_r1_2r2: deltas[4],
        paired_deltas,
        pass,
    })
}

fn indexed(region: &RateRegion, family: Family) -> Vec<(usize, f64)> {
    region.constraints.iter().enumerate().filter(|(_, c)| c.family() == family).map(|(i, c)| (i, c.rhs)).collect()
}

/// Which channels a sweep keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassFilter {
    Weak,
    Mixed,
    /// Weak or mixed.
    NonStrong,
}

impl ClassFilter {
    pub fn accepts(&self, tag: ClassTag) -> bool {
        match self {
            ClassFilter::Weak => tag == ClassTag::Weak,
            ClassFilter::Mixed => tag.is_mixed(),
            ClassFilter::NonStrong => tag != ClassTag::Strong,
        }
    }
}

/// A sampled channel together with the dB values it was drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub snr1_db: f64,
    pub snr2_db: f64,
    pub inr1_db: f64,
    pub inr2_db: f64,
    #[serde(skip)]
    pub params: ChannelParams,
}

/// Draws `n` channels uniformly in dB, rejecting those outside `filter`.
pub fn sample_channels(n: usize, seed: u64, filter: ClassFilter) -> Vec<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let snr1_db = rng.gen_range(SNR_DB_RANGE.0..=SNR_DB_RANGE.1);
        let snr2_db = rng.gen_range(SNR_DB_RANGE.0..=SNR_DB_RANGE.1);
        let inr1_db = rng.gen_range(INR_DB_RANGE.0..=INR_DB_RANGE.1);
        let inr2_db = rng.gen_range(INR_DB_RANGE.0..=INR_DB_RANGE.1);
        let params =
            ChannelParams::from_db(snr1_db, snr2_db, inr1_db, inr2_db).expect("finite dB values give valid ratios");
        if filter.accepts(classify(&params).tag) {
            out.push(Sample { snr1_db, snr2_db, inr1_db, inr2_db, params });
        }
    }
    out
}

/// Audit and certificates of one instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub sample: Sample,
    pub report: GapReport,
    /// Inner region lies inside the outer one.
    pub contained: bool,
    pub one_bit_pass: bool,
    /// One-bit check without clamping at the axes; diagnostic only.
    pub one_bit_unclamped_pass: bool,
    pub within_half_pass: bool,
}

impl SweepRow {
    pub fn passed(&self) -> bool {
        self.contained && self.report.pass && self.one_bit_pass && self.within_half_pass
    }
}

pub fn evaluate(sample: &Sample, gap_bits: f64) -> Result<SweepRow> {
    let (_, inner, outer) = audit_regions(&sample.params)?;
    let report = delta_audit_with_gap(&sample.params, gap_bits)?;
    let certs = gap_certificate(&inner, &outer, gap_bits).and_then(|a| {
        Ok((a, unclamped_gap_certificate(&inner, &outer, gap_bits)?, within_half_certificate(&inner, &outer)?))
    });
    let (contained, (one_bit_pass, one_bit_unclamped_pass, within_half_pass)) = match certs {
        Ok(c) => (true, c),
        Err(Error::Containment { .. }) => (false, (false, false, false)),
        Err(e) => return Err(e),
    };
    Ok(SweepRow { sample: *sample, report, contained, one_bit_pass, one_bit_unclamped_pass, within_half_pass })
}

/// JSON summary of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSummary {
    pub n: usize,
    pub failures: usize,
    pub worst_deltas: WorstDeltas,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct WorstDeltas {
    pub delta_r1: Option<f64>,
    pub delta_r2: Option<f64>,
    pub delta_sum: Option<f64>,
    pub delta_2r1_r2: Option<f64>,
    pub delta_r1_2r2: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutcome {
    pub seed: u64,
    pub rows: Vec<SweepRow>,
}

impl SweepOutcome {
    /// Indices of rows failing the delta audit or the one-bit certificate.
    pub fn one_bit_failures(&self) -> Vec<usize> {
        self.failing(|r| r.contained && r.report.pass && r.one_bit_pass)
    }

    pub fn unclamped_one_bit_failures(&self) -> Vec<usize> {
        self.failing(|r| r.contained && r.report.pass && r.one_bit_unclamped_pass)
    }

    pub fn within_half_failures(&self) -> Vec<usize> {
        self.failing(|r| r.contained && r.within_half_pass)
    }

    pub fn failures(&self) -> Vec<usize> {
        self.failing(SweepRow::passed)
    }

    fn failing(&self, ok: impl Fn(&SweepRow) -> bool) -> Vec<usize> {
        self.rows.iter().enumerate().filter(|(_, r)| !ok(r)).map(|(i, _)| i).collect()
    }

    pub fn worst_deltas(&self) -> WorstDeltas {
        let mut w = [None::<f64>; 5];
        for row in &self.rows {
            for (slot, d) in w.iter_mut().zip(row.report.deltas()) {
                if let Some(d) = d {
                    *slot = Some(slot.map_or(d, |s| s.max(d)));
                }
            }
        }
        WorstDeltas { delta_r1: w[0], delta_r2: w[1], delta_sum: w[2], delta_2r1_r2: w[3], delta_r1_2r2: w[4] }
    }

    pub fn summary(&self) -> SweepSummary {
        SweepSummary {
            n: self.rows.len(),
            failures: self.failures().len(),
            worst_deltas: self.worst_deltas(),
            seed: self.seed,
        }
    }
}

/// Samples and evaluates `n` channels; rows keep the sampling order.
pub fn sweep(n: usize, seed: u64, filter: ClassFilter, gap_bits: f64) -> Result<SweepOutcome> {
    if n == 0 {
        return Err(Error::InvalidParameter("sweep size must be >= 1".into()));
    }
    let samples = sample_channels(n, seed, filter);
    let rows = samples.par_iter().map(|s| evaluate(s, gap_bits)).collect::<Result<Vec<_>>>()?;
    Ok(SweepOutcome { seed, rows })
}

/// One-bit sweep: worst deltas plus the failing rows.
pub fn one_bit_sweep(n: usize, seed: u64, filter: ClassFilter) -> Result<(WorstDeltas, Vec<SweepRow>)> {
    let out = sweep(n, seed, filter, 1.0)?;
    let failed = out.one_bit_failures().into_iter().map(|i| out.rows[i].clone()).collect();
    Ok((out.worst_deltas(), failed))
}

/// Within-half sweep over weak and mixed channels.
pub fn within_half_sweep(n: usize, seed: u64) -> Result<Vec<SweepRow>> {
    let out = sweep(n, seed, ClassFilter::NonStrong, 1.0)?;
    Ok(out.within_half_failures().into_iter().map(|i| out.rows[i].clone()).collect())
}

/// Kramer bound minus the Han–Kobayashi symmetric rate, for `1 <= inr < snr`.
pub fn kramer_gap(snr: f64, inr: f64) -> Result<f64> {
    if !(inr >= 1.0 && inr < snr) {
        return Err(Error::Domain(format!("needs 1 <= inr < snr, got snr = {snr}, inr = {inr}")));
    }
    Ok(kramer_bound(snr, inr)? - symmetric_hk_rate(snr, inr))
}

/// `gamma` used for `1/2 < alpha < 2/3`: one half when allowed, which
/// balances the two error terms, else the middle of the window.
pub fn regime2_gamma(alpha: f64) -> Result<f64> {
    let (lo, hi) = regime2_gamma_window(alpha)?;
    Ok(if lo < 0.5 && 0.5 < hi { 0.5 } else { 0.5 * (lo + hi) })
}

/// Distance between the scheme achieving the high-SNR limit and its
/// leading-order approximation, at `inr = snr^alpha` for each `snr`.
pub fn asymptotic_tightness_check(alpha_: f64, snr_list: &[f64]) -> Result<Vec<f64>> {
    if !(alpha_ > 0.0) || alpha_ == 0.5 {
        return Err(Error::Domain(format!("alpha = {alpha_} is not in (0,1/2) u (1/2,2/3) u (1,inf)")));
    }
    if (2.0 / 3.0..=1.0).contains(&alpha_) {
        return Err(Error::NotCovered(alpha_));
    }
    snr_list
        .iter()
        .map(|&snr| {
            if !(snr > 1.0) {
                return Err(Error::Domain(format!("snr must be > 1, got {snr}")));
            }
            let inr = snr.powf(alpha_);
            if alpha_ < 0.5 {
                // new_symmetric_bound - regime1_rate
                Ok(regime1_gap(snr, inr))
            } else if alpha_ < 2.0 / 3.0 {
                let a = alpha(snr, inr)?;
                Ok((regime2_rate(snr, inr, regime2_gamma(a)?)? - lg(inr)).abs())
            } else {
                let approx = if alpha_ < 2.0 { 0.5 * lg(inr) } else { lg(snr) };
                Ok((symmetric_capacity_strong(snr, inr)? - approx).abs())
            }
        })
        .collect()
}

/// Symmetric outer bound minus treat-as-noise, kept for cross-checks.
pub fn regime1_bound_gap(snr: f64, inr: f64) -> f64 {
    new_symmetric_bound(snr, inr) - lg(1.0 + snr / (1.0 + inr))
}
