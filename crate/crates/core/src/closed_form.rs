//! Simplified Han–Kobayashi regions for the standard power splits.
//!
//! These are hand-reduced forms of [`crate::hk::hk_region`] at specific
//! splits, with redundant constraints removed. They exist as an independent
//! cross-check of the generic evaluation: both must describe the same
//! polytope.

use crate::channel::ChannelParams;
use crate::error::{Error, Result};
use crate::hk::treat_as_noise_region;
use crate::lg;
use crate::region::{RateConstraint as C, RateRegion};

fn need_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be > 0 for this closed form, got {v}")))
    }
}

/// Split `(1, 1)`: private interference at noise level on both links.
pub fn split_unit_unit(p: &ChannelParams) -> Result<RateRegion> {
    need_positive("inr1", p.inr1)?;
    need_positive("inr2", p.inr2)?;
    let &ChannelParams { snr1: s1, snr2: s2, inr1: i1, inr2: i2 } = p;
    Ok(RateRegion::new(vec![
        C::r1(lg(2.0 + s1) - 1.0),
        C::r2(lg(2.0 + s2) - 1.0),
        C::sum(lg(2.0 * i2 + s1) + lg(1.0 + (1.0 + s2) / i2) - 2.0),
        C::sum(lg(2.0 * i1 + s2) + lg(1.0 + (1.0 + s1) / i1) - 2.0),
        C::sum(lg(1.0 + i1 + s1 / i2) + lg(1.0 + i2 + s2 / i1) - 2.0),
        C::two_r1_r2(lg(1.0 + s1 + i1) + lg(1.0 + i2 + s2 / i1) + lg(2.0 + s1 / i2) - 3.0),
        C::r1_two_r2(lg(1.0 + s2 + i2) + lg(1.0 + i1 + s1 / i2) + lg(2.0 + s2 / i1) - 3.0),
    ]))
}

/// Split `(1, inr1)`: user 2 fully private, typically when `inr1 < 1`.
pub fn split_unit_private(p: &ChannelParams) -> Result<RateRegion> {
    need_positive("inr2", p.inr2)?;
    let &ChannelParams { snr1: s1, snr2: s2, inr1: i1, inr2: i2 } = p;
    Ok(RateRegion::new(vec![
        C::r1(lg(1.0 + s1 / (1.0 + i1))),
        C::r2(lg(2.0 + s2) - 1.0),
        C::sum(lg(i2 + s1 / (1.0 + i1)) + lg(1.0 + (1.0 + s2) / i2) - 1.0),
        C::two_r1_r2(
            lg(1.0 + s1 + i1) + lg(1.0 + i2 + s2) + lg(1.0 + i1 + s1 / i2) - lg(2.0 * (1.0 + i1) * (1.0 + i1)),
        ),
    ]))
}

/// Split `(inr2, 1)`: the mirror of [`split_unit_private`].
pub fn split_private_unit(p: &ChannelParams) -> Result<RateRegion> {
    Ok(split_unit_private(&p.swapped())?.swapped())
}

/// Split `(inr2, inr1)`: the treat-as-noise box.
pub fn split_private_private(p: &ChannelParams) -> RateRegion {
    treat_as_noise_region(p)
}

/// Split `(1, 0)` for a channel strong at receiver 1 with `inr2 >= 1`.
pub fn split_unit_common(p: &ChannelParams) -> Result<RateRegion> {
    need_positive("inr2", p.inr2)?;
    let &ChannelParams { snr1: s1, snr2: s2, inr1: i1, inr2: i2 } = p;
    Ok(RateRegion::new(vec![
        C::r1(lg(1.0 + s1)),
        C::r2(lg(2.0 + s2) - 1.0),
        C::sum(lg(i2 + s1) + lg(1.0 + (1.0 + s2) / i2) - 1.0),
        C::sum(lg(1.0 + i1 + s1)),
        C::sum(lg(1.0 + i1 + s1 / i2) + lg(1.0 + i2) - 1.0),
        C::two_r1_r2(lg(1.0 + i2) + lg(1.0 + s1 + i1) + lg(1.0 + s1 / i2) - 1.0),
        C::r1_two_r2(lg(1.0 + s2 + i2) + lg(1.0 + i1 + s1 / i2) - 1.0),
    ]))
}

/// Split `(inr2, 0)` for a channel strong at receiver 1 with `inr2 < 1`.
pub fn split_private_common(p: &ChannelParams) -> RateRegion {
    let &ChannelParams { snr1: s1, snr2: s2, inr1: i1, inr2: i2 } = p;
    let r1 = lg(1.0 + s1);
    let r2 = lg(1.0 + s2 / (1.0 + i2));
    let mac = lg(1.0 + s1 + i1);
    RateRegion::new(vec![
        C::r1(r1),
        C::r2(r2),
        C::sum(r1 + r2),
        C::sum(mac),
        C::sum(mac),
        C::two_r1_r2(r1 + mac),
        C::r1_two_r2(r2 + mac),
    ])
}
