//! Capacity regions of the two-user Gaussian interference channel.
//!
//! The crate evaluates Han–Kobayashi achievable regions for fixed Gaussian
//! power splits, the matching outer bounds, and the geometric certificates
//! that compare them ("within one bit", "within half"). It also carries the
//! generalized-degrees-of-freedom characterization and the symmetric-rate
//! formulas used to study the high-SNR limit.
//!
//! All rates are in bits per complex channel use (`log2(1 + SNR)`), and all
//! channel parameters are linear power ratios unless a function name says
//! `db`.
//!
//! ```
//! use gic_core::{bounds, channel::ChannelParams, hk, region};
//!
//! let params = ChannelParams::new(100.0, 100.0, 10.0, 10.0).unwrap();
//! let inner = hk::hk_region(&params, &hk::recommended_split(&params)).unwrap();
//! let outer = bounds::weak_outer(&params).unwrap();
//! assert!(region::one_bit_certificate(&inner, &outer).unwrap());
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` also rejects NaN

pub mod bounds;
pub mod channel;
pub mod closed_form;
pub mod error;
pub mod gap;
pub mod gdof;
pub mod hk;
pub mod numfmt;
pub mod region;

pub use error::{Error, Result};

/// `log2` of a power ratio, the unit used for every rate in the crate.
#[inline]
pub(crate) fn lg(x: f64) -> f64 {
    x.log2()
}
