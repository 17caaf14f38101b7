use gic_core::channel::{classify, ChannelParams, ClassTag};
use gic_core::gap::{sweep, ClassFilter};
use gic_core::gdof::{
    baseline_gdof, d_sym, first_order_expansion, mixed_gdof_region, symmetric_gdof_region, weak_gdof_region,
    BaselineScheme, GdofParams,
};
use gic_core::region::symmetric_rate;
use proptest::prelude::*;

/// Independent W-curve: lower envelope of the five linear pieces, each
/// restricted to its own interval.
type Piece = (f64, f64, fn(f64) -> f64);

fn w_curve(a: f64) -> f64 {
    let pieces: [Piece; 5] = [
        (0.0, 0.5, |a| 1.0 - a),
        (0.5, 2.0 / 3.0, |a| a),
        (2.0 / 3.0, 1.0, |a| 1.0 - a / 2.0),
        (1.0, 2.0, |a| a / 2.0),
        (2.0, f64::INFINITY, |_| 1.0),
    ];
    pieces.iter().find(|(lo, hi, _)| a >= *lo && a <= *hi).map(|(_, _, f)| f(a)).unwrap()
}

#[test]
fn symmetric_gdof_point_is_w_curve() {
    for i in 0..=250 {
        let a = i as f64 / 100.0;
        let r = symmetric_gdof_region(a).unwrap();
        assert!((symmetric_rate(&r) - d_sym(a).unwrap()).abs() <= 1e-12, "alpha {a}");
        assert!((d_sym(a).unwrap() - w_curve(a)).abs() <= 1e-12, "alpha {a}");
    }
}

#[test]
fn baselines_never_beat_capacity() {
    for i in 0..=250 {
        let a = i as f64 / 100.0;
        let d = d_sym(a).unwrap();
        let orth = baseline_gdof(a, BaselineScheme::Orthogonalize).unwrap();
        let tin = baseline_gdof(a, BaselineScheme::TreatAsNoise).unwrap();
        assert!(orth <= d + 1e-12 && tin <= d + 1e-12);
        assert_eq!((orth - d).abs() < 1e-12, a == 0.5 || a == 1.0, "orth at {a}");
        assert_eq!((tin - d).abs() < 1e-12, a <= 0.5, "tin at {a}");
    }
}

#[test]
fn sweep_is_independent_of_thread_count() {
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let many = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
    let a = one.install(|| sweep(300, 11, ClassFilter::NonStrong, 1.0).unwrap());
    let b = many.install(|| sweep(300, 11, ClassFilter::NonStrong, 1.0).unwrap());
    assert_eq!(a, b);
    assert_eq!(a.summary(), b.summary());
}

fn lg(x: f64) -> f64 {
    x.log2()
}

fn db(x: f64) -> f64 {
    10f64.powf(x / 10.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn d_sym_bounded_and_continuous(a in 0.0f64..5.0, h in 1e-9f64..1e-6) {
        let d = d_sym(a).unwrap();
        prop_assert!((0.0..=1.0).contains(&d));
        prop_assert!((d_sym(a + h).unwrap() - d).abs() <= h + 1e-15);
    }

    #[test]
    fn expansion_is_scaled_gdof(a in 1.0f64..60.0, b in 1.0f64..60.0, c in 0.5f64..60.0, d in 0.5f64..60.0) {
        let p = ChannelParams::new(db(a), db(b), db(c), db(d)).unwrap();
        let tag = classify(&p).tag;
        prop_assume!(tag == ClassTag::Weak || tag == ClassTag::MixedStrongAt1);
        let g = GdofParams::from_channel(&p).unwrap();
        let region = if tag == ClassTag::Weak { weak_gdof_region(&g) } else { mixed_gdof_region(&g) }.unwrap();
        let e = first_order_expansion(&p).unwrap();
        let l = lg(p.snr1);
        prop_assert_eq!(region.constraints.len(), e.constraints.len());
        for (k, ek) in region.constraints.iter().zip(&e.constraints) {
            // c1 R1 + c2 R2 <= rhs becomes c1 d1 + c2 a1 d2 <= rhs / log snr1
            let (c1, c2, rhs) = (ek.c1, ek.c2 * g.alpha1, ek.rhs / l);
            let nk = k.c1 + k.c2;
            let ne = c1 + c2;
            prop_assert!((k.c1 / nk - c1 / ne).abs() < 1e-12);
            prop_assert!((k.c2 / nk - c2 / ne).abs() < 1e-12);
            prop_assert!((k.rhs / nk - rhs / ne).abs() < 1e-9, "{k:?} vs {ek:?}");
        }
    }
}
