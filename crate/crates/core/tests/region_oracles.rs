use gic_core::region::{contains, symmetric_rate, vertices, RateConstraint, RateRegion, Vertex, TOL};
use proptest::prelude::*;

/// Convex-hull membership from the vertex list alone: the polygon is the
/// origin followed by the vertices, traversed clockwise.
fn hull_contains(verts: &[Vertex], p: Vertex, eps: f64) -> bool {
    let mut poly = vec![(0.0, 0.0)];
    poly.extend(verts.iter().map(|v| (v.r1, v.r2)));
    if poly.len() < 3 {
        return false;
    }
    (0..poly.len()).all(|i| {
        let a = poly[i];
        let b = poly[(i + 1) % poly.len()];
        let cross = (b.0 - a.0) * (p.r2 - a.1) - (b.1 - a.1) * (p.r1 - a.0);
        cross <= eps
    })
}

fn near_boundary(region: &RateRegion, p: Vertex, band: f64) -> bool {
    p.r1.abs() <= band
        || p.r2.abs() <= band
        || region.constraints.iter().any(|c| (c.value(p) - c.rhs).abs() / c.c1.hypot(c.c2) <= band)
}

/// Largest t with (t, t) inside, by bisection on `contains`.
fn bisect_symmetric(region: &RateRegion) -> f64 {
    let (mut lo, mut hi) = (0.0, 1e3);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if contains(region, Vertex::new(mid, mid), 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

fn coef() -> impl Strategy<Value = f64> {
    prop_oneof![1 => Just(0.0), 4 => 0.05f64..3.0]
}

prop_compose! {
    fn region()(cs in prop::collection::vec((coef(), coef(), 0.5f64..20.0), 1..=10)) -> RateRegion {
        let mut cons: Vec<RateConstraint> = cs
            .into_iter()
            .filter(|(a, b, _)| *a > 0.0 || *b > 0.0)
            .map(|(a, b, r)| RateConstraint::new(a, b, r).unwrap())
            .collect();
        // keep it bounded
        if !cons.iter().any(|c| c.c1 > 0.0) {
            cons.push(RateConstraint::r1(5.0));
        }
        if !cons.iter().any(|c| c.c2 > 0.0) {
            cons.push(RateConstraint::r2(5.0));
        }
        RateRegion::new(cons)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn grid_membership_matches_hull(r in region()) {
        let verts = vertices(&r).unwrap();
        let max1 = verts.iter().map(|v| v.r1).fold(0.0, f64::max);
        let max2 = verts.iter().map(|v| v.r2).fold(0.0, f64::max);
        let step = ((max1.max(max2)) / 80.0).max(0.01);
        let mut x = 0.0;
        while x <= max1 + 2.0 * step {
            let mut y = 0.0;
            while y <= max2 + 2.0 * step {
                let p = Vertex::new(x, y);
                if contains(&r, p, 0.0) != hull_contains(&verts, p, 1e-12) {
                    prop_assert!(near_boundary(&r, p, 1e-6), "disagree at {p:?}");
                }
                y += step;
            }
            x += step;
        }
    }

    #[test]
    fn vertices_are_members_and_sorted(r in region()) {
        let verts = vertices(&r).unwrap();
        for v in &verts {
            prop_assert!(contains(&r, *v, TOL));
            prop_assert!(v.r1 >= 0.0 && v.r2 >= 0.0);
        }
        for w in verts.windows(2) {
            prop_assert!(w[0].r1 <= w[1].r1 + 1e-12 && w[0].r2 + 1e-12 >= w[1].r2);
            // strictly clockwise around the origin
            prop_assert!(w[0].r1 * w[1].r2 - w[0].r2 * w[1].r1 < 0.0);
        }
    }

    #[test]
    fn symmetric_rate_matches_bisection(r in region()) {
        prop_assert!((symmetric_rate(&r) - bisect_symmetric(&r)).abs() <= 1e-12);
    }

    #[test]
    fn down_closed(r in region(), fx in 0.0f64..1.0, fy in 0.0f64..1.0, pick in 0usize..64) {
        let verts = vertices(&r).unwrap();
        let v = verts[pick % verts.len()];
        prop_assert!(contains(&r, Vertex::new(v.r1 * fx, v.r2 * fy), TOL));
    }

    #[test]
    fn convex_combinations_are_members(r in region(), t in 0.0f64..1.0, i in 0usize..64, j in 0usize..64) {
        let verts = vertices(&r).unwrap();
        let a = verts[i % verts.len()];
        let b = verts[j % verts.len()];
        let p = Vertex::new(t * a.r1 + (1.0 - t) * b.r1, t * a.r2 + (1.0 - t) * b.r2);
        prop_assert!(contains(&r, p, TOL));
    }

    #[test]
    fn self_certificates_hold(r in region()) {
        prop_assert!(gic_core::region::one_bit_certificate(&r, &r).unwrap());
        prop_assert!(gic_core::region::within_half_certificate(&r, &r).unwrap());
    }

    #[test]
    fn normalize_keeps_vertex_set(r in region()) {
        let n = r.normalized().unwrap();
        let a = vertices(&r).unwrap();
        let b = vertices(&n).unwrap();
        prop_assert!(gic_core::region::same_vertex_set(&a, &b, 1e-9), "{a:?} vs {b:?}");
    }
}
