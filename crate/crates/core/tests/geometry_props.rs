use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rcn_core::exact_geom::{find_collinear_triple, orient, segments_cross, Orientation};
use rcn_core::{IntPoint, Point, RatPoint};

fn pt() -> impl Strategy<Value = IntPoint> {
    (-50i64..50, -50i64..50).prop_map(|(x, y)| Point::new(x, y))
}

fn big_pt() -> impl Strategy<Value = IntPoint> {
    let c = rcn_core::exact_geom::MAX_INT_COORD;
    (-c..=c, -c..=c).prop_map(|(x, y)| Point::new(x, y))
}

fn scaled(p: &IntPoint, d: i64) -> RatPoint {
    Point::new(BigRational::new(BigInt::from(p.x), BigInt::from(d)), BigRational::new(BigInt::from(p.y), BigInt::from(d)))
}

/// Collinearity by cubic enumeration.
fn has_collinear(p: &[IntPoint]) -> bool {
    let n = p.len();
    (0..n).any(|a| {
        ((a + 1)..n).any(|b| p[a] == p[b] || ((b + 1)..n).any(|c| orient(&p[a], &p[b], &p[c]) == Orientation::Collinear))
    })
}

proptest! {
    #[test]
    fn orientation_is_antisymmetric_and_cyclic(a in big_pt(), b in big_pt(), c in big_pt()) {
        let o = orient(&a, &b, &c);
        prop_assert_eq!(orient(&b, &a, &c), o.reverse());
        prop_assert_eq!(orient(&b, &c, &a), o);
    }

    #[test]
    fn integer_and_rational_orientation_agree(a in big_pt(), b in big_pt(), c in big_pt(), d in 1i64..1000) {
        prop_assert_eq!(orient(&a, &b, &c), orient(&scaled(&a, d), &scaled(&b, d), &scaled(&c, d)));
    }

    #[test]
    fn crossing_is_symmetric(a in pt(), b in pt(), c in pt(), d in pt()) {
        let x = segments_cross(&a, &b, &c, &d);
        let y = segments_cross(&c, &d, &a, &b);
        let z = segments_cross(&b, &a, &d, &c);
        match (x, y, z) {
            (Ok(x), Ok(y), Ok(z)) => { prop_assert_eq!(x, y); prop_assert_eq!(x, z); }
            (Err(_), Err(_), Err(_)) => {}
            _ => prop_assert!(false, "degeneracy detection is not symmetric"),
        }
    }

    #[test]
    fn general_position_matches_enumeration(p in prop::collection::vec(pt(), 0..14)) {
        prop_assert_eq!(find_collinear_triple(&p).is_some(), has_collinear(&p));
    }

    #[test]
    fn witness_is_collinear(p in prop::collection::vec((-6i64..6, -6i64..6).prop_map(|(x, y)| Point::new(x, y)), 3..12)) {
        if let Some([a, b, c]) = find_collinear_triple(&p) {
            let dup = p[a] == p[b] || p[b] == p[c] || p[a] == p[c];
            prop_assert!(dup || orient(&p[a], &p[b], &p[c]) == Orientation::Collinear);
        }
    }
}
