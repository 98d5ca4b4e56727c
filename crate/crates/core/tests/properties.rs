//! Invariance properties over random braid closures.

use knotdensity::diagram::{parse_dt, parse_pd};
use knotdensity::kashaev::kashaev_invariant;
use knotdensity::khovanov::{reduced_khovanov, Field};
use knotdensity::polynomials::{determinant, goeritz_determinant, jones_polynomial, kauffman_bracket};
use knotdensity::{BraidWord, Diagram};
use proptest::prelude::*;
use rug::ops::Pow;
use rug::{Integer, Rational};

/// Braid words on 2..=4 strands in which every generator occurs, so the closure is non-split.
fn braid() -> impl Strategy<Value = Diagram> {
    (2usize..=4)
        .prop_flat_map(|n| {
            let letter = (1..n as i32, any::<bool>()).prop_map(|(g, neg)| if neg { -g } else { g });
            (Just(n), prop::collection::vec(letter, 1..9))
        })
        .prop_filter("every generator used", |(n, w)| (1..*n as i32).all(|g| w.iter().any(|l| l.abs() == g)))
        .prop_map(|(n, w)| Diagram::from_braid(&BraidWord::new(n, w).unwrap()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn determinant_routes_agree(d in braid()) {
        let j = jones_polynomial(&d).unwrap();
        prop_assert_eq!(&j.determinant, &goeritz_determinant(&d));
        // the mirror image has the same determinant
        prop_assert_eq!(determinant(&d.mirror()), determinant(&d));
    }

    #[test]
    fn jones_at_one(d in braid()) {
        let v = jones_polynomial(&d).unwrap().polynomial;
        let expect = Rational::from(Integer::from(-2).pow((d.components() - 1) as u32));
        prop_assert_eq!(v.eval_integer(1), expect);
    }

    #[test]
    fn mirror_inverts_jones(d in braid()) {
        let v = jones_polynomial(&d).unwrap().polynomial;
        let m = jones_polynomial(&d.mirror()).unwrap().polynomial;
        prop_assert_eq!(m, v.inverted());
    }

    #[test]
    fn codecs_round_trip(d in braid()) {
        let again = parse_pd(&d.to_pd()).unwrap();
        prop_assert_eq!(kauffman_bracket(&again).unwrap(), kauffman_bracket(&d).unwrap());
        prop_assert_eq!(again.writhe(), d.writhe());
        let relabeled = d.relabeled();
        prop_assert_eq!(kauffman_bracket(&relabeled).unwrap(), kauffman_bracket(&d).unwrap());
        if d.is_knot() && d.crossing_number() > 0 {
            let dt = d.to_dt().unwrap();
            let back = parse_dt(&dt).unwrap();
            let v = jones_polynomial(&back).unwrap().polynomial;
            let w = jones_polynomial(&d).unwrap().polynomial;
            prop_assert!(v == w || v == w.inverted());
        }
    }

    #[test]
    fn khovanov_euler_characteristic_is_jones(d in braid()) {
        prop_assume!(d.is_knot() && d.crossing_number() <= 8);
        let kh = reduced_khovanov(&d, Field::F2).unwrap();
        let v = jones_polynomial(&d).unwrap();
        prop_assert_eq!(kh.euler_characteristic(), v.polynomial);
        // rank ≥ |V(−1)| = det
        prop_assert!(kh.total_rank() >= v.determinant);
    }

    #[test]
    fn kashaev_two_is_determinant(d in braid()) {
        prop_assume!(d.is_knot() && d.crossing_number() <= 8);
        let k = kashaev_invariant(&d, 2, 128).unwrap();
        let det = determinant(&d).to_f64();
        prop_assert!((k.abs.to_f64() - det).abs() < 1e-20 * det.max(1.0));
    }
}

#[test]
fn unknot_braids_have_trivial_jones() {
    for (n, w) in [(2, vec![1]), (2, vec![-1]), (3, vec![1, 2]), (3, vec![-1, 2]), (2, vec![1, 1, -1])] {
        let d = Diagram::from_braid(&BraidWord::new(n, w).unwrap()).unwrap();
        let v = jones_polynomial(&d).unwrap();
        assert_eq!(v.polynomial.eval_integer(2), Rational::from(1));
        assert_eq!(v.span, 0);
        assert_eq!(determinant(&d), 1);
    }
}
