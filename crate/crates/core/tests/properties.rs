use dualstokes::alexander::{compute_alexander, Convention};
use dualstokes::canon::{canonical_form, isomorphic};
use dualstokes::derham::{check_stokes_curve, d2_curve};
use dualstokes::invariants::{invariant_report, st1};
use dualstokes::moves::{rii_annihilate, rii_create, riii, Move};
use dualstokes::random::generate_random_diagram;
use dualstokes::signs::EpsilonConvention;
use dualstokes::{parse_diagram, serialize_diagram, CurveDiagram, Q};
use proptest::prelude::*;

fn st1_point(d: &CurveDiagram) -> Q {
    st1(d, &compute_alexander(d, Convention::Curve).unwrap()).point
}

fn st(d: &CurveDiagram, conv: EpsilonConvention) -> Q {
    invariant_report(d, conv).unwrap().st.point
}

fn curve() -> impl Strategy<Value = CurveDiagram> {
    (1usize..=10, any::<u64>()).prop_map(|(n, s)| generate_random_diagram(n, s).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn st1_is_odd_and_st_is_even(d in curve()) {
        let a = st1_point(&d);
        prop_assert_eq!(st1_point(&d.reversed()), -a);
        prop_assert_eq!(st1_point(&d.mirrored()), -a);
        let s = st(&d, EpsilonConvention::Standard);
        prop_assert_eq!(st(&d.reversed(), EpsilonConvention::Standard), s);
        prop_assert_eq!(st(&d.mirrored(), EpsilonConvention::Standard), s);
        prop_assert_eq!(st(&d, EpsilonConvention::Opposite), -s);
    }

    #[test]
    fn reversal_negates_every_d2(d in curve()) {
        let r = d.reversed();
        let (pd, pr) = (
            compute_alexander(&d, Convention::Curve).unwrap(),
            compute_alexander(&r, Convention::Curve).unwrap(),
        );
        for p in d.crossings() {
            prop_assert_eq!(d2_curve(&r, &pr, p), -d2_curve(&d, &pd, p));
        }
    }

    #[test]
    fn identities_hold(d in curve()) {
        prop_assert!(check_stokes_curve(&d).unwrap().pass());
        let rep = invariant_report(&d, EpsilonConvention::Standard).unwrap();
        prop_assert!(rep.pass(), "{}", rep.to_text());
    }

    #[test]
    fn text_round_trip(d in curve()) {
        let text = serialize_diagram(&d);
        let e = parse_diagram(&text).unwrap();
        prop_assert_eq!(serialize_diagram(&e), text);
        prop_assert_eq!(canonical_form(&e), canonical_form(&d));
    }

    #[test]
    fn finger_moves_undo(d in curve(), pick in any::<prop::sample::Index>()) {
        let sites: Vec<(u32, u32)> = d.darts().iter().enumerate().flat_map(|(i, a)| {
            let d = &d;
            d.darts().iter().enumerate().skip(i + 1)
                .filter(move |&(j, _)| a.twin != j && d.left_region(i) == d.left_region(j))
                .map(move |(_, b)| (a.label, b.label))
        }).collect();
        let (a, b) = sites[pick.index(sites.len())];
        let n = d.raw().next_dart_label();
        let made = rii_create(&d, a, b, Some(a)).unwrap();
        prop_assert!(isomorphic(&rii_annihilate(&made, n).unwrap(), &d));
    }

    #[test]
    fn triangle_moves_undo(d in curve()) {
        for f in d.faces().iter().filter(|f| f.darts.len() == 3) {
            let h = d.dart(f.darts[0]);
            let Ok(once) = riii(&d, h.label) else { continue };
            // the new triangle sits on the left of the old twin
            let back = riii(&once, d.dart(h.twin).label).unwrap();
            prop_assert!(isomorphic(&back, &d));
            prop_assert_eq!(st(&once, EpsilonConvention::Standard) - st(&d, EpsilonConvention::Standard),
                -(st(&back, EpsilonConvention::Standard) - st(&once, EpsilonConvention::Standard)));
        }
    }

    #[test]
    fn moves_reparse(m in prop_oneof![
        (any::<bool>(), proptest::option::of(0u32..50)).prop_map(|(ccw, host)| Move::Birth { ccw, host }),
        (0u32..50).prop_map(|dart| Move::Death { dart }),
        (0u32..50, 0u32..50, proptest::option::of(0u32..50)).prop_map(|(a, b, keep)| Move::Saddle { a, b, keep }),
        (0u32..50).prop_map(|dart| Move::Riii { dart }),
    ]) {
        prop_assert_eq!(m.to_string().parse::<Move>().unwrap(), m);
    }
}
