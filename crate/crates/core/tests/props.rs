//! Property tests for the structural laws: associativity with loop
//! bookkeeping, the interchange law, the two reflections, word round-trips
//! and serialization.

use proptest::prelude::*;

use brauer_core::diagram::BrauerDiagram;
use brauer_core::oriented::OrientedDiagram;
use brauer_core::poly::{rat, Poly};
use brauer_core::sum::DiagramSum;
use brauer_core::word;

fn arb_diagram(k: usize, ell: usize) -> impl Strategy<Value = BrauerDiagram> {
    let all = BrauerDiagram::enumerate(k, ell);
    let n = all.len();
    (0..n.max(1)).prop_map(move |i| all[i % n.max(1)].clone())
}

fn arb_valency_pair() -> impl Strategy<Value = (usize, usize)> {
    (0..=4usize, 0..=4usize).prop_filter("even total", |(k, l)| (k + l) % 2 == 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_associative_with_loops(
        (k, m1) in arb_valency_pair(),
        (m2, m3) in arb_valency_pair(),
        seed_a in 0usize..1000,
        seed_b in 0usize..1000,
        seed_c in 0usize..1000,
    ) {
        // arrange valencies into a composable chain k -> m1 -> m2 -> m3
        prop_assume!((k + m1) % 2 == 0 && (m1 + m2) % 2 == 0 && (m2 + m3) % 2 == 0);
        let lower = BrauerDiagram::enumerate(k, m1);
        let middle = BrauerDiagram::enumerate(m1, m2);
        let upper = BrauerDiagram::enumerate(m2, m3);
        prop_assume!(!lower.is_empty() && !middle.is_empty() && !upper.is_empty());
        let a = &upper[seed_a % upper.len()];
        let b = &middle[seed_b % middle.len()];
        let c = &lower[seed_c % lower.len()];
        let ab = a.compose(b).unwrap();
        let bc = b.compose(c).unwrap();
        let left = ab.diagram.compose(c).unwrap();
        let right = a.compose(&bc.diagram).unwrap();
        prop_assert_eq!(&left.diagram, &right.diagram);
        prop_assert_eq!(left.loops + ab.loops, right.loops + bc.loops);
    }

    #[test]
    fn interchange_law_holds(
        a in arb_diagram(2, 2),
        b in arb_diagram(1, 1),
        ap in arb_diagram(2, 2),
        bp in arb_diagram(3, 1),
    ) {
        let lhs = a.tensor(&b).compose(&ap.tensor(&bp)).unwrap();
        let left = a.compose(&ap).unwrap();
        let right = b.compose(&bp).unwrap();
        prop_assert_eq!(&lhs.diagram, &left.diagram.tensor(&right.diagram));
        prop_assert_eq!(lhs.loops, left.loops + right.loops);
    }

    #[test]
    fn reflections_are_involutive_and_behave(
        d1 in arb_diagram(2, 2),
        d2 in arb_diagram(2, 2),
    ) {
        prop_assert_eq!(&d1.star().star(), &d1);
        prop_assert_eq!(&d1.sharp().sharp(), &d1);
        let c = d1.compose(&d2).unwrap();
        let s = d2.star().compose(&d1.star()).unwrap();
        prop_assert_eq!(&c.diagram.star(), &s.diagram);
        prop_assert_eq!(c.loops, s.loops);
        // sharp is anti-multiplicative for juxtaposition
        prop_assert_eq!(&d1.tensor(&d2).sharp(), &d2.sharp().tensor(&d1.sharp()));
    }

    #[test]
    fn words_round_trip_and_join((k, l) in arb_valency_pair(), seed in 0usize..2000) {
        let all = BrauerDiagram::enumerate(k, l);
        prop_assume!(!all.is_empty());
        let d = &all[seed % all.len()];
        let w1 = word::from_diagram(d);
        prop_assert_eq!(&w1.evaluate().diagram, d);
        prop_assert_eq!(w1.evaluate().loops, 0);
        let w2 = word::build_word(d);
        let steps = word::rewrite_trace(&w1, &w2).unwrap();
        let end = word::replay(&w1, &steps).unwrap();
        prop_assert_eq!(end.word.slices(), w2.slices());
    }

    #[test]
    fn sum_algebra_is_bilinear(
        d1 in arb_diagram(2, 2),
        d2 in arb_diagram(2, 2),
        c1 in -4i64..=4,
        c2 in -4i64..=4,
    ) {
        let x = DiagramSum::from_diagram(d1).scale(&Poly::int(c1));
        let y = DiagramSum::from_diagram(d2).scale(&Poly::int(c2));
        let z = DiagramSum::identity(2);
        let lhs = x.add(&y).unwrap().compose(&z).unwrap();
        let rhs = x.compose(&z).unwrap().add(&y.compose(&z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        // specialisation commutes with composition once the loop powers
        // created by the composition are evaluated too
        let at = rat(-2);
        let prod = x.compose(&y).unwrap();
        prop_assert_eq!(
            prod.specialize(&at),
            x.specialize(&at)
                .compose(&y.specialize(&at))
                .unwrap()
                .specialize(&at)
        );
    }

    #[test]
    fn serde_round_trips((k, l) in arb_valency_pair(), seed in 0usize..2000) {
        let all = BrauerDiagram::enumerate(k, l);
        prop_assume!(!all.is_empty());
        let d = all[seed % all.len()].clone();
        let json = serde_json::to_string(&d).unwrap();
        let back: BrauerDiagram = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(&back, &d);
        // an oriented structure over it, when one exists
        let tails: Vec<usize> = d.pairs().iter().map(|&(a, _)| a).collect();
        let oriented = OrientedDiagram::new(d, tails).unwrap();
        let json = serde_json::to_string(&oriented).unwrap();
        let back: OrientedDiagram = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, oriented);
    }
}
