mod common;

use proptest::prelude::*;

use brauer_derive::graph::{parse_graph, serialize_graph, BrauerGraph, GraphVertex};
use brauer_derive::homological::{congruence, euler_matrix, happel_cartan};
use brauer_derive::reduction::{certify_trace, classify, next_pivot, reduce_to_normal_form, EngineParams};
use brauer_derive::tilting::{
    check_tilting, end_cartan, enlarge_complex, enlarge_data, enlarge_graph_move, shrink_complex, shrink_pattern,
    verify_end_generators, OmegaAlgebra,
};
use brauer_derive::{Fp, Rational};

use common::{random_complexes, random_graph};

type Q = Rational;

/// The same graph with every cyclic list rotated by `k`.
fn rotated(g: &BrauerGraph, k: usize) -> BrauerGraph {
    let vs = g
        .vertices()
        .iter()
        .map(|v| {
            let mut c = v.cyclic.clone();
            // keep the loop's two incidences adjacent
            let r = if c.len() > 1 && c[0] == c[1] {
                (k / 2 * 2) % c.len()
            } else {
                k % c.len()
            };
            c.rotate_left(r);
            GraphVertex::new(v.id.clone(), c)
        })
        .collect();
    BrauerGraph::from_vertices(vs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn serialization_round_trips(g in random_graph(9), k in 0usize..4) {
        let text = serialize_graph(&g);
        let back = parse_graph(&text).unwrap();
        prop_assert_eq!(serialize_graph(&back), text.clone());
        prop_assert_eq!(serialize_graph(&rotated(&g, k)), text);
    }

    #[test]
    fn incidences_are_twice_the_edges(g in random_graph(9)) {
        let incidences: usize = g.vertices().iter().map(|v| v.cyclic.len()).sum();
        prop_assert_eq!(incidences, 2 * g.edge_count());
        prop_assert_eq!(g.cycle_edges().len() + g.tree_edge_count(), g.edge_count());
    }

    #[test]
    fn uncertified_reduction_terminates(g in random_graph(12)) {
        let t = reduce_to_normal_form::<Q>(&g, false, EngineParams::default()).unwrap();
        prop_assert_eq!(t.steps.len(), g.tree_edge_count());
        prop_assert!(t.normal_form.is_loop_star());
        for (k, s) in t.steps.iter().enumerate() {
            prop_assert_eq!(classify(&s.after), classify(&g));
            prop_assert_eq!(s.after.cycle_edges().len(), g.cycle_edges().len() + k + 1);
        }
    }

    #[test]
    fn every_enlarging_move_preserves_edge_count(g in random_graph(9)) {
        for e in g.cycle_edges().iter().skip(1) {
            if let Ok(moved) = enlarge_graph_move(&g, e) {
                prop_assert_eq!(classify(&moved), classify(&g));
                moved.validate().unwrap();
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn shrinking_complex_tilts(g in random_graph(7)) {
        let om = OmegaAlgebra::<Q>::new(&g).unwrap();
        let q = shrink_complex(&om).unwrap();
        prop_assert_eq!(end_cartan(&om, &q).unwrap(), shrink_pattern(&q.ordering));
        check_tilting(&om, &q).unwrap();
        verify_end_generators(&om, &q).unwrap();
    }

    #[test]
    fn enlarging_complexes_tilt(g in random_graph(7)) {
        let om = OmegaAlgebra::<Q>::new(&g).unwrap();
        for e in g.cycle_edges().iter().skip(1) {
            let Ok(d) = enlarge_data(&g, e) else { continue };
            let q = enlarge_complex(&om, &d).unwrap();
            let cert = check_tilting(&om, &q).unwrap();
            let moved = OmegaAlgebra::<Q>::new(&enlarge_graph_move(&g, e).unwrap()).unwrap();
            prop_assert_eq!(cert.end_cartan, moved.algebra.cartan().reordered(&q.ordering).unwrap());
            verify_end_generators(&om, &q).unwrap();
        }
    }

    #[test]
    fn certified_reduction_recertifies(g in random_graph(6)) {
        let t = reduce_to_normal_form::<Q>(&g, true, EngineParams::default()).unwrap();
        certify_trace::<Q>(&t, EngineParams::default()).unwrap();
        if let Some(at) = next_pivot(&g) {
            prop_assert_eq!(&t.steps[0].at, &at);
        }
    }

    #[test]
    fn happel_identity_on_random_graphs(g in random_graph(7), count in 1usize..=5, seed in any::<u64>()) {
        let om = OmegaAlgebra::<Q>::new(&g).unwrap();
        let cs = random_complexes(&om.algebra, count, seed);
        let labels = vec![g.loop_edge().clone(); count];
        let c = om.algebra.cartan();
        let direct = happel_cartan(&labels, &cs, &c).unwrap();
        prop_assert_eq!(direct.matrix, congruence(&euler_matrix(&cs, c.size()), &c.matrix));
    }

    #[test]
    fn prime_fields_agree_on_dimensions(g in random_graph(7)) {
        let q = OmegaAlgebra::<Q>::new(&g).unwrap().algebra.block_dims();
        prop_assert_eq!(&OmegaAlgebra::<Fp<3>>::new(&g).unwrap().algebra.block_dims(), &q);
        prop_assert_eq!(&OmegaAlgebra::<Fp<32003>>::new(&g).unwrap().algebra.block_dims(), &q);
    }
}
