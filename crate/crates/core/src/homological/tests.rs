use std::collections::BTreeMap;

use super::*;
use crate::algebra::{omega_n_presentation, omega_relations, quotient_default, Elem, QuotientAlgebra};
use crate::error::Error;
use crate::field::Rational;
use crate::graph::parse_graph;
use crate::quiver::build_quiver;

type Q = Rational;

fn g_min() -> QuotientAlgebra<Q> {
    let g = parse_graph(
        r#"{"vertices":[{"id":"S","cyclic":["1","1","2"]},{"id":"u","cyclic":["2","3"]},{"id":"w","cyclic":["3"]}]}"#,
    )
    .unwrap();
    quotient_default(&omega_relations(&build_quiver(&g).unwrap()).unwrap()).unwrap()
}

fn omega(n: usize) -> QuotientAlgebra<Q> {
    quotient_default(&omega_n_presentation(n).unwrap()).unwrap()
}

/// `P(a) --x--> P(b)` with `P(a)` in degree `deg`.
fn two_term(a: usize, b: usize, x: Elem<Q>, deg: i32) -> ProjComplex<Q> {
    let mut m = Matrix::zero(&[b], &[a]);
    m.set(0, 0, x).unwrap();
    ProjComplex::new(
        BTreeMap::from([(deg, vec![a]), (deg + 1, vec![b])]),
        BTreeMap::from([(deg, m)]),
    )
    .unwrap()
}

#[test]
fn hom_blocks() {
    let alg = omega(3);
    assert_eq!(hom_block(&alg, 0, 0).len(), 4);
    let b = hom_block(&alg, 1, 2);
    assert_eq!(b.len(), 1);
    assert_eq!(alg.display(&b[0]), "β2");
    for i in 0..3 {
        assert_eq!(hom_block(&alg, i, i)[0], alg.unit(i));
    }
}

#[test]
fn complexes_checked() {
    let alg = g_min();
    let a2 = alg.arrow(alg.presentation().quiver.arrow_index("α2").unwrap());
    let a3 = alg.arrow(alg.presentation().quiver.arrow_index("α3").unwrap());
    check_complex(&alg, &ProjComplex::stalk(0, 0)).unwrap();
    let c = two_term(1, 2, a2.clone(), 0);
    check_complex(&alg, &c).unwrap();
    // P(2) -α2-> P(3) -α3-> P(2): α2α3 is nonzero
    let mut d0 = Matrix::zero(&[2], &[1]);
    d0.set(0, 0, a2).unwrap();
    let mut d1 = Matrix::zero(&[1], &[2]);
    d1.set(0, 0, a3).unwrap();
    let bad = ProjComplex::new(
        BTreeMap::from([(0, vec![1]), (1, vec![2]), (2, vec![1])]),
        BTreeMap::from([(0, d0), (1, d1)]),
    )
    .unwrap();
    assert!(matches!(
        check_complex(&alg, &bad),
        Err(Error::NotAComplex {
            degree: 0,
            row: 0,
            col: 0
        })
    ));
}

#[test]
fn stalk_homs_are_cartan_entries() {
    let alg = g_min();
    let c = alg.cartan();
    for i in 0..3 {
        for j in 0..3 {
            let d = homotopy_dim(&alg, &ProjComplex::stalk(i, 0), &ProjComplex::stalk(j, 0), 0).unwrap();
            assert_eq!(d as i64, c.matrix[i][j]);
            let h = homotopy_hom(&alg, &ProjComplex::stalk(i, 0), &ProjComplex::stalk(j, 0), 0).unwrap();
            assert_eq!(h.dimension, d);
        }
    }
}

#[test]
fn shifts() {
    let alg = g_min();
    let a2 = alg.arrow(alg.presentation().quiver.arrow_index("α2").unwrap());
    let c = two_term(1, 2, a2, 0);
    assert_eq!(c.shift(0), c);
    assert_eq!(c.shift(1).shift(-1), c);
    let d = ProjComplex::stalk(1, 0);
    for k in -2..=2 {
        assert_eq!(
            homotopy_dim(&alg, &c, &d, k).unwrap(),
            homotopy_dim(&alg, &c, &d.shift(k), 0).unwrap()
        );
    }
}

#[test]
fn cone_of_identity_is_contractible() {
    let alg = g_min();
    let a2 = alg.arrow(alg.presentation().quiver.arrow_index("α2").unwrap());
    let c = two_term(1, 2, a2, 0);
    let cone = mapping_cone(&ChainMap::identity(&alg, &c)).unwrap();
    check_complex(&alg, &cone).unwrap();
    assert!(minimize(&alg, &cone).unwrap().is_zero());
    for k in -2..=2 {
        assert_eq!(homotopy_dim(&alg, &c, &cone, k).unwrap(), 0);
        assert_eq!(homotopy_dim(&alg, &cone, &c, k).unwrap(), 0);
    }
    let stalk = ProjComplex::stalk(0, 0);
    let cone = mapping_cone(&ChainMap::identity(&alg, &stalk)).unwrap();
    assert!(minimize(&alg, &cone).unwrap().is_zero());
}

#[test]
fn cone_of_zero_is_sum() {
    let alg = g_min();
    let a2 = alg.arrow(alg.presentation().quiver.arrow_index("α2").unwrap());
    let c = two_term(1, 2, a2, 0);
    let d = ProjComplex::stalk(0, 0);
    let cone = mapping_cone(&ChainMap::zero(&c, &d)).unwrap();
    assert_eq!(cone, ProjComplex::direct_sum(&[&c.shift(1), &d]));
}

#[test]
fn minimal_complex_is_fixed() {
    let alg = g_min();
    let a2 = alg.arrow(alg.presentation().quiver.arrow_index("α2").unwrap());
    let c = two_term(1, 2, a2, 0);
    assert_eq!(minimize(&alg, &c).unwrap(), c);
    assert!(homotopy_equivalent(&alg, &c, &c).unwrap());
    assert!(!homotopy_equivalent(&alg, &c, &ProjComplex::stalk(1, 0)).unwrap());
}

#[test]
fn happel_of_stalks_is_cartan() {
    let alg = g_min();
    let c = alg.cartan();
    let stalks: Vec<ProjComplex<Q>> = (0..3).map(|i| ProjComplex::stalk(i, 0)).collect();
    let h = happel_cartan(&c.order, &stalks, &c).unwrap();
    assert_eq!(h, c);
}

#[test]
fn happel_on_shrink_summands_of_g_min() {
    let alg = g_min();
    let c = alg.cartan();
    let a2 = alg.arrow(alg.presentation().quiver.arrow_index("α2").unwrap());
    let q3 = two_term(1, 2, a2, 0);
    let summands = vec![ProjComplex::stalk(0, 0), q3, ProjComplex::stalk(1, 0)];
    let labels = vec!["1".into(), "3".into(), "2".into()];
    let h = happel_cartan(&labels, &summands, &c).unwrap();
    assert_eq!(h.matrix, vec![vec![4, 2, 2], vec![2, 2, 1], vec![2, 1, 2]]);
    let s = euler_matrix(&summands, 3);
    assert_eq!(congruence(&s, &c.matrix), h.matrix);
    // the same values as Hom dimensions in the homotopy category
    for (z, a) in summands.iter().enumerate() {
        for (w, b) in summands.iter().enumerate() {
            assert_eq!(homotopy_dim(&alg, a, b, 0).unwrap() as i64, h.matrix[z][w]);
        }
    }
}

#[test]
fn null_homotopic_detection() {
    let alg = g_min();
    let a2 = alg.arrow(alg.presentation().quiver.arrow_index("α2").unwrap());
    let c = two_term(1, 2, a2, 0);
    let cone = mapping_cone(&ChainMap::identity(&alg, &c)).unwrap();
    let sys = HomSystem::new(&alg, &cone, &cone);
    let id = ChainMap::identity(&alg, &cone);
    assert!(sys.is_null_homotopic(&id).unwrap());
    let id_c = ChainMap::identity(&alg, &c);
    assert!(!is_null_homotopic(&alg, &id_c).unwrap());
}

#[test]
fn extension_of_degree_zero_part() {
    let alg = g_min();
    let a2 = alg.arrow(alg.presentation().quiver.arrow_index("α2").unwrap());
    let c = two_term(1, 2, a2, 0);
    let sys = HomSystem::new(&alg, &c, &c);
    let fixed = BTreeMap::from([(0, Matrix::identity(&[1], &alg))]);
    let f = sys.extend(&fixed).unwrap().unwrap();
    assert_eq!(f.component(1), Matrix::identity(&[2], &alg));
}
