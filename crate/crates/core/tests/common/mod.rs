#![allow(dead_code)]

use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use brauer_derive::algebra::{Elem, QuotientAlgebra};
use brauer_derive::graph::{loop_star, parse_graph, BrauerGraph, EdgeId, GraphVertex};
use brauer_derive::homological::{check_complex, Matrix, ProjComplex};
use brauer_derive::Field;

pub fn graph(vs: &[(&str, &[&str])]) -> BrauerGraph {
    let vertices = vs
        .iter()
        .map(|(id, es)| GraphVertex::new(*id, es.iter().map(|&e| EdgeId::new(e)).collect()))
        .collect();
    BrauerGraph::from_vertices(vertices).unwrap()
}

pub fn g_min() -> BrauerGraph {
    parse_graph(
        r#"{"vertices":[{"id":"S","cyclic":["1","1","2"]},{"id":"u","cyclic":["2","3"]},{"id":"w","cyclic":["3"]}]}"#,
    )
    .unwrap()
}

/// Fixed graphs with 3 to 8 edges covering chains, fans, several trees and
/// loop-stars.
pub fn corpus() -> Vec<(&'static str, BrauerGraph)> {
    vec![
        ("g_min", g_min()),
        (
            "depth-2 chain",
            graph(&[("S", &["1", "1", "2"]), ("u", &["2", "3"]), ("x", &["3", "4"])]),
        ),
        (
            "two trees",
            graph(&[("S", &["1", "1", "2", "3"]), ("u", &["2", "4"]), ("v", &["3", "5"])]),
        ),
        ("loop-star 3", loop_star(3).unwrap()),
        ("loop-star 8", loop_star(8).unwrap()),
        (
            "branching tree",
            graph(&[
                ("S", &["1", "1", "2"]),
                ("v", &["2", "a", "b"]),
                ("w", &["a", "c", "d"]),
            ]),
        ),
        (
            "fan of three",
            graph(&[("S", &["1", "1", "2"]), ("v", &["2", "a", "b", "c"])]),
        ),
        (
            "tree at a later edge",
            graph(&[
                ("S", &["1", "1", "2", "3"]),
                ("v", &["3", "a", "b"]),
                ("w", &["a", "c"]),
            ]),
        ),
        (
            "depth-3 chain",
            graph(&[
                ("S", &["1", "1", "2", "3", "4"]),
                ("x", &["4", "a"]),
                ("y", &["a", "b"]),
                ("z", &["b", "c"]),
            ]),
        ),
        (
            "mixed eight",
            graph(&[
                ("S", &["1", "1", "2", "3"]),
                ("v", &["2", "a", "e"]),
                ("w", &["a", "b"]),
                ("x", &["b", "d", "f"]),
            ]),
        ),
    ]
}

/// Random one-loop graphs: a cycle of `c` edges through S (the loop
/// included) and `n - c` tree edges hung at random positions.
pub fn random_graph(max_edges: usize) -> impl Strategy<Value = BrauerGraph> {
    (3..=max_edges)
        .prop_flat_map(|n| (Just(n), 1..=n))
        .prop_flat_map(|(n, c)| {
            let picks = proptest::collection::vec((any::<prop::sample::Index>(), any::<prop::sample::Index>()), n - c);
            (Just(c), picks)
        })
        .prop_map(|(c, picks)| {
            let mut s: Vec<EdgeId> = vec!["1".into(), "1".into()];
            let mut vertices: Vec<(String, Vec<EdgeId>)> = Vec::new();
            for i in 2..=c {
                s.push(EdgeId::new(i.to_string()));
                vertices.push((format!("v{i}"), vec![EdgeId::new(i.to_string())]));
            }
            for (k, (at, pos)) in picks.into_iter().enumerate() {
                let e = EdgeId::new(format!("t{k}"));
                if vertices.is_empty() {
                    // only the loop so far: hang the edge from S
                    s.push(e.clone());
                    vertices.push((format!("w{k}"), vec![e]));
                    continue;
                }
                let x = at.index(vertices.len());
                let p = pos.index(vertices[x].1.len() + 1);
                vertices[x].1.insert(p, e.clone());
                vertices.push((format!("w{k}"), vec![e]));
            }
            let mut all = vec![GraphVertex::new("S", s)];
            all.extend(vertices.into_iter().map(|(id, es)| GraphVertex::new(id, es)));
            BrauerGraph::from_vertices(all).unwrap()
        })
}

fn random_elem<F: Field>(alg: &QuotientAlgebra<F>, rng: &mut ChaCha8Rng, a: usize, b: usize) -> Elem<F> {
    let mut x = Elem::zero(a, b);
    for k in 0..alg.block_dim(a, b) {
        let c = F::from_i64(rng.gen_range(-2..=2));
        x = x.axpy(&c, &alg.basis_elem(a, b, k)).unwrap();
    }
    x
}

fn random_matrix<F: Field>(
    alg: &QuotientAlgebra<F>,
    rng: &mut ChaCha8Rng,
    rows: &[usize],
    cols: &[usize],
) -> Matrix<F> {
    let mut m = Matrix::zero(rows, cols);
    for (r, &b) in rows.iter().enumerate() {
        for (c, &a) in cols.iter().enumerate() {
            m.set(r, c, random_elem(alg, rng, a, b)).unwrap();
        }
    }
    m
}

/// One random bounded complex of projectives: a stalk, a two-term complex
/// with an arbitrary differential, or a three-term complex whose second
/// differential is chosen to compose to zero with the first.
pub fn random_complex<F: Field>(alg: &QuotientAlgebra<F>, rng: &mut ChaCha8Rng) -> ProjComplex<F> {
    let n = alg.vertex_count();
    let d: i32 = rng.gen_range(-3..=3);
    let term = |rng: &mut ChaCha8Rng| -> Vec<usize> {
        let len = rng.gen_range(1..=2);
        let mut t: Vec<usize> = (0..len).map(|_| rng.gen_range(0..n)).collect();
        t.sort_unstable();
        t
    };
    let c = match rng.gen_range(0..3) {
        0 => ProjComplex::stalk(rng.gen_range(0..n), d),
        1 => {
            let (t0, t1) = (term(rng), term(rng));
            let m = random_matrix(alg, rng, &t1, &t0);
            ProjComplex::new(BTreeMap::from([(d, t0), (d + 1, t1)]), BTreeMap::from([(d, m)])).unwrap()
        }
        _ => {
            let (t0, t1, t2) = (term(rng), term(rng), term(rng));
            let x = random_matrix(alg, rng, &t1, &t0);
            let mut y = Matrix::zero(&t2, &t1);
            for _ in 0..4 {
                let cand = random_matrix(alg, rng, &t2, &t1);
                if Matrix::compose(alg, &x, &cand).unwrap().is_zero() {
                    y = cand;
                    break;
                }
            }
            ProjComplex::new(
                BTreeMap::from([(d, t0), (d + 1, t1), (d + 2, t2)]),
                BTreeMap::from([(d, x), (d + 1, y)]),
            )
            .unwrap()
        }
    };
    check_complex(alg, &c).unwrap();
    c
}

pub fn random_complexes<F: Field>(alg: &QuotientAlgebra<F>, count: usize, seed: u64) -> Vec<ProjComplex<F>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_complex(alg, &mut rng)).collect()
}
