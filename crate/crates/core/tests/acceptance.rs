//! Acceptance criteria A1 to A8, one pass/fail line each.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use brauer_derive::algebra::{
    a_n_presentation, omega_n_presentation, omega_relations, presentations_equal_on_basis, quotient_basis,
    quotient_default, socle_quotient, QuotientAlgebra,
};
use brauer_derive::graph::{loop_star, BrauerGraph, EdgeId};
use brauer_derive::homological::{congruence, euler_matrix, happel_cartan, homotopy_dim};
use brauer_derive::quiver::build_quiver;
use brauer_derive::reduction::{certify_trace, classify, reduce_to_normal_form, EngineParams};
use brauer_derive::tilting::{
    check_tilting, end_cartan, enlarge_complex, enlarge_data, shrink_complex, OmegaAlgebra, TiltingComplex,
};
use brauer_derive::Rational;

use common::{corpus, g_min, random_complexes, random_graph};

type Q = Rational;
type Check = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn omega(g: &BrauerGraph) -> Result<OmegaAlgebra<Q>, String> {
    OmegaAlgebra::new(g).map_err(err)
}

/// 4 on the loop's diagonal, 2 elsewhere on the diagonal and in the loop's
/// row and column, 1 everywhere else.
fn expected_entry(loop_edge: &EdgeId, z: &EdgeId, w: &EdgeId) -> i64 {
    match (z == loop_edge, w == loop_edge) {
        (true, true) => 4,
        _ if z == w => 2,
        (true, false) | (false, true) => 2,
        _ => 1,
    }
}

fn a1() -> Check {
    let graphs = corpus();
    let mut slowest = Duration::ZERO;
    for (name, g) in &graphs {
        let start = Instant::now();
        let om = omega(g)?;
        let q = shrink_complex(&om).map_err(err)?;
        let end = end_cartan(&om, &q).map_err(err)?;
        for (i, z) in q.ordering.iter().enumerate() {
            for (j, w) in q.ordering.iter().enumerate() {
                let want = expected_entry(g.loop_edge(), z, w);
                ensure(end.matrix[i][j] == want, || {
                    format!("{name}: entry ({z}, {w}) is {} not {want}", end.matrix[i][j])
                })?;
            }
        }
        let t = start.elapsed();
        ensure(t < Duration::from_secs(60), || format!("{name} took {t:?}"))?;
        slowest = slowest.max(t);
    }
    let ns: Vec<usize> = graphs.iter().map(|(_, g)| g.edge_count()).collect();
    Ok(format!("{} graphs, n in {:?}, slowest {slowest:.2?}", graphs.len(), ns))
}

fn a2() -> Check {
    for n in 1..=8 {
        let from_graph = omega_relations::<Q>(&build_quiver(&loop_star(n).map_err(err)?).map_err(err)?).map_err(err)?;
        let displayed = omega_n_presentation::<Q>(n).map_err(err)?;
        let (a, b) = (
            quotient_default(&from_graph).map_err(err)?,
            quotient_default(&displayed).map_err(err)?,
        );
        ensure(presentations_equal_on_basis(&a, &b).map_err(err)?, || {
            format!("Ω({n}) from the loop-star differs from the displayed presentation")
        })?;
    }
    Ok("n = 1..8 identical bases and structure constants".into())
}

fn a3() -> Check {
    let mut dims = Vec::new();
    for n in 1..=8 {
        let alg = quotient_default(&omega_n_presentation::<Q>(n).map_err(err)?).map_err(err)?;
        ensure(alg.dim() == n * n + 3 * n, || format!("dim Ω({n}) = {}", alg.dim()))?;
        dims.push(alg.dim());
    }
    Ok(format!("dims {dims:?}"))
}

/// The shrinking complex and one enlarging complex per cycle edge carrying
/// a tree.
fn complexes_of(om: &OmegaAlgebra<Q>) -> Result<Vec<(String, TiltingComplex<Q>)>, String> {
    let g = &om.graph;
    let mut out = vec![("shrink".to_string(), shrink_complex(om).map_err(err)?)];
    for e in g.cycle_edges().iter().skip(1) {
        if g.tree(e).is_some_and(|t| !t.edges.is_empty()) {
            let d = enlarge_data(g, e).map_err(err)?;
            out.push((format!("enlarge at {e}"), enlarge_complex(om, &d).map_err(err)?));
        }
    }
    Ok(out)
}

fn a4() -> Check {
    let (mut complexes, mut shifts, mut cones) = (0, 0, 0);
    for (name, g) in corpus() {
        let om = omega(&g)?;
        for (kind, q) in complexes_of(&om)? {
            let total = q.total();
            let bound = total.width() + 1;
            for r in (-bound..=bound).filter(|&r| r != 0) {
                let d = homotopy_dim(&om.algebra, &total, &total, r).map_err(err)?;
                ensure(d == 0, || format!("{name}, {kind}: Hom(Q, Q[{r}]) has dimension {d}"))?;
                shifts += 1;
            }
            let cert = check_tilting(&om, &q).map_err(|e| format!("{name}, {kind}: {e}"))?;
            cones += cert.generation.len();
            complexes += 1;
        }
    }
    Ok(format!(
        "{complexes} complexes, {shifts} shifts vanish, {cones} witnesses matched"
    ))
}

fn det3(m: [[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn a5() -> Check {
    let mut steps = 0;
    for (name, g) in corpus() {
        let t = reduce_to_normal_form::<Q>(&g, true, EngineParams::default()).map_err(|e| format!("{name}: {e}"))?;
        ensure(t.steps.len() == g.tree_edge_count(), || {
            format!("{name}: {} steps for {} tree edges", t.steps.len(), g.tree_edge_count())
        })?;
        ensure(t.normal_form.is_loop_star(), || {
            format!("{name}: normal form is not a loop-star")
        })?;
        ensure(
            classify(&t.normal_form) == g.edge_count() && t.n == g.edge_count(),
            || format!("{name}: edge count changed"),
        )?;
        let det0 = omega(&g)?.algebra.cartan().det().abs();
        for (i, s) in t.steps.iter().enumerate() {
            let c = s.certificate.as_ref().ok_or(format!("{name}: step {i} uncertified"))?;
            let fresh = omega(&s.after)?.algebra.cartan().det().abs();
            ensure(
                c.det_source.unsigned_abs() as u128 == det0.unsigned_abs()
                    && c.det_end.unsigned_abs() as u128 == det0.unsigned_abs()
                    && fresh == det0,
                || format!("{name}: |det| moves at step {i}"),
            )?;
        }
        certify_trace::<Q>(&t, EngineParams::default()).map_err(|e| format!("{name}: {e}"))?;
        steps += t.steps.len();
    }

    // G_min by hand: Cartan matrix in edge order 1, 2, 3
    let oracle = [[4, 2, 0], [2, 2, 1], [0, 1, 2]];
    let g = g_min();
    let cartan = omega(&g)?.algebra.cartan();
    ensure(cartan.matrix == oracle.map(|r| r.to_vec()).to_vec(), || {
        format!("G_min Cartan {:?}", cartan.matrix)
    })?;
    let t = reduce_to_normal_form::<Q>(&g, true, EngineParams::default()).map_err(err)?;
    let c = t
        .steps
        .first()
        .and_then(|s| s.certificate.as_ref())
        .ok_or("G_min trace has no step")?;
    ensure(t.steps.len() == 1 && t.n == 3, || {
        format!("G_min: {} steps, n = {}", t.steps.len(), t.n)
    })?;
    ensure(c.det_source == det3(oracle) && c.det_end == det3(oracle), || {
        format!("G_min determinants {} and {}", c.det_source, c.det_end)
    })?;
    Ok(format!(
        "{steps} certified steps over the corpus; G_min: 1 step, n = 3, det 4 -> 4"
    ))
}

fn a6() -> Check {
    for n in 1..=6 {
        let om = socle_quotient(&quotient_default(&omega_n_presentation::<Q>(n).map_err(err)?).map_err(err)?)
            .map_err(err)?;
        let an =
            socle_quotient(&quotient_default(&a_n_presentation::<Q>(n).map_err(err)?).map_err(err)?).map_err(err)?;
        ensure(presentations_equal_on_basis(&om, &an).map_err(err)?, || {
            format!("Ω({n})/soc and A({n})/soc differ")
        })?;
    }
    Ok("n = 1..6 socle quotients presentation-equal".into())
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

fn happel_holds(alg: &QuotientAlgebra<Q>, count: usize, seed: u64) -> Result<(), TestCaseError> {
    let cs = random_complexes(alg, count, seed);
    let labels: Vec<EdgeId> = (0..count).map(|k| EdgeId::new(format!("q{k}"))).collect();
    let c = alg.cartan();
    let direct = happel_cartan(&labels, &cs, &c).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let s = euler_matrix(&cs, alg.vertex_count());
    prop_assert_eq!(direct.matrix, congruence(&s, &c.matrix));
    Ok(())
}

fn a7() -> Check {
    let graphs = corpus();
    for (name, g) in &graphs {
        let om = omega(g)?;
        runner(100)
            .run(&(1usize..=4, any::<u64>()), |(count, seed)| {
                happel_holds(&om.algebra, count, seed)
            })
            .map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!(
        "100 random complex families on each of {} algebras",
        graphs.len()
    ))
}

fn stable_under_growth(alg: &QuotientAlgebra<Q>) -> Result<(), String> {
    let p = alg.presentation();
    let (cap, margin) = (alg.cap(), alg.margin());
    for (c, m) in [(cap + 1, margin), (cap, margin + 1)] {
        let other = quotient_basis(p, c, m).map_err(err)?;
        ensure(other.block_dims() == alg.block_dims(), || {
            format!("{}: dimensions move at cap {c}, margin {m}", p.name)
        })?;
    }
    Ok(())
}

fn a8() -> Check {
    let mut count = 0;
    for (_, g) in corpus() {
        stable_under_growth(&omega(&g)?.algebra)?;
        count += 1;
    }
    for n in 1..=8 {
        stable_under_growth(&quotient_default(&omega_n_presentation::<Q>(n).map_err(err)?).map_err(err)?)?;
        count += 1;
    }
    runner(48)
        .run(&random_graph(8), |g| {
            let om = OmegaAlgebra::<Q>::new(&g).map_err(|e| TestCaseError::fail(e.to_string()))?;
            stable_under_growth(&om.algebra).map_err(TestCaseError::fail)
        })
        .map_err(err)?;
    Ok(format!(
        "{count} fixed algebras and 48 random graphs stable at default parameters"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("A1", "Cartan pattern of the shrinking complex", a1),
        ("A2", "presentation fidelity", a2),
        ("A3", "dimension closed form", a3),
        ("A4", "tilting axioms", a4),
        ("A5", "reduction soundness", a5),
        ("A6", "socle equivalence", a6),
        ("A7", "Happel identity", a7),
        ("A8", "engine stability", a8),
    ];
    let mut failed = 0;
    for (id, title, check) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        match result {
            Ok(detail) => println!("{id} PASS  {title}: {detail} ({t:.2?})"),
            Err(detail) => {
                failed += 1;
                println!("{id} FAIL  {title}: {detail} ({t:.2?})");
            }
        }
    }
    if failed == 0 {
        println!("acceptance: 8/8 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 8 criteria fail");
        ExitCode::FAILURE
    }
}
