use std::collections::BTreeMap;

use serde_json::{json, Value};

use brauer_derive::algebra::{
    a_n_presentation, omega_n_presentation, omega_relations, presentations_equal_on_basis, quotient_basis,
    socle_quotient, Presentation, QuotientAlgebra,
};
use brauer_derive::graph::{serialize_graph, BrauerGraph, EdgeId};
use brauer_derive::homological::ProjComplex;
use brauer_derive::quiver::{build_quiver, quiver_to_dot};
use brauer_derive::reduction::{certify_step, certify_trace, classify, reduce_to_normal_form, EngineParams};
use brauer_derive::tilting::{
    check_tilting, enlarge_complex, enlarge_data, enlarge_graph_move, shrink_complex, shrink_pattern,
    verify_end_generators, OmegaAlgebra, TiltCertificate, TiltingComplex,
};
use brauer_derive::{Error, Field, Result};

use crate::report::Output;
use crate::{read_graph, Command, Opts};

pub fn run<F: Field>(cmd: &Command, opts: &Opts) -> Output {
    let name = match cmd {
        Command::Validate { .. } => "validate",
        Command::Quiver { .. } => "quiver",
        Command::Algebra { .. } => "algebra",
        Command::Cartan { .. } => "cartan",
        Command::TiltShrink { .. } => "tilt-shrink",
        Command::TiltEnlarge { .. } => "tilt-enlarge",
        Command::Reduce { .. } => "reduce",
        Command::Classify { .. } => "classify",
        Command::Omega { .. } => "omega",
        Command::An { .. } => "an",
    };
    let mut out = Output::new(name);
    out.field("field", &opts.field);
    let params = EngineParams {
        cap: opts.cap,
        margin: opts.margin,
    };
    let res = match cmd {
        Command::Validate { graph } => read_graph(graph).map(|g| validate(&mut out, &g)),
        Command::Quiver { graph } => read_graph(graph).and_then(|g| quiver(&mut out, &g)),
        Command::Algebra { graph } => read_graph(graph).and_then(|g| algebra::<F>(&mut out, &g, params)),
        Command::Cartan { graph: Some(graph), .. } => {
            read_graph(graph).and_then(|g| omega_of::<F>(&g, params).map(|om| cartan(&mut out, &om.algebra)))
        }
        Command::Cartan { omega: Some(n), .. } => {
            builder::<F>(omega_n_presentation(*n), params).map(|alg| cartan(&mut out, &alg))
        }
        Command::Cartan { .. } => Err(Error::Domain("cartan needs a graph or --omega".into())),
        Command::TiltShrink { graph } => {
            read_graph(graph).and_then(|g| tilt_shrink::<F>(&mut out, &g, opts.certify, params))
        }
        Command::TiltEnlarge { graph, at } => read_graph(graph)
            .and_then(|g| tilt_enlarge::<F>(&mut out, &g, &EdgeId::new(at.as_str()), opts.certify, params)),
        Command::Reduce { graph } => read_graph(graph).and_then(|g| reduce::<F>(&mut out, &g, opts.certify, params)),
        Command::Classify { graph } => read_graph(graph).map(|g| {
            let n = classify(&g);
            out.field("n", n);
            out.line(format!("n = {n}: derived equivalent to Ω({n})"));
        }),
        Command::Omega { n } => builder::<F>(omega_n_presentation(*n), params).map(|alg| describe(&mut out, &alg)),
        Command::An { n, compare_socle } => an::<F>(&mut out, *n, *compare_socle, params),
    };
    if let Err(e) = res {
        out.fail(e);
    }
    out
}

fn omega_of<F: Field>(g: &BrauerGraph, p: EngineParams) -> Result<OmegaAlgebra<F>> {
    OmegaAlgebra::with_params(g, p.cap, p.margin)
}

fn builder<F: Field>(pres: Result<Presentation<F>>, p: EngineParams) -> Result<QuotientAlgebra<F>> {
    let pres = pres?;
    let cap = p.cap.unwrap_or_else(|| pres.default_cap());
    let margin = p.margin.unwrap_or_else(|| pres.default_margin());
    quotient_basis(&pres, cap, margin)
}

fn validate(out: &mut Output, g: &BrauerGraph) {
    out.field("valid", true);
    out.field("edges", g.edge_count());
    out.field("cycleLength", g.cycle_edges().len());
    out.field("treeEdges", g.tree_edge_count());
    out.field("graph", g.to_file());
    out.line(format!(
        "valid: {} edges, cycle of length {}, {} tree edges",
        g.edge_count(),
        g.cycle_edges().len(),
        g.tree_edge_count()
    ));
    out.line(serialize_graph(g));
}

fn quiver(out: &mut Output, g: &BrauerGraph) -> Result<()> {
    let q = build_quiver(g)?;
    let arrows: Vec<Value> = q
        .quiver
        .arrows
        .iter()
        .map(|a| {
            json!({
                "name": a.name,
                "source": q.quiver.vertices[a.source],
                "target": q.quiver.vertices[a.target],
                "camp": a.camp,
            })
        })
        .collect();
    out.field("vertices", &q.quiver.vertices);
    out.field("arrows", arrows);
    out.line(quiver_to_dot(&q));
    Ok(())
}

fn cartan<F: Field>(out: &mut Output, alg: &QuotientAlgebra<F>) {
    let c = alg.cartan();
    out.line(c.to_text());
    out.field("cartan", c);
}

fn describe<F: Field>(out: &mut Output, alg: &QuotientAlgebra<F>) {
    let p = alg.presentation();
    let q = &p.quiver;
    out.line(format!("algebra {}", p.name));
    out.line(format!(
        "vertices: {}",
        q.vertices.iter().map(EdgeId::as_str).collect::<Vec<_>>().join(" ")
    ));
    let arrows: Vec<String> = q
        .arrows
        .iter()
        .map(|a| format!("{}: {} -> {}", a.name, q.vertices[a.source], q.vertices[a.target]))
        .collect();
    out.line(format!("arrows: {}", arrows.join(", ")));
    out.line("relations:");
    for r in p.relation_strings() {
        out.line(format!("  {r}"));
    }
    out.line(format!("cap {}, margin {}", alg.cap(), alg.margin()));
    out.line("basis:");
    out.line(alg.basis_dump());
    out.line(format!("dim: {}", alg.dim()));
    out.line("cartan:");
    out.line(alg.cartan().to_text());

    let n = alg.vertex_count();
    let blocks: Vec<Value> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| alg.block_dim(i, j) > 0)
        .map(|(i, j)| {
            let paths: Vec<String> = alg.block_paths(i, j).iter().map(|x| x.display(q)).collect();
            json!({ "from": q.vertices[i], "to": q.vertices[j], "paths": paths })
        })
        .collect();
    out.field("name", &p.name);
    out.field("relations", p.relation_strings());
    out.field("cap", alg.cap());
    out.field("margin", alg.margin());
    out.field("dim", alg.dim());
    out.field("basis", blocks);
    out.field("cartan", alg.cartan());
}

fn algebra<F: Field>(out: &mut Output, g: &BrauerGraph, p: EngineParams) -> Result<()> {
    let quiver = build_quiver(g)?;
    let pres = omega_relations::<F>(&quiver)?;
    let alg = builder(Ok(pres), p)?;
    describe(out, &alg);
    Ok(())
}

fn complex_json<F: Field>(alg: &QuotientAlgebra<F>, c: &ProjComplex<F>) -> Value {
    let q = &alg.presentation().quiver;
    let mut terms = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for d in c.degrees() {
        let labels: Vec<&str> = c.term(d).iter().map(|&v| q.vertices[v].as_str()).collect();
        terms.insert(d.to_string(), labels);
        let m = c.diff(d);
        if !c.term(d + 1).is_empty() {
            let rows: Vec<Vec<String>> = (0..m.rows.len())
                .map(|r| (0..m.cols.len()).map(|k| alg.display(m.get(r, k))).collect())
                .collect();
            diffs.insert(d.to_string(), rows);
        }
    }
    json!({ "terms": terms, "differentials": diffs })
}

fn show_complex<F: Field>(out: &mut Output, om: &OmegaAlgebra<F>, q: &TiltingComplex<F>) {
    out.line(format!(
        "ordering: {}",
        q.ordering.iter().map(EdgeId::as_str).collect::<Vec<_>>().join(" ")
    ));
    out.line(q.dump(&om.algebra));
    let summands: Vec<Value> = q
        .ordering
        .iter()
        .zip(&q.summands)
        .map(|(z, c)| json!({ "edge": z, "complex": complex_json(&om.algebra, c) }))
        .collect();
    out.field("ordering", &q.ordering);
    out.field("summands", summands);
}

fn show_certificate(out: &mut Output, cert: &TiltCertificate) {
    let nonzero = cert.hom_vanishing.values().filter(|&&d| d != 0).count();
    out.line(format!(
        "Hom(Q, Q[s]) = 0 for s in {:?}: {}",
        cert.hom_vanishing.keys().collect::<Vec<_>>(),
        nonzero == 0
    ));
    out.line("generation:");
    for w in &cert.generation {
        out.line(format!("  {} ~ {}", w.cone, w.matches));
    }
    out.line("end cartan:");
    out.line(cert.end_cartan.to_text());
    out.line(format!(
        "|det| source {} end {}",
        cert.det_source.abs(),
        cert.det_end.abs()
    ));
    out.field("certificate", cert);
}

fn tilt_shrink<F: Field>(out: &mut Output, g: &BrauerGraph, certify: bool, p: EngineParams) -> Result<()> {
    let om = omega_of::<F>(g, p)?;
    let q = shrink_complex(&om)?;
    show_complex(out, &om, &q);
    let cert = check_tilting(&om, &q)?;
    show_certificate(out, &cert);
    if certify {
        if cert.end_cartan != shrink_pattern(&q.ordering) {
            return Err(Error::CertificateFailure {
                step: None,
                axiom: "end Cartan matrix does not follow the 4/2/2/1 pattern".into(),
            });
        }
        let k = verify_end_generators(&om, &q)?;
        out.line(format!(
            "end-ring generators satisfy all {k} relations of Ω({})",
            q.ordering.len()
        ));
        out.field("relationsChecked", k);
    }
    Ok(())
}

fn tilt_enlarge<F: Field>(
    out: &mut Output,
    g: &BrauerGraph,
    at: &EdgeId,
    certify: bool,
    p: EngineParams,
) -> Result<()> {
    let om = omega_of::<F>(g, p)?;
    let d = enlarge_data(g, at)?;
    let q = enlarge_complex(&om, &d)?;
    let moved = enlarge_graph_move(g, at)?;
    out.field("enlarge", &d);
    out.field("moved", moved.to_file());
    out.line(format!("moved graph: {}", serialize_graph(&moved)));
    show_complex(out, &om, &q);
    if certify {
        let cert = certify_step::<F>(g, at, &moved, p)?;
        show_certificate(out, &cert);
        let k = verify_end_generators(&om, &q)?;
        out.line(format!(
            "end-ring generators satisfy all {k} relations of the moved graph's algebra"
        ));
        out.field("relationsChecked", k);
    } else {
        show_certificate(out, &check_tilting(&om, &q)?);
    }
    Ok(())
}

fn reduce<F: Field>(out: &mut Output, g: &BrauerGraph, certify: bool, p: EngineParams) -> Result<()> {
    let (trace, err) = match reduce_to_normal_form::<F>(g, certify, p) {
        Ok(t) => (t, None),
        Err(e) => (*e.partial, Some(e.error)),
    };
    out.line(format!("n = {}", trace.n));
    for (i, s) in trace.steps.iter().enumerate() {
        out.line(format!(
            "step {i}: enlarge at {} -> {}",
            s.at,
            serialize_graph(&s.after)
        ));
        if let Some(c) = &s.certificate {
            out.line(format!("  certified, |det| {}", c.det_end.abs()));
        }
    }
    out.line(format!("normal form: {}", serialize_graph(&trace.normal_form)));
    out.field("trace", &trace);
    if let Some(e) = err {
        return Err(e);
    }
    if certify {
        certify_trace::<F>(&trace, p)?;
        out.line("trace re-verified");
        out.field("verified", true);
    }
    Ok(())
}

fn an<F: Field>(out: &mut Output, n: usize, compare_socle: bool, p: EngineParams) -> Result<()> {
    let a = builder::<F>(a_n_presentation(n), p)?;
    describe(out, &a);
    if compare_socle {
        let omega = builder::<F>(omega_n_presentation(n), p)?;
        let equal = presentations_equal_on_basis(&socle_quotient(&omega)?, &socle_quotient(&a)?)?;
        out.line(format!("socle quotients equal: {equal}"));
        out.field("socleQuotientsEqual", equal);
    }
    Ok(())
}
