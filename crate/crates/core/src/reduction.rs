//! Reduction of a one-loop Brauer graph to its loop-star normal form by
//! repeated enlarging moves, with an optional certificate per step.

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::graph::{BrauerGraph, EdgeId};
use crate::tilting::{
    check_tilting, enlarge_complex, enlarge_data, enlarge_graph_move, verify_end_generators, OmegaAlgebra,
    TiltCertificate,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub before: BrauerGraph,
    pub after: BrauerGraph,
    pub at: EdgeId,
    pub certificate: Option<TiltCertificate>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub input: BrauerGraph,
    pub steps: Vec<ReductionStep>,
    pub normal_form: BrauerGraph,
    pub n: usize,
}

/// A failed step, with the steps completed before it.
#[derive(Debug, Clone, thiserror::Error)]
#[error("{error}")]
pub struct ReductionError {
    pub error: Error,
    pub partial: Box<ReductionTrace>,
}

impl From<ReductionError> for Error {
    fn from(e: ReductionError) -> Self {
        e.error
    }
}

/// Engine bounds for the per-step algebras; `None` uses the defaults.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EngineParams {
    pub cap: Option<usize>,
    pub margin: Option<usize>,
}

/// The derived-equivalence class representative Ω(n) has `n` = number of
/// edges.
pub fn classify(g: &BrauerGraph) -> usize {
    g.edge_count()
}

/// First cycle edge, in cycle order, carrying a nonempty tree.
pub fn next_pivot(g: &BrauerGraph) -> Option<EdgeId> {
    g.cycle_edges()
        .iter()
        .find(|e| g.tree(e).is_some_and(|t| !t.edges.is_empty()))
        .cloned()
}

fn with_step(e: Error, step: usize) -> Error {
    match e {
        Error::CertificateFailure { axiom, .. } => Error::CertificateFailure {
            step: Some(step),
            axiom,
        },
        Error::RelationFailure(r) => Error::CertificateFailure {
            step: Some(step),
            axiom: format!("relation {r} fails on the generator maps"),
        },
        other => other,
    }
}

/// Tilting certificate for one enlarging move, cross-checked against the
/// Cartan matrix of the moved graph's algebra.
pub fn certify_step<F: Field>(
    before: &BrauerGraph,
    at: &EdgeId,
    after: &BrauerGraph,
    params: EngineParams,
) -> Result<TiltCertificate> {
    let om = OmegaAlgebra::<F>::with_params(before, params.cap, params.margin)?;
    let q = enlarge_complex(&om, &enlarge_data(before, at)?)?;
    let cert = check_tilting(&om, &q)?;
    verify_end_generators(&om, &q)?;
    let moved = OmegaAlgebra::<F>::with_params(after, params.cap, params.margin)?;
    let expect = moved.algebra.cartan().reordered(&cert.end_cartan.order)?;
    if expect != cert.end_cartan {
        return Err(Error::certificate(
            "end Cartan matrix differs from the Cartan matrix of the moved graph",
        ));
    }
    Ok(cert)
}

fn check_graph_step(before: &BrauerGraph, after: &BrauerGraph) -> Result<()> {
    after.validate()?;
    if after.edge_count() != before.edge_count() {
        return Err(Error::certificate("edge count changed"));
    }
    if after.cycle_edges().len() != before.cycle_edges().len() + 1 {
        return Err(Error::certificate("cycle did not grow by one edge"));
    }
    Ok(())
}

pub fn reduce_to_normal_form<F: Field>(
    g: &BrauerGraph,
    certify: bool,
    params: EngineParams,
) -> std::result::Result<ReductionTrace, ReductionError> {
    let mut trace = ReductionTrace {
        input: g.clone(),
        steps: Vec::new(),
        normal_form: g.clone(),
        n: classify(g),
    };
    let mut cur = g.clone();
    while let Some(at) = next_pivot(&cur) {
        let step = trace.steps.len();
        let attempt = (|| {
            let after = enlarge_graph_move(&cur, &at)?;
            check_graph_step(&cur, &after)?;
            let certificate = if certify {
                Some(certify_step::<F>(&cur, &at, &after, params)?)
            } else {
                None
            };
            Ok(ReductionStep {
                before: cur.clone(),
                after,
                at: at.clone(),
                certificate,
            })
        })();
        match attempt {
            Ok(s) => {
                cur = s.after.clone();
                trace.steps.push(s);
                trace.normal_form = cur.clone();
            }
            Err(e) => {
                return Err(ReductionError {
                    error: with_step(e, step),
                    partial: Box::new(trace),
                })
            }
        }
    }
    if let Err(e) = check_abs_det(&trace) {
        return Err(ReductionError {
            error: e,
            partial: Box::new(trace),
        });
    }
    Ok(trace)
}

fn check_abs_det(t: &ReductionTrace) -> Result<()> {
    let mut dets = t
        .steps
        .iter()
        .enumerate()
        .filter_map(|(i, s)| s.certificate.as_ref().map(|c| (i, c)))
        .flat_map(|(i, c)| [(i, c.det_source), (i, c.det_end)]);
    if let Some((_, d0)) = dets.next() {
        for (i, d) in dets {
            if d.abs() != d0.abs() {
                return Err(Error::CertificateFailure {
                    step: Some(i),
                    axiom: format!("|det| changes from {} to {}", d0.abs(), d.abs()),
                });
            }
        }
    }
    Ok(())
}

/// Re-verifies a certified trace from scratch: every graph, every move,
/// every certificate recomputed and compared with the recorded one, and the
/// determinant along the whole trace.
pub fn certify_trace<F: Field>(t: &ReductionTrace, params: EngineParams) -> Result<()> {
    let fail = |step: usize, axiom: String| Error::CertificateFailure {
        step: Some(step),
        axiom,
    };
    t.input.validate()?;
    let mut cur = t.input.clone();
    for (i, s) in t.steps.iter().enumerate() {
        if s.before != cur {
            return Err(fail(i, "step does not start where the previous one ended".into()));
        }
        if next_pivot(&cur).as_ref() != Some(&s.at) {
            return Err(fail(i, format!("pivot {} is not the first nonempty tree", s.at)));
        }
        let after = enlarge_graph_move(&cur, &s.at).map_err(|e| with_step(e, i))?;
        if after != s.after {
            return Err(fail(i, "recorded graph differs from the move".into()));
        }
        check_graph_step(&cur, &after).map_err(|e| with_step(e, i))?;
        let recorded = s
            .certificate
            .as_ref()
            .ok_or_else(|| fail(i, "step carries no certificate".into()))?;
        recorded.check_recorded().map_err(|e| with_step(e, i))?;
        let fresh = certify_step::<F>(&cur, &s.at, &after, params).map_err(|e| with_step(e, i))?;
        if fresh != *recorded {
            let what = if fresh.end_cartan != recorded.end_cartan {
                "recorded end Cartan matrix"
            } else {
                "recorded certificate"
            };
            return Err(fail(i, format!("{what} does not match a fresh computation")));
        }
        cur = after;
    }
    if cur != t.normal_form || !cur.is_loop_star() {
        return Err(Error::certificate("trace does not end at its loop-star normal form"));
    }
    if t.n != classify(&t.input) || t.n != classify(&cur) {
        return Err(Error::certificate("edge count is not preserved"));
    }
    check_abs_det(t)
}

impl Serialize for ReductionStep {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("ReductionStep", 3)?;
        st.serialize_field("at", &self.at)?;
        st.serialize_field("after", &self.after.to_file())?;
        st.serialize_field("certificate", &self.certificate)?;
        st.end()
    }
}

impl Serialize for ReductionTrace {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("ReductionTrace", 4)?;
        st.serialize_field("input", &self.input.to_file())?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("steps", &self.steps)?;
        st.serialize_field("normalForm", &self.normal_form.to_file())?;
        st.end()
    }
}
