use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::graph::{BrauerGraph, EdgeId, GraphVertex};
use crate::homological::{Matrix, ProjComplex};
use crate::quiver::Camp;

use super::{OmegaAlgebra, TiltKind, TiltingComplex};

/// Where the enlarging move acts: the cycle edge `at`, its α-successor
/// `succ` (the edge that moves onto the cycle) and the other edges of the
/// β-cycle at `succ`, in cyclic order after it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EnlargeData {
    pub at: EdgeId,
    pub succ: EdgeId,
    pub beta_fan: Vec<EdgeId>,
}

impl EnlargeData {
    /// Last fan edge, the `2^k` whose β arrow ends at `succ`.
    pub fn last(&self) -> Option<&EdgeId> {
        self.beta_fan.last()
    }
}

pub fn enlarge_data(g: &BrauerGraph, at: &EdgeId) -> Result<EnlargeData> {
    if !g.contains_edge(at) {
        return Err(Error::Domain(format!("no edge {at}")));
    }
    let pos = g
        .cycle_position(at)
        .ok_or_else(|| Error::Domain(format!("edge {at} is not on the cycle")))?;
    if pos == 1 {
        return Err(Error::EmptyTree(at.to_string()));
    }
    let v = g.ends(at).1;
    let succ = g
        .edges_after(v, at)
        .into_iter()
        .next()
        .ok_or_else(|| Error::EmptyTree(at.to_string()))?;
    let w = g.other_end(&succ, v);
    let beta_fan = g.edges_after(w, &succ);
    Ok(EnlargeData {
        at: at.clone(),
        succ,
        beta_fan,
    })
}

/// `Q'(succ) = P(at) ⊕ P(2^k) → P(succ)` with `P(at)` in degree 0 and the
/// map `(α, β)`; the `P(2^k)` part is dropped when the fan is empty. Every
/// other summand is a stalk in degree 0. Summands are listed in the vertex
/// order of the quiver of the moved graph.
pub fn enlarge_complex<F: Field>(om: &OmegaAlgebra<F>, d: &EnlargeData) -> Result<TiltingComplex<F>> {
    let moved = enlarge_graph_move(&om.graph, &d.at)?;
    let alg = &om.algebra;
    let bq = &om.quiver;
    let at = om.vertex(&d.at)?;
    let s = om.vertex(&d.succ)?;

    let alpha = bq
        .arrow_out(at, Camp::Alpha)
        .filter(|&a| bq.quiver.arrows[a].target == s)
        .ok_or_else(|| Error::Internal(format!("no α arrow {} -> {}", d.at, d.succ)))?;
    let mut deg0 = vec![at];
    let mut entries = vec![alg.arrow(alpha)];
    if let Some(fk) = d.last() {
        let f = om.vertex(fk)?;
        let beta = bq
            .arrow_out(f, Camp::Beta)
            .filter(|&a| bq.quiver.arrows[a].target == s)
            .ok_or_else(|| Error::Internal(format!("no β arrow {fk} -> {}", d.succ)))?;
        deg0.push(f);
        entries.push(alg.arrow(beta));
    }
    let mut m = Matrix::zero(&[s], &deg0);
    for (c, x) in entries.into_iter().enumerate() {
        m.set(0, c, x)?;
    }
    let two_term = ProjComplex::new(BTreeMap::from([(0, deg0), (1, vec![s])]), BTreeMap::from([(0, m)]))?;

    let ordering = moved.edges().to_vec();
    let summands = ordering
        .iter()
        .map(|z| {
            if *z == d.succ {
                Ok(two_term.clone())
            } else {
                Ok(ProjComplex::stalk(om.vertex(z)?, 0))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TiltingComplex {
        kind: TiltKind::Enlarge(d.clone()),
        ordering,
        summands,
    })
}

/// The graph of the endomorphism ring of the enlarging complex: `succ`
/// joins the cycle directly before `at`, leaves the α-cycle at `at`, and
/// is spliced into the α-cycle at `2^k` directly before `2^k`, which drops
/// it from the β-cycle of the fan.
pub fn enlarge_graph_move(g: &BrauerGraph, at: &EdgeId) -> Result<BrauerGraph> {
    let d = enlarge_data(g, at)?;
    let s = &d.succ;
    let v = g.ends(at).1;
    let w = g.other_end(s, v);
    let center = g.center_index();
    let mut vertices: Vec<GraphVertex> = g.vertices().to_vec();

    let list = &mut vertices[center].cyclic;
    let k = list.iter().position(|e| e == at).expect("cycle edge at S");
    list.insert(k, s.clone());
    vertices[v].cyclic.retain(|e| e != s);
    if let Some(fk) = d.last() {
        let x = g.other_end(fk, w);
        vertices[w].cyclic.retain(|e| e != s);
        let list = &mut vertices[x].cyclic;
        let k = list.iter().position(|e| e == fk).expect("fan edge at its far end");
        list.insert(k, s.clone());
    }
    BrauerGraph::from_vertices(vertices)
}
