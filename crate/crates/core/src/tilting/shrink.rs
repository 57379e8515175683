use std::collections::BTreeMap;

use crate::algebra::CartanMatrix;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::graph::{BrauerGraph, EdgeId};
use crate::homological::{hom_block, Matrix, ProjComplex};

use super::{OmegaAlgebra, TiltKind, TiltingComplex};

fn star(g: &BrauerGraph, v: usize, incoming: &EdgeId, out: &mut Vec<EdgeId>) {
    for e in g.edges_after(v, incoming) {
        star(g, g.other_end(&e, v), &e, out);
        out.push(e);
    }
}

/// End-ring vertex order: `1`, then for each cycle edge `i = 2..r` the
/// edges of its tree (deepest first, siblings in cyclic order) followed
/// by `i`.
pub fn shrink_ordering(g: &BrauerGraph) -> Vec<EdgeId> {
    let cycle = g.cycle_edges();
    let mut out = vec![cycle[0].clone()];
    for i in &cycle[1..] {
        star(g, g.ends(i).1, i, &mut out);
        out.push(i.clone());
    }
    out
}

/// `Q(z)`: the stalk `P(z)` for cycle edges; for a tree edge with path
/// `i = z_0, …, z_r = z` from the cycle, `P(z_0) → … → P(z_r)` starting in
/// degree 0, each map the unique hom up to scalar.
pub fn shrink_complex<F: Field>(om: &OmegaAlgebra<F>) -> Result<TiltingComplex<F>> {
    let g = &om.graph;
    let alg = &om.algebra;
    let ordering = shrink_ordering(g);
    let mut summands = Vec::with_capacity(ordering.len());
    for z in &ordering {
        let path = g.path_from_cycle(z);
        let verts = path.iter().map(|e| om.vertex(e)).collect::<Result<Vec<_>>>()?;
        let mut terms = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for (j, &v) in verts.iter().enumerate() {
            terms.insert(j as i32, vec![v]);
        }
        for (j, w) in verts.windows(2).enumerate() {
            let hom = hom_block(alg, w[0], w[1]);
            if hom.len() != 1 {
                return Err(Error::NonUniqueHom {
                    from: path[j].to_string(),
                    to: path[j + 1].to_string(),
                    dim: hom.len(),
                });
            }
            let mut m = Matrix::zero(&[w[1]], &[w[0]]);
            m.set(0, 0, hom[0].clone())?;
            diffs.insert(j as i32, m);
        }
        summands.push(ProjComplex::new(terms, diffs)?);
    }
    Ok(TiltingComplex {
        kind: TiltKind::Shrink,
        ordering,
        summands,
    })
}

/// `4` at `(1,1)`, `2` on the rest of the diagonal and the rest of the
/// first row and column, `1` elsewhere; rows in the given order, whose
/// first entry is the loop.
pub fn shrink_pattern(order: &[EdgeId]) -> CartanMatrix {
    let n = order.len();
    let matrix = (0..n)
        .map(|z| {
            (0..n)
                .map(|w| match (z, w) {
                    (0, 0) => 4,
                    _ if z == w => 2,
                    (0, _) | (_, 0) => 2,
                    _ => 1,
                })
                .collect()
        })
        .collect();
    CartanMatrix {
        order: order.to_vec(),
        matrix,
    }
}
