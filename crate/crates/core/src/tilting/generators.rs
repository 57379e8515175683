//! Chain maps between summands standing for the arrows of the expected
//! endomorphism ring, and the check that they satisfy its relations up to
//! homotopy.

use std::collections::BTreeMap;

use crate::algebra::{omega_n_presentation, omega_relations, Elem, Path, Presentation, QuotientAlgebra};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::graph::EdgeId;
use crate::homological::{is_null_homotopic, ChainMap, HomSystem, Matrix, ProjComplex};
use crate::quiver::{build_quiver, Camp};

use super::enlarge_graph_move;
use super::{EnlargeData, OmegaAlgebra, TiltKind, TiltingComplex};

/// Chain map `a -> b` with the given degree-0 entries, completed in the
/// other degrees when possible.
fn from_degree_zero<F: Field>(
    alg: &QuotientAlgebra<F>,
    a: &ProjComplex<F>,
    b: &ProjComplex<F>,
    entries: Vec<(usize, usize, Elem<F>)>,
    name: &str,
) -> Result<ChainMap<F>> {
    let mut m = Matrix::zero(b.term(0), a.term(0));
    for (r, c, x) in entries {
        m.set(r, c, x)?;
    }
    HomSystem::new(alg, a, b)
        .extend(&BTreeMap::from([(0, m)]))?
        .ok_or_else(|| Error::RelationFailure(format!("no chain map extends the degree-0 part of {name}")))
}

fn path_product<F: Field>(alg: &QuotientAlgebra<F>, arrows: &[usize]) -> Result<Elem<F>> {
    let q = &alg.presentation().quiver;
    Ok(alg.reduce_path(&Path::from_arrows(q, arrows)?))
}

/// Evaluates every relation of `pres` on the generator maps (one per arrow)
/// and requires it to be null-homotopic; each generator must not be.
fn check_relations<F: Field>(
    alg: &QuotientAlgebra<F>,
    pres: &Presentation<F>,
    summands: &[&ProjComplex<F>],
    gens: &[ChainMap<F>],
) -> Result<usize> {
    for (a, f) in gens.iter().enumerate() {
        if is_null_homotopic(alg, f)? {
            return Err(Error::RelationFailure(format!(
                "the map for {} is null-homotopic",
                pres.quiver.arrows[a].name
            )));
        }
    }
    for rel in &pres.relations {
        let (s, t) = rel
            .endpoints()
            .ok_or_else(|| Error::Internal("empty relation".into()))?;
        let mut acc = ChainMap::zero(summands[s], summands[t]);
        for (c, p) in &rel.terms {
            let mut f = ChainMap::identity(alg, summands[s]);
            for &a in &p.arrows {
                f = f.then(alg, &gens[a])?;
            }
            acc = acc.axpy(c, &f)?;
        }
        if !is_null_homotopic(alg, &acc)? {
            return Err(Error::RelationFailure(rel.display(&pres.quiver)));
        }
    }
    Ok(pres.relations.len())
}

/// Builds the designated generator maps of the endomorphism ring and checks
/// the relations of the expected algebra: Ω(n) for the shrinking complex,
/// Ω(T') of the moved graph for the enlarging one. Returns the number of
/// relations checked.
pub fn verify_end_generators<F: Field>(om: &OmegaAlgebra<F>, q: &TiltingComplex<F>) -> Result<usize> {
    match &q.kind {
        TiltKind::Shrink => verify_shrink(om, q),
        TiltKind::Enlarge(d) => verify_enlarge(om, q, d),
    }
}

fn verify_shrink<F: Field>(om: &OmegaAlgebra<F>, q: &TiltingComplex<F>) -> Result<usize> {
    let alg = &om.algebra;
    let bq = &om.quiver;
    let g = &om.graph;
    let n = q.ordering.len();
    let pres = omega_n_presentation::<F>(n)?;
    let summands: Vec<&ProjComplex<F>> = q.summands.iter().collect();

    let q1 = summands[0];
    let mut gens = vec![from_degree_zero(
        alg,
        q1,
        q1,
        vec![(0, 0, alg.arrow(bq.loop_arrow()))],
        "α1",
    )?];
    for k in 1..=n {
        let (z, next) = (&q.ordering[k - 1], k % n);
        let (a, b) = (summands[k - 1], summands[next]);
        let name = format!("β{k}");
        let f = if g.cycle_position(z).is_some() {
            // β out of a cycle edge, landing in P(next cycle edge) in degree 0
            let beta = bq
                .arrow_out(om.vertex(z)?, Camp::Beta)
                .ok_or_else(|| Error::Internal(format!("no β arrow at {z}")))?;
            from_degree_zero(alg, a, b, vec![(0, 0, alg.arrow(beta))], &name)?
        } else {
            let root = om.vertex(&g.root_of(z))?;
            from_degree_zero(alg, a, b, vec![(0, 0, alg.unit(root))], &name)?
        };
        gens.push(f);
    }
    check_relations(alg, &pres, &summands, &gens)
}

fn verify_enlarge<F: Field>(om: &OmegaAlgebra<F>, q: &TiltingComplex<F>, d: &EnlargeData) -> Result<usize> {
    let alg = &om.algebra;
    let bq = &om.quiver;
    let moved = enlarge_graph_move(&om.graph, &d.at)?;
    let new_q = build_quiver(&moved)?;
    let pres = omega_relations::<F>(&new_q)?;
    let summands = new_q
        .quiver
        .vertices
        .iter()
        .map(|z| q.summand(z))
        .collect::<Result<Vec<_>>>()?;

    let old = |e: &EdgeId| om.vertex(e);
    let arrow = |v: usize, camp: Camp| {
        bq.arrow_out(v, camp)
            .ok_or_else(|| Error::Internal(format!("no {camp} arrow at {}", om.label(v))))
    };
    let (at, s) = (old(&d.at)?, old(&d.succ)?);
    let cycle = moved.cycle_edges();
    let k = cycle.iter().position(|e| *e == d.succ).expect("succ on the new cycle");
    let pred = old(&cycle[(k + cycle.len() - 1) % cycle.len()])?;
    let fk = d.last().map(old).transpose()?;
    let f1 = d.beta_fan.first().map(old).transpose()?;

    let mut gens = Vec::new();
    for (ai, a) in new_q.quiver.arrows.iter().enumerate() {
        let (src, tgt) = (
            new_q.quiver.vertices[a.source].clone(),
            new_q.quiver.vertices[a.target].clone(),
        );
        let (u, v) = (old(&src)?, old(&tgt)?);
        let (qa, qb) = (summands[a.source], summands[a.target]);
        let entries: Vec<(usize, usize, Elem<F>)> = match a.camp {
            Camp::Beta if u == pred && v == s => vec![(0, 0, alg.arrow(arrow(pred, Camp::Beta)?))],
            Camp::Beta if u == s && v == at => vec![(0, 0, alg.unit(at))],
            Camp::Alpha if u == at => {
                vec![(
                    0,
                    0,
                    path_product(alg, &[arrow(at, Camp::Alpha)?, arrow(s, Camp::Alpha)?])?,
                )]
            }
            Camp::Alpha if u == s && Some(v) == fk => vec![(0, 1, alg.unit(v))],
            Camp::Alpha if v == s => {
                let into = if Some(u) == fk {
                    path_product(alg, &bq.plain_cycle(u, Camp::Beta))?
                } else {
                    alg.arrow(arrow(u, Camp::Alpha)?)
                };
                vec![(1, 0, into)]
            }
            Camp::Beta if Some(u) == fk && Some(v) == f1 => {
                vec![(
                    0,
                    0,
                    path_product(alg, &[arrow(u, Camp::Beta)?, arrow(s, Camp::Beta)?])?,
                )]
            }
            _ => {
                let same = |c: Camp| bq.arrow_out(u, c).filter(|&b| bq.quiver.arrows[b].target == v);
                let b = same(a.camp)
                    .or_else(|| same(a.camp.opposite()))
                    .ok_or_else(|| Error::Internal(format!("no old arrow {src} -> {tgt}")))?;
                vec![(0, 0, alg.arrow(b))]
            }
        };
        gens.push(from_degree_zero(alg, qa, qb, entries, &new_q.quiver.arrows[ai].name)?);
    }
    check_relations(alg, &pres, &summands, &gens)
}
