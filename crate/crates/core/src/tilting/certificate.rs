use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::CartanMatrix;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homological::{
    check_complex, happel_cartan, homotopy_dim, mapping_cone, minimize, ChainMap, Matrix, ProjComplex,
};

use super::{OmegaAlgebra, TiltKind, TiltingComplex};

/// A cone built from summands, and the stalk it minimizes to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenerationWitness {
    pub cone: String,
    pub matches: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TiltCertificate {
    /// `dim Hom(Q, Q[s])` for every nonzero shift in the checked window.
    pub hom_vanishing: BTreeMap<i32, usize>,
    pub generation: Vec<GenerationWitness>,
    pub end_cartan: CartanMatrix,
    pub det_source: i64,
    pub det_end: i64,
}

impl TiltCertificate {
    /// Re-reads the recorded numbers: vanishing at every nonzero shift,
    /// equal absolute determinants, and the end Cartan determinant.
    pub fn check_recorded(&self) -> Result<()> {
        if let Some((s, d)) = self.hom_vanishing.iter().find(|(s, d)| **s != 0 && **d != 0) {
            return Err(Error::certificate(format!("Hom(Q, Q[{s}]) has dimension {d}")));
        }
        if self.end_cartan.det() as i64 != self.det_end {
            return Err(Error::certificate("recorded end determinant disagrees with the matrix"));
        }
        if self.det_source.abs() != self.det_end.abs() {
            return Err(Error::certificate(format!(
                "|det| changes from {} to {}",
                self.det_source, self.det_end
            )));
        }
        Ok(())
    }
}

fn stalk_name(label: &str, degree: i32) -> String {
    format!("P({label})[{}]", -degree)
}

/// Cartan matrix of the endomorphism ring, by the alternating-sum formula
/// over the complex's ordering.
pub fn end_cartan<F: Field>(om: &OmegaAlgebra<F>, q: &TiltingComplex<F>) -> Result<CartanMatrix> {
    happel_cartan(&q.ordering, &q.summands, &om.algebra.cartan())
}

/// Degreewise identity `a -> b` on the degrees where both complexes agree.
fn identity_where_equal<F: Field>(om: &OmegaAlgebra<F>, a: &ProjComplex<F>, b: &ProjComplex<F>) -> Result<ChainMap<F>> {
    let comps = a
        .degrees()
        .filter(|&d| !b.term(d).is_empty())
        .map(|d| (d, Matrix::identity(a.term(d), &om.algebra)))
        .collect();
    let f = ChainMap::new(a.clone(), b.clone(), comps)?;
    f.check(&om.algebra)?;
    Ok(f)
}

fn witness<F: Field>(
    om: &OmegaAlgebra<F>,
    f: &ChainMap<F>,
    cone: String,
    expect: (usize, i32),
) -> Result<GenerationWitness> {
    let c = mapping_cone(f)?;
    check_complex(&om.algebra, &c)?;
    let min = minimize(&om.algebra, &c)?;
    let want = stalk_name(om.label(expect.0).as_str(), expect.1);
    if min.as_stalk() != Some(expect) {
        return Err(Error::certificate(format!(
            "{cone} does not minimize to {want}:\n{}",
            min.dump(&om.algebra)
        )));
    }
    Ok(GenerationWitness { cone, matches: want })
}

fn witnesses<F: Field>(om: &OmegaAlgebra<F>, q: &TiltingComplex<F>) -> Result<Vec<GenerationWitness>> {
    let g = &om.graph;
    let mut out = Vec::new();
    for (z, c) in q.ordering.iter().zip(&q.summands) {
        if let Some((v, 0)) = c.as_stalk() {
            if om.label(v) == z {
                out.push(GenerationWitness {
                    cone: format!("Q({z})"),
                    matches: stalk_name(z.as_str(), 0),
                });
                continue;
            }
        }
        match &q.kind {
            TiltKind::Shrink => {
                // Q(z) -> Q(parent) is the identity wherever both live; its
                // cone leaves only the top term P(z).
                let path = g.path_from_cycle(z);
                let parent = path
                    .get(path.len().wrapping_sub(2))
                    .ok_or_else(|| Error::Internal(format!("summand {z} is not a stalk")))?;
                let f = identity_where_equal(om, c, q.summand(parent)?)?;
                let top = path.len() as i32 - 1;
                out.push(witness(
                    om,
                    &f,
                    format!("cone(Q({z}) -> Q({parent}))"),
                    (om.vertex(z)?, top - 1),
                )?);
            }
            TiltKind::Enlarge(d) => {
                if *z != d.succ {
                    return Err(Error::Internal(format!("summand {z} is not a stalk")));
                }
                let mut parts = vec![q.summand(&d.at)?];
                let mut name = format!("Q'({})", d.at);
                if let Some(fk) = d.last() {
                    parts.push(q.summand(fk)?);
                    name.push_str(&format!(" ⊕ Q'({fk})"));
                }
                let f = identity_where_equal(om, c, &ProjComplex::direct_sum(&parts))?;
                out.push(witness(om, &f, format!("cone(Q'({z}) -> {name})"), (om.vertex(z)?, 0))?);
            }
        }
    }
    Ok(out)
}

/// Checks the tilting axioms exactly: each summand is a complex, the full
/// sum has no self-extensions in the window `0 < |s| <= width + 1`, every
/// indecomposable projective is recovered from the summands by a cone, and
/// the end Cartan matrix agrees with direct Hom dimensions and has the
/// same absolute determinant as the algebra's.
pub fn check_tilting<F: Field>(om: &OmegaAlgebra<F>, q: &TiltingComplex<F>) -> Result<TiltCertificate> {
    let alg = &om.algebra;
    for c in &q.summands {
        check_complex(alg, c)?;
    }
    if q.summands.len() != om.quiver.vertex_count() {
        return Err(Error::certificate("one summand per quiver vertex"));
    }

    let total = q.total();
    let bound = total.width() + 1;
    let mut hom_vanishing = BTreeMap::new();
    for s in (-bound..=bound).filter(|&s| s != 0) {
        let d = homotopy_dim(alg, &total, &total, s)?;
        if d != 0 {
            return Err(Error::certificate(format!("Hom(Q, Q[{s}]) has dimension {d}")));
        }
        hom_vanishing.insert(s, d);
    }

    let generation = witnesses(om, q)?;

    let end = end_cartan(om, q)?;
    for (z, a) in q.summands.iter().enumerate() {
        for (w, b) in q.summands.iter().enumerate() {
            let d = homotopy_dim(alg, a, b, 0)? as i64;
            if d != end.matrix[z][w] {
                return Err(Error::certificate(format!(
                    "dim Hom(Q({}), Q({})) is {d} but the alternating sum gives {}",
                    q.ordering[z], q.ordering[w], end.matrix[z][w]
                )));
            }
        }
    }

    let cert = TiltCertificate {
        hom_vanishing,
        generation,
        det_source: alg.cartan().det() as i64,
        det_end: end.det() as i64,
        end_cartan: end,
    };
    cert.check_recorded()?;
    Ok(cert)
}
