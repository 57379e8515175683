use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{sparse_from, Echelon};

use super::path::PathElement;
use super::presentation::Presentation;
use super::quotient::{quotient_basis, Elem, QuotientAlgebra};

/// Basis of the two-sided socle: block elements killed by every arrow on
/// both sides.
pub fn socle<F: Field>(alg: &QuotientAlgebra<F>) -> Result<Vec<Elem<F>>> {
    let q = &alg.presentation().quiver;
    let n = alg.vertex_count();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let d = alg.block_dim(i, j);
            if d == 0 {
                continue;
            }
            // equation key: (side, arrow, output coordinate)
            let mut eqs: BTreeMap<(u8, usize, usize), Vec<(usize, F)>> = BTreeMap::new();
            for b in 0..d {
                let x = alg.basis_elem(i, j, b);
                for a in q.arrows_from(j) {
                    for (k, c) in alg.mul(&x, &alg.arrow(a))?.coords {
                        eqs.entry((0, a, k)).or_default().push((b, c));
                    }
                }
                for a in q.arrows_into(i) {
                    for (k, c) in alg.mul(&alg.arrow(a), &x)?.coords {
                        eqs.entry((1, a, k)).or_default().push((b, c));
                    }
                }
            }
            let mut ech = Echelon::new();
            for row in eqs.into_values() {
                ech.insert(sparse_from(row));
            }
            ech.make_reduced();
            for v in ech.kernel_basis(d) {
                out.push(Elem {
                    source: i,
                    target: j,
                    coords: v,
                });
            }
        }
    }
    Ok(out)
}

/// `A / soc A`, recomputed from the presentation with the socle classes
/// added as relations and the same cap and margin.
pub fn socle_quotient<F: Field>(alg: &QuotientAlgebra<F>) -> Result<QuotientAlgebra<F>> {
    let p = alg.presentation();
    let mut relations = p.relations.clone();
    for x in socle(alg)? {
        let paths = alg.block_paths(x.source, x.target);
        relations.push(PathElement::new(
            x.coords.iter().map(|(b, c)| (c.clone(), paths[*b].clone())).collect(),
        )?);
    }
    let quotient = Presentation::new(format!("{}/soc", p.name), p.quiver.clone(), relations)?;
    quotient_basis(&quotient, alg.cap(), alg.margin())
}

/// Same normal-form basis paths in every block and same structure
/// constants. Arrows are matched by name.
pub fn presentations_equal_on_basis<F: Field>(a: &QuotientAlgebra<F>, b: &QuotientAlgebra<F>) -> Result<bool> {
    let (qa, qb) = (&a.presentation().quiver, &b.presentation().quiver);
    if !qa.same_as(qb) {
        return Err(Error::QuiverMismatch(format!(
            "{} and {} have different quivers",
            a.presentation().name,
            b.presentation().name
        )));
    }
    let arrow_map: Vec<usize> = qb
        .arrows
        .iter()
        .map(|x| qa.arrow_index(&x.name).expect("same arrows"))
        .collect();
    let n = a.vertex_count();
    // perm[i*n+j][k]: index in a's block of b's k-th basis path
    let mut perm: Vec<Vec<usize>> = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let pa = a.block_paths(i, j);
            let pb = b.block_paths(i, j);
            if pa.len() != pb.len() {
                return Ok(false);
            }
            let pos: HashMap<&[usize], usize> = pa.iter().enumerate().map(|(k, p)| (p.arrows.as_slice(), k)).collect();
            let mut m = Vec::with_capacity(pb.len());
            for p in pb {
                let mapped: Vec<usize> = p.arrows.iter().map(|&x| arrow_map[x]).collect();
                match pos.get(mapped.as_slice()) {
                    Some(&k) => m.push(k),
                    None => return Ok(false),
                }
            }
            perm.push(m);
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for x in 0..b.block_dim(i, j) {
                    for y in 0..b.block_dim(j, k) {
                        let pb = b.mul(&b.basis_elem(i, j, x), &b.basis_elem(j, k, y))?;
                        let pa = a.mul(
                            &a.basis_elem(i, j, perm[i * n + j][x]),
                            &a.basis_elem(j, k, perm[j * n + k][y]),
                        )?;
                        let translated = sparse_from(pb.coords.into_iter().map(|(z, c)| (perm[i * n + k][z], c)));
                        if translated != pa.coords {
                            return Ok(false);
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}
