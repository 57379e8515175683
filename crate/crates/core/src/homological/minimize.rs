use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Elem, QuotientAlgebra};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Echelon;

use super::complex::{Matrix, ProjComplex};
use super::hom::HomSystem;

/// First differential entry `P(i) -> P(i)` that is a unit, as
/// `(degree, row, col)`.
fn find_unit<F: Field>(c: &ProjComplex<F>) -> Option<(i32, usize, usize)> {
    for d in c.degrees() {
        let m = c.diff(d);
        for (r, row) in m.entries.iter().enumerate() {
            for (col, x) in row.iter().enumerate() {
                if m.rows[r] == m.cols[col] && !x.unit_coefficient().is_zero() {
                    return Some((d, r, col));
                }
            }
        }
    }
    None
}

/// Cancels contractible summands `P(i) --unit--> P(i)` until every
/// differential entry lies in the radical.
pub fn minimize<F: Field>(alg: &QuotientAlgebra<F>, c: &ProjComplex<F>) -> Result<ProjComplex<F>> {
    let mut cur = c.clone();
    while let Some((d, r, col)) = find_unit(&cur) {
        let m = cur.diff(d);
        let uinv = alg
            .unit_inverse(m.get(r, col))
            .ok_or_else(|| Error::Internal("unit entry without inverse".into()))?;
        let keep_rows: Vec<usize> = (0..m.rows.len()).filter(|&k| k != r).collect();
        let keep_cols: Vec<usize> = (0..m.cols.len()).filter(|&k| k != col).collect();

        // new d^d on the remaining summands: ε − (X' → B) u⁻¹ (A → Y)
        let mut nd = m.select(&keep_rows, &keep_cols);
        for (yi, &y) in keep_rows.iter().enumerate() {
            let a_to_y = m.get(y, col);
            if a_to_y.is_zero() {
                continue;
            }
            let tail = alg.mul(&uinv, a_to_y)?;
            for (xi, &x) in keep_cols.iter().enumerate() {
                let x_to_b = m.get(r, x);
                if x_to_b.is_zero() {
                    continue;
                }
                let corr = alg.mul(x_to_b, &tail)?;
                let entry = nd.get(yi, xi).sub(&corr)?;
                nd.set(yi, xi, entry)?;
            }
        }

        let mut terms: BTreeMap<i32, Vec<usize>> = cur.degrees().map(|k| (k, cur.term(k).to_vec())).collect();
        let mut diffs: BTreeMap<i32, Matrix<F>> = cur.degrees().map(|k| (k, cur.diff(k))).collect();
        terms.insert(d, keep_cols.iter().map(|&k| m.cols[k]).collect());
        terms.insert(d + 1, keep_rows.iter().map(|&k| m.rows[k]).collect());
        diffs.insert(d, nd);
        // drop the A row of d^{d-1} and the B column of d^{d+1}
        let before = cur.diff(d - 1);
        let all_before: Vec<usize> = (0..before.cols.len()).collect();
        diffs.insert(d - 1, before.select(&keep_cols, &all_before));
        let after = cur.diff(d + 1);
        let all_after: Vec<usize> = (0..after.rows.len()).collect();
        diffs.insert(d + 1, after.select(&all_after, &keep_rows));
        let terms_clean: BTreeMap<i32, Vec<usize>> = terms.into_iter().filter(|(_, v)| !v.is_empty()).collect();
        let diffs_clean = diffs
            .into_iter()
            .filter(|(k, m)| !m.is_zero() && (terms_clean.contains_key(k) && terms_clean.contains_key(&(k + 1))))
            .collect();
        cur = ProjComplex::new(terms_clean, diffs_clean)?;
    }
    Ok(cur)
}

fn sorted_terms<F: Field>(c: &ProjComplex<F>) -> BTreeMap<i32, Vec<usize>> {
    c.degrees()
        .map(|d| {
            let mut v = c.term(d).to_vec();
            v.sort_unstable();
            (d, v)
        })
        .collect()
}

/// Decides whether two complexes are homotopy equivalent by comparing
/// minimal forms: equal multiplicities in every degree, and a chain map
/// between them that is invertible modulo the radical in every degree.
///
/// The chain map is a seeded random combination of a basis of all chain
/// maps, so a `false` answer for equivalent complexes is possible but
/// needs an unlucky draw on each of several attempts.
pub fn homotopy_equivalent<F: Field>(alg: &QuotientAlgebra<F>, a: &ProjComplex<F>, b: &ProjComplex<F>) -> Result<bool> {
    let (ma, mb) = (minimize(alg, a)?, minimize(alg, b)?);
    if sorted_terms(&ma) != sorted_terms(&mb) {
        return Ok(false);
    }
    if ma == mb {
        return Ok(true);
    }
    let sys = HomSystem::new(alg, &ma, &mb);
    let basis = sys.chain_map_basis()?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..8 {
        let mut v = Vec::new();
        for x in &basis {
            let c = F::from_i64(rng.gen_range(-50..=50));
            v = crate::linalg::axpy(&v, &c, x);
        }
        let f = sys.from_vector(&v)?;
        let invertible = ma.degrees().all(|d| top_invertible(&f.component(d)));
        if invertible {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Whether the matrix of unit coefficients is invertible.
fn top_invertible<F: Field>(m: &Matrix<F>) -> bool {
    if m.rows.len() != m.cols.len() {
        return false;
    }
    let mut ech = Echelon::new();
    for row in &m.entries {
        let v = row
            .iter()
            .enumerate()
            .map(|(c, x): (usize, &Elem<F>)| (c, x.unit_coefficient()))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        ech.insert(v);
    }
    ech.rank() == m.rows.len()
}
