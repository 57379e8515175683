use crate::algebra::CartanMatrix;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::graph::EdgeId;

use super::complex::ProjComplex;

fn sign(k: i32) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `c̃[z][z'] = Σ_{r,s} (−1)^{r−s} dim Hom(Q_z^r, Q_{z'}^s)`, expanding each
/// Hom space through the Cartan matrix `c` of the underlying algebra.
pub fn happel_cartan<F: Field>(
    labels: &[EdgeId],
    summands: &[ProjComplex<F>],
    c: &CartanMatrix,
) -> Result<CartanMatrix> {
    if labels.len() != summands.len() {
        return Err(Error::Internal("one label per summand required".into()));
    }
    let mut matrix = vec![vec![0i64; summands.len()]; summands.len()];
    for (z, qz) in summands.iter().enumerate() {
        for (w, qw) in summands.iter().enumerate() {
            let mut acc = 0i64;
            for r in qz.degrees() {
                for s in qw.degrees() {
                    let mut block = 0i64;
                    for &a in qz.term(r) {
                        for &b in qw.term(s) {
                            block += c.matrix[a][b];
                        }
                    }
                    acc += sign(r - s) * block;
                }
            }
            matrix[z][w] = acc;
        }
    }
    CartanMatrix::new(labels.to_vec(), matrix)
}

/// `S[z][i] = Σ_r (−1)^r · (multiplicity of P(i) in degree r of summand z)`.
pub fn euler_matrix<F: Field>(summands: &[ProjComplex<F>], n: usize) -> Vec<Vec<i64>> {
    summands
        .iter()
        .map(|q| {
            let mut row = vec![0i64; n];
            for (d, mult) in q.multiplicities(n) {
                for (i, m) in mult.into_iter().enumerate() {
                    row[i] += sign(d) * m as i64;
                }
            }
            row
        })
        .collect()
}

/// `S · C · Sᵀ`.
pub fn congruence(s: &[Vec<i64>], c: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = c.len();
    let sc: Vec<Vec<i64>> = s
        .iter()
        .map(|row| (0..n).map(|j| (0..n).map(|k| row[k] * c[k][j]).sum()).collect())
        .collect();
    sc.iter()
        .map(|row| s.iter().map(|t| (0..n).map(|k| row[k] * t[k]).sum()).collect())
        .collect()
}
