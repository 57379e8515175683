use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::algebra::{Elem, QuotientAlgebra};
use crate::error::{Error, Result};
use crate::field::Field;

/// A matrix of maps between sums of indecomposable projectives.
///
/// Entry `(r, c)` is a map `P(cols[c]) -> P(rows[r])`, i.e. an element of
/// `e_{cols[c]} A e_{rows[r]}` acting by right multiplication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<F> {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub entries: Vec<Vec<Elem<F>>>,
}

impl<F: Field> Matrix<F> {
    pub fn zero(rows: &[usize], cols: &[usize]) -> Self {
        Matrix {
            rows: rows.to_vec(),
            cols: cols.to_vec(),
            entries: rows
                .iter()
                .map(|&r| cols.iter().map(|&c| Elem::zero(c, r)).collect())
                .collect(),
        }
    }

    pub fn identity(vertices: &[usize], alg: &QuotientAlgebra<F>) -> Self {
        let mut m = Matrix::zero(vertices, vertices);
        for (k, &v) in vertices.iter().enumerate() {
            m.entries[k][k] = alg.unit(v);
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> &Elem<F> {
        &self.entries[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Elem<F>) -> Result<()> {
        if (x.source, x.target) != (self.cols[c], self.rows[r]) {
            return Err(Error::CompositionMismatch(format!(
                "entry ({r}, {c}) must lie in block ({}, {})",
                self.cols[c], self.rows[r]
            )));
        }
        self.entries[r][c] = x;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Elem::is_zero)
    }

    /// `first` followed by `then`.
    pub fn compose(alg: &QuotientAlgebra<F>, first: &Matrix<F>, then: &Matrix<F>) -> Result<Matrix<F>> {
        if first.rows != then.cols {
            return Err(Error::CompositionMismatch("matrix shapes do not compose".into()));
        }
        let mut out = Matrix::zero(&then.rows, &first.cols);
        for (z, row) in then.entries.iter().enumerate() {
            for x in 0..first.cols.len() {
                let mut acc = Elem::zero(first.cols[x], then.rows[z]);
                for (y, t) in row.iter().enumerate() {
                    let f = &first.entries[y][x];
                    if f.is_zero() || t.is_zero() {
                        continue;
                    }
                    acc = acc.add(&alg.mul(f, t)?)?;
                }
                out.entries[z][x] = acc;
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix<F>) -> Result<Matrix<F>> {
        self.axpy(&F::one(), other)
    }

    pub fn axpy(&self, c: &F, other: &Matrix<F>) -> Result<Matrix<F>> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::CompositionMismatch("matrix shapes differ".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.axpy(c, y)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        Ok(Matrix {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            entries,
        })
    }

    pub fn scale(&self, c: &F) -> Matrix<F> {
        Matrix {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(|x| x.scale(c)).collect())
                .collect(),
        }
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix<F> {
        Matrix {
            rows: rows.iter().map(|&r| self.rows[r]).collect(),
            cols: cols.iter().map(|&c| self.cols[c]).collect(),
            entries: rows
                .iter()
                .map(|&r| cols.iter().map(|&c| self.entries[r][c].clone()).collect())
                .collect(),
        }
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn blocks(a: &Matrix<F>, b: &Matrix<F>, c: &Matrix<F>, d: &Matrix<F>) -> Result<Matrix<F>> {
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(Error::Internal("block shapes do not fit".into()));
        }
        let rows: Vec<usize> = a.rows.iter().chain(&c.rows).copied().collect();
        let cols: Vec<usize> = a.cols.iter().chain(&b.cols).copied().collect();
        let mut entries = Vec::with_capacity(rows.len());
        for (l, r) in a.entries.iter().zip(&b.entries).chain(c.entries.iter().zip(&d.entries)) {
            entries.push(l.iter().chain(r).cloned().collect());
        }
        Ok(Matrix { rows, cols, entries })
    }

    /// Block-diagonal sum.
    pub fn diag(parts: &[Matrix<F>]) -> Matrix<F> {
        let rows: Vec<usize> = parts.iter().flat_map(|m| m.rows.clone()).collect();
        let cols: Vec<usize> = parts.iter().flat_map(|m| m.cols.clone()).collect();
        let mut out = Matrix::zero(&rows, &cols);
        let (mut r0, mut c0) = (0, 0);
        for m in parts {
            for (r, row) in m.entries.iter().enumerate() {
                for (c, x) in row.iter().enumerate() {
                    out.entries[r0 + r][c0 + c] = x.clone();
                }
            }
            r0 += m.rows.len();
            c0 += m.cols.len();
        }
        out
    }
}

/// A bounded complex of projectives, cohomologically indexed.
///
/// `terms[d]` lists the indecomposable summands in degree `d` (with
/// repetition); `diffs[d]` maps degree `d` to degree `d + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjComplex<F> {
    terms: BTreeMap<i32, Vec<usize>>,
    diffs: BTreeMap<i32, Matrix<F>>,
}

impl<F: Field> ProjComplex<F> {
    pub fn zero() -> Self {
        ProjComplex {
            terms: BTreeMap::new(),
            diffs: BTreeMap::new(),
        }
    }

    pub fn stalk(vertex: usize, degree: i32) -> Self {
        ProjComplex {
            terms: BTreeMap::from([(degree, vec![vertex])]),
            diffs: BTreeMap::new(),
        }
    }

    /// Checks the shapes of the differentials against the terms; `d² = 0`
    /// is checked separately by [`check_complex`].
    pub fn new(terms: BTreeMap<i32, Vec<usize>>, diffs: BTreeMap<i32, Matrix<F>>) -> Result<Self> {
        let terms: BTreeMap<i32, Vec<usize>> = terms.into_iter().filter(|(_, v)| !v.is_empty()).collect();
        let empty = Vec::new();
        for (d, m) in &diffs {
            let src = terms.get(d).unwrap_or(&empty);
            let tgt = terms.get(&(d + 1)).unwrap_or(&empty);
            if &m.cols != src || &m.rows != tgt {
                return Err(Error::Internal(format!(
                    "differential in degree {d} has the wrong shape"
                )));
            }
        }
        let diffs = diffs.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        Ok(ProjComplex { terms, diffs })
    }

    pub fn term(&self, d: i32) -> &[usize] {
        self.terms.get(&d).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn diff(&self, d: i32) -> Matrix<F> {
        self.diffs
            .get(&d)
            .cloned()
            .unwrap_or_else(|| Matrix::zero(self.term(d + 1), self.term(d)))
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.terms.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn width(&self) -> i32 {
        match (self.min_degree(), self.max_degree()) {
            (Some(a), Some(b)) => b - a,
            _ => 0,
        }
    }

    /// Total number of indecomposable summands.
    pub fn rank(&self) -> usize {
        self.terms.values().map(Vec::len).sum()
    }

    /// The single summand of a stalk complex, with its degree.
    pub fn as_stalk(&self) -> Option<(usize, i32)> {
        match self.terms.iter().collect::<Vec<_>>().as_slice() {
            [(d, v)] if v.len() == 1 => Some((v[0], **d)),
            _ => None,
        }
    }

    /// `C[k]`: degree `n` holds `C^{n+k}`, differential multiplied by `(-1)^k`.
    pub fn shift(&self, k: i32) -> ProjComplex<F> {
        let sign = if k.rem_euclid(2) == 0 { F::one() } else { -F::one() };
        ProjComplex {
            terms: self.terms.iter().map(|(d, v)| (d - k, v.clone())).collect(),
            diffs: self.diffs.iter().map(|(d, m)| (d - k, m.scale(&sign))).collect(),
        }
    }

    pub fn direct_sum(parts: &[&ProjComplex<F>]) -> ProjComplex<F> {
        let mut degrees: Vec<i32> = parts.iter().flat_map(|c| c.degrees()).collect();
        degrees.sort_unstable();
        degrees.dedup();
        let mut terms = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for &d in &degrees {
            terms.insert(d, parts.iter().flat_map(|c| c.term(d).to_vec()).collect::<Vec<_>>());
            let m = Matrix::diag(&parts.iter().map(|c| c.diff(d)).collect::<Vec<_>>());
            if !m.is_zero() {
                diffs.insert(d, m);
            }
        }
        ProjComplex { terms, diffs }
    }

    /// Multiplicity of each vertex in each degree.
    pub fn multiplicities(&self, n: usize) -> BTreeMap<i32, Vec<usize>> {
        self.terms
            .iter()
            .map(|(d, vs)| {
                let mut m = vec![0; n];
                for &v in vs {
                    m[v] += 1;
                }
                (*d, m)
            })
            .collect()
    }

    /// One line per degree, then the nonzero differential entries.
    pub fn dump(&self, alg: &QuotientAlgebra<F>) -> String {
        let q = &alg.presentation().quiver;
        let mut s = String::new();
        if self.is_zero() {
            return "0\n".into();
        }
        for (d, vs) in &self.terms {
            let mut counts: Vec<(usize, usize)> = Vec::new();
            for &v in vs {
                match counts.last_mut() {
                    Some((w, m)) if *w == v => *m += 1,
                    _ => counts.push((v, 1)),
                }
            }
            let parts: Vec<String> = counts
                .iter()
                .map(|(v, m)| {
                    if *m == 1 {
                        format!("P({})", q.vertices[*v])
                    } else {
                        format!("P({})^{m}", q.vertices[*v])
                    }
                })
                .collect();
            let _ = writeln!(s, "deg {d}: {}", parts.join(" ⊕ "));
        }
        for (d, m) in &self.diffs {
            for (r, row) in m.entries.iter().enumerate() {
                for (c, x) in row.iter().enumerate() {
                    if !x.is_zero() {
                        let _ = writeln!(
                            s,
                            "d{d}[{r},{c}]: P({}) -> P({}) = {}",
                            q.vertices[m.cols[c]],
                            q.vertices[m.rows[r]],
                            alg.display(x)
                        );
                    }
                }
            }
        }
        s
    }
}

/// Verifies `d ∘ d = 0` entrywise.
pub fn check_complex<F: Field>(alg: &QuotientAlgebra<F>, c: &ProjComplex<F>) -> Result<()> {
    for &d in c.diffs.keys() {
        let dd = Matrix::compose(alg, &c.diff(d), &c.diff(d + 1))?;
        for (r, row) in dd.entries.iter().enumerate() {
            for (col, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    return Err(Error::NotAComplex { degree: d, row: r, col });
                }
            }
        }
    }
    Ok(())
}
