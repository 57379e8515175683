//! Sparse exact linear algebra: incremental row echelon forms, kernels,
//! linear solves and integer determinants.
//!
//! Vectors are sorted `(index, value)` lists without explicit zeros. Pivots
//! are always the *largest* index of a row, which is what the quotient
//! engine needs (the leading term of a relation is its largest path).

use std::collections::BTreeMap;

use crate::field::Field;

pub type SparseVec<F> = Vec<(usize, F)>;

/// Builds a sparse vector from unsorted entries, summing duplicates.
pub fn sparse_from<F: Field>(entries: impl IntoIterator<Item = (usize, F)>) -> SparseVec<F> {
    let mut map: BTreeMap<usize, F> = BTreeMap::new();
    for (i, v) in entries {
        if v.is_zero() {
            continue;
        }
        match map.remove(&i) {
            Some(old) => {
                let s = old + v;
                if !s.is_zero() {
                    map.insert(i, s);
                }
            }
            None => {
                map.insert(i, v);
            }
        }
    }
    map.into_iter().collect()
}

/// Returns `y + a * x`.
pub fn axpy<F: Field>(y: &[(usize, F)], a: &F, x: &[(usize, F)]) -> SparseVec<F> {
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut i, mut j) = (0, 0);
    while i < y.len() || j < x.len() {
        if j == x.len() || (i < y.len() && y[i].0 < x[j].0) {
            out.push(y[i].clone());
            i += 1;
        } else if i == y.len() || x[j].0 < y[i].0 {
            let v = a.clone() * x[j].1.clone();
            if !v.is_zero() {
                out.push((x[j].0, v));
            }
            j += 1;
        } else {
            let v = y[i].1.clone() + a.clone() * x[j].1.clone();
            if !v.is_zero() {
                out.push((y[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale<F: Field>(v: &[(usize, F)], a: &F) -> SparseVec<F> {
    if a.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, a.clone() * x.clone())).collect()
}

pub fn coeff<F: Field>(v: &[(usize, F)], idx: usize) -> F {
    match v.binary_search_by_key(&idx, |(i, _)| *i) {
        Ok(k) => v[k].1.clone(),
        Err(_) => F::zero(),
    }
}

/// An incrementally built row echelon form with monic rows keyed by pivot.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    rows: BTreeMap<usize, SparseVec<F>>,
}

impl<F: Field> Default for Echelon<F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<F: Field> Echelon<F> {
    pub fn new() -> Self {
        Echelon { rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn row(&self, pivot: usize) -> Option<&SparseVec<F>> {
        self.rows.get(&pivot)
    }

    /// Eliminates leading terms until the leading term is not a pivot.
    pub fn reduce_top(&self, mut v: SparseVec<F>) -> SparseVec<F> {
        while let Some((lead, c)) = v.last().cloned() {
            match self.rows.get(&lead) {
                Some(row) => v = axpy(&v, &(-c), row),
                None => break,
            }
        }
        v
    }

    /// Eliminates every pivot column from `v`.
    pub fn reduce_full(&self, mut v: SparseVec<F>) -> SparseVec<F> {
        // walk downwards; eliminating column k only touches columns < k
        let mut bound = usize::MAX;
        loop {
            let next = v
                .iter()
                .rev()
                .find(|(i, _)| *i < bound && self.rows.contains_key(i))
                .cloned();
            match next {
                Some((col, c)) => {
                    v = axpy(&v, &(-c), &self.rows[&col]);
                    bound = col;
                }
                None => return v,
            }
        }
    }

    /// Inserts `v`; returns its pivot if it was independent of the rows so far.
    pub fn insert(&mut self, v: SparseVec<F>) -> Option<usize> {
        let v = self.reduce_top(v);
        let (lead, c) = v.last().cloned()?;
        let inv = c.inv().expect("nonzero leading coefficient");
        self.rows.insert(lead, scale(&v, &inv));
        Some(lead)
    }

    pub fn contains(&self, v: SparseVec<F>) -> bool {
        self.reduce_top(v).is_empty()
    }

    /// The rows whose pivot is below `bound`; again an echelon form.
    pub fn truncated(&self, bound: usize) -> Echelon<F> {
        Echelon {
            rows: self.rows.range(..bound).map(|(k, v)| (*k, v.clone())).collect(),
        }
    }

    /// Back-substitutes so that each row is zero on every other pivot column.
    pub fn make_reduced(&mut self) {
        let keys: Vec<usize> = self.rows.keys().copied().collect();
        for k in keys {
            let row = self.rows.remove(&k).expect("row");
            let (lead, one) = row.last().cloned().expect("nonempty row");
            let tail: SparseVec<F> = row[..row.len() - 1].to_vec();
            let mut reduced = self.reduce_full(tail);
            reduced.push((lead, one));
            self.rows.insert(k, reduced);
        }
    }

    /// Basis of `{x : row . x = 0 for all rows}` in a space of dimension
    /// `ncols`. Requires [`Echelon::make_reduced`] to have been called.
    pub fn kernel_basis(&self, ncols: usize) -> Vec<SparseVec<F>> {
        let mut out = Vec::new();
        for free in (0..ncols).filter(|c| !self.rows.contains_key(c)) {
            let mut entries = vec![(free, F::one())];
            for (&p, row) in &self.rows {
                let c = coeff(row, free);
                if !c.is_zero() {
                    entries.push((p, -c));
                }
            }
            out.push(sparse_from(entries));
        }
        out
    }
}

/// Rank of a family of sparse vectors.
pub fn rank<F: Field>(vectors: impl IntoIterator<Item = SparseVec<F>>) -> usize {
    let mut ech = Echelon::new();
    for v in vectors {
        ech.insert(v);
    }
    ech.rank()
}

/// Solves `sum_j x_j * columns[j] = rhs` for some `x`, returning one solution
/// with free variables set to zero, or `None` if the system is inconsistent.
///
/// Equations are indexed by the entries of the column vectors.
pub fn solve<F: Field>(columns: &[SparseVec<F>], rhs: &SparseVec<F>) -> Option<Vec<F>> {
    // transpose into equation rows; variable j sits at column j+1, the
    // constant at column 0 so that an inconsistent row has pivot 0
    let mut eqs: BTreeMap<usize, Vec<(usize, F)>> = BTreeMap::new();
    for (j, col) in columns.iter().enumerate() {
        for (i, v) in col {
            eqs.entry(*i).or_default().push((j + 1, v.clone()));
        }
    }
    for (i, v) in rhs {
        eqs.entry(*i).or_default().push((0, -v.clone()));
    }
    let mut ech = Echelon::new();
    for (_, row) in eqs {
        ech.insert(sparse_from(row));
    }
    if ech.is_pivot(0) {
        return None;
    }
    ech.make_reduced();
    let mut x = vec![F::zero(); columns.len()];
    for p in ech.pivots().collect::<Vec<_>>() {
        let row = ech.row(p).expect("row");
        x[p - 1] = -coeff(row, 0);
    }
    Some(x)
}

/// Exact determinant of a square integer matrix (fraction-free elimination).
pub fn det_i64(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}
