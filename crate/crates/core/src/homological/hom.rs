//! Morphisms in the homotopy category by exact linear algebra.
//!
//! A degree-preserving family of maps `f^n: C^n -> D^n` is encoded as a
//! coordinate vector with one variable per basis element of every entry
//! block. Chain maps form the kernel of the commutation equations, and
//! null-homotopic maps are the image of `h -> d h + h d`.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::{Elem, QuotientAlgebra};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{solve, sparse_from, Echelon, SparseVec};

use super::chain::ChainMap;
use super::complex::{Matrix, ProjComplex};

/// Variables of a degreewise family `X^n -> Y^{n+offset}`.
struct Layout {
    /// `(degree, row, col, start, dim)` for every nonzero entry block.
    slots: Vec<(i32, usize, usize, usize, usize)>,
    len: usize,
}

impl Layout {
    fn new<F: Field>(alg: &QuotientAlgebra<F>, x: &ProjComplex<F>, y: &ProjComplex<F>, offset: i32) -> Self {
        let mut slots = Vec::new();
        let mut len = 0;
        for n in x.degrees() {
            for (r, &rv) in y.term(n + offset).iter().enumerate() {
                for (c, &cv) in x.term(n).iter().enumerate() {
                    let dim = alg.block_dim(cv, rv);
                    if dim > 0 {
                        slots.push((n, r, c, len, dim));
                        len += dim;
                    }
                }
            }
        }
        Layout { slots, len }
    }

    fn slot_index(&self) -> HashMap<(i32, usize, usize), (usize, usize)> {
        self.slots
            .iter()
            .map(|&(n, r, c, start, dim)| ((n, r, c), (start, dim)))
            .collect()
    }
}

/// Linear data for maps `C -> D` (with `D` already shifted).
pub struct HomSystem<'a, F> {
    alg: &'a QuotientAlgebra<F>,
    source: ProjComplex<F>,
    target: ProjComplex<F>,
    maps: Layout,
    index: HashMap<(i32, usize, usize), (usize, usize)>,
}

impl<'a, F: Field> HomSystem<'a, F> {
    pub fn new(alg: &'a QuotientAlgebra<F>, source: &ProjComplex<F>, target: &ProjComplex<F>) -> Self {
        let maps = Layout::new(alg, source, target, 0);
        let index = maps.slot_index();
        HomSystem {
            alg,
            source: source.clone(),
            target: target.clone(),
            maps,
            index,
        }
    }

    pub fn variable_count(&self) -> usize {
        self.maps.len
    }

    /// For every map variable, its image under `f -> f d_D - d_C f`, keyed
    /// by `(degree, row, col, coordinate)` of the resulting `C^n -> D^{n+1}`
    /// entry.
    fn commutation_columns(&self) -> Result<Vec<SparseVec<F>>> {
        let mut keys: HashMap<(i32, usize, usize, usize), usize> = HashMap::new();
        let mut key = |k: (i32, usize, usize, usize)| {
            let next = keys.len();
            *keys.entry(k).or_insert(next)
        };
        let mut cols = Vec::with_capacity(self.maps.len);
        for &(n, r, c, _, dim) in &self.maps.slots {
            let (cv, rv) = (self.source.term(n)[c], self.target.term(n)[r]);
            let dd = self.target.diff(n);
            let dc = self.source.diff(n - 1);
            for b in 0..dim {
                let x = self.alg.basis_elem(cv, rv, b);
                let mut entries = Vec::new();
                // f^n then d_D^n, landing in entry (r', c) of degree n
                for (r2, row) in dd.entries.iter().enumerate() {
                    let t = &row[r];
                    if !t.is_zero() {
                        for (k, v) in self.alg.mul(&x, t)?.coords {
                            entries.push((key((n, r2, c, k)), v));
                        }
                    }
                }
                // minus d_C^{n-1} then f^n, landing in entry (r, c') of degree n-1
                for (c2, s) in dc.entries[c].iter().enumerate() {
                    if !s.is_zero() {
                        for (k, v) in self.alg.mul(s, &x)?.coords {
                            entries.push((key((n - 1, r, c2, k)), -v));
                        }
                    }
                }
                cols.push(sparse_from(entries));
            }
        }
        Ok(cols)
    }

    /// Images of the homotopy variables `h^n: C^n -> D^{n-1}` in map
    /// coordinates: `h^n d_D^{n-1} + d_C^n h^{n+1}`.
    fn homotopy_columns(&self) -> Result<Vec<SparseVec<F>>> {
        let hs = Layout::new(self.alg, &self.source, &self.target, -1);
        let mut cols = Vec::with_capacity(hs.len);
        for &(n, r, c, _, dim) in &hs.slots {
            let (cv, rv) = (self.source.term(n)[c], self.target.term(n - 1)[r]);
            let dd = self.target.diff(n - 1);
            let dc = self.source.diff(n - 1);
            for b in 0..dim {
                let x = self.alg.basis_elem(cv, rv, b);
                let mut entries = Vec::new();
                for (r2, row) in dd.entries.iter().enumerate() {
                    let t = &row[r];
                    if !t.is_zero() {
                        let y = self.alg.mul(&x, t)?;
                        if y.is_zero() {
                            continue;
                        }
                        let (start, _) = self.index[&(n, r2, c)];
                        entries.extend(y.coords.into_iter().map(|(k, v)| (start + k, v)));
                    }
                }
                for (c2, s) in dc.entries[c].iter().enumerate() {
                    if !s.is_zero() {
                        let y = self.alg.mul(s, &x)?;
                        if y.is_zero() {
                            continue;
                        }
                        let (start, _) = self.index[&(n - 1, r, c2)];
                        entries.extend(y.coords.into_iter().map(|(k, v)| (start + k, v)));
                    }
                }
                cols.push(sparse_from(entries));
            }
        }
        Ok(cols)
    }

    fn homotopy_echelon(&self) -> Result<Echelon<F>> {
        let mut ech = Echelon::new();
        for v in self.homotopy_columns()? {
            ech.insert(v);
        }
        Ok(ech)
    }

    /// Basis of the chain-map solution space, as coordinate vectors.
    pub fn chain_map_basis(&self) -> Result<Vec<SparseVec<F>>> {
        let cols = self.commutation_columns()?;
        let mut rows: BTreeMap<usize, Vec<(usize, F)>> = BTreeMap::new();
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col {
                rows.entry(*i).or_default().push((j, v.clone()));
            }
        }
        let mut ech = Echelon::new();
        for row in rows.into_values() {
            ech.insert(sparse_from(row));
        }
        ech.make_reduced();
        Ok(ech.kernel_basis(self.maps.len))
    }

    /// `dim Hom_K(C, D)` as (chain maps) − (null-homotopic maps).
    pub fn dimension(&self) -> Result<usize> {
        let mut z = Echelon::new();
        for v in self.commutation_columns()? {
            z.insert(v);
        }
        let h = self.homotopy_echelon()?;
        Ok(self.maps.len - z.rank() - h.rank())
    }

    pub fn to_vector(&self, f: &ChainMap<F>) -> Result<SparseVec<F>> {
        if f.source != self.source || f.target != self.target {
            return Err(Error::CompositionMismatch("chain map has the wrong ends".into()));
        }
        let mut v = Vec::new();
        for n in self.source.degrees() {
            let m = f.component(n);
            for (r, row) in m.entries.iter().enumerate() {
                for (c, x) in row.iter().enumerate() {
                    if let Some(&(start, _)) = self.index.get(&(n, r, c)) {
                        v.extend(x.coords.iter().map(|(k, a)| (start + k, a.clone())));
                    }
                }
            }
        }
        Ok(sparse_from(v))
    }

    pub fn from_vector(&self, v: &SparseVec<F>) -> Result<ChainMap<F>> {
        let mut comps: BTreeMap<i32, Matrix<F>> = BTreeMap::new();
        for &(n, r, c, start, dim) in &self.maps.slots {
            let coords: SparseVec<F> = v
                .iter()
                .filter(|(i, _)| *i >= start && *i < start + dim)
                .map(|(i, a)| (i - start, a.clone()))
                .collect();
            if coords.is_empty() {
                continue;
            }
            let m = comps
                .entry(n)
                .or_insert_with(|| Matrix::zero(self.target.term(n), self.source.term(n)));
            let x = Elem {
                source: m.cols[c],
                target: m.rows[r],
                coords,
            };
            m.set(r, c, x)?;
        }
        ChainMap::new(self.source.clone(), self.target.clone(), comps)
    }

    pub fn is_null_homotopic(&self, f: &ChainMap<F>) -> Result<bool> {
        let v = self.to_vector(f)?;
        Ok(self.homotopy_echelon()?.contains(v))
    }

    /// Representatives of a basis of `Hom_K(C, D)`.
    pub fn basis(&self) -> Result<Vec<ChainMap<F>>> {
        let mut ech = self.homotopy_echelon()?;
        let mut out = Vec::new();
        for v in self.chain_map_basis()? {
            if ech.insert(v.clone()).is_some() {
                out.push(self.from_vector(&v)?);
            }
        }
        Ok(out)
    }

    /// A chain map agreeing with `fixed` in the given degrees, if one exists.
    pub fn extend(&self, fixed: &BTreeMap<i32, Matrix<F>>) -> Result<Option<ChainMap<F>>> {
        let cols = self.commutation_columns()?;
        let given = ChainMap::new(self.source.clone(), self.target.clone(), fixed.clone())?;
        let gv = self.to_vector(&given)?;
        // equations for free variables only; the fixed part moves to the rhs
        let fixed_vars: Vec<bool> = self
            .maps
            .slots
            .iter()
            .flat_map(|&(n, _, _, _, dim)| std::iter::repeat_n(fixed.contains_key(&n), dim))
            .collect();
        let mut rhs: SparseVec<F> = Vec::new();
        for (i, a) in &gv {
            rhs = crate::linalg::axpy(&rhs, &-a.clone(), &cols[*i]);
        }
        let free: Vec<usize> = (0..self.maps.len).filter(|&i| !fixed_vars[i]).collect();
        let free_cols: Vec<SparseVec<F>> = free.iter().map(|&i| cols[i].clone()).collect();
        let Some(x) = solve(&free_cols, &rhs) else {
            return Ok(None);
        };
        let mut v = gv;
        v.extend(free.iter().zip(x).filter(|(_, a)| !a.is_zero()).map(|(&i, a)| (i, a)));
        let f = self.from_vector(&sparse_from(v))?;
        f.check(self.alg)?;
        Ok(Some(f))
    }
}

#[derive(Clone, Debug)]
pub struct HomotopyHom<F> {
    pub dimension: usize,
    pub basis: Vec<ChainMap<F>>,
}

/// Morphisms `C -> D[shift]` in the homotopy category.
pub fn homotopy_hom<F: Field>(
    alg: &QuotientAlgebra<F>,
    c: &ProjComplex<F>,
    d: &ProjComplex<F>,
    shift: i32,
) -> Result<HomotopyHom<F>> {
    let sys = HomSystem::new(alg, c, &d.shift(shift));
    let basis = sys.basis()?;
    Ok(HomotopyHom {
        dimension: basis.len(),
        basis,
    })
}

/// Dimension only; cheaper than [`homotopy_hom`].
pub fn homotopy_dim<F: Field>(
    alg: &QuotientAlgebra<F>,
    c: &ProjComplex<F>,
    d: &ProjComplex<F>,
    shift: i32,
) -> Result<usize> {
    HomSystem::new(alg, c, &d.shift(shift)).dimension()
}

pub fn is_null_homotopic<F: Field>(alg: &QuotientAlgebra<F>, f: &ChainMap<F>) -> Result<bool> {
    HomSystem::new(alg, &f.source, &f.target).is_null_homotopic(f)
}

/// Basis of `Hom(P(i), P(j)) ≅ e_i A e_j`.
pub fn hom_block<F: Field>(alg: &QuotientAlgebra<F>, i: usize, j: usize) -> Vec<Elem<F>> {
    (0..alg.block_dim(i, j)).map(|b| alg.basis_elem(i, j, b)).collect()
}
