use std::collections::BTreeMap;

use crate::algebra::QuotientAlgebra;
use crate::error::{Error, Result};
use crate::field::Field;

use super::complex::{Matrix, ProjComplex};

/// A degree-preserving map of complexes; `components[n]` maps `source^n`
/// to `target^n`. Missing components are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap<F> {
    pub source: ProjComplex<F>,
    pub target: ProjComplex<F>,
    components: BTreeMap<i32, Matrix<F>>,
}

impl<F: Field> ChainMap<F> {
    pub fn new(source: ProjComplex<F>, target: ProjComplex<F>, components: BTreeMap<i32, Matrix<F>>) -> Result<Self> {
        for (n, m) in &components {
            if m.cols != source.term(*n) || m.rows != target.term(*n) {
                return Err(Error::Internal(format!("chain map component {n} has the wrong shape")));
            }
        }
        let components = components.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        Ok(ChainMap {
            source,
            target,
            components,
        })
    }

    pub fn zero(source: &ProjComplex<F>, target: &ProjComplex<F>) -> Self {
        ChainMap {
            source: source.clone(),
            target: target.clone(),
            components: BTreeMap::new(),
        }
    }

    pub fn identity(alg: &QuotientAlgebra<F>, c: &ProjComplex<F>) -> Self {
        let components = c.degrees().map(|d| (d, Matrix::identity(c.term(d), alg))).collect();
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            components,
        }
    }

    pub fn component(&self, n: i32) -> Matrix<F> {
        self.components
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zero(self.target.term(n), self.source.term(n)))
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    fn degrees(&self) -> Vec<i32> {
        let mut d: Vec<i32> = self.source.degrees().chain(self.target.degrees()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Commutation with the differentials, checked exactly.
    pub fn check(&self, alg: &QuotientAlgebra<F>) -> Result<()> {
        for n in self.degrees() {
            let lhs = Matrix::compose(alg, &self.component(n), &self.target.diff(n))?;
            let rhs = Matrix::compose(alg, &self.source.diff(n), &self.component(n + 1))?;
            if lhs != rhs {
                return Err(Error::Internal(format!(
                    "map does not commute with the differentials in degree {n}"
                )));
            }
        }
        Ok(())
    }

    /// `self` followed by `then`.
    pub fn then(&self, alg: &QuotientAlgebra<F>, then: &ChainMap<F>) -> Result<ChainMap<F>> {
        if self.target != then.source {
            return Err(Error::CompositionMismatch("chain maps do not compose".into()));
        }
        let components = self
            .components
            .iter()
            .filter(|(n, _)| then.components.contains_key(n))
            .map(|(n, m)| Ok((*n, Matrix::compose(alg, m, &then.components[n])?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        ChainMap::new(self.source.clone(), then.target.clone(), components)
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &F, other: &ChainMap<F>) -> Result<ChainMap<F>> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::CompositionMismatch("chain maps are not parallel".into()));
        }
        let components = self
            .degrees()
            .into_iter()
            .map(|n| Ok((n, self.component(n).axpy(c, &other.component(n))?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        ChainMap::new(self.source.clone(), self.target.clone(), components)
    }

    pub fn sub(&self, other: &ChainMap<F>) -> Result<ChainMap<F>> {
        self.axpy(&-F::one(), other)
    }
}

/// Cone of `f: C -> D`: degree `n` is `C^{n+1} ⊕ D^n` with differential
/// `[[-d_C, 0], [f, d_D]]`.
pub fn mapping_cone<F: Field>(f: &ChainMap<F>) -> Result<ProjComplex<F>> {
    let (c, d) = (&f.source, &f.target);
    let mut degrees: Vec<i32> = c.degrees().map(|n| n - 1).chain(d.degrees()).collect();
    degrees.sort_unstable();
    degrees.dedup();
    let mut terms = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for &n in &degrees {
        let term: Vec<usize> = c.term(n + 1).iter().chain(d.term(n)).copied().collect();
        terms.insert(n, term);
        let top_right = Matrix::zero(c.term(n + 2), d.term(n));
        let m = Matrix::blocks(
            &c.diff(n + 1).scale(&-F::one()),
            &top_right,
            &f.component(n + 1),
            &d.diff(n),
        )?;
        diffs.insert(n, m);
    }
    ProjComplex::new(terms, diffs)
}
