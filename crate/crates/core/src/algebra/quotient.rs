//! Exact bases of `KQ/I`.
//!
//! The ideal is completed to a rewriting system with every overlap of
//! length at most `cap + margin` resolved; the words avoiding all leading
//! words form the normal-form basis. Every word of length `cap` must be
//! reducible, and the block dimensions must not move when the margin grows
//! by one.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{axpy, coeff, scale, sparse_from, SparseVec};

use super::groebner::Groebner;
use super::path::{path_cmp, Path, PathElement};
use super::presentation::Presentation;

/// An element of one block `e_i A e_j`, in coordinates of its basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elem<F> {
    pub source: usize,
    pub target: usize,
    pub coords: SparseVec<F>,
}

impl<F: Field> Elem<F> {
    pub fn zero(source: usize, target: usize) -> Self {
        Elem {
            source,
            target,
            coords: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    fn check_parallel(&self, other: &Elem<F>) -> Result<()> {
        if (self.source, self.target) != (other.source, other.target) {
            return Err(Error::CompositionMismatch(format!(
                "cannot add elements of blocks ({},{}) and ({},{})",
                self.source, self.target, other.source, other.target
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Elem<F>) -> Result<Elem<F>> {
        self.axpy(&F::one(), other)
    }

    pub fn sub(&self, other: &Elem<F>) -> Result<Elem<F>> {
        self.axpy(&-F::one(), other)
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &F, other: &Elem<F>) -> Result<Elem<F>> {
        self.check_parallel(other)?;
        Ok(Elem {
            source: self.source,
            target: self.target,
            coords: axpy(&self.coords, c, &other.coords),
        })
    }

    pub fn scale(&self, c: &F) -> Elem<F> {
        Elem {
            source: self.source,
            target: self.target,
            coords: scale(&self.coords, c),
        }
    }

    pub fn neg(&self) -> Elem<F> {
        self.scale(&-F::one())
    }

    /// Coefficient of the idempotent; zero off the diagonal.
    pub fn unit_coefficient(&self) -> F {
        if self.source == self.target {
            coeff(&self.coords, 0)
        } else {
            F::zero()
        }
    }
}

/// Normal-form basis of one block and the index of each basis word.
struct BlockData {
    basis: Vec<Path>,
    index: HashMap<Vec<usize>, usize>,
}

#[derive(Clone, Debug)]
pub struct QuotientAlgebra<F> {
    presentation: Presentation<F>,
    cap: usize,
    margin: usize,
    n: usize,
    /// Normal-form basis paths of block `(i, j)` at `i * n + j`.
    blocks: Vec<Vec<Path>>,
    /// `action[i][a][b]`: basis element `b` of block `(i, source a)` times
    /// arrow `a`, in block `(i, target a)`.
    action: Vec<Vec<Vec<SparseVec<F>>>>,
    /// `products[(i * n + j) * n + k][b1 * d_jk + b2]`.
    products: Vec<Vec<SparseVec<F>>>,
}

/// Computes the quotient algebra with the presentation's default cap and
/// margin.
pub fn quotient_default<F: Field>(p: &Presentation<F>) -> Result<QuotientAlgebra<F>> {
    quotient_basis(p, p.default_cap(), p.default_margin())
}

/// Computes the quotient algebra, failing with `NotStabilized` if `cap` is
/// too small for the finite-dimensionality witness or the dimensions move
/// when the margin grows by one.
pub fn quotient_basis<F: Field>(p: &Presentation<F>, cap: usize, margin: usize) -> Result<QuotientAlgebra<F>> {
    let (gb, data) = compute_blocks(p, cap, margin)?;
    let (_, wider) = compute_blocks(p, cap, margin + 1)?;
    for (k, (a, b)) in data.iter().zip(&wider).enumerate() {
        if a.basis.len() != b.basis.len() {
            let n = p.quiver.vertex_count();
            return Err(Error::NotStabilized {
                cap,
                margin,
                reason: format!(
                    "block ({}, {}) has dimension {} but {} with margin {}",
                    p.quiver.vertices[k / n],
                    p.quiver.vertices[k % n],
                    a.basis.len(),
                    b.basis.len(),
                    margin + 1
                ),
            });
        }
    }
    drop(wider);
    let alg = assemble(p, cap, margin, &gb, data)?;
    alg.check_relations()?;
    Ok(alg)
}

/// Normal words of every block, from a completion with overlaps up to
/// `cap + margin`. A normal word of length `cap` means the bound is too
/// small.
fn compute_blocks<F: Field>(p: &Presentation<F>, cap: usize, margin: usize) -> Result<(Groebner<F>, Vec<BlockData>)> {
    let q = &p.quiver;
    let n = q.vertex_count();
    let gb = Groebner::complete(q, &p.relations, cap + margin);
    let out_arrows: Vec<Vec<usize>> = (0..n).map(|v| q.arrows_from(v).collect()).collect();
    let mut blocks: Vec<Vec<Path>> = vec![Vec::new(); n * n];
    for s in 0..n {
        let mut stack = vec![Path::trivial(s)];
        while let Some(path) = stack.pop() {
            if path.len() == cap {
                return Err(Error::NotStabilized {
                    cap,
                    margin,
                    reason: format!("path {} of length cap is not reducible", path.display(q)),
                });
            }
            for &a in &out_arrows[path.target] {
                let mut arrows = path.arrows.clone();
                arrows.push(a);
                if gb.ends_in_tip(&gb.word(&arrows).0) {
                    continue;
                }
                stack.push(Path {
                    source: s,
                    target: q.arrows[a].target,
                    arrows,
                });
            }
            blocks[s * n + path.target].push(path);
        }
    }
    let data = blocks
        .into_iter()
        .map(|mut basis| {
            basis.sort_by(|x, y| path_cmp(q, x, y));
            let index = basis.iter().enumerate().map(|(i, b)| (b.arrows.clone(), i)).collect();
            BlockData { basis, index }
        })
        .collect();
    Ok((gb, data))
}

/// Coordinates of the normal form of `word` in the basis of its block.
fn reduce_word<F: Field>(gb: &Groebner<F>, block: &BlockData, word: &[usize]) -> SparseVec<F> {
    sparse_from(gb.normal_form(word).into_iter().map(|(w, c)| (block.index[&w], c)))
}

fn assemble<F: Field>(
    p: &Presentation<F>,
    cap: usize,
    margin: usize,
    gb: &Groebner<F>,
    data: Vec<BlockData>,
) -> Result<QuotientAlgebra<F>> {
    let q = &p.quiver;
    let n = q.vertex_count();
    let mut action = vec![vec![Vec::new(); q.arrows.len()]; n];
    for i in 0..n {
        for (a, arrow) in q.arrows.iter().enumerate() {
            let src = &data[i * n + arrow.source];
            let tgt = &data[i * n + arrow.target];
            action[i][a] = src
                .basis
                .iter()
                .map(|b| {
                    let mut word = b.arrows.clone();
                    word.push(a);
                    if word.len() > cap {
                        return Err(Error::NotStabilized {
                            cap,
                            margin,
                            reason: "basis path of length cap".into(),
                        });
                    }
                    Ok(reduce_word(gb, tgt, &word))
                })
                .collect::<Result<Vec<_>>>()?;
        }
    }
    let blocks: Vec<Vec<Path>> = data.into_iter().map(|d| d.basis).collect();
    let mut alg = QuotientAlgebra {
        presentation: p.clone(),
        cap,
        margin,
        n,
        blocks,
        action,
        products: Vec::new(),
    };
    let mut products = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut table = Vec::new();
                for b1 in 0..alg.block_dim(i, j) {
                    for b2 in &alg.blocks[j * n + k] {
                        let mut v = vec![(b1, F::one())];
                        for &a in &b2.arrows {
                            v = alg.act(i, a, &v);
                        }
                        table.push(v);
                    }
                }
                products.push(table);
            }
        }
    }
    alg.products = products;
    Ok(alg)
}

impl<F: Field> QuotientAlgebra<F> {
    pub fn presentation(&self) -> &Presentation<F> {
        &self.presentation
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn margin(&self) -> usize {
        self.margin
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn block_dim(&self, i: usize, j: usize) -> usize {
        self.blocks[i * self.n + j].len()
    }

    pub fn block_paths(&self, i: usize, j: usize) -> &[Path] {
        &self.blocks[i * self.n + j]
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// Block dimensions in row-major order.
    pub fn block_dims(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    fn act(&self, i: usize, a: usize, v: &SparseVec<F>) -> SparseVec<F> {
        let table = &self.action[i][a];
        let mut out = Vec::new();
        for (b, c) in v {
            out = axpy(&out, c, &table[*b]);
        }
        out
    }

    pub fn unit(&self, i: usize) -> Elem<F> {
        Elem {
            source: i,
            target: i,
            coords: vec![(0, F::one())],
        }
    }

    pub fn basis_elem(&self, i: usize, j: usize, b: usize) -> Elem<F> {
        Elem {
            source: i,
            target: j,
            coords: vec![(b, F::one())],
        }
    }

    /// Class of an arbitrary path.
    pub fn reduce_path(&self, p: &Path) -> Elem<F> {
        let mut v = vec![(0, F::one())];
        let (mut cur, i) = (p.source, p.source);
        for &a in &p.arrows {
            v = self.act(i, a, &v);
            cur = self.presentation.quiver.arrows[a].target;
        }
        Elem {
            source: i,
            target: cur,
            coords: v,
        }
    }

    pub fn arrow(&self, a: usize) -> Elem<F> {
        let arrow = &self.presentation.quiver.arrows[a];
        self.reduce_path(&Path {
            source: arrow.source,
            target: arrow.target,
            arrows: vec![a],
        })
    }

    pub fn reduce_element(&self, x: &PathElement<F>) -> Result<Elem<F>> {
        let (s, t) = x
            .endpoints()
            .ok_or_else(|| Error::Internal("empty path element".into()))?;
        let mut acc = Elem::zero(s, t);
        for (c, p) in &x.terms {
            acc = acc.axpy(c, &self.reduce_path(p))?;
        }
        Ok(acc)
    }

    /// `x · y`: `x` first, then `y`.
    pub fn mul(&self, x: &Elem<F>, y: &Elem<F>) -> Result<Elem<F>> {
        if x.target != y.source {
            return Err(Error::CompositionMismatch(format!(
                "element ends at {} but the next starts at {}",
                self.presentation.quiver.vertices[x.target], self.presentation.quiver.vertices[y.source]
            )));
        }
        let (i, j, k) = (x.source, x.target, y.target);
        let n = self.n;
        let table = &self.products[(i * n + j) * n + k];
        let djk = self.block_dim(j, k);
        let mut out = Vec::new();
        for (b1, c1) in &x.coords {
            for (b2, c2) in &y.coords {
                out = axpy(&out, &(c1.clone() * c2.clone()), &table[b1 * djk + b2]);
            }
        }
        Ok(Elem {
            source: i,
            target: k,
            coords: out,
        })
    }

    /// Inverse of a unit of the local ring `e_i A e_i`.
    pub fn unit_inverse(&self, x: &Elem<F>) -> Option<Elem<F>> {
        let c = x.unit_coefficient();
        let cinv = c.inv()?;
        // x = c (e - r) with r in the radical, so x^{-1} = c^{-1} sum r^k
        let e = self.unit(x.source);
        let r = e.sub(&x.scale(&cinv)).ok()?;
        let mut acc = e.clone();
        let mut pow = e;
        for _ in 0..=self.cap {
            pow = self.mul(&pow, &r).ok()?;
            if pow.is_zero() {
                return Some(acc.scale(&cinv));
            }
            acc = acc.add(&pow).ok()?;
        }
        None
    }

    /// Normal-form rendering, e.g. `α1β1 - 2·β1α1`.
    pub fn display(&self, x: &Elem<F>) -> String {
        let paths = self.block_paths(x.source, x.target);
        let pe = PathElement {
            terms: x.coords.iter().map(|(b, c)| (c.clone(), paths[*b].clone())).collect(),
        };
        pe.display(&self.presentation.quiver)
    }

    /// Every defining relation must be zero.
    pub fn check_relations(&self) -> Result<()> {
        for r in &self.presentation.relations {
            if !self.reduce_element(r)?.is_zero() {
                return Err(Error::NotStabilized {
                    cap: self.cap,
                    margin: self.margin,
                    reason: format!("relation {} survives", r.display(&self.presentation.quiver)),
                });
            }
        }
        Ok(())
    }

    /// Exhaustive associativity check over all basis triples.
    pub fn check_associativity(&self) -> Result<()> {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        for x in 0..self.block_dim(i, j) {
                            for y in 0..self.block_dim(j, k) {
                                let xy = self.mul(&self.basis_elem(i, j, x), &self.basis_elem(j, k, y))?;
                                for z in 0..self.block_dim(k, l) {
                                    let ez = self.basis_elem(k, l, z);
                                    let lhs = self.mul(&xy, &ez)?;
                                    let yz = self.mul(&self.basis_elem(j, k, y), &ez)?;
                                    let rhs = self.mul(&self.basis_elem(i, j, x), &yz)?;
                                    if lhs != rhs {
                                        return Err(Error::Internal(format!(
                                            "associativity fails on ({x},{y},{z}) in blocks {i},{j},{k},{l}"
                                        )));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Text table of normal-form basis paths, one line per nonzero block.
    pub fn basis_dump(&self) -> String {
        let q = &self.presentation.quiver;
        let mut s = String::new();
        for i in 0..self.n {
            for j in 0..self.n {
                let paths = self.block_paths(i, j);
                if paths.is_empty() {
                    continue;
                }
                let names: Vec<String> = paths.iter().map(|p| p.display(q)).collect();
                let _ = writeln!(
                    s,
                    "e{}·A·e{} [{}]: {}",
                    q.vertices[i],
                    q.vertices[j],
                    paths.len(),
                    names.join(", ")
                );
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::presentation::{a_n_presentation, omega_n_presentation, omega_relations};
    use crate::field::{Fp, Rational};
    use crate::graph::parse_graph;
    use crate::quiver::build_quiver;

    type Q = Rational;

    fn omega(n: usize) -> QuotientAlgebra<Q> {
        quotient_default(&omega_n_presentation(n).unwrap()).unwrap()
    }

    fn names(alg: &QuotientAlgebra<Q>, i: usize, j: usize) -> Vec<String> {
        let q = &alg.presentation().quiver;
        alg.block_paths(i, j).iter().map(|p| p.display(q)).collect()
    }

    fn graph_presentation(json: &str) -> Presentation<Q> {
        omega_relations(&build_quiver(&parse_graph(json).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn completion_agrees_with_direct_elimination() {
        let mut ps: Vec<Presentation<Q>> = Vec::new();
        for n in 1..=4 {
            ps.push(omega_n_presentation(n).unwrap());
            ps.push(a_n_presentation(n).unwrap());
        }
        ps.push(graph_presentation(
            r#"{"vertices":[{"id":"S","cyclic":["1","1","2"]},{"id":"u","cyclic":["2","3"]},{"id":"w","cyclic":["3"]}]}"#,
        ));
        ps.push(graph_presentation(
            r#"{"vertices":[{"id":"S","cyclic":["1","1","2","3"]},{"id":"u","cyclic":["2","4","5"]}]}"#,
        ));
        ps.push(graph_presentation(
            r#"{"vertices":[{"id":"S","cyclic":["1","1","2"]},{"id":"v","cyclic":["2","a"]},{"id":"w","cyclic":["a","b"]}]}"#,
        ));
        for p in &ps {
            let (cap, margin) = (p.default_cap(), p.default_margin());
            let alg = quotient_basis(p, cap, margin).unwrap();
            let direct = super::super::elimination::elimination_bases(p, cap, margin).unwrap();
            let n = alg.vertex_count();
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(
                        alg.block_paths(i, j),
                        direct[i * n + j].as_slice(),
                        "{} ({i},{j})",
                        p.name
                    );
                }
            }
        }
    }

    #[test]
    fn omega_one_basis_and_products() {
        let alg = omega(1);
        assert_eq!(alg.dim(), 4);
        assert_eq!(names(&alg, 0, 0), vec!["e1", "β1", "α1", "α1β1"]);
        let a = alg.arrow(0);
        let b = alg.arrow(1);
        let aa = alg.mul(&a, &a).unwrap();
        let ab = alg.mul(&a, &b).unwrap();
        let ba = alg.mul(&b, &a).unwrap();
        assert_eq!(aa, ab);
        assert_eq!(ab, ba.neg());
        assert_eq!(alg.display(&aa), "α1β1");
    }

    #[test]
    fn omega_dimensions() {
        for n in 1..=5 {
            assert_eq!(omega(n).dim(), n * n + 3 * n, "n = {n}");
        }
    }

    #[test]
    fn omega_three_cartan_blocks() {
        let alg = omega(3);
        let c: Vec<Vec<usize>> = (0..3).map(|i| (0..3).map(|j| alg.block_dim(i, j)).collect()).collect();
        assert_eq!(c, vec![vec![4, 2, 2], vec![2, 2, 1], vec![2, 1, 2]]);
    }

    #[test]
    fn g_min_algebra() {
        let g = parse_graph(
            r#"{"vertices":[{"id":"S","cyclic":["1","1","2"]},{"id":"u","cyclic":["2","3"]},{"id":"w","cyclic":["3"]}]}"#,
        )
        .unwrap();
        let p = omega_relations::<Q>(&build_quiver(&g).unwrap()).unwrap();
        let alg = quotient_default(&p).unwrap();
        assert_eq!(alg.dim(), 14);
        let c: Vec<Vec<usize>> = (0..3).map(|i| (0..3).map(|j| alg.block_dim(i, j)).collect()).collect();
        assert_eq!(c, vec![vec![4, 2, 0], vec![2, 2, 1], vec![0, 1, 2]]);
        alg.check_associativity().unwrap();
    }

    #[test]
    fn sign_relation_and_identity() {
        let alg = omega(3);
        let b = alg.reduce_path(&alg.presentation().path(&["β1", "β2", "β3"]).unwrap());
        let a = alg.arrow(0);
        let lhs = alg.mul(&b, &a).unwrap();
        let rhs = alg.mul(&a, &b).unwrap();
        assert!(!lhs.is_zero());
        assert_eq!(lhs, rhs.neg());
        let e = alg.unit(0);
        assert_eq!(alg.mul(&e, &a).unwrap(), a);
        assert!(matches!(
            alg.mul(&alg.arrow(1), &alg.arrow(1)),
            Err(Error::CompositionMismatch(_))
        ));
    }

    #[test]
    fn associativity_small() {
        for n in 1..=3 {
            omega(n).check_associativity().unwrap();
            quotient_default::<Q>(&a_n_presentation(n).unwrap())
                .unwrap()
                .check_associativity()
                .unwrap();
        }
    }

    #[test]
    fn too_small_cap_is_reported() {
        let p = omega_n_presentation::<Q>(3).unwrap();
        assert!(matches!(quotient_basis(&p, 2, 0), Err(Error::NotStabilized { .. })));
    }

    #[test]
    fn prime_field() {
        let p = omega_n_presentation::<Fp<7>>(3).unwrap();
        assert_eq!(quotient_default(&p).unwrap().dim(), 18);
    }

    #[test]
    fn unit_inverse() {
        let alg = omega(2);
        let x = alg.unit(0).add(&alg.arrow(0)).unwrap();
        let y = alg.unit_inverse(&x).unwrap();
        assert_eq!(alg.mul(&x, &y).unwrap(), alg.unit(0));
        assert!(alg.unit_inverse(&alg.arrow(0)).is_none());
    }
}
