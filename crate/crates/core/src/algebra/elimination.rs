//! The direct method, kept as an independent check of the completion
//! engine: list every path of length at most `cap + margin` that avoids the
//! monomial relations, impose every multiple `u ρ v` of a non-monomial
//! relation that fits, and row reduce with the largest path as pivot.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{sparse_from, Echelon};

use super::path::{path_cmp, Path, PathElement};
use super::presentation::Presentation;

fn enumerate_paths<F: Field>(p: &Presentation<F>, limit: usize) -> Vec<Vec<Path>> {
    let q = &p.quiver;
    let n = q.vertex_count();
    let mut by_last: Vec<Vec<&[usize]>> = vec![Vec::new(); q.arrows.len()];
    for r in p.relations.iter().filter(|r| r.is_monomial()) {
        let w = &r.terms[0].1.arrows;
        by_last[*w.last().expect("admissible")].push(w);
    }
    let out_arrows: Vec<Vec<usize>> = (0..n).map(|v| q.arrows_from(v).collect()).collect();
    let mut blocks: Vec<Vec<Path>> = vec![Vec::new(); n * n];
    for s in 0..n {
        let mut stack = vec![Path::trivial(s)];
        while let Some(path) = stack.pop() {
            if path.len() < limit {
                for &a in &out_arrows[path.target] {
                    let mut arrows = path.arrows.clone();
                    arrows.push(a);
                    if by_last[a].iter().any(|m| arrows.ends_with(m)) {
                        continue;
                    }
                    stack.push(Path {
                        source: s,
                        target: q.arrows[a].target,
                        arrows,
                    });
                }
            }
            blocks[s * n + path.target].push(path);
        }
    }
    for b in &mut blocks {
        b.sort_by(|x, y| path_cmp(q, x, y));
    }
    blocks
}

/// Normal-form basis of every block.
pub(crate) fn elimination_bases<F: Field>(p: &Presentation<F>, cap: usize, margin: usize) -> Result<Vec<Vec<Path>>> {
    let q = &p.quiver;
    let limit = cap + margin;
    let binomials: Vec<&PathElement<F>> = p.relations.iter().filter(|r| !r.is_monomial()).collect();
    let mut by_first: Vec<Vec<(usize, usize)>> = vec![Vec::new(); q.arrows.len()];
    for (ri, r) in binomials.iter().enumerate() {
        for (ti, (_, t)) in r.terms.iter().enumerate() {
            by_first[t.arrows[0]].push((ri, ti));
        }
    }

    let mut out = Vec::new();
    for cands in enumerate_paths(p, limit) {
        let lookup: HashMap<Vec<usize>, usize> = cands.iter().enumerate().map(|(i, c)| (c.arrows.clone(), i)).collect();
        let mut ech: Echelon<F> = Echelon::new();
        let mut seen: HashSet<(usize, &[usize], &[usize])> = HashSet::new();
        for cand in &cands {
            let w = &cand.arrows;
            for k in 0..w.len() {
                for &(ri, ti) in &by_first[w[k]] {
                    let term = &binomials[ri].terms[ti].1.arrows;
                    if !w[k..].starts_with(term) {
                        continue;
                    }
                    let (u, v) = (&w[..k], &w[k + term.len()..]);
                    if !seen.insert((ri, u, v)) {
                        continue;
                    }
                    let mut row = Vec::new();
                    let mut fits = true;
                    for (c, t) in &binomials[ri].terms {
                        let mut word = u.to_vec();
                        word.extend(&t.arrows);
                        word.extend(v);
                        if word.len() > limit {
                            fits = false;
                            break;
                        }
                        if let Some(&idx) = lookup.get(&word) {
                            row.push((idx, c.clone()));
                        }
                    }
                    if fits {
                        ech.insert(sparse_from(row));
                    }
                }
            }
        }

        for (i, c) in cands.iter().enumerate() {
            if c.len() == cap && !ech.is_pivot(i) {
                return Err(Error::NotStabilized {
                    cap,
                    margin,
                    reason: format!("path {} of length cap is not reducible", c.display(q)),
                });
            }
        }
        let bound = cands.partition_point(|c| c.len() <= cap);
        let mut small = ech.truncated(bound);
        small.make_reduced();
        let basis = cands[..bound]
            .iter()
            .enumerate()
            .filter(|(i, _)| !small.is_pivot(*i))
            .map(|(_, c)| c.clone())
            .collect();
        out.push(basis);
    }
    Ok(out)
}
