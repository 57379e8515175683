//! Length-bounded Gröbner completion of a two-sided ideal of `KQ`.
//!
//! Words are compared in the path order (length first, then arrow keys from
//! the last arrow backwards). Every overlap of two leading words whose
//! combined word has length at most `limit` is resolved, so rewriting is
//! confluent on all words up to that length.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::field::Field;
use crate::quiver::Quiver;

use super::path::PathElement;

/// A nonempty path as arrow ranks in the path order's arrow ranking.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Word(pub(crate) Vec<u32>);

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

type Poly<F> = BTreeMap<Word, F>;

fn add_term<F: Field>(p: &mut Poly<F>, w: Word, c: F) {
    match p.entry(w) {
        std::collections::btree_map::Entry::Vacant(e) => {
            if !c.is_zero() {
                e.insert(c);
            }
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = e.get().clone() + c;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

fn splice(u: &[u32], mid: &[u32], v: &[u32]) -> Word {
    let mut w = Vec::with_capacity(u.len() + mid.len() + v.len());
    w.extend_from_slice(u);
    w.extend_from_slice(mid);
    w.extend_from_slice(v);
    Word(w)
}

/// A monic rewriting system: each leading word maps to the rest of its
/// polynomial with the sign flipped.
pub(crate) struct Groebner<F> {
    rank: Vec<u32>,
    arrow: Vec<usize>,
    rules: HashMap<Vec<u32>, Poly<F>>,
    tip_lens: BTreeSet<usize>,
}

impl<F: Field> Groebner<F> {
    /// Completes `relations`, resolving overlaps of length at most `limit`.
    pub(crate) fn complete(q: &Quiver, relations: &[PathElement<F>], limit: usize) -> Self {
        let mut order: Vec<usize> = (0..q.arrows.len()).collect();
        order.sort_by_key(|&a| q.arrow_key(a));
        let mut rank = vec![0u32; q.arrows.len()];
        for (r, &a) in order.iter().enumerate() {
            rank[a] = r as u32;
        }
        let mut gb = Groebner {
            rank,
            arrow: order,
            rules: HashMap::new(),
            tip_lens: BTreeSet::new(),
        };

        let mut pending: Vec<Poly<F>> = relations
            .iter()
            .map(|r| {
                let mut p = Poly::new();
                for (c, path) in &r.terms {
                    add_term(&mut p, gb.word(&path.arrows), c.clone());
                }
                p
            })
            .collect();
        // overlap words waiting to be resolved, shortest first
        let mut overlaps: BTreeSet<(usize, Vec<u32>, Vec<u32>, usize)> = BTreeSet::new();
        loop {
            while let Some(p) = pending.pop() {
                let p = gb.reduce(p);
                let Some((tip, lead)) = p.last_key_value() else {
                    continue;
                };
                let tip = tip.0.clone();
                let inv = lead.inv().expect("nonzero leading coefficient");
                let mut tail = Poly::new();
                for (w, c) in p.iter().rev().skip(1) {
                    add_term(&mut tail, w.clone(), -(c.clone() * inv.clone()));
                }
                // rules whose tips contain the new tip are no longer reduced
                let stale: Vec<Vec<u32>> = gb.rules.keys().filter(|t| contains(t, &tip)).cloned().collect();
                for t in stale {
                    let old_tail = gb.rules.remove(&t).expect("present");
                    let mut old = old_tail;
                    for c in old.values_mut() {
                        *c = -c.clone();
                    }
                    add_term(&mut old, Word(t), F::one());
                    pending.push(old);
                }
                gb.rules.insert(tip.clone(), tail);
                gb.tip_lens = gb.rules.keys().map(Vec::len).collect();
                let tips: Vec<Vec<u32>> = gb.rules.keys().cloned().collect();
                for other in &tips {
                    for (a, b) in [(&tip, other), (other, &tip)] {
                        for k in 1..a.len().min(b.len()) {
                            if a[a.len() - k..] == b[..k] {
                                let len = a.len() + b.len() - k;
                                if len <= limit {
                                    overlaps.insert((len, a.clone(), b.clone(), k));
                                }
                            }
                        }
                    }
                }
            }
            let Some((_, a, b, k)) = overlaps.pop_first() else {
                break;
            };
            // either tip may have been retired by a later rule
            let (Some(ta), Some(tb)) = (gb.rules.get(&a), gb.rules.get(&b)) else {
                continue;
            };
            // a·b[k..] − a[..|a|−k]·b, written through the tails
            let (left, right) = (&b[k..], &a[..a.len() - k]);
            let mut s = Poly::new();
            for (w, c) in ta {
                add_term(&mut s, splice(&[], &w.0, left), c.clone());
            }
            for (w, c) in tb {
                add_term(&mut s, splice(right, &w.0, &[]), -c.clone());
            }
            pending.push(s);
        }
        gb
    }

    pub(crate) fn word(&self, arrows: &[usize]) -> Word {
        Word(arrows.iter().map(|&a| self.rank[a]).collect())
    }

    pub(crate) fn arrows(&self, w: &Word) -> Vec<usize> {
        w.0.iter().map(|&r| self.arrow[r as usize]).collect()
    }

    /// Position and length of some leading word inside `w`.
    fn find_tip(&self, w: &[u32]) -> Option<(usize, usize)> {
        for &l in self.tip_lens.iter().filter(|&&l| l <= w.len()) {
            for start in 0..=w.len() - l {
                if self.rules.contains_key(&w[start..start + l]) {
                    return Some((start, l));
                }
            }
        }
        None
    }

    /// Whether some leading word is a suffix of `w`.
    pub(crate) fn ends_in_tip(&self, w: &[u32]) -> bool {
        self.tip_lens
            .iter()
            .any(|&l| l <= w.len() && self.rules.contains_key(&w[w.len() - l..]))
    }

    pub(crate) fn reduce(&self, mut p: Poly<F>) -> Poly<F> {
        let mut out = Poly::new();
        while let Some((w, c)) = p.pop_last() {
            match self.find_tip(&w.0) {
                Some((start, l)) => {
                    let (u, v) = (&w.0[..start], &w.0[start + l..]);
                    for (t, d) in &self.rules[&w.0[start..start + l]] {
                        add_term(&mut p, splice(u, &t.0, v), c.clone() * d.clone());
                    }
                }
                None => {
                    out.insert(w, c);
                }
            }
        }
        out
    }

    /// Normal form of a single word, as `(arrows, coefficient)` pairs.
    pub(crate) fn normal_form(&self, arrows: &[usize]) -> Vec<(Vec<usize>, F)> {
        let p = Poly::from([(self.word(arrows), F::one())]);
        self.reduce(p).into_iter().map(|(w, c)| (self.arrows(&w), c)).collect()
    }
}

fn contains(hay: &[u32], needle: &[u32]) -> bool {
    hay.len() >= needle.len() && hay.windows(needle.len()).any(|w| w == needle)
}
