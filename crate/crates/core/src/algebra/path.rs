use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::quiver::Quiver;

/// A path in a quiver, arrows composed left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    /// Composes `arrows`, checking that consecutive arrows meet.
    pub fn from_arrows(q: &Quiver, arrows: &[usize]) -> Result<Self> {
        let first = *arrows
            .first()
            .ok_or_else(|| Error::Internal("empty arrow list; use Path::trivial".into()))?;
        for w in arrows.windows(2) {
            if q.arrows[w[0]].target != q.arrows[w[1]].source {
                return Err(Error::CompositionMismatch(format!(
                    "{} then {}",
                    q.arrows[w[0]].name, q.arrows[w[1]].name
                )));
            }
        }
        Ok(Path {
            source: q.arrows[first].source,
            target: q.arrows[*arrows.last().expect("nonempty")].target,
            arrows: arrows.to_vec(),
        })
    }

    /// Looks arrows up by name, e.g. `["α1", "β1"]`.
    pub fn from_names(q: &Quiver, names: &[&str]) -> Result<Self> {
        let ids = names
            .iter()
            .map(|n| {
                q.arrow_index(n)
                    .ok_or_else(|| Error::Internal(format!("no arrow named {n}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Path::from_arrows(q, &ids)
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn concat(&self, other: &Path) -> Result<Path> {
        if self.target != other.source {
            return Err(Error::CompositionMismatch(format!(
                "path ends at vertex {} but next starts at {}",
                self.target, other.source
            )));
        }
        let mut arrows = self.arrows.clone();
        arrows.extend(&other.arrows);
        Ok(Path {
            source: self.source,
            target: other.target,
            arrows,
        })
    }

    pub fn contains_word(&self, word: &[usize]) -> bool {
        !word.is_empty() && self.arrows.windows(word.len()).any(|w| w == word)
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e{}", q.vertices[self.source])
        } else {
            self.arrows.iter().map(|&a| q.arrows[a].name.as_str()).collect()
        }
    }
}

/// Length first, then arrow keys compared from the last arrow backwards.
/// Larger paths are eliminated first, so normal forms favour β arrows at the
/// end of a path.
pub fn path_cmp(q: &Quiver, a: &Path, b: &Path) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| {
        for (x, y) in a.arrows.iter().rev().zip(b.arrows.iter().rev()) {
            let o = q.arrow_key(*x).cmp(&q.arrow_key(*y));
            if o != Ordering::Equal {
                return o;
            }
        }
        a.source.cmp(&b.source)
    })
}

/// A linear combination of parallel paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathElement<F> {
    pub terms: Vec<(F, Path)>,
}

impl<F: Field> PathElement<F> {
    pub fn new(terms: Vec<(F, Path)>) -> Result<Self> {
        let terms: Vec<(F, Path)> = terms.into_iter().filter(|(c, _)| !c.is_zero()).collect();
        if let Some((_, first)) = terms.first() {
            if terms
                .iter()
                .any(|(_, p)| p.source != first.source || p.target != first.target)
            {
                return Err(Error::Internal("relation terms must share source and target".into()));
            }
        }
        Ok(PathElement { terms })
    }

    pub fn monomial(p: Path) -> Self {
        PathElement {
            terms: vec![(F::one(), p)],
        }
    }

    /// `p - q`.
    pub fn difference(p: Path, q: Path) -> Result<Self> {
        PathElement::new(vec![(F::one(), p), (-F::one(), q)])
    }

    /// `p + q`.
    pub fn sum(p: Path, q: Path) -> Result<Self> {
        PathElement::new(vec![(F::one(), p), (F::one(), q)])
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn endpoints(&self) -> Option<(usize, usize)> {
        self.terms.first().map(|(_, p)| (p.source, p.target))
    }

    pub fn min_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).min().unwrap_or(0)
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (c, p)) in self.terms.iter().enumerate() {
            let neg = (-c.clone()).to_i64().map(|v| v > 0).unwrap_or(false) && F::characteristic() == 0;
            let mag = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            if !mag.is_one() {
                s.push_str(&format!("{mag}·"));
            }
            s.push_str(&p.display(q));
        }
        s
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}:{:?}", self.source, self.target, self.arrows)
    }
}
