use crate::error::{Error, Result};
use crate::field::Field;
use crate::graph::EdgeId;
use crate::quiver::{Arrow, BrauerQuiver, Camp, Quiver};

use super::path::{Path, PathElement};

/// A quiver with a finite list of relations generating an admissible ideal.
#[derive(Clone, Debug)]
pub struct Presentation<F> {
    pub name: String,
    pub quiver: Quiver,
    pub relations: Vec<PathElement<F>>,
}

impl<F: Field> Presentation<F> {
    /// Rejects empty relations and relations with a term of length below 2.
    pub fn new(name: impl Into<String>, quiver: Quiver, relations: Vec<PathElement<F>>) -> Result<Self> {
        for r in &relations {
            if r.terms.is_empty() {
                return Err(Error::Internal("zero relation".into()));
            }
            if r.min_len() < 2 {
                return Err(Error::Internal(format!(
                    "relation {} is not admissible",
                    r.display(&quiver)
                )));
            }
        }
        Ok(Presentation {
            name: name.into(),
            quiver,
            relations,
        })
    }

    pub fn relation_strings(&self) -> Vec<String> {
        self.relations.iter().map(|r| r.display(&self.quiver)).collect()
    }

    /// Lengths of the nontrivial camp cycles of the quiver.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.quiver.camp_cycles().iter().map(Vec::len).collect()
    }

    pub fn default_cap(&self) -> usize {
        2 * self.cycle_lengths().iter().sum::<usize>() + 4
    }

    pub fn default_margin(&self) -> usize {
        self.cycle_lengths().into_iter().max().unwrap_or(0) + 2
    }

    pub fn path(&self, names: &[&str]) -> Result<Path> {
        Path::from_names(&self.quiver, names)
    }
}

fn word_path(q: &BrauerQuiver, word: &[usize]) -> Result<Path> {
    Path::from_arrows(&q.quiver, word)
}

fn cat(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().chain(b).copied().collect()
}

/// The defining relations of Ω(T) for the Brauer quiver of a one-loop graph.
pub fn omega_relations<F: Field>(q: &BrauerQuiver) -> Result<Presentation<F>> {
    let one = q.loop_vertex();
    let alpha1 = q.loop_arrow();
    let n = q.vertex_count();
    let mut rels: Vec<PathElement<F>> = Vec::new();
    let others = (0..n).filter(|&v| v != one);

    // β into i followed by α out of i, and α into i followed by β out of i
    for i in others.clone() {
        for (c_in, c_out) in [(Camp::Beta, Camp::Alpha), (Camp::Alpha, Camp::Beta)] {
            if let (Some(a), Some(b)) = (q.arrow_into(i, c_in), q.arrow_out(i, c_out)) {
                rels.push(PathElement::monomial(word_path(q, &[a, b])?));
            }
        }
    }

    let b1 = q.arrow_out(one, Camp::Beta).expect("β arrow at vertex 1");
    let br = q.arrow_into(one, Camp::Beta).expect("β arrow into vertex 1");
    rels.push(PathElement::monomial(word_path(q, &[br, b1])?));

    for i in others {
        let a = q.cycle_at(i, Camp::Alpha);
        let b = q.cycle_at(i, Camp::Beta);
        let beta_i = q.arrow_out(i, Camp::Beta);
        let alpha_i = q.arrow_out(i, Camp::Alpha);
        let rel = match (a.is_empty(), b.is_empty()) {
            (false, false) => PathElement::difference(word_path(q, &a)?, word_path(q, &b)?)?,
            (true, false) => PathElement::monomial(word_path(q, &cat(&b, &[beta_i.expect("β arrow")]))?),
            (false, true) => PathElement::monomial(word_path(q, &cat(&a, &[alpha_i.expect("α arrow")]))?),
            (true, true) => {
                return Err(Error::Internal(format!(
                    "vertex {} lies on no nontrivial cycle",
                    q.quiver.vertices[i]
                )))
            }
        };
        rels.push(rel);
    }

    let big_b1 = q.plain_cycle(one, Camp::Beta);
    let a1 = [alpha1];
    rels.push(PathElement::difference(
        word_path(q, &[alpha1, alpha1])?,
        word_path(q, &cat(&a1, &big_b1))?,
    )?);
    rels.push(PathElement::sum(
        word_path(q, &cat(&a1, &big_b1))?,
        word_path(q, &cat(&big_b1, &a1))?,
    )?);
    Presentation::new("Ω(T)", q.quiver.clone(), rels)
}

/// The quiver of Ω(n) written down directly: vertices `1..n`, the loop `α1`
/// and the cycle `β1 … βn`.
pub fn omega_n_quiver(n: usize) -> Result<Quiver> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    let vertices = (1..=n).map(|i| EdgeId::new(i.to_string())).collect();
    let mut arrows = vec![Arrow {
        name: "α1".into(),
        source: 0,
        target: 0,
        camp: Camp::Alpha,
    }];
    for i in 0..n {
        arrows.push(Arrow {
            name: format!("β{}", i + 1),
            source: i,
            target: (i + 1) % n,
            camp: Camp::Beta,
        });
    }
    Ok(Quiver::new(vertices, arrows))
}

/// `β_j … β_n α β_1 … β_j` for `2 <= j <= n` and `β_n β_1`, shared by Ω(n)
/// and A(n).
fn common_relations<F: Field>(q: &Quiver, n: usize) -> Result<Vec<PathElement<F>>> {
    let beta = |i: usize| i; // arrow index of β_i
    let mut rels = vec![PathElement::monomial(Path::from_arrows(q, &[beta(n), beta(1)])?)];
    for j in 2..=n {
        let mut w: Vec<usize> = (j..=n).map(beta).collect();
        w.push(0);
        w.extend((1..=j).map(beta));
        rels.push(PathElement::monomial(Path::from_arrows(q, &w)?));
    }
    Ok(rels)
}

fn alpha_b(q: &Quiver, n: usize) -> Result<(Path, Path)> {
    let mut ab = vec![0];
    ab.extend(1..=n);
    let mut ba: Vec<usize> = (1..=n).collect();
    ba.push(0);
    Ok((Path::from_arrows(q, &ab)?, Path::from_arrows(q, &ba)?))
}

/// Ω(n) with its relations transcribed directly (not via the graph).
pub fn omega_n_presentation<F: Field>(n: usize) -> Result<Presentation<F>> {
    let q = omega_n_quiver(n)?;
    let (ab, ba) = alpha_b(&q, n)?;
    let mut rels = vec![
        PathElement::difference(Path::from_arrows(&q, &[0, 0])?, ab.clone())?,
        PathElement::sum(ab, ba)?,
    ];
    rels.extend(common_relations(&q, n)?);
    Presentation::new(format!("Ω({n})"), q, rels)
}

/// A(n): as Ω(n) but with `α² = 0`.
pub fn a_n_presentation<F: Field>(n: usize) -> Result<Presentation<F>> {
    let q = omega_n_quiver(n)?;
    let (ab, ba) = alpha_b(&q, n)?;
    let mut rels = vec![
        PathElement::monomial(Path::from_arrows(&q, &[0, 0])?),
        PathElement::sum(ab, ba)?,
    ];
    rels.extend(common_relations(&q, n)?);
    Presentation::new(format!("A({n})"), q, rels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::graph::{loop_star, parse_graph};
    use crate::quiver::build_quiver;

    type P = Presentation<Rational>;

    fn sorted(mut v: Vec<String>) -> Vec<String> {
        v.sort();
        v
    }

    fn strs(v: &[&str]) -> Vec<String> {
        sorted(v.iter().map(|s| s.to_string()).collect())
    }

    #[test]
    fn g_min_relations() {
        let g = parse_graph(
            r#"{"vertices":[{"id":"S","cyclic":["1","1","2"]},{"id":"u","cyclic":["2","3"]},{"id":"w","cyclic":["3"]}]}"#,
        )
        .unwrap();
        let p: P = omega_relations(&build_quiver(&g).unwrap()).unwrap();
        assert_eq!(
            sorted(p.relation_strings()),
            strs(&[
                "β1α2",
                "α3β2",
                "β2β1",
                "α2α3 - β2α1β1",
                "α3α2α3",
                "α1α1 - α1β1β2",
                "α1β1β2 + β1β2α1",
            ])
        );
    }

    #[test]
    fn loop_star_one_relations() {
        let p: P = omega_relations(&build_quiver(&loop_star(1).unwrap()).unwrap()).unwrap();
        assert_eq!(
            sorted(p.relation_strings()),
            strs(&["β1β1", "α1α1 - α1β1", "α1β1 + β1α1"])
        );
    }

    #[test]
    fn loop_star_matches_transcription_textually() {
        for n in 1..=6 {
            let p: P = omega_relations(&build_quiver(&loop_star(n).unwrap()).unwrap()).unwrap();
            let d: P = omega_n_presentation(n).unwrap();
            assert_eq!(sorted(p.relation_strings()), sorted(d.relation_strings()), "n = {n}");
        }
    }

    #[test]
    fn a_n_small() {
        let a: P = a_n_presentation(1).unwrap();
        assert_eq!(sorted(a.relation_strings()), strs(&["α1α1", "β1β1", "α1β1 + β1α1"]));
        let a: P = a_n_presentation(2).unwrap();
        assert_eq!(
            sorted(a.relation_strings()),
            strs(&["α1α1", "β2β1", "α1β1β2 + β1β2α1", "β2α1β1β2"])
        );
        let o: P = omega_n_presentation(2).unwrap();
        let (x, y): (Vec<_>, Vec<_>) = (sorted(a.relation_strings()), sorted(o.relation_strings()));
        let only_a: Vec<_> = x.iter().filter(|r| !y.contains(r)).collect();
        let only_o: Vec<_> = y.iter().filter(|r| !x.contains(r)).collect();
        assert_eq!(only_a, vec!["α1α1"]);
        assert_eq!(only_o, vec!["α1α1 - α1β1β2"]);
    }

    #[test]
    fn default_parameters() {
        let p: P = omega_n_presentation(3).unwrap();
        assert_eq!(sorted_lengths(&p), vec![1, 3]);
        assert_eq!(p.default_cap(), 12);
        assert_eq!(p.default_margin(), 5);
        assert!(omega_n_presentation::<Rational>(0).is_err());
    }

    fn sorted_lengths(p: &P) -> Vec<usize> {
        let mut v = p.cycle_lengths();
        v.sort();
        v
    }
}
