//! The Brauer quiver of a one-loop Brauer graph, with its α/β camps.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{BrauerGraph, EdgeId};

/// Camp of a quiver cycle. `Beta` sorts before `Alpha`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Camp {
    #[serde(rename = "beta")]
    Beta,
    #[serde(rename = "alpha")]
    Alpha,
}

impl Camp {
    pub fn symbol(self) -> &'static str {
        match self {
            Camp::Alpha => "α",
            Camp::Beta => "β",
        }
    }

    pub fn opposite(self) -> Camp {
        match self {
            Camp::Alpha => Camp::Beta,
            Camp::Beta => Camp::Alpha,
        }
    }
}

impl fmt::Display for Camp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Camp::Alpha => "alpha",
            Camp::Beta => "beta",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub camp: Camp,
}

/// A finite quiver; vertices are labelled by edge ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<EdgeId>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<EdgeId>, arrows: Vec<Arrow>) -> Self {
        Quiver { vertices, arrows }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, label: &EdgeId) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn label(&self, v: usize) -> &EdgeId {
        &self.vertices[v]
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].source == v)
    }

    pub fn arrows_into(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].target == v)
    }

    /// Sort key of an arrow in the path order: camp (β first), then source.
    pub fn arrow_key(&self, a: usize) -> (Camp, usize, usize) {
        let arrow = &self.arrows[a];
        (arrow.camp, arrow.source, a)
    }

    /// Orbits of the same-camp successor map on arrows: each arrow is
    /// followed by the arrow of its camp leaving its target, if any.
    pub fn camp_cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.arrows.len()];
        let mut out = Vec::new();
        for start in 0..self.arrows.len() {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut cur = Some(start);
            while let Some(a) = cur {
                if seen[a] {
                    break;
                }
                seen[a] = true;
                cyc.push(a);
                let (t, c) = (self.arrows[a].target, self.arrows[a].camp);
                cur = self.arrows_from(t).find(|&b| self.arrows[b].camp == c);
            }
            out.push(cyc);
        }
        out
    }

    /// Same labelled vertices and same named arrows with the same ends.
    pub fn same_as(&self, other: &Quiver) -> bool {
        if self.vertices != other.vertices || self.arrows.len() != other.arrows.len() {
            return false;
        }
        self.arrows.iter().all(|a| {
            other.arrows.iter().any(|b| {
                b.name == a.name
                    && other.vertices[b.source] == self.vertices[a.source]
                    && other.vertices[b.target] == self.vertices[a.target]
            })
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QCycle {
    /// Originating vertex of the graph.
    pub graph_vertex: String,
    pub camp: Camp,
    /// Arrow indices in order; empty for a trivial cycle.
    pub arrows: Vec<usize>,
    /// Quiver vertices on the cycle (one vertex for a trivial cycle).
    pub vertices: Vec<usize>,
    pub exceptional: bool,
}

impl QCycle {
    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// A formal cycle word: arrow indices composed left to right.
pub type CycleWord = Vec<usize>;

#[derive(Clone, Debug)]
pub struct BrauerQuiver {
    pub quiver: Quiver,
    pub cycles: Vec<QCycle>,
    exceptional: usize,
    loop_arrow: usize,
    loop_vertex: usize,
    out: Vec<[Option<usize>; 2]>,
    into: Vec<[Option<usize>; 2]>,
}

fn slot(c: Camp) -> usize {
    match c {
        Camp::Beta => 0,
        Camp::Alpha => 1,
    }
}

/// Builds the Brauer quiver: one vertex per edge, one arrow per step between
/// consecutive incidences at each graph vertex with at least two incidences.
pub fn build_quiver(g: &BrauerGraph) -> Result<BrauerQuiver> {
    let labels: Vec<EdgeId> = g.edges().to_vec();
    let index: BTreeMap<&EdgeId, usize> = labels.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let center = g.center_index();
    let loop_vertex = index[g.loop_edge()];

    // camp of each graph vertex by 2-colouring the cycle intersection graph
    let nv = g.vertices().len();
    let mut camp: Vec<Option<Camp>> = vec![None; nv];
    camp[center] = Some(Camp::Beta);
    let mut queue = VecDeque::from([center]);
    while let Some(v) = queue.pop_front() {
        let here = camp[v].expect("coloured");
        for e in &g.vertices()[v].cyclic {
            if e == g.loop_edge() {
                continue;
            }
            let w = g.other_end(e, v);
            match camp[w] {
                None => {
                    camp[w] = Some(here.opposite());
                    queue.push_back(w);
                }
                Some(c) if c == here => {
                    return Err(Error::Internal(format!(
                        "camp colouring conflict between {} and {}",
                        g.vertices()[v].id,
                        g.vertices()[w].id
                    )))
                }
                Some(_) => {}
            }
        }
    }

    let mut arrows: Vec<Arrow> = Vec::new();
    let mut cycles: Vec<QCycle> = Vec::new();
    let mut loop_arrow = None;
    let mut exceptional = None;
    for (vi, gv) in g.vertices().iter().enumerate() {
        let c = camp[vi].ok_or_else(|| Error::Internal(format!("vertex {} uncoloured", gv.id)))?;
        let mut list = gv.cyclic.clone();
        if vi == center {
            let m = list.len();
            let k = (0..m)
                .find(|&k| list[k] == *g.loop_edge() && list[(k + 1) % m] == *g.loop_edge())
                .expect("loop pair");
            list.rotate_left(k);
        }
        let m = list.len();
        if m < 2 {
            cycles.push(QCycle {
                graph_vertex: gv.id.clone(),
                camp: c,
                arrows: Vec::new(),
                vertices: vec![index[&list[0]]],
                exceptional: false,
            });
            continue;
        }
        let mut cyc_arrows = Vec::new();
        let mut cyc_vertices = Vec::new();
        for k in 0..m {
            let (s, t) = (index[&list[k]], index[&list[(k + 1) % m]]);
            let arrow_camp = if vi == center && k == 0 { Camp::Alpha } else { c };
            let id = arrows.len();
            arrows.push(Arrow {
                name: format!("{}{}", arrow_camp.symbol(), labels[s]),
                source: s,
                target: t,
                camp: arrow_camp,
            });
            if vi == center && k == 0 {
                loop_arrow = Some(id);
            } else {
                cyc_arrows.push(id);
                cyc_vertices.push(s);
            }
        }
        if vi == center {
            cycles.push(QCycle {
                graph_vertex: gv.id.clone(),
                camp: Camp::Alpha,
                arrows: vec![loop_arrow.expect("loop arrow")],
                vertices: vec![loop_vertex],
                exceptional: false,
            });
            exceptional = Some(cycles.len());
        }
        cycles.push(QCycle {
            graph_vertex: gv.id.clone(),
            camp: c,
            arrows: cyc_arrows,
            vertices: cyc_vertices,
            exceptional: vi == center,
        });
    }

    let n = labels.len();
    let mut out = vec![[None, None]; n];
    let mut into = vec![[None, None]; n];
    for (id, a) in arrows.iter().enumerate() {
        let so = &mut out[a.source][slot(a.camp)];
        let ti = &mut into[a.target][slot(a.camp)];
        if so.is_some() || ti.is_some() {
            return Err(Error::Internal(format!(
                "two {} arrows at one vertex ({})",
                a.camp, a.name
            )));
        }
        *so = Some(id);
        *ti = Some(id);
    }

    let bq = BrauerQuiver {
        quiver: Quiver::new(labels, arrows),
        cycles,
        exceptional: exceptional.expect("exceptional cycle"),
        loop_arrow: loop_arrow.expect("loop arrow"),
        loop_vertex,
        out,
        into,
    };
    bq.check_invariants()?;
    Ok(bq)
}

impl BrauerQuiver {
    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn loop_arrow(&self) -> usize {
        self.loop_arrow
    }

    /// Quiver vertex of the loop edge (vertex `1`).
    pub fn loop_vertex(&self) -> usize {
        self.loop_vertex
    }

    pub fn exceptional_cycle(&self) -> &QCycle {
        &self.cycles[self.exceptional]
    }

    pub fn on_exceptional(&self, v: usize) -> bool {
        self.exceptional_cycle().vertices.contains(&v)
    }

    pub fn arrow_out(&self, v: usize, camp: Camp) -> Option<usize> {
        self.out[v][slot(camp)]
    }

    pub fn arrow_into(&self, v: usize, camp: Camp) -> Option<usize> {
        self.into[v][slot(camp)]
    }

    /// The nontrivial-or-trivial cycle of the given camp through `v`.
    pub fn cycle_of(&self, v: usize, camp: Camp) -> &QCycle {
        if v == self.loop_vertex && camp == Camp::Alpha {
            return self
                .cycles
                .iter()
                .find(|c| c.arrows == [self.loop_arrow])
                .expect("loop cycle");
        }
        self.cycles
            .iter()
            .find(|c| c.camp == camp && c.vertices.contains(&v) && c.arrows != [self.loop_arrow])
            .expect("every vertex lies on one cycle per camp")
    }

    /// Plain cycle word `A_v` / `B_v` around `v`; empty when trivial.
    pub fn plain_cycle(&self, v: usize, camp: Camp) -> CycleWord {
        let mut word = Vec::new();
        let mut cur = v;
        while let Some(a) = self.arrow_out(cur, camp) {
            word.push(a);
            cur = self.quiver.arrows[a].target;
            if cur == v {
                break;
            }
        }
        word
    }

    /// `A_v` for camp α; `B_v` for camp β, or `B'_v` when `v != 1` lies on
    /// the exceptional cycle (the loop arrow inserted on passing vertex 1).
    pub fn cycle_at(&self, v: usize, camp: Camp) -> CycleWord {
        if camp == Camp::Beta && self.on_exceptional(v) && v != self.loop_vertex {
            let mut word = Vec::new();
            let mut cur = v;
            loop {
                if cur == self.loop_vertex {
                    word.push(self.loop_arrow);
                }
                let a = self.arrow_out(cur, Camp::Beta).expect("exceptional β arrow");
                word.push(a);
                cur = self.quiver.arrows[a].target;
                if cur == v {
                    return word;
                }
            }
        }
        self.plain_cycle(v, camp)
    }

    /// Names of the arrows of a word, concatenated.
    pub fn word_name(&self, word: &[usize]) -> String {
        word.iter().map(|&a| self.quiver.arrows[a].name.as_str()).collect()
    }

    pub fn check_invariants(&self) -> Result<()> {
        let n = self.vertex_count();
        for v in 0..n {
            for camp in [Camp::Alpha, Camp::Beta] {
                let count = self
                    .cycles
                    .iter()
                    .filter(|c| c.camp == camp && c.vertices.contains(&v))
                    .count();
                if count != 1 {
                    return Err(Error::Internal(format!(
                        "vertex {} lies on {count} {camp} cycles",
                        self.quiver.vertices[v]
                    )));
                }
            }
        }
        for (i, a) in self.cycles.iter().enumerate() {
            for b in &self.cycles[i + 1..] {
                let meet = a.vertices.iter().any(|v| b.vertices.contains(v));
                if meet && !a.is_trivial() && !b.is_trivial() && a.camp == b.camp {
                    return Err(Error::Internal(format!(
                        "intersecting cycles at {} and {} share camp {}",
                        a.graph_vertex, b.graph_vertex, a.camp
                    )));
                }
            }
            let arrows = &self.quiver.arrows;
            for w in a.arrows.windows(2) {
                if arrows[w[0]].target != arrows[w[1]].source {
                    return Err(Error::Internal(format!("cycle at {} not composable", a.graph_vertex)));
                }
            }
        }
        if self.arrow_out(self.loop_vertex, Camp::Beta).is_none() {
            return Err(Error::Internal("vertex 1 lacks its β arrow".into()));
        }
        Ok(())
    }
}

/// Deterministic DOT rendering with camp annotations.
pub fn quiver_to_dot(q: &BrauerQuiver) -> String {
    let mut s = String::from("digraph Q {\n");
    for v in &q.quiver.vertices {
        let _ = writeln!(s, "  \"{v}\";");
    }
    for a in &q.quiver.arrows {
        let _ = writeln!(
            s,
            "  \"{}\" -> \"{}\" [label=\"{}\", camp=\"{}\"];",
            q.quiver.vertices[a.source], q.quiver.vertices[a.target], a.name, a.camp
        );
    }
    s.push_str("}\n");
    s
}
