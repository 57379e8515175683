//! One-loop Brauer graphs: parsing, validation, canonical serialization.
//!
//! A graph is a list of vertices, each with a clockwise cyclic list of edge
//! incidences. The unique loop appears twice, consecutively, at its vertex
//! `S`. Edges with a single listed incidence are completed by an implicit
//! leaf vertex, so a loop-star can be written as `{"id":"S","cyclic":[...]}`
//! alone.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(String);

impl EdgeId {
    pub fn new(label: impl Into<String>) -> Self {
        EdgeId(label.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for EdgeId {
    fn from(s: &str) -> Self {
        EdgeId(s.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphVertex {
    pub id: String,
    /// Clockwise incidences; rotations are equal.
    pub cyclic: Vec<EdgeId>,
    /// Leaf added to complete a single-incidence edge; omitted on output.
    pub implicit: bool,
}

impl GraphVertex {
    pub fn new(id: impl Into<String>, cyclic: Vec<EdgeId>) -> Self {
        GraphVertex {
            id: id.into(),
            cyclic,
            implicit: false,
        }
    }
}

/// The on-disk graph format.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub vertices: Vec<VertexFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexFile {
    pub id: String,
    pub cyclic: Vec<String>,
}

/// Tree attached at a cycle edge, rooted at the edge's far endpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrauerTree {
    pub root: EdgeId,
    /// Tree edges in depth-first preorder (cyclic order after the parent edge).
    pub edges: Vec<EdgeId>,
}

/// A validated one-loop Brauer graph with derived cycle and tree data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrauerGraph {
    vertices: Vec<GraphVertex>,
    loop_edge: EdgeId,
    center: usize,
    cycle_edges: Vec<EdgeId>,
    /// Cycle edges in cycle order, then tree edges tree by tree.
    edge_order: Vec<EdgeId>,
    /// For each edge the vertex nearer to `S` and the one farther away.
    ends: BTreeMap<EdgeId, (usize, usize)>,
    /// For each tree edge, the edge one step closer to the cycle.
    parent: BTreeMap<EdgeId, EdgeId>,
}

pub fn parse_graph(text: &str) -> Result<BrauerGraph> {
    let file: GraphFile = serde_json::from_str(text).map_err(|e| Error::MalformedInput(e.to_string()))?;
    let vertices = file
        .vertices
        .into_iter()
        .map(|v| GraphVertex::new(v.id, v.cyclic.into_iter().map(EdgeId).collect()))
        .collect();
    BrauerGraph::from_vertices(vertices)
}

pub fn serialize_graph(g: &BrauerGraph) -> String {
    serde_json::to_string(&g.to_file()).expect("graph serializes")
}

/// Checks a raw vertex list against every graph invariant, reporting the
/// first violation.
pub fn validate(vertices: &[GraphVertex]) -> Result<()> {
    let mut ids = BTreeSet::new();
    for v in vertices {
        if v.id.is_empty() {
            return Err(Error::validation("non-empty vertex id", ""));
        }
        if !ids.insert(v.id.as_str()) {
            return Err(Error::validation("unique vertex ids", v.id.clone()));
        }
        if v.cyclic.is_empty() {
            return Err(Error::validation("non-empty cyclic list", v.id.clone()));
        }
        let mut counts: BTreeMap<&EdgeId, usize> = BTreeMap::new();
        for e in &v.cyclic {
            if e.0.is_empty() {
                return Err(Error::validation("non-empty edge label", v.id.clone()));
            }
            *counts.entry(e).or_default() += 1;
        }
        if let Some((e, _)) = counts.iter().find(|(_, &c)| c > 2) {
            return Err(Error::validation(
                "edge at most twice per vertex",
                format!("edge {e} at vertex {}", v.id),
            ));
        }
    }

    let loops = loops_of(vertices);
    if loops.len() != 1 {
        let found: Vec<String> = loops.iter().map(|(e, _)| e.to_string()).collect();
        return Err(Error::validation(
            "exactly one loop",
            format!("found {} loops [{}]", loops.len(), found.join(", ")),
        ));
    }
    let (loop_edge, at) = &loops[0];
    let list = &vertices[*at].cyclic;
    if loop_start(list, loop_edge).is_none() {
        return Err(Error::validation(
            "loop not its own direct successor",
            format!("loop {loop_edge} at vertex {}", vertices[*at].id),
        ));
    }

    let mut incidences: BTreeMap<&EdgeId, Vec<usize>> = BTreeMap::new();
    for (vi, v) in vertices.iter().enumerate() {
        for e in &v.cyclic {
            incidences.entry(e).or_default().push(vi);
        }
    }
    if let Some((e, inc)) = incidences.iter().find(|(_, inc)| inc.len() != 2) {
        return Err(Error::validation(
            "every edge has exactly two incidences",
            format!("edge {e} has {}", inc.len()),
        ));
    }

    // connectivity over the incidence structure
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); vertices.len()];
    for inc in incidences.values() {
        adj[inc[0]].push(inc[1]);
        adj[inc[1]].push(inc[0]);
    }
    let mut seen = vec![false; vertices.len()];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    if let Some(v) = seen.iter().position(|s| !s) {
        return Err(Error::validation(
            "not connected",
            format!("vertex {} unreachable", vertices[v].id),
        ));
    }

    // connected, so acyclic after removing the loop iff |E| - 1 = |V| - 1
    if incidences.len() != vertices.len() {
        return Err(Error::validation(
            "the loop is the only cycle",
            format!("{} edges on {} vertices", incidences.len(), vertices.len()),
        ));
    }
    Ok(())
}

fn loops_of(vertices: &[GraphVertex]) -> Vec<(EdgeId, usize)> {
    let mut out = Vec::new();
    for (vi, v) in vertices.iter().enumerate() {
        let mut seen = BTreeSet::new();
        for e in &v.cyclic {
            if !seen.insert(e) && !out.iter().any(|(x, _)| x == e) {
                out.push((e.clone(), vi));
            }
        }
    }
    out
}

/// Index of the first of two circularly adjacent occurrences of `e`.
fn loop_start(list: &[EdgeId], e: &EdgeId) -> Option<usize> {
    let m = list.len();
    (0..m).find(|&k| list[k] == *e && list[(k + 1) % m] == *e)
}

fn rotate<T: Clone>(list: &[T], start: usize) -> Vec<T> {
    list[start..].iter().chain(&list[..start]).cloned().collect()
}

/// Adds implicit leaves for edges listed only once.
fn complete_leaves(mut vertices: Vec<GraphVertex>) -> Vec<GraphVertex> {
    let mut counts: BTreeMap<EdgeId, usize> = BTreeMap::new();
    for v in &vertices {
        for e in &v.cyclic {
            *counts.entry(e.clone()).or_default() += 1;
        }
    }
    let mut ids: BTreeSet<String> = vertices.iter().map(|v| v.id.clone()).collect();
    for (e, c) in counts {
        if c == 1 {
            let mut id = format!("leaf:{e}");
            while ids.contains(&id) {
                id.push('\'');
            }
            ids.insert(id.clone());
            vertices.push(GraphVertex {
                id,
                cyclic: vec![e],
                implicit: true,
            });
        }
    }
    vertices
}

impl BrauerGraph {
    /// Builds and validates a graph; single-incidence edges gain implicit leaves.
    pub fn from_vertices(vertices: Vec<GraphVertex>) -> Result<Self> {
        let mut vertices = complete_leaves(vertices);
        validate(&vertices)?;
        vertices.sort_by(|a, b| a.id.cmp(&b.id));
        for v in vertices.iter_mut() {
            if v.cyclic.len() > 1 {
                v.implicit = false;
            }
            v.cyclic = canonical_rotation(&v.cyclic);
        }

        let (loop_edge, center) = loops_of(&vertices).remove(0);
        let start = loop_start(&vertices[center].cyclic, &loop_edge).expect("validated");
        let at_s = rotate(&vertices[center].cyclic, start);
        let mut cycle_edges = vec![loop_edge.clone()];
        cycle_edges.extend(at_s[2..].iter().cloned());

        let mut where_: BTreeMap<EdgeId, Vec<usize>> = BTreeMap::new();
        for (vi, v) in vertices.iter().enumerate() {
            for e in &v.cyclic {
                where_.entry(e.clone()).or_default().push(vi);
            }
        }
        let other = |e: &EdgeId, from: usize| -> usize {
            let w = &where_[e];
            if w[0] == from {
                w[1]
            } else {
                w[0]
            }
        };

        let mut ends = BTreeMap::new();
        let mut parent = BTreeMap::new();
        let mut edge_order = cycle_edges.clone();
        ends.insert(loop_edge.clone(), (center, center));
        for e in &cycle_edges[1..] {
            let far = other(e, center);
            ends.insert(e.clone(), (center, far));
            // depth-first preorder of the attached tree
            let mut stack = vec![(far, e.clone())];
            while let Some((v, incoming)) = stack.pop() {
                let children = edges_after(&vertices[v].cyclic, &incoming);
                for child in children.iter().rev() {
                    let w = other(child, v);
                    ends.insert(child.clone(), (v, w));
                    parent.insert(child.clone(), incoming.clone());
                    stack.push((w, child.clone()));
                }
            }
            let mut order = Vec::new();
            preorder(&vertices, &ends, e, &mut order);
            edge_order.extend(order);
        }

        Ok(BrauerGraph {
            vertices,
            loop_edge,
            center,
            cycle_edges,
            edge_order,
            ends,
            parent,
        })
    }

    /// Re-checks every invariant from the stored vertex lists.
    pub fn validate(&self) -> Result<()> {
        validate(&self.vertices)?;
        let rebuilt = BrauerGraph::from_vertices(self.vertices.clone())?;
        if rebuilt != *self {
            return Err(Error::validation("derived data consistent with incidences", ""));
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[GraphVertex] {
        &self.vertices
    }

    pub fn loop_edge(&self) -> &EdgeId {
        &self.loop_edge
    }

    pub fn center(&self) -> &GraphVertex {
        &self.vertices[self.center]
    }

    pub fn center_index(&self) -> usize {
        self.center
    }

    /// Edges at `S` in cycle order, starting with the loop.
    pub fn cycle_edges(&self) -> &[EdgeId] {
        &self.cycle_edges
    }

    /// Canonical edge order: cycle edges, then tree edges tree by tree.
    pub fn edges(&self) -> &[EdgeId] {
        &self.edge_order
    }

    pub fn edge_count(&self) -> usize {
        self.edge_order.len()
    }

    pub fn tree_edge_count(&self) -> usize {
        self.edge_order.len() - self.cycle_edges.len()
    }

    pub fn is_loop_star(&self) -> bool {
        self.tree_edge_count() == 0
    }

    /// 1-based position on the exceptional cycle.
    pub fn cycle_position(&self, e: &EdgeId) -> Option<usize> {
        self.cycle_edges.iter().position(|c| c == e).map(|p| p + 1)
    }

    pub fn contains_edge(&self, e: &EdgeId) -> bool {
        self.ends.contains_key(e)
    }

    /// `(near, far)` vertex indices relative to `S`.
    pub fn ends(&self, e: &EdgeId) -> (usize, usize) {
        self.ends[e]
    }

    /// The endpoint of `e` other than vertex `v`.
    pub fn other_end(&self, e: &EdgeId, v: usize) -> usize {
        let (a, b) = self.ends[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// Edges at vertex `v` in clockwise order after `incoming`, excluding it.
    pub fn edges_after(&self, v: usize, incoming: &EdgeId) -> Vec<EdgeId> {
        edges_after(&self.vertices[v].cyclic, incoming)
    }

    pub fn tree(&self, cycle_edge: &EdgeId) -> Option<BrauerTree> {
        if self.cycle_position(cycle_edge)? == 1 {
            return Some(BrauerTree {
                root: cycle_edge.clone(),
                edges: Vec::new(),
            });
        }
        let mut edges = Vec::new();
        preorder(&self.vertices, &self.ends, cycle_edge, &mut edges);
        Some(BrauerTree {
            root: cycle_edge.clone(),
            edges,
        })
    }

    pub fn trees(&self) -> Vec<BrauerTree> {
        self.cycle_edges
            .iter()
            .map(|e| self.tree(e).expect("cycle edge"))
            .collect()
    }

    /// The cycle edge whose tree contains `e` (`e` itself for cycle edges).
    pub fn root_of(&self, e: &EdgeId) -> EdgeId {
        let mut cur = e.clone();
        while let Some(p) = self.parent.get(&cur) {
            cur = p.clone();
        }
        cur
    }

    /// The unique shortest path of edges from the cycle edge rooting `z`'s
    /// tree to `z`, both included.
    pub fn path_from_cycle(&self, z: &EdgeId) -> Vec<EdgeId> {
        let mut path = vec![z.clone()];
        let mut cur = z.clone();
        while let Some(p) = self.parent.get(&cur) {
            path.push(p.clone());
            cur = p.clone();
        }
        path.reverse();
        path
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            vertices: self
                .vertices
                .iter()
                .filter(|v| !(v.implicit && v.cyclic.len() == 1))
                .map(|v| VertexFile {
                    id: v.id.clone(),
                    cyclic: v.cyclic.iter().map(|e| e.0.clone()).collect(),
                })
                .collect(),
        }
    }

    /// Copy with cycle edges renamed `1..r` by cycle position and tree edges
    /// `r+1..n` in canonical edge order.
    pub fn canonical_relabel(&self) -> BrauerGraph {
        let map: BTreeMap<&EdgeId, EdgeId> = self
            .edge_order
            .iter()
            .enumerate()
            .map(|(k, e)| (e, EdgeId((k + 1).to_string())))
            .collect();
        let vertices = self
            .vertices
            .iter()
            .filter(|v| !(v.implicit && v.cyclic.len() == 1))
            .map(|v| GraphVertex::new(v.id.clone(), v.cyclic.iter().map(|e| map[e].clone()).collect()))
            .collect();
        BrauerGraph::from_vertices(vertices).expect("relabeling preserves validity")
    }
}

impl fmt::Display for BrauerGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_graph(self))
    }
}

fn edges_after(list: &[EdgeId], incoming: &EdgeId) -> Vec<EdgeId> {
    let m = list.len();
    let k = list.iter().position(|e| e == incoming).expect("incident edge");
    (1..m).map(|s| list[(k + s) % m].clone()).collect()
}

fn preorder(
    vertices: &[GraphVertex],
    ends: &BTreeMap<EdgeId, (usize, usize)>,
    incoming: &EdgeId,
    out: &mut Vec<EdgeId>,
) {
    let far = ends[incoming].1;
    for child in edges_after(&vertices[far].cyclic, incoming) {
        out.push(child.clone());
        preorder(vertices, ends, &child, out);
    }
}

/// Least rotation (by token order) that does not split a loop pair.
fn canonical_rotation(list: &[EdgeId]) -> Vec<EdgeId> {
    let m = list.len();
    let splits_loop = |k: usize| {
        let prev = &list[(k + m - 1) % m];
        m > 2 && list[k] == *prev && list.iter().filter(|e| *e == prev).count() == 2
    };
    (0..m)
        .filter(|&k| !splits_loop(k))
        .map(|k| rotate(list, k))
        .min()
        .unwrap_or_default()
}

/// The Brauer loop-star with `n` edges: `S:[1,1,2,...,n]`.
pub fn loop_star(n: usize) -> Result<BrauerGraph> {
    if n < 1 {
        return Err(Error::Domain(format!("loop_star needs n >= 1, got {n}")));
    }
    let mut cyclic = vec![EdgeId::new("1"), EdgeId::new("1")];
    cyclic.extend((2..=n).map(|k| EdgeId(k.to_string())));
    BrauerGraph::from_vertices(vec![GraphVertex::new("S", cyclic)])
}

pub fn edge_count(g: &BrauerGraph) -> usize {
    g.edge_count()
}
