//! Finite simple graphs.
//!
//! Vertices carry opaque [`Label`]s but are stored densely as indices
//! `0..order()` in label order, with one adjacency [`BitSet`] per vertex.
//! Index-level methods take and return [`BitSet`]s; the label-level methods
//! (`link_of`, `star`, `induced_subgraph`, ...) validate their arguments and
//! report [`GraphError::UnknownVertex`].

use alloc::collections::VecDeque;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::bitset::BitSet;
use crate::ext::ExtNat;
use crate::label::{Label, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Label),
    #[error("unknown vertex {0}")]
    UnknownVertex(Label),
}

/// An undirected graph without self-loops or multi-edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    labels: Vec<Label>,
    adj: Vec<BitSet>,
}

impl Default for Graph {
    fn default() -> Self {
        Graph::empty()
    }
}

impl Graph {
    pub fn empty() -> Graph {
        Graph {
            labels: Vec::new(),
            adj: Vec::new(),
        }
    }

    /// Builds a graph from declared vertices and unordered edge pairs.
    ///
    /// Duplicate vertices and duplicate edges (in either orientation) are
    /// merged. Every edge endpoint must be declared.
    pub fn from_edge_list<V, E, L>(vertices: V, edges: E) -> Result<Graph, GraphError>
    where
        V: IntoIterator<Item = L>,
        E: IntoIterator<Item = (L, L)>,
        L: Into<Label>,
    {
        let mut labels: Vec<Label> = vertices.into_iter().map(Into::into).collect();
        labels.sort();
        labels.dedup();
        let n = labels.len();
        let mut adj = vec![BitSet::new(n); n];
        for (a, b) in edges {
            let (a, b) = (a.into(), b.into());
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            let i = labels.binary_search(&a).map_err(|_| GraphError::UnknownVertex(a))?;
            let j = labels.binary_search(&b).map_err(|_| GraphError::UnknownVertex(b))?;
            adj[i].insert(j);
            adj[j].insert(i);
        }
        Ok(Graph { labels, adj })
    }

    /// Builds a graph whose vertex set is the union of `isolated` and all
    /// edge endpoints.
    pub fn from_edges<V, E, L>(isolated: V, edges: E) -> Result<Graph, GraphError>
    where
        V: IntoIterator<Item = L>,
        E: IntoIterator<Item = (L, L)>,
        L: Into<Label>,
    {
        let edges: Vec<(Label, Label)> = edges.into_iter().map(|(a, b)| (a.into(), b.into())).collect();
        let mut vertices: Vec<Label> = isolated.into_iter().map(Into::into).collect();
        for (a, b) in &edges {
            vertices.push(a.clone());
            vertices.push(b.clone());
        }
        Graph::from_edge_list(vertices, edges)
    }

    /// Builds a graph on labels `0..n` (as integer labels) from index pairs.
    pub(crate) fn from_index_edges(labels: Vec<Label>, edges: &[(usize, usize)]) -> Graph {
        debug_assert!(labels.windows(2).all(|w| w[0] < w[1]));
        let n = labels.len();
        let mut adj = vec![BitSet::new(n); n];
        for &(i, j) in edges {
            debug_assert_ne!(i, j);
            adj[i].insert(j);
            adj[j].insert(i);
        }
        Graph { labels, adj }
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.adj.iter().map(BitSet::len).sum::<usize>() / 2
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &Label {
        &self.labels[i]
    }

    pub fn index_of(&self, l: &Label) -> Option<usize> {
        self.labels.binary_search(l).ok()
    }

    fn require(&self, l: &Label) -> Result<usize, GraphError> {
        self.index_of(l).ok_or_else(|| GraphError::UnknownVertex(l.clone()))
    }

    pub fn neighbors(&self, i: usize) -> &BitSet {
        &self.adj[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i].contains(j)
    }

    /// Edges as index pairs `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.order() {
            for j in self.adj[i].iter().filter(|&j| j > i) {
                out.push((i, j));
            }
        }
        out
    }

    pub fn edge_labels(&self) -> Vec<(Label, Label)> {
        self.edges()
            .into_iter()
            .map(|(i, j)| (self.labels[i].clone(), self.labels[j].clone()))
            .collect()
    }

    pub fn has_edge(&self, a: &Label, b: &Label) -> Result<bool, GraphError> {
        Ok(self.adjacent(self.require(a)?, self.require(b)?))
    }

    pub fn all(&self) -> BitSet {
        BitSet::full(self.order())
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet(self.labels.iter().cloned().collect())
    }

    /// Converts labels to an index set.
    pub fn indices<'a, I>(&self, set: I) -> Result<BitSet, GraphError>
    where
        I: IntoIterator<Item = &'a Label>,
    {
        let mut out = BitSet::new(self.order());
        for l in set {
            out.insert(self.require(l)?);
        }
        Ok(out)
    }

    pub fn to_labels(&self, set: &BitSet) -> VertexSet {
        VertexSet(set.iter().map(|i| self.labels[i].clone()).collect())
    }

    /// Common neighbourhood of `set`; the whole vertex set when `set` is empty.
    pub fn link(&self, set: &BitSet) -> BitSet {
        let mut out = self.all();
        for v in set.iter() {
            out.intersect_with(&self.adj[v]);
        }
        out
    }

    pub fn link_of(&self, set: &VertexSet) -> Result<VertexSet, GraphError> {
        let s = self.indices(set)?;
        Ok(self.to_labels(&self.link(&s)))
    }

    pub fn star_of(&self, i: usize) -> BitSet {
        let mut s = self.adj[i].clone();
        s.insert(i);
        s
    }

    pub fn star(&self, v: &Label) -> Result<VertexSet, GraphError> {
        Ok(self.to_labels(&self.star_of(self.require(v)?)))
    }

    /// True iff every two distinct members of `set` are adjacent.
    pub fn is_complete(&self, set: &BitSet) -> bool {
        set.iter().all(|v| {
            let mut rest = set.clone();
            rest.remove(v);
            rest.is_subset(&self.adj[v])
        })
    }

    pub fn is_complete_set(&self, set: &VertexSet) -> Result<bool, GraphError> {
        Ok(self.is_complete(&self.indices(set)?))
    }

    pub fn is_complete_graph(&self) -> bool {
        self.is_complete(&self.all())
    }

    /// The subgraph induced on `set`, keeping labels.
    pub fn induced(&self, set: &BitSet) -> Graph {
        let keep: Vec<usize> = set.iter().collect();
        let mut pos = vec![usize::MAX; self.order()];
        for (k, &v) in keep.iter().enumerate() {
            pos[v] = k;
        }
        let n = keep.len();
        let mut adj = vec![BitSet::new(n); n];
        for (k, &v) in keep.iter().enumerate() {
            for w in self.adj[v].iter() {
                if pos[w] != usize::MAX {
                    adj[k].insert(pos[w]);
                }
            }
        }
        Graph {
            labels: keep.iter().map(|&v| self.labels[v].clone()).collect(),
            adj,
        }
    }

    pub fn induced_subgraph(&self, set: &VertexSet) -> Result<Graph, GraphError> {
        Ok(self.induced(&self.indices(set)?))
    }

    /// Connected components, ordered by least member.
    pub fn components(&self) -> Vec<BitSet> {
        let n = self.order();
        let mut seen = BitSet::new(n);
        let mut out = Vec::new();
        for s in 0..n {
            if seen.contains(s) {
                continue;
            }
            let mut comp = BitSet::new(n);
            let mut stack = vec![s];
            seen.insert(s);
            while let Some(v) = stack.pop() {
                comp.insert(v);
                for w in self.adj[v].iter() {
                    if !seen.contains(w) {
                        seen.insert(w);
                        stack.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn connected_components(&self) -> Vec<VertexSet> {
        self.components().iter().map(|c| self.to_labels(c)).collect()
    }

    /// Non-empty with a single component. The empty graph is not connected.
    pub fn is_connected(&self) -> bool {
        !self.is_empty() && self.components().len() == 1
    }

    /// Breadth-first distances from `source`.
    pub fn distances_from(&self, source: usize) -> Vec<ExtNat> {
        let mut dist = vec![ExtNat::Inf; self.order()];
        dist[source] = ExtNat::ZERO;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            let next = dist[v] + 1;
            for w in self.adj[v].iter() {
                if dist[w] == ExtNat::Inf {
                    dist[w] = next;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: &Label, v: &Label) -> Result<ExtNat, GraphError> {
        let (i, j) = (self.require(u)?, self.require(v)?);
        Ok(self.distances_from(i)[j])
    }

    pub fn eccentricity(&self, i: usize) -> ExtNat {
        self.distances_from(i).into_iter().max().unwrap_or(ExtNat::ZERO)
    }

    pub fn eccentricities(&self) -> Vec<ExtNat> {
        (0..self.order()).map(|i| self.eccentricity(i)).collect()
    }

    /// Minimum eccentricity: 0 for the empty graph, infinite when disconnected.
    pub fn radius(&self) -> ExtNat {
        self.eccentricities().into_iter().min().unwrap_or(ExtNat::ZERO)
    }

    pub fn complement(&self) -> Graph {
        let n = self.order();
        let adj = (0..n)
            .map(|i| {
                let mut s = BitSet::full(n);
                s.difference_with(&self.adj[i]);
                s.remove(i);
                s
            })
            .collect();
        Graph {
            labels: self.labels.clone(),
            adj,
        }
    }

    /// Edge-list text: a `vertices:` header followed by one `u v` pair per
    /// edge, joined by `sep`.
    pub fn to_edge_list(&self, sep: &str) -> String {
        let mut out = String::from("vertices:");
        for l in &self.labels {
            let _ = write!(out, " {l}");
        }
        for (a, b) in self.edge_labels() {
            let _ = write!(out, "{sep}{a} {b}");
        }
        out
    }
}
