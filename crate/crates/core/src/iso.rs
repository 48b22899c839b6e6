//! Exact graph isomorphism.
//!
//! Backtracking over a connected matching order: the first vertex is taken
//! from the rarest degree class, later vertices are picked by most
//! already-matched neighbours. Candidates must agree on degree, triangle
//! count and sorted neighbour-degree sequence, and every partial mapping
//! preserves adjacency and non-adjacency. Disconnected graphs are split into
//! components, which are matched class by class.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::ext::ExtNat;
use crate::graph::Graph;
use crate::label::Label;

/// Isomorphism-invariant summary of a graph.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fingerprint {
    pub order: usize,
    pub size: usize,
    pub degrees: Vec<usize>,
    pub triangles: Vec<usize>,
    pub eccentricities: Vec<ExtNat>,
}

fn triangle_counts(g: &Graph) -> Vec<usize> {
    (0..g.order())
        .map(|v| {
            let nb = g.neighbors(v);
            nb.iter()
                .map(|w| g.neighbors(w).intersection_len(nb))
                .sum::<usize>()
                / 2
        })
        .collect()
}

pub fn fingerprint(g: &Graph) -> Fingerprint {
    let mut degrees: Vec<usize> = (0..g.order()).map(|v| g.degree(v)).collect();
    let mut triangles = triangle_counts(g);
    let mut eccentricities = g.eccentricities();
    degrees.sort_unstable();
    triangles.sort_unstable();
    eccentricities.sort_unstable();
    Fingerprint {
        order: g.order(),
        size: g.size(),
        degrees,
        triangles,
        eccentricities,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoResult {
    pub isomorphic: bool,
    /// Bijection from the first graph's labels to the second's.
    pub mapping: Option<BTreeMap<Label, Label>>,
}

/// True iff `mapping` is a bijection `g1 -> g2` preserving adjacency and
/// non-adjacency.
pub fn verify_mapping(g1: &Graph, g2: &Graph, mapping: &BTreeMap<Label, Label>) -> bool {
    if g1.order() != g2.order() || mapping.len() != g1.order() {
        return false;
    }
    let mut image = vec![usize::MAX; g1.order()];
    let mut hit = BitSet::new(g2.order());
    for (a, b) in mapping {
        let (Some(i), Some(j)) = (g1.index_of(a), g2.index_of(b)) else {
            return false;
        };
        if hit.contains(j) {
            return false;
        }
        hit.insert(j);
        image[i] = j;
    }
    (0..g1.order()).all(|i| (i + 1..g1.order()).all(|k| g1.adjacent(i, k) == g2.adjacent(image[i], image[k])))
}

/// Per-vertex invariant used to filter candidates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct VertexSig {
    degree: usize,
    triangles: usize,
    neighbour_degrees: Vec<usize>,
}

fn signatures(g: &Graph) -> Vec<VertexSig> {
    let tri = triangle_counts(g);
    (0..g.order())
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbors(v).iter().map(|w| g.degree(w)).collect();
            nd.sort_unstable();
            VertexSig {
                degree: g.degree(v),
                triangles: tri[v],
                neighbour_degrees: nd,
            }
        })
        .collect()
}

fn sorted_sigs(s: &[VertexSig]) -> Vec<VertexSig> {
    let mut v = s.to_vec();
    v.sort();
    v
}

/// Matching order for a connected graph.
fn matching_order(g: &Graph, sig: &[VertexSig]) -> Vec<usize> {
    let n = g.order();
    let mut class_size: BTreeMap<&VertexSig, usize> = BTreeMap::new();
    for s in sig {
        *class_size.entry(s).or_default() += 1;
    }
    let start = (0..n)
        .min_by_key(|&v| (class_size[&sig[v]], usize::MAX - g.degree(v), v))
        .expect("non-empty");
    let mut order = vec![start];
    let mut placed = BitSet::new(n);
    placed.insert(start);
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed.contains(v) && g.neighbors(v).intersection_len(&placed) > 0)
            .max_by_key(|&v| {
                (
                    g.neighbors(v).intersection_len(&placed),
                    usize::MAX - class_size[&sig[v]],
                    g.degree(v),
                    usize::MAX - v,
                )
            })
            .expect("connected graph");
        placed.insert(next);
        order.push(next);
    }
    order
}

struct Search<'a> {
    g1: &'a Graph,
    g2: &'a Graph,
    sig1: Vec<VertexSig>,
    sig2: Vec<VertexSig>,
    order: Vec<usize>,
    map: Vec<usize>,
    used: BitSet,
}

impl Search<'_> {
    fn feasible(&self, depth: usize, u: usize, v: usize) -> bool {
        if self.used.contains(v) || self.sig1[u] != self.sig2[v] {
            return false;
        }
        self.order[..depth]
            .iter()
            .all(|&p| self.g1.adjacent(u, p) == self.g2.adjacent(v, self.map[p]))
    }

    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let u = self.order[depth];
        // After the first vertex, u has a matched neighbour p; its image
        // must be a neighbour of map[p].
        let candidates: Vec<usize> = match self.order[..depth].iter().find(|&&p| self.g1.adjacent(u, p)) {
            Some(&p) => self.g2.neighbors(self.map[p]).iter().collect(),
            None => (0..self.g2.order()).collect(),
        };
        for v in candidates {
            if self.feasible(depth, u, v) {
                self.map[u] = v;
                self.used.insert(v);
                if self.extend(depth + 1) {
                    return true;
                }
                self.used.remove(v);
                self.map[u] = usize::MAX;
            }
        }
        false
    }
}

/// Index mapping between two connected graphs, if isomorphic.
fn connected_iso(g1: &Graph, g2: &Graph) -> Option<Vec<usize>> {
    if g1.order() != g2.order() || g1.size() != g2.size() {
        return None;
    }
    if g1.is_empty() {
        return Some(Vec::new());
    }
    let sig1 = signatures(g1);
    let sig2 = signatures(g2);
    if sorted_sigs(&sig1) != sorted_sigs(&sig2) {
        return None;
    }
    let order = matching_order(g1, &sig1);
    let mut search = Search {
        g1,
        g2,
        sig1,
        sig2,
        order,
        map: vec![usize::MAX; g1.order()],
        used: BitSet::new(g2.order()),
    };
    search.extend(0).then_some(search.map)
}

pub fn are_isomorphic(g1: &Graph, g2: &Graph) -> IsoResult {
    let no = IsoResult {
        isomorphic: false,
        mapping: None,
    };
    if g1.order() != g2.order() || g1.size() != g2.size() || fingerprint(g1) != fingerprint(g2) {
        return no;
    }
    let comps1: Vec<Graph> = g1.components().iter().map(|c| g1.induced(c)).collect();
    let comps2: Vec<Graph> = g2.components().iter().map(|c| g2.induced(c)).collect();
    let prints2: Vec<Fingerprint> = comps2.iter().map(fingerprint).collect();
    let mut taken = vec![false; comps2.len()];
    let mut mapping = BTreeMap::new();
    for c1 in &comps1 {
        let p1 = fingerprint(c1);
        let mut matched = false;
        for (k, c2) in comps2.iter().enumerate() {
            if taken[k] || prints2[k] != p1 {
                continue;
            }
            if let Some(m) = connected_iso(c1, c2) {
                for (i, j) in m.into_iter().enumerate() {
                    mapping.insert(c1.label(i).clone(), c2.label(j).clone());
                }
                taken[k] = true;
                matched = true;
                break;
            }
        }
        if !matched {
            return no;
        }
    }
    debug_assert!(verify_mapping(g1, g2, &mapping));
    IsoResult {
        isomorphic: true,
        mapping: Some(mapping),
    }
}
