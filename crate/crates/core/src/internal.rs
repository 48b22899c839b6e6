//! Internal sets, internal vertices, the internal graph and H-rigidity.
//!
//! A non-empty vertex set `S` is *internal* when `Link(S)` is not complete,
//! i.e. contains two non-adjacent vertices. Singleton internal sets are the
//! *internal vertices*; the subgraph they induce is the *internal graph*.
//!
//! A finite graph is *H-rigid* when (1) it is locally finite (always true
//! here), (2) every internal set is a singleton, and (3) every non-empty
//! vertex set with a non-empty link induces a disjoint union of cliques.
//!
//! Conditions (2) and (3) have two implementations each:
//!
//! * fast paths: (2) holds iff every non-adjacent pair has at most one common
//!   neighbour, since `S` is internal exactly when `S ⊆ N(x) ∩ N(y)` for some
//!   non-adjacent `x, y`; (3) holds iff every neighbourhood `N(w)` induces a
//!   cluster graph (no induced three-vertex path), since the sets with
//!   non-empty link are exactly the subsets of neighbourhoods;
//! * brute-force oracles enumerating every vertex subset, limited to
//!   [`BRUTE_FORCE_LIMIT`] vertices unless forced.

use alloc::string::String;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::graph::Graph;
use crate::label::{Label, VertexSet};

/// Largest graph the oracles accept without `force`.
pub const BRUTE_FORCE_LIMIT: usize = 20;
/// Hard ceiling for the oracles (subsets are 64-bit masks).
pub const BRUTE_FORCE_HARD_LIMIT: usize = 64;
/// How many internal sets an exhaustive report keeps.
pub const MAX_LISTED_SETS: usize = 4096;

/// Attached to reports on the 4-cycle.
pub const CYCLE4_NOTE: &str = "known discrepancy: the usual H-rigidity classification lists every \
     cycle Z_n with 3 <= n < inf, but in Z_4 the set {2,4} has link {1,3}, which is not complete, \
     so {2,4} is an internal set of size 2 and condition (2) fails; Z_4 is reported as not H-rigid";

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum AnalysisError {
    #[error("graph has {vertices} vertices, brute force is limited to {limit}")]
    TooLarge { vertices: usize, limit: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InternalSetReport {
    /// Internal sets found, in lexicographic order, capped at
    /// [`MAX_LISTED_SETS`] for exhaustive reports. The fast path lists the
    /// internal vertices and the witness only.
    pub sets: Vec<VertexSet>,
    /// Number of internal sets found (exhaustive reports only count all).
    pub total: usize,
    pub exhaustive: bool,
    pub all_singletons: bool,
    /// An internal set of size at least two: the common neighbourhood of the
    /// lexicographically least non-adjacent pair that has two or more common
    /// neighbours.
    pub witness: Option<VertexSet>,
}

/// A vertex `hub` whose neighbourhood contains the induced path
/// `a - middle - c` with `set = {a, middle, c}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkWitness {
    pub hub: Label,
    pub set: VertexSet,
    pub middle: Label,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkCondition {
    pub holds: bool,
    pub witness: Option<LinkWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRigidityReport {
    pub locally_finite: bool,
    pub internal_sets_are_vertices: bool,
    pub internal_set_witness: Option<VertexSet>,
    pub link_condition: bool,
    pub link_witness: Option<LinkWitness>,
    pub h_rigid: bool,
    pub connected: bool,
    pub notes: Vec<String>,
}

impl HRigidityReport {
    /// Internal graph well-defined: all internal sets are singletons.
    pub fn int_graph_well_defined(&self) -> bool {
        self.internal_sets_are_vertices
    }
}

// ---------------------------------------------------------------------------
// Internal vertices and the internal graph

pub fn internal_vertex_indices(g: &Graph) -> BitSet {
    BitSet::from_indices(
        g.order(),
        (0..g.order()).filter(|&v| !g.is_complete(g.neighbors(v))),
    )
}

pub fn internal_vertices(g: &Graph) -> VertexSet {
    g.to_labels(&internal_vertex_indices(g))
}

/// The subgraph induced on the internal vertices. Always computable; it is
/// the internal graph proper only when all internal sets are singletons.
pub fn internal_graph(g: &Graph) -> Graph {
    g.induced(&internal_vertex_indices(g))
}

// ---------------------------------------------------------------------------
// Condition (2)

/// Least non-adjacent pair `(x, y)`, `x < y`, with `|N(x) ∩ N(y)| >= 2`.
fn least_rich_pair(g: &Graph) -> Option<(usize, usize, BitSet)> {
    let n = g.order();
    for x in 0..n {
        for y in x + 1..n {
            if g.adjacent(x, y) {
                continue;
            }
            if g.neighbors(x).intersection_len(g.neighbors(y)) >= 2 {
                return Some((x, y, g.neighbors(x).intersection(g.neighbors(y))));
            }
        }
    }
    None
}

pub fn internal_sets_fast(g: &Graph) -> InternalSetReport {
    let witness = least_rich_pair(g).map(|(_, _, cn)| g.to_labels(&cn));
    let mut sets: Vec<VertexSet> = internal_vertex_indices(g)
        .iter()
        .map(|v| g.to_labels(&BitSet::from_indices(g.order(), [v])))
        .collect();
    if let Some(w) = &witness {
        sets.push(w.clone());
        sets.sort();
    }
    InternalSetReport {
        total: sets.len(),
        sets,
        exhaustive: false,
        all_singletons: witness.is_none(),
        witness,
    }
}

/// Adjacency as 64-bit masks for the subset oracles.
struct Masks {
    adj: Vec<u64>,
}

impl Masks {
    fn new(g: &Graph) -> Masks {
        Masks {
            adj: (0..g.order())
                .map(|v| g.neighbors(v).iter().fold(0u64, |m, w| m | 1 << w))
                .collect(),
        }
    }

    fn full(&self) -> u64 {
        match self.adj.len() {
            64 => u64::MAX,
            n => (1u64 << n) - 1,
        }
    }

    fn complete(&self, m: u64) -> bool {
        bits(m).all(|v| (self.adj[v] | 1 << v) & m == m)
    }

    fn least_nonadjacent_pair(&self, m: u64) -> Option<(usize, usize)> {
        for x in bits(m) {
            let above = if x == 63 { 0 } else { m & !((1u64 << (x + 1)) - 1) };
            let rest = above & !self.adj[x];
            if rest != 0 {
                return Some((x, rest.trailing_zeros() as usize));
            }
        }
        None
    }

    /// Every connected component of the subgraph induced on `m` is complete.
    fn components_complete(&self, m: u64) -> bool {
        let mut left = m;
        while left != 0 {
            let start = left.trailing_zeros();
            let mut comp = 1u64 << start;
            let mut frontier = comp;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let new = self.adj[v] & m & !comp;
                comp |= new;
                frontier |= new;
            }
            if !self.complete(comp) {
                return false;
            }
            left &= !comp;
        }
        true
    }

    /// Visits every non-empty subset (up to `max_size` members) in
    /// lexicographic order of sorted members, with its link.
    fn for_each_subset(&self, max_size: usize, f: &mut impl FnMut(u64, u64)) {
        fn rec(m: &Masks, start: usize, set: u64, link: u64, size: usize, max: usize, f: &mut impl FnMut(u64, u64)) {
            for v in start..m.adj.len() {
                let s = set | 1 << v;
                let l = link & m.adj[v];
                f(s, l);
                if size + 1 < max {
                    rec(m, v + 1, s, l, size + 1, max, f);
                }
            }
        }
        rec(self, 0, 0, self.full(), 0, max_size, f);
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

fn mask_to_bitset(n: usize, m: u64) -> BitSet {
    BitSet::from_indices(n, bits(m))
}

fn guard(g: &Graph, force: bool) -> Result<(), AnalysisError> {
    let n = g.order();
    if n > BRUTE_FORCE_HARD_LIMIT {
        return Err(AnalysisError::TooLarge {
            vertices: n,
            limit: BRUTE_FORCE_HARD_LIMIT,
        });
    }
    if n > BRUTE_FORCE_LIMIT && !force {
        return Err(AnalysisError::TooLarge {
            vertices: n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    Ok(())
}

/// Enumerates every internal set (of at most `max_size` members).
pub fn internal_sets_bruteforce(
    g: &Graph,
    max_size: Option<usize>,
    force: bool,
) -> Result<InternalSetReport, AnalysisError> {
    guard(g, force)?;
    let n = g.order();
    let masks = Masks::new(g);
    let mut sets = Vec::new();
    let mut total = 0usize;
    // (least non-adjacent pair in the link, larger set first, set)
    let mut best: Option<((usize, usize), u32, u64)> = None;
    masks.for_each_subset(max_size.unwrap_or(n), &mut |s, link| {
        if masks.complete(link) {
            return;
        }
        total += 1;
        if sets.len() < MAX_LISTED_SETS {
            sets.push(s);
        }
        if s.count_ones() >= 2 {
            let pair = masks.least_nonadjacent_pair(link).expect("non-complete link");
            let better = match best {
                None => true,
                Some((p, size, _)) => pair < p || (pair == p && s.count_ones() > size),
            };
            if better {
                best = Some((pair, s.count_ones(), s));
            }
        }
    });
    Ok(InternalSetReport {
        sets: sets.into_iter().map(|m| g.to_labels(&mask_to_bitset(n, m))).collect(),
        total,
        exhaustive: true,
        all_singletons: best.is_none(),
        witness: best.map(|(_, _, m)| g.to_labels(&mask_to_bitset(n, m))),
    })
}

// ---------------------------------------------------------------------------
// Condition (3)

/// Lexicographically least `{a < b < c}` inside `within` inducing a path.
fn least_induced_path(g: &Graph, within: &BitSet) -> Option<(usize, usize, usize)> {
    let members: Vec<usize> = within.iter().collect();
    for (i, &a) in members.iter().enumerate() {
        for (j, &b) in members.iter().enumerate().skip(i + 1) {
            for &c in &members[j + 1..] {
                let (ab, bc, ac) = (g.adjacent(a, b), g.adjacent(b, c), g.adjacent(a, c));
                match (ab, bc, ac) {
                    (true, true, false) => return Some((a, b, c)),
                    (true, false, true) => return Some((b, a, c)),
                    (false, true, true) => return Some((a, c, b)),
                    _ => {}
                }
            }
        }
    }
    None
}

/// The induced subgraph on `set` is a disjoint union of cliques.
fn is_cluster(g: &Graph, set: &BitSet) -> bool {
    set.iter().all(|a| {
        let mut closed_a = g.neighbors(a).intersection(set);
        closed_a.insert(a);
        g.neighbors(a).intersection(set).iter().all(|b| {
            let mut closed_b = g.neighbors(b).intersection(set);
            closed_b.insert(b);
            closed_a == closed_b
        })
    })
}

fn witness_from(g: &Graph, hub: usize, (x, middle, y): (usize, usize, usize)) -> LinkWitness {
    LinkWitness {
        hub: g.label(hub).clone(),
        set: g.to_labels(&BitSet::from_indices(g.order(), [x, middle, y])),
        middle: g.label(middle).clone(),
    }
}

/// Fast path: every neighbourhood induces a cluster graph. The witness uses
/// the least failing hub and its least induced path.
pub fn link_condition(g: &Graph) -> LinkCondition {
    for w in 0..g.order() {
        let nb = g.neighbors(w);
        if is_cluster(g, nb) {
            continue;
        }
        let path = least_induced_path(g, nb).expect("non-cluster neighbourhood has an induced path");
        return LinkCondition {
            holds: false,
            witness: Some(witness_from(g, w, path)),
        };
    }
    LinkCondition {
        holds: true,
        witness: None,
    }
}

/// Failing subset found by [`link_condition_bruteforce`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkOracleFailure {
    pub subset: VertexSet,
    pub hub: Label,
}

/// Oracle: checks every non-empty vertex set with non-empty link for
/// complete components. Returns the lexicographically least failing set.
pub fn link_condition_bruteforce(g: &Graph, force: bool) -> Result<Option<LinkOracleFailure>, AnalysisError> {
    guard(g, force)?;
    let n = g.order();
    let masks = Masks::new(g);
    let mut failure: Option<(u64, u64)> = None;
    masks.for_each_subset(n, &mut |s, link| {
        if failure.is_some() || link == 0 {
            return;
        }
        if !masks.components_complete(s) {
            failure = Some((s, link));
        }
    });
    Ok(failure.map(|(s, link)| LinkOracleFailure {
        subset: g.to_labels(&mask_to_bitset(n, s)),
        hub: g.label(link.trailing_zeros() as usize).clone(),
    }))
}

// ---------------------------------------------------------------------------
// H-rigidity

fn is_four_cycle(g: &Graph) -> bool {
    g.order() == 4 && g.is_connected() && (0..4).all(|v| g.degree(v) == 2)
}

fn assemble(
    g: &Graph,
    internal_set_witness: Option<VertexSet>,
    link: LinkCondition,
) -> HRigidityReport {
    let internal_sets_are_vertices = internal_set_witness.is_none();
    let mut notes = Vec::new();
    if is_four_cycle(g) {
        notes.push(String::from(CYCLE4_NOTE));
    }
    HRigidityReport {
        locally_finite: true,
        internal_sets_are_vertices,
        internal_set_witness,
        link_condition: link.holds,
        link_witness: link.witness,
        h_rigid: internal_sets_are_vertices && link.holds,
        connected: g.is_connected(),
        notes,
    }
}

pub fn is_h_rigid(g: &Graph) -> HRigidityReport {
    assemble(g, internal_sets_fast(g).witness, link_condition(g))
}

/// H-rigidity decided by the subset oracles instead of the fast paths.
pub fn is_h_rigid_bruteforce(g: &Graph, force: bool) -> Result<HRigidityReport, AnalysisError> {
    let sets = internal_sets_bruteforce(g, None, force)?;
    let link = match link_condition_bruteforce(g, force)? {
        None => LinkCondition {
            holds: true,
            witness: None,
        },
        Some(fail) => {
            let subset = g.indices(&fail.subset).expect("labels from g");
            let hub = g.index_of(&fail.hub).expect("label from g");
            let path = least_induced_path(g, &subset).expect("non-cluster subset has an induced path");
            LinkCondition {
                holds: false,
                witness: Some(witness_from(g, hub, path)),
            }
        }
    };
    Ok(assemble(g, sets.witness, link))
}

// ---------------------------------------------------------------------------
// Structural consequences, evaluated as checks

/// Every external vertex has an internal neighbour. Requires a connected
/// graph with non-empty internal graph whose internal sets are singletons.
pub fn check_external_adjacency(g: &Graph) -> Result<bool, AnalysisError> {
    if !g.is_connected() {
        return Err(AnalysisError::PreconditionViolated("graph is not connected"));
    }
    if !internal_sets_fast(g).all_singletons {
        return Err(AnalysisError::PreconditionViolated("some internal set is not a single vertex"));
    }
    let int = internal_vertex_indices(g);
    if int.is_empty() {
        return Err(AnalysisError::PreconditionViolated("internal graph is empty"));
    }
    Ok((0..g.order())
        .filter(|&v| !int.contains(v))
        .all(|v| g.neighbors(v).intersection_len(&int) > 0))
}

/// `radius(g) <= radius(internal graph) + 1`. Requires a connected (or
/// empty) graph whose internal sets are singletons.
pub fn check_radius_bound(g: &Graph) -> Result<bool, AnalysisError> {
    if !g.is_empty() && !g.is_connected() {
        return Err(AnalysisError::PreconditionViolated("graph is not connected"));
    }
    if !internal_sets_fast(g).all_singletons {
        return Err(AnalysisError::PreconditionViolated("some internal set is not a single vertex"));
    }
    Ok(g.radius() <= internal_graph(g).radius() + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn line(n: i64) -> Graph {
        Graph::from_edge_list(1..=n, (1..n).map(|i| (i, i + 1))).unwrap()
    }

    fn cycle(n: i64) -> Graph {
        Graph::from_edge_list(1..=n, (1..=n).map(|i| (i, i % n + 1))).unwrap()
    }

    fn complete(n: i64) -> Graph {
        Graph::from_edge_list(1..=n, (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j)))).unwrap()
    }

    fn kbip(m: i64, n: i64) -> Graph {
        Graph::from_edge_list(1..=m + n, (1..=m).flat_map(|i| (m + 1..=m + n).map(move |j| (i, j)))).unwrap()
    }

    fn set(items: &[i64]) -> VertexSet {
        items.iter().copied().collect()
    }

    #[test]
    fn internal_vertices_examples() {
        assert_eq!(internal_vertices(&line(5)), set(&[2, 3, 4]));
        assert_eq!(internal_vertices(&cycle(5)), set(&[1, 2, 3, 4, 5]));
        for n in 1..=6 {
            assert!(internal_vertices(&complete(n)).is_empty());
        }
    }

    #[test]
    fn internal_graph_examples() {
        assert_eq!(internal_graph(&line(5)), line(5).induced_subgraph(&set(&[2, 3, 4])).unwrap());
        assert!(internal_graph(&line(2)).is_empty());
        assert_eq!(internal_graph(&cycle(6)), cycle(6));
    }

    #[test]
    fn bruteforce_examples() {
        let l5 = internal_sets_bruteforce(&line(5), None, false).unwrap();
        assert!(l5.all_singletons);
        assert_eq!(l5.sets, vec![set(&[2]), set(&[3]), set(&[4])]);

        // All 15 non-empty subsets of Z_4 checked by hand: the singletons and
        // the two diagonals {1,3}, {2,4} are internal.
        let z4 = internal_sets_bruteforce(&cycle(4), None, false).unwrap();
        assert!(!z4.all_singletons);
        assert_eq!(
            z4.sets,
            vec![set(&[1]), set(&[1, 3]), set(&[2]), set(&[2, 4]), set(&[3]), set(&[4])]
        );
        assert_eq!(z4.witness, Some(set(&[2, 4])));

        let k5 = internal_sets_bruteforce(&complete(5), None, false).unwrap();
        assert_eq!(k5.total, 0);
    }

    #[test]
    fn bruteforce_guard() {
        let big = line(21);
        assert_eq!(
            internal_sets_bruteforce(&big, None, false),
            Err(AnalysisError::TooLarge { vertices: 21, limit: 20 })
        );
        assert!(internal_sets_bruteforce(&big, Some(2), true).is_ok());
    }

    #[test]
    fn fast_examples() {
        let mut l6 = internal_sets_fast(&line(6));
        assert!(l6.all_singletons);
        assert_eq!(l6.all_singletons, internal_sets_bruteforce(&line(6), None, false).unwrap().all_singletons);
        l6 = internal_sets_fast(&cycle(4));
        assert!(!l6.all_singletons);
        assert_eq!(l6.witness, Some(set(&[2, 4])));
        let k33 = internal_sets_fast(&kbip(3, 3));
        assert!(!k33.all_singletons);
        // N(1) ∩ N(2) = {4, 5, 6}
        assert_eq!(k33.witness, Some(set(&[4, 5, 6])));
        assert_eq!(internal_sets_bruteforce(&kbip(3, 3), None, false).unwrap().witness, k33.witness);
    }

    #[test]
    fn link_condition_examples() {
        for n in 2..=8 {
            assert!(link_condition(&line(n)).holds);
        }
        assert!(link_condition(&kbip(1, 3)).holds);
        let wheel = Graph::from_edge_list(0..=4, [(1, 2), (2, 3), (3, 4), (4, 1), (0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let lc = link_condition(&wheel);
        assert!(!lc.holds);
        assert_eq!(
            lc.witness,
            Some(LinkWitness {
                hub: Label::Int(0),
                set: set(&[1, 2, 3]),
                middle: Label::Int(2),
            })
        );
        // lexicographically first failing set is {0, 1, 3}, with link {2, 4}
        let oracle = link_condition_bruteforce(&wheel, false).unwrap().unwrap();
        assert_eq!(oracle.subset, set(&[0, 1, 3]));
        assert_eq!(oracle.hub, Label::Int(2));
    }

    #[test]
    fn h_rigid_examples() {
        let l4 = is_h_rigid(&line(4));
        assert!(l4.h_rigid && l4.connected && l4.notes.is_empty());
        let k33 = is_h_rigid(&kbip(3, 3));
        assert!(!k33.h_rigid && !k33.internal_sets_are_vertices && k33.link_condition);
        let z4 = is_h_rigid(&cycle(4));
        assert!(!z4.h_rigid);
        assert_eq!(z4.internal_set_witness, Some(set(&[2, 4])));
        assert_eq!(z4.notes, vec![String::from(CYCLE4_NOTE)]);
        assert_eq!(is_h_rigid_bruteforce(&cycle(4), false).unwrap(), z4);
        for n in 1..=8 {
            assert!(is_h_rigid(&complete(n)).h_rigid);
        }
    }

    #[test]
    fn structural_checks() {
        assert_eq!(check_external_adjacency(&line(5)), Ok(true));
        assert_eq!(check_external_adjacency(&kbip(1, 3)), Ok(true));
        assert_eq!(
            check_external_adjacency(&complete(4)),
            Err(AnalysisError::PreconditionViolated("internal graph is empty"))
        );
        assert_eq!(check_radius_bound(&line(5)), Ok(true));
        assert_eq!(check_radius_bound(&line(2)), Ok(true));
        assert_eq!(check_radius_bound(&cycle(6)), Ok(true));
        assert!(check_radius_bound(&cycle(4)).is_err());
    }
}
