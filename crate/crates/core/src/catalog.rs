//! Exhaustive catalog of small graphs up to isomorphism.
//!
//! Graphs on `n` vertices are grown from those on `n - 1` by adding a vertex
//! with every possible neighbourhood, then deduplicated by a canonical code:
//! the least upper-triangle adjacency word over all vertex orders that sort
//! vertices by (degree, neighbour degrees). This is independent of the
//! search in [`crate::iso`].

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::Graph;
use crate::label::Label;

/// Largest order the catalog supports.
pub const MAX_ORDER: usize = 8;

fn pair_bit(i: usize, j: usize, n: usize) -> u32 {
    debug_assert!(i < j && j < n);
    // position of (i, j) in lexicographic order of pairs
    (i * (2 * n - i - 1) / 2 + (j - i - 1)) as u32
}

/// Canonical code of a graph with at most [`MAX_ORDER`] vertices, given as
/// adjacency masks.
pub fn canonical_code(adj: &[u16]) -> u64 {
    let n = adj.len();
    let deg = |v: usize| adj[v].count_ones();
    let sig = |v: usize| {
        let mut nd: Vec<u32> = (0..n).filter(|&w| adj[v] >> w & 1 == 1).map(deg).collect();
        nd.sort_unstable();
        (deg(v), nd)
    };
    let mut verts: Vec<usize> = (0..n).collect();
    verts.sort_by_key(|&v| sig(v));
    // class[p] = first position of the class position p belongs to
    let mut class_start = vec![0usize; n];
    for p in 1..n {
        class_start[p] = if sig(verts[p]) == sig(verts[p - 1]) { class_start[p - 1] } else { p };
    }
    let classes: Vec<Vec<usize>> = {
        let mut out: Vec<Vec<usize>> = Vec::new();
        for p in 0..n {
            if class_start[p] == p {
                out.push(Vec::new());
            }
            out.last_mut().unwrap().push(verts[p]);
        }
        out
    };
    let class_of_pos: Vec<usize> = {
        let mut out = Vec::with_capacity(n);
        for (c, members) in classes.iter().enumerate() {
            out.extend(core::iter::repeat_n(c, members.len()));
        }
        out
    };

    let mut best = u64::MAX;
    let mut perm = vec![0usize; n];
    let mut used = 0u16;
    fn rec(
        p: usize,
        n: usize,
        adj: &[u16],
        classes: &[Vec<usize>],
        class_of_pos: &[usize],
        perm: &mut [usize],
        used: &mut u16,
        best: &mut u64,
    ) {
        if p == n {
            let mut code = 0u64;
            for i in 0..n {
                for j in i + 1..n {
                    if adj[perm[i]] >> perm[j] & 1 == 1 {
                        code |= 1 << pair_bit(i, j, n);
                    }
                }
            }
            *best = (*best).min(code);
            return;
        }
        for &v in &classes[class_of_pos[p]] {
            if *used >> v & 1 == 0 {
                *used |= 1 << v;
                perm[p] = v;
                rec(p + 1, n, adj, classes, class_of_pos, perm, used, best);
                *used &= !(1 << v);
            }
        }
    }
    if n == 0 {
        return 0;
    }
    rec(0, n, adj, &classes, &class_of_pos, &mut perm, &mut used, &mut best);
    best
}

fn decode(code: u64, n: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if code >> pair_bit(i, j, n) & 1 == 1 {
                edges.push((i, j));
            }
        }
    }
    Graph::from_index_edges((1..=n).map(Label::from).collect(), &edges)
}

fn codes_by_order(max_n: usize) -> Vec<BTreeSet<u64>> {
    assert!(max_n <= MAX_ORDER, "catalog supports at most {MAX_ORDER} vertices");
    let mut levels = vec![BTreeSet::from([0u64])];
    for n in 1..=max_n {
        let mut next = BTreeSet::new();
        for &code in &levels[n - 1] {
            let prev = n - 1;
            let mut adj = vec![0u16; n];
            for i in 0..prev {
                for j in i + 1..prev {
                    if code >> pair_bit(i, j, prev) & 1 == 1 {
                        adj[i] |= 1 << j;
                        adj[j] |= 1 << i;
                    }
                }
            }
            for mask in 0u16..(1 << prev) {
                let mut a = adj.clone();
                a[prev] = mask;
                for (i, row) in a.iter_mut().enumerate().take(prev) {
                    if mask >> i & 1 == 1 {
                        *row |= 1 << prev;
                    }
                }
                next.insert(canonical_code(&a));
            }
        }
        levels.push(next);
    }
    levels
}

/// All graphs on exactly `n` vertices up to isomorphism, labelled `1..=n`.
pub fn graphs_of_order(n: usize) -> Vec<Graph> {
    codes_by_order(n)[n].iter().map(|&c| decode(c, n)).collect()
}

/// All graphs on at most `max_n` vertices up to isomorphism, including the
/// empty graph, ordered by order then code.
pub fn graphs_up_to(max_n: usize) -> Vec<Graph> {
    codes_by_order(max_n)
        .iter()
        .enumerate()
        .flat_map(|(n, codes)| codes.iter().map(move |&c| decode(c, n)))
        .collect()
}

/// Canonical code of a graph (at most [`MAX_ORDER`] vertices).
pub fn code_of(g: &Graph) -> u64 {
    assert!(g.order() <= MAX_ORDER);
    let adj: Vec<u16> = (0..g.order())
        .map(|v| g.neighbors(v).iter().fold(0u16, |m, w| m | 1 << w))
        .collect();
    canonical_code(&adj)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_known_sequence() {
        // Number of graphs on n unlabelled vertices: 1, 1, 2, 4, 11, 34, 156.
        let counts: Vec<usize> = codes_by_order(6).iter().map(BTreeSet::len).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156]);
    }

    #[test]
    fn code_is_label_invariant() {
        let a = Graph::from_edge_list(1..=4, [(1, 2), (2, 3), (3, 4)]).unwrap();
        let b = Graph::from_edge_list(1..=4, [(3, 1), (1, 4), (4, 2)]).unwrap();
        assert_eq!(code_of(&a), code_of(&b));
        let star = Graph::from_edge_list(1..=4, [(1, 2), (1, 3), (1, 4)]).unwrap();
        assert_ne!(code_of(&a), code_of(&star));
    }
}
