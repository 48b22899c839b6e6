//! Named graph families.
//!
//! Infinite members (the infinite line, infinite regular trees) are only
//! available through finite truncations such as [`line`] and
//! [`truncated_regular_tree`].

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;
use crate::label::Label;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("bad parameter: {0}")]
    BadParam(&'static str),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("malformed family spec `{0}`")]
    Malformed(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Line(usize),
    Cycle(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    Star(usize),
    RandomTree { n: usize, seed: u64 },
    TruncatedRegularTree { degree: usize, depth: usize },
}

impl FamilySpec {
    pub fn build(&self) -> Result<Graph, FamilyError> {
        match *self {
            FamilySpec::Line(n) => line(n),
            FamilySpec::Cycle(n) => cycle(n),
            FamilySpec::Complete(n) => complete(n),
            FamilySpec::CompleteBipartite(m, n) => complete_bipartite(m, n),
            FamilySpec::Star(k) => star(k),
            FamilySpec::RandomTree { n, seed } => random_tree(n, seed),
            FamilySpec::TruncatedRegularTree { degree, depth } => truncated_regular_tree(degree, depth),
        }
    }
}

/// `tag:p1:p2...`, e.g. `line:5`, `kbipartite:3:3`, `tree:12:7`
/// (size, seed), `regtree:3:2` (degree, depth).
impl FromStr for FamilySpec {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, FamilyError> {
        let mut parts = s.split(':');
        let tag = parts.next().unwrap_or_default();
        let params: Vec<u64> = parts
            .map(|p| p.trim().parse::<u64>())
            .collect::<Result<_, _>>()
            .map_err(|_| FamilyError::Malformed(s.to_string()))?;
        let arity = |k: usize| {
            if params.len() == k {
                Ok(())
            } else {
                Err(FamilyError::Malformed(s.to_string()))
            }
        };
        let p = |i: usize| params[i] as usize;
        Ok(match tag {
            "line" => {
                arity(1)?;
                FamilySpec::Line(p(0))
            }
            "cycle" => {
                arity(1)?;
                FamilySpec::Cycle(p(0))
            }
            "complete" => {
                arity(1)?;
                FamilySpec::Complete(p(0))
            }
            "kbipartite" | "complete-bipartite" => {
                arity(2)?;
                FamilySpec::CompleteBipartite(p(0), p(1))
            }
            "star" => {
                arity(1)?;
                FamilySpec::Star(p(0))
            }
            "tree" | "random-tree" => {
                arity(2)?;
                FamilySpec::RandomTree {
                    n: p(0),
                    seed: params[1],
                }
            }
            "regtree" | "regular-tree" => {
                arity(2)?;
                FamilySpec::TruncatedRegularTree {
                    degree: p(0),
                    depth: p(1),
                }
            }
            other => return Err(FamilyError::UnknownFamily(other.to_string())),
        })
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Line(n) => write!(f, "line:{n}"),
            FamilySpec::Cycle(n) => write!(f, "cycle:{n}"),
            FamilySpec::Complete(n) => write!(f, "complete:{n}"),
            FamilySpec::CompleteBipartite(m, n) => write!(f, "kbipartite:{m}:{n}"),
            FamilySpec::Star(k) => write!(f, "star:{k}"),
            FamilySpec::RandomTree { n, seed } => write!(f, "tree:{n}:{seed}"),
            FamilySpec::TruncatedRegularTree { degree, depth } => write!(f, "regtree:{degree}:{depth}"),
        }
    }
}

fn labels(n: usize) -> Vec<Label> {
    (1..=n).map(Label::from).collect()
}

/// Path on `1..=n`, `n >= 2`.
pub fn line(n: usize) -> Result<Graph, FamilyError> {
    if n < 2 {
        return Err(FamilyError::BadParam("line needs n >= 2"));
    }
    let edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    Ok(Graph::from_index_edges(labels(n), &edges))
}

/// Cycle on `1..=n`, `n >= 3`.
pub fn cycle(n: usize) -> Result<Graph, FamilyError> {
    if n < 3 {
        return Err(FamilyError::BadParam("cycle needs n >= 3"));
    }
    let mut edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    edges.push((0, n - 1));
    Ok(Graph::from_index_edges(labels(n), &edges))
}

pub fn complete(n: usize) -> Result<Graph, FamilyError> {
    if n < 1 {
        return Err(FamilyError::BadParam("complete graph needs n >= 1"));
    }
    let edges: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    Ok(Graph::from_index_edges(labels(n), &edges))
}

/// `K_{m,n}` with sides `1..=m` and `m+1..=m+n`.
pub fn complete_bipartite(m: usize, n: usize) -> Result<Graph, FamilyError> {
    if m < 1 || n < 1 {
        return Err(FamilyError::BadParam("complete bipartite graph needs m, n >= 1"));
    }
    let edges: Vec<(usize, usize)> = (0..m).flat_map(|i| (m..m + n).map(move |j| (i, j))).collect();
    Ok(Graph::from_index_edges(labels(m + n), &edges))
}

/// `K_{1,k}` with centre `1`.
pub fn star(k: usize) -> Result<Graph, FamilyError> {
    if k < 1 {
        return Err(FamilyError::BadParam("star needs k >= 1"));
    }
    complete_bipartite(1, k)
}

/// Uniformly random labelled tree on `1..=n`, decoded from a Prüfer
/// sequence drawn from a ChaCha8 stream seeded with `seed`.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph, FamilyError> {
    if n < 1 {
        return Err(FamilyError::BadParam("random tree needs n >= 1"));
    }
    if n == 1 {
        return Ok(Graph::from_index_edges(labels(1), &[]));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    Ok(Graph::from_index_edges(labels(n), &prufer_decode(n, &code)))
}

/// Edges of the tree on `0..n` with Prüfer sequence `code` (length `n - 2`).
pub fn prufer_decode(n: usize, code: &[usize]) -> Vec<(usize, usize)> {
    debug_assert_eq!(code.len() + 2, n);
    let mut degree = vec![1usize; n];
    for &x in code {
        degree[x] += 1;
    }
    let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &x in code {
        let leaf = leaves.pop_first().expect("a leaf always exists");
        edges.push((leaf.min(x), leaf.max(x)));
        degree[x] -= 1;
        if degree[x] == 1 {
            leaves.insert(x);
        }
    }
    let a = leaves.pop_first().expect("two leaves remain");
    let b = leaves.pop_first().expect("two leaves remain");
    edges.push((a, b));
    edges
}

/// Rooted tree cut at `depth`: the root and every non-leaf node have
/// `degree - 1` children. Vertices are numbered breadth-first from `1`.
pub fn truncated_regular_tree(degree: usize, depth: usize) -> Result<Graph, FamilyError> {
    if degree < 2 {
        return Err(FamilyError::BadParam("regular tree needs degree >= 2"));
    }
    if depth < 1 {
        return Err(FamilyError::BadParam("regular tree needs depth >= 1"));
    }
    let branching = degree - 1;
    let mut edges = Vec::new();
    let mut level = vec![0usize];
    let mut next_id = 1;
    for _ in 0..depth {
        let mut next = Vec::with_capacity(level.len() * branching);
        for &parent in &level {
            for _ in 0..branching {
                edges.push((parent, next_id));
                next.push(next_id);
                next_id += 1;
            }
        }
        level = next;
    }
    Ok(Graph::from_index_edges(labels(next_id), &edges))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_rejected() {
        assert!(line(1).is_err());
        assert!(cycle(2).is_err());
        assert!(complete(0).is_err());
        assert!(star(0).is_err());
        assert!(truncated_regular_tree(1, 2).is_err());
        assert!(truncated_regular_tree(3, 0).is_err());
        assert!(random_tree(0, 1).is_err());
    }

    #[test]
    fn small_members() {
        assert_eq!(line(2).unwrap().size(), 1);
        assert_eq!(cycle(3).unwrap(), complete(3).unwrap());
        assert_eq!(complete(1).unwrap().order(), 1);
        assert_eq!(star(3).unwrap(), complete_bipartite(1, 3).unwrap());
        assert_eq!(truncated_regular_tree(3, 1).unwrap().size(), 2);
        assert_eq!(truncated_regular_tree(3, 2).unwrap().order(), 7);
        assert_eq!(random_tree(1, 9).unwrap().order(), 1);
    }

    #[test]
    fn spec_strings() {
        for s in ["line:5", "cycle:4", "complete:6", "kbipartite:3:3", "star:3", "tree:12:7", "regtree:3:2"] {
            let spec: FamilySpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert!(matches!("mobius:3".parse::<FamilySpec>(), Err(FamilyError::UnknownFamily(_))));
        assert!(matches!("line:x".parse::<FamilySpec>(), Err(FamilyError::Malformed(_))));
        assert!(matches!("line:3:4".parse::<FamilySpec>(), Err(FamilyError::Malformed(_))));
    }

    #[test]
    fn prufer_known_code() {
        // Code [3, 3, 3] on 5 vertices is the star centred at 3.
        let mut e = prufer_decode(5, &[3, 3, 3]);
        e.sort();
        assert_eq!(e, vec![(0, 3), (1, 3), (2, 3), (3, 4)]);
    }
}
