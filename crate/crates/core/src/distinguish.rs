//! Verdicts on whether two graphs give isomorphic graph-product factors.
//!
//! The decision ladder, first hit wins:
//!
//! 1. the graphs are isomorphic: isomorphic factors, with the mapping;
//! 2. the simplified expressions are certifiably equal: isomorphic factors,
//!    with a replayable certificate;
//! 3. both graphs are connected and H-rigid and their internal graphs are
//!    not isomorphic: non-isomorphic factors (internal-graph invariant);
//! 4. both connected and H-rigid with radii differing by two or more:
//!    non-isomorphic factors (radius bound). Implied by step 3, kept as an
//!    independent cross-check;
//! 5. otherwise `Unknown` when at least one graph meets the hypotheses,
//!    `Inapplicable` when neither does.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::ext::ExtNat;
use crate::factor::{decompose, provably_equal, simplify, FactorExpr, RewriteTrace};
use crate::graph::Graph;
use crate::internal::{internal_graph, is_h_rigid, HRigidityReport};
use crate::iso::{are_isomorphic, fingerprint, verify_mapping};
use crate::label::Label;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VerdictKind {
    NotIsomorphic,
    IsomorphicFactors,
    Unknown,
    Inapplicable,
}

impl VerdictKind {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictKind::NotIsomorphic => "NOT_ISOMORPHIC",
            VerdictKind::IsomorphicFactors => "ISOMORPHIC_FACTORS",
            VerdictKind::Unknown => "UNKNOWN",
            VerdictKind::Inapplicable => "INAPPLICABLE",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Basis {
    GraphIsomorphic,
    FactorCalculus,
    /// Isomorphic factors over H-rigid graphs have isomorphic internal graphs.
    InternalGraph,
    /// Isomorphic factors over H-rigid graphs have radii within one.
    RadiusBound,
    None,
}

impl Basis {
    pub fn as_str(self) -> &'static str {
        match self {
            Basis::GraphIsomorphic => "GRAPH_ISOMORPHIC",
            Basis::FactorCalculus => "FACTOR_CALCULUS",
            Basis::InternalGraph => "INTERNAL_GRAPH",
            Basis::RadiusBound => "RADIUS_BOUND",
            Basis::None => "NONE",
        }
    }
}

/// Replayable proof that two graphs give isomorphic factors: both raw
/// decompositions simplify to normal forms joined by `bridge`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorCertificate {
    pub raw: [FactorExpr; 2],
    pub simplification: [RewriteTrace; 2],
    pub normal: [FactorExpr; 2],
    pub bridge: RewriteTrace,
}

impl FactorCertificate {
    pub fn replays(&self) -> bool {
        let ok = |i: usize| self.simplification[i].replay(&self.raw[i]).as_ref() == Ok(&self.normal[i]);
        ok(0) && ok(1) && self.bridge.replay(&self.normal[0]).as_ref() == Ok(&self.normal[1])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    Mapping(BTreeMap<Label, Label>),
    Certificate(FactorCertificate),
    /// Non-isomorphic internal graphs; `fingerprints_differ` tells whether
    /// the invariant summary already separates them or the exact search was
    /// exhausted.
    InternalGraphs {
        internal: [Graph; 2],
        fingerprints_differ: bool,
    },
    Radii {
        radius: [ExtNat; 2],
        internal: [Graph; 2],
    },
    Hypotheses {
        failures: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub basis: Basis,
    pub evidence: Evidence,
    pub reports: [HRigidityReport; 2],
}

fn meets_hypotheses(r: &HRigidityReport) -> bool {
    r.connected && r.h_rigid && r.int_graph_well_defined()
}

fn hypothesis_failures(which: &str, r: &HRigidityReport) -> Vec<String> {
    let mut out = Vec::new();
    if !r.connected {
        out.push(alloc::format!("{which}: not connected"));
    }
    if !r.internal_sets_are_vertices {
        out.push(alloc::format!("{which}: some internal set is not a single vertex"));
    }
    if !r.link_condition {
        out.push(alloc::format!("{which}: a neighbourhood is not a disjoint union of cliques"));
    }
    for note in &r.notes {
        out.push(alloc::format!("{which}: {note}"));
    }
    out
}

pub fn distinguish(g1: &Graph, g2: &Graph) -> Verdict {
    let reports = [is_h_rigid(g1), is_h_rigid(g2)];

    let iso = are_isomorphic(g1, g2);
    if let Some(mapping) = iso.mapping {
        return Verdict {
            kind: VerdictKind::IsomorphicFactors,
            basis: Basis::GraphIsomorphic,
            evidence: Evidence::Mapping(mapping),
            reports,
        };
    }

    let raw = [decompose(g1), decompose(g2)];
    let simplified = [simplify(&raw[0]), simplify(&raw[1])];
    if let Some(bridge) = provably_equal(&simplified[0].expr, &simplified[1].expr) {
        let [s0, s1] = simplified;
        return Verdict {
            kind: VerdictKind::IsomorphicFactors,
            basis: Basis::FactorCalculus,
            evidence: Evidence::Certificate(FactorCertificate {
                raw,
                normal: [s0.expr, s1.expr],
                simplification: [s0.trace, s1.trace],
                bridge,
            }),
            reports,
        };
    }

    let applicable = [meets_hypotheses(&reports[0]), meets_hypotheses(&reports[1])];
    if applicable[0] && applicable[1] {
        let internal = [internal_graph(g1), internal_graph(g2)];
        if !are_isomorphic(&internal[0], &internal[1]).isomorphic {
            let fingerprints_differ = fingerprint(&internal[0]) != fingerprint(&internal[1]);
            return Verdict {
                kind: VerdictKind::NotIsomorphic,
                basis: Basis::InternalGraph,
                evidence: Evidence::InternalGraphs {
                    internal,
                    fingerprints_differ,
                },
                reports,
            };
        }
        let radius = [g1.radius(), g2.radius()];
        if radius[0].abs_diff(radius[1]).is_some_and(|d| d >= ExtNat::Fin(2)) {
            return Verdict {
                kind: VerdictKind::NotIsomorphic,
                basis: Basis::RadiusBound,
                evidence: Evidence::Radii { radius, internal },
                reports,
            };
        }
    }

    let mut failures = hypothesis_failures("first", &reports[0]);
    failures.extend(hypothesis_failures("second", &reports[1]));
    let kind = if applicable.iter().any(|&a| a) {
        VerdictKind::Unknown
    } else {
        VerdictKind::Inapplicable
    };
    Verdict {
        kind,
        basis: Basis::None,
        evidence: Evidence::Hypotheses { failures },
        reports,
    }
}

impl Verdict {
    /// Checks the verdict's evidence against the two graphs it was computed
    /// for. Returns a description of the first problem found.
    pub fn audit(&self, g1: &Graph, g2: &Graph) -> Result<(), &'static str> {
        match (self.kind, self.basis, &self.evidence) {
            (VerdictKind::IsomorphicFactors, Basis::GraphIsomorphic, Evidence::Mapping(m)) => {
                verify_mapping(g1, g2, m).then_some(()).ok_or("mapping is not an isomorphism")
            }
            (VerdictKind::IsomorphicFactors, Basis::FactorCalculus, Evidence::Certificate(c)) => {
                if c.raw[0] != decompose(g1) || c.raw[1] != decompose(g2) {
                    return Err("certificate does not start from the graphs' decompositions");
                }
                c.replays().then_some(()).ok_or("certificate does not replay")
            }
            (VerdictKind::NotIsomorphic, basis, evidence) => {
                if !self.reports.iter().all(meets_hypotheses) {
                    return Err("separation without two connected H-rigid reports");
                }
                if self.reports[0] != is_h_rigid(g1) || self.reports[1] != is_h_rigid(g2) {
                    return Err("attached reports do not match the graphs");
                }
                match (basis, evidence) {
                    (Basis::InternalGraph, Evidence::InternalGraphs { internal, .. }) => {
                        if internal[0] != internal_graph(g1) || internal[1] != internal_graph(g2) {
                            return Err("internal graphs do not match");
                        }
                        (!are_isomorphic(&internal[0], &internal[1]).isomorphic)
                            .then_some(())
                            .ok_or("internal graphs are isomorphic")
                    }
                    (Basis::RadiusBound, Evidence::Radii { radius, .. }) => {
                        let gap = radius[0].abs_diff(radius[1]);
                        (radius[0] == g1.radius() && radius[1] == g2.radius() && gap.is_some_and(|d| d >= ExtNat::Fin(2)))
                            .then_some(())
                            .ok_or("radii do not separate")
                    }
                    _ => Err("separation with an unsupported basis"),
                }
            }
            (VerdictKind::Unknown | VerdictKind::Inapplicable, Basis::None, Evidence::Hypotheses { .. }) => Ok(()),
            _ => Err("verdict kind, basis and evidence do not fit together"),
        }
    }
}

/// Pairwise verdicts over a list of graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogReport {
    /// `kinds[i][j]` for every ordered pair; the diagonal is
    /// `IsomorphicFactors`.
    pub kinds: Vec<Vec<VerdictKind>>,
    /// Classes of graphs joined by `IsomorphicFactors` verdicts, each sorted,
    /// ordered by least member.
    pub classes: Vec<Vec<usize>>,
    /// Every `NotIsomorphic` pair `i < j` with its basis.
    pub separations: Vec<(usize, usize, Basis)>,
}

pub fn classify_catalog(graphs: &[Graph]) -> CatalogReport {
    let n = graphs.len();
    let mut kinds = vec![vec![VerdictKind::IsomorphicFactors; n]; n];
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut separations = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let v = distinguish(&graphs[i], &graphs[j]);
            kinds[i][j] = v.kind;
            kinds[j][i] = v.kind;
            match v.kind {
                VerdictKind::IsomorphicFactors => {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a.max(b)] = a.min(b);
                }
                VerdictKind::NotIsomorphic => separations.push((i, j, v.basis)),
                _ => {}
            }
        }
    }
    let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        by_root.entry(r).or_default().push(i);
    }
    let mut classes: Vec<Vec<usize>> = by_root.into_values().collect();
    classes.sort_by_key(|c| c[0]);
    CatalogReport {
        kinds,
        classes,
        separations,
    }
}
