//! Symbolic factor expressions and their rewrite system.
//!
//! An expression is built from the hyperfinite factor `R`, interpolated free
//! group factors `L(F_s)` with rational `s > 1`, tensor products, free
//! products, a trivial unit, and opaque graph-product leaves for graphs that
//! neither split into components nor into a join.
//!
//! Rewrite rules (each a deterministic function of one node):
//!
//! | rule                  | effect                                           |
//! |-----------------------|--------------------------------------------------|
//! | `unit`                | drop trivial factors from a product              |
//! | `flatten`             | splice nested products of the same kind          |
//! | `sort`                | canonical child order                            |
//! | `collapse`            | empty product → unit, unary product → its child |
//! | `tensor-idempotent-r` | `R ⊗ R ≅ R`                                      |
//! | `free-absorb-r`       | `L(F_s) * R ≅ L(F_{s+1})`                        |
//! | `free-power-r`        | `R^{*n} ≅ L(F_n)`                                |
//! | `free-additive`       | `L(F_s) * L(F_t) ≅ L(F_{s+t})` (extension)       |
//! | `amplify`             | `L(F_s) ⊗ L(F_t) ≅ L(F_s)^√r ⊗ L(F_t)^{1/√r}`    |
//!
//! `free-additive`, and `free-absorb-r` on a non-integer parameter, go beyond
//! the integer identities and are marked as extensions; strict mode skips
//! them. Every rewrite is recorded in a [`RewriteTrace`] that
//! [`RewriteTrace::replay`] re-executes and checks step by step.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_rational::Ratio;

use crate::graph::Graph;
use crate::iso::{fingerprint, Fingerprint};

/// Exact rational numbers.
pub type Rational = Ratio<i128>;

pub fn rational(n: i128, d: i128) -> Rational {
    Ratio::new(n, d)
}

pub fn integer(n: i128) -> Rational {
    Ratio::from_integer(n)
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FactorError {
    #[error("domain error: {0}")]
    DomainError(&'static str),
}

/// An irreducible graph-product leaf.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OpaqueLeaf {
    pub graph: Graph,
    pub fingerprint: Fingerprint,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FactorExpr {
    /// The trivial algebra, unit of both products.
    Unit,
    /// The hyperfinite II₁ factor.
    R,
    /// `L(F_s)`, `s > 1`.
    Fgf(Rational),
    Tensor(Vec<FactorExpr>),
    Free(Vec<FactorExpr>),
    Opaque(Box<OpaqueLeaf>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Tensor,
    Free,
}

impl FactorExpr {
    pub fn fgf(s: Rational) -> Result<FactorExpr, FactorError> {
        if s <= integer(1) {
            return Err(FactorError::DomainError("free group factor parameter must exceed 1"));
        }
        Ok(FactorExpr::Fgf(s))
    }

    pub fn opaque(graph: Graph) -> FactorExpr {
        let fingerprint = fingerprint(&graph);
        FactorExpr::Opaque(Box::new(OpaqueLeaf { graph, fingerprint }))
    }

    fn rank(&self) -> u8 {
        match self {
            FactorExpr::Unit => 0,
            FactorExpr::R => 1,
            FactorExpr::Fgf(_) => 2,
            FactorExpr::Tensor(_) => 3,
            FactorExpr::Free(_) => 4,
            FactorExpr::Opaque(_) => 5,
        }
    }

    fn product(&self) -> Option<(Kind, &Vec<FactorExpr>)> {
        match self {
            FactorExpr::Tensor(c) => Some((Kind::Tensor, c)),
            FactorExpr::Free(c) => Some((Kind::Free, c)),
            _ => None,
        }
    }

    fn fgf_param(&self) -> Option<Rational> {
        match self {
            FactorExpr::Fgf(s) => Some(*s),
            _ => None,
        }
    }

    /// Subterm at a child-index path.
    pub fn at(&self, path: &[usize]) -> Option<&FactorExpr> {
        match path.split_first() {
            None => Some(self),
            Some((&i, rest)) => self.product()?.1.get(i)?.at(rest),
        }
    }

    fn at_mut(&mut self, path: &[usize]) -> Option<&mut FactorExpr> {
        match path.split_first() {
            None => Some(self),
            Some((&i, rest)) => match self {
                FactorExpr::Tensor(c) | FactorExpr::Free(c) => c.get_mut(i)?.at_mut(rest),
                _ => None,
            },
        }
    }

    /// True iff some node satisfies `pred`.
    pub fn any(&self, pred: &impl Fn(&FactorExpr) -> bool) -> bool {
        pred(self) || self.product().is_some_and(|(_, c)| c.iter().any(|x| x.any(pred)))
    }
}

fn build(kind: Kind, children: Vec<FactorExpr>) -> FactorExpr {
    match kind {
        Kind::Tensor => FactorExpr::Tensor(children),
        Kind::Free => FactorExpr::Free(children),
    }
}

fn sorted(mut children: Vec<FactorExpr>) -> Vec<FactorExpr> {
    children.sort();
    children
}

/// Canonical order: `Unit < R < L(F_s)` (by `s`) `< Tensor < Free < Opaque`
/// (by fingerprint, then labels and edges).
impl Ord for FactorExpr {
    fn cmp(&self, other: &Self) -> Ordering {
        use FactorExpr::*;
        match (self, other) {
            (Fgf(a), Fgf(b)) => a.cmp(b),
            (Tensor(a), Tensor(b)) | (Free(a), Free(b)) => a.cmp(b),
            (Opaque(a), Opaque(b)) => a
                .fingerprint
                .cmp(&b.fingerprint)
                .then_with(|| a.graph.labels().cmp(b.graph.labels()))
                .then_with(|| a.graph.edges().cmp(&b.graph.edges())),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for FactorExpr {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn fmt_rational(f: &mut fmt::Formatter<'_>, r: &Rational) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Text form: `1`, `R`, `LF(7/2)`, `T[..]`, `F[..]`, `GP{<edge list>}` with
/// edge-list lines separated by `;`.
impl fmt::Display for FactorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorExpr::Unit => f.write_str("1"),
            FactorExpr::R => f.write_str("R"),
            FactorExpr::Fgf(s) => {
                f.write_str("LF(")?;
                fmt_rational(f, s)?;
                f.write_str(")")
            }
            FactorExpr::Tensor(c) | FactorExpr::Free(c) => {
                f.write_str(if matches!(self, FactorExpr::Tensor(_)) { "T[" } else { "F[" })?;
                for (i, x) in c.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("]")
            }
            FactorExpr::Opaque(leaf) => write!(f, "GP{{{}}}", leaf.graph.to_edge_list("; ")),
        }
    }
}

// ---------------------------------------------------------------------------
// Amplification

/// Parameter of `L(F_s)^t` with `r = t²`: `1 + (s - 1) / r`.
pub fn amplify_fgf(s: Rational, r: Rational) -> Result<Rational, FactorError> {
    if s <= integer(1) {
        return Err(FactorError::DomainError("free group factor parameter must exceed 1"));
    }
    if r <= integer(0) {
        return Err(FactorError::DomainError("amplification must be positive"));
    }
    Ok(integer(1) + (s - integer(1)) / r)
}

// ---------------------------------------------------------------------------
// Rules

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    DropUnit,
    Flatten,
    Sort,
    Collapse,
    TensorIdempotentR,
    FreeAbsorbR,
    FreePowerR,
    FreeAdditive,
    /// Amplify child `left` by `√ratio` and child `right` by `1/√ratio` in a
    /// tensor product of free group factors.
    Amplify {
        left: usize,
        right: usize,
        ratio: Rational,
    },
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::DropUnit => "unit",
            Rule::Flatten => "flatten",
            Rule::Sort => "sort",
            Rule::Collapse => "collapse",
            Rule::TensorIdempotentR => "tensor-idempotent-r",
            Rule::FreeAbsorbR => "free-absorb-r",
            Rule::FreePowerR => "free-power-r",
            Rule::FreeAdditive => "free-additive",
            Rule::Amplify { .. } => "amplify",
        }
    }

    /// Rules tried by the simplifier, in priority order.
    const SIMPLIFIERS: [Rule; 8] = [
        Rule::DropUnit,
        Rule::Flatten,
        Rule::Sort,
        Rule::Collapse,
        Rule::TensorIdempotentR,
        Rule::FreeAbsorbR,
        Rule::FreePowerR,
        Rule::FreeAdditive,
    ];

    /// Index of the free group factor `free-absorb-r` grows: the first one
    /// with an integer parameter, else the first one.
    fn absorb_target(children: &[FactorExpr]) -> Option<usize> {
        let fgfs = || children.iter().enumerate().filter_map(|(i, c)| c.fgf_param().map(|s| (i, s)));
        fgfs().find(|(_, s)| s.is_integer()).or_else(|| fgfs().next()).map(|(i, _)| i)
    }

    /// Whether applying this rule to `node` uses an identity beyond the
    /// integer-parameter ones.
    pub fn is_extension(&self, node: &FactorExpr) -> bool {
        match self {
            Rule::FreeAdditive => true,
            Rule::FreeAbsorbR => match node {
                FactorExpr::Free(c) => Rule::absorb_target(c).is_some_and(|i| !c[i].fgf_param().unwrap().is_integer()),
                _ => false,
            },
            _ => false,
        }
    }

    /// The rewritten node, or `None` when the rule does not apply.
    pub fn apply(&self, node: &FactorExpr) -> Option<FactorExpr> {
        let (kind, children) = node.product()?;
        match self {
            Rule::DropUnit => {
                if !children.contains(&FactorExpr::Unit) {
                    return None;
                }
                let kept = children.iter().filter(|c| **c != FactorExpr::Unit).cloned().collect();
                Some(build(kind, kept))
            }
            Rule::Flatten => {
                if !children.iter().any(|c| c.product().is_some_and(|(k, _)| k == kind)) {
                    return None;
                }
                let mut out = Vec::new();
                for c in children {
                    match c.product() {
                        Some((k, inner)) if k == kind => out.extend(inner.iter().cloned()),
                        _ => out.push(c.clone()),
                    }
                }
                Some(build(kind, sorted(out)))
            }
            Rule::Sort => {
                if children.windows(2).all(|w| w[0] <= w[1]) {
                    return None;
                }
                Some(build(kind, sorted(children.clone())))
            }
            Rule::Collapse => match children.len() {
                0 => Some(FactorExpr::Unit),
                1 => Some(children[0].clone()),
                _ => None,
            },
            Rule::TensorIdempotentR => {
                let rs = children.iter().filter(|c| **c == FactorExpr::R).count();
                if kind != Kind::Tensor || rs < 2 {
                    return None;
                }
                let mut out: Vec<FactorExpr> = children.iter().filter(|c| **c != FactorExpr::R).cloned().collect();
                out.push(FactorExpr::R);
                Some(build(kind, sorted(out)))
            }
            Rule::FreeAbsorbR => {
                if kind != Kind::Free {
                    return None;
                }
                let r_at = children.iter().position(|c| *c == FactorExpr::R)?;
                let target = Rule::absorb_target(children)?;
                let s = children[target].fgf_param()?;
                let mut out = children.clone();
                out[target] = FactorExpr::Fgf(s + integer(1));
                out.remove(r_at);
                Some(build(kind, sorted(out)))
            }
            Rule::FreePowerR => {
                let rs = children.iter().filter(|c| **c == FactorExpr::R).count();
                if kind != Kind::Free || rs < 2 || children.iter().any(|c| c.fgf_param().is_some()) {
                    return None;
                }
                let mut out: Vec<FactorExpr> = children.iter().filter(|c| **c != FactorExpr::R).cloned().collect();
                out.push(FactorExpr::Fgf(integer(rs as i128)));
                Some(build(kind, sorted(out)))
            }
            Rule::FreeAdditive => {
                if kind != Kind::Free {
                    return None;
                }
                let mut idx = children.iter().enumerate().filter(|(_, c)| c.fgf_param().is_some()).map(|(i, _)| i);
                let (a, b) = (idx.next()?, idx.next()?);
                let sum = children[a].fgf_param()? + children[b].fgf_param()?;
                let mut out = children.clone();
                out[a] = FactorExpr::Fgf(sum);
                out.remove(b);
                Some(build(kind, sorted(out)))
            }
            Rule::Amplify { left, right, ratio } => {
                if kind != Kind::Tensor || left == right {
                    return None;
                }
                let s = children.get(*left)?.fgf_param()?;
                let t = children.get(*right)?.fgf_param()?;
                let mut out = children.clone();
                out[*left] = FactorExpr::Fgf(amplify_fgf(s, *ratio).ok()?);
                out[*right] = FactorExpr::Fgf(amplify_fgf(t, ratio.recip()).ok()?);
                Some(build(kind, sorted(out)))
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Traces

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RewriteStep {
    pub rule: Rule,
    /// Child-index path from the root to the rewritten node.
    pub path: Vec<usize>,
    pub before: FactorExpr,
    pub after: FactorExpr,
    pub extension: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RewriteTrace {
    pub steps: Vec<RewriteStep>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("replay failed at step {step}: {reason}")]
pub struct ReplayError {
    pub step: usize,
    pub reason: &'static str,
}

impl RewriteTrace {
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn uses_extension(&self) -> bool {
        self.steps.iter().any(|s| s.extension)
    }

    /// Re-applies every step to `source`, checking that the recorded
    /// subterm is present and that the rule reproduces the recorded result.
    pub fn replay(&self, source: &FactorExpr) -> Result<FactorExpr, ReplayError> {
        let mut expr = source.clone();
        for (step, s) in self.steps.iter().enumerate() {
            let fail = |reason| ReplayError { step, reason };
            let node = expr.at_mut(&s.path).ok_or(fail("path does not exist"))?;
            if *node != s.before {
                return Err(fail("subterm differs from the recorded one"));
            }
            let after = s.rule.apply(node).ok_or(fail("rule does not apply"))?;
            if after != s.after {
                return Err(fail("rule result differs from the recorded one"));
            }
            if s.rule.is_extension(node) != s.extension {
                return Err(fail("extension flag mismatch"));
            }
            *node = after;
        }
        Ok(expr)
    }
}

// ---------------------------------------------------------------------------
// Simplification

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplified {
    pub expr: FactorExpr,
    pub trace: RewriteTrace,
}

pub fn simplify(e: &FactorExpr) -> Simplified {
    simplify_with(e, false)
}

/// Normal form under the rewrite rules; `strict` skips extension steps.
pub fn simplify_with(e: &FactorExpr, strict: bool) -> Simplified {
    let mut trace = RewriteTrace::default();
    let mut path = Vec::new();
    let expr = normalize(e.clone(), &mut path, strict, &mut trace);
    Simplified { expr, trace }
}

fn normalize(node: FactorExpr, path: &mut Vec<usize>, strict: bool, trace: &mut RewriteTrace) -> FactorExpr {
    let split = match node {
        FactorExpr::Tensor(c) => Ok((Kind::Tensor, c)),
        FactorExpr::Free(c) => Ok((Kind::Free, c)),
        leaf => Err(leaf),
    };
    let mut node = match split {
        Ok((kind, c)) => {
            let mut out = Vec::with_capacity(c.len());
            for (i, child) in c.into_iter().enumerate() {
                path.push(i);
                out.push(normalize(child, path, strict, trace));
                path.pop();
            }
            build(kind, out)
        }
        Err(leaf) => leaf,
    };
    'rewrite: loop {
        for rule in Rule::SIMPLIFIERS {
            let extension = rule.is_extension(&node);
            if strict && extension {
                continue;
            }
            if let Some(after) = rule.apply(&node) {
                trace.steps.push(RewriteStep {
                    rule,
                    path: path.clone(),
                    before: node,
                    after: after.clone(),
                    extension,
                });
                node = after;
                continue 'rewrite;
            }
        }
        return node;
    }
}

// ---------------------------------------------------------------------------
// Graphs to expressions

/// Raw decomposition: disconnected graphs split into a free product over
/// components, connected graphs with disconnected complement into a tensor
/// product over the complement's components; single vertices are `R`, the
/// empty graph is the unit, everything else an opaque leaf.
pub fn decompose(g: &Graph) -> FactorExpr {
    match g.order() {
        0 => return FactorExpr::Unit,
        1 => return FactorExpr::R,
        _ => {}
    }
    let comps = g.components();
    if comps.len() > 1 {
        return FactorExpr::Free(comps.iter().map(|c| decompose(&g.induced(c))).collect());
    }
    let co = g.complement().components();
    if co.len() > 1 {
        return FactorExpr::Tensor(co.iter().map(|c| decompose(&g.induced(c))).collect());
    }
    FactorExpr::opaque(g.clone())
}

pub fn graph_to_expression(g: &Graph) -> FactorExpr {
    simplify(&decompose(g)).expr
}

/// Every connected component is complete.
pub fn is_quasi_strongly_solid(g: &Graph) -> bool {
    g.components().iter().all(|c| g.is_complete(c))
}

// ---------------------------------------------------------------------------
// Certified equality

/// For a tensor product: number of free group factor children, the product
/// of `s_i - 1` over them, and the remaining children.
pub fn tensor_invariant(e: &FactorExpr) -> Option<(usize, Rational, Vec<FactorExpr>)> {
    let FactorExpr::Tensor(children) = e else {
        return None;
    };
    let mut count = 0;
    let mut product = integer(1);
    let mut rest = Vec::new();
    for c in children {
        match c.fgf_param() {
            Some(s) => {
                count += 1;
                product *= s - integer(1);
            }
            None => rest.push(c.clone()),
        }
    }
    Some((count, product, rest))
}

/// A rewrite trace turning `e1` into `e2` when the two are certifiably
/// isomorphic: identical expressions, or tensor products whose free group
/// factor children agree in number and in the product of `s_i - 1` while
/// the other children coincide. `None` means no certificate was found, not
/// that the factors differ.
pub fn provably_equal(e1: &FactorExpr, e2: &FactorExpr) -> Option<RewriteTrace> {
    if e1 == e2 {
        return Some(RewriteTrace::default());
    }
    let (n1, p1, rest1) = tensor_invariant(e1)?;
    let (n2, p2, rest2) = tensor_invariant(e2)?;
    if n1 != n2 || p1 != p2 || rest1 != rest2 || n1 < 2 {
        return None;
    }
    let mut targets: Vec<Rational> = e2.product()?.1.iter().filter_map(FactorExpr::fgf_param).collect();
    targets.sort();
    let mut pending: Vec<Rational> = e1.product()?.1.iter().filter_map(FactorExpr::fgf_param).collect();
    pending.sort();

    let mut trace = RewriteTrace::default();
    let mut current = e1.clone();
    for &t in &targets[..targets.len() - 1] {
        if let Some(i) = pending.iter().position(|&p| p == t) {
            pending.remove(i);
            continue;
        }
        let (x, y) = (pending[0], pending[1]);
        let ratio = (x - integer(1)) / (t - integer(1));
        let children = current.product()?.1;
        let left = children.iter().position(|c| c.fgf_param() == Some(x))?;
        let right = children
            .iter()
            .enumerate()
            .position(|(i, c)| i != left && c.fgf_param() == Some(y))?;
        let rule = Rule::Amplify { left, right, ratio };
        let after = rule.apply(&current)?;
        trace.steps.push(RewriteStep {
            rule,
            path: Vec::new(),
            before: current,
            after: after.clone(),
            extension: false,
        });
        current = after;
        let y_new = amplify_fgf(y, ratio.recip()).ok()?;
        pending.drain(..2);
        pending.push(y_new);
        pending.sort();
    }
    (current == *e2).then_some(trace)
}
