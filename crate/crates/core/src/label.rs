use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use core::fmt;

/// An opaque vertex label. Integers sort numerically and before names.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Int(i64),
    Name(String),
}

impl Label {
    /// Parses a token, preferring the integer reading.
    pub fn parse(token: &str) -> Label {
        match token.parse::<i64>() {
            Ok(n) if n.to_string() == token => Label::Int(n),
            _ => Label::Name(token.to_string()),
        }
    }
}

impl From<i64> for Label {
    fn from(n: i64) -> Self {
        Label::Int(n)
    }
}

impl From<i32> for Label {
    fn from(n: i32) -> Self {
        Label::Int(n as i64)
    }
}

impl From<usize> for Label {
    fn from(n: usize) -> Self {
        Label::Int(n as i64)
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label::parse(s)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Int(n) => write!(f, "{n}"),
            Label::Name(s) => f.write_str(s),
        }
    }
}

/// A set of vertex labels, ordered by the label order.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(pub BTreeSet<Label>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(BTreeSet::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, l: &Label) -> bool {
        self.0.contains(l)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Label> {
        self.0.iter()
    }
}

impl<L: Into<Label>> FromIterator<L> for VertexSet {
    fn from_iter<I: IntoIterator<Item = L>>(iter: I) -> Self {
        VertexSet(iter.into_iter().map(Into::into).collect())
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = &'a Label;
    type IntoIter = alloc::collections::btree_set::Iter<'a, Label>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_order() {
        assert!(Label::parse("2") < Label::parse("10"));
        assert!(Label::parse("10") < Label::parse("a"));
        assert_eq!(Label::parse("007"), Label::Name("007".into()));
        assert_eq!(Label::parse("-3"), Label::Int(-3));
    }

    #[test]
    fn display_set() {
        let s: VertexSet = [4, 2].into_iter().collect();
        assert_eq!(alloc::format!("{s}"), "{2, 4}");
    }
}
