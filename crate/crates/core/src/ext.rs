use core::fmt;
use core::ops::Add;

/// A natural number or infinity. Used for distances and radii.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtNat {
    Fin(u64),
    Inf,
}

impl ExtNat {
    pub const ZERO: ExtNat = ExtNat::Fin(0);

    pub fn is_finite(self) -> bool {
        matches!(self, ExtNat::Fin(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            ExtNat::Fin(n) => Some(n),
            ExtNat::Inf => None,
        }
    }

    /// `|a - b|`, undefined (`None`) when both sides are infinite.
    pub fn abs_diff(self, other: ExtNat) -> Option<ExtNat> {
        match (self, other) {
            (ExtNat::Fin(a), ExtNat::Fin(b)) => Some(ExtNat::Fin(a.abs_diff(b))),
            (ExtNat::Inf, ExtNat::Inf) => None,
            _ => Some(ExtNat::Inf),
        }
    }
}

impl Add for ExtNat {
    type Output = ExtNat;

    fn add(self, rhs: ExtNat) -> ExtNat {
        match (self, rhs) {
            (ExtNat::Fin(a), ExtNat::Fin(b)) => ExtNat::Fin(a + b),
            _ => ExtNat::Inf,
        }
    }
}

impl Add<u64> for ExtNat {
    type Output = ExtNat;

    fn add(self, rhs: u64) -> ExtNat {
        self + ExtNat::Fin(rhs)
    }
}

impl From<u64> for ExtNat {
    fn from(n: u64) -> Self {
        ExtNat::Fin(n)
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Fin(n) => write!(f, "{n}"),
            ExtNat::Inf => f.write_str("inf"),
        }
    }
}
