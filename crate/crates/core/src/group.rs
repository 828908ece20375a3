use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Gamma0,
    Gamma1,
    #[serde(rename = "gamma")]
    GammaFull,
}

impl GroupKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GroupKind::Gamma0 => "gamma0",
            GroupKind::Gamma1 => "gamma1",
            GroupKind::GammaFull => "gamma",
        }
    }
}

impl FromStr for GroupKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "gamma0" | "g0" => Ok(GroupKind::Gamma0),
            "gamma1" | "g1" => Ok(GroupKind::Gamma1),
            "gamma" | "full" | "gammafull" => Ok(GroupKind::GammaFull),
            other => Err(format!("unknown group kind {other:?} (gamma0, gamma1, gamma)")),
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A level structure: `Γ₀(n)`, `Γ₁(n)` or `Γ(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CongruenceGroup {
    kind: GroupKind,
    level: u64,
}

impl CongruenceGroup {
    pub fn new(kind: GroupKind, level: u64) -> Self {
        CongruenceGroup { kind, level }
    }

    pub fn gamma0(level: u64) -> Self {
        Self::new(GroupKind::Gamma0, level)
    }

    pub fn gamma1(level: u64) -> Self {
        Self::new(GroupKind::Gamma1, level)
    }

    pub fn gamma(level: u64) -> Self {
        Self::new(GroupKind::GammaFull, level)
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// The compactified curve is a scheme (trivial generic automorphisms).
    pub fn is_representable(&self) -> bool {
        match self.kind {
            GroupKind::Gamma1 => self.level >= 5,
            GroupKind::GammaFull => self.level >= 3,
            GroupKind::Gamma0 => false,
        }
    }

    /// Weights `(a, b)` of the weighted projective line modelling the curve,
    /// for the small levels where it is one.
    pub fn weighted_model(&self) -> Option<(u64, u64)> {
        match (self.kind, self.level) {
            (GroupKind::Gamma1 | GroupKind::GammaFull, 1) => Some((4, 6)),
            (GroupKind::Gamma1, 2) => Some((2, 4)),
            (GroupKind::Gamma1, 3) => Some((1, 3)),
            (GroupKind::Gamma1, 4) => Some((1, 2)),
            (GroupKind::GammaFull, 2) => Some((2, 2)),
            _ => None,
        }
    }
}

impl fmt::Display for CongruenceGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            GroupKind::Gamma0 => "Γ₀",
            GroupKind::Gamma1 => "Γ₁",
            GroupKind::GammaFull => "Γ",
        };
        write!(f, "{name}({})", self.level)
    }
}
