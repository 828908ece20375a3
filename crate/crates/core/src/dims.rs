//! Dimensions `m_k` of modular forms and `s_k` of cusp forms over a field of
//! characteristic zero.
//!
//! Weight one has no closed formula. `s₁` comes from a [`WeightOneTable`]
//! (an embedded default plus user overrides); when neither the table nor a
//! structural argument settles it, the answer is [`DimValue::Unknown`].

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

use crate::arith::Rat;
use crate::curve::{profile, CurveProfile};
use crate::error::{Error, Result};
use crate::group::{CongruenceGroup, GroupKind};
use crate::wproj::WeightedProjLine;

const DEFAULT_S1: &str = include_str!("../data/s1.json");

/// A dimension that may be undetermined (weight one outside the data table).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DimValue {
    Known(u64),
    Unknown,
}

impl DimValue {
    pub fn known(self) -> Option<u64> {
        match self {
            DimValue::Known(v) => Some(v),
            DimValue::Unknown => None,
        }
    }

    pub fn is_unknown(self) -> bool {
        self == DimValue::Unknown
    }
}

impl fmt::Display for DimValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimValue::Known(v) => write!(f, "{v}"),
            DimValue::Unknown => f.write_str("?"),
        }
    }
}

impl Serialize for DimValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            DimValue::Known(v) => s.serialize_u64(*v),
            DimValue::Unknown => s.serialize_none(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DimQuery {
    pub group: CongruenceGroup,
    pub weight: i64,
}

impl DimQuery {
    pub fn new(group: CongruenceGroup, weight: i64) -> Self {
        DimQuery { group, weight }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct S1Entry {
    pub value: u64,
    pub provenance: String,
}

/// On-disk form of the weight-one table.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct S1DataFile {
    pub gamma1: BTreeMap<String, u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<BTreeMap<String, u64>>,
    #[serde(default)]
    pub provenance: String,
}

/// Known values of `s₁ = dim S₁` keyed by group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightOneTable {
    entries: BTreeMap<CongruenceGroup, S1Entry>,
}

impl Default for WeightOneTable {
    fn default() -> Self {
        Self::from_json(DEFAULT_S1).expect("embedded weight-one table is valid")
    }
}

impl WeightOneTable {
    pub fn empty() -> Self {
        WeightOneTable {
            entries: BTreeMap::new(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: S1DataFile =
            serde_json::from_str(text).map_err(|e| Error::Data(e.to_string()))?;
        Self::from_data_file(&file)
    }

    pub fn from_data_file(file: &S1DataFile) -> Result<Self> {
        let mut table = Self::empty();
        let sections = [(GroupKind::Gamma1, Some(&file.gamma1)), (GroupKind::GammaFull, file.gamma.as_ref())];
        for (kind, map) in sections {
            for (level, &value) in map.into_iter().flatten() {
                let level: u64 = level
                    .trim()
                    .parse()
                    .ok()
                    .filter(|&n| n > 0)
                    .ok_or_else(|| Error::Data(format!("bad level key {level:?}")))?;
                table.insert(CongruenceGroup::new(kind, level), value, &file.provenance);
            }
        }
        Ok(table)
    }

    pub fn to_data_file(&self, provenance: &str) -> S1DataFile {
        let mut gamma1 = BTreeMap::new();
        let mut gamma = BTreeMap::new();
        for (g, e) in &self.entries {
            match g.kind() {
                GroupKind::Gamma1 => gamma1.insert(g.level().to_string(), e.value),
                GroupKind::GammaFull => gamma.insert(g.level().to_string(), e.value),
                GroupKind::Gamma0 => None,
            };
        }
        S1DataFile {
            gamma1,
            gamma: (!gamma.is_empty()).then_some(gamma),
            provenance: provenance.to_string(),
        }
    }

    pub fn insert(&mut self, group: CongruenceGroup, value: u64, provenance: &str) {
        self.entries.insert(
            group,
            S1Entry {
                value,
                provenance: provenance.to_string(),
            },
        );
    }

    pub fn get(&self, group: CongruenceGroup) -> Option<&S1Entry> {
        self.entries.get(&group)
    }

    pub fn lookup(&self, group: CongruenceGroup) -> Option<u64> {
        self.get(group).map(|e| e.value)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Dimension formulas for one group, with its profile computed once.
#[derive(Debug, Clone)]
pub struct FormDimensions {
    profile: CurveProfile,
    model: Option<WeightedProjLine>,
    s1: DimValue,
}

impl FormDimensions {
    pub fn new(group: CongruenceGroup, table: &WeightOneTable) -> Result<Self> {
        let profile = profile(group)?;
        let model = group
            .weighted_model()
            .map(|(a, b)| WeightedProjLine::new(a, b));
        let s1 = if let Some(line) = model {
            DimValue::Known(line.h1(1))
        } else if group.kind() == GroupKind::Gamma0 {
            // −I ∈ Γ₀(n) kills every odd weight.
            DimValue::Known(0)
        } else if let Some(v) = table.lookup(group) {
            DimValue::Known(v)
        } else if profile.genus <= 1 {
            // s₂ ≥ 2s₁ on representable curves and s₂ = g.
            DimValue::Known(0)
        } else {
            DimValue::Unknown
        };
        Ok(FormDimensions { profile, model, s1 })
    }

    pub fn profile(&self) -> &CurveProfile {
        &self.profile
    }

    pub fn group(&self) -> CongruenceGroup {
        self.profile.group
    }

    pub fn s1(&self) -> DimValue {
        self.s1
    }

    pub fn m(&self, k: i64) -> DimValue {
        if k < 0 {
            return DimValue::Known(0);
        }
        if k == 0 {
            return DimValue::Known(1);
        }
        if let Some(line) = self.model {
            return DimValue::Known(line.h0(k));
        }
        let p = &self.profile;
        if p.group.kind() == GroupKind::Gamma0 {
            if k % 2 == 1 {
                return DimValue::Known(0);
            }
            let g = p.genus as i64;
            let v = (k - 1) * (g - 1)
                + (k / 4) * p.elliptic2 as i64
                + (k / 3) * p.elliptic3 as i64
                + (k / 2) * p.cusps as i64;
            return DimValue::Known(nonneg(v));
        }
        if k == 1 {
            return match self.s1 {
                DimValue::Known(s1) => {
                    assert!(p.regular_cusps.is_multiple_of(2), "odd regular cusp count");
                    DimValue::Known(p.regular_cusps / 2 + s1)
                }
                DimValue::Unknown => DimValue::Unknown,
            };
        }
        let v = p.omega_degree.clone() * Rat::from(k) + Rat::one() - Rat::from(p.genus);
        DimValue::Known(nonneg(v.to_i64().expect("affine dimension formula is integral")))
    }

    pub fn s(&self, k: i64) -> DimValue {
        if k <= 0 {
            return DimValue::Known(0);
        }
        if let Some(line) = self.model {
            return DimValue::Known(line.h1(2 - k));
        }
        let p = &self.profile;
        if p.group.kind() == GroupKind::Gamma0 && k % 2 == 1 {
            return DimValue::Known(0);
        }
        match k {
            1 => self.s1,
            2 => DimValue::Known(p.genus),
            _ => match self.m(k) {
                DimValue::Known(m) => DimValue::Known(
                    m.checked_sub(p.cusps)
                        .expect("more cusps than forms in weight ≥ 3"),
                ),
                DimValue::Unknown => DimValue::Unknown,
            },
        }
    }

    pub fn m_range(&self, weights: std::ops::RangeInclusive<i64>) -> Vec<DimValue> {
        weights.map(|k| self.m(k)).collect()
    }

    pub fn s_range(&self, weights: std::ops::RangeInclusive<i64>) -> Vec<DimValue> {
        weights.map(|k| self.s(k)).collect()
    }

    /// `[m_0, …, m_k]` with every entry known, or the weight-one error.
    pub(crate) fn known_m(&self, k: usize) -> Result<Vec<u64>> {
        (0..=k as i64)
            .map(|w| {
                self.m(w).known().ok_or_else(|| Error::WeightOneUnknown {
                    group: self.group().to_string(),
                })
            })
            .collect()
    }
}

fn nonneg(v: i64) -> u64 {
    assert!(v >= 0, "negative dimension {v}");
    v as u64
}

pub fn m_dim(query: DimQuery, table: &WeightOneTable) -> Result<DimValue> {
    Ok(FormDimensions::new(query.group, table)?.m(query.weight))
}

pub fn s_dim(query: DimQuery, table: &WeightOneTable) -> Result<DimValue> {
    Ok(FormDimensions::new(query.group, table)?.s(query.weight))
}

/// `[m_0, …, m_k]`; weight-one gaps show up as `Unknown`.
pub fn m_sequence(group: CongruenceGroup, k: u64, table: &WeightOneTable) -> Result<Vec<DimValue>> {
    Ok(FormDimensions::new(group, table)?.m_range(0..=k as i64))
}
