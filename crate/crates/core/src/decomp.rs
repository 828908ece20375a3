//! Decomposition sequences of `(f_n)_* O` over `M_ell`.
//!
//! The pushforward of the structure sheaf of a modular curve splits as a sum
//! of twists `B ⊗ ω^{−i}` of a fixed base bundle `B`. For each base the
//! multiplicities are an alternating sum of form dimensions; every sequence
//! is returned together with the identities it must satisfy, and a failing
//! identity is an error rather than a clamped value.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::arith::{cusp_divisor_sum, gamma1_degree, is_squarefree, Rat};
use crate::dims::{FormDimensions, WeightOneTable};
use crate::error::{domain, Error, Result};
use crate::group::{CongruenceGroup, GroupKind};
use crate::wproj::{convolve, splitting_from_sections, WeightedProjLine};

/// Highest weight of `m` used for the section-count cross-checks.
const CHECK_WEIGHT: usize = 21;

/// The bundle whose twists make up a decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Base {
    /// `O`, twisted by powers of `ω`.
    Omega,
    /// Pushforward from `Γ₁(2)`.
    E2,
    /// Pushforward from `Γ₁(3)`.
    E3,
    M4,
    M5,
    M6,
}

impl Base {
    pub const ALL: [Base; 6] = [Base::Omega, Base::E2, Base::E3, Base::M4, Base::M5, Base::M6];

    /// Level `q` of the `Γ₁(q)` curve whose pushforward is the base.
    pub fn level(self) -> u64 {
        match self {
            Base::Omega => 1,
            Base::E2 => 2,
            Base::E3 => 3,
            Base::M4 => 4,
            Base::M5 => 5,
            Base::M6 => 6,
        }
    }

    pub fn rank(self) -> u64 {
        gamma1_degree(self.level())
    }

    /// Number of indices that can carry a nonzero multiplicity.
    pub fn support_len(self) -> usize {
        match self {
            Base::Omega => 12,
            Base::E2 => 8,
            Base::E3 => 6,
            Base::M4 => 5,
            Base::M5 | Base::M6 => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Base::Omega => "omega",
            Base::E2 => "e2",
            Base::E3 => "e3",
            Base::M4 => "m4",
            Base::M5 => "m5",
            Base::M6 => "m6",
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Base {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Base::ALL
            .into_iter()
            .find(|b| b.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown base {s:?} (omega, e2, e3, m4, m5, m6)"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Diagnostic {
    fn check(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Diagnostic {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompSequence {
    base: Base,
    coeffs: Vec<u64>,
    group: CongruenceGroup,
    diagnostics: Vec<Diagnostic>,
}

impl DecompSequence {
    pub fn base(&self) -> Base {
        self.base
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn group(&self) -> CongruenceGroup {
        self.group
    }

    pub fn diagnostics(&self) -> &[Diagnostic] {
        &self.diagnostics
    }

    pub fn total(&self) -> u64 {
        self.coeffs.iter().sum()
    }

    /// Largest index with a nonzero multiplicity.
    pub fn top_index(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&c| c != 0)
    }
}

/// Builder shared by all sequence constructors.
struct Checked {
    group: CongruenceGroup,
    base: Base,
    raw: Vec<i64>,
    diagnostics: Vec<Diagnostic>,
}

impl Checked {
    fn new(group: CongruenceGroup, base: Base, raw: Vec<i64>) -> Self {
        let negative: Vec<usize> = (0..raw.len()).filter(|&i| raw[i] < 0).collect();
        let diagnostics = vec![Diagnostic::check(
            "nonnegative",
            negative.is_empty(),
            if negative.is_empty() {
                "all multiplicities ≥ 0".to_string()
            } else {
                format!("negative at indices {negative:?}")
            },
        )];
        Checked {
            group,
            base,
            raw,
            diagnostics,
        }
    }

    fn at(&self, i: i64) -> i64 {
        if i < 0 {
            0
        } else {
            self.raw.get(i as usize).copied().unwrap_or(0)
        }
    }

    fn eq(&mut self, name: &str, lhs: i64, rhs: i64, what: &str) {
        self.diagnostics
            .push(Diagnostic::check(name, lhs == rhs, format!("{what}: {lhs} vs {rhs}")));
    }

    fn push(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.diagnostics.push(Diagnostic::check(name, passed, detail));
    }

    fn rank(&mut self, degree: u64) {
        let total: i64 = self.raw.iter().sum();
        let rank = self.base.rank() as i64;
        self.eq("rank", rank * total, degree as i64, "base rank · Σ vs degree");
    }

    /// `m_i = Σ_j c_j · m^{base}_{i−j}` through the check weight.
    fn sections(&mut self, m: &[u64], base_m: &[u64]) {
        let k = m.len() - 1;
        let ok = self.raw.iter().all(|&c| c >= 0);
        let passed = ok && {
            let c: Vec<u64> = self.raw.iter().map(|&c| c as u64).collect();
            convolve(&c, base_m, k) == m
        };
        self.push(
            "sections",
            passed,
            format!("twisted base sections reproduce m_0..m_{k}"),
        );
    }

    fn finish(self) -> Result<DecompSequence> {
        if self.diagnostics.iter().all(|d| d.passed) {
            Ok(DecompSequence {
                base: self.base,
                coeffs: self.raw.iter().map(|&c| c as u64).collect(),
                group: self.group,
                diagnostics: self.diagnostics,
            })
        } else {
            Err(Error::InvalidSequence {
                group: self.group.to_string(),
                base: self.base.to_string(),
                coeffs: self.raw,
                diagnostics: self.diagnostics,
            })
        }
    }
}

fn signed(m: &[u64]) -> impl Fn(i64) -> i64 + '_ {
    move |i| if i < 0 { 0 } else { m[i as usize] as i64 }
}

fn known_s(dims: &FormDimensions, k: i64) -> Result<i64> {
    dims.s(k)
        .known()
        .map(|v| v as i64)
        .ok_or_else(|| Error::WeightOneUnknown {
            group: dims.group().to_string(),
        })
}

fn base_sections(base: Base, table: &WeightOneTable) -> Result<Vec<u64>> {
    FormDimensions::new(CongruenceGroup::gamma1(base.level()), table)?.known_m(CHECK_WEIGHT)
}

/// Multiplicities `l_i` of `ω^{−i}`, `0 ≤ i ≤ 11`.
pub fn l_sequence(group: CongruenceGroup, table: &WeightOneTable) -> Result<DecompSequence> {
    if group.kind() == GroupKind::Gamma0 && !is_squarefree(group.level()) {
        return Err(domain(format!("{group}: decompositions need a squarefree level")));
    }
    let dims = FormDimensions::new(group, table)?;
    let m = dims.known_m(CHECK_WEIGHT)?;
    let mi = signed(&m);
    let raw: Vec<i64> = (0..12)
        .map(|i| mi(i) - mi(i - 4) - mi(i - 6) + mi(i - 10))
        .collect();
    let mut c = Checked::new(group, Base::Omega, raw);
    let degree = dims.profile().degree;
    c.rank(degree);
    for i in 0..=4 {
        let s = known_s(&dims, i)?;
        c.eq("top_cusp_forms", c.at(12 - i), s, &format!("l_{} vs s_{i}", 12 - i));
    }
    c.eq("genus", c.at(10), dims.profile().genus as i64, "l_10 vs genus");
    let recursion =
        (0..12).all(|i| c.at(i) == mi(i) - c.at(i - 4) - c.at(i - 6) - c.at(i - 8) - c.at(i - 10));
    c.push("recursion", recursion, "l_i = m_i − l_{i−4} − l_{i−6} − l_{i−8} − l_{i−10}");
    let peeled = splitting_from_sections(&WeightedProjLine::new(4, 6), &m, degree);
    let agree = match &peeled {
        Ok(split) => split.max_twist().unwrap_or(0) < 12 && split.to_coeffs(12).iter().zip(&c.raw).all(|(&a, &b)| a as i64 == b),
        Err(_) => false,
    };
    c.push(
        "deconvolution",
        agree,
        match peeled {
            Ok(_) => "P(4,6) splitting matches closed form".to_string(),
            Err(e) => e.to_string(),
        },
    );
    c.finish()
}

fn require_k_hypothesis(group: CongruenceGroup, min_gamma1: u64) -> Result<()> {
    let ok = match group.kind() {
        GroupKind::Gamma1 => group.level() >= min_gamma1,
        GroupKind::GammaFull => group.level() >= 3,
        GroupKind::Gamma0 => false,
    };
    if ok {
        Ok(())
    } else {
        Err(domain(format!(
            "{group}: needs Γ₁(n) with n ≥ {min_gamma1} or Γ(n) with n ≥ 3"
        )))
    }
}

/// Multiplicities of `E₂ ⊗ ω^{−i}`, `0 ≤ i ≤ 7`, with `E₂` the pushforward
/// from `Γ₁(2)`.
pub fn k2_sequence(group: CongruenceGroup, table: &WeightOneTable) -> Result<DecompSequence> {
    require_k_hypothesis(group, 4)?;
    let dims = FormDimensions::new(group, table)?;
    let m = dims.known_m(CHECK_WEIGHT)?;
    let mi = signed(&m);
    let raw: Vec<i64> = (0..8)
        .map(|i| mi(i) - mi(i - 2) - mi(i - 4) + mi(i - 6))
        .collect();
    let mut c = Checked::new(group, Base::E2, raw);
    c.eq("weight_one_cusp_forms", c.at(7), known_s(&dims, 1)?, "k_7 vs s_1");
    c.eq("genus", c.at(6), dims.profile().genus as i64, "k_6 vs genus");
    let sums: Vec<i64> = (0..4).map(|i| c.at(i) + c.at(i + 4)).collect();
    c.push(
        "four_sums",
        sums.windows(2).all(|w| w[0] == w[1]),
        format!("k_i + k_(i+4) = {sums:?}"),
    );
    c.rank(dims.profile().degree);
    let recursion =
        (0..8).all(|i| c.at(i) == mi(i) - c.at(i - 2) - 2 * c.at(i - 4) - 2 * c.at(i - 6));
    c.push("recursion", recursion, "k_i = m_i − k_{i−2} − 2k_{i−4} − 2k_{i−6}");
    c.sections(&m, &base_sections(Base::E2, table)?);
    c.finish()
}

/// Multiplicities of `E₃ ⊗ ω^{−i}`, `0 ≤ i ≤ 5`, with `E₃` the pushforward
/// from `Γ₁(3)`.
pub fn k3_sequence(group: CongruenceGroup, table: &WeightOneTable) -> Result<DecompSequence> {
    require_k_hypothesis(group, 5)?;
    let dims = FormDimensions::new(group, table)?;
    let m = dims.known_m(CHECK_WEIGHT)?;
    let mi = signed(&m);
    let raw: Vec<i64> = (0..6)
        .map(|i| mi(i) - mi(i - 1) - mi(i - 3) + mi(i - 4))
        .collect();
    let mut c = Checked::new(group, Base::E3, raw);
    let s1 = known_s(&dims, 1)?;
    let s2 = known_s(&dims, 2)?;
    c.eq("weight_one_cusp_forms", c.at(5), s1, "k_5 vs s_1");
    c.eq("weight_two_gap", c.at(4), s2 - s1, "k_4 vs s_2 − s_1");
    let sums: Vec<i64> = (0..3).map(|i| c.at(i) + c.at(i + 3)).collect();
    c.push(
        "three_sums",
        sums.windows(2).all(|w| w[0] == w[1]),
        format!("k_i + k_(i+3) = {sums:?}"),
    );
    c.rank(dims.profile().degree);
    let recursion = (0..6).all(|i| {
        c.at(i)
            == mi(i) - c.at(i - 1) - c.at(i - 2) - 2 * c.at(i - 3) - 2 * c.at(i - 4) - 2 * c.at(i - 5)
    });
    c.push(
        "recursion",
        recursion,
        "k_i = m_i − k_{i−1} − k_{i−2} − 2k_{i−3} − 2k_{i−4} − 2k_{i−5}",
    );
    c.sections(&m, &base_sections(Base::E3, table)?);
    c.finish()
}

/// Multiplicities of the pushforward from `Γ₁(q)`, `q ∈ {4, 5, 6}`, built
/// from the `k⁽²⁾` (q = 4) or `k⁽³⁾` (q = 5, 6) sequence.
pub fn kappa_sequence(
    group: CongruenceGroup,
    q: u64,
    table: &WeightOneTable,
) -> Result<DecompSequence> {
    let (base, k, window) = match q {
        4 => (Base::M4, k2_sequence(group, table)?, 4),
        5 => (Base::M5, k3_sequence(group, table)?, 3),
        6 => (Base::M6, k3_sequence(group, table)?, 3),
        _ => return Err(domain(format!("κ is defined for q ∈ {{4, 5, 6}}, got {q}"))),
    };
    let kc: Vec<i64> = k.coeffs().iter().map(|&x| x as i64).collect();
    let top = kc[kc.len() - 1];
    let raw = vec![kc[0], kc[1] - kc[0], kc[2] - kc[1]]
        .into_iter()
        .chain(if q == 4 { vec![kc[3] - kc[2], top] } else { vec![top] })
        .collect::<Vec<_>>();

    let at = |i: i64| {
        if i < 0 {
            0
        } else {
            raw.get(i as usize).copied().unwrap_or(0)
        }
    };
    if let Some(bad) = (0..kc.len()).find(|&i| {
        let i = i as i64;
        kc[i as usize] != (0..window).map(|j| at(i - j)).sum::<i64>()
    }) {
        return Err(Error::ReconstructionFailure { index: bad });
    }

    let mut c = Checked::new(group, base, raw);
    c.push("reconstruction", true, format!("k_i = sum of {window} consecutive κ"));
    let dims = FormDimensions::new(group, table)?;
    c.rank(dims.profile().degree);
    c.sections(&dims.known_m(CHECK_WEIGHT)?, &base_sections(base, table)?);
    c.finish()
}

/// Decomposition of `group` over any supported base.
pub fn decompose(group: CongruenceGroup, base: Base, table: &WeightOneTable) -> Result<DecompSequence> {
    match base {
        Base::Omega => l_sequence(group, table),
        Base::E2 => k2_sequence(group, table),
        Base::E3 => k3_sequence(group, table),
        Base::M4 => kappa_sequence(group, 4, table),
        Base::M5 => kappa_sequence(group, 5, table),
        Base::M6 => kappa_sequence(group, 6, table),
    }
}

/// Rank divisibility `d_q | d_n`: necessary for a decomposition of the
/// level-`n` pushforward into twists of the level-`q` one, never sufficient
/// (`d_7 | d_31` although no such decomposition exists for `n = 31`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum BaseDivisibility {
    NotDivisible { d_q: u64, d_n: u64 },
    DivisibleInconclusive { d_q: u64, d_n: u64 },
}

impl BaseDivisibility {
    pub fn divides(&self) -> bool {
        matches!(self, BaseDivisibility::DivisibleInconclusive { .. })
    }
}

impl fmt::Display for BaseDivisibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseDivisibility::NotDivisible { d_q, d_n } => {
                write!(f, "not divisible: d_q = {d_q} ∤ d_n = {d_n}; no decomposition exists")
            }
            BaseDivisibility::DivisibleInconclusive { d_q, d_n } => write!(
                f,
                "divisible: d_q = {d_q} | d_n = {d_n}; necessary condition only, inconclusive"
            ),
        }
    }
}

pub fn base_divisibility(n: u64, q: u64) -> Result<BaseDivisibility> {
    if n == 0 || q == 0 {
        return Err(domain("levels must be positive"));
    }
    let (d_q, d_n) = (gamma1_degree(q), gamma1_degree(n));
    Ok(if d_n % d_q == 0 {
        BaseDivisibility::DivisibleInconclusive { d_q, d_n }
    } else {
        BaseDivisibility::NotDivisible { d_q, d_n }
    })
}

/// Whether `(f_n)_*O` is self-dual up to the twist `ω^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DualityVerdict {
    pub symmetric: bool,
    pub top_index: i64,
    /// `ω^{k−10}` is the dualizing sheaf when the sequence is symmetric.
    pub dualizing_power: i64,
    /// Anderson self-duality shift `21 − 2k`, for symmetric sequences.
    pub anderson_shift: Option<i64>,
}

pub fn duality_verdict_of(seq: &DecompSequence) -> DualityVerdict {
    let top = seq.top_index().expect("l_0 = 1 for every curve");
    let c = seq.coeffs();
    let symmetric = (0..=top).all(|i| c[top - i] == c[i]);
    let top = top as i64;
    DualityVerdict {
        symmetric,
        top_index: top,
        dualizing_power: top - 10,
        anderson_shift: symmetric.then_some(21 - 2 * top),
    }
}

pub fn duality_verdict(group: CongruenceGroup, table: &WeightOneTable) -> Result<DualityVerdict> {
    Ok(duality_verdict_of(&l_sequence(group, table)?))
}

/// `(n, shift)` for every symmetric `Γ₁(n)`, `n ≤ max_level`.
pub fn anderson_table(max_level: u64, table: &WeightOneTable) -> Result<Vec<(u64, i64)>> {
    let mut out = Vec::new();
    for n in 1..=max_level {
        let v = duality_verdict(CongruenceGroup::gamma1(n), table)?;
        if let Some(shift) = v.anderson_shift {
            out.push((n, shift));
        }
    }
    Ok(out)
}

/// Prime powers whose ratio `g(p^k)/f(p^k)` decides the degree equation.
pub const RATIO_TABLE_CELLS: [(u64, u32); 21] = [
    (2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (2, 7),
    (3, 1), (3, 2), (3, 3), (3, 4),
    (5, 1), (5, 2), (5, 3),
    (7, 1), (7, 2),
    (11, 1), (11, 2),
    (13, 1), (17, 1), (19, 1),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RatioEntry {
    pub p: u64,
    pub k: u32,
    pub ratio: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityScan {
    pub bound: u64,
    pub solutions: Vec<u64>,
    pub ratios: Vec<RatioEntry>,
}

/// `g(n)/f(n)` with `f(n) = Σ_{d|n} dφ(d)φ(n/d)` and `g(n) = Σ_{d|n} φ(d)φ(n/d)`.
pub fn cusp_degree_ratio(n: u64) -> Rat {
    Rat::new(cusp_divisor_sum(n), gamma1_degree(n))
}

/// All `n ≤ bound` with `f(n)/12 = g(n)`, i.e. `2g − 2 = deg f_n^*ω` on
/// `X₁(n)`. Past 144 the left side always wins.
pub fn duality_scan(bound: u64) -> Result<DualityScan> {
    if bound == 0 {
        return Err(domain("bound must be positive"));
    }
    let solutions = (1..=bound)
        .filter(|&n| gamma1_degree(n) == 12 * cusp_divisor_sum(n))
        .collect();
    let ratios = RATIO_TABLE_CELLS
        .iter()
        .map(|&(p, k)| RatioEntry {
            p,
            k,
            ratio: cusp_degree_ratio(p.pow(k)),
        })
        .collect();
    Ok(DualityScan {
        bound,
        solutions,
        ratios,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PrimeClass {
    Two,
    Three,
    Large,
}

impl FromStr for PrimeClass {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "2" | "two" => Ok(PrimeClass::Two),
            "3" | "three" => Ok(PrimeClass::Three),
            "large" | ">3" => Ok(PrimeClass::Large),
            other => Err(format!("unknown prime class {other:?} (2, 3, large)")),
        }
    }
}

impl fmt::Display for PrimeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PrimeClass::Two => "2",
            PrimeClass::Three => "3",
            PrimeClass::Large => "large",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TmfSummand {
    pub suspension: u64,
    pub summand: &'static str,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TmfReport {
    pub level: u64,
    pub prime_class: PrimeClass,
    pub summands: Vec<TmfSummand>,
    pub caveat: &'static str,
}

pub const TMF_CAVEAT: &str = "the splitting of Tmf_1(n)_(l) holds when pi_1 Tmf_1(n) has no l-torsion, \
     i.e. every mod-l weight-one cusp form for Gamma_1(n) lifts to an integral one";

/// Even suspensions in the splitting of `Tmf₁(n)` localized at a prime `l ∤ n`.
pub fn tmf_splitting_report(
    n: u64,
    prime_class: PrimeClass,
    table: &WeightOneTable,
) -> Result<TmfReport> {
    let group = CongruenceGroup::gamma1(n);
    let (seq, summand) = match prime_class {
        PrimeClass::Two => {
            if n.is_multiple_of(2) {
                return Err(domain(format!("l = 2 divides n = {n}")));
            }
            (k3_sequence(group, table)?, "Tmf_1(3)")
        }
        PrimeClass::Three => {
            if n.is_multiple_of(3) {
                return Err(domain(format!("l = 3 divides n = {n}")));
            }
            (k2_sequence(group, table)?, "Tmf_1(2)")
        }
        PrimeClass::Large => {
            if n < 2 {
                return Err(domain("needs n ≥ 2"));
            }
            (l_sequence(group, table)?, "Tmf")
        }
    };
    let summands = seq
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(i, &c)| TmfSummand {
            suspension: 2 * i as u64,
            summand,
            multiplicity: c,
        })
        .collect();
    Ok(TmfReport {
        level: n,
        prime_class,
        summands,
        caveat: TMF_CAVEAT,
    })
}

/// Applies `[1, 0, 1, 0, 1]` (resp. `[1, 1, 1, 2, 1, 1, 1]`): the `ω`-splitting
/// of the `Γ₁(2)` (resp. `Γ₁(3)`) pushforward.
pub fn expand_to_omega(seq: &DecompSequence) -> Option<Vec<u64>> {
    let kernel: &[u64] = match seq.base() {
        Base::Omega => &[1],
        Base::E2 => &[1, 0, 1, 0, 1],
        Base::E3 => &[1, 1, 1, 2, 1, 1, 1],
        _ => return None,
    };
    Some(convolve(seq.coeffs(), kernel, 11))
}
